#!/usr/bin/env python3
"""Generate committed test fixtures.

Run once from the repository root:

    python3 scripts/generate_fixtures.py

Produces:
  tests/fixtures/rle_golden.jsonl.gz   (mask, counts-string) conformance pairs
  tests/fixtures/label_golden.png      a small label map with known bytes
  tests/fixtures/compose_corpus/       3 mask dumps + expected labels + manifest

The RLE pairs are produced by a self-contained transliteration of the
canonical column-major mask codec (5-bit groups over chars 48..111 with a
0x20 continuation flag, 0x10 sign extension, and delta coding from the
fourth run on).  The transliteration below deliberately mirrors the
classic C routine structure (pixel walk, byte emission loop) and shares no
code with the package, so bit-exact agreement between the two is a real
cross-check.
"""

import gzip
import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"


# --- reference codec transliteration (keep independent of src/) ------------


def ref_encode_runs(grid):
    """Column-major run extraction by walking pixels one at a time."""
    h = len(grid)
    w = len(grid[0])
    cnts = []
    prev = 0
    run = 0
    for x in range(w):
        for y in range(h):
            v = 1 if grid[y][x] else 0
            if v != prev:
                cnts.append(run)
                run = 0
                prev = v
            run += 1
    cnts.append(run)
    return cnts


def ref_runs_to_string(cnts):
    s = []
    for i in range(len(cnts)):
        x = int(cnts[i])
        if i > 2:
            x -= int(cnts[i - 2])
        more = 1
        while more:
            c = x & 0x1F
            x >>= 5
            more = (x != -1) if (c & 0x10) else (x != 0)
            if more:
                c |= 0x20
            c += 48
            s.append(chr(c))
    return "".join(s)


def ref_string_to_runs(s):
    cnts = []
    p = 0
    while p < len(s):
        x = 0
        k = 0
        more = 1
        while more:
            c = ord(s[p]) - 48
            x |= (c & 0x1F) << (5 * k)
            more = c & 0x20
            p += 1
            k += 1
            if not more and (c & 0x10):
                x |= -1 << (5 * k)
        if len(cnts) > 2:
            x += cnts[len(cnts) - 2]
        cnts.append(x)
    return cnts


def ref_runs_to_grid(cnts, h, w):
    flat = []
    v = 0
    for c in cnts:
        flat.extend([v] * c)
        v = 1 - v
    assert len(flat) == h * w, "reference decode does not cover the grid"
    return [[flat[x * h + y] for x in range(w)] for y in range(h)]


# --- mask generators ---------------------------------------------------------


def random_noise(rng, h, w, p):
    return [[1 if rng.random() < p else 0 for _ in range(w)] for _ in range(h)]


def random_blobs(rng, h, w, n):
    grid = [[0] * w for _ in range(h)]
    for _ in range(n):
        if rng.random() < 0.5:
            x0 = rng.randrange(w)
            y0 = rng.randrange(h)
            x1 = rng.randrange(x0, w)
            y1 = rng.randrange(y0, h)
            for y in range(y0, y1 + 1):
                for x in range(x0, x1 + 1):
                    grid[y][x] = 1
        else:
            cx = rng.randrange(w)
            cy = rng.randrange(h)
            r = rng.randint(1, max(1, min(h, w) // 2))
            for y in range(h):
                for x in range(w):
                    if (y - cy) ** 2 + (x - cx) ** 2 <= r * r:
                        grid[y][x] = 1
    return grid


def make_rle_golden(path):
    rng = random.Random(20240817)
    cases = []

    def add(grid):
        h, w = len(grid), len(grid[0])
        runs = ref_encode_runs(grid)
        s = ref_runs_to_string(runs)
        back = ref_string_to_runs(s)
        assert back == runs, "reference codec failed to round-trip itself"
        assert ref_runs_to_grid(back, h, w) == [
            [1 if v else 0 for v in row] for row in grid
        ]
        cases.append({"h": h, "w": w, "s": s, "runs": runs})

    # degenerate corners for every tiny size
    for h, w in [(1, 1), (1, 64), (64, 1), (2, 2), (3, 5), (64, 64)]:
        add([[0] * w for _ in range(h)])
        add([[1] * w for _ in range(h)])
        add([[(y + x) % 2 for x in range(w)] for y in range(h)])

    while len(cases) < 1050:
        h = rng.randint(1, 64)
        w = rng.randint(1, 64)
        kind = rng.random()
        if kind < 0.45:
            grid = random_noise(rng, h, w, rng.choice([0.05, 0.2, 0.5, 0.8, 0.95]))
        elif kind < 0.85:
            grid = random_blobs(rng, h, w, rng.randint(1, 4))
        elif kind < 0.95:
            grid = random_noise(rng, h, w, rng.random())
        else:
            grid = [[rng.randint(0, 1)] * w for _ in range(h)]  # striped rows
        add(grid)

    with gzip.open(path, "wt", encoding="ascii") as fh:
        for case in cases:
            fh.write(json.dumps(case, separators=(",", ":")) + "\n")
    print(f"wrote {len(cases)} golden pairs to {path}")


# --- label map + compose corpus fixtures (use the package once, then frozen) --


def make_label_and_corpus_fixtures():
    sys.path.insert(0, str(ROOT / "src"))
    import numpy as np

    from satirforge.compose import ComposeConfig, LabelMap, write_label_png
    from satirforge.ingest import RankPolicy
    from satirforge.pipeline import PipelineConfig, run_compose
    from satirforge.rle import bitmask_to_rle, encode_counts_string

    labels = np.zeros((9, 7), dtype=np.uint8)
    labels[1:4, 1:4] = 1
    labels[3:8, 2:6] = np.where(labels[3:8, 2:6] == 0, 2, labels[3:8, 2:6])
    labels[0, 6] = 254
    labels[8, 0] = 255
    write_label_png(LabelMap(labels), FIXTURES / "label_golden.png")
    np.save(FIXTURES / "label_golden.npy", labels)
    print("wrote label_golden.png / label_golden.npy")

    corpus = FIXTURES / "compose_corpus"
    masks_dir = corpus / "masks"
    masks_dir.mkdir(parents=True, exist_ok=True)

    def dump_record(bits, predicted_iou, stability):
        m = bitmask_to_rle(bits)
        return {
            "segmentation": {
                "size": [m.height, m.width],
                "counts": encode_counts_string(m),
            },
            "predicted_iou": predicted_iou,
            "stability_score": stability,
            "area": int(bits.sum()),
            "bbox": [0, 0, 0, 0],
        }

    h, w = 12, 10
    sizes = {}

    # scene_a: two overlapping rectangles, distinct qualities
    a1 = np.zeros((h, w), bool)
    a1[2:7, 1:6] = True
    a2 = np.zeros((h, w), bool)
    a2[5:11, 4:9] = True
    (masks_dir / "scene_a.json").write_text(
        json.dumps([dump_record(a2, 0.91, 0.9), dump_record(a1, 0.97, 0.8)])
    )
    sizes["scene_a"] = [h, w]

    # scene_b: one low-quality mask that the default threshold drops
    b1 = np.zeros((h, w), bool)
    b1[0:3, 0:3] = True
    (masks_dir / "scene_b.json").write_text(json.dumps([dump_record(b1, 0.42, 0.4)]))
    sizes["scene_b"] = [h, w]

    # scene_c: empty dump, pure background
    (masks_dir / "scene_c.json").write_text(json.dumps([]))
    sizes["scene_c"] = [h, w]

    (corpus / "size_index.json").write_text(json.dumps(sizes, sort_keys=True))

    expected = corpus / "expected"
    summary = run_compose(
        PipelineConfig(
            masks_dir=masks_dir,
            out_dir=expected,
            size_index=corpus / "size_index.json",
            rank=RankPolicy(),
            compose=ComposeConfig(),
            workers=1,
        )
    )
    assert summary.failed == 0, summary
    print(f"wrote compose corpus fixture ({summary.composed} expected labels)")


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_rle_golden(FIXTURES / "rle_golden.jsonl.gz")
    if "--rle-only" not in sys.argv:
        make_label_and_corpus_fixtures()
