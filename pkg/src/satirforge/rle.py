"""Codec for COCO-style run-length encoded binary masks.

Runs are stored in column-major pixel order (rows vary fastest within a
column) and alternate background/foreground starting with background; only
the leading background run may be empty.  The compressed ASCII form packs
each run (delta-coded against the run two places back, from the fourth run
on) into 5-bit groups mapped onto the printable range 48..111, with bit
0x20 as the continuation flag and bit 0x10 of the final group marking a
negative value to sign-extend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedCounts

MAX_DIM = 65535


@dataclass(frozen=True)
class RleMask:
    """A run-length encoded binary mask with its grid dimensions."""

    height: int
    width: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (1 <= self.height <= MAX_DIM and 1 <= self.width <= MAX_DIM):
            raise ValueError(
                f"mask dimensions {self.height}x{self.width} outside [1, {MAX_DIM}]"
            )
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if not counts:
            raise ValueError("counts must contain at least one run")
        if counts[0] < 0 or any(c <= 0 for c in counts[1:]):
            raise ValueError("only the leading background run may be empty")
        total = sum(counts)
        if total != self.height * self.width:
            raise ValueError(
                f"runs sum to {total}, expected {self.height * self.width}"
            )


def normalize_counts(counts) -> tuple[int, ...]:
    """Collapse zero-length interior runs and drop trailing empty runs.

    Accepts any alternating run list (first run counts background pixels)
    and returns the canonical form: a leading background run that may be 0,
    every later run positive.
    """
    norm = [0]
    bit = 0
    current_bit = 0
    for c in counts:
        c = int(c)
        if c < 0:
            raise MalformedCounts(f"negative run length {c}")
        if c > 0:
            if bit == current_bit:
                norm[-1] += c
            else:
                norm.append(c)
                current_bit = bit
        bit ^= 1
    return tuple(norm)


def rle_from_counts(counts, height: int, width: int) -> RleMask:
    """Build an RleMask from an uncompressed run list, normalizing it."""
    norm = normalize_counts(counts)
    if sum(norm) != height * width:
        raise MalformedCounts(
            f"runs sum to {sum(norm)}, expected {height}x{width}={height * width}"
        )
    return RleMask(height, width, norm)


def decode_counts_string(s: str, height: int, width: int) -> RleMask:
    """Decode a compressed ASCII counts string into an RleMask.

    Raises MalformedCounts for characters outside [48, 111], a truncated
    final group, a negative resolved run, or a run sum that does not cover
    height*width pixels.
    """
    counts: list[int] = []
    p, n = 0, len(s)
    while p < n:
        x = 0
        k = 0
        while True:
            if p >= n:
                raise MalformedCounts("truncated group sequence at end of string")
            c = ord(s[p]) - 48
            if not 0 <= c <= 63:
                raise MalformedCounts(f"character {s[p]!r} at {p} outside [48, 111]")
            x |= (c & 0x1F) << (5 * k)
            p += 1
            k += 1
            if not c & 0x20:
                if c & 0x10:
                    x |= -1 << (5 * k)
                break
        if len(counts) > 2:
            x += counts[-2]
        if x < 0:
            raise MalformedCounts(f"run {len(counts)} resolved to negative length {x}")
        counts.append(x)
    return rle_from_counts(counts, height, width)


def encode_counts_string(mask: RleMask) -> str:
    """Encode an RleMask into the compressed ASCII counts string.

    Exact inverse of decode_counts_string on canonical masks.
    """
    counts = mask.counts
    chars: list[str] = []
    for i, run in enumerate(counts):
        x = run - counts[i - 2] if i > 2 else run
        while True:
            group = x & 0x1F
            x >>= 5
            more = (x != -1) if (group & 0x10) else (x != 0)
            if more:
                group |= 0x20
            chars.append(chr(group + 48))
            if not more:
                break
    return "".join(chars)


def rle_to_bitmask(mask: RleMask) -> np.ndarray:
    """Expand an RleMask into a dense (height, width) boolean grid."""
    values = np.zeros(len(mask.counts), dtype=bool)
    values[1::2] = True
    flat = np.repeat(values, mask.counts)
    return flat.reshape((mask.height, mask.width), order="F")


def bitmask_to_rle(bits: np.ndarray) -> RleMask:
    """Encode a dense boolean grid as a canonical RleMask (column-major)."""
    arr = np.asarray(bits)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("bitmask must be a non-empty 2-D array")
    arr = arr.astype(bool, copy=False)
    h, w = arr.shape
    flat = arr.ravel(order="F")
    edges = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    bounds = np.concatenate(([0], edges, [flat.size]))
    counts = np.diff(bounds).tolist()
    if flat[0]:
        counts.insert(0, 0)
    return RleMask(h, w, tuple(counts))


def rle_area(mask: RleMask) -> int:
    """Number of foreground pixels (sum of the odd-indexed runs)."""
    return int(sum(mask.counts[1::2]))


def rle_bbox(mask: RleMask) -> tuple[int, int, int, int]:
    """Tight (x, y, w, h) bounding box of the foreground, (0, 0, 0, 0) if empty.

    Computed directly from the runs without expanding the mask.
    """
    h = mask.height
    xmin = ymin = 1 << 30
    xmax = ymax = -1
    pos = 0
    for i, run in enumerate(mask.counts):
        if i % 2 == 1 and run > 0:
            first, last = pos, pos + run - 1
            c0, c1 = first // h, last // h
            xmin = min(xmin, c0)
            xmax = max(xmax, c1)
            if c0 == c1:
                ymin = min(ymin, first % h)
                ymax = max(ymax, last % h)
            else:
                # the run wraps a column boundary, so it spans full rows
                ymin = 0
                ymax = h - 1
        pos += run
    if xmax < 0:
        return (0, 0, 0, 0)
    return (xmin, ymin, xmax - xmin + 1, ymax - ymin + 1)
