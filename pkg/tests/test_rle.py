import gzip
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satirforge.errors import MalformedCounts
from satirforge.rle import (
    RleMask,
    bitmask_to_rle,
    decode_counts_string,
    encode_counts_string,
    normalize_counts,
    rle_area,
    rle_bbox,
    rle_from_counts,
    rle_to_bitmask,
)

FIXTURES = Path(__file__).parent / "fixtures"


def load_golden():
    with gzip.open(FIXTURES / "rle_golden.jsonl.gz", "rt", encoding="ascii") as fh:
        return [json.loads(line) for line in fh]


def test_golden_decode_and_encode_are_bit_exact():
    cases = load_golden()
    assert len(cases) >= 1000
    for case in cases:
        mask = decode_counts_string(case["s"], case["h"], case["w"])
        assert mask.counts == tuple(case["runs"]), case
        assert encode_counts_string(mask) == case["s"], case


def test_all_background_string():
    mask = decode_counts_string("4", 2, 2)
    assert mask.counts == (4,)
    assert encode_counts_string(mask) == "4"


def test_decode_examples():
    # 2x2 grid rows [0,1],[1,0] in column-major order is 0,1,1,0
    mask = RleMask(2, 2, (1, 2, 1))
    grid = rle_to_bitmask(mask)
    assert grid.tolist() == [[False, True], [True, False]]


def test_full_and_empty_grids():
    h, w = 5, 3
    empty = RleMask(h, w, (h * w,))
    full = RleMask(h, w, (0, h * w))
    assert not rle_to_bitmask(empty).any()
    assert rle_to_bitmask(full).all()
    assert bitmask_to_rle(np.zeros((h, w), bool)) == empty
    assert bitmask_to_rle(np.ones((h, w), bool)) == full
    for m in (empty, full):
        assert decode_counts_string(encode_counts_string(m), h, w) == m


def test_checkerboard_2x2():
    grid = np.array([[0, 1], [1, 0]], dtype=bool)
    # column-major pixels: 0,1,1,0
    assert bitmask_to_rle(grid).counts == (1, 2, 1)
    grid = np.array([[1, 0], [0, 1]], dtype=bool)
    # column-major pixels: 1,0,0,1
    assert bitmask_to_rle(grid).counts == (0, 1, 2, 1)


def test_single_pixel_run_arithmetic():
    h, w = 7, 5
    for r, c in [(0, 0), (3, 2), (6, 4), (0, 4), (6, 0)]:
        grid = np.zeros((h, w), bool)
        grid[r, c] = True
        start = c * h + r
        expected = [start, 1, h * w - start - 1]
        if expected[-1] == 0:
            expected.pop()
        if expected[0] == 0 and (r, c) != (0, 0):
            pass  # leading run of zero only happens at the origin
        assert bitmask_to_rle(grid).counts == tuple(expected)


def test_normalize_collapses_interior_zero_runs():
    assert normalize_counts([2, 0, 2]) == (4,)
    assert normalize_counts([0, 1, 1, 1, 1]) == (0, 1, 1, 1, 1)
    assert normalize_counts([1, 2, 0, 0, 1]) == (1, 2, 1)
    assert normalize_counts([1, 2, 0, 1]) == (1, 3)
    assert normalize_counts([1, 1, 1, 0]) == (1, 1, 1)


def test_decoder_rejects_bad_input():
    with pytest.raises(MalformedCounts):
        decode_counts_string("4", 3, 3)  # sum mismatch
    with pytest.raises(MalformedCounts):
        decode_counts_string("\x1f", 1, 1)  # character below 48
    with pytest.raises(MalformedCounts):
        decode_counts_string("~", 1, 1)  # character above 111
    with pytest.raises(MalformedCounts):
        # continuation bit set on the last character
        decode_counts_string(chr(48 + 0x20), 1, 1)


def test_uncompressed_counts_accepted():
    m = rle_from_counts([1, 2, 1], 2, 2)
    assert m == RleMask(2, 2, (1, 2, 1))
    with pytest.raises(MalformedCounts):
        rle_from_counts([1, 2], 2, 2)


def test_area_and_bbox():
    h, w = 6, 8
    grid = np.zeros((h, w), bool)
    grid[2:5, 3:7] = True
    m = bitmask_to_rle(grid)
    assert rle_area(m) == 12
    assert rle_bbox(m) == (3, 2, 4, 3)
    assert rle_bbox(RleMask(h, w, (h * w,))) == (0, 0, 0, 0)
    assert rle_bbox(RleMask(h, w, (0, h * w))) == (0, 0, w, h)


@st.composite
def bitmasks(draw):
    h = draw(st.integers(1, 24))
    w = draw(st.integers(1, 24))
    bits = draw(st.binary(min_size=h * w, max_size=h * w))
    return np.frombuffer(bits, dtype=np.uint8).reshape(h, w) % 2 == 1


@given(bitmasks())
@settings(max_examples=200, deadline=None)
def test_roundtrip_through_string(grid):
    m = bitmask_to_rle(grid)
    s = encode_counts_string(m)
    back = decode_counts_string(s, m.height, m.width)
    assert back == m
    assert np.array_equal(rle_to_bitmask(back), grid)


@given(bitmasks())
@settings(max_examples=200, deadline=None)
def test_area_matches_popcount(grid):
    m = bitmask_to_rle(grid)
    assert rle_area(m) == int(np.count_nonzero(grid))
    assert rle_area(m) == int(rle_to_bitmask(m).sum())


def test_mask_invariants_enforced():
    with pytest.raises(ValueError):
        RleMask(2, 2, (1, 0, 3))  # interior zero run
    with pytest.raises(ValueError):
        RleMask(2, 2, (1, 2))  # bad sum
    with pytest.raises(ValueError):
        RleMask(0, 2, (0,))  # zero dimension
    with pytest.raises(ValueError):
        RleMask(70000, 1, (70000,))  # dimension above the cap
