"""Berlekamp-Massey linear complexity and its exact null distribution.

The complexity of a bit sequence is the length of the shortest linear
feedback shift register over GF(2) that generates it. For uniform random
bits of length n the distribution of that length is known exactly:

    count(0) = 1
    count(l) = 2^min(2l - 1, 2(n - l))   for 1 <= l <= n

with probabilities count(l) / 2^n. The mass concentrates geometrically
around n/2, which is what the saturation test exploits: any output bit of
a generator whose state evolves linearly over GF(2) has complexity capped
at the state dimension.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def berlekamp_massey(bits: Sequence[int] | np.ndarray) -> int:
    """Linear complexity of a 0/1 sequence; bit-packed, O(n^2 / word)."""
    arr = np.asarray(bits, dtype=np.uint8)
    n = arr.size
    if n < 1:
        raise ValueError("need at least one bit")
    if arr.max(initial=0) > 1:
        raise ValueError("sequence must contain only 0 and 1")
    # Pack so that bit i of the integer is the i-th sequence element.
    s = int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")
    sb = s
    sc = s
    deg_c = 0
    m = 0
    for i in range(n):
        disc = (sc >> m) & 1
        m += 1
        if disc:
            sc >>= m
            m = 0
            if 2 * deg_c <= i:
                sb, sc = sc, sb
                deg_c = i + 1 - deg_c
            sc ^= sb
    return deg_c


def complexity_count(l: int, n: int) -> int:
    """Number of length-n bit sequences with linear complexity exactly l."""
    if not 0 <= l <= n:
        raise ValueError(f"complexity must be in [0, {n}], got {l}")
    if l == 0:
        return 1
    return 1 << min(2 * l - 1, 2 * (n - l))


def _count_le(l: int, n: int) -> int:
    """Number of length-n sequences with complexity <= l (exact)."""
    if l < 0:
        return 0
    if l >= n:
        return 1 << n
    if l <= n // 2:
        return (2 * (1 << (2 * l)) + 1) // 3
    return (1 << n) - (((1 << (2 * (n - l))) - 1) // 3)


def linear_complexity_pvalue(l: int, n: int) -> float:
    """Two-sided saturation p-value of observing complexity l at length n.

    p = min(P(L <= l), P(L >= l)), the smaller exact tail of the null
    distribution, correctly rounded to binary64 (underflow to 0.0 for
    deviations far beyond the geometric concentration around n/2). The
    undoubled convention is deliberate: the null has an atom of mass 1/2
    at l = n/2, so the doubled tail saturates at exactly 1.0 for the most
    typical outcome and would trip the too-good side of the verdict rule.
    The smaller tail never exceeds (1 + max pmf) / 2, so only genuine
    deviations can reach either verdict bound.
    """
    if not 0 <= l <= n:
        raise ValueError(f"complexity must be in [0, {n}], got {l}")
    denom = 1 << n
    p_left = float(Fraction(_count_le(l, n), denom))
    p_right = float(Fraction(denom - _count_le(l - 1, n), denom))
    return min(p_left, p_right)
