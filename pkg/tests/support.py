"""Independent oracles and fixtures shared by the test modules.

Everything here is deliberately implemented from definitions (or via a
third-party numerical library), not by calling the package's own code, so
tests compare two independent routes to the same answer.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


class SplitMix32:
    """Nonlinear control generator: 64-bit SplitMix mixer, top 32 bits.

    Used where a test needs a stream that is NOT GF(2)-linear (its linear
    complexity behaves generically). Duck-types the bulk-reader interface.
    """

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int = 0) -> None:
        self._x = np.uint64(seed)
        self._step = np.uint64(self.GAMMA)

    def take(self, n: int) -> np.ndarray:
        with np.errstate(over="ignore"):
            z = self._x + np.arange(1, n + 1, dtype=np.uint64) * self._step
            self._x = self._x + np.uint64(n) * self._step
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
            z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(32)).astype(np.uint32)


class ConstantStream:
    """Degenerate word source: every draw is the same 32-bit value."""

    def __init__(self, value: int) -> None:
        self._value = np.uint32(value)

    def take(self, n: int) -> np.ndarray:
        return np.full(n, self._value, dtype=np.uint32)


class PresetStream:
    """Word source that replays a fixed array of 32-bit values."""

    def __init__(self, words) -> None:
        self._words = np.asarray(words, dtype=np.uint32)
        self._pos = 0

    def take(self, n: int) -> np.ndarray:
        if self._pos + n > self._words.size:
            raise ValueError("preset stream exhausted")
        out = self._words[self._pos : self._pos + n]
        self._pos += n
        return out


def textbook_bm(bits) -> int:
    """Berlekamp-Massey from the textbook polynomial formulation."""
    bits = [int(b) for b in bits]
    n = len(bits)
    c = [1] + [0] * n
    b = [1] + [0] * n
    deg = 0
    last = -1
    for i in range(n):
        d = bits[i]
        for j in range(1, deg + 1):
            d ^= c[j] & bits[i - j]
        if d:
            t = c[:]
            shift = i - last
            for j in range(n + 1 - shift):
                c[j + shift] ^= b[j]
            if 2 * deg <= i:
                deg = i + 1 - deg
                b = t
                last = i
    return deg


def lfsr_count_exact(l: int, n: int) -> int:
    """Number of length-n binary sequences with linear complexity exactly l."""
    if l == 0:
        return 1
    return 2 ** min(2 * l - 1, 2 * (n - l))


def binomial_h_law(l: int) -> list[Fraction]:
    return [Fraction(math.comb(l, h), 2**l) for h in range(l + 1)]


def reflection_m_law(l: int) -> list[Fraction]:
    """P(M = m) by the reflection principle: P(M >= r) = P(S = r) + 2 P(S > r)."""

    def p_final(s: int) -> Fraction:
        if (l + s) % 2 or abs(s) > l:
            return Fraction(0)
        return Fraction(math.comb(l, (l + s) // 2), 2**l)

    def p_ge(r: int) -> Fraction:
        if r <= 0:
            return Fraction(1)
        return p_final(r) + 2 * sum(p_final(s) for s in range(r + 1, l + 1))

    return [p_ge(m) - p_ge(m + 1) for m in range(l + 1)]


def returns_r_law(l: int) -> list[Fraction]:
    """P(R = r) = C(l - r, l/2) * 2^(r - l) for the symmetric walk."""
    assert l % 2 == 0
    return [Fraction(math.comb(l - r, l // 2), 2 ** (l - r)) for r in range(l // 2 + 1)]


def chi2_sf_oracle(x: float, df: int) -> float:
    """Right-tail chi-square probability by adaptive quadrature (mpmath)."""
    from mpmath import gamma, mp, mpf, quad

    mp.dps = 40
    k = mpf(df) / 2

    def density(t):
        return t ** (k - 1) * mp.e ** (-t / 2) / (mpf(2) ** k * gamma(k))

    if x <= 0:
        return 1.0
    return float(quad(density, [mpf(x), mp.inf]))


def poisson_tails_oracle(k: int, lam: float) -> tuple[float, float]:
    """(P(X <= k), P(X >= k)) by direct high-precision summation (mpmath)."""
    from mpmath import factorial, mp, mpf

    mp.dps = 60
    lam_mp = mpf(lam)
    pmf = [mp.e ** (-lam_mp) * lam_mp**i / factorial(i) for i in range(k + 1)]
    left = sum(pmf)
    right = 1 - left + pmf[k]
    return float(left), float(right)


def brute_force_min_toroidal_distance(points: np.ndarray) -> float:
    """O(n^2) minimal pairwise Euclidean distance on the unit torus."""
    n, t = points.shape
    best = math.inf
    for i in range(n):
        for j in range(i + 1, n):
            diff = np.abs(points[i] - points[j])
            diff = np.minimum(diff, 1.0 - diff)
            best = min(best, float(np.sqrt(np.sum(diff * diff))))
    return best


def brute_force_collisions(uniforms: np.ndarray, n: int, d: int, t: int) -> int:
    """Collision count of overlapping t-tuples by a plain dictionary."""
    seen: set[tuple[int, ...]] = set()
    collisions = 0
    for i in range(n):
        cell = tuple(min(int(uniforms[i + j] * d), d - 1) for j in range(t))
        if cell in seen:
            collisions += 1
        else:
            seen.add(cell)
    return collisions


def toy_overlap_frequency(
    period_log2: int, streams: int, length: int, trials: int, seed: int = 987654321
) -> float:
    """Monte Carlo overlap frequency for streams on a full-period cycle.

    Start offsets are uniform on the cycle; two streams of `length` draws
    overlap iff the circular gap between their starts is below `length`.
    """
    period = 1 << period_log2
    rng = np.random.default_rng(seed)
    starts = np.sort(rng.integers(0, period, size=(trials, streams)), axis=1)
    gaps = np.diff(starts, axis=1)
    wrap = period - (starts[:, -1] - starts[:, 0])
    min_gap = np.minimum(gaps.min(axis=1), wrap)
    return float(np.mean(min_gap < length))


def recompute_tables_from_jsonl(path, expected_fail_ids) -> dict:
    """Reconciliation: rebuild summary/histogram/pertest with plain loops.

    Intentionally shares no code with the package's aggregation; reads the
    raw JSONL records and recounts everything with dictionaries.
    """
    expected = set(expected_fail_ids)
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    records = [json.loads(line) for line in lines[1:]]
    units: dict[tuple[str, int, str], list[dict]] = {}
    for rec in records:
        units.setdefault((rec["technique"], rec["index"], rec["mode"]), []).append(rec)

    def failed_ids(recs: list[dict]) -> set[str]:
        return {r["test_id"] for r in recs if r["verdict"] == "Fail"}

    summary: dict[tuple[str, str], dict] = {}
    histogram: dict[tuple[str, str], dict[int, int]] = {}
    for (technique, index, mode), recs in units.items():
        key = (technique, mode)
        row = summary.setdefault(key, {"statuses": 0, "suspects": 0})
        row["statuses"] += 1
        fails = failed_ids(recs)
        if not fails <= expected:
            row["suspects"] += 1
            hist = histogram.setdefault(key, {})
            hist[len(fails)] = hist.get(len(fails), 0) + 1

    pertest: dict[tuple[str, str, str], dict] = {}
    for (technique, index, mode), recs in units.items():
        for rec in recs:
            key = (rec["test_id"], technique, mode)
            row = pertest.setdefault(key, {"fails": 0, "statuses": 0})
            row["statuses"] += 1
            row["fails"] += rec["verdict"] == "Fail"

    return {
        "summary": {
            key: (row["suspects"], row["statuses"], row["suspects"] / row["statuses"])
            for key, row in summary.items()
        },
        "histogram": histogram,
        "pertest": {
            key: row["fails"] / row["statuses"] for key, row in pertest.items()
        },
    }
