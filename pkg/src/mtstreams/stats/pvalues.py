"""P-value machinery shared by the test families.

Conventions: chi-square p-values are right tails; the Poisson helper returns
both tails, each including the observed atom; the KS helper is the two-sided
asymptotic test against Uniform[0, 1].
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import gammaincc


def chi2_pvalue(x: float, df: int) -> float:
    """Right-tail P(X >= x) for a chi-square variable with df degrees."""
    if x < 0:
        raise ValueError(f"statistic must be >= 0, got {x}")
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    return float(gammaincc(df / 2.0, x / 2.0))


def _poisson_logpmf(k: int, lam: float) -> float:
    return -lam + k * math.log(lam) - math.lgamma(k + 1)


def _poisson_cdf(k: int, lam: float) -> float:
    """P(X <= k), summed in log space against the largest term."""
    if k < 0:
        return 0.0
    peak = min(k, int(lam))
    log_peak = _poisson_logpmf(peak, lam)
    total = 0.0
    for i in range(k + 1):
        total += math.exp(_poisson_logpmf(i, lam) - log_peak)
    return min(1.0, math.exp(log_peak + math.log(total)))


def _poisson_upper_tail(k: int, lam: float) -> float:
    """P(X >= k) for k > lam, by direct scaled summation of the tail."""
    log_first = _poisson_logpmf(k, lam)
    term = 1.0
    total = 1.0
    i = k
    while term > total * 1e-20:
        i += 1
        term *= lam / i
        total += term
    log_total = log_first + math.log(total)
    return math.exp(log_total) if log_total > -745.0 else 0.0


def poisson_two_sided_pvalue(observed: int, lam: float) -> tuple[float, float]:
    """(left, right) = (P(X <= observed), P(X >= observed)) under Poisson(lam).

    Both tails include the observed atom, so left + right >= 1.
    """
    if observed < 0:
        raise ValueError(f"observed count must be >= 0, got {observed}")
    if not lam > 0:
        raise ValueError(f"mean must be > 0, got {lam}")
    if observed <= lam:
        left = _poisson_cdf(observed, lam)
        right = 1.0 - _poisson_cdf(observed - 1, lam)
    else:
        right = _poisson_upper_tail(observed, lam)
        left = 1.0 - _poisson_upper_tail(observed + 1, lam)
    return left, right


def kolmogorov_sf(t: float) -> float:
    """Q(t) = P(K > t) for the asymptotic Kolmogorov distribution.

    Uses the theta-series form for small t and the alternating series for
    large t; both converge to well under 1e-10 at the switch point.
    """
    if t <= 0.0:
        return 1.0
    if t < 1.0:
        # 1 - (sqrt(2*pi)/t) * sum exp(-(2j-1)^2 * pi^2 / (8 t^2))
        a = math.pi * math.pi / (8.0 * t * t)
        total = 0.0
        j = 1
        while True:
            term = math.exp(-((2 * j - 1) ** 2) * a)
            total += term
            if term < 1e-20 * max(total, 1e-300):
                break
            j += 1
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / t * total))
    total = 0.0
    sign = 1.0
    j = 1
    while True:
        term = math.exp(-2.0 * j * j * t * t)
        total += sign * term
        if term < 1e-20:
            break
        sign = -sign
        j += 1
    return min(1.0, max(0.0, 2.0 * total))


def ks_uniform_pvalue(samples: Sequence[float]) -> float:
    """Two-sided KS p-value of the samples against Uniform[0, 1]."""
    u = np.sort(np.asarray(samples, dtype=np.float64))
    n = u.size
    if n < 10:
        raise ValueError(f"need >= 10 samples, got {n}")
    if u[0] < 0.0 or u[-1] > 1.0:
        raise ValueError("samples must lie in [0, 1]")
    grid = np.arange(1, n + 1, dtype=np.float64) / n
    d_plus = np.max(grid - u)
    d_minus = np.max(u - (grid - 1.0 / n))
    d = max(d_plus, d_minus)
    return kolmogorov_sf(math.sqrt(n) * d)


def merged_chi2_pvalue(
    observed: np.ndarray, expected: np.ndarray, min_expected: float = 5.0
) -> tuple[float, float, int]:
    """Chi-square right-tail p after ascending adjacent-cell merging.

    Cells are scanned in ascending index order and merged with their
    successors until each merged cell's expectation reaches min_expected;
    a deficient final cell is folded into the previous one. Returns
    (p_value, statistic, degrees of freedom).
    """
    observed = np.asarray(observed, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    if observed.shape != expected.shape:
        raise ValueError("observed and expected must have equal length")
    obs_cells: list[float] = []
    exp_cells: list[float] = []
    acc_o = 0.0
    acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_cells.append(acc_o)
            exp_cells.append(acc_e)
            acc_o = 0.0
            acc_e = 0.0
    if acc_e > 0.0:
        if not exp_cells:
            raise ValueError("total expectation below the merge threshold")
        obs_cells[-1] += acc_o
        exp_cells[-1] += acc_e
    if len(exp_cells) < 2:
        raise ValueError("fewer than 2 cells after merging")
    o_arr = np.array(obs_cells)
    e_arr = np.array(exp_cells)
    chi2 = float(np.sum((o_arr - e_arr) ** 2 / e_arr))
    df = len(exp_cells) - 1
    return chi2_pvalue(chi2, df), chi2, df
