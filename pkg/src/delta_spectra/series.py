"""Partial sums of the series identities, with closed-form targets.

Every partial sum is accumulated in double-double (see
:mod:`delta_spectra.compensated`) in a fixed index order, so runs are
bitwise reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from typing import Optional, Sequence

import numpy as np

from . import specfun
from .compensated import dd_add, dd_cumsum, dd_recip
from .errors import DomainError
from .perturb import sho_bracket_sum

NONE = "none"
ADJACENT_AVERAGE = "adjacent_average"


@dataclass(frozen=True, eq=False)
class SeriesRun:
    series_id: str
    params: dict
    index_convention: str
    partial_sums: np.ndarray
    target: Optional[float] = None
    acceleration: str = NONE
    averaged: Optional[np.ndarray] = None
    partial_lo: Optional[np.ndarray] = None
    candidates: dict = field(default_factory=dict)
    supported: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def at(self, count: int) -> float:
        """Partial sum after ``count`` terms (1-based)."""
        return float(self.partial_sums[count - 1])


def accelerate_avg(partial_sums: Sequence[float]) -> np.ndarray:
    """Adjacent averages (S(j) + S(j-1))/2; one element shorter than the input."""
    s = np.asarray(partial_sums, dtype=float)
    if s.size < 2:
        raise ValueError("need at least two partial sums to average")
    return 0.5 * (s[1:] + s[:-1])


def _pick_supported(value: float, candidates: dict, tol: float) -> Optional[str]:
    best = min(candidates, key=lambda name: abs(candidates[name] - value), default=None)
    if best is None or abs(candidates[best] - value) > tol:
        return None
    return best


def odd_reciprocal_sum(n: int, terms: int) -> SeriesRun:
    """sum over odd l != n of 1/(l^2 - n^2); converges to 1/(4n^2)."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    l = np.arange(1, 2 * (terms + 1) + 1, 2, dtype=float)
    l = l[l != n][:terms]
    hi, lo = dd_cumsum(1.0 / (l * l - float(n * n)))
    return SeriesRun(
        "odd_reciprocal", {"n": n, "terms": terms},
        "first `terms` odd l != n, ascending from l = 1",
        hi, 1.0 / (4.0 * n * n), partial_lo=lo,
    )


def unrestricted_sum(n: int, terms: int) -> SeriesRun:
    """sum over l = 0, 1, 2, ... (l != n) of 1/(l^2 - n^2); converges to -1/(4n^2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    l = np.arange(0, terms + 1, dtype=float)
    l = l[l != n][:terms]
    hi, lo = dd_cumsum(1.0 / (l * l - float(n * n)))
    return SeriesRun(
        "unrestricted", {"n": n, "terms": terms},
        "l = 0, 1, 2, ... skipping n",
        hi, -1.0 / (4.0 * n * n), partial_lo=lo,
    )


def sum_rule_targets(n: int, p: float, x: float, L: float) -> dict:
    """Candidate closed forms for sum over l != n of sin(l p pi) sin(l pi x/L)/(l^2 - n^2).

    ``printed`` and ``alternate`` use cos(4 n p pi) and cos(2 n p pi) in the
    first term; ``derived_all_l`` is the exact value when l runs over every
    positive integer except n.
    """
    s = specfun.sinpi(n * p)
    sx = math.sin(n * math.pi * x / L)
    cx = math.cos(n * math.pi * x / L)
    second = -(math.pi * x / (2.0 * n * L)) * s * cx
    return {
        "printed": s * specfun.cospi(4 * n * p) * sx / (4.0 * n * n) + second,
        "alternate": s * specfun.cospi(2 * n * p) * sx / (4.0 * n * n) + second,
        "derived_all_l": (s / (4.0 * n * n) + math.pi * (1.0 - p) * specfun.cospi(n * p) / (2.0 * n)) * sx + second,
    }


def sum_rule_series(n: int, p: float, x: float, L: float = 1.0, terms: int = 100_000, *, parity: str = "odd") -> SeriesRun:
    """Partial sums of the x-dependent identity; all candidate targets are attached.

    ``parity="odd"`` sums odd l only (the printed convention), ``"all"`` every l != n.
    """
    if n < 1 or (parity == "odd" and n % 2 == 0):
        raise ValueError("n must be a positive (odd, for parity='odd') integer")
    if not (0.0 <= p <= 1.0 and 0.0 <= x <= p * L):
        raise DomainError("need 0 <= p <= 1 and 0 <= x <= pL")
    step = 2 if parity == "odd" else 1
    l = np.arange(1, step * (terms + 1) + 1, step, dtype=float)
    l = l[l != n][:terms]
    r = np.mod(l * p, 2.0)
    sin_lp = np.where((r == 0.0) | (r == 1.0), 0.0, np.sin(np.pi * r))
    hi, lo = dd_cumsum(sin_lp * np.sin(l * np.pi * x / L) / (l * l - float(n * n)))
    cands = sum_rule_targets(n, p, x, L)
    # the partial sums oscillate with an O(1/terms) envelope
    supported = _pick_supported(float(hi[-1]), cands, 10.0 / terms + 1e-12)
    return SeriesRun(
        "sum_rule", {"n": n, "p": p, "x": x, "L": L, "terms": terms, "parity": parity},
        f"{'odd' if parity == 'odd' else 'all'} l != n, ascending from l = 1",
        hi, cands["printed"], partial_lo=lo, candidates=cands, supported=supported,
    )


def series66_terms(count: int) -> tuple[np.ndarray, np.ndarray]:
    """First ``count`` terms of the p=1/2, x=L/4, n=1 instance, l = 3, 5, 7, ... as double-doubles.

    Term for l is s_l / (l^2 - 1) with the sign pattern + + - - + + ...
    """
    i = np.arange(count)
    l = 2.0 * i + 3.0
    th, tl = dd_recip((l - 1.0) * (l + 1.0))
    sign = np.where((i // 2) % 2 == 0, 1.0, -1.0)
    return sign * th, sign * tl


def pi_terms(j: int) -> tuple[np.ndarray, np.ndarray]:
    """Grouped terms (-1)^(k+1)/(4k) [1/(4k-2) + 1/(4k+2)] = (-1)^(k+1)/(8k^2 - 2), k = 1..j."""
    k = np.arange(1, j + 1, dtype=float)
    th, tl = dd_recip(8.0 * k * k - 2.0)
    sign = np.where(k % 2 == 1, 1.0, -1.0)
    return sign * th, sign * tl


def _dd_pi(h, l):
    # 8 S + 2; scaling by 8 is exact
    return dd_add(8.0 * h, 8.0 * l, 2.0, 0.0)


def pi_series(j: int, accelerate: bool = True) -> SeriesRun:
    """S(j) for the grouped series with limit (pi - 2)/8, and pi = 8 S + 2.

    With ``accelerate`` the averaged S(j) = [S(j) + S(j-1)]/2 is stored for
    j >= 2 (index 0 of ``averaged`` corresponds to j = 2).
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    th, tl = pi_terms(j)
    hi, lo = dd_cumsum(th, tl)
    pi_hi, pi_lo = _dd_pi(hi, lo)
    extra = {"pi_estimates": pi_hi, "pi_estimates_lo": pi_lo}
    averaged = None
    if accelerate and j >= 2:
        h, l = dd_add(hi[1:], lo[1:], hi[:-1], lo[:-1])
        avg_hi, avg_lo = 0.5 * h, 0.5 * l
        averaged = avg_hi
        ph, pl = _dd_pi(avg_hi, avg_lo)
        extra.update(averaged_lo=avg_lo, averaged_pi_estimates=ph, averaged_pi_estimates_lo=pl)
    return SeriesRun(
        "pi_grouped", {"j": j}, "k = 1, 2, ..., j",
        hi, (math.pi - 2.0) / 8.0, ADJACENT_AVERAGE if averaged is not None else NONE,
        averaged, lo, extra=extra,
    )


def pi_estimate_decimal(run: SeriesRun, j: int, averaged: bool = True) -> Decimal:
    """pi estimate at row j carried to the full double-double precision."""
    getcontext().prec = 40
    if averaged:
        if j < 2:
            raise ValueError("averaged estimates start at j = 2")
        h = run.extra["averaged_pi_estimates"][j - 2]
        l = run.extra["averaged_pi_estimates_lo"][j - 2]
    else:
        h = run.extra["pi_estimates"][j - 1]
        l = run.extra["pi_estimates_lo"][j - 1]
    return Decimal(float(h)) + Decimal(float(l))


def sho_series_targets(n: int) -> dict:
    """Both candidate constants for the oscillator series: -(1/pi^c) G^2 [psi(n+1) - psi(n+1/2)]."""
    G = specfun.gamma(n + 0.5) / specfun.gamma(n + 1.0)
    core = G * G * (specfun.digamma(n + 1.0) - specfun.digamma(n + 0.5))
    return {"c=1": -core / math.pi, "c=2": -core / math.pi**2}


def sho_series(n: int, l_max: int = 1_000_000) -> SeriesRun:
    """Bracket sum over l != n of c_l c_n/(n - l), c_l = (2l)!/(4^l (l!)^2).

    ``partial_sums`` holds the raw total and the tail-corrected total; the
    run records which candidate constant the corrected value supports.
    """
    b = sho_bracket_sum(n, l_max)
    cands = sho_series_targets(n)
    supported = _pick_supported(float(b.corrected), cands, 1e-6)
    return SeriesRun(
        "sho_bracket", {"n": n, "l_max": l_max}, "l = 0..l_max skipping n",
        np.array([b.raw, b.corrected]), None, candidates=cands, supported=supported,
        extra={"raw": b.raw, "corrected": float(b.corrected), "tail": float(b.tail)},
    )
