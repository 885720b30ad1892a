"""Scan, bracket and refine real roots of functions with known pole lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import NoConvergenceError

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200
EXCLUSION_FRACTION = 1e-6


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float


@dataclass(frozen=True)
class RootResult:
    x: float
    residual: float
    iterations: int
    bracket: Bracket


def _negative(v: float) -> bool:
    # zero counts as non-negative so a root sitting on a sample is bracketed once
    return v < 0.0


def scan_brackets(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n_samples: int,
    singularities: Sequence[float] = (),
    exclusion: float | None = None,
) -> list[Bracket]:
    """Return every sign change of ``f`` between adjacent samples on [lo, hi].

    Samples closer than ``exclusion`` to a registered singularity are dropped
    and replaced by points just outside the exclusion radius; intervals that
    contain a singularity are never reported.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ValueError("range must be finite with lo < hi")
    radius = EXCLUSION_FRACTION * (hi - lo) if exclusion is None else exclusion
    sing = np.array(sorted(s for s in singularities if lo - radius < s < hi + radius), dtype=float)
    xs = np.linspace(lo, hi, n_samples)
    if sing.size:
        near = np.min(np.abs(xs[:, None] - sing[None, :]), axis=1) < radius
        extra = np.concatenate([sing - radius, sing + radius])
        extra = extra[(extra >= lo) & (extra <= hi)]
        xs = np.unique(np.concatenate([xs[~near], extra]))
    values = [float(f(float(x))) for x in xs]
    out: list[Bracket] = []
    for i in range(len(xs) - 1):
        a, b = float(xs[i]), float(xs[i + 1])
        fa, fb = values[i], values[i + 1]
        if not (math.isfinite(fa) and math.isfinite(fb)):
            continue
        if _negative(fa) == _negative(fb):
            continue
        if sing.size and np.any((sing > a) & (sing < b)):
            continue
        out.append(Bracket(a, b, fa, fb))
    return out


def refine(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RootResult:
    """Brent's bisection/secant hybrid inside a valid bracket."""
    if bracket.f_lo == 0.0:
        return RootResult(bracket.lo, 0.0, 0, bracket)
    if bracket.f_hi == 0.0:
        return RootResult(bracket.hi, 0.0, 0, bracket)
    try:
        x, info = optimize.brentq(
            f, bracket.lo, bracket.hi, xtol=tol, rtol=4.0 * np.finfo(float).eps,
            maxiter=max_iter, full_output=True, disp=False,
        )
    except (ValueError, RuntimeError) as exc:
        raise NoConvergenceError(str(exc)) from exc
    if not info.converged:
        raise NoConvergenceError(f"no convergence after {info.iterations} iterations ({info.flag})")
    return RootResult(float(x), float(f(x)), int(info.iterations), bracket)


def find_roots(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n_samples: int,
    singularities: Sequence[float] = (),
    tol: float = DEFAULT_TOL,
    exclusion: float | None = None,
) -> list[RootResult]:
    """Scan then refine; roots come back sorted ascending."""
    brackets = scan_brackets(f, lo, hi, n_samples, singularities, exclusion)
    return sorted((refine(f, b, tol) for b in brackets), key=lambda r: r.x)
