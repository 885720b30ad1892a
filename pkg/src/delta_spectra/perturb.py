"""Rayleigh-Schroedinger coefficients by three independent routes.

closed forms, truncated sums over unperturbed states, and numerical
extraction from the exact eigenvalue conditions.  Coefficients follow
E(lambda) = E0 + lambda E1 + lambda^2 E2 for H' = -lambda delta(x - x0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy import special

from . import models, specfun
from .compensated import ordered_sum
from .errors import BranchJumpError, DomainError, InsufficientStatesError
from .models import (
    DEFAULT_UNITS,
    BoxDeltaSpec,
    FiniteWellDeltaSpec,
    HydrogenDeltaSpec,
    ModelSpec,
    OscillatorDeltaSpec,
    Units,
)

CLOSED_FORM = "closed_form"
SUM_OVER_STATES = "sum_over_states"
NUMERIC_EXTRACTION = "numeric_extraction"


@dataclass(frozen=True)
class PTCoefficients:
    E0: float
    E1: float
    E2: float
    provenance: str
    l_max: Optional[int] = None
    step: Optional[float] = None
    tail_estimate: Optional[float] = None


@dataclass(frozen=True)
class WavefunctionShift:
    n: int
    grid: tuple[float, ...]
    values: tuple[float, ...]
    form: str
    l_max: Optional[int] = None


# ---------------------------------------------------------------- box


def box_pt_closed(n: int, p: float, L: float = 1.0, units: Units = DEFAULT_UNITS) -> PTCoefficients:
    if n < 1 or not 0.0 < p < 1.0:
        raise ValueError("need n >= 1 and 0 < p < 1")
    hb, m = units.hbar, units.mass
    E0 = n * n * hb * hb * math.pi**2 / (2.0 * m * L * L)
    s = specfun.sinpi(n * p)
    if s == 0.0:
        return PTCoefficients(E0, 0.0, 0.0, CLOSED_FORM)
    cot = specfun.cospi(n * p) / s
    E1 = -(2.0 / L) * s * s
    E2 = -(2.0 * m / (n * n * hb * hb * math.pi**2)) * s**4 * (1.0 + 2.0 * math.pi * n * (1.0 - 2.0 * p) * cot)
    return PTCoefficients(E0, E1, E2, CLOSED_FORM)


def _sin_pi(x: np.ndarray) -> np.ndarray:
    # exact zeros where x is an integer
    r = np.mod(x, 2.0)
    out = np.sin(np.pi * r)
    out[(r == 0.0) | (r == 1.0)] = 0.0
    return out


def box_e2_sum(n: int, p: float, L: float = 1.0, units: Units = DEFAULT_UNITS, l_max: int = 100_000) -> PTCoefficients:
    """E2 from the sum over unperturbed box states l = 1..l_max, l != n."""
    if l_max <= n:
        raise ValueError("l_max must exceed n")
    pref = 8.0 * units.mass / (units.hbar**2 * math.pi**2) * specfun.sinpi(n * p) ** 2
    l = np.arange(1, l_max + 1, dtype=float)
    l = l[l != n]
    terms = _sin_pi(l * p) ** 2 / (n * n - l * l)
    E2 = pref * ordered_sum(terms)
    E0 = n * n * units.hbar**2 * math.pi**2 / (2.0 * units.mass * L * L)
    E1 = -(2.0 / L) * specfun.sinpi(n * p) ** 2
    # sin^2 averages to 1/2, so the omitted tail is about -1/(2 l_max) inside the bracket
    tail = -pref * 0.5 / l_max
    return PTCoefficients(E0, E1, E2, SUM_OVER_STATES, l_max=l_max, tail_estimate=tail)


def box_multi_e2_sum(spec: BoxDeltaSpec, n: int, l_max: int = 100_000) -> PTCoefficients:
    """Sum-over-states coefficients for several deltas.

    The strengths in ``spec`` act as relative weights w_d and the expansion
    parameter s multiplies all of them: lambda_d = s w_d / w_ref.
    """
    weights = _relative_weights([lam for _, lam in spec.deltas])
    L, u = spec.L, spec.units
    ps = np.array([p for p, _ in spec.deltas])
    w = np.array(weights)
    l = np.arange(1, l_max + 1, dtype=float)
    l = l[l != n]
    amp_n = (2.0 / L) * _sin_pi(n * ps)  # psi_n(x_d) psi_l(x_d) = (2/L) sin sin
    coupling = (_sin_pi(np.outer(l, ps)) * (w * amp_n)[None, :]).sum(axis=1)
    e_scale = u.hbar**2 * math.pi**2 / (2.0 * u.mass * L * L)
    terms = coupling**2 / (e_scale * (n * n - l * l))
    E0 = e_scale * n * n
    E1 = -float(np.sum(w * (2.0 / L) * _sin_pi(n * ps) ** 2))
    return PTCoefficients(E0, E1, ordered_sum(terms), SUM_OVER_STATES, l_max=l_max)


def _relative_weights(lams: Sequence[float]) -> list[float]:
    ref = next((x for x in lams if x != 0.0), None)
    if ref is None:
        # all strengths zero: scale every delta equally
        return [1.0 for _ in lams]
    return [x / ref for x in lams]


def _k1(n: int, p: float, L: float, units: Units) -> tuple[float, float]:
    k0 = n * math.pi / L
    # first-order wavenumber shift consistent with E1 = -(2/L) sin^2(n pi p)
    k1 = -2.0 * units.mass * specfun.sinpi(n * p) ** 2 / (units.hbar**2 * k0 * L)
    return k0, k1


def box_psi1(
    n: int,
    p: float,
    x: float,
    L: float = 1.0,
    form: str = "sum",
    *,
    l_max: int = 100_000,
    units: Units = DEFAULT_UNITS,
    parity: str = "all",
) -> float:
    """First-order wavefunction shift psi_n^(1)(x) per unit lambda.

    form:
      ``sum``         truncated sum over unperturbed states (l != n; ``parity="odd"`` keeps odd l only)
      ``closed``      printed closed form with the cos(4 n p pi) factor
      ``closed_alt``  same with cos(2 n p pi)
      ``derived``     closed form obtained by summing the series exactly for any p
    The three closed forms hold only for 0 <= x <= pL.
    """
    if form == "sum":
        l = np.arange(1, l_max + 1, dtype=float)
        keep = l != n
        if parity == "odd":
            keep &= (l % 2) == 1
        l = l[keep]
        e_scale = units.hbar**2 * math.pi**2 / (2.0 * units.mass * L * L)
        terms = _sin_pi(l * p) * np.sin(l * math.pi * x / L) / (e_scale * (n * n - l * l))
        return -math.sqrt(2.0 / L) * (2.0 / L) * specfun.sinpi(n * p) * ordered_sum(terms)
    if not 0.0 <= x <= p * L:
        raise DomainError("closed forms hold only for 0 <= x <= pL")
    k0, k1 = _k1(n, p, L, units)
    root = math.sqrt(2.0 / L)
    tail = root * k1 * x * math.cos(k0 * x)
    if form in ("closed", "closed_alt"):
        c = specfun.cospi(4 * n * p) if form == "closed" else specfun.cospi(2 * n * p)
        return root * math.sin(k0 * x) * k1 / (2.0 * k0) * (-1.0) ** n * c + tail
    if form == "derived":
        s = specfun.sinpi(n * p)
        if s == 0.0:
            return 0.0
        cot = specfun.cospi(n * p) / s
        a1 = -k1 * (1.0 / (2.0 * k0) + (1.0 - p) * L * cot)
        return root * a1 * math.sin(k0 * x) + tail
    raise ValueError(f"unknown form {form!r}")


def box_psi1_grid(n: int, p: float, xs: Sequence[float], L: float = 1.0, form: str = "sum", **kw) -> WavefunctionShift:
    vals = tuple(box_psi1(n, p, float(x), L, form, **kw) for x in xs)
    return WavefunctionShift(n, tuple(float(x) for x in xs), vals, form, kw.get("l_max") if form == "sum" else None)


# ---------------------------------------------------------------- oscillator


def _gamma_half_ratio(n: int) -> float:
    """Gamma(n + 1/2) / Gamma(n + 1)."""
    return specfun.gamma(n + 0.5) / specfun.gamma(n + 1.0)


def sho_pt_closed(n: int, spec: OscillatorDeltaSpec, parity: str = "even") -> PTCoefficients:
    """Closed forms for the n-th even (or odd) oscillator level, as printed.

    Even: E0 = (2n + 1/2) hbar omega,
    E1 = -(1/sqrt(pi)) sqrt(m omega/hbar) G,  E2 = -(m/(2 pi^2 hbar^2)) G^2 [psi(n+1) - psi(n+1/2)],
    G = Gamma(n+1/2)/Gamma(n+1).  Odd levels are untouched.
    """
    u = spec.units
    hw = u.hbar * spec.omega
    if parity == "odd":
        return PTCoefficients((2 * n + 1.5) * hw, 0.0, 0.0, CLOSED_FORM)
    G = _gamma_half_ratio(n)
    E1 = -(1.0 / math.sqrt(math.pi)) * math.sqrt(u.mass * spec.omega / u.hbar) * G
    E2 = -(u.mass / (2.0 * math.pi**2 * u.hbar**2)) * G * G * (specfun.digamma(n + 1.0) - specfun.digamma(n + 0.5))
    return PTCoefficients((2 * n + 0.5) * hw, E1, E2, CLOSED_FORM)


def sho_e1_matrix_element(n: int, spec: OscillatorDeltaSpec) -> float:
    """E1 = -|psi_2n(0)|^2 from the oscillator eigenfunction at the origin."""
    u = spec.units
    return -math.sqrt(u.mass * spec.omega / (math.pi * u.hbar)) * _central_weight(n)


def _central_weight(n: int) -> float:
    """(2n)! / (4^n (n!)^2) = Gamma(n+1/2)/(sqrt(pi) Gamma(n+1))."""
    return _gamma_half_ratio(n) / math.sqrt(math.pi)


def central_weights(l_max: int) -> np.ndarray:
    """c_l = (2l)!/(4^l (l!)^2) for l = 0..l_max by the ratio recurrence (no overflow)."""
    ratios = np.empty(l_max + 1)
    ratios[0] = 1.0
    l = np.arange(1, l_max + 1, dtype=float)
    ratios[1:] = (2.0 * l - 1.0) / (2.0 * l)
    return np.cumprod(ratios)


@dataclass(frozen=True)
class BracketSum:
    raw: float
    corrected: float
    tail: float
    l_max: int


def sho_bracket_sum(n: int, l_max: int) -> BracketSum:
    """B_n = sum_{l != n} c_l c_n / (n - l), truncated at l_max, with its asymptotic tail.

    For large l, c_l sqrt(pi l) l/(l - n) = 1 + (n - 1/8)/l + (n^2 - n/8 + 1/128)/l^2 + ...,
    so the omitted tail is -(c_n/sqrt(pi)) times Hurwitz zeta sums over l > l_max.
    """
    if l_max <= n:
        raise ValueError("l_max must exceed n")
    c = central_weights(l_max)
    l = np.arange(l_max + 1, dtype=float)
    keep = l != n
    terms = c[keep] * c[n] / (n - l[keep])
    raw = ordered_sum(terms)
    a = float(l_max + 1)
    coeffs = (1.0, n - 0.125, n * n - n / 8.0 + 1.0 / 128.0)
    tail = -(c[n] / math.sqrt(math.pi)) * sum(
        co * float(special.zeta(1.5 + i, a)) for i, co in enumerate(coeffs)
    )
    return BracketSum(raw, raw + tail, tail, l_max)


def sho_e2_sum(n: int, units: Units = DEFAULT_UNITS, omega: float = 1.0, l_max: int = 1_000_000, *, corrected: bool = True) -> PTCoefficients:
    """E2 = (m / 2 pi hbar^2) B_n from the sum over even oscillator states."""
    b = sho_bracket_sum(n, l_max)
    pref = units.mass / (2.0 * math.pi * units.hbar**2)
    spec = OscillatorDeltaSpec(omega, 0.0, units)
    E0 = (2 * n + 0.5) * units.hbar * omega
    E1 = sho_e1_matrix_element(n, spec)
    val = b.corrected if corrected else b.raw
    return PTCoefficients(E0, E1, pref * val, SUM_OVER_STATES, l_max=l_max, tail_estimate=pref * b.tail)


# ---------------------------------------------------------------- numeric extraction


def _with_scale(model: ModelSpec, s: float) -> ModelSpec:
    if isinstance(model, BoxDeltaSpec):
        w = _relative_weights([lam for _, lam in model.deltas])
        return BoxDeltaSpec(model.L, tuple((p, s * wi) for (p, _), wi in zip(model.deltas, w)), model.units)
    return replace(model, lam=s)


def unit_coupling(model: ModelSpec) -> tuple[ModelSpec, float]:
    """The model at unit coupling scale and the scale that recovers ``model``.

    For several deltas the scale is the first nonzero strength and the others
    keep their ratios to it.
    """
    if isinstance(model, BoxDeltaSpec):
        lam = next((x for _, x in model.deltas if x != 0.0), 0.0)
    else:
        lam = model.lam
    return _with_scale(model, 1.0), lam


def level_energy(model: ModelSpec, label: int) -> float:
    """Exact energy of the state carrying ``label`` in the model's spectrum."""
    if isinstance(model, BoxDeltaSpec):
        return models.box_delta_full_spectrum(model, label)[label - 1].energy
    if isinstance(model, FiniteWellDeltaSpec):
        levels = models.finite_well_delta_spectrum(model)
        if label > len(levels):
            raise BranchJumpError(f"state {label} is no longer bound")
        return levels[label - 1].energy
    if isinstance(model, OscillatorDeltaSpec):
        levels = models.sho_delta_spectrum(model, label + 1)
        return next(r.energy for r in levels if r.label == label)
    if isinstance(model, HydrogenDeltaSpec):
        return models.hydrogen_delta_spectrum(model, label)[label - 1].energy
    raise TypeError(f"unsupported model {type(model).__name__}")


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Value at x = 0 of the interpolating polynomial through (xs, ys)."""
    p = list(ys)
    n = len(xs)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i])
    return p[0]


def _level_gap(model: ModelSpec, label: int, E0: float) -> float:
    gaps = []
    for other in (label - 1, label + 1):
        if other < (0 if isinstance(model, OscillatorDeltaSpec) else 1):
            continue
        try:
            gaps.append(abs(level_energy(_with_scale(model, 0.0), other) - E0))
        except Exception:
            continue
    return min(gaps) if gaps else math.inf


def numeric_pt_extract(
    model: ModelSpec,
    label: int,
    steps: Sequence[float] = (1e-2, 5e-3, 2.5e-3),
    *,
    stencil: str = "symmetric",
) -> PTCoefficients:
    """E0, E1, E2 from exact roots at a few small couplings.

    The coupling of ``model`` is replaced by each step (for several deltas the
    strengths are rescaled together, keeping their ratios).  ``symmetric``
    uses +/- steps: central first and second differences, each Richardson
    extrapolated in step^2.  ``one_sided`` fits a polynomial through E(step)
    for positive steps only.
    """
    steps = sorted({float(h) for h in steps}, reverse=True)
    if len(steps) < 3:
        raise ValueError("need at least three distinct steps")
    E0 = level_energy(_with_scale(model, 0.0), label)
    gap = _level_gap(model, label, E0)

    def energy(s: float) -> float:
        E = level_energy(_with_scale(model, s), label)
        if abs(E - E0) > 0.5 * gap:
            raise BranchJumpError(f"level {label} moved by {E - E0:g} at coupling {s:g}, beyond half the level gap")
        return E

    if stencil == "symmetric":
        d1, d2 = [], []
        for h in steps:
            ep, em = energy(h), energy(-h)
            d1.append((ep - em) / (2.0 * h))
            d2.append((ep + em - 2.0 * E0) / (2.0 * h * h))
        h2 = [h * h for h in steps]
        E1 = _neville_at_zero(h2, d1)
        E2 = _neville_at_zero(h2, d2)
    elif stencil == "one_sided":
        es = [energy(h) for h in steps]
        # (E(h) - E0)/h = E1 + E2 h + E3 h^2 + ...; extrapolate the quotients
        q1 = [(e - E0) / h for e, h in zip(es, steps)]
        E1 = _neville_at_zero(steps, q1)
        q2 = [(e - E0 - E1 * h) / (h * h) for e, h in zip(es, steps)]
        E2 = _neville_at_zero(steps, q2)
    else:
        raise ValueError(f"unknown stencil {stencil!r}")
    return PTCoefficients(E0, E1, E2, NUMERIC_EXTRACTION, step=steps[-1])


def remainder_slope(model: ModelSpec, label: int, coeffs: PTCoefficients, lams: Sequence[float]) -> tuple[float, np.ndarray]:
    """Log-log slope of |E(lambda) - E0 - lambda E1 - lambda^2 E2| against lambda."""
    rem = []
    for lam in lams:
        E = level_energy(_with_scale(model, lam), label)
        rem.append(abs(E - coeffs.E0 - lam * coeffs.E1 - lam * lam * coeffs.E2))
    rem = np.array(rem)
    slope = np.polyfit(np.log(np.asarray(lams)), np.log(rem), 1)[0]
    return float(slope), rem


# ---------------------------------------------------------------- finite well


@dataclass(frozen=True)
class WellState:
    energy: float
    label: int
    parity: str
    psi0_sq: float  # |psi(0)|^2 of the normalised state


def well_states(spec: FiniteWellDeltaSpec) -> list[WellState]:
    """Unperturbed bound states with |psi(0)|^2 from quadrature normalisation."""
    out = []
    for r in models.finite_well_spectrum(spec):
        if r.parity == "even":
            psi0 = 1.0 / models.finite_well_norm_sq(FiniteWellDeltaSpec(spec.L, spec.V0, 0.0, spec.units), r.energy, "even")
        else:
            psi0 = 0.0
        out.append(WellState(r.energy, r.label, r.parity, psi0))
    return out


def well_bound_part_e2(spec: FiniteWellDeltaSpec, target: int) -> float:
    """Bound-state part of E2 for the state labelled ``target`` (per unit lambda^2)."""
    states = well_states(spec)
    even = [s for s in states if s.parity == "even"]
    if len(even) < 2:
        raise InsufficientStatesError("need at least two even bound states")
    n = next((s for s in states if s.label == target), None)
    if n is None:
        raise InsufficientStatesError(f"state {target} is not bound")
    return math.fsum(s.psi0_sq * n.psi0_sq / (n.energy - s.energy) for s in states if s.label != target)


@dataclass(frozen=True)
class ContinuumEstimate:
    R: float
    value: float
    tail: float
    states: int


def _boxed_even_condition(k: np.ndarray, L: float, D: float, alpha: float) -> np.ndarray:
    q = np.sqrt(k * k - alpha * alpha)
    return k * np.sin(k * L) * np.sin(q * D) - q * np.cos(k * L) * np.cos(q * D)


def well_continuum_boxed(spec: FiniteWellDeltaSpec, target: int, R: float, *, k_max_factor: float = 60.0) -> ContinuumEstimate:
    """Continuum part of E2 with the well embedded in hard walls at +/-R.

    Above-barrier even states of the boxed problem are found by a dense
    sign scan plus vectorised bisection; the sum is cut at k_max and the
    remainder is estimated from the asymptotic density of states.
    """
    u = spec.units
    L = spec.L
    D = R - L
    alpha = spec.alpha
    n = next(s for s in well_states(spec) if s.label == target)
    k_max = k_max_factor * max(alpha, math.pi / L)
    dk = math.pi / (R * 24.0)
    k = np.arange(alpha * (1.0 + 1e-12), k_max, dk)
    f = _boxed_even_condition(k, L, D, alpha)
    idx = np.nonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))[0]
    a, b = k[idx], k[idx + 1]
    fa = f[idx]
    for _ in range(60):
        mid = 0.5 * (a + b)
        fm = _boxed_even_condition(mid, L, D, alpha)
        left = np.signbit(fm) == np.signbit(fa)
        a = np.where(left, mid, a)
        fa = np.where(left, fm, fa)
        b = np.where(left, b, mid)
    kr = 0.5 * (a + b)
    q = np.sqrt(kr * kr - alpha * alpha)
    # psi = cos(kx) inside, B sin(q(R-|x|)) outside, with B^2 = cos^2 kL + (k/q)^2 sin^2 kL
    B2 = np.cos(kr * L) ** 2 + (kr / q) ** 2 * np.sin(kr * L) ** 2
    inner = L / 2.0 + np.sin(2.0 * kr * L) / (4.0 * kr)
    outer = D / 2.0 - np.sin(2.0 * q * D) / (4.0 * q)
    psi0_sq = 1.0 / (2.0 * (inner + B2 * outer))
    E = u.kinetic * kr * kr
    value = n.psi0_sq * ordered_sum(psi0_sq / (n.energy - E))
    tail = -(2.0 * u.mass / (math.pi * u.hbar**2 * k_max)) * n.psi0_sq
    return ContinuumEstimate(R, value + tail, tail, int(kr.size))
