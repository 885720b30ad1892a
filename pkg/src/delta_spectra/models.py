"""Solvable systems perturbed by attractive delta potentials.

Each model exposes its transcendental eigenvalue condition, the pole lattice
of that condition, and a spectrum assembled through :mod:`delta_spectra.roots`.
The perturbation is always H' = -lambda * delta(x - x0) with lambda > 0
attractive, giving the derivative jump psi'(x0+) - psi'(x0-) = -(2 m lambda / hbar^2) psi(x0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy import integrate, optimize

from . import roots, specfun
from .errors import DomainError, NoConvergenceError, PoleError


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    mass: float = 0.5

    def __post_init__(self):
        if not (self.hbar > 0 and self.mass > 0):
            raise ValueError("hbar and mass must be strictly positive")

    @property
    def kinetic(self) -> float:
        """hbar^2 / 2m, the factor turning k^2 into an energy."""
        return self.hbar**2 / (2.0 * self.mass)

    def jump(self, lam: float) -> float:
        """Derivative-jump coefficient 2 m lambda / hbar^2."""
        return 2.0 * self.mass * lam / self.hbar**2


DEFAULT_UNITS = Units()


@dataclass(frozen=True)
class BoxDeltaSpec:
    L: float
    deltas: tuple[tuple[float, float], ...]
    units: Units = DEFAULT_UNITS

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple((float(p), float(lam)) for p, lam in self.deltas))
        if not self.L > 0:
            raise ValueError("L must be positive")
        ps = [p for p, _ in self.deltas]
        if any(not 0.0 < p < 1.0 for p in ps):
            raise ValueError("every delta position fraction must lie in (0, 1)")
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("delta positions must be strictly increasing")

    @classmethod
    def single(cls, L: float, p: float, lam: float, units: Units = DEFAULT_UNITS) -> "BoxDeltaSpec":
        return cls(L, ((p, lam),), units)

    def with_lambda_scale(self, s: float) -> "BoxDeltaSpec":
        return BoxDeltaSpec(self.L, tuple((p, s * lam) for p, lam in self.deltas), self.units)


@dataclass(frozen=True)
class FiniteWellDeltaSpec:
    L: float
    V0: float
    lam: float
    units: Units = DEFAULT_UNITS

    def __post_init__(self):
        if not (self.L > 0 and self.V0 > 0):
            raise ValueError("L and V0 must be positive")

    @property
    def alpha(self) -> float:
        return math.sqrt(2.0 * self.units.mass * self.V0) / self.units.hbar

    def bound_state_count(self) -> int:
        return max(1, math.ceil(2.0 * self.alpha * self.L / math.pi))


@dataclass(frozen=True)
class OscillatorDeltaSpec:
    omega: float
    lam: float
    units: Units = DEFAULT_UNITS

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    @property
    def xi(self) -> float:
        return math.sqrt(self.units.hbar / (2.0 * self.units.mass * self.omega))

    def a_of_energy(self, E: float) -> float:
        return -E / (self.units.hbar * self.omega)

    def coupling(self) -> float:
        """Dimensionless m lambda xi / hbar^2."""
        return self.units.mass * self.lam * self.xi / self.units.hbar**2


@dataclass(frozen=True)
class HydrogenDeltaSpec:
    a: float
    lam: float
    e2: float = 1.0
    units: Units = DEFAULT_UNITS

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("delta position a must be positive")
        if not self.e2 > 0:
            raise ValueError("e2 must be positive")

    def k_of_energy(self, E: float) -> float:
        if not E < 0:
            raise DomainError("hydrogen bound states need E < 0")
        return math.sqrt(-2.0 * self.units.mass * E) / self.units.hbar

    def alpha_of_energy(self, E: float) -> float:
        return self.e2 * self.units.mass / (self.units.hbar**2 * self.k_of_energy(E))

    def energy_of_alpha(self, alpha: float) -> float:
        u = self.units
        return -u.mass * self.e2**2 / (2.0 * u.hbar**2 * alpha**2)


ModelSpec = Union[BoxDeltaSpec, FiniteWellDeltaSpec, OscillatorDeltaSpec, HydrogenDeltaSpec]


@dataclass(frozen=True)
class EigenRoot:
    energy: float
    label: int
    parity: Optional[str] = None
    variable: float = math.nan
    residual: float = 0.0
    bracket: Optional[roots.Bracket] = field(default=None, compare=False)


# ---------------------------------------------------------------- box + deltas


def _free_step(k2: float, d: float) -> tuple[float, float]:
    """(cos(kd), sin(kd)/k) continued analytically to k^2 <= 0."""
    if k2 > 0.0:
        k = math.sqrt(k2)
        return math.cos(k * d), math.sin(k * d) / k
    if k2 < 0.0:
        q = math.sqrt(-k2)
        return math.cosh(q * d), math.sinh(q * d) / q
    return 1.0, d


def box_wall_value(k2: float, spec: BoxDeltaSpec) -> tuple[float, float]:
    """Propagate (psi, psi') = (0, 1) from x=0 to x=L through every delta.

    Each free segment is a 2x2 transfer matrix; each delta adds the jump
    psi' -> psi' - (2 m lambda / hbar^2) psi.  ``k2`` is 2mE/hbar^2 and may be
    negative.
    """
    psi, dpsi = 0.0, 1.0
    x = 0.0
    for p, lam in spec.deltas:
        c, s = _free_step(k2, p * spec.L - x)
        psi, dpsi = c * psi + s * dpsi, -k2 * s * psi + c * dpsi
        dpsi -= spec.units.jump(lam) * psi
        x = p * spec.L
    c, s = _free_step(k2, spec.L - x)
    return c * psi + s * dpsi, -k2 * s * psi + c * dpsi


def box_delta_condition(k: float, spec: BoxDeltaSpec) -> float:
    """Transfer-matrix residual k^2 psi(L); for one delta it equals
    k sin kL - (2 m lambda / hbar^2) sin(kpL) sin(k(1-p)L)."""
    if not k > 0:
        raise DomainError("k must be positive")
    return k * k * box_wall_value(k * k, spec)[0]


def box_single_delta_residual(k: float, p: float, lam: float, L: float, units: Units = DEFAULT_UNITS) -> float:
    """Closed single-delta condition, written out directly."""
    return k * math.sin(k * L) - units.jump(lam) * math.sin(k * p * L) * math.sin(k * (1.0 - p) * L)


def box_energy_residual(E: float, spec: BoxDeltaSpec) -> float:
    """psi(L) as an entire function of the energy."""
    return box_wall_value(E / spec.units.kinetic, spec)[0]


def _box_energy_floor(spec: BoxDeltaSpec) -> float:
    # each attractive delta binds at most -(hbar^2/2m)(g/2)^2 on its own
    g_total = sum(max(spec.units.jump(lam), 0.0) for _, lam in spec.deltas)
    return -spec.units.kinetic * (0.5 * g_total) ** 2 * 1.05 - 1e-12


def _box_negative_roots(spec: BoxDeltaSpec) -> list[roots.RootResult]:
    floor = _box_energy_floor(spec)
    if floor >= 0.0:
        return []
    f = lambda E: box_energy_residual(E, spec)
    out = []
    for r in roots.find_roots(f, floor, 0.0, 2000, tol=1e-15 * max(1.0, -floor)):
        if r.x < 0.0:
            out.append(r)
    return out


def _node_locked(spec: BoxDeltaSpec, n: int) -> bool:
    return all(abs(n * p - round(n * p)) < 1e-12 for p, _ in spec.deltas)


def box_delta_spectrum(spec: BoxDeltaSpec, count: int, *, samples_per_level: int = 64) -> list[EigenRoot]:
    """Lowest ``count`` positive-energy levels.

    Labels are ranks in the full spectrum (1 = ground state), so states that
    have dropped below zero still occupy their label and the positive states
    keep stable labels as lambda varies.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    L = spec.L
    neg = _box_negative_roots(spec)
    n_neg = len(neg)
    f = lambda k: box_delta_condition(k, spec)
    levels = count + n_neg + len(spec.deltas) + 1
    k_hi = levels * math.pi / L
    k_lo = 1e-9 * math.pi / L
    found = roots.find_roots(f, k_lo, k_hi, samples_per_level * levels, tol=1e-14 / L)
    found = [r for r in found if r.x > k_lo * 10]
    out = []
    for i, r in enumerate(found[:count]):
        label = n_neg + i + 1
        k = r.x
        # states with a node on every delta are untouched by the perturbation
        n_box = round(k * L / math.pi)
        if n_box >= 1 and abs(k * L - n_box * math.pi) < 1e-8 and _node_locked(spec, n_box):
            k = n_box * math.pi / L
        out.append(EigenRoot(spec.units.kinetic * k * k, label, None, k, r.residual, r.bracket))
    if len(out) < count:
        raise NoConvergenceError(f"found only {len(out)} of {count} box levels")
    return out


def box_delta_full_spectrum(spec: BoxDeltaSpec, count: int) -> list[EigenRoot]:
    """Lowest ``count`` levels including any negative-energy states."""
    neg = [
        EigenRoot(r.x, i + 1, None, r.x, r.residual, r.bracket)
        for i, r in enumerate(_box_negative_roots(spec))
    ]
    rest = box_delta_spectrum(spec, max(1, count - len(neg))) if count > len(neg) else []
    return (neg + rest)[:count]


def critical_length(lam: float, units: Units = DEFAULT_UNITS) -> float:
    """Half-width below which the centred delta in a box of width 2L has no E < 0 state."""
    return units.hbar**2 / (units.mass * lam)


def box_delta_bound_state(L: float, lam: float, units: Units = DEFAULT_UNITS) -> tuple[Optional[EigenRoot], float]:
    """Negative-energy state of a box of width 2L with a delta at its centre.

    Returns (root or None, L_c).
    """
    spec = BoxDeltaSpec.single(2.0 * L, 0.5, lam, units)
    neg = _box_negative_roots(spec)
    root = None
    if neg:
        r = neg[0]
        root = EigenRoot(r.x, 1, "even", r.x, r.residual, r.bracket)
    return root, critical_length(lam, units)


def box_ground_energy(spec: BoxDeltaSpec) -> float:
    """Lowest eigenvalue of any sign, found by scanning psi(L; E)."""
    floor = _box_energy_floor(spec)
    top = spec.units.kinetic * (math.pi / spec.L) ** 2 * 1.0001
    lo = min(floor, -1e-12 * top)
    f = lambda E: box_energy_residual(E, spec)
    found = roots.find_roots(f, lo, top, 4000, tol=1e-16 * top)
    if not found:
        raise NoConvergenceError("no ground state found")
    return found[0].x


def detect_critical_length(lam: float, units: Units = DEFAULT_UNITS, *, rtol: float = 1e-12) -> float:
    """Half-width at which the ground energy of the centred-delta box crosses zero.

    Found by bracketing the sign change of the numerically computed ground
    energy as the half-width varies; no closed formula is used.
    """
    def ground(L: float) -> float:
        return box_ground_energy(BoxDeltaSpec.single(2.0 * L, 0.5, lam, units))

    guess = units.hbar**2 / (units.mass * abs(lam))  # only sets the search scale
    lo, hi = 0.05 * guess, 20.0 * guess
    if ground(lo) <= 0 or ground(hi) >= 0:
        raise NoConvergenceError("critical length not bracketed")
    return float(optimize.brentq(ground, lo, hi, xtol=rtol * guess, rtol=1e-15, maxiter=200))


def box_wavefunction(spec: BoxDeltaSpec, k2: float, x: np.ndarray) -> np.ndarray:
    """Unnormalised psi(x) with psi(0)=0, psi'(0)=1 at k^2 = 2mE/hbar^2."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    psi, dpsi, x0 = 0.0, 1.0, 0.0
    edges = [p * spec.L for p, _ in spec.deltas] + [spec.L]
    lams = [lam for _, lam in spec.deltas] + [0.0]
    for edge, lam in zip(edges, lams):
        mask = (x >= x0) & (x <= edge)
        d = x[mask] - x0
        if k2 > 0:
            k = math.sqrt(k2)
            out[mask] = psi * np.cos(k * d) + dpsi * np.sin(k * d) / k
        elif k2 < 0:
            q = math.sqrt(-k2)
            out[mask] = psi * np.cosh(q * d) + dpsi * np.sinh(q * d) / q
        else:
            out[mask] = psi + dpsi * d
        c, s = _free_step(k2, edge - x0)
        psi, dpsi = c * psi + s * dpsi, -k2 * s * psi + c * dpsi
        dpsi -= spec.units.jump(lam) * psi
        x0 = edge
    return out


# ---------------------------------------------------------------- finite well


def _well_k_kappa(E: float, spec: FiniteWellDeltaSpec) -> tuple[float, float]:
    h, m = spec.units.hbar, spec.units.mass
    return math.sqrt(2.0 * m * E) / h, math.sqrt(2.0 * m * (spec.V0 - E)) / h


def finite_well_even_residual(E: float, spec: FiniteWellDeltaSpec) -> float:
    """Pole-free even condition k sin kL - kappa cos kL + (g/2)(cos kL + (kappa/k) sin kL), times k."""
    k, kap = _well_k_kappa(E, spec)
    s, c = math.sin(k * spec.L), math.cos(k * spec.L)
    g = spec.units.jump(spec.lam)
    return k * k * s - k * kap * c + 0.5 * g * (k * c + kap * s)


def finite_well_negative_even_residual(E: float, spec: FiniteWellDeltaSpec) -> float:
    """Even condition for E < 0 (below the well floor), divided by k and continued to k = iq."""
    h, m = spec.units.hbar, spec.units.mass
    q = math.sqrt(-2.0 * m * E) / h
    kap = math.sqrt(2.0 * m * (spec.V0 - E)) / h
    sh, ch = math.sinh(q * spec.L), math.cosh(q * spec.L)
    shq = sh / q if q > 0.0 else spec.L
    g = spec.units.jump(spec.lam)
    return -q * sh - kap * ch + 0.5 * g * (ch + kap * shq)


def finite_well_odd_residual(E: float, spec: FiniteWellDeltaSpec) -> float:
    """Pole-free odd condition; odd states do not feel a delta at the origin."""
    k, kap = _well_k_kappa(E, spec)
    return k * math.cos(k * spec.L) + kap * math.sin(k * spec.L)


def finite_well_delta_condition(E: float, spec: FiniteWellDeltaSpec, *, sign: str = "attractive") -> float:
    """Even-parity condition in the energy variable, tangent form.

    E tan(kL) - sqrt(E(V0-E)) = s lambda sqrt(m)/(sqrt(2) hbar) [sqrt(V0-E) tan(kL) + sqrt(E)]
    with s = -1 for the attractive delta (default) and s = +1 for ``sign="printed"``,
    which describes a repulsive delta.  Poles sit at kL = (2j+1) pi / 2.
    """
    if not 0.0 < E < spec.V0:
        raise DomainError(f"E must lie in (0, V0), got {E}")
    if sign not in ("attractive", "printed"):
        raise ValueError(f"unknown sign convention {sign!r}")
    s = -1.0 if sign == "attractive" else 1.0
    k, _ = _well_k_kappa(E, spec)
    c = math.cos(k * spec.L)
    if c == 0.0:
        raise PoleError("tan(kL) is singular")
    t = math.sin(k * spec.L) / c
    lhs = E * t - math.sqrt(E * (spec.V0 - E))
    pref = spec.lam * math.sqrt(spec.units.mass) / (math.sqrt(2.0) * spec.units.hbar)
    return lhs - s * pref * (math.sqrt(spec.V0 - E) * t + math.sqrt(E))


def finite_well_poles(spec: FiniteWellDeltaSpec) -> list[float]:
    """Energies where tan(kL) diverges inside (0, V0)."""
    out = []
    j = 0
    while True:
        k = (2 * j + 1) * math.pi / (2.0 * spec.L)
        E = spec.units.kinetic * k * k
        if E >= spec.V0:
            return out
        out.append(E)
        j += 1


def _well_scan(f: Callable[[float], float], spec: FiniteWellDeltaSpec, singular: Sequence[float]) -> list[roots.RootResult]:
    lo = 1e-10 * spec.V0
    hi = spec.V0 * (1.0 - 1e-13)
    n = 200 * (spec.bound_state_count() + 2)
    return roots.find_roots(f, lo, hi, n, singular, tol=1e-15 * spec.V0)


def finite_well_delta_spectrum(spec: FiniteWellDeltaSpec) -> list[EigenRoot]:
    """All bound states with E < V0 (E < 0 only for a strong attractive delta), labelled 1, 2, ... in energy order."""
    even_f = lambda E: finite_well_delta_condition(E, spec)
    odd_f = lambda E: finite_well_odd_residual(E, spec)
    poles = finite_well_poles(spec)
    even = [(r, "even") for r in _well_scan(even_f, spec, poles)]
    # the tangent form can also change sign across E -> 0 only through a pole, so
    # keep roots where the pole-free residual is small as well
    even = [(r, p) for r, p in even if abs(finite_well_even_residual(r.x, spec)) < 1e-6 * spec.V0]
    odd = [(r, "odd") for r in _well_scan(odd_f, spec, ())]
    if spec.lam > 0.0:
        # a strong attractive delta can pull the ground state below the floor;
        # the free delta bound state -m lam^2/(2 hbar^2) is a lower bound
        f = lambda E: finite_well_negative_even_residual(E, spec)
        floor = -1.01 * spec.units.mass * spec.lam**2 / (2.0 * spec.units.hbar**2) - 1e-12
        neg = roots.find_roots(f, floor, -1e-14 * spec.V0, 400, tol=1e-15 * spec.V0)
        even = [(r, "even") for r in neg] + even
    merged = sorted(even + odd, key=lambda t: t[0].x)
    return [EigenRoot(r.x, i + 1, par, r.x, r.residual, r.bracket) for i, (r, par) in enumerate(merged)]


def finite_well_spectrum(spec: FiniteWellDeltaSpec) -> list[EigenRoot]:
    """Unperturbed bound states (the delta strength in ``spec`` is ignored)."""
    return finite_well_delta_spectrum(FiniteWellDeltaSpec(spec.L, spec.V0, 0.0, spec.units))


def finite_well_wavefunction(spec: FiniteWellDeltaSpec, E: float, parity: str) -> Callable[[np.ndarray], np.ndarray]:
    """Unnormalised eigenfunction at energy E (cos/sin branch inside, exponential tails)."""
    k, kap = _well_k_kappa(E, spec)
    L = spec.L
    if parity == "even":
        b = -spec.units.jump(spec.lam) / (2.0 * k)

        def inside(x):
            ax = np.abs(x)
            return np.cos(k * ax) + b * np.sin(k * ax)
    else:
        def inside(x):
            return np.sin(k * x)

    edge = float(inside(np.array(L)))

    def psi(x):
        x = np.asarray(x, dtype=float)
        out = np.where(np.abs(x) <= L, inside(x), 0.0)
        tail = edge * np.exp(-kap * (np.abs(x) - L))
        if parity == "odd":
            tail = tail * np.sign(x)
        return np.where(np.abs(x) <= L, out, tail)

    return psi


def finite_well_norm_sq(spec: FiniteWellDeltaSpec, E: float, parity: str) -> float:
    """Integral of psi^2 over the real line by adaptive quadrature."""
    psi = finite_well_wavefunction(spec, E, parity)
    f = lambda x: float(psi(np.array(x))) ** 2
    inner, _ = integrate.quad(f, 0.0, spec.L, epsabs=0.0, epsrel=1e-13, limit=200)
    outer, _ = integrate.quad(f, spec.L, np.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * (inner + outer)


def finite_well_amplitude_printed(spec: FiniteWellDeltaSpec, E: float, plus: bool) -> float:
    """Even-state amplitude exactly as the closed expression is printed; kept for comparison only."""
    k, kap = _well_k_kappa(E, spec)
    sgn = 1.0 if plus else -1.0
    L = spec.L
    return math.sqrt(2.0) / math.sqrt(L + sgn * math.sin(2.0 * k * L) / (2.0 * k) + math.cos(k * L / (2.0 * kap)) ** 2)


def finite_well_amplitude_analytic(spec: FiniteWellDeltaSpec, E: float) -> float:
    """Even-state amplitude A of A cos(kx) at lambda = 0, from the exact integral."""
    k, kap = _well_k_kappa(E, spec)
    L = spec.L
    return 1.0 / math.sqrt(L + math.sin(2.0 * k * L) / (2.0 * k) + math.cos(k * L) ** 2 / kap)


# ---------------------------------------------------------------- oscillator


def sho_delta_condition(E: float, spec: OscillatorDeltaSpec, *, sign: str = "attractive") -> float:
    """Gamma-ratio form of the even-sector condition, LHS - RHS.

    sqrt(2) Gamma(3/4 - a/2)/Gamma(1/4 - a/2) tan(pi/4 + pi a/2) - s m lambda xi/hbar^2,
    a = -E/(hbar omega), s = +1 for an attractive delta, s = -1 for ``sign="printed"``.
    """
    if sign not in ("attractive", "printed"):
        raise ValueError(f"unknown sign convention {sign!r}")
    s = 1.0 if sign == "attractive" else -1.0
    a = spec.a_of_energy(E)
    c = specfun.cospi(0.25 + 0.5 * a)
    if c == 0.0:
        raise PoleError(f"tan(pi/4 + pi a/2) is singular at E={E}")
    g34 = 0.75 - 0.5 * a
    if specfun._is_nonpositive_integer(g34):
        raise PoleError(f"Gamma(3/4 - a/2) is singular at E={E}")
    ratio = specfun.gamma(g34) * specfun.rgamma(0.25 - 0.5 * a)
    tan = specfun.sinpi(0.25 + 0.5 * a) / c
    return math.sqrt(2.0) * ratio * tan - s * spec.coupling()


def sho_delta_residual(E: float, spec: OscillatorDeltaSpec) -> float:
    """Pole-free equivalent: sqrt(2)/Gamma(1/4 + a/2) - g/Gamma(3/4 + a/2), g = m lambda xi / hbar^2."""
    a = spec.a_of_energy(E)
    return math.sqrt(2.0) * specfun.rgamma(0.25 + 0.5 * a) - spec.coupling() * specfun.rgamma(0.75 + 0.5 * a)


def sho_singularities(spec: OscillatorDeltaSpec, E_lo: float, E_hi: float) -> list[float]:
    """Registered poles of the Gamma-ratio form inside [E_lo, E_hi]."""
    hw = spec.units.hbar * spec.omega
    out = []
    # tan poles at a = 1/2 + 2j; Gamma(3/4 - a/2) poles at a = 3/2 + 2j (j >= 0)
    j_lo = math.floor((-E_hi / hw - 0.5) / 2.0) - 1
    j_hi = math.ceil((-E_lo / hw - 0.5) / 2.0) + 1
    for j in range(j_lo, j_hi + 1):
        out.append(-(0.5 + 2 * j) * hw)
        if j >= 0:
            out.append(-(1.5 + 2 * j) * hw)
    return sorted(E for E in set(out) if E_lo <= E <= E_hi)


def sho_delta_spectrum(spec: OscillatorDeltaSpec, count: int) -> list[EigenRoot]:
    """Lowest ``count`` levels; labels are oscillator quantum numbers.

    Even levels are roots of the condition, ranked n = 0, 1, 2, ... with
    label 2n; odd levels (2j + 3/2) hbar omega are untouched and carry label 2j+1.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    u = spec.units
    hw = u.hbar * spec.omega
    g = spec.coupling()
    n_even = (count + 1) // 2
    bind = u.mass * spec.lam**2 / (2.0 * u.hbar**2) if spec.lam > 0 else 0.0
    lo = -1.05 * bind - 0.25 * hw
    hi = (2.0 * n_even + 1.0) * hw
    f = lambda E: sho_delta_residual(E, spec)
    found = roots.find_roots(f, lo, hi, 400 * (n_even + 1) + 200, tol=1e-14 * hw)
    if g == 0.0:
        # roots are exactly the lattice (2n + 1/2) hbar omega
        found = [roots.RootResult((2 * round((r.x / hw - 0.5) / 2) + 0.5) * hw, 0.0, r.iterations, r.bracket) for r in found]
    if len(found) < n_even:
        raise NoConvergenceError(f"found {len(found)} of {n_even} even oscillator levels")
    levels = []
    for n, r in enumerate(found[:n_even]):
        levels.append(EigenRoot(r.x, 2 * n, "even", spec.a_of_energy(r.x), r.residual, r.bracket))
        levels.append(EigenRoot((2 * n + 1.5) * hw, 2 * n + 1, "odd", -(2 * n + 1.5), 0.0, None))
    return levels[:count]


# ---------------------------------------------------------------- hydrogen


def hydrogen_delta_condition(E: float, spec: HydrogenDeltaSpec) -> float:
    """Matching residual -M U' + M' U - (m lambda / hbar^2 k) M U at z = 2ka.

    M = M(1-alpha, 2, z), U = U(1-alpha, 2, z); primes are d/dz.
    """
    u = spec.units
    k = spec.k_of_energy(E)
    alpha = spec.e2 * u.mass / (u.hbar**2 * k)
    return _hydrogen_residual(alpha, k, spec)


def _hydrogen_residual(alpha: float, k: float, spec: HydrogenDeltaSpec, scaled: bool = False) -> float:
    u = spec.units
    z = 2.0 * k * spec.a
    a = 1.0 - alpha
    M = specfun.kummer_m(a, 2.0, z)
    Mp = specfun.kummer_m_prime(a, 2.0, z)
    U, U_next = specfun.tricomi_u_b2_pair(a, z)
    Up = -(a / z) * ((1.0 - a) * U_next + U)
    res = -M * Up + Mp * U - u.mass * spec.lam / (u.hbar**2 * k) * M * U
    if scaled:
        # remove the exp(z)/z^2 growth shared by every term
        res *= z * z * math.exp(-z)
    return res


def hydrogen_residual_alpha(alpha: float, spec: HydrogenDeltaSpec) -> float:
    """Same condition with alpha as the variable, rescaled to O(1) magnitude."""
    u = spec.units
    k = spec.e2 * u.mass / (u.hbar**2 * alpha)
    return _hydrogen_residual(alpha, k, spec, scaled=True)


def hydrogen_delta_spectrum(spec: HydrogenDeltaSpec, count: int, *, alpha_min: float = 0.05) -> list[EigenRoot]:
    """Lowest ``count`` bound states on the half-line x > 0 (psi(0) = 0).

    The scan variable is alpha = e^2 m/(hbar^2 k); at lambda = 0 the roots
    are alpha = 1, 2, 3, ....
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    f = lambda al: hydrogen_residual_alpha(al, spec)
    hi = count + 1.0
    found = roots.find_roots(f, alpha_min, hi, int(300 * hi), tol=1e-14)
    if spec.lam == 0.0:
        found = [roots.RootResult(float(round(r.x)), 0.0, r.iterations, r.bracket) if abs(r.x - round(r.x)) < 1e-9 else r for r in found]
    if len(found) < count:
        raise NoConvergenceError(f"found {len(found)} of {count} hydrogen levels")
    return [
        EigenRoot(spec.energy_of_alpha(r.x), i + 1, None, r.x, r.residual, r.bracket)
        for i, r in enumerate(found[:count])
    ]
