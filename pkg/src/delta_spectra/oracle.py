"""Grid-based ground truth that never touches the transcendental conditions.

Two discretisations are provided.  ``fd`` is the three-point finite-difference
Hamiltonian diagonalised as a tridiagonal matrix; a delta at a grid node
becomes a diagonal entry -lambda/h.  ``numerov`` shoots with Numerov's
method and applies the derivative jump at the delta node exactly.  Both are
refined by halving the spacing and extrapolating in h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy import linalg, optimize

from .errors import NoConvergenceError
from .models import (
    BoxDeltaSpec,
    FiniteWellDeltaSpec,
    HydrogenDeltaSpec,
    ModelSpec,
    OscillatorDeltaSpec,
)

WELL_BOX_FACTOR = 20.0


@dataclass(frozen=True)
class GridSpec:
    domain: tuple[float, float]
    points: int
    delta_mode: str = "jump_condition"
    width: Optional[float] = None

    def __post_init__(self):
        if self.points < 3:
            raise ValueError("points must be >= 3")
        if self.domain[1] <= self.domain[0]:
            raise ValueError("domain must be increasing")
        if self.delta_mode not in ("jump_condition", "narrow_gaussian"):
            raise ValueError(f"unknown delta_mode {self.delta_mode!r}")
        if self.delta_mode == "narrow_gaussian":
            if self.width is None or self.width < 2.0 * self.spacing:
                raise ValueError("narrow_gaussian width must be at least two grid spacings")

    @property
    def spacing(self) -> float:
        return (self.domain[1] - self.domain[0]) / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], self.points)


@dataclass(frozen=True)
class _Problem:
    """Model reduced to a Dirichlet problem on [lo, hi] with point deltas."""

    lo: float
    hi: float
    potential: Callable[[np.ndarray], np.ndarray]
    deltas: tuple[tuple[float, float], ...]  # (position, lambda)
    hbar: float
    mass: float
    anchors: tuple[float, ...]  # positions that must sit on grid nodes


def _problem(model: ModelSpec, extent: Optional[float] = None) -> _Problem:
    if isinstance(model, BoxDeltaSpec):
        u = model.units
        d = tuple((p * model.L, lam) for p, lam in model.deltas)
        return _Problem(0.0, model.L, lambda x: np.zeros_like(x), d, u.hbar, u.mass, tuple(x for x, _ in d))
    if isinstance(model, FiniteWellDeltaSpec):
        u = model.units
        R = extent if extent is not None else WELL_BOX_FACTOR * model.L
        L, V0 = model.L, model.V0

        def pot(x):
            ax = np.abs(x)
            v = np.where(ax > L, V0, 0.0)
            # a node on the step carries the mean of the two sides
            return np.where(np.isclose(ax, L, rtol=0, atol=1e-12 * L), 0.5 * V0, v)

        return _Problem(-R, R, pot, ((0.0, model.lam),), u.hbar, u.mass, (-L, 0.0, L))
    if isinstance(model, OscillatorDeltaSpec):
        u = model.units
        X = extent if extent is not None else 12.0 * model.xi + 4.0
        k = u.mass * model.omega**2
        return _Problem(-X, X, lambda x: 0.5 * k * x * x, ((0.0, model.lam),), u.hbar, u.mass, (0.0,))
    if isinstance(model, HydrogenDeltaSpec):
        u = model.units
        bohr = u.hbar**2 / (u.mass * model.e2)
        X = extent if extent is not None else 80.0 * bohr + 4.0 * model.a
        e2 = model.e2

        def pot(x):
            with np.errstate(divide="ignore"):
                return -e2 / x

        return _Problem(0.0, X, pot, ((model.a, model.lam),), u.hbar, u.mass, (model.a,))
    raise TypeError(f"unsupported model {type(model).__name__}")


def _aligned_count(prob: _Problem, base: int) -> int:
    """Smallest multiple-friendly interval count >= base putting every anchor on a node."""
    width = prob.hi - prob.lo
    denom = 1
    for a in prob.anchors:
        frac = Fraction((a - prob.lo) / width).limit_denominator(10_000)
        if abs(float(frac) - (a - prob.lo) / width) > 1e-12:
            raise ValueError("delta position is not commensurate with the domain")
        denom = denom * frac.denominator // math.gcd(denom, frac.denominator)
    return denom * max(1, math.ceil(base / denom))


def _gaussian(x: np.ndarray, x0: float, w: float) -> np.ndarray:
    return np.exp(-0.5 * ((x - x0) / w) ** 2) / (w * math.sqrt(2.0 * math.pi))


def _fd_operator(prob: _Problem, grid: GridSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    x = grid.nodes[1:-1]
    h = grid.spacing
    t = prob.hbar**2 / (2.0 * prob.mass * h * h)
    diag = 2.0 * t + prob.potential(x)
    for x0, lam in prob.deltas:
        if grid.delta_mode == "narrow_gaussian":
            diag = diag - lam * _gaussian(x, x0, grid.width)
        else:
            j = int(round((x0 - grid.domain[0]) / h)) - 1
            if abs(x[j] - x0) > 1e-9 * h:
                raise ValueError("delta position must coincide with a grid node")
            diag = diag.copy()
            diag[j] -= lam / h
    off = np.full(x.size - 1, -t)
    return x, diag, off


def fd_eigensystem(model: ModelSpec, grid: GridSpec, k_states: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Lowest eigenpairs of the finite-difference Hamiltonian; vectors normalised so sum(psi^2) h = 1."""
    prob = _problem(model, _extent_from_grid(model, grid))
    x, diag, off = _fd_operator(prob, grid)
    w, v = linalg.eigh_tridiagonal(diag, off, select="i", select_range=(0, k_states - 1))
    v = v / math.sqrt(grid.spacing)
    for i in range(v.shape[1]):
        col = v[:, i]
        first = np.argmax(np.abs(col) > 1e-3 * np.max(np.abs(col)))
        if col[first] < 0:
            v[:, i] = -col
    return w, x, v


def _extent_from_grid(model: ModelSpec, grid: GridSpec) -> Optional[float]:
    if isinstance(model, BoxDeltaSpec):
        return None
    if isinstance(model, HydrogenDeltaSpec):
        return grid.domain[1]
    return 0.5 * (grid.domain[1] - grid.domain[0])


# ---------------------------------------------------------------- Numerov shooting


def _numerov_wall(prob: _Problem, grid: GridSpec, E: float) -> tuple[float, int]:
    """Integrate from the left wall; return (psi at the right wall, interior sign changes)."""
    x = grid.nodes
    h = grid.spacing
    h2 = h * h
    c = 2.0 * prob.mass / prob.hbar**2
    with np.errstate(divide="ignore", invalid="ignore"):
        f = c * (prob.potential(x) - E)
    kicks = {}
    for x0, lam in prob.deltas:
        if grid.delta_mode == "narrow_gaussian":
            f = f - c * lam * _gaussian(x, x0, grid.width)
        else:
            kicks[int(round((x0 - x[0]) / h))] = c * lam
    # Coulomb start: psi ~ x at the origin, so f*psi there tends to -c e^2
    singular_start = not math.isfinite(f[0])
    fpsi0 = -c * float(-prob.potential(np.array([1.0]))[0]) if singular_start else 0.0
    fl = f.tolist()
    n = len(fl)
    prev, cur = 0.0, h
    prev_w = 1.0  # only used through prev * prev_w, and prev = 0 at the wall
    sign_changes = 0
    for j in range(1, n - 1):
        w_next = 1.0 - h2 * fl[j + 1] / 12.0
        lhs = 2.0 * cur * (1.0 + 5.0 * h2 * fl[j] / 12.0)
        if j == 1 and singular_start:
            lhs += h2 * fpsi0 / 12.0
        else:
            lhs -= prev * prev_w
        nxt = lhs / w_next
        kick = kicks.get(j)
        if kick is not None:
            df = (fl[j + 1] - fl[j - 1]) / (2.0 * h)
            nxt += -kick * cur * (h + fl[j] * h2 * h / 6.0 + df * h2 * h2 / 12.0)
        if nxt * cur < 0.0 and j + 1 < n - 1:
            sign_changes += 1
        prev, prev_w, cur = cur, 1.0 - h2 * fl[j] / 12.0, nxt
        if abs(cur) > 1e150:
            prev *= 1e-150
            cur *= 1e-150
    return cur, sign_changes


def numerov_levels(model: ModelSpec, grid: GridSpec, k_states: int, e_window: tuple[float, float]) -> np.ndarray:
    """Lowest ``k_states`` shooting eigenvalues, isolated by node counting."""
    prob = _problem(model, _extent_from_grid(model, grid))
    lo, hi = e_window
    wall = lambda E: _numerov_wall(prob, grid, E)[0]
    out = []
    for n in range(k_states):
        a, b = lo, hi
        if wall_count(prob, grid, b) <= n:
            raise NoConvergenceError(f"energy window holds fewer than {n + 1} Numerov levels")
        for _ in range(200):
            mid = 0.5 * (a + b)
            if wall_count(prob, grid, mid) > n:
                b = mid
            else:
                a = mid
            fa, fb = wall(a), wall(b)
            if fa * fb < 0.0 and wall_count(prob, grid, a) == n and wall_count(prob, grid, b) == n + 1:
                break
        root = optimize.brentq(wall, a, b, xtol=1e-15 * max(1.0, abs(a)), rtol=1e-15, maxiter=200)
        out.append(root)
    return np.array(out)


def wall_count(prob: _Problem, grid: GridSpec, E: float) -> int:
    return _numerov_wall(prob, grid, E)[1]


# ---------------------------------------------------------------- refinement


def richardson(values: list[float], ratio: float = 2.0, powers: tuple[int, ...] = (2, 4, 6, 8)) -> float:
    """Eliminate the listed powers of h from estimates at h, h/ratio, h/ratio^2, ..."""
    table = list(values)
    for p in powers[: len(values) - 1]:
        r = ratio**p
        table = [(r * table[i + 1] - table[i]) / (r - 1.0) for i in range(len(table) - 1)]
    return table[-1]


def observed_order(e_h: float, e_h2: float, e_h4: float, ratio: float = 2.0) -> float:
    return math.log(abs((e_h - e_h2) / (e_h2 - e_h4))) / math.log(ratio)


def _error_powers(model: ModelSpec, method: str, delta_mode: str) -> tuple[int, ...]:
    """Leading powers of h in the eigenvalue error of each discretisation."""
    if delta_mode == "narrow_gaussian":
        return (2, 4, 6, 8) if method == "fd" else (4, 6, 8, 10)
    if isinstance(model, FiniteWellDeltaSpec):
        # the potential step adds odd powers
        return (2, 3, 4, 5)
    if isinstance(model, HydrogenDeltaSpec):
        return (2, 4, 6, 8) if method == "fd" else (3, 4, 5, 6)
    return (2, 4, 6, 8) if method == "fd" else (4, 6, 8, 10)


@dataclass(frozen=True)
class OracleResult:
    energies: np.ndarray
    raw: np.ndarray  # shape (levels, k_states)
    order: np.ndarray
    spacings: tuple[float, ...]


_DEFAULT_POINTS = {
    BoxDeltaSpec: 400,
    FiniteWellDeltaSpec: 4000,
    OscillatorDeltaSpec: 400,
    HydrogenDeltaSpec: 2000,
}


def _default_grid(model: ModelSpec, points: int) -> GridSpec:
    prob = _problem(model)
    n = _aligned_count(prob, points)
    return GridSpec((prob.lo, prob.hi), n + 1)


def _energy_window(model: ModelSpec, k_states: int) -> tuple[float, float]:
    if isinstance(model, BoxDeltaSpec):
        u = model.units
        g = sum(abs(u.jump(lam)) for _, lam in model.deltas)
        return -u.kinetic * (0.5 * g) ** 2 * 1.1 - 1.0, u.kinetic * ((k_states + len(model.deltas) + 1) * math.pi / model.L) ** 2
    if isinstance(model, FiniteWellDeltaSpec):
        u = model.units
        g = abs(u.jump(model.lam))
        return -u.kinetic * (0.5 * g) ** 2 * 1.1 - 1e-3, model.V0
    if isinstance(model, OscillatorDeltaSpec):
        u = model.units
        hw = u.hbar * model.omega
        return -u.mass * model.lam**2 / (2 * u.hbar**2) * 1.1 - hw, (k_states + 1) * hw
    u = model.units
    g = abs(u.jump(model.lam))
    e_floor = -u.mass * model.e2**2 / (2 * u.hbar**2) * 4.0 - u.kinetic * g * g
    return e_floor, 0.0


def oracle_spectrum(
    model: ModelSpec,
    k_states: int,
    *,
    method: str = "fd",
    base_points: Optional[int] = None,
    levels: int = 4,
    grid: Optional[GridSpec] = None,
) -> OracleResult:
    """Lowest ``k_states`` energies, refined by spacing halving and Richardson extrapolation.

    With ``grid`` given, the grid is used as the coarsest level; otherwise an
    aligned grid of about ``base_points`` intervals is built.
    """
    if method not in ("fd", "numerov"):
        raise ValueError(f"unknown method {method!r}")
    if base_points is None:
        base_points = _DEFAULT_POINTS[type(model)]
    g0 = grid if grid is not None else _default_grid(model, base_points)
    raw = []
    spacings = []
    window = _energy_window(model, k_states)
    for i in range(levels):
        n_int = (g0.points - 1) * 2**i
        g = GridSpec(g0.domain, n_int + 1, g0.delta_mode, g0.width)
        spacings.append(g.spacing)
        if method == "fd":
            raw.append(fd_eigensystem(model, g, k_states)[0])
        else:
            raw.append(numerov_levels(model, g, k_states, window))
    raw = np.array(raw)
    powers = _error_powers(model, method, g0.delta_mode)
    extrap = np.array([richardson(list(raw[:, s]), 2.0, powers) for s in range(k_states)])
    order = np.array([observed_order(*raw[-3:, s]) if levels >= 3 else math.nan for s in range(k_states)])
    return OracleResult(extrap, raw, order, tuple(spacings))


def matrix_element_delta(model: ModelSpec, i: int, j: int, x0: float, *, base_points: int = 400, levels: int = 4) -> float:
    """psi_i(x0) psi_j(x0) for quadrature-normalised grid eigenvectors at lambda = 0.

    ``i`` and ``j`` are 0-based indices into the grid spectrum; the product is
    extrapolated in the spacing like the eigenvalues.
    """
    prob = _problem(model)
    prob = _Problem(prob.lo, prob.hi, prob.potential, prob.deltas, prob.hbar, prob.mass, prob.anchors + (x0,))
    n0 = _aligned_count(prob, base_points)
    vals = []
    for lvl in range(levels):
        g = GridSpec((prob.lo, prob.hi), n0 * 2**lvl + 1)
        _, x, v = fd_eigensystem(model, g, max(i, j) + 1)
        k = int(np.argmin(np.abs(x - x0)))
        vals.append(float(v[k, i] * v[k, j]))
    return richardson(vals, 2.0, (2, 4, 6, 8))
