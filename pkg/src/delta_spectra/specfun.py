"""Real-argument special functions used by the oscillator and hydrogen models.

Everything here is a pure function of its arguments.  The implementations are
self-contained (Lanczos gamma, asymptotic digamma, power-series Kummer M,
logarithmic-case Tricomi U); scipy is only used for one quadrature in the
large-argument branch of :func:`tricomi_u_b2`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .errors import BudgetExceededError, DomainError, PoleError

EPS = 2.220446049250313e-16
EULER_GAMMA = 0.57721566490153286061

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# B_{2k} / (2k) for k = 1..7, used by the digamma asymptotic series.
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
_DIGAMMA_SHIFT = 8.0

KUMMER_MAX_TERMS = 10_000
_KUMMER_STALL = 3
_KUMMER_REL = 1e-16

# Below this argument Tricomi U is summed from its logarithmic series; above
# it the series cancels too badly and the integral representation is used.
_U_SERIES_MAX_Z = 2.0


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_abs_error: float


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def sinpi(x: float) -> float:
    """sin(pi*x) with exact zeros at the integers."""
    r = math.fmod(x, 2.0)
    if r < 0.0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return 1.0
    if r == 1.5:
        return -1.0
    if r > 1.0:
        return -math.sin(math.pi * (r - 1.0))
    return math.sin(math.pi * r)


def cospi(x: float) -> float:
    """cos(pi*x) with exact zeros at the half-integers."""
    return sinpi(x + 0.5)


def _lanczos_gamma(x: float) -> float:
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power so t**(x+0.5) cannot overflow before exp(-t) damps it
    half = 0.5 * (x + 0.5)
    p = t**half
    return _SQRT_2PI * p * (p * math.exp(-t)) * acc


def gamma(x: float) -> float:
    """Gamma function for real ``x`` (not a non-positive integer)."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x={x}")
    if x < 0.5:
        return math.pi / (sinpi(x) * _lanczos_gamma(1.0 - x))
    if x > 171.7:
        return math.inf
    return _lanczos_gamma(x)


def rgamma(x: float) -> float:
    """Reciprocal gamma 1/Gamma(x); zero at the poles of Gamma."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    if x < 0.5:
        return sinpi(x) * _lanczos_gamma(1.0 - x) / math.pi
    if x > 171.7:
        return 0.0
    return 1.0 / _lanczos_gamma(x)


def digamma(x: float) -> float:
    """Digamma psi(x) = Gamma'(x)/Gamma(x)."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"digamma has a pole at x={x}")
    if x <= 0.0:
        # reflection: psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - math.pi * cospi(x) / sinpi(x)
    shift = 0.0
    while x < _DIGAMMA_SHIFT:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_DIGAMMA_ASYMPTOTIC):
        tail = (tail + c) * inv2
    return shift + math.log(x) - 0.5 / x - tail


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a(a+1)...(a+n-1)."""
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def _kummer_series(a: float, b: float, z: float) -> SpecFunResult:
    term = 1.0
    total = 1.0
    abs_total = 1.0
    small = 0
    for k in range(KUMMER_MAX_TERMS):
        term *= (a + k) / (b + k) * z / (k + 1)
        total += term
        abs_total += abs(term)
        if abs(term) <= _KUMMER_REL * abs(total):
            small += 1
            if small >= _KUMMER_STALL:
                err = 2.0 * EPS * abs_total + abs(term)
                return SpecFunResult(total, err)
        else:
            small = 0
        if not math.isfinite(total):
            break
    raise BudgetExceededError(
        f"Kummer series M({a}, {b}, {z}) did not stabilise in {KUMMER_MAX_TERMS} terms"
    )


def kummer_m(a: float, b: float, z: float, *, full_output: bool = False):
    """Confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).

    Summed from its power series until three consecutive terms fall below
    1e-16 of the partial sum.  Negative ``z`` goes through Kummer's
    transformation M(a,b,z) = e^z M(b-a,b,-z) so the summed series never
    alternates because of the argument.
    """
    a, b, z = float(a), float(b), float(z)
    if _is_nonpositive_integer(b):
        raise PoleError(f"M(a, b, z) is undefined for b={b}")
    if z == 0.0:
        res = SpecFunResult(1.0, 0.0)
    elif z > 0.0 or _is_nonpositive_integer(a):
        res = _kummer_series(a, b, z)
    else:
        inner = _kummer_series(b - a, b, -z)
        scale = math.exp(z)
        res = SpecFunResult(scale * inner.value, scale * inner.est_abs_error)
    return res if full_output else res.value


def kummer_m_prime(a: float, b: float, z: float) -> float:
    """dM(a,b,z)/dz = (a/b) M(a+1, b+1, z)."""
    if a == 0.0:
        return 0.0
    return a / b * kummer_m(a + 1.0, b + 1.0, z)


def _tricomi_polynomial(m: int, z: float) -> float:
    # U(-m, 2, z) = (-1)^m (2)_m M(-m, 2, z)
    return (-1.0) ** m * pochhammer(2.0, m) * kummer_m(-float(m), 2.0, z)


def _tricomi_log_series(a: float, z: float) -> SpecFunResult:
    """U(a, 2, z) from the b = n+1 logarithmic expansion with n = 1."""
    ra1 = rgamma(a - 1.0)
    head = rgamma(a) / z
    if ra1 == 0.0:
        return SpecFunResult(head, EPS * abs(head))
    log_z = math.log(z)
    psi_a = digamma(a)
    psi_1 = -EULER_GAMMA
    psi_2 = 1.0 - EULER_GAMMA
    coef = 1.0
    total = 0.0
    abs_total = 0.0
    small = 0
    for k in range(KUMMER_MAX_TERMS):
        term = coef * (log_z + psi_a - psi_1 - psi_2)
        total += term
        abs_total += abs(term)
        if abs(term) <= _KUMMER_REL * abs(total):
            small += 1
            if small >= _KUMMER_STALL:
                break
        else:
            small = 0
        coef *= (a + k) / ((2.0 + k) * (k + 1.0)) * z
        psi_a += 1.0 / (a + k)
        psi_1 += 1.0 / (k + 1.0)
        psi_2 += 1.0 / (k + 2.0)
    else:
        raise BudgetExceededError(f"U({a}, 2, {z}) series did not stabilise")
    value = ra1 * total + head
    err = 4.0 * EPS * (abs(ra1) * abs_total + abs(head))
    return SpecFunResult(value, err)


def _tricomi_integral(a: float, z: float) -> float:
    """U(a, 2, z) for a >= 1 from the Laplace-type integral representation."""
    power = 1.0 - a

    def integrand(u: float) -> float:
        return math.exp(-u) * u ** (a - 1.0) * (1.0 + u / z) ** power

    val, _ = integrate.quad(integrand, 0.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return val * z ** (-a) * rgamma(a)


def _tricomi_pair_large_z(a: float, z: float) -> tuple[float, float]:
    # Start at a' in [1, 2) and recur downwards, the stable direction for U.
    steps = max(0, math.ceil(1.0 - a))
    top = a + steps
    u_c = _tricomi_integral(top, z)
    u_next = _tricomi_integral(top + 1.0, z)
    c = top
    for _ in range(steps):
        u_prev = (2.0 * c - 2.0 + z) * u_c - c * (c - 1.0) * u_next
        u_next, u_c = u_c, u_prev
        c -= 1.0
    return u_c, u_next


def tricomi_u_b2_pair(a: float, z: float) -> tuple[float, float]:
    """Return (U(a, 2, z), U(a+1, 2, z))."""
    a, z = float(a), float(z)
    if not z > 0.0:
        raise DomainError(f"U(a, 2, z) requires z > 0, got z={z}")
    if z <= _U_SERIES_MAX_Z:
        return _tricomi_single(a, z), _tricomi_single(a + 1.0, z)
    return _tricomi_pair_large_z(a, z)


def _tricomi_single(a: float, z: float) -> float:
    if _is_nonpositive_integer(a):
        return _tricomi_polynomial(int(-a), z)
    if z <= _U_SERIES_MAX_Z:
        return _tricomi_log_series(a, z).value
    return _tricomi_pair_large_z(a, z)[0]


def tricomi_u_b2(a: float, z: float) -> float:
    """Tricomi confluent hypergeometric function U(a, 2, z) for z > 0.

    Small arguments use the standard logarithmic expansion for integer
    ``b``; larger arguments use the integral representation at a shifted
    parameter followed by downward recurrence in ``a``.  Non-positive integer
    ``a`` gives the terminating polynomial exactly.
    """
    a, z = float(a), float(z)
    if not z > 0.0:
        raise DomainError(f"U(a, 2, z) requires z > 0, got z={z}")
    return _tricomi_single(a, z)


def tricomi_u_b2_prime(a: float, z: float) -> float:
    """dU(a,2,z)/dz from the contiguous relation -(a/z)[(1-a)U(a+1,2,z) + U(a,2,z)]."""
    u, u_next = tricomi_u_b2_pair(a, z)
    return -(a / z) * ((1.0 - a) * u_next + u)


def _cos_gamma(a: float) -> float:
    # cos(pi(1/4 + a/2)) * Gamma(1/4 - a/2), finite at the gamma poles
    s = 0.25 - 0.5 * a
    if _is_nonpositive_integer(s):
        return math.pi * rgamma(0.75 + 0.5 * a)
    return cospi(0.25 + 0.5 * a) * gamma(s)


def _sin_gamma(a: float) -> float:
    # sin(pi(1/4 + a/2)) * Gamma(3/4 - a/2), finite at the gamma poles
    s = 0.75 - 0.5 * a
    if _is_nonpositive_integer(s):
        return math.pi * rgamma(0.25 + 0.5 * a)
    return sinpi(0.25 + 0.5 * a) * gamma(s)


def pcf_u(a: float, z: float, *, normalization: str = "printed") -> float:
    """Parabolic cylinder function U(a, z) assembled from the even/odd Kummer solutions.

    U = cos(pi(1/4 + a/2)) Y1 - sin(pi(1/4 + a/2)) Y2 with
    Y1 = Gamma(1/4 - a/2) y1 / (sqrt(pi) 2^(a/2 + 1/4)) and
    Y2 = Gamma(3/4 - a/2) y2 / (sqrt(pi) 2^(a/2 + c)),
    y1 = exp(-z^2/4) M(a/2 + 1/4, 1/2, z^2/2), y2 = z exp(-z^2/4) M(a/2 + 3/4, 3/2, z^2/2).

    ``normalization="printed"`` uses c = 1/4 in both denominators.
    ``normalization="standard"`` uses c = -1/4 for Y2, which is the choice
    that makes U(a, z) the solution decaying as z -> +inf for every ``a``.
    Either choice satisfies y'' = (z^2/4 + a) y.
    """
    if normalization not in ("printed", "standard"):
        raise ValueError(f"unknown normalization {normalization!r}")
    a, z = float(a), float(z)
    half_z2 = 0.5 * z * z
    damp = math.exp(-0.25 * z * z)
    y1 = damp * kummer_m(0.5 * a + 0.25, 0.5, half_z2)
    y2 = z * damp * kummer_m(0.5 * a + 0.75, 1.5, half_z2)
    c1 = 1.0 / (math.sqrt(math.pi) * 2.0 ** (0.5 * a + 0.25))
    c2_exp = 0.5 * a + (0.25 if normalization == "printed" else -0.25)
    c2 = 1.0 / (math.sqrt(math.pi) * 2.0**c2_exp)
    return c1 * _cos_gamma(a) * y1 - c2 * _sin_gamma(a) * y2
