import math

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from delta_spectra import specfun
from delta_spectra.errors import PoleError

# mpmath at 30-40 digits, rounded to double
GAMMA = [
    (0.5, 1.772453850905516), (1.5, 0.886226925452758), (3.7, 4.170651783796604),
    (-2.5, -0.9453087204829419), (0.1, 9.51350769866873), (20.25, 2.5604013332847648e17),
    (-0.75, -4.834146544295877),
]
DIGAMMA = [
    (0.5, -1.9635100260214235), (1.0, -0.5772156649015329), (2.25, 0.5725464666237345),
    (10.5, 2.3030010342976865), (-0.5, 0.03648997397857652), (0.01, -100.56088545786868),
]
KUMMER = [
    (0.5, 2.0, 1.0, 1.3281918274866849), (-0.7, 2.0, 3.5, -0.572613363442996),
    (1.3, 0.5, -4.0, -0.1762808264371374), (0.25, 0.5, 8.0, 891.1191919804288),
    (-2.0, 2.0, 5.0, 0.16666666666666666), (0.75, 1.5, 12.5, 29676.644457861017),
]
TRICOMI = [
    (0.5, 0.3, 2.788319595073214), (0.5, 4.0, 0.5289404463708693), (-0.6, 1.7, 0.5480157880385841),
    (0.2, 10.0, 0.6409406787467714), (1.7, 25.0, 0.004018677713695212), (-2.4, 6.0, 0.6514924395736335),
]
PCF = [
    (-0.5, 0.0, 1.0), (0.3, 1.2, 0.467528634997282), (-2.5, -1.5, 0.7122285309136538),
    (1.2, 3.0, 0.013363377947664646), (-1.3, 0.7, 0.7323408764164767),
]


@pytest.mark.parametrize("x,ref", GAMMA)
def test_gamma_matches_mpmath(x, ref):
    assert specfun.gamma(x) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("x,ref", DIGAMMA)
def test_digamma_matches_mpmath(x, ref):
    assert specfun.digamma(x) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("a,b,z,ref", KUMMER)
def test_kummer_matches_mpmath(a, b, z, ref):
    res = specfun.kummer_m(a, b, z, full_output=True)
    assert res.value == pytest.approx(ref, rel=1e-13)
    assert res.est_abs_error <= 1e-12 * max(1.0, abs(res.value))


@pytest.mark.parametrize("a,z,ref", TRICOMI)
def test_tricomi_matches_mpmath(a, z, ref):
    assert specfun.tricomi_u_b2(a, z) == pytest.approx(ref, rel=1e-12)


def test_tricomi_polynomial_case():
    # U(-1, 2, z) = z - 2
    assert specfun.tricomi_u_b2(-1.0, 2.0) == pytest.approx(0.0, abs=1e-15)
    assert specfun.tricomi_u_b2(-1.0, 5.0) == pytest.approx(3.0, rel=1e-14)


@pytest.mark.parametrize("a,z,ref", PCF)
def test_pcf_standard_matches_mpmath(a, z, ref):
    assert specfun.pcf_u(a, z, normalization="standard") == pytest.approx(ref, rel=1e-10)


def test_pcf_normalizations_agree_when_odd_part_vanishes():
    # sin(pi(1/4 + a/2)) = 0 at a = -1/2
    assert specfun.pcf_u(-0.5, 1.3) == pytest.approx(specfun.pcf_u(-0.5, 1.3, normalization="standard"), rel=1e-14)


def test_gamma_poles():
    with pytest.raises(PoleError):
        specfun.gamma(-3.0)
    assert specfun.rgamma(-3.0) == 0.0
    assert specfun.rgamma(0.0) == 0.0


def test_pochhammer():
    assert specfun.pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5, rel=1e-15)
    assert specfun.pochhammer(-2.0, 3) == 0.0


def test_sinpi_exact_at_integers():
    for n in range(-5, 6):
        assert specfun.sinpi(float(n)) == 0.0
    assert specfun.cospi(0.5) == 0.0


def test_kummer_derivative():
    a, b, z = 0.3, 2.0, 1.7
    assert specfun.kummer_m_prime(a, b, z) == pytest.approx(float(mpmath.diff(lambda t: mpmath.hyp1f1(a, b, t), z)), rel=1e-12)


finite_x = st.floats(-20.0, 30.0, allow_nan=False)


@given(finite_x)
def test_gamma_recurrence(x):
    assume(abs(x - round(x)) > 1e-3)
    g1 = specfun.gamma(x + 1.0)
    assert g1 == pytest.approx(x * specfun.gamma(x), rel=1e-11)


@given(st.floats(1e-3, 1 - 1e-3))
def test_gamma_reflection(x):
    assert specfun.gamma(x) * specfun.gamma(1 - x) * specfun.sinpi(x) == pytest.approx(math.pi, rel=1e-12)


@given(finite_x)
def test_digamma_recurrence(x):
    assume(abs(x - round(x)) > 1e-3)
    assert specfun.digamma(x + 1) - specfun.digamma(x) == pytest.approx(1.0 / x, rel=1e-10, abs=1e-11)


@given(st.floats(-3.0, 3.0), st.floats(0.0, 6.0))
def test_kummer_transform(a, z):
    # M(a, b, -z) = e^{-z} M(b - a, b, z)
    b = 2.0
    assert specfun.kummer_m(a, b, -z) == pytest.approx(math.exp(-z) * specfun.kummer_m(b - a, b, z), rel=1e-11, abs=1e-14)


@given(st.floats(-2.5, 2.5), st.floats(0.2, 12.0))
def test_tricomi_wronskian(a, z):
    # W{M, U} = -Gamma(b) z^{-b} e^z / Gamma(a) for b = 2
    M = specfun.kummer_m(a, 2.0, z)
    Mp = specfun.kummer_m_prime(a, 2.0, z)
    U = specfun.tricomi_u_b2(a, z)
    Up = specfun.tricomi_u_b2_prime(a, z)
    W = M * Up - Mp * U
    ref = -math.exp(z) / (z * z) * specfun.rgamma(a)
    assert W == pytest.approx(ref, rel=1e-8, abs=1e-12 * math.exp(z) / z**2)
