import math
from fractions import Fraction

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from delta_spectra import compensated
from delta_spectra.compensated import dd_add, dd_cumsum, dd_recip, ordered_sum, two_prod, two_sum

floats = st.floats(-1e100, 1e100, allow_nan=False, allow_infinity=False)
moderate = st.floats(-1e30, 1e30, allow_nan=False, allow_infinity=False)


@given(floats, floats)
def test_two_sum_is_exact(a, b):
    s, e = two_sum(a, b)
    assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


@given(moderate, moderate)
def test_two_prod_is_exact(a, b):
    # exactness needs the rounding error to stay out of the subnormal range
    assume(a == 0.0 or b == 0.0 or abs(a * b) > 1e-270)
    p, e = two_prod(a, b)
    assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


@given(st.floats(1.0, 1e12))
def test_dd_recip_precision(d):
    h, l = dd_recip(d)
    err = (Fraction(h) + Fraction(l)) * Fraction(d) - 1
    assert abs(err) < Fraction(1, 2**100)


def test_dd_add_elementwise_on_arrays():
    a = np.array([1.0, 1e16, -3.0])
    h, l = dd_add(a, np.zeros(3), np.array([1e-20, 1.0, 3.0]), np.zeros(3))
    assert h.tolist() == [1.0, 1e16, 0.0]
    assert l.tolist() == [1e-20, 1.0, 0.0]


def test_dd_cumsum_beats_naive():
    terms = [1.0] + [1e-16] * 1000
    hi, lo = dd_cumsum(terms)
    assert hi[-1] == 1.0 + 1e-13 or abs(hi[-1] + lo[-1] - (1.0 + 1e-13)) < 1e-28
    assert abs(Fraction(hi[-1]) + Fraction(lo[-1]) - (1 + 1000 * Fraction(1e-16))) < Fraction(1, 10**28)


@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), max_size=300))
def test_ordered_sum_is_correctly_rounded(xs):
    assert ordered_sum(xs) == math.fsum(xs)


def test_ordered_sum_independent_of_threads(monkeypatch):
    rng = np.random.default_rng(3)
    terms = rng.standard_normal(300_000) * 10.0 ** rng.integers(-8, 8, 300_000)
    results = set()
    for threads in ("1", "2", "4", "0"):
        monkeypatch.setenv("DELTA_SPECTRA_THREADS", threads)
        results.add(ordered_sum(terms))
    assert len(results) == 1


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("DELTA_SPECTRA_THREADS", "3")
    assert compensated.thread_count() == 3
    monkeypatch.setenv("DELTA_SPECTRA_THREADS", "0")
    assert compensated.thread_count() >= 1
