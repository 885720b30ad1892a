import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from delta_spectra import roots
from delta_spectra.errors import NoConvergenceError


def test_tan_roots_skip_poles():
    poles = [math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2]
    found = roots.find_roots(math.tan, 0.5, 10.0, 1000, poles)
    assert [round(r.x / math.pi, 12) for r in found] == [1.0, 2.0, 3.0]


def test_unregistered_pole_is_reported_as_bracket():
    # without registration the tan pole looks like a sign change
    brackets = roots.scan_brackets(math.tan, 1.0, 2.0, 50)
    assert len(brackets) == 1
    assert roots.scan_brackets(math.tan, 1.0, 2.0, 50, [math.pi / 2]) == []


def test_exact_zero_sample_counts_once():
    found = roots.find_roots(lambda x: x - 0.5, 0.0, 1.0, 11)
    assert len(found) == 1 and found[0].x == 0.5


def test_bad_range():
    with pytest.raises(ValueError):
        roots.scan_brackets(math.sin, 1.0, 1.0, 10)
    with pytest.raises(ValueError):
        roots.scan_brackets(math.sin, 0.0, 1.0, 1)


def test_refine_rejects_non_bracket():
    b = roots.Bracket(0.0, 1.0, 1.0, 2.0)
    with pytest.raises((ValueError, NoConvergenceError)):
        roots.refine(lambda x: x + 1.0, b)


@given(st.lists(st.floats(0.05, 0.95), min_size=1, max_size=5, unique=True))
def test_polynomial_roots_recovered(rs):
    rs = sorted(rs)
    if any(b - a < 1e-3 for a, b in zip(rs, rs[1:])):
        return
    f = lambda x: math.prod(x - r for r in rs)
    found = roots.find_roots(f, 0.0, 1.0, 4001, tol=1e-15)
    assert len(found) == len(rs)
    for r, got in zip(rs, found):
        assert got.x == pytest.approx(r, abs=1e-10)
        assert got.bracket.lo <= got.x <= got.bracket.hi
