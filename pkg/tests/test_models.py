import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from delta_spectra import models
from delta_spectra.errors import DomainError
from delta_spectra.models import BoxDeltaSpec, FiniteWellDeltaSpec, HydrogenDeltaSpec, OscillatorDeltaSpec, Units

UNIT_MASS = Units(1.0, 1.0)

# independent mpmath.findroot on hand-matched conditions, frozen
BOX_CENTRE_LAMBDA1 = 7.76457194358243  # L=1, p=1/2, lambda=1, hbar=1, m=1/2
SHO_LAMBDA01 = 0.44131864637356855  # hbar=m=omega=1, lambda=0.1
WELL_V16 = (1.1458587515007412, 12.603391812329042)  # even states, L=1, V0=16, lambda=0.5
WELL_BELOW_FLOOR = -1.8971818470320696  # L=1, V0=40, lambda=2, hbar=m=1


def test_box_against_mpmath():
    E = models.box_delta_spectrum(BoxDeltaSpec.single(1.0, 0.5, 1.0), 1)[0].energy
    assert E == pytest.approx(BOX_CENTRE_LAMBDA1, rel=1e-13)


def test_box_lambda_zero_is_particle_in_box():
    lv = models.box_delta_spectrum(BoxDeltaSpec.single(2.0, 0.3, 0.0), 5)
    for n, r in enumerate(lv, start=1):
        assert r.energy == pytest.approx(n * n * math.pi**2 / 4.0, rel=1e-12)
        assert r.label == n


def test_box_node_state_is_exactly_unshifted():
    # lambda = 5 also binds a negative-energy ground state; labels stay ranks
    lv = models.box_delta_full_spectrum(BoxDeltaSpec.single(1.0, 0.5, 5.0), 4)
    assert lv[0].energy < 0
    assert lv[1].energy == 4 * math.pi**2 and lv[1].label == 2
    assert lv[3].energy == 16 * math.pi**2 and lv[3].label == 4


def test_box_multi_delta_node_protection():
    # deltas at 1/4 and 3/4 sit on nodes of n = 4
    spec = BoxDeltaSpec(1.0, ((0.25, 0.7), (0.75, 0.3)))
    lv = models.box_delta_spectrum(spec, 4)
    assert lv[3].energy == 16 * math.pi**2


@given(st.floats(0.02, 0.98), st.floats(-3.0, 3.0))
def test_box_mirror_symmetry(p, lam):
    a = [r.energy for r in models.box_delta_spectrum(BoxDeltaSpec.single(1.0, p, lam), 3)]
    b = [r.energy for r in models.box_delta_spectrum(BoxDeltaSpec.single(1.0, 1.0 - p, lam), 3)]
    assert a == pytest.approx(b, rel=1e-10)


@given(st.floats(0.1, 40.0), st.floats(0.01, 0.99), st.floats(-6.0, 6.0))
def test_transfer_matrix_matches_single_delta(k, p, lam):
    a = models.box_delta_condition(k, BoxDeltaSpec.single(1.0, p, lam))
    b = models.box_single_delta_residual(k, p, lam, 1.0)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


@given(st.floats(0.05, 4.0))
def test_attractive_delta_lowers_ground_state(lam):
    E = models.box_delta_full_spectrum(BoxDeltaSpec.single(1.0, 0.37, lam), 1)[0].energy
    assert E < math.pi**2


def test_box_bound_state_appears_beyond_critical_length():
    units = Units(1.0, 0.5)
    Lc = models.critical_length(2.0, units)
    assert models.box_delta_bound_state(0.9 * Lc, 2.0, units)[0] is None
    root, _ = models.box_delta_bound_state(1.1 * Lc, 2.0, units)
    assert root is not None and root.energy < 0


@pytest.mark.parametrize("m,lam", [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)])
def test_critical_length_detection(m, lam):
    u = Units(1.0, m)
    assert models.detect_critical_length(lam, u) == pytest.approx(1.0 / (m * lam), rel=1e-6)


def test_box_wavefunction_vanishes_at_walls():
    spec = BoxDeltaSpec.single(1.0, 0.3, 1.5)
    E = models.box_delta_spectrum(spec, 1)[0].energy
    k2 = E / spec.units.kinetic
    psi = models.box_wavefunction(spec, k2, np.array([0.0, 1.0]))
    assert abs(psi[0]) < 1e-14 and abs(psi[1]) < 1e-9


def test_well_against_mpmath():
    lv = models.finite_well_delta_spectrum(FiniteWellDeltaSpec(1.0, 16.0, 0.5))
    even = [r.energy for r in lv if r.parity == "even"]
    assert even == pytest.approx(list(WELL_V16), rel=1e-13)
    assert [r.label for r in lv] == [1, 2, 3]


def test_well_state_below_floor():
    lv = models.finite_well_delta_spectrum(FiniteWellDeltaSpec(1.0, 40.0, 2.0, UNIT_MASS))
    assert lv[0].energy == pytest.approx(WELL_BELOW_FLOOR, rel=1e-13)
    assert lv[0].parity == "even" and lv[0].label == 1


def test_well_bound_state_count():
    spec = FiniteWellDeltaSpec(1.0, 50.0, 0.0)
    assert len(models.finite_well_spectrum(spec)) == spec.bound_state_count() == 5


def test_well_odd_states_ignore_delta():
    a = [r.energy for r in models.finite_well_delta_spectrum(FiniteWellDeltaSpec(1.0, 30.0, 1.0)) if r.parity == "odd"]
    b = [r.energy for r in models.finite_well_spectrum(FiniteWellDeltaSpec(1.0, 30.0, 0.0)) if r.parity == "odd"]
    assert a == b


def test_well_sign_conventions_differ():
    spec = FiniteWellDeltaSpec(1.0, 16.0, 0.5)
    E = WELL_V16[0]
    assert abs(models.finite_well_delta_condition(E, spec)) < 1e-9
    assert abs(models.finite_well_delta_condition(E, spec, sign="printed")) > 1e-3


def test_well_condition_domain():
    spec = FiniteWellDeltaSpec(1.0, 16.0, 0.5)
    with pytest.raises(DomainError):
        models.finite_well_delta_condition(17.0, spec)


def test_well_normalisation():
    spec = FiniteWellDeltaSpec(1.0, 16.0, 0.0)
    E = models.finite_well_spectrum(spec)[0].energy
    assert models.finite_well_amplitude_analytic(spec, E) ** 2 == pytest.approx(1.0 / models.finite_well_norm_sq(spec, E, "even"), rel=1e-8)


def test_oscillator_against_mpmath():
    E = models.sho_delta_spectrum(OscillatorDeltaSpec(1.0, 0.1, UNIT_MASS), 1)[0].energy
    assert E == pytest.approx(SHO_LAMBDA01, rel=1e-13)


def test_oscillator_parity_labels():
    lv = models.sho_delta_spectrum(OscillatorDeltaSpec(1.0, 0.5, UNIT_MASS), 4)
    assert [(r.label, r.parity) for r in lv] == [(0, "even"), (1, "odd"), (2, "even"), (3, "odd")]
    assert lv[1].energy == 1.5 and lv[3].energy == 3.5


def test_oscillator_condition_sign():
    spec = OscillatorDeltaSpec(1.0, 0.1, UNIT_MASS)
    assert abs(models.sho_delta_condition(SHO_LAMBDA01, spec)) < 1e-9
    assert abs(models.sho_delta_condition(SHO_LAMBDA01, spec, sign="printed")) > 1e-3


@given(st.floats(-1.0, 2.0))
def test_oscillator_levels_ordered_by_lambda(lam):
    e_lo = models.sho_delta_spectrum(OscillatorDeltaSpec(1.0, lam, UNIT_MASS), 1)[0].energy
    e_hi = models.sho_delta_spectrum(OscillatorDeltaSpec(1.0, lam + 0.1, UNIT_MASS), 1)[0].energy
    assert e_hi < e_lo


def test_hydrogen_lambda_zero():
    lv = models.hydrogen_delta_spectrum(HydrogenDeltaSpec(1.0, 0.0), 3)
    assert [r.variable for r in lv] == pytest.approx([1.0, 2.0, 3.0], abs=1e-12)
    # E = -m e^4 / (2 hbar^2 alpha^2) with m = 1/2
    assert [r.energy for r in lv] == pytest.approx([-0.25, -0.0625, -0.25 / 9], rel=1e-12)


def test_hydrogen_attractive_delta_lowers_levels():
    a = models.hydrogen_delta_spectrum(HydrogenDeltaSpec(1.0, 0.3), 3)
    assert all(r.energy < -0.25 / (i + 1) ** 2 for i, r in enumerate(a))


def test_spec_validation():
    with pytest.raises(ValueError):
        BoxDeltaSpec.single(1.0, 1.2, 1.0)
    with pytest.raises(ValueError):
        BoxDeltaSpec(1.0, ((0.6, 1.0), (0.4, 1.0)))
    with pytest.raises(ValueError):
        Units(0.0, 1.0)
