import math

import numpy as np
import pytest

from delta_spectra import models, oracle
from delta_spectra.models import BoxDeltaSpec, FiniteWellDeltaSpec, HydrogenDeltaSpec, OscillatorDeltaSpec, Units

UNIT_MASS = Units(1.0, 1.0)

CASES = [
    (BoxDeltaSpec.single(1.0, 0.25, 1.0), lambda m: [r.energy for r in models.box_delta_full_spectrum(m, 3)]),
    (FiniteWellDeltaSpec(1.0, 16.0, 0.5), lambda m: [r.energy for r in models.finite_well_delta_spectrum(m)][:3]),
    (OscillatorDeltaSpec(1.0, 0.3, UNIT_MASS), lambda m: [r.energy for r in models.sho_delta_spectrum(m, 3)]),
    (HydrogenDeltaSpec(1.0, 0.2), lambda m: [r.energy for r in models.hydrogen_delta_spectrum(m, 3)]),
]


@pytest.mark.parametrize("model,exact", CASES, ids=["box", "well", "oscillator", "hydrogen"])
def test_fd_oracle_concordance(model, exact):
    res = oracle.oracle_spectrum(model, 3)
    assert np.max(np.abs(res.energies - np.array(exact(model)))) <= 1e-8
    assert np.all(np.abs(res.order - 2.0) <= 0.2)


@pytest.mark.parametrize("model,exact", CASES, ids=["box", "well", "oscillator", "hydrogen"])
def test_numerov_oracle_concordance(model, exact):
    res = oracle.oracle_spectrum(model, 3, method="numerov")
    assert np.max(np.abs(res.energies - np.array(exact(model)))) <= 1e-8


def test_numerov_is_fourth_order_for_box():
    # coarse grids keep the error above the round-off floor
    res = oracle.oracle_spectrum(BoxDeltaSpec.single(1.0, 0.5, 0.5), 1, method="numerov", base_points=50, levels=3)
    assert res.order[0] == pytest.approx(4.0, abs=0.2)


def test_well_state_below_floor_seen_by_oracle():
    spec = FiniteWellDeltaSpec(1.0, 40.0, 2.0, UNIT_MASS)
    res = oracle.oracle_spectrum(spec, 1)
    assert res.energies[0] == pytest.approx(models.finite_well_delta_spectrum(spec)[0].energy, abs=1e-8)


def test_matrix_element_box_centre():
    # |psi_1(L/2)|^2 = 2/L
    spec = BoxDeltaSpec.single(2.0, 0.5, 0.0)
    assert oracle.matrix_element_delta(spec, 0, 0, 1.0) == pytest.approx(1.0, abs=1e-10)


def test_matrix_element_oscillator_origin():
    # |psi_0(0)|^2 = sqrt(m omega / (pi hbar))
    spec = OscillatorDeltaSpec(1.0, 0.0, UNIT_MASS)
    assert oracle.matrix_element_delta(spec, 0, 0, 0.0) == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-10)


def test_fd_eigenvectors_normalised():
    spec = BoxDeltaSpec.single(1.0, 0.3, 1.0)
    g = oracle.GridSpec((0.0, 1.0), 501)
    w, x, v = oracle.fd_eigensystem(spec, g, 3)
    h = g.spacing
    assert np.allclose((v**2).sum(axis=0) * h, 1.0)
    assert np.all(np.diff(w) > 0)


def test_narrow_gaussian_converges_to_jump_condition():
    spec = BoxDeltaSpec.single(1.0, 0.5, 0.5)
    exact = models.box_delta_spectrum(spec, 1)[0].energy
    vals = []
    for w in (0.004, 0.002, 0.001):
        g = oracle.GridSpec((0.0, 1.0), 8001, "narrow_gaussian", w)
        vals.append(oracle.oracle_spectrum(spec, 1, grid=g, levels=3).energies[0])
    assert oracle.richardson(vals, 2.0, (1, 2)) == pytest.approx(exact, abs=1e-6)


def test_richardson_removes_listed_powers():
    f = lambda h: 3.0 + 2.0 * h**2 - 5.0 * h**4 + h**6
    vals = [f(0.1 / 2**i) for i in range(4)]
    assert oracle.richardson(vals) == pytest.approx(3.0, abs=1e-14)


def test_grid_validation():
    with pytest.raises(ValueError):
        oracle.GridSpec((0.0, 1.0), 2)
    with pytest.raises(ValueError):
        oracle.GridSpec((1.0, 0.0), 10)
    with pytest.raises(ValueError):
        oracle.GridSpec((0.0, 1.0), 101, "narrow_gaussian", 0.001)
    with pytest.raises(ValueError):
        oracle.oracle_spectrum(BoxDeltaSpec.single(1.0, 0.5, 1.0), 1, method="spectral")
