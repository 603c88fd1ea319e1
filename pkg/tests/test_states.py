import cmath
import math

import numpy as np
import pytest

from mzqfi.conf import Conf
from mzqfi.exceptions import CutoffError
from mzqfi.specfun import bessel_i
from mzqfi.states import (
    FockAmplitudes,
    StateKind,
    StateSpec,
    auto_cutoff,
    bgcs_amplitudes,
    casimir_on_basis,
    closed_form_stats,
    lowering_apply,
    pcs_amplitudes,
    state_amplitudes,
    tail_bound,
)


def test_state_spec_normalizes_index_and_phases():
    spec = StateSpec.perelomov(a=1.5000000000001, v=1.0, phi=2 * math.pi + 0.25)
    assert spec.bargmann_a == 1.5
    assert spec.two_a == 3
    assert spec.phase_phi == pytest.approx(0.25)


@pytest.mark.parametrize("a", [0.0, 0.3, -0.5, float("nan")])
def test_state_spec_rejects_bad_index(a):
    with pytest.raises(ValueError, match="half-integer"):
        StateSpec.perelomov(a=a, v=1.0)


def test_state_spec_rejects_bad_parameters():
    with pytest.raises(ValueError, match="squeeze_v"):
        StateSpec.perelomov(a=1, v=-0.1)
    with pytest.raises(ValueError, match="must not exceed"):
        StateSpec.perelomov(a=1, v=25.0)
    with pytest.raises(ValueError, match="xi"):
        StateSpec.barut_girardello(a=1, xi=-1.0)
    with pytest.raises(ValueError, match="not xi_mag"):
        StateSpec(StateKind.PERELOMOV, xi_mag=0.5)


def test_state_spec_xi(pcs, bgcs_v1):
    assert pcs.xi == pytest.approx(math.tanh(0.5))
    assert StateSpec.perelomov(a=1, v=1.0, phi=0.4).xi == pytest.approx(cmath.rect(math.tanh(0.5), -0.4))
    assert bgcs_v1.xi_mag == pytest.approx(math.tanh(0.5))
    complex_xi = StateSpec.barut_girardello(a=1, xi=0.5j)
    assert complex_xi.xi_phase == pytest.approx(math.pi / 2)


def test_state_spec_labels(pcs, bgcs):
    assert pcs.label == "pcs(a=1,v=1)"
    assert bgcs.label == "bgcs(a=1,xi=1)"
    assert StateSpec.vacuum().label == "vacuum"


def test_zero_parameter_is_vacuum():
    assert StateSpec.perelomov(a=1, v=0.0).is_vacuum
    assert StateSpec.barut_girardello(a=2, xi=0.0).is_vacuum
    amps = pcs_amplitudes(StateSpec.perelomov(a=1, v=0.0, phi=1.3), 10)
    assert amps.amps[0] == 1.0
    assert np.all(amps.amps[1:] == 0)


def test_pcs_normalization_and_mean(pcs):
    amps = pcs_amplitudes(pcs, 60)
    assert amps.norm_sq == pytest.approx(1.0, abs=1e-10)
    assert amps.mean_photons() == pytest.approx(math.cosh(1.0) - 1.0, abs=1e-10)


def test_bgcs_normalization_and_mean(bgcs):
    amps = bgcs_amplitudes(bgcs, 60)
    assert amps.norm_sq == pytest.approx(1.0, abs=1e-10)
    assert amps.mean_photons() == pytest.approx(bessel_i(2, 2.0) / bessel_i(1, 2.0), abs=1e-10)
    assert amps.mean_photons() == pytest.approx(0.4331273695, abs=1e-10)


def test_amplitude_family_is_checked(pcs, bgcs):
    with pytest.raises(ValueError, match="Perelomov"):
        pcs_amplitudes(bgcs, 20)
    with pytest.raises(ValueError, match="Barut-Girardello"):
        bgcs_amplitudes(pcs, 20)


def test_short_cutoff_is_rejected(pcs):
    with pytest.raises(CutoffError, match="tail mass"):
        pcs_amplitudes(pcs, 5)


def test_norm_grows_monotonically_with_cutoff(pcs):
    norms = [pcs_amplitudes(pcs, c, check_tail=False).norm_sq for c in range(1, 40)]
    assert all(later >= earlier for earlier, later in zip(norms, norms[1:]))
    assert norms[-1] <= 1.0 + 1e-12


@pytest.mark.parametrize(
    "spec",
    [
        StateSpec.perelomov(a=0.5, v=0.25),
        StateSpec.perelomov(a=1.5, v=1.0),
        StateSpec.perelomov(a=1, v=3.0),
        StateSpec.barut_girardello(a=0.5, xi=0.5),
        StateSpec.barut_girardello(a=1.5, xi=2.0),
    ],
)
def test_auto_cutoff_certifies_the_tail(spec):
    cutoff = auto_cutoff(spec)
    tol = Conf().tolerance("tail_tolerance")
    assert tail_bound(spec, cutoff) < tol
    assert cutoff == 1 or tail_bound(spec, cutoff - 1) >= tol
    amps = state_amplitudes(spec)
    assert amps.cutoff == cutoff
    assert amps.norm_sq == pytest.approx(1.0, abs=1e-10)


def test_auto_cutoff_of_vacuum():
    assert auto_cutoff(StateSpec.vacuum()) == 1
    assert tail_bound(StateSpec.vacuum(), 1) == 0.0


def test_auto_cutoff_cap():
    with pytest.raises(CutoffError, match="even at cutoff"):
        auto_cutoff(StateSpec.perelomov(a=1, v=8.0), max_cutoff=64)


def test_lowering_of_vacuum_is_zero():
    vacuum = state_amplitudes(StateSpec.vacuum(), 10)
    assert np.all(lowering_apply(vacuum, 1.0).amps == 0)


def test_lowering_of_single_excitation():
    one = FockAmplitudes(np.array([0, 1, 0, 0], dtype=complex), 3)
    lowered = lowering_apply(one, 1.0)
    assert lowered.amps[0] == pytest.approx(math.sqrt(2.0))
    assert np.all(lowered.amps[1:] == 0)


@pytest.mark.parametrize("xi", [1.0, 0.7 * cmath.exp(0.9j)])
def test_bgcs_is_a_lowering_eigenstate(xi):
    spec = StateSpec.barut_girardello(a=1, xi=xi)
    amps = state_amplitudes(spec)
    lowered = lowering_apply(amps, spec.bargmann_a)
    # the top component is a truncation artifact
    residual = np.abs(lowered.amps[:-1] - spec.xi * amps.amps[:-1])
    assert residual.max() <= 1e-8


@pytest.mark.parametrize(
    "spec",
    [
        StateSpec.perelomov(a=1, v=1.0),
        StateSpec.perelomov(a=1.5, v=0.5),
        StateSpec.barut_girardello(a=1, xi=1.0),
        StateSpec.barut_girardello(a=0.5, xi=2.0),
    ],
)
def test_closed_form_stats_match_fock_sums(spec):
    stats = closed_form_stats(spec)
    amps = state_amplitudes(spec, 80)
    assert stats.mean == pytest.approx(amps.mean_photons(), rel=1e-9)
    assert stats.variance == pytest.approx(amps.photon_variance(), rel=1e-9)


def test_closed_form_stats_values(pcs):
    stats = closed_form_stats(pcs)
    assert stats.mean == pytest.approx(0.5430806348, abs=1e-10)
    assert stats.variance == pytest.approx(0.5 * math.sinh(1.0) ** 2, abs=1e-12)
    assert closed_form_stats(StateSpec.vacuum()) == closed_form_stats(StateSpec.perelomov(a=2, v=0.0))


@pytest.mark.parametrize("a", [0.5, 1.0, 1.5, 2.0, 3.5])
def test_casimir_is_constant_on_basis(a):
    assert all(casimir_on_basis(a, g) == a * (a - 1.0) for g in range(51))


@pytest.mark.parametrize("plain, phased, phase", [
    (StateSpec.perelomov(a=1, v=1.0), StateSpec.perelomov(a=1, v=1.0, phi=0.7), cmath.exp(-0.7j)),
    (StateSpec.barut_girardello(a=1.5, xi=1.2), StateSpec.barut_girardello(a=1.5, xi=1.2, xi_phase=2.0), cmath.exp(2.0j)),
])
def test_amplitudes_are_phase_covariant(plain, phased, phase):
    reference = state_amplitudes(plain, cutoff=60)
    rotated = state_amplitudes(phased, cutoff=60)
    g = np.arange(61)
    assert np.allclose(rotated.amps, reference.amps * phase ** g, rtol=0.0, atol=1e-13)
    assert closed_form_stats(phased) == closed_form_stats(plain)
    assert rotated.mean_photons() == pytest.approx(reference.mean_photons(), rel=1e-13)
