"""Tests for the dilaton black-hole physics layer."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dilaton_discord.blackhole import (
    KRUSKAL_MODES,
    SHARED_MODES,
    entangled_kruskal_state,
    hawking_temperature,
    kruskal_one_particle,
    kruskal_vacuum,
    occupation_number,
    outside_state_fock,
    shared_state_direct,
    shared_state_fock,
    squeeze_angle,
)
from dilaton_discord.exceptions import DomainError
from dilaton_discord.models.params import DilatonParams, SqueezeAngle

ALPHAS = np.linspace(0.0, 0.999, 50)


def _make_params(alpha=0.0, mass=1.0, omega=1.0, q_r=1.0) -> DilatonParams:
    return DilatonParams(mass=mass, alpha=alpha, omega=omega, q_r=q_r)


# ---------------------------------------------------------------------------
# Fock labeling
# ---------------------------------------------------------------------------

class TestFockLabeling:
    def test_big_endian_index(self):
        assert KRUSKAL_MODES.index([1, 0, 1, 1]) == 11
        assert KRUSKAL_MODES.occupations(11) == (1, 0, 1, 1)

    def test_positions(self):
        assert SHARED_MODES.position("A") == 0
        assert SHARED_MODES.position("in+") == 4
        assert SHARED_MODES.dim == 32

    def test_invalid_occupation(self):
        with pytest.raises(ValueError, match="0 or 1"):
            KRUSKAL_MODES.index([2, 0, 0, 0])

    def test_wrong_length(self):
        with pytest.raises(ValueError, match="Expected 4"):
            KRUSKAL_MODES.index([0, 0])

    def test_index_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            KRUSKAL_MODES.occupations(16)


# ---------------------------------------------------------------------------
# Horizon thermodynamics
# ---------------------------------------------------------------------------

class TestSqueezeAngle:
    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.9, 0.999])
    def test_normalized(self, alpha):
        r = squeeze_angle(_make_params(alpha))
        assert r.cos_r ** 2 + r.sin_r ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_flat_limit_nearly_unmixed(self):
        r = squeeze_angle(_make_params(0.0))
        assert r.sin_r ** 2 == pytest.approx(1 / (math.exp(8 * math.pi) + 1), rel=1e-12)
        assert r.cos_r == pytest.approx(1.0, abs=1e-10)

    def test_sin_r_grows_with_alpha(self):
        values = [squeeze_angle(_make_params(a)).sin_r for a in ALPHAS]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_near_extremal_approaches_half(self):
        r = squeeze_angle(_make_params(0.999999))
        assert r.sin_r ** 2 == pytest.approx(0.5, abs=1e-4)

    def test_large_frequency_does_not_overflow(self):
        r = squeeze_angle(_make_params(0.0, omega=1e4))
        assert r.cos_r == 1.0
        assert r.sin_r == 0.0

    def test_angle_roundtrip(self):
        r = SqueezeAngle.from_angle(0.4)
        assert r.r == pytest.approx(0.4)


class TestThermodynamics:
    def test_temperature(self):
        assert hawking_temperature(_make_params(0.5)) == pytest.approx(1 / (4 * math.pi))

    def test_temperature_diverges_toward_extremal(self):
        assert hawking_temperature(_make_params(0.999)) > 10 * hawking_temperature(_make_params(0.9))

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 0.9, 0.99])
    def test_occupation_is_fermi_dirac(self, alpha):
        p = _make_params(alpha)
        expected = 1 / (math.exp(p.omega / hawking_temperature(p)) + 1)
        assert occupation_number(p) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 0.9, 0.99])
    def test_occupation_equals_sin_squared(self, alpha):
        p = _make_params(alpha)
        assert occupation_number(p) == pytest.approx(squeeze_angle(p).sin_r ** 2, rel=1e-12)

    def test_random_parameter_grid(self):
        rng = np.random.default_rng(31)
        masses = rng.uniform(0.1, 5.0, 1000)
        alphas = masses * rng.uniform(0.0, 0.999, 1000)
        omegas = rng.uniform(0.05, 5.0, 1000)
        for mass, alpha, omega in zip(masses, alphas, omegas):
            p = _make_params(alpha, mass=mass, omega=omega)
            r = squeeze_angle(p)
            assert r.cos_r ** 2 + r.sin_r ** 2 == pytest.approx(1.0, abs=1e-12)
            assert occupation_number(p) == pytest.approx(r.sin_r ** 2, rel=1e-10, abs=1e-300)

    def test_alpha_at_mass_is_domain_error(self):
        with pytest.raises(DomainError, match="strictly below the mass"):
            _make_params(1.0)


# ---------------------------------------------------------------------------
# Kruskal kets
# ---------------------------------------------------------------------------

class TestKruskalStates:
    def test_vacuum_amplitudes(self):
        r = SqueezeAngle.from_angle(0.3)
        v = kruskal_vacuum(r).amplitudes
        c, s = r.cos_r, r.sin_r
        assert v[KRUSKAL_MODES.index([0, 0, 0, 0])] == pytest.approx(c * c)
        assert v[KRUSKAL_MODES.index([0, 0, 1, 1])] == pytest.approx(-s * c)
        assert v[KRUSKAL_MODES.index([1, 1, 0, 0])] == pytest.approx(s * c)
        assert v[KRUSKAL_MODES.index([1, 1, 1, 1])] == pytest.approx(-s * s)

    @pytest.mark.parametrize("q_r", [1.0, 0.6, 0.0, 0.6j])
    def test_one_particle_normalized(self, q_r):
        ket = kruskal_one_particle(SqueezeAngle.from_angle(0.5), q_r)
        assert np.vdot(ket.amplitudes, ket.amplitudes).real == pytest.approx(1.0)

    def test_one_particle_rejects_large_weight(self):
        with pytest.raises(DomainError, match="must not exceed 1"):
            kruskal_one_particle(SqueezeAngle.from_angle(0.5), 1.2)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 0.95])
    def test_orthogonal_for_particle_only(self, alpha):
        r = squeeze_angle(_make_params(alpha))
        assert abs(kruskal_vacuum(r).inner(kruskal_one_particle(r, 1.0))) < 1e-12

    def test_overlap_for_antiparticle_only(self):
        r = SqueezeAngle.from_angle(0.5)
        overlap = kruskal_vacuum(r).inner(kruskal_one_particle(r, 0.0))
        assert overlap == pytest.approx(r.sin_r ** 2 * r.cos_r)

    def test_entangled_state_dims(self):
        psi = entangled_kruskal_state(_make_params(0.4))
        assert psi.dims == (2, 2, 2, 2, 2)
        assert outside_state_fock(_make_params(0.4)).dims == (2, 2, 2)


# ---------------------------------------------------------------------------
# Shared state
# ---------------------------------------------------------------------------

class TestSharedState:
    def test_flat_limit_is_bell_state(self):
        rho = shared_state_direct(_make_params(0.0))
        phi_plus = np.zeros((4, 4))
        phi_plus[np.ix_([0, 3], [0, 3])] = 0.5
        assert_allclose(rho.matrix, phi_plus, atol=1e-6)

    @pytest.mark.parametrize("q_r", [1.0, 0.8, 0.3, 0.0])
    def test_valid_density_matrix(self, q_r):
        for alpha in ALPHAS[::7]:
            rho = shared_state_direct(_make_params(alpha, q_r=q_r))
            assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
            assert rho.eigenvalues()[-1] >= -1e-12

    def test_complex_weight_conjugated_in_coherence(self):
        rho = shared_state_direct(_make_params(0.5, q_r=0.6j))
        c = squeeze_angle(_make_params(0.5)).cos_r
        assert rho.matrix[0, 3] == pytest.approx(-0.6j * c / 2)
        assert rho.matrix[3, 0] == pytest.approx(0.6j * c / 2)

    def test_fock_construction_matches_closed_form(self):
        for alpha in ALPHAS:
            p = _make_params(alpha)
            diff = np.max(np.abs(shared_state_direct(p).matrix - shared_state_fock(p).matrix))
            assert diff <= 1e-10

    def test_fock_construction_differs_when_kets_overlap(self):
        p = _make_params(0.95, q_r=0.5)
        diff = np.max(np.abs(shared_state_direct(p).matrix - shared_state_fock(p).matrix))
        assert diff > 1e-6

    def test_marginal_of_a_is_maximally_mixed(self):
        rho = shared_state_direct(_make_params(0.7))
        assert_allclose(rho.marginal([0]).matrix, np.eye(2) / 2, atol=1e-12)
