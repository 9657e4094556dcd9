"""Tests for mutual information, one-sided discord and MID."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dilaton_discord.blackhole import shared_state_direct, squeeze_angle
from dilaton_discord.correlations import (
    _grid_candidates,
    classical_correlation,
    conditional_entropy,
    conditional_entropy_grid,
    full_report,
    mid,
    mid_dephased_state,
    minimize_conditional_entropy,
    mutual_information,
    quantum_discord,
)
from dilaton_discord.models.params import DilatonParams
from dilaton_discord.qcore.linalg import tensor_product
from dilaton_discord.qcore.measurement import BlochMeasurement, MeasurementSide
from dilaton_discord.qcore.states import (
    DensityMatrix,
    StateVector,
    partial_trace,
    product_state,
    random_density_matrix,
    von_neumann_entropy,
)

SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def _binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _make_params(alpha, q_r=1.0) -> DilatonParams:
    return DilatonParams(mass=1.0, alpha=alpha, omega=1.0, q_r=q_r)


def _make_bell() -> DensityMatrix:
    amps = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    return StateVector(amps, (2, 2)).density_matrix()


def _swapped(rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(SWAP @ rho.matrix @ SWAP, (2, 2))


# ---------------------------------------------------------------------------
# Reference states
# ---------------------------------------------------------------------------

class TestReferenceStates:
    def test_bell_state(self):
        rho = _make_bell()
        assert mutual_information(rho) == pytest.approx(2.0, abs=1e-12)
        for side in MeasurementSide:
            assert classical_correlation(rho, side) == pytest.approx(1.0, abs=1e-9)
            assert quantum_discord(rho, side) == pytest.approx(1.0, abs=1e-9)
        assert mid(rho).mid_quantum == pytest.approx(1.0, abs=1e-12)

    def test_product_state_uncorrelated(self):
        rng = np.random.default_rng(21)
        rho = product_state(random_density_matrix(rng, dims=(2,)), random_density_matrix(rng, dims=(2,)))
        assert mutual_information(rho) == pytest.approx(0.0, abs=1e-12)
        for side in MeasurementSide:
            assert quantum_discord(rho, side) == pytest.approx(0.0, abs=1e-9)
        assert mid(rho).mid_quantum == pytest.approx(0.0, abs=1e-12)

    def test_classical_quantum_state_has_no_a_side_discord(self):
        rng = np.random.default_rng(22)
        sigma0 = random_density_matrix(rng, dims=(2,)).matrix
        sigma1 = random_density_matrix(rng, dims=(2,)).matrix
        m = 0.5 * tensor_product(np.diag([1, 0]), sigma0) + 0.5 * tensor_product(np.diag([0, 1]), sigma1)
        rho = DensityMatrix(m, (2, 2))
        assert quantum_discord(rho, MeasurementSide.A) == pytest.approx(0.0, abs=1e-9)

    def test_pure_branch_counts_zero(self):
        rho = StateVector(np.array([1, 0, 0, 0], dtype=complex), (2, 2)).density_matrix()
        assert conditional_entropy(rho, MeasurementSide.A, BlochMeasurement(0.0, 0.0)) == 0.0


# ---------------------------------------------------------------------------
# Structural properties on random states
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def states():
    rng = np.random.default_rng(23)
    return [random_density_matrix(rng, rank=r) for r in (1, 2, 3, 4, 4, 4)]


class TestRandomStates:
    def test_additivity_and_non_negativity(self, states):
        for rho in states:
            mutual = mutual_information(rho)
            for side in MeasurementSide:
                c = classical_correlation(rho, side)
                d = quantum_discord(rho, side)
                assert c >= -1e-9 and d >= -1e-9
                assert c + d == pytest.approx(mutual, abs=1e-9)

    def test_classical_bounded_by_unmeasured_entropy(self, states):
        for rho in states:
            for side in MeasurementSide:
                bound = von_neumann_entropy(partial_trace(rho, [side.unmeasured_index]))
                assert classical_correlation(rho, side) <= bound + 1e-12

    def test_swap_exchanges_sides(self, states):
        for rho in states:
            assert quantum_discord(rho, MeasurementSide.B) == pytest.approx(
                quantum_discord(_swapped(rho), MeasurementSide.A), abs=1e-8
            )

    def test_refined_never_worse_than_grid(self, states):
        for rho in states:
            for side in MeasurementSide:
                grid_min = float(np.min(conditional_entropy_grid(rho, side, 64)))
                assert minimize_conditional_entropy(rho, side).value <= grid_min + 1e-15

    def test_mid_marginals_preserved(self, states):
        for rho in states:
            eta = mid_dephased_state(rho)
            for k in (0, 1):
                assert_allclose(partial_trace(eta, [k]).matrix, partial_trace(rho, [k]).matrix, atol=1e-12)

    def test_mid_dominates_discord(self, states):
        for rho in states:
            result = mid(rho)
            assert result.mid_quantum >= max(quantum_discord(rho, s) for s in MeasurementSide) - 1e-9


class TestGridCandidates:
    def test_global_minimum_first(self):
        values = np.ones((8, 8))
        values[6, 2] = -1.0
        values[1, 5] = 0.0
        candidates = _grid_candidates(values, 3)
        assert candidates[0] == (6, 2)
        assert (1, 5) in candidates

    def test_lower_hemisphere_only_via_global_minimum(self):
        values = np.ones((8, 8))
        values[7, 0] = 0.5
        values[6, 4] = 0.2
        assert _grid_candidates(values, 3)[0] == (6, 4)
        assert (7, 0) not in _grid_candidates(values, 3)

    def test_periodic_phi_neighbours(self):
        values = np.ones((8, 8))
        values[2, 0] = 0.1
        values[2, 7] = 0.2
        assert (2, 7) not in _grid_candidates(values, 3)

    def test_flat_ridge_is_one_valley(self):
        values = np.ones((8, 8))
        values[3, :] = 0.2
        values[1, 1] = 0.5
        candidates = _grid_candidates(values, 3)
        assert [i for i, _ in candidates].count(3) == 1
        assert candidates[0][0] == 3
        assert (1, 1) in candidates


# ---------------------------------------------------------------------------
# Dilaton shared state
# ---------------------------------------------------------------------------

class TestDilatonCorrelations:
    def test_flat_limit(self):
        report = full_report(_make_params(0.0))
        assert report.mutual_info == pytest.approx(2.0, abs=1e-6)
        for value in (report.classical_a, report.classical_b, report.discord_a,
                      report.discord_b, report.mid_quantum):
            assert value == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("alpha", [0.2, 0.6, 0.9, 0.99])
    def test_mid_closed_form(self, alpha):
        x = squeeze_angle(_make_params(alpha)).sin_r ** 2
        result = mid(shared_state_direct(_make_params(alpha)))
        expected = 1 + 0.5 * _binary_entropy(x) - _binary_entropy(x / 2)
        assert result.mid_quantum == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.2, 0.6, 0.9, 0.99])
    def test_mutual_information_closed_form(self, alpha):
        x = squeeze_angle(_make_params(alpha)).sin_r ** 2
        expected = 1 + _binary_entropy((1 - x) / 2) - _binary_entropy(x / 2)
        assert mutual_information(shared_state_direct(_make_params(alpha))) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.5, 0.9, 0.99])
    def test_a_side_classical_closed_form(self, alpha):
        x = squeeze_angle(_make_params(alpha)).sin_r ** 2
        branch = (1 - math.sqrt(1 - x * (1 - x))) / 2
        expected = _binary_entropy((1 - x) / 2) - _binary_entropy(branch)
        rho = shared_state_direct(_make_params(alpha))
        assert classical_correlation(rho, MeasurementSide.A) == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("alpha", [0.5, 0.9, 0.99])
    def test_b_side_classical_closed_form(self, alpha):
        x = squeeze_angle(_make_params(alpha)).sin_r ** 2
        expected = 1 - _binary_entropy((1 - math.sqrt(1 - x)) / 2)
        rho = shared_state_direct(_make_params(alpha))
        assert classical_correlation(rho, MeasurementSide.B) == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize(
        "alpha, cc_a, cc_b",
        [(0.9451, 0.7196, 0.7007), (0.999, 0.4617, 0.4048)],
    )
    def test_measuring_a_keeps_more_classical_correlation(self, alpha, cc_a, cc_b):
        rho = shared_state_direct(_make_params(alpha))
        assert classical_correlation(rho, MeasurementSide.A) == pytest.approx(cc_a, abs=5e-4)
        assert classical_correlation(rho, MeasurementSide.B) == pytest.approx(cc_b, abs=5e-4)

    @pytest.mark.parametrize("alpha", [0.0, 0.1, 0.2, *np.linspace(0.4, 0.95, 10)])
    def test_a_side_minimum_on_equator(self, alpha):
        rho = shared_state_direct(_make_params(alpha))
        minimum = minimize_conditional_entropy(rho, MeasurementSide.A)
        assert minimum.argmin.theta == pytest.approx(math.pi / 2, abs=1e-4)

        phis = np.linspace(0.0, 2 * math.pi, 128, endpoint=False)
        scan = [conditional_entropy(rho, MeasurementSide.A, BlochMeasurement(math.pi / 2, f)) for f in phis]
        assert max(scan) - min(scan) <= 1e-9

    @pytest.mark.parametrize("alpha", [0.9, 0.99])
    def test_one_sided_measures_asymmetric(self, alpha):
        report = full_report(_make_params(alpha))
        assert abs(report.discord_a - report.discord_b) > 1e-4
        assert abs(report.classical_a - report.classical_b) > 1e-4

    def test_asymmetries_mirror_each_other(self):
        report = full_report(_make_params(0.97))
        assert report.classical_a - report.classical_b == pytest.approx(
            -(report.discord_a - report.discord_b), abs=1e-9
        )

    @pytest.mark.parametrize("q_r", [0.0, 0.5])
    def test_general_weights_obey_invariants(self, q_r):
        report = full_report(_make_params(0.8, q_r=q_r))
        assert report.mid_quantum >= max(report.discord_a, report.discord_b) - 1e-9
        assert report.mutual_info == pytest.approx(report.classical_a + report.discord_a, abs=1e-9)

    def test_report_fields(self):
        report = full_report(_make_params(0.5))
        assert report.occupation == pytest.approx(report.sin_r ** 2, rel=1e-12)
        assert report.to_dict()["argmin_A"]["theta"] == pytest.approx(math.pi / 2, abs=1e-4)
