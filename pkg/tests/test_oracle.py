"""Discrete-mode oracle: grid construction, partial traces, joint-state dynamics."""

import math

import numpy as np
import pytest

from wwentangle.model import PartitionSpec, binary_entropy, partition_weights
from wwentangle.oracle import (DiscreteModeGrid, PartitionLabels,
                               assign_partition, atom_reduced_populations,
                               build_mode_grid, eigenvalues_hermitian,
                               joint_state_at, reduced_density_matrix,
                               reduced_weights)
from wwentangle.quadrature import rho_bb_integral

# Shared large grid: matches the default oracle resolution used in acceptance.
BIG_N = 200_000
BIG_SPAN = 1000.0


@pytest.fixture(scope="module")
def big_grid():
    return build_mode_grid(BIG_N, BIG_SPAN)


class TestBuildModeGrid:
    def test_single_mode_carries_all_weight(self):
        grid = build_mode_grid(1, 5.0)
        assert grid.mode_count == 1
        assert abs(grid.amplitudes[0]) ** 2 == pytest.approx(1.0, abs=1e-15)

    def test_two_mode_symmetric_grid(self):
        grid = build_mode_grid(2, 1.0)
        np.testing.assert_allclose(grid.detunings, [-0.5, 0.5])
        weights = np.abs(grid.amplitudes) ** 2
        np.testing.assert_allclose(weights, [0.5, 0.5], atol=1e-15)

    def test_midpoint_lattice(self):
        grid = build_mode_grid(3, 1.5)
        np.testing.assert_array_equal(grid.detunings, [-1.0, 0.0, 1.0])

    def test_tail_mass_formula(self):
        grid = build_mode_grid(100, 1000.0)
        assert grid.tail_mass == pytest.approx(
            1.0 - (2.0 / math.pi) * math.atan(2000.0), rel=1e-15)

    def test_normalization(self, big_grid):
        total = math.fsum((np.abs(big_grid.amplitudes) ** 2).tolist())
        assert abs(total - 1.0) <= 1e-12

    def test_invalid_arguments(self):
        with pytest.raises(ValueError, match="mode_count"):
            build_mode_grid(0, 1.0)
        with pytest.raises(ValueError, match="span"):
            build_mode_grid(10, 0.0)
        with pytest.raises(ValueError, match="span"):
            build_mode_grid(10, -1.0)
        with pytest.raises(ValueError, match="center"):
            build_mode_grid(10, 1.0, center=math.inf)

    def test_grid_validation_rejects_bad_profiles(self):
        x = np.array([-1.0, 0.0, 1.0])
        flat = np.ones(3, dtype=complex) / math.sqrt(3.0)
        with pytest.raises(ValueError, match="Lorentzian profile"):
            DiscreteModeGrid(x, flat, 1.5, 0.0)
        good = 1.0 / (x + 0.5j)
        good /= math.sqrt(np.sum(np.abs(good) ** 2))
        with pytest.raises(ValueError, match="increasing"):
            DiscreteModeGrid(x[::-1], good, 1.5, 0.0)
        with pytest.raises(ValueError, match="sum to 1"):
            DiscreteModeGrid(x, 2.0 * good, 1.5, 0.0)


class TestAssignPartition:
    def test_empty_window(self):
        grid = build_mode_grid(11, 2.0)
        labels = assign_partition(grid, PartitionSpec(0.0, 0.0))
        assert not labels.in_a.any()

    def test_window_covering_grid(self):
        grid = build_mode_grid(11, 2.0)
        labels = assign_partition(grid, PartitionSpec(10.0, 3.0))
        assert labels.in_a.all()

    def test_central_mode_only(self):
        grid = build_mode_grid(3, 1.5)  # detunings -1, 0, 1
        labels = assign_partition(grid, PartitionSpec(0.5, 0.0))
        assert labels.in_a.tolist() == [False, True, False]

    def test_boundary_modes_stay_outside(self):
        grid = build_mode_grid(3, 1.5)
        labels = assign_partition(grid, PartitionSpec(1.0, 0.0))
        assert labels.in_a.tolist() == [False, True, False]


class TestReducedWeights:
    def test_all_modes_in_a(self):
        grid = build_mode_grid(5, 2.0)
        w = reduced_weights(grid, PartitionLabels(np.ones(5, bool)))
        assert w.lambda_a == pytest.approx(1.0, abs=1e-14)
        assert w.lambda_b == pytest.approx(0.0, abs=1e-14)

    def test_symmetric_two_mode_split(self):
        grid = build_mode_grid(2, 1.0)
        w = reduced_weights(grid, PartitionLabels(np.array([True, False])))
        assert w.lambda_a == pytest.approx(0.5, abs=1e-15)

    def test_length_mismatch(self):
        grid = build_mode_grid(5, 2.0)
        with pytest.raises(ValueError, match="does not match"):
            reduced_weights(grid, PartitionLabels(np.ones(4, bool)))

    def test_continuum_limit_resonant_band(self, big_grid):
        spec = PartitionSpec(0.5, 0.0)
        w = reduced_weights(big_grid, assign_partition(big_grid, spec))
        assert w.lambda_a == pytest.approx(0.5, abs=2e-3)

    def test_continuum_limit_detuned_band(self, big_grid):
        spec = PartitionSpec(2.0, 2.0)
        w = reduced_weights(big_grid, assign_partition(big_grid, spec))
        assert w.lambda_a == pytest.approx(math.atan(8.0) / math.pi, abs=2e-3)

    def test_exchange_symmetry(self):
        grid = build_mode_grid(64, 8.0)
        rng = np.random.default_rng(42)
        labels = PartitionLabels(rng.random(64) < 0.4)
        swapped = PartitionLabels(~labels.in_a)
        w = reduced_weights(grid, labels)
        w_swapped = reduced_weights(grid, swapped)
        assert w.lambda_a == w_swapped.lambda_b
        assert w.lambda_b == w_swapped.lambda_a
        assert binary_entropy(w) == binary_entropy(w_swapped)


class TestReducedDensityMatrix:
    def test_vacuum_partition(self):
        grid = build_mode_grid(4, 2.0)
        rho = reduced_density_matrix(grid, PartitionLabels(np.zeros(4, bool)))
        np.testing.assert_allclose(rho, [[1.0]], atol=1e-14)

    def test_single_mode_block(self):
        grid = build_mode_grid(4, 2.0)
        labels = PartitionLabels(np.array([False, True, False, False]))
        rho = reduced_density_matrix(grid, labels)
        q = abs(grid.amplitudes[1]) ** 2
        np.testing.assert_allclose(np.diag(rho).real, [1.0 - q, q], atol=1e-12)
        assert rho[0, 1] == 0.0

    def test_photon_block_elements(self):
        grid = build_mode_grid(6, 3.0)
        labels = PartitionLabels(np.array([False, True, True, False, True, False]))
        rho = reduced_density_matrix(grid, labels)
        in_band = grid.amplitudes[labels.in_a]
        for m in range(3):
            for n in range(3):
                expected = in_band[m] * np.conj(in_band[n])
                assert abs(rho[m + 1, n + 1] - expected) <= 1e-15
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-13)
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-15

    def test_rank_two_random_split(self):
        grid = build_mode_grid(12, 5.0)
        rng = np.random.default_rng(7)
        labels = PartitionLabels(rng.random(12) < 0.5)
        rho = reduced_density_matrix(grid, labels)
        eigs = eigenvalues_hermitian(rho)
        w = reduced_weights(grid, labels)
        expected = sorted([w.lambda_a, w.lambda_b], reverse=True)
        np.testing.assert_allclose(eigs[:2], expected, atol=1e-10)
        assert np.max(np.abs(eigs[2:])) <= 1e-12

    def test_exhaustive_small_grids(self):
        for n in range(1, 9):
            grid = build_mode_grid(n, 4.0)
            for bits in range(2 ** n):
                labels = PartitionLabels(
                    np.array([(bits >> k) & 1 for k in range(n)], dtype=bool))
                eigs = eigenvalues_hermitian(reduced_density_matrix(grid, labels))
                if eigs.size > 2:
                    assert np.max(np.abs(eigs[2:])) <= 1e-12

    def test_dense_guard(self):
        grid = build_mode_grid(5000, 50.0)
        with pytest.raises(ValueError, match="guard"):
            reduced_density_matrix(grid, PartitionLabels(np.ones(5000, bool)))


class TestEigenvaluesHermitian:
    def test_identity(self):
        np.testing.assert_array_equal(eigenvalues_hermitian(np.eye(3)), [1, 1, 1])

    def test_diagonal(self):
        np.testing.assert_allclose(
            eigenvalues_hermitian(np.diag([0.3, 0.7])), [0.7, 0.3], atol=1e-15)

    def test_rank_one_projector(self):
        rng = np.random.default_rng(11)
        v = rng.normal(size=5) + 1j * rng.normal(size=5)
        v /= np.linalg.norm(v)
        eigs = eigenvalues_hermitian(np.outer(v, v.conj()))
        np.testing.assert_allclose(eigs, [1, 0, 0, 0, 0], atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            eigenvalues_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            eigenvalues_hermitian(np.ones((2, 3)))

    def test_eigenvalues_sum_to_trace(self):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        m = 0.5 * (m + m.conj().T)
        eigs = eigenvalues_hermitian(m)
        assert math.fsum(eigs.tolist()) == pytest.approx(
            np.trace(m).real, abs=1e-10)
        assert np.all(np.diff(eigs) <= 0.0)


class TestJointState:
    def test_initial_condition(self):
        grid = build_mode_grid(100, 10.0)
        state = joint_state_at(grid, 0.0)
        assert state.excited_amplitude == 1.0 + 0.0j
        assert np.max(np.abs(state.mode_amplitudes)) == 0.0

    def test_negative_time_rejected(self):
        grid = build_mode_grid(10, 5.0)
        with pytest.raises(ValueError, match="gamma_t"):
            joint_state_at(grid, -1.0)

    def test_long_time_recovers_stationary_amplitudes(self):
        grid = build_mode_grid(20_000, 200.0)
        state = joint_state_at(grid, 50.0)
        ratio = state.mode_amplitudes / grid.amplitudes
        assert np.max(np.abs(ratio - 1.0)) <= 1e-10

    def test_ground_population_matches_quadrature(self, big_grid):
        # independent target: the adaptive integral of the squared amplitudes
        target = rho_bb_integral(1.0, 1e-9).value
        _, ground = atom_reduced_populations(joint_state_at(big_grid, 1.0))
        assert ground == pytest.approx(target, abs=2e-3)

    def test_norm_never_exceeds_unity(self, big_grid):
        for t in (0.0, 0.5, 1.0, 5.0, 50.0):
            exc, ground = atom_reduced_populations(joint_state_at(big_grid, t))
            assert exc + ground <= 1.0 + 1e-12

    def test_populations_against_closed_form(self, big_grid):
        for t in (math.log(2.0), 5.0):
            exc, ground = atom_reduced_populations(joint_state_at(big_grid, t))
            assert exc == pytest.approx(math.exp(-t), abs=1e-12)
            assert ground == pytest.approx(-math.expm1(-t), abs=2e-3)

    def test_norm_defect_shrinks_with_window(self):
        # fixed grid spacing, growing window: defect stays under the tail mass
        defects = []
        for span, n in ((100.0, 16_000), (200.0, 32_000), (400.0, 64_000)):
            grid = build_mode_grid(n, span)
            exc, ground = atom_reduced_populations(joint_state_at(grid, 1.0))
            defect = 1.0 - (exc + ground)
            assert 0.0 < defect < grid.tail_mass
            defects.append(defect)
        assert defects[0] > defects[1] > defects[2]
