"""Noise-model tests: depolarizing channel, composition, error-rate maps."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdiqsdc.channels import (
    IDENTITY_DIST,
    ErrorRates,
    PauliDistribution,
    bell_diagonal_from_pauli_dist,
    convolve,
    convolve_many,
    depolarize,
    depolarizing_pauli_dist,
    error_rate_in_basis,
    error_rates_from_deltas,
    pauli_dist_from_bell_diagonal,
)
from mdiqsdc.quantum import (
    BellDiagonal,
    BellLabel,
    DensityMatrix,
    PauliLabel,
    basis_eigenvector,
    bell_diagonal_state,
    bell_state,
    pauli_twirl,
)

PAULI = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]

P_GRID = [round(0.1 * k, 10) for k in range(11)]

dist_strategy = st.lists(
    st.floats(min_value=1e-3, max_value=1.0), min_size=4, max_size=4
).map(lambda vs: PauliDistribution(tuple(v / sum(vs) for v in vs)))


def embed_on_pair(op, qubit):
    return np.kron(op, np.eye(2)) if qubit == 0 else np.kron(np.eye(2), op)


class TestDepolarize:
    def test_p_zero_is_identity(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        np.testing.assert_allclose(depolarize(dm, 0.0, 0).matrix, dm.matrix)

    def test_p_one_fully_mixes_the_pair(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        out = depolarize(dm, 1.0, 0)
        np.testing.assert_allclose(out.matrix, np.eye(4) / 4, atol=1e-12)

    @pytest.mark.parametrize("p", P_GRID)
    def test_single_leg_bell_diagonal(self, p):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        d = pauli_twirl(depolarize(dm, p, 1))
        np.testing.assert_allclose(
            d.deltas, [1 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p], atol=1e-12
        )

    @pytest.mark.parametrize("p", P_GRID)
    def test_preserves_trace_and_hermiticity(self, p):
        rng = np.random.default_rng(int(p * 100) + 3)
        raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        herm = raw @ raw.conj().T
        dm = DensityMatrix(herm / np.trace(herm))
        out = depolarize(dm, p, 0).matrix
        assert abs(np.trace(out) - 1) < 1e-12
        assert np.max(np.abs(out - out.conj().T)) < 1e-12

    def test_rejects_out_of_range(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        with pytest.raises(ValueError):
            depolarize(dm, 1.5, 0)
        with pytest.raises(IndexError):
            depolarize(dm, 0.5, 7)


class TestDepolarizingPauliDist:
    def test_endpoints(self):
        assert depolarizing_pauli_dist(0.0).probabilities == (1.0, 0.0, 0.0, 0.0)
        np.testing.assert_allclose(depolarizing_pauli_dist(1.0).probabilities, [0.25] * 4)

    @pytest.mark.parametrize("p", [0.2, 0.6, 1.0])
    def test_weighted_pauli_mixture_equals_channel(self, p):
        # oracle equivalence: apply the distribution as explicit conjugations
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        dist = depolarizing_pauli_dist(p)
        mixed = np.zeros((4, 4), dtype=complex)
        for k in range(4):
            full = embed_on_pair(PAULI[k], 0)
            mixed += dist.probabilities[k] * full @ dm.matrix @ full.conj().T
        np.testing.assert_allclose(mixed, depolarize(dm, p, 0).matrix, atol=1e-14)


class TestConvolve:
    def test_identity_element(self):
        d = depolarizing_pauli_dist(0.37)
        assert convolve(d, IDENTITY_DIST).probabilities == d.probabilities

    def test_uniform_is_absorbing(self):
        uniform = depolarizing_pauli_dist(1.0)
        out = convolve(uniform, uniform)
        np.testing.assert_allclose(out.probabilities, [0.25] * 4, atol=1e-15)

    @given(d1=dist_strategy, d2=dist_strategy)
    @settings(max_examples=50, deadline=None)
    def test_commutative(self, d1, d2):
        np.testing.assert_allclose(
            convolve(d1, d2).probabilities, convolve(d2, d1).probabilities, atol=1e-15
        )

    @given(d1=dist_strategy, d2=dist_strategy, d3=dist_strategy)
    @settings(max_examples=50, deadline=None)
    def test_associative(self, d1, d2, d3):
        left = convolve(convolve(d1, d2), d3)
        right = convolve(d1, convolve(d2, d3))
        np.testing.assert_allclose(left.probabilities, right.probabilities, atol=1e-14)

    @pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 1.0])
    def test_two_legs_match_density_matrix_oracle(self, p):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        both = depolarize(depolarize(dm, p, 0), p, 1)
        want = pauli_twirl(both).deltas
        single = depolarizing_pauli_dist(p)
        got = bell_diagonal_from_pauli_dist(convolve(single, single)).deltas
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_convolve_many_folds_left(self):
        d = depolarizing_pauli_dist(0.3)
        np.testing.assert_allclose(
            convolve_many([d, d, d]).probabilities,
            convolve(convolve(d, d), d).probabilities,
        )


class TestErrorRates:
    def test_perfect_singlet(self):
        rates = error_rates_from_deltas(BellDiagonal((1.0, 0.0, 0.0, 0.0)))
        assert (rates.eps_z, rates.eps_x, rates.eps_y) == (0.0, 0.0, 0.0)

    def test_uniform_mixture(self):
        rates = error_rates_from_deltas(BellDiagonal((0.25,) * 4))
        assert (rates.eps_z, rates.eps_x, rates.eps_y) == (0.5, 0.5, 0.5)

    @pytest.mark.parametrize("p", P_GRID)
    def test_depolarized_singlet_gives_half_p(self, p):
        d = BellDiagonal((1 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p))
        rates = error_rates_from_deltas(d)
        for eps in (rates.eps_z, rates.eps_x, rates.eps_y):
            assert abs(eps - p / 2) < 1e-12

    def test_component_sums(self):
        d = BellDiagonal((0.4, 0.3, 0.2, 0.1))
        rates = error_rates_from_deltas(d)
        assert abs(rates.eps_z - (0.2 + 0.1)) < 1e-15
        assert abs(rates.eps_x - (0.3 + 0.1)) < 1e-15
        assert abs(rates.eps_y - (0.3 + 0.2)) < 1e-15

    @given(
        deltas=st.lists(
            st.floats(min_value=1e-3, max_value=1.0), min_size=4, max_size=4
        ).map(lambda vs: tuple(v / sum(vs) for v in vs))
    )
    @settings(max_examples=25, deadline=None)
    def test_matches_measurement_statistics_oracle(self, deltas):
        # disagreement probability from explicit same-basis projectors
        d = BellDiagonal(deltas)
        dm = bell_diagonal_state(d)
        rates = error_rates_from_deltas(d)
        for basis, expected in (
            (PauliLabel.Z, rates.eps_z),
            (PauliLabel.X, rates.eps_x),
            (PauliLabel.Y, rates.eps_y),
        ):
            parallel = 0.0
            for bit in (0, 1):
                v = basis_eigenvector(basis, bit)
                proj = np.outer(v, v.conj())
                joint = np.kron(proj, proj)
                parallel += float(np.real(np.trace(joint @ dm.matrix)))
            assert abs(parallel - expected) < 1e-10

    def test_twirl_then_rates_equals_direct_statistics_on_random_states(self):
        # the same-basis correlation observable is Bell-diagonal, so the
        # twirl must not change measured disagreement rates of ANY state
        rng = np.random.default_rng(61)
        for _ in range(20):
            raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            herm = raw @ raw.conj().T
            dm = DensityMatrix(herm / np.trace(herm))
            rates = error_rates_from_deltas(pauli_twirl(dm))
            for basis, expected in (
                (PauliLabel.Z, rates.eps_z),
                (PauliLabel.X, rates.eps_x),
                (PauliLabel.Y, rates.eps_y),
            ):
                parallel = 0.0
                for bit in (0, 1):
                    v = basis_eigenvector(basis, bit)
                    proj = np.outer(v, v.conj())
                    parallel += float(np.real(np.trace(np.kron(proj, proj) @ dm.matrix)))
                assert abs(parallel - expected) < 1e-10

    def test_round_trip_with_pauli_dist(self):
        d = BellDiagonal((0.4, 0.3, 0.2, 0.1))
        back = bell_diagonal_from_pauli_dist(pauli_dist_from_bell_diagonal(d))
        np.testing.assert_allclose(back.deltas, d.deltas, atol=1e-15)

    def test_error_rate_in_basis_rejects_identity(self):
        with pytest.raises(ValueError):
            error_rate_in_basis(IDENTITY_DIST, PauliLabel.I)

    def test_error_rates_type_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ErrorRates(eps_z=1.2, eps_x=0.0, eps_y=0.0)


class TestPauliFrameSampling:
    def test_empirical_frequencies_match_channel(self):
        # 1e6 samples; agreement within 5 standard errors per Bell label
        p = 0.23
        dist = depolarizing_pauli_dist(p)
        rng = np.random.default_rng(2024)
        samples = rng.choice(4, size=1_000_000, p=dist.probabilities)
        counts = np.bincount(samples, minlength=4)
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        want = pauli_twirl(depolarize(dm, p, 1)).as_array()
        # reorder sampled Pauli labels into Bell labels: I,X,Y,Z -> psi-,phi-,phi+,psi+
        bell_counts = np.array([counts[0], counts[3], counts[1], counts[2]])
        n = samples.size
        for freq, expect in zip(bell_counts / n, want):
            se = math.sqrt(expect * (1 - expect) / n)
            assert abs(freq - expect) <= 5 * se


class TestPauliDistributionType:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            PauliDistribution((-0.1, 0.5, 0.3, 0.3))

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            PauliDistribution((0.3, 0.3, 0.3, 0.3))
