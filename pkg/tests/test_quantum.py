"""Core state-algebra tests, cross-checked against independent matrix oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdiqsdc.quantum import (
    BELL_VECTORS,
    BellDiagonal,
    BellLabel,
    DensityMatrix,
    PauliLabel,
    PureState,
    apply_pauli,
    bell_diagonal_state,
    bell_measure,
    bell_state,
    eigvalsh_hermitian,
    holevo_bound,
    partial_trace,
    pauli_twirl,
    product_decompose,
    purify_bell_diagonal,
    single_photon,
    states_equal,
    tensor,
    von_neumann_entropy,
)

R = 1.0 / math.sqrt(2.0)

PAULI = [
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def kron_chain(ops):
    out = np.array([[1.0]], dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def pauli_on_qubit_oracle(op_index, qubit, num_qubits):
    """Independent embedding: plain Kronecker chain, no axis permutation."""
    ops = [np.eye(2, dtype=complex)] * num_qubits
    ops[qubit] = PAULI[op_index]
    return kron_chain(ops)


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(v / np.linalg.norm(v))


def random_density(rng, dim, rank=None):
    rank = rank or dim
    mat = np.zeros((dim, dim), dtype=complex)
    weights = rng.dirichlet(np.ones(rank))
    for w in weights:
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        v /= np.linalg.norm(v)
        mat += w * np.outer(v, v.conj())
    return DensityMatrix(mat)


deltas_strategy = st.lists(
    st.floats(min_value=1e-3, max_value=1.0), min_size=4, max_size=4
).map(lambda vs: tuple(v / sum(vs) for v in vs))


class TestBellStates:
    def test_amplitude_table(self):
        expected = {
            BellLabel.PSI_MINUS: [0, R, -R, 0],
            BellLabel.PSI_PLUS: [0, R, R, 0],
            BellLabel.PHI_MINUS: [R, 0, 0, -R],
            BellLabel.PHI_PLUS: [R, 0, 0, R],
        }
        for label, amps in expected.items():
            np.testing.assert_allclose(
                bell_state(label).amplitudes, np.array(amps), atol=1e-12
            )

    def test_normalized(self):
        for label in BellLabel:
            assert abs(np.sum(np.abs(bell_state(label).amplitudes) ** 2) - 1) < 1e-15

    def test_mutually_orthogonal(self):
        for a in BellLabel:
            for b in BellLabel:
                overlap = np.vdot(bell_state(a).amplitudes, bell_state(b).amplitudes)
                assert abs(overlap - (1.0 if a == b else 0.0)) < 1e-15


class TestApplyPauli:
    def test_identity_fixes_singlet(self):
        psi = bell_state(BellLabel.PSI_MINUS)
        for qubit in (0, 1):
            assert states_equal(apply_pauli(psi, PauliLabel.I, qubit), psi)

    def test_z_on_second_qubit_maps_singlet_to_triplet(self):
        got = apply_pauli(bell_state(BellLabel.PSI_MINUS), PauliLabel.Z, 1)
        # independent oracle: explicit 4x4 multiplication
        oracle = pauli_on_qubit_oracle(3, 1, 2) @ BELL_VECTORS[0]
        assert abs(abs(np.vdot(oracle, got.amplitudes)) - 1) < 1e-12
        assert states_equal(got, bell_state(BellLabel.PSI_PLUS))

    @pytest.mark.parametrize("op", list(PauliLabel))
    @pytest.mark.parametrize("qubit", [0, 1])
    def test_matches_matrix_oracle_on_random_states(self, op, qubit):
        rng = np.random.default_rng(1234 + 7 * int(op) + qubit)
        for _ in range(20):
            state = random_pure(rng, 4)
            got = apply_pauli(state, op, qubit).amplitudes
            want = pauli_on_qubit_oracle(int(op), qubit, 2) @ state.amplitudes
            np.testing.assert_allclose(got, want, atol=1e-14)

    def test_density_matrix_conjugation(self):
        rng = np.random.default_rng(99)
        dm = random_density(rng, 4)
        got = apply_pauli(dm, PauliLabel.Y, 0).matrix
        full = pauli_on_qubit_oracle(2, 0, 2)
        np.testing.assert_allclose(got, full @ dm.matrix @ full.conj().T, atol=1e-14)

    @given(
        op=st.sampled_from(list(PauliLabel)),
        qubit=st.integers(min_value=0, max_value=1),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=40, deadline=None)
    def test_involution(self, op, qubit, seed):
        state = random_pure(np.random.default_rng(seed), 4)
        back = apply_pauli(apply_pauli(state, op, qubit), op, qubit)
        assert states_equal(state, back)

    def test_permutes_bell_states_without_leakage(self):
        for label in BellLabel:
            for op in PauliLabel:
                for qubit in (0, 1):
                    moved = apply_pauli(bell_state(label), op, qubit)
                    probs = bell_measure(moved.to_density_matrix())
                    assert np.count_nonzero(probs > 1e-12) == 1
                    assert abs(probs.max() - 1.0) < 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            apply_pauli(bell_state(BellLabel.PSI_MINUS), PauliLabel.X, 2)


class TestBellMeasure:
    def test_eigenstate(self):
        probs = bell_measure(bell_state(BellLabel.PSI_MINUS).to_density_matrix())
        np.testing.assert_allclose(probs, [1, 0, 0, 0], atol=1e-15)

    def test_maximally_mixed(self):
        probs = bell_measure(DensityMatrix(np.eye(4) / 4))
        np.testing.assert_allclose(probs, [0.25] * 4, atol=1e-15)

    def test_plus_plus_splits_between_triplets(self):
        state = tensor(single_photon("+"), single_photon("+"))
        probs = bell_measure(state.to_density_matrix())
        np.testing.assert_allclose(probs, [0.0, 0.5, 0.0, 0.5], atol=1e-12)

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            probs = bell_measure(random_density(rng, 4))
            assert abs(probs.sum() - 1.0) < 1e-12


class TestProductDecompose:
    # Same-basis pairs and their Bell amplitudes over (psi-, psi+, phi-, phi+).
    TABLE = {
        ("0", "0"): (0, 0, R, R),
        ("1", "1"): (0, 0, -R, R),
        ("0", "1"): (R, R, 0, 0),
        ("1", "0"): (-R, R, 0, 0),
        ("+", "+"): (0, R, 0, R),
        ("-", "-"): (0, -R, 0, R),
        ("+", "-"): (-R, 0, R, 0),
        ("-", "+"): (R, 0, R, 0),
    }

    @pytest.mark.parametrize("pair", sorted(TABLE))
    def test_amplitudes(self, pair):
        a, b = pair
        amps = product_decompose(single_photon(a), single_photon(b))
        np.testing.assert_allclose(amps, np.array(self.TABLE[pair]), atol=1e-12)

    @pytest.mark.parametrize("pair", sorted(TABLE))
    def test_magnitudes_normalized(self, pair):
        a, b = pair
        amps = product_decompose(single_photon(a), single_photon(b))
        assert abs(np.sum(np.abs(amps) ** 2) - 1.0) < 1e-12

    @pytest.mark.parametrize("pair", sorted(TABLE))
    def test_consistent_with_bell_measurement(self, pair):
        a, b = pair
        sa, sb = single_photon(a), single_photon(b)
        amps = product_decompose(sa, sb)
        probs = bell_measure(tensor(sa, sb).to_density_matrix())
        np.testing.assert_allclose(probs, np.abs(amps) ** 2, atol=1e-12)


class TestPauliTwirl:
    def test_bell_diagonal_input_is_fixed_point(self):
        d = pauli_twirl(bell_state(BellLabel.PSI_MINUS).to_density_matrix())
        np.testing.assert_allclose(d.deltas, [1.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_maximally_mixed(self):
        d = pauli_twirl(DensityMatrix(np.eye(4) / 4))
        np.testing.assert_allclose(d.deltas, [0.25] * 4, atol=1e-15)

    @pytest.mark.parametrize("p", [0.0, 0.3, 0.7, 1.0])
    def test_one_side_depolarized_singlet(self, p):
        # oracle: apply the channel by explicit Pauli mixing on qubit 1
        rho = bell_state(BellLabel.PSI_MINUS).to_density_matrix().matrix
        mixed = (1 - 0.75 * p) * rho
        for k in (1, 2, 3):
            full = pauli_on_qubit_oracle(k, 1, 2)
            mixed = mixed + 0.25 * p * full @ rho @ full.conj().T
        d = pauli_twirl(DensityMatrix(mixed))
        np.testing.assert_allclose(
            d.deltas, [1 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p], atol=1e-12
        )

    @given(deltas=deltas_strategy)
    @settings(max_examples=50, deadline=None)
    def test_idempotent_on_reconstruction(self, deltas):
        d = BellDiagonal(deltas)
        again = pauli_twirl(bell_diagonal_state(d))
        np.testing.assert_allclose(again.deltas, d.deltas, atol=1e-12)


class TestPurification:
    def test_pure_input(self):
        psi = purify_bell_diagonal(BellDiagonal((1.0, 0.0, 0.0, 0.0)))
        expected = np.zeros(16, dtype=complex)
        expected[0 * 4 + 0] = BELL_VECTORS[0][0]
        expected[1 * 4 + 0] = BELL_VECTORS[0][1]
        expected[2 * 4 + 0] = BELL_VECTORS[0][2]
        expected[3 * 4 + 0] = BELL_VECTORS[0][3]
        assert states_equal(psi, PureState(expected))

    def test_uniform_reduces_to_maximally_mixed(self):
        psi = purify_bell_diagonal(BellDiagonal((0.25, 0.25, 0.25, 0.25)))
        pair = partial_trace(psi.to_density_matrix(), keep=(0, 1))
        np.testing.assert_allclose(pair.matrix, np.eye(4) / 4, atol=1e-12)

    @given(deltas=deltas_strategy)
    @settings(max_examples=25, deadline=None)
    def test_partial_trace_recovers_weights(self, deltas):
        d = BellDiagonal(deltas)
        psi = purify_bell_diagonal(d)
        pair = partial_trace(psi.to_density_matrix(), keep=(0, 1))
        np.testing.assert_allclose(bell_measure(pair), d.deltas, atol=1e-12)


class TestPartialTrace:
    def test_half_of_singlet_is_maximally_mixed(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        reduced = partial_trace(dm, keep=(0,))
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-15)

    def test_keep_everything_is_identity(self):
        rng = np.random.default_rng(11)
        dm = random_density(rng, 4)
        np.testing.assert_allclose(partial_trace(dm, keep=(0, 1)).matrix, dm.matrix)

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(21)
        dm = random_density(rng, 4)
        got = partial_trace(dm, keep=(1,)).matrix
        want = np.zeros((2, 2), dtype=complex)
        for b in range(2):  # trace over qubit 0
            for i in range(2):
                for j in range(2):
                    want[i, j] += dm.matrix[(b << 1) | i, (b << 1) | j]
        np.testing.assert_allclose(got, want, atol=1e-14)

    def test_invalid_selector(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        with pytest.raises(ValueError):
            partial_trace(dm, keep=())
        with pytest.raises(ValueError):
            partial_trace(dm, keep=(0, 5))


class TestEntropy:
    def test_pure_state_zero(self):
        s = von_neumann_entropy(bell_state(BellLabel.PHI_PLUS).to_density_matrix())
        assert abs(s) < 1e-10

    def test_maximally_mixed_two_qubits(self):
        assert abs(von_neumann_entropy(DensityMatrix(np.eye(4) / 4)) - 2.0) < 1e-12

    def test_equal_mixture_of_two_bell_states(self):
        dm = bell_diagonal_state(BellDiagonal((0.5, 0.5, 0.0, 0.0)))
        assert abs(von_neumann_entropy(dm) - 1.0) < 1e-12

    @given(deltas=deltas_strategy)
    @settings(max_examples=50, deadline=None)
    def test_bell_diagonal_entropy_is_shannon_of_weights(self, deltas):
        d = BellDiagonal(deltas)
        shannon = -sum(p * math.log2(p) for p in d.deltas if p > 0)
        assert abs(von_neumann_entropy(bell_diagonal_state(d)) - shannon) < 1e-10

    def test_range(self):
        rng = np.random.default_rng(31)
        for dim in (2, 4, 16):
            s = von_neumann_entropy(random_density(rng, dim))
            assert 0.0 <= s <= math.log2(dim) + 1e-12


class TestJacobiEigenvalues:
    @pytest.mark.parametrize("dim", [2, 4, 16])
    def test_matches_numpy_on_random_hermitian(self, dim):
        rng = np.random.default_rng(41 + dim)
        for _ in range(10):
            raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            herm = (raw + raw.conj().T) / 2
            got = eigvalsh_hermitian(herm)
            want = np.linalg.eigvalsh(herm)
            np.testing.assert_allclose(got, want, atol=1e-10)

    def test_diagonal_matrix(self):
        np.testing.assert_allclose(
            eigvalsh_hermitian(np.diag([3.0, -1.0, 2.0, 0.0])), [-1, 0, 2, 3]
        )


class TestHolevoBound:
    def test_identical_states_give_zero(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        assert abs(holevo_bound([dm, dm], [0.5, 0.5])) < 1e-10

    def test_orthogonal_pure_states(self):
        states = [bell_state(label).to_density_matrix() for label in BellLabel]
        chi = holevo_bound(states, [0.25] * 4)
        assert abs(chi - 2.0) < 1e-10

    def test_unitary_invariance(self):
        rng = np.random.default_rng(17)
        states = [random_density(rng, 4, rank=2) for _ in range(3)]
        priors = [0.5, 0.3, 0.2]
        raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        unitary, _ = np.linalg.qr(raw)
        rotated = [DensityMatrix(unitary @ s.matrix @ unitary.conj().T) for s in states]
        assert abs(holevo_bound(states, priors) - holevo_bound(rotated, priors)) < 1e-9

    def test_nonnegative(self):
        rng = np.random.default_rng(19)
        states = [random_density(rng, 4) for _ in range(4)]
        assert holevo_bound(states, [0.25] * 4) >= -1e-9

    def test_dimension_mismatch(self):
        a = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        b = DensityMatrix(np.eye(2) / 2)
        with pytest.raises(ValueError):
            holevo_bound([a, b], [0.5, 0.5])

    def test_invalid_priors(self):
        dm = bell_state(BellLabel.PSI_MINUS).to_density_matrix()
        with pytest.raises(ValueError):
            holevo_bound([dm, dm], [0.9, 0.3])


class TestTypeInvariants:
    def test_pure_state_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            PureState(np.array([1.0, 1.0]))

    def test_pure_state_rejects_nan(self):
        with pytest.raises(ValueError):
            PureState(np.array([np.nan, 0.0]))

    def test_pure_state_rejects_odd_dimension(self):
        with pytest.raises(ValueError):
            PureState(np.ones(8) / math.sqrt(8))

    def test_density_matrix_rejects_non_hermitian(self):
        mat = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
        with pytest.raises(ValueError):
            DensityMatrix(mat)

    def test_density_matrix_rejects_wrong_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(2))

    def test_density_matrix_rejects_negative_eigenvalue(self):
        mat = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(ValueError):
            DensityMatrix(mat)

    def test_density_matrix_accepts_tiny_negative_drift(self):
        mat = np.diag([1.0 + 5e-11, -5e-11]).astype(complex)
        DensityMatrix(mat)  # within the -1e-10 floor

    def test_bell_diagonal_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            BellDiagonal((0.5, 0.5, 0.5, 0.5))

    def test_bell_diagonal_rejects_negative(self):
        with pytest.raises(ValueError):
            BellDiagonal((1.2, -0.2, 0.0, 0.0))

    def test_immutable_arrays(self):
        psi = bell_state(BellLabel.PSI_MINUS)
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 1.0
