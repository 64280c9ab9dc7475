"""Exact quantum-state algebra for systems of one, two, and four qubits.

Fixed conventions used throughout the package:

* computational basis order: |00>, |01>, |10>, |11>
* Bell-state order: psi-, psi+, phi-, phi+
* Pauli order: I, X, Y, Z

The singlet psi- is the reference pair state. Applying a Pauli to either
half of a Bell state permutes Bell labels, so noise and protocol steps can
be tracked purely on labels (the "Pauli frame"); the lookup tables between
the two label sets live here, next to the exact matrix arithmetic used to
cross-check the label bookkeeping.

All values are immutable after construction and all operations are pure
functions, so everything in this module is safe to evaluate concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

ATOL_NORM = 1e-12
ATOL_HERMITIAN = 1e-12
ATOL_TRACE = 1e-12
EIGENVALUE_FLOOR = -1e-10
JACOBI_OFFDIAG_TOL = 1e-13

_ALLOWED_DIMS = (2, 4, 16)


class BellLabel(IntEnum):
    """The four Bell states, in the order used for delta vectors."""

    PSI_MINUS = 0
    PSI_PLUS = 1
    PHI_MINUS = 2
    PHI_PLUS = 3


class PauliLabel(IntEnum):
    """Single-qubit Pauli operators (identity included)."""

    I = 0
    X = 1
    Y = 2
    Z = 3


# Product of two Paulis up to phase; the labels form the group Z2 x Z2.
PAULI_PRODUCT: tuple[tuple[int, ...], ...] = (
    (0, 1, 2, 3),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 1, 0),
)

# ANTICOMMUTES[a][b] == 1 iff sigma_a and sigma_b anticommute.
ANTICOMMUTES: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 0),
    (0, 0, 1, 1),
    (0, 1, 0, 1),
    (0, 1, 1, 0),
)

# Bell label of (sigma ox I)|psi-> for each Pauli, and its inverse map.
BELL_OF_PAULI: tuple[BellLabel, ...] = (
    BellLabel.PSI_MINUS,
    BellLabel.PHI_MINUS,
    BellLabel.PHI_PLUS,
    BellLabel.PSI_PLUS,
)
PAULI_OF_BELL: tuple[PauliLabel, ...] = (
    PauliLabel.I,
    PauliLabel.Z,
    PauliLabel.X,
    PauliLabel.Y,
)

_SQRT_HALF = 1.0 / math.sqrt(2.0)

PAULI_MATRICES: tuple[np.ndarray, ...] = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# Rows are psi-, psi+, phi-, phi+ over |00>,|01>,|10>,|11>.
BELL_VECTORS: np.ndarray = np.array(
    [
        [0, _SQRT_HALF, -_SQRT_HALF, 0],
        [0, _SQRT_HALF, _SQRT_HALF, 0],
        [_SQRT_HALF, 0, 0, -_SQRT_HALF],
        [_SQRT_HALF, 0, 0, _SQRT_HALF],
    ],
    dtype=np.complex128,
)
BELL_VECTORS.flags.writeable = False


def validate_probability_vector(
    values: Iterable[float], *, name: str, length: int = 4
) -> tuple[float, ...]:
    """Validate and normalize a probability vector.

    Components must be finite, each within [0, 1] up to a -1e-10 numeric
    floor (tiny negatives are clamped to zero), and sum to 1 within 1e-12.
    The returned tuple is renormalized so both invariants hold exactly.
    """
    vec = [float(v) for v in values]
    if len(vec) != length:
        raise ValueError(f"{name} needs {length} components, got {len(vec)}")
    if not all(math.isfinite(v) for v in vec):
        raise ValueError(f"{name} components must be finite")
    if any(v < EIGENVALUE_FLOOR or v > 1 + 1e-12 for v in vec):
        raise ValueError(f"{name} components must lie in [0, 1]: {vec}")
    total = sum(vec)
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"{name} must sum to 1 within 1e-12, got {total!r}")
    clamped = [max(v, 0.0) for v in vec]
    norm = sum(clamped)
    return tuple(v / norm for v in clamped)


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on 1, 2, or 4 qubits."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] not in _ALLOWED_DIMS:
            raise ValueError(f"unsupported dimension {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > ATOL_NORM:
            raise ValueError(f"squared norm {norm_sq!r} differs from 1 by > {ATOL_NORM}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def to_density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-1, positive-semidefinite matrix on 1, 2, or 4 qubits.

    Positivity is enforced down to an eigenvalue floor of -1e-10 to absorb
    numeric drift from channel compositions.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        if mat.shape[0] not in _ALLOWED_DIMS:
            raise ValueError(f"unsupported dimension {mat.shape[0]}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("entries must be finite")
        if float(np.max(np.abs(mat - mat.conj().T))) > ATOL_HERMITIAN:
            raise ValueError("matrix is not Hermitian within 1e-12")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > ATOL_TRACE:
            raise ValueError(f"trace {trace!r} differs from 1 by > {ATOL_TRACE}")
        if not _is_psd_within(mat, -EIGENVALUE_FLOOR):
            raise ValueError("matrix has an eigenvalue below -1e-10")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1


@dataclass(frozen=True)
class BellDiagonal:
    """Weights of a Bell-diagonal two-qubit state, ordered psi-,psi+,phi-,phi+."""

    deltas: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "deltas",
            validate_probability_vector(self.deltas, name="Bell-diagonal weights"),
        )

    def __getitem__(self, label: BellLabel | int) -> float:
        return self.deltas[int(label)]

    def as_array(self) -> np.ndarray:
        return np.array(self.deltas, dtype=np.float64)


def _is_psd_within(mat: np.ndarray, tol: float) -> bool:
    """True iff all eigenvalues of the Hermitian ``mat`` are >= -tol.

    Uses a Cholesky factorization of ``mat`` shifted by ``tol``; a failed
    pivot means an eigenvalue below the floor.
    """
    n = mat.shape[0]
    shifted = mat + (tol + 1e-13) * np.eye(n)
    chol = np.zeros_like(shifted)
    for j in range(n):
        pivot = shifted[j, j].real - float(np.sum(np.abs(chol[j, :j]) ** 2))
        if pivot <= 0.0:
            return False
        chol[j, j] = math.sqrt(pivot)
        if j + 1 < n:
            chol[j + 1 :, j] = (
                shifted[j + 1 :, j] - chol[j + 1 :, :j] @ chol[j, :j].conj()
            ) / chol[j, j]
    return True


def eigvalsh_hermitian(matrix: np.ndarray, *, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, ascending.

    Cyclic Jacobi rotations adapted to complex entries; a sweep rotates each
    off-diagonal pair once and iteration stops when every off-diagonal
    magnitude is below 1e-13. Dimensions here never exceed 16, so the cubic
    cost is negligible.
    """
    a = np.array(matrix, dtype=np.complex128)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 1:
        return a.real.reshape(1).copy()
    for _ in range(max_sweeps):
        if float(np.max(np.abs(a - np.diag(np.diag(a))))) < JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < JACOBI_OFFDIAG_TOL:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - np.conj(sp) * col_q
                a[:, q] = sp * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sp * row_q
                a[q, :] = np.conj(sp) * row_p + c * row_q
    else:
        raise RuntimeError("Jacobi eigenvalue iteration did not converge")
    return np.sort(np.diag(a).real)


def bell_state(label: BellLabel) -> PureState:
    """The named Bell state over the computational basis |00>,|01>,|10>,|11>."""
    return PureState(BELL_VECTORS[int(label)])


_SINGLE_PHOTON = {
    "0": np.array([1, 0], dtype=np.complex128),
    "1": np.array([0, 1], dtype=np.complex128),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=np.complex128),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=np.complex128),
}


def single_photon(name: str) -> PureState:
    """One of the four prepared single-photon states: "0", "1", "+", "-"."""
    if name not in _SINGLE_PHOTON:
        raise ValueError(f"unknown single-photon state {name!r}")
    return PureState(_SINGLE_PHOTON[name])


def basis_eigenvector(basis: PauliLabel, bit: int) -> np.ndarray:
    """Eigenvector of sigma_basis with eigenvalue +1 (bit 0) or -1 (bit 1)."""
    if basis == PauliLabel.I:
        raise ValueError("measurement basis must be X, Y, or Z")
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    sign = 1.0 if bit == 0 else -1.0
    if basis == PauliLabel.Z:
        return _SINGLE_PHOTON["0"].copy() if bit == 0 else _SINGLE_PHOTON["1"].copy()
    if basis == PauliLabel.X:
        return np.array([_SQRT_HALF, sign * _SQRT_HALF], dtype=np.complex128)
    return np.array([_SQRT_HALF, sign * 1j * _SQRT_HALF], dtype=np.complex128)


def tensor(a: PureState, b: PureState) -> PureState:
    """Tensor product of two pure states."""
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def embed_single_qubit_operator(op: np.ndarray, qubit: int, num_qubits: int) -> np.ndarray:
    """Expand a 2x2 operator to act on one qubit of an n-qubit register."""
    if not 0 <= qubit < num_qubits:
        raise IndexError(f"qubit {qubit} out of range for {num_qubits} qubits")
    return _embed_operator(np.asarray(op, dtype=np.complex128), (qubit,), num_qubits)


def embed_two_qubit_operator(
    op: np.ndarray, qubits: tuple[int, int], num_qubits: int
) -> np.ndarray:
    """Expand a 4x4 operator to act on an ordered qubit pair of a register."""
    if len(set(qubits)) != 2 or not all(0 <= q < num_qubits for q in qubits):
        raise IndexError(f"invalid qubit pair {qubits} for {num_qubits} qubits")
    return _embed_operator(np.asarray(op, dtype=np.complex128), qubits, num_qubits)


def _embed_operator(op: np.ndarray, qubits: Sequence[int], num_qubits: int) -> np.ndarray:
    k = len(qubits)
    rest = [q for q in range(num_qubits) if q not in qubits]
    order = list(qubits) + rest
    full = np.kron(op, np.eye(2 ** (num_qubits - k), dtype=np.complex128))
    full = full.reshape((2,) * (2 * num_qubits))
    row_axes = [order.index(q) for q in range(num_qubits)]
    col_axes = [num_qubits + order.index(q) for q in range(num_qubits)]
    dim = 2**num_qubits
    return full.transpose(row_axes + col_axes).reshape(dim, dim)


def apply_pauli(
    state: PureState | DensityMatrix, op: PauliLabel, qubit: int
) -> PureState | DensityMatrix:
    """Apply a single-qubit Pauli to the given tensor factor.

    Pure states keep their exact phase; for density matrices the conjugation
    makes any global phase irrelevant.
    """
    nq = state.num_qubits
    if not 0 <= qubit < nq:
        raise IndexError(f"qubit {qubit} out of range for {nq} qubits")
    full = embed_single_qubit_operator(PAULI_MATRICES[int(op)], qubit, nq)
    if isinstance(state, PureState):
        return PureState(full @ state.amplitudes)
    return DensityMatrix(full @ state.matrix @ full.conj().T)


def bell_measure(dm: DensityMatrix) -> np.ndarray:
    """Probabilities of the four Bell outcomes for a two-qubit state."""
    if dm.dim != 4:
        raise ValueError("Bell measurement needs a two-qubit state")
    probs = np.array(
        [float(np.real(BELL_VECTORS[i].conj() @ dm.matrix @ BELL_VECTORS[i])) for i in range(4)]
    )
    return probs


def product_decompose(a: PureState, b: PureState) -> np.ndarray:
    """Amplitudes of a two-photon product state in the Bell basis.

    Intended for the four prepared single-photon states on each side; the
    squared magnitudes are the Bell-measurement probabilities of ``a ox b``.
    """
    if a.dim != 2 or b.dim != 2:
        raise ValueError("product decomposition needs two single-qubit states")
    joint = np.kron(a.amplitudes, b.amplitudes)
    return BELL_VECTORS.conj() @ joint


def pauli_twirl(dm: DensityMatrix) -> BellDiagonal:
    """Diagonal of a two-qubit state in the Bell basis.

    This is the state a full local twirl would produce, expressed as the
    weight vector of the resulting Bell-diagonal mixture.
    """
    return BellDiagonal(tuple(bell_measure(dm)))


def bell_diagonal_state(d: BellDiagonal) -> DensityMatrix:
    """Reconstruct the Bell-diagonal density matrix with the given weights."""
    mat = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        v = BELL_VECTORS[i]
        mat += d.deltas[i] * np.outer(v, v.conj())
    return DensityMatrix(mat)


def purify_bell_diagonal(d: BellDiagonal) -> PureState:
    """Purify a Bell-diagonal pair state with a four-dimensional environment.

    Returns sum_i sqrt(delta_i) |Psi_i>|E_i> with the environment in its
    computational basis; tracing out the environment recovers the mixture.
    """
    amps = np.zeros(16, dtype=np.complex128)
    for i in range(4):
        root = math.sqrt(d.deltas[i])
        for ab in range(4):
            amps[ab * 4 + i] += root * BELL_VECTORS[i][ab]
    return PureState(amps)


def partial_trace(dm: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the kept qubits (ascending order preserved)."""
    nq = dm.num_qubits
    kept = sorted(set(int(q) for q in keep))
    if not kept or any(q < 0 or q >= nq for q in kept):
        raise ValueError(f"invalid subsystem selector {keep!r} for {nq} qubits")
    if 2 ** len(kept) not in _ALLOWED_DIMS:
        raise ValueError(f"reduced dimension {2 ** len(kept)} is unsupported")
    if len(kept) == nq:
        return DensityMatrix(dm.matrix)
    arr = dm.matrix.reshape((2,) * (2 * nq))
    row = [chr(ord("a") + q) for q in range(nq)]
    col = [row[q] if q not in kept else chr(ord("a") + nq + q) for q in range(nq)]
    out = "".join(row[q] for q in kept) + "".join(col[q] for q in kept)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, arr)
    dim = 2 ** len(kept)
    return DensityMatrix(reduced.reshape(dim, dim))


def von_neumann_entropy(dm: DensityMatrix) -> float:
    """Von Neumann entropy in bits; eigenvalues in [-1e-10, 0) count as zero."""
    eigenvalues = eigvalsh_hermitian(dm.matrix)
    total = 0.0
    for value in eigenvalues:
        if value > 0.0:
            total -= value * math.log2(value)
    return max(total, 0.0)


def holevo_bound(states: Sequence[DensityMatrix], priors: Sequence[float]) -> float:
    """Holevo quantity S(sum p_i rho_i) - sum p_i S(rho_i) in bits."""
    if len(states) == 0 or len(states) != len(priors):
        raise ValueError("need one prior per state")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise ValueError(f"ensemble members have mixed dimensions {sorted(dims)}")
    pr = [float(p) for p in priors]
    if any(p < 0 for p in pr) or abs(sum(pr) - 1.0) > 1e-9:
        raise ValueError("priors must be nonnegative and sum to 1")
    average = DensityMatrix(sum(p * s.matrix for p, s in zip(pr, states)))
    return von_neumann_entropy(average) - sum(
        p * von_neumann_entropy(s) for p, s in zip(pr, states)
    )


def states_equal(a: PureState, b: PureState, *, atol: float = 1e-12) -> bool:
    """Physical equality of pure states: overlap within atol of 1."""
    if a.dim != b.dim:
        return False
    return abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2 >= 1.0 - atol
