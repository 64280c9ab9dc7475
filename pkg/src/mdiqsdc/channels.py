"""Pauli noise models: the depolarizing channel, channel composition, and
the mapping between Bell-diagonal weights and measured error rates.

The symmetric depolarizing channel with parameter p replaces a qubit by the
maximally mixed state with probability p, equivalently applies X, Y, or Z
each with probability p/4. Acting on one half of a singlet it produces the
Bell-diagonal weights (1 - 3p/4, p/4, p/4, p/4), so each same-basis check
disagrees with probability p/2. That single-use error rate x = p/2 is the
canonical sweep axis for all capacity curves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quantum import (
    ANTICOMMUTES,
    BELL_OF_PAULI,
    PAULI_OF_BELL,
    PAULI_PRODUCT,
    BellDiagonal,
    DensityMatrix,
    PauliLabel,
    apply_pauli,
    validate_probability_vector,
)


@dataclass(frozen=True)
class PauliDistribution:
    """Probabilities of the error operators I, X, Y, Z on one qubit."""

    probabilities: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "probabilities",
            validate_probability_vector(self.probabilities, name="Pauli distribution"),
        )

    def __getitem__(self, label: PauliLabel | int) -> float:
        return self.probabilities[int(label)]


IDENTITY_DIST = PauliDistribution((1.0, 0.0, 0.0, 0.0))


@dataclass(frozen=True)
class ErrorRates:
    """Check-measurement error rates per basis (relative to the singlet)."""

    eps_z: float
    eps_x: float
    eps_y: float

    def __post_init__(self) -> None:
        for name in ("eps_z", "eps_x", "eps_y"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value!r} outside [0, 1]")

    def in_basis(self, basis: PauliLabel) -> float:
        if basis == PauliLabel.Z:
            return self.eps_z
        if basis == PauliLabel.X:
            return self.eps_x
        if basis == PauliLabel.Y:
            return self.eps_y
        raise ValueError("basis must be X, Y, or Z")


def _check_channel_param(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"channel parameter {p!r} outside [0, 1]")
    return float(p)


def depolarize(dm: DensityMatrix, p: float, qubit: int) -> DensityMatrix:
    """Depolarize one qubit: rho -> p * (I/2 on that qubit) + (1-p) * rho."""
    _check_channel_param(p)
    terms = (1.0 - 0.75 * p) * dm.matrix
    for op in (PauliLabel.X, PauliLabel.Y, PauliLabel.Z):
        terms = terms + 0.25 * p * apply_pauli(dm, op, qubit).matrix
    return DensityMatrix(terms)


def depolarizing_pauli_dist(p: float) -> PauliDistribution:
    """Pauli-error weights of the depolarizing channel with parameter p."""
    _check_channel_param(p)
    return PauliDistribution((1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p))


def convolve(d1: PauliDistribution, d2: PauliDistribution) -> PauliDistribution:
    """Net error distribution of two independent Pauli channels in series."""
    out = [0.0, 0.0, 0.0, 0.0]
    for i in range(4):
        for j in range(4):
            out[PAULI_PRODUCT[i][j]] += d1.probabilities[i] * d2.probabilities[j]
    return PauliDistribution(tuple(out))


def convolve_many(dists: list[PauliDistribution]) -> PauliDistribution:
    """Fold a sequence of independent Pauli channels into one distribution."""
    result = IDENTITY_DIST
    for d in dists:
        result = convolve(result, d)
    return result


def bell_diagonal_from_pauli_dist(dist: PauliDistribution) -> BellDiagonal:
    """Bell-diagonal weights of a singlet hit by the given error process."""
    deltas = [0.0] * 4
    for pauli in range(4):
        deltas[int(BELL_OF_PAULI[pauli])] = dist.probabilities[pauli]
    return BellDiagonal(tuple(deltas))


def pauli_dist_from_bell_diagonal(d: BellDiagonal) -> PauliDistribution:
    """Inverse of :func:`bell_diagonal_from_pauli_dist`."""
    probs = [0.0] * 4
    for bell in range(4):
        probs[int(PAULI_OF_BELL[bell])] = d.deltas[bell]
    return PauliDistribution(tuple(probs))


def error_rate_in_basis(dist: PauliDistribution, basis: PauliLabel) -> float:
    """Probability that an error from ``dist`` flips a same-basis check."""
    if basis == PauliLabel.I:
        raise ValueError("basis must be X, Y, or Z")
    return sum(
        dist.probabilities[pauli]
        for pauli in range(4)
        if ANTICOMMUTES[pauli][int(basis)]
    )


def error_rates_from_deltas(d: BellDiagonal) -> ErrorRates:
    """Per-basis check error rates of a Bell-diagonal pair.

    With the singlet as reference, a check errs when the pair's Pauli frame
    anticommutes with the measurement basis: eps_z = delta_3 + delta_4,
    eps_x = delta_2 + delta_4, eps_y = delta_2 + delta_3.
    """
    dist = pauli_dist_from_bell_diagonal(d)
    return ErrorRates(
        eps_z=error_rate_in_basis(dist, PauliLabel.Z),
        eps_x=error_rate_in_basis(dist, PauliLabel.X),
        eps_y=error_rate_in_basis(dist, PauliLabel.Y),
    )
