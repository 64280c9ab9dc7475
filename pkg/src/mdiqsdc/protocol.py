"""Monte Carlo execution of the two measurement-device-independent QSDC
protocols, in their equivalent entanglement-swapping form.

Every round proceeds in the Pauli frame: two singlet sources, one channel
error sampled per transmission leg, the untrusted middle party's Bell
outcome, the swap correction, then either a correlation check or a message
(dense-coding symbol for the entanglement protocol, one bit for the
single-photon protocol). The frame bookkeeping rests on one identity that
the exact 16-dimensional oracle verifies: after the swap correction, the
shared pair differs from the singlet exactly by the composed Pauli error of
the two legs, independently of the announced Bell outcome.

Two analytic backends expose per-round outcome distributions, one from the
label algebra and one from explicit density matrices, so their agreement
can be checked to machine precision without sampling.

A single run is sequential and owns its generator; runs with distinct
configs or seeds may execute concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channels import (
    IDENTITY_DIST,
    PauliDistribution,
    convolve,
    depolarize,
    depolarizing_pauli_dist,
)
from .infotheory import (
    CapacityResult,
    ErrorVector,
    capacity_mdi_dl04,
    capacity_mdi_ts,
)
from .quantum import (
    ANTICOMMUTES,
    BELL_OF_PAULI,
    BELL_VECTORS,
    PAULI_OF_BELL,
    PAULI_PRODUCT,
    BellLabel,
    DensityMatrix,
    PauliLabel,
    apply_pauli,
    basis_eigenvector,
    bell_measure,
    bell_state,
    embed_two_qubit_operator,
    partial_trace,
)


class Protocol(str, Enum):
    """Protocol selector; the two MDI protocols are simulated, the two
    non-MDI baselines exist only as analytic reconstructions."""

    MDI_TS = "mdi-ts"
    MDI_DL04 = "mdi-dl04"
    TWO_STEP = "two-step"
    DL04 = "dl04"


class NoisePlacement(str, Enum):
    """Which transmissions are noisy.

    FIRST_LEG_ONLY puts channel noise only on the initial photon
    transmissions to the middle party, so checked error rates and message
    errors derive from the same error distribution. BOTH_LEGS also applies
    noise to the encoded-photon re-transmission, making message errors
    strictly noisier than the checked rates.
    """

    FIRST_LEG_ONLY = "first-leg-only"
    BOTH_LEGS = "both-legs"


class AttackModel(str, Enum):
    NONE = "none"
    INTERCEPT_RESEND = "intercept-resend"


_MUL = np.array(PAULI_PRODUCT, dtype=np.int64)
_ANTI = np.array(ANTICOMMUTES, dtype=np.int64)
_BELL_OF_PAULI = np.array([int(b) for b in BELL_OF_PAULI], dtype=np.int64)
_PAULI_OF_BELL = np.array([int(p) for p in PAULI_OF_BELL], dtype=np.int64)

# Measurement basis the middle party uses on message photons, keyed by the
# encoding operator; it must anticommute with the encoding so that the
# encoded bit flips the pair correlation. For Y encoding both Z and X
# qualify; Z is used.
MESSAGE_BASIS: dict[PauliLabel, PauliLabel] = {
    PauliLabel.X: PauliLabel.Z,
    PauliLabel.Y: PauliLabel.Z,
    PauliLabel.Z: PauliLabel.X,
}


@dataclass(frozen=True)
class ProtocolConfig:
    """Complete, seedable description of one Monte Carlo run."""

    protocol: Protocol
    rounds: int
    channel_p: float
    seed: int
    check_fraction: float = 0.25
    noise: NoisePlacement = NoisePlacement.FIRST_LEG_ONLY
    q_override: float | None = None
    eta: float = 1.0
    dl04_encoding: PauliLabel = PauliLabel.Y
    attack: AttackModel = AttackModel.NONE
    attack_bases: tuple[PauliLabel, ...] = (PauliLabel.Z, PauliLabel.X)
    attack_leg: str = "alice"
    transmittance: float = 1.0
    decode_with_cover: bool = True

    def __post_init__(self) -> None:
        if self.protocol not in (Protocol.MDI_TS, Protocol.MDI_DL04):
            raise ValueError("only the two MDI protocols can be simulated")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not 0.0 < self.check_fraction < 1.0:
            raise ValueError("check_fraction must lie strictly in (0, 1)")
        if not 0.0 <= self.channel_p <= 1.0:
            raise ValueError("channel parameter must lie in [0, 1]")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.dl04_encoding == PauliLabel.I:
            raise ValueError("the bit-1 encoding operator cannot be the identity")
        if self.q_override is not None and not 0.0 <= self.q_override <= 1.0:
            raise ValueError("gain override must lie in [0, 1]")
        if self.eta < 0.0:
            raise ValueError("gain gap must be nonnegative")
        if not 0.0 <= self.transmittance <= 1.0:
            raise ValueError("transmittance must lie in [0, 1]")
        if self.attack_leg not in ("alice", "bob"):
            raise ValueError("attack_leg must be 'alice' or 'bob'")
        bases = tuple(self.attack_bases)
        if self.attack == AttackModel.INTERCEPT_RESEND:
            if not bases or len(set(bases)) != len(bases):
                raise ValueError("attack bases must be a nonempty set")
            if any(b == PauliLabel.I for b in bases):
                raise ValueError("attack bases must be X, Y, or Z")


@dataclass(frozen=True)
class RoundRecord:
    """Outcome of a single protocol round.

    ``frame`` is the Bell label of the shared pair after swapping and
    correction. Check rounds carry the basis and both local outcomes;
    message rounds carry the encoded and decoded symbol (two bits for the
    entanglement protocol, one bit for the single-photon protocol). A
    ``decoded`` of None on a message round means the photon was lost.
    """

    frame: BellLabel
    role: str
    basis: PauliLabel | None = None
    alice_outcome: int | None = None
    bob_outcome: int | None = None
    encoded: int | None = None
    decoded: int | None = None

    def __post_init__(self) -> None:
        if self.role not in ("check", "message"):
            raise ValueError("role must be 'check' or 'message'")
        if self.role == "check":
            if self.basis is None or self.alice_outcome is None or self.bob_outcome is None:
                raise ValueError("check rounds need basis and both outcomes")
            if self.encoded is not None or self.decoded is not None:
                raise ValueError("check rounds carry no message symbols")
        else:
            if self.encoded is None:
                raise ValueError("message rounds need an encoded symbol")
            if self.basis is not None or self.alice_outcome is not None or self.bob_outcome is not None:
                raise ValueError("message rounds carry no check data")


@dataclass(frozen=True)
class QberEstimate:
    """Empirical error rate of one check basis with its binomial standard error."""

    basis: PauliLabel
    samples: int
    errors: int
    rate: float
    se: float


@dataclass(frozen=True)
class TranscriptStats:
    """Aggregated tallies and estimates of one Monte Carlo run."""

    protocol: Protocol
    rounds: int
    check_rounds: int
    message_rounds: int
    decoded_rounds: int
    gain: float
    eps_z: QberEstimate | None
    eps_x: QberEstimate | None
    eps_y: QberEstimate | None
    message_errors: ErrorVector | None
    bit_error: float | None
    bit_error_se: float | None
    capacity: CapacityResult | None
    capacity_se: float | None
    estimate_available: bool
    unavailable_reason: str | None
    attack_active: bool

    def __post_init__(self) -> None:
        if self.check_rounds + self.message_rounds != self.rounds:
            raise ValueError("round tallies are inconsistent")
        if not 0 <= self.decoded_rounds <= self.message_rounds:
            raise ValueError("decoded count exceeds message count")

    def qber(self, basis: PauliLabel) -> QberEstimate | None:
        return {PauliLabel.Z: self.eps_z, PauliLabel.X: self.eps_x, PauliLabel.Y: self.eps_y}[
            basis
        ]


def swap_correction(outcome: BellLabel) -> PauliLabel:
    """Pauli that Bob applies to his retained photon after the middle
    party announces ``outcome``, restoring the shared pair to the singlet
    when both sources emitted singlets."""
    return PAULI_OF_BELL[int(outcome)]


def check_bases(cfg: ProtocolConfig) -> tuple[PauliLabel, ...]:
    """Bases drawn uniformly for check rounds; Y joins when it is the
    single-photon encoding basis, since that error rate must be estimated."""
    if cfg.protocol == Protocol.MDI_DL04 and cfg.dl04_encoding == PauliLabel.Y:
        return (PauliLabel.Z, PauliLabel.X, PauliLabel.Y)
    return (PauliLabel.Z, PauliLabel.X)


def intercept_resend_pauli_dist(bases: tuple[PauliLabel, ...]) -> PauliDistribution:
    """Pauli-error process equivalent to measure-and-resend in a random basis.

    A nonselective measurement in basis b dephases the qubit, which is the
    Pauli mixture (I + sigma_b)/2 applied with weight 1/2 each; averaging
    over the attacker's basis choices gives the returned distribution.
    """
    if not bases or any(b == PauliLabel.I for b in bases):
        raise ValueError("attack bases must be drawn from X, Y, Z")
    probs = [0.5, 0.0, 0.0, 0.0]
    for b in bases:
        probs[int(b)] += 0.5 / len(bases)
    return PauliDistribution(tuple(probs))


def eve_intercept_resend(
    leg_samples: np.ndarray, bases: tuple[PauliLabel, ...], rng: np.random.Generator
) -> np.ndarray:
    """Tamper sampled leg errors with an intercept-resend attack."""
    dist = intercept_resend_pauli_dist(bases)
    eve = rng.choice(4, size=len(leg_samples), p=dist.probabilities)
    return _MUL[leg_samples, eve]


def intercept_resend_channel(
    dm: DensityMatrix, qubit: int, bases: tuple[PauliLabel, ...]
) -> DensityMatrix:
    """Exact channel of the intercept-resend attack on one qubit."""
    if not bases or any(b == PauliLabel.I for b in bases):
        raise ValueError("attack bases must be drawn from X, Y, Z")
    out = np.zeros_like(dm.matrix)
    for b in bases:
        out = out + 0.5 * (dm.matrix + apply_pauli(dm, b, qubit).matrix) / len(bases)
    return DensityMatrix(out)


def _first_leg_dists(cfg: ProtocolConfig) -> tuple[PauliDistribution, PauliDistribution]:
    base = depolarizing_pauli_dist(cfg.channel_p)
    leg_a, leg_b = base, base
    if cfg.attack == AttackModel.INTERCEPT_RESEND:
        eve = intercept_resend_pauli_dist(cfg.attack_bases)
        if cfg.attack_leg == "alice":
            leg_a = convolve(leg_a, eve)
        else:
            leg_b = convolve(leg_b, eve)
    return leg_a, leg_b


def _second_leg_dist(cfg: ProtocolConfig) -> PauliDistribution:
    """Net re-transmission error on message rounds (identity if noiseless)."""
    if cfg.noise != NoisePlacement.BOTH_LEGS:
        return IDENTITY_DIST
    single = depolarizing_pauli_dist(cfg.channel_p)
    if cfg.protocol == Protocol.MDI_TS:
        return convolve(single, single)
    return single  # only Alice's encoded photon travels again


@dataclass
class _RoundArrays:
    frame: np.ndarray
    charlie_outcome: np.ndarray
    is_check: np.ndarray
    basis: np.ndarray
    alice_bit: np.ndarray
    bob_bit: np.ndarray
    encoded: np.ndarray
    decoded: np.ndarray  # -1 where the message photon was lost


def _simulate(cfg: ProtocolConfig) -> _RoundArrays:
    """Run all rounds in the Pauli frame. Draw order is fixed so identical
    configs reproduce identical transcripts."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.rounds
    base = depolarizing_pauli_dist(cfg.channel_p)

    leg_a = rng.choice(4, size=n, p=base.probabilities)
    leg_b = rng.choice(4, size=n, p=base.probabilities)
    if cfg.attack == AttackModel.INTERCEPT_RESEND:
        if cfg.attack_leg == "alice":
            leg_a = eve_intercept_resend(leg_a, cfg.attack_bases, rng)
        else:
            leg_b = eve_intercept_resend(leg_b, cfg.attack_bases, rng)
    frame = _MUL[leg_a, leg_b]

    charlie_outcome = rng.integers(0, 4, size=n)
    is_check = rng.random(n) < cfg.check_fraction
    bases = check_bases(cfg)
    basis_arr = np.array([int(b) for b in bases], dtype=np.int64)[
        rng.integers(0, len(bases), size=n)
    ]
    alice_bit = rng.integers(0, 2, size=n)

    if cfg.protocol == Protocol.MDI_TS:
        encoded = rng.integers(0, 4, size=n)
        cover = rng.integers(0, 4, size=n)
    else:
        encoded = rng.integers(0, 2, size=n)
        cover = None

    if cfg.noise == NoisePlacement.BOTH_LEGS:
        second_a = rng.choice(4, size=n, p=base.probabilities)
        if cfg.protocol == Protocol.MDI_TS:
            second_b = rng.choice(4, size=n, p=base.probabilities)
            second = _MUL[second_a, second_b]
        else:
            second = second_a
    else:
        second = np.zeros(n, dtype=np.int64)

    photons_in_flight = 2 if cfg.protocol == Protocol.MDI_TS else 1
    if cfg.transmittance < 1.0:
        arrived = rng.random(n) < cfg.transmittance**photons_in_flight
    else:
        arrived = np.ones(n, dtype=bool)

    # Check outcomes: the singlet reference is anti-correlated in every
    # basis; the pair frame flips that exactly when it anticommutes with
    # the measurement basis.
    err = _ANTI[frame, basis_arr]
    bob_bit = alice_bit ^ 1 ^ err

    if cfg.protocol == Protocol.MDI_TS:
        label2 = _MUL[second, _MUL[cover, _MUL[encoded, frame]]]
        if cfg.decode_with_cover:
            decoded = _MUL[cover, label2]
        else:
            decoded = label2
    else:
        u1 = int(cfg.dl04_encoding)
        enc_pauli = np.where(encoded == 1, u1, 0)
        label2 = _MUL[second, _MUL[enc_pauli, frame]]
        m = int(MESSAGE_BASIS[cfg.dl04_encoding])
        decoded = _ANTI[label2, m]
    decoded = np.where(arrived, decoded, -1)

    return _RoundArrays(
        frame=frame,
        charlie_outcome=charlie_outcome,
        is_check=is_check,
        basis=basis_arr,
        alice_bit=alice_bit,
        bob_bit=bob_bit,
        encoded=encoded,
        decoded=decoded,
    )


def _binary_rate_variance(rate: float, samples: int) -> float:
    """Delta-method variance of h(rate-hat) for a binomial estimate."""
    if samples <= 0 or rate <= 0.0 or rate >= 1.0:
        return 0.0
    slope = math.log2((1.0 - rate) / rate)
    return slope * slope * rate * (1.0 - rate) / samples


def _shannon_variance(probs: tuple[float, ...], samples: int) -> float:
    """Delta-method variance of H(multinomial estimate)."""
    if samples <= 0:
        return 0.0
    terms = [(-math.log2(p) - 1.0 / math.log(2.0)) for p in probs if p > 0.0]
    weights = [p for p in probs if p > 0.0]
    mean = sum(w * t for w, t in zip(weights, terms))
    second = sum(w * t * t for w, t in zip(weights, terms))
    return max(second - mean * mean, 0.0) / samples


def _stats_from_counts(
    cfg: ProtocolConfig,
    *,
    rounds: int,
    basis_counts: dict[PauliLabel, tuple[int, int]],
    message_rounds: int,
    decoded_rounds: int,
    ts_diff_counts: np.ndarray | None,
    dl04_bit_errors: int | None,
) -> TranscriptStats:
    estimates: dict[PauliLabel, QberEstimate | None] = {
        PauliLabel.Z: None,
        PauliLabel.X: None,
        PauliLabel.Y: None,
    }
    for basis, (samples, errors) in basis_counts.items():
        if samples > 0:
            rate = errors / samples
            se = math.sqrt(rate * (1.0 - rate) / samples)
            estimates[basis] = QberEstimate(basis, samples, errors, rate, se)

    check_rounds = sum(s for s, _ in basis_counts.values())
    gain = decoded_rounds / message_rounds if message_rounds > 0 else 0.0
    q_used = cfg.q_override if cfg.q_override is not None else gain

    unavailable: str | None = None
    # The single-photon capacity needs the encoding-basis rate; the
    # message-basis rate is implied by the message errors themselves.
    needed_bases = (
        (PauliLabel.Z, PauliLabel.X)
        if cfg.protocol == Protocol.MDI_TS
        else (cfg.dl04_encoding,)
    )
    for basis in needed_bases:
        if estimates[basis] is None:
            unavailable = f"no check rounds in basis {basis.name}"
    if message_rounds == 0:
        unavailable = "no message rounds"
    elif decoded_rounds == 0:
        unavailable = "no decoded message rounds"

    message_errors: ErrorVector | None = None
    bit_error: float | None = None
    bit_error_se: float | None = None
    capacity: CapacityResult | None = None
    capacity_se: float | None = None

    if unavailable is None:
        if cfg.protocol == Protocol.MDI_TS:
            probs = tuple(float(c) / decoded_rounds for c in ts_diff_counts)
            message_errors = ErrorVector(probs)
            ez = estimates[PauliLabel.Z]
            ex = estimates[PauliLabel.X]
            capacity = capacity_mdi_ts(
                message_errors, ez.rate, ex.rate, q=q_used, eta=cfg.eta
            )
            variance = _shannon_variance(probs, decoded_rounds) + cfg.eta**2 * (
                _binary_rate_variance(ez.rate, ez.samples)
                + _binary_rate_variance(ex.rate, ex.samples)
            )
            capacity_se = q_used * math.sqrt(variance)
        else:
            bit_error = dl04_bit_errors / decoded_rounds
            bit_error_se = math.sqrt(bit_error * (1.0 - bit_error) / decoded_rounds)
            eu = estimates[cfg.dl04_encoding]
            capacity = capacity_mdi_dl04(bit_error, eu.rate, q=q_used, eta=cfg.eta)
            variance = _binary_rate_variance(bit_error, decoded_rounds) + (
                cfg.eta**2 * _binary_rate_variance(eu.rate, eu.samples)
            )
            capacity_se = q_used * math.sqrt(variance)

    return TranscriptStats(
        protocol=cfg.protocol,
        rounds=rounds,
        check_rounds=check_rounds,
        message_rounds=message_rounds,
        decoded_rounds=decoded_rounds,
        gain=gain,
        eps_z=estimates[PauliLabel.Z],
        eps_x=estimates[PauliLabel.X],
        eps_y=estimates[PauliLabel.Y],
        message_errors=message_errors,
        bit_error=bit_error,
        bit_error_se=bit_error_se,
        capacity=capacity,
        capacity_se=capacity_se,
        estimate_available=unavailable is None,
        unavailable_reason=unavailable,
        attack_active=cfg.attack != AttackModel.NONE,
    )


def _stats_from_arrays(cfg: ProtocolConfig, arrays: _RoundArrays) -> TranscriptStats:
    check = arrays.is_check
    basis_counts: dict[PauliLabel, tuple[int, int]] = {}
    for basis in check_bases(cfg):
        mask = check & (arrays.basis == int(basis))
        samples = int(np.count_nonzero(mask))
        errors = int(np.count_nonzero(arrays.alice_bit[mask] == arrays.bob_bit[mask]))
        basis_counts[basis] = (samples, errors)

    msg = ~check
    decoded_mask = msg & (arrays.decoded >= 0)
    message_rounds = int(np.count_nonzero(msg))
    decoded_rounds = int(np.count_nonzero(decoded_mask))

    ts_diff_counts: np.ndarray | None = None
    dl04_bit_errors: int | None = None
    if cfg.protocol == Protocol.MDI_TS:
        diff = _MUL[arrays.decoded[decoded_mask], arrays.encoded[decoded_mask]]
        ts_diff_counts = np.bincount(diff, minlength=4)
    else:
        dl04_bit_errors = int(
            np.count_nonzero(arrays.decoded[decoded_mask] != arrays.encoded[decoded_mask])
        )

    return _stats_from_counts(
        cfg,
        rounds=cfg.rounds,
        basis_counts=basis_counts,
        message_rounds=message_rounds,
        decoded_rounds=decoded_rounds,
        ts_diff_counts=ts_diff_counts,
        dl04_bit_errors=dl04_bit_errors,
    )


def run_mdi_ts(cfg: ProtocolConfig) -> TranscriptStats:
    """Monte Carlo run of the entanglement-based MDI protocol.

    Per round: sample leg errors, swap and correct, then either a Z/X
    correlation check or a dense-coding message under Bob's uniformly
    random cover operation, re-measured by the middle party and decoded
    with the cover bookkeeping. Deterministic given the config seed.
    """
    if cfg.protocol != Protocol.MDI_TS:
        raise ValueError("config is not for the entanglement protocol")
    return _stats_from_arrays(cfg, _simulate(cfg))


def run_mdi_dl04(cfg: ProtocolConfig) -> TranscriptStats:
    """Monte Carlo run of the single-photon MDI protocol.

    Shares the swap and check machinery with the entanglement protocol;
    message rounds encode one bit as identity or the configured encoding
    operator, and both message photons are read out in the conjugate
    single-photon basis. When the encoding is Y, checks also draw basis Y.
    """
    if cfg.protocol != Protocol.MDI_DL04:
        raise ValueError("config is not for the single-photon protocol")
    return _stats_from_arrays(cfg, _simulate(cfg))


def run(cfg: ProtocolConfig) -> TranscriptStats:
    """Dispatch to the configured protocol's runner."""
    if cfg.protocol == Protocol.MDI_TS:
        return run_mdi_ts(cfg)
    return run_mdi_dl04(cfg)


def round_records(cfg: ProtocolConfig) -> list[RoundRecord]:
    """Materialize per-round records of the run that ``run(cfg)`` aggregates.

    Identical seeding guarantees the records and the aggregated stats
    describe the same transcript. Intended for small ``rounds``.
    """
    arrays = _simulate(cfg)
    records: list[RoundRecord] = []
    for i in range(cfg.rounds):
        frame = BellLabel(int(_BELL_OF_PAULI[arrays.frame[i]]))
        if arrays.is_check[i]:
            records.append(
                RoundRecord(
                    frame=frame,
                    role="check",
                    basis=PauliLabel(int(arrays.basis[i])),
                    alice_outcome=int(arrays.alice_bit[i]),
                    bob_outcome=int(arrays.bob_bit[i]),
                )
            )
        else:
            decoded = int(arrays.decoded[i])
            records.append(
                RoundRecord(
                    frame=frame,
                    role="message",
                    encoded=int(arrays.encoded[i]),
                    decoded=None if decoded < 0 else decoded,
                )
            )
    return records


def estimate_stats(records: list[RoundRecord], cfg: ProtocolConfig) -> TranscriptStats:
    """Aggregate a list of round records into transcript statistics.

    Check error rates are per-basis disagreement frequencies (the singlet
    reference expects anti-correlated outcomes); message statistics are the
    empirical symbol-difference distribution or bit error rate. Estimates
    feed the protocol's capacity bound; a basis with no check rounds flags
    the result as unavailable.
    """
    if not records:
        raise ValueError("cannot estimate statistics from zero records")
    basis_counts: dict[PauliLabel, tuple[int, int]] = {
        b: (0, 0) for b in check_bases(cfg)
    }
    message_rounds = 0
    decoded_rounds = 0
    ts_diff_counts = np.zeros(4, dtype=np.int64)
    dl04_bit_errors = 0
    for rec in records:
        if rec.role == "check":
            if rec.basis not in basis_counts:
                raise ValueError(f"unexpected check basis {rec.basis!r}")
            samples, errors = basis_counts[rec.basis]
            basis_counts[rec.basis] = (
                samples + 1,
                errors + (1 if rec.alice_outcome == rec.bob_outcome else 0),
            )
        else:
            message_rounds += 1
            if rec.decoded is not None:
                decoded_rounds += 1
                if cfg.protocol == Protocol.MDI_TS:
                    ts_diff_counts[PAULI_PRODUCT[rec.decoded][rec.encoded]] += 1
                elif rec.decoded != rec.encoded:
                    dl04_bit_errors += 1
    return _stats_from_counts(
        cfg,
        rounds=len(records),
        basis_counts=basis_counts,
        message_rounds=message_rounds,
        decoded_rounds=decoded_rounds,
        ts_diff_counts=ts_diff_counts if cfg.protocol == Protocol.MDI_TS else None,
        dl04_bit_errors=dl04_bit_errors if cfg.protocol == Protocol.MDI_DL04 else None,
    )


# ---------------------------------------------------------------------------
# Analytic per-round outcome distributions, from both backends.
# ---------------------------------------------------------------------------


def pauli_frame_round_distributions(cfg: ProtocolConfig) -> dict[str, np.ndarray]:
    """Exact per-round outcome distributions from the label algebra.

    All conditionals are computed by enumeration over error labels, never
    by sampling, so they can be compared to the density-matrix backend at
    machine precision. Keys and shapes:

    * ``swap_outcome`` (4,): announced first Bell outcome.
    * ``pair_frame`` (4, 4): Bell weights of the corrected pair, per outcome.
    * ``check_joint`` (bases, 4, 2, 2): both check outcomes, per basis and
      announced outcome.
    * entanglement protocol: ``message_outcome`` (4, 4, 4, 4) indexed by
      announced outcome, symbol, cover, second Bell outcome, plus
      ``symbol_error`` (4,).
    * single-photon protocol: ``message_joint`` (4, 2, 2, 2) indexed by
      announced outcome, encoded bit, both single-photon outcomes, plus
      ``bit_error`` (1,).
    """
    leg_a, leg_b = _first_leg_dists(cfg)
    frame_dist = np.asarray(convolve(leg_a, leg_b).probabilities)
    second_dist = np.asarray(_second_leg_dist(cfg).probabilities)
    bases = check_bases(cfg)

    out: dict[str, np.ndarray] = {}
    out["swap_outcome"] = np.full(4, 0.25)
    pair_bell = np.zeros(4)
    for pauli in range(4):
        pair_bell[_BELL_OF_PAULI[pauli]] = frame_dist[pauli]
    out["pair_frame"] = np.tile(pair_bell, (4, 1))

    check_joint = np.zeros((len(bases), 4, 2, 2))
    for bi, basis in enumerate(bases):
        parallel = sum(
            frame_dist[f] for f in range(4) if ANTICOMMUTES[f][int(basis)]
        )
        for a in (0, 1):
            for b in (0, 1):
                prob = parallel if a == b else 1.0 - parallel
                check_joint[bi, :, a, b] = 0.5 * prob
    out["check_joint"] = check_joint

    if cfg.protocol == Protocol.MDI_TS:
        message_outcome = np.zeros((4, 4, 4, 4))
        for s in range(4):
            for c in range(4):
                for f in range(4):
                    pf = frame_dist[f]
                    if pf == 0.0:
                        continue
                    partial = PAULI_PRODUCT[c][PAULI_PRODUCT[s][f]]
                    for e2 in range(4):
                        pe = second_dist[e2]
                        if pe == 0.0:
                            continue
                        o2 = _BELL_OF_PAULI[PAULI_PRODUCT[e2][partial]]
                        message_outcome[:, s, c, o2] += pf * pe
        out["message_outcome"] = message_outcome
        net = np.zeros(4)
        for f in range(4):
            for e2 in range(4):
                net[PAULI_PRODUCT[e2][f]] += frame_dist[f] * second_dist[e2]
        out["symbol_error"] = net
    else:
        m = int(MESSAGE_BASIS[cfg.dl04_encoding])
        u1 = int(cfg.dl04_encoding)
        net = np.zeros(4)
        for f in range(4):
            for e2 in range(4):
                net[PAULI_PRODUCT[e2][f]] += frame_dist[f] * second_dist[e2]
        flip = sum(net[g] for g in range(4) if ANTICOMMUTES[g][m])
        message_joint = np.zeros((4, 2, 2, 2))
        for k in (0, 1):
            enc_flip = ANTICOMMUTES[u1][m] if k == 1 else 0
            parallel = (1.0 - flip) if enc_flip else flip
            for ra in (0, 1):
                for rb in (0, 1):
                    prob = parallel if ra == rb else 1.0 - parallel
                    message_joint[:, k, ra, rb] = 0.5 * prob
        out["message_joint"] = message_joint
        out["bit_error"] = np.array([flip])
    return out


def _bell_projector(label: int, qubits: tuple[int, int], num_qubits: int) -> np.ndarray:
    v = BELL_VECTORS[label]
    return embed_two_qubit_operator(np.outer(v, v.conj()), qubits, num_qubits)


def _basis_projector(basis: PauliLabel, bit: int) -> np.ndarray:
    v = basis_eigenvector(basis, bit)
    return np.outer(v, v.conj())


def density_matrix_round_distributions(cfg: ProtocolConfig) -> dict[str, np.ndarray]:
    """Per-round outcome distributions from the exact density-matrix oracle.

    Builds the full four-photon state (qubit order: Alice's kept photon,
    Alice's sent photon, Bob's kept photon, Bob's sent photon), applies the
    channels and any attack to the sent photons, projects on the announced
    Bell outcome, applies the swap correction, and reads every conditional
    out of the resulting matrices. Same keys and shapes as the Pauli-frame
    backend.
    """
    singlet = bell_state(BellLabel.PSI_MINUS)
    aligned = np.kron(singlet.amplitudes, singlet.amplitudes)
    rho = DensityMatrix(np.outer(aligned, aligned.conj()))
    rho = depolarize(rho, cfg.channel_p, 1)
    rho = depolarize(rho, cfg.channel_p, 3)
    if cfg.attack == AttackModel.INTERCEPT_RESEND:
        attacked_qubit = 1 if cfg.attack_leg == "alice" else 3
        rho = intercept_resend_channel(rho, attacked_qubit, cfg.attack_bases)

    bases = check_bases(cfg)
    swap_outcome = np.zeros(4)
    pair_frame = np.zeros((4, 4))
    check_joint = np.zeros((len(bases), 4, 2, 2))
    ts_message = np.zeros((4, 4, 4, 4))
    ts_symbol_error = np.zeros(4)
    dl04_joint = np.zeros((4, 2, 2, 2))
    dl04_bit_error = 0.0

    for o in range(4):
        proj = _bell_projector(o, (1, 3), 4)
        sub = proj @ rho.matrix @ proj
        p_o = float(np.real(np.trace(sub)))
        swap_outcome[o] = p_o
        cond = DensityMatrix(sub / p_o)
        pair = partial_trace(cond, keep=(0, 2))
        pair = apply_pauli(pair, swap_correction(BellLabel(o)), 1)
        pair_frame[o] = bell_measure(pair)

        for bi, basis in enumerate(bases):
            for a in (0, 1):
                pa = _basis_projector(basis, a)
                for b in (0, 1):
                    pb = _basis_projector(basis, b)
                    op = np.kron(pa, pb)
                    check_joint[bi, o, a, b] = float(
                        np.real(np.trace(op @ pair.matrix))
                    )

        if cfg.protocol == Protocol.MDI_TS:
            for s in range(4):
                for c in range(4):
                    encoded = apply_pauli(pair, PauliLabel(s), 0)
                    covered = apply_pauli(encoded, PauliLabel(c), 1)
                    if cfg.noise == NoisePlacement.BOTH_LEGS:
                        covered = depolarize(covered, cfg.channel_p, 0)
                        covered = depolarize(covered, cfg.channel_p, 1)
                    probs = bell_measure(covered)
                    ts_message[o, s, c] = probs
                    for o2 in range(4):
                        decoded = PAULI_PRODUCT[c][int(_PAULI_OF_BELL[o2])]
                        diff = PAULI_PRODUCT[decoded][s]
                        ts_symbol_error[diff] += 0.25 * (1.0 / 16.0) * probs[o2]
        else:
            m = MESSAGE_BASIS[cfg.dl04_encoding]
            for k in (0, 1):
                encoded = (
                    pair if k == 0 else apply_pauli(pair, cfg.dl04_encoding, 0)
                )
                if cfg.noise == NoisePlacement.BOTH_LEGS:
                    encoded = depolarize(encoded, cfg.channel_p, 0)
                for ra in (0, 1):
                    pa = _basis_projector(m, ra)
                    for rb in (0, 1):
                        pb = _basis_projector(m, rb)
                        op = np.kron(pa, pb)
                        prob = float(np.real(np.trace(op @ encoded.matrix)))
                        dl04_joint[o, k, ra, rb] = prob
                        decoded_bit = 1 if ra == rb else 0
                        if decoded_bit != k:
                            dl04_bit_error += 0.25 * 0.5 * prob

    out: dict[str, np.ndarray] = {
        "swap_outcome": swap_outcome,
        "pair_frame": pair_frame,
        "check_joint": check_joint,
    }
    if cfg.protocol == Protocol.MDI_TS:
        out["message_outcome"] = ts_message
        out["symbol_error"] = ts_symbol_error
    else:
        out["message_joint"] = dl04_joint
        out["bit_error"] = np.array([dl04_bit_error])
    return out
