"""Oracle-equivalence and invariant checks behind the ``verify`` subcommand.

Each check returns a named result so failures can be reported individually;
the test suite runs the same functions. The expected product-state
decomposition table is written out literally so a corrupted implementation
cannot agree with itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import error_rates_from_deltas
from .infotheory import binary_entropy
from .protocol import (
    AttackModel,
    Protocol,
    ProtocolConfig,
    density_matrix_round_distributions,
    pauli_frame_round_distributions,
    swap_correction,
)
from .quantum import (
    BELL_VECTORS,
    BellDiagonal,
    BellLabel,
    DensityMatrix,
    PauliLabel,
    apply_pauli,
    bell_measure,
    bell_state,
    embed_two_qubit_operator,
    holevo_bound,
    partial_trace,
    product_decompose,
    purify_bell_diagonal,
    single_photon,
    tensor,
)

_R = 1.0 / math.sqrt(2.0)

# Bell-basis amplitudes (psi-, psi+, phi-, phi+) of same-basis photon pairs.
PRODUCT_DECOMPOSITION_TABLE: dict[tuple[str, str], tuple[float, float, float, float]] = {
    ("0", "0"): (0.0, 0.0, _R, _R),
    ("1", "1"): (0.0, 0.0, -_R, _R),
    ("0", "1"): (_R, _R, 0.0, 0.0),
    ("1", "0"): (-_R, _R, 0.0, 0.0),
    ("+", "+"): (0.0, _R, 0.0, _R),
    ("-", "-"): (0.0, -_R, 0.0, _R),
    ("+", "-"): (-_R, 0.0, _R, 0.0),
    ("-", "+"): (_R, 0.0, _R, 0.0),
}

FAULT_DECOMPOSITION_SIGN = "decomposition-sign"
KNOWN_FAULTS = (FAULT_DECOMPOSITION_SIGN,)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_bell_states(atol: float = 1e-12) -> CheckResult:
    """The four Bell states against their literal amplitude vectors."""
    expected = {
        BellLabel.PSI_MINUS: (0.0, _R, -_R, 0.0),
        BellLabel.PSI_PLUS: (0.0, _R, _R, 0.0),
        BellLabel.PHI_MINUS: (_R, 0.0, 0.0, -_R),
        BellLabel.PHI_PLUS: (_R, 0.0, 0.0, _R),
    }
    worst = 0.0
    for label, amps in expected.items():
        got = bell_state(label).amplitudes
        worst = max(worst, float(np.max(np.abs(got - np.array(amps)))))
    return CheckResult(
        "bell-states",
        worst < atol,
        f"max amplitude error {worst:.3e}",
    )


def check_product_decompositions(
    *, inject_sign_fault: bool = False, atol: float = 1e-12
) -> CheckResult:
    """Same-basis product pairs against the decomposition table.

    Also cross-checks that Bell-measurement probabilities of each product
    state equal the squared amplitude magnitudes. The optional sign fault
    corrupts one expected entry to demonstrate the check has teeth.
    """
    table = {k: list(v) for k, v in PRODUCT_DECOMPOSITION_TABLE.items()}
    if inject_sign_fault:
        table[("1", "0")][0] = -table[("1", "0")][0]
    worst = 0.0
    worst_pair = None
    for (a_name, b_name), expected in table.items():
        a, b = single_photon(a_name), single_photon(b_name)
        amps = product_decompose(a, b)
        err = float(np.max(np.abs(amps - np.array(expected))))
        probs = bell_measure(tensor(a, b).to_density_matrix())
        err = max(err, float(np.max(np.abs(probs - np.abs(amps) ** 2))))
        if err > worst:
            worst, worst_pair = err, (a_name, b_name)
    return CheckResult(
        "product-decompositions",
        worst < atol,
        f"max deviation {worst:.3e}" + (f" at |{worst_pair[0]} {worst_pair[1]}>" if worst_pair else ""),
    )


def check_swap_corrections(atol: float = 1e-12) -> CheckResult:
    """Entanglement swapping over noiseless channels, all four outcomes.

    Projects the exact four-photon state on each announced Bell outcome,
    applies the table's correction to Bob's retained photon, and requires
    unit fidelity with the singlet.
    """
    singlet = bell_state(BellLabel.PSI_MINUS)
    state = np.kron(singlet.amplitudes, singlet.amplitudes)
    rho = DensityMatrix(np.outer(state, state.conj()))
    worst = 1.0
    for outcome in BellLabel:
        v = BELL_VECTORS[int(outcome)]
        proj = embed_two_qubit_operator(np.outer(v, v.conj()), (1, 3), 4)
        sub = proj @ rho.matrix @ proj
        p_o = float(np.real(np.trace(sub)))
        pair = partial_trace(DensityMatrix(sub / p_o), keep=(0, 2))
        pair = apply_pauli(pair, swap_correction(outcome), 1)
        fidelity = float(bell_measure(pair)[int(BellLabel.PSI_MINUS)])
        worst = min(worst, fidelity)
    return CheckResult(
        "swap-corrections",
        worst >= 1.0 - atol,
        f"min post-correction singlet fidelity {worst:.15f}",
    )


def check_backend_equivalence(
    ps: tuple[float, ...] = (0.0, 0.1, 0.5, 1.0), atol: float = 1e-12
) -> CheckResult:
    """Pauli-frame and density-matrix per-round distributions, full grid."""
    worst = 0.0
    worst_case = ""
    for protocol in (Protocol.MDI_TS, Protocol.MDI_DL04):
        for p in ps:
            for attack in (AttackModel.NONE, AttackModel.INTERCEPT_RESEND):
                cfg = ProtocolConfig(
                    protocol=protocol, rounds=1, channel_p=p, seed=0, attack=attack
                )
                fast = pauli_frame_round_distributions(cfg)
                exact = density_matrix_round_distributions(cfg)
                for key in exact:
                    diff = float(np.max(np.abs(fast[key] - exact[key])))
                    if diff > worst:
                        worst = diff
                        worst_case = f"{protocol.value} p={p} attack={attack.value} {key}"
    return CheckResult(
        "backend-equivalence",
        worst < atol,
        f"max distribution deviation {worst:.3e}"
        + (f" ({worst_case})" if worst_case else ""),
    )


def delta_simplex_grid(points_per_axis: int = 5) -> list[tuple[float, float, float, float]]:
    """Lattice over the Bell-diagonal weight simplex.

    The three non-reference weights each range over ``points_per_axis``
    equispaced values in [0, 1]; combinations summing beyond 1 are dropped
    and the reference weight absorbs the remainder.
    """
    values = [i / (points_per_axis - 1) for i in range(points_per_axis)]
    grid = []
    for d2 in values:
        for d3 in values:
            for d4 in values:
                rest = d2 + d3 + d4
                if rest <= 1.0 + 1e-12:
                    grid.append((max(1.0 - rest, 0.0), d2, d3, d4))
    return grid


def encoding_ensemble(deltas: BellDiagonal) -> list[DensityMatrix]:
    """States available to an eavesdropper holding the purification.

    Purifies the Bell-diagonal pair, averages over Bob's four cover
    operations, then applies each of Alice's four encoding operations;
    the result is the uniform four-state ensemble whose Holevo quantity
    bounds the leaked information per symbol.
    """
    rho = purify_bell_diagonal(deltas).to_density_matrix()
    covered = np.zeros_like(rho.matrix)
    for op in PauliLabel:
        covered = covered + 0.25 * apply_pauli(rho, op, 1).matrix
    rho_c = DensityMatrix(covered)
    return [apply_pauli(rho_c, op, 0) for op in PauliLabel]


def check_holevo_bound(
    points_per_axis: int = 5, slack: float = 1e-9
) -> CheckResult:
    """Numeric Holevo quantity of the encoded ensemble against the
    binary-entropy bound h(eps_z) + h(eps_x), over the weight simplex."""
    worst = -math.inf
    worst_point = None
    priors = (0.25, 0.25, 0.25, 0.25)
    for deltas in delta_simplex_grid(points_per_axis):
        bd = BellDiagonal(deltas)
        rates = error_rates_from_deltas(bd)
        chi = holevo_bound(encoding_ensemble(bd), priors)
        bound = binary_entropy(rates.eps_z) + binary_entropy(rates.eps_x)
        excess = chi - bound
        if excess > worst:
            worst = excess
            worst_point = deltas
    return CheckResult(
        "holevo-bound",
        worst <= slack,
        f"max(chi - bound) = {worst:.3e} at deltas={worst_point}",
    )


def run_all_checks(inject_fault: str | None = None) -> list[CheckResult]:
    """Run every verification check, optionally with a named fault injected."""
    if inject_fault is not None and inject_fault not in KNOWN_FAULTS:
        raise ValueError(f"unknown fault {inject_fault!r}; known: {KNOWN_FAULTS}")
    return [
        check_bell_states(),
        check_product_decompositions(
            inject_sign_fault=inject_fault == FAULT_DECOMPOSITION_SIGN
        ),
        check_swap_corrections(),
        check_backend_equivalence(),
        check_holevo_bound(),
    ]
