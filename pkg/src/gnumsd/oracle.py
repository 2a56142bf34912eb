"""Brute-force validation paths: dense density matrices and a gate-level circuit.

Everything here deliberately ignores the analytic shortcuts.  States are full
2^N x 2^N matrices (N <= 12), projections are explicit inner products against
dense logical vectors, and the two-qubit protocol is run gate by gate.  The
analytic engine is validated against these paths, never the other way round.

Dense matrices follow the bit convention of `codes`: bit k of an index holds
qubit k, qubit 0 is the least significant bit.  numpy's kron puts its first
factor on the most significant bits, so tensor products are written
highest-qubit-first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .codes import MAX_DENSE_QUBITS, GnuParams, logical_vector
from .engine import CodespaceProjection, InputEnsemble
from .errors import DimensionMismatchError, OutOfRangeError, ZeroSuccessProbabilityError
from .qmath import DensityMatrix1Q


def validate_density(rho: np.ndarray, trace_atol: float = 1e-10) -> None:
    """Assert the invariants of a dense density matrix (test helper)."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=1e-12):
        raise OutOfRangeError("matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > trace_atol:
        raise OutOfRangeError(f"trace is {np.trace(rho)!r}, expected 1")
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues.min() < -1e-9:
        raise OutOfRangeError(f"negative eigenvalue {eigenvalues.min()!r}")


def build_rho_n(ens: InputEnsemble, n_qubits: int) -> np.ndarray:
    """Dense N-fold tensor power of the noisy single-qubit input state."""
    if not 1 <= n_qubits <= MAX_DENSE_QUBITS:
        raise OutOfRangeError(f"dense states need 1 <= N <= {MAX_DENSE_QUBITS}, got {n_qubits}")
    clean = np.array([ens.clean_state().c0, ens.clean_state().c1])
    error = np.array([ens.error_state().c0, ens.error_state().c1])
    rho1 = (1.0 - ens.eps) * np.outer(clean, clean.conj()) + ens.eps * np.outer(
        error, error.conj()
    )
    rho = rho1
    for _ in range(n_qubits - 1):
        rho = np.kron(rho, rho1)
    return rho


def product_state_vector(ens: InputEnsemble, bits: tuple[int, ...]) -> np.ndarray:
    """Dense |phi_x> for a specific error pattern x (bits[k] = qubit k)."""
    single = {
        0: np.array([ens.clean_state().c0, ens.clean_state().c1]),
        1: np.array([ens.error_state().c0, ens.error_state().c1]),
    }
    vec = np.array([1.0 + 0j])
    for bit in reversed(bits):  # highest qubit first under the kron convention
        vec = np.kron(vec, single[bit])
    return vec


def permute_qubits(rho: np.ndarray, perm: tuple[int, ...]) -> np.ndarray:
    """Relabel qubits of a dense matrix: qubit k of the input becomes perm[k]."""
    n_qubits = len(perm)
    if rho.shape != (2**n_qubits, 2**n_qubits):
        raise DimensionMismatchError(f"shape {rho.shape} does not match {n_qubits} qubits")
    if sorted(perm) != list(range(n_qubits)):
        raise OutOfRangeError(f"not a permutation: {perm!r}")
    # Tensor axis j corresponds to qubit n_qubits-1-j (row), then columns.
    tensor = rho.reshape((2,) * (2 * n_qubits))
    axis_of_qubit = {q: n_qubits - 1 - q for q in range(n_qubits)}
    axes = list(range(2 * n_qubits))
    for src, dst in enumerate(perm):
        axes[axis_of_qubit[dst]] = axis_of_qubit[src]
        axes[n_qubits + axis_of_qubit[dst]] = n_qubits + axis_of_qubit[src]
    return tensor.transpose(axes).reshape(rho.shape)


def project_and_decode(rho: np.ndarray, code: GnuParams) -> CodespaceProjection:
    """Read the logical-basis block of a dense state: the brute-force (w00, w11, w01).

    Identical to conjugating by the codespace projector and expressing the
    result in the logical basis, which is how the decoded output state is
    defined.
    """
    n_qubits = code.num_qubits
    if rho.shape != (2**n_qubits, 2**n_qubits):
        raise DimensionMismatchError(
            f"state has shape {rho.shape}, code needs {(2**n_qubits, 2**n_qubits)}"
        )
    zero_l = logical_vector(code, 0)
    one_l = logical_vector(code, 1)
    w00 = np.vdot(zero_l, rho @ zero_l).real
    w11 = np.vdot(one_l, rho @ one_l).real
    w01 = complex(np.vdot(zero_l, rho @ one_l))
    return CodespaceProjection(w00, w11, w01)


# --- gate-level simulation of the two-qubit protocol ---------------------

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def _ry(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]])


def _rz(angle: float) -> np.ndarray:
    phase = np.exp(0.5j * angle)
    return np.diag([phase.conjugate(), phase])


@dataclass(frozen=True)
class Gate:
    """One circuit element: kind in {"cnot", "ch", "1q"}."""

    kind: str
    qubits: tuple[int, ...]
    matrix: np.ndarray | None = field(default=None, compare=False)


def cnot(control: int, target: int) -> Gate:
    return Gate("cnot", (control, target))


def controlled_h(control: int, target: int) -> Gate:
    return Gate("ch", (control, target))


def single_qubit(qubit: int, matrix: np.ndarray) -> Gate:
    return Gate("1q", (qubit,), np.asarray(matrix, dtype=complex))


@dataclass(frozen=True)
class Measurement:
    """Computational-basis measurement, post-selected on `accept`."""

    qubit: int
    basis: str
    accept: int


@dataclass(frozen=True)
class GateList:
    """Ordered circuit with exactly one post-selecting measurement."""

    num_qubits: int
    before: tuple[Gate, ...]
    measurement: Measurement
    after: tuple[Gate, ...]

    def __post_init__(self) -> None:
        for gate in self.before + self.after:
            if any(q >= self.num_qubits or q < 0 for q in gate.qubits):
                raise OutOfRangeError(f"gate {gate.kind} addresses qubit outside range")
        if not 0 <= self.measurement.qubit < self.num_qubits:
            raise OutOfRangeError("measurement qubit outside range")
        if self.measurement.basis != "Z" or self.measurement.accept not in (0, 1):
            raise OutOfRangeError("only Z-basis post-selection is supported")


def distillation_circuit_u2() -> GateList:
    """The fixed two-qubit protocol circuit: data qubits 0, 1 and ancilla 2.

    First two gates decode the gnu code, the next re-encodes into the
    repetition code, two CNOTs copy the parity onto the ancilla for the
    post-selected syndrome check, and the final CNOT decodes the repetition
    code so qubit 0 carries the output.
    """
    return GateList(
        num_qubits=3,
        before=(cnot(0, 1), controlled_h(1, 0), cnot(1, 0), cnot(0, 2), cnot(1, 2)),
        measurement=Measurement(qubit=2, basis="Z", accept=0),
        after=(cnot(0, 1),),
    )


def gate_unitary(gate: Gate, n_qubits: int) -> np.ndarray:
    """Embed a gate into the full 2^n unitary under the LSB-qubit convention."""
    dim = 2**n_qubits
    full = np.zeros((dim, dim), dtype=complex)
    if gate.kind == "cnot":
        control, target = gate.qubits
        for col in range(dim):
            row = col ^ (1 << target) if (col >> control) & 1 else col
            full[row, col] = 1.0
        return full
    if gate.kind == "ch":
        control, target = gate.qubits
        for col in range(dim):
            if (col >> control) & 1:
                base = col & ~(1 << target)
                bit = (col >> target) & 1
                full[base, col] += _HADAMARD[0, bit]
                full[base | (1 << target), col] += _HADAMARD[1, bit]
            else:
                full[col, col] = 1.0
        return full
    if gate.kind == "1q":
        (qubit,) = gate.qubits
        matrix = gate.matrix
        for col in range(dim):
            base = col & ~(1 << qubit)
            bit = (col >> qubit) & 1
            full[base, col] += matrix[0, bit]
            full[base | (1 << qubit), col] += matrix[1, bit]
        return full
    raise OutOfRangeError(f"unknown gate kind {gate.kind!r}")


def expand_controlled_h(gates: tuple[Gate, ...]) -> tuple[Gate, ...]:
    """Rewrite each controlled-H as two CNOTs plus single-qubit gates.

    Uses the standard controlled-U decomposition U = e^{i a} A X B X C with
    A B C = I; for the Hadamard a = pi/2, A = Ry(pi/4), B = Ry(-pi/4)Rz(-pi/2),
    C = Rz(pi/2), plus S on the control for the phase.  The expansion
    reproduces the controlled-H matrix exactly, not just up to phase.
    """
    expanded: list[Gate] = []
    for gate in gates:
        if gate.kind != "ch":
            expanded.append(gate)
            continue
        control, target = gate.qubits
        expanded.extend(
            (
                single_qubit(target, _rz(math.pi / 2.0)),
                cnot(control, target),
                single_qubit(target, _ry(-math.pi / 4.0) @ _rz(-math.pi / 2.0)),
                cnot(control, target),
                single_qubit(target, _ry(math.pi / 4.0)),
                single_qubit(control, np.diag([1.0, 1j])),
            )
        )
    return tuple(expanded)


def count_cnots(circuit: GateList) -> int:
    """Number of CNOTs once every controlled-H is expanded."""
    gates = expand_controlled_h(circuit.before + circuit.after)
    return sum(1 for gate in gates if gate.kind == "cnot")


def _trace_out_to_single(rho: np.ndarray, keep: int, n_qubits: int) -> np.ndarray:
    # Move the kept qubit's row/column axes to the front, trace the rest pairwise.
    tensor = rho.reshape((2,) * (2 * n_qubits))
    axis = n_qubits - 1 - keep
    order = [axis] + [a for a in range(n_qubits) if a != axis]
    tensor = tensor.transpose(order + [n_qubits + a for a in order])
    rest = 2 ** (n_qubits - 1)
    tensor = tensor.reshape(2, rest, 2, rest)
    return np.einsum("arbr->ab", tensor)


def run_circuit(circuit: GateList, rho: np.ndarray, keep: int) -> tuple[np.ndarray, float]:
    """Run a post-selected circuit on a dense input state.

    Returns the reduced density matrix on `keep` (renormalised) and the
    acceptance probability of the measurement.
    """
    n_qubits = circuit.num_qubits
    if rho.shape != (2**n_qubits, 2**n_qubits):
        raise DimensionMismatchError(f"state shape {rho.shape} mismatches circuit")
    for gate in circuit.before:
        unitary = gate_unitary(gate, n_qubits)
        rho = unitary @ rho @ unitary.conj().T
    mask = 1 << circuit.measurement.qubit
    wanted = circuit.measurement.accept
    projector = np.diag(
        [1.0 if ((idx & mask) != 0) == bool(wanted) else 0.0 for idx in range(2**n_qubits)]
    )
    rho = projector @ rho @ projector
    acceptance = float(np.trace(rho).real)
    if acceptance <= 0.0:
        raise ZeroSuccessProbabilityError("post-selection never accepts this input")
    rho = rho / acceptance
    for gate in circuit.after:
        unitary = gate_unitary(gate, n_qubits)
        rho = unitary @ rho @ unitary.conj().T
    return _trace_out_to_single(rho, keep, n_qubits), acceptance


def simulate_circuit_u2(ens: InputEnsemble) -> tuple[DensityMatrix1Q, float]:
    """Gate-level run of the two-qubit protocol on two noisy copies.

    Returns the post-selected single-qubit output state and the acceptance
    probability; both must match the analytic (1, 1, 2) pipeline.
    """
    data = build_rho_n(ens, 2)
    ancilla = np.zeros((2, 2), dtype=complex)
    ancilla[0, 0] = 1.0
    rho = np.kron(ancilla, data)  # ancilla is qubit 2, the most significant
    reduced, acceptance = run_circuit(distillation_circuit_u2(), rho, keep=0)
    state = DensityMatrix1Q(reduced[0, 0].real, reduced[1, 1].real, complex(reduced[0, 1]))
    return state, acceptance
