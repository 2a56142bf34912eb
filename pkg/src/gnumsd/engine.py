"""Analytic output-state pipeline.

The protocol projects N = g*n*u copies of a noisy input qubit onto a gnu
codespace and decodes the surviving two-dimensional block.  Everything here
works with scalar sums over Hamming weights (never 2^N objects): the overlap
of a product input state with a Dicke state depends on the input string only
through its weight, which is what keeps the whole pipeline O(N^3).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .codes import GnuParams
from .errors import OutOfRangeError, ZeroSuccessProbabilityError
from .qmath import DensityMatrix1Q, PureQubit, binomial, trace_distance

# Below this total codespace weight the output state cannot be normalised.
MIN_SUCCESS_PROBABILITY = 1e-300

_HALF_PI = math.pi / 2.0
_TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap an angle into [-pi, pi)."""
    return (theta + math.pi) % _TWO_PI - math.pi


@dataclass(frozen=True)
class InputEnsemble:
    """Noisy input model: clean state at Bloch angles (v, theta), error weight eps.

    The clean state is cos(v)|0> + e^{i theta} sin(v)|1>; the error state is
    its orthogonal complement sin(v)|0> - e^{i theta} cos(v)|1>.  The channel
    emits the error state with probability eps.
    """

    v: float
    theta: float
    eps: float

    def __post_init__(self) -> None:
        v, theta, eps = float(self.v), float(self.theta), float(self.eps)
        if not (math.isfinite(v) and math.isfinite(theta) and math.isfinite(eps)):
            raise OutOfRangeError("ensemble parameters must be finite")
        if not -1e-12 <= v <= _HALF_PI + 1e-12:
            raise OutOfRangeError(f"v must lie in [0, pi/2], got {v!r}")
        if not 0.0 <= eps <= 1.0:
            raise OutOfRangeError(f"eps must lie in [0, 1], got {eps!r}")
        object.__setattr__(self, "v", min(max(v, 0.0), _HALF_PI))
        object.__setattr__(self, "theta", wrap_angle(theta))
        object.__setattr__(self, "eps", eps)

    def clean_state(self) -> PureQubit:
        return PureQubit(math.cos(self.v), cmath.exp(1j * self.theta) * math.sin(self.v))

    def error_state(self) -> PureQubit:
        return PureQubit(math.sin(self.v), -cmath.exp(1j * self.theta) * math.cos(self.v))


@dataclass(frozen=True)
class CodespaceProjection:
    """Unnormalised logical-basis block of the projected N-qubit state.

    w00 and w11 are the weights on logical 0 and 1 (Born probabilities, so
    nonnegative); w01 is the coherence between them.  The success probability
    of the post-selection is w00 + w11.  A projection with zero total weight
    is representable so the brute-force oracle can report it; operations that
    need to normalise raise ZeroSuccessProbabilityError instead.
    """

    w00: float
    w11: float
    w01: complex

    def __post_init__(self) -> None:
        w00, w11, w01 = float(self.w00), float(self.w11), complex(self.w01)
        if w00 < -1e-12 or w11 < -1e-12:
            raise OutOfRangeError(f"negative projection weight: {w00!r}, {w11!r}")
        w00, w11 = max(w00, 0.0), max(w11, 0.0)
        if w00 + w11 > 1.0 + 1e-12:
            raise OutOfRangeError(f"total projection weight {w00 + w11!r} exceeds 1")
        if abs(w01) ** 2 > w00 * w11 + 1e-12:
            raise OutOfRangeError("coherence weight violates positive semidefiniteness")
        object.__setattr__(self, "w00", w00)
        object.__setattr__(self, "w11", w11)
        object.__setattr__(self, "w01", w01)


def dicke_overlap_term(
    s: int, t: int, omega: int, v: float, theta: float, n_qubits: int
) -> complex:
    """Single term of the Dicke-overlap sum.

    Equals (-1)^t e^{i s theta} cos(v)^(N-k) sin(v)^k with k = s + omega - 2t.
    The split cos/sin power form stays finite at v = pi/2, where the
    equivalent cos(v)^N tan(v)^k expression would pit a zero against a pole.
    """
    if not (0 <= s <= n_qubits and 0 <= omega <= n_qubits):
        raise OutOfRangeError(f"need 0 <= s, omega <= {n_qubits}, got s={s}, omega={omega}")
    if not 0 <= t <= min(s, omega):
        raise OutOfRangeError(f"need 0 <= t <= min(s, omega), got t={t}")
    k = s + omega - 2 * t
    sign = -1.0 if t % 2 else 1.0
    return sign * cmath.exp(1j * s * theta) * math.cos(v) ** (n_qubits - k) * math.sin(v) ** k


def dicke_overlap(s: int, omega: int, v: float, theta: float, n_qubits: int) -> complex:
    """Overlap <D^N_s | phi_x> for any input string x of Hamming weight omega."""
    if not (0 <= s <= n_qubits and 0 <= omega <= n_qubits):
        raise OutOfRangeError(f"need 0 <= s, omega <= {n_qubits}, got s={s}, omega={omega}")
    total = 0j
    for t in range(max(0, s + omega - n_qubits), min(s, omega) + 1):
        total += (
            dicke_overlap_term(s, t, omega, v, theta, n_qubits)
            * binomial(omega, t)
            * binomial(n_qubits - omega, s - t)
        )
    return total / math.sqrt(binomial(n_qubits, s))


def logical_component_overlap(
    j: int, omega: int, code: GnuParams, v: float, theta: float
) -> complex:
    """Contribution of the j-th Dicke component of a logical state.

    This is sqrt(C(n, j)) times the overlap of the weight-g*j Dicke state
    with a weight-omega input product state; summing it over even (odd) j and
    scaling by sqrt(2^-(n-1)) gives <0_L|phi_x> (<1_L|phi_x>).
    """
    if not 0 <= j <= code.n:
        raise OutOfRangeError(f"j must lie in [0, {code.n}], got {j}")
    n_qubits = code.num_qubits
    if not 0 <= omega <= n_qubits:
        raise OutOfRangeError(f"omega must lie in [0, {n_qubits}], got {omega}")
    return math.sqrt(binomial(code.n, j)) * dicke_overlap(
        code.g * j, omega, v, theta, n_qubits
    )


def codespace_projection(code: GnuParams, ens: InputEnsemble) -> CodespaceProjection:
    """Project N noisy copies onto the codespace and read the logical block.

    Sums the binomially weighted per-weight overlaps; cost is O(n * N^2).
    Raises ZeroSuccessProbabilityError when the total codespace weight is too
    small to normalise downstream.
    """
    n_qubits = code.num_qubits
    prefactor = 2.0 ** (-(code.n - 1))
    w00 = 0.0
    w11 = 0.0
    w01 = 0j
    for omega in range(n_qubits + 1):
        weight = (
            binomial(n_qubits, omega)
            * ens.eps**omega
            * (1.0 - ens.eps) ** (n_qubits - omega)
        )
        if weight == 0.0:
            continue
        even = 0j
        odd = 0j
        for j in range(code.n + 1):
            beta = logical_component_overlap(j, omega, code, ens.v, ens.theta)
            if j % 2:
                odd += beta
            else:
                even += beta
        w00 += weight * (even.real**2 + even.imag**2)
        w11 += weight * (odd.real**2 + odd.imag**2)
        w01 += weight * even * odd.conjugate()
    w00 *= prefactor
    w11 *= prefactor
    w01 *= prefactor
    if w00 + w11 <= MIN_SUCCESS_PROBABILITY:
        raise ZeroSuccessProbabilityError(
            f"codespace weight {w00 + w11!r} at (v={ens.v}, theta={ens.theta}, "
            f"eps={ens.eps}) on (g={code.g}, n={code.n}, u={code.u})"
        )
    return CodespaceProjection(w00, w11, w01)


def success_probability(projection: CodespaceProjection) -> float:
    """Probability that the projective check accepts the state."""
    return projection.w00 + projection.w11


def final_state(projection: CodespaceProjection) -> DensityMatrix1Q:
    """Normalise the logical block into the decoded single-qubit output state."""
    total = projection.w00 + projection.w11
    if total <= 0.0:
        raise ZeroSuccessProbabilityError("cannot normalise a zero-weight projection")
    return DensityMatrix1Q(
        projection.w00 / total, projection.w11 / total, projection.w01 / total
    )


def distilled_state(code: GnuParams, ens: InputEnsemble) -> DensityMatrix1Q:
    """Convenience composition of codespace_projection and final_state."""
    return final_state(codespace_projection(code, ens))


def max_error(
    code: GnuParams, v: float, theta: float, eps: float, target: DensityMatrix1Q
) -> float:
    """Worst-case output error over the two channel settings {0, eps}.

    The maximum runs over exactly those two error weights: the noiseless
    output pins the protocol's intent, the noisy one its degradation.
    """
    settings = (0.0,) if eps == 0.0 else (0.0, eps)
    return max(
        trace_distance(distilled_state(code, InputEnsemble(v, theta, e)), target)
        for e in settings
    )
