"""Exact combinatorics and single-qubit linear algebra.

Conventions used everywhere in the package: a single-qubit density matrix is
stored as (m00, m11, m01) with m10 implied by Hermiticity, and Pauli
expectations follow rho = (I + x X + y Y + z Z) / 2, so m01 = (x - i y) / 2.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import OutOfRangeError

MAX_BINOMIAL_N = 60

# T-type magic state angle, cos(2 beta) = 1/sqrt(3); Bloch vector (1,1,1)/sqrt(3).
T_STATE_BETA = 0.5 * math.acos(1.0 / math.sqrt(3.0))
# H-type magic state sits at pi/8 in the x-z plane.
H_STATE_ANGLE = math.pi / 8.0


def _pascal_triangle(limit: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


_PASCAL = _pascal_triangle(MAX_BINOMIAL_N)


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) for 0 <= k <= n <= 60.

    Values come from an integer Pascal recurrence built once at import time,
    so the combinatorial weights used by the projection sums carry no
    floating-point error.
    """
    if k < 0 or n < 0 or k > n:
        raise OutOfRangeError(f"binomial requires 0 <= k <= n, got n={n}, k={k}")
    if n > MAX_BINOMIAL_N:
        raise OutOfRangeError(f"binomial is capped at n <= {MAX_BINOMIAL_N}, got n={n}")
    return _PASCAL[n][k]


def _require_finite(*values: complex) -> None:
    for z in values:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise OutOfRangeError("non-finite component")


@dataclass(frozen=True)
class PureQubit:
    """Normalised single-qubit pure state c0|0> + c1|1>."""

    c0: complex
    c1: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c0", complex(self.c0))
        object.__setattr__(self, "c1", complex(self.c1))
        _require_finite(self.c0, self.c1)
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise OutOfRangeError(f"state is not normalised: |c0|^2 + |c1|^2 = {norm!r}")

    def density(self) -> "DensityMatrix1Q":
        return DensityMatrix1Q(
            abs(self.c0) ** 2, abs(self.c1) ** 2, self.c0 * self.c1.conjugate()
        )


@dataclass(frozen=True)
class DensityMatrix1Q:
    """Single-qubit density matrix; m10 is the conjugate of m01.

    Populations down to -1e-12 are clamped to zero (rounding tolerance);
    anything more negative, a trace away from one, or a coherence violating
    positive semidefiniteness is rejected as a logic error upstream.
    """

    m00: float
    m11: float
    m01: complex

    def __post_init__(self) -> None:
        m00, m11, m01 = float(self.m00), float(self.m11), complex(self.m01)
        _require_finite(m00, m11, m01)
        if m00 < -1e-12 or m11 < -1e-12:
            raise OutOfRangeError(f"negative population: m00={m00!r}, m11={m11!r}")
        m00, m11 = max(m00, 0.0), max(m11, 0.0)
        if abs(m00 + m11 - 1.0) > 1e-12:
            raise OutOfRangeError(f"trace is {m00 + m11!r}, expected 1")
        if abs(m01) ** 2 > m00 * m11 + 1e-12:
            raise OutOfRangeError("coherence violates positive semidefiniteness")
        object.__setattr__(self, "m00", m00)
        object.__setattr__(self, "m11", m11)
        object.__setattr__(self, "m01", m01)


def t_state() -> PureQubit:
    """T-type magic state cos(beta)|0> + e^{i pi/4} sin(beta)|1>."""
    return PureQubit(
        math.cos(T_STATE_BETA),
        cmath.exp(1j * math.pi / 4.0) * math.sin(T_STATE_BETA),
    )


def h_state() -> PureQubit:
    """H-type magic state cos(pi/8)|0> + sin(pi/8)|1>."""
    return PureQubit(math.cos(H_STATE_ANGLE), math.sin(H_STATE_ANGLE))


def trace_distance(rho: DensityMatrix1Q, sigma: DensityMatrix1Q) -> float:
    """(1/2) * sum of |eigenvalues| of rho - sigma, via the closed 2x2 form."""
    d0 = rho.m00 - sigma.m00
    d1 = rho.m11 - sigma.m11
    q = rho.m01 - sigma.m01
    mean = 0.5 * (d0 + d1)
    radius = math.hypot(0.5 * (d0 - d1), abs(q))
    dist = 0.5 * (abs(mean + radius) + abs(mean - radius))
    return min(max(dist, 0.0), 1.0)


def pauli_expectations(rho: DensityMatrix1Q) -> tuple[float, float, float, float]:
    """Expectations (<I>, <X>, <Y>, <Z>) of a single-qubit density matrix."""
    return (
        rho.m00 + rho.m11,
        2.0 * rho.m01.real,
        -2.0 * rho.m01.imag,
        rho.m00 - rho.m11,
    )


def density_from_pauli(x: float, y: float, z: float) -> DensityMatrix1Q:
    """Inverse of pauli_expectations (the <I> component is fixed at 1)."""
    return DensityMatrix1Q(0.5 * (1.0 + z), 0.5 * (1.0 - z), complex(x, -y) / 2.0)


def m2_density(rho: DensityMatrix1Q) -> float:
    """Stabiliser 2-Renyi magic of a density matrix.

    Computes -log2((1/4) * sum_P Tr(P rho)^4) - log2(2) over the single-qubit
    Pauli group.  The same fourth-power formula is applied to mixed states as
    well, where it is no longer bounded by the pure-state maximum (the
    maximally mixed state evaluates to 1); callers that need a monotone on
    mixed inputs should be aware of this.
    """
    e_i, e_x, e_y, e_z = pauli_expectations(rho)
    fourth_power_sum = e_i**4 + e_x**4 + e_y**4 + e_z**4
    return -math.log2(0.25 * fourth_power_sum) - 1.0


def m2_pure(psi: PureQubit) -> float:
    """Stabiliser 2-Renyi magic of a pure state (0 exactly on stabiliser states)."""
    return m2_density(psi.density())
