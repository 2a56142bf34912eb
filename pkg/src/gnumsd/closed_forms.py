"""Closed-form projection weights for the two-, three- and four-qubit codes.

These are the g = n = 1, u in {2, 3, 4} specialisations of the general
weight sums in `engine.codespace_projection`, written in terms of cos(2v),
cos(4v), cos(6v).  Sign conventions are pinned by two requirements: the
diagonal weights w00 and w11 are Born-rule probabilities and must be
nonnegative, and every expression must agree with the general formula (and
with the dense brute-force oracle) to machine precision.  SIGN_CONVENTIONS
records each place where the pinning was load-bearing.
"""
from __future__ import annotations

import cmath
import math

from .engine import CodespaceProjection, InputEnsemble

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Every sign that had to be pinned against the general formula / oracle.
SIGN_CONVENTIONS = (
    "u=2: w00 = +(1/4)(1 + (1-2e)cos2v)^2; the leading sign is positive "
    "(a squared Born amplitude cannot be negative).",
    "u=3: the squared factor in w01 is (1 + (1-2e)cos2v)^2, sharing its base "
    "with w00; the opposite inner sign fails the oracle cross-check.",
    "u=4: w00 = ((1 + (1-2e)cos2v)/2)^4 and w01 carries (1-2e)(1 + "
    "(1-2e)cos2v)^3; both equal the signed-base variants through even/odd "
    "powers and are written with positive bases.",
    "all u: the coherence w01 carries e^{-i theta}, matching the logical-"
    "basis matrix element <0_L|rho|1_L> of the general formula.",
)


def codespace_projection_u2(ens: InputEnsemble) -> CodespaceProjection:
    """Closed form of the (g=1, n=1, u=2) projection weights."""
    flip = 1.0 - 2.0 * ens.eps
    c2 = math.cos(2.0 * ens.v)
    w00 = 0.25 * (1.0 + flip * c2) ** 2
    w11 = 0.25 - 0.25 * flip**2 * math.cos(4.0 * ens.v)
    w01 = (
        (1.0 / (2.0 * SQRT2))
        * cmath.exp(-1j * ens.theta)
        * flip
        * (1.0 + flip * c2)
        * math.sin(2.0 * ens.v)
    )
    return CodespaceProjection(w00, w11, w01)


def codespace_projection_u3(ens: InputEnsemble) -> CodespaceProjection:
    """Closed form of the (g=1, n=1, u=3) projection weights."""
    eps = ens.eps
    flip = 1.0 - 2.0 * eps
    c2 = math.cos(2.0 * ens.v)
    w00 = 0.125 * (1.0 + flip * c2) ** 3
    w11 = (
        6.0
        - 8.0 * eps * (1.0 - eps)
        + (3.0 - 2.0 * eps) * (1.0 - 4.0 * eps**2) * c2
        - 6.0 * flip**2 * math.cos(4.0 * ens.v)
        + 3.0 * (2.0 * eps - 1.0) ** 3 * math.cos(6.0 * ens.v)
    ) / 32.0
    w01 = (
        (SQRT3 / 8.0)
        * cmath.exp(-1j * ens.theta)
        * flip
        * (1.0 + flip * c2) ** 2
        * math.sin(2.0 * ens.v)
    )
    return CodespaceProjection(w00, w11, w01)


def codespace_projection_u4(ens: InputEnsemble) -> CodespaceProjection:
    """Closed form of the (g=1, n=1, u=4) projection weights."""
    eps = ens.eps
    flip = 1.0 - 2.0 * eps
    c2 = math.cos(2.0 * ens.v)
    base = 1.0 + flip * c2
    w00 = (0.5 * base) ** 4
    w11 = -0.125 * base**2 * (
        -1.0 + 2.0 * eps * (1.0 - eps) + flip**2 * math.cos(4.0 * ens.v)
    )
    w01 = (
        0.125
        * cmath.exp(-1j * ens.theta)
        * flip
        * base**3
        * math.sin(2.0 * ens.v)
    )
    return CodespaceProjection(w00, w11, w01)


CLOSED_FORMS = {
    2: codespace_projection_u2,
    3: codespace_projection_u3,
    4: codespace_projection_u4,
}
