"""Analytic failure-probability formulas, depth-1/2 exact curves, the concatenation
recursion, thresholds, and the dipole coupling estimate.

The depth-2 expressions are evaluated in cancellation-free arrangements (failure
terms built from products of small factors, never as 1 minus something close to
1), so small-angle series coefficients survive in double precision. Each stable
arrangement is an algebraic identity of the direct polynomial form; the tests
check the two against each other at moderate angles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, cos, pi, sin
from typing import NamedTuple

from .codes import LAFLAMME5, STEANE7
from .errors import NonPositiveDistance

# CODATA 2018, 6 significant digits; the estimate is order-of-magnitude anyway
MU0 = 1.25664e-6        # vacuum permeability, N/A^2
MU_N = 5.05078e-27      # nuclear magneton, J/T
HBAR = 1.05457e-34      # reduced Planck constant, J*s
TAU_GATE = 1e-5         # representative elementary gate time, s

# small-angle failure coefficients of the plain codes, P ~ coeff * dt^2
DEPTH1_COEFF = {STEANE7: 14, LAFLAMME5: 6}


class FFunctions(NamedTuple):
    """Squared no-error and summed single-Z-error block matrix elements."""

    f0: float
    f1: float


def f_functions(kind: str, delta_t: float) -> FFunctions:
    c, s = cos(delta_t), sin(delta_t)
    if kind == STEANE7:
        p = c * cos(2 * delta_t) * cos(3 * delta_t)
        # 1 - p = (sin^2 t + sin^2 2t + sin^2 3t) / 2, exact trig identity
        one_minus_p = (s * s + sin(2 * delta_t) ** 2 + sin(3 * delta_t) ** 2) / 2.0
        return FFunctions(p * p, one_minus_p * (1.0 + p))
    if kind == LAFLAMME5:
        c2 = cos(2 * delta_t)
        f0 = c ** 4 * c2 * c2
        f1 = s * s * (1.0 + c * c * c2 * c2)
        return FFunctions(f0, f1)
    raise ValueError(f"unknown code kind {kind!r}")


def _one_minus_f0(kind: str, delta_t: float) -> float:
    """1 - f0 without cancellation."""
    c, s = cos(delta_t), sin(delta_t)
    if kind == STEANE7:
        p = c * cos(2 * delta_t) * cos(3 * delta_t)
        one_minus_p = (s * s + sin(2 * delta_t) ** 2 + sin(3 * delta_t) ** 2) / 2.0
        return one_minus_p * (1.0 + p)
    if kind == LAFLAMME5:
        c2 = cos(2 * delta_t)
        # 1 - c^4 cos^2 2t = s^2 (1 + 2c^2) (1 + c^2 cos 2t)
        return s * s * (1.0 + 2.0 * c * c) * (1.0 + c * c * c2)
    raise ValueError(f"unknown code kind {kind!r}")


def p_exact(kind: str, depth: int, alpha_sq: float, delta_t: float) -> float:
    """Exact failure probability of the plain (depth 1) or once-concatenated
    (depth 2) code, for the encoded state with |alpha|^2 = alpha_sq."""
    if not 0.0 <= alpha_sq <= 1.0:
        raise ValueError("alpha_sq must lie in [0, 1]")
    if depth not in (1, 2):
        raise ValueError("exact closed forms exist for depth 1 and 2 only")
    dsq = (2.0 * alpha_sq - 1.0) ** 2
    f0, f1 = f_functions(kind, delta_t)

    if depth == 1:
        if kind == STEANE7:
            return f1 * (1.0 - dsq)
        return _one_minus_f0(kind, delta_t) - dsq * f1

    if kind == STEANE7:
        # (1 - dsq) * (1 - f0^7 - 7 f0^6 f1 - 28 f0^4 f1^3 - 7 f0^3 f1^4 - 21 f0^2 f1^5)
        # with f1 = 1 - f0; the bracket equals the positive polynomial below.
        bracket = f1 * f1 * (21 * f0 ** 5 + 7 * f0 ** 4 * f1 + 28 * f0 ** 3 * f1 * f1
                             + 7 * f0 * f1 ** 4 + f1 ** 5)
        return (1.0 - dsq) * bracket

    # 5-qubit code, depth 2. With u = 1 - f0 the state-independent part
    # 1 - (f0^5 + 5 f0^4 u + f1^4 + 4 f0 f1^3 (1 - f1)) equals
    # 10u^2 - 20u^3 + 15u^4 - 4u^5 - f1^4 - 4 f1^3 (1 - u)(1 - f1).
    u = _one_minus_f0(kind, delta_t)
    base = (10 * u * u - 20 * u ** 3 + 15 * u ** 4 - 4 * u ** 5
            - f1 ** 4 - 4 * f1 ** 3 * (1.0 - u) * (1.0 - f1))
    zpart = f0 * f1 * f1 * (4 * f1 + 6 * f0 - 8 * f0 * f1)
    return base - dsq * zpart


def p_perturbative_naive(n_c: int, delta_t: float, *, leading_order: bool = False) -> float:
    """All-errors-orthogonal estimate (n_c - 1) cos^(2(n_c-1)) * sin^2, or its
    small-angle limit (n_c - 1) * delta_t^2. Known to overcount; kept for
    comparison curves."""
    if n_c < 2:
        raise ValueError("n_c must be >= 2")
    if leading_order:
        return (n_c - 1) * delta_t * delta_t
    return (n_c - 1) * cos(delta_t) ** (2 * (n_c - 1)) * sin(delta_t) ** 2


def p_recursive(kind: str, n_levels: int, delta_t: float) -> float:
    """Small-angle recursion for the worst-case state at n_levels of encoding.

    Level 1 is the small-angle maximum coeff * delta_t^2; deeper levels follow
    P(n) = C^(2^(n-1) - 1) * P(1)^(2^(n-1)) with C = C(n_c, 2). Valid for small
    angles only; values above 1 are meaningful merely as "far above threshold".
    """
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    coeff = DEPTH1_COEFF[_canonical(kind)]
    p1 = coeff * delta_t * delta_t
    if n_levels == 1:
        return p1
    c = comb(_n_physical(kind), 2)
    return (c * p1) ** (2 ** (n_levels - 1)) / c


def _canonical(kind: str) -> str:
    kind = kind.lower()
    if kind not in (STEANE7, LAFLAMME5):
        raise ValueError(f"unknown code kind {kind!r}")
    return kind


def _n_physical(kind: str) -> int:
    return 7 if _canonical(kind) == STEANE7 else 5


@dataclass(frozen=True)
class ThresholdReport:
    kind: str
    pair_choices: int          # C(n_c, 2)
    depth1_coefficient: int    # small-angle coefficient of the plain code
    threshold: Fraction        # bound on (delta_t)^2

    @property
    def threshold_float(self) -> float:
        return float(self.threshold)


def threshold(kind: str) -> ThresholdReport:
    """(delta_t)^2 below which deeper encoding suppresses failure doubly
    exponentially: 1 / (C(n_c,2) * depth-1 coefficient)."""
    kind = _canonical(kind)
    c = comb(_n_physical(kind), 2)
    coeff = DEPTH1_COEFF[kind]
    return ThresholdReport(kind, c, coeff, Fraction(1, c * coeff))


def estimate_delta_dipole(distance: float) -> float:
    """Dipole-dipole coupling rate mu0 * mu_N^2 / (4 pi hbar d^3), in 1/s."""
    if distance <= 0:
        raise NonPositiveDistance(f"distance must be positive, got {distance}")
    return MU0 * MU_N ** 2 / (4.0 * pi * HBAR * distance ** 3)
