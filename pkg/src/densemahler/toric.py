"""Torus zeros of the family, their signs, and the regularity check.

The zeros of P_d on the unit torus |x| = |y| = 1 are exactly the pairs of
distinct, nontrivial n-th roots of unity for n = d + 1 and n = d + 2:

    U_n = {(e^{2 pi i k / n}, e^{2 pi i k' / n}) : 0 < k, k' < n, k != k'}.

Each point carries a sign eps = -sign(Im gamma), where gamma is the
logarithmic Gauss map (x dP/dx) / (y dP/dy).  On U_{d+1} the map simplifies
to -x(1-y)/(y(1-x)) and on U_{d+2} to -(1-y)/(1-x); chasing the inscribed
angles shows the sign depends only on which side of the diagonal k = k' the
exponent pair lies:

    n = d + 1:  k < k' -> eps = -1,   k > k' -> eps = +1
    n = d + 2:  k < k' -> eps = +1,   k > k' -> eps = -1

Enumeration uses this closed description; a residual check |P_d| <= 1e-10 at
every produced point guards against implementation slips, and
check_regularity recomputes gamma numerically to confirm Im gamma never
vanishes and that the sign table above matches it pointwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .polynomials import PdSpec, gauss_map

TORIC_RESIDUAL_TOL = 1e-10
REGULARITY_MIN_IM = 1e-8


class RegularityError(ArithmeticError):
    """A toric point where the Gauss map degenerates or the sign table fails."""


@dataclass(frozen=True)
class ToricPoint:
    """A torus zero (e^{2 pi i k/n}, e^{2 pi i k'/n}) of P_d, n = modulus."""

    d: int
    k: int
    k_prime: int
    modulus: int

    def __post_init__(self):
        if self.modulus not in (self.d + 1, self.d + 2):
            raise ValueError(f"modulus must be d+1 or d+2, got {self.modulus}")
        if not (0 < self.k < self.modulus and 0 < self.k_prime < self.modulus):
            raise ValueError(f"exponents must lie strictly between 0 and {self.modulus}")
        if self.k == self.k_prime:
            raise ValueError("no symmetric pair (x, x) is a torus zero")

    @property
    def x_angle(self) -> float:
        return 2.0 * math.pi * self.k / self.modulus

    @property
    def y_angle(self) -> float:
        return 2.0 * math.pi * self.k_prime / self.modulus

    @property
    def x(self) -> complex:
        return cmath.exp(1j * self.x_angle)

    @property
    def y(self) -> complex:
        return cmath.exp(1j * self.y_angle)


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of the pointwise Gauss-map check over all toric points."""

    d: int
    point_count: int
    min_abs_im_gamma: float


def _guard_residuals(spec: PdSpec, points: list) -> np.ndarray:
    # |P_d| from the rational form with root-of-unity powers reduced by
    # integer modular arithmetic, so the d-fold power loses no accuracy:
    # P_d = [x (y^{d+1} - x^{d+1})/(y - x) - (y^{d+1} - 1)/(y - 1)] / (x - 1).
    # Plain Horner evaluation drifts past 1e-10 for d of a few hundred, which
    # would fail the guard on points that are exact zeros.
    d = spec.d
    k = np.array([p.k for p in points])
    kp = np.array([p.k_prime for p in points])
    n = np.array([p.modulus for p in points])
    x = np.exp(2j * math.pi * (k / n))
    y = np.exp(2j * math.pi * (kp / n))
    x_pow = np.exp(2j * math.pi * (((d + 1) * k) % n) / n)
    y_pow = np.exp(2j * math.pi * (((d + 1) * kp) % n) / n)
    val = (x * (y_pow - x_pow) / (y - x) - (y_pow - 1.0) / (y - 1.0)) / (x - 1.0)
    return np.abs(val)


def enumerate_toric(spec: PdSpec, verify_residuals: bool = True) -> list:
    """All toric points of P_d, ordered by (modulus, k, k_prime).

    The count is d(d-1) + (d+1)d.  With verify_residuals the closed
    enumeration is guarded by checking |P_d| <= 1e-10 at every point.
    """
    d = spec.d
    points = []
    for n in (d + 1, d + 2):
        for k in range(1, n):
            for kp in range(1, n):
                if k != kp:
                    points.append(ToricPoint(d, k, kp, n))
    if verify_residuals and points:
        residuals = _guard_residuals(spec, points)
        worst = int(np.argmax(residuals))
        if residuals[worst] > TORIC_RESIDUAL_TOL:
            raise AssertionError(
                f"enumerated point {points[worst]} has residual "
                f"{residuals[worst]:.3e} > {TORIC_RESIDUAL_TOL}")
    return points


def omega(pt: ToricPoint) -> tuple:
    """Exponent pair (k, k'); the point is above the diagonal iff k < k'."""
    return pt.k, pt.k_prime


def is_above_diagonal(pt: ToricPoint) -> bool:
    return pt.k < pt.k_prime


def epsilon(pt: ToricPoint) -> int:
    """Sign -sign(Im gamma) from the diagonal rule, +1 or -1."""
    if pt.modulus == pt.d + 1:
        return -1 if pt.k < pt.k_prime else 1
    return 1 if pt.k < pt.k_prime else -1


def check_regularity(spec: PdSpec,
                     min_abs_im: float = REGULARITY_MIN_IM) -> RegularityReport:
    """Confirm Im gamma != 0 and eps = -sign(Im gamma) at every toric point.

    Returns the minimum |Im gamma| observed (O(1) at small d; the threshold
    only guards against gross errors).  Raises RegularityError naming the
    first offending point.
    """
    points = enumerate_toric(spec)
    smallest = math.inf
    for pt in points:
        g = gauss_map(spec, pt.x, pt.y)
        if abs(g.imag) <= min_abs_im:
            raise RegularityError(
                f"|Im gamma| = {abs(g.imag):.3e} <= {min_abs_im} at {pt}")
        if epsilon(pt) != (-1 if g.imag > 0 else 1):
            raise RegularityError(
                f"sign table disagrees with computed gamma at {pt}")
        smallest = min(smallest, abs(g.imag))
    return RegularityReport(spec.d, len(points), smallest)
