"""Volume function of the curve and the two-angle function on the triangle.

For d >= 2 the primitive of the curve one-form eta on the zero set of P_d is

    V(x, y) = [D(y^{d+1}) - D(x^{d+1}) - D((y/x)^{d+1})] / ((d+1)(d+2))
            + [D(x) - D(y) - D(x/y)] / (d+2),

with D the Bloch-Wigner dilogarithm; for d = 1 a primitive is -D(-x).  On
torus points the bracket structure collapses to the two-angle function

    vol(theta, alpha) = Cl2(theta) + Cl2(alpha) - Cl2(theta + alpha)

on the closed triangle T with vertices (0,0), (0,2pi), (2pi,0): vol vanishes
on the boundary of T, is positive inside, and is concave there.  Its
gradient is (log|1-e^{i(theta+alpha)}| - log|1-e^{i theta}|, same with
alpha); both logs are computed as log(2 sin(t/2)), which is exact for
t in [0, 2pi] and avoids cancellation near t = 0.  The Hessian entries are
half-cotangents of half-angles.

Note on the Hessian determinant: the closed-form entries give det = 1/4
identically (with A = cot(theta/2), B = cot(alpha/2), C = cot((theta+alpha)/2)
the cotangent addition law C(A+B) = AB - 1 yields
4 det = AB - C(A+B) = 1).  Negative definiteness, hence concavity, follows
from h11 < 0 and det > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .polynomials import PdSpec
from .specfun import cl2, cl2_array

import numpy as np

TWO_PI = 2.0 * math.pi

# slack for membership in the closed triangle (boundary points are legal)
TRIANGLE_TOL = 1e-9
TORUS_TOL = 1e-12


def in_triangle(theta: float, alpha: float, tol: float = TRIANGLE_TOL) -> bool:
    """Membership in the closed triangle T, with floating-point slack."""
    return (theta >= -tol and alpha >= -tol
            and theta + alpha <= TWO_PI + tol)


def _require_triangle(theta: float, alpha: float) -> None:
    if not in_triangle(theta, alpha):
        raise ValueError(
            f"({theta!r}, {alpha!r}) lies outside the closed triangle "
            "0 <= theta, 0 <= alpha, theta + alpha <= 2*pi")


def vol(theta: float, alpha: float) -> float:
    """Cl2(theta) + Cl2(alpha) - Cl2(theta + alpha) on the closed triangle."""
    _require_triangle(theta, alpha)
    return cl2(theta) + cl2(alpha) - cl2(theta + alpha)


def vol_array(theta: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """Vectorized vol; every point must lie in the closed triangle."""
    theta = np.asarray(theta, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    if not (np.all(theta >= -TRIANGLE_TOL) and np.all(alpha >= -TRIANGLE_TOL)
            and np.all(theta + alpha <= TWO_PI + TRIANGLE_TOL)):
        raise ValueError("points outside the closed triangle")
    return cl2_array(theta) + cl2_array(alpha) - cl2_array(theta + alpha)


def log_abs_one_minus_exp(t: float) -> float:
    """log|1 - e^{it}| = log(2 sin(t/2)) for t in (0, 2*pi)."""
    if not 0.0 < t < TWO_PI:
        raise ValueError(f"t must lie strictly inside (0, 2*pi), got {t!r}")
    return math.log(2.0 * math.sin(0.5 * t))


def _require_interior(theta: float, alpha: float) -> None:
    s = theta + alpha
    if not (0.0 < theta < TWO_PI and 0.0 < alpha < TWO_PI and 0.0 < s < TWO_PI):
        raise ValueError(
            f"({theta!r}, {alpha!r}) is not strictly interior to the "
            "triangle; the derivatives are logarithmically singular there")


def vol_gradient(theta: float, alpha: float) -> tuple:
    """(d vol/d theta, d vol/d alpha) at a strictly interior point."""
    _require_interior(theta, alpha)
    gs = log_abs_one_minus_exp(theta + alpha)
    return (gs - log_abs_one_minus_exp(theta),
            gs - log_abs_one_minus_exp(alpha))


@dataclass(frozen=True)
class Hessian2:
    """Symmetric 2x2 Hessian of vol at an interior point."""

    h11: float
    h12: float
    h21: float
    h22: float

    def determinant(self) -> float:
        return self.h11 * self.h22 - self.h12 * self.h21


def vol_hessian(theta: float, alpha: float) -> Hessian2:
    """Closed-form Hessian; h11 < 0 and det = 1/4 at interior points."""
    _require_interior(theta, alpha)
    c_sum = 0.5 / math.tan(0.5 * (theta + alpha))
    c_theta = 0.5 / math.tan(0.5 * theta)
    c_alpha = 0.5 / math.tan(0.5 * alpha)
    return Hessian2(c_sum - c_theta, c_sum, c_sum, c_sum - c_alpha)


def _require_on_torus(z: complex, name: str) -> None:
    if abs(abs(z) - 1.0) > TORUS_TOL:
        raise ValueError(f"{name} = {z!r} is off the unit circle")


def volume_v(spec: PdSpec, x: complex, y: complex) -> float:
    """The volume function V(x, y) on the unit torus, d >= 2.

    All six dilogarithm arguments have unit modulus, so each D reduces to a
    Clausen value at the corresponding multiple of the input angles.
    """
    if spec.d < 2:
        raise ValueError("volume_v requires d >= 2; use volume_v1 for d = 1")
    x = complex(x)
    y = complex(y)
    _require_on_torus(x, "x")
    _require_on_torus(y, "y")
    tx = cmath.phase(x)
    ty = cmath.phase(y)
    m = spec.d + 1
    first = cl2(m * ty) - cl2(m * tx) - cl2(m * (ty - tx))
    second = cl2(tx) - cl2(ty) - cl2(tx - ty)
    return first / ((spec.d + 1) * (spec.d + 2)) + second / (spec.d + 2)


def volume_v1(x: complex) -> float:
    """Volume function for d = 1: -D(-x) on the unit circle."""
    x = complex(x)
    _require_on_torus(x, "x")
    return -cl2(cmath.phase(-x))
