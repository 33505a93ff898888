"""Closed-form Mahler measure of the family, by three equivalent routes.

Route 1 (pointwise): m(P_d) = (1/2pi) * sum over toric points of
eps(x,y) * V(x,y), the finite closed formula for regular exact polynomials.

Route 2 (vol-sum): grouping each point with its swap and using
V = vol(...)/(d+2) on U_{d+1} (factor 1/(d+1) on U_{d+2}) turns the same sum
into two sums over exponent pairs 0 < k < k':

    2pi m(P_d) = -2/(d+2) * sum_{0<k<k'<=d}   vol(2k pi/(d+1), 2(k'-k) pi/(d+1))
               +  2/(d+1) * sum_{0<k<k'<=d+1} vol(2k pi/(d+2), 2(k'-k) pi/(d+2)).

Route 3 (aggregated, O(d)): with grid angles a_j = 2 pi j / n the pair sum
sum_{0<k<k'<n} vol(a_k, a_{k'-k}) expands into Clausen values whose integer
multiplicities are counted directly: for fixed j, Cl2(a_j) appears as the
theta term when k = j (n-1-j pairs), as the alpha term when k'-k = j
(n-1-j pairs), and with a minus sign as the theta+alpha term when k' = j
(j-1 pairs).  Hence

    W(n) := sum_{0<k<k'<n} vol(a_k, a_{k'-k})
          = sum_{j=1}^{n-1} (2n - 3j - 1) * Cl2(2 pi j / n),

which needs only n-1 Clausen calls.  The regrouping is validated against the
naive double sum for every d <= 200 in the test suite before being trusted
at larger d.

Error bounds propagate linearly from the per-call Clausen budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polynomials import PdSpec
from .specfun import CL2_ERROR_BOUND, cl2_array
from .toric import enumerate_toric, epsilon
from .volume import vol_array, volume_v1

TWO_PI = 2.0 * math.pi

METHOD_POINTWISE = "closed_pointwise"
METHOD_VOLSUM = "closed_volsum"
METHOD_AGGREGATED = "closed_aggregated"
METHOD_ORACLE = "oracle"


@dataclass(frozen=True)
class MahlerEstimate:
    """A value of m(P_d) with the route that produced it and its error budget."""

    d: int
    value: float
    method: str
    error_bound: float


def grid_weight_sum(n: int) -> float:
    """W(n) = sum_{j=1}^{n-1} (2n - 3j - 1) Cl2(2 pi j / n), O(n) Clausen calls."""
    if n < 2:
        raise ValueError(f"grid order must be >= 2, got {n}")
    j = np.arange(1, n, dtype=float)
    weights = 2.0 * n - 3.0 * j - 1.0
    return float(weights @ cl2_array(TWO_PI * j / n))


def _pair_grid(n: int) -> tuple:
    # exponent pairs 0 < k < k' <= n-1 mapped to (theta, alpha) grid angles
    i, jj = np.triu_indices(n - 1, k=1)
    k = i + 1.0
    kp = jj + 1.0
    return TWO_PI * k / n, TWO_PI * (kp - k) / n


def m_closed_pointwise(spec: PdSpec) -> MahlerEstimate:
    """(1/2pi) sum of eps * V over all toric points (the direct formula)."""
    d = spec.d
    points = enumerate_toric(spec)
    if d == 1:
        total = sum(epsilon(pt) * volume_v1(pt.x) for pt in points)
    else:
        eps = np.array([epsilon(pt) for pt in points], dtype=float)
        tx = np.array([pt.x_angle for pt in points])
        ty = np.array([pt.y_angle for pt in points])
        m = d + 1.0
        first = (cl2_array(m * ty) - cl2_array(m * tx)
                 - cl2_array(m * (ty - tx))) / ((d + 1.0) * (d + 2.0))
        second = (cl2_array(tx) - cl2_array(ty)
                  - cl2_array(tx - ty)) / (d + 2.0)
        total = float(eps @ (first + second))
    bound = len(points) * CL2_ERROR_BOUND / TWO_PI
    return MahlerEstimate(d, total / TWO_PI, METHOD_POINTWISE, bound)


def m_closed_volsum(spec: PdSpec) -> MahlerEstimate:
    """The two explicit pair sums over vol at rational multiples of 2*pi."""
    d = spec.d
    c1 = -2.0 / (d + 2.0)
    c2 = 2.0 / (d + 1.0)
    n_pairs1 = (d - 1) * d // 2
    n_pairs2 = d * (d + 1) // 2
    total = 0.0
    if n_pairs1:
        theta, alpha = _pair_grid(d + 1)
        total += c1 * float(np.sum(vol_array(theta, alpha)))
    theta, alpha = _pair_grid(d + 2)
    total += c2 * float(np.sum(vol_array(theta, alpha)))
    bound = 3.0 * CL2_ERROR_BOUND * (abs(c1) * n_pairs1 + c2 * n_pairs2) / TWO_PI
    return MahlerEstimate(d, total / TWO_PI, METHOD_VOLSUM, bound)


def m_closed_aggregated(spec: PdSpec) -> MahlerEstimate:
    """Same value as the vol-sum route, via W(n) in O(d) Clausen calls."""
    d = spec.d
    c1 = -2.0 / (d + 2.0)
    c2 = 2.0 / (d + 1.0)
    total = c1 * grid_weight_sum(d + 1) + c2 * grid_weight_sum(d + 2)

    def weight_mass(n):
        j = np.arange(1, n, dtype=float)
        return float(np.sum(np.abs(2.0 * n - 3.0 * j - 1.0)))

    bound = CL2_ERROR_BOUND * (abs(c1) * weight_mass(d + 1)
                               + c2 * weight_mass(d + 2)) / TWO_PI
    return MahlerEstimate(d, total / TWO_PI, METHOD_AGGREGATED, bound)


def m_closed(spec: PdSpec, method: str = METHOD_AGGREGATED) -> MahlerEstimate:
    """Dispatch to one of the three closed routes by method name."""
    routes = {
        METHOD_POINTWISE: m_closed_pointwise,
        METHOD_VOLSUM: m_closed_volsum,
        METHOD_AGGREGATED: m_closed_aggregated,
    }
    if method not in routes:
        raise ValueError(f"unknown closed method {method!r}")
    return routes[method](spec)
