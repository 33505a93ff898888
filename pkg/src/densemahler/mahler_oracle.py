"""Ground-truth Mahler measure from the definition, and exactness checks.

The torus integral defining m(P_d) is reduced by Jensen's formula: for fixed
x = e^{i theta} the inner average of log|P_d(x, e^{i phi})| over phi equals
sum_j log max(1, |y_j|) over the roots y_j of the monic y-slice.  That turns
a singular 2-D integrand into a continuous 1-D one which is piecewise
analytic: its only kinks sit where a slice root crosses the unit circle,
i.e. exactly at the x-angles of the torus zeros.  Placing quadrature panel
breaks at all angles 2 pi k/(d+1) and 2 pi k/(d+2) restores spectral
accuracy for Gauss-Legendre inside each panel.  The reported error estimate
is the summed per-panel difference against a half-node rule; it is an
empirical estimate, not a proven bound.

primitive_check integrates the curve one-form

    eta = log|y| d arg(x) - log|x| d arg(y)

along a tracked branch y(t) over the arc x(t) = r e^{it} and compares with
the increment of the volume function V, whose differential eta is.  V off
the unit torus needs the full Bloch-Wigner dilogarithm, supplied by specfun.
Branch tracking is nearest-root continuation with step halving when the
match margin degrades, and it refuses to cross near-collisions of roots.

vol_integral_quadrature evaluates the 2-D integral of vol over the triangle
T by nested Gauss-Legendre with panels geometrically graded toward the
edges, where vol has t*log(t) behavior; it must reproduce 6 pi zeta(3).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .polynomials import (PdSpec, RootFindingError, aberth_roots_batch,
                          slice_coeff_matrix, y_slice, roots)
from .specfun import bloch_wigner, zeta3
from .volume import vol_array

TWO_PI = 2.0 * math.pi

_BATCH_LIMIT = 1536  # cap on simultaneous Aberth rows, keeps temporaries small
BRANCH_COLLISION_TOL = 1e-3


class OracleError(ArithmeticError):
    """Root finding failed inside the quadrature oracle; names the angle."""


class ContinuationError(ArithmeticError):
    """Branch tracking could not continue safely along the arc."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel decomposition of [0, 2*pi] and per-panel Gauss node count."""

    nodes_per_panel: int = 64
    panel_breaks: tuple = ()

    def __post_init__(self):
        if self.nodes_per_panel < 2:
            raise ValueError("need at least 2 nodes per panel")
        br = self.panel_breaks
        if len(br) < 2 or br[0] != 0.0 or abs(br[-1] - TWO_PI) > 1e-12:
            raise ValueError("panel breaks must run from 0 to 2*pi")
        if any(b2 <= b1 for b1, b2 in zip(br, br[1:])):
            raise ValueError("panel breaks must be strictly increasing")


def default_config(spec: PdSpec, nodes_per_panel: int = 64) -> QuadratureConfig:
    """Breaks at every angle 2 pi k/(d+1) and 2 pi k/(d+2) (kink locations)."""
    d = spec.d
    angles = {0.0, TWO_PI}
    for n in (d + 1, d + 2):
        for k in range(1, n):
            angles.add(TWO_PI * k / n)
    return QuadratureConfig(nodes_per_panel, tuple(sorted(angles)))


def _require_breaks_cover(spec: PdSpec, cfg: QuadratureConfig) -> None:
    br = np.asarray(cfg.panel_breaks)
    d = spec.d
    for n in (d + 1, d + 2):
        for k in range(n + 1):
            a = TWO_PI * k / n
            if np.min(np.abs(br - a)) > 1e-12:
                raise ValueError(
                    f"panel breaks miss the kink angle 2*pi*{k}/{n}")


def jensen_slice_measure(spec: PdSpec, theta: float) -> float:
    """sum_j log max(1, |y_j|) over roots of the slice at x = e^{i theta}.

    The slice is monic, so Jensen's formula has no leading-coefficient term
    and the result is nonnegative.
    """
    rts = roots(y_slice(spec, cmath.exp(1j * theta)))
    return sum(max(0.0, math.log(abs(r))) for r in rts if r != 0)


def _jensen_values(spec: PdSpec, thetas: np.ndarray) -> np.ndarray:
    """Vectorized Jensen integrand over many angles (batched Aberth)."""
    coeffs = slice_coeff_matrix(spec, np.exp(1j * thetas))
    out = np.empty(thetas.size)
    warm = None
    for lo in range(0, thetas.size, _BATCH_LIMIT):
        hi = min(lo + _BATCH_LIMIT, thetas.size)
        block = coeffs[lo:hi]
        try:
            if warm is None:
                # one cold solve, then the whole block rides on it
                warm = aberth_roots_batch(block[:1])[0]
            rts = aberth_roots_batch(block, initial=warm)
        except RootFindingError as exc:
            raise OracleError(
                f"root finding failed in [{thetas[lo]:.6f}, "
                f"{thetas[hi - 1]:.6f}]") from exc
        warm = rts[-1]
        abs2 = rts.real ** 2 + rts.imag ** 2
        out[lo:hi] = 0.5 * np.sum(np.log(np.maximum(1.0, abs2)), axis=1)
    return out


@dataclass(frozen=True)
class OracleResult:
    """m(P_d) from quadrature with its empirical error estimate."""

    d: int
    value: float
    panels: int
    max_panel_contribution_change: float
    error_estimate: float


def m_oracle(spec: PdSpec, cfg: QuadratureConfig | None = None) -> OracleResult:
    """(1/2pi) integral of the Jensen integrand by per-panel Gauss-Legendre.

    The error estimate is the summed absolute difference of each panel
    against the half-node rule (reported, not proven).
    """
    if cfg is None:
        cfg = default_config(spec)
    _require_breaks_cover(spec, cfg)
    breaks = np.asarray(cfg.panel_breaks)
    lo, hi = breaks[:-1], breaks[1:]
    n_panels = lo.size

    def panel_contribs(n_nodes):
        x, w = np.polynomial.legendre.leggauss(n_nodes)
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        thetas = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        vals = _jensen_values(spec, thetas).reshape(n_panels, n_nodes)
        return half * (vals @ w)

    full = panel_contribs(cfg.nodes_per_panel)
    halfrule = panel_contribs(max(2, cfg.nodes_per_panel // 2))
    change = np.abs(full - halfrule) / TWO_PI
    return OracleResult(
        d=spec.d,
        value=float(np.sum(full)) / TWO_PI,
        panels=n_panels,
        max_panel_contribution_change=float(np.max(change)),
        error_estimate=float(np.sum(change)),
    )


@dataclass(frozen=True)
class CurveArc:
    """Arc x(t) = radius * e^{it}, t in [t_start, t_end], off the unit circle."""

    radius: float
    t_start: float
    t_end: float
    steps: int = 10_000
    branch_index: int = 0

    def __post_init__(self):
        if not (0.8 < self.radius < 1.25) or self.radius == 1.0:
            raise ValueError("radius must lie in (0.8, 1.25) and differ from 1")
        if self.t_end == self.t_start:
            raise ValueError("arc must have nonzero extent")
        if self.steps < 8:
            raise ValueError("need at least 8 steps")


def _volume_complex(d: int, x: complex, y: complex) -> float:
    """V(x, y) off the torus, through the full Bloch-Wigner dilogarithm."""
    if d == 1:
        return -bloch_wigner(-x)
    m = d + 1
    first = (bloch_wigner(y ** m) - bloch_wigner(x ** m)
             - bloch_wigner((y / x) ** m))
    second = bloch_wigner(x) - bloch_wigner(y) - bloch_wigner(x / y)
    return first / ((d + 1) * (d + 2)) + second / (d + 2)


def _match_branch(prev: complex, fibre: np.ndarray) -> complex:
    """Nearest-root continuation step with collision and margin guards."""
    dist = np.abs(fibre - prev)
    order = np.argsort(dist)
    best = fibre[order[0]]
    if order.size > 1:
        margin = dist[order[1]] - dist[order[0]]
        if margin < 1e-12:
            raise ContinuationError(
                f"ambiguous branch match (margin {margin:.3e})")
        others = np.abs(fibre[order[1:]] - best)
        if np.min(others) < BRANCH_COLLISION_TOL:
            raise ContinuationError(
                f"branch collision: nearest other root at distance "
                f"{np.min(others):.3e} < {BRANCH_COLLISION_TOL}")
    return complex(best)


def _track_branch(spec: PdSpec, arc: CurveArc) -> tuple:
    """Roots along the fine grid (endpoints plus midpoints) on one branch.

    Returns (t_grid, y_values) over 2*steps + 1 points.  When a nearest-root
    match becomes ambiguous the step is halved on the fly (scalar re-solves)
    up to a fixed depth.
    """
    m = 2 * arc.steps + 1
    t = np.linspace(arc.t_start, arc.t_end, m)
    coeffs = slice_coeff_matrix(spec, arc.radius * np.exp(1j * t))
    fibres = np.empty((m, spec.d), dtype=complex)
    warm = None
    for lo in range(0, m, _BATCH_LIMIT):
        hi = min(lo + _BATCH_LIMIT, m)
        if warm is None:
            warm = aberth_roots_batch(coeffs[:1])[0]
        fibres[lo:hi] = aberth_roots_batch(coeffs[lo:hi], initial=warm)
        warm = fibres[hi - 1]

    start_order = sorted(range(spec.d),
                         key=lambda i: (fibres[0][i].real, fibres[0][i].imag))
    y = np.empty(m, dtype=complex)
    y[0] = fibres[0][start_order[arc.branch_index]]
    for i in range(1, m):
        try:
            y[i] = _match_branch(y[i - 1], fibres[i])
        except ContinuationError as exc:
            if "ambiguous" not in str(exc):
                raise
            y[i] = _refine_step(spec, arc.radius, t[i - 1], y[i - 1], t[i])
    return t, y


def _refine_step(spec: PdSpec, radius: float, t_a: float, y_a: complex,
                 t_b: float, depth: int = 0) -> complex:
    # halve the step until nearest-root matching is unambiguous again
    if depth > 40:
        raise ContinuationError("branch matching failed after 40 halvings")
    t_mid = 0.5 * (t_a + t_b)
    fibre = np.array(roots(y_slice(spec, radius * cmath.exp(1j * t_mid))))
    try:
        y_mid = _match_branch(y_a, fibre)
    except ContinuationError as exc:
        if "ambiguous" not in str(exc):
            raise
        y_mid = _refine_step(spec, radius, t_a, y_a, t_mid, depth + 1)
    fibre_b = np.array(roots(y_slice(spec, radius * cmath.exp(1j * t_b))))
    try:
        return _match_branch(y_mid, fibre_b)
    except ContinuationError as exc:
        if "ambiguous" not in str(exc):
            raise
        return _refine_step(spec, radius, t_mid, y_mid, t_b, depth + 1)


def eta_path_integral(spec: PdSpec, arc: CurveArc) -> dict:
    """Integral of eta along the tracked branch, with endpoint data.

    The d arg(x) part is a composite midpoint rule in t (arg x(t) = t); the
    d arg(y) part telescopes exactly as the accumulated argument increments
    of the tracked branch, so its only error is in the branch samples.
    """
    t, y = _track_branch(spec, arc)
    h = (arc.t_end - arc.t_start) / arc.steps
    log_abs_mid = np.log(np.abs(y[1::2]))
    part_x = float(np.sum(log_abs_mid)) * h
    winding = float(np.sum(np.angle(y[1:] / y[:-1])))
    part_y = math.log(arc.radius) * winding
    x_start = arc.radius * cmath.exp(1j * arc.t_start)
    x_end = arc.radius * cmath.exp(1j * arc.t_end)
    return {
        "eta": part_x - part_y,
        "v_start": _volume_complex(spec.d, x_start, complex(y[0])),
        "v_end": _volume_complex(spec.d, x_end, complex(y[-1])),
        "y_start": complex(y[0]),
        "y_end": complex(y[-1]),
    }


def primitive_check(spec: PdSpec, arc: CurveArc) -> float:
    """|integral of eta along the arc minus (V(end) - V(start))|."""
    data = eta_path_integral(spec, arc)
    return abs(data["eta"] - (data["v_end"] - data["v_start"]))


def _graded_unit_rule(nodes: int, depth: int) -> tuple:
    # composite Gauss-Legendre on [0, 1] with panels geometrically refined
    # toward both endpoints, where the integrands behave like t*log(t)
    breaks = [0.0] + [2.0 ** -q for q in range(depth, 0, -1)]
    x, w = np.polynomial.legendre.leggauss(nodes)
    pts, wts = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        pts.append(0.5 * (a + b) + 0.5 * (b - a) * x)
        wts.append(0.5 * (b - a) * w)
    pts = np.concatenate(pts)
    wts = np.concatenate(wts)
    return (np.concatenate([pts, 1.0 - pts[::-1]]),
            np.concatenate([wts, wts[::-1]]))


def vol_integral_quadrature(nodes: int = 64, grading_depth: int = 8) -> float:
    """2-D integral of vol over the triangle; must match 6 pi zeta(3).

    Outer integral in alpha over [0, 2*pi], inner in theta over
    [0, 2*pi - alpha], both with the graded composite Gauss rule.
    """
    u, wu = _graded_unit_rule(nodes, grading_depth)
    alpha = TWO_PI * u
    w_alpha = TWO_PI * wu
    length = TWO_PI - alpha
    theta = length[:, None] * u[None, :]
    vals = vol_array(theta, alpha[:, None])
    inner = length * (vals @ wu)
    return float(w_alpha @ inner)


def vol_integral_reference() -> float:
    """The series value 6 pi zeta(3) the quadrature is checked against."""
    return 6.0 * math.pi * zeta3()
