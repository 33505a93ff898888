"""Jensen quadrature oracle, exactness along arcs, and the 2-D vol integral."""

import cmath
import math

import numpy as np
import pytest

from densemahler.mahler_closed import m_closed_volsum
from densemahler.mahler_oracle import (ContinuationError, CurveArc,
                                       QuadratureConfig, default_config,
                                       eta_path_integral,
                                       jensen_slice_measure, m_oracle,
                                       primitive_check,
                                       vol_integral_quadrature,
                                       vol_integral_reference)
from densemahler.polynomials import PdSpec, roots, y_slice
from densemahler.toric import enumerate_toric
from densemahler.volume import vol

TWO_PI = 2.0 * math.pi


def test_jensen_examples():
    assert abs(jensen_slice_measure(PdSpec(1), 0.0) - math.log(2.0)) <= 1e-12
    assert jensen_slice_measure(PdSpec(1), math.pi) == 0.0
    # x = -1 gives the slice y^2 + 1 with both roots on the circle
    assert abs(jensen_slice_measure(PdSpec(2), math.pi)) <= 1e-12


def test_jensen_nonnegative(rng):
    for d in (1, 3, 6):
        for t in rng.uniform(0.0, TWO_PI, 25):
            assert jensen_slice_measure(PdSpec(d), t) >= 0.0


def test_oracle_values():
    r1 = m_oracle(PdSpec(1))
    assert abs(r1.value - 0.3230659472194505) <= 1e-9
    r2 = m_oracle(PdSpec(2))
    assert abs(r2.value - 0.4215888344519122) <= 1e-9
    r5 = m_oracle(PdSpec(5))
    assert abs(r5.value - m_closed_volsum(PdSpec(5)).value) <= 1e-6


def test_oracle_agreement_sample():
    for d in (3, 7, 10):
        diff = abs(m_oracle(PdSpec(d)).value - m_closed_volsum(PdSpec(d)).value)
        assert diff <= 1e-6


def test_oracle_error_estimate_behaviour():
    # with few nodes the half-node comparison sees real truncation, which
    # must shrink as nodes double, and must dominate the actual change
    for d in (2, 5):
        spec = PdSpec(d)
        r8 = m_oracle(spec, default_config(spec, 8))
        r16 = m_oracle(spec, default_config(spec, 16))
        assert r16.error_estimate < r8.error_estimate
        assert abs(r16.value - r8.value) <= r8.error_estimate
        assert r8.error_estimate >= 0.0
        assert r8.max_panel_contribution_change <= r8.error_estimate


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(1, (0.0, TWO_PI))
    with pytest.raises(ValueError):
        QuadratureConfig(8, (0.0, 1.0))  # does not reach 2*pi
    with pytest.raises(ValueError):
        QuadratureConfig(8, (0.0, 2.0, 1.0, TWO_PI))
    cfg = default_config(PdSpec(3))
    assert cfg.panel_breaks[0] == 0.0
    assert abs(cfg.panel_breaks[-1] - TWO_PI) <= 1e-15
    # breaks at all multiples of 2 pi/4 and 2 pi/5: 8 panels
    assert len(cfg.panel_breaks) == 9
    with pytest.raises(ValueError):
        m_oracle(PdSpec(3), QuadratureConfig(8, (0.0, math.pi, TWO_PI)))


def test_singularity_placement_small_d():
    # slice roots touch the unit circle exactly at the toric x-angles
    for d in (2, 4, 6):
        spec = PdSpec(d)
        toric_angles = sorted({p.x_angle
                               for p in enumerate_toric(spec)})
        for a in toric_angles:
            rts = roots(y_slice(spec, cmath.exp(1j * a)))
            assert min(abs(abs(r) - 1.0) for r in rts) <= 1e-8
        for t in np.linspace(0.0, TWO_PI, 401):
            if min(abs(t - a) for a in toric_angles) > 0.05:
                rts = roots(y_slice(spec, cmath.exp(1j * t)))
                assert min(abs(abs(r) - 1.0) for r in rts) > 1e-3


def test_primitive_check_arcs():
    for d in (2, 3, 5):
        arc = CurveArc(radius=0.9, t_start=0.2, t_end=1.0)
        data = eta_path_integral(PdSpec(d), arc)
        dv = data["v_end"] - data["v_start"]
        assert primitive_check(PdSpec(d), arc) <= 1e-6 * (1.0 + abs(dv))


def test_primitive_check_closed_loop():
    loop = CurveArc(radius=0.9, t_start=0.0, t_end=TWO_PI)
    data = eta_path_integral(PdSpec(2), loop)
    # no discriminant point lies inside |x| < 0.9, so the branch closes
    assert abs(data["y_end"] - data["y_start"]) <= 1e-9
    assert abs(data["eta"]) <= 2e-6


def test_reversed_arc_negates_integral():
    fwd = eta_path_integral(PdSpec(3), CurveArc(0.9, 0.2, 1.0))
    rev = eta_path_integral(PdSpec(3), CurveArc(0.9, 1.0, 0.2))
    assert abs(fwd["eta"] + rev["eta"]) <= 2e-12


def test_branch_collision_detected():
    # radius 1 + 1e-7 passes within ~1e-4 of a branch point of the d = 2
    # curve (the discriminant roots sit on |x| = 1), so tracking must refuse
    ang = math.atan2(math.sqrt(8.0), -1.0)  # angle of the branch point
    arc = CurveArc(radius=1.0 + 1e-7, t_start=ang - 0.05, t_end=ang + 0.05,
                   steps=2000)
    with pytest.raises(ContinuationError):
        primitive_check(PdSpec(2), arc)


def test_arc_validation():
    with pytest.raises(ValueError):
        CurveArc(radius=1.0, t_start=0.0, t_end=1.0)
    with pytest.raises(ValueError):
        CurveArc(radius=0.5, t_start=0.0, t_end=1.0)
    with pytest.raises(ValueError):
        CurveArc(radius=0.9, t_start=1.0, t_end=1.0)


def test_vol_integral_quadrature():
    target = vol_integral_reference()
    q64 = vol_integral_quadrature(nodes=64)
    q16 = vol_integral_quadrature(nodes=16)
    assert abs(q64 - target) <= 1e-6
    assert abs(q16 - target) <= 1e-4
    assert abs(q64 - q16) > 1e-9  # the coarse rule is genuinely coarser
    # the integrand vanishes at the three triangle vertices
    for t, a in ((0.0, 0.0), (0.0, TWO_PI), (TWO_PI, 0.0)):
        assert abs(vol(t, a)) <= 1e-12
