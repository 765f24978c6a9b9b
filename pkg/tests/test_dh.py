import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dh_moduli.dh import (
    Section,
    dh_distance,
    eval_section,
    fit_section,
    glue,
    normal_bundle_degree,
    section_on_x,
    section_on_xbar,
)
from dh_moduli.errors import OnZeroFiber, SameFiber
from dh_moduli.hodge import INFINITY, Chart, LambdaConnectionPoint, betti_distance, fiber, monodromy, normal_form
from dh_moduli.surface import PeriodMatrix

PI = np.pi


def pt(chart, lam, u, v):
    return LambdaConnectionPoint(chart, lam, u, v)


def test_glue_at_lambda_one_swaps_roles():
    u, v = np.array([0.3 + 1j]), np.array([-2 + 0.5j])
    q = glue(pt("X", 1, u, v))
    assert q.chart is Chart.XBAR and q.lam == 1
    assert np.allclose(q.u, v) and np.allclose(q.v, u)


def test_glue_trivial_point():
    q = glue(pt("X", 1, [0, 0], [0, 0]))
    assert q.chart is Chart.XBAR and np.all(q.u == 0) and np.all(q.v == 0)


def test_glue_refuses_zero_fiber():
    for chart in Chart:
        with pytest.raises(OnZeroFiber):
            glue(pt(chart, 0, [1], [1]))


def test_glue_against_riemann_hilbert(genus2, rng):
    """The closed form must agree with the monodromy of D/lambda on both sides."""
    for _ in range(100):
        lam = cmath.rect(rng.uniform(0.25, 4), rng.uniform(0, 2 * PI))
        p = pt(rng.choice(["X", "Xbar"]), lam, rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2),
               rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2))
        q = glue(p)
        assert fiber(q) == pytest.approx(fiber(p), rel=1e-12)
        assert betti_distance(monodromy(genus2, q), monodromy(genus2, p)) < 1e-9
        assert dh_distance(genus2, glue(q), p) < 1e-9


def test_dh_distance_across_charts(tau_i):
    p = pt("X", 2, [0.1], [0.4j])
    assert dh_distance(tau_i, p, glue(p)) < 1e-12
    assert dh_distance(tau_i, pt("X", 0, [0], [0]), pt("Xbar", 0, [0], [0])) == INFINITY


def test_zero_section_is_trivial():
    s = Section([0, 0], [0, 0], [0, 0], [0, 0])
    for z in (0, 0.5j, 3, INFINITY):
        p = eval_section(s, z)
        assert np.all(p.u == 0) and np.all(p.v == 0)


def test_section_at_zero_and_infinity():
    s = Section(alpha=[1 + 1j], beta=[2], omega=[3j], eta=[-4])
    p0 = eval_section(s, 0)
    assert p0.chart is Chart.X and p0.lam == 0
    assert np.allclose(p0.u, s.omega) and np.allclose(p0.v, s.beta)
    pinf = eval_section(s, "inf")
    assert pinf.chart is Chart.XBAR and pinf.lam == 0
    assert np.allclose(pinf.u, s.alpha) and np.allclose(pinf.v, s.eta)


def test_section_chart_switch():
    s = Section(alpha=[1], beta=[2], omega=[3], eta=[4])
    assert eval_section(s, 0.99).chart is Chart.X
    assert eval_section(s, 1.01j).chart is Chart.XBAR
    assert eval_section(s, 1).chart is Chart.X


def test_section_limit_matches_glue(tau_i):
    s = Section(alpha=[1 - 1j], beta=[0.5], omega=[2j], eta=[-1])
    for mu in (1e-2, 1e-4, 1e-6):
        q = glue(section_on_x(s, 1 / mu))
        assert dh_distance(tau_i, q, section_on_xbar(s, mu)) < 1e-9
    assert dh_distance(tau_i, section_on_xbar(s, 0), eval_section(s, INFINITY)) == 0


def test_fit_section_worked_example(genus2):
    u0, v0 = np.array([1, 2j]), np.array([0.5, -1])
    u1, v1 = np.array([-1j, 3]), np.array([2, 2 + 2j])
    s = fit_section(genus2, pt("X", 0, u0, v0), pt("X", 1, u1, v1))
    assert np.allclose(s.omega, u0) and np.allclose(s.eta, u1 - u0)
    assert np.allclose(s.beta, v0) and np.allclose(s.alpha, v1 - v0)


def test_fit_section_same_fiber(tau_i):
    with pytest.raises(SameFiber):
        fit_section(tau_i, pt("X", 2, [0], [0]), pt("X", 2, [1], [1]))
    with pytest.raises(SameFiber):
        fit_section(tau_i, pt("X", 2, [0], [0]), pt("Xbar", 0.5, [1], [1]))


def test_fit_section_through_zero_and_infinity(tau_i):
    p0 = pt("X", 0, [0.2], [1j])
    pinf = pt("Xbar", 0, [-1], [0.3])
    s = fit_section(tau_i, p0, pinf)
    assert dh_distance(tau_i, eval_section(s, 0), p0) < 1e-12
    assert dh_distance(tau_i, eval_section(s, INFINITY), pinf) < 1e-12


@pytest.mark.parametrize("g", range(1, 7))
def test_twistor_line_degree(g):
    assert normal_bundle_degree(1, 0, g) == 2 * g


def test_degree_arithmetic():
    assert normal_bundle_degree(1, 0, 2) == 4
    assert normal_bundle_degree(0, 1, 3) == 0
    assert normal_bundle_degree(2, 0, 2) == 10
    with pytest.raises(ValueError):
        normal_bundle_degree(1, 0, 0)


surface = PeriodMatrix([[1.1j + 0.2, -0.1], [-0.1, 0.8j]])
box = st.floats(-2, 2, allow_nan=False)
vec2 = st.tuples(box, box, box, box).map(lambda t: np.array([t[0] + 1j * t[1], t[2] + 1j * t[3]]))
sections = st.builds(Section, vec2, vec2, vec2, vec2)
cp1 = st.tuples(st.floats(0.25, 4), st.floats(0, 2 * PI)).map(lambda t: t[0] * cmath.exp(1j * t[1]))


@settings(max_examples=150, deadline=None)
@given(sections, cp1, cp1)
def test_fit_recovers_section(s, z1, z2):
    if abs(z1 - z2) < 1e-2:
        return
    p1, p2 = eval_section(s, z1), eval_section(s, z2)
    s2 = fit_section(surface, p1, p2)
    for z in (z1, z2, 0, INFINITY):
        assert dh_distance(surface, eval_section(s2, z), eval_section(s, z)) < 1e-9


@settings(max_examples=150, deadline=None)
@given(sections, cp1)
def test_section_charts_agree(s, z):
    assert dh_distance(surface, glue(section_on_x(s, z)), section_on_xbar(s, 1 / z)) < 1e-9


@settings(max_examples=100, deadline=None)
@given(vec2, vec2, vec2, vec2, cp1, cp1)
def test_any_two_points_lie_on_a_section(u1, v1, u2, v2, z1, z2):
    if abs(z1 - z2) < 1e-2:
        return
    p1 = normal_form(surface, LambdaConnectionPoint(Chart.X, z1, u1, v1))
    p2 = LambdaConnectionPoint(Chart.X, z2, u2, v2)
    s = fit_section(surface, p1, p2)
    assert dh_distance(surface, eval_section(s, z1), p1) < 1e-9
    assert dh_distance(surface, eval_section(s, z2), p2) < 1e-9
