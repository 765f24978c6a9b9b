import cmath

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from dh_moduli.aut import (
    Aut0Element,
    GammaElement,
    HodgeAutElement,
    VPolynomial,
    aut0_distance,
    classify_symplectic,
    compatible_matrices,
    conjugate_by_duality,
    fixes_theta,
    h_map,
    iota_apply,
    kernel_polynomial,
    pullback_theta,
    scale_apply,
    tensor_apply,
)
from dh_moduli.dh import dh_distance, glue
from dh_moduli.errors import ChartMismatch, IncompatibleMatrix, NotInKernel, NotThetaScaling
from dh_moduli.hodge import Chart, LambdaConnectionPoint, fiber, gauge_shift
from dh_moduli.surface import PeriodMatrix

PI = np.pi


def pt(chart, lam, u, v):
    return LambdaConnectionPoint(chart, lam, u, v)


def close(p, q, tol=1e-12):
    return p.chart is q.chart and abs(p.lam - q.lam) < tol and np.allclose(p.u, q.u, atol=tol) and np.allclose(
        p.v, q.v, atol=tol
    )


# -- VPolynomial and the Hodge generators ------------------------------------


def test_vpolynomial_trims_and_evaluates():
    v = VPolynomial([[1, 2], [0, 1], [0, 0]])
    assert v.degree == 1
    assert np.allclose(v(2), [1, 4])
    assert VPolynomial.zero(3).degree == -1
    assert np.all(VPolynomial.zero(3)(1.5) == 0)


def test_iota_examples():
    p = pt("X", 2, [0.5j], [1])
    assert close(iota_apply(VPolynomial.zero(1), p), p)
    higgs = pt("X", 0, [0.5j], [1])
    assert close(iota_apply(VPolynomial([[0], [1]]), higgs), higgs)
    assert close(iota_apply(VPolynomial([[1]]), p), p.replace(v=p.v + 1))


def test_tensor_examples():
    p = pt("X", 1, [0.5j, 1], [1, -1j])
    t = (np.array([1, 2]), np.array([3j, 4]))
    assert close(tensor_apply((np.zeros(2), np.zeros(2)), p), p)
    assert close(tensor_apply(t, p.replace(lam=0)), p.replace(lam=0, u=p.u + t[0]))
    assert close(tensor_apply(t, p), p.replace(u=p.u + t[0], v=p.v + t[1]))


def test_scale_examples(rng):
    p = pt("X", 1, [0.5j], [1 - 1j])
    assert close(scale_apply(1, p), p)
    assert close(scale_apply(2, p), pt("X", 2, p.u, 2 * p.v))
    c = 0.7 - 1.3j
    for _ in range(100):
        q = pt("X", complex(*rng.uniform(-2, 2, 2)), [0], [0])
        assert fiber(scale_apply(c, q)) == pytest.approx(c * fiber(q))


def test_hodge_generators_need_x_chart():
    with pytest.raises(ChartMismatch):
        iota_apply(VPolynomial([[1]]), pt("Xbar", 1, [0], [0]))


def test_h_map_on_generators(genus2):
    _, c = h_map(genus2, HodgeAutElement.iota(VPolynomial([[1, 2], [3, 4]])))
    assert c == 1
    pic, c = h_map(genus2, HodgeAutElement.iota(VPolynomial([[1, 2], [3, 4]])))
    assert np.allclose(pic, 0)
    u0 = np.array([0.1 + 0.2j, -0.3j])
    pic, c = h_map(genus2, HodgeAutElement.tensor(u0, [1, 1]))
    assert c == 1 and genus2.torus_distance(pic, u0) < 1e-12
    pic, c = h_map(genus2, HodgeAutElement.scaling(3 - 1j, 2))
    assert np.allclose(pic, 0) and c == 3 - 1j


def test_hodge_compose_matches_action(genus2, rng):
    def rand_el():
        return HodgeAutElement(
            VPolynomial(rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))),
            rng.normal(size=2) + 0j,
            rng.normal(size=2) + 0j,
            complex(*rng.uniform(0.5, 2, 2)),
        )

    for _ in range(50):
        A, B = rand_el(), rand_el()
        p = pt("X", complex(*rng.uniform(-2, 2, 2)), rng.normal(size=2) + 0j, rng.normal(size=2) + 0j)
        assert dh_distance(genus2, A.compose(B).apply(p), A.apply(B.apply(p))) < 1e-9
        assert dh_distance(genus2, A.inverse().apply(A.apply(p)), p) < 1e-9


def test_kernel_element_is_iota(genus2):
    # iota after a lattice tensor (gamma'', gamma') is in the kernel of h
    n = [1, 0, -1, 2]
    lattice = HodgeAutElement.tensor(genus2.lattice_01_part(n), genus2.lattice_10_part(n))
    v = VPolynomial([[1, 0], [0.5j, 2], [0, -1]])
    T = HodgeAutElement.iota(v).compose(lattice)
    w = kernel_polynomial(genus2, T, max_degree=3)
    p = pt("X", 0.6 - 1.1j, [0.2, 0.1j], [1, -1])
    assert dh_distance(genus2, T.apply(p), iota_apply(w, p)) < 1e-9
    assert np.allclose(w(0.3j), v(0.3j))


def test_kernel_rejects_non_kernel(genus2):
    with pytest.raises(NotInKernel):
        kernel_polynomial(genus2, HodgeAutElement.scaling(2, 2))


# -- Aut(M_DH)_0 -----------------------------------------------------------


def test_aut0_law_exact_rationals():
    R = sp.Rational
    z = np.array([R(0)], dtype=object)
    a1, e1, a2, e2 = (np.array([x], dtype=object) for x in (R(1, 3), R(-2, 7), R(5, 11) + sp.I, R(3, 5)))
    A = Aut0Element(z, z, a1, e1, sp.Integer(2))
    B = Aut0Element(z, z, a2, e2, sp.Integer(3))
    C = A.compose(B)
    assert sp.simplify(C.alpha[0] - (a1[0] + 2 * a2[0])) == 0
    assert sp.simplify(C.etabar[0] - (e1[0] + e2[0] / 2)) == 0
    assert C.tau == 6
    Ai = A.inverse()
    assert Ai.tau == R(1, 2) and Ai.alpha[0] == -a1[0] / 2 and Ai.etabar[0] == -2 * e1[0]


def test_aut0_identity_is_neutral(genus2, rng):
    B = Aut0Element(*(rng.normal(size=(4, 2)) + 0j), 1.5 - 0.5j)
    Id = Aut0Element.identity(2)
    assert aut0_distance(genus2, Id.compose(B), B) == 0
    assert aut0_distance(genus2, B.compose(Id), B) == 0
    for chart in Chart:
        p = pt(chart, 0.3, [1, 2], [3, 4])
        assert close(Id.apply(p), p)


def test_aut0_float_law(genus2, rng):
    for _ in range(100):
        A = Aut0Element(*(rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))), complex(*rng.normal(size=2)))
        B = Aut0Element(*(rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))), complex(*rng.normal(size=2)))
        C = A.compose(B)
        assert np.allclose(C.alpha, A.alpha + A.tau * B.alpha, atol=1e-12)
        assert np.allclose(C.etabar, A.etabar + B.etabar / A.tau, atol=1e-12)
        assert np.allclose(C.nabla_u, A.nabla_u + B.nabla_u) and np.allclose(C.nabla_v, A.nabla_v + B.nabla_v)
        assert abs(C.tau - A.tau * B.tau) < 1e-12


def test_lattice_translation_adds_lambda_gamma_prime(genus2):
    n = np.array([0, 1, 0, 0])
    A = Aut0Element.lattice_translation(genus2, n)
    gamma1 = genus2.lattice_10_part(n)
    p = pt("X", 1.5j, [0.1, 0.2], [0.3, 0.4])
    q = A.apply(p)
    assert np.allclose(q.u, p.u) and np.allclose(q.v, p.v + p.lam * gamma1) and q.lam == p.lam
    # trivial over lambda = 0, a genuine automorphism elsewhere
    assert dh_distance(genus2, q, p) > 1
    for chart in Chart:
        higgs = pt(chart, 0, [0.1, 0.2], [0, 0])
        assert dh_distance(genus2, A.apply(higgs), higgs) < 1e-12


def test_aut0_scales_fibers(rng):
    A = Aut0Element(*(rng.normal(size=(4, 1)) + 0j), 2 - 1j)
    for _ in range(20):
        p = pt(rng.choice(["X", "Xbar"]), complex(*rng.uniform(-2, 2, 2)), [0], [0])
        assert fiber(A.apply(p)) == pytest.approx((2 - 1j) * fiber(p))
    assert fiber(A.apply(pt("Xbar", 0, [0], [0]))) == float("inf")


def test_aut0_charts_commute_with_glue(genus2, rng):
    A = Aut0Element(*(rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))), 0.8 + 0.9j)
    for _ in range(50):
        p = pt("X", complex(*rng.uniform(-2, 2, 2)), rng.normal(size=2) + 0j, rng.normal(size=2) + 0j)
        assert dh_distance(genus2, glue(A.apply(p)), A.apply(glue(p))) < 1e-9


def test_duality_conjugation(genus2, rng):
    A = Aut0Element(*(rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))), -0.4 + 2j)
    delta = GammaElement("duality")
    D = conjugate_by_duality(A)
    assert np.allclose(D.alpha, -A.alpha) and np.allclose(D.etabar, -A.etabar) and D.tau == A.tau
    for chart in Chart:
        p = pt(chart, 0.7 + 0.1j, rng.normal(size=2) + 0j, rng.normal(size=2) + 0j)
        lhs = delta.apply(genus2, A.apply(delta.apply(genus2, p)))
        assert dh_distance(genus2, lhs, D.apply(p)) < 1e-12


# -- component group ---------------------------------------------------------


def test_duality_examples(tau_i):
    d = GammaElement("duality")
    p = pt("X", 0, [0.3j], [2])
    assert close(d.apply(tau_i, d.apply(tau_i, p)), p)
    assert close(d.apply(tau_i, p), pt("X", 0, [-0.3j], [-2]))


def test_rotation_is_compatible_for_square_lattice(tau_i):
    # multiplication by i on the lattice Z + iZ
    G = GammaElement("lattice", [[0, 1], [-1, 0]])
    G.check_compatible(tau_i)
    p = pt("X", 1, [0.1], [0.2])
    q = G.apply(tau_i, p)
    assert q.chart is Chart.X and q.lam == 1


def test_shear_is_incompatible_for_square_lattice(tau_i):
    G = GammaElement("lattice", [[1, 1], [0, 1]])
    with pytest.raises(IncompatibleMatrix):
        G.apply(tau_i, pt("X", 1, [0], [0]))


def test_non_unimodular_matrix_rejected():
    with pytest.raises(IncompatibleMatrix):
        GammaElement("lattice", [[2, 0], [0, 1]])
    assert classify_symplectic([[2, 0], [0, 1]]) == 0


def test_lattice_swap_changes_chart(tau_i):
    G = GammaElement("lattice_swap", [[1, 0], [0, -1]])
    p = pt("X", 2, [0.1 + 0.2j], [0.3])
    q = G.apply(tau_i, p)
    assert q.chart is Chart.XBAR and q.lam == 2
    assert fiber(q) == pytest.approx(1 / fiber(p))


def test_lattice_action_respects_gauge(genus2, rng):
    G = GammaElement("lattice", np.array([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]]))
    for _ in range(20):
        p = pt("X", 0.5 + 1j, rng.normal(size=2) + 0j, rng.normal(size=2) + 0j)
        q = gauge_shift(genus2, p, rng.integers(-2, 3, 4))
        assert dh_distance(genus2, G.apply(genus2, p), G.apply(genus2, q)) < 1e-9


def test_pullback_theta_examples():
    assert pullback_theta(GammaElement("duality")) == 1
    assert pullback_theta(GammaElement("lattice", np.eye(4, dtype=int))) == 1
    # unimodular but mixes the sign on one handle only
    with pytest.raises(NotThetaScaling):
        pullback_theta(GammaElement("lattice", np.diag([1, 1, 1, -1])))


def test_fixes_theta(rng):
    assert fixes_theta(GammaElement("duality"))
    assert fixes_theta(Aut0Element(*(rng.normal(size=(4, 3)) + 0j), 5j))
    assert fixes_theta(HodgeAutElement.scaling(2, 3))
    assert not fixes_theta(GammaElement("lattice", np.diag([1, 1, 1, -1])))
    # orientation-reversing lattice map, no surface to check against
    assert not fixes_theta(GammaElement("lattice", [[1, 0], [0, -1]]))


def test_no_theta_reversing_compatible_matrix_for_square_lattice(tau_i):
    """Search small matrices: compatible lattice maps keep J, compatible swaps reverse it."""
    lattice = compatible_matrices(tau_i, swap=False)
    swaps = compatible_matrices(tau_i, swap=True)
    assert len(lattice) == 4 and len(swaps) == 4
    assert all(classify_symplectic(M) == 1 for M in lattice)
    assert all(classify_symplectic(M) == -1 for M in swaps)
    assert all(fixes_theta(GammaElement("lattice", M), tau_i) for M in lattice)
    assert all(fixes_theta(GammaElement("lattice_swap", M), tau_i) for M in swaps)


def _oracle_classify(M):
    n = len(M)
    g = n // 2
    J = sp.zeros(n)
    for i in range(g):
        J[i, g + i], J[g + i, i] = 1, -1
    pulled = sp.Matrix(M).T * J * sp.Matrix(M)
    return 1 if pulled == J else -1 if pulled == -J else 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(lambda g: st.lists(st.lists(st.integers(-2, 2), min_size=2 * g, max_size=2 * g),
                                                    min_size=2 * g, max_size=2 * g)))
def test_classification_matches_exact_oracle(M):
    assert classify_symplectic(np.array(M)) == _oracle_classify(M)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_symplectic_generators_classified(g):
    n = 2 * g
    I, Z = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
    J = np.block([[Z, I], [-I, Z]])
    assert classify_symplectic(J) == 1
    shear = np.block([[I, I], [Z, I]])
    assert classify_symplectic(shear) == 1
    flip = np.block([[I, Z], [Z, -I]])
    assert classify_symplectic(flip) == -1
    assert classify_symplectic(np.eye(n, dtype=int)) == 1


# -- properties --------------------------------------------------------------

surface = PeriodMatrix([[0.9j + 0.1, 0.2], [0.2, 1.3j]])
small = st.floats(-2, 2, allow_nan=False)
vec2 = st.tuples(small, small, small, small).map(lambda t: np.array([t[0] + 1j * t[1], t[2] + 1j * t[3]]))
unit = st.tuples(st.floats(0.5, 2), st.floats(0, 2 * PI)).map(lambda t: t[0] * cmath.exp(1j * t[1]))
elements = st.builds(Aut0Element, vec2, vec2, vec2, vec2, unit)
points = st.builds(LambdaConnectionPoint, st.sampled_from(list(Chart)), unit, vec2, vec2)


@settings(max_examples=150, deadline=None)
@given(elements, elements, elements)
def test_aut0_associative(A, B, C):
    lhs = A.compose(B, surface).compose(C, surface)
    rhs = A.compose(B.compose(C, surface), surface)
    assert aut0_distance(surface, lhs, rhs) < 1e-9


@settings(max_examples=150, deadline=None)
@given(elements)
def test_aut0_inverse(A):
    Id = Aut0Element.identity(2)
    assert aut0_distance(surface, A.compose(A.inverse(surface), surface), Id) < 1e-9
    assert aut0_distance(surface, A.inverse(surface).compose(A, surface), Id) < 1e-9


@settings(max_examples=200, deadline=None)
@given(elements, elements, points)
def test_aut0_action_is_compatible_with_law(A, B, p):
    assert dh_distance(surface, A.compose(B, surface).apply(p), A.apply(B.apply(p))) < 1e-9
