"""Seeded randomized verification of the structural properties.

Every property is a function ``prop(ctx)`` yielding one error per trial.  A
trial fails when its error exceeds the tolerance (non-finite errors always
fail).  Each property draws from its own generator, seeded by the run seed and
the property name, so results do not depend on which properties run or in
what order.
"""

from __future__ import annotations

import itertools
import math
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import aut, dh, hodge
from .aut import Aut0Element, GammaElement, HodgeAutElement, VPolynomial
from .dh import Section
from .hodge import INFINITY, Chart, LambdaConnectionPoint
from .surface import PeriodMatrix, standard_symplectic, symplectic_pairing

BOX = 2.0
LAMBDA_RANGE = (0.25, 4.0)


@dataclass
class Context:
    surface: PeriodMatrix
    rng: np.random.Generator
    trials: int
    tol: float


@dataclass
class PropertyResult:
    name: str
    trials: int
    failures: int
    worst_error: float

    def to_json(self) -> dict:
        worst = self.worst_error
        return {
            "property": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "worst_error": worst if math.isfinite(worst) else str(worst),
        }


PROPERTIES: dict[str, Callable[[Context], Iterable[float]]] = {}


def prop(name: str):
    def register(fn):
        PROPERTIES[name] = fn
        return fn

    return register


# -- random data -------------------------------------------------------------


def rand_vec(rng, g: int, box: float = BOX) -> np.ndarray:
    re, im = rng.uniform(-box, box, (2, g))
    return re + 1j * im


def rand_complex(rng, box: float = BOX) -> complex:
    return complex(rng.uniform(-box, box), rng.uniform(-box, box))


def rand_lambda(rng) -> complex:
    lo, hi = LAMBDA_RANGE
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return r * complex(np.exp(1j * rng.uniform(0, 2 * math.pi)))


def rand_point(rng, g: int, chart=None, lam=None) -> LambdaConnectionPoint:
    if chart is None:
        chart = Chart.X if rng.random() < 0.5 else Chart.XBAR
    if lam is None:
        lam = rand_lambda(rng)
    return LambdaConnectionPoint(chart, lam, rand_vec(rng, g), rand_vec(rng, g))


def rand_lattice(rng, g: int, bound: int = 2) -> np.ndarray:
    return rng.integers(-bound, bound + 1, 2 * g)


def rand_section(rng, g: int) -> Section:
    return Section(*(rand_vec(rng, g) for _ in range(4)))


def rand_vpoly(rng, g: int, max_degree: int = 3) -> VPolynomial:
    deg = int(rng.integers(0, max_degree + 1))
    return VPolynomial([rand_vec(rng, g) for _ in range(deg + 1)], g)


def rand_hodge_element(rng, g: int) -> HodgeAutElement:
    return HodgeAutElement(rand_vpoly(rng, g), rand_vec(rng, g), rand_vec(rng, g), rand_lambda(rng))


def rand_aut0(rng, surface: PeriodMatrix) -> Aut0Element:
    g = surface.g
    return Aut0Element(rand_vec(rng, g), rand_vec(rng, g), rand_vec(rng, g), rand_vec(rng, g), rand_lambda(rng)).normalized(
        surface
    )


def rand_dh_point(rng, g: int) -> LambdaConnectionPoint:
    """Random point including, now and then, points over 0 and infinity."""
    r = rng.random()
    if r < 0.1:
        return rand_point(rng, g, Chart.X, 0.0)
    if r < 0.2:
        return rand_point(rng, g, Chart.XBAR, 0.0)
    return rand_point(rng, g)


def _vmax(*arrays) -> float:
    return float(max((np.max(np.abs(a), initial=0.0) for a in arrays), default=0.0))


# -- gamma catalogue ---------------------------------------------------------

_BLOCKS = [
    ((1, 0), (0, 1)),
    ((0, -1), (1, 0)),
    ((1, 0), (0, -1)),
    ((0, 1), (1, 0)),
]


def gamma_catalogue(surface: PeriodMatrix) -> list[GammaElement]:
    """Duality plus every compatible signed handle permutation with 2x2 blocks.

    Blocks act on (a_k, b_k) and are drawn from identity, rotation,
    reflection and exchange, each with either sign.  This covers the
    automorphisms visible for diagonal period matrices.
    """
    g = surface.g
    found = [GammaElement("duality")]
    blocks = [np.array(b) * s for b in _BLOCKS for s in (1, -1)]
    seen = set()
    for perm in itertools.permutations(range(g)):
        for choice in itertools.product(range(len(blocks)), repeat=g):
            M = np.zeros((2 * g, 2 * g), dtype=np.int64)
            for k in range(g):
                B, j = blocks[choice[k]], perm[k]
                M[j, k], M[j, g + k] = B[0]
                M[g + j, k], M[g + j, g + k] = B[1]
            for swap in (False, True):
                if surface.compatibility(M, swap=swap) <= aut.COMPATIBILITY_TOL:
                    key = (swap, M.tobytes())
                    if key not in seen:
                        seen.add(key)
                        found.append(GammaElement("lattice_swap" if swap else "lattice", M))
    return found


# -- surface -----------------------------------------------------------------


@prop("surface.hodge_roundtrip")
def _hodge_roundtrip(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        periods = rand_vec(ctx.rng, 2 * s.g)
        conj = bool(ctx.rng.random() < 0.5)
        hol, anti = s.hodge_decompose(periods, conj)
        yield _vmax(s.periods(hol, anti, conj) - periods)


@prop("surface.lattice_conjugate_identity")
def _lattice_conjugate(ctx: Context):
    s = ctx.surface
    if s.g <= 3:
        vectors = itertools.product(range(-2, 3), repeat=2 * s.g)
    else:
        vectors = (rand_lattice(ctx.rng, s.g) for _ in range(ctx.trials))
    for n in vectors:
        n = np.array(n)
        d = s.lattice_01_part(n)
        c = -np.conj(d)
        periods = s.periods(c, d)
        member = s.is_lattice_form(periods, ctx.tol)
        yield (_vmax(periods - 2j * np.pi * n, s.lattice_10_part(n) - c) if member else INFINITY)


@prop("surface.reduce_idempotent")
def _reduce_idempotent(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        d = rand_vec(ctx.rng, s.g, box=10.0)
        conj = bool(ctx.rng.random() < 0.5)
        d1, n1 = s.reduce_mod_lattice(d, conj)
        d2, n2 = s.reduce_mod_lattice(d1, conj)
        x = s.lattice_coordinates(d1, conj)
        in_box = bool(np.all(x >= -0.5 - 1e-12) and np.all(x < 0.5 + 1e-12))
        ok = in_box and not np.any(n2)
        yield _vmax(d2 - d1, d1 + s.lattice_01_part(n1, conj) - d) if ok else INFINITY


@prop("surface.reduce_equivariant")
def _reduce_equivariant(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        d = rand_vec(ctx.rng, s.g)
        n = rand_lattice(ctx.rng, s.g, 3)
        conj = bool(ctx.rng.random() < 0.5)
        d1, n1 = s.reduce_mod_lattice(d, conj)
        d2, n2 = s.reduce_mod_lattice(d + s.lattice_01_part(n, conj), conj)
        yield _vmax(d2 - d1) if np.array_equal(n2, n1 + n) else INFINITY


@prop("surface.symplectic_pairing")
def _pairing(ctx: Context):
    g = ctx.surface.g
    J = standard_symplectic(g)
    gram = [[symplectic_pairing(e, f) for f in np.eye(2 * g, dtype=int)] for e in np.eye(2 * g, dtype=int)]
    gram_ok = np.array_equal(np.array(gram), J) and round(np.linalg.det(np.array(gram, dtype=float))) == 1
    for _ in range(ctx.trials):
        m, n, k = (ctx.rng.integers(-5, 6, 2 * g) for _ in range(3))
        a, b = (int(x) for x in ctx.rng.integers(-5, 6, 2))
        ok = (
            gram_ok
            and symplectic_pairing(a * m + b * k, n) == a * symplectic_pairing(m, n) + b * symplectic_pairing(k, n)
            and symplectic_pairing(m, n) == -symplectic_pairing(n, m)
            and symplectic_pairing(m, m) == 0
        )
        yield 0.0 if ok else INFINITY


# -- hodge -------------------------------------------------------------------


@prop("hodge.monodromy_gauge_invariance")
def _mono_gauge(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        q = hodge.gauge_shift(s, p, rand_lattice(ctx.rng, s.g))
        rho = hodge.monodromy(s, p)
        yield max(
            hodge.betti_distance(rho, hodge.monodromy(s, q)),
            hodge.betti_distance(rho, hodge.monodromy(s, hodge.normal_form(s, p))),
        )


@prop("hodge.riemann_hilbert_roundtrip")
def _rh_roundtrip(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        nf = hodge.normal_form(s, p)
        back = hodge.from_betti(s, hodge.monodromy(s, p), p.chart, p.lam)
        yield _vmax(back.u - nf.u, back.v - nf.v, back.lam - nf.lam) if back.chart is nf.chart else INFINITY


@prop("hodge.monodromy_homomorphism")
def _mono_hom(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p1 = rand_point(ctx.rng, s.g)
        p2 = rand_point(ctx.rng, s.g, p1.chart, p1.lam)
        prod = p1.replace(u=p1.u + p2.u, v=p1.v + p2.v)
        yield hodge.betti_distance(hodge.monodromy(s, prod), hodge.monodromy(s, p1) * hodge.monodromy(s, p2))


@prop("hodge.rescaling_invariance")
def _rescale(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        c = rand_lambda(ctx.rng)
        q = p.replace(lam=c * p.lam, v=c * p.v)
        yield hodge.betti_distance(hodge.monodromy(s, p), hodge.monodromy(s, q))


@prop("hodge.higgs_fiber_split")
def _higgs_split(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g, lam=0.0)
        nf = hodge.normal_form(s, p)
        u_red, _ = s.reduce_mod_lattice(p.u, p.chart.conjugated)
        yield _vmax(nf.v - p.v, nf.u - u_red)


# -- dh ----------------------------------------------------------------------


@prop("dh.glue_involution")
def _glue_inv(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        yield hodge.gauge_distance(s, hodge.normal_form(s, p), hodge.normal_form(s, dh.glue(dh.glue(p))))


@prop("dh.glue_preserves_monodromy")
def _glue_mono(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        yield hodge.betti_distance(hodge.monodromy(s, p), hodge.monodromy(s, dh.glue(p)))


@prop("dh.glue_fiber_compatibility")
def _glue_fiber(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p = rand_point(ctx.rng, s.g)
        q = dh.glue(p)
        # chart coordinates invert while the point of CP^1 stays put
        yield max(abs(q.lam - 1 / p.lam), abs(hodge.fiber(q) - hodge.fiber(p)))


@prop("dh.section_chart_agreement")
def _section_charts(ctx: Context):
    s = ctx.surface
    for _ in range(min(ctx.trials, 100)):
        sec = rand_section(ctx.rng, s.g)
        for _ in range(20):
            r = ctx.rng.uniform(0.5, 2.0)
            lam = r * np.exp(1j * ctx.rng.uniform(0, 2 * np.pi))
            glued = dh.glue(dh.section_on_x(sec, lam))
            yield hodge.gauge_distance(s, glued, dh.section_on_xbar(sec, 1 / lam))


@prop("dh.section_fit_roundtrip")
def _section_fit(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        sec = rand_section(ctx.rng, s.g)
        z1, z2 = rand_lambda(ctx.rng), rand_lambda(ctx.rng)
        p1, p2 = dh.eval_section(sec, z1), dh.eval_section(sec, z2)
        fitted = dh.fit_section(s, p1, p2)
        recovered = _vmax(
            fitted.alpha - sec.alpha, fitted.beta - sec.beta, fitted.omega - sec.omega, fitted.eta - sec.eta
        )
        # normal-form representatives give a lattice-translate section through the same points
        f2 = dh.fit_section(s, hodge.normal_form(s, p1), hodge.normal_form(s, p2))
        yield max(
            recovered,
            dh.dh_distance(s, p1, dh.eval_section(f2, z1)),
            dh.dh_distance(s, p2, dh.eval_section(f2, z2)),
        )


@prop("dh.section_through_two_points")
def _section_two_points(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        p1 = rand_dh_point(ctx.rng, s.g)
        p2 = rand_dh_point(ctx.rng, s.g)
        if hodge.fiber(p1) == hodge.fiber(p2):
            p2 = rand_point(ctx.rng, s.g)
        sec = dh.fit_section(s, p1, p2)
        yield max(
            dh.dh_distance(s, p1, dh.eval_section(sec, hodge.fiber(p1))),
            dh.dh_distance(s, p2, dh.eval_section(sec, hodge.fiber(p2))),
        )


@prop("dh.section_limit_at_infinity")
def _section_limit(ctx: Context):
    s = ctx.surface
    big = 1e12
    for _ in range(ctx.trials):
        sec = rand_section(ctx.rng, s.g)
        at_inf = dh.eval_section(sec, INFINITY)
        near = dh.eval_section(sec, big * np.exp(1j * ctx.rng.uniform(0, 2 * np.pi)))
        # first order pole of the (0,1) part on the X chart with residue eta
        lam = big * np.exp(1j * ctx.rng.uniform(0, 2 * np.pi))
        residue = dh.section_on_x(sec, lam).u / lam
        ok = at_inf.chart is Chart.XBAR and at_inf.lam == 0
        yield _vmax(at_inf.u - sec.alpha, at_inf.v - sec.eta, near.u - sec.alpha, near.v - sec.eta, residue - sec.eta) if ok else INFINITY


@prop("dh.normal_bundle_degree")
def _degree(ctx: Context):
    for g in range(1, 7):
        ok = dh.normal_bundle_degree(1, 0, g) == 2 * g == (2 * g + 2) * 1 - 2
        yield 0.0 if ok else INFINITY


# -- aut: Hodge moduli space ------------------------------------------------


@prop("aut.hodge_h_iota_trivial")
def _h_iota(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        pic, c = aut.h_map(s, HodgeAutElement.iota(rand_vpoly(ctx.rng, s.g)))
        yield max(_vmax(pic), abs(c - 1))


@prop("aut.hodge_h_multiplicative")
def _h_mult(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        T1, T2 = rand_hodge_element(ctx.rng, s.g), rand_hodge_element(ctx.rng, s.g)
        pic, c = aut.h_map(s, T1.compose(T2, s))
        pic1, c1 = aut.h_map(s, T1)
        pic2, c2 = aut.h_map(s, T2)
        yield max(s.torus_distance(pic, pic1 + pic2), abs(c - c1 * c2))


@prop("aut.hodge_h_surjective")
def _h_surj(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        target, c = rand_vec(ctx.rng, s.g), rand_lambda(ctx.rng)
        T = HodgeAutElement.tensor(target, rand_vec(ctx.rng, s.g)).compose(HodgeAutElement.scaling(c, s.g))
        pic, tau = aut.h_map(s, T)
        yield max(s.torus_distance(pic, target), abs(tau - c))


@prop("aut.hodge_compose_action")
def _hodge_action(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        T1, T2 = rand_hodge_element(ctx.rng, s.g), rand_hodge_element(ctx.rng, s.g)
        p = rand_point(ctx.rng, s.g, Chart.X, rand_lambda(ctx.rng) if ctx.rng.random() < 0.8 else 0.0)
        yield hodge.gauge_distance(s, T1.compose(T2, s).apply(p), T1.apply(T2.apply(p)))


@prop("aut.hodge_kernel_is_iota")
def _kernel(ctx: Context):
    """Kernel elements are matched by an interpolated iota_v on 100 points each."""
    s = ctx.surface
    for _ in range(max(1, ctx.trials // 10)):
        n = rand_lattice(ctx.rng, s.g)
        K = HodgeAutElement(rand_vpoly(ctx.rng, s.g), s.lattice_01_part(n), rand_vec(ctx.rng, s.g), 1.0)
        v = aut.kernel_polynomial(s, K, tol=ctx.tol)
        worst = 0.0
        for _ in range(100):
            lam = rand_lambda(ctx.rng) if ctx.rng.random() < 0.9 else 0.0
            p = rand_point(ctx.rng, s.g, Chart.X, lam)
            worst = max(worst, hodge.gauge_distance(s, K.apply(p), aut.iota_apply(v, p)))
        yield worst


# -- aut: identity component of Aut(M_DH) -----------------------------------


def _law(A: Aut0Element, B: Aut0Element):
    """The semidirect law written out independently of Aut0Element.compose."""
    return (
        A.nabla_u + B.nabla_u,
        A.nabla_v + B.nabla_v,
        A.alpha + A.tau * B.alpha,
        A.etabar + B.etabar / A.tau,
        A.tau * B.tau,
    )


@prop("aut.aut0_law")
def _aut0_law(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        A, B = rand_aut0(ctx.rng, s), rand_aut0(ctx.rng, s)
        C = A.compose(B, s)
        nu, nv, al, et, t = _law(A, B)
        expected_nabla = LambdaConnectionPoint(Chart.X, 1.0, nu, nv)
        yield max(
            hodge.gauge_distance(s, C.nabla, expected_nabla),
            _vmax(C.alpha - al, C.etabar - et),
            abs(C.tau - t),
        )


@prop("aut.aut0_associative")
def _aut0_assoc(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        A, B, C = (rand_aut0(ctx.rng, s) for _ in range(3))
        yield aut.aut0_distance(s, A.compose(B, s).compose(C, s), A.compose(B.compose(C, s), s))


@prop("aut.aut0_identity_inverse")
def _aut0_inv(ctx: Context):
    s = ctx.surface
    e = Aut0Element.identity(s.g)
    for _ in range(ctx.trials):
        A = rand_aut0(ctx.rng, s)
        Ainv = A.inverse(s)
        yield max(
            aut.aut0_distance(s, A.compose(Ainv, s), e),
            aut.aut0_distance(s, Ainv.compose(A, s), e),
            aut.aut0_distance(s, e.compose(A, s), A),
            aut.aut0_distance(s, A.compose(e, s), A),
        )


@prop("aut.aut0_action_compatible")
def _aut0_action(ctx: Context):
    s = ctx.surface
    for _ in range(ctx.trials):
        A, B = rand_aut0(ctx.rng, s), rand_aut0(ctx.rng, s)
        p = rand_dh_point(ctx.rng, s.g)
        yield dh.dh_distance(s, A.compose(B, s).apply(p), A.apply(B.apply(p)))


@prop("aut.aut0_chart_consistency")
def _aut0_charts(ctx: Context):
    """The X-bar formula of the action is the X formula transported by glue."""
    s = ctx.surface
    for _ in range(ctx.trials):
        A = rand_aut0(ctx.rng, s)
        p = rand_point(ctx.rng, s.g, Chart.X)
        yield dh.dh_distance(s, A.apply(dh.glue(p)), dh.glue(A.apply(p)))


@prop("aut.duality_semidirect")
def _duality(ctx: Context):
    s = ctx.surface
    delta = GammaElement("duality")
    for _ in range(ctx.trials):
        A = rand_aut0(ctx.rng, s)
        conj = aut.conjugate_by_duality(A)
        p = rand_dh_point(ctx.rng, s.g)
        lhs = delta.apply(s, A.apply(delta.apply(s, p)))
        err = dh.dh_distance(s, lhs, conj.apply(p))
        err = max(err, dh.dh_distance(s, delta.apply(s, delta.apply(s, p)), p))
        yield err if isinstance(conj, Aut0Element) and conj.tau != 0 else INFINITY


@prop("aut.lattice_translation_fixes_pic0")
def _translation_fixes_pic0(ctx: Context):
    s = ctx.surface
    gens = [Aut0Element.lattice_translation(s, e) for e in np.eye(2 * s.g, dtype=np.int64)]
    for _ in range(ctx.trials):
        worst = 0.0
        for k, A in enumerate(gens):
            for chart in (Chart.X, Chart.XBAR):
                p = LambdaConnectionPoint(chart, 0.0, rand_vec(ctx.rng, s.g), np.zeros(s.g))
                worst = max(worst, dh.dh_distance(s, A.apply(p), p))
            q = rand_point(ctx.rng, s.g, Chart.X)
            gamma1 = s.lattice_10_part(np.eye(2 * s.g, dtype=np.int64)[k])
            worst = max(worst, _vmax(A.apply(q).v - (q.v + q.lam * gamma1), A.apply(q).u - q.u))
        yield worst


# -- aut: fibers, component group, theta ------------------------------------


GAMMA_SAMPLE = 16


def _sample_automorphisms(ctx: Context):
    """Pairs (name, map on points, expected tau, swaps) covering every implemented kind."""
    s, rng, g = ctx.surface, ctx.rng, ctx.surface.g
    A = rand_aut0(rng, s)
    T = rand_hodge_element(rng, g)
    c = rand_lambda(rng)
    v = rand_vpoly(rng, g)
    t = (rand_vec(rng, g), rand_vec(rng, g))
    out = [
        ("aut0", A.apply, complex(A.tau), False, False),
        ("hodge", T.apply, T.scale, False, True),
        ("iota", lambda p: aut.iota_apply(v, p), 1.0, False, True),
        ("tensor", lambda p: aut.tensor_apply(t, p), 1.0, False, True),
        ("scale", lambda p: aut.scale_apply(c, p), c, False, True),
        ("glue", lambda p: dh.glue(p) if p.lam != 0 else p, 1.0, False, False),
    ]
    catalogue = gamma_catalogue(s)
    if len(catalogue) > GAMMA_SAMPLE:
        # duality first, then a random subset of the lattice elements
        picks = rng.choice(np.arange(1, len(catalogue)), GAMMA_SAMPLE - 1, replace=False)
        catalogue = [catalogue[0]] + [catalogue[i] for i in sorted(picks)]
    for G in catalogue:
        out.append((G.kind, lambda p, G=G: G.apply(s, p), 1.0, G.swaps_charts, False))
    return out


@prop("aut.fiber_behavior")
def _fibers(ctx: Context):
    s = ctx.surface
    for _ in range(max(1, ctx.trials // 100)):
        for name, act, tau, swaps, hodge_only in _sample_automorphisms(ctx):
            measured = []
            for _ in range(100):
                p = rand_point(ctx.rng, s.g, Chart.X if hodge_only else None)
                z, w = hodge.fiber(p), hodge.fiber(act(p))
                measured.append(w * z if swaps else w / z)
            measured = np.array(measured)
            # 0 and infinity must go to {0, infinity} accordingly
            p0 = rand_point(ctx.rng, s.g, Chart.X, 0.0)
            w0 = hodge.fiber(act(p0))
            ends_ok = (w0 == INFINITY) if swaps else (w0 == 0)
            err = float(max(np.max(np.abs(measured - measured[0])), abs(measured[0] - tau)))
            yield err if ends_ok else INFINITY


def _oracle_sign(M) -> int:
    """M^T J M against +-J in plain Python integers."""
    n = len(M)
    g = n // 2

    def J(i, j):
        return 1 if (i < g and j == i + g) else -1 if (i >= g and j == i - g) else 0

    pulled = [[sum(M[k][i] * J(k, l) * M[l][j] for k in range(n) for l in range(n)) for j in range(n)] for i in range(n)]
    if all(pulled[i][j] == J(i, j) for i in range(n) for j in range(n)):
        return 1
    if all(pulled[i][j] == -J(i, j) for i in range(n) for j in range(n)):
        return -1
    return 0


@prop("aut.theta_invariance")
def _theta(ctx: Context):
    s = ctx.surface
    catalogue = gamma_catalogue(s)
    for G in catalogue:
        # holomorphic lattice maps preserve the polarization, swaps reverse J
        ok = aut.fixes_theta(G, s)
        if G.M is not None:
            ok = ok and aut.classify_symplectic(G.M) == _oracle_sign(G.M.tolist())
        yield 0.0 if ok else INFINITY
    for _ in range(ctx.trials):
        ok = aut.fixes_theta(rand_aut0(ctx.rng, s)) and aut.fixes_theta(rand_hodge_element(ctx.rng, s.g))
        M = ctx.rng.integers(-2, 3, (2 * s.g, 2 * s.g))
        ok = ok and aut.classify_symplectic(M) == _oracle_sign(M.tolist())
        yield 0.0 if ok else INFINITY


@prop("aut.gamma_action_consistency")
def _gamma_consistency(ctx: Context):
    """Lattice elements respect gauge classes and act on log-monodromy by M."""
    s = ctx.surface
    elements = [G for G in gamma_catalogue(s) if G.M is not None]
    if not elements:
        return
    for _ in range(ctx.trials):
        G = elements[int(ctx.rng.integers(len(elements)))]
        p = rand_point(ctx.rng, s.g)
        q = hodge.gauge_shift(s, p, rand_lattice(ctx.rng, s.g))
        Gp, Gq = G.apply(s, p), G.apply(s, q)
        logs = hodge.flat_form_periods(s, Gp) - G.M @ hodge.flat_form_periods(s, p)
        yield max(dh.dh_distance(s, Gp, Gq), _vmax(logs))


# -- driver ----------------------------------------------------------------


def property_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, zlib.crc32(name.encode())])


def run_property(name: str, surface: PeriodMatrix, seed: int, trials: int, tol: float) -> PropertyResult:
    ctx = Context(surface, property_rng(seed, name), trials, tol)
    count = failures = 0
    worst = 0.0
    for err in PROPERTIES[name](ctx):
        count += 1
        err = float(err)
        if not err <= tol:
            failures += 1
        worst = max(worst, INFINITY if math.isnan(err) else err)
    return PropertyResult(name, count, failures, worst)


def run_suite(surface: PeriodMatrix, seed: int, trials: int, tol: float, names=None) -> list[PropertyResult]:
    names = sorted(PROPERTIES) if names is None else sorted(names)
    return [run_property(n, surface, seed, trials, tol) for n in names]


def report(surface: PeriodMatrix, seed: int, trials: int, tol: float, results: list[PropertyResult]) -> dict:
    from .jsonio import surface_to_json

    failures = sum(r.failures for r in results)
    return {
        "surface": surface_to_json(surface),
        "seed": seed,
        "trials": trials,
        "tolerance": tol,
        "properties": [r.to_json() for r in sorted(results, key=lambda r: r.name)],
        "failures": failures,
        "passed": failures == 0,
    }
