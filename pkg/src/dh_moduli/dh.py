r"""The glued Deligne-Hitchin space and its twistor lines.

The transition between the two Hodge charts is, on representatives,

.. math::

    (X, \lambda, u, v) \longmapsto (\bar X, \lambda^{-1}, v/\lambda, u/\lambda),

which keeps the flat connection form of :math:`D/\lambda` unchanged: its
holomorphic part on :math:`X` is the antiholomorphic part on :math:`\bar X`.

A section is the quadruple :math:`(\alpha, \beta, \omega, \eta)` with
:math:`s(\lambda) = (X, \lambda, \omega + \lambda\eta, \lambda\alpha + \beta)`
near zero and :math:`s = (\bar X, \mu, \alpha + \mu\beta, \eta + \mu\omega)`,
:math:`\mu = 1/\lambda`, near infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OnZeroFiber, SameFiber
from .hodge import INFINITY, Chart, LambdaConnectionPoint, fiber, gauge_distance
from .surface import PeriodMatrix

# DH points are chart-tagged Hodge representatives
DHPoint = LambdaConnectionPoint


def glue(p: DHPoint) -> DHPoint:
    """Move a point with lambda != 0 to the other chart."""
    if p.lam == 0:
        raise OnZeroFiber(f"points over {'0' if p.chart is Chart.X else 'infinity'} live in one chart only")
    return LambdaConnectionPoint(p.chart.other, 1 / p.lam, p.v / p.lam, p.u / p.lam)


def to_chart(p: DHPoint, chart) -> DHPoint:
    chart = Chart(chart)
    return p if p.chart is chart else glue(p)


def dh_distance(surface: PeriodMatrix, p: DHPoint, q: DHPoint) -> float:
    """Gauge distance after bringing ``q`` to the chart of ``p``.

    Returns infinity when the points lie over different fibers that cannot
    share a chart (one over 0, the other over infinity).
    """
    if p.chart is not q.chart:
        if q.lam != 0:
            q = glue(q)
        elif p.lam != 0:
            p = glue(p)
        else:
            return INFINITY
    return gauge_distance(surface, p, q)


def dh_equal(surface: PeriodMatrix, p: DHPoint, q: DHPoint, tol: float = 1e-9) -> bool:
    return dh_distance(surface, p, q) <= tol


@dataclass(frozen=True, eq=False)
class Section:
    """Twistor line s(lambda) = [lambda, dbar + omega + lambda*eta, lambda(d + alpha) + beta]."""

    alpha: np.ndarray
    beta: np.ndarray
    omega: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        arrs = []
        for name in ("alpha", "beta", "omega", "eta"):
            a = np.array(getattr(self, name), dtype=complex).reshape(-1)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
            arrs.append(a)
        if len({a.size for a in arrs}) != 1:
            raise ValueError("section components must have equal length")

    @property
    def g(self) -> int:
        return self.alpha.size

    def __repr__(self) -> str:
        return (
            f"Section(alpha={self.alpha.tolist()!r}, beta={self.beta.tolist()!r}, "
            f"omega={self.omega.tolist()!r}, eta={self.eta.tolist()!r})"
        )


def section_on_x(s: Section, lam: complex) -> DHPoint:
    """The X-chart formula of a section at local coordinate ``lam``."""
    return LambdaConnectionPoint(Chart.X, lam, s.omega + lam * s.eta, lam * s.alpha + s.beta)


def section_on_xbar(s: Section, mu: complex) -> DHPoint:
    """The X-bar-chart formula at local coordinate ``mu = 1/lambda``."""
    return LambdaConnectionPoint(Chart.XBAR, mu, s.alpha + mu * s.beta, s.eta + mu * s.omega)


def eval_section(s: Section, z) -> DHPoint:
    """Value of a section over ``z`` in CP^1; the X-bar chart is used for |z| > 1."""
    if z == INFINITY or (isinstance(z, str) and z == "inf"):
        return section_on_xbar(s, 0.0)
    z = complex(z)
    if abs(z) <= 1:
        return section_on_x(s, z)
    return section_on_xbar(s, 1 / z)


def fit_section(surface: PeriodMatrix, p1: DHPoint, p2: DHPoint) -> Section:
    """Section through two points over distinct fibers, by linear interpolation.

    Each point imposes, per coordinate, one linear condition on the pairs
    (omega, eta) and (alpha, beta): on the X chart ``omega + l*eta = u`` and
    ``l*alpha + beta = v``; on the X-bar chart ``alpha + m*beta = u`` and
    ``eta + m*omega = v``.  The two conditions determine both pairs whenever
    the fibers differ.  The points' own representatives are used as given.
    """
    if p1.g != p2.g or p1.g != surface.g:
        raise ValueError("points and surface disagree on the genus")
    f1, f2 = fiber(p1), fiber(p2)
    if f1 == f2:
        raise SameFiber(f"both points lie over {f1}")

    # rows act on (omega, eta) and (alpha, beta) respectively
    rows_oe, rows_ab, rhs_oe, rhs_ab = [], [], [], []
    for p in (p1, p2):
        if p.chart is Chart.X:
            rows_oe.append((1, p.lam))
            rhs_oe.append(p.u)
            rows_ab.append((p.lam, 1))
            rhs_ab.append(p.v)
        else:
            rows_ab.append((1, p.lam))
            rhs_ab.append(p.u)
            rows_oe.append((p.lam, 1))
            rhs_oe.append(p.v)
    omega, eta = np.linalg.solve(np.array(rows_oe, dtype=complex), np.array(rhs_oe))
    alpha, beta = np.linalg.solve(np.array(rows_ab, dtype=complex), np.array(rhs_ab))
    return Section(alpha=alpha, beta=beta, omega=omega, eta=eta)


def normal_bundle_degree(deg_i: int, genus_sigma: int, genus_x: int) -> int:
    """Degree of the normal bundle of an immersed curve of given degree and genus."""
    if genus_x < 1 or genus_sigma < 0:
        raise ValueError("need genus_x >= 1 and genus_sigma >= 0")
    return (2 * genus_x + 2) * deg_i + 2 * genus_sigma - 2
