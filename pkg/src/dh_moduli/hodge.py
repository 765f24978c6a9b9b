r"""Points of the Hodge moduli space in harmonic-form coordinates.

A point on the X chart is a triple :math:`(\lambda, u, v)` standing for the
line bundle with operator :math:`\bar\partial + \sum u_i\bar\omega_i` and the
:math:`\lambda`-connection :math:`D = \lambda\partial + \sum v_i\omega_i`.  On
the :math:`\bar X` chart the same record uses the conjugate basis: ``u``
multiplies the :math:`\omega_i` and ``v`` the :math:`\bar\omega_i`.

Lattice gauge transformations act by
:math:`(u, v) \mapsto (u + \gamma'', v + \lambda\gamma')` for
:math:`\gamma \in \Lambda`, with :math:`\gamma', \gamma''` the chart types.

For :math:`\lambda \ne 0` the flat connection :math:`D/\lambda` is
:math:`d + \xi` with harmonic connection form
:math:`\xi = \sum u_i\bar\omega_i + \lambda^{-1}\sum v_i\omega_i`, and its
monodromy character is :math:`\rho_k = \exp(-\int_{c_k}\xi)`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ChartMismatch, ZeroLambda
from .surface import PeriodMatrix

INFINITY = float("inf")


class Chart(str, enum.Enum):
    X = "X"
    XBAR = "Xbar"

    @property
    def conjugated(self) -> bool:
        return self is Chart.XBAR

    @property
    def other(self) -> "Chart":
        return Chart.X if self is Chart.XBAR else Chart.XBAR


@dataclass(frozen=True, eq=False)
class LambdaConnectionPoint:
    """A chart-tagged representative (lambda, u, v); not normalized unless asked."""

    chart: Chart
    lam: complex
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "chart", Chart(self.chart))
        object.__setattr__(self, "lam", complex(self.lam))
        u = np.array(self.u, dtype=complex).reshape(-1)
        v = np.array(self.v, dtype=complex).reshape(-1)
        if u.shape != v.shape:
            raise ValueError(f"u and v must have equal length, got {u.size} and {v.size}")
        u.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def g(self) -> int:
        return self.u.size

    def replace(self, **changes) -> "LambdaConnectionPoint":
        fields = dict(chart=self.chart, lam=self.lam, u=self.u, v=self.v)
        fields.update(changes)
        return LambdaConnectionPoint(**fields)

    def __repr__(self) -> str:
        return (
            f"LambdaConnectionPoint({self.chart.value}, lam={self.lam!r}, "
            f"u={self.u.tolist()!r}, v={self.v.tolist()!r})"
        )


def trivial_point(g: int, lam: complex = 1.0, chart: Chart = Chart.X) -> LambdaConnectionPoint:
    return LambdaConnectionPoint(chart, lam, np.zeros(g), np.zeros(g))


def fiber(p: LambdaConnectionPoint):
    """Image of ``p`` in the twistor base CP^1; ``INFINITY`` stands for the point at infinity."""
    if p.chart is Chart.X:
        return p.lam
    if p.lam == 0:
        return INFINITY
    return 1 / p.lam


def gauge_shift(surface: PeriodMatrix, p: LambdaConnectionPoint, n) -> LambdaConnectionPoint:
    """Apply the lattice gauge transformation for n: (u, v) -> (u + gamma'', v + lambda gamma')."""
    conj = p.chart.conjugated
    return p.replace(
        u=p.u + surface.lattice_01_part(n, conj),
        v=p.v + p.lam * surface.lattice_10_part(n, conj),
    )


def normal_form(surface: PeriodMatrix, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    """Gauge representative with ``u`` in the fundamental box."""
    conj = p.chart.conjugated
    u_red, n = surface.reduce_mod_lattice(p.u, conj)
    return p.replace(u=u_red, v=p.v - p.lam * surface.lattice_10_part(n, conj))


def gauge_distance(surface: PeriodMatrix, p: LambdaConnectionPoint, q: LambdaConnectionPoint) -> float:
    """How far two same-chart representatives are from being lattice-gauge equivalent.

    Rounds the difference of the ``u`` parts to the nearest lattice vector and
    reports the largest leftover among lambda, u and v.  Robust at fundamental
    domain boundaries, unlike comparing normal forms.
    """
    if p.chart is not q.chart:
        raise ChartMismatch("gauge comparison needs a common chart")
    conj = p.chart.conjugated
    n, du = surface.nearest_lattice_vector(q.u - p.u, conj)
    dv = q.v - p.v - p.lam * surface.lattice_10_part(n, conj)
    return float(max(abs(q.lam - p.lam), np.max(np.abs(du), initial=0.0), np.max(np.abs(dv), initial=0.0)))


def flat_form_periods(surface: PeriodMatrix, p: LambdaConnectionPoint) -> np.ndarray:
    """Periods of the connection form of the flat connection D/lambda."""
    if p.lam == 0:
        raise ZeroLambda("the flat connection D/lambda needs lambda != 0")
    return surface.periods(p.v / p.lam, p.u, p.chart.conjugated)


def monodromy(surface: PeriodMatrix, p: LambdaConnectionPoint) -> np.ndarray:
    """Monodromy character of D/lambda on a_1..a_g, b_1..b_g."""
    return np.exp(-flat_form_periods(surface, p))


def from_betti(surface: PeriodMatrix, rho, chart=Chart.X, lam: complex = 1.0) -> LambdaConnectionPoint:
    """Inverse Riemann-Hilbert map: the normal-form point on fiber ``lam`` with monodromy ``rho``."""
    lam = complex(lam)
    if lam == 0:
        raise ZeroLambda("a character determines a point only on fibers lambda != 0")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2 * surface.g,) or np.any(rho == 0):
        raise ValueError(f"rho must be {2 * surface.g} nonzero complex numbers")
    chart = Chart(chart)
    # principal branch; other branches differ by the lattice
    hol, anti = surface.hodge_decompose(-np.log(rho), chart.conjugated)
    return normal_form(surface, LambdaConnectionPoint(chart, lam, anti, lam * hol))


def betti_distance(rho1, rho2) -> float:
    """Entrywise relative distance between two characters."""
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    scale = np.maximum(1.0, np.maximum(np.abs(rho1), np.abs(rho2)))
    return float(np.max(np.abs(rho1 - rho2) / scale))
