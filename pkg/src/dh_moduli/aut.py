r"""Automorphism groups of the Hodge and Deligne-Hitchin moduli spaces.

Hodge moduli space (X chart only)
    ``iota_apply``, ``tensor_apply`` and ``scale_apply`` are the generators;
    :class:`HodgeAutElement` stores ``(v, tensor, scale)`` applied in the order
    scale, then tensor, then :math:`\iota_v`, and :func:`h_map` projects to
    :math:`\mathrm{Pic}^0(X)\times\mathbb{C}^*`.

Identity component of the DH automorphism group
    :class:`Aut0Element` :math:`(\nabla, \alpha, \bar\eta, \tau)` acts on the
    X chart by

    .. math::

        (\lambda, u, v) \mapsto (\tau\lambda,\;
            u + u_\nabla + \tau\lambda\bar\eta,\;
            \tau v + \alpha + \tau\lambda v_\nabla)

    so :math:`\mathbb{C}^*` scales first, :math:`\alpha` and :math:`\bar\eta`
    add to the Higgs fields over :math:`0` and :math:`\infty`, and
    :math:`\nabla` tensors with the constant section through it.  This is the
    unique placement of the factors under which composing actions reproduces
    the semidirect law
    :math:`(\alpha_1 + \tau_1\alpha_2, \bar\eta_1 + \bar\eta_2/\tau_1, \tau_1\tau_2)`.

Component group
    :class:`GammaElement` covers the duality involution and integer matrices
    acting on period vectors, either preserving the Hodge type (``lattice``)
    or exchanging it and the two charts (``lattice_swap``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ChartMismatch, IncompatibleMatrix, NotInKernel, NotThetaScaling
from .hodge import Chart, LambdaConnectionPoint, gauge_distance, normal_form
from .surface import PeriodMatrix, standard_symplectic

COMPATIBILITY_TOL = 1e-9


def _require_x(p: LambdaConnectionPoint) -> None:
    if p.chart is not Chart.X:
        raise ChartMismatch("Hodge automorphisms act on the X chart")


# -- Hodge moduli space ----------------------------------------------------


class VPolynomial:
    """Polynomial map C -> H^0(X, K_X); ``coeffs[k]`` multiplies lambda**k."""

    def __init__(self, coeffs, g: int | None = None):
        arr = np.array(coeffs, dtype=complex)
        if arr.size == 0:
            if g is None:
                raise ValueError("the zero polynomial needs an explicit genus")
            arr = np.zeros((0, g), dtype=complex)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if g is not None and arr.shape[1] != g:
            raise ValueError(f"coefficient vectors have length {arr.shape[1]}, expected {g}")
        k = arr.shape[0]
        while k and not np.any(arr[k - 1]):
            k -= 1
        self.coeffs = arr[:k].copy()
        self.coeffs.setflags(write=False)
        self.g = arr.shape[1]

    @classmethod
    def zero(cls, g: int) -> "VPolynomial":
        return cls(np.zeros((0, g)), g)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, lam) -> np.ndarray:
        out = np.zeros(self.g, dtype=complex)
        for c in self.coeffs[::-1]:
            out = out * lam + c
        return out

    def trimmed(self, tol: float) -> "VPolynomial":
        """Drop trailing coefficients whose entries are all below ``tol``."""
        k = len(self.coeffs)
        while k and np.max(np.abs(self.coeffs[k - 1])) <= tol:
            k -= 1
        return VPolynomial(self.coeffs[:k], self.g)

    def __repr__(self) -> str:
        return f"VPolynomial({self.coeffs.tolist()!r})"


def iota_apply(v: VPolynomial, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    """(lambda, L, D) -> (lambda, L, D + v(lambda))."""
    _require_x(p)
    return p.replace(v=p.v + v(p.lam))


def tensor_apply(t, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    """Tensor with a fixed de Rham point t = (u0, v0): u += u0, v += lambda*v0."""
    _require_x(p)
    u0, v0 = t
    return p.replace(u=p.u + np.asarray(u0), v=p.v + p.lam * np.asarray(v0))


def scale_apply(c: complex, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    """The C*-lift (lambda, L, D) -> (c*lambda, L, c*D)."""
    _require_x(p)
    if c == 0:
        raise ValueError("scale must be nonzero")
    return p.replace(lam=c * p.lam, v=c * p.v)


@dataclass(frozen=True, eq=False)
class HodgeAutElement:
    v: VPolynomial
    tensor_u: np.ndarray
    tensor_v: np.ndarray
    scale: complex = 1.0

    def __post_init__(self):
        for name in ("tensor_u", "tensor_v"):
            a = np.array(getattr(self, name), dtype=complex).reshape(-1)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        object.__setattr__(self, "scale", complex(self.scale))
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        if not (self.v.g == self.tensor_u.size == self.tensor_v.size):
            raise ValueError("components disagree on the genus")

    @property
    def g(self) -> int:
        return self.v.g

    @classmethod
    def identity(cls, g: int) -> "HodgeAutElement":
        return cls(VPolynomial.zero(g), np.zeros(g), np.zeros(g), 1.0)

    @classmethod
    def iota(cls, v: VPolynomial) -> "HodgeAutElement":
        return cls(v, np.zeros(v.g), np.zeros(v.g), 1.0)

    @classmethod
    def tensor(cls, u0, v0) -> "HodgeAutElement":
        u0 = np.asarray(u0, dtype=complex)
        return cls(VPolynomial.zero(u0.size), u0, v0, 1.0)

    @classmethod
    def scaling(cls, c: complex, g: int) -> "HodgeAutElement":
        return cls(VPolynomial.zero(g), np.zeros(g), np.zeros(g), c)

    def apply(self, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
        p = scale_apply(self.scale, p)
        p = tensor_apply((self.tensor_u, self.tensor_v), p)
        return iota_apply(self.v, p)

    def compose(self, other: "HodgeAutElement", surface: PeriodMatrix | None = None) -> "HodgeAutElement":
        """``self`` after ``other``; the tensor part is normal-formed when a surface is given."""
        c1 = self.scale
        k = max(len(self.v.coeffs), len(other.v.coeffs))
        w = np.zeros((k, self.g), dtype=complex)
        w[: len(self.v.coeffs)] += self.v.coeffs
        for j, coeff in enumerate(other.v.coeffs):
            w[j] += c1 ** (1 - j) * coeff
        tu = self.tensor_u + other.tensor_u
        tv = self.tensor_v + other.tensor_v
        if surface is not None:
            tu, tv = _normal_de_rham(surface, tu, tv)
        return HodgeAutElement(VPolynomial(w, self.g), tu, tv, c1 * other.scale)

    def inverse(self) -> "HodgeAutElement":
        c = self.scale
        w = [-(c ** (j - 1)) * coeff for j, coeff in enumerate(self.v.coeffs)]
        return HodgeAutElement(VPolynomial(w, self.g), -self.tensor_u, -self.tensor_v, 1 / c)

    def normalized(self, surface: PeriodMatrix) -> "HodgeAutElement":
        tu, tv = _normal_de_rham(surface, self.tensor_u, self.tensor_v)
        return HodgeAutElement(self.v, tu, tv, self.scale)


def _normal_de_rham(surface: PeriodMatrix, u, v):
    q = normal_form(surface, LambdaConnectionPoint(Chart.X, 1.0, u, v))
    return q.u, q.v


def h_map(surface: PeriodMatrix, T: HodgeAutElement):
    """Projection to Pic^0(X) x C*: (reduced class of the tensor bundle, scale)."""
    u_red, _ = surface.reduce_mod_lattice(T.tensor_u)
    return u_red, T.scale


def kernel_polynomial(
    surface: PeriodMatrix, T: HodgeAutElement, max_degree: int | None = None, tol: float = 1e-9
) -> VPolynomial:
    """Recover v with T = iota_v for T in the kernel of h.

    The shift T(p) - p is measured on the trivial point over
    2*max_degree + 1 roots of unity, after gauging the bundle part back to the
    identity, and interpolated by a polynomial.
    """
    pic, c = h_map(surface, T)
    if abs(c - 1) > tol or surface.torus_distance(pic, np.zeros(surface.g)) > tol:
        raise NotInKernel("element does not map to the identity of Pic^0 x C*")
    if max_degree is None:
        max_degree = max(T.v.degree, 1)
    npts = 2 * max_degree + 1
    nodes = np.exp(2j * np.pi * np.arange(npts) / npts)
    shifts = np.empty((npts, surface.g), dtype=complex)
    for k, lam in enumerate(nodes):
        p = LambdaConnectionPoint(Chart.X, lam, np.zeros(surface.g), np.zeros(surface.g))
        q = T.apply(p)
        n, _ = surface.nearest_lattice_vector(q.u)
        shifts[k] = q.v - lam * surface.lattice_10_part(n)
    # interpolation on roots of unity is a discrete Fourier transform
    coeffs = np.fft.fft(shifts, axis=0) / npts
    return VPolynomial(coeffs, surface.g).trimmed(tol)


# -- identity component of Aut(M_DH) ------------------------------------


def _vec(x):
    a = np.asarray(x)
    if a.dtype.kind in "iub":
        a = a.astype(complex)
    return a.reshape(-1)


@dataclass(frozen=True, eq=False)
class Aut0Element:
    """(nabla, alpha, etabar, tau); components may be exact (sympy) numbers."""

    nabla_u: np.ndarray
    nabla_v: np.ndarray
    alpha: np.ndarray
    etabar: np.ndarray
    tau: complex = 1.0

    def __post_init__(self):
        for name in ("nabla_u", "nabla_v", "alpha", "etabar"):
            object.__setattr__(self, name, _vec(getattr(self, name)))
        if self.tau == 0:
            raise ValueError("tau must be nonzero")
        if len({a.size for a in (self.nabla_u, self.nabla_v, self.alpha, self.etabar)}) != 1:
            raise ValueError("components disagree on the genus")

    @property
    def g(self) -> int:
        return self.alpha.size

    @classmethod
    def identity(cls, g: int) -> "Aut0Element":
        z = np.zeros(g, dtype=complex)
        return cls(z, z, z, z, 1.0)

    @classmethod
    def lattice_translation(cls, surface: PeriodMatrix, n) -> "Aut0Element":
        """The element (lambda, E, D) -> (lambda, E, D + lambda*gamma') for gamma with periods 2*pi*i*n."""
        z = np.zeros(surface.g, dtype=complex)
        return cls(z, surface.lattice_10_part(n), z, z, 1.0)

    @property
    def nabla(self) -> LambdaConnectionPoint:
        return LambdaConnectionPoint(Chart.X, 1.0, self.nabla_u, self.nabla_v)

    def apply(self, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
        t = complex(self.tau)
        lam = p.lam
        nu, nv = self.nabla_u.astype(complex), self.nabla_v.astype(complex)
        a, e = self.alpha.astype(complex), self.etabar.astype(complex)
        if p.chart is Chart.X:
            return p.replace(lam=t * lam, u=p.u + nu + t * lam * e, v=t * p.v + a + t * lam * nv)
        # the X formula conjugated by the chart transition, extended over mu = 0
        return p.replace(
            lam=lam / t,
            u=p.u + lam * a / t + nv,
            v=p.v / t + lam * nu / t + e,
        )

    def compose(self, other: "Aut0Element", surface: PeriodMatrix | None = None) -> "Aut0Element":
        """Group law: ``self`` after ``other``."""
        t1 = self.tau
        nu = self.nabla_u + other.nabla_u
        nv = self.nabla_v + other.nabla_v
        if surface is not None:
            nu, nv = _normal_de_rham(surface, nu, nv)
        return Aut0Element(
            nu,
            nv,
            self.alpha + t1 * other.alpha,
            self.etabar + other.etabar / t1,
            t1 * other.tau,
        )

    def inverse(self, surface: PeriodMatrix | None = None) -> "Aut0Element":
        t = self.tau
        nu, nv = -self.nabla_u, -self.nabla_v
        if surface is not None:
            nu, nv = _normal_de_rham(surface, nu, nv)
        return Aut0Element(nu, nv, -self.alpha / t, -t * self.etabar, 1 / t)

    def normalized(self, surface: PeriodMatrix) -> "Aut0Element":
        nu, nv = _normal_de_rham(surface, self.nabla_u, self.nabla_v)
        return Aut0Element(nu, nv, self.alpha, self.etabar, self.tau)

    def __repr__(self) -> str:
        return (
            f"Aut0Element(nabla=({self.nabla_u.tolist()!r}, {self.nabla_v.tolist()!r}), "
            f"alpha={self.alpha.tolist()!r}, etabar={self.etabar.tolist()!r}, tau={self.tau!r})"
        )


def aut0_compose(A: Aut0Element, B: Aut0Element, surface: PeriodMatrix | None = None) -> Aut0Element:
    return A.compose(B, surface)


def aut0_apply(A: Aut0Element, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    return A.apply(p)


def aut0_distance(surface: PeriodMatrix, A: Aut0Element, B: Aut0Element) -> float:
    """Largest discrepancy between two elements, with nabla compared up to gauge."""
    d_nabla = gauge_distance(surface, A.nabla, B.nabla)
    return float(
        max(
            d_nabla,
            np.max(np.abs(A.alpha.astype(complex) - B.alpha.astype(complex))),
            np.max(np.abs(A.etabar.astype(complex) - B.etabar.astype(complex))),
            abs(complex(A.tau) - complex(B.tau)),
        )
    )


def conjugate_by_duality(A: Aut0Element) -> Aut0Element:
    """delta o A o delta for the duality involution delta: (-nabla, -alpha, -etabar, tau)."""
    return Aut0Element(-A.nabla_u, -A.nabla_v, -A.alpha, -A.etabar, A.tau)


# -- component group ---------------------------------------------------------


def _int_det(M) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    a = [[int(x) for x in row] for row in M]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _as_int_matrix(M) -> np.ndarray:
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
        raise IncompatibleMatrix(f"need an even square matrix, got shape {arr.shape}")
    if arr.dtype.kind == "f":
        if not np.all(arr == np.round(arr)):
            raise IncompatibleMatrix("matrix entries must be integers")
    elif arr.dtype.kind not in "iu":
        raise IncompatibleMatrix("matrix entries must be integers")
    return arr.astype(np.int64)


def classify_symplectic(M) -> int:
    """+1 if M^T J M = J, -1 if it equals -J, 0 otherwise (exact integer arithmetic)."""
    M = _as_int_matrix(M)
    J = standard_symplectic(M.shape[0] // 2)
    pulled = M.T @ J @ M
    if np.array_equal(pulled, J):
        return 1
    if np.array_equal(pulled, -J):
        return -1
    return 0


GAMMA_KINDS = ("duality", "lattice", "lattice_swap")


@dataclass(frozen=True, eq=False)
class GammaElement:
    """Duality, or a unimodular integer matrix acting on period vectors p -> M p."""

    kind: str
    M: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind not in GAMMA_KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "duality":
            object.__setattr__(self, "M", None)
            return
        if self.M is None:
            raise IncompatibleMatrix(f"{self.kind} elements need a matrix")
        M = _as_int_matrix(self.M)
        if abs(_int_det(M)) != 1:
            raise IncompatibleMatrix("matrix is not invertible over the integers")
        M.setflags(write=False)
        object.__setattr__(self, "M", M)

    @property
    def swaps_charts(self) -> bool:
        return self.kind == "lattice_swap"

    def check_compatible(self, surface: PeriodMatrix) -> None:
        if self.kind == "duality":
            return
        if self.M.shape[0] != 2 * surface.g:
            raise IncompatibleMatrix(f"matrix size {self.M.shape[0]} does not match genus {surface.g}")
        defect = surface.compatibility(self.M, swap=self.swaps_charts)
        if defect > COMPATIBILITY_TOL:
            target = "conjugate Hodge type" if self.swaps_charts else "Hodge type"
            raise IncompatibleMatrix(f"matrix does not map holomorphic periods to the {target} (defect {defect:.3g})")

    def apply(self, surface: PeriodMatrix, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
        if self.kind == "duality":
            return p.replace(u=-p.u, v=-p.v)
        self.check_compatible(surface)
        conj = p.chart.conjugated
        pu = surface.periods(np.zeros(surface.g), p.u, conj)
        pv = surface.periods(p.v, np.zeros(surface.g), conj)
        chart = p.chart.other if self.swaps_charts else p.chart
        M = self.M.astype(float)
        _, u_new = surface.hodge_decompose(M @ pu, chart.conjugated)
        v_new, _ = surface.hodge_decompose(M @ pv, chart.conjugated)
        return LambdaConnectionPoint(chart, p.lam, u_new, v_new)

    def __repr__(self) -> str:
        if self.M is None:
            return f"GammaElement({self.kind!r})"
        return f"GammaElement({self.kind!r}, {self.M.tolist()!r})"


def gamma_apply(gmm: GammaElement, surface: PeriodMatrix, p: LambdaConnectionPoint) -> LambdaConnectionPoint:
    return gmm.apply(surface, p)


def pullback_theta(gmm: GammaElement, surface: PeriodMatrix | None = None) -> int:
    """Sign s with gmm^* theta_X = s * theta_X.

    Chart-swapping elements identify X with its conjugate, whose class is
    the negative one, so for them the sign of M^T J M is flipped.
    """
    if gmm.kind == "duality":
        return 1
    if surface is not None:
        gmm.check_compatible(surface)
    s = classify_symplectic(gmm.M)
    if s == 0:
        raise NotThetaScaling("M^T J M is neither J nor -J")
    return -s if gmm.swaps_charts else s


def fixes_theta(element, surface: PeriodMatrix | None = None) -> bool:
    if isinstance(element, (Aut0Element, HodgeAutElement)):
        # connected groups act trivially on integral cohomology
        return True
    try:
        return pullback_theta(element, surface) == 1
    except NotThetaScaling:
        return False


def compatible_matrices(surface: PeriodMatrix, entries=(-1, 0, 1), swap: bool = False):
    """All unimodular matrices with the given entries that are compatible with ``surface``.

    Exhaustive, so only practical in genus one (or with very few entries).
    """
    import itertools

    n = 2 * surface.g
    found = []
    for flat in itertools.product(entries, repeat=n * n):
        M = np.array(flat, dtype=np.int64).reshape(n, n)
        if abs(_int_det(M)) != 1:
            continue
        if surface.compatibility(M, swap=swap) <= COMPATIBILITY_TOL:
            found.append(M)
    return found
