r"""Period matrices, harmonic forms and the integral lattice.

A compact Riemann surface :math:`X` of genus :math:`g` enters only through a
normalized period matrix :math:`\tau` in the Siegel upper half space.  The
holomorphic basis :math:`\omega_1, \ldots, \omega_g` has a-periods
:math:`\delta_{ij}` and b-periods :math:`\tau_{ij}`, so the period vector of
a harmonic form :math:`\sum c_i\omega_i + \sum d_i\bar\omega_i` is

.. math::

    p = P c + \bar P d, \qquad P = \begin{pmatrix} I \\ \tau \end{pmatrix}.

Period vectors list :math:`\int_{a_1}, \ldots, \int_{a_g}, \int_{b_1},
\ldots, \int_{b_g}`.  The lattice :math:`\Lambda` consists of the harmonic
forms with periods :math:`2\pi i\,n`, :math:`n \in \mathbb{Z}^{2g}`.

The conjugate surface :math:`\bar X` shares the same data.  Every method that
depends on the complex structure takes a ``conjugated_chart`` flag; with the
flag set the roles of holomorphic and antiholomorphic parts are exchanged,
because the holomorphic forms of :math:`\bar X` are the
:math:`\bar\omega_i`.
"""

from __future__ import annotations

import numpy as np

from .errors import IllConditionedLattice, NotPositiveDefinite, SymmetryViolation

SYMMETRY_TOL = 1e-12
POSDEF_TOL = 1e-10
MAX_LATTICE_CONDITION = 1e12
LATTICE_TOL = 1e-9

TWO_PI_I = 2j * np.pi


def validate(tau) -> None:
    """Raise unless ``tau`` is symmetric with positive definite imaginary part."""
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] < 1:
        raise SymmetryViolation(f"tau must be a non-empty square matrix, got shape {tau.shape}")
    if np.max(np.abs(tau - tau.T)) > SYMMETRY_TOL:
        raise SymmetryViolation("tau is not symmetric")
    eig = np.linalg.eigvalsh((tau.imag + tau.imag.T) / 2)
    if eig.min() <= POSDEF_TOL:
        raise NotPositiveDefinite(f"Im(tau) has eigenvalue {eig.min():.3g}")


def standard_symplectic(g: int) -> np.ndarray:
    """The integer matrix J with J(a_i) = b_i, i.e. [[0, I], [-I, 0]]."""
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


def symplectic_pairing(m, n) -> int:
    """Integer pairing m^T J n on the lattice."""
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    if m.shape != n.shape or m.ndim != 1 or m.size % 2:
        raise ValueError("lattice vectors must have equal even length")
    g = m.size // 2
    return int(m[:g] @ n[g:] - m[g:] @ n[:g])


class PeriodMatrix:
    """A validated period matrix together with the linear algebra derived from it.

    Instances are immutable; all cached arrays are marked read-only.
    """

    def __init__(self, tau):
        tau = np.array(tau, dtype=complex)
        if tau.ndim == 0:
            tau = tau.reshape(1, 1)
        validate(tau)
        # symmetrize away the rounding residue allowed by validate
        tau = (tau + tau.T) / 2
        g = tau.shape[0]
        P = np.vstack([np.eye(g), tau])
        H = np.hstack([P, P.conj()])
        Hinv = np.linalg.inv(H)
        # columns: (hol, anti) parts of the lattice generators 2*pi*i*e_k
        gens = Hinv * TWO_PI_I
        hol, anti = gens[:g], gens[g:]
        B = np.vstack([anti.real, anti.imag])
        cond = np.linalg.cond(B)

        self.tau = tau
        self.g = g
        self._P = P
        self._H = H
        self._Hinv = Hinv
        self._gen_hol = hol
        self._gen_anti = anti
        self._B = B
        self._Binv = np.linalg.inv(B) if np.isfinite(cond) else None
        # on the conjugated chart the anti part is the c-part: -conj(anti)
        Bc = np.vstack([hol.real, hol.imag])
        self._Bcinv = np.linalg.inv(Bc) if np.isfinite(cond) else None
        self.lattice_condition = float(cond)
        for arr in (tau, P, H, Hinv, hol, anti, B):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"PeriodMatrix(g={self.g}, tau={self.tau.tolist()!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PeriodMatrix) and np.array_equal(self.tau, other.tau)

    def __hash__(self) -> int:
        return hash(self.tau.tobytes())

    @classmethod
    def diagonal(cls, *imag_parts: float) -> "PeriodMatrix":
        """Purely imaginary diagonal period matrix diag(i*y_1, ..., i*y_g)."""
        return cls(np.diag(1j * np.asarray(imag_parts, dtype=float)))

    @classmethod
    def random(cls, g: int, rng: np.random.Generator) -> "PeriodMatrix":
        """A random point of the Siegel upper half space with moderate conditioning."""
        re = rng.uniform(-0.5, 0.5, size=(g, g))
        A = rng.uniform(-0.5, 0.5, size=(g, g))
        im = A @ A.T + np.diag(rng.uniform(0.75, 1.5, size=g))
        return cls((re + re.T) / 2 + 1j * im)

    # -- harmonic forms -------------------------------------------------

    def periods(self, hol, anti, conjugated_chart: bool = False) -> np.ndarray:
        """Period vector of sum(hol_i * w_i) + sum(anti_i * conj(w_i)) on the given chart."""
        hol = np.asarray(hol, dtype=complex)
        anti = np.asarray(anti, dtype=complex)
        if conjugated_chart:
            hol, anti = anti, hol
        return self._P @ hol + self._P.conj() @ anti

    def hodge_decompose(self, periods, conjugated_chart: bool = False):
        """Split a period vector into (chart-holomorphic, chart-antiholomorphic) coefficients.

        On the X chart this returns (c, d) with periods = P c + conj(P) d.
        """
        cd = self._Hinv @ np.asarray(periods, dtype=complex)
        c, d = cd[: self.g], cd[self.g :]
        return (d, c) if conjugated_chart else (c, d)

    def is_lattice_form(self, periods, tol: float = LATTICE_TOL) -> bool:
        n = np.asarray(periods, dtype=complex) / TWO_PI_I
        return bool(np.all(np.abs(n - np.round(n.real)) <= tol))

    # -- lattice ----------------------------------------------------------

    def lattice_01_part(self, n, conjugated_chart: bool = False) -> np.ndarray:
        """Chart-antiholomorphic part gamma'' of the lattice form with periods 2*pi*i*n."""
        n = np.asarray(n, dtype=float)
        return (self._gen_hol if conjugated_chart else self._gen_anti) @ n

    def lattice_10_part(self, n, conjugated_chart: bool = False) -> np.ndarray:
        """Chart-holomorphic part gamma' = -conj(gamma'') of the same lattice form."""
        n = np.asarray(n, dtype=float)
        return (self._gen_anti if conjugated_chart else self._gen_hol) @ n

    def lattice_coordinates(self, d, conjugated_chart: bool = False) -> np.ndarray:
        """Real coordinates of an antiholomorphic coefficient vector in the Lambda'' basis."""
        if self.lattice_condition > MAX_LATTICE_CONDITION or self._Binv is None:
            raise IllConditionedLattice(
                f"lattice basis condition number {self.lattice_condition:.3g} exceeds "
                f"{MAX_LATTICE_CONDITION:g}"
            )
        d = np.asarray(d, dtype=complex)
        Binv = self._Bcinv if conjugated_chart else self._Binv
        return Binv @ np.concatenate([d.real, d.imag])

    def reduce_mod_lattice(self, d, conjugated_chart: bool = False):
        """Reduce ``d`` into the fundamental box [-1/2, 1/2)^{2g}.

        Returns ``(d_reduced, n)`` with ``d = d_reduced + lattice_01_part(n)``.
        """
        x = self.lattice_coordinates(d, conjugated_chart)
        # rounding to 12 decimals absorbs solve noise at the half-open boundary
        n = np.floor(np.round(x, 12) + 0.5).astype(np.int64)
        d_red = np.asarray(d, dtype=complex) - self.lattice_01_part(n, conjugated_chart)
        return d_red, n

    def nearest_lattice_vector(self, d, conjugated_chart: bool = False):
        """Closest lattice generator combination to ``d`` by coordinate rounding.

        Returns ``(n, residual)`` where residual is ``d - lattice_01_part(n)``.
        """
        x = self.lattice_coordinates(d, conjugated_chart)
        n = np.round(x).astype(np.int64)
        return n, np.asarray(d, dtype=complex) - self.lattice_01_part(n, conjugated_chart)

    def torus_distance(self, d1, d2, conjugated_chart: bool = False) -> float:
        """Distance between two classes of the Jacobian torus conj(H^0(K))/Lambda''."""
        _, res = self.nearest_lattice_vector(np.asarray(d1) - np.asarray(d2), conjugated_chart)
        return float(np.max(np.abs(res), initial=0.0))

    # -- integral structure -----------------------------------------------

    def compatibility(self, M, swap: bool = False) -> float:
        """Defect of an integer matrix acting on period vectors from preserving Hodge type.

        With ``swap`` false, measures how far ``M`` is from mapping the span of
        the holomorphic periods ``P`` to itself; with ``swap`` true, to the span
        of ``conj(P)``.  Zero (up to rounding) means compatible.
        """
        M = np.asarray(M, dtype=float)
        img = self._Hinv @ (M @ self._P)
        wrong = img[: self.g] if swap else img[self.g :]
        return float(np.max(np.abs(wrong)))
