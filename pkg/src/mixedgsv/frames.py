"""Linear algebra of complex and real frames.

The Hermitian product is conjugate-linear in its second argument,
``<u, v> = Σ u_j conj(v_j)``, and its real part is the Euclidean product of
the realified vectors.  All functions accept single vectors of shape
``(n,)``; the products and :func:`det2` also broadcast over leading axes.
"""
from dataclasses import dataclass

import numpy as np

from .errors import CriticalPointError, DependentFrameError, DimensionError
from .mixed_poly import jet, to_real

DEFAULT_TOL = 1e-8


def _pair(u, v):
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape[-1:] != v.shape[-1:]:
        raise DimensionError(f"vector lengths differ: {u.shape[-1:]} vs {v.shape[-1:]}")
    return u, v


def hermitian(u, v):
    """``Σ u_j conj(v_j)`` along the last axis."""
    u, v = _pair(u, v)
    return np.sum(u * np.conj(v), axis=-1)[()]


def euclid(u, v):
    """Euclidean product of real vectors along the last axis."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1:] != v.shape[-1:]:
        raise DimensionError(f"vector lengths differ: {u.shape[-1:]} vs {v.shape[-1:]}")
    return np.sum(u * v, axis=-1)[()]


def norm(u):
    return np.sqrt(np.real(hermitian(u, u)))


def project_line(a, v):
    """Split ``a`` into its component ``u`` on the complex line of ``v`` and the rest.

    Returns
    -------
    u, w : ndarray
        ``u = (<a,v>/<v,v>) v`` and ``w = a - u``, so that ``<w, v> = 0``.
    """
    a, v = _pair(a, v)
    vv = np.real(hermitian(v, v))
    if vv == 0:
        raise ValueError("cannot project onto the line of the zero vector")
    u = (hermitian(a, v) / vv) * v
    return u, a - u


ZERO_COLUMN_RTOL = 1e-12


def _min_singular(columns):
    """Smallest singular value of the column-normalized matrix.

    A column counts as zero, and the result is 0, when its norm is at most
    ``ZERO_COLUMN_RTOL`` times the largest column norm; otherwise rounding
    noise in a vector that should vanish would be blown up to unit length.
    """
    columns = [np.asarray(c) for c in columns]
    norms = [np.linalg.norm(c) for c in columns]
    if min(norms) <= ZERO_COLUMN_RTOL * max(norms):
        return 0.0
    cols = [c / nc for c, nc in zip(columns, norms)]
    if len(cols[0]) < len(cols):
        # more columns than rows: always rank deficient
        return 0.0
    return float(np.linalg.svd(np.stack(cols, axis=-1), compute_uv=False)[-1])


def c_margin(u, v):
    """Normalized smallest singular value of the complex matrix ``(u v)``."""
    u, v = _pair(u, v)
    return _min_singular([u, v])


def r_margin(*vectors):
    """Normalized smallest singular value of the realified vectors as columns."""
    return _min_singular([to_real(np.asarray(x, dtype=complex)) for x in vectors])


def c_dependent(u, v, tol=DEFAULT_TOL):
    """Whether ``u`` and ``v`` are linearly dependent over C (zero counts as dependent)."""
    return c_margin(u, v) < tol


def r_dependent(*vectors, tol=DEFAULT_TOL):
    """Whether the vectors are linearly dependent over R after realification."""
    return r_margin(*vectors) < tol


def _check_not_critical(f, z, df, dbf):
    scale = max(1.0, float(np.linalg.norm(z)) ** max(f.degree - 1, 0))
    if np.linalg.norm(df) <= 1e-14 * scale and np.linalg.norm(dbf) <= 1e-14 * scale:
        raise CriticalPointError(f"df and d̄f both vanish at z = {np.asarray(z).tolist()}")


def oka_alpha(f, z, tol=DEFAULT_TOL):
    """Unit complex number α with ``conj(df(z)) = α d̄f(z)``, or None.

    Raises
    ------
    CriticalPointError
        When both df(z) and d̄f(z) vanish.
    """
    z = np.asarray(z, dtype=complex)
    _, df, dbf = jet(f, z)
    _check_not_critical(f, z, df, dbf)
    cdf = np.conj(df)
    if not c_dependent(cdf, dbf, tol):
        return None
    # one of the two vectors is (numerically) zero, so no unit α exists
    if np.linalg.norm(dbf) == 0 or np.linalg.norm(cdf) == 0:
        return None
    alpha = complex(hermitian(cdf, dbf) / np.real(hermitian(dbf, dbf)))
    if abs(abs(alpha) - 1.0) > tol:
        return None
    return alpha


def four_way_dependence(f, z, tol=DEFAULT_TOL):
    """Evaluate the four equivalent dependence conditions independently.

    Returns
    -------
    tuple of bool
        (1) {conj(df), d̄f} C-dependent; (2) {∇g, ∇h, i∇h} R-dependent;
        (3) {∇g, ∇h} C-dependent; (4) {∇h, ∇g, i∇g} R-dependent.
    """
    z = np.asarray(z, dtype=complex)
    _, df, dbf = jet(f, z)
    cdf = np.conj(df)
    ng, nh = cdf + dbf, 1j * cdf - 1j * dbf
    return (
        c_dependent(cdf, dbf, tol),
        r_dependent(ng, nh, 1j * nh, tol=tol),
        c_dependent(ng, nh, tol),
        r_dependent(nh, ng, 1j * ng, tol=tol),
    )


@dataclass(frozen=True)
class ComplexFrame2:
    """Ordered pair of complex n-vectors ``(v1, v2)``."""

    v1: np.ndarray
    v2: np.ndarray

    def gram(self):
        vs = (self.v1, self.v2)
        return np.array([[hermitian(a, b) for b in vs] for a in vs])

    def is_orthonormal(self, tol=1e-10):
        return bool(np.max(np.abs(self.gram() - np.eye(2))) <= tol)

    def swapped(self):
        return ComplexFrame2(self.v2, self.v1)


@dataclass(frozen=True)
class RealFrame:
    """Ordered real frame stored as the rows of ``vectors`` (shape ``(k, m)``)."""

    vectors: np.ndarray

    def gram(self):
        return self.vectors @ self.vectors.T

    def is_orthonormal(self, tol=1e-10):
        k = len(self.vectors)
        return bool(np.max(np.abs(self.gram() - np.eye(k))) <= tol)


@dataclass(frozen=True)
class RealFrame3(RealFrame):
    """Real 3-frame ``(u1, u2, u3)`` in R^{2n}."""

    @classmethod
    def from_vectors(cls, u1, u2, u3):
        return cls(np.stack([np.asarray(u, dtype=float) for u in (u1, u2, u3)]))

    @property
    def u1(self):
        return self.vectors[0]

    @property
    def u2(self):
        return self.vectors[1]

    @property
    def u3(self):
        return self.vectors[2]


def realify(fr):
    """The real 4-frame ``(v1, i v1, v2, i v2)`` of a complex 2-frame.

    The result carries an ``orthonormal`` verdict so that degenerate input
    (for instance a zero vector) is flagged rather than rejected.
    """
    rows = [to_real(fr.v1), to_real(1j * fr.v1), to_real(fr.v2), to_real(1j * fr.v2)]
    out = RealFrame(np.stack(rows))
    return out


def orthonormalize2(u, v, tol=DEFAULT_TOL):
    """Gram-Schmidt keeping the complex line of ``v``.

    The second vector of the result is exactly ``v/|v|``; the first is the
    normalized part of ``u`` Hermitian-orthogonal to ``v``.

    Raises
    ------
    DependentFrameError
        If ``u`` and ``v`` are C-dependent.
    """
    u, v = _pair(u, v)
    if c_dependent(u, v, tol):
        raise DependentFrameError("cannot orthonormalize a C-dependent pair")
    e2 = v / norm(v)
    w = u - hermitian(u, e2) * e2
    return ComplexFrame2(w / norm(w), e2)


def orthonormalize2_batch(u, v):
    """Vectorized :func:`orthonormalize2` over leading axes, without checks."""
    u, v = _pair(u, v)
    e2 = v / norm(v)[..., None]
    w = u - hermitian(u, e2)[..., None] * e2
    return w / norm(w)[..., None], e2


def det2(fr, v2=None):
    """Determinant of the 2x2 complex matrix with columns ``v1``, ``v2``.

    Accepts a :class:`ComplexFrame2` or two arrays of shape ``(..., 2)``.
    """
    v1 = fr.v1 if isinstance(fr, ComplexFrame2) else fr
    if isinstance(fr, ComplexFrame2):
        v2 = fr.v2
    v1, v2 = _pair(v1, v2)
    if v1.shape[-1] != 2:
        raise DimensionError("det2 is only defined for frames in C^2")
    return (v1[..., 0] * v2[..., 1] - v1[..., 1] * v2[..., 0])[()]
