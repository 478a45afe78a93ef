"""Points and loops on the link ``L_f = V_f ∩ S_ε``.

Everything here works on the real system

    F(x) = (g(x), h(x), |x|^2 - ε^2),   x ∈ R^{2n},

whose Jacobian has the realified gradients ∇g, ∇h and 2x as rows.  For
n = 2 the solution set is a union of closed curves, traced by a
predictor-corrector continuation.

Orientation
-----------
The unit tangent T of a link component is the generalized cross product of
the rows ∇g, ∇h, x, i.e. the vector with ``det[∇g, ∇h, x, T] > 0``.  This
orients V_f so that (∇g, ∇h, τ1, τ2) is positive, and orients each loop so
that (outward radial direction inside V_f, loop tangent) is positive.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import (ConvergenceError, DegenerateJacobianError, DimensionError,
                     NotOnVarietyError, TracingError, UnsupportedDimensionError)
from .frames import hermitian
from .mixed_poly import jet, to_complex, to_real

POINT_TOL = 1e-9
MARGIN_TOL = 1e-6


@dataclass
class LinkSample:
    """A closed, oriented polygonal loop on one component of the link.

    Attributes
    ----------
    points : ndarray, shape (m, n)
        Complex points in order; the loop closes from the last point back to
        the first, which is not repeated.
    epsilon : float
        Sphere radius.
    closed : bool
        True when closure was detected.
    orientation_sign : int
        Sign of ``det[∇g, ∇h, x, chord]`` along the loop (+1 for loops
        produced by :func:`trace_link`).
    diagnostics : dict
        Step size, step count, smallest Jacobian margin and seed.
    """

    points: np.ndarray
    epsilon: float
    closed: bool = True
    orientation_sign: int = 1
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    def reversed(self):
        pts = np.concatenate([self.points[:1], self.points[:0:-1]])
        return LinkSample(pts, self.epsilon, self.closed, -self.orientation_sign,
                          dict(self.diagnostics))

    def real_rows(self):
        """Points as rows ``[x1, y1, x2, y2]`` for export."""
        return to_real(self.points)

    def min_distance(self, z):
        return float(np.min(np.linalg.norm(self.points - np.asarray(z), axis=-1)))


@dataclass(frozen=True)
class TangencyDefect:
    """Tangent verdict: ``<conj(df), v> = c + di`` and ``<d̄f, v> = -c + di``.

    ``residual`` is the larger normalized real defect of ``<∇g, v>`` and
    ``<∇h, v>``; ``mirror_error`` measures how far ``<d̄f, v>`` is from
    ``-c + di`` relative to ``(|df| + |d̄f|) |v|``.
    """

    c: float
    d: float
    residual: float = 0.0
    mirror_error: float = 0.0

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotTangent:
    """Non-tangent verdict with the two normalized defect magnitudes."""

    defect_g: float
    defect_h: float

    def __bool__(self):
        return False


# -- the real link system -------------------------------------------------
def link_system(f, x, epsilon):
    """Residual ``F(x)`` and Jacobian ``DF(x)`` (rows ∇g, ∇h, 2x)."""
    z = to_complex(x)
    val, df, dbf = jet(f, z)
    cdf = np.conj(df)
    ng = to_real(cdf + dbf)
    nh = to_real(1j * cdf - 1j * dbf)
    F = np.array([val.real, val.imag, x @ x - epsilon ** 2])
    J = np.stack([ng, nh, 2 * x])
    return F, J


def jacobian_margin(J):
    """Smallest singular value of the row-normalized Jacobian."""
    norms = np.linalg.norm(J, axis=-1, keepdims=True)
    if np.any(norms == 0):
        return 0.0
    return float(np.linalg.svd(J / norms, compute_uv=False)[-1])


def cross4(r1, r2, r3):
    """Generalized cross product T with ``det[r1, r2, r3, T] = |T|^2``."""
    M = np.stack([r1, r2, r3])
    minors = np.stack([np.delete(M, i, axis=1) for i in range(4)])
    with np.errstate(divide="ignore", invalid="ignore"):
        dets = np.linalg.det(minors)
    return np.array([-1.0, 1.0, -1.0, 1.0]) * dets


def unit_tangent(J):
    """Oriented unit tangent to the link curve (n = 2) from its Jacobian."""
    t = cross4(J[0], J[1], J[2])
    nt = np.linalg.norm(t)
    if nt == 0:
        raise DegenerateJacobianError("Jacobian lost rank; the link curve is singular here")
    return t / nt


def _residual_ok(F, epsilon):
    return abs(F[0]) <= POINT_TOL and abs(F[1]) <= POINT_TOL and abs(F[2]) <= POINT_TOL


def find_link_point(f, epsilon, seed=0, max_iter=60, rng=None):
    """Newton-solve onto ``V_f ∩ S_ε`` from a seeded random point of the sphere.

    Uses minimum-norm Newton steps for the underdetermined system.

    Raises
    ------
    ConvergenceError
        If the iteration does not converge within ``max_iter`` steps.
    DegenerateJacobianError
        If the Jacobian loses rank at an iterate.
    """
    if f.nvars < 2:
        raise DimensionError("the link needs at least two variables")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    rng = np.random.default_rng(seed) if rng is None else rng
    x = rng.standard_normal(2 * f.nvars)
    x *= epsilon / np.linalg.norm(x)
    for _ in range(max_iter):
        F, J = link_system(f, x, epsilon)
        if _residual_ok(F, epsilon) and np.max(np.abs(F)) <= 1e-14 * max(1.0, epsilon ** 2):
            return to_complex(x)
        if jacobian_margin(J) < 1e-12:
            raise DegenerateJacobianError("Jacobian is rank deficient at a Newton iterate")
        dx = np.linalg.lstsq(J, -F, rcond=None)[0]
        x = x + dx
        if not np.all(np.isfinite(x)) or np.linalg.norm(x) > 1e3 * epsilon:
            break
        if np.linalg.norm(dx) <= 1e-15 * epsilon and _residual_ok(F, epsilon):
            return to_complex(x)
    F, _ = link_system(f, x, epsilon)
    if np.all(np.isfinite(F)) and _residual_ok(F, epsilon):
        return to_complex(x)
    raise ConvergenceError(
        f"Newton did not reach V_f ∩ S_ε (ε = {epsilon}); reseed or change ε")


def _correct(f, x_pred, direction, epsilon, max_iter=10):
    """Newton on F = 0 restricted to the hyperplane orthogonal to ``direction``."""
    x = x_pred.copy()
    for _ in range(max_iter):
        F, J = link_system(f, x, epsilon)
        G = np.append(F, direction @ (x - x_pred))
        A = np.vstack([J, direction])
        try:
            dx = np.linalg.solve(A, -G)
        except np.linalg.LinAlgError:
            return None
        x = x + dx
        if np.linalg.norm(dx) <= 1e-14 * epsilon:
            break
    F, J = link_system(f, x, epsilon)
    if not np.all(np.isfinite(F)) or np.max(np.abs(F)) > 1e-12 * max(1.0, epsilon ** 2):
        return None
    return x, J


def trace_link(f, epsilon, start, step=None, max_steps=200000, min_step=None):
    """Trace the link component through ``start`` (n = 2 only).

    Parameters
    ----------
    f : MixedPolynomial
    epsilon : float
    start : array_like, shape (2,)
        A point of ``V_f ∩ S_ε``.
    step : float, optional
        Nominal arc-length step, default ``1e-2 * epsilon``.  It is halved
        on corrector failure, down to ``min_step`` (default
        ``1e-5 * epsilon``), and grows back after successful steps.
    max_steps : int

    Returns
    -------
    LinkSample

    Raises
    ------
    TracingError
        If the loop does not close within ``max_steps`` or the step
        underflows.
    DegenerateJacobianError
        If the Jacobian margin drops below the validation threshold.
    """
    if f.nvars != 2:
        raise UnsupportedDimensionError("link tracing is only implemented for n = 2")
    step = 1e-2 * epsilon if step is None else float(step)
    min_step = 1e-5 * epsilon if min_step is None else float(min_step)
    x0 = to_real(np.asarray(start, dtype=complex))
    F, J = link_system(f, x0, epsilon)
    if not _residual_ok(F, epsilon):
        raise NotOnVarietyError("start point is not on V_f ∩ S_ε")
    margin = jacobian_margin(J)
    if margin < MARGIN_TOL:
        raise DegenerateJacobianError(
            f"Jacobian margin {margin:.2e} at start; try a smaller ε")
    t0 = unit_tangent(J)
    pts = [x0]
    x, t = x0, t0
    s = step
    arc = 0.0
    min_margin = margin
    halvings = 0
    for _ in range(max_steps):
        res = _correct(f, x + s * t, t, epsilon)
        ok = False
        if res is not None:
            x_new, J_new = res
            m_new = jacobian_margin(J_new)
            if m_new < MARGIN_TOL:
                raise DegenerateJacobianError(
                    f"Jacobian margin {m_new:.2e} along the loop; try a smaller ε")
            t_new = unit_tangent(J_new)
            chord = np.linalg.norm(x_new - x)
            ok = t_new @ t > 0.9 and chord <= 2 * s
        if not ok:
            s *= 0.5
            halvings += 1
            if s < min_step:
                raise TracingError(
                    f"step fell below {min_step:.2e} after repeated corrector failures")
            continue
        min_margin = min(min_margin, m_new)
        # closure: the new chord crosses the hyperplane through x0 normal to t0
        before = t0 @ (x - x0)
        after = t0 @ (x_new - x0)
        arc += chord
        if len(pts) > 3 and before < 0 <= after and t_new @ t0 > 0.9:
            lam = -before / (after - before)
            cross = x + lam * (x_new - x)
            if np.linalg.norm(cross - x0) <= step / 2:
                loop = to_complex(np.array(pts))
                return LinkSample(
                    loop, float(epsilon), True, orientation_sign(f, loop),
                    {"step": step, "steps": len(pts), "halvings": halvings,
                     "arc_length": arc, "min_margin": min_margin})
        pts.append(x_new)
        x, t = x_new, t_new
        s = min(step, 1.5 * s)
    raise TracingError(f"loop did not close within {max_steps} steps")


def orientation_sign(f, loop):
    """Majority sign of ``det[∇g, ∇h, x, chord]`` over the loop's chords."""
    pts = to_real(np.asarray(loop))
    chords = np.roll(pts, -1, axis=0) - pts
    _, df, dbf = jet(f, np.asarray(loop))
    cdf = np.conj(df)
    ng = to_real(cdf + dbf)
    nh = to_real(1j * cdf - 1j * dbf)
    with np.errstate(divide="ignore", invalid="ignore"):
        dets = np.linalg.det(np.stack([ng, nh, pts, chords], axis=1))
    return 1 if np.sum(np.sign(dets)) >= 0 else -1


def enumerate_components(f, epsilon, trials=24, step=None, seed=0, max_steps=200000):
    """Find and trace the link components reachable from ``trials`` random starts.

    A start point within ``3*step`` of an already traced loop is treated as
    lying on that loop.  Components are returned in the order first found,
    which is deterministic for a given seed.
    """
    if f.nvars != 2:
        raise UnsupportedDimensionError("link tracing is only implemented for n = 2")
    step = 1e-2 * epsilon if step is None else float(step)
    loops = []
    failures = 0
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        try:
            z = find_link_point(f, epsilon, rng=rng)
        except ConvergenceError:
            failures += 1
            continue
        if any(loop.min_distance(z) <= 3 * step for loop in loops):
            continue
        loop = trace_link(f, epsilon, z, step=step, max_steps=max_steps)
        loop.diagnostics["seed"] = [seed, k]
        loops.append(loop)
    if not loops:
        raise TracingError(f"no link point found in {trials} trials (ε = {epsilon})")
    return loops


# -- tangency ---------------------------------------------------------------
def _on_variety(f, z, tol):
    z = np.asarray(z, dtype=complex)
    val, df, dbf = jet(f, z)
    if abs(val) > tol:
        raise NotOnVarietyError(f"|f(z)| = {abs(val):.3e} exceeds {tol:.1e}")
    return z, df, dbf


def tangency(f, z, v, tol=1e-8, on_tol=POINT_TOL):
    """Decide whether the vector ``v`` is tangent to V_f at ``z``.

    Defects are normalized: ``|Re<∇g, v>| / (|∇g| |v|)`` and likewise for h.

    Returns
    -------
    TangencyDefect or NotTangent
    """
    z, df, dbf = _on_variety(f, z, on_tol)
    v = np.asarray(v, dtype=complex)
    cdf = np.conj(df)
    ng, nh = cdf + dbf, 1j * cdf - 1j * dbf
    nv = np.linalg.norm(v)
    if nv == 0:
        return TangencyDefect(0.0, 0.0)

    def defect(grad):
        ngr = np.linalg.norm(grad)
        return abs(np.real(hermitian(grad, v))) / (ngr * nv) if ngr else 0.0

    dg, dh = defect(ng), defect(nh)
    if max(dg, dh) > tol:
        return NotTangent(dg, dh)
    p1 = complex(hermitian(cdf, v))
    p2 = complex(hermitian(dbf, v))
    scale = (np.linalg.norm(df) + np.linalg.norm(dbf)) * nv
    mirror = abs(p2 - complex(-p1.real, p1.imag)) / scale if scale else 0.0
    return TangencyDefect(p1.real, p1.imag, max(dg, dh), mirror)


def is_complex_tangent(f, z, v, tol=1e-8, on_tol=POINT_TOL):
    """True iff both ``<conj(df), v>`` and ``<d̄f, v>`` vanish (so v and iv are tangent)."""
    z, df, dbf = _on_variety(f, z, on_tol)
    v = np.asarray(v, dtype=complex)
    scale = (np.linalg.norm(df) + np.linalg.norm(dbf)) * np.linalg.norm(v)
    if scale == 0:
        return True
    a = abs(hermitian(np.conj(df), v)) / scale
    b = abs(hermitian(dbf, v)) / scale
    return bool(max(a, b) <= tol)
