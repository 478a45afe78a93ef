"""Winding-number computation of the mixed GSV index for n = 2.

Along each traced link component we build an explicit field v⊥ that is
Hermitian-orthogonal to the tangent field v and frame homotopic to it:

1. At every loop point take the real orthonormal 2-frame
   A = (a1, a2) = Gram-Schmidt(∇g, ∇h) and the target B = (v̂, i v̂).
2. Interpolate H(t) = (h1, h2) from A to B: h1 is the great-circle arc
   from a1 to v̂ (always a quarter turn, since v is tangent), and h2 is
   the arc from a2 to i v̂ re-orthogonalized against h1.
3. Start with u = v̂ at t = 0 and, for each t on a grid, project u off
   H(t) and renormalize.  At t = 1 this gives v⊥.

The unitary frame (v⊥, v̂) lies in U(2), whose first homology is detected
by the determinant, so the index of the component is the winding number of
``det2(v⊥, v̂)`` around the loop.

The real GSV parity is computed by a separate route: the normal frame A is
contracted onto a fixed frame E = (e1, e2) through the same kind of path,
v̂ is carried along into the plane orthogonal to E, and the parity of its
winding in that plane is read off.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import (DependentFrameError, InconsistencyError, RefinementNeeded,
                     TransportError, UnsupportedDimensionError)
from .frames import det2, orthonormalize2_batch, r_margin
from .geometry import enumerate_components, trace_link
from .mixed_poly import jet, to_complex, to_real

ANTIPODAL_TOL = 1e-6
COLLAPSE_TOL = 1e-6
ROUNDING_TOL = 0.1


# -- small vectorized helpers on rows of real vectors -------------------------
def _dot(a, b):
    return np.sum(a * b, axis=-1, keepdims=True)


def _unit(a):
    n = np.linalg.norm(a, axis=-1, keepdims=True)
    return a / n, n[..., 0]


def _slerp(a, b, t):
    """Great-circle interpolation between unit rows ``a`` and ``b``."""
    cos = np.clip(_dot(a, b), -1.0, 1.0)
    theta = np.arccos(cos)
    sin = np.sin(theta)
    small = sin[..., 0] < 1e-12
    safe = np.where(small[..., None], 1.0, sin)
    out = (np.sin((1 - t) * theta) * a + np.sin(t * theta) * b) / safe
    lerp = (1 - t) * a + t * b
    out = np.where(small[..., None], lerp, out)
    return _unit(out)[0]


def t_grid(steps, schedule="uniform"):
    """Grid on [0, 1] with ``steps`` intervals, uniform or cosine-clustered."""
    k = np.arange(steps + 1) / steps
    if schedule == "uniform":
        return k
    if schedule == "cosine":
        return 0.5 * (1.0 - np.cos(np.pi * k))
    raise ValueError(f"unknown schedule {schedule!r}")


def _frame_path(a1, a2, b1, b2, t):
    """The interpolated 2-frame H(t) for all points; returns (h1, h2, gs_norm)."""
    h1 = _slerp(a1, b1, t)
    s2 = _slerp(a2, b2, t)
    r = s2 - _dot(s2, h1) * h1
    h2, gs_norm = _unit(r)
    return h1, h2, gs_norm


def _transport(u0, a1, a2, b1, b2, grid, keep=False):
    """Carry ``u0`` along the frame path by project-out-and-renormalize."""
    u = u0.copy()
    min_norm = np.inf
    min_gs = np.inf
    gram_dev = 0.0
    history = [(grid[0], a1, a2, u0.copy())] if keep else None
    for t in grid[1:]:
        h1, h2, gs = _frame_path(a1, a2, b1, b2, t)
        min_gs = min(min_gs, float(np.min(gs)))
        if min_gs < COLLAPSE_TOL:
            raise TransportError("interpolated frame degenerated (second vector collapsed)")
        u = u - _dot(u, h1) * h1 - _dot(u, h2) * h2
        u, nrm = _unit(u)
        min_norm = min(min_norm, float(np.min(nrm)))
        if min_norm < COLLAPSE_TOL:
            raise TransportError("transported vector collapsed; refine the t-grid")
        dev = np.max(np.abs(np.concatenate(
            [_dot(u, h1), _dot(u, h2), _dot(h1, h2),
             _dot(u, u) - 1, _dot(h2, h2) - 1, _dot(h1, h1) - 1], axis=-1)))
        gram_dev = max(gram_dev, float(dev))
        if keep:
            history.append((t, h1, h2, u.copy()))
    return u, {"min_transport_norm": min_norm, "min_gs_norm": min_gs,
               "max_gram_deviation": gram_dev}, history


def normal_frame(f, z):
    """Real orthonormal rows (a1, a2) from Gram-Schmidt on (∇g, ∇h) at points z."""
    _, df, dbf = jet(f, z)
    cdf = np.conj(df)
    ng = to_real(cdf + dbf)
    nh = to_real(1j * cdf - 1j * dbf)
    a1, n1 = _unit(ng)
    r = nh - _dot(nh, a1) * a1
    a2, n2 = _unit(r)
    if np.min(n1) == 0 or np.min(n2) < 1e-12 * np.max(n1):
        raise DependentFrameError("∇g and ∇h are R-dependent at a loop point")
    return a1, a2, ng, nh


def _field_values(v, z):
    vals = np.asarray(v(z), dtype=complex)
    if vals.shape != z.shape:
        raise ValueError(f"vector field returned shape {vals.shape}, expected {z.shape}")
    return vals


@dataclass
class FramePath:
    """Result of :func:`construct_vperp` along one loop.

    Attributes
    ----------
    points : ndarray (m, 2) complex
    v : ndarray (m, 2) complex
        Field values at the points.
    a1, a2 : ndarray (m, 4)
        Orthonormalized (∇g, ∇h), the frame H at t = 0.
    vperp : ndarray (m, 2) complex
        Transported vector at t = 1.
    grid : ndarray
        The t-grid used.
    history : list or None
        ``(t, h1, h2, u)`` per grid step when requested.
    diagnostics : dict
    """

    points: np.ndarray
    v: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    vperp: np.ndarray
    grid: np.ndarray
    history: list = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def v_hat(self):
        return self.v / np.linalg.norm(self.v, axis=-1, keepdims=True)

    def frame(self):
        """Unitary frame (v⊥, v̂) after a final Gram-Schmidt pass."""
        return orthonormalize2_batch(self.vperp, self.v)


def _check_field(f, z, vals, tol=1e-6):
    nv = np.linalg.norm(vals, axis=-1)
    if np.min(nv) == 0:
        raise ValueError("the vector field vanishes on the loop")
    a1, a2, ng, nh = normal_frame(f, z)
    vr = to_real(vals) / nv[:, None]
    defect = max(float(np.max(np.abs(_dot(vr, a1)))), float(np.max(np.abs(_dot(vr, a2)))))
    if defect > tol:
        raise ValueError(f"the vector field is not tangent to V_f on the loop "
                         f"(normalized defect {defect:.2e})")
    margin = min(r_margin(vals[k], to_complex(ng[k]), to_complex(nh[k]))
                 for k in range(0, len(z), max(1, len(z) // 64)))
    return a1, a2, vr, defect, margin


def construct_vperp(f, loop, v, t_steps=64, schedule="uniform", keep_path=False,
                    max_refine=4):
    """Build v⊥ along ``loop`` by frame interpolation and discrete transport.

    Parameters
    ----------
    f : MixedPolynomial
    loop : LinkSample or array of points
    v : callable
        Tangent vector field, mapping points ``(m, 2)`` to vectors ``(m, 2)``.
    t_steps : int
        Number of t-intervals.  It is doubled (up to ``max_refine`` times)
        if the transported vector collapses.
    schedule : {'uniform', 'cosine'}

    Raises
    ------
    TransportError
        When the interpolation passes through an antipodal configuration or
        the transport keeps collapsing after refinement.
    """
    z = np.asarray(getattr(loop, "points", loop), dtype=complex)
    if z.shape[-1] != 2:
        raise UnsupportedDimensionError("v⊥ construction is implemented for n = 2")
    vals = _field_values(v, z)
    a1, a2, b1, defect, margin = _check_field(f, z, vals)
    b2 = to_real(1j * to_complex(b1))
    angle2 = np.arccos(np.clip(_dot(a2, b2)[..., 0], -1, 1))
    if np.max(angle2) > np.pi - ANTIPODAL_TOL:
        raise TransportError("minimal rotation undefined: a2 is antipodal to i·v̂")
    steps = int(t_steps)
    for _ in range(max_refine + 1):
        grid = t_grid(steps, schedule)
        try:
            u, diag, hist = _transport(b1, a1, a2, b1, b2, grid, keep_path)
            break
        except TransportError:
            steps *= 2
    else:
        raise TransportError("transport failed after t-grid refinement")
    vperp = to_complex(u)
    diag.update({"t_steps": steps, "schedule": schedule, "tangency_defect": defect,
                 "min_frame_margin": margin,
                 "max_hermitian_defect": float(np.max(np.abs(
                     np.sum(vperp * np.conj(to_complex(b1)), axis=-1))))})
    return FramePath(z, vals, a1, a2, vperp, grid, hist, diag)


def winding(values, closed=True, return_raw=False):
    """Winding number of a closed sequence of nonzero complex numbers.

    Sums the principal-value phase increments, including the one from the
    last value back to the first, and divides by 2π.

    Raises
    ------
    RefinementNeeded
        If a phase increment reaches π/2 or the total is not within 0.1 of
        an integer.
    """
    if not closed:
        raise ValueError("winding numbers are only defined for closed loops")
    w = np.asarray(values, dtype=complex)
    if w.size == 0:
        raise ValueError("empty loop")
    if np.any(w == 0):
        raise ValueError("winding number undefined: a value is zero")
    inc = np.angle(np.roll(w, -1) / w)
    big = np.max(np.abs(inc))
    if big >= np.pi / 2:
        raise RefinementNeeded(f"phase jump of {big:.3f} rad between samples")
    raw = float(np.sum(inc) / (2 * np.pi))
    k = int(round(raw))
    if abs(raw - k) > ROUNDING_TOL:
        raise RefinementNeeded(f"winding {raw:.4f} is not close to an integer")
    return (k, raw) if return_raw else k


def vperp_winding(path, swap=False, return_raw=False):
    """Winding of ``det2(v⊥, v̂)`` (or of the swapped frame) along the loop."""
    e1, e2 = path.frame()
    d = det2(e2, e1) if swap else det2(e1, e2)
    return winding(d, return_raw=return_raw)


def direct_gsv_winding(f, loop, v, return_raw=False):
    """Winding of ``det2`` of the orthonormalized frame (∇g, v), with no transport."""
    z = np.asarray(getattr(loop, "points", loop), dtype=complex)
    vals = _field_values(v, z)
    _, df, dbf = jet(f, z)
    ng = np.conj(df) + dbf
    e1, e2 = orthonormalize2_batch(ng, vals)
    if not np.all(np.isfinite(e1)):
        raise DependentFrameError("∇g and v are C-dependent on the loop")
    return winding(det2(e1, e2), return_raw=return_raw)


# -- real GSV parity ---------------------------------------------------------
def _base_frame_candidates(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        out.append(q.T)  # rows e1..e4, orthonormal
    return out


def _contraction_margin(a1, a2, E, steps=16):
    ang1 = np.arccos(np.clip(a1 @ E[0], -1, 1))
    ang2 = np.arccos(np.clip(a2 @ E[1], -1, 1))
    margin = min(np.pi - np.max(ang1), np.pi - np.max(ang2))
    e1 = np.broadcast_to(E[0], a1.shape)
    e2 = np.broadcast_to(E[1], a2.shape)
    for t in np.linspace(0, 1, steps + 1)[1:-1]:
        _, _, gs = _frame_path(a1, a2, e1, e2, t)
        margin = min(margin, float(np.min(gs)))
    return margin


def component_parity(f, loop, v, t_steps=64, seed=0, candidates=32):
    """Winding parity of v transported into the plane orthogonal to a fixed frame.

    Returns ``(parity, diagnostics)``.
    """
    z = np.asarray(getattr(loop, "points", loop), dtype=complex)
    if z.shape[-1] != 2:
        raise UnsupportedDimensionError("the parity computation is implemented for n = 2")
    vals = _field_values(v, z)
    a1, a2, b1, _, _ = _check_field(f, z, vals)
    best, best_margin = None, -np.inf
    for E in _base_frame_candidates(candidates, seed):
        m = _contraction_margin(a1, a2, E)
        if m > best_margin:
            best, best_margin = E, m
    if best_margin < 1e-3:
        raise TransportError("no base frame gives a well-defined contraction")
    e1 = np.broadcast_to(best[0], a1.shape)
    e2 = np.broadcast_to(best[1], a2.shape)
    steps = int(t_steps)
    u, diag, _ = _transport(b1, a1, a2, e1, e2, t_grid(steps))
    w = u @ best[2] + 1j * (u @ best[3])
    k = winding(w)
    diag.update({"base_frame_margin": float(best_margin), "winding_in_base_plane": k})
    return k % 2, diag


# -- full pipeline -------------------------------------------------------------
@dataclass
class IndexReport:
    """Outcome of :func:`mixed_gsv_index`.

    Attributes
    ----------
    component_windings : list of int
        The multi-index, one winding per link component.
    total : int
        Mixed GSV index, the sum of the component windings.
    parity : int
        Real GSV index mod 2 computed by the independent contraction route.
    mod2_agreement : bool
        ``parity == total % 2``.
    independence_ok : bool or None
        Whether a refined, differently scheduled v⊥ gave the same windings.
    swap_ok : bool
        Whether the swapped frame (v̂, v⊥) gave the same windings.
    direct_windings : list of int or None
        Windings of the (∇g, v) frame without transport, where defined.
    diagnostics : dict
    """

    component_windings: list
    total: int
    parity: int
    mod2_agreement: bool
    independence_ok: object = None
    swap_ok: bool = True
    direct_windings: object = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "component_windings": list(self.component_windings),
            "total": self.total,
            "parity": self.parity,
            "mod2_agreement": self.mod2_agreement,
            "independence_ok": self.independence_ok,
            "swap_ok": self.swap_ok,
            "direct_windings": self.direct_windings,
            "diagnostics": self.diagnostics,
        }


def _component_windings(f, loop, v, t_steps, check_independence):
    path = construct_vperp(f, loop, v, t_steps=t_steps)
    k, raw = vperp_winding(path, return_raw=True)
    swapped = vperp_winding(path, swap=True)
    alt = None
    if check_independence:
        alt_path = construct_vperp(f, loop, v, t_steps=2 * t_steps, schedule="cosine")
        alt = vperp_winding(alt_path)
    try:
        direct = direct_gsv_winding(f, loop, v)
    except (DependentFrameError, RefinementNeeded):
        direct = None
    return k, raw, swapped, alt, direct, path.diagnostics


def _with_refinement(f, loop, epsilon, max_steps, refinements, compute):
    """Run ``compute(loop)``, re-tracing with half the step on RefinementNeeded."""
    for _ in range(refinements + 1):
        try:
            return compute(loop), loop
        except RefinementNeeded:
            step = loop.diagnostics.get("step", 1e-2 * epsilon) / 2
            seed = loop.diagnostics.get("seed")
            loop = trace_link(f, epsilon, loop.points[0], step=step, max_steps=max_steps)
            loop.diagnostics["seed"] = seed
    raise RefinementNeeded("winding still unresolved after step refinement")


def mixed_gsv_index(f, v, epsilon=0.5, t_steps=64, trials=24, step=None, seed=0,
                    max_steps=200000, check_independence=True, loops=None,
                    refinements=3):
    """Mixed GSV index of the tangent field ``v`` at the origin (n = 2).

    Parameters
    ----------
    f : MixedPolynomial
    v : callable
        Vector field tangent to V_f, e.g. :func:`mixedgsv.polar.radial_field`.
    epsilon : float
        Link radius.
    t_steps : int
        Resolution of the t-grid used for the v⊥ transport.
    trials, step, seed, max_steps :
        Passed to :func:`mixedgsv.geometry.enumerate_components`.
    check_independence : bool
        Recompute with a doubled, cosine-scheduled t-grid and require equal
        windings.
    loops : list of LinkSample, optional
        Precomputed link components.

    Raises
    ------
    UnsupportedDimensionError
        If ``f.nvars != 2``.
    InconsistencyError
        If the independence re-run disagrees.
    """
    if f.nvars != 2:
        raise UnsupportedDimensionError(
            "the winding-based index engine covers n = 2 only; for n >= 3 the "
            "degree lives in a higher homotopy group of the Stiefel manifold")
    if loops is None:
        loops = enumerate_components(f, epsilon, trials=trials, step=step, seed=seed,
                                     max_steps=max_steps)
    windings, swaps, alts, directs, comps = [], [], [], [], []
    parity = 0
    for loop in loops:
        (res, loop) = _with_refinement(
            f, loop, epsilon, max_steps, refinements,
            lambda L: _component_windings(f, L, v, t_steps, check_independence))
        k, raw, swapped, alt, direct, diag = res
        (par, pdiag), loop = _with_refinement(
            f, loop, epsilon, max_steps, refinements,
            lambda L: component_parity(f, L, v, t_steps=t_steps, seed=seed))
        windings.append(k)
        swaps.append(swapped)
        alts.append(alt)
        directs.append(direct)
        parity ^= par
        comps.append({
            "points": len(loop),
            "step": loop.diagnostics.get("step"),
            "seed": loop.diagnostics.get("seed"),
            "min_jacobian_margin": loop.diagnostics.get("min_margin"),
            "raw_winding": raw,
            "rounding_residual": abs(raw - k),
            "min_frame_margin": diag["min_frame_margin"],
            "max_gram_deviation": diag["max_gram_deviation"],
            "max_hermitian_defect": diag["max_hermitian_defect"],
            "parity_base_frame_margin": pdiag["base_frame_margin"],
        })
    total = int(sum(windings))
    independence_ok = None
    if check_independence:
        independence_ok = alts == windings
        if not independence_ok:
            raise InconsistencyError(
                f"v⊥ constructions disagree: {windings} vs {alts}; refine the step")
    report = IndexReport(
        component_windings=windings,
        total=total,
        parity=parity,
        mod2_agreement=parity == total % 2,
        independence_ok=independence_ok,
        swap_ok=swaps == windings,
        direct_windings=None if any(d is None for d in directs) else directs,
        diagnostics={"epsilon": float(epsilon), "seed": seed, "t_steps": t_steps,
                     "components": comps},
    )
    return report


def real_gsv_parity(f, v, epsilon=0.5, t_steps=64, trials=24, step=None, seed=0,
                    max_steps=200000, loops=None):
    """Real GSV index mod 2, summed over link components (n = 2)."""
    if f.nvars != 2:
        raise UnsupportedDimensionError("the parity computation covers n = 2 only")
    if loops is None:
        loops = enumerate_components(f, epsilon, trials=trials, step=step, seed=seed,
                                     max_steps=max_steps)
    parity = 0
    for loop in loops:
        (par, _), _ = _with_refinement(
            f, loop, epsilon, max_steps, 3,
            lambda L: component_parity(f, L, v, t_steps=t_steps, seed=seed))
        parity ^= par
    return parity
