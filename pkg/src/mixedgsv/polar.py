"""Polar weighted-homogeneous structure of mixed polynomials.

A mixed polynomial f is polar weighted homogeneous when there are integer
weights with

    f(t^{p_1} τ^{q_1} z_1, ..., t^{p_n} τ^{q_n} z_n) = t^a τ^c f(z)

for all t > 0 and |τ| = 1.  On the monomial support this is the pair of
linear systems ``Σ p_j (μ_j + ν_j) = a`` and ``Σ q_j (μ_j - ν_j) = c``,
which are solved here exactly over the rationals.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

from .errors import DimensionError
from .mixed_poly import MixedPolynomial, VectorField, evaluate


@dataclass(frozen=True)
class PolarWeights:
    """Radial weights ``p``, angular weights ``q`` and degrees ``a``, ``c``.

    ``defaulted`` lists the 0-based variables that do not occur in f and
    were given the conventional weights ``p_j = q_j = 1``.
    """

    p: tuple
    q: tuple
    a: int
    c: int
    defaulted: tuple = field(default=())

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise DimensionError("p and q must have the same length")
        if any(x <= 0 for x in self.p) or self.a <= 0 or self.c <= 0:
            raise ValueError("radial weights and both degrees must be positive")
        if any(x == 0 for x in self.q):
            raise ValueError("angular weights must be nonzero")

    @property
    def nvars(self):
        return len(self.p)

    def to_dict(self):
        return {"p": list(self.p), "q": list(self.q), "a": self.a, "c": self.c,
                "defaulted_variables": [j + 1 for j in self.defaulted]}


@dataclass(frozen=True)
class NotPolar:
    """Negative outcome of :func:`infer_weights`, with the failed constraint."""

    reason: str

    def __bool__(self):
        return False

    def to_dict(self):
        return {"polar": False, "reason": self.reason}


def _primitive(values):
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(int(v.p), int(v.q)) for v in values]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    return [x // g for x in ints] if g else ints


def _solve_weights(f, used, signed):
    """One-dimensional kernel of the weight system, as a primitive integer vector.

    Returns ``(weights, degree)`` or a string describing the failure.
    """
    import sympy as sp

    rows = []
    for _, mu, nu in f.terms:
        coeffs = [(mu[j] - nu[j]) if signed else (mu[j] + nu[j]) for j in used]
        rows.append(coeffs + [-1])
    kernel = sp.Matrix(rows).nullspace()
    name = "angular" if signed else "radial"
    if not kernel:
        return f"the {name} system has only the zero solution"
    if len(kernel) > 1:
        return f"the {name} weights are not determined by the support"
    vec = _primitive(list(kernel[0]))
    weights, degree = vec[:-1], vec[-1]
    if degree < 0:
        weights, degree = [-w for w in weights], -degree
    if degree == 0:
        label = "angular degree c" if signed else "radial degree a"
        return f"{label} would be zero"
    if signed:
        for j, w in zip(used, weights):
            if w == 0:
                return f"angular weight q_{j + 1} would be zero"
    else:
        for j, w in zip(used, weights):
            if w <= 0:
                return f"radial weight p_{j + 1} would not be positive"
    # make the weights on the occurring variables coprime
    g = reduce(gcd, weights, 0)
    if g > 1 and degree % g == 0:
        weights, degree = [w // g for w in weights], degree // g
    return weights, degree


def infer_weights(f):
    """Solve for polar weights of ``f`` from its monomial support.

    Returns
    -------
    PolarWeights or NotPolar
        Weights are coprime integers with ``p > 0``, ``a > 0`` and
        ``c > 0``.  The angular solution is only fixed up to sign, and the
        sign giving ``c > 0`` is chosen.  Variables absent from f get
        ``p_j = q_j = 1``.

    Raises
    ------
    ValueError
        If ``f`` is the zero polynomial.
    """
    if not f.terms:
        raise ValueError("the zero polynomial has no polar weights")
    used = f.variables()
    if not used:
        return NotPolar("f is a nonzero constant, so the radial degree a would be zero")
    radial = _solve_weights(f, used, signed=False)
    if isinstance(radial, str):
        return NotPolar(radial)
    angular = _solve_weights(f, used, signed=True)
    if isinstance(angular, str):
        return NotPolar(angular)
    p = [1] * f.nvars
    q = [1] * f.nvars
    for j, pj, qj in zip(used, radial[0], angular[0]):
        p[j], q[j] = pj, qj
    defaulted = tuple(j for j in range(f.nvars) if j not in used)
    return PolarWeights(tuple(p), tuple(q), radial[1], angular[1], defaulted)


def act(w, z, t, tau):
    """The action ``t τ • z = (t^{p_j} τ^{q_j} z_j)_j``."""
    z = np.asarray(z, dtype=complex)
    p = np.asarray(w.p, dtype=float)
    q = np.asarray(w.q, dtype=float)
    t = np.asarray(t, dtype=float)[..., None]
    tau = np.asarray(tau, dtype=complex)[..., None]
    return t ** p * tau ** q * z


def verify_polar(f, w, trials=100, seed=0, t=None, tau=None):
    """Largest defect of the functional equation over random samples.

    Points are drawn from the unit polydisc, ``t`` from ``[0.5, 2]`` and
    ``τ`` from the unit circle.  Each defect is measured after dividing by
    ``t^a``, i.e. as ``|f(tτ•z)/t^a - τ^c f(z)|``, so that round-off does not
    grow with the radial degree.  Passing ``t`` and ``tau`` fixes them.
    """
    if w.nvars != f.nvars:
        raise DimensionError(f"weights for {w.nvars} variables, f has {f.nvars}")
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0, 1, (trials, f.nvars)))
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, (trials, f.nvars)))
    ts = rng.uniform(0.5, 2.0, trials) if t is None else np.full(trials, float(t))
    taus = (np.exp(2j * np.pi * rng.uniform(0, 1, trials)) if tau is None
            else np.full(trials, complex(tau)))
    lhs = evaluate(f, act(w, z, ts, taus)) / ts ** w.a
    rhs = taus ** w.c * evaluate(f, z)
    return float(np.max(np.abs(lhs - rhs)))


def _diagonal_field(coeffs, name):
    n = len(coeffs)
    comps = []
    for j, cj in enumerate(coeffs):
        e = tuple(1 if k == j else 0 for k in range(n))
        comps.append(MixedPolynomial(n, [(cj, e, (0,) * n)]))
    return VectorField(comps, name=name)


def radial_field(w):
    """v_R+(z) = (p_1 z_1, ..., p_n z_n), the derivative of the action in t."""
    return _diagonal_field(list(w.p), "radial")


def angular_field(w):
    """v_S1(z) = (i q_1 z_1, ..., i q_n z_n), the derivative of the action in τ."""
    return _diagonal_field([1j * qj for qj in w.q], "angular")


def is_strongly_polar(w):
    """True when the radial and angular weights coincide."""
    return tuple(w.p) == tuple(w.q)


def milnor_number_oracle(w):
    """Closed-form Milnor number ``Π (a/p_j - 1)`` of a weighted homogeneous germ.

    Only meaningful for holomorphic weighted homogeneous f with an isolated
    critical point; the caller is responsible for that.

    Raises
    ------
    ValueError
        If the product is not a non-negative integer.
    """
    mu = Fraction(1)
    for pj in w.p:
        mu *= Fraction(w.a, pj) - 1
    if mu.denominator != 1 or mu < 0:
        raise ValueError(f"Π(a/p_j - 1) = {mu} is not a non-negative integer")
    return int(mu)
