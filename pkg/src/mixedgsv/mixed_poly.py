"""Mixed polynomials in (z, z̄) and their Wirtinger calculus.

A mixed polynomial is stored as a canonical, immutable list of terms
``(c, mu, nu)`` standing for ``c * z**mu * conj(z)**nu``.  Terms are
sorted lexicographically on the concatenated exponent tuple ``mu + nu``
and no zero coefficient is kept, so two polynomials are equal exactly when
their term lists are equal.

Coefficients are Python complex numbers by default.  Passing
``exact=True`` stores them as sympy Gaussian rationals instead; this mode
is slow and meant for certifying values at special points.

Points of C^n are complex arrays of shape ``(..., n)``; their real
avatars interleave real and imaginary parts as ``(x1, y1, ..., xn, yn)``.
"""
from functools import cached_property
from numbers import Number

import numpy as np

from .errors import DimensionError

# relative threshold below which float coefficients are dropped
ZERO_RTOL = 1e-14


def _sympy():
    import sympy

    return sympy


def _to_exact(c):
    sp = _sympy()
    if isinstance(c, sp.Basic):
        return sp.expand(c)
    if isinstance(c, complex):
        return sp.Rational(repr(c.real)) + sp.I * sp.Rational(repr(c.imag))
    if isinstance(c, float):
        return sp.Rational(repr(c))
    return sp.expand(sp.sympify(c))


def _is_zero_exact(c):
    return c == 0


def _exact_to_complex(c):
    return complex(c.evalf(17)) if hasattr(c, "evalf") else complex(c)


class MixedPolynomial:
    """Canonical sum of monomials ``c * z^mu * conj(z)^nu`` in ``nvars`` variables.

    Parameters
    ----------
    nvars : int
        Number of complex variables n (at least 1).
    terms : iterable of (coefficient, mu, nu)
        Terms in any order; repeated exponent pairs are summed.
    exact : bool
        Store coefficients as exact sympy numbers.
    """

    __slots__ = ("nvars", "terms", "exact", "__dict__")

    def __init__(self, nvars, terms=(), exact=False):
        if int(nvars) < 1:
            raise DimensionError("a mixed polynomial needs at least one variable")
        self.nvars = int(nvars)
        self.exact = bool(exact)
        acc = {}
        for c, mu, nu in terms:
            mu = tuple(int(e) for e in mu)
            nu = tuple(int(e) for e in nu)
            if len(mu) != self.nvars or len(nu) != self.nvars:
                raise DimensionError(
                    f"exponent tuples must have length {self.nvars}")
            if min(mu + nu, default=0) < 0:
                raise ValueError("exponents must be non-negative")
            c = _to_exact(c) if self.exact else complex(c)
            if not self.exact and not (np.isfinite(c.real) and np.isfinite(c.imag)):
                raise ValueError("coefficients must be finite")
            key = (mu, nu)
            acc[key] = acc[key] + c if key in acc else c
        if self.exact:
            sp = _sympy()
            items = [(sp.expand(c), k) for k, c in acc.items()]
            items = [(c, k) for c, k in items if not _is_zero_exact(c)]
        else:
            items = [(c, k) for k, c in acc.items()]
            scale = max((abs(c) for c, _ in items), default=0.0)
            items = [(c, k) for c, k in items if abs(c) > ZERO_RTOL * scale]
        items.sort(key=lambda item: item[1][0] + item[1][1])
        self.terms = tuple((c, mu, nu) for c, (mu, nu) in items)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars, exact=False):
        return cls(nvars, (), exact=exact)

    @classmethod
    def constant(cls, value, nvars, exact=False):
        zeros = (0,) * nvars
        return cls(nvars, [(value, zeros, zeros)], exact=exact)

    @classmethod
    def variable(cls, j, nvars, conjugated=False, exact=False):
        """The coordinate ``z_j`` (1-based), or ``conj(z_j)``."""
        if not 1 <= j <= nvars:
            raise DimensionError(f"variable index {j} outside 1..{nvars}")
        e = tuple(1 if k == j - 1 else 0 for k in range(nvars))
        zeros = (0,) * nvars
        mu, nu = (zeros, e) if conjugated else (e, zeros)
        return cls(nvars, [(1, mu, nu)], exact=exact)

    # -- basic protocol -----------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        from .expr_io import format_poly

        return f"MixedPolynomial(nvars={self.nvars}, {format_poly(self)!r})"

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self):
        return max((sum(mu) + sum(nu) for _, mu, nu in self.terms), default=0)

    def is_holomorphic(self):
        return all(not any(nu) for _, _, nu in self.terms)

    def variables(self):
        """0-based indices of the variables that occur in some term."""
        used = set()
        for _, mu, nu in self.terms:
            used.update(j for j in range(self.nvars) if mu[j] or nu[j])
        return sorted(used)

    def with_nvars(self, nvars):
        """Re-embed into ``nvars`` variables (only widening is allowed)."""
        if nvars < self.nvars and any(j >= nvars for j in self.variables()):
            raise DimensionError("cannot drop a variable that occurs in the polynomial")
        pad = nvars - self.nvars
        if pad >= 0:
            fix = lambda e: e + (0,) * pad  # noqa: E731
        else:
            fix = lambda e: e[:nvars]  # noqa: E731
        return MixedPolynomial(
            nvars, [(c, fix(mu), fix(nu)) for c, mu, nu in self.terms], exact=self.exact)

    def to_float(self):
        if not self.exact:
            return self
        return MixedPolynomial(
            self.nvars, [(_exact_to_complex(c), mu, nu) for c, mu, nu in self.terms])

    def to_exact(self):
        if self.exact:
            return self
        return MixedPolynomial(self.nvars, self.terms, exact=True)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MixedPolynomial):
            if other.nvars != self.nvars:
                raise DimensionError("polynomials have different numbers of variables")
            return other
        if isinstance(other, Number) or hasattr(other, "is_number"):
            return MixedPolynomial.constant(other, self.nvars, exact=self.exact)
        return NotImplemented

    def _mode(self, other):
        return self.exact and other.exact

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MixedPolynomial(self.nvars, self.terms + other.terms, exact=self._mode(other))

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial(
            self.nvars, [(-c, mu, nu) for c, mu, nu in self.terms], exact=self.exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        exact = self._mode(other)
        acc = {}
        for c1, mu1, nu1 in self.terms:
            for c2, mu2, nu2 in other.terms:
                mu = tuple(a + b for a, b in zip(mu1, mu2))
                nu = tuple(a + b for a, b in zip(nu1, nu2))
                acc[(mu, nu)] = acc.get((mu, nu), 0) + c1 * c2
        return MixedPolynomial(
            self.nvars, [(c, mu, nu) for (mu, nu), c in acc.items()], exact=exact)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MixedPolynomial.constant(1, self.nvars, exact=self.exact)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- numeric caches -----------------------------------------------
    @cached_property
    def _arrays(self):
        coefs = np.array(
            [_exact_to_complex(c) if self.exact else c for c, _, _ in self.terms],
            dtype=complex)
        mu = np.array([t[1] for t in self.terms], dtype=int).reshape(-1, self.nvars)
        nu = np.array([t[2] for t in self.terms], dtype=int).reshape(-1, self.nvars)
        return coefs, mu, nu

    @cached_property
    def _jet_arrays(self):
        # f and all first Wirtinger derivatives share one monomial table
        polys = [self]
        polys += [wirtinger_dz(self, j) for j in range(1, self.nvars + 1)]
        polys += [wirtinger_dzbar(self, j) for j in range(1, self.nvars + 1)]
        index = {}
        for p in polys:
            for _, mu, nu in p.terms:
                index.setdefault((mu, nu), len(index))
        table = np.zeros((len(polys), max(len(index), 1)), dtype=complex)
        for row, p in enumerate(polys):
            coefs = p._arrays[0]
            for (_, mu, nu), c in zip(p.terms, coefs):
                table[row, index[(mu, nu)]] = c
        keys = list(index) or [((0,) * self.nvars, (0,) * self.nvars)]
        mu = np.array([k[0] for k in keys], dtype=int)
        nu = np.array([k[1] for k in keys], dtype=int)
        return table, mu, nu


def _check_point(f, z):
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != f.nvars:
        raise DimensionError(
            f"expected points with {f.nvars} coordinates, got shape {z.shape}")
    return z


def _monomials(z, mu, nu):
    zz = z[..., None, :]
    return np.prod(zz ** mu * np.conj(zz) ** nu, axis=-1)


def evaluate(f, z):
    """Value of ``f`` at one point or a stack of points of shape ``(..., n)``."""
    z = _check_point(f, z)
    coefs, mu, nu = f._arrays
    if coefs.size == 0:
        return np.zeros(z.shape[:-1], dtype=complex)[()]
    return (_monomials(z, mu, nu) @ coefs)[()]


def evaluate_exact(f, z):
    """Exact value at a point given by sympy numbers (e.g. rationals and roots).

    Returns a simplified sympy expression.
    """
    sp = _sympy()
    if len(z) != f.nvars:
        raise DimensionError(f"expected {f.nvars} coordinates, got {len(z)}")
    zs = [sp.sympify(x) for x in z]
    zb = [sp.conjugate(x) for x in zs]
    total = sp.Integer(0)
    for c, mu, nu in f.exact and f.terms or f.to_exact().terms:
        m = c
        for j in range(f.nvars):
            m = m * zs[j] ** mu[j] * zb[j] ** nu[j]
        total += m
    return sp.simplify(sp.expand(total))


def conjugate(f):
    """The polynomial f̄: each term (c, mu, nu) becomes (c̄, nu, mu)."""
    if f.exact:
        sp = _sympy()
        terms = [(sp.conjugate(c), nu, mu) for c, mu, nu in f.terms]
    else:
        terms = [(c.conjugate(), nu, mu) for c, mu, nu in f.terms]
    return MixedPolynomial(f.nvars, terms, exact=f.exact)


def real_imag_parts(f):
    """Return ``(g, h)`` with ``f = g + i h`` and g, h real-valued.

    g = (f + f̄)/2 and h = (f - f̄)/(2i), both again mixed polynomials.
    """
    fb = conjugate(f)
    if f.exact:
        sp = _sympy()
        half, half_over_i = sp.Rational(1, 2), -sp.I / 2
    else:
        half, half_over_i = 0.5, -0.5j
    return (f + fb) * half, (f - fb) * half_over_i


def _derivative(f, j, slot):
    if not 1 <= j <= f.nvars:
        raise DimensionError(f"variable index {j} outside 1..{f.nvars}")
    k = j - 1
    terms = []
    for c, mu, nu in f.terms:
        e = (mu, nu)[slot]
        if e[k] == 0:
            continue
        lowered = e[:k] + (e[k] - 1,) + e[k + 1:]
        new = (lowered, nu) if slot == 0 else (mu, lowered)
        terms.append((c * e[k], *new))
    return MixedPolynomial(f.nvars, terms, exact=f.exact)


def wirtinger_dz(f, j):
    """Formal derivative ∂f/∂z_j (1-based j)."""
    return _derivative(f, j, 0)


def wirtinger_dzbar(f, j):
    """Formal derivative ∂f/∂z̄_j (1-based j)."""
    return _derivative(f, j, 1)


def jet(f, z):
    """Evaluate ``(f(z), df(z), d̄f(z))`` in one pass.

    ``df`` and ``d̄f`` have the shape of ``z``.
    """
    z = _check_point(f, z)
    table, mu, nu = f._jet_arrays
    vals = _monomials(z, mu, nu) @ table.T
    n = f.nvars
    return vals[..., 0], vals[..., 1:n + 1], vals[..., n + 1:]


def grad_df(f, z):
    """The vector df(z) = (∂f/∂z_1, ..., ∂f/∂z_n)."""
    return jet(f, z)[1]


def grad_dbarf(f, z):
    """The vector d̄f(z) = (∂f/∂z̄_1, ..., ∂f/∂z̄_n)."""
    return jet(f, z)[2]


def nabla_gh(f, z):
    """Complex avatars of the real gradients of g = Re f and h = Im f."""
    _, df, dbf = jet(f, z)
    cdf = np.conj(df)
    return cdf + dbf, 1j * cdf - 1j * dbf


def nabla_g(f, z):
    """∇g(z) = conj(df(z)) + d̄f(z)."""
    return nabla_gh(f, z)[0]


def nabla_h(f, z):
    """∇h(z) = i conj(df(z)) - i d̄f(z)."""
    return nabla_gh(f, z)[1]


def to_real(z):
    """PointC -> PointR, interleaving as (x1, y1, ..., xn, yn)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def to_complex(x):
    """PointR -> PointC, inverse of :func:`to_real`."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] % 2:
        raise DimensionError("real points need an even number of coordinates")
    return x[..., 0::2] + 1j * x[..., 1::2]


class VectorField:
    """Polynomial vector field with one mixed polynomial per coordinate.

    Calling the field on points of shape ``(..., n)`` returns vectors of the
    same shape.
    """

    def __init__(self, components, name=None):
        components = tuple(components)
        if not components:
            raise DimensionError("a vector field needs at least one component")
        n = components[0].nvars
        if len(components) != n or any(c.nvars != n for c in components):
            raise DimensionError(
                "a vector field on C^n needs n components in n variables")
        self.components = components
        self.nvars = n
        self.name = name

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.stack([evaluate(c, z) for c in self.components], axis=-1)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        from .expr_io import format_field

        label = f"{self.name}: " if self.name else ""
        return f"VectorField({label}{format_field(self)!r})"
