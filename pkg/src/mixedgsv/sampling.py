"""Seeded generators of random polynomials, points and degenerate families."""
import numpy as np

from .mixed_poly import MixedPolynomial


def random_poly(rng, nvars, nterms, max_degree=4, holomorphic=False):
    """Random mixed polynomial with at most ``nterms`` terms of total degree <= ``max_degree``."""
    terms = []
    for _ in range(nterms):
        deg = int(rng.integers(0, max_degree + 1))
        # split the degree among the 2n exponent slots
        slots = nvars if holomorphic else 2 * nvars
        cuts = np.sort(rng.integers(0, deg + 1, slots - 1))
        exps = np.diff(np.concatenate([[0], cuts, [deg]]))
        mu = tuple(int(e) for e in exps[:nvars])
        nu = (0,) * nvars if holomorphic else tuple(int(e) for e in exps[nvars:])
        c = complex(rng.standard_normal(), rng.standard_normal())
        terms.append((c, mu, nu))
    return MixedPolynomial(nvars, terms)


def random_points(rng, nvars, count=1, scale=1.0):
    """Complex Gaussian points of shape ``(count, nvars)``."""
    return scale * (rng.standard_normal((count, nvars))
                    + 1j * rng.standard_normal((count, nvars))) / np.sqrt(2)


def real_valued(f):
    """``f + conj(f)``: a real-valued mixed polynomial (Oka's α equals 1)."""
    from .mixed_poly import conjugate

    return f + conjugate(f)


def rotated_real(f, theta):
    """``e^{iθ}(f + conj(f))``: gradients dependent with α = e^{-2iθ}."""
    return real_valued(f) * complex(np.cos(theta), np.sin(theta))


def holomorphic_plus_conjugate(phi, lam):
    """``φ + λ conj(φ)`` for holomorphic φ: dependent everywhere, with |α| = 1/|λ|."""
    from .mixed_poly import conjugate

    return phi + conjugate(phi) * lam
