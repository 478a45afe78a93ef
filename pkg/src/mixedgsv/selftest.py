"""Built-in consistency checks run by ``mixedgsv selftest``.

Each check returns ``(name, passed, detail)``.  Two of them are negative
controls: they only pass when the dependence/tangency tolerance is small
enough to tell a generic configuration from a degenerate one, so a
corrupted tolerance such as ``tol=10`` makes them fail.
"""
import numpy as np

from .expr_io import parse
from .frames import four_way_dependence, oka_alpha, r_dependent
from .geometry import find_link_point, tangency
from .homotopy_index import mixed_gsv_index
from .mixed_poly import (conjugate, jet, nabla_gh, wirtinger_dz, wirtinger_dzbar,
                         evaluate)
from .polar import angular_field, infer_weights, radial_field
from .sampling import (holomorphic_plus_conjugate, random_points, random_poly,
                       real_valued, rotated_real)


def check_wirtinger(rng, count=50):
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, int(rng.integers(1, 13)))
        fb = conjugate(f)
        z = random_points(rng, n, 5)
        _, df, dbf = jet(f, z)
        ng, nh = nabla_gh(f, z)
        scale = 1.0 + np.max(np.abs(df)) + np.max(np.abs(dbf))
        for j in range(1, n + 1):
            lhs = evaluate(wirtinger_dz(fb, j), z)
            rhs = np.conj(evaluate(wirtinger_dzbar(f, j), z))
            worst = max(worst, np.max(np.abs(lhs - rhs)) / scale)
        worst = max(worst, np.max(np.abs(np.conj(df) - 0.5 * (ng - 1j * nh))) / scale)
        worst = max(worst, np.max(np.abs(dbf - 0.5 * (ng + 1j * nh))) / scale)
    return "wirtinger identities", bool(worst <= 1e-12), f"max relative residual {worst:.2e}"


def _cases(rng, count):
    for _ in range(count):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, int(rng.integers(1, 8)))
        while f.degree == 0:
            f = random_poly(rng, n, int(rng.integers(1, 8)))
        yield f, random_points(rng, n)[0]
    base = parse("z1^2*conj(z2) + z2^3 - 2*z1*conj(z1)")
    phi = parse("z1^2 + z2^3")
    families = [real_valued(base), rotated_real(base, 0.7),
                holomorphic_plus_conjugate(phi, 2.0), phi]
    for f in families:
        for z in random_points(rng, f.nvars, 5):
            yield f, z


def check_oka(rng, tol, count=200):
    bad = 0
    total = 0
    for f, z in _cases(rng, count):
        ng, nh = nabla_gh(f, z)
        total += 1
        if (oka_alpha(f, z, tol) is not None) != r_dependent(ng, nh, tol=tol):
            bad += 1
    return "oka criterion", bad == 0, f"{total - bad}/{total} agree"


def check_four_way(rng, tol, count=200):
    bad = 0
    total = 0
    for f, z in _cases(rng, count):
        total += 1
        if len(set(four_way_dependence(f, z, tol))) != 1:
            bad += 1
    return "four-way dependence", bad == 0, f"{total - bad}/{total} agree"


POLAR_EXAMPLES = ["z1^2 + z2^3", "z1^2*conj(z1) + z2^3", "z1^3*conj(z2) + z2^2",
                  "z1*conj(z1)^2 + z2^2", "-z1*conj(z1)^4 + z2^4 + z3^4"]


def check_tangency(rng, tol, epsilon):
    worst = 0.0
    ok = True
    for text in POLAR_EXAMPLES:
        f = parse(text)
        w = infer_weights(f)
        z = find_link_point(f, epsilon, rng=rng)
        for field in (radial_field(w), angular_field(w)):
            verdict = tangency(f, z, field(z), tol=tol)
            ok &= bool(verdict)
            if verdict:
                worst = max(worst, verdict.residual)
    return "action fields tangent", ok, f"max normalized defect {worst:.2e}"


def check_negative_oka(rng, tol):
    f = parse("z1^2 + z2^3")
    z = random_points(rng, 2)[0]
    alpha = oka_alpha(f, z, tol)
    return ("negative control: holomorphic gradients independent", alpha is None,
            "alpha=None" if alpha is None else f"alpha={alpha:.3f}")


def check_negative_tangent(rng, tol, epsilon):
    f = parse("z1^2 + z2^3")
    z = find_link_point(f, epsilon, rng=rng)
    ng, _ = nabla_gh(f, z)
    verdict = tangency(f, z, ng, tol=tol)
    return ("negative control: gradient is not tangent", not verdict,
            type(verdict).__name__)


INDEX_ORACLES = [("z1", 1), ("z1^2 + z2^2", 0), ("z1^2 + z2^3", -1)]


def check_indices(epsilon, seed):
    details = []
    ok = True
    for text, expected in INDEX_ORACLES:
        f = parse(text, nvars=2)
        rep = mixed_gsv_index(f, radial_field(infer_weights(f)), epsilon, seed=seed)
        ok &= rep.total == expected and rep.mod2_agreement
        details.append(f"{text}: {rep.total}")
    return "index oracles", ok, "; ".join(details)


def check_seed_determinism(epsilon, seed):
    f = parse("z1^2 + z2^3")
    w = radial_field(infer_weights(f))
    totals = [mixed_gsv_index(f, w, epsilon, seed=seed + k).component_windings
              for k in range(5)]
    same = all(t == totals[0] for t in totals)
    return "seed variation x5", same, f"windings {totals[0]} for all seeds" if same else str(totals)


def run_selftest(tol=1e-8, seed=0, epsilon=0.5):
    rng = np.random.default_rng(seed)
    return [
        check_wirtinger(rng),
        check_oka(rng, tol),
        check_four_way(rng, tol),
        check_tangency(rng, tol, epsilon),
        check_negative_oka(rng, tol),
        check_negative_tangent(rng, tol, epsilon),
        check_indices(epsilon, seed),
        check_seed_determinism(epsilon, seed),
    ]
