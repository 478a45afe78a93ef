import numpy as np
import pytest
from scipy.linalg import null_space

from mixedgsv.errors import (ConvergenceError, NotOnVarietyError,
                             UnsupportedDimensionError)
from mixedgsv.expr_io import parse
from mixedgsv.frames import hermitian
from mixedgsv.geometry import (NotTangent, enumerate_components, find_link_point,
                               is_complex_tangent, link_system, tangency, trace_link,
                               unit_tangent)
from mixedgsv.mixed_poly import grad_dbarf, grad_df, nabla_g, nabla_h, to_complex, to_real
from mixedgsv.polar import infer_weights, radial_field

TREFOIL = parse("z1^2 + z2^3")


def _tangent_space(f, z):
    """Real basis of ker(∇g, ∇h) at z, as complex vectors."""
    rows = np.stack([to_real(nabla_g(f, z)), to_real(nabla_h(f, z))])
    return [to_complex(c) for c in null_space(rows).T]


def test_find_link_point_smooth_case():
    z = find_link_point(parse("z1", nvars=2), 1.0, seed=3)
    assert abs(z[0]) <= 1e-12 and abs(abs(z[1]) - 1) <= 1e-12


def test_find_link_point_trefoil_residuals():
    for seed in range(5):
        z = find_link_point(TREFOIL, 0.5, seed=seed)
        F, _ = link_system(TREFOIL, to_real(z), 0.5)
        assert np.max(np.abs(F)) <= 1e-9


def test_find_link_point_empty_variety():
    with pytest.raises(ConvergenceError):
        find_link_point(parse("z1*conj(z1) + 1", nvars=2), 0.5)


def test_trace_circle_step_count():
    eps, step = 0.5, 0.005
    f = parse("z1", nvars=2)
    loop = trace_link(f, eps, find_link_point(f, eps), step=step)
    assert loop.closed and abs(len(loop) - np.ceil(2 * np.pi * eps / step)) <= 2
    assert np.max(np.abs(loop.points[:, 0])) <= 1e-12


@pytest.fixture(scope="module")
def trefoil_loop():
    return trace_link(TREFOIL, 0.5, find_link_point(TREFOIL, 0.5))


def test_traced_points_satisfy_equations(trefoil_loop):
    for x in to_real(trefoil_loop.points):
        F, _ = link_system(TREFOIL, x, 0.5)
        assert np.max(np.abs(F)) <= 1e-9


def test_consecutive_points_and_closure(trefoil_loop):
    pts = trefoil_loop.points
    step = trefoil_loop.diagnostics["step"]
    gaps = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    assert np.max(gaps) <= 2 * step
    assert trefoil_loop.orientation_sign == 1
    assert trefoil_loop.diagnostics["min_margin"] > 1e-6


def test_chords_follow_the_tangent(trefoil_loop):
    x = to_real(trefoil_loop.points)
    step = trefoil_loop.diagnostics["step"]
    worst = 0.0
    for k in range(len(x) - 1):
        chord = (x[k + 1] - x[k]) / np.linalg.norm(x[k + 1] - x[k])
        t = unit_tangent(link_system(TREFOIL, x[k], 0.5)[1])
        worst = max(worst, np.arccos(min(1.0, chord @ t)))
    assert worst <= 10 * step


def test_reversed_loop_flips_orientation(trefoil_loop):
    rev = trefoil_loop.reversed()
    assert rev.orientation_sign == -1
    assert np.array_equal(rev.points[0], trefoil_loop.points[0])


@pytest.mark.parametrize("text, count", [("z1^2 + z2^3", 1), ("z1^2 + z2^2", 2), ("z1", 1)])
def test_component_counts(text, count):
    f = parse(text, nvars=2)
    assert len(enumerate_components(f, 0.5)) == count


def test_component_count_stable_under_step_halving():
    f = parse("z1^2 + z2^4")
    assert len(enumerate_components(f, 0.5, step=0.0025)) == 2


def test_enumeration_is_deterministic():
    f = parse("z1^3 + z2^3")
    a = enumerate_components(f, 0.5, seed=7)
    b = enumerate_components(f, 0.5, seed=7)
    assert all(np.array_equal(x.points, y.points) for x, y in zip(a, b))


def test_tracing_rejects_other_dimensions():
    with pytest.raises(UnsupportedDimensionError):
        trace_link(parse("z1 + z2 + z3"), 0.5, np.zeros(3))


def test_tangency_of_radial_field(trefoil_loop):
    v = radial_field(infer_weights(TREFOIL))
    for z in trefoil_loop.points[::100]:
        verdict = tangency(TREFOIL, z, v(z))
        assert verdict and verdict.residual <= 1e-8
        # holomorphic f: d̄f = 0 forces c = d = 0
        assert abs(verdict.c) <= 1e-12 and abs(verdict.d) <= 1e-12


def test_gradient_is_not_tangent(trefoil_loop):
    z = trefoil_loop.points[0]
    verdict = tangency(TREFOIL, z, nabla_g(TREFOIL, z))
    assert isinstance(verdict, NotTangent) and verdict.defect_g > 0.5


def test_tangency_requires_point_on_variety():
    with pytest.raises(NotOnVarietyError):
        tangency(TREFOIL, [0.3, 0.2], [1, 0])


def test_mixed_vf_equivalence(rng):
    f = parse("z1^2*conj(z1) + z2^3 + 0.5*z1*conj(z2)^2")
    for seed in range(5):
        z = find_link_point(f, 0.5, seed=seed)
        df, dbf = grad_df(f, z), grad_dbarf(f, z)
        basis = _tangent_space(f, z)
        v = sum(rng.standard_normal() * b for b in basis)
        verdict = tangency(f, z, v)
        assert verdict and verdict.mirror_error <= 1e-10
        # a vector with a normal component fails both (ii) and (iii)
        w = v + 0.3 * nabla_g(f, z)
        assert not tangency(f, z, w)
        p1, p2 = hermitian(np.conj(df), w), hermitian(dbf, w)
        assert abs(p2 - (-p1.real + 1j * p1.imag)) > 1e-3


def test_complex_tangent_cases():
    z = find_link_point(TREFOIL, 0.5, seed=1)
    for b in _tangent_space(TREFOIL, z):
        assert is_complex_tangent(TREFOIL, z, b)
    strong = parse("z1^2*conj(z2) + z2^2*conj(z1)")
    w = infer_weights(strong)
    z = find_link_point(strong, 0.5, seed=2)
    lam = 0.3 - 1.2j
    assert is_complex_tangent(strong, z, lam * radial_field(w)(z))
    g3 = parse("-z1*conj(z1)^4 + z2^4 + z3^4")
    z = find_link_point(g3, 0.5, seed=0)
    assert not is_complex_tangent(g3, z, radial_field(infer_weights(g3))(z))
