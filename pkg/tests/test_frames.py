import numpy as np
import pytest

from mixedgsv.errors import CriticalPointError, DependentFrameError, DimensionError
from mixedgsv.expr_io import parse
from mixedgsv.frames import (ComplexFrame2, RealFrame3, c_dependent, c_margin, det2,
                             euclid, four_way_dependence, hermitian, oka_alpha,
                             orthonormalize2, project_line, r_dependent, realify)
from mixedgsv.mixed_poly import nabla_g, nabla_h, to_real
from mixedgsv.sampling import (holomorphic_plus_conjugate, random_points, random_poly,
                               rotated_real)

E1, E2 = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)


def _unitary(rng, n=2):
    q, _ = np.linalg.qr(random_points(rng, n, n))
    return q


def test_hermitian_convention():
    assert hermitian(E1, E1) == 1
    assert hermitian(E1, 1j * E1) == -1j
    assert hermitian(2j * E1, E1) == 2j
    assert euclid(to_real(E1), to_real(1j * E1)) == 0


def test_euclid_is_real_part(rng):
    u, v = random_points(rng, 3, 2)
    assert abs(euclid(to_real(u), to_real(v)) - hermitian(u, v).real) <= 1e-12
    with pytest.raises(DimensionError):
        hermitian(u, v[:2])


def test_project_line_examples(rng):
    v = random_points(rng, 2)[0]
    u, w = project_line(v, v)
    assert np.allclose(u, v) and np.allclose(w, 0)
    a = np.array([-np.conj(v[1]), np.conj(v[0])])  # Hermitian-orthogonal to v
    u, w = project_line(a, v)
    assert np.allclose(u, 0, atol=1e-15) and np.allclose(w, a)
    with pytest.raises(ValueError):
        project_line(a, np.zeros(2))


def test_project_line_properties(rng):
    for _ in range(50):
        a, v = random_points(rng, 3, 2)
        u, w = project_line(a, v)
        assert abs(hermitian(w, v)) <= 1e-12 * np.linalg.norm(a) * np.linalg.norm(v)
        assert np.max(np.abs(u + w - a)) <= 1e-14 * np.linalg.norm(a)


def test_c_dependent_examples():
    assert not c_dependent(E1, E2)
    assert c_dependent(E1, (1 + 1j) * E1)
    assert c_dependent(E1, np.zeros(2))


def test_oka_alpha_examples(rng):
    z = random_points(rng, 2)[0]
    assert oka_alpha(parse("z1^2 + z2^3"), z) is None
    alpha = oka_alpha(parse("z1*conj(z1)"), [0.3 + 0.1j])
    assert alpha == pytest.approx(1)
    with pytest.raises(CriticalPointError):
        oka_alpha(parse("z1^2 + z2^3"), [0, 0])


def test_oka_alpha_rotated_real_family(rng):
    theta = 0.9
    f = rotated_real(random_poly(rng, 2, 5), theta)
    z = random_points(rng, 2)[0]
    assert oka_alpha(f, z) == pytest.approx(np.exp(-2j * theta))


def test_oka_alpha_non_unit_proportionality(rng):
    f = holomorphic_plus_conjugate(parse("z1^2 + z2^3"), 2.0)
    z = random_points(rng, 2)[0]
    assert oka_alpha(f, z) is None
    assert all(four_way_dependence(f, z))


def test_oka_agrees_with_real_rank(rng):
    for _ in range(200):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, int(rng.integers(2, 8)))
        if f.degree == 0:
            continue
        z = random_points(rng, n)[0]
        dependent = r_dependent(nabla_g(f, z), nabla_h(f, z))
        assert (oka_alpha(f, z) is not None) == dependent


def test_four_way_examples(rng):
    z = random_points(rng, 2)[0]
    # d̄f = 0 makes {conj(df), d̄f} dependent, hence all four conditions hold
    assert four_way_dependence(parse("z1^2 + z2^3"), z) == (True,) * 4
    assert four_way_dependence(parse("z1*conj(z1)", nvars=2), z) == (True,) * 4
    generic = parse("z1^2*conj(z2) + z2^3 - 2*z1*conj(z1)")
    assert four_way_dependence(generic, z) == (False,) * 4


def test_four_way_three_var(rng):
    f = parse("-z1*conj(z1)^4 + z2^4 + z3^4")
    for z in random_points(rng, 3, 50):
        assert len(set(four_way_dependence(f, z))) == 1


def test_realify_orthonormal(rng):
    fr = realify(ComplexFrame2(E1, E2))
    assert np.array_equal(fr.vectors, np.eye(4)[[0, 1, 2, 3]])
    U = _unitary(rng)
    fr = realify(ComplexFrame2(U[:, 0], U[:, 1]))
    assert np.max(np.abs(fr.gram() - np.eye(4))) <= 1e-12
    assert not realify(ComplexFrame2(E1, np.zeros(2))).is_orthonormal()


def test_realify_preserves_gram(rng):
    u, v = random_points(rng, 3, 2)
    G = realify(ComplexFrame2(u, v)).gram()
    assert G[0, 2] == pytest.approx(hermitian(u, v).real)
    assert G[0, 3] == pytest.approx(hermitian(u, 1j * v).real)


def test_orthonormalize2(rng):
    U = _unitary(rng)
    fr = orthonormalize2(U[:, 0], U[:, 1])
    assert np.allclose(fr.v1, U[:, 0], atol=1e-12) and np.allclose(fr.v2, U[:, 1], atol=1e-12)
    fr = orthonormalize2(E1 + E2, E2)
    assert np.allclose(fr.v1, E1) and np.array_equal(fr.v2, E2)
    with pytest.raises(DependentFrameError):
        orthonormalize2(E1, 2j * E1)
    u, v = random_points(rng, 3, 2)
    fr = orthonormalize2(u, v)
    assert fr.is_orthonormal()
    assert np.allclose(fr.v2, v / np.linalg.norm(v), rtol=0, atol=1e-15)


def test_det2_examples():
    assert det2(ComplexFrame2(E1, E2)) == 1
    theta = 0.4
    assert det2(ComplexFrame2(np.exp(1j * theta) * E1, E2)) == pytest.approx(np.exp(1j * theta))
    fr = ComplexFrame2(E1 + 2j * E2, E2 - E1)
    assert det2(fr.swapped()) == -det2(fr)
    with pytest.raises(DimensionError):
        det2(np.ones(3), np.ones(3))


def test_det2_unitary_modulus(rng):
    U = _unitary(rng)
    assert abs(det2(U[:, 0], U[:, 1])) == pytest.approx(1)


def test_real_frame3():
    fr = RealFrame3.from_vectors(*np.eye(4)[:3])
    assert fr.is_orthonormal() and np.array_equal(fr.u3, np.eye(4)[2])


def test_c_margin_scale_invariant(rng):
    u, v = random_points(rng, 2, 2)
    assert c_margin(u, v) == pytest.approx(c_margin(1e-6 * u, 1e4 * v))
