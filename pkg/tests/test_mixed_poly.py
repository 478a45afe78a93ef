import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixedgsv.errors import DimensionError
from mixedgsv.expr_io import parse
from mixedgsv.mixed_poly import (MixedPolynomial, VectorField, conjugate, evaluate,
                                 evaluate_exact, grad_dbarf, grad_df, jet, nabla_g,
                                 nabla_h, real_imag_parts, to_complex, to_real,
                                 wirtinger_dz, wirtinger_dzbar)
from mixedgsv.sampling import random_points, random_poly
from oracles import fd_real_gradient, fd_wirtinger

THREE_VAR = "-z1*conj(z1)^4 + z2^4 + z3^4"


def test_evaluate_modulus_squared():
    assert evaluate(parse("z1*conj(z1)"), [3 + 4j]) == pytest.approx(25)


def test_evaluate_brieskorn_at_ones():
    assert evaluate(parse("z1^2 + z2^3"), [1, 1]) == pytest.approx(2)


def test_evaluate_three_var_point_is_zero():
    y = np.sqrt(131072 / 759375)
    assert abs(evaluate(parse(THREE_VAR), [128 / 225, y, y])) <= 1e-10


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionError):
        evaluate(parse("z1 + z2"), [1.0])


def test_evaluate_broadcasts_over_points(rng):
    f = random_poly(rng, 2, 6)
    z = random_points(rng, 2, 7)
    batch = evaluate(f, z)
    assert batch.shape == (7,)
    assert np.allclose(batch, [evaluate(f, zi) for zi in z], rtol=1e-14)


def test_canonical_form_merges_and_drops():
    f = MixedPolynomial(1, [(2, (1,), (0,)), (-2, (1,), (0,)), (1, (0,), (1,))])
    assert f.terms == ((1 + 0j, (0,), (1,)),)
    assert f == parse("conj(z1)")


def test_term_order_is_lexicographic():
    f = parse("z1 + z2 + conj(z1) + 1")
    keys = [mu + nu for _, mu, nu in f.terms]
    assert keys == sorted(keys)


def test_zero_polynomial_everywhere():
    zero = MixedPolynomial.zero(2)
    assert evaluate(zero, [1, 2]) == 0
    assert wirtinger_dz(MixedPolynomial.constant(3, 2), 1) == zero
    assert not zero


def test_nonfinite_coefficient_rejected():
    with pytest.raises(ValueError):
        MixedPolynomial(1, [(float("nan"), (1,), (0,))])


def test_conjugate_examples():
    assert conjugate(parse("z1")) == parse("conj(z1)")
    f = parse("(2+1i)*z1*conj(z2)^2")
    assert conjugate(f) == parse("(2-1i)*conj(z1)*z2^2")


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_conjugate_is_involution(seed):
    rng = np.random.default_rng(seed)
    f = random_poly(rng, int(rng.integers(1, 4)), int(rng.integers(0, 10)))
    assert conjugate(conjugate(f)) == f


def test_real_imag_parts_simple():
    g, h = real_imag_parts(parse("z1"))
    z = np.array([0.3 - 1.7j])
    assert evaluate(g, z) == pytest.approx(0.3)
    assert evaluate(h, z) == pytest.approx(-1.7)
    g, h = real_imag_parts(parse("z1*conj(z1)"))
    assert g == parse("z1*conj(z1)") and not h


def test_real_imag_parts_random(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, 8)
        g, h = real_imag_parts(f)
        assert conjugate(g) == g and conjugate(h) == h
        z = random_points(rng, n, 100)
        assert np.max(np.abs(evaluate(f, z) - (evaluate(g, z) + 1j * evaluate(h, z)))) <= 1e-12


def test_wirtinger_examples():
    assert wirtinger_dzbar(parse("z1*conj(z1)"), 1) == parse("z1")
    assert wirtinger_dzbar(parse(THREE_VAR), 1) == parse("-4*z1*conj(z1)^3", nvars=3)
    assert not wirtinger_dzbar(parse("z1^2"), 1)
    with pytest.raises(DimensionError):
        wirtinger_dz(parse("z1"), 2)


def test_grad_df_dbarf_examples(rng):
    f = parse("z1^2")
    assert np.allclose(grad_df(f, [1]), [2]) and np.allclose(grad_dbarf(f, [1]), [0])
    g = parse("z1*conj(z1) + z1^2*conj(z2) + z2*conj(z1)^2")  # real-valued
    z = random_points(rng, 2)[0]
    assert np.allclose(grad_dbarf(g, z), np.conj(grad_df(g, z)), atol=1e-13)


def test_wirtinger_matches_finite_differences(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, 8)
        for z in random_points(rng, n, 3):
            fd_dz, fd_dzbar = fd_wirtinger(lambda w: evaluate(f, w), z)
            scale = 1 + np.max(np.abs(fd_dz)) + np.max(np.abs(fd_dzbar))
            assert np.max(np.abs(grad_df(f, z) - fd_dz)) <= 1e-6 * scale
            assert np.max(np.abs(grad_dbarf(f, z) - fd_dzbar)) <= 1e-6 * scale


def test_nabla_g_three_var_closed_form(rng):
    f = parse(THREE_VAR)
    for z in random_points(rng, 3, 5):
        z1, z2, z3 = z
        expected = [-z1 ** 4 - 4 * z1 * np.conj(z1) ** 3, 4 * np.conj(z2) ** 3,
                    4 * np.conj(z3) ** 3]
        assert np.allclose(nabla_g(f, z), expected, rtol=1e-13)


def test_nabla_g_holomorphic_is_conj_df(rng):
    f = parse("z1^3 + 2*z1*z2 - z2^4")
    z = random_points(rng, 2)[0]
    assert np.allclose(nabla_g(f, z), np.conj(grad_df(f, z)), rtol=1e-14)


def test_nabla_matches_finite_differences(rng):
    for _ in range(20):
        n = int(rng.integers(1, 4))
        f = random_poly(rng, n, 8)
        g, h = real_imag_parts(f)
        for z in random_points(rng, n, 3):
            for grad, part in ((nabla_g(f, z), g), (nabla_h(f, z), h)):
                fd = fd_real_gradient(lambda w: evaluate(part, w).real, z)
                assert np.max(np.abs(grad - fd)) <= 1e-6 * (1 + np.max(np.abs(fd)))


def test_partials_identity(rng):
    f = random_poly(rng, 3, 10)
    fb = conjugate(f)
    z = random_points(rng, 3, 20)
    for j in (1, 2, 3):
        a = evaluate(wirtinger_dz(fb, j), z)
        b = np.conj(evaluate(wirtinger_dzbar(f, j), z))
        assert np.max(np.abs(a - b)) <= 1e-12 * (1 + np.max(np.abs(b)))


def test_df_from_g_and_h(rng):
    f = random_poly(rng, 2, 10)
    z = random_points(rng, 2, 20)
    _, df, dbf = jet(f, z)
    ng, nh = nabla_g(f, z), nabla_h(f, z)
    assert np.allclose(np.conj(df), 0.5 * (ng - 1j * nh), rtol=1e-12, atol=1e-13)
    assert np.allclose(dbf, 0.5 * (ng + 1j * nh), rtol=1e-12, atol=1e-13)


def test_leibniz_rule(rng):
    for _ in range(10):
        f, g = random_poly(rng, 2, 4, 3), random_poly(rng, 2, 4, 3)
        for j in (1, 2):
            for d in (wirtinger_dz, wirtinger_dzbar):
                lhs = d(f * g, j)
                rhs = d(f, j) * g + f * d(g, j)
                z = random_points(rng, 2, 5)
                assert np.allclose(evaluate(lhs, z), evaluate(rhs, z), rtol=1e-12, atol=1e-12)


def test_evaluation_is_linear(rng):
    f, g = random_poly(rng, 3, 6), random_poly(rng, 3, 6)
    z = random_points(rng, 3, 10)
    assert np.allclose(evaluate(f + g, z), evaluate(f, z) + evaluate(g, z), rtol=1e-13)


def test_power_matches_repeated_product(rng):
    f = random_poly(rng, 2, 3, 2)
    z = random_points(rng, 2, 5)
    assert np.allclose(evaluate(f ** 3, z), evaluate(f * f * f, z), rtol=1e-12)


def test_point_conversion_round_trip(rng):
    z = random_points(rng, 3, 4)
    x = to_real(z)
    assert x.shape == (4, 6)
    assert np.array_equal(x[:, 0], z[:, 0].real) and np.array_equal(x[:, 1], z[:, 0].imag)
    assert np.array_equal(to_complex(x), z)


def test_exact_mode_arithmetic():
    import sympy as sp

    f = parse("0.5*z1 + 0.25*conj(z1)", exact=True)
    assert f.exact
    assert f.terms[0][0] == sp.Rational(1, 4)
    assert evaluate_exact(f, [sp.Integer(4)]) == 3
    assert abs(evaluate(f, [4.0]) - 3) < 1e-15


def test_vector_field_call_and_validation(rng):
    field = VectorField([parse("z1", nvars=2), parse("2*z2", nvars=2)])
    z = random_points(rng, 2, 3)
    assert np.allclose(field(z), z * [1, 2])
    with pytest.raises(DimensionError):
        VectorField([parse("z1")] * 2)
