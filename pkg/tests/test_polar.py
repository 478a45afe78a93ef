from math import gcd
from functools import reduce

import numpy as np
import pytest

from mixedgsv.errors import DimensionError
from mixedgsv.expr_io import parse
from mixedgsv.geometry import find_link_point, tangency
from mixedgsv.polar import (NotPolar, PolarWeights, angular_field, infer_weights,
                            is_strongly_polar, milnor_number_oracle, radial_field,
                            verify_polar)
from mixedgsv.sampling import random_points

THREE_VAR = "-z1*conj(z1)^4 + z2^4 + z3^4"
POLAR = [THREE_VAR, "z1^2 + z2^3", "z1^2*conj(z1) + z2^3", "z1^3*conj(z2) + z2^2",
         "z1*conj(z1)^2 + z2^2", "z1^2*conj(z2) + z2^2*conj(z1)", "z1^2 + z2^5"]


def test_three_var_weights():
    w = infer_weights(parse(THREE_VAR))
    assert (w.p, w.a, w.q, w.c) == ((4, 5, 5), 20, (-4, 3, 3), 12)


def test_brieskorn_weights():
    w = infer_weights(parse("z1^2 + z2^3"))
    assert (w.p, w.q, w.a, w.c) == ((3, 2), (3, 2), 6, 6)


@pytest.mark.parametrize("text", ["z1 + z1^2", "z1*z2", "z1*conj(z1)", "1 + z1"])
def test_not_polar(text):
    w = infer_weights(parse(text))
    assert isinstance(w, NotPolar) and not w
    assert w.reason


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        infer_weights(parse("z1 - z1"))


def test_absent_variable_gets_unit_weights():
    w = infer_weights(parse("z1^3", nvars=3))
    assert w.p == (1, 1, 1) and w.q == (1, 1, 1) and w.a == 3 and w.defaulted == (1, 2)


@pytest.mark.parametrize("text", POLAR)
def test_inferred_weights_satisfy_the_support_equations(text):
    f = parse(text)
    w = infer_weights(f)
    assert reduce(gcd, w.p) == 1 and reduce(gcd, map(abs, w.q)) == 1
    assert w.a > 0 and w.c > 0
    for _, mu, nu in f.terms:
        assert sum(p * (m + n) for p, m, n in zip(w.p, mu, nu)) == w.a
        assert sum(q * (m - n) for q, m, n in zip(w.q, mu, nu)) == w.c
    assert verify_polar(f, w, trials=100) <= 1e-9


def test_verify_identity_action_is_exact():
    f = parse(THREE_VAR)
    assert verify_polar(f, infer_weights(f), trials=20, t=1.0, tau=1.0) == 0.0


def test_verify_detects_wrong_weights():
    f = parse(THREE_VAR)
    w = infer_weights(f)
    wrong = PolarWeights((4, 6, 5), w.q, w.a, w.c)
    assert verify_polar(f, wrong, trials=100) > 1e-3
    with pytest.raises(DimensionError):
        verify_polar(parse("z1^2 + z2^3"), w)


def test_action_fields_three_var(rng):
    w = infer_weights(parse(THREE_VAR))
    z = random_points(rng, 3)[0]
    assert np.array_equal(radial_field(w)(z), np.array([4, 5, 5]) * z)
    assert np.allclose(angular_field(w)(z), np.array([-4j, 3j, 3j]) * z, rtol=0, atol=0)
    assert not np.any(radial_field(w)(np.zeros(3))) and not np.any(angular_field(w)(np.zeros(3)))


def test_strongly_polar_identity(rng):
    w = PolarWeights((3, 2), (3, 2), 6, 6)
    z = random_points(rng, 2, 10)
    assert is_strongly_polar(w)
    assert np.array_equal(1j * radial_field(w)(z), angular_field(w)(z))
    assert [c * 1j for c in radial_field(w).components] == list(angular_field(w).components)


def test_is_strongly_polar_cases():
    assert is_strongly_polar(PolarWeights((1,), (1,), 1, 1))
    assert not is_strongly_polar(infer_weights(parse(THREE_VAR)))


@pytest.mark.parametrize("text", POLAR[:5])
def test_action_fields_are_tangent(text):
    f = parse(text)
    w = infer_weights(f)
    for seed in range(3):
        z = find_link_point(f, 0.5, seed=seed)
        for field in (radial_field(w), angular_field(w)):
            verdict = tangency(f, z, field(z))
            assert verdict and verdict.residual <= 1e-8


def test_milnor_oracle():
    assert milnor_number_oracle(PolarWeights((3, 2), (3, 2), 6, 6)) == 2
    assert milnor_number_oracle(PolarWeights((1, 1), (1, 1), 2, 2)) == 1
    assert milnor_number_oracle(PolarWeights((1,), (1,), 1, 1)) == 0
    with pytest.raises(ValueError):
        milnor_number_oracle(PolarWeights((2, 3), (2, 3), 7, 7))


def test_weights_validation():
    with pytest.raises(ValueError):
        PolarWeights((0, 1), (1, 1), 1, 1)
    with pytest.raises(ValueError):
        PolarWeights((1, 1), (0, 1), 1, 1)
