import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from qdeform.errors import ScalarDomainError
from qdeform.scalars import (
    ONE, Q, RHO, S, ZERO, QScalar, RationalFn, basic_hypergeometric, eval_numeric, invert_q,
    q_exp, q_factorial, q_int_heine, q_int_heine_numeric, q_int_sym, q_int_sym_numeric, q_power,
    q_shifted_factorial, render_poly, s_power,
)

from conftest import random_scalar


def test_render_poly():
    assert render_poly((1, 0, -2), 0) == "s^2 - 2"
    assert render_poly((3,), 1) == "3*s"
    assert render_poly((-1, 1), -1) == "-1 + s^-1"
    assert render_poly(()) == "0"


@pytest.mark.parametrize("n, text", [
    (0, "0"),
    (1, "1"),
    (2, "s^2 + s^-2"),
    (4, "s^6 + s^2 + s^-2 + s^-6"),
])
def test_q_int_sym_render(n, text):
    assert q_int_sym(n).render() == text


def test_q_int_sym_is_odd():
    assert q_int_sym(-3) == -q_int_sym(3)


def test_q_int_heine():
    assert q_int_heine(0) == ZERO
    assert q_int_heine(3) == 1 + Q + Q * Q
    assert q_int_heine(3).render() == "s^4 + s^2 + 1"
    with pytest.raises(ScalarDomainError):
        q_int_heine(-1)


def test_generators_of_the_field():
    assert S * S == Q
    assert S.render() == "s"
    assert Q * q_power(-1) == 1
    assert RHO * RHO == 1 + q_power(-2)
    assert RHO.render() == "r"
    assert (Q * RHO).render() == "(s^2) * r"
    assert (ONE + RHO).render() == "1 + r"


def test_inverse_with_radical():
    x = Q - q_power(-1) + RHO
    assert x * x.inverse() == ONE
    assert x / x == 1


def test_zero_division():
    with pytest.raises(ScalarDomainError):
        ZERO.inverse()
    with pytest.raises(ScalarDomainError):
        RationalFn.make((1,), ())


def test_rational_function_render():
    x = (Q - 1).inverse()
    assert x.render() == "((1)/(s^2 - 1))"
    assert (x * (Q - 1)) == ONE


def test_canonical_form_is_unique():
    a = RationalFn.make((2, 2), (4,), 0)
    b = RationalFn.make((1, 1), (2,), 0)
    assert a == b
    assert RationalFn.make((1, 0, -1), (1, -1)) == RationalFn.make((1, 1))
    assert RationalFn.make((1, 0), (1,), -1) == RationalFn.of(1)


def test_qscalar_of_fraction():
    half = QScalar.of(Fraction(1, 2))
    assert half + half == ONE
    assert half.render() == "((1)/(2))"


def test_evaluate():
    assert Q.evaluate(2.0) == pytest.approx(2.0)
    assert S.evaluate(4.0) == pytest.approx(2.0)
    assert RHO.evaluate(1.0) == pytest.approx(math.sqrt(2))
    with pytest.raises(ScalarDomainError, match="pole"):
        (Q - 1).inverse().evaluate(1.0)
    with pytest.raises(ScalarDomainError):
        Q.evaluate(0)


def test_evaluate_on_unit_circle():
    theta = 0.37
    q = cmath.exp(1j * theta)
    assert eval_numeric(q_int_sym(3), q) == pytest.approx(1 + 2 * math.cos(2 * theta))


def test_at_one():
    assert (Q + q_power(-1)).at_one() == 2
    assert q_int_sym(5).at_one() == 5
    with pytest.raises(ScalarDomainError):
        RHO.at_one()
    with pytest.raises(ScalarDomainError):
        (Q - 1).inverse().at_one()


@pytest.mark.parametrize("n", range(9))
def test_symmetric_q_number_is_invert_q_invariant(n):
    assert invert_q(q_int_sym(n)) == q_int_sym(n)


def test_invert_q_of_rational_function():
    x = (Q + 2).inverse() * S
    assert invert_q(x) == (q_power(-1) + 2).inverse() * s_power(-1)
    assert invert_q(invert_q(x)) == x


@pytest.mark.parametrize("n", range(1, 7))
def test_symmetric_factorial_against_heine_factorial(n):
    sym = ONE
    for k in range(1, n + 1):
        sym = sym * q_int_sym(k)
    assert sym == q_power(-n * (n - 1) // 2) * q_factorial(n, Q * Q)


def test_q_factorial():
    assert q_factorial(0) == ONE
    assert q_factorial(3) == (1 + Q) * (1 + Q + Q * Q)
    assert q_factorial(4, 1.0) == pytest.approx(24.0)


def test_q_shifted_factorial():
    assert q_shifted_factorial(Fraction(1, 2), 0) == ONE
    assert q_shifted_factorial(1, 2) == ZERO
    assert q_shifted_factorial(0.5, 3, 0.3) == pytest.approx((1 - 0.5) * (1 - 0.15) * (1 - 0.045))


def test_q_exp_numeric_matches_basic_hypergeometric():
    q, z = 0.5, 1.0
    assert q_exp(z, q, terms=30) == pytest.approx(basic_hypergeometric([0], [], q, z * (1 - q), 30),
                                                  abs=1e-12)


def test_q_exp_exact_terms():
    z = QScalar.of(Fraction(1, 3))
    assert q_exp(z, terms=2) == 1 + z
    assert q_exp(z, terms=3) == 1 + z + z * z * (1 + Q).inverse()


def test_q_exp_rejects_vanishing_base():
    with pytest.raises(ScalarDomainError):
        q_exp(1.0, -1.0, terms=5)
    with pytest.raises(ScalarDomainError):
        q_exp(1.0, 0.5, terms=0)


def test_basic_hypergeometric_geometric_series():
    # 1phi0(0;;q,z) with z small is close to prod 1/(1 - z q^k)
    q, z = 0.3, 0.2
    expected = np.prod([1 / (1 - z * q ** k) for k in range(60)])
    assert basic_hypergeometric([0], [], q, z, 60) == pytest.approx(expected)


def test_basic_hypergeometric_pole():
    with pytest.raises(ScalarDomainError, match="index 1"):
        basic_hypergeometric([0.5], [1.0], 0.5, 0.5, 10)


def test_numeric_q_numbers():
    assert q_int_sym_numeric(3, 1.0) == 3
    assert q_int_sym_numeric(-2, 2.0) == pytest.approx(-2.5)
    assert list(q_int_sym_numeric(np.array([0, 1, 2]), 2.0)) == pytest.approx([0, 1, 2.5])
    assert q_int_heine_numeric(3, 2.0) == 7
    assert q_int_heine_numeric(0, 2.0) == 0


SAMPLE_QS = (0.7, 1.3, 1.9, 2.6, 3.1)


def test_canonical_form_matches_evaluation(rng):
    for _ in range(50):
        x, y = random_scalar(rng), random_scalar(rng, nonzero=True)
        z = (x * y) / y
        assert z == x
        assert z.render() == x.render()
        same_values = all(cmath.isclose(x.evaluate(q), y.evaluate(q), rel_tol=1e-9, abs_tol=1e-12)
                          for q in SAMPLE_QS)
        assert (x == y) == same_values


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_q_number_against_heine_at_q_squared(n):
    assert q_int_sym(n) == q_power(1 - n) * q_int_heine(n, Q * Q)


@pytest.mark.parametrize("n", range(1, 9))
def test_invert_q_of_heine_q_number(n):
    assert invert_q(q_int_heine(n)) == q_power(1 - n) * q_int_heine(n)


@pytest.mark.parametrize("a, b, q, z", [
    ([0.3], [0.5], 0.4, 0.2),
    ([0.2, 0.3], [0.5], 0.5, 0.3),
    ([0.5], [], 0.5, 0.3),
])
def test_basic_hypergeometric_matches_mpmath_qhyper(a, b, q, z):
    expected = complex(mpmath.qhyper(a, b, q, z))
    assert basic_hypergeometric(a, b, q, z, 60) == pytest.approx(expected, rel=1e-12, abs=1e-12)
