"""Randomized checks over seeded samples of scalars and words."""

import numpy as np
import pytest

from qdeform.ncpoly import PRESENTATION_NAMES, NCPoly, builtin_presentation, nc_mul, normal_form
from qdeform.scalars import ONE, QScalar, invert_q

from conftest import random_scalar, random_word

pytestmark = pytest.mark.slow

SAMPLES = 100


def test_field_axioms(rng):
    for _ in range(SAMPLES):
        x, y, z = (random_scalar(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x - x == 0


def test_inverses(rng):
    for _ in range(SAMPLES):
        x = random_scalar(rng, nonzero=True)
        assert x * x.inverse() == ONE


def test_equal_values_have_equal_hashes(rng):
    for _ in range(SAMPLES):
        x, y = random_scalar(rng), random_scalar(rng, nonzero=True)
        z = (x * y) / y
        assert z == x
        assert hash(z) == hash(x)


def test_evaluation_is_a_ring_map(rng):
    q = 1.7
    for _ in range(SAMPLES):
        x, y = random_scalar(rng), random_scalar(rng)
        assert (x * y).evaluate(q) == pytest.approx(x.evaluate(q) * y.evaluate(q), rel=1e-9, abs=1e-9)
        assert (x + y).evaluate(q) == pytest.approx(x.evaluate(q) + y.evaluate(q), rel=1e-9, abs=1e-9)


def test_invert_q_is_an_involutive_ring_map(rng):
    for _ in range(SAMPLES):
        x, y = random_scalar(rng), random_scalar(rng)
        assert invert_q(invert_q(x)) == x
        if x.is_rho_free and y.is_rho_free:
            assert invert_q(x * y) == invert_q(x) * invert_q(y)


@pytest.mark.parametrize("name", PRESENTATION_NAMES)
def test_rewriting_terminates_in_normal_form(name):
    pres = builtin_presentation(name)
    rng = np.random.default_rng(3)
    samples = 200 if name == "covariance" else 1000
    for _ in range(samples):
        reduced = normal_form(NCPoly.word(*random_word(rng, pres, 8)), pres)
        assert normal_form(reduced, pres) == reduced


@pytest.mark.parametrize("name", PRESENTATION_NAMES)
def test_random_rewriting_orders_agree(name):
    pres = builtin_presentation(name)
    rng = np.random.default_rng(7)
    max_len = 4 if name == "covariance" else 6
    for _ in range(500):
        p = NCPoly.word(*random_word(rng, pres, max_len))
        reduced = normal_form(p, pres)
        assert normal_form(p, pres, rng=rng) == reduced
        assert normal_form(reduced, pres) == reduced


@pytest.mark.parametrize("name", PRESENTATION_NAMES)
def test_multiplication_is_associative(name):
    pres = builtin_presentation(name)
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b, c = (normal_form(NCPoly.word(*random_word(rng, pres, 3)), pres) for _ in range(3))
        assert nc_mul(nc_mul(a, b, pres), c, pres) == nc_mul(a, nc_mul(b, c, pres), pres)


def test_qscalar_of_is_idempotent(rng):
    x = random_scalar(rng)
    assert QScalar.of(x) is x
