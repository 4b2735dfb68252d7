import numpy as np
import pytest

from qdeform.scalars import RF_ZERO, QScalar, RationalFn

SEED = 20240611

# denominators with no zero on the positive real s axis
DENOMINATORS = [(1,), (1,), (1, 0, 1), (1, 1), (1, 0, 0, 0, 1), (3,)]


def _random_rational(rng):
    num = tuple(int(c) for c in rng.integers(-3, 4, size=int(rng.integers(1, 4))))
    if not any(num):
        num = (1,)
    den = DENOMINATORS[int(rng.integers(len(DENOMINATORS)))]
    return RationalFn.make(num, den, int(rng.integers(-4, 5)))


def random_scalar(rng, nonzero=False):
    while True:
        a = _random_rational(rng)
        b = _random_rational(rng) if rng.random() < 0.5 else RF_ZERO
        x = QScalar(a, b)
        if x or not nonzero:
            return x


def random_word(rng, pres, max_len=6):
    length = int(rng.integers(0, max_len + 1))
    return tuple(int(i) for i in rng.integers(len(pres.generators), size=length))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
