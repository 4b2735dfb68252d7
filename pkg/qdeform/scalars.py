"""Exact coefficient field and q-series toolkit.

Every symbolic coefficient lives in Q(s)[r] / (r^2 - 1 - s^-4) with q = s^2,
so q^(1/2) = s is exact and r = sqrt(1 + q^-2) is the single radical needed
by the three dimensional representation. Rational functions are stored as
dense integer polynomials (highest degree first) in canonical form:

    value = num(s) / den(s) * s^shift

with gcd(num, den) = 1, den having a positive leading coefficient and
neither polynomial divisible by s. Equal values have equal fields.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex

import mpmath
import numpy as np
from sympy.polys.densearith import dup_add, dup_mul, dup_neg
from sympy.polys.densebasic import dup_reverse, dup_strip, dup_terms_gcd
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

from .errors import ScalarDomainError

logger = logging.getLogger(__name__)


def _ints(f):
    return tuple(int(c) for c in f)


def _raise(f, k):
    # f * s^k for k >= 0
    return list(f) + [0] * k


def _laurent(num, shift):
    num = dup_strip(num)
    if not num:
        return RF_ZERO
    i, num = dup_terms_gcd(num, ZZ)
    return RationalFn(_ints(num), (1,), shift + i)


def render_poly(coeffs, shift=0, var="s"):
    """Render dense integer coefficients times var^shift as text."""
    deg = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        e = shift + deg - i
        mono = "" if e == 0 else var if e == 1 else f"{var}^{e}"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append("-" + body if c < 0 else body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


@dataclass(frozen=True, slots=True)
class RationalFn:
    num: tuple
    den: tuple = (1,)
    shift: int = 0

    @classmethod
    def make(cls, num, den=(1,), shift=0):
        num = dup_strip(list(num))
        if not num:
            return RF_ZERO
        den = dup_strip(list(den))
        if not den:
            raise ScalarDomainError("rational function with zero denominator")
        if den != [1]:
            _, num, den = dup_inner_gcd([ZZ(c) for c in num], [ZZ(c) for c in den], ZZ)
            if den[0] < 0:
                num, den = dup_neg(num, ZZ), dup_neg(den, ZZ)
        i, num = dup_terms_gcd(num, ZZ)
        j, den = dup_terms_gcd(den, ZZ)
        return cls(_ints(num), _ints(den), shift + i - j)

    @classmethod
    def monomial(cls, k, coeff=1):
        if not coeff:
            return RF_ZERO
        return cls((int(coeff),), (1,), k)

    @classmethod
    def of(cls, value):
        if isinstance(value, RationalFn):
            return value
        value = Fraction(value)
        return cls.make((value.numerator,), (value.denominator,))

    @property
    def is_laurent(self):
        return self.den == (1,)

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        k = min(self.shift, other.shift)
        f = _raise(self.num, self.shift - k)
        g = _raise(other.num, other.shift - k)
        if self.den == other.den:
            if self.den == (1,):
                return _laurent(dup_add(f, g, ZZ), k)
            return RationalFn.make(dup_add(f, g, ZZ), self.den, k)
        num = dup_add(dup_mul(f, list(other.den), ZZ), dup_mul(g, list(self.den), ZZ), ZZ)
        return RationalFn.make(num, dup_mul(list(self.den), list(other.den), ZZ), k)

    def __neg__(self):
        return RationalFn(tuple(-c for c in self.num), self.den, self.shift)

    def __sub__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        if not self.num or not other.num:
            return RF_ZERO
        num = dup_mul(list(self.num), list(other.num), ZZ)
        shift = self.shift + other.shift
        if self.den == (1,) and other.den == (1,):
            # nonzero constant terms multiply to a nonzero constant term
            return RationalFn(_ints(num), (1,), shift)
        return RationalFn.make(num, dup_mul(list(self.den), list(other.den), ZZ), shift)

    def inverse(self):
        if not self.num:
            raise ScalarDomainError("division by zero rational function")
        num, den = self.den, self.num
        if den[0] < 0:
            num, den = tuple(-c for c in num), tuple(-c for c in den)
        return RationalFn(num, den, -self.shift)

    def invert_q(self):
        """Apply s -> 1/s."""
        if not self.num:
            return self
        num, den = dup_reverse(list(self.num)), dup_reverse(list(self.den))
        if den[0] < 0:
            num, den = dup_neg(num, ZZ), dup_neg(den, ZZ)
        shift = (len(self.den) - 1) - (len(self.num) - 1) - self.shift
        return RationalFn(_ints(num), _ints(den), shift)

    def evaluate(self, s):
        den = np.polyval(np.asarray(self.den, dtype=float), s)
        scale = np.polyval(np.abs(np.asarray(self.den, dtype=float)), abs(s))
        if abs(den) <= 1e-12 * max(scale, 1.0):
            raise ScalarDomainError(
                f"pole: denominator {render_poly(self.den)} vanishes at s={complex(s):.6g}")
        return complex(np.polyval(np.asarray(self.num, dtype=float), s) / den * s ** self.shift)

    def at_one(self):
        den = sum(self.den)
        if den == 0:
            raise ScalarDomainError(f"pole: denominator {render_poly(self.den)} vanishes at s=1")
        return Fraction(sum(self.num), den)

    def render(self):
        if not self.num:
            return "0"
        if self.den == (1,):
            return render_poly(self.num, self.shift)
        text = f"(({render_poly(self.num)})/({render_poly(self.den)}))"
        return text + f"*s^{self.shift}" if self.shift else text

    __str__ = render


RF_ZERO = RationalFn((), (1,), 0)
RF_ONE = RationalFn((1,), (1,), 0)
# r^2 = 1 + s^-4 = (s^4 + 1) * s^-4
RHO_SQUARED = RationalFn((1, 0, 0, 0, 1), (1,), -4)


def _coerce(value):
    if isinstance(value, QScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return QScalar.of(value)
    return None


@dataclass(frozen=True, slots=True, eq=False)
class QScalar:
    """a + b*r with a, b rational functions of s."""

    a: RationalFn = RF_ZERO
    b: RationalFn = RF_ZERO

    @classmethod
    def of(cls, value):
        if isinstance(value, QScalar):
            return value
        return cls(RationalFn.of(value))

    @property
    def is_rho_free(self):
        return not self.b

    def __bool__(self):
        return bool(self.a.num or self.b.num)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.a, -self.b)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.b and not other.b:
            return QScalar(self.a * other.a)
        a = self.a * other.a + self.b * other.b * RHO_SQUARED
        b = self.a * other.b + self.b * other.a
        return QScalar(a, b)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ScalarDomainError("division by zero QScalar")
        if not self.b:
            return QScalar(self.a.inverse())
        norm = (self.a * self.a - self.b * self.b * RHO_SQUARED).inverse()
        return QScalar(self.a * norm, -(self.b * norm))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(n)):
            result = result * base
        return result

    def invert_q(self):
        return QScalar(self.a.invert_q(), self.b.invert_q())

    def evaluate(self, q):
        q = complex(q)
        if q == 0:
            raise ScalarDomainError("q = 0 is outside the field")
        s = np.sqrt(q)
        value = self.a.evaluate(s)
        if self.b:
            value += self.b.evaluate(s) * np.sqrt(1 + q ** -2)
        return value

    def at_one(self):
        """Substitute s = 1 exactly."""
        if self.b:
            raise ScalarDomainError(f"cannot specialize r-carrying scalar {self} at s=1")
        return QScalar.of(self.a.at_one())

    def render(self):
        if not self.b:
            return self.a.render()
        r_part = "r" if self.b == RF_ONE else f"({self.b.render()}) * r"
        if not self.a:
            return r_part
        return f"{self.a.render()} + {r_part}"

    __str__ = render

    def __repr__(self):
        return f"QScalar({self.render()})"


ZERO = QScalar()
ONE = QScalar(RF_ONE)
S = QScalar(RationalFn.monomial(1))
Q = QScalar(RationalFn.monomial(2))
RHO = QScalar(RF_ZERO, RF_ONE)


def s_power(k):
    return QScalar(RationalFn.monomial(k))


def q_power(k):
    return QScalar(RationalFn.monomial(2 * k))


def eval_numeric(x, q):
    """Evaluate x at a concrete q with s and r on their principal branches."""
    return QScalar.of(x).evaluate(q)


def invert_q(x):
    return QScalar.of(x).invert_q()


# -- q-numbers ---------------------------------------------------------------

def _check_order(n):
    if n < 0:
        raise ScalarDomainError(f"order must be nonnegative, got {n}")


def _is_exact(*values):
    return any(isinstance(v, (QScalar, RationalFn)) for v in values)


def _heine_at(k, base):
    total = base * 0
    term = base ** 0
    for _ in range(k):
        total = total + term
        term = term * base
    return total


def q_int_heine(n, base=None):
    """[n] = (1 - q^n) / (1 - q) as the polynomial 1 + q + ... + q^(n-1)."""
    _check_order(n)
    if base is not None:
        return _heine_at(n, base)
    if n == 0:
        return ZERO
    coeffs = [0] * (2 * n - 1)
    coeffs[::2] = [1] * n
    return QScalar(RationalFn(tuple(coeffs), (1,), 0))


def q_int_sym(n):
    """[[n]] = (q^n - q^-n) / (q - q^-1) as a Laurent polynomial."""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_int_sym(-n)
    coeffs = [0] * (4 * (n - 1) + 1)
    coeffs[::4] = [1] * n
    return QScalar(RationalFn(tuple(coeffs), (1,), -2 * (n - 1)))


def q_factorial(n, base=None):
    _check_order(n)
    base = Q if base is None else base
    result = base ** 0
    for k in range(2, n + 1):
        result = result * _heine_at(k, base)
    return result


def q_shifted_factorial(x, n, base=None):
    """(x; base)_n = prod_{k<n} (1 - x base^k). Exact unless every argument is numeric."""
    _check_order(n)
    if base is None or _is_exact(x, base):
        x = QScalar.of(x)
        base = Q if base is None else QScalar.of(base)
        result = ONE
        power = ONE
        for _ in range(n):
            result = result * (ONE - x * power)
            power = power * base
        return result
    return _finite(complex(mpmath.qp(x, base, n)))


def q_exp(z, base=None, terms=30):
    """Partial sum of sum_n z^n / [n]_base! over n < terms."""
    if terms < 1:
        raise ScalarDomainError(f"terms must be positive, got {terms}")
    if base is None or _is_exact(z, base):
        z = QScalar.of(z)
        base = Q if base is None else QScalar.of(base)
    else:
        z, base = complex(z), complex(base)
    total = z * 0 + 1
    term = total
    for n in range(1, terms):
        denom = _heine_at(n, base)
        if not denom:
            raise ScalarDomainError(f"[{n}]_q vanishes at the given base")
        term = term * z / denom
        total = total + term
    return total if isinstance(total, QScalar) else _finite(total)


def basic_hypergeometric(a, b, q, z, terms):
    """Partial sum of the r-phi-s series through `terms` terms (numeric)."""
    r, s = len(a), len(b)
    q, z = mpmath.mpmathify(q), mpmath.mpmathify(z)
    total = mpmath.mpf(0)
    for n in range(terms):
        den = mpmath.qp(q, q, n)
        for bj in b:
            den *= mpmath.qp(bj, q, n)
        if den == 0:
            raise ScalarDomainError(f"Pochhammer denominator vanishes at index {n}")
        num = mpmath.fprod(mpmath.qp(ai, q, n) for ai in a)
        twist = ((-1) ** n * q ** (n * (n - 1) // 2)) ** (1 + s - r)
        total += num / den * twist * z ** n
    return _finite(complex(total))


def q_int_sym_numeric(n, q):
    """Numeric [[n]]_q summed term by term so q = 1 gives n; accepts integer arrays."""
    n = np.asarray(n)
    m = np.abs(n).astype(int)
    top = int(m.max()) if m.size else 0
    table = np.array([sum(q ** (k - 1 - 2 * j) for j in range(k)) for k in range(top + 1)])
    out = np.sign(n) * table[m]
    return out if out.ndim else out.item()


def q_int_heine_numeric(n, q):
    return sum(q ** k for k in range(n))


def _finite(value):
    if not isinstance(value, Complex) or not np.isfinite(value):
        raise ScalarDomainError(f"non-finite numeric value {value}")
    return value
