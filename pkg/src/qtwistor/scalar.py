"""Exact arithmetic in the rational function field Q(q).

Elements are stored as a reduced fraction of two Laurent polynomials.  The
denominator is always an honest polynomial with constant term 1, so two equal
field elements have identical representations and ``==`` is structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC
from typing import Iterable, Union

Rational = Fraction

Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _trim(coeffs: list) -> tuple[int, tuple]:
    """Strip zeros from both ends; return (leading shift, coefficients)."""
    lo = 0
    hi = len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    return lo, tuple(_norm(c) for c in coeffs[lo:hi])


# -- dense polynomial helpers (coefficient tuples, lowest degree first) -----

def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pstrip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b):
    a = [Fraction(c) for c in _pstrip(a)]
    b = _pstrip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        quot[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _pstrip(a)
    return quot, a


def _pgcd(a, b):
    a, b = _pstrip(a), _pstrip(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return [1]
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


class QLaurent:
    """Laurent polynomial in q with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(low + i)``; both end coefficients
    are nonzero, and zero is ``low == 0, coeffs == ()``.
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable = ()):
        shift, cs = _trim(list(coeffs))
        self.low = low + shift if cs else 0
        self.coeffs = cs
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> "QLaurent":
        return cls(exp, (coeff,))

    @classmethod
    def from_dict(cls, terms: dict) -> "QLaurent":
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    def to_dict(self) -> dict[int, Number]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c != 0}

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs or (self.low == 0 and len(self.coeffs) == 1)

    def __add__(self, other: "QLaurent") -> "QLaurent":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        a = [0] * (self.low - lo) + list(self.coeffs)
        b = [0] * (other.low - lo) + list(other.coeffs)
        return QLaurent(lo, _padd(a, b))

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.low, [-c for c in self.coeffs])

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        if not self.coeffs or not other.coeffs:
            return QLaurent()
        return QLaurent(self.low + other.low, _pmul(self.coeffs, other.coeffs))

    def scale(self, c: Number) -> "QLaurent":
        return QLaurent(self.low, [c * x for x in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, QLaurent) and self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def evaluate(self, q0) -> Fraction:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        if self.low >= 0:
            return acc * q0**self.low
        return acc / q0 ** (-self.low)

    def __repr__(self) -> str:
        return f"QLaurent({render_laurent(self)!r})"


def _fmt_coeff(c) -> str:
    return str(c)


def render_laurent(p: QLaurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.to_dict().items()):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _fmt_coeff(a)
        else:
            qs = "q" if e == 1 else f"q^{e}"
            body = qs if a == 1 else f"{_fmt_coeff(a)} {qs}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_ONE = QLaurent(0, (1,))


class QRational:
    """Element of Q(q) in canonical reduced form.

    >>> x = (ONE - Q**2) + Q**2
    >>> x == ONE
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: QLaurent, den: QLaurent = _ONE, *, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
            self._hash = None
            return
        if den.is_zero():
            raise ZeroDivisionError("QRational with zero denominator")
        if num.is_zero():
            self.num, self.den = QLaurent(), _ONE
            self._hash = None
            return
        # absorb the q-power of the denominator into the numerator
        shift = den.low
        n_low, n_c = num.low - shift, list(num.coeffs)
        d_c = list(den.coeffs)
        if len(d_c) > 1:
            g = _pgcd(n_c, d_c)
            if len(g) > 1:
                n_c, r1 = _pdivmod(n_c, g)
                d_c, r2 = _pdivmod(d_c, g)
                assert not r1 and not r2
        c0 = d_c[0]
        if c0 != 1:
            c0 = Fraction(c0)
            n_c = [Fraction(c) / c0 for c in n_c]
            d_c = [Fraction(c) / c0 for c in d_c]
        self.num = QLaurent(n_low, n_c)
        self.den = QLaurent(0, d_c)
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "QRational":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        if c == 0:
            return cls(QLaurent(), _ONE, _canonical=True)
        return cls(QLaurent(0, (c,)), _ONE, _canonical=True)

    @classmethod
    def q_power(cls, exp: int, coeff: Number = 1) -> "QRational":
        if coeff == 0:
            return ZERO
        return cls(QLaurent(exp, (coeff,)), _ONE, _canonical=True)

    @classmethod
    def laurent(cls, terms: dict) -> "QRational":
        return cls(QLaurent.from_dict(terms), _ONE, _canonical=True)

    @classmethod
    def coerce(cls, x) -> "QRational":
        if isinstance(x, QRational):
            return x
        if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
            return cls.const(Fraction(x))
        if isinstance(x, QLaurent):
            return cls(x, _ONE, _canonical=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to QRational")

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def is_constant(self) -> bool:
        return self.is_laurent() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on q")
        return Fraction(self.num.coeffs[0]) if self.num.coeffs else Fraction(0)

    def q_degree(self) -> int:
        """Degree of numerator minus degree of denominator (0 for constants)."""
        if self.is_zero():
            return 0
        return self.num.high - self.den.high

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "QRational":
        other = _co(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == _ONE and other.den == _ONE:
            return QRational(self.num + other.num, _ONE, _canonical=True)
        if self.den == other.den:
            return QRational(self.num + other.num, self.den)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QRational":
        return QRational(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "QRational":
        other = _co(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QRational":
        return _co(other) - self

    def __mul__(self, other) -> "QRational":
        other = _co(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return QRational(self.num * other.num, _ONE, _canonical=True)
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "QRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRational(self.den, self.num)

    def __truediv__(self, other) -> "QRational":
        other = _co(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QRational":
        return _co(other) * self.inverse()

    def __pow__(self, e: int) -> "QRational":
        if e < 0:
            return self.inverse() ** (-e)
        if self.den == _ONE and len(self.num.coeffs) == 1:
            return QRational.q_power(self.num.low * e, self.num.coeffs[0] ** e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QRational):
            try:
                other = QRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- evaluation --------------------------------------------------------
    def evaluate(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0 and (self.num.low < 0 or self.den.low < 0):
            raise PoleError("negative power of q at q = 0")
        d = self.den.evaluate(q0)
        if d == 0:
            raise PoleError(f"{self} has a pole at q = {q0}")
        return Fraction(self.num.evaluate(q0)) / d

    def __float__(self) -> float:
        raise TypeError("QRational has no float value without a choice of q")

    def to_float(self, q0: float) -> float:
        n = sum(float(c) * q0 ** (self.num.low + i) for i, c in enumerate(self.num.coeffs))
        d = sum(float(c) * q0**i for i, c in enumerate(self.den.coeffs))
        return n / d

    # -- text --------------------------------------------------------------
    def __str__(self) -> str:
        if self.den == _ONE:
            return render_laurent(self.num)
        inv = f"({render_laurent(self.den)})^-1"
        if self.num == _ONE:
            return inv
        return f"({render_laurent(self.num)}) {inv}"

    def __repr__(self) -> str:
        return f"QRational({str(self)!r})"


def _co(x):
    if isinstance(x, QRational):
        return x
    if isinstance(x, (int, Fraction)):
        return QRational.const(x)
    return NotImplemented


ZERO = QRational(QLaurent(), _ONE, _canonical=True)
ONE = QRational(_ONE, _ONE, _canonical=True)
Q = QRational.q_power(1)


def qpow(e: int) -> QRational:
    return QRational.q_power(e)


def canonicalize(x: QRational) -> QRational:
    """Rebuild ``x`` from its parts; a no-op on canonical input."""
    return QRational(x.num, x.den)


def evaluate_at(x: QRational, q0) -> Fraction:
    """Exact value of ``x`` at a rational point ``q0`` in (0, 1)."""
    q0 = Fraction(q0)
    if not 0 < q0 < 1:
        raise ValueError(f"evaluation point must lie in (0, 1), got {q0}")
    return QRational.coerce(x).evaluate(q0)


def geometric_sum(coefficient, step: int) -> QRational:
    """Closed form of sum_{m >= 0} coefficient * q**(step*m)."""
    if step < 1:
        raise ValueError("step must be a positive integer")
    c = QRational.coerce(coefficient)
    return c / (ONE - qpow(step))


def qproduct(factors: Iterable[QRational]) -> QRational:
    return reduce(lambda a, b: a * b, factors, ONE)


def one_minus_q2(k: int) -> QRational:
    """1 - q^(2k)."""
    return ONE - qpow(2 * k)
