"""Exact arithmetic in Z[q, 1/q] and its fraction field, plus specializations.

``LaurentPoly`` is a Laurent polynomial with integer coefficients, stored as
``q**shift * p(q)`` with ``p`` an integer polynomial whose constant term is
nonzero.  ``QScalar`` is a reduced fraction of two such polynomials.  Both are
immutable and hashable.

Specializations:

* :func:`limit_q1` gives the exact rational value at ``q = 1`` after
  cancelling common factors of ``(q - 1)``.
* :func:`eval_at_root` evaluates at ``q = exp(2 pi i / N)`` in ball arithmetic,
  so every value carries a rigorous error bound.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

from .errors import DenominatorVanishes, DivergentLimit, PrecisionExhausted, QDivisionByZero

_ZERO_POLY = flint.fmpz_poly([])
_ONE_POLY = flint.fmpz_poly([1])
_Q_MINUS_1 = flint.fmpz_poly([-1, 1])


def _strip_low(poly: flint.fmpz_poly) -> tuple[int, flint.fmpz_poly]:
    """Split ``poly = q**k * rest`` with ``rest(0) != 0``."""
    if poly.is_zero():
        return 0, poly
    coeffs = poly.coeffs()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k == 0:
        return 0, poly
    return k, flint.fmpz_poly(coeffs[k:])


class LaurentPoly:
    __slots__ = ("_shift", "_poly", "_hash")

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        if not coefficients:
            self._shift, self._poly = 0, _ZERO_POLY
        else:
            items = {int(e): int(c) for e, c in coefficients.items() if c}
            if not items:
                self._shift, self._poly = 0, _ZERO_POLY
            else:
                lo = min(items)
                hi = max(items)
                dense = [0] * (hi - lo + 1)
                for e, c in items.items():
                    dense[e - lo] = c
                self._shift, self._poly = lo, flint.fmpz_poly(dense)
        self._hash = None

    @classmethod
    def _raw(cls, shift: int, poly: flint.fmpz_poly) -> "LaurentPoly":
        k, rest = _strip_low(poly)
        obj = cls.__new__(cls)
        obj._shift = shift + k if not rest.is_zero() else 0
        obj._poly = rest
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @property
    def coefficients(self) -> dict[int, int]:
        return {self._shift + i: int(c) for i, c in enumerate(self._poly.coeffs()) if c != 0}

    @property
    def low_exponent(self) -> int:
        return self._shift

    @property
    def high_exponent(self) -> int:
        return self._shift + max(self._poly.degree(), 0)

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __bool__(self) -> bool:
        return not self._poly.is_zero()

    def _aligned(self, other: "LaurentPoly") -> tuple[int, flint.fmpz_poly, flint.fmpz_poly]:
        lo = min(self._shift, other._shift)
        a = self._poly * flint.fmpz_poly([0] * (self._shift - lo) + [1])
        b = other._poly * flint.fmpz_poly([0] * (other._shift - lo) + [1])
        return lo, a, b

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo, a, b = self._aligned(other)
        return LaurentPoly._raw(lo, a + b)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._shift, -self._poly)

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly._raw(self._shift + other._shift, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers live in QScalar")
        return LaurentPoly._raw(self._shift * k, self._poly**k)

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._shift == other._shift and self._poly == other._poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shift, tuple(int(c) for c in self._poly.coeffs())))
        return self._hash

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, or flint ball)."""
        total = 0
        for e, c in self.coefficients.items():
            total += c * x**e
        return total

    def to_json(self) -> list[str]:
        return [f"{e}:{c}" for e, c in sorted(self.coefficients.items())]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "LaurentPoly":
        coeffs: dict[int, int] = {}
        for item in data:
            e, c = str(item).split(":")
            coeffs[int(e)] = coeffs.get(int(e), 0) + int(c)
        return cls(coeffs)

    def __repr__(self):
        if self.is_zero():
            return "LaurentPoly(0)"
        terms = " + ".join(f"{c}*q^{e}" for e, c in sorted(self.coefficients.items()))
        return f"LaurentPoly({terms})"


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x}) if x else LaurentPoly()
    return NotImplemented


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """Quantum integer ``[n] = (q^n - q^-n) / (q - q^-1)``; ``[-n] = -[n]``."""
    if n < 0:
        return -qint(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


Number = Union[int, Fraction, LaurentPoly, "QScalar"]


class QScalar:
    """Element of Q(q) in canonical reduced form.

    Stored as ``q**shift * num(q) / den(q)`` where ``num``, ``den`` are coprime
    integer polynomials (no common polynomial or content factor), ``den(0) != 0``
    and ``den`` has a positive leading coefficient.  Equality is structural.
    """

    __slots__ = ("_shift", "_num", "_den", "_hash")

    def __init__(self, numerator: Number = 0, denominator: Number = 1):
        if isinstance(numerator, QScalar) or isinstance(denominator, QScalar) or isinstance(numerator, Fraction) or isinstance(denominator, Fraction):
            val = _as_q(numerator) / _as_q(denominator)
            self._shift, self._num, self._den = val._shift, val._num, val._den
            self._hash = None
            return
        n = _as_laurent(numerator)
        d = _as_laurent(denominator)
        if n is NotImplemented or d is NotImplemented:
            raise TypeError(f"cannot build QScalar from {numerator!r}, {denominator!r}")
        if d.is_zero():
            raise QDivisionByZero("zero denominator")
        self._set(n._shift - d._shift, n._poly, d._poly)

    def _set(self, shift: int, num: flint.fmpz_poly, den: flint.fmpz_poly) -> None:
        self._hash = None
        if num.is_zero():
            self._shift, self._num, self._den = 0, _ZERO_POLY, _ONE_POLY
            return
        k, num = _strip_low(num)
        j, den = _strip_low(den)
        shift += k - j
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        self._shift, self._num, self._den = shift, num, den

    @classmethod
    def _make(cls, shift: int, num: flint.fmpz_poly, den: flint.fmpz_poly) -> "QScalar":
        obj = cls.__new__(cls)
        obj._set(shift, num, den)
        return obj

    # -- views -------------------------------------------------------------
    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly._raw(self._shift, self._num)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly._raw(0, self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self):
        return not self._num.is_zero()

    def normalize(self) -> "QScalar":
        return QScalar._make(self._shift, self._num, self._den)

    def structural_key(self) -> tuple:
        return (self._shift, tuple(int(c) for c in self._num.coeffs()), tuple(int(c) for c in self._den.coeffs()))

    # -- field operations --------------------------------------------------
    def __add__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self._shift, other._shift)
        a = self._num.left_shift(self._shift - lo)
        b = other._num.left_shift(other._shift - lo)
        g = self._den.gcd(other._den)
        if g.is_one():
            num = a * other._den + b * self._den
            den = self._den * other._den
        else:
            d1 = self._den // g
            d2 = other._den // g
            num = a * d2 + b * d1
            den = d1 * other._den
        return QScalar._make(lo, num, den)

    __radd__ = __add__

    def __neg__(self):
        obj = QScalar.__new__(QScalar)
        obj._shift, obj._num, obj._den, obj._hash = self._shift, -self._num, self._den, None
        return obj

    def __sub__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        g1 = self._num.gcd(other._den)
        g2 = other._num.gcd(self._den)
        n1, d2 = (self._num, other._den) if g1.is_one() else (self._num // g1, other._den // g1)
        n2, d1 = (other._num, self._den) if g2.is_one() else (other._num // g2, self._den // g2)
        return QScalar._make(self._shift + other._shift, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise QDivisionByZero("division by the zero QScalar")
        return QScalar._make(-self._shift, self._den, self._num)

    def __truediv__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return QScalar._make(self._shift * k, self._num**k, self._den**k)

    def __eq__(self, other):
        other = _as_q(other)
        if other is NotImplemented:
            return NotImplemented
        return self._shift == other._shift and self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.structural_key())
        return self._hash

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "QScalar":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __repr__(self):
        if self._den.is_one():
            return f"QScalar({self.numerator!r})"
        return f"QScalar({self.numerator!r} / {self.denominator!r})"


def _as_q(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return QScalar._make(0, flint.fmpz_poly([x]), _ONE_POLY)
    if isinstance(x, Fraction):
        return QScalar._make(0, flint.fmpz_poly([x.numerator]), flint.fmpz_poly([x.denominator]))
    if isinstance(x, LaurentPoly):
        return QScalar._make(x._shift, x._poly, _ONE_POLY)
    return NotImplemented


ZERO = QScalar(0)
ONE = QScalar(1)


def qs(x: Number) -> QScalar:
    """Coerce an int, Fraction or LaurentPoly to QScalar."""
    val = _as_q(x)
    if val is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} to QScalar")
    return val


@lru_cache(maxsize=None)
def Q(n: int) -> QScalar:
    """The quantum integer ``[n]`` as a QScalar."""
    return qs(qint(n))


def qfrac(num: Iterable[int], den: Iterable[int] = ()) -> QScalar:
    """``prod [a] for a in num`` divided by ``prod [b] for b in den``."""
    val = ONE
    for a in num:
        val = val * Q(a)
    for b in den:
        val = val / Q(b)
    return val


# -- q -> 1 ------------------------------------------------------------------

def _order_at_one(poly: flint.fmpz_poly) -> tuple[int, flint.fmpz_poly]:
    k = 0
    while True:
        quo, rem = divmod(poly, _Q_MINUS_1)
        if not rem.is_zero():
            return k, poly
        poly = quo
        k += 1


def limit_q1(s: QScalar) -> Fraction:
    """Exact value at ``q = 1``; raises :class:`DivergentLimit` on a pole."""
    if s.is_zero():
        return Fraction(0)
    kn, num = _order_at_one(s._num)
    kd, den = _order_at_one(s._den)
    if kn < kd:
        raise DivergentLimit(f"pole of order {kd - kn} at q = 1")
    if kn > kd:
        return Fraction(0)
    return Fraction(int(num(1)), int(den(1)))


# -- roots of unity ----------------------------------------------------------

DEFAULT_PRECISION_BITS = 128
DEFAULT_MAX_PRECISION_BITS = 4096


@contextlib.contextmanager
def _working_precision(bits: int):
    old = flint.ctx.prec
    flint.ctx.prec = bits
    try:
        yield
    finally:
        flint.ctx.prec = old


@dataclass(frozen=True)
class RootContext:
    """Evaluation at ``q = exp(2 pi i / order_N)``.

    ``precision_bits`` is the starting working precision; automatic retries
    double it up to ``max_precision_bits``.
    """

    order_N: int
    precision_bits: int = DEFAULT_PRECISION_BITS
    max_precision_bits: int = DEFAULT_MAX_PRECISION_BITS

    def __post_init__(self):
        if self.order_N <= 0 or self.order_N % 2:
            raise ValueError(f"root order must be a positive even integer, got {self.order_N}")
        if self.precision_bits < 128:
            raise ValueError("precision_bits must be at least 128")
        if self.max_precision_bits < self.precision_bits:
            raise ValueError("max_precision_bits below precision_bits")

    @classmethod
    def for_level(cls, k: int, **kw) -> "RootContext":
        return cls(4 * k + 12, **kw)

    def with_precision(self, bits: int) -> "RootContext":
        return RootContext(self.order_N, bits, max(self.max_precision_bits, bits))


@dataclass(frozen=True)
class RootValue:
    """A complex ball: midpoint plus a certified bound on the error."""

    ball: flint.acb
    precision_bits: int

    @property
    def re(self) -> float:
        return float(self.ball.real.mid())

    @property
    def im(self) -> float:
        return float(self.ball.imag.mid())

    def _rad(self) -> flint.arb:
        return self.ball.real.rad() + self.ball.imag.rad()

    def _mid_modulus(self) -> flint.arb:
        return abs(self.ball.mid())

    @property
    def error_bound(self) -> float:
        # upper bound on |value - midpoint|, nudged up past float rounding
        return float(self._rad()) * (1 + 2.0**-40)

    @property
    def modulus(self) -> float:
        return float(self._mid_modulus().mid())

    def is_certified_nonzero(self) -> bool:
        with _working_precision(self.precision_bits):
            return bool(self._mid_modulus() > 2 * self._rad())

    @property
    def margin(self) -> float:
        return self.modulus - 2 * self.error_bound

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "error_bound": self.error_bound}


def _root_ball(order_N: int) -> flint.acb:
    return flint.acb(flint.fmpq(2, order_N)).exp_pi_i()


def _eval_poly(poly: flint.fmpz_poly, z: flint.acb) -> flint.acb:
    if poly.is_zero():
        return flint.acb(0)
    return flint.acb_poly([int(c) for c in poly.coeffs()])(z)


def _eval_once(s: QScalar, order_N: int, bits: int) -> tuple[flint.acb, bool]:
    with _working_precision(bits):
        z = _root_ball(order_N)
        den = _eval_poly(s._den, z)
        if den.contains(0):
            return den, False
        num = _eval_poly(s._num, z)
        if s._shift:
            num = num * z**s._shift
        return num / den, True


def eval_at_root(s: QScalar, ctx: RootContext) -> RootValue:
    """Evaluate ``s`` at ``exp(2 pi i / N)`` with a rigorous error bound.

    If the denominator ball contains zero the precision is doubled up to the
    cap before :class:`DenominatorVanishes` is raised.
    """
    bits = ctx.precision_bits
    while True:
        val, ok = _eval_once(s, ctx.order_N, bits)
        if ok:
            return RootValue(val, bits)
        if bits >= ctx.max_precision_bits:
            raise DenominatorVanishes(f"denominator vanishes at the primitive {ctx.order_N}-th root of unity")
        bits = min(2 * bits, ctx.max_precision_bits)


def certify_nonzero(s: QScalar, ctx: RootContext) -> RootValue:
    """Return a value with ``|v| > 2 * error_bound``, raising precision as needed.

    Raises :class:`PrecisionExhausted` if the value stays indeterminate at
    ``ctx.max_precision_bits``.
    """
    bits = ctx.precision_bits
    while True:
        val = eval_at_root(s, ctx.with_precision(bits))
        if val.is_certified_nonzero():
            return val
        if bits >= ctx.max_precision_bits:
            raise PrecisionExhausted(
                f"|value| <= 2 * error bound at {bits} bits (N = {ctx.order_N})"
            )
        bits = min(2 * bits, ctx.max_precision_bits)


def vanishes_exactly_at_root(s: QScalar, order_N: int) -> bool:
    """True iff the numerator is divisible by the N-th cyclotomic polynomial."""
    if s.is_zero():
        return True
    return (s._num % flint.fmpz_poly.cyclotomic(order_N)).is_zero()
