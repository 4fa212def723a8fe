"""Closed formulas for clasp traces and theta nets in the C2 spider.

Conventions
-----------
Quantum integers are ``[n] = (q^n - q^-n)/(q - q^-1)``.  The loop values used
throughout are

* single loop  ``LOOP_SINGLE = -[2][6]/[3]``  (-4 at q = 1)
* double loop  ``LOOP_DOUBLE = [6][5]/([3][2])``  (5 at q = 1)

``clasp_trace(p)`` is the positive closed formula ``[2p+4][p+3][p+1]/([4][3])``.
The diagrammatic trace (what a web calculator returns when the clasp is closed
up) is ``(-1)**p * clasp_trace(p)``; see :func:`trace_sign`.  Likewise
``theta(a, b, c)`` is the closed-form value and the diagram evaluates to
``diagram_sign(a, b, c) * theta(a, b, c)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Optional

import flint

from .errors import InadmissibleTriple, IndeterminateSign, PrecisionExhausted, TranscriptionMismatch
from .qscalar import (
    ONE,
    ZERO,
    Q,
    QScalar,
    RootContext,
    RootValue,
    _working_precision,
    certify_nonzero,
    qfrac,
    vanishes_exactly_at_root,
)

LOOP_SINGLE = -qfrac([2, 6], [3])
LOOP_DOUBLE = qfrac([6, 5], [3, 2])
CAPPED_TETRAVALENT = qfrac([6, 2], [3])

# -- memo switch -------------------------------------------------------------

_CACHE_ENABLED = True
_caches: list[dict] = []


def _memo(fn: Callable) -> Callable:
    table: dict = {}
    _caches.append(table)

    @functools.wraps(fn)
    def wrapper(*args):
        if not _CACHE_ENABLED:
            return fn(*args)
        try:
            return table[args]
        except KeyError:
            val = table[args] = fn(*args)
            return val

    return wrapper


def set_cache_enabled(flag: bool) -> None:
    global _CACHE_ENABLED
    _CACHE_ENABLED = bool(flag)
    clear_caches()


def clear_caches() -> None:
    for table in _caches:
        table.clear()


# -- labels ------------------------------------------------------------------

@dataclass(frozen=True)
class TriLabel:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ValueError(f"labels must be nonnegative, got {(self.a, self.b, self.c)}")

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def total(self) -> int:
        return self.a + self.b + self.c


@dataclass(frozen=True)
class NetShape:
    """Strand-bundle sizes between the three clasps.

    ``p_e``/``p_i`` split the outer bundle for the intermediate ladder nets;
    when present they satisfy ``p_e + p_i == p - 1``.
    """

    m: int
    n: int
    p: int
    p_e: Optional[int] = None
    p_i: Optional[int] = None

    def __post_init__(self):
        if min(self.m, self.n, self.p) < 0:
            raise ValueError("net shape entries must be nonnegative")
        if (self.p_e is None) != (self.p_i is None):
            raise ValueError("p_e and p_i must be given together")
        if self.p_e is not None and (self.p_e < 0 or self.p_i < 0 or self.p_e + self.p_i != self.p - 1):
            raise ValueError(f"need p_e + p_i == p - 1, got {self.p_e} + {self.p_i} vs p = {self.p}")


@dataclass(frozen=True)
class LevelContext:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("level must be nonnegative")

    @property
    def order_N(self) -> int:
        return 4 * self.k + 12

    def root_context(self, **kw) -> RootContext:
        return RootContext(self.order_N, **kw)


def _triple(t) -> TriLabel:
    return t if isinstance(t, TriLabel) else TriLabel(*t)


def inadmissibility_reason(t) -> Optional[str]:
    """``None`` for admissible triples, else ``"parity"`` or ``"triangle"``."""
    a, b, c = _triple(t)
    if (a + b + c) % 2:
        return "parity"
    if a + b < c or b + c < a or a + c < b:
        return "triangle"
    return None


def admissible_generic(t) -> bool:
    return inadmissibility_reason(t) is None


def admissible_level(t, ctx: LevelContext) -> bool:
    t = _triple(t)
    return admissible_generic(t) and t.total < 2 * ctx.k + 4


def negligible(p: int, ctx: LevelContext) -> bool:
    """A (p, 0) clasp is negligible at level k iff p > k."""
    return p > ctx.k


def tri_to_net(t) -> NetShape:
    t = _triple(t)
    reason = inadmissibility_reason(t)
    if reason:
        raise InadmissibleTriple(tuple(t), reason)
    a, b, c = t
    return NetShape((a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2)


# -- expansion coefficients --------------------------------------------------

@_memo
def alpha(n: int) -> QScalar:
    if n < 1:
        raise ValueError("alpha needs n >= 1")
    return qfrac([2 * n, n + 1, n - 1], [2 * n + 2, n, n])


@_memo
def beta(n: int) -> QScalar:
    if n < 1:
        raise ValueError("beta needs n >= 1")
    return qfrac([n - 1], [n, 2])


def _check_coeff_args(i: int, m: int, n: int) -> None:
    if i < 1 or m < 0 or n < 0:
        raise ValueError(f"need i >= 1 and m, n >= 0, got i={i}, m={m}, n={n}")


@_memo
def coeff_A(i: int, m: int, n: int) -> QScalar:
    _check_coeff_args(i, m, n)
    bm, bn = beta(m + i), beta(n + i)
    return (
        LOOP_SINGLE
        + alpha(m + i)
        + alpha(n + i)
        + CAPPED_TETRAVALENT * (bn + bm)
        - Q(4) * Q(2) * bn * bm
    )


@_memo
def coeff_B(i: int, m: int, n: int) -> QScalar:
    _check_coeff_args(i, m, n)
    return alpha(n + i) * alpha(m + i)


def prod_B_direct(i: int, p: int, m: int, n: int) -> QScalar:
    val = ONE
    for k in range(i + 1, p + 1):
        val = val * coeff_B(k, m, n)
    return val


def prod_B_telescoped(i: int, p: int, m: int, n: int) -> QScalar:
    head = qfrac([2 * m + 2 * i + 2, m + i, n + i, 2 * n + 2 * i + 2], [m + i + 1, n + i + 1])
    tail = qfrac([m + p + 1, n + p + 1], [2 * m + 2 * p + 2, 2 * n + 2 * p + 2, n + p, m + p])
    return head * tail


@_memo
def prod_B(i: int, p: int, m: int, n: int) -> QScalar:
    """``B_{i+1} * ... * B_p``, cross-checked against the telescoped closed form."""
    if not 1 <= i <= p - 1:
        raise ValueError(f"prod_B needs 1 <= i <= p - 1, got i={i}, p={p}")
    direct = prod_B_direct(i, p, m, n)
    if direct != prod_B_telescoped(i, p, m, n):
        raise TranscriptionMismatch(f"telescoped form disagrees with direct product at i={i}, p={p}, m={m}, n={n}")
    return direct


# -- traces ------------------------------------------------------------------

@_memo
def clasp_trace(p: int) -> QScalar:
    if p < 0:
        raise ValueError("clasp size must be nonnegative")
    return qfrac([2 * p + 4, 3 + p, p + 1], [4, 3])


def trace_step(p: int) -> QScalar:
    """Factor picked up when one strand of the p-clasp is closed off.

    Closing the top summand gives a free loop, the turnback summand gives the
    (p-1)-clasp back by idempotence, and the tetravalent summand gives a capped
    tetravalent vertex.
    """
    return LOOP_SINGLE + alpha(p) + CAPPED_TETRAVALENT * beta(p)


@_memo
def clasp_trace_recursive(p: int) -> QScalar:
    if p < 1:
        raise ValueError("recursive trace starts at p = 1")
    if p == 1:
        return LOOP_SINGLE
    return clasp_trace_recursive(p - 1) * trace_step(p)


def trace_sign(p: int) -> int:
    """``clasp_trace_recursive(p) == trace_sign(p) * clasp_trace(p)``."""
    return -1 if p % 2 else 1


# -- nets --------------------------------------------------------------------

def net_base(m: int, n: int) -> QScalar:
    if m < 0 or n < 0:
        raise ValueError("net shape entries must be nonnegative")
    return clasp_trace(m + n)


@_memo
def net_ladder(m: int, n: int, p: int) -> QScalar:
    """Net(m, n, p) by the ladder: peel one outer strand, then walk the split
    ``Net(m, n, p_e, p_i)`` down to ``p_i = 0``."""
    if min(m, n, p) < 0:
        raise ValueError("net shape entries must be nonnegative")
    if p == 0:
        return net_base(m, n)
    lower = net_ladder(m, n, p - 1)
    if p == 1:
        return coeff_A(1, m, n) * lower
    return coeff_A(p, m, n) * lower + coeff_B(p, m, n) * net_split(m, n, 1, p - 2)


@_memo
def net_split(m: int, n: int, p_e: int, p_i: int) -> QScalar:
    """The intermediate net with ``p_e`` outer and ``p_i`` inner strands (p = p_e + p_i + 1)."""
    shape = NetShape(m, n, p_e + p_i + 1, p_e, p_i)
    lower = net_ladder(m, n, shape.p - 1)
    if p_i == 0:
        return coeff_A(1, m, n) * lower
    return coeff_A(p_i + 1, m, n) * lower + coeff_B(p_i + 1, m, n) * net_split(m, n, p_e + 1, p_i - 1)


@_memo
def net_step_factor(m: int, n: int, p: int) -> QScalar:
    """``A_p + sum_{i<p} A_i * B_{i+1} ... B_p``."""
    factor = coeff_A(p, m, n)
    for i in range(1, p):
        factor = factor + coeff_A(i, m, n) * prod_B(i, p, m, n)
    return factor


@_memo
def net_closed(m: int, n: int, p: int) -> QScalar:
    if min(m, n, p) < 0:
        raise ValueError("net shape entries must be nonnegative")
    val = net_base(m, n)
    for r in range(1, p + 1):
        val = net_step_factor(m, n, r) * val
    return val


def theta_tagged(t) -> tuple[QScalar, Optional[str]]:
    reason = inadmissibility_reason(t)
    if reason:
        return ZERO, reason
    shape = tri_to_net(t)
    return net_closed(shape.m, shape.n, shape.p), None


def theta(t) -> QScalar:
    """Closed-form theta value; the zero QScalar for inadmissible triples."""
    return theta_tagged(t)[0]


def diagram_sign(t) -> int:
    """Sign relating the diagram evaluation to :func:`theta`: ``(-1)**b``.

    ``b = m + n`` is the middle clasp, whose trace seeds the recursion, and the
    diagrammatic trace of a p-clasp carries ``(-1)**p``.
    """
    return -1 if _triple(t).b % 2 else 1


# -- roots of unity ----------------------------------------------------------

def _sin_turns(t: int, N: int) -> flint.arb:
    """``sin(2 pi t / N)``."""
    return flint.arb(flint.fmpq(2 * t, N)).sin_pi()


def theorem9_sine_expression(i: int, m: int, n: int, ctx: RootContext, check_sign: bool = True) -> RootValue:
    """Numerator of ``A_i`` at ``q = exp(2 pi i / N)`` expanded into sine products.

    With ``S(t) = sin(2 pi t / N)``, ``s = n + i`` and ``j = m + i`` this is
    ``A_i * S(2s+2) S(s)^2 S(2j+2) S(j)^2 S(3) S(2) S(1)``, written term by term.
    """
    _check_coeff_args(i, m, n)
    N = ctx.order_N
    s, j = n + i, m + i
    with _working_precision(ctx.precision_bits):
        S = lambda t: _sin_turns(t, N)  # noqa: E731
        val = (
            S(2 * s) * S(s + 1) * S(s - 1) * S(2 * j + 2) * S(j) ** 2 * S(3) * S(2) * S(1)
            + S(2 * j) * S(j + 1) * S(j - 1) * S(2 * s + 2) * S(s) ** 2 * S(3) * S(2) * S(1)
            + S(s - 1) * S(2 * s + 2) * S(s) * S(2 * j + 2) * S(j) ** 2 * S(6) * S(2) * S(1)
            + S(j - 1) * S(2 * j + 2) * S(j) * S(2 * s + 2) * S(s) ** 2 * S(6) * S(2) * S(1)
            - S(s - 1) * S(j - 1) * S(2 * s + 2) * S(2 * j + 2) * S(s) * S(j) * S(3) * S(1) * S(4)
            - S(6) * S(2) ** 2 * S(2 * s + 2) * S(2 * j + 2) * S(j) ** 2 * S(s) ** 2
        )
        result = RootValue(flint.acb(val), ctx.precision_bits)
    if check_sign and not result.is_certified_nonzero():
        raise IndeterminateSign(f"sine expression for i={i}, m={m}, n={n} at N={N} has no certified sign")
    return result


def theorem9_cleared_denominator(i: int, m: int, n: int, ctx: RootContext) -> RootValue:
    """``S(2s+2) S(s)^2 S(2j+2) S(j)^2 S(3) S(2) S(1)``; positive when N > 4(max(s, j) + 1)."""
    N = ctx.order_N
    s, j = n + i, m + i
    with _working_precision(ctx.precision_bits):
        S = lambda t: _sin_turns(t, N)  # noqa: E731
        val = S(2 * s + 2) * S(s) ** 2 * S(2 * j + 2) * S(j) ** 2 * S(3) * S(2) * S(1)
        return RootValue(flint.acb(val), ctx.precision_bits)


def theorem9_hypothesis(t, order_N: int) -> bool:
    return order_N > 2 * _triple(t).total + 4


def smallest_level_order(t) -> int:
    """Smallest ``N = 4k + 12`` (k >= 0) with ``N > 2(a+b+c) + 4``."""
    bound = 2 * _triple(t).total + 4
    N = 12
    while N <= bound:
        N += 4
    return N


def is_degenerate(t) -> bool:
    """One label equals the sum of the other two (and the triple is not all zero)."""
    a, b, c = _triple(t)
    return a + b + c > 0 and 2 * max(a, b, c) == a + b + c


@dataclass(frozen=True)
class NonvanishingResult:
    triple: tuple[int, int, int]
    order_N: int
    nonzero: bool
    margin: float
    modulus: float
    error_bound: float
    precision_bits: int
    exact_zero: bool = False


def check_nonvanishing(t, ctx: RootContext, require_hypothesis: bool = True) -> NonvanishingResult:
    """Evaluate theta at the root and certify ``|theta| > 2 * error_bound``.

    Precision is doubled until the value is certified or the cap is hit.  At
    the cap, a value whose numerator is exactly divisible by the N-th
    cyclotomic polynomial is reported as ``nonzero=False, exact_zero=True``;
    anything else raises :class:`PrecisionExhausted`.
    """
    t = _triple(t)
    reason = inadmissibility_reason(t)
    if reason:
        raise InadmissibleTriple(tuple(t), reason)
    if require_hypothesis and not theorem9_hypothesis(t, ctx.order_N):
        raise ValueError(f"N = {ctx.order_N} does not exceed 2(a+b+c)+4 = {2 * t.total + 4}")
    value = theta(t)
    try:
        v = certify_nonzero(value, ctx)
    except PrecisionExhausted:
        if not vanishes_exactly_at_root(value, ctx.order_N):
            raise
        from .qscalar import eval_at_root

        v = eval_at_root(value, ctx.with_precision(ctx.max_precision_bits))
        return NonvanishingResult(tuple(t), ctx.order_N, False, v.margin, v.modulus, v.error_bound, v.precision_bits, True)
    return NonvanishingResult(tuple(t), ctx.order_N, True, v.margin, v.modulus, v.error_bound, v.precision_bits)
