"""Independent oracles used by the test suite.

None of these touch the package's formula code: Weyl's dimension formula in
integer arithmetic, the classical sp(4) tensor contraction of a theta net at
q = 1, and a direct mpmath evaluation of quantum-integer products.
"""

from __future__ import annotations

import itertools
import string
from fractions import Fraction

import mpmath
import numpy as np

# positive roots of C2 in the epsilon basis and rho = (2, 1)
C2_POSITIVE_ROOTS = ((1, -1), (1, 1), (2, 0), (0, 2))
C2_RHO = (2, 1)


def weyl_dim(a: int, b: int = 0) -> int:
    """Dimension of the sp(4) irrep with highest weight a*w1 + b*w2 (w1 = e1, w2 = e1 + e2)."""
    lam = (a + b, b)
    num = den = 1
    for r in C2_POSITIVE_ROOTS:
        num *= (lam[0] + C2_RHO[0]) * r[0] + (lam[1] + C2_RHO[1]) * r[1]
        den *= C2_RHO[0] * r[0] + C2_RHO[1] * r[1]
    assert num % den == 0
    return num // den


# symplectic form and its inverse; a closed single loop contracts to -4
_OMEGA = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
_OMEGA_INV = np.linalg.inv(_OMEGA)


def _pairs(a: int, b: int, c: int) -> list[tuple[int, int]]:
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    pairs = [(a - 1 - t, a + t) for t in range(m)]
    pairs += [(a + b - 1 - t, a + b + t) for t in range(n)]
    pairs += [(p - 1 - t, a + b + n + t) for t in range(p)]
    return pairs


def _pattern(pairs, size: int, form: np.ndarray) -> np.ndarray:
    letters = string.ascii_letters[:size]
    if not pairs:
        return np.ones(())
    subs = ",".join(letters[i] + letters[j] for i, j in pairs)
    return np.einsum(f"{subs}->{letters}", *[form] * len(pairs))


def _symmetrize(t: np.ndarray, start: int, k: int) -> np.ndarray:
    if k < 2:
        return t
    acc = np.zeros_like(t)
    perms = list(itertools.permutations(range(k)))
    for perm in perms:
        axes = list(range(t.ndim))
        for i in range(k):
            axes[start + i] = start + perm[i]
        acc += np.transpose(t, axes)
    return acc / len(perms)


def classical_theta(a: int, b: int, c: int) -> Fraction:
    """The theta net at q = 1: symmetrisers on three bundles of the defining
    representation, wired by the symplectic form on the top and its inverse on
    the bottom."""
    size = a + b + c
    pairs = _pairs(a, b, c)
    top = _pattern(pairs, size, _OMEGA_INV)
    bottom = _pattern(pairs, size, _OMEGA)
    for start, k in ((0, a), (a, b), (a + b, c)):
        top = _symmetrize(top, start, k)
    return Fraction(float(np.sum(top * bottom))).limit_denominator(10**6)


def qint_at_root(n: int, N: int, dps: int = 60) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.sin(2 * mpmath.pi * n / N) / mpmath.sin(2 * mpmath.pi / N)


def qint_at(n: int, q) -> object:
    """[n] at a numeric q, straight from the definition."""
    return (q**n - q**-n) / (q - 1 / q)
