"""Bernoulli numbers, Bernoulli polynomials and Riemann zeta values.

Convention: ``B_1 = -1/2``.  With it ``zeta(1 - k) = -B_k / k`` for ``k >= 2``
and ``zeta(0) = -1/2`` is handled separately.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import _numeric
from .arith import as_rational
from .errors import PoleError, TranscendentalValueError

_lock = threading.Lock()
_memo: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli_number(k: int) -> Fraction:
    """Exact ``B_k`` from ``sum_{j<=k} C(k+1, j) B_j = 0``, memoized.

    The table is extended under a lock so concurrent callers see one history.
    """
    if k < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if k < len(_memo):
        return _memo[k]
    with _lock:
        for n in range(len(_memo), k + 1):
            if n % 2:
                _memo.append(Fraction(0))
                continue
            acc = Fraction(comb(n + 1, 1)) * _memo[1]
            for j in range(0, n, 2):
                acc += comb(n + 1, j) * _memo[j]
            _memo.append(-acc / (n + 1))
    return _memo[k]


def bernoulli_polynomial(n: int, x) -> Fraction:
    """``B_n(x) = sum_j C(n, j) B_j x^(n-j)``, evaluated exactly."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    x = as_rational(x)
    out = Fraction(0)
    # Horner in x over coefficients C(n, j) B_j, highest power of x first
    for j in range(n + 1):
        out = out * x + comb(n, j) * bernoulli_number(j)
    return out


@lru_cache(maxsize=512)
def bernoulli_values(k: int, f: int) -> tuple[Fraction, ...]:
    """``(B_k(0/f), B_k(1/f), ..., B_k((f-1)/f))``."""
    return tuple(bernoulli_polynomial(k, Fraction(a, f)) for a in range(f))


def zeta_special_value(m: int) -> Fraction:
    """Exact ``zeta(m)`` for an integer ``m <= 0``."""
    if m == 1:
        raise PoleError("zeta has a pole at s = 1")
    if m > 1:
        raise TranscendentalValueError(f"zeta({m}) is not rational")
    if m == 0:
        return Fraction(-1, 2)
    k = 1 - m
    return -bernoulli_number(k) / k


def zeta_numeric(s: complex) -> complex:
    """Riemann zeta on the window ``|Re s|, |Im s| <= 60``.

    Accuracy is about 1e-10 relative to ``max(1, |zeta(s)|)``.
    """
    s = complex(s)
    _numeric.check_window(s)
    return complex(_numeric.zeta_mp(s))
