"""Numeric kernels: complex Gamma and Euler-Maclaurin Hurwitz zeta.

The Hurwitz sum is carried out in mpmath arithmetic at a working precision
large enough to absorb the cancellation that occurs for ``Re(s) << 0``; the
public wrappers round to Python ``complex`` at the end.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import OutOfRangeError, PoleError

WINDOW = 60.0
EM_CORRECTIONS = 30
MAX_CORRECTIONS = 150
TARGET_DIGITS = 25

# Lanczos coefficients for g = 7, n = 9.
_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z: complex) -> complex:
    """Complex Gamma function (Lanczos approximation with reflection)."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def check_window(s: complex) -> None:
    if abs(s.real) > WINDOW or abs(s.imag) > WINDOW:
        raise OutOfRangeError(f"argument {s} outside the supported window |Re|, |Im| <= {WINDOW:g}")


@lru_cache(maxsize=None)
def _em_coefficients(count: int) -> tuple[Fraction, ...]:
    """B_{2j} / (2j)! for j = 1..count."""
    from .bernoulli import bernoulli_number

    return tuple(bernoulli_number(2 * j) / math.factorial(2 * j) for j in range(1, count + 1))


def _working_digits(s: complex, n_terms: int) -> int:
    # largest summand is about N^{-Re s}; the result can be as small as O(1)
    growth = max(0.0, -s.real) * math.log10(n_terms + 2)
    return TARGET_DIGITS + int(growth) + 10


def hurwitz_mp(s, a: Fraction, digits: int | None = None):
    """Euler-Maclaurin value of zeta(s, a) as an ``mpmath.mpc``.

    Uses ``N = 2|s| + 30`` direct terms.  At least ``EM_CORRECTIONS``
    Bernoulli corrections are added, and more (up to ``MAX_CORRECTIONS``)
    while the correction terms are still above the target accuracy; far left
    of the critical strip the direct sum cancels over many orders of
    magnitude and needs the extra terms.
    """
    s_c = complex(s)
    if s_c == 1:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    a = Fraction(a)
    if not 0 < a <= 1:
        raise ValueError("Hurwitz parameter must lie in (0, 1]")
    n_terms = 2 * int(abs(s_c)) + 30
    dps = digits or _working_digits(s_c, n_terms)
    with mpmath.workdps(dps):
        s_mp = s if isinstance(s, mpmath.mpc) else mpmath.mpc(s)
        a_mp = mpmath.mpf(a.numerator) / a.denominator
        total = mpmath.mpc(0)
        for n in range(n_terms):
            total += mpmath.power(n + a_mp, -s_mp)
        x = n_terms + a_mp
        x_pow = mpmath.power(x, -s_mp)
        total += x * x_pow / (s_mp - 1) + x_pow / 2
        # term_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
        rising = s_mp
        x_pow = x_pow / x
        tol = mpmath.mpf(10) ** -TARGET_DIGITS
        for j, coeff in enumerate(_em_coefficients(MAX_CORRECTIONS), start=1):
            term = mpmath.mpf(coeff.numerator) / coeff.denominator * rising * x_pow
            total += term
            if j >= EM_CORRECTIONS and abs(term) < tol * max(1, abs(total)):
                break
            rising *= (s_mp + 2 * j - 1) * (s_mp + 2 * j)
            x_pow /= x * x
        return +total


def zeta_mp(s, digits: int | None = None):
    return hurwitz_mp(s, Fraction(1), digits)


def zeta_derivative(s: complex) -> complex:
    """zeta'(s) by a central difference on a 40-digit evaluation."""
    with mpmath.workdps(60):
        h = mpmath.mpf(10) ** -15
        s_mp = mpmath.mpc(s)
        up = hurwitz_mp(s_mp + h, Fraction(1), 60 + _working_digits(complex(s), 60))
        down = hurwitz_mp(s_mp - h, Fraction(1), 60 + _working_digits(complex(s), 60))
        return complex((up - down) / (2 * h))
