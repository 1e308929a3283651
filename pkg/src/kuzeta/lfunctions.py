"""Dirichlet L-functions: exact values at non-positive integers and numerics."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath

from . import _numeric
from .bernoulli import bernoulli_values, zeta_special_value
from .characters import DirichletCharacter, primitive_of
from .cyclotomic import CyclotomicElement, lift
from .errors import OutOfRangeError, PoleError, ValidationError


def generalized_bernoulli(k: int, chi: DirichletCharacter) -> CyclotomicElement:
    """``B_{k,chi} = f^(k-1) * sum_a chi(a) B_k(a/f)`` at the modulus f of chi.

    The sum runs over ``a = 0, ..., f-1``.  For f > 1 the term a = 0 vanishes
    and this equals the sum over ``1..f``; for the trivial character mod 1 it
    gives ``B_k`` itself, including ``B_1 = -1/2``.
    """
    if k < 1:
        raise ValueError("index must be at least 1")
    f = chi.modulus
    n = chi.order
    classes = [Fraction(0)] * n
    values = bernoulli_values(k, f)
    for a in range(f):
        ang = chi.angle(a)
        if ang is not None:
            classes[int(ang * n)] += values[a]
    scale = Fraction(f) ** (k - 1)
    return CyclotomicElement(n, tuple(scale * c for c in classes))


def l_special_value(m: int, chi: DirichletCharacter) -> CyclotomicElement:
    """Exact ``L(m, chi)`` for ``m <= 0`` and primitive chi."""
    if m > 0:
        raise OutOfRangeError(f"exact L-values are only available at m <= 0, got {m}")
    if not chi.is_primitive():
        raise ValidationError(f"{chi} is not primitive; pass primitive_of(chi)")
    if chi.is_trivial():
        return CyclotomicElement.rational(zeta_special_value(m))
    k = 1 - m
    return generalized_bernoulli(k, chi) * Fraction(-1, k)


def orbit_product(m: int, chars) -> Fraction:
    """Product of ``L(m, primitive_of(chi))`` over ``chars``, certified rational."""
    values = [l_special_value(m, primitive_of(chi)) for chi in chars]
    if not values:
        return Fraction(1)
    lifted = lift(*values)
    out = lifted[0]
    for v in lifted[1:]:
        out = out * v
    return out.as_rational()


def hurwitz_zeta_numeric(s: complex, a) -> complex:
    s = complex(s)
    _numeric.check_window(s)
    return complex(_numeric.hurwitz_mp(s, Fraction(a)))


def _l_mp(s: complex, chi: DirichletCharacter):
    f = chi.modulus
    digits = _numeric._working_digits(s, 2 * int(abs(s)) + 30) + 5
    with mpmath.workdps(digits):
        total = mpmath.mpc(0)
        for a in range(1, f + 1):
            ang = chi.angle(a)
            if ang is None:
                continue
            val = mpmath.expjpi(2 * mpmath.mpf(ang.numerator) / ang.denominator)
            total += val * _numeric.hurwitz_mp(s, Fraction(a, f), digits)
        return +(total * mpmath.power(f, -mpmath.mpc(s)))


def l_numeric(s: complex, chi: DirichletCharacter) -> complex:
    """``L(s, chi) = f^(-s) sum_{a=1}^{f} chi(a) zeta(s, a/f)`` at the modulus f of chi."""
    s = complex(s)
    _numeric.check_window(s)
    if s == 1 and chi.is_trivial():
        raise PoleError("L(s, trivial) has a pole at s = 1")
    return complex(_l_mp(s, chi))


def gauss_sum_numeric(chi: DirichletCharacter) -> complex:
    f = chi.modulus
    return sum(
        (chi.value_complex(a) * cmath.exp(2j * cmath.pi * a / f) for a in range(1, f + 1)), 0j
    )


def root_number(chi: DirichletCharacter) -> complex:
    """``W(chi) = tau(chi) / sqrt(f)`` for even primitive chi."""
    if not chi.is_primitive():
        raise ValidationError(f"{chi} is not primitive")
    if not chi.is_even():
        raise ValidationError(f"{chi} is odd; only even characters are supported")
    return gauss_sum_numeric(chi) / math.sqrt(chi.modulus)


def completed_l_numeric(s: complex, chi: DirichletCharacter) -> complex:
    """``Lambda(s, chi) = (f/pi)^(s/2) Gamma(s/2) L(s, chi)`` for even primitive chi."""
    if not chi.is_primitive() or not chi.is_even():
        raise ValidationError(f"{chi} must be even and primitive")
    s = complex(s)
    if s.imag == 0 and s.real <= 0 and s.real / 2 == math.floor(s.real / 2):
        raise PoleError(f"Gamma(s/2) has a pole at s = {s.real:g}")
    f = chi.modulus
    return (f / math.pi) ** (s / 2) * _numeric.gamma(s / 2) * l_numeric(s, chi)
