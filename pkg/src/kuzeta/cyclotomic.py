"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are dense coefficient vectors in the power basis ``1, z, ..., z^(phi(m)-1)``
where ``z = exp(2 pi i / m)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import as_rational as _to_q, divisors
from .errors import NotRationalError


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact quotient of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first."""
    if m < 1:
        raise ValueError("modulus must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d != m:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(coeffs, m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    work = [_to_q(c) for c in coeffs]
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            # z^i = z^(i-deg) * z^deg and z^deg = -(phi without leading term)
            for j in range(deg):
                if phi[j]:
                    work[i - deg + j] -= c * phi[j]
    work = work[:deg] + [Fraction(0)] * (deg - len(work))
    return tuple(work)


@dataclass(frozen=True)
class CyclotomicElement:
    modulus: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _reduce(self.coeffs, self.modulus))

    @classmethod
    def rational(cls, q, modulus: int = 1) -> "CyclotomicElement":
        return cls(modulus, (_to_q(q),))

    @classmethod
    def zero(cls, modulus: int = 1) -> "CyclotomicElement":
        return cls(modulus, ())

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}; lift to a common modulus first"
                )
            return other
        return CyclotomicElement.rational(other, self.modulus)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return CyclotomicElement(self.modulus, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.modulus, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] += x * y
        return CyclotomicElement(self.modulus, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicElement.rational(1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, a: int) -> "CyclotomicElement":
        """Image under the automorphism ``z -> z^a``."""
        m = self.modulus
        if gcd(a, m) != 1:
            raise ValueError(f"{a} is not a unit mod {m}")
        out = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * a % m] += c
        return CyclotomicElement(m, tuple(out))

    def conj(self) -> "CyclotomicElement":
        return self.galois(-1 % self.modulus if self.modulus > 1 else 1)

    def embed(self, target: int) -> "CyclotomicElement":
        return embed(self, target)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        return as_rational_element(self)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.modulus)
        return sum((float(c) * z**i for i, c in enumerate(self.coeffs)), 0j)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"({c})*z{self.modulus}^{i}")
        return " + ".join(terms) if terms else "0"


def root_of_unity(m: int, j: int = 1) -> CyclotomicElement:
    """``exp(2 pi i j / m)`` inside Q(zeta_m)."""
    coeffs = [Fraction(0)] * m
    coeffs[j % m] = Fraction(1)
    return CyclotomicElement(m, tuple(coeffs))


def cyc_arith(a: CyclotomicElement, b: CyclotomicElement, op: str) -> CyclotomicElement:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def embed(a: CyclotomicElement, target: int) -> CyclotomicElement:
    """Map ``z_m -> z_target^(target/m)``; requires ``m | target``."""
    if target % a.modulus:
        raise ValueError(f"cannot embed modulus {a.modulus} into {target}")
    step = target // a.modulus
    out = [Fraction(0)] * (step * max(len(a.coeffs), 1))
    for i, c in enumerate(a.coeffs):
        out[i * step] = c
    return CyclotomicElement(target, tuple(out))


def lift(*elements: CyclotomicElement) -> list[CyclotomicElement]:
    """Embed all arguments into the lcm of their moduli."""
    m = 1
    for e in elements:
        m = m * e.modulus // gcd(m, e.modulus)
    return [embed(e, m) for e in elements]


def as_rational_element(a: CyclotomicElement) -> Fraction:
    if not a.is_rational():
        raise NotRationalError(f"element {a} of Q(zeta_{a.modulus}) is not rational")
    return a.coeffs[0] if a.coeffs else Fraction(0)


as_rational = as_rational_element
