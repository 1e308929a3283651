"""Dirichlet characters as exponent vectors against fixed unit-group generators.

Generator convention for (Z/m)^x, one block per prime power q = p^e || m:

* odd p: the smallest primitive root mod p^e (order phi(p^e));
* q = 4: the generator -1 (order 2);
* q = 2^e, e >= 3: the generators -1 (order 2) and 5 (order 2^(e-2)).

Each block generator is lifted by CRT to a residue that is 1 modulo the other
prime powers.  A character with exponent vector ``x`` sends the i-th generator
to ``exp(2 pi i x_i / order_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .arith import euler_phi, factor_integer, is_squarefree, prime_divisors
from .cyclotomic import CyclotomicElement, root_of_unity
from .errors import ValidationError


@dataclass(frozen=True)
class _Block:
    prime: int
    exponent: int
    # generators mod p^e and their orders (two for 2^e, e >= 3)
    local_generators: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent


@dataclass(frozen=True)
class UnitGroupStructure:
    modulus: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    blocks: tuple[_Block, ...]


def _smallest_primitive_root(q: int, p: int) -> int:
    phi = euler_phi(q)
    qs = prime_divisors(phi)
    for g in range(2, q):
        if g % p and all(pow(g, phi // r, q) != 1 for r in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {q}")


def _block(p: int, e: int) -> _Block:
    q = p**e
    if p != 2:
        return _Block(p, e, (_smallest_primitive_root(q, p),), (euler_phi(q),))
    if e == 1:
        return _Block(2, 1, (), ())
    if e == 2:
        return _Block(2, 2, (3,), (2,))
    return _Block(2, e, (q - 1, 5), (2, 2 ** (e - 2)))


def _crt_lift(residue: int, q: int, m: int) -> int:
    """x = residue (mod q), x = 1 (mod m/q)."""
    rest = m // q
    if rest == 1:
        return residue % m
    # x = 1 + rest * t with rest * t = residue - 1 (mod q)
    t = (residue - 1) * pow(rest, -1, q) % q
    return (1 + rest * t) % m


@lru_cache(maxsize=256)
def unit_group_structure(m: int) -> UnitGroupStructure:
    if m < 1:
        raise ValueError("modulus must be positive")
    blocks = tuple(_block(p, e) for p, e in factor_integer(m).factors.items())
    gens: list[int] = []
    orders: list[int] = []
    for b in blocks:
        for g, o in zip(b.local_generators, b.orders):
            gens.append(_crt_lift(g, b.modulus, m))
            orders.append(o)
    return UnitGroupStructure(m, tuple(gens), tuple(orders), blocks)


@lru_cache(maxsize=256)
def _log_table(p: int, e: int) -> dict[int, tuple[int, ...]]:
    """Residue mod p^e -> exponents against the block generators."""
    b = _block(p, e)
    q = b.modulus
    table: dict[int, tuple[int, ...]] = {}
    if not b.orders:
        return {r: () for r in range(q) if r % 2}
    ranges = [range(o) for o in b.orders]
    for exps in itertools.product(*ranges):
        x = 1
        for g, k in zip(b.local_generators, exps):
            x = x * pow(g, k, q) % q
        table[x] = exps
    return table


def discrete_log(m: int, a: int) -> tuple[int, ...] | None:
    """Exponent vector of ``a`` against the generators of (Z/m)^x, or None."""
    if gcd(a, m) != 1:
        return None
    out: list[int] = []
    for b in unit_group_structure(m).blocks:
        out.extend(_log_table(b.prime, b.exponent)[a % b.modulus])
    return tuple(out)


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        orders = unit_group_structure(self.modulus).orders
        if len(self.exponents) != len(orders):
            raise ValueError(
                f"modulus {self.modulus} needs {len(orders)} exponents, got {len(self.exponents)}"
            )
        object.__setattr__(
            self, "exponents", tuple(x % o for x, o in zip(self.exponents, orders))
        )

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletCharacter":
        return cls(modulus, (0,) * len(unit_group_structure(modulus).orders))

    @property
    def orders(self) -> tuple[int, ...]:
        return unit_group_structure(self.modulus).orders

    @property
    def order(self) -> int:
        return lcm(1, *(o // gcd(x, o) for x, o in zip(self.exponents, self.orders)))

    def angle(self, a: int) -> Fraction | None:
        """``chi(a) = exp(2 pi i * angle)`` with angle in [0, 1); None when chi(a) = 0."""
        logs = discrete_log(self.modulus, a)
        if logs is None:
            return None
        return sum((Fraction(x * k, o) for x, k, o in zip(self.exponents, logs, self.orders)), Fraction(0)) % 1

    def evaluate(self, a: int) -> CyclotomicElement:
        n = self.order
        ang = self.angle(a)
        if ang is None:
            return CyclotomicElement.zero(n)
        return root_of_unity(n, int(ang * n))

    def __call__(self, a: int) -> CyclotomicElement:
        return self.evaluate(a)

    def value_complex(self, a: int) -> complex:
        import cmath

        ang = self.angle(a)
        return 0j if ang is None else cmath.exp(2j * cmath.pi * float(ang))

    @property
    def conductor(self) -> int:
        f = 1
        i = 0
        for b in unit_group_structure(self.modulus).blocks:
            k = len(b.orders)
            exps, ords = self.exponents[i : i + k], b.orders
            i += k
            f *= _block_conductor(b, exps, ords)
        return f

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def parity(self) -> str:
        return "even" if self.angle(-1) == 0 else "odd"

    def is_even(self) -> bool:
        return self.parity == "even"

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-x for x in self.exponents))

    def power(self, a: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(a * x for x in self.exponents))

    def primitive(self) -> "DirichletCharacter":
        return primitive_of(self)

    def __str__(self) -> str:
        return f"chi_{self.modulus}{list(self.exponents)}"


def _block_conductor(b: _Block, exps: tuple[int, ...], ords: tuple[int, ...]) -> int:
    p, e = b.prime, b.exponent
    if not any(exps):
        return 1
    if p != 2:
        o = ords[0] // gcd(exps[0], ords[0])
        # trivial on 1 + p^c Z  <=>  order divides (p-1) p^(c-1)
        c = 1
        while (p - 1) * p ** (c - 1) % o:
            c += 1
        return p**c
    if e == 2:
        return 4
    o5 = ords[1] // gcd(exps[1], ords[1])
    if o5 == 1:
        return 4
    return 2 ** (o5.bit_length() - 1 + 2)


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def parity(chi: DirichletCharacter) -> str:
    return chi.parity


def evaluate(chi: DirichletCharacter, a: int) -> CyclotomicElement:
    return chi.evaluate(a)


def _unit_lift(r: int, f: int, m: int) -> int:
    """A unit mod m congruent to r mod f (f | m, gcd(r, f) = 1)."""
    a = r % f if f > 1 else 1
    while gcd(a, m) != 1:
        a += f
    return a


def primitive_of(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character of modulus conductor(chi) inducing chi."""
    f = chi.conductor
    if f == chi.modulus:
        return chi
    target = unit_group_structure(f)
    exps = []
    for g, o in zip(target.generators, target.orders):
        ang = chi.angle(_unit_lift(g, f, chi.modulus))
        exps.append(int(ang * o))
    return DirichletCharacter(f, tuple(exps))


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    orders = unit_group_structure(m).orders
    return [DirichletCharacter(m, exps) for exps in itertools.product(*(range(o) for o in orders))]


def _check_torsion_order(n: int) -> None:
    if n < 1:
        raise ValidationError(f"torsion order must be positive, got {n}")
    if n % 2 == 0:
        raise ValidationError(f"torsion order {n} is even; the prime 2 is always inverted")
    if not is_squarefree(n):
        raise ValidationError(f"torsion order {n} is not square-free")


def dir_prime_blocks(n: int) -> dict[int, list[DirichletCharacter]]:
    """For each prime l | n, the l-1 characters mod l^2 of order exactly l."""
    _check_torsion_order(n)
    out: dict[int, list[DirichletCharacter]] = {}
    for ell in prime_divisors(n):
        # (Z/l^2)^x is cyclic of order l(l-1); order-l characters have exponent (l-1) j
        out[ell] = [DirichletCharacter(ell * ell, ((ell - 1) * j,)) for j in range(1, ell)]
    return out


def dir_prime_set(n: int) -> list[DirichletCharacter]:
    return [chi for block in dir_prime_blocks(n).values() for chi in block]
