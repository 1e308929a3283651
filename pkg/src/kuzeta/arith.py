"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored in lowest terms with a positive denominator.  Factoring uses trial
division by a sieved prime table, then Pollard rho with Brent's cycle
detection; primality is Miller-Rabin.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

ExactRational = Fraction

# Witnesses 2..41 make Miller-Rabin deterministic below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
PROBABILISTIC_ROUNDS = 40
DEFAULT_TRIAL_BOUND = 10**6


def as_rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def denom(q) -> int:
    """Denominator of ``q`` in lowest terms; the denominator of 0 is 1."""
    return as_rational(q).denominator


def numer(q) -> int:
    return as_rational(q).numerator


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _mr_round(n: int, d: int, r: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin test.

    Deterministic for ``n < DETERMINISTIC_BOUND`` (fixed witness set); above it,
    40 rounds with bases drawn from a generator seeded by ``n`` so that repeated
    calls agree.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < DETERMINISTIC_BOUND:
        return all(_mr_round(n, d, r, a) for a in _MR_BASES)
    rng = random.Random(n)
    return all(_mr_round(n, d, r, rng.randrange(2, n - 1)) for _ in range(PROBABILISTIC_ROUNDS))


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


def _brent_rho(n: int, seed: int, max_steps: int, deadline: float | None = None) -> int | None:
    """One Pollard-rho/Brent attempt; returns a nontrivial factor or None."""
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > max_steps or (deadline is not None and time.monotonic() > deadline):
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


@dataclass(frozen=True)
class FactoredInteger:
    """``sign * residual * prod(p**e)``.

    ``residual`` is 1 when the factorization is complete; otherwise it is the
    cofactor that resisted Pollard rho.  ``probable`` lists factors certified
    only by the probabilistic Miller-Rabin branch.
    """

    sign: int
    factors: Mapping[int, int]
    residual: int = 1
    probable: frozenset = field(default_factory=frozenset)

    @property
    def value(self) -> int:
        out = self.sign * self.residual
        for p, e in self.factors.items():
            out *= p**e
        return out

    @property
    def complete(self) -> bool:
        return self.residual == 1

    def __str__(self) -> str:
        parts = []
        for p in sorted(self.factors):
            e = self.factors[p]
            term = f"{p}^{e}" if e > 1 else str(p)
            if p in self.probable:
                term += " (probable prime)"
            parts.append(term)
        if self.residual != 1:
            parts.append(f"{self.residual} (unfactored)")
        body = " * ".join(parts) if parts else "1"
        return f"-{body}" if self.sign < 0 else body


def factor_integer(
    n: int,
    effort: int = DEFAULT_TRIAL_BOUND,
    rho_steps: int = 2_000_000,
    time_budget: float | None = None,
) -> FactoredInteger:
    """Factor a nonzero integer.

    Trial division runs over primes up to ``effort``; whatever is left is split
    by Pollard rho.  A cofactor that rho cannot split within ``rho_steps`` (or
    before ``time_budget`` seconds have passed) is returned as ``residual``.
    """
    deadline = None if time_budget is None else time.monotonic() + time_budget
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors: dict[int, int] = {}
    for p in primes_up_to(effort):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    probable: set[int] = set()
    residual = 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            if m >= DETERMINISTIC_BOUND:
                probable.add(m)
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        d = None
        for seed in range(8):
            d = _brent_rho(m, seed, rho_steps, deadline)
            if d or (deadline is not None and time.monotonic() > deadline):
                break
        if d is None:
            residual *= m
        else:
            stack.extend((d, m // d))
    return FactoredInteger(sign, dict(sorted(factors.items())), residual, frozenset(probable))


def prime_to_part(n: int, primes: Iterable[int]) -> int:
    """Largest divisor of ``n`` coprime to every prime in ``primes``."""
    if n < 1:
        raise ValueError("prime_to_part expects a positive integer")
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def is_squarefree(n: int) -> bool:
    f = factor_integer(n)
    if not f.complete:
        # an unsplit residual may hide a square factor
        return False
    return all(e == 1 for e in f.factors.values())


def prime_divisors(n: int) -> list[int]:
    return sorted(factor_integer(n).factors)


def euler_phi(n: int) -> int:
    out = n
    for p in prime_divisors(n):
        out -= out // p
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor_integer(n).factors.items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def format_rational(q) -> str:
    return str(as_rational(q))


def format_factored_rational(q, time_budget: float | None = None) -> str:
    """``'2^8 * 43 / 3'`` style rendering; a composite denominator is parenthesized."""
    q = as_rational(q)
    if q == 0:
        return "0"
    num = str(factor_integer(q.numerator, time_budget=time_budget))
    if q.denominator == 1:
        return num
    den = str(factor_integer(q.denominator, time_budget=time_budget))
    return f"{num} / ({den})" if " * " in den else f"{num} / {den}"
