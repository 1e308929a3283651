"""Assembly of KU-local zeta- and L-functions from a K-theory datum.

For a datum X with exponents ``e_w = beta_2w - beta_2w+1`` and torsion orders
``n_w``:

    provisional zeta   Z(s, X)   = prod_w zeta(s - w)^e_w
    torsion L-function L(s, X)   = prod_w prod_{chi in Dir(n_w)} L(s - w, chi)
    full zeta                    = Z(s, X) * L(s, X)

where ``Dir(n)`` holds, for each prime l | n, the l - 1 characters of modulus
l^2 with order l.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import _numeric
from .arith import denom, primes_up_to, prime_divisors, prime_to_part
from .bernoulli import zeta_numeric, zeta_special_value
from .characters import DirichletCharacter, dir_prime_blocks, primitive_of
from .errors import OutOfRangeError, TranscendentalValueError, ValidationError
from .lfunctions import completed_l_numeric, l_numeric, orbit_product, root_number
from .model import KTheoryDatum, desuspended_dual, dual, validate


@dataclass(frozen=True)
class TorsionFactor:
    weight: int
    prime: int
    characters: tuple[DirichletCharacter, ...]


@dataclass(frozen=True)
class ZetaFactorization:
    provisional: dict
    torsion: tuple[TorsionFactor, ...] = ()

    def describe(self) -> str:
        parts = []
        for w, e in sorted(self.provisional.items()):
            arg = "s" if w == 0 else f"s{'-' if w > 0 else '+'}{abs(w)}"
            parts.append(f"zeta({arg})" + (f"^{e}" if e != 1 else ""))
        for t in self.torsion:
            arg = "s" if t.weight == 0 else f"s{'-' if t.weight > 0 else '+'}{abs(t.weight)}"
            parts.append(f"prod_{{chi in D_{t.prime}}} L({arg}, chi) [{len(t.characters)} characters]")
        return " * ".join(parts) if parts else "1"


def provisional_factorization(x: KTheoryDatum) -> ZetaFactorization:
    validate(x)
    exps = {w: c.beta_even - c.beta_odd for w, c in x.cells}
    return ZetaFactorization({w: e for w, e in exps.items() if e})


def zeta_factorization(x: KTheoryDatum) -> ZetaFactorization:
    prov = provisional_factorization(x)
    torsion = []
    for w, c in x.cells:
        if c.torsion_order > 1:
            for ell, chars in dir_prime_blocks(c.torsion_order).items():
                torsion.append(TorsionFactor(w, ell, tuple(chars)))
    return ZetaFactorization(prov.provisional, tuple(torsion))


def vanishing_order(x: KTheoryDatum, m: int) -> int:
    """Order of zero of the provisional zeta-function at s = m (negative for poles)."""
    validate(x)
    order = -x.betti(2 * m - 2) + x.betti(2 * m - 1)
    if x.b is None:
        return order
    k = 1
    while 2 * m + 4 * k <= 2 * x.b + 1:
        order += x.betti(2 * m + 4 * k) - x.betti(2 * m + 4 * k + 1)
        k += 1
    return order


@dataclass(frozen=True)
class SpecialValue:
    """An exact value, or a zero/pole marker carrying its order."""

    kind: str  # "value", "zero", "pole" or "cancellation"
    value: Fraction | None = None
    order: int = 0

    def __str__(self) -> str:
        if self.kind == "value":
            return str(self.value)
        if self.kind == "zero":
            return f"0 (zero of order {self.order})"
        if self.kind == "pole":
            return f"pole of order {-self.order}"
        return "pole and zero cancel (use the numeric limit)"

    @property
    def denominator(self) -> int | None:
        if self.kind == "value":
            return self.value.denominator
        if self.kind == "zero":
            return 1
        return None


def _zeta_factor(t: int, e: int) -> SpecialValue:
    """``zeta(t)^e`` at an integer t <= 1 as a value or marker."""
    if t == 1:
        return SpecialValue("pole", None, -e)
    z = zeta_special_value(t)
    if z == 0:
        return SpecialValue("zero", Fraction(0), e)
    return SpecialValue("value", z**e, 0)


def _combine(factors) -> SpecialValue:
    order = sum(f.order for f in factors)
    if all(f.kind == "value" for f in factors):
        out = Fraction(1)
        for f in factors:
            out *= f.value
        return SpecialValue("value", out, 0)
    if order > 0:
        return SpecialValue("zero", Fraction(0), order)
    if order < 0:
        return SpecialValue("pole", None, order)
    return SpecialValue("cancellation", None, 0)


def _check_exact_arguments(x: KTheoryDatum, m: int) -> None:
    for w, e in provisional_factorization(x).provisional.items():
        if m - w >= 2:
            label = "zeta(s)" if w == 0 else f"zeta(s{'-' if w > 0 else '+'}{abs(w)})"
            raise TranscendentalValueError(
                f"factor {label}^{e} at s={m} needs zeta({m - w}), which is not rational; "
                "use the numeric commands"
            )


def provisional_special_value(x: KTheoryDatum, m: int) -> SpecialValue:
    """Exact ``prod_w zeta(m - w)^e_w`` or a zero/pole marker."""
    order = vanishing_order(x, m)
    if order > 0:
        return SpecialValue("zero", Fraction(0), order)
    if order < 0:
        return SpecialValue("pole", None, order)
    _check_exact_arguments(x, m)
    factors = [_zeta_factor(m - w, e) for w, e in provisional_factorization(x).provisional.items()]
    return _combine(factors)


# --- numeric limit at cancellation points ---------------------------------

@dataclass
class LimitReport:
    argument: int
    value: complex
    leading_terms: list = field(default_factory=list)
    comparisons: dict = field(default_factory=dict)


def _cp3_closed_forms() -> dict:
    z3 = zeta_numeric(3).real
    closed = -z3 / (96 * math.pi**2)
    gamma_e = 0.57721566490153286061
    return {
        "closed_form -zeta(3)/(96 pi^2)": closed,
        "variant -euler_gamma*zeta(3)/(96 pi^2)": gamma_e * closed,
    }


def provisional_limit_numeric(x: KTheoryDatum, m: int) -> LimitReport:
    """``lim_{s -> m}`` of the provisional zeta-function when the net order is 0.

    Each factor ``zeta(s - w)^e`` is replaced by its leading Laurent coefficient
    at s = m: 1 at a pole (residue of zeta at 1), ``zeta'(t)`` at a trivial zero
    t, and ``zeta(t)`` otherwise.  Zero and pole orders cancel by assumption,
    so the product of leading coefficients is the limit.
    """
    order = vanishing_order(x, m)
    if order:
        kind = "zero" if order > 0 else "pole"
        raise OutOfRangeError(f"net {kind} of order {abs(order)} at s={m}; no finite nonzero limit")
    value = 1 + 0j
    terms = []
    for w, e in sorted(provisional_factorization(x).provisional.items()):
        t = m - w
        if t == 1:
            coeff, label = 1.0 + 0j, "residue of zeta at 1"
        elif t < 0 and t % 2 == 0:
            coeff, label = _numeric.zeta_derivative(t), f"zeta'({t})"
        else:
            coeff, label = zeta_numeric(t), f"zeta({t})"
        value *= coeff**e
        terms.append((w, e, label, coeff))
    report = LimitReport(m, value, terms)
    if provisional_factorization(x).provisional == {0: 1, 1: 1, 2: 1, 3: 1} and m == 1:
        report.comparisons = {
            name: {"value": ref, "difference": abs(value - ref)}
            for name, ref in _cp3_closed_forms().items()
        }
    return report


# --- exact special values of the full zeta-function ------------------------

def torsion_l_special_value(x: KTheoryDatum, w: int, ell: int, m: int) -> Fraction:
    """Exact ``prod_{chi in D_l} L(m - w, chi)`` for the torsion at weight w."""
    validate(x)
    n = x.cell(w).torsion_order
    if n == 1 or n % ell:
        raise OutOfRangeError(f"{ell} does not divide the torsion order {n} at weight {w}")
    if m - w > 0:
        raise TranscendentalValueError(
            f"L({m - w}, chi) is not available exactly; shifted argument must be <= 0"
        )
    return orbit_product(m - w, dir_prime_blocks(n)[ell])


@dataclass
class SpecialValueReport:
    argument: int
    provisional: dict  # w -> (zeta argument, exponent, SpecialValue)
    torsion: dict  # (w, l) -> Fraction
    total: SpecialValue
    factor_denominators: dict  # label -> int or None

    @property
    def factorwise_denominator_product(self) -> int | None:
        out = 1
        for d in self.factor_denominators.values():
            if d is None:
                return None
            out *= d
        return out


def _require_even(x: KTheoryDatum) -> None:
    if not x.even_concentrated:
        raise ValidationError(
            "this operation needs K-theory concentrated in even degrees (beta_odd = 0 at every weight)"
        )


def zeta_ku_special_value(x: KTheoryDatum, m: int) -> SpecialValueReport:
    validate(x)
    _require_even(x)
    _check_exact_arguments(x, m)
    fac = zeta_factorization(x)
    for t in fac.torsion:
        if m - t.weight > 0:
            raise TranscendentalValueError(
                f"torsion factor at weight {t.weight} needs L({m - t.weight}, chi), which is not exact"
            )
    prov = {}
    factors = []
    dens: dict[str, int | None] = {}
    for w, e in sorted(fac.provisional.items()):
        sv = _zeta_factor(m - w, e)
        prov[w] = (m - w, e, sv)
        factors.append(sv)
        dens[f"zeta({m - w})^{e}" if e != 1 else f"zeta({m - w})"] = sv.denominator
    tors = {}
    for t in fac.torsion:
        v = orbit_product(m - t.weight, t.characters)
        tors[(t.weight, t.prime)] = v
        # a vanishing orbit product means every L(m - w, chi) in the block vanishes (simply)
        factors.append(
            SpecialValue("value", v, 0) if v else SpecialValue("zero", Fraction(0), len(t.characters))
        )
        dens[f"L_{t.prime}({m - t.weight}) [weight {t.weight}]"] = denom(v)
    return SpecialValueReport(m, prov, tors, _combine(factors), dens)


# --- homotopy-group orders -------------------------------------------------

@dataclass(frozen=True)
class HomotopyOrder:
    degree: int
    order: int
    modulo: tuple[int, ...]
    branch: str | None
    argument: int | None
    raw_product: int
    factor_denominators: tuple = ()
    note: str = ""


def _branch(x: KTheoryDatum, d: int) -> str:
    a, b = x.a, x.b
    if x.torsion_free:
        if d >= 1 - 2 * a:
            return "right"
        if d <= -2 * b - 3:
            return "left"
        raise OutOfRangeError(
            f"degree {d} lies in the band {-2 * b - 2}..{-2 * a} where no closed formula applies"
        )
    if d > 1 - 2 * a:
        return "right"
    if d < -2 * b - 3:
        return "left"
    raise OutOfRangeError(
        f"degree {d} lies in the band {-2 * b - 3}..{1 - 2 * a} (boundary included for torsion data) "
        "where no closed formula applies"
    )


def homotopy_group_order(x: KTheoryDatum, d: int) -> HomotopyOrder:
    """Order of the degree-d KU-local homotopy group of DX, away from P.

    For odd ``d = 2k - 1`` the order is the prime-to-P part of the product of
    the denominators of the isoweight factors, evaluated at ``1 - k`` (right
    branch) or ``k + 1`` (left branch), where the weight-w factors are
    ``zeta(t - w)^e_w`` (right) or ``zeta(t + w)^e_w`` (left) together with the
    torsion orbit products at the same shifted arguments.
    """
    validate(x)
    _require_even(x)
    modulo = tuple(sorted(x.excluded_primes))
    if x.has_torsion and x.skeletal_splitting != "complete":
        raise ValidationError(
            "orders for data with torsion need skeletal_splitting: complete"
        )
    if x.a is None:
        return HomotopyOrder(d, 1, modulo, None, None, 1, (), "trivial (zero datum)")
    branch = _branch(x, d)
    if d % 2 == 0:
        if x.has_torsion:
            raise OutOfRangeError(
                f"even degree {d}: no formula for even degrees of data with torsion"
            )
        return HomotopyOrder(d, 1, modulo, branch, None, 1, (), "trivial")
    k = (d + 1) // 2
    base = 1 - k if branch == "right" else k + 1
    sign = -1 if branch == "right" else 1
    raw = 1
    dens = []
    fac = zeta_factorization(x)
    for w, e in sorted(fac.provisional.items()):
        t = base + sign * w
        q = zeta_special_value(t) ** e
        dens.append((f"zeta({t})" + (f"^{e}" if e != 1 else ""), denom(q)))
        raw *= denom(q)
    for tf in fac.torsion:
        t = base + sign * tf.weight
        q = orbit_product(t, tf.characters)
        dens.append((f"L_{tf.prime}({t}) [weight {tf.weight}]", denom(q)))
        raw *= denom(q)
    return HomotopyOrder(d, prime_to_part(raw, modulo), modulo, branch, base, raw, tuple(dens))


# --- numerics: Euler products and functional equations ---------------------

def _check_euler_region(x: KTheoryDatum, s: complex) -> None:
    b = x.b if x.b is not None else 0
    if s.real <= 1 + b:
        raise OutOfRangeError(f"Euler product needs Re(s) > {1 + b}, got {s}")


def _torsion_modulus(x: KTheoryDatum) -> int:
    n = 1
    for _, c in x.cells:
        n *= c.torsion_order
    return n


def euler_product_truncated(x: KTheoryDatum, s: complex, bound: int) -> complex:
    """Euler product over primes ``p <= bound``.

    Torsion factors omit the primes dividing any torsion order.
    """
    validate(x)
    s = complex(s)
    if bound < 2:
        raise OutOfRangeError("bound must be at least 2")
    _check_euler_region(x, s)
    fac = zeta_factorization(x)
    skip = set(prime_divisors(_torsion_modulus(x))) if fac.torsion else set()
    log_total = 0j
    primes = primes_up_to(bound)
    for w, e in fac.provisional.items():
        acc = 0j
        for p in primes:
            acc -= cmath.log(1 - cmath.exp((w - s) * math.log(p)))
        log_total += e * acc
    for tf in fac.torsion:
        for chi in tf.characters:
            f = chi.modulus
            table = {r: chi.value_complex(r) for r in range(f)}
            acc = 0j
            for p in primes:
                if p in skip:
                    continue
                v = table[p % f]
                if v:
                    acc -= cmath.log(1 - v * cmath.exp((tf.weight - s) * math.log(p)))
            log_total += acc
    return cmath.exp(log_total)


def factorized_numeric(x: KTheoryDatum, s: complex) -> complex:
    """The analytic factorization at s, with the Euler factors at primes
    dividing a torsion order (but not the conductor) removed so that it is
    directly comparable with :func:`euler_product_truncated`."""
    validate(x)
    s = complex(s)
    fac = zeta_factorization(x)
    out = 1 + 0j
    for w, e in fac.provisional.items():
        out *= zeta_numeric(s - w) ** e
    skip = prime_divisors(_torsion_modulus(x)) if fac.torsion else []
    for tf in fac.torsion:
        for chi in tf.characters:
            prim = primitive_of(chi)
            out *= l_numeric(s - tf.weight, prim)
            for p in skip:
                out *= 1 - prim.value_complex(p) * p ** (tf.weight - s)
    return out


@dataclass
class EulerReport:
    s: complex
    bound: int
    truncated: complex
    factorized: complex

    @property
    def difference(self) -> float:
        return abs(self.truncated - self.factorized)


def verify_euler(x: KTheoryDatum, s: complex, bound: int) -> EulerReport:
    s = complex(s)
    return EulerReport(s, bound, euler_product_truncated(x, s, bound), factorized_numeric(x, s))


def completed_zeta_numeric(s: complex) -> complex:
    """``pi^(-s/2) Gamma(s/2) zeta(s)``."""
    s = complex(s)
    return cmath.exp(-s / 2 * math.log(math.pi)) * _numeric.gamma(s / 2) * zeta_numeric(s)


def completed_provisional_numeric(x: KTheoryDatum, s: complex) -> complex:
    out = 1 + 0j
    for w, e in provisional_factorization(x).provisional.items():
        out *= completed_zeta_numeric(complex(s) - w) ** e
    return out


def completed_torsion_numeric(x: KTheoryDatum, s: complex) -> complex:
    out = 1 + 0j
    for tf in zeta_factorization(x).torsion:
        for chi in tf.characters:
            out *= completed_l_numeric(complex(s) - tf.weight, primitive_of(chi))
    return out


@dataclass
class FunctionalEquationReport:
    kind: str  # "provisional" or "torsion"
    s: complex
    left: complex
    right: complex
    sign: int
    residual: float
    root_number_product: complex | None = None

    @property
    def relative_residual(self) -> float:
        return self.residual / max(1.0, abs(self.left))


def functional_equation_residual(x: KTheoryDatum, s: complex) -> FunctionalEquationReport:
    """Compare the completed function of X at s with that of its dual at 1 - s.

    Torsion-free data use the Spanier-Whitehead dual.  Torsion-only data use
    the desuspended dual, which negates the torsion weights; the sign is the
    one of +1, -1 that fits best, reported next to the product of the root
    numbers that predicts it.
    """
    validate(x)
    s = complex(s)
    if x.torsion_free:
        _require_even(x)
        left = completed_provisional_numeric(x, s)
        right = completed_provisional_numeric(dual(x), 1 - s)
        return FunctionalEquationReport("provisional", s, left, right, 1, abs(left - right))
    if not x.torsion_only:
        raise OutOfRangeError(
            "functional equation check is unsupported for data mixing free and torsion parts"
        )
    left = completed_torsion_numeric(x, s)
    right = completed_torsion_numeric(desuspended_dual(x), 1 - s)
    sign = 1 if abs(left - right) <= abs(left + right) else -1
    roots = 1 + 0j
    for tf in zeta_factorization(x).torsion:
        for chi in tf.characters:
            roots *= root_number(primitive_of(chi))
    return FunctionalEquationReport("torsion", s, left, right, sign, abs(left - sign * right), roots)
