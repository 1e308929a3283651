import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from kuzeta.arith import prime_to_part
from kuzeta.bernoulli import zeta_numeric, zeta_special_value
from kuzeta.errors import OutOfRangeError, TranscendentalValueError, ValidationError
from kuzeta.model import KTheoryDatum, WeightCell, cpn, dual, moore, sphere, suspend, wedge
from kuzeta.zeta import (
    completed_provisional_numeric,
    euler_product_truncated,
    factorized_numeric,
    functional_equation_residual,
    homotopy_group_order,
    provisional_factorization,
    provisional_limit_numeric,
    provisional_special_value,
    torsion_l_special_value,
    vanishing_order,
    verify_euler,
    zeta_factorization,
    zeta_ku_special_value,
)
from kuzeta.characters import dir_prime_blocks
from kuzeta.lfunctions import l_numeric

ALPHA3 = KTheoryDatum("alpha3", {2}, {0: WeightCell(1), 678: WeightCell(1)})
L3_AT_M5 = Fraction(2**2 * 7 * 43 * 1171, 3)
L7_AT_M5 = Fraction(2**6 * 138054547 * 163933047708171216095114393777711, 7)


def test_provisional_factorization_examples():
    assert provisional_factorization(cpn(3)).provisional == {0: 1, 1: 1, 2: 1, 3: 1}
    assert provisional_factorization(sphere()).provisional == {0: 1}
    x = KTheoryDatum("x", {2}, {0: WeightCell(2, 1), 1: WeightCell(1, 1)})
    assert provisional_factorization(x).provisional == {0: 1}


def test_torsion_factorization_mirrors_dir_prime():
    fac = zeta_factorization(suspend(moore(21), 2))
    assert [(t.weight, t.prime, len(t.characters)) for t in fac.torsion] == [(1, 3, 2), (1, 7, 6)]


def test_vanishing_order_examples():
    assert vanishing_order(sphere(), 1) == -1
    assert vanishing_order(sphere(), -2) == 1
    assert vanishing_order(cpn(3), 1) == 0


def test_vanishing_order_matches_factor_count():
    # independent count of zeros and poles of prod zeta(s - w)^e_w
    for x in [sphere(), cpn(1), cpn(3), cpn(6), suspend(cpn(2), -4), ALPHA3]:
        fac = provisional_factorization(x).provisional
        for m in range(-12, 8):
            order = 0
            for w, e in fac.items():
                t = m - w
                if t == 1:
                    order -= e
                elif t < 0 and t % 2 == 0:
                    order += e
            assert vanishing_order(x, m) == order


def test_provisional_special_values():
    assert provisional_special_value(sphere(), -11).value == Fraction(691, 32760)
    v = provisional_special_value(cpn(1), -1)
    assert v.kind == "zero" and v.order == 1
    assert provisional_special_value(sphere(), 1).kind == "pole"
    assert provisional_special_value(cpn(3), 1).kind == "cancellation"
    with pytest.raises(TranscendentalValueError):
        provisional_special_value(sphere(), 3)
    x, y = cpn(2), suspend(sphere(), -2)
    for m in (-3, -5, -7):
        expected = math.prod(
            zeta_special_value(m - w) ** e for w, e in provisional_factorization(x).provisional.items()
        ) * zeta_special_value(m + 1)
        assert provisional_special_value(wedge(x, y), m).value == expected


def test_limit_examples():
    r = provisional_limit_numeric(cpn(3), 1)
    closed = -float(mpmath.zeta(3)) / (96 * math.pi**2)
    assert abs(r.value - closed) <= 1e-6
    assert set(r.comparisons) == {
        "closed_form -zeta(3)/(96 pi^2)",
        "variant -euler_gamma*zeta(3)/(96 pi^2)",
    }
    assert r.comparisons["variant -euler_gamma*zeta(3)/(96 pi^2)"]["difference"] > 1e-4
    with pytest.raises(OutOfRangeError):
        provisional_limit_numeric(cpn(1), 2)
    assert abs(provisional_limit_numeric(sphere(), 0).value + 0.5) <= 1e-12


def test_limit_against_direct_approach():
    # evaluate the product just off s = 1 and extrapolate
    f = lambda s: math.prod(complex(mpmath.zeta(s - w)) for w in range(4))
    h = 1e-5
    approx = (f(1 + h) + f(1 - h)) / 2
    assert abs(provisional_limit_numeric(cpn(3), 1).value - approx) <= 1e-8


def test_torsion_l_values():
    assert torsion_l_special_value(moore(21), 0, 3, -5) == L3_AT_M5
    assert torsion_l_special_value(moore(21), 0, 7, -5) == L7_AT_M5
    with pytest.raises(OutOfRangeError):
        torsion_l_special_value(sphere(), 0, 3, -5)
    with pytest.raises(OutOfRangeError):
        torsion_l_special_value(moore(21), 0, 5, -5)
    with pytest.raises(TranscendentalValueError):
        torsion_l_special_value(moore(21), 0, 3, 2)


def test_full_special_values():
    r = zeta_ku_special_value(moore(21), -5)
    assert r.torsion == {(0, 3): L3_AT_M5, (0, 7): L7_AT_M5}
    assert r.total.value == Fraction(
        2**8 * 43 * 1171 * 138054547 * 163933047708171216095114393777711, 3
    )
    assert r.total.value.denominator == 3
    assert r.factorwise_denominator_product == 21
    assert zeta_ku_special_value(sphere(), -11).total.value == Fraction(691, 32760)
    w = zeta_ku_special_value(wedge(sphere(), moore(3)), -1)
    assert w.total.value == (
        zeta_ku_special_value(sphere(), -1).total.value * zeta_ku_special_value(moore(3), -1).total.value
    )


def test_special_value_needs_even_data():
    with pytest.raises(ValidationError):
        zeta_ku_special_value(KTheoryDatum("x", {2}, {0: WeightCell(1, 1)}), -3)


def test_691_cancellation():
    r = zeta_ku_special_value(ALPHA3, -11)
    assert zeta_special_value(-11).denominator == 32760
    assert zeta_special_value(-689).denominator == 387923085396
    assert r.factorwise_denominator_product == 32760 * 387923085396
    assert r.factorwise_denominator_product % 691 == 0
    assert r.total.value.denominator % 691 != 0


def test_homotopy_examples():
    h = homotopy_group_order(sphere(), 3)
    assert (h.raw_product, h.order, h.modulo) == (12, 3, (2,))
    h = homotopy_group_order(moore(21), -13)
    assert (h.order, h.branch, h.argument) == (21, "left", -5)
    expected = prime_to_part(32760 * 387923085396, {2})
    assert homotopy_group_order(ALPHA3, 23).order == expected
    assert homotopy_group_order(dual(ALPHA3), -25).order == expected
    with pytest.raises(OutOfRangeError):
        homotopy_group_order(ALPHA3, -25)


def test_homotopy_ranges():
    # torsion-free bounds are inclusive
    assert homotopy_group_order(sphere(), 1).branch == "right"
    assert homotopy_group_order(sphere(), -3).branch == "left"
    for d in (-2, -1, 0):
        with pytest.raises(OutOfRangeError):
            homotopy_group_order(sphere(), d)
    # torsion bounds are strict
    for d in (-3, -1, 1):
        with pytest.raises(OutOfRangeError):
            homotopy_group_order(moore(3), d)
    assert homotopy_group_order(moore(3), 3).branch == "right"
    assert homotopy_group_order(moore(3), -5).branch == "left"
    with pytest.raises(OutOfRangeError):
        homotopy_group_order(moore(3), -6)
    assert homotopy_group_order(sphere(), 4).note == "trivial"


def test_homotopy_requires_splitting():
    x = KTheoryDatum("m", {2}, {0: WeightCell(0, 0, 3)}, "unknown")
    with pytest.raises(ValidationError):
        homotopy_group_order(x, -5)


def test_even_degree_triviality():
    for x in (sphere(), cpn(2), suspend(cpn(3), -2), ALPHA3):
        for d in range(-40, 41, 2):
            try:
                h = homotopy_group_order(x, d)
            except OutOfRangeError:
                assert -2 * x.b - 3 < d < 1 - 2 * x.a
                continue
            assert h.order == 1 and h.note == "trivial"


def test_branch_consistency():
    for x in (sphere(), cpn(1), cpn(4), suspend(cpn(2), 4), wedge(sphere(), suspend(sphere(), 6))):
        dx = dual(x)
        for d in range(-45, 46, 2):
            try:
                h = homotopy_group_order(x, d)
            except OutOfRangeError:
                continue
            hd = homotopy_group_order(dx, -2 - d)
            assert h.order == hd.order
            assert h.branch != hd.branch


def test_sphere_orders_follow_adams():
    for k in range(2, 21):
        h = homotopy_group_order(sphere(), 2 * k - 1)
        expected = 1
        if k % 2 == 0:
            expected = math.prod(
                p ** (1 + _val(k, p)) for p in range(3, k + 2) if _is_prime(p) and k % (p - 1) == 0
            )
        assert h.order == expected


def _is_prime(n):
    return n > 1 and all(n % q for q in range(2, int(n**0.5) + 1))


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def test_euler_product_examples():
    assert abs(euler_product_truncated(sphere(), 4, 10**5) - math.pi**4 / 90) <= 1e-8
    target = float(mpmath.zeta(5) * mpmath.zeta(4))
    assert abs(euler_product_truncated(cpn(1), 5, 10**5) - target) <= 1e-8
    # moore(3): the two primitive L-functions; the omitted p = 3 factors are trivial
    prod = 1
    for chi in dir_prime_blocks(3)[3]:
        prod *= l_numeric(3, chi)
    assert abs(euler_product_truncated(moore(3), 3, 10**5) - prod) <= 1e-8
    with pytest.raises(OutOfRangeError):
        euler_product_truncated(cpn(2), 3, 100)


def test_euler_correction_for_imprimitive_primes():
    # at weight 0 with n = 21, the L-functions mod 9 have an Euler factor at 7
    x = moore(21)
    r = verify_euler(x, 3, 10**4)
    assert r.difference <= 1e-8
    raw = 1
    for ell, block in dir_prime_blocks(21).items():
        for chi in block:
            raw *= l_numeric(3, chi)
    assert abs(raw - r.factorized) > 1e-4


def test_truncation_convergence():
    for x in (sphere(), cpn(1), cpn(2), moore(3), moore(15)):
        s = 2 + (x.b or 0)
        diffs = [abs(euler_product_truncated(x, s, n) - factorized_numeric(x, s)) for n in (10**3, 10**4, 10**5)]
        assert diffs[0] > diffs[1] > diffs[2]


def test_functional_equation_examples():
    r = functional_equation_residual(cpn(2), 2.2 + 0.4j)
    assert r.residual <= 1e-8
    assert functional_equation_residual(sphere(), 0.5).residual <= 1e-10
    r = functional_equation_residual(moore(3), 1.7)
    assert r.residual <= 1e-8 and r.sign == 1
    assert abs(r.root_number_product - 1) <= 1e-8
    with pytest.raises(OutOfRangeError):
        functional_equation_residual(wedge(sphere(), moore(3)), 1.7)


def test_functional_equation_torsion_shifted():
    x = suspend(moore(15), 2)
    r = functional_equation_residual(x, 0.7 + 1.3j)
    assert r.relative_residual <= 1e-8
    assert abs(r.root_number_product - r.sign) <= 1e-8


def test_completed_provisional_against_mpmath():
    s = 2.2 + 0.4j
    xi = lambda z: complex(mpmath.pi ** (-z / 2) * mpmath.gamma(z / 2) * mpmath.zeta(z))
    ref = xi(s) * xi(s - 1) * xi(s - 2)
    assert abs(completed_provisional_numeric(cpn(2), s) - ref) <= 1e-10 * max(1, abs(ref))


small_free = st.dictionaries(
    st.integers(-3, 3), st.builds(WeightCell, st.integers(0, 2)), min_size=1, max_size=3
).map(lambda w: KTheoryDatum("x", {2}, w))
small_tors = st.sampled_from([1, 3, 5, 7, 15, 21, 35])


@settings(max_examples=25)
@given(small_free, small_tors, small_tors, st.integers(-16, -6))
def test_wedge_multiplicativity(x, n1, n2, m):
    from math import gcd

    if gcd(n1, n2) != 1:
        n2 = 1
    y = KTheoryDatum("y", {2}, {0: WeightCell(0, 0, n1)}, "complete")
    z = wedge(x, KTheoryDatum("z", {2}, {-1: WeightCell(1, 0, n2)}, "complete"))
    a, b = zeta_ku_special_value(y, m).total, zeta_ku_special_value(z, m).total
    ab = zeta_ku_special_value(wedge(y, z), m).total
    if a.kind == b.kind == "value":
        assert ab.value == a.value * b.value
    else:
        assert ab.order == a.order + b.order


@settings(max_examples=25)
@given(small_free, st.sampled_from([-7.5 + 0.5j, -4.25 + 2j, -9.0 + 1j, 3.5 - 1j]))
def test_suspension_shift(x, s):
    sx = suspend(x, 2)
    assert provisional_factorization(sx).provisional == {
        w + 1: e for w, e in provisional_factorization(x).provisional.items()
    }
    lhs = math.prod(zeta_numeric(s - w) ** e for w, e in provisional_factorization(sx).provisional.items())
    rhs = math.prod(zeta_numeric(s - 1 - w) ** e for w, e in provisional_factorization(x).provisional.items())
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(rhs))
