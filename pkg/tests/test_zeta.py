from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, primerange, symbols
from sympy.polys.numberfields.primes import prime_decomp

from zforms.zeta import (
    UnsupportedDegree,
    ZeroElement,
    b_constant,
    discriminant_bound,
    factor_element,
    prime_splitting,
    sigma_ideal,
    siegel_consistency,
    zeta2_euler,
)

x = symbols("x")


def test_bound_values():
    got = {d: discriminant_bound(d) for d in (2, 3, 4, 5, 7)}
    # frozen from a 60-digit mpmath evaluation
    with mpmath.workdps(60):
        for d, enc in got.items():
            ref = (abs((4 * mpmath.pi ** 2) ** d * d * mpmath.mpf(b_constant(d).numerator) / b_constant(d).denominator)) ** (mpmath.mpf(2) / 3)
            assert Fraction(str(ref - mpmath.mpf(10) ** -30)) < enc.hi
            assert enc.lo < Fraction(str(ref + mpmath.mpf(10) ** -30))
            assert enc.width < Fraction(1, 10 ** 20)
    with pytest.raises(UnsupportedDegree):
        discriminant_bound(6)


@pytest.mark.parametrize("name", ["q5", "cubic49", "quartic725", "quintic14641"])
def test_splitting_against_sympy(field, name):
    K = field(name)
    T = Poly(list(reversed(K.minpoly)), x)
    for p in primerange(2, 60):
        ours = sorted((P.e, P.f) for P, _ in prime_splitting(K, p).factors)
        ref = sorted((P.e, P.f) for P in prime_decomp(p, T))
        assert ours == ref
        assert sum(e * f for e, f in ours) == K.degree


def test_sigma_values(field):
    C = field("cubic49")
    assert sigma_ideal(C.parse("omega+2")) == 8
    assert sigma_ideal(C.from_int(2)) == 9
    assert sigma_ideal(C.units[0]) == 1
    K = field("q5")
    assert sigma_ideal(K.from_int(2)) == 5
    with pytest.raises(ZeroElement):
        factor_element(K.zero)


def test_sigma_split_prime(field):
    K = field("q5")
    # 11 splits as P P': divisors 1, P, P', (11) -> 1 + 11 + 11 + 121
    assert sigma_ideal(K.from_int(11)) == 144


coords = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


@settings(max_examples=30, deadline=None)
@given(coords, coords)
def test_sigma_multiplicative(a, b):
    from math import gcd

    from zforms.fields import resolve_field

    K = resolve_field("cubic49")
    x1, x2 = K.element(a), K.element(b)
    if not x1 or not x2:
        return
    if gcd(int(x1.norm()), int(x2.norm())) != 1:
        return
    assert sigma_ideal(x1 * x2) == sigma_ideal(x1) * sigma_ideal(x2)


@settings(max_examples=30, deadline=None)
@given(coords)
def test_factorization_norm(a):
    from zforms.fields import resolve_field

    K = resolve_field("cubic49")
    e = K.element(a)
    if e:
        assert factor_element(e).norm == abs(e.norm())


def test_zeta2_q5_closed_form(field):
    # zeta_K(2) = 2 pi^4 / (75 sqrt 5) for K = Q(sqrt 5)
    enc = zeta2_euler(field("q5"), 3000).value
    with mpmath.workdps(40):
        ref = Fraction(str(2 * mpmath.pi ** 4 / (75 * mpmath.sqrt(5))))
    assert enc.lo <= ref <= enc.hi
    assert enc.width / ref < Fraction(1, 1000)


@pytest.mark.parametrize("name,lhs", [("q5", 2), ("cubic49", 3)])
def test_siegel(field, name, lhs):
    rep = siegel_consistency(field(name), 10 ** 4)
    assert rep.lhs == lhs
    assert rep.relative_gap < 0.01
    assert rep.zeta_minus1 in rep.zeta_minus1_enclosure
    assert not rep.no_universal


def test_siegel_zeta_values(field):
    assert siegel_consistency(field("q5"), 500).zeta_minus1 == Fraction(1, 30)
    assert siegel_consistency(field("cubic49"), 500).zeta_minus1 == Fraction(-1, 21)
    q2 = siegel_consistency(field("q2"), 500)
    assert q2.zeta_minus1 == Fraction(1, 12) and q2.no_universal
