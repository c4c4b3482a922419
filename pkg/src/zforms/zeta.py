"""Siegel's formula for zeta_K(-1): constants, bounds, splitting, sigma(I), Euler products."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import Poly, factorint, primerange, symbols

from . import intmat
from .exact import Enclosure, pi_enclosure, power_enclosure
from .traceforms import NoTotallyPositiveGenerator, codifferent_generator, derivative_at_omega, trace_one_codifferent_elements


class UnsupportedDegree(ValueError):
    pass


class NonPrincipalCodifferent(ValueError):
    """Never raised for monogenic orders, whose codifferent is (1/f'(omega))."""


class ZeroElement(ValueError):
    pass


B_CONSTANTS = {
    2: Fraction(1, 240),
    3: Fraction(-1, 504),
    4: Fraction(1, 480),
    5: Fraction(-1, 264),
    7: Fraction(-1, 24),
}


def b_constant(d):
    try:
        return B_CONSTANTS[d]
    except KeyError:
        raise UnsupportedDegree(f"no b_d constant for degree {d}") from None


def discriminant_bound(d, bits=128):
    """Enclosure of |(4 pi^2)^d d b_d|^(2/3)."""
    b = abs(b_constant(d))
    pi = pi_enclosure(bits + 32)
    base = Enclosure(4 * pi.lo ** 2, 4 * pi.hi ** 2)
    val = Enclosure(base.lo ** d * d * b, base.hi ** d * d * b)
    return power_enclosure(val, 2, 3, bits)


# ideals above p


@dataclass(frozen=True)
class PrimeIdeal:
    p: int
    e: int
    f: int
    g: tuple  # lift of the irreducible factor of f mod p, constant term first

    @property
    def norm(self):
        return self.p ** self.f


@dataclass(frozen=True)
class IdealFactorization:
    factors: tuple  # (PrimeIdeal, exponent k)

    @property
    def norm(self):
        n = 1
        for P, k in self.factors:
            n *= P.norm ** k
        return n

    def rows(self):
        return [(P.p, P.e, P.f, k) for P, k in self.factors]


_x = symbols("x")


@lru_cache(maxsize=None)
def _splitting(minpoly, p):
    f = Poly(list(reversed(minpoly)), _x, modulus=p)
    _, facs = f.factor_list()
    out = []
    for g, e in facs:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        out.append(PrimeIdeal(p=p, e=e, f=g.degree(), g=tuple(coeffs)))
    out.sort(key=lambda P: (P.f, P.e, P.g))
    return tuple(out)


def prime_splitting(field, p):
    """Factorization of (p) from f mod p (Dedekind-Kummer; valid as O_K = Z[omega])."""
    primes = _splitting(field.minpoly, p)
    return IdealFactorization(tuple((P, P.e) for P in primes))


def _ideal_basis(field, gens):
    """HNF Z-basis (rows of integer coordinates) of the ideal generated by gens."""
    rows = []
    for g in gens:
        x = g
        for _ in range(field.degree):
            rows.append(list(x.num))
            x = x * field.omega
    return intmat.row_basis(rows)


def _contains(basis, elem):
    # basis rows are a Z-basis; solve c * B = elem
    sol = intmat.solve(intmat.transpose(basis), list(elem.num))
    return all(Fraction(c).denominator == 1 for c in sol)


def _prime_power_gens(field, P, k):
    g = field.from_poly(P.g)
    p = field.from_int(P.p)
    return [p ** a * g ** (k - a) for a in range(k + 1)]


def valuation(beta, P):
    """v_P(beta) for integral nonzero beta, by ideal membership of P^k."""
    field = beta.field
    top = 0
    n = abs(beta.norm())
    while n % P.p == 0:
        n //= P.p
        top += 1
    k = 0
    while k + 1 <= top // P.f:
        basis = _ideal_basis(field, _prime_power_gens(field, P, k + 1))
        if not _contains(basis, beta):
            break
        k += 1
    return k


def factor_element(beta):
    if not beta:
        raise ZeroElement("cannot factor zero")
    if not beta.is_integral:
        raise ValueError("element must be integral")
    field = beta.field
    n = abs(int(beta.norm()))
    factors = []
    for p in sorted(factorint(n)):
        for P in _splitting(field.minpoly, p):
            k = valuation(beta, P)
            if k:
                factors.append((P, k))
    fac = IdealFactorization(tuple(factors))
    if fac.norm != n:
        raise AssertionError(f"valuations of {beta} do not account for its norm")
    return fac


def sigma_ideal(beta):
    """sigma((beta)) = sum of N(J) over ideal divisors J of (beta)."""
    total = 1
    for P, k in factor_element(beta).factors:
        total *= sum(P.norm ** j for j in range(k + 1))
    return total


# zeta_K(2)


@dataclass(frozen=True)
class EulerProduct:
    value: Enclosure
    partial: Enclosure
    tail_factor: Fraction
    prime_limit: int


def zeta2_euler(field, prime_limit=10 ** 4, bits=128):
    """Enclosure of zeta_K(2): the Euler product over p <= P times a tail factor
    in [1, ((P+1)/P)^d], since each omitted factor is at most (1 - p^-2)^-d and
    prod_{n > P} (1 - n^-2)^-1 = (P+1)/P."""
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    d = field.degree
    with mpmath.workprec(bits):
        acc = mpmath.iv.mpf(1)
        for p in primerange(2, prime_limit + 1):
            for P in _splitting(field.minpoly, p):
                q = mpmath.iv.mpf(P.norm) ** 2
                acc = acc * q / (q - 1)
        lo = Fraction(*_ratio(acc.a))
        hi = Fraction(*_ratio(acc.b))
    tail = Fraction(prime_limit + 1, prime_limit) ** d
    partial = Enclosure(lo, hi)
    return EulerProduct(value=Enclosure(lo, hi * tail), partial=partial, tail_factor=tail, prime_limit=prime_limit)


def _ratio(x):
    man, exp = mpmath.mpf(x).man_exp
    return (man * 2 ** exp, 1) if exp >= 0 else (man, 2 ** -exp)


@dataclass(frozen=True)
class SiegelReport:
    lhs: int
    count: int
    rhs: Enclosure
    relative_gap: float
    zeta_minus1: Fraction
    zeta_minus1_enclosure: Enclosure
    no_universal: bool
    elements: tuple


def siegel_rhs(field, zeta2):
    d = field.degree
    b = b_constant(d)
    pi = pi_enclosure()
    disc = abs(field.discriminant)
    # |Delta|^(3/2) = |Delta| * sqrt|Delta|
    root = power_enclosure(Enclosure(Fraction(disc), Fraction(disc)), 1, 2)
    scale = (-1) ** d / b
    four_pi2 = Enclosure(4 * pi.lo ** 2, 4 * pi.hi ** 2)
    inv = Enclosure(1 / four_pi2.hi ** d, 1 / four_pi2.lo ** d)
    return (root * disc) * inv * zeta2 * scale


def siegel_consistency(field, prime_limit=10 ** 4):
    """Both sides of Siegel's identity for zeta_K(-1) at trace-one codifferent elements."""
    d = field.degree
    b = b_constant(d)
    try:
        delta = codifferent_generator(field).delta
    except NoTotallyPositiveGenerator:
        delta = derivative_at_omega(field).inverse()
    elements = trace_one_codifferent_elements(field, delta)
    lhs = sum(sigma_ideal(a / delta) for a in elements)
    zeta2 = zeta2_euler(field, prime_limit).value
    rhs = siegel_rhs(field, zeta2)
    gap = float(max(abs(rhs.lo - lhs), abs(rhs.hi - lhs)) / lhs) if lhs else float("inf")
    zm1 = 2 ** d * b * lhs
    pi = pi_enclosure()
    disc = abs(field.discriminant)
    root = power_enclosure(Enclosure(Fraction(disc), Fraction(disc)), 1, 2)
    two_pi2 = Enclosure(2 * pi.lo ** 2, 2 * pi.hi ** 2)
    inv = Enclosure(1 / two_pi2.hi ** d, 1 / two_pi2.lo ** d)
    zm1_enc = (root * disc) * inv * zeta2 * ((-1) ** d)
    return SiegelReport(
        lhs=lhs,
        count=len(elements),
        rhs=rhs,
        relative_gap=gap,
        zeta_minus1=zm1,
        zeta_minus1_enclosure=zm1_enc,
        no_universal=lhs > d,
        elements=tuple(elements),
    )
