"""Rational enclosures for the few transcendental or irrational quantities needed."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import integer_nthroot

WORK_BITS = 128


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def __mul__(self, other):
        if not isinstance(other, Enclosure):
            other = Enclosure(Fraction(other), Fraction(other))
        prods = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Enclosure(min(prods), max(prods))

    __rmul__ = __mul__

    def format(self, digits=6):
        return f"[{float(self.lo):.{digits}f}, {float(self.hi):.{digits}f}]"


def _mpf_fraction(x):
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(man) * Fraction(2) ** exp


def pi_enclosure(bits=WORK_BITS):
    with mpmath.workprec(bits + 16):
        p = _mpf_fraction(mpmath.pi)
    eps = Fraction(1, 2 ** bits)
    return Enclosure(p - eps, p + eps)


def root_floor(q, n, bits):
    """Largest k / 2^bits with (k / 2^bits)^n <= q, for rational q >= 0."""
    q = Fraction(q)
    scaled = q.numerator * 2 ** (n * bits) // q.denominator
    r, _ = integer_nthroot(scaled, n)
    return Fraction(r, 2 ** bits)


def root_enclosure(q, n, bits=WORK_BITS):
    """Enclosure of q^(1/n) of width 2^-bits (exact when q is a perfect power)."""
    lo = root_floor(q, n, bits)
    if lo ** n == q:
        return Enclosure(lo, lo)
    return Enclosure(lo, lo + Fraction(1, 2 ** bits))


def power_enclosure(enc, num, den, bits=WORK_BITS):
    """enc^(num/den) for a positive enclosure."""
    lo = root_floor(enc.lo ** num, den, bits)
    hi = root_floor(enc.hi ** num, den, bits) + Fraction(1, 2 ** bits)
    return Enclosure(lo, hi)
