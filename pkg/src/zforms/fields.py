"""Exact arithmetic in a monogenic order Z[omega] of a totally real field.

Elements are integer coordinate vectors in the power basis 1, omega, ...,
omega^(d-1) over a common positive denominator, kept in lowest terms.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import gcd
from pathlib import Path

from . import poly
from .intmat import det, solve


class FieldError(ValueError):
    pass


class NotMonic(FieldError):
    pass


class NotSquarefree(FieldError):
    pass


class NotTotallyReal(FieldError):
    pass


class BadUnit(FieldError):
    pass


class MixedFields(TypeError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    label: str
    minpoly: tuple
    units: tuple = ()
    provenance: str = ""


def parse_field_spec(text):
    """Parse the `key = value` field-file format."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FieldError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    if "minpoly" not in values:
        raise FieldError("field spec has no minpoly")
    try:
        minpoly = tuple(int(c) for c in ast.literal_eval(values["minpoly"]))
        units = tuple(tuple(int(c) for c in u) for u in ast.literal_eval(values.get("units", "[]")))
    except (ValueError, SyntaxError, TypeError) as exc:
        raise FieldError(f"malformed field spec: {exc}") from None
    return FieldSpec(
        label=values.get("label", ""),
        minpoly=minpoly,
        units=units,
        provenance=values.get("provenance", ""),
    )


def format_field_spec(spec):
    lines = [f"label = {spec.label}", f"minpoly = {list(spec.minpoly)}"]
    lines.append("units = [" + ", ".join(str(list(u)) for u in spec.units) + "]")
    if spec.provenance:
        lines.append(f"provenance = {spec.provenance}")
    return "\n".join(lines) + "\n"


def load_field(spec):
    """Validate a FieldSpec (or field-file path) and build the NumberField."""
    if isinstance(spec, (str, Path)):
        spec = parse_field_spec(Path(spec).read_text(encoding="utf-8"))
    return NumberField(spec)


class NumberField:
    """A monogenic totally real order Z[omega]; immutable after construction."""

    def __init__(self, spec: FieldSpec):
        f = list(spec.minpoly)
        if len(f) < 2 or f[-1] != 1:
            raise NotMonic(f"minpoly {f} is not monic of degree >= 1")
        d = len(f) - 1
        if poly.degree(poly.gcd(f, poly.derivative(f))) > 0:
            raise NotSquarefree(f"minpoly {f} is not squarefree")
        bound = poly.cauchy_bound(f)
        seq = poly.sturm_sequence(f)
        if poly.count_roots(seq, -bound, bound) != d:
            raise NotTotallyReal(f"minpoly {f} has fewer than {d} real roots")
        self.spec = spec
        self.label = spec.label
        self.minpoly = tuple(f)
        self.degree = d
        # omega^k in the power basis for k < 2d - 1
        table = []
        cur = [0] * d
        cur[0] = 1
        for _ in range(2 * d - 1):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * f[i] for i, c in enumerate(cur)]
        self.power_table = tuple(table)
        self._check_table()
        # Newton power sums Tr(omega^k), k < 2d - 1
        p = [d]
        for k in range(1, 2 * d - 1):
            s = -sum(f[d - i] * p[k - i] for i in range(1, min(k - 1, d) + 1))
            if k <= d:
                s -= k * f[d - k]
            p.append(s)
        self.power_traces = tuple(p)
        self.units = tuple(self.element(u) for u in spec.units)
        for u in self.units:
            if abs(u.norm()) != 1:
                raise BadUnit(f"listed unit {u} has norm {u.norm()}")

    def _check_table(self):
        d = self.degree
        omega = self.omega if d > 1 else self.element([0])
        for i in range(d):
            a = self.basis(i)
            b = self.basis(d - 1 - i)
            if (a * b) * omega != a * (b * omega):
                raise FieldError("inconsistent multiplication table")

    def __repr__(self):
        return f"NumberField({self.label!r}, {list(self.minpoly)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    # construction helpers

    def element(self, num, den=1):
        num = [int(x) for x in num]
        if len(num) > self.degree:
            raise ValueError("too many coordinates")
        num += [0] * (self.degree - len(num))
        return FieldElement(self, num, den)

    def from_fractions(self, coords):
        den = 1
        for c in coords:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        num = [int(Fraction(c) * den) for c in coords]
        return FieldElement(self, num + [0] * (self.degree - len(num)), den)

    def from_int(self, n):
        return self.element([n])

    def basis(self, i):
        v = [0] * self.degree
        v[i] = 1
        return FieldElement(self, v, 1)

    @cached_property
    def one(self):
        return self.from_int(1)

    @cached_property
    def zero(self):
        return self.from_int(0)

    @cached_property
    def omega(self):
        return self.basis(1) if self.degree > 1 else self.element([-self.minpoly[0]])

    def from_poly(self, coeffs):
        """Evaluate a rational polynomial (constant first) at omega."""
        acc = self.zero
        for c in reversed(list(coeffs)):
            acc = acc * self.omega + self.from_fractions([c])
        return acc

    def parse(self, text):
        """Parse an element: a coordinate list `[a, b, ...]`, `[..]/den`,
        an expression in `omega`, or `inv:<expr>` for an inverse."""
        text = text.strip()
        if text.startswith("inv:"):
            return self.parse(text[4:]).inverse()
        m = re.fullmatch(r"\[([^\]]*)\](?:/(\d+))?", text)
        if m:
            nums = [int(x) for x in m.group(1).split(",") if x.strip()]
            return self.element(nums, int(m.group(2) or 1))
        import sympy

        w = sympy.Symbol("omega")
        expr = sympy.sympify(text.replace("^", "**"), locals={"omega": w, "w": w})
        p = sympy.Poly(expr, w)
        return self.from_poly(list(reversed([Fraction(str(c)) for c in p.all_coeffs()])))

    @cached_property
    def discriminant(self):
        """Polynomial discriminant via the resultant of (f, f')."""
        return int(poly.discriminant(list(self.minpoly)))

    @cached_property
    def embeddings(self):
        from .embeddings import isolate_roots

        return isolate_roots(self, 64)

    @cached_property
    def _float_roots(self):
        return tuple(self.embeddings.floats())

    def real_roots(self):
        return self._float_roots


class FieldElement:
    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den=1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.from_fractions([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        return FieldElement(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, [a * other for a in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.degree
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        table = self.field.power_table
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = table[k]
                for i in range(d):
                    out[i] += c * row[i]
        return FieldElement(self.field, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return any(self.num)

    def __repr__(self):
        return self.serialize()

    def sort_key(self):
        return (self.den, self.num)

    def serialize(self):
        """Canonical text form `[n0, n1, ...]/den`."""
        return "[" + ", ".join(str(x) for x in self.num) + f"]/{self.den}"

    def coords(self):
        return [Fraction(x, self.den) for x in self.num]

    @property
    def is_integral(self):
        return self.den == 1

    # invariants

    def mult_matrix(self):
        """Integer matrix (columns = coordinates of num * omega^j); divide by den."""
        cols = []
        cur = FieldElement(self.field, list(self.num), 1)
        for _ in range(self.field.degree):
            cols.append(cur.num)
            cur = cur * self.field.omega
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]

    def trace(self):
        t = sum(a * p for a, p in zip(self.num, self.field.power_traces))
        return Fraction(t, self.den)

    def norm(self):
        return Fraction(det(self.mult_matrix()), self.den ** self.field.degree)

    def charpoly(self):
        """Characteristic polynomial of multiplication by self, constant term first."""
        a = self.mult_matrix()
        n = len(a)
        c = [0] * (n + 1)
        c[n] = 1
        m = [[0] * n for _ in range(n)]
        for k in range(1, n + 1):
            if k > 1:
                am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
            else:
                am = [[0] * n for _ in range(n)]
            m = [[am[i][j] + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
            tr = sum(a[i][l] * m[l][i] for i in range(n) for l in range(n))
            c[n - k] = -tr // k
        den = self.den
        return [Fraction(c[k], den ** (n - k)) for k in range(n + 1)]

    def invariants(self):
        cp = self.charpoly()
        d = self.field.degree
        return -cp[d - 1], (-1) ** d * cp[0], cp

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        e0 = [1] + [0] * (self.field.degree - 1)
        x = solve(self.mult_matrix(), e0)
        return self.field.from_fractions([c * self.den for c in x])

    # embeddings / positivity (delegated)

    def embed(self):
        """Float approximations of the real embeddings, in root order."""
        roots = self.field.real_roots()
        out = []
        for r in roots:
            acc = 0.0
            for c in reversed(self.num):
                acc = acc * r + c
            out.append(acc / self.den)
        return out

    def is_totally_positive(self):
        from .embeddings import is_totally_positive

        return is_totally_positive(self)

    def signature(self):
        from .embeddings import signature_of

        return signature_of(self)


def evaluate_charpoly_at(elem):
    """Cayley-Hamilton self-test helper: charpoly(A) evaluated at A (rational matrix)."""
    a = [[Fraction(x, elem.den) for x in row] for row in elem.mult_matrix()]
    n = len(a)
    cp = elem.charpoly()
    result = [[Fraction(0)] * n for _ in range(n)]
    for coef in reversed(cp):
        result = [[sum(result[i][l] * a[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            result[i][i] += coef
    return result


def preset_names():
    from importlib import resources

    root = resources.files("zforms") / "fields"
    return sorted(p.name[:-6] for p in root.iterdir() if p.name.endswith(".field"))


def resolve_field(ref):
    """Load a field from a path, or from a shipped preset by basename
    (`cubic49`, `fields/zeta11.field`, ...)."""
    from importlib import resources

    path = Path(ref)
    if path.is_file():
        return load_field(path)
    name = path.name[:-6] if path.name.endswith(".field") else path.name
    res = resources.files("zforms") / "fields" / f"{name}.field"
    if not res.is_file():
        raise FileNotFoundError(f"no field file or preset named {ref!r}")
    return load_field(parse_field_spec(res.read_text(encoding="utf-8")))
