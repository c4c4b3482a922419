"""Positive (semi)definite Z-forms held as doubled Gram matrices.

A form Q(x) = sum_{i<=j} a_ij x_i x_j is stored as D = 2 M_Q, an integer
symmetric matrix with even diagonal, so non-classical forms stay integral.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from . import intmat
from ._fp import enumerate_ellipsoid


class LatticeError(ValueError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class NotSemidefinite(LatticeError):
    pass


class BothNonClassical(LatticeError):
    pass


class InvariantViolation(AssertionError):
    """A proven structural property failed on a computed instance (fatal)."""


class ZForm:
    __slots__ = ("doubled", "rank", "__dict__")

    def __init__(self, doubled):
        d = tuple(tuple(int(x) for x in row) for row in doubled)
        n = len(d)
        for i in range(n):
            if len(d[i]) != n:
                raise LatticeError("Gram matrix must be square")
            if d[i][i] % 2:
                raise LatticeError("doubled Gram must have even diagonal")
            for j in range(i):
                if d[i][j] != d[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        self.doubled = d
        self.rank = n

    @classmethod
    def from_gram(cls, gram):
        """From an integer or half-integer Gram matrix M_Q."""
        return cls([[int(2 * Fraction(x)) for x in row] for row in gram])

    @classmethod
    def from_coefficients(cls, rank, coeffs):
        """From {(i, j): a_ij} for Q = sum_{i<=j} a_ij x_i x_j (0-based, i <= j)."""
        d = [[0] * rank for _ in range(rank)]
        for (i, j), a in coeffs.items():
            if i == j:
                d[i][i] += 2 * a
            else:
                d[i][j] += a
                d[j][i] += a
        return cls(d)

    def __eq__(self, other):
        return isinstance(other, ZForm) and self.doubled == other.doubled

    def __hash__(self):
        return hash(self.doubled)

    def __repr__(self):
        return f"ZForm({self.serialize()})"

    @property
    def classical(self):
        return all(x % 2 == 0 for row in self.doubled for x in row)

    @cached_property
    def gram(self):
        return [[Fraction(x, 2) for x in row] for row in self.doubled]

    def serialize(self):
        flat = ", ".join(str(x) for row in self.doubled for x in row)
        return f"{self.rank}:[{flat}]"

    def value(self, x):
        """Q(x) for an integer vector (exact int)."""
        d = self.doubled
        s = 0
        for i, xi in enumerate(x):
            if xi:
                s += xi * sum(dij * xj for dij, xj in zip(d[i], x) if xj)
        return s // 2

    def bilinear(self, x, y):
        """B_Q(x, y) = x^T M_Q y (a Fraction for non-classical forms)."""
        s = sum(xi * self.doubled[i][j] * yj for i, xi in enumerate(x) for j, yj in enumerate(y))
        return Fraction(s, 2)

    def evaluate(self, vec):
        """Q(v) for v a sequence of field elements (or any ring supporting +, *)."""
        d = self.doubled
        total = None
        n = self.rank
        for i in range(n):
            if d[i][i]:
                term = vec[i] * vec[i] * (d[i][i] // 2)
                total = term if total is None else total + term
            for j in range(i + 1, n):
                if d[i][j]:
                    term = vec[i] * vec[j] * d[i][j]
                    total = term if total is None else total + term
        if total is None:
            return vec[0] * 0 if vec else 0
        return total

    def bilinear_over(self, u, v):
        """B_Q(u, v) over a ring, returned doubled: 2*B_Q(u, v) = u^T D v."""
        total = None
        for i in range(self.rank):
            for j in range(self.rank):
                if self.doubled[i][j]:
                    term = u[i] * v[j] * self.doubled[i][j]
                    total = term if total is None else total + term
        return total

    def transform(self, rows):
        """Form in the basis given by integer row vectors b_k: D' = B D B^T."""
        return ZForm(intmat.matmul(intmat.matmul(rows, self.doubled), intmat.transpose(rows)))

    def scaled(self, k):
        return ZForm([[k * x for x in row] for row in self.doubled])


def orthogonal_sum(*forms):
    n = sum(f.rank for f in forms)
    d = [[0] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(f.rank):
                d[off + i][off + j] = f.doubled[i][j]
        off += f.rank
    return ZForm(d)


def sum_of_squares_form(r):
    return ZForm([[2 * (i == j) for j in range(r)] for i in range(r)])


PRESETS = {
    "a2": ZForm([[2, 1], [1, 2]]),
    "deutsch4": ZForm.from_coefficients(4, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1, (0, 1): 1, (0, 2): 1, (0, 3): 1}),
    "deutsch-pair": ZForm.from_coefficients(4, {(0, 0): 1, (0, 1): 1, (1, 1): 1, (2, 2): 1, (2, 3): 1, (3, 3): 1}),
}


def parse_form(text):
    """A preset name (`a2`, `deutsch4`, `deutsch-pair`, `sum-squares:r`) or a
    doubled-Gram literal `r:[d11, d12, ...]`."""
    text = text.strip()
    if text in PRESETS:
        return PRESETS[text]
    m = re.fullmatch(r"sum-squares:(\d+)", text)
    if m:
        return sum_of_squares_form(int(m.group(1)))
    m = re.fullmatch(r"(\d+):\[([^\]]*)\]", text)
    if m:
        r = int(m.group(1))
        vals = [int(x) for x in m.group(2).split(",") if x.strip()]
        if len(vals) != r * r:
            raise LatticeError(f"expected {r * r} Gram entries, got {len(vals)}")
        return ZForm([vals[i * r:(i + 1) * r] for i in range(r)])
    raise LatticeError(f"unrecognized form {text!r}")


def is_positive_definite(q):
    return intmat.is_positive_definite(q.doubled)


def is_positive_semidefinite(q):
    return intmat.is_positive_semidefinite(q.doubled)


# enumeration


class _Frame:
    """LLL-reduced basis with exact LDL^T, converted to floats for the search."""

    def __init__(self, q):
        if q.rank and not is_positive_definite(q):
            raise NotPositiveDefinite("form is not positive definite")
        red, t = intmat.lll_gram([list(r) for r in q.doubled]) if q.rank else ([], [])
        self.red = red
        self.t = t
        diag, mu = intmat.ldl(red) if q.rank else ([], [])
        # doubled Gram: Q = x^T D x / 2
        self.diag = [float(x) / 2 for x in diag]
        self.mu = [[float(x) for x in row] for row in mu]
        self.rank = q.rank

    def value(self, z):
        red = self.red
        s = 0
        for i, zi in enumerate(z):
            if zi:
                row = red[i]
                s += zi * sum(row[j] * z[j] for j in range(len(z)) if z[j])
        return s // 2

    def to_original(self, z):
        t = self.t
        n = self.rank
        out = [0] * n
        for a, za in enumerate(z):
            if za:
                row = t[a]
                for j in range(n):
                    out[j] += za * row[j]
        return out


_frames = {}


def _frame(q):
    f = _frames.get(q.doubled)
    if f is None:
        if len(_frames) > 256:
            _frames.clear()
        f = _frames[q.doubled] = _Frame(q)
    return f


def _canonical_sign(v):
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def iter_short_vectors(q, upper, lower=1, exact=None):
    """Yield (v, Q(v)) for nonzero v (one of each +-pair, first nonzero entry
    positive) with lower <= Q(v) <= upper, or Q(v) == exact. Enumeration order."""
    fr = _frame(q)
    if exact is not None:
        upper = lower = exact
    for z, approx in enumerate_ellipsoid(fr.diag, fr.mu, float(upper), half=True):
        if approx < lower - 0.25:
            continue
        if not any(z):
            continue
        val = fr.value(z)
        if lower <= val <= upper:
            yield _canonical_sign(fr.to_original(z)), val


def short_vectors(q, upper, lower=1):
    out = sorted(iter_short_vectors(q, upper, lower))
    return out


def vectors_with_value(q, m):
    if m < 1:
        raise LatticeError("value must be >= 1")
    return sorted(v for v, _ in iter_short_vectors(q, m, exact=m))


@dataclass(frozen=True)
class MinimaResult:
    min: int
    vectors: tuple
    count: int


def minima(q):
    """Minimum and all minimal vectors (one per +- pair, sorted)."""
    if q.rank == 0:
        raise NotPositiveDefinite("rank 0 form has no minimum")
    fr = _frame(q)
    bound = min(fr.red[i][i] for i in range(q.rank)) // 2
    vecs = short_vectors(q, bound)
    m = min(val for _, val in vecs)
    reps = tuple(sorted(v for v, val in vecs if val == m))
    return MinimaResult(min=m, vectors=reps, count=2 * len(reps))


# tensor products and split vectors


def tensor(q1, q2):
    """Kronecker product form; basis v_i (x) w_j with i outer, j inner."""
    if q1.classical:
        m1 = [[x // 2 for x in row] for row in q1.doubled]
        return ZForm(intmat.kron(m1, q2.doubled))
    if q2.classical:
        m2 = [[x // 2 for x in row] for row in q2.doubled]
        return ZForm(intmat.kron(q1.doubled, m2))
    raise BothNonClassical("tensor product needs a classical factor")


def split_factor(v, d, r):
    """Integer rank-one factorization v = beta (x) w of a length d*r vector, with
    w primitive and its first nonzero entry positive; None if v is not split."""
    if len(v) != d * r:
        raise LatticeError("vector length must be d*r")
    rows = [list(v[i * r:(i + 1) * r]) for i in range(d)]
    lead = next((row for row in rows if any(row)), None)
    if lead is None:
        return None
    g = intmat.content(lead)
    w = [x // g for x in lead]
    first = next(x for x in w if x)
    if first < 0:
        w = [-x for x in w]
    k = next(j for j, x in enumerate(w) if x)
    beta = []
    for row in rows:
        if row[k] % w[k]:
            return None
        b = row[k] // w[k]
        if any(row[j] != b * w[j] for j in range(r)):
            return None
        beta.append(b)
    return beta, w


def check_tensor_minima(q1, q2, t=None):
    """Instance-level E-type check: min(q1 (x) q2) = min(q1) min(q2) and every
    minimal vector is split. Raises InvariantViolation otherwise."""
    t = t if t is not None else tensor(q1, q2)
    mt = minima(t)
    m1, m2 = minima(q1).min, minima(q2).min
    if mt.min != m1 * m2:
        raise InvariantViolation(f"tensor minimum {mt.min} != {m1} * {m2}")
    for v in mt.vectors:
        if split_factor(v, q1.rank, q2.rank) is None:
            raise InvariantViolation(f"non-split minimal vector {v}")
    return mt


def check_min_one_bound(q):
    """Minimal-vector count bound for classical forms with minimum 1."""
    if not q.classical:
        return None
    m = minima(q)
    if m.min == 1 and m.count > 2 * q.rank:
        raise InvariantViolation(f"{m.count} minimal vectors exceed 2r = {2 * q.rank}")
    return m


# decomposition


def gram_blocks(q):
    """Connected components of the Gram graph (index lists)."""
    n = q.rank
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and q.doubled[i][j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def orthogonal_constituents(q):
    """Kneser decomposition into indecomposable constituents.

    Returns (forms, bases): bases[k] is the list of basis vectors (original
    coordinates) of the k-th constituent; concatenated they form a unimodular
    change of basis carrying q to the orthogonal sum of the forms.
    """
    fr = _frame(q)
    bound = max(fr.red[i][i] for i in range(q.rank)) // 2
    vecs = short_vectors(q, bound)
    byval = {}
    for v, val in vecs:
        byval.setdefault(val, []).append(v)
    allset = {}
    for v, val in vecs:
        allset[v] = val
        allset[tuple(-x for x in v)] = val
    indec = []
    for v, val in vecs:
        decomposable = False
        for x, xv in allset.items():
            if xv >= val:
                continue
            y = tuple(a - b for a, b in zip(v, x))
            yv = allset.get(y)
            if yv is not None and xv + yv <= val:
                decomposable = True
                break
        if not decomposable:
            indec.append(v)
    # components under non-orthogonality
    n = len(indec)
    comp_of = [-1] * n
    comps = []
    for s in range(n):
        if comp_of[s] >= 0:
            continue
        comp_of[s] = len(comps)
        stack, members = [s], []
        while stack:
            i = stack.pop()
            members.append(i)
            for j in range(n):
                if comp_of[j] < 0 and q.bilinear(indec[i], indec[j]) != 0:
                    comp_of[j] = comp_of[s]
                    stack.append(j)
        comps.append(members)
    bases = []
    for members in comps:
        basis = intmat.row_basis([list(indec[i]) for i in members])
        bases.append(basis)
    bases.sort(key=lambda b: (len(b), b))
    total = [row for b in bases for row in b]
    if len(total) != q.rank or abs(intmat.det(total)) != 1:
        raise InvariantViolation("constituent bases do not form a unimodular basis")
    forms = [q.transform(b) for b in bases]
    return forms, bases


def radical_quotient(gram, doubled=False):
    """Positive definite quotient of a PSD integer Gram by its radical.

    Returns (form, projection) with projection an m x d integer matrix such that
    Q0(x) = form.value(projection @ x) for every integer x.
    """
    d = len(gram)
    dbl = [list(map(int, row)) for row in gram] if doubled else [[2 * int(x) for x in row] for row in gram]
    if d == 0 or not intmat.is_positive_semidefinite(dbl):
        if d == 0:
            return ZForm([]), []
        raise NotSemidefinite("Gram matrix is not positive semidefinite")
    h, u = intmat.hermite(dbl)
    kernel_rows = [i for i, row in enumerate(h) if not any(row)]
    keep = [i for i in range(d) if i not in kernel_rows]
    comp = [u[i] for i in keep]
    form = ZForm(intmat.matmul(intmat.matmul(comp, dbl), intmat.transpose(comp))) if comp else ZForm([])
    # x = sum c_i u_i  =>  c = x U^{-1}; projection keeps the complement coordinates
    uinv = intmat.inverse(u)
    proj = [[int(uinv[j][i]) for j in range(d)] for i in keep]
    return form, proj


# equivalence (small ranks; used in tests)


def are_equivalent(q1, q2):
    """Isometry test by backtracking over vectors of matching norm."""
    if q1.rank != q2.rank:
        return False
    n = q1.rank
    if n == 0:
        return True
    if intmat.det(q1.doubled) != intmat.det(q2.doubled):
        return False
    fr1 = _frame(q1)
    red, t = fr1.red, fr1.t
    target = [[red[i][j] for j in range(n)] for i in range(n)]
    maxnorm = max(target[i][i] for i in range(n)) // 2
    cands = {}
    for v, val in short_vectors(q2, maxnorm):
        cands.setdefault(val, []).append(v)
        cands[val].append(tuple(-x for x in v))

    def dbl(a, b):
        return sum(a[i] * q2.doubled[i][j] * b[j] for i in range(n) for j in range(n))

    images = []

    def extend(k):
        if k == n:
            return abs(intmat.det([list(v) for v in images])) == 1
        for v in cands.get(target[k][k] // 2, []):
            if all(dbl(images[j], v) == target[j][k] for j in range(k)):
                images.append(v)
                if extend(k + 1):
                    return True
                images.pop()
        return False

    return extend(0)
