"""Representations of totally positive integers by Z-forms over O_K."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import intmat
from .embeddings import _candidates, is_totally_nonnegative, is_totally_positive, signature_of, totally_positive_window
from .lattice import (
    InvariantViolation,
    NotPositiveDefinite,
    ZForm,
    check_tensor_minima,
    is_positive_definite,
    iter_short_vectors,
    minima,
    orthogonal_sum,
    radical_quotient,
    tensor,
)
from .traceforms import codifferent_generator, derivative_at_omega, tensor_from_vector, trace_form, vector_from_tensor
from .units import reduce_by_unit_squares, sqrt_element, unit_words


class RepresentationError(ValueError):
    pass


class WitnessInvalid(RepresentationError):
    pass


class ClassNotRepresented(RepresentationError):
    pass


def _check_target(q, alpha):
    if not is_positive_definite(q):
        raise NotPositiveDefinite("form is not positive definite")
    if not alpha.is_integral or not is_totally_positive(alpha):
        raise RepresentationError(f"{alpha} is not a totally positive integer")


def _canonical(u):
    for x in u:
        if x:
            return tuple(u) if x > 0 else tuple(-y for y in u)
    return tuple(u)


# the literal method: vectors of t_delta (x) Q with value Tr(delta alpha)


def represents_via_tensor(q, alpha, delta=None):
    """All-solutions search through t_delta (x) Q; returns the least canonical witness."""
    _check_target(q, alpha)
    field = alpha.field
    if delta is None:
        delta = codifferent_generator(field).delta
    t = trace_form(field, delta).form
    m = (delta * alpha).trace()
    if Fraction(m).denominator != 1:
        raise AssertionError("Tr(delta alpha) must be an integer")
    big = tensor(t, q)
    sols = []
    for u, _ in iter_short_vectors(big, int(m), exact=int(m)):
        v = vector_from_tensor(field, u, q.rank)
        if q.evaluate(v) == alpha:
            sols.append(u)
    if not sols:
        return None
    return vector_from_tensor(field, min(sols), q.rank)


# the fibre method: Fincke-Pohst over O_K on the rational LDL^T of Q


class _Fibres:
    """Q(v) = sum_i d_i (v_i + sum_{j>i} mu_ij v_j)^2; each term is totally
    nonnegative, so every coordinate lies in a box in embedding space."""

    def __init__(self, q, field):
        self.q = q
        self.field = field
        gram = [[Fraction(x, 2) for x in row] for row in q.doubled]
        self.diag, self.mu = intmat.ldl(gram)
        self.r = q.rank
        self.mu_el = [[field.from_fractions([self.mu[i][j]]) for j in range(self.r)] for i in range(self.r)]

    def solutions(self, alpha, first_only=False):
        r = self.r
        field = self.field
        v = [None] * r
        out = []

        def level(i, rem):
            if i < 0:
                if not rem:
                    out.append(list(v))
                    return first_only
                return False
            c = field.zero
            for j in range(i + 1, r):
                if self.mu[i][j]:
                    c = c - self.mu_el[i][j] * v[j]
            di = self.diag[i]
            if not rem:
                if not c.is_integral:
                    return False
                v[i] = c
                return level(i - 1, rem)
            centers = c.embed()
            half = [math.sqrt(max(x, 0.0) / float(di)) * (1 + 1e-9) + 1e-9 for x in rem.embed()]
            cands = sorted({tuple(y) for y in _candidates(field, centers, half)})
            for y in cands:
                x = field.element(y)
                diff = x - c
                nrem = rem - diff * diff * di
                if not is_totally_nonnegative(nrem):
                    continue
                v[i] = x
                if level(i - 1, nrem):
                    return True
            return False

        level(r - 1, alpha)
        return out


_fibre_cache = {}


def _fibres(q, field):
    key = (q.doubled, field)
    f = _fibre_cache.get(key)
    if f is None:
        if len(_fibre_cache) > 64:
            _fibre_cache.clear()
        f = _fibre_cache[key] = _Fibres(q, field)
    return f


def represents(q, alpha, field=None, first_only=False, check_attainment=True):
    """A witness v in O_K^r with Q(v) = alpha, or None.

    Complete: all solutions come from an exact Fincke-Pohst over O_K, and the
    returned witness is the least one in the canonical tensor-coordinate order
    (the same witness represents_via_tensor returns). first_only stops at the
    first solution found instead."""
    field = field or alpha.field
    _check_target(q, alpha)
    sols = _fibres(q, field).solutions(alpha, first_only=first_only)
    if not sols:
        return None
    if first_only:
        v = sols[0]
    else:
        best = min(_canonical(tensor_from_vector(s, q.rank)) for s in sols)
        v = vector_from_tensor(field, best, q.rank)
    if q.evaluate(v) != alpha:
        raise WitnessInvalid("representation failed exact re-verification")
    if check_attainment:
        attainment_check(q, alpha, field)
    return v


_attainment_cache = {}


def attainment_check(q, alpha, field):
    """Instance check: if alpha is indecomposable, represented by Q, and
    Tr(delta alpha) = min(t_delta (x) Q) for a totally positive codifferent
    generator delta in its unit-square class, then alpha is a square and
    min(Q) = 1. Returns True when the check fired."""
    from .indecomposables import is_indecomposable
    from .traceforms import NoTotallyPositiveGenerator

    try:
        delta = codifferent_generator(field).delta
    except NoTotallyPositiveGenerator:
        return False
    # the least Tr(delta eps^2 alpha) over the unit-square class of delta
    rep, mult = reduce_by_unit_squares(delta * alpha)
    m = rep.trace()
    key = (field, q.doubled)
    if key not in _attainment_cache:
        t = trace_form(field, delta).form
        _attainment_cache[key] = minima(t).min * minima(q).min
    mn = _attainment_cache[key]
    if m != mn:
        return False
    if not is_indecomposable(alpha)[0]:
        return False
    # confirm the tensor minimum itself (E-type instance check)
    check_tensor_minima(trace_form(field, delta * mult).form, q)
    if sqrt_element(alpha) is None or minima(q).min != 1:
        raise InvariantViolation(f"indecomposable {alpha} attains min(t_delta (x) Q) but is not a square with min(Q) = 1")
    return True


# scans


@dataclass(frozen=True)
class AllRepresented:
    trace_bound: int
    checked: int
    classes: int

    represented = True


@dataclass(frozen=True)
class NotRepresented:
    alpha: object
    trace_bound: int
    checked: int

    represented = False


def universal_scan(q, field, trace_bound):
    """First alpha (by trace, then coordinates) in the window not represented by Q,
    or AllRepresented. Elements in one unit-square orbit share the verdict
    (v -> eps v), so each orbit is decided once."""
    verdict = {}
    checked = 0
    for alpha in totally_positive_window(field, trace_bound):
        checked += 1
        rep, _ = reduce_by_unit_squares(alpha)
        ok = verdict.get(rep)
        if ok is None:
            ok = represents(q, rep, field, first_only=True, check_attainment=False) is not None
            verdict[rep] = ok
        if not ok:
            return NotRepresented(alpha=alpha, trace_bound=trace_bound, checked=checked)
    return AllRepresented(trace_bound=trace_bound, checked=checked, classes=len(verdict))


def value_set(q, field, trace_bound):
    """{Q(v) : v in O_K^r, Tr(Q(v)) <= trace_bound} as coordinate tuples, from the
    vectors of t_1 (x) Q (t_1 is the trace form x -> Tr(x^2))."""
    from .traceforms import trace_form

    t1 = trace_form(field, field.one).form
    big = tensor(t1, q)
    vals = {tuple([0] * field.degree)}
    for u, _ in iter_short_vectors(big, trace_bound):
        vals.add(tuple(q.evaluate(vector_from_tensor(field, u, q.rank)).num))
    return vals


def orthogonal_sum_scan(components, field, trace_bound):
    """universal_scan for Q_1 + ... + Q_k (orthogonal): each summand value is
    totally nonnegative, so the values of trace <= T are exactly the sumset of the
    component value sets restricted to trace <= T."""
    d = field.degree
    tr = [field.basis(i).trace() for i in range(d)]

    def trace_of(t):
        return sum(a * b for a, b in zip(t, tr))

    total = {tuple([0] * d)}
    cache = {}
    for q in components:
        vals = cache.get(q.doubled)
        if vals is None:
            vals = cache[q.doubled] = value_set(q, field, trace_bound)
        total = {
            tuple(a + b for a, b in zip(x, y))
            for x in total
            for y in vals
            if trace_of(x) + trace_of(y) <= trace_bound
        }
    checked = 0
    for alpha in totally_positive_window(field, trace_bound):
        checked += 1
        if tuple(alpha.num) not in total:
            return NotRepresented(alpha=alpha, trace_bound=trace_bound, checked=checked)
    return AllRepresented(trace_bound=trace_bound, checked=checked, classes=0)


def non_square_units(field, trace_bound):
    """Totally positive units in the trace window that are not squares."""
    out = []
    for a in totally_positive_window(field, trace_bound):
        if abs(a.norm()) == 1 and sqrt_element(a) is None:
            out.append(a)
    return out


# compression to rank <= d


@dataclass(frozen=True)
class Compression:
    q0_doubled: tuple
    form: ZForm
    projection: tuple
    witness: tuple


def compress_representation(qprime, v):
    """From Q'(v) = alpha build Q0 = V^T M_Q' V (rank d, PSD) and its radical
    quotient Q of rank <= d, with a witness w in O_K^m, Q(w) = alpha."""
    field = v[0].field
    d, r = field.degree, qprime.rank
    if len(v) != r or not all(x.is_integral for x in v):
        raise WitnessInvalid("witness must be an integral vector of length r")
    alpha = qprime.evaluate(v)
    # V: r x d, column i holds the omega^i coordinates of v
    vmat = [[v[j].num[i] for i in range(d)] for j in range(r)]
    d0 = intmat.matmul(intmat.matmul(intmat.transpose(vmat), [list(row) for row in qprime.doubled]), vmat)
    q0 = ZForm(d0)
    basis = [field.basis(i) for i in range(d)]
    if q0.evaluate(basis) != alpha:
        raise WitnessInvalid("Q0(omega_1, ..., omega_d) != alpha")
    form, proj = radical_quotient(d0, doubled=True)
    w = []
    for row in proj:
        x = field.zero
        for i, c in enumerate(row):
            if c:
                x = x + basis[i] * c
        w.append(x)
    if form.rank and form.evaluate(w) != alpha:
        raise WitnessInvalid("compressed witness does not represent alpha")
    return Compression(tuple(map(tuple, d0)), form, tuple(map(tuple, proj)), tuple(w))


# lifting to a universal orthogonal sum


@dataclass(frozen=True)
class LiftedForm:
    form: ZForm
    m: int
    base: ZForm
    pythagoras_upper: int
    classes: tuple


def build_lifted_universal(q, field, pythagoras_upper, classes):
    reps = [getattr(c, "representative", c) for c in classes]
    for a in reps:
        if represents(q, a, field, first_only=True, check_attainment=False) is None:
            raise ClassNotRepresented(f"{q} does not represent the class of {a}")
    m = pythagoras_upper * len(reps)
    return LiftedForm(orthogonal_sum(*([q] * m)), m, q, pythagoras_upper, tuple(reps))


# the quadratic-field mechanism


@dataclass(frozen=True)
class QuadraticMechanism:
    label: str
    norm_omega: int
    epsilon: object
    alpha: object
    trace_delta_alpha: object
    alpha_is_unit: bool
    mixed_unit_exists: bool

    @property
    def obstruction(self):
        return not self.alpha_is_unit


def quadratic_mechanism(field):
    """alpha = omega / eps with eps a unit of the signature of omega, so alpha is
    totally positive and Tr(delta alpha) = 1 for delta = eps / f'(omega).

    If no listed unit has that signature the element cannot be formed, but for
    every unit eps |N(omega / eps)| = |N(omega)|, so unit-ness of alpha is
    decided by N(omega) alone."""
    if field.degree != 2:
        raise ValueError("quadratic fields only")
    w = field.omega
    sig = signature_of(w)
    eps = None
    for _, _, u in unit_words(field, 1):
        if signature_of(u) == sig:
            eps = u
            break
    n = int(w.norm())
    alpha = tr = None
    if eps is not None:
        alpha = w / eps
        delta = eps / derivative_at_omega(field)
        tr = (delta * alpha).trace()
        if tr != 1 or not is_totally_positive(alpha):
            raise InvariantViolation("omega / eps should be totally positive with Tr(delta alpha) = 1")
        if abs(alpha.norm()) != abs(n):
            raise InvariantViolation("norm of omega / eps")
    return QuadraticMechanism(
        label=field.label,
        norm_omega=n,
        epsilon=eps,
        alpha=alpha,
        trace_delta_alpha=tr,
        alpha_is_unit=abs(n) == 1,
        mixed_unit_exists=eps is not None,
    )
