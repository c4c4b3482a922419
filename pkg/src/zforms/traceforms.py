"""Codifferent generators, twisted trace forms and their tensor minima."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .embeddings import EnumerationBox, embedding_intervals, enumerate_box, is_totally_positive
from .lattice import ZForm, check_tensor_minima, split_factor, tensor
from .units import reduce_by_unit_squares, unit_words


class TraceFormError(ValueError):
    pass


class NoTotallyPositiveGenerator(TraceFormError):
    pass


class NotInCodifferent(TraceFormError):
    pass


class NotTotallyPositive(TraceFormError):
    pass


@dataclass(frozen=True)
class CodifferentData:
    delta0: object
    delta: object
    twist: object
    different_norm: int


@dataclass(frozen=True)
class TraceForm:
    delta: object
    form: ZForm

    @property
    def gram(self):
        return [[x // 2 for x in row] for row in self.form.doubled]


def derivative_at_omega(field):
    return field.from_poly(poly.derivative(list(field.minpoly)))


_codiff_cache = {}


def codifferent_generator(field):
    """A totally positive generator delta of the codifferent (1/f'(omega)) O_K.

    Every +-word in the listed units with exponents in {-1, 0, 1} is tried (this
    already covers every signature the units can realize); totally positive
    products are trace-reduced by unit squares and the smallest by
    (trace, coordinates) wins, so the choice is deterministic."""
    hit = _codiff_cache.get(field)
    if hit is not None:
        return hit
    delta0 = derivative_at_omega(field).inverse()
    best = None
    for _, _, eps in unit_words(field, 1):
        cand = delta0 * eps
        if not is_totally_positive(cand):
            continue
        rep, mult = reduce_by_unit_squares(cand)
        key = (rep.trace(), rep.sort_key())
        if best is None or key < best[0]:
            best = (key, rep, eps * mult)
    if best is None:
        raise NoTotallyPositiveGenerator(
            f"no unit of the listed generators corrects the signature of 1/f'(omega) in {field.label}"
        )
    data = CodifferentData(delta0=delta0, delta=best[1], twist=best[2], different_norm=abs(field.discriminant))
    _codiff_cache[field] = data
    return data


def trace_gram(field, delta):
    """Rational matrix (Tr(delta omega^i omega^j))."""
    d = field.degree
    powers = [delta * field.basis(0)]
    for _ in range(2 * d - 2):
        powers.append(powers[-1] * field.omega)
    traces = [p.trace() for p in powers]
    return [[traces[i + j] for j in range(d)] for i in range(d)]


def trace_form(field, delta):
    if not is_totally_positive(delta):
        raise NotTotallyPositive(f"{delta} is not totally positive")
    gram = trace_gram(field, delta)
    if any(Fraction(x).denominator != 1 for row in gram for x in row):
        raise NotInCodifferent(f"{delta} is not in the codifferent")
    form = ZForm.from_gram(gram)
    if not form.classical:
        raise AssertionError("trace form must be classical")
    return TraceForm(delta=delta, form=form)


def _beta_box(delta):
    """Rational bounds containing {beta : 0 < sigma_i(delta beta) < 1}: the interval
    between 0 and 1/sigma_i(delta), widened outward."""
    bits = 64
    while True:
        ivs = embedding_intervals(delta, bits)
        if all(lo > 0 or hi < 0 for lo, hi in ivs):
            break
        bits *= 2
    lo_b, hi_b = [], []
    for lo, hi in ivs:
        if lo > 0:
            lo_b.append(Fraction(0))
            hi_b.append(1 / lo)
        else:
            lo_b.append(1 / hi)
            hi_b.append(Fraction(0))
    return tuple(lo_b), tuple(hi_b)


def trace_one_codifferent_elements(field, delta=None):
    """All totally positive alpha in the codifferent with Tr(alpha) = 1, sorted.

    Enumerated as alpha = delta * beta with beta integral, sigma_i(beta) between 0
    and 1/sigma_i(delta), and the linear condition Tr(delta beta) = 1 on beta.
    Any generator of the codifferent works, totally positive or not."""
    if delta is None:
        delta = codifferent_generator(field).delta
    row = trace_gram(field, delta)[0]
    if any(Fraction(x).denominator != 1 for x in row):
        raise NotInCodifferent(f"{delta} is not in the codifferent")
    coeffs = tuple(int(x) for x in row)
    lo, hi = _beta_box(delta)
    box = EnumerationBox(lo=lo, hi=hi, linear=(coeffs, 1))

    def keep(beta):
        alpha = delta * beta
        return alpha.trace() == 1 and is_totally_positive(alpha)

    betas = enumerate_box(field, box, predicate=keep)
    return sorted((delta * b for b in betas), key=lambda e: e.sort_key())


def element_from_coords(field, coords):
    return field.element(list(coords))


def vector_from_tensor(field, u, r):
    """Map u in Z^(d r) (index i*r + j) to v in O_K^r with v_j = sum_i u_(i r + j) omega^i."""
    d = field.degree
    return [field.element([u[i * r + j] for i in range(d)]) for j in range(r)]


def tensor_from_vector(v, r):
    d = v[0].field.degree
    out = [0] * (d * r)
    for j, x in enumerate(v):
        if not x.is_integral:
            raise TraceFormError("vector entries must be integral")
        for i, c in enumerate(x.num):
            out[i * r + j] = c
    return out


def twisted_gram(field, delta, q):
    """Doubled Gram of x -> Tr(delta Q(x)) on O_K^r in the basis omega_i e_j,
    computed straight from the field arithmetic."""
    d, r = field.degree, q.rank
    basis = []
    for i in range(d):
        for j in range(r):
            vec = [field.zero] * r
            vec[j] = field.basis(i)
            basis.append(vec)
    n = d * r
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            val = q.bilinear_over(basis[a], basis[b])
            t = (delta * val).trace() if val is not None else 0
            if Fraction(t).denominator != 1:
                raise NotInCodifferent("twisted Gram is not integral")
            out[a][b] = out[b][a] = int(t)
    return out


@dataclass(frozen=True)
class TensorMinReport:
    min: int
    count: int
    split: tuple  # (u, beta, w) for each minimal vector representative


def twisted_tensor_min(field, delta, q):
    """min(t_delta (x) Q) with every minimal vector split as beta (x) w and
    re-verified through Tr(delta beta^2 Q(w)) = min."""
    t = trace_form(field, delta).form
    mt = check_tensor_minima(t, q, tensor(t, q))
    entries = []
    for u in mt.vectors:
        beta_c, w = split_factor(u, field.degree, q.rank)
        beta = field.element(beta_c)
        if (delta * beta * beta * q.value(w)).trace() != mt.min:
            raise AssertionError(f"split factor of {u} does not reproduce the minimum")
        entries.append((u, beta, tuple(w)))
    return TensorMinReport(min=mt.min, count=mt.count, split=tuple(entries))
