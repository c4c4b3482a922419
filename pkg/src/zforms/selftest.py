"""Quick built-in checks behind `zforms selftest`: frozen golden values plus
fixed-seed property checks against brute-force oracles."""

from __future__ import annotations

import itertools
import random

from .fields import resolve_field
from .lattice import ZForm, check_min_one_bound, is_positive_definite, minima, radical_quotient, split_factor, tensor

QUINTIC_GRAM = [
    [5, -5, 11, -13, 30],
    [-5, 11, -13, 30, -35],
    [11, -13, 30, -35, 86],
    [-13, 30, -35, 86, -94],
    [30, -35, 86, -94, 252],
]


def random_pd_form(rng, rank, bound=8):
    while True:
        d = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            d[i][i] = 2 * rng.randint(1, bound // 2)
            for j in range(i):
                d[i][j] = d[j][i] = rng.randint(-bound, bound)
        q = ZForm(d)
        if is_positive_definite(q):
            return q


def brute_minimum(q, box):
    best, vecs = None, []
    for x in itertools.product(range(-box, box + 1), repeat=q.rank):
        if not any(x):
            continue
        v = q.value(x)
        if best is None or v < best:
            best, vecs = v, [x]
        elif v == best:
            vecs.append(x)
    return best, len(vecs)


def _discriminants():
    got = [resolve_field(n).discriminant for n in ("q5", "cubic49", "quartic725", "quintic14641")]
    return got == [5, 49, 725, 14641], str(got)


def _quintic():
    from .traceforms import trace_form

    K = resolve_field("quintic14641")
    tf = trace_form(K, K.parse("inv:omega+2"))
    m = minima(tf.form).min
    return tf.gram == QUINTIC_GRAM and m == 5, f"min {m}"


def _trace_one():
    from .traceforms import trace_one_codifferent_elements

    got = [len(trace_one_codifferent_elements(resolve_field(n))) for n in ("q5", "cubic49")]
    return got == [2, 3], str(got)


def _cubic_classes():
    from .indecomposables import indecomposable_classes

    scan = indecomposable_classes(resolve_field("cubic49"), 16, 30)
    norms = [c.norm for c in scan]
    return norms == [1, 7], str(norms)


def _minima_oracle():
    rng = random.Random(20240501)
    for _ in range(20):
        q = random_pd_form(rng, rng.randint(1, 3))
        m = minima(q)
        if (m.min, m.count) != brute_minimum(q, 6):
            return False, f"{q}"
    return True, ""


def _tensor_split():
    rng = random.Random(7)
    for _ in range(10):
        q1 = random_pd_form(rng, 2, 4).scaled(2)
        q2 = random_pd_form(rng, 2, 4)
        t = tensor(q1, q2)
        m = minima(t)
        if m.min > minima(q1).min * minima(q2).min:
            return False, "tensor minimum exceeds product"
        for v in m.vectors:
            if split_factor(v, 2, 2) is None:
                return False, f"non-split minimal vector {v}"
        check_min_one_bound(t)
    return True, ""


def _kronecker_gram():
    from .traceforms import codifferent_generator, trace_form, twisted_gram

    rng = random.Random(11)
    K = resolve_field("cubic49")
    delta = codifferent_generator(K).delta
    for _ in range(5):
        q = random_pd_form(rng, 2, 4)
        eps = K.units[rng.randrange(len(K.units))]
        dl = delta * eps * eps
        lhs = twisted_gram(K, dl, q)
        rhs = [list(r) for r in tensor(trace_form(K, dl).form, q).doubled]
        if lhs != rhs:
            return False, f"{q}"
    return True, ""


def _radical():
    rng = random.Random(3)
    for _ in range(10):
        k, n = rng.randint(1, 3), rng.randint(1, 4)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
        g = [[sum(rows[a][i] * rows[a][j] for a in range(k)) for j in range(n)] for i in range(n)]
        form, proj = radical_quotient(g)
        for x in itertools.product(range(-2, 3), repeat=n):
            val = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
            px = [sum(r[j] * x[j] for j in range(n)) for r in proj]
            if (form.value(px) if form.rank else 0) != val:
                return False, f"{g}"
    return True, ""


def _siegel():
    from .zeta import siegel_consistency

    got = [siegel_consistency(resolve_field(n), 2000).lhs for n in ("q5", "cubic49")]
    return got == [2, 3], str(got)


CHECKS = [
    ("discriminants", _discriminants),
    ("quintic trace form", _quintic),
    ("trace-one codifferent elements", _trace_one),
    ("cubic indecomposable classes", _cubic_classes),
    ("minima vs brute force", _minima_oracle),
    ("tensor minimal vectors split", _tensor_split),
    ("twisted trace Gram is a Kronecker product", _kronecker_gram),
    ("radical quotient preserves values", _radical),
    ("Siegel left-hand sides", _siegel),
]


def run_checks():
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as e:  # report, never crash the whole run
            ok, detail = False, f"{type(e).__name__}: {e}"
        yield name, ok, detail
