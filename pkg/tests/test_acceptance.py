"""One test per acceptance criterion; each records a PASS/FAIL line that the
terminal summary prints after the run."""

import io
import random
import re
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from zforms.cli import run
from zforms.embeddings import totally_positive_window
from zforms.fields import resolve_field
from zforms.indecomposables import indecomposable_classes
from zforms.lattice import (
    ZForm,
    check_min_one_bound,
    is_positive_definite,
    check_tensor_minima,
    minima,
    parse_form,
    radical_quotient,
    split_factor,
    sum_of_squares_form,
    tensor,
)
from zforms.representation import AllRepresented, attainment_check, quadratic_mechanism, represents, universal_scan
from zforms.selftest import QUINTIC_GRAM, brute_minimum, random_pd_form
from zforms.squares import pythagoras_scan, sos_length
from zforms.traceforms import codifferent_generator, trace_form, twisted_gram
from zforms.zeta import siegel_consistency


def record(n, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} [{elapsed:.2f}s < {limit}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


PRINTED_BOUNDS = {2: Fraction("5.6"), 3: Fraction("51.2"), 4: Fraction("742.8"), 5: Fraction("14886.9"), 7: Fraction("12386158.6")}


@pytest.mark.parametrize("d", sorted(PRINTED_BOUNDS))
def test_criterion_1_discriminant_bounds(d):
    t0 = time.perf_counter()
    out = io.StringIO()
    code = run(["zeta-bounds"], stream=out)
    elapsed = time.perf_counter() - t0
    rows = {}
    for line in out.getvalue().splitlines():
        m = re.match(r"(\d+)\s+\|Delta_K\| < \[([\d.]+), ([\d.]+)\]", line)
        rows[int(m.group(1))] = (Fraction(m.group(2)), Fraction(m.group(3)))
    lo, hi = rows[d]
    target = PRINTED_BOUNDS[d]
    dev = max(abs(lo - target), abs(hi - target))
    ok = code == 0 and dev <= Fraction(5, 100)
    record(f"1 (d={d})", ok, f"computed [{float(lo):.6f}, {float(hi):.6f}] vs printed {float(target)} (|diff| {float(dev):.4f}, tol 0.05)", elapsed, 1)


def test_criterion_2_field_table():
    t0 = time.perf_counter()
    got = [resolve_field(n).discriminant for n in ("q5", "cubic49", "quartic725", "quintic14641")]
    record(2, got == [5, 49, 725, 14641], f"discriminants {got}", time.perf_counter() - t0, 1)


def test_criterion_3_quintic():
    t0 = time.perf_counter()
    K = resolve_field("quintic14641")
    beta = K.parse("omega+2")
    tf = trace_form(K, beta.inverse())
    m = minima(tf.form).min
    ok = beta.norm() == 11 and tf.gram == QUINTIC_GRAM and m == 5
    record(3, ok, f"N(beta) = {beta.norm()}, Gram matches: {tf.gram == QUINTIC_GRAM}, min = {m}", time.perf_counter() - t0, 10)


def test_criterion_4_quartic():
    t0 = time.perf_counter()
    K = resolve_field("quartic725")
    beta = K.parse("omega+2")
    alpha = beta * 2
    window = totally_positive_window(K, 18)
    small = [a for a in window if a.norm() < 11]
    all_units = all(abs(a.norm()) == 1 for a in small)
    length = sos_length(alpha, 8)
    ok = beta.norm() == 11 and alpha.trace() == 18 and all_units and length is None
    detail = f"N = {beta.norm()}, Tr = {alpha.trace()}, {len(small)} small-norm window elements all units: {all_units}, sos_length = {length}"
    record(4, ok, detail, time.perf_counter() - t0, 60)


def test_criterion_5_cubic_classes():
    t0 = time.perf_counter()
    K = resolve_field("cubic49")
    scan = indecomposable_classes(K, 16, 30)
    norms = [c.norm for c in scan]
    v = represents(parse_form("a2"), scan[-1].representative)
    ok = norms == [1, 7] and v is not None
    record(5, ok, f"class norms {norms}, a2 witness {[str(x) for x in v] if v else None}", time.perf_counter() - t0, 60)


@pytest.mark.parametrize("field_name,form", [("cubic49", "deutsch4"), ("q5", "sum-squares:3")])
def test_criterion_6_universality(field_name, form):
    t0 = time.perf_counter()
    res = universal_scan(parse_form(form), resolve_field(field_name), 25)
    record(f"6 ({form} over {field_name})", isinstance(res, AllRepresented), repr(res), time.perf_counter() - t0, 300)


def test_criterion_7_quadratic_mechanism():
    t0 = time.perf_counter()
    verdicts = {}
    for D in (2, 3, 5, 6, 7):
        verdicts[D] = quadratic_mechanism(resolve_field(f"q{D}")).obstruction
    ok = verdicts == {2: True, 3: True, 5: False, 6: True, 7: True}
    record(7, ok, f"obstruction by D {verdicts}", time.perf_counter() - t0, 10)


def test_criterion_8_siegel():
    t0 = time.perf_counter()
    a = siegel_consistency(resolve_field("q5"), 10 ** 4)
    b = siegel_consistency(resolve_field("cubic49"), 10 ** 4)
    ok = (a.lhs, b.lhs) == (2, 3) and a.relative_gap < 0.01 and b.relative_gap < 0.01
    detail = f"lhs {a.lhs}, {b.lhs}; relative gaps {a.relative_gap:.2e}, {b.relative_gap:.2e}"
    record(8, ok, detail, time.perf_counter() - t0, 60)


def test_criterion_9_pythagoras():
    t0 = time.perf_counter()
    got = {}
    for name in ("q2", "q3", "q5"):
        rep = pythagoras_scan(resolve_field(name), 60)
        got[name] = rep.observed_max
        assert rep.observed_max <= rep.upper_bound
    ok = all(v == 3 for v in got.values())
    record(9, ok, f"observed maxima {got}", time.perf_counter() - t0, 300)


def test_criterion_10_properties():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    counts = dict(minima=0, split=0, gram=0, bound=0, radical=0, attainment=0)
    for _ in range(60):
        q = random_pd_form(rng, rng.randint(1, 3), 10)
        m = minima(q)
        assert (m.min, m.count) == brute_minimum(q, 10)
        counts["minima"] += 1
    for _ in range(25):
        q1 = random_pd_form(rng, rng.randint(1, 3), 6).scaled(2)
        q2 = random_pd_form(rng, rng.randint(1, 3), 6)
        mt = check_tensor_minima(q1, q2)
        counts["split"] += sum(split_factor(v, q1.rank, q2.rank) is not None for v in mt.vectors)
    for name in ("q5", "cubic49", "quartic725"):
        K = resolve_field(name)
        delta = codifferent_generator(K).delta
        for _ in range(4):
            q = random_pd_form(rng, rng.randint(1, 3), 6)
            eps = K.units[rng.randrange(len(K.units))]
            dl = delta * eps * eps
            assert twisted_gram(K, dl, q) == [list(r) for r in tensor(trace_form(K, dl).form, q).doubled]
            counts["gram"] += 1
    for _ in range(60):
        r = rng.randint(1, 4)
        rows = [[rng.randint(-1, 1) for _ in range(r)] for _ in range(r + 1)]
        g = [[2 * sum(x[i] * x[j] for x in rows) for j in range(r)] for i in range(r)]
        q = ZForm(g)
        if is_positive_definite(q):
            m = check_min_one_bound(q)
            assert m.min > 1 or m.count <= 2 * r
            counts["bound"] += 1
    for _ in range(20):
        k, n = rng.randint(1, 3), rng.randint(2, 4)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
        g = [[sum(x[i] * x[j] for x in rows) for j in range(n)] for i in range(n)]
        form, proj = radical_quotient(g)
        for _ in range(10):
            x = [rng.randint(-3, 3) for _ in range(n)]
            val = sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))
            px = [sum(c * xi for c, xi in zip(row, x)) for row in proj]
            assert (form.value(px) if form.rank else 0) == val
        counts["radical"] += 1
    K = resolve_field("cubic49")
    for q in (parse_form("a2"), sum_of_squares_form(2), parse_form("deutsch4")):
        for alpha in totally_positive_window(K, 8):
            if represents(q, alpha, check_attainment=False) is not None and attainment_check(q, alpha, K):
                counts["attainment"] += 1
    ok = all(counts.values())
    record(10, ok, f"instances checked {counts}", time.perf_counter() - t0, 600)
