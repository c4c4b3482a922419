"""Command-line front end: `zforms <command> ...`.

Exit codes: 0 success, 1 a mathematical negative was found (non-represented
element, obstruction, no decomposition), 2 usage or input error, 3 an internal
invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .fields import FieldError, resolve_field
from .lattice import InvariantViolation, LatticeError, minima, parse_form

OK, NEGATIVE, USAGE, INVARIANT = 0, 1, 2, 3


class Out:
    def __init__(self, as_json, stream):
        self.as_json = as_json
        self.stream = stream

    def record(self, text, **fields):
        if self.as_json:
            line = json.dumps({k: _jsonable(v) for k, v in fields.items()}, sort_keys=True)
        else:
            line = text
        self.stream.write(line + "\n")


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if hasattr(v, "serialize"):
        return v.serialize()
    return v


def _decimal(q, digits, up):
    scaled = q * 10 ** digits
    n = -((-scaled.numerator) // scaled.denominator) if up else scaled.numerator // scaled.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 10 ** digits}.{n % 10 ** digits:0{digits}d}"


def _enc(e, digits=6):
    """Both endpoints, rounded outward so the printed interval still encloses."""
    return [_decimal(Fraction(e.lo), digits, False), _decimal(Fraction(e.hi), digits, True)]


def _vec(v):
    return "(" + ", ".join(x.serialize() for x in v) + ")"


# commands


def cmd_field_info(args, out):
    from .traceforms import NoTotallyPositiveGenerator, codifferent_generator

    K = resolve_field(args.field)
    out.record(f"label: {K.label}", key="label", value=K.label)
    out.record(f"degree: {K.degree}", key="degree", value=K.degree)
    out.record(f"minpoly: {list(K.minpoly)}", key="minpoly", value=list(K.minpoly))
    out.record(f"discriminant: {K.discriminant}", key="discriminant", value=K.discriminant)
    for i, (lo, hi) in enumerate(K.embeddings.refined(48).intervals):
        a, b = _decimal(lo, 12, False), _decimal(hi, 12, True)
        out.record(f"root {i}: [{a}, {b}]", key="root", index=i, lo=a, hi=b)
    for u in K.units:
        out.record(f"unit: {u.serialize()} norm {u.norm()} signature {_sig(u)}", key="unit", value=u, norm=u.norm(), signature=_sig(u))
    try:
        c = codifferent_generator(K)
        out.record(f"codifferent generator: {c.delta.serialize()}", key="codifferent", value=c.delta)
    except NoTotallyPositiveGenerator as e:
        out.record(f"codifferent generator: none totally positive ({e})", key="codifferent", value=None)
    return OK


def _sig(u):
    return "".join("+" if s > 0 else "-" for s in u.signature())


def cmd_trace_form(args, out):
    from .traceforms import codifferent_generator, trace_form

    K = resolve_field(args.field)
    delta = K.parse(args.delta) if args.delta else codifferent_generator(K).delta
    tf = trace_form(K, delta)
    for row in tf.gram:
        out.record("[" + ", ".join(str(x) for x in row) + "]", row=row)
    m = minima(tf.form)
    out.record(f"min: {m.min} ({m.count} minimal vectors)", min=m.min, count=m.count, delta=delta)
    return OK


def cmd_minima(args, out):
    q = parse_form(args.form)
    m = minima(q)
    out.record(f"min: {m.min} ({m.count} minimal vectors)", min=m.min, count=m.count)
    for v in m.vectors:
        out.record(str(list(v)), vector=list(v))
    return OK


def cmd_indecomposables(args, out):
    from .indecomposables import indecomposable_classes

    K = resolve_field(args.field)
    scan = indecomposable_classes(K, args.norm_bound, args.trace_bound)
    for c in scan:
        out.record(
            f"{c.representative.serialize()} norm {c.norm} trace {c.trace} indecomposable {c.indecomposable}",
            representative=c.representative, norm=c.norm, trace=c.trace, indecomposable=c.indecomposable,
        )
    out.record(f"classes: {len(scan)} ({scan.note}; trace <= {scan.trace_bound}, norm <= {scan.norm_bound})",
               classes=len(scan), note=scan.note, trace_bound=scan.trace_bound, norm_bound=scan.norm_bound)
    return OK


def cmd_sos(args, out):
    from .squares import sos_representation

    K = resolve_field(args.field)
    alpha = K.parse(args.alpha)
    rep = sos_representation(alpha, args.max_len)
    if rep is None:
        out.record(f"{alpha.serialize()} -> none", alpha=alpha, length=None)
        return NEGATIVE
    out.record(f"{alpha.serialize()} -> {len(rep)} {_vec(rep)}", alpha=alpha, length=len(rep), squares=list(rep))
    return OK


def cmd_pythagoras(args, out):
    from .squares import pythagoras_scan

    K = resolve_field(args.field)
    r = pythagoras_scan(K, args.trace_bound, args.max_len)
    for k, n in r.histogram.items():
        out.record(f"length {k}: {n}", length=k, count=n)
    out.record(
        f"observed max: {r.observed_max} (lower bound; upper bound {r.upper_bound})",
        observed_max=r.observed_max, upper_bound=r.upper_bound, trace_bound=r.trace_bound, capped=r.capped,
    )
    if r.first_non_sos is not None:
        out.record(f"not a sum of squares: {r.first_non_sos.serialize()}", non_sos=r.first_non_sos)
    return OK


def cmd_zeta_bounds(args, out):
    from .zeta import B_CONSTANTS, discriminant_bound

    for d in sorted(B_CONSTANTS):
        e = discriminant_bound(d)
        lo, hi = _enc(e)
        out.record(f"{d}  |Delta_K| < [{lo}, {hi}]", degree=d, lo=lo, hi=hi)
    return OK


def cmd_siegel_check(args, out):
    from .zeta import siegel_consistency

    K = resolve_field(args.field)
    r = siegel_consistency(K, args.prime_limit)
    lo, hi = _enc(r.rhs)
    zlo, zhi = _enc(r.zeta_minus1_enclosure, 9)
    out.record(f"lhs: {r.lhs}", key="lhs", value=r.lhs)
    out.record(f"trace-one elements: {r.count}", key="count", value=r.count)
    out.record(f"rhs: [{lo}, {hi}]", key="rhs", lo=lo, hi=hi)
    out.record(f"relative gap: {r.relative_gap:.3e}", key="relative_gap", value=f"{r.relative_gap:.3e}")
    out.record(f"zeta_K(-1): {r.zeta_minus1}", key="zeta_minus1", value=r.zeta_minus1)
    out.record(f"zeta_K(-1) enclosure: [{zlo}, {zhi}]", key="zeta_minus1_enclosure", lo=zlo, hi=zhi)
    out.record(f"no universal Z-form possible: {r.no_universal}", key="no_universal", value=r.no_universal)
    return NEGATIVE if r.no_universal else OK


def cmd_represent(args, out):
    from .representation import represents

    K = resolve_field(args.field)
    q = parse_form(args.form)
    alpha = K.parse(args.alpha)
    v = represents(q, alpha, K)
    if v is None:
        out.record(f"{alpha.serialize()} not represented", alpha=alpha, witness=None)
        return NEGATIVE
    out.record(f"{alpha.serialize()} = Q{_vec(v)}", alpha=alpha, witness=list(v))
    return OK


def _decide(payload):
    from .representation import represents

    q, a = payload
    return represents(q, a, a.field, first_only=True, check_attainment=False) is not None


def parallel_scan(q, K, trace_bound, jobs):
    """universal_scan with orbit representatives decided by a worker pool; the
    lowest-ordered failure wins, so the result does not depend on jobs."""
    from .embeddings import totally_positive_window
    from .representation import AllRepresented, NotRepresented, universal_scan
    from .units import reduce_by_unit_squares

    if jobs <= 1:
        return universal_scan(q, K, trace_bound)
    window = totally_positive_window(K, trace_bound)
    reps = [reduce_by_unit_squares(a)[0] for a in window]
    distinct = list(dict.fromkeys(reps))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        verdict = dict(zip(distinct, pool.map(_decide, [(q, r) for r in distinct])))
    for i, (a, r) in enumerate(zip(window, reps)):
        if not verdict[r]:
            return NotRepresented(alpha=a, trace_bound=trace_bound, checked=i + 1)
    return AllRepresented(trace_bound=trace_bound, checked=len(window), classes=len(distinct))


def cmd_universal_scan(args, out):
    K = resolve_field(args.field)
    q = parse_form(args.form)
    res = parallel_scan(q, K, args.trace_bound, args.jobs)
    if res.represented:
        out.record(f"AllRepresented(trace <= {res.trace_bound}): {res.checked} elements, {res.classes} unit-square classes",
                   result="AllRepresented", trace_bound=res.trace_bound, checked=res.checked, classes=res.classes)
        return OK
    out.record(f"not represented: {res.alpha.serialize()} (trace {res.alpha.trace()})",
               result="NotRepresented", alpha=res.alpha, trace=res.alpha.trace(), checked=res.checked)
    return NEGATIVE


def cmd_lift(args, out):
    from .indecomposables import indecomposable_classes
    from .representation import ClassNotRepresented, build_lifted_universal, orthogonal_sum_scan

    K = resolve_field(args.field)
    q = parse_form(args.form)
    classes = indecomposable_classes(K, args.norm_bound, args.trace_bound)
    try:
        lifted = build_lifted_universal(q, K, args.pythagoras_upper, list(classes))
    except ClassNotRepresented as e:
        out.record(f"class not represented: {e}", result="ClassNotRepresented", detail=str(e))
        return NEGATIVE
    out.record(f"m = {lifted.m} = {lifted.pythagoras_upper} x {len(lifted.classes)}; rank {lifted.form.rank}",
               m=lifted.m, rank=lifted.form.rank, pythagoras_upper=lifted.pythagoras_upper, classes=list(lifted.classes))
    out.record(f"form: {lifted.form.serialize()}", form=lifted.form.serialize())
    if args.scan_bound:
        res = orthogonal_sum_scan([q] * lifted.m, K, args.scan_bound)
        if not res.represented:
            out.record(f"lifted form misses {res.alpha.serialize()}", result="NotRepresented", alpha=res.alpha)
            return NEGATIVE
        out.record(f"AllRepresented(trace <= {res.trace_bound}): {res.checked} elements",
                   result="AllRepresented", trace_bound=res.trace_bound, checked=res.checked)
    return OK


def cmd_selftest(args, out):
    from .selftest import run_checks

    failures = 0
    for name, ok, detail in run_checks():
        out.record(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""), check=name, passed=ok, detail=detail)
        failures += not ok
    return OK if not failures else INVARIANT


def build_parser():
    p = argparse.ArgumentParser(prog="zforms", description="Universal quadratic forms over totally real fields.")
    p.add_argument("--json", action="store_true", help="one JSON record per line, keys sorted")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output is identical for any value)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, field=True, **opts):
        sp = sub.add_parser(name)
        if field:
            sp.add_argument("field", help="field file path or preset name (e.g. cubic49)")
        for flag, kw in opts.items():
            sp.add_argument("--" + flag.replace("_", "-"), **kw)
        sp.set_defaults(func=fn)
        return sp

    add("field-info", cmd_field_info)
    add("trace-form", cmd_trace_form, delta=dict(default=None, help="element, e.g. inv:omega+2 or [2,1]/5"))
    add("minima", cmd_minima, field=False, form=dict(required=True))
    add("indecomposables", cmd_indecomposables, norm_bound=dict(type=int, default=16), trace_bound=dict(type=int, default=30))
    add("sos", cmd_sos, alpha=dict(required=True), max_len=dict(type=int, default=8))
    add("pythagoras", cmd_pythagoras, trace_bound=dict(type=int, default=30), max_len=dict(type=int, default=None))
    add("zeta-bounds", cmd_zeta_bounds, field=False)
    add("siegel-check", cmd_siegel_check, prime_limit=dict(type=int, default=10 ** 4))
    add("represent", cmd_represent, form=dict(required=True), alpha=dict(required=True))
    add("universal-scan", cmd_universal_scan, form=dict(required=True), trace_bound=dict(type=int, default=25))
    add("lift", cmd_lift, form=dict(required=True), pythagoras_upper=dict(type=int, required=True),
        norm_bound=dict(type=int, default=16), trace_bound=dict(type=int, default=30), scan_bound=dict(type=int, default=0))
    add("selftest", cmd_selftest, field=False)
    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    return p


def run(argv=None, stream=None):
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    out = Out(args.json, stream)
    try:
        return args.func(args, out)
    except (InvariantViolation, AssertionError) as e:
        sys.stderr.write(f"invariant violation: {e}\n")
        return INVARIANT
    except (FieldError, LatticeError, FileNotFoundError, ValueError, SyntaxError, TypeError, ZeroDivisionError) as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
