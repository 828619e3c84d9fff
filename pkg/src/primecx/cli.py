"""Command-line front end.

Exit codes: 0 affirmative, 1 negative, 2 input or usage error, 3 invariant
breach (an avoidance counterexample or a failed audit suite).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from math import lcm

from . import cech as cech_mod
from .complexes import (
    annihilator_of_complex,
    construct_free_prime,
    is_maximal_subcomplex,
    is_primary_subcomplex,
    is_prime_subcomplex,
    is_pure_subcomplex,
    localize_complex,
    prime_avoidance,
    residual,
    saturate_subcomplex,
    scale_by_ideal,
    tensor_complex_with_free,
    torsion_subcomplex,
    zero_divisors_of_complex,
)
from .errors import PrimecxError, ValidationError
from .io import CechDocument, dumps, parse_document, serialize_complex, subcomplex_doc
from .modules import Verdict, colon
from .ring import Ideal, factor_cap

OK, NEGATIVE, INPUT_ERROR, BREACH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(args):
    return parse_document(_read_input(args.input))


def _complex_doc(args):
    doc = _load(args)
    if isinstance(doc, CechDocument):
        raise UsageError(f"'{args.command}' needs a complex document, not a Čech document")
    return doc


def _need_sub(doc, command):
    if doc.subcomplex is None:
        raise UsageError(f"'{command}' needs a document with a \"subcomplex\" entry")
    return doc.subcomplex


def _ideals_doc(ideals):
    return {str(i): p.gen for i, p in sorted(ideals.items())}


def _report_result(command, rep):
    out = {"command": command, **rep.to_doc()}
    return out, (OK if rep.affirmative else NEGATIVE)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    try:
        doc = _load(args)
    except ValidationError as exc:
        return {"command": "validate", "verdict": "violation", "index": exc.index, "reason": exc.reason}, NEGATIVE
    kind = "cech" if isinstance(doc, CechDocument) else "complex"
    return {"command": "validate", "verdict": "ok", "kind": kind}, OK


def _decide(args, primary):
    doc = _load(args)
    if isinstance(doc, CechDocument):
        sub = _need_sub(doc, args.command)
        rep = (cech_mod.is_primary_cech_subcomplex if primary else cech_mod.is_prime_cech_subcomplex)(sub)
    else:
        sub = _need_sub(doc, args.command)
        rep = (is_primary_subcomplex if primary else is_prime_subcomplex)(sub)
    return _report_result(args.command, rep)


def cmd_prime(args):
    return _decide(args, primary=False)


def cmd_primary(args):
    return _decide(args, primary=True)


def cmd_colon(args):
    doc = _load(args)
    if isinstance(doc, CechDocument):
        sub = _need_sub(doc, args.command)
        cols = {k: cech_mod.colon_over_z(sub.part(k)) for k in doc.complex.degrees}
        gens = [c.gen for c in cols.values()]
        res = Ideal(0) if 0 in gens else Ideal(lcm(1, *gens))
    else:
        sub = _need_sub(doc, args.command)
        cols = {i: colon(sub.part(i)) for i in doc.complex.indices}
        res = residual(sub)
    return {"command": "colon", "verdict": "ok", "ideals": _ideals_doc(cols), "residual": res.gen}, OK


def cmd_ann(args):
    doc = _complex_doc(args)
    return {"command": "ann", "verdict": "ok", "annihilator": annihilator_of_complex(doc.complex).gen}, OK


def cmd_zdiv(args):
    doc = _complex_doc(args)
    z = zero_divisors_of_complex(doc.complex)
    return {"command": "zdiv", "verdict": "ok", "zero_divisors": z.to_doc(), "description": str(z)}, OK


def cmd_torsion(args):
    doc = _complex_doc(args)
    t = torsion_subcomplex(doc.complex)
    rep = is_prime_subcomplex(t)
    out = {"command": "torsion", **rep.to_doc(), "subcomplex": subcomplex_doc(t)}
    return out, (OK if rep.verdict in (Verdict.PRIME, Verdict.NOT_PROPER) else NEGATIVE)


def cmd_pure(args):
    doc = _complex_doc(args)
    ok = is_pure_subcomplex(_need_sub(doc, args.command), args.test_bound)
    return {"command": "pure", "verdict": "pure" if ok else "notPure"}, (OK if ok else NEGATIVE)


def cmd_maximal(args):
    doc = _complex_doc(args)
    ok = is_maximal_subcomplex(_need_sub(doc, args.command))
    return {"command": "maximal", "verdict": "maximal" if ok else "notMaximal"}, (OK if ok else NEGATIVE)


def cmd_saturate(args):
    doc = _complex_doc(args)
    res = saturate_subcomplex(_need_sub(doc, args.command), Ideal(args.prime))
    rep = is_prime_subcomplex(res.subcomplex)
    out = {
        "command": "saturate",
        "verdict": "saturated" if res.hypothesis_ok else "hypothesisViolated",
        "hypothesis_ok": res.hypothesis_ok,
        "hypothesis_failures": res.violations,
        "result_verdict": str(rep.verdict),
        "ideals": _ideals_doc(rep.ideals),
        "subcomplex": subcomplex_doc(res.subcomplex),
    }
    return out, (OK if res.hypothesis_ok else NEGATIVE)


def cmd_localize(args):
    doc = _complex_doc(args)
    sub = _need_sub(doc, args.command)
    res = localize_complex(doc.complex, sub, args.invert)
    before, after = is_prime_subcomplex(sub), is_prime_subcomplex(res.subcomplex)
    out = {
        "command": "localize",
        "verdict": "ok" if res.proper_flag else "hypothesisViolated",
        "proper_flag": res.proper_flag,
        "before": str(before.verdict),
        "after": str(after.verdict),
        "ideals": _ideals_doc(after.ideals),
        "document": serialize_complex(res.complex, res.subcomplex),
    }
    return out, (OK if res.proper_flag else NEGATIVE)


def cmd_tensor(args):
    doc = _complex_doc(args)
    sub = _need_sub(doc, args.command)
    if args.rank < 1:
        raise UsageError("--rank must be at least 1")
    res = tensor_complex_with_free(doc.complex, sub, args.rank)
    before, after = is_prime_subcomplex(sub), is_prime_subcomplex(res.subcomplex)
    out = {
        "command": "tensor",
        "verdict": "ok" if before.verdict == after.verdict else "mismatch",
        "before": str(before.verdict),
        "after": str(after.verdict),
        "ideals": _ideals_doc(after.ideals),
        "document": serialize_complex(res.complex, res.subcomplex),
    }
    return out, (OK if before.verdict == after.verdict else BREACH)


def cmd_scale(args):
    doc = _complex_doc(args)
    sub = scale_by_ideal(doc.complex, Ideal(doc.complex.ctx.strip(args.ideal)))
    rep = is_prime_subcomplex(sub)
    out = {"command": "scale", **rep.to_doc(), "subcomplex": subcomplex_doc(sub)}
    return out, (OK if rep.affirmative else NEGATIVE)


def cmd_free_prime(args):
    doc = _complex_doc(args)
    selectors = {}
    for item in args.select or []:
        idx, _, cols = item.partition(":")
        selectors[int(idx)] = [int(c) for c in cols.split(",") if c]
    sub = construct_free_prime(doc.complex, Ideal(args.prime), selectors)
    rep = is_prime_subcomplex(sub)
    out = {"command": "free-prime", **rep.to_doc(), "subcomplex": subcomplex_doc(sub)}
    return out, (OK if rep.affirmative else NEGATIVE)


def cmd_avoid(args):
    doc = _complex_doc(args)
    sub = _need_sub(doc, args.command)
    if not doc.subcomplexes:
        raise UsageError("'avoid' needs a \"subcomplexes\" list (the T_i)")
    res = prime_avoidance(doc.subcomplexes, sub)
    out = {"command": "avoid", "verdict": res.status, **res.to_doc()}
    code = {"holds": OK, "theoremViolation": BREACH}.get(res.status, NEGATIVE)
    return out, code


def cmd_cech(args):
    if args.reproduce:
        rep = cech_mod.reproduce_three_element_example(args.q)
        return {"command": "cech", "verdict": "ok" if rep.passed else "mismatch", **rep.to_doc()}, (
            OK if rep.passed else NEGATIVE)
    if args.elements:
        elements = [int(x) for x in args.elements.split(",") if x.strip()]
        cx = cech_mod.build_cech(elements)
        sub = None
        if args.input is not None:
            doc = _load(args)
            if not isinstance(doc, CechDocument):
                raise UsageError("'cech' input must be a Čech document")
            if list(doc.complex.elements) != elements:
                raise UsageError("--elements disagrees with the document")
            sub = doc.subcomplex
    else:
        doc = _load(args)
        if not isinstance(doc, CechDocument):
            raise UsageError("'cech' input must be a Čech document")
        cx, sub = doc.complex, doc.subcomplex
    bad = cech_mod.check_dsquared(cx)
    out = {
        "command": "cech",
        "elements": list(cx.elements),
        "components": [str(c) for c in cx.components],
        "dsquared": "ok" if bad is None else {"degree": bad[0], "basis_index": bad[1]},
    }
    if sub is None:
        out["verdict"] = "ok" if bad is None else "violation"
        return out, (OK if bad is None else NEGATIVE)
    rep = cech_mod.is_prime_cech_subcomplex(sub)
    prim = cech_mod.is_primary_cech_subcomplex(sub)
    out.update(rep.to_doc())
    out["primary"] = prim.to_doc()
    return out, (OK if rep.affirmative else NEGATIVE)


def cmd_audit(args):
    from .suites import SUITES, run_audit

    names = args.suite or None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    results = run_audit(args.trials, args.seed, names)
    failed = [r.name for r in results if not r.ok]
    out = {
        "command": "audit",
        "verdict": "ok" if not failed else "failures",
        "seed": args.seed,
        "trials": args.trials,
        "suites": [r.to_doc() for r in results],
        "failed_suites": failed,
    }
    return out, (OK if not failed else BREACH)


def cmd_oracle_check(args):
    from .oracle import SearchBox, brute_colon, brute_is_primary_submodule, brute_is_prime_submodule
    from .modules import is_primary_submodule, is_prime_submodule

    if args.sweep:
        from .suites import oracle_equivalence_suite

        res = oracle_equivalence_suite(args.max_order, args.subs, args.seed)
        out = {"command": "oracle-check", "verdict": "ok" if res.ok else "mismatch", "suite": res.to_doc()}
        return out, (OK if res.ok else BREACH)
    doc = _complex_doc(args)
    sub = _need_sub(doc, args.command)
    box = SearchBox(args.scalar_bound, args.element_bound, args.den_exp_bound)
    rows, mismatches = {}, []
    for i in doc.complex.indices:
        part = sub.part(i)
        if part.ambient.dim == 0:
            continue
        exact = part.ambient.is_finite
        entry = {"exhaustive": exact}
        for name, fast_fn, brute_fn in (("prime", is_prime_submodule, brute_is_prime_submodule),
                                        ("primary", is_primary_submodule, brute_is_primary_submodule)):
            fast, brute = fast_fn(part, i), brute_fn(part, box)
            entry[name] = {"fast": str(fast.verdict), "oracle_counterexample": _fmt_cex(brute.counterexample)}
            agrees = (not brute.proper and fast.verdict == Verdict.NOT_PROPER) or (
                brute.proper and (fast.affirmative == brute.holds if exact else
                                  (not fast.affirmative or brute.holds)))
            if fast.witness is not None and not fast.witness.replay(part, primary=(name == "primary")):
                agrees = False
            if not agrees:
                mismatches.append(f"{name}@{i}")
        fast_colon = colon(part)
        oracle_colon = brute_colon(part, box)
        entry["colon"] = {"fast": fast_colon.gen, "oracle": oracle_colon.gen}
        if exact and fast_colon != oracle_colon:
            mismatches.append(f"colon@{i}")
        rows[str(i)] = entry
    out = {"command": "oracle-check", "verdict": "ok" if not mismatches else "mismatch",
           "indices": rows, "mismatches": mismatches}
    return out, (OK if not mismatches else BREACH)


def _fmt_cex(cex):
    if cex is None:
        return None
    r, m = cex
    return {"r": str(Fraction(r)), "m": [str(Fraction(x)) for x in m]}


COMMANDS = {
    "validate": cmd_validate,
    "prime": cmd_prime,
    "primary": cmd_primary,
    "colon": cmd_colon,
    "ann": cmd_ann,
    "zdiv": cmd_zdiv,
    "torsion": cmd_torsion,
    "pure": cmd_pure,
    "maximal": cmd_maximal,
    "saturate": cmd_saturate,
    "localize": cmd_localize,
    "tensor": cmd_tensor,
    "scale": cmd_scale,
    "free-prime": cmd_free_prime,
    "avoid": cmd_avoid,
    "cech": cmd_cech,
    "audit": cmd_audit,
    "oracle-check": cmd_oracle_check,
}

HELP = {
    "validate": "check d o d = 0 and subcomplex closure",
    "prime": "decide whether the subcomplex is prime",
    "primary": "decide whether the subcomplex is primary",
    "colon": "per-index colon ideals and the residual (S : C)",
    "ann": "annihilator of the complex",
    "zdiv": "zero divisors of the complex",
    "torsion": "torsion subcomplex and its primeness",
    "pure": "decide purity of the subcomplex",
    "maximal": "decide maximality of the subcomplex",
    "saturate": "saturate the subcomplex at a prime",
    "localize": "invert an integer and push the subcomplex forward",
    "tensor": "tensor with a free module of given rank",
    "scale": "the subcomplex mC for a principal ideal m",
    "free-prime": "build a prime subcomplex of a free complex from basis selections",
    "avoid": "check prime avoidance for the listed subcomplexes",
    "cech": "build a Čech complex of Z and decide diagonal subcomplexes",
    "audit": "run the seeded property suites",
    "oracle-check": "compare fast deciders with the brute-force oracle",
}


def _positive_cap(text):
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("factor cap must be at least 2")
    return n


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--factor-cap", type=_positive_cap, default=argparse.SUPPRESS,
                        help="largest trial divisor used when factoring (default 10^9)")
    common.add_argument("--format", choices=("human", "structured"), default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record wall-clock time in the report (breaks byte determinism)")

    parser = argparse.ArgumentParser(prog="primecx", description="Prime and primary subcomplexes over Z[1/u].",
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=HELP[name], description=HELP[name])
        if name not in ("audit",):
            p.add_argument("input", nargs="?", help="document path, or - for standard input")
        if name == "pure":
            p.add_argument("--test-bound", type=int, default=0, help="extra scalars 2..N to test")
        if name in ("saturate", "free-prime"):
            p.add_argument("--prime", type=int, required=True, help="generator of the prime ideal (0 allowed)")
        if name == "free-prime":
            p.add_argument("--select", action="append", metavar="I:C1,C2",
                           help="0-based basis columns kept at index I (repeatable)")
        if name == "localize":
            p.add_argument("--invert", type=int, required=True, help="the integer a to invert")
        if name == "tensor":
            p.add_argument("--rank", type=int, required=True)
        if name == "scale":
            p.add_argument("--ideal", type=int, required=True, help="generator m of the ideal")
        if name == "cech":
            p.add_argument("--elements", help="comma-separated pairwise-coprime integers")
            p.add_argument("--reproduce", action="store_true", help="rebuild the 3, 5, 7 example and its verdicts")
            p.add_argument("--q", type=int, default=2, help="prime substituted in the reproduction")
        if name == "audit":
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
        if name == "oracle-check":
            p.add_argument("--sweep", action="store_true", help="run the finite-module sweep instead")
            p.add_argument("--max-order", type=int, default=200)
            p.add_argument("--subs", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--scalar-bound", type=int, default=12)
            p.add_argument("--element-bound", type=int, default=3)
            p.add_argument("--den-exp-bound", type=int, default=1)
    return parser


# ---------------------------------------------------------------------------
# output


def render_human(doc):
    lines = []
    for key in ("command", "verdict"):
        if key in doc:
            lines.append(f"{key}: {doc[key]}")
    if doc.get("ideals"):
        lines.append("ideals: " + ", ".join(f"P_{i} = ({g})" for i, g in doc["ideals"].items()))
    w = doc.get("witness")
    if w:
        lines.append(f"witness: index {w['index']}, r = {w['r']}, m = [{', '.join(w['m'])}]")
        lines.append(f"  {w['replay']}")
    for key in sorted(doc):
        if key in ("command", "verdict", "ideals", "witness", "timing") or doc[key] in (None, [], {}):
            continue
        val = doc[key]
        if key == "suites":
            lines.append("suites:")
            width = max(len(s["name"]) for s in val)
            for s in val:
                lines.append(f"  {s['name']:<{width}}  passed {s['passed']:>6}/{s['trials']:<6} "
                             f"applicable {s['applicable']:>6}  failed {s['failed']}")
            continue
        lines.append(f"{key}: {_compact(val)}")
    if doc.get("timing") is not None:
        lines.append(f"timing: {doc['timing']:.3f}s")
    return "\n".join(lines) + "\n"


def _compact(val):
    return json.dumps(val, sort_keys=True, ensure_ascii=False)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code not in (0, None) else 0
    fmt = getattr(args, "format", "human")
    cap = getattr(args, "factor_cap", 10**9)
    timing = getattr(args, "timing", False)
    start = time.perf_counter()
    try:
        with factor_cap(cap):
            doc, code = COMMANDS[args.command](args)
    except (UsageError, PrimecxError) as exc:
        doc, code = {"command": args.command, "verdict": "error", "error": type(exc).__name__,
                     "message": str(exc)}, INPUT_ERROR
        for attr in ("path", "index"):
            if hasattr(exc, attr):
                doc[attr] = getattr(exc, attr)
    doc.setdefault("ideals", {})
    doc.setdefault("witness", None)
    doc["timing"] = round(time.perf_counter() - start, 6) if timing else None
    text = dumps(doc) if fmt == "structured" else render_human(doc)
    stream = sys.stderr if code == INPUT_ERROR and fmt == "human" else sys.stdout
    stream.write(text)
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
