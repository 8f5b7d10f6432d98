"""Command line interface: enumeration, tables, counts and verification.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage error,
3 resource bound exceeded."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .algebra import Cyclotomic, field, prime_power

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization


def cyclotomic_poly_coeffs(M: int) -> List[int]:
    """Coefficients of the M-th cyclotomic polynomial, constant term first."""
    from sympy import Poly, cyclotomic_poly, symbols
    x = symbols("x")
    return [int(c) for c in reversed(Poly(cyclotomic_poly(M, x), x).all_coeffs())]


def field_block(kind: Optional[str], q: Optional[int], conductor: Optional[int] = None) -> dict:
    """The defining data every document carries: finite fields used for
    matrix entries and the cyclotomic field of character values."""
    out: dict = {}
    if q is not None:
        p, e = prime_power(q)
        out["base_field"] = field(p, e).spec()
        if kind in ("U", "BOTH"):
            out["unitary_entry_field"] = field(p, 2 * e).spec()
    if conductor is not None:
        out["conductor"] = conductor
        out["cyclotomic_poly"] = cyclotomic_poly_coeffs(conductor)
    return out


def cyc_json(v: Cyclotomic) -> dict:
    d = v.to_json()
    z = v.to_complex()
    d["approx"] = [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]
    d["str"] = str(v)
    return d


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "tolist"):
        return o.tolist()
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, default=_default) + "\n"


def _label(l) -> dict:
    return {"str": str(l), **l.to_json()}


# ---------------------------------------------------------------------------
# subcommands; each returns (document, exit code, csv rows or None)


def cmd_orbits(a):
    from .polyorb import enumerate_orbits
    orbs = enumerate_orbits(a.kind, a.n, a.q)
    res = {"kind": a.kind, "n": a.n, "q": a.q,
           "orbits": [{**o.to_json(), "str": str(o)} for o in orbs]}
    rows = [["kind", "size", "rep"]] + [[o.kind, o.size, str(o)] for o in orbs]
    kind = "U" if a.kind.endswith("tilde") else "GL"
    return res, EXIT_OK, rows, field_block(kind, a.q)


def cmd_labels(a):
    from .charmap import CHAR_KIND, CLASS_KIND, normalize_kind
    from .xpart import enumerate_xpartitions
    k = normalize_kind(a.group)
    lk = (CLASS_KIND if a.classes else CHAR_KIND)[k]
    labs = enumerate_xpartitions(lk, a.n, a.q)
    if a.real_only:
        labs = [l for l in labs if l.is_self_conjugate()]
    if a.height is not None:
        labs = [l for l in labs if l.height == a.height]
    res = {"group": k, "n": a.n, "q": a.q, "kind": lk, "count": len(labs),
           "labels": [{**_label(l), "height": l.height, "real": l.is_self_conjugate()} for l in labs]}
    rows = [["index", "height", "real", "size"]] + [[i, l.height, int(l.is_self_conjugate()), l.size]
                                                 for i, l in enumerate(labs)]
    return res, EXIT_OK, rows, field_block(k, a.q)


def cmd_classes(a):
    from .charmap import centralizer_order, normalize_kind
    from .matgrp import (class_label, coset_classes, conjugacy_classes, elementary_divisors, group,
                         square_in_coset)
    k = normalize_kind(a.group)
    G = group(k, a.n, a.q)
    out = []
    if a.coset:
        for c in coset_classes(G):
            d = c.to_json(G)
            sq = G.mat(square_in_coset(G, c.rep))
            d["invariant"] = [{"poly": list(f), "partition": list(p)}
                              for f, p in elementary_divisors(sq, G.ops)]
            out.append(d)
    else:
        cls, reps = conjugacy_classes(G)
        for i, r in enumerate(reps):
            A = G.mat(r)
            lab = class_label(G, A)
            size = int((cls == i).sum())
            out.append({"rep": A.tolist(), "size": size, "order": int(G.order_of(r)),
                        "centralizer_order": G.size // size, "label": _label(lab)})
            assert G.size // size == centralizer_order(lab)
    res = {"group": f"{k}({a.n},{a.q})", "coset": bool(a.coset), "order": G.size, "classes": out}
    rows = [["index", "size", "order", "centralizer_order"]] + [
        [i, c["size"], c["order"], c["centralizer_order"]] for i, c in enumerate(out)]
    return res, EXIT_OK, rows, field_block(k, a.q)


def cmd_chartable(a):
    from .charmap import build_table, classify, normalize_kind
    k = normalize_kind(a.group)
    if a.oracle or a.extended:
        from .brutechar import group_table
        T = group_table(k, a.n, a.q, bool(a.extended))
        res = {"group": f"{k}({a.n},{a.q})" + ("+" if a.extended else ""), "source": "oracle",
               "order": T.order, "degrees": [int(d) for d in T.degrees],
               "real": [T.is_real_row(i) for i in range(T.nclasses)],
               "class_sizes": list(map(int, T.sizes)), "element_orders": list(map(int, T.orders)),
               "centralizer_orders": [T.order // int(s) for s in T.sizes],
               "values": [[cyc_json(v) for v in row] for row in T.values]}
        conductor = T.exponent
        rows = [["row", "degree", "real"]] + [[i, int(d), int(res["real"][i])]
                                          for i, d in enumerate(res["degrees"])]
    else:
        t = build_table(k, a.n, a.q)
        flags = classify(t)
        res = {"group": f"{k}({a.n},{a.q})", "source": "combinatorial", "order": t.order,
               "characters": [_label(l) for l in t.chars], "classes": [_label(c) for c in t.classes],
               "degrees": t.degrees, "centralizer_orders": t.centralizers,
               "real": [f["real"] for f in flags], "regular": [f["regular"] for f in flags],
               "semisimple": [f["semisimple"] for f in flags],
               "values": [[cyc_json(v) for v in row] for row in t.values]}
        conductor = t.conductor
        rows = [["row", "degree", "real", "regular", "semisimple"]] + [
            [i, f["degree"], int(f["real"]), int(f["regular"]), int(f["semisimple"])]
            for i, f in enumerate(flags)]
        rows += [[], ["class", "centralizer_order"]] + [[i, c] for i, c in enumerate(t.centralizers)]
    return res, EXIT_OK, rows, field_block(k, a.q, conductor)


def cmd_count_real(a):
    from .charmap import count_real_regular, normalize_kind
    k = normalize_kind(a.group)
    methods = ["closed", "polys", "labels", "table"] + (["bijection"] if k == "U" else [])
    counts = {m: count_real_regular(k, a.n, a.q, m) for m in methods}
    res = {"group": k, "n": a.n, "q": a.q, "counts": counts, "agree": len(set(counts.values())) == 1}
    rows = [["method", "count"]] + [[m, c] for m, c in counts.items()]
    return res, EXIT_OK if res["agree"] else EXIT_FAIL, rows, field_block(k, a.q)


def cmd_symfunc_dump(a):
    from .symfunc import transition
    t = Fraction(a.t)
    parts, schur, power = transition(a.grade, t)
    res = {"grade": a.grade, "t": str(t), "partitions": [list(p) for p in parts],
           "schur_in_P": [[str(x) for x in row] for row in schur],
           "power_in_P": [[str(x) for x in row] for row in power]}
    rows = [["basis", "from"] + [" ".join(map(str, p)) for p in parts]]
    for name, M in (("s", schur), ("p", power)):
        rows += [[name, " ".join(map(str, parts[i]))] + [str(x) for x in row] for i, row in enumerate(M)]
    return res, EXIT_OK, rows, {}


def cmd_verify(a):
    from .brutechar import verify
    rep = verify(a.theorem, a.group, a.n, a.q)
    if a.deterministic:
        rep["runtime_ms"] = None
    rows = [["check", "ok"]] + [[c["name"], int(c["ok"])] for c in rep["checks"]]
    return rep, EXIT_OK if rep["verdict"] == "PASS" else EXIT_FAIL, rows, field_block(a.group.upper(), a.q)


def cmd_verify_all(a):
    res = verify_all(a.profile, sign_flip=a.sign_flip, deterministic=a.deterministic)
    rows = [["criterion", "verdict", "runtime_ms"]] + [
        [c["id"], c["verdict"], "" if c["runtime_ms"] is None else c["runtime_ms"]] for c in res["criteria"]]
    return res, EXIT_OK if res["verdict"] == "PASS" else EXIT_FAIL, rows, {}


# ---------------------------------------------------------------------------
# acceptance matrix


def _run_all(reports: List[dict]) -> dict:
    return {"verdict": "PASS" if reports and all(r["verdict"] == "PASS" for r in reports) else "FAIL",
            "reports": reports}


def _v(theorem, kind, n, q):
    from .brutechar import verify
    return verify(theorem, kind, n, q)


def criterion_a1(sign_flip: bool = False) -> dict:
    """Combinatorial and brute-force tables agree after row/column matching;
    the extended oracle tables are orthogonal."""
    from .brutechar import check_column_orthogonality, check_orthogonality, group_table, match_tables
    from .charmap import build_table
    reports = []
    for k, n, q in A1_GROUPS:
        T = group_table(k, n, q)
        m = match_tables(build_table(k, n, q, sign_flip), T)
        checks = [{"name": "tables match", "ok": bool(m["matched"]), "reason": m.get("reason")}]
        TP = group_table(k, n, q, True)
        checks.append({"name": "extended table row orthogonality", "ok": check_orthogonality(TP)})
        checks.append({"name": "extended table column orthogonality", "ok": check_column_orthogonality(TP)})
        reports.append({"group": f"{k}({n},{q})", "verdict": "PASS" if all(c["ok"] for c in checks) else "FAIL",
                        "checks": checks})
    return _run_all(reports)


A1_GROUPS = [("GL", 2, 2), ("GL", 2, 3), ("GL", 2, 4), ("GL", 2, 5), ("GL", 3, 2),
             ("U", 2, 2), ("U", 2, 3), ("U", 3, 2)]


def criterion_a2(sign_flip: bool = False) -> dict:
    return _run_all([_v("4.5", "both", n, q) for n, q in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4), (2, 5)]])


def criterion_a3(sign_flip: bool = False) -> dict:
    reps = [_v("2.5", "both", n, q) for n, q in [(2, 2), (2, 3), (3, 2)]]
    reps += [_v("2.3", "both", n, q) for n, q in [(2, 2), (2, 3), (3, 2)]]
    return _run_all(reps)


def criterion_a4(sign_flip: bool = False) -> dict:
    return _run_all([_v("6.6", "gl", 3, 3)])


def criterion_a5(sign_flip: bool = False) -> dict:
    return _run_all([_v("7.5", "both", 3, 2), _v("7.3", "both", 3, 2)])


def criterion_a6(sign_flip: bool = False) -> dict:
    return _run_all([_v("6.1", "both", 2, 3), _v("6.1", "both", 3, 2)])


def criterion_a7(sign_flip: bool = False) -> dict:
    return _run_all([_v("6.10", "u", 2, 3)])


def criterion_a8(sign_flip: bool = False) -> dict:
    return _run_all([_v("4.1", k, n, q) for k, n, q in [("gl", 2, 3), ("gl", 3, 2), ("u", 2, 2), ("u", 3, 2)]])


def criterion_a9(sign_flip: bool = False) -> dict:
    reps = [_v("5.1", "u", 2, 3), _v("5.1", "u", 3, 2),
            _v("5.6", "u", 2, 2), _v("5.6", "u", 2, 3),
            _v("5.7", "u", 2, 3),
            _v("5.8", "both", 2, 3), _v("5.8", "both", 3, 3)]
    return _run_all(reps)


def criterion_a10(sign_flip: bool = False) -> dict:
    """Structural invariants on every combinatorial table of the A1 list."""
    from .charmap import build_table, structural_checks
    reports = []
    for k, n, q in A1_GROUPS:
        checks = structural_checks(build_table(k, n, q, sign_flip))
        reports.append({"group": f"{k}({n},{q})", "verdict": "PASS" if all(c["ok"] for c in checks) else "FAIL",
                        "checks": checks})
    return _run_all(reports)


CRITERIA: Dict[str, Callable[..., dict]] = {
    "A1": criterion_a1, "A2": criterion_a2, "A3": criterion_a3, "A4": criterion_a4,
    "A5": criterion_a5, "A6": criterion_a6, "A7": criterion_a7, "A8": criterion_a8,
    "A9": criterion_a9, "A10": criterion_a10,
}
PROFILES = {"quick": ["A1", "A2", "A3", "A6"], "full": list(CRITERIA)}


def run_criterion(cid: str, sign_flip: bool = False, deterministic: bool = False) -> dict:
    t0 = time.perf_counter()
    out = CRITERIA[cid](sign_flip=sign_flip)
    ms = int((time.perf_counter() - t0) * 1000)
    if deterministic:
        ms = None
        for r in out["reports"]:
            if "runtime_ms" in r:
                r["runtime_ms"] = None
    return {"id": cid, "verdict": out["verdict"], "runtime_ms": ms, "reports": out["reports"]}


def verify_all(profile: str = "quick", sign_flip: bool = False, deterministic: bool = False) -> dict:
    if profile not in PROFILES:
        raise UsageError(f"unknown profile {profile!r}")
    crit = [run_criterion(c, sign_flip, deterministic) for c in PROFILES[profile]]
    return {"profile": profile, "sign_flip": sign_flip,
            "verdict": "PASS" if all(c["verdict"] == "PASS" for c in crit) else "FAIL",
            "criteria": crit}


# ---------------------------------------------------------------------------
# argument parsing


def _prime_power_arg(s: str) -> int:
    q = int(s)
    try:
        prime_power(q)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    return q


def _positive(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("n must be at least 1")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="charlie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, group_choices=("gl", "u"), need_group=True):
        if need_group:
            sp.add_argument("--group", required=True, type=str.lower, choices=group_choices)
        sp.add_argument("--n", required=True, type=_positive)
        sp.add_argument("--q", required=True, type=_prime_power_arg)

    def output(sp, formats=("json", "csv", "text")):
        sp.add_argument("--format", default="json", choices=formats)
        sp.add_argument("--out", help="write here instead of stdout; a PNG figure is drawn next to it")
        sp.add_argument("--unsafe", action="store_true", help="lift default resource bounds")
        sp.add_argument("--deterministic", action="store_true",
                        help="replace wall-clock timings with null for byte-stable output")

    sp = sub.add_parser("orbits", help="Frobenius orbits on elements or characters")
    sp.add_argument("--kind", required=True, choices=["phi", "theta", "phitilde", "thetatilde"])
    common(sp, need_group=False)
    output(sp)

    sp = sub.add_parser("labels", help="character or class labels")
    common(sp)
    sp.add_argument("--real-only", action="store_true")
    sp.add_argument("--height", type=int)
    sp.add_argument("--classes", action="store_true", help="class labels instead of character labels")
    output(sp)

    sp = sub.add_parser("classes", help="conjugacy classes by brute force")
    common(sp)
    sp.add_argument("--coset", action="store_true", help="classes of the transpose-inverse coset")
    output(sp)

    sp = sub.add_parser("chartable", help="character table")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="brute-force table instead of the combinatorial one")
    sp.add_argument("--extended", action="store_true", help="oracle table of the extension by tau")
    output(sp)

    sp = sub.add_parser("count-real", help="real regular character counts by every route")
    common(sp)
    output(sp)

    sp = sub.add_parser("symfunc-dump", help="Hall-Littlewood transition matrices")
    sp.add_argument("--grade", required=True, type=_positive)
    sp.add_argument("--t", required=True, help="parameter, e.g. -1/2")
    output(sp)

    sp = sub.add_parser("verify", help="check one statement by brute force")
    sp.add_argument("--theorem", required=True)
    common(sp, group_choices=("gl", "u", "both"))
    output(sp)

    sp = sub.add_parser("verify-all", help="run the acceptance matrix")
    sp.add_argument("--profile", default="quick", choices=sorted(PROFILES))
    sp.add_argument("--sign-flip", action="store_true", help=argparse.SUPPRESS)
    output(sp)
    return p


COMMANDS = {"orbits": cmd_orbits, "labels": cmd_labels, "classes": cmd_classes,
            "chartable": cmd_chartable, "count-real": cmd_count_real,
            "symfunc-dump": cmd_symfunc_dump, "verify": cmd_verify, "verify-all": cmd_verify_all}


def _render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _render_text(command: str, res: dict) -> str:
    if command in ("verify",):
        lines = [f"{res['theorem']} {res['params']}: {res['verdict']}"]
        lines += [f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}" for c in res["checks"]]
        lines += [f"  note: {x}" for x in res.get("notes", [])]
        return "\n".join(lines) + "\n"
    if command == "verify-all":
        lines = [f"{c['id']}: {c['verdict']}" for c in res["criteria"]]
        return "\n".join(lines + [f"overall: {res['verdict']}"]) + "\n"
    return dumps(res)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    from .brutechar import HypothesisError
    from .matgrp import ResourceBoundExceeded, set_unsafe
    argv = list(sys.argv[1:] if argv is None else argv)
    # negative parameters such as "--t -1/2" would otherwise read as flags
    for i in range(len(argv) - 1):
        if argv[i] == "--t" and argv[i + 1].startswith("-"):
            argv[i: i + 2] = [f"--t={argv[i + 1]}", ""]
    argv = [x for x in argv if x != ""]
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if os.environ.get("CHARLIE_MAX_GROUP_ORDER") and not args.unsafe:
        sys.stderr.write("charlie: CHARLIE_MAX_GROUP_ORDER is set; refusing it without --unsafe\n")
        return EXIT_USAGE
    set_unsafe(args.unsafe)
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format")}
    try:
        res, code, rows, fields = COMMANDS[args.command](args)
    except ResourceBoundExceeded as e:
        _emit(dumps({"command": args.command, "params": params, "exit": EXIT_BOUND, **e.to_json()}), args.out)
        return EXIT_BOUND
    except (UsageError, HypothesisError, KeyError, ValueError) as e:
        sys.stderr.write(f"charlie: {e}\n")
        return EXIT_USAGE
    finally:
        set_unsafe(False)
    if args.format == "csv":
        text = _render_csv(rows)
    elif args.format == "text":
        text = _render_text(args.command, res)
    else:
        if args.command == "verify":
            doc = {**res, "fields": fields}
        else:
            doc = {"command": args.command, "params": params, "fields": fields, "result": res}
        text = dumps(doc)
    _emit(text, args.out)
    if args.out:
        from .report import render
        render(args.command, res, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
