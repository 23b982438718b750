"""Command-line front end: ``monext <subcommand> ...``.

Exit status: 0 on success, 1 on a failed validation or a census
discrepancy, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import catalog, jsonio
from .correspondence import fiber_data, grothendieck, validate_lax_data
from .errors import BoundExceeded, MonextError, SizeTooLarge, ValidationError
from .monoid import canonical_table, enumerate_monoids, exact_sequence
from .oracle import (
    SCAN_ALL_MONOIDS,
    SCHREIER_NORMAL_FORM,
    cross_check_classification,
    enumerate_extensions_bruteforce,
)
from .schreier import (
    build_schreier_extension,
    classify_schreier,
    extract_schreier_data,
    is_schreier_epi,
    validate_schreier_data,
)
from .weakly_schreier import (
    build_ws_extension,
    classify_ws,
    extract_ws_data,
    is_weakly_schreier_epi,
    validate_ws_data,
)

MODES = ("schreier", "ws", "general")
EXAMPLES = ("nk-addition", "z3mult", "c4-cocycle", "dihedral-s3")


class UsageError(Exception):
    pass


def _read_json(source: str) -> Any:
    text = source.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    if source == "-":
        return json.loads(sys.stdin.read())
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such file: {source}")
    return json.loads(path.read_text(encoding="utf-8"))


def _monoid_arg(value: str):
    v = value.strip()
    if v.startswith("{") or Path(v).exists():
        return jsonio.monoid_from_json(_read_json(v))
    try:
        return catalog.named_monoid(v)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _table(headers: list[str], rows: list[list[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _fmt_table(t) -> str:
    return " ".join("".join(str(v) for v in row) if len(t) <= 10
                    else ",".join(str(v) for v in row) for row in t)


def _emit(args, payload: Any, text: str) -> None:
    if args.format == "json":
        print(jsonio.dumps(payload))
    else:
        print(text)


def _input_obj(args):
    if args.seed_example:
        if args.seed_example not in catalog.SEED_EXAMPLES:
            raise UsageError(f"unknown example {args.seed_example!r}; choose from "
                             + ", ".join(sorted(catalog.SEED_EXAMPLES)))
        kind, make = catalog.SEED_EXAMPLES[args.seed_example]
        obj = make()
        enc = {"schreier": jsonio.schreier_to_json, "ws": jsonio.ws_to_json,
               "sequence": jsonio.sequence_to_json}[kind]
        return enc(obj)
    if args.input is None:
        raise UsageError("an input file, inline JSON or --seed-example is required")
    return _read_json(args.input)


# ---------------------------------------------------------------------------
# subcommands

def _data_from(obj, mode):
    if mode == "schreier":
        d = jsonio.schreier_from_json(obj)
        return validate_schreier_data(d.N, d.H, d.phi, d.chi)
    if mode == "ws":
        d = jsonio.ws_from_json(obj)
        return validate_ws_data(d.N, d.H, d.cong, d.phi, d.chi)
    return validate_lax_data(jsonio.lax_data_from_json(obj))


def cmd_validate(args) -> int:
    obj = _input_obj(args)
    try:
        _data_from(obj, args.mode)
    except ValidationError as exc:
        _emit(args, {"ok": False, "error": type(exc).__name__, "message": str(exc)},
              f"fail: {type(exc).__name__}: {exc}")
        return 1
    _emit(args, {"ok": True}, "ok")
    return 0


def _seq_text(seq) -> str:
    rows = [[g, seq.e(g), _fmt_table([seq.G.table[g]])] for g in seq.G.elements]
    return (f"|N| = {seq.N.size}  |G| = {seq.G.size}  |H| = {seq.H.size}\n"
            f"k = {list(seq.k.map)}\n" + _table(["g", "e(g)", "row of g"], rows))


def cmd_build(args) -> int:
    obj = _input_obj(args)
    try:
        d = _data_from(obj, args.mode)
    except ValidationError as exc:
        print(f"fail: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    build = {"schreier": build_schreier_extension, "ws": build_ws_extension,
             "general": grothendieck}[args.mode]
    seq = build(d)
    _emit(args, jsonio.sequence_to_json(seq), _seq_text(seq))
    return 0


def cmd_extract(args) -> int:
    obj = _input_obj(args)
    seq = jsonio.sequence_from_json(obj)
    try:
        seq = exact_sequence(seq.k, seq.e)
    except ValidationError as exc:
        print(f"fail: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.mode == "general":
        L = fiber_data(seq)
        sizes = [d.carrier for d in L.fibers]
        _emit(args, jsonio.lax_data_to_json(L),
              _table(["h", "|D_h|"], [[h, s] for h, s in enumerate(sizes)]))
        return 0
    if args.mode == "schreier":
        rep = is_schreier_epi(seq)
        ok, extract, enc = rep.schreier, extract_schreier_data, jsonio.schreier_to_json
    else:
        rep = is_weakly_schreier_epi(seq)
        ok, extract, enc = rep.ws, extract_ws_data, jsonio.ws_to_json
    wit = rep.witnesses
    if args.witnesses:
        wit = tuple(int(x) for x in args.witnesses.split(","))
    elif not ok:
        _emit(args, {"ok": False, "witnesses": list(wit)},
              f"fail: not a {args.mode} epimorphism (witnesses {list(wit)})")
        return 1
    try:
        d = extract(seq, wit)
    except ValidationError as exc:
        print(f"fail: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    payload = enc(d)
    text = [f"witnesses: {list(wit)}", _table(
        ["h", "phi(h,-)", "chi(h,-)"] + (["~h"] if args.mode == "ws" else []),
        [[h, list(d.phi[h]), list(d.chi[h])]
         + ([list(d.cong[h].classes)] if args.mode == "ws" else [])
         for h in d.H.elements])]
    _emit(args, payload, "\n".join(text))
    return 0


def _need_pair(args):
    if args.N is None or args.H is None:
        raise UsageError("--N and --H are required")
    return _monoid_arg(args.N), _monoid_arg(args.H)


def cmd_classify(args) -> int:
    N, H = _need_pair(args)
    if args.mode == "general":
        raise UsageError("classify supports --mode schreier or ws")
    if args.mode == "schreier":
        classes = classify_schreier(N, H, bound=args.bound or 12, jobs=args.jobs)
        enc = jsonio.schreier_to_json
    else:
        classes = classify_ws(N, H, bound=args.bound or 9, jobs=args.jobs)
        enc = jsonio.ws_to_json
    payload = {"mode": args.mode, "count": len(classes), "classes": [
        {"representative": enc(c.representative), "size": c.size,
         "canonical_G": [list(r) for r in c.canonical_G]} for c in classes]}
    rows = [[i, len(c.canonical_G), c.size, _fmt_table(c.canonical_G)]
            for i, c in enumerate(classes)]
    _emit(args, payload, f"{len(classes)} classes\n"
          + _table(["#", "|G|", "data", "canonical G"], rows))
    return 0


def _census_payload(c) -> dict:
    return {"mode": c.mode, "counts": c.counts, "entries": [
        {"canonical_G": [list(r) for r in e.canonical_G], "count": e.count,
         "flags": {"schreier": e.flags.schreier, "special": e.flags.special,
                   "weakly_schreier": e.flags.weakly_schreier}}
        for e in c.entries]}


def cmd_census(args) -> int:
    N, H = _need_pair(args)
    mode = SCHREIER_NORMAL_FORM if args.mode == "schreier" else SCAN_ALL_MONOIDS
    c = enumerate_extensions_bruteforce(N, H, mode, jobs=args.jobs)
    rows = [[i, len(e.canonical_G), int(e.flags.schreier), int(e.flags.special),
             int(e.flags.weakly_schreier), e.count, _fmt_table(e.canonical_G)]
            for i, e in enumerate(c.entries)]
    counts = "  ".join(f"{k}={v}" for k, v in c.counts.items())
    _emit(args, _census_payload(c), f"{mode}: {counts}\n" + _table(
        ["#", "|G|", "sch", "spc", "ws", "pairs", "canonical G"], rows))
    return 0


def cmd_crosscheck(args) -> int:
    N, H = _need_pair(args)
    r = cross_check_classification(N, H, jobs=args.jobs)
    rows = [[s.name, s.classified, s.census, "match" if s.matched else "MISMATCH"]
            for s in r.sections]
    text = _table(["section", "classified", "census", "result"], rows)
    for s in r.sections:
        for d in s.discrepancies:
            text += f"\n{s.name}: {json.dumps(d)}"
    _emit(args, r.to_dict(), text)
    return 0 if r.ok else 1


def cmd_example(args) -> int:
    name = args.name
    if name == "nk-addition":
        rep = catalog.nk_fiber_report(args.k)
        rows = [[i, s, rep["representatives"][i]] for i, s in enumerate(rep["fiber_sizes"])]
        text = (_table(["i", "|S_i|", "representatives"], rows)
                + f"\nsaturated fibre over {args.k}: {rep['saturated_fiber_size']} elements"
                + f"\ngamma(n, m) = n + m for i + j < {args.k}: {rep['additive']}")
        _emit(args, rep, text)
        return 0 if rep["additive"] else 1
    if name == "z3mult":
        d = catalog.z3mult_ws()
        seq = build_ws_extension(d)
        target = catalog.z3_multiplicative()
        same = canonical_table(seq.G) == canonical_table(target)
        payload = {"data": jsonio.ws_to_json(d), "G": jsonio.monoid_to_json(seq.G),
                   "isomorphic_to_z3mult": same,
                   "schreier": is_schreier_epi(seq).schreier,
                   "weakly_schreier": is_weakly_schreier_epi(seq).ws}
        _emit(args, payload, _seq_text(seq) + f"\nisomorphic to (Z/3, x): {same}"
              f"\nweakly Schreier: {payload['weakly_schreier']}"
              f"  Schreier: {payload['schreier']}")
        return 0
    d = catalog.c4_cocycle() if name == "c4-cocycle" else catalog.dihedral_s3()
    seq = build_schreier_extension(d)
    orders = sorted(seq.G.element_order(g) for g in seq.G.elements)
    payload = {"data": jsonio.schreier_to_json(d), "G": jsonio.monoid_to_json(seq.G),
               "element_orders": orders}
    _emit(args, payload, _seq_text(seq) + f"\nelement orders: {orders}")
    return 0


def cmd_enumerate(args) -> int:
    ms = enumerate_monoids(args.n, jobs=args.jobs)
    payload = {"n": args.n, "count": len(ms), "tables": [[list(r) for r in m.table] for m in ms]}
    rows = [[i, _fmt_table(m.table)] for i, m in enumerate(ms)]
    _emit(args, payload, f"{len(ms)} monoids of order {args.n}\n" + _table(["#", "table"], rows))
    return 0


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="monext", description="Extensions of finite monoids.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp, modes=MODES):
        sp.add_argument("input", nargs="?", help="JSON file, inline JSON or - for stdin")
        sp.add_argument("--mode", choices=modes, default="schreier")
        sp.add_argument("--seed-example", dest="seed_example",
                        help="use a built-in example instead of an input")

    with_input(sub.add_parser("validate", parents=[common], help="check classifying data"))
    with_input(sub.add_parser("build", parents=[common], help="build the extension"))
    ex = sub.add_parser("extract", parents=[common], help="extract classifying data")
    with_input(ex)
    ex.add_argument("--witnesses", help="comma-separated u_h, one per element of H")

    for name, hlp in (("classify", "classify data up to isomorphism"),
                      ("census", "brute-force census of extensions"),
                      ("crosscheck", "compare classification with the census")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("--N", help="kernel: name, JSON file or inline JSON")
        sp.add_argument("--H", help="cokernel: name, JSON file or inline JSON")
        sp.add_argument("--mode", choices=MODES, default="schreier")
        sp.add_argument("--bound", type=int)

    exm = sub.add_parser("example", parents=[common], help="run a built-in example")
    exm.add_argument("name", choices=EXAMPLES)
    exm.add_argument("--k", type=int, default=4)

    en = sub.add_parser("enumerate-monoids", parents=[common], help="list monoids of order n")
    en.add_argument("--n", type=int, required=True)
    return p


COMMANDS = {
    "validate": cmd_validate, "build": cmd_build, "extract": cmd_extract,
    "classify": cmd_classify, "census": cmd_census, "crosscheck": cmd_crosscheck,
    "example": cmd_example, "enumerate-monoids": cmd_enumerate,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "example" and args.k < 1:
            raise UsageError("--k must be positive")
        return COMMANDS[args.command](args)
    except (UsageError, SizeTooLarge, BoundExceeded, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"usage error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"fail: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except MonextError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
