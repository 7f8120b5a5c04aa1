"""Command-line front end.

    lpak info GRAPH.json
    lpak kgroups GRAPH.json --field fq:5 --n 0..6
    lpak classify A.json B.json --field nf:1,0
    lpak splice GRAPH.json --vertex v
    lpak snf MATRIX.json

Exit codes: 0 success (including a NOT_EQUIVALENT verdict), 2 input error,
3 failed classification precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import Verdict, morita_equivalent
from .graph import (
    Graph,
    GraphError,
    cuntz_splice,
    dump_graph,
    has_infinitely_many_edges,
    is_cofinal,
    is_simple,
    parse_graph,
    partition_vertices,
    presentation_matrix,
    reaches_all_singular,
    satisfies_condition_l,
)
from .groups import FiniteField, parse_field, rank_of
from .intlinalg import IntMatrix, cokernel_mod, kernel_mod, smith_normal_form
from .ktheory import Fidelity, UnsupportedKGroup, graph_decomposition, k0, k_group
from .oracle import (
    MAX_DIM,
    MAX_MINOR_DIM,
    MAX_MODULUS,
    FiniteModuleMap,
    brute_cokernel_mod,
    brute_kernel_mod,
    minors_gcd_invariant_factors,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 2, 3
N_BOUND = 64


class InputError(Exception):
    pass


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_n_range(text: str) -> range:
    """``3`` or inclusive ``-2..6``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise InputError(f"bad n range {text!r}") from exc
    if lo > hi or max(abs(lo), abs(hi)) > N_BOUND:
        raise InputError(f"n range {text!r} must be increasing with |n| <= {N_BOUND}")
    return range(lo, hi + 1)


def _field(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _b(x: bool) -> str:
    return "true" if x else "false"


def verify_matrix(a: IntMatrix, moduli=()) -> list[str]:
    """Cross-check the SNF engine against brute-force oracles where they are tractable."""
    notes = []
    if max(a.rows, a.cols) <= MAX_MINOR_DIM:
        ok = list(smith_normal_form(a).invariant_factors) == minors_gcd_invariant_factors(a)
        notes.append(f"invariant factors vs determinantal divisors: {'ok' if ok else 'MISMATCH'}")
    for m in moduli:
        if 2 <= m <= MAX_MODULUS and max(a.rows, a.cols) <= MAX_DIM:
            fm = FiniteModuleMap(a, m)
            ok = (kernel_mod(a, m) == brute_kernel_mod(fm)
                  and cokernel_mod(a, m) == brute_cokernel_mod(fm))
            notes.append(f"mod {m} kernel/cokernel vs enumeration: {'ok' if ok else 'MISMATCH'}")
    return notes


def cmd_info(args) -> int:
    g = _load_graph(args.graph)
    part = partition_vertices(g)
    a = presentation_matrix(g)
    dd = graph_decomposition(g)
    report = {
        "vertices": list(g.vertices),
        "regular": list(part.regular),
        "singular": list(part.singular),
        "cofinal": is_cofinal(g),
        "condition_l": satisfies_condition_l(g),
        "reaches_singular": reaches_all_singular(g),
        "simple": is_simple(g),
        "infinitely_many_edges": has_infinitely_many_edges(g),
        "presentation_matrix": a.to_rows(),
        "decomposition": {"ones": dd.ones, "factors": list(dd.factors), "m": dd.m, "s": dd.s},
        "k0": str(k0(g)),
    }
    if args.json:
        print(json.dumps(report, indent=2))
        return EXIT_OK
    print(f"vertices: {report['vertices']}")
    print(f"regular: {report['regular']}")
    print(f"singular: {report['singular']}")
    print(f"cofinal: {_b(report['cofinal'])}")
    print(f"Condition (L): {_b(report['condition_l'])}")
    print(f"reaches every singular vertex: {_b(report['reaches_singular'])}")
    print(f"simple: {_b(report['simple'])}")
    print(f"infinitely many edges: {_b(report['infinitely_many_edges'])}")
    print(f"presentation matrix ({a.rows}x{a.cols}): {a.to_rows()}")
    print(f"SNF data: ones={dd.ones} factors={list(dd.factors)} m={dd.m} s={dd.s}")
    print(f"K_0 = {report['k0']}")
    return EXIT_OK


def cmd_kgroups(args) -> int:
    g = _load_graph(args.graph)
    field = _field(args.field)
    ns = parse_n_range(args.n)
    rows = []
    for n in ns:
        try:
            res = k_group(g, field, n)
        except UnsupportedKGroup as exc:
            rows.append({"n": n, "error": str(exc)})
            continue
        row = {"n": n, "group": str(res.group), "fidelity": res.fidelity.value}
        if res.fidelity is Fidelity.RANK_ONLY:
            row["rank"] = rank_of(res.group)
        rows.append(row)
    notes = []
    if args.verify:
        a = presentation_matrix(g)
        moduli = []
        if isinstance(field, FiniteField):
            for n in ns:
                if n >= 1:
                    j = (n + 1) // 2
                    moduli.append(field.q ** j - 1)
        notes = verify_matrix(a, sorted(set(moduli)))
    if args.json:
        out = {"graph": args.graph, "field": field.spec, "groups": rows}
        if args.verify:
            out["verify"] = notes
        print(json.dumps(out, indent=2))
    else:
        for row in rows:
            if "error" in row:
                print(f"K_{row['n']}: unsupported ({row['error']})")
            elif "rank" in row:
                print(f"K_{row['n']} = {row['group']}  (rank {row['rank']}) [{row['fidelity']}]")
            else:
                print(f"K_{row['n']} = {row['group']}  [{row['fidelity']}]")
        for note in notes:
            print(f"verify: {note}")
    return EXIT_OK


def cmd_classify(args) -> int:
    e, f = _load_graph(args.graph_a), _load_graph(args.graph_b)
    decision = morita_equivalent(e, f, _field(args.field))
    out = {"verdict": decision.verdict.value, "certificate": decision.certificate}
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(decision.verdict.value)
        if decision.certificate["failed_precondition"]:
            print(f"reason: {decision.certificate['failed_precondition']}")
        print(json.dumps(decision.certificate, indent=2))
    return EXIT_PRECONDITION if decision.verdict is Verdict.PRECONDITION_FAILED else EXIT_OK


def cmd_splice(args) -> int:
    g = _load_graph(args.graph)
    try:
        spliced = cuntz_splice(g, args.vertex)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    text = dump_graph(spliced)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _load_matrix(source: str) -> IntMatrix:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8") if path.exists() else source
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read matrix from {source!r}: {exc}") from exc
    if isinstance(doc, dict):
        try:
            return presentation_matrix(parse_graph(json.dumps(doc)))
        except GraphError as exc:
            raise InputError(str(exc)) from exc
    if not isinstance(doc, list) or not all(
            isinstance(r, list) and all(isinstance(x, int) for x in r) for r in doc):
        raise InputError("matrix must be a JSON array of integer rows")
    try:
        return IntMatrix.from_rows(doc)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_snf(args) -> int:
    a = _load_matrix(args.matrix)
    res = smith_normal_form(a)
    out = {"u": res.u.to_rows(), "d": res.d.to_rows(), "v": res.v.to_rows(),
           "invariant_factors": list(res.invariant_factors)}
    if args.verify:
        out["verify"] = verify_matrix(a)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key in ("u", "d", "v", "invariant_factors"):
            print(f"{key}: {json.dumps(out[key])}")
        for note in out.get("verify", []):
            print(f"verify: {note}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lpak", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="vertex partition, simplicity flags, SNF data")
    s.add_argument("graph")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("kgroups", help="K_n of the Leavitt path algebra over a field")
    s.add_argument("graph")
    s.add_argument("--field", required=True, help="fq:<q>, algclosed:<0|p> or nf:<r1>,<r2>")
    s.add_argument("--n", default="0..6", help="inclusive range, e.g. -2..6 (default 0..6)")
    s.add_argument("--json", action="store_true")
    s.add_argument("--verify", action="store_true", help="cross-check against brute-force oracles")
    s.set_defaults(func=cmd_kgroups)

    s = sub.add_parser("classify", help="decide Morita equivalence of two graphs' algebras")
    s.add_argument("graph_a")
    s.add_argument("graph_b")
    s.add_argument("--field", default="nf:1,0")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("splice", help="apply the Cuntz splice at a vertex")
    s.add_argument("graph")
    s.add_argument("--vertex", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_splice)

    s = sub.add_parser("snf", help="Smith normal form of a JSON matrix (or a graph's presentation)")
    s.add_argument("matrix", help="path to a JSON file, or a JSON array literal")
    s.add_argument("--json", action="store_true")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_snf)
    return p


def _glue_negative_ranges(argv: list[str]) -> list[str]:
    # argparse reads "--n -2..6" as two flags; rewrite it as "--n=-2..6"
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--n" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--n={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_ranges(argv))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
