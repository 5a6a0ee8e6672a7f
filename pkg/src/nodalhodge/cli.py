"""Command-line front end.

    nodalhodge analyze SOURCE [--q SPEC] [--json] [--out PATH]
    nodalhodge dims SOURCE --kind {R/J,I^i,I^(i),I^(i)J} [--i I] --k K
    nodalhodge ccoeff N_PLUS_1 D
    nodalhodge bounds N D
    nodalhodge reproduce [--json] [--out PATH]
    nodalhodge --catalog-list

SOURCE is a path to a JSON input document or ``catalog:<name>``.
Exit status: 0 success, 1 mismatch in ``reproduce``, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Optional

from . import hodge, ideals
from .exactnum import GaussParseError
from .hodge import Hypersurface, NodeVerificationError
from .linalg import ContainmentError
from .polyring import HomoPoly, PolyFormatError
from .singcat import CATALOG_NAMES, UnknownCatalogEntry, catalog

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input or input document; maps to exit status 2."""


# --------------------------------------------------------------------------
# input


def parse_document(text: str, name: str = "") -> Hypersurface:
    """Build a :class:`Hypersurface` from an input document.

    ``{"n": 3, "d": 4, "polynomial": {...}, "nodes": [["0", "1", "1", "1"], ...]}``
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name or 'input'}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    missing = [k for k in ("n", "d", "polynomial", "nodes") if k not in doc]
    if missing:
        raise InputError(f"input document lacks {', '.join(missing)}")
    try:
        n, d = int(doc["n"]), int(doc["d"])
        f = HomoPoly.from_json(doc["polynomial"])
    except (GaussParseError, PolyFormatError, TypeError, ValueError) as exc:
        raise InputError(f"polynomial: {exc}") from exc
    if f.n_vars != n + 1 or f.degree != d:
        raise InputError(f"polynomial has {f.n_vars} variables and degree {f.degree}; expected {n + 1} and {d}")
    nodes = []
    for pos, coords in enumerate(doc["nodes"]):
        if not isinstance(coords, list) or len(coords) != n + 1:
            raise InputError(f"node {pos}: expected a list of {n + 1} coordinates")
        nodes.append([str(c) for c in coords])
    try:
        from .exactnum import parse_gauss
        parsed = []
        for pos, coords in enumerate(nodes):
            row = []
            for j, c in enumerate(coords):
                try:
                    row.append(parse_gauss(c))
                except GaussParseError as exc:
                    raise InputError(f"node {pos}, coordinate {j}: {exc}") from exc
            parsed.append(row)
        return Hypersurface(n, d, f, parsed, name=doc.get("name", name))
    except NodeVerificationError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_source(source: str) -> Hypersurface:
    if source.startswith("catalog:"):
        try:
            return catalog(source[len("catalog:"):]).hypersurface
        except UnknownCatalogEntry as exc:
            raise InputError(exc.args[0]) from exc
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    return parse_document(text, source)


def parse_q_spec(spec: Optional[str], n: int) -> list:
    """``None`` -> 0..n; ``""`` -> none; ``"2"``, ``"1:3"`` (inclusive), ``"0,2"``."""
    if spec is None:
        return list(range(n + 1))
    out = []
    for part in filter(None, (p.strip() for p in spec.split(","))):
        m = re.fullmatch(r"(-?\d+)(?::(-?\d+))?", part)
        if not m:
            raise InputError(f"bad q specification {part!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        out.extend(range(lo, hi + 1))
    for q in out:
        if not 0 <= q <= n:
            raise InputError(f"q = {q} outside [0, {n}]")
    return sorted(set(out))


# --------------------------------------------------------------------------
# output


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def format_table(header: list, rows: list) -> str:
    cells = [[str(c) for c in header]] + [[_cell(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def analysis_table(report: dict) -> str:
    hs = report["hypersurface"]
    head = f"{hs['name'] or 'hypersurface'}: n={hs['n']} d={hs['d']} nodes={report['node_count']}\n"
    rows = []
    for r in report["records"]:
        if r["regime"] == "low":
            rows.append([r["q"], r["p"], r["k"], r["graded_dim"], None, r["ordinary_quotient_dim"], None, None, r["smooth_value"]])
        else:
            rows.append([r["q"], r["p"], r["k"], r["line1_dim"], r["line2_dim"], r["ordinary_quotient_dim"],
                         r["evaluation_surjectivity"]["overall"], r["veronese"]["independent"], r["smooth_value"]])
    if not rows:
        return head
    header = ["q", "p", "k", "dim", "dim(alt)", "dim(ordinary)", "onto", "veronese", "smooth"]
    return head + format_table(header, rows)


# --------------------------------------------------------------------------
# catalog expectations


_SYMB = re.compile(r"^I\^\((\d+)\)_(\d+)$")
_ORD = re.compile(r"^\(I\^(\d+)\)_(\d+)$")
_IJ = re.compile(r"^\(I(?:\^\((\d+)\))?J\)_(\d+)$")
_Q = re.compile(r"^([a-z_]+)_q(\d+)$")


def resolve_expectation(entry, key: str):
    """Compute the value that a catalog expectation ``key`` refers to."""
    h = entry.hypersurface
    if key == "node_count":
        return h.node_report.count if h.node_report and h.node_report.all_nodes else -1
    if m := _SYMB.match(key):
        return ideals.symbolic_piece(h.nodes, int(m[1]), int(m[2]), h.n_vars).dim
    if m := _ORD.match(key):
        return ideals.ordinary_power_piece(h.nodes, int(m[1]), int(m[2]), h.n_vars).dim
    if m := _IJ.match(key):
        return ideals.ideal_times_jacobian_piece(h.nodes, h.f, int(m[1] or 1), int(m[2])).dim
    if key.startswith("witness_"):
        w = hodge.pole_order_surrogate(h, entry.witness_p)
        return {"witness_lhs": w.lhs, "witness_rhs": w.rhs, "witness_strict": w.strict}[key]
    if m := _Q.match(key):
        what, q = m[1], int(m[2])
        if what == "beta_sizes":
            return hodge.check_evaluation_surjectivity(h, q).sizes()
        if what == "surjective":
            return hodge.check_evaluation_surjectivity(h, q).overall
        if what == "veronese":
            v = hodge.check_veronese_independence(h, h.n - q)
            return [v.e, v.veronese_cols]
        if what == "veronese_independent":
            return hodge.check_veronese_independence(h, h.n - q).independent
        if what == "quotient":
            return hodge.symbolic_quotient_dims(h, q).quotient_dim
        if what == "lines_agree":
            return hodge.symbolic_quotient_dims(h, q).lines_agree
        if what == "ordinary_quotient":
            return hodge.ordinary_quotient_dim(h, q)
    raise KeyError(f"no resolver for expectation {key!r}")


def _general_rows() -> list:
    """Rows not tied to a single catalog entry: (label, thunk, expected, source, hedged)."""
    rows = []
    for n, d in ((2, 3), (2, 4), (3, 3), (3, 4), (4, 3)):
        h = catalog(f"fermat-{n}-{d}").hypersurface
        rows.append((f"fermat-{n}-{d} (R/J) vs C(n+1,d,(q+1)d), q<n",
                     (lambda h=h: [hodge.hodge_graded_dim_low(h, q) if q <= h.half_n else hodge.milnor_dim(h.f, h.degree_for(q))
                                   for q in range(h.n)]),
                     [hodge.griffiths_smooth_dim(n, d, n - q) for q in range(n)],
                     "smooth hypersurfaces: Milnor algebra vs expansion", False))
    rows.append(("C(4,4,7)", lambda: hodge.fermat_milnor_coeff(4, 4, 7), 16, "expansion of (t+t^2+t^3)^4", False))
    rows.append(("C(4,4,8)", lambda: hodge.fermat_milnor_coeff(4, 4, 8), 19, "expansion of (t+t^2+t^3)^4", False))
    rows.append(("bounds(3,4) closed form", lambda: hodge.node_bounds(3, 4).varchenko_rhs, 16, "C(4,4,7), Kummer node count", False))
    rows.append(("bounds(3,4) odd-dimension bound", lambda: hodge.node_bounds(3, 4).odd_bound, 19, "C(4,4,8)", False))
    rows.append(("bounds(3,4) middle sum", lambda: hodge.node_bounds(3, 4).varchenko_sum, 16,
                 "stated equal to the closed form; reported only", True))
    return rows


def reproduction_rows() -> list:
    rows = []
    for name in CATALOG_NAMES:
        if "<" in name:
            continue
        entry = catalog(name)
        for e in entry.expected:
            rows.append((f"{name} {e.key}", (lambda entry=entry, key=e.key: resolve_expectation(entry, key)),
                         e.value, e.source, e.hedged))
    return rows + _general_rows()


def run_reproduction(progress: Optional[Callable] = None) -> list:
    results = []
    for label, thunk, expected, source, hedged in reproduction_rows():
        computed = thunk()
        rec = {"row": label, "computed": computed, "expected": expected, "source": source,
               "hedged": hedged, "match": computed == expected}
        results.append(rec)
        if progress:
            progress(rec)
    return results


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    h = load_source(args.source)
    qs = parse_q_spec(args.q, h.n)
    report = hodge.analyze(h, qs)
    _emit(dump_json(report) if args.json else analysis_table(report), args.out)
    return EXIT_OK


DIM_KINDS = ("R/J", "I^i", "I^(i)", "I^(i)J")


def cmd_dims(args) -> int:
    h = load_source(args.source)
    k, i = args.k, args.i
    if args.kind != "R/J" and i is None:
        raise InputError(f"--i is required for kind {args.kind}")
    if i is not None and i < 0:
        raise InputError("--i must be nonnegative")
    if args.kind == "R/J":
        value = hodge.milnor_dim(h.f, k)
    elif args.kind == "I^i":
        value = ideals.ordinary_power_piece(h.nodes, i, k, h.n_vars).dim if k >= 0 else 0
    elif args.kind == "I^(i)":
        value = ideals.symbolic_piece(h.nodes, i, k, h.n_vars).dim if k >= 0 else 0
    else:
        value = ideals.ideal_times_jacobian_piece(h.nodes, h.f, i, k).dim if k >= 0 else 0
    if args.json:
        _emit(dump_json({"kind": args.kind, "i": i, "k": k, "dim": value}), args.out)
    else:
        _emit(f"{value}\n", args.out)
    return EXIT_OK


def cmd_ccoeff(args) -> int:
    if args.n_plus_1 < 1 or args.d < 2:
        raise InputError("need N_PLUS_1 >= 1 and D >= 2")
    row = list(hodge.fermat_milnor_row(args.n_plus_1, args.d))
    if args.json:
        _emit(dump_json({"n_plus_1": args.n_plus_1, "d": args.d, "coefficients": row}), args.out)
    else:
        _emit(format_table(["i", "C"], [[i, c] for i, c in enumerate(row) if c]), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.n < 2 or args.d < 2:
        raise InputError("need N >= 2 and D >= 2")
    b = hodge.node_bounds(args.n, args.d).to_json()
    if args.json:
        _emit(dump_json(b), args.out)
    else:
        rows = [[k, b[k]] for k in ("odd_bound", "varchenko_rhs", "varchenko_sum", "sum_matches_rhs")]
        text = format_table(["bound", "value"], rows)
        if not b["sum_matches_rhs"]:
            text += "note: the middle sum differs from the closed form\n"
        _emit(text, args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    results = run_reproduction()
    failed = [r for r in results if not r["match"] and not r["hedged"]]
    if args.json:
        text = dump_json({"rows": results, "asserted_failures": len(failed)})
    else:
        table = [[r["row"], r["computed"], r["expected"], "ok" if r["match"] else "MISMATCH",
                  "hedged" if r["hedged"] else "asserted", r["source"]] for r in results]
        text = format_table(["row", "computed", "expected", "status", "kind", "source"], table)
        matched = sum(r["match"] for r in results)
        hedged_off = sum(1 for r in results if r["hedged"] and not r["match"])
        text += (f"{matched}/{len(results)} rows match; {len(failed)} asserted mismatches; "
                 f"{hedged_off} hedged rows differ (reported only)\n")
    _emit(text, args.out)
    return EXIT_MISMATCH if failed else EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nodalhodge", description="Hodge-graded dimensions for nodal hypersurfaces.")
    parser.add_argument("--catalog-list", action="store_true", help="list catalog entries and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", metavar="PATH", help="write output to PATH")

    p = sub.add_parser("analyze", help="full report for a hypersurface")
    p.add_argument("source")
    p.add_argument("--q", metavar="SPEC", help="q values: 2, 1:3 or 0,2 (default: all)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dims", help="dimension of one graded piece")
    p.add_argument("source")
    p.add_argument("--kind", required=True, choices=DIM_KINDS)
    p.add_argument("--i", type=int)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("ccoeff", help="coefficients of (t + ... + t^(d-1))^(n+1)")
    p.add_argument("n_plus_1", type=int)
    p.add_argument("d", type=int)
    common(p)
    p.set_defaults(func=cmd_ccoeff)

    p = sub.add_parser("bounds", help="node-count bounds")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reproduce", aliases=["reproduce-paper"], help="run the pinned reference table")
    common(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.catalog_list:
            sys.stdout.write("".join(f"{name}\n" for name in CATALOG_NAMES))
            return EXIT_OK
        if not getattr(args, "func", None):
            build_parser().print_usage(sys.stderr)
            return EXIT_INPUT
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NodeVerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dump_json(exc.report.to_json()), file=sys.stderr, end="")
        return EXIT_INPUT
    except (ContainmentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
