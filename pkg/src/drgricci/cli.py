"""Command-line front end: ``analyze``, ``bounds``, ``verify`` and ``catalog``.

Exit codes: 0 success, 1 input error, 2 validation findings (a negative but
expected result such as a non-distance-regular input or an invalid prefix),
3 a violated estimate or failed construction, which indicates a bug.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import amply_bounds, best_bound, scak_bounds, scan_cells
from .catalog import DISTANCE_REGULAR, NAMES, load_edge_list, parse_name, save_edge_list
from .errors import DomainError, InputError, TheoremContradiction
from .graph import girth
from .matching import constructive_plan
from .regularity import (ArrayPrefix, IntersectionArray, StructureWitness, amply_parameters,
                         intersection_array, scak_parameters, validate_intersection_array)
from .transport import lazy_measure, scale_hypotheses, verify_jump_estimate, verify_scale_estimate, wasserstein

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_FINDINGS, EXIT_CONTRADICTION = 0, 1, 2, 3


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (IntersectionArray, ArrayPrefix)):
        return {"b": list(obj.b), "c": list(obj.c), "text": str(obj)}
    if isinstance(obj, StructureWitness):
        return {"kind": obj.kind, "x": obj.x, "y": obj.y, "h": obj.h, "count": obj.count,
                "expected": obj.expected, "text": str(obj)}
    return obj


def _bound_row(res) -> dict:
    row = res.as_row()
    row["params"] = {k: v for k, v in res.params.items() if k not in ("q", "p")}
    return row


def resolve_input(spec: str):
    """A catalog name such as ``hypercube:4`` or a path to an edge-list file."""
    if spec.partition(":")[0] in NAMES:
        ent = parse_name(spec)
        return ent.label, ent.build(), ent
    path = Path(spec)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {spec!r}: not a catalog name ({', '.join(NAMES)}) "
                         f"and not a readable file ({exc.strerror})") from None
    return str(path), load_edge_list(text), None


# -- analyze -----------------------------------------------------------------


def analyze(spec: str) -> tuple[dict, int]:
    label, g, _ = resolve_input(spec)
    structure = {"vertices": g.n, "edges": g.edge_count, "connected": g.is_connected(),
                 "diameter": g.diameter(), "girth": girth(g)}
    try:
        arr = intersection_array(g)
    except DomainError as exc:
        arr = None
        structure["distance_regular"] = False
        structure["witness"] = str(exc)
    if arr is not None:
        dr = not isinstance(arr, StructureWitness)
        structure["distance_regular"] = dr
        structure["intersection_array" if dr else "witness"] = arr
    classic = []
    if structure["connected"] and g.n >= 2:
        amp = amply_parameters(g)
        if isinstance(amp, StructureWitness):
            structure["amply_regular"] = {"witness": amp}
        else:
            structure["amply_regular"] = {"v": amp.v, "k": amp.k, "lambda": amp.lam, "mu": amp.mu}
            classic += amply_bounds(amp.k, amp.lam, amp.mu, structure["diameter"])
        try:
            sc = scak_parameters(g)
        except DomainError as exc:
            sc = str(exc)
        if isinstance(sc, (StructureWitness, str)):
            structure["scak"] = {"witness": sc}
        else:
            structure["scak"] = {"s": sc.s, "c": sc.c, "a": sc.a, "k": sc.k, "delta": sc.delta}
            classic += scak_bounds(sc.s, sc.c, sc.a, sc.delta, sc.k)
    report = {"schema_version": SCHEMA_VERSION, "command": "analyze", "input": label, "structure": structure}
    if structure.get("distance_regular"):
        scan = best_bound(g)
        report["bounds"] = [_bound_row(r) for r in scan.table]
        report["best"] = _bound_row(scan.best) if scan.best else None
        report["status"] = scan.status
        report["tight"] = scan.tight
    else:
        report["bounds"] = []
        report["best"] = None
        report["status"] = "not distance-regular"
        report["tight"] = None
    report["classic"] = [_bound_row(r) for r in classic]
    return report, EXIT_OK if structure.get("distance_regular") else EXIT_FINDINGS


# -- bounds ------------------------------------------------------------------


def _int_list(text):
    if text is None:
        return None
    items = [t for t in text.replace(",", " ").split() if t]
    try:
        return [None if t in ("?", "_") else int(t) for t in items]
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None


def bounds_report(array_text=None, b=None, c=None, q=None, p=None, full=False) -> tuple[dict, int]:
    if array_text is not None:
        pre = ArrayPrefix.parse(array_text)
        b, c = list(pre.b), list(pre.c)
    if not b or c is None:
        raise InputError("give an array like '{5,4,1; 1,1,4}' or both --b and --c")
    if full:
        if None in b or None in c:
            raise InputError("a full array cannot contain unknown entries")
        arr = IntersectionArray(tuple(b), tuple(c))
    else:
        arr = ArrayPrefix(tuple(b), tuple(c))
    report = {"schema_version": SCHEMA_VERSION, "command": "bounds", "input": arr}
    violations = validate_intersection_array(arr)
    if violations:
        report["violations"] = [{"rule": v.rule, "index": v.index, "message": v.message} for v in violations]
        report["bounds"] = []
        report["best"] = None
        return report, EXIT_FINDINGS
    table = [r for r in scan_cells(arr)
             if (q is None or r.params["q"] == q) and (p is None or r.params.get("p", p) == p)]
    live = [r for r in table if r.applicable]
    report["bounds"] = [_bound_row(r) for r in table]
    report["best"] = _bound_row(min(live, key=lambda r: r.value)) if live else None
    report["status"] = "ok" if live else "no applicable bound"
    return report, EXIT_OK


# -- verify ------------------------------------------------------------------


def _sources(g, entry, sample):
    if sample and entry is not None and entry.vertex_transitive:
        return [0], "orbit representatives (x = 0; vertex-transitive)"
    note = "exhaustive"
    if sample:
        note += " (sampling needs a vertex-transitive catalog input)"
    return list(range(g.n)), note


def _jump_rows(g, sources):
    rows = []
    for x in sources:
        for y in range(g.n):
            k = g.degree(y)
            for eps in sorted({Fraction(0), Fraction(1, k + 1), Fraction(1, 2)}):
                r = verify_jump_estimate(g, x, y, eps)
                rows.append({"x": x, "y": y, "p": r.p, "eps": r.eps, "bound": r.bound,
                             "exact": r.exact, "holds": r.holds})
    return rows


def _scale_rows(g, arr, sources):
    rows = []
    for x in sources:
        for y in range(g.n):
            if y == x:
                continue
            r = verify_scale_estimate(g, x, y, arr)
            rows.append({"x": x, "y": y, "q": r.q, "applicable": r.applicable, "M": r.gain,
                         "bound": r.bound, "exact": r.exact, "holds": r.holds})
    return rows


def _plan_rows(g, arr, sources):
    rows = []
    eps = Fraction(1, arr.k + 1)
    for x in sources:
        row_x = g.distance_row(x)
        for y in range(g.n):
            q = int(row_x[y])
            if y == x or not all(scale_hypotheses(arr, q).values()):
                continue
            plan = constructive_plan(g, x, y, arr=arr)
            exact, _ = wasserstein(g, lazy_measure(g, x, eps), lazy_measure(g, y, eps))
            holds = exact <= plan.cost <= plan.bound and plan.hits >= plan.gain
            rows.append({"x": x, "y": y, "q": q, "bound": plan.bound, "exact": exact,
                         "plan_cost": plan.cost, "hits": plan.hits, "M": plan.gain, "holds": holds})
    return rows


def verify(spec: str, scope: str = "all", sample: bool = False) -> tuple[dict, int]:
    label, g, entry = resolve_input(spec)
    sources, mode = _sources(g, entry, sample)
    report = {"schema_version": SCHEMA_VERSION, "command": "verify", "input": label,
              "scope": scope, "mode": mode}
    scopes = ("jump", "scale", "plans") if scope == "all" else (scope,)
    if "jump" in scopes:
        report["jump"] = _jump_rows(g, sources)
    if "scale" in scopes or "plans" in scopes:
        arr = intersection_array(g)
        if isinstance(arr, StructureWitness):
            report["witness"] = arr
            report["error"] = "scale and plan checks need a distance-regular graph"
            return report, EXIT_FINDINGS
        report["intersection_array"] = arr
        if "scale" in scopes:
            report["scale"] = _scale_rows(g, arr, sources)
        if "plans" in scopes:
            report["plans"] = _plan_rows(g, arr, sources)
    failures = [(name, row) for name in ("jump", "scale", "plans")
                for row in report.get(name, ()) if row["holds"] is False]
    checked = sum(1 for name in ("jump", "scale", "plans") for row in report.get(name, ())
                  if row.get("holds") is not None)
    report["summary"] = {"checked": checked, "violations": len(failures)}
    if failures:
        report["witness"] = {"suite": failures[0][0], **failures[0][1]}
        return report, EXIT_CONTRADICTION
    return report, EXIT_OK


# -- catalog -----------------------------------------------------------------


def catalog_report(name=None) -> tuple[dict, int]:
    if name is None:
        rows = [{"name": e.label, "expected_array": e.expected_array} for e in DISTANCE_REGULAR]
        return {"schema_version": SCHEMA_VERSION, "command": "catalog", "families": list(NAMES),
                "distance_regular": rows}, EXIT_OK
    ent = parse_name(name)
    g = ent.build()
    return {"schema_version": SCHEMA_VERSION, "command": "catalog", "input": ent.label,
            "expected_array": ent.expected_array, "edge_list": save_edge_list(g)}, EXIT_OK


# -- rendering ---------------------------------------------------------------


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return str(v)


def _table_text(rows) -> list[str]:
    out = [f"{'bound':<12} {'q':>3} {'p':>3} {'value':>6}  notes"]
    for r in rows:
        extra = "; ".join(r["notes"]) if r["applicable"] else "fails " + ", ".join(r["failed"])
        out.append(f"{r['bound']:<12} {_fmt(r['q']):>3} {_fmt(r['p']):>3} {_fmt(r['value']):>6}  {extra}")
    return out


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = [f"{cmd}: {report['input']}"] if "input" in report else [cmd]
    if cmd == "analyze":
        s = report["structure"]
        lines.append(f"vertices {s['vertices']}, edges {s['edges']}, diameter {_fmt(s['diameter'])}, girth {_fmt(s['girth'])}")
        if s.get("distance_regular"):
            lines.append(f"distance-regular: yes, intersection array {s['intersection_array']}")
        else:
            lines.append(f"distance-regular: no ({s.get('witness')})")
        if report["bounds"]:
            lines += _table_text([r for r in report["bounds"] if r["applicable"]])
        best = report["best"]
        if best:
            lines.append(f"best bound {best['value']} ({best['bound']}, q={best['q']}, p={best['p']}); "
                         f"tight: {'yes' if report['tight'] else 'no'}")
        else:
            lines.append(f"best bound: none ({report['status']})")
        if report["classic"]:
            lines.append("classic bounds:")
            lines += _table_text(report["classic"])
    elif cmd == "bounds":
        if report.get("violations"):
            lines.append("invalid array:")
            lines += [f"  [{v['rule']}] {v['message']}" for v in report["violations"]]
        else:
            lines += _table_text(report["bounds"])
            best = report["best"]
            lines.append(f"best bound {best['value']} ({best['bound']}, q={best['q']}, p={best['p']})"
                         if best else "best bound: none")
    elif cmd == "verify":
        lines.append(f"mode: {report['mode']}")
        if "error" in report:
            lines.append(f"error: {report['error']}: {report['witness']}")
        for name in ("jump", "scale", "plans"):
            if name in report:
                rows = report[name]
                live = [r for r in rows if r["holds"] is not None]
                bad = [r for r in live if not r["holds"]]
                lines.append(f"{name}: {len(rows)} rows, {len(live)} applicable, {len(bad)} violations")
        if "witness" in report and "error" not in report:
            lines.append(f"VIOLATION: {_jsonable(report['witness'])}")
    elif cmd == "catalog":
        if "edge_list" in report:
            return report["edge_list"].rstrip("\n")
        lines.append("families: " + ", ".join(report["families"]))
        for r in report["distance_regular"]:
            lines.append(f"  {r['name']:<36} {r['expected_array']}")
    return "\n".join(lines)


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    rows = report.get("bounds", [])
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bound", "q", "p", "value", "applicable", "failed", "notes"])
    for r in rows:
        w.writerow([r["bound"], _fmt(r["q"]), _fmt(r["p"]), _fmt(r["value"]), r["applicable"],
                    ";".join(r["failed"]), ";".join(r["notes"])])
    return buf.getvalue().rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drgricci", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    out = fmt.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="emit a JSON report")
    out.add_argument("--csv", action="store_true", help="emit the bound table as CSV")
    fmt.add_argument("--no-timestamp", action="store_true", help="omit the generation time from JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[fmt], help="structure detection and bound scan for a graph")
    p.add_argument("input", help="catalog name (e.g. wells, hypercube:4) or edge-list path")

    p = sub.add_parser("bounds", parents=[fmt], help="bounds from an intersection array prefix")
    p.add_argument("array", nargs="?", help="array text such as '{22,21,20,3; 1,2,3,20}'")
    p.add_argument("--b", help="b_0, b_1, ... (comma separated, ? for unknown)")
    p.add_argument("--c", help="c_1, c_2, ... (comma separated, ? for unknown)")
    p.add_argument("--q", type=int, help="restrict to this q")
    p.add_argument("--p", type=int, help="restrict to this p")
    p.add_argument("--full", action="store_true", help="treat the lists as a complete array")

    p = sub.add_parser("verify", parents=[fmt], help="check the Wasserstein estimates and plans")
    p.add_argument("input", help="catalog name or edge-list path")
    p.add_argument("--scope", choices=("jump", "scale", "plans", "all"), default="all")
    p.add_argument("--sample", action="store_true",
                   help="use one source vertex for vertex-transitive catalog graphs")

    p = sub.add_parser("catalog", parents=[fmt], help="list catalog graphs or print one as an edge list")
    p.add_argument("name", nargs="?", help="catalog name to export")
    return parser


def run(argv=None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        report, code = analyze(args.input)
    elif args.command == "bounds":
        report, code = bounds_report(args.array, _int_list(args.b), _int_list(args.c),
                                     args.q, args.p, args.full)
    elif args.command == "verify":
        report, code = verify(args.input, args.scope, args.sample)
    else:
        report, code = catalog_report(args.name)
    if args.json:
        if not args.no_timestamp:
            report["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return json.dumps(_jsonable(report), indent=2, sort_keys=True), code
    if args.csv:
        return render_csv(report), code
    return render_text(report), code


def main(argv=None) -> int:
    try:
        text, code = run(argv)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremContradiction as exc:
        print(f"theorem contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except DomainError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
