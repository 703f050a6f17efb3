"""Command line entry point.

Exit codes: 0 pass/ok, 1 condition failed or infeasible, 2 usage or
structural error, 3 enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import admission, generators, invariants, oracle, scheduler
from .core import (
    ConditionFailed,
    NotApplicableError,
    ResourceLimitError,
    StructuralError,
    discretize_schedule,
    format_rational,
    make_demands,
    parse_rational,
    validate_schedule,
)
from .io import (
    FileFormatError,
    demands_from_doc,
    graph_from_doc,
    graph_to_doc,
    load_json,
    network_from_doc,
    network_to_doc,
    points_from_doc,
    schedule_from_doc,
    schedule_to_doc,
    set_schedule_to_doc,
)

OK, FAILED, USAGE, RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(x: Any, approx: bool = False) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        out = {str(k): _jsonable(v, approx) for k, v in x.items()}
        if approx:
            for k, v in x.items():
                if isinstance(v, Fraction):
                    out[f"{k}_approx"] = float(v)
        return out
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, approx) for v in x]
    return x


def _key(k) -> str:
    return "{" + ",".join(k) + "}" if isinstance(k, tuple) else str(k)


def _emit(doc: Any, args, out) -> None:
    doc = _jsonable(doc, getattr(args, "approx", False))
    if getattr(args, "format", "json") == "csv":
        rows = doc.get("rows") if isinstance(doc, dict) else None
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if isinstance(rows, list) and rows and isinstance(rows[0], dict):
            cols = list(rows[0])
            w.writerow(cols)
            for r in rows:
                w.writerow([r.get(c, "") for c in cols])
        elif isinstance(doc, dict):
            w.writerow(["key", "value"])
            for k, v in doc.items():
                w.writerow([k, json.dumps(v) if isinstance(v, (dict, list)) else v])
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(doc, indent=2) + "\n")


def _write(doc: dict, args, out) -> None:
    target = getattr(args, "output", None)
    if target:
        Path(target).write_text(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(json.dumps(doc, indent=2) + "\n")


def _graph(args):
    if not args.graph:
        raise UsageError("--graph is required")
    return graph_from_doc(load_json(args.graph), args.graph)


def _network(args):
    if not args.network:
        raise UsageError("--network is required")
    return network_from_doc(load_json(args.network), args.network)


def _demands(args) -> dict:
    if not args.demands:
        return {}
    return demands_from_doc(load_json(args.demands), args.demands)


def _common(p: argparse.ArgumentParser, graph=True, demands=False, horizon=False, network=False):
    if graph:
        p.add_argument("--graph")
    if network:
        p.add_argument("--network")
    if demands:
        p.add_argument("--demands")
    if horizon:
        p.add_argument("--horizon", default="1")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--approx", action="store_true", help="add non-authoritative decimal columns")
    p.add_argument("--limit", type=int, default=None, help="enumeration vertex limit")


# --------------------------------------------------------------------------


def cmd_gen(args, out) -> int:
    kind = args.kind
    if kind == "star":
        g = generators.star(args.d)
    elif kind == "cycle":
        g = generators.cycle(args.n)
    elif kind == "path":
        g = generators.path(args.n)
    elif kind == "complete":
        g = generators.complete(args.n)
    elif kind == "k4e":
        g = generators.k4_minus_e()
    elif kind == "petersen":
        g = generators.petersen()
    elif kind == "t3":
        if not args.sizes:
            raise UsageError("t3 needs --sizes")
        g = generators.theorem3_family([int(s) for s in args.sizes.split(",")])
    elif kind == "line":
        g = generators.line_graph(_network(args))
    elif kind == "udg":
        if not args.points:
            raise UsageError("udg needs --points")
        g = generators.unit_disk(points_from_doc(load_json(args.points), args.points), args.radius)
    elif kind == "random":
        g = generators.random_graph(args.n, args.p, args.seed)
    elif kind == "random-network":
        _write(network_to_doc(generators.random_network(args.n, args.p, args.seed, args.max_mult)), args, out)
        return OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _write(graph_to_doc(g), args, out)
    return OK


NETWORK_CONDITIONS = {
    "row-primary": admission.check_row_primary,
    "clique-line": admission.check_clique_line_scaled,
    "shannon": admission.check_shannon,
}


def cmd_check(args, out) -> int:
    cond = args.condition
    T = parse_rational(args.horizon)
    if cond in NETWORK_CONDITIONS:
        rep = NETWORK_CONDITIONS[cond](_network(args), _demands(args), T)
    else:
        g = _graph(args)
        tau = _demands(args)
        if cond in admission.CONDITIONS:
            rep = admission.CONDITIONS[cond](g, tau, T)
        elif cond == "row2d":
            if not args.designated:
                raise UsageError("row2d needs --designated")
            rep = admission.check_row2_designated(g, tau, T, args.designated)
        elif cond == "clique":
            rep = admission.check_clique(g, tau, T, limit=args.limit)
        elif cond.startswith("clique-scaled="):
            value = cond.split("=", 1)[1]
            if value in admission.CLIQUE_PRESETS:
                rep = admission.check_clique(g, tau, T, preset=value, limit=args.limit)
            else:
                rep = admission.check_clique(g, tau, T, scale=parse_rational(value), limit=args.limit)
        else:
            raise UsageError(f"unknown condition {cond!r}")
    rows = [{"key": _key(k), "lhs": r.lhs, "bound": r.bound, "passes": r.passes}
            for k, r in sorted(rep.rows.items(), key=lambda kv: _key(kv[0]))]
    doc = {"condition": rep.condition, "semantics": rep.semantics, "overall": rep.overall,
           "failing": sorted(_key(k) for k in rep.failing()), "rows": rows}
    _emit(doc, args, out)
    return OK if rep.overall else FAILED


def cmd_schedule(args, out) -> int:
    g = _graph(args)
    tau = _demands(args)
    T = parse_rational(args.horizon)
    if args.method == "row2d":
        if not args.designated:
            raise UsageError("row2d needs --designated")
        s = scheduler.schedule_row2_designated(g, tau, T, args.designated)
    elif args.method == "row" and args.order:
        s = scheduler.schedule_row(g, tau, T, args.order.split(","))
    else:
        s = scheduler.SCHEDULERS[args.method](g, tau, T)
    verdict = validate_schedule(g, tau, T, s)
    doc = schedule_to_doc(s)
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2) + "\n")
        _emit({"valid": verdict.ok, "output": args.output}, args, out)
    else:
        doc["valid"] = verdict.ok
        out.write(json.dumps(doc, indent=2) + "\n")
    return OK if verdict.ok else FAILED


def cmd_validate(args, out) -> int:
    g = _graph(args)
    s = schedule_from_doc(load_json(args.schedule), args.schedule)
    T = parse_rational(args.horizon) if args.horizon else s.horizon
    verdict = validate_schedule(g, _demands(args), T, s)
    _emit({"ok": verdict.ok,
           "violations": [{"kind": v.kind, "links": list(v.vertices), "detail": v.detail}
                          for v in verdict.violations]}, args, out)
    return OK if verdict.ok else FAILED


def _beta_doc(kind: str, g, limit) -> dict:
    res = oracle.BETAS[kind](g, limit)
    return {"condition": kind, "value": res.value, "vertex": res.vertex, "neighbor": res.neighbor,
            "witness": {v: res.witness[v] for v in sorted(res.witness)}}


def cmd_oracle(args, out) -> int:
    g = _graph(args)
    what = args.what
    if what == "chi-f":
        tau = _demands(args) or None
        val, ss = oracle.chi_f(g, tau, args.limit)
        frame = discretize_schedule(ss) if ss.durations else None
        _emit({"chi_f": val, "schedule": set_schedule_to_doc(ss),
               "slots": frame.slots if frame else 0}, args, out)
        return OK
    if what == "feasible":
        T = parse_rational(args.horizon)
        val, _ = oracle.chi_f(g, _demands(args), args.limit)
        ok = val <= T
        _emit({"feasible": ok, "chi_f": val, "horizon": T}, args, out)
        return OK if ok else FAILED
    if what == "t-clique":
        tau = _demands(args) or {v: Fraction(1) for v in g.vertices}
        _emit({"t_clique": oracle.t_clique(g, tau, args.limit)}, args, out)
        return OK
    if what == "beta":
        if not args.kind:
            raise UsageError("oracle beta needs row|degree|mixed|row2")
        _emit(_beta_doc(args.kind, g, args.limit), args, out)
        return OK
    if what == "imp":
        return _imp(g, args, out)
    raise UsageError(what)  # pragma: no cover


def _imp(g, args, out) -> int:
    val, tau = oracle.imp_estimate(g, args.samples, args.seed, limit=args.limit)
    _emit({"imp_lower_bound": val, "exact": False, "witness": {v: tau[v] for v in sorted(tau)}}, args, out)
    return OK


def cmd_beta(args, out) -> int:
    _emit(_beta_doc(args.kind, _graph(args), args.limit), args, out)
    return OK


def cmd_imp(args, out) -> int:
    return _imp(_graph(args), args, out)


def cmd_invariant(args, out) -> int:
    what = args.what
    if what == "chromatic-index":
        _emit({"chromatic_index_bound": invariants.chromatic_index_bound(_network(args))}, args, out)
        return OK
    if what == "line-cliques":
        cl = invariants.line_graph_cliques(_network(args))
        _emit({"cliques": [sorted(c) for c in cl]}, args, out)
        return OK
    g = _graph(args)
    if what == "sigma":
        s, w = invariants.sigma(g, args.limit)
        _emit({"sigma": s, "center": w.center, "leaves": list(w.leaves)}, args, out)
    elif what == "alpha":
        _emit({"alpha": invariants.alpha(g, limit=args.limit)}, args, out)
    elif what == "degree":
        _emit({"max_degree": invariants.max_degree(g)}, args, out)
    elif what == "cliques":
        pos = {v: i for i, v in enumerate(g.vertices)}
        _emit({"cliques": [sorted(c, key=pos.__getitem__) for c in invariants.maximal_cliques(g, args.limit)]},
              args, out)
    elif what == "beta-mixed-predicted":
        p = invariants.beta_mixed_predicted(g)
        _emit({"beta_mixed_predicted": p if p is not None else "not-applicable"}, args, out)
    elif what == "beta-row2-predicted":
        _emit({"beta_row2_predicted": invariants.beta_row2_predicted(g, args.limit)}, args, out)
    elif what == "b-bound":
        _emit({"b_bound": invariants.b_bound(g, make_demands(g, _demands(args)))}, args, out)
    return OK


REPORT_COLUMNS = ["name", "n", "m", "sigma", "max_degree", "beta_row", "beta_degree", "beta_mixed",
                  "beta_row2", "imp_lower_bound"]


def report_row(name: str, g, samples: int = 20, seed: int = 0, limit: int | None = None) -> dict:
    """One reproduction-table row for a conflict graph."""
    row2 = (oracle.beta_row2(g, limit).value if invariants.row2_eligible(g) else "n/a")
    return {
        "name": name,
        "n": len(g),
        "m": len(g.edges),
        "sigma": invariants.sigma_value(g, limit),
        "max_degree": invariants.max_degree(g),
        "beta_row": oracle.beta_row(g, limit).value,
        "beta_degree": oracle.beta_degree(g, limit).value,
        "beta_mixed": oracle.beta_mixed(g, limit).value,
        "beta_row2": row2,
        "imp_lower_bound": oracle.imp_estimate(g, samples, seed, limit=limit)[0],
    }


def _report_job(job):
    return report_row(*job)


def _load_batch(path) -> list[tuple[str, Any]]:
    doc = load_json(path)
    entries = doc.get("graphs") if isinstance(doc, dict) else doc
    if not isinstance(entries, list):
        raise FileFormatError(path, "graphs", "expected a list")
    base = Path(path).parent
    out = []
    for i, e in enumerate(entries):
        if isinstance(e, str):
            p = base / e
            out.append((e, graph_from_doc(load_json(p), p)))
        elif isinstance(e, dict) and "gen" in e:
            out.append((e.get("name", f"{e['gen']}#{i}"), _gen_entry(e, path, i)))
        elif isinstance(e, dict) and "vertices" in e:
            out.append((e.get("name", f"graph#{i}"), graph_from_doc(e, f"{path}[{i}]")))
        else:
            raise FileFormatError(path, f"graphs[{i}]", "expected a path, a graph or a {'gen': ...} entry")
    return out


def _gen_entry(e: dict, path, i: int):
    kind = e["gen"]
    try:
        if kind == "star":
            return generators.star(int(e["d"]))
        if kind == "cycle":
            return generators.cycle(int(e["n"]))
        if kind == "complete":
            return generators.complete(int(e["n"]))
        if kind == "k4e":
            return generators.k4_minus_e()
        if kind == "petersen":
            return generators.petersen()
        if kind == "t3":
            return generators.theorem3_family([int(s) for s in e["sizes"]])
        if kind == "random":
            return generators.random_graph(int(e["n"]), e["p"], int(e["seed"]))
        if kind == "line":
            return generators.line_graph(network_from_doc(e["network"], f"{path}[{i}]"))
    except KeyError as exc:
        raise FileFormatError(path, f"graphs[{i}].{exc.args[0]}", "missing") from None
    raise FileFormatError(path, f"graphs[{i}].gen", f"unknown generator {kind!r}")


def cmd_report(args, out) -> int:
    if not args.config and not args.graphs:
        raise UsageError("report needs --config or --graphs")
    batch = _load_batch(args.config) if args.config else [
        (p, graph_from_doc(load_json(p), p)) for p in args.graphs]
    jobs = [(name, g, args.samples, args.seed, args.limit) for name, g in batch]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_report_job, jobs))
    else:
        rows = [_report_job(j) for j in jobs]
    _emit({"columns": REPORT_COLUMNS, "rows": rows}, args, out)
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="linkadmit", description="Admission control conditions for conflict graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", help="write a graph file")
    g.add_argument("kind", choices=["star", "cycle", "path", "complete", "k4e", "petersen", "t3", "line",
                                    "udg", "random", "random-network"])
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--n", type=int, default=5)
    g.add_argument("--p", default="1/2")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-mult", type=int, default=1)
    g.add_argument("--sizes")
    g.add_argument("--network")
    g.add_argument("--points")
    g.add_argument("--radius", default="1")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run an admission test")
    c.add_argument("--condition", required=True)
    c.add_argument("--designated")
    _common(c, demands=True, horizon=True, network=True)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("schedule", help="build a schedule from a passing test")
    s.add_argument("--method", choices=["row", "degree", "mixed", "row2", "row2d"], required=True)
    s.add_argument("--designated")
    s.add_argument("--order", help="comma separated vertex order for --method row")
    s.add_argument("-o", "--output")
    _common(s, demands=True, horizon=True)
    s.set_defaults(func=cmd_schedule)

    v = sub.add_parser("validate", help="validate a schedule file")
    v.add_argument("--schedule", required=True)
    _common(v, demands=True)
    v.add_argument("--horizon")
    v.set_defaults(func=cmd_validate)

    o = sub.add_parser("oracle", help="exact LP computations")
    o.add_argument("what", choices=["chi-f", "feasible", "t-clique", "beta", "imp"])
    o.add_argument("kind", nargs="?", choices=sorted(oracle.BETAS))
    o.add_argument("--samples", type=int, default=50)
    o.add_argument("--seed", type=int, default=0)
    _common(o, demands=True, horizon=True)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("beta", help="exact worst-case ratio of a condition")
    b.add_argument("kind", choices=sorted(oracle.BETAS))
    _common(b)
    b.set_defaults(func=cmd_beta)

    im = sub.add_parser("imp", help="sampled lower bound on the imperfection ratio")
    im.add_argument("--samples", type=int, default=50)
    im.add_argument("--seed", type=int, default=0)
    _common(im)
    im.set_defaults(func=cmd_imp)

    i = sub.add_parser("invariant", help="graph invariants")
    i.add_argument("what", choices=["sigma", "alpha", "degree", "cliques", "line-cliques", "chromatic-index",
                                    "beta-mixed-predicted", "beta-row2-predicted", "b-bound"])
    _common(i, demands=True, network=True)
    i.set_defaults(func=cmd_invariant)

    r = sub.add_parser("report", help="reproduction table for a batch of graphs")
    r.add_argument("--config", help="JSON batch: {\"graphs\": [path | graph | {\"gen\": ...}]}")
    r.add_argument("--graphs", nargs="*")
    r.add_argument("--samples", type=int, default=20)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--jobs", type=int, default=1)
    _common(r, graph=False)
    r.set_defaults(format="csv")
    r.set_defaults(func=cmd_report)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        if getattr(args, "limit", None) is None:
            args.limit = invariants.default_limit()
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return USAGE
    except FileFormatError as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except ConditionFailed as exc:
        err.write(f"refused: {exc}\n")
        return FAILED
    except (StructuralError, NotApplicableError) as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except ResourceLimitError as exc:
        err.write(f"resource limit: {exc}\n")
        return RESOURCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
