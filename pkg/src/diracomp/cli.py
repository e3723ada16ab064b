"""Command-line front end.

Subcommands:
  solve      one potential -> solution.json + wave.csv
  compare    two potentials -> report.json + curves/*.csv + potentials.csv
  reproduce  bundled reference cases -> summary table, nonzero exit on miss
  sweep      parameter grid -> one deterministic CSV, worker pool
  catalog    list potential families and reference case ids

Configs are single JSON documents (--config PATH or stdin).  Outputs are
deterministic: floats are serialized at 9 significant digits, so the
same config and tolerances give byte-identical files.

Exit codes: 0 success, 1 usage or config error, 2 no bound state,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import comparison as _cmp
from .cases import CASE_IDS, case_summary, run_reference
from .comparison import (ComparisonCase, ComparisonReport, check_corollary,
                         check_theorem, verify_identity)
from .errors import (ConfigError, DiracompError, NoBoundStateError,
                     QuadratureError, SolverError,
                     SupercriticalCouplingError, UnsupportedPotentialError)
from .model import (FAMILIES, AngularSector, OneDim, Problem, make_potential)
from .reporting import (fmt9, write_csv, write_curve_csv, write_json,
                        write_potentials_csv, write_wave_csv)
from .solver import ShootingConfig, solve_ground

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_BOUND_STATE = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for
    # "no bound state", so remap
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(path: str | None) -> dict:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    return doc


def _parse_geometry(doc) -> OneDim | AngularSector:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ConfigError('geometry must be {"kind": "one_dim"} or '
                          '{"kind": "radial", "d": ..., "j": ..., "tau": ...}')
    kind = doc["kind"]
    if kind == "one_dim":
        return OneDim()
    if kind == "radial":
        try:
            return AngularSector.from_j(int(doc["d"]), float(doc["j"]),
                                        int(doc["tau"]))
        except KeyError as exc:
            raise ConfigError(f"radial geometry: missing {exc.args[0]}") \
                from None
    raise ConfigError(f"unknown geometry kind: {kind!r}")


def _parse_potential(doc):
    if not isinstance(doc, dict) or "family" not in doc:
        raise ConfigError('potential must be {"family": ..., "params": {...}}')
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("potential params must be an object")
    return make_potential(doc["family"], **params)


def _parse_mass(doc) -> float:
    mass = float(doc.get("mass", 1.0))
    if mass <= 0.0:
        raise ConfigError("mass must be positive")
    return mass


def _require(doc: dict, key: str):
    if key not in doc:
        raise ConfigError(f"config is missing the {key!r} section")
    return doc[key]


def _solver_config(args) -> ShootingConfig | None:
    overrides = {}
    if getattr(args, "tol_energy", None) is not None:
        overrides["energy_tol"] = float(args.tol_energy)
    if getattr(args, "tol_int", None) is not None:
        overrides["ode_rtol"] = float(args.tol_int)
    return ShootingConfig(**overrides) if overrides else None


def _theorem_list(arg, one_dim: bool) -> tuple[int, ...]:
    full = _cmp.ONE_DIM_THEOREMS if one_dim else _cmp.RADIAL_THEOREMS
    if arg is None or arg == "all":
        return tuple(full)
    picks = arg if isinstance(arg, (list, tuple)) else [arg]
    out = []
    for item in picks:
        try:
            n = int(item)
        except (TypeError, ValueError):
            raise ConfigError(f"theorem selector must be an integer or "
                              f"'all', got {item!r}") from None
        if n not in full:
            side = "one-dimensional" if one_dim else "radial"
            raise ConfigError(f"theorem {n} does not apply to {side} "
                              f"problems (valid: "
                              f"{', '.join(map(str, full))})")
        if n not in out:
            out.append(n)
    return tuple(out)


# ---------------------------------------------------------------- solve

def cmd_solve(args) -> int:
    doc = _load_config(args.config)
    problem = Problem(_parse_mass(doc),
                      _parse_geometry(_require(doc, "geometry")),
                      _parse_potential(_require(doc, "potential")))
    sol = solve_ground(problem, _solver_config(args))
    out = args.out
    write_json(os.path.join(out, "solution.json"), sol.header_dict())
    write_wave_csv(os.path.join(out, "wave.csv"), sol)
    print(f"energy = {fmt9(sol.energy)}  nodes = {sol.nodes}  "
          f"class = {sol.classification.kind}")
    print(f"wrote {out}/solution.json, {out}/wave.csv")
    return EXIT_OK


# ---------------------------------------------------------------- compare

def _build_case(doc, base_override: str | None) -> ComparisonCase:
    base = base_override or doc.get("base", "auto")
    return ComparisonCase(
        mass=_parse_mass(doc),
        geometry=_parse_geometry(_require(doc, "geometry")),
        potential_a=_parse_potential(_require(doc, "potential_a")),
        potential_b=_parse_potential(_require(doc, "potential_b")),
        base=base)


def cmd_compare(args) -> int:
    doc = _load_config(args.config)
    case = _build_case(doc, args.base)
    config = _solver_config(args)
    selector = args.theorem if args.theorem is not None \
        else doc.get("theorem", doc.get("theorems"))
    which = _theorem_list(selector, case.one_dim)

    ctx = _cmp._CaseContext(case, config)
    sol_a = ctx.solution("a")
    sol_b = ctx.solution("b")
    verdicts = tuple(check_theorem(case, t, _ctx=ctx) for t in which)
    cors = tuple(check_corollary(case, t, _ctx=ctx) for t in which)
    resid = verify_identity(case, sol_a, sol_b)
    report = ComparisonReport(case, ctx.crossings(), verdicts, cors,
                              (sol_a.energy, sol_b.energy), resid,
                              sol_a, sol_b)

    out = args.out
    write_json(os.path.join(out, "report.json"), report.as_dict())

    kinds = list(ctx._curves)
    for kind in kinds:
        write_curve_csv(os.path.join(out, "curves", f"{kind.value}.csv"),
                        ctx._curves[kind].curve)

    hi = min(sol_a.r_max, sol_b.r_max)
    r = np.linspace(0.0, hi, 2001)[1:]
    extra = {}
    for kind in kinds:
        f = _cmp._integrand(ctx, kind)
        extra[f"w_{kind.value}"] = f(r)
    write_potentials_csv(os.path.join(out, "potentials.csv"), case, r, extra)

    for v in verdicts:
        print(f"theorem {v.theorem}: applicable={v.applicable} "
              f"condition_holds={v.condition_holds} consistent={v.consistent}")
    for c in cors:
        print(f"corollary {c.theorem}: applicable={c.applicable} "
              f"condition_holds={c.condition_holds} consistent={c.consistent}")
    print(f"E_a = {fmt9(sol_a.energy)}  E_b = {fmt9(sol_b.energy)}  "
          f"identity residual = {fmt9(resid)}")
    print(f"wrote {out}/report.json, {out}/curves/, {out}/potentials.csv")
    return EXIT_OK


# ---------------------------------------------------------------- reproduce

def cmd_reproduce(args) -> int:
    ids = tuple(CASE_IDS) if args.case_id == "all" else (args.case_id,)
    for cid in ids:
        if cid not in CASE_IDS:
            print(f"unknown case id: {cid!r} "
                  f"(known: {', '.join(CASE_IDS)}, all)", file=sys.stderr)
            return EXIT_USAGE
    config = _solver_config(args)
    all_ok = True
    for cid in ids:
        outcome = run_reference(cid, config)
        all_ok &= outcome.all_ok
        case_dir = os.path.join(args.out, cid)
        rows = [(r.name, r.expected, r.computed, r.diff, r.tol,
                 "pass" if r.ok else "FAIL") for r in outcome.rows]
        write_csv(os.path.join(case_dir, "summary.csv"),
                  ("value", "expected", "computed", "abs_diff", "tol",
                   "status"), rows)
        _write_summary_md(os.path.join(case_dir, "summary.md"), outcome)
        if outcome.solution is not None:
            write_json(os.path.join(case_dir, "solution.json"),
                       outcome.solution.header_dict())
            write_wave_csv(os.path.join(case_dir, "wave.csv"),
                           outcome.solution)
        if outcome.report is not None:
            write_json(os.path.join(case_dir, "report.json"),
                       outcome.report.as_dict())
        status = "PASS" if outcome.all_ok else "FAIL"
        print(f"{cid:<6} {status}  ({outcome.title})")
        for r in outcome.rows:
            mark = "ok  " if r.ok else "MISS"
            print(f"    {mark} {r.name:<16} expected {fmt9(r.expected):<15}"
                  f" got {fmt9(r.computed):<15} |diff| {fmt9(r.diff)}")
    return EXIT_OK if all_ok else EXIT_NUMERICAL


def _write_summary_md(path: str, outcome) -> None:
    lines = [f"# {outcome.case_id}: {outcome.title}", "",
             "| value | expected | computed | abs diff | tol | status |",
             "| --- | --- | --- | --- | --- | --- |"]
    for r in outcome.rows:
        status = "pass" if r.ok else "**FAIL**"
        lines.append(f"| {r.name} | {fmt9(r.expected)} | {fmt9(r.computed)}"
                     f" | {fmt9(r.diff)} | {fmt9(r.tol)} | {status} |")
    lines.append("")
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))


# ---------------------------------------------------------------- sweep

def _set_path(doc: dict, path: str, value) -> None:
    keys = path.split(".")
    node = doc
    for k in keys[:-1]:
        if k not in node or not isinstance(node[k], dict):
            node[k] = {}
        node = node[k]
    node[keys[-1]] = value


def _sweep_values(spec: dict) -> list[float]:
    if "values" in spec:
        return [float(v) for v in spec["values"]]
    try:
        start, stop = float(spec["start"]), float(spec["stop"])
        count = int(spec["count"])
    except KeyError as exc:
        raise ConfigError(
            f"sweep parameter needs 'values' or start/stop/count "
            f"(missing {exc.args[0]})") from None
    if count < 0:
        raise ConfigError("sweep count must be >= 0")
    return [float(v) for v in np.linspace(start, stop, count)]


def _sweep_point(task):
    """Worker: one grid point.  Returns (index, row dict)."""
    idx, mode, template, names, values, theorems = task
    doc = json.loads(template)
    for name, value in zip(names, values):
        _set_path(doc, name, value)
    row = {n: v for n, v in zip(names, values)}
    try:
        if mode == "solve":
            problem = Problem(_parse_mass(doc),
                              _parse_geometry(_require(doc, "geometry")),
                              _parse_potential(_require(doc, "potential")))
            sol = solve_ground(problem)
            row.update(E=sol.energy, nodes1=sol.nodes[0], nodes2=sol.nodes[1])
        else:
            case = _build_case(doc, None)
            ctx = _cmp._CaseContext(case, None)
            row.update(E_a=ctx.solution("a").energy,
                       E_b=ctx.solution("b").energy)
            for t in theorems:
                v = check_theorem(case, t, _ctx=ctx)
                row[f"thm{t}_holds"] = v.condition_holds
                row[f"thm{t}_consistent"] = v.consistent
        row["status"] = "ok"
    except DiracompError as exc:
        row["status"] = f"error: {exc}"
    return idx, row


def cmd_sweep(args) -> int:
    doc = _load_config(args.config)
    template = doc.get("template")
    if not isinstance(template, dict):
        raise ConfigError("sweep config needs a 'template' object")
    mode = doc.get("mode", "compare" if "potential_a" in template
                   else "solve")
    if mode not in ("solve", "compare"):
        raise ConfigError("sweep mode must be 'solve' or 'compare'")
    params = doc.get("parameters")
    if not isinstance(params, list) or not params:
        raise ConfigError("sweep config needs a nonempty 'parameters' list")
    if len(params) > 2:
        raise ConfigError("at most two swept parameters are supported")
    names = []
    axes = []
    for spec in params:
        if "path" not in spec:
            raise ConfigError("each sweep parameter needs a 'path'")
        names.append(str(spec["path"]))
        axes.append(_sweep_values(spec))

    one_dim = template.get("geometry", {}).get("kind") == "one_dim"
    theorems = _theorem_list(args.theorem, one_dim) if mode == "compare" \
        else ()

    points = [[v] for v in axes[0]]
    if len(axes) == 2:
        points = [[v0, v1] for v0 in axes[0] for v1 in axes[1]]

    header = list(names)
    if mode == "solve":
        header += ["E", "nodes1", "nodes2"]
    else:
        header += ["E_a", "E_b"]
        for t in theorems:
            header += [f"thm{t}_holds", f"thm{t}_consistent"]
    header.append("status")

    tasks = [(i, mode, json.dumps(template), names, vals, theorems)
             for i, vals in enumerate(points)]
    rows: list[dict] = [{} for _ in points]
    if tasks:
        workers = min(len(tasks), args.jobs or os.cpu_count() or 1)
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for idx, row in pool.map(_sweep_point, tasks):
                    rows[idx] = row
        else:
            for task in tasks:
                idx, row = _sweep_point(task)
                rows[idx] = row
    for row in rows:
        if row.get("status", "ok") != "ok":
            print(f"point failed: {row['status']}", file=sys.stderr)

    path = os.path.join(args.out, "sweep.csv")
    write_csv(path, header, ([row.get(h, "") for h in header]
                             for row in rows))
    print(f"wrote {path} ({len(rows)} points)")
    return EXIT_OK


# ---------------------------------------------------------------- catalog

def cmd_catalog(args) -> int:
    print("potential families:")
    for info in FAMILIES.values():
        params = ", ".join(info.param_names) if info.param_names \
            else "table_r, table_v"
        print(f"  {info.name:<16} ({params})")
        print(f"      {info.description}")
    print()
    print("reference cases (for 'reproduce'):")
    for cid, title in case_summary():
        print(f"  {cid:<7} {title}")
    if args.out:
        doc = {
            "families": [{"name": i.name,
                          "params": list(i.param_names),
                          "class": i.kind,
                          "form": i.description} for i in FAMILIES.values()],
            "reference_cases": [{"id": c, "title": t}
                                for c, t in case_summary()],
        }
        write_json(os.path.join(args.out, "catalog.json"), doc)
        print(f"\nwrote {args.out}/catalog.json")
    return EXIT_OK


# ---------------------------------------------------------------- main

def _add_common(sub, config_required: bool = True) -> None:
    if config_required:
        sub.add_argument("--config", default=None,
                         help="JSON config path ('-' or omit for stdin)")
    sub.add_argument("--out", default="out", help="output directory")
    sub.add_argument("--tol-energy", type=float, default=None,
                     help="eigenvalue tolerance override")
    sub.add_argument("--tol-int", type=float, default=None,
                     help="integration tolerance override")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diracomp",
                description="Bound states of the radial Dirac problem and "
                            "numerical checks of eigenvalue comparison "
                            "theorems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one potential for its nodeless "
                                     "bound state")
    _add_common(s)
    s.set_defaults(fn=cmd_solve)

    c = sub.add_parser("compare", help="run comparison checks on a pair")
    _add_common(c)
    c.add_argument("--theorem", default=None,
                   help="theorem number or 'all' (default: config value, "
                        "else all)")
    c.add_argument("--base", choices=("a", "b"), default=None,
                   help="override the base-side choice")
    c.set_defaults(fn=cmd_compare)

    r = sub.add_parser("reproduce", help="run bundled reference cases")
    r.add_argument("case_id", help=f"one of {', '.join(CASE_IDS)}, or 'all'")
    _add_common(r, config_required=False)
    r.set_defaults(fn=cmd_reproduce)

    w = sub.add_parser("sweep", help="solve or compare over a parameter grid")
    _add_common(w)
    w.add_argument("--theorem", default="all", help="theorem number or 'all'")
    w.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: cpu count)")
    w.set_defaults(fn=cmd_sweep)

    g = sub.add_parser("catalog", help="list potential families and cases")
    g.add_argument("--out", default=None, help="also write catalog.json here")
    g.set_defaults(fn=cmd_catalog)
    return p


def _error_body(code: int, exc: Exception) -> None:
    body = {"error": {"type": type(exc).__name__, "message": str(exc),
                      "exit_code": code}}
    print(json.dumps(body, indent=2))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except (ConfigError, UnsupportedPotentialError, KeyError) as exc:
        _error_body(EXIT_USAGE, exc)
        return EXIT_USAGE
    except NoBoundStateError as exc:
        _error_body(EXIT_NO_BOUND_STATE, exc)
        return EXIT_NO_BOUND_STATE
    except (SolverError, QuadratureError, SupercriticalCouplingError) as exc:
        _error_body(EXIT_NUMERICAL, exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
