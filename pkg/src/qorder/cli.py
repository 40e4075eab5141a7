"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage errors (bad flags, bad input, parameters outside a statement's
hypotheses, sizes above the enumeration cap).

Settings come from flags first, then a ``key=value`` config file (``--config``
or the ``QORDER_CONFIG`` environment variable), then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass, fields

from .errors import ConvergenceError, QOrderError
from .graph import emit_graph6, girth, parse_graph6

CONFIG_ENV = "QORDER_CONFIG"
CSV_COLUMNS = ("rank", "q", "gap", "graph6", "family", "delta", "girth")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tolerance: float = 1e-12
    tie_gap: float = 1e-9
    enum_cap: int = 12
    format: str = "text"
    output: str | None = None
    jobs: int = 1

    def validate(self) -> None:
        if self.tolerance <= 0 or self.tie_gap <= 0:
            raise UsageError("tolerances must be positive")
        if not 1 <= self.enum_cap <= 13:
            raise UsageError("enum_cap must lie in 1..13")
        if self.format not in ("text", "csv", "json"):
            raise UsageError(f"unknown output format {self.format!r}")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def resolve_config(args: argparse.Namespace, environ: dict[str, str] | None = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    cfg = RunConfig()
    types = {f.name: f.type for f in fields(RunConfig)}
    path = getattr(args, "config", None) or environ.get(CONFIG_ENV)
    if path:
        for k, v in read_config_file(path).items():
            if k not in types:
                raise UsageError(f"unknown config key {k!r}")
            setattr(cfg, k, _convert(k, v))
    for k in types:
        val = getattr(args, k, None)
        if val is not None:
            setattr(cfg, k, val)
    cfg.validate()
    return cfg


def _convert(key: str, value: str):
    try:
        if key in ("tolerance", "tie_gap"):
            return float(value)
        if key in ("enum_cap", "jobs"):
            return int(value)
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {value!r}") from exc
    return value or None if key == "output" else value


def fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


# --- output helpers -----------------------------------------------------------

def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_jsonable) + "\n"


def _jsonable(v):
    if hasattr(v, "tolist"):
        return v.tolist()
    raise TypeError(f"not serialisable: {type(v).__name__}")


def rank_rows_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.rank, fmt(r.q), fmt(r.gap), r.graph6, r.family or "", r.delta, "" if r.girth is None else r.girth])
    return buf.getvalue()


def _row_json(r) -> dict:
    return {
        "rank": r.rank,
        "q": float(fmt(r.q)),
        "gap": None if r.gap is None else float(fmt(r.gap)),
        "graph6": r.graph6,
        "family": r.family,
        "delta": r.delta,
        "girth": r.girth,
        "tied": r.tied,
    }


# --- commands -----------------------------------------------------------------

def cmd_family(args, cfg: RunConfig) -> int:
    from .families import build, parse_spec
    from .spectral import q_index

    lg = build(parse_spec(args.spec))
    G = lg.graph
    pp = q_index(G, cfg.tolerance)
    info = {
        "spec": str(lg.spec),
        "graph6": emit_graph6(G),
        "n": G.n,
        "m": G.m,
        "degrees": list(G.degrees),
        "delta": G.max_degree,
        "girth": girth(G),
        "q": float(fmt(pp.q)),
        "labels": lg.labels,
    }
    if cfg.format == "json":
        _emit(_json(info), cfg)
    elif args.emit == "graph6":
        _emit(info["graph6"] + "\n", cfg)
    else:
        lines = [
            f"spec     {info['spec']}",
            f"graph6   {info['graph6']}",
            f"n        {G.n}",
            f"m        {G.m}",
            f"degrees  {' '.join(map(str, G.degrees))}",
            f"delta    {G.max_degree}",
            f"girth    {'acyclic' if info['girth'] is None else info['girth']}",
            f"q        {fmt(pp.q)}",
        ]
        if args.emit == "edges":
            lines += [f"edge     {u} {v}" for u, v in G.edges]
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_qindex(args, cfg: RunConfig) -> int:
    from .spectral import q_index

    if args.stdin:
        lines = [ln.strip() for ln in sys.stdin.read().splitlines() if ln.strip()]
    elif args.graph6:
        lines = [args.graph6]
    else:
        raise UsageError("give --graph6 or --stdin")
    results = []
    for line in lines:
        G = parse_graph6(line)
        pp = q_index(G, cfg.tolerance)
        res = {"graph6": emit_graph6(G), "q": float(fmt(pp.q)), "residual": float(fmt(pp.residual))}
        if args.vector:
            res["x"] = [float(fmt(v)) for v in pp.x]
        results.append(res)
    if cfg.format == "json":
        _emit(_json(results if len(results) > 1 else results[0]), cfg)
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph6", "q", "residual"])
        for r in results:
            w.writerow([r["graph6"], fmt(r["q"]), fmt(r["residual"])])
        _emit(buf.getvalue(), cfg)
    else:
        out = []
        for r in results:
            out.append(f"{r['graph6']}\tq={fmt(r['q'])}\tresidual={fmt(r['residual'])}")
            if args.vector:
                out.append("x " + " ".join(fmt(v) for v in r["x"]))
        _emit("\n".join(out) + "\n", cfg)
    return 0


def _theorem_params(args) -> dict[str, int]:
    return {k: getattr(args, k) for k in ("m", "g", "g2") if getattr(args, k) is not None}


def cmd_verify(args, cfg: RunConfig) -> int:
    from .enumeration import verify_theorem

    rep = verify_theorem(
        args.theorem, _theorem_params(args), cap=cfg.enum_cap, tol=cfg.tolerance, tie_tol=cfg.tie_gap, jobs=cfg.jobs
    )
    if cfg.format == "json":
        d = rep.to_json()
        d["min_gap"] = None if rep.min_gap is None else float(fmt(rep.min_gap))
        _emit(_json(d), cfg)
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["position", "expected", "observed"])
        for i in range(max(len(rep.expected), len(rep.observed))):
            e = rep.expected[i] if i < len(rep.expected) else ""
            o = rep.observed[i] if i < len(rep.observed) else ""
            w.writerow([i + 1, e, o])
        _emit(buf.getvalue(), cfg)
    else:
        lines = [
            f"{rep.theorem} {' '.join(f'{k}={v}' for k, v in rep.params.items())}: {rep.status.upper()}",
            f"min gap   {fmt(rep.min_gap) or '-'}",
            f"counts    {', '.join(f'{k}={v}' for k, v in rep.counts.items())}",
            "expected  " + " > ".join(rep.expected),
            "observed  " + " > ".join(rep.observed),
        ]
        lines += [f"note      {n}" for n in rep.notes]
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if rep.passed else 1


def cmd_identity(args, cfg: RunConfig) -> int:
    from .exactpoly import IDENTITIES, verify_identity

    ids = IDENTITIES if args.id == "all" else (args.id,)
    if args.id != "all" and args.id not in IDENTITIES:
        raise UsageError(f"unknown identity {args.id!r}; expected one of {', '.join(IDENTITIES)} or all")
    results = {name: verify_identity(name) for name in ids}
    if cfg.format == "json":
        _emit(_json(results), cfg)
    else:
        _emit("".join(f"{k}\t{'PASS' if v else 'FAIL'}\n" for k, v in results.items()), cfg)
    return 0 if all(results.values()) else 1


def cmd_bounds(args, cfg: RunConfig) -> int:
    from .bounds import run_sweep

    kwargs = {"tol": cfg.tolerance}
    if args.sweep in ("entry", "feng"):
        kwargs.update(max_m=args.max_m or 9, cap=cfg.enum_cap)
    elif args.sweep == "degree":
        kwargs.update(m=args.m or 12, s=args.s or 8, cap=cfg.enum_cap)
    rep = run_sweep(args.sweep, **kwargs)
    if cfg.format == "json":
        _emit(_json(rep.to_json()), cfg)
    else:
        lines = [
            f"{rep.name}: {'PASS' if rep.passed else 'FAIL'}",
            f"checked     {rep.checked}",
            f"violations  {len(rep.violations)}",
            f"min slack   {fmt(rep.min_slack) or '-'}",
        ]
        for v in rep.violations[:20]:
            lines.append(f"  {v.bound_name} {v.inputs} bound={fmt(v.bound_value)} observed={fmt(v.observed_value)}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if rep.passed else 1


def _filter(args):
    from .enumeration import ClassFilter

    return ClassFilter.parse(args.girth, args.max_degree)


def cmd_rank(args, cfg: RunConfig) -> int:
    from .enumeration import rank_top_k

    table = rank_top_k(
        args.m, _filter(args), args.top, cap=cfg.enum_cap, tol=cfg.tolerance, tie_tol=cfg.tie_gap, jobs=cfg.jobs
    )
    if cfg.format == "csv":
        _emit(rank_rows_csv(table.rows), cfg)
    elif cfg.format == "json":
        _emit(
            _json(
                {
                    "m": table.m,
                    "filter": table.filter,
                    "class_size": table.class_size,
                    "rows": [_row_json(r) for r in table.rows],
                    "notes": table.notes,
                }
            ),
            cfg,
        )
    else:
        lines = [f"m={table.m} girth {table.filter}: {table.class_size} graphs"]
        for r in table.rows:
            mark = " (tied)" if r.tied else ""
            lines.append(
                f"{r.rank:>3}  q={fmt(r.q):<16} gap={fmt(r.gap) or '-':<16} {r.family or r.graph6}{mark}"
            )
        lines += [f"note: {n}" for n in table.notes]
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_enumerate(args, cfg: RunConfig) -> int:
    from .enumeration import count, enumerate_graphs

    f = _filter(args)
    if args.count:
        _emit(f"{count(args.m, f, cap=cfg.enum_cap, jobs=cfg.jobs)}\n", cfg)
        return 0
    text = "".join(emit_graph6(G) + "\n" for G in enumerate_graphs(args.m, f, cap=cfg.enum_cap, jobs=cfg.jobs))
    if args.out:
        cfg.output = args.out
    _emit(text, cfg)
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    common.add_argument("--tolerance", type=float, help="residual tolerance relative to max|Q| (1e-12)")
    common.add_argument("--tie-gap", dest="tie_gap", type=float, help="tie tolerance for strict comparisons (1e-9)")
    common.add_argument("--enum-cap", dest="enum_cap", type=int, help="largest size to enumerate (12, at most 13)")
    common.add_argument("--format", choices=("text", "csv", "json"), help="report format (text)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, help="worker processes for enumeration (1)")

    p = argparse.ArgumentParser(prog="qorder", description="Q-index orderings of connected graphs by size.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("family", parents=[common], help="build a named family graph")
    s.add_argument("--spec", required=True, help='e.g. "Gi(m=12,g=4,i=2)"')
    s.add_argument("--emit", choices=("graph6", "text", "edges"), default="text")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("qindex", parents=[common], help="Q-index of graph6 input")
    src = s.add_mutually_exclusive_group()
    src.add_argument("--graph6")
    src.add_argument("--stdin", action="store_true", help="read graph6 lines from stdin")
    s.add_argument("--vector", action="store_true", help="also print the Perron vector")
    s.set_defaults(func=cmd_qindex)

    s = sub.add_parser("verify", parents=[common], help="check an ordering statement")
    s.add_argument("--theorem", required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--g", type=int)
    s.add_argument("--g2", type=int, help="second girth (cor-2.3)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("identity", parents=[common], help="check a polynomial identity exactly")
    s.add_argument("--id", required=True, help="identity id or 'all'")
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("bounds", parents=[common], help="run a bound sweep")
    s.add_argument("--sweep", required=True, choices=("entry", "feng", "degree", "gi-bracket", "x0"))
    s.add_argument("--max-m", dest="max_m", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--s", type=int)
    s.set_defaults(func=cmd_bounds)

    for name, helptext in (("rank", "top graphs by Q-index"), ("enumerate", "list a graph class as graph6")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--m", type=int, required=True)
        s.add_argument("--girth", default="any", help="any, =g or >=g")
        s.add_argument("--max-degree", dest="max_degree", type=int)
        if name == "rank":
            s.add_argument("--top", type=int, default=10)
            s.set_defaults(func=cmd_rank)
        else:
            s.add_argument("--out", help="graph6 output file")
            s.add_argument("--count", action="store_true", help="print only the number of graphs")
            s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except ConvergenceError as exc:
        print(f"qorder: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (UsageError, QOrderError, ValueError) as exc:
        print(f"qorder: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
