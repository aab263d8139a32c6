"""``pdo-lab``: configuration-driven experiment runner.

Exit codes: 0 when every verdict passes, 1 when an experiment fails or
crashes, 2 for an invalid configuration or command line.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from .grid import ExponentTriple
from .report import BoundReport
from .verify import EXPERIMENTS, HypothesisError, bilinear_threshold, pointwise_threshold, verify_kernel_decay, \
    verify_lemma61, verify_seminorms, weaker_threshold, parse_exponent

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

_TOP_KEYS = {"schema", "description", "experiments"}
_EXP_KEYS = {"name", "id", "params"}


class ConfigError(ValueError):
    """The configuration cannot be run as written."""


def _accepted(func) -> set[str]:
    return set(inspect.signature(func).parameters)


def load_config(path: str | Path) -> dict:
    """Read a config file; a bare ``suites/<name>.json`` also resolves to the packaged suites."""
    p = Path(path)
    if not p.exists():
        packaged = resources.files("pdolab").joinpath("suites", p.name)
        if p.parent.name == "suites" and packaged.is_file():
            return json.loads(packaged.read_text())
        raise ConfigError(f"config file {path} not found")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc


def validate_config(cfg: dict) -> list[dict]:
    """Check schema, experiment names and parameter names; return normalised experiment entries."""
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    extra = set(cfg) - _TOP_KEYS
    if extra:
        raise ConfigError(f"unknown top-level keys: {sorted(extra)}")
    if cfg.get("schema") != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema {cfg.get('schema')!r}; expected {SCHEMA_VERSION}")
    exps = cfg.get("experiments")
    if not isinstance(exps, list) or not exps:
        raise ConfigError("'experiments' must be a non-empty list")
    out, seen = [], set()
    for i, e in enumerate(exps):
        if not isinstance(e, dict):
            raise ConfigError(f"experiment #{i} must be an object")
        bad = set(e) - _EXP_KEYS
        if bad:
            raise ConfigError(f"experiment #{i}: unknown keys {sorted(bad)}")
        name = e.get("name")
        if name not in EXPERIMENTS:
            raise ConfigError(f"experiment #{i}: unknown experiment {name!r}")
        params = e.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"experiment #{i}: 'params' must be an object")
        unknown = set(params) - _accepted(EXPERIMENTS[name][0])
        if unknown:
            raise ConfigError(f"experiment #{i} ({name}): unknown parameters {sorted(unknown)}")
        eid = str(e.get("id", name))
        if eid in seen:
            raise ConfigError(f"duplicate experiment id {eid!r}")
        seen.add(eid)
        out.append({"id": eid, "name": name, "params": dict(params)})
    return out


def _apply_overrides(entries: list[dict], seed: int | None, grid: int | None) -> None:
    for e in entries:
        acc = _accepted(EXPERIMENTS[e["name"]][0])
        if seed is not None and "seed" in acc:
            e["params"]["seed"] = seed
        if grid is not None and "G" in acc:
            e["params"]["G"] = grid


def _run_one(name: str, params: dict) -> tuple[str, dict | str]:
    """Worker entry point: ``("ok", report dict)``, ``("hypothesis", msg)`` or ``("error", msg)``."""
    try:
        rep = EXPERIMENTS[name][0](**params)
    except HypothesisError as exc:
        return "hypothesis", str(exc)
    except Exception as exc:  # reported as an experiment failure
        return "error", f"{type(exc).__name__}: {exc}"
    return "ok", {"report": rep.to_dict(), "csv": rep.to_csv(), "dat": rep.trend_table(),
                  "summary": rep.summary(), "passed": rep.passed, "sup": rep.sup_ratio, "runtime": rep.runtime}


def run_entries(entries: list[dict], jobs: int = 1) -> list[tuple[str, dict | str]]:
    if jobs <= 1 or len(entries) == 1:
        return [_run_one(e["name"], e["params"]) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(_run_one, e["name"], e["params"]) for e in entries]
        return [f.result() for f in futs]


def _write(out: Path | None, eid: str, res: dict) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{eid}.json").write_text(json.dumps(res["report"], sort_keys=True, indent=2) + "\n")
    (out / f"{eid}.csv").write_text(res["csv"])
    (out / f"{eid}.dat").write_text(res["dat"])


def _summary_table(rows: list[tuple[str, str, str, str]]) -> str:
    head = ("id", "verdict", "sup ratio", "statement")
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(4)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*head), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(lines)


def cmd_run(args) -> int:
    try:
        entries = validate_config(load_config(args.config))
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _apply_overrides(entries, args.seed, args.grid)
    results = run_entries(entries, args.jobs)
    out = Path(args.out) if args.out else None
    rows, summary, code = [], [], EXIT_OK
    for e, (status, res) in zip(entries, results):
        statement = EXPERIMENTS[e["name"]][1]
        if status == "hypothesis":
            print(f"invalid config: {e['id']}: {res}", file=sys.stderr)
            return EXIT_CONFIG
        if status == "error":
            rows.append((e["id"], "ERROR", "-", statement))
            summary.append({"id": e["id"], "experiment": e["name"], "statement": statement, "passed": False,
                            "error": res})
            code = EXIT_FAIL
            continue
        _write(out, e["id"], res)
        rows.append((e["id"], "PASS" if res["passed"] else "FAIL", f"{res['sup']:.4g}", statement))
        summary.append({"id": e["id"], "experiment": e["name"], "statement": statement, "passed": res["passed"],
                        "sup_ratio": res["sup"], "runtime": res["runtime"]})
        if not res["passed"]:
            code = EXIT_FAIL
    print(_summary_table(rows))
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return code


def cmd_threshold(args) -> int:
    try:
        tr = ExponentTriple(parse_exponent(args.p), parse_exponent(args.q), parse_exponent(args.r))
    except ValueError as exc:
        print(f"invalid exponents: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.kind == "bilinear":
        val = bilinear_threshold(args.rho, args.n, tr)
    elif args.kind == "weaker":
        val = weaker_threshold(args.rho, args.n, tr)
    else:
        val = pointwise_threshold(args.rho, args.n, [tr.p, tr.q])
    print(repr(float(val)))
    return EXIT_OK


def _single(args, rep_fn) -> int:
    try:
        rep: BoundReport = rep_fn()
    except (HypothesisError, ValueError) as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(rep.summary())
    if args.out:
        d = {"report": rep.to_dict(), "csv": rep.to_csv(), "dat": rep.trend_table()}
        _write(Path(args.out), rep.experiment, d)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_kernel_decay(args) -> int:
    kw = {"symbol": args.symbol, "orders": args.orders, "k": args.k, "L": args.L}
    if args.grid:
        kw["G"] = args.grid
    return _single(args, lambda: verify_kernel_decay(**kw))


def cmd_seminorms(args) -> int:
    kw = {"symbol": args.symbol, "alpha_max": args.alpha_max, "L": args.L}
    if args.grid:
        kw["G"] = args.grid
    return _single(args, lambda: verify_seminorms(**kw))


def cmd_lemma61(args) -> int:
    kw = {"kind": args.kind, "count": args.count, "seed": 0 if args.seed is None else args.seed}
    if args.grid:
        kw["G"] = args.grid
    return _single(args, lambda: verify_lemma61(**kw))


def _k_arg(v: str):
    return v if v in ("summed", "total") else int(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for experiments that take one")
    common.add_argument("--grid", type=int, default=None, metavar="G", help="override the grid size G")
    common.add_argument("--out", default=None, metavar="DIR", help="directory for JSON/CSV reports")
    common.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes")

    ap = argparse.ArgumentParser(prog="pdo-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a JSON experiment suite")
    r.add_argument("--config", required=True)
    r.set_defaults(func=cmd_run)

    t = sub.add_parser("threshold", parents=[common], help="print the admissible order at an exponent triple")
    t.add_argument("--rho", type=float, required=True)
    t.add_argument("--n", type=int, default=1)
    t.add_argument("--p", required=True)
    t.add_argument("--q", required=True)
    t.add_argument("--r", required=True)
    t.add_argument("--kind", choices=("bilinear", "weaker", "pointwise"), default="bilinear")
    t.set_defaults(func=cmd_threshold)

    k = sub.add_parser("kernel-decay", parents=[common], help="fit off-diagonal kernel decay")
    k.add_argument("--symbol", default="osc:m=-1,rho=0.5")
    k.add_argument("--orders", type=float, nargs="+", default=[2.0])
    k.add_argument("--k", type=_k_arg, default="summed")
    k.add_argument("--L", type=float, default=16.0)
    k.set_defaults(func=cmd_kernel_decay)

    s = sub.add_parser("seminorms", parents=[common], help="seminorm scan stability under doubling L")
    s.add_argument("--symbol", default="osc:m=-0.5,rho=0.5")
    s.add_argument("--alpha-max", type=int, default=2)
    s.add_argument("--L", type=float, default=3.141592653589793)
    s.set_defaults(func=cmd_seminorms)

    m = sub.add_parser("lemma61", parents=[common], help="L^2 bound and sharp norm of S")
    m.add_argument("--kind", choices=("random", "separable", "zero"), default="random")
    m.add_argument("--count", type=int, default=10)
    m.set_defaults(func=cmd_lemma61)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
