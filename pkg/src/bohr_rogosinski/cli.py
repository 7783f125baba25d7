"""Command-line front end: radii, parameter sweeps, extremal data, verification.

Settings are resolved in the order defaults < ``--config`` file (``key=value``
lines) < ``BOHRROG_*`` environment variables < explicit flags.  Results go to
stdout as CSV or JSON; diagnostics go to stderr.

Exit codes: 0 success, 1 usage error, 2 when a radius problem has no valid
root (condition violated, no sign change, or uncertifiable series), 3 when
a verification suite reports failures.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

from . import oracle
from .coeff_bounds import CoeffBoundProvider
from .errors import BohrError, ConditionViolated, DivergenceError, NoRootInRange, QuadratureError
from .extremal import build_extremal_pair, convex_distance, ks_distance, starlike_distance, symmetric_k_prime
from .psi import CUSTOM, PsiModel, load_custom
from .solvers import ClassTag, NumericConfig, RadiusProblem, solve
from .weights import parse_weights

ENV_PREFIX = "BOHRROG_"
COLUMNS = ("class", "psi_D", "psi_E", "alpha", "beta", "m", "N", "weights", "r0", "rb", "capped", "residual", "status")
SUITES = ("lemma", "weighted", "operator", "radius", "growth", "all")
EXIT_OK, EXIT_USAGE, EXIT_NO_ROOT, EXIT_VERIFY_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    T: int = 256
    root_tol: float = 1e-12
    quad_tol: float = 1e-11
    theta_samples: int = 64
    r_max: float = 1.0 - 1e-6
    format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if self.T < 32:
            raise UsageError("T must be >= 32")
        if min(self.root_tol, self.quad_tol) <= 0 or self.theta_samples < 1:
            raise UsageError("tolerances and theta_samples must be positive")
        if not 0.0 < self.r_max < 1.0:
            raise UsageError("r_max must lie in (0, 1)")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")

    def numeric(self) -> NumericConfig:
        return NumericConfig(T=self.T, root_tol=self.root_tol, quad_tol=self.quad_tol, r_max=self.r_max)


def _coerce_fields(values: dict[str, str], source: str) -> dict:
    types = {f.name: f.type for f in fields(RunConfig)}
    out = {}
    for key, raw in values.items():
        if key not in types:
            raise UsageError(f"unknown setting {key!r} in {source}")
        conv = {"int": int, "float": float}.get(types[key], str)
        try:
            out[key] = conv(raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key} in {source}: {raw!r}") from exc
    return out


def read_config_file(path: str | Path) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        k, v = line.split("=", 1)
        values[k.strip()] = v.strip()
    return _coerce_fields(values, str(path))


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    names = {f.name.upper(): f.name for f in fields(RunConfig)}
    values = {names[k[len(ENV_PREFIX) :]]: v for k, v in environ.items() if k.startswith(ENV_PREFIX) and k[len(ENV_PREFIX) :] in names}
    return _coerce_fields(values, "environment")


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    settings = {}
    if getattr(args, "config", None):
        settings.update(read_config_file(args.config))
    settings.update(env_overrides(environ))
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            settings[f.name] = v
    return RunConfig(**settings)


# value formatting


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12g}"
    return str(x)


def _json_value(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return None
        return float(f"{x:.12g}")
    return x


def write_records(records: Sequence[dict], out_format: str, stream, single: bool = False) -> None:
    if out_format == "json":
        payload = [{k: _json_value(r.get(k)) for k in COLUMNS} for r in records]
        json.dump(payload[0] if single and payload else payload, stream, indent=None if single else 1)
        stream.write("\n")
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([fmt(r.get(k)) for k in COLUMNS])


# problem construction


def _parse_m(text: str) -> float:
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "∞"):
        return math.inf
    try:
        m = int(t)
    except ValueError as exc:
        raise UsageError(f"m must be a positive integer or 'inf', got {text!r}") from exc
    if m < 1:
        raise UsageError(f"m must be >= 1, got {m}")
    return float(m)


def build_psi(class_tag: ClassTag, psi_kind: str | None, D: float, E: float, alpha: float, psi_file: str | None) -> PsiModel:
    kind = psi_kind
    if kind is None:
        kind = {ClassTag.JANOWSKI: "janowski", ClassTag.ORDER_ALPHA: "order-alpha"}.get(class_tag, "classical")
        if psi_file:
            kind = CUSTOM
    if kind == "classical":
        return PsiModel.classical()
    if kind == "janowski":
        return PsiModel.janowski(D, E)
    if kind == "order-alpha":
        return PsiModel.order_alpha(alpha)
    if kind == CUSTOM:
        if not psi_file:
            raise UsageError("custom psi needs --psi-file")
        return load_custom(psi_file)
    raise UsageError(f"unknown psi {kind!r}")


def build_bounds(name: str | None, psi: PsiModel, T: int) -> CoeffBoundProvider | None:
    if name in (None, "default"):
        return None
    if name == "classical":
        return CoeffBoundProvider.classical()
    if name == "janowski":
        return CoeffBoundProvider.janowski(psi.D, psi.E)
    if name == "order-alpha":
        return CoeffBoundProvider.order_alpha(psi.alpha)
    if name == "extremal":
        return CoeffBoundProvider.extremal(build_extremal_pair(psi, T).f0)
    raise UsageError(f"unknown bounds provider {name!r}")


def make_problem(spec: dict, cfg: RunConfig) -> RadiusProblem:
    try:
        tag = ClassTag(spec["class"])
    except ValueError as exc:
        raise UsageError(f"unknown class {spec['class']!r}") from exc
    try:
        psi = build_psi(tag, spec.get("psi"), spec.get("D", 1.0), spec.get("E", -1.0), spec.get("alpha", 0.0), spec.get("psi_file"))
        weights = parse_weights(spec["weights"]) if spec.get("weights") else None
        return RadiusProblem(
            tag,
            psi,
            beta=spec.get("beta", 0.0),
            m=spec.get("m", math.inf),
            N=spec.get("N", 1),
            weights=weights,
            bounds=build_bounds(spec.get("bounds"), psi, cfg.T),
            numeric=cfg.numeric(),
        )
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _status(exc: Exception) -> str:
    if isinstance(exc, ConditionViolated):
        return "condition-violated"
    if isinstance(exc, NoRootInRange):
        return "no-root"
    if isinstance(exc, DivergenceError):
        return "divergence"
    if isinstance(exc, QuadratureError):
        return "quadrature"
    return "error"


def problem_record(p: RadiusProblem) -> dict:
    custom = p.psi.kind == CUSTOM
    return {
        "class": p.class_tag.value,
        "psi_D": None if custom else p.psi.D,
        "psi_E": None if custom else p.psi.E,
        "alpha": p.psi.alpha if p.psi.kind == "order-alpha" else None,
        "beta": float(p.beta),
        "m": p.m_label(),
        "N": int(p.N),
        "weights": p.weights.label(),
    }


def solve_record(p: RadiusProblem) -> tuple[dict, Exception | None]:
    rec = problem_record(p)
    try:
        res = solve(p)
    except BohrError as exc:
        rec.update(r0=math.nan, rb=math.nan, capped=None, residual=math.nan, status=_status(exc))
        return rec, exc
    rec.update(r0=res.r0, rb=res.rb, capped=res.capped, residual=res.residual, status="ok")
    return rec, None


def _table_worker(args: tuple[dict, RunConfig]) -> dict:
    spec, cfg = args
    return solve_record(make_problem(spec, cfg))[0]


# subcommands


def cmd_radius(args, cfg: RunConfig) -> int:
    spec = {
        "class": args.class_tag,
        "psi": args.psi,
        "D": args.D,
        "E": args.E,
        "alpha": args.alpha,
        "psi_file": args.psi_file,
        "beta": args.beta,
        "m": _parse_m(args.m),
        "N": args.N,
        "weights": args.weights,
        "bounds": args.bounds,
    }
    rec, exc = solve_record(make_problem(spec, cfg))
    write_records([rec], cfg.format, sys.stdout, single=True)
    if exc is not None:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    return EXIT_OK


def _split(text: str | None, conv, default):
    if text is None:
        return [default]
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    try:
        return [conv(t) for t in items]
    except ValueError as exc:
        raise UsageError(f"bad grid value in {text!r}") from exc


def table_specs(args) -> list[dict]:
    grid = {
        "beta": _split(args.beta, float, 0.0),
        "m": _split(args.m, _parse_m, math.inf),
        "N": _split(args.N, int, 1),
        "D": _split(args.D, float, 1.0),
        "E": _split(args.E, float, -1.0),
        "alpha": _split(args.alpha, float, 0.0),
    }
    base = {"class": args.class_tag, "psi": args.psi, "psi_file": args.psi_file, "weights": args.weights, "bounds": args.bounds}
    keys = list(grid)
    return [dict(base, **dict(zip(keys, combo))) for combo in itertools.product(*(grid[k] for k in keys))]


def cmd_table(args, cfg: RunConfig) -> int:
    specs = table_specs(args)
    for s in specs:  # surface usage errors before any work starts
        make_problem(s, cfg)
    jobs = max(1, args.jobs or 1)
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_table_worker, [(s, cfg) for s in specs]))
    else:
        rows = [_table_worker((s, cfg)) for s in specs]
    write_records(rows, cfg.format, sys.stdout)
    return EXIT_OK


def run_suite(name: str, seed: int, cfg: RunConfig, n: int | None = None, classes: Sequence[str] | None = None) -> list[oracle.SuiteReport]:
    if name == "lemma":
        return [oracle.lemma_suite(seed)]
    if name == "weighted":
        return [oracle.weighted_lemma_suite(seed)]
    if name == "operator":
        Ns = [n] if n is not None else [0, 1, 2, 3]
        return [oracle.operator_suite(seed, N=k) for k in Ns]
    if name == "growth":
        return [oracle.growth_suite(seed)]
    if name == "radius":
        problems = oracle.golden_problems()
        if classes:
            problems = [p for p in problems if p.class_tag.value in classes]
        results = [solve(p) for p in problems]
        return [oracle.radius_suite(results, seed, theta_samples=cfg.theta_samples)]
    if name == "all":
        return [rep for s in SUITES[:-1] for rep in run_suite(s, seed, cfg, n, classes)]
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    classes = [c.strip() for c in args.classes.split(",")] if args.classes else None
    reports = run_suite(args.suite, cfg.seed, cfg, args.n, classes)
    passed = sum(r.passed for r in reports)
    total = sum(r.total for r in reports)
    for r in reports:
        if len(reports) > 1:
            print(f"{r.name}: {r.summary()}")
        for line in r.failures:
            print(line)
    failed = total - passed
    print(f"{'PASS' if failed == 0 else 'FAIL'} {passed}/{total}")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def _psi_from_args(args) -> PsiModel:
    try:
        return build_psi(ClassTag.GEN_STARLIKE, args.psi or "classical", args.D, args.E, args.alpha, args.psi_file)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_constants(args, cfg: RunConfig) -> int:
    psi = _psi_from_args(args)
    tol = cfg.quad_tol
    rec = {
        "psi": psi.label(),
        "starlike_distance": starlike_distance(psi, tol),
        "convex_distance": convex_distance(psi, tol),
        "ks_distance": ks_distance(psi, tol),
    }
    if cfg.format == "json":
        json.dump({k: _json_value(v) for k, v in rec.items()}, sys.stdout)
        sys.stdout.write("\n")
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(rec.keys())
        w.writerow([fmt(v) for v in rec.values()])
    return EXIT_OK


def cmd_series(args, cfg: RunConfig) -> int:
    psi = _psi_from_args(args)
    if args.count < 1:
        raise UsageError("--count must be positive")
    pair = build_extremal_pair(psi, max(cfg.T, args.count))
    s = {"f0": pair.f0, "k": pair.k_psi, "kprime": pair.k_psi_prime, "K": symmetric_k_prime(pair)}[args.which]
    coeffs = [float(c.real) for c in s.coeffs[: args.count]]
    if cfg.format == "json":
        json.dump([_json_value(c) for c in coeffs], sys.stdout)
        sys.stdout.write("\n")
    else:
        print(",".join(fmt(c) for c in coeffs))
    return EXIT_OK


def _add_psi_args(sp, grid: bool = False):
    num = str if grid else float
    sp.add_argument("--psi", "--class-psi", dest="psi", choices=["classical", "janowski", "order-alpha", "custom"])
    sp.add_argument("--psi-file", help="custom psi coefficients, one 're im' pair per line")
    sp.add_argument("--D", type=num, default=None if grid else 1.0)
    sp.add_argument("--E", type=num, default=None if grid else -1.0)
    sp.add_argument("--alpha", type=num, default=None if grid else 0.0)


def _add_common(sp):
    sp.add_argument("--config", help="key=value settings file")
    sp.add_argument("--format", choices=["csv", "json"])
    sp.add_argument("--seed", type=int)
    sp.add_argument("--T", type=int)
    sp.add_argument("--root-tol", dest="root_tol", type=float)
    sp.add_argument("--quad-tol", dest="quad_tol", type=float)
    sp.add_argument("--r-max", dest="r_max", type=float)
    sp.add_argument("--theta-samples", dest="theta_samples", type=int)


def _add_problem_args(sp, grid: bool = False):
    sp.add_argument("--class", dest="class_tag", required=True, choices=[t.value for t in ClassTag])
    _add_psi_args(sp, grid)
    if grid:
        sp.add_argument("--beta", help="comma-separated grid")
        sp.add_argument("--m", help="comma-separated grid; 'inf' allowed")
        sp.add_argument("--N", help="comma-separated grid")
    else:
        sp.add_argument("--beta", type=float, default=0.0)
        sp.add_argument("--m", default="inf")
        sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--weights", help="tail:N, odd, even, none or an index list like 1,3,7")
    sp.add_argument("--bounds", choices=["default", "classical", "janowski", "order-alpha", "extremal"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohr-rogosinski", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("radius", help="solve one radius problem")
    _add_problem_args(sp)
    _add_common(sp)

    sp = sub.add_parser("table", help="sweep a parameter grid")
    _add_problem_args(sp, grid=True)
    sp.add_argument("--jobs", type=int, default=1)
    _add_common(sp)

    sp = sub.add_parser("verify", help="run randomized verification suites")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--n", type=int, help="operator suite index N")
    sp.add_argument("--classes", help="radius suite: restrict to these class tags")
    _add_common(sp)

    sp = sub.add_parser("constants", help="distance lower bounds for a psi")
    _add_psi_args(sp)
    _add_common(sp)

    sp = sub.add_parser("series", help="leading coefficients of an extremal function")
    _add_psi_args(sp)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--which", choices=["f0", "k", "kprime", "K"], default="f0")
    _add_common(sp)
    return parser


COMMANDS = {"radius": cmd_radius, "table": cmd_table, "verify": cmd_verify, "constants": cmd_constants, "series": cmd_series}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
