"""Command-line front end.

Grid sizes on the command line count mesh intervals: ``--n-list 10`` means
``N + 1 = 10``, i.e. nine interior nodes and ``h = (b - a) / 10``.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import random
import sys
from dataclasses import dataclass, field, fields
from typing import List, Optional

import numpy as np

from .assembly import SolverError, TridiagonalMatrix, verify_m_matrix
from .catalog import BUILDERS, PolynomialDrift
from .fd import run_fd
from .problem import grid_for
from .stepper import discretize, run
from .study import ProblemRef, convergence_study, drift_from_coeffs
from .verification import dense_oracle_run, oscillation_count, residual_check

log = logging.getLogger("ffpe_fv")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3
COMMANDS = (
    "solve",
    "convergence-space",
    "convergence-time",
    "compare-fd",
    "check-mmatrix",
    "oracle-check",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    mode: str
    problem: str = "example41"
    alpha: Optional[float] = None
    k_alpha: Optional[float] = None
    drift_c0: Optional[float] = None
    drift_c1: Optional[float] = None
    drift_c2: Optional[float] = None
    n_list: List[int] = field(default_factory=lambda: [10])
    l_list: List[int] = field(default_factory=lambda: [100])
    out: Optional[str] = None
    workers: int = 1
    dump: str = "profile"
    trials: int = 20
    seed: int = 0
    inject_positive_offdiag: bool = False

    def problem_ref(self) -> ProblemRef:
        params = {"alpha": self.alpha, "k_alpha": self.k_alpha}
        drift = drift_from_coeffs(self.drift_c0, self.drift_c1, self.drift_c2)
        if drift is not None:
            params["drift"] = drift
        return ProblemRef(self.problem, {k: v for k, v in params.items() if v is not None})


def _int_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise ConfigError("empty size list")
    return values


_CONVERTERS = {
    "alpha": float, "k_alpha": float, "drift_c0": float, "drift_c1": float,
    "drift_c2": float, "n_list": _int_list, "l_list": _int_list, "workers": int,
    "trials": int, "seed": int,
}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment; dashes in keys map to underscores."""
    known = {f.name for f in fields(RunConfig)} - {"mode"}
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if args.config else {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None and f.name != "mode":
            raw[f.name] = flag
    converted = {}
    for key, value in raw.items():
        conv = _CONVERTERS.get(key)
        try:
            converted[key] = conv(value) if conv and not isinstance(value, list) else value
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {key}: {value!r}") from None
    if isinstance(converted.get("inject_positive_offdiag"), str):
        converted["inject_positive_offdiag"] = converted["inject_positive_offdiag"].lower() in (
            "1", "true", "yes",
        )
    cfg = RunConfig(mode=args.command, **converted)
    if cfg.problem not in BUILDERS:
        raise ConfigError(
            f"unknown problem {cfg.problem!r}; available: {', '.join(sorted(BUILDERS))}"
        )
    for name in ("n_list", "l_list"):
        sizes = getattr(cfg, name)
        if any(s <= 0 for s in sizes):
            raise ConfigError(f"{name.replace('_', '-')} must hold positive integers")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ConfigError(f"{name.replace('_', '-')} must be strictly increasing")
    if any(s < 2 for s in cfg.n_list):
        raise ConfigError("n-list counts intervals N+1 and must be at least 2")
    if cfg.workers < 1:
        raise ConfigError("workers must be at least 1")
    if cfg.dump not in ("profile", "full"):
        raise ConfigError(f"dump must be 'profile' or 'full', got {cfg.dump!r}")
    return cfg


def _emit_csv(rows, cfg: RunConfig) -> None:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _report(text: str, cfg: RunConfig) -> None:
    # keep stdout clean for CSV when no output file is given
    print(text, file=sys.stdout if cfg.out else sys.stderr)


def _build_problem(cfg: RunConfig):
    try:
        return cfg.problem_ref().build()
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def cmd_solve(cfg: RunConfig) -> int:
    problem = _build_problem(cfg)
    grid = grid_for(problem.spec, cfg.n_list[0] - 1, cfg.l_list[0])
    sol = run(problem.spec, grid)
    g = lambda v: f"{v:.17g}"  # noqa: E731
    if cfg.dump == "full":
        rows = [["n", "t", "x", "W"]]
        for n, t in enumerate(grid.times):
            rows.extend([str(n), g(t), g(x), g(w)] for x, w in zip(grid.nodes, sol.values[n]))
    else:
        rows = [["x", "W"] + (["exact"] if problem.exact else [])]
        exact = problem.exact(grid.nodes, grid.T) if problem.exact else None
        for i, (x, w) in enumerate(zip(grid.nodes, sol.final)):
            rows.append([g(x), g(w)] + ([g(exact[i])] if exact is not None else []))
    _emit_csv(rows, cfg)
    return EXIT_OK


def cmd_convergence(cfg: RunConfig, axis: str) -> int:
    problem = _build_problem(cfg)
    if problem.exact is None:
        raise ConfigError(f"problem {cfg.problem!r} has no exact solution to measure errors against")
    if axis == "space":
        sizes, fixed = cfg.n_list, cfg.l_list[0]
    else:
        sizes, fixed = cfg.l_list, cfg.n_list[0] - 1
    if len(sizes) < 2:
        raise ConfigError("a convergence sweep needs at least two grid sizes")
    try:
        table = convergence_study(cfg.problem_ref(), axis, sizes, fixed, cfg.workers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _emit_csv(table.to_rows(), cfg)
    return EXIT_OK


def cmd_compare_fd(cfg: RunConfig) -> int:
    problem = _build_problem(cfg)
    grid = grid_for(problem.spec, cfg.n_list[0] - 1, cfg.l_list[0])
    fv = run(problem.spec, grid)
    fd = run_fd(problem.spec, grid)
    g = lambda v: f"{v:.17g}"  # noqa: E731
    rows = [["x", "fv", "fd"]]
    rows.extend([g(x), g(a), g(b)] for x, a, b in zip(grid.nodes, fv.final, fd.final))
    _emit_csv(rows, cfg)
    flags = {
        "fv_min": float(fv.values.min()),
        "fd_min": float(fd.values.min()),
        "fv_oscillation_count": oscillation_count(fv.final),
        "fd_oscillation_count": oscillation_count(fd.final),
    }
    _report("\n".join(f"{k}={v}" for k, v in flags.items()), cfg)
    return EXIT_OK


def cmd_check_mmatrix(cfg: RunConfig) -> int:
    problem = _build_problem(cfg)
    all_ok = True
    for cells in cfg.n_list:
        for L in cfg.l_list:
            grid = grid_for(problem.spec, cells - 1, L)
            system = discretize(problem.spec, grid, check=False).system
            if cfg.inject_positive_offdiag and system.N > 1:
                upper = system.upper.copy()
                upper[0] = abs(upper[0]) + 1.0
                system = TridiagonalMatrix(system.lower, system.diag, upper)
            report = verify_m_matrix(system)
            all_ok &= report.is_m_matrix
            print(f"[N+1={cells} L={L}]\n{report}")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def random_oracle_configs(trials: int, seed: int):
    """Randomized small catalog configurations for oracle comparisons."""
    rng = random.Random(seed)
    names = ["example41", "example42_case1", "example42_case2_demo", "constant", "zero"]
    for _ in range(trials):
        name = rng.choice(names)
        params = {
            "alpha": rng.uniform(0.05, 0.95),
            "k_alpha": rng.choice([0.1, 1.0, 2.5]),
            "drift": PolynomialDrift(
                rng.uniform(-500, 500), rng.uniform(-50, 50), rng.uniform(-50, 50)
            ),
        }
        yield ProblemRef(name, params), rng.randint(1, 64), rng.randint(1, 256)


def cmd_oracle_check(cfg: RunConfig) -> int:
    worst_diff = worst_res = 0.0
    for ref, N, L in random_oracle_configs(cfg.trials, cfg.seed):
        problem = ref.build()
        grid = grid_for(problem.spec, N, L)
        fast = run(problem.spec, grid)
        slow = dense_oracle_run(problem.spec, grid)
        scale = max(np.abs(slow.values).max(), 1e-300)
        diff = float(np.abs(fast.values - slow.values).max() / scale)
        res = residual_check(fast, problem.spec, grid, relative=True)
        worst_diff, worst_res = max(worst_diff, diff), max(worst_res, res)
        print(f"{ref.name:22s} N={N:3d} L={L:3d} rel_diff={diff:.3e} rel_residual={res:.3e}")
    ok = worst_diff <= 1e-10 and worst_res <= 1e-10
    print(f"max rel_diff={worst_diff:.3e} max rel_residual={worst_res:.3e} -> {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffpe-fv",
        description="Monotone finite volume solver for time-fractional Fokker-Planck problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key=value file; flags override its entries")
        p.add_argument("--problem", help=f"one of {', '.join(sorted(BUILDERS))}")
        p.add_argument("--alpha", type=float)
        p.add_argument("--k-alpha", dest="k_alpha", type=float)
        for c in ("c0", "c1", "c2"):
            p.add_argument(f"--drift-{c}", dest=f"drift_{c}", type=float,
                           help="drift f(x) = c0 + c1 x + c2 x^2 (unset terms are 0)")
        p.add_argument("--n-list", dest="n_list", help="interval counts N+1, comma separated")
        p.add_argument("--l-list", dest="l_list", help="time step counts L, comma separated")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--workers", type=int)
        p.add_argument("-v", "--verbose", action="store_true")
        if name == "solve":
            p.add_argument("--dump", choices=("profile", "full"))
        if name == "oracle-check":
            p.add_argument("--trials", type=int)
            p.add_argument("--seed", type=int)
        if name == "check-mmatrix":
            p.add_argument("--inject-positive-offdiag", dest="inject_positive_offdiag",
                           action="store_true", default=None, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = build_config(args)
        log.info("config: %s", cfg)
        if cfg.mode == "solve":
            return cmd_solve(cfg)
        if cfg.mode == "convergence-space":
            return cmd_convergence(cfg, "space")
        if cfg.mode == "convergence-time":
            return cmd_convergence(cfg, "time")
        if cfg.mode == "compare-fd":
            return cmd_compare_fd(cfg)
        if cfg.mode == "check-mmatrix":
            return cmd_check_mmatrix(cfg)
        return cmd_oracle_check(cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
