"""Command-line entrypoint for the DPLL tree-statistics toolkit."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from src.asymptotics.col import c_u_col, col_first_moment, omega_col
from src.asymptotics.curves import COL_COLUMNS, SAT_COLUMNS, col_curve_rows, sat_curve_rows, write_curves_csv
from src.asymptotics.guc import GucVariant, OdeError, alpha_u_guc, omega_guc
from src.asymptotics.optimize import BracketError, OptimizeError
from src.asymptotics.uc import (
    alpha_star,
    alpha_u,
    first_moment_exponent,
    omega_c,
    omega_c_asym,
    omega_col_asym,
    omega_guc_asym,
    omega_s,
)
from src.config.experiment_file import ExperimentConfigError, load_experiment_config
from src.config.settings import DEFAULT_SETTINGS_PATH, Settings, SettingsLoadError, load_settings
from src.core.checks import run_checks
from src.core.experiment import dp_problem_for, run_experiment
from src.core.run_state import CellTransitionError
from src.expectation.dense import DPMemoryError, dp_expect
from src.expectation.generating import RecursionCheckError
from src.expectation.kernels import KernelError
from src.instances.codec import CodecError, detect_format, emit_dimacs, emit_edges, parse_dimacs, parse_edges
from src.instances.generator import clauses_for_ratio, gen_gnp, gen_ksat
from src.models.experiment import Heuristic, Problem, SolveMode
from src.models.instance import CnfInstance, Graph, InstanceError
from src.models.stats import STATS_CSV_COLUMNS, TreeStats
from src.solver.brute_force import BruteForceGuardError
from src.solver.col_engine import dpll_col
from src.solver.sat_engine import SolverError, dpll_count_sat, dpll_decide_sat

LOGGER = logging.getLogger("src.main")

HANDLED_ERRORS = (
    InstanceError,
    CodecError,
    SolverError,
    BruteForceGuardError,
    KernelError,
    DPMemoryError,
    RecursionCheckError,
    OptimizeError,
    BracketError,
    OdeError,
    ExperimentConfigError,
    CellTransitionError,
    SettingsLoadError,
    ValueError,
    OSError,
)

MODELS = ("uc-sat", "guc-sat", "col")


def _clause_count(args: argparse.Namespace) -> int:
    if args.m is not None:
        return args.m
    if args.alpha is not None:
        return clauses_for_ratio(args.n, args.alpha)
    raise ValueError("give --m or --alpha")


def _require_n(args: argparse.Namespace) -> int:
    if args.n is None:
        raise ValueError("--n is required")
    return args.n


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _cmd_gen_sat(args: argparse.Namespace, settings: Settings) -> int:
    n = _require_n(args)
    instance = gen_ksat(n, _clause_count(args), args.k, seed=args.seed, distinct=args.distinct)
    _write_text(Path(args.out), emit_dimacs(instance))
    print(f"wrote {args.out} n={instance.num_vars} m={instance.num_clauses} k={instance.k}")
    return 0


def _cmd_gen_graph(args: argparse.Namespace, settings: Settings) -> int:
    n = _require_n(args)
    if args.c is None:
        raise ValueError("--c is required")
    graph = gen_gnp(n, args.c, seed=args.seed)
    _write_text(Path(args.out), emit_edges(graph))
    print(f"wrote {args.out} n={graph.num_vertices} edges={graph.num_edges}")
    return 0


def _load_instance(args: argparse.Namespace) -> CnfInstance | Graph:
    if args.input:
        text = Path(args.input).read_text(encoding="utf-8")
        return parse_dimacs(text) if detect_format(text) == "cnf" else parse_edges(text)
    n = _require_n(args)
    if args.problem == Problem.COL.value:
        if args.c is None:
            raise ValueError("--c is required for coloring")
        return gen_gnp(n, args.c, seed=args.seed)
    return gen_ksat(n, _clause_count(args), args.k, seed=args.seed, distinct=args.distinct)


def _write_stats(path: Path, stats: TreeStats) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(STATS_CSV_COLUMNS)
        writer.writerows(stats.to_rows())


def _cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    instance = _load_instance(args)
    mode = SolveMode(args.mode)
    solver_seed = None if args.seed is None else np.random.SeedSequence([args.seed, 1])
    if isinstance(instance, Graph):
        result, stats = dpll_col(instance, mode, seed=solver_seed)
    elif mode is SolveMode.COUNT:
        result, stats = dpll_count_sat(instance, args.heuristic, seed=solver_seed)
    else:
        result, stats = dpll_decide_sat(instance, args.heuristic, seed=solver_seed)
    label = "count" if mode is SolveMode.COUNT else "satisfiable"
    print(f"{label}={result}")
    for key, value in stats.summary().items():
        print(f"{key}={value}")
    if args.out:
        _write_stats(Path(args.out), stats)
        print(f"wrote {args.out}")
    return 0


def _cmd_dp(args: argparse.Namespace, settings: Settings) -> int:
    n = _require_n(args)
    problem = Problem(args.problem)
    heuristic = Heuristic(args.heuristic)
    if problem is Problem.COL:
        if args.c is None:
            raise ValueError("--c is required for coloring")
        param = float(args.c)
        heuristic = Heuristic.GUC
    else:
        param = float(_clause_count(args))
    exp = settings.expectation
    prune = exp.default_prune if args.prune is None else args.prune
    table = dp_expect(
        n,
        param,
        dp_problem_for(problem, heuristic),
        prune=prune,
        c1_cap=exp.c1_cap,
        max_states=exp.max_states,
        log_space_above_n=exp.log_space_above_n,
    )
    for key, value in table.summary().items():
        print(f"{key}={value}")
    if args.out:
        prefix = Path(args.out)
        states = prefix.with_name(prefix.name + "_states.csv")
        profile = prefix.with_name(prefix.name + "_profile.csv")
        table.write_states_csv(states)
        table.write_profile_csv(profile)
        print(f"wrote {states}")
        print(f"wrote {profile}")
    return 0


def _parse_grid(spec: str) -> list[float]:
    """``lo:hi:count`` or a comma-separated list."""

    if ":" in spec:
        lo, hi, count = spec.split(":")
        return [float(x) for x in np.linspace(float(lo), float(hi), int(count))]
    return [float(x) for x in spec.split(",") if x.strip()]


def _cmd_omega(args: argparse.Namespace, settings: Settings) -> int:
    asym = settings.asymptotics
    model = args.model
    if args.table:
        grid = _parse_grid(args.table)
        out = Path(args.out or Path(settings.harness.report_dir) / f"growth_{model}.csv")
        if model == "col":
            write_curves_csv(out, col_curve_rows(grid, asym.grid_points), COL_COLUMNS)
        else:
            write_curves_csv(out, sat_curve_rows(grid, args.k, asym.grid_points), SAT_COLUMNS)
        print(f"wrote {out}")
        return 0

    if model == "uc-sat":
        if args.alpha is None:
            print(f"alpha_star={alpha_star(args.k, asym.grid_points, asym.golden_tol):.6f}")
            root = alpha_u(args.k, asym.alpha_bracket, asym.root_tol, asym.grid_points, asym.max_bracket_expansions)
            print(f"alpha_u={root:.6f}")
            return 0
        result = omega_c(args.alpha, args.k, asym.grid_points, asym.golden_tol)
        print(f"omega_s={omega_s(args.alpha, args.k):.6f} bits")
        print(f"first_moment={first_moment_exponent(args.alpha, args.k):.6f} bits")
        print(f"omega_c={result.value:.6f} bits argmax_t={result.argmax:.6f} boundary={result.boundary_flag}")
        if args.alpha > 0:
            print(f"omega_c_asym={omega_c_asym(args.alpha, args.k):.6f} bits")
        return 0

    if model == "guc-sat":
        if args.k != 3:
            raise ValueError("the GUC rate is available for k = 3 only")
        variant = GucVariant(args.variant)
        if args.alpha is None:
            print(f"alpha_u_guc={alpha_u_guc(variant, asym.alpha_bracket, asym.root_tol):.6f} variant={variant.value}")
            return 0
        result = omega_guc(
            args.alpha,
            variant,
            delta=asym.ode_delta,
            rtol=asym.ode_rtol,
            atol=asym.ode_atol,
            grid_points=asym.grid_points,
            tol=asym.golden_tol,
        )
        print(f"omega_s={omega_s(args.alpha, 3):.6f} bits")
        print(
            f"omega_g={result.value:.6f} bits argmax_y2={result.argmax:.6f} "
            f"boundary={result.boundary_flag} variant={variant.value}"
        )
        print(f"omega_g_asym={omega_guc_asym(args.alpha):.6f} bits")
        print(f"ode_accuracy={result.diagnostics['ode_accuracy']:.3g}")
        return 0

    if args.c is None:
        print(f"c_u={c_u_col(asym.c_bracket, asym.root_tol, asym.grid_points, asym.max_bracket_expansions):.6f}")
        return 0
    result = omega_col(args.c, asym.grid_points, asym.golden_tol)
    print(f"first_moment={col_first_moment(args.c):.6f} nats")
    print(f"omega_h={result.value:.6g} nats argmax_t={result.argmax:.6g} boundary={result.boundary_flag}")
    if args.c > 0:
        print(f"omega_h_asym={omega_col_asym(args.c, args.k):.6g} bits")
    return 0


def _cmd_experiment(args: argparse.Namespace, settings: Settings) -> int:
    if not args.config:
        raise ValueError("--config is required")
    config = load_experiment_config(Path(args.config))
    overrides = {}
    if args.samples is not None:
        overrides["samples"] = args.samples
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = config.model_validate({**config.model_dump(), **overrides})
    artifact = run_experiment(config, settings, Path(args.out) if args.out else None)
    print(f"wrote {artifact.path} rows={artifact.rows_written}")
    if artifact.failed_cells:
        print(f"failed cells: {artifact.failed_cells}", file=sys.stderr)
        return 1
    return 0


def _cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    results = run_checks(quick=args.quick, settings=settings)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "gen-sat": _cmd_gen_sat,
    "gen-graph": _cmd_gen_graph,
    "solve": _cmd_solve,
    "dp": _cmd_dp,
    "omega": _cmd_omega,
    "experiment": _cmd_experiment,
    "check": _cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpll-trees", description="Random DPLL search-tree statistics")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--settings", default=str(DEFAULT_SETTINGS_PATH), help="settings YAML")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--c", type=float)
        p.add_argument("--k", type=int, default=3)
        p.add_argument("--seed", type=int)
        p.add_argument("--out")

    p = sub.add_parser("gen-sat", help="write a random k-SAT formula in DIMACS")
    common(p)
    p.add_argument("--distinct", action="store_true", help="draw clauses without replacement")

    p = sub.add_parser("gen-graph", help="write a G(N, c/N) graph as an edge list")
    common(p)

    p = sub.add_parser("solve", help="run one instrumented DPLL solve")
    common(p)
    p.add_argument("--in", dest="input", help="DIMACS or edge-list file")
    p.add_argument("--problem", choices=[x.value for x in Problem], default=Problem.SAT.value)
    p.add_argument("--heuristic", choices=[x.value for x in Heuristic], default=Heuristic.UC.value)
    p.add_argument("--mode", choices=[x.value for x in SolveMode], default=SolveMode.COUNT.value)
    p.add_argument("--distinct", action="store_true")

    p = sub.add_parser("dp", help="exact expected tree statistics")
    common(p)
    p.add_argument("--problem", choices=[x.value for x in Problem], default=Problem.SAT.value)
    p.add_argument("--heuristic", choices=[x.value for x in Heuristic], default=Heuristic.UC.value)
    p.add_argument("--prune", type=float)

    p = sub.add_parser("omega", help="asymptotic growth rates and thresholds")
    common(p)
    p.add_argument("--model", choices=MODELS, default="uc-sat")
    p.add_argument("--variant", choices=[x.value for x in GucVariant], default=GucVariant.DERIVED.value)
    p.add_argument("--table", help="grid lo:hi:count or comma list; writes a growth-curve CSV")

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment config")
    p.add_argument("--config")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--quick", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        settings = load_settings(Path(args.settings))
        if args.command in {"gen-sat", "gen-graph"} and not args.out:
            raise ValueError("--out is required")
        return COMMANDS[args.command](args, settings)
    except HANDLED_ERRORS as exc:
        LOGGER.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
