# src/reports/cli.py

import argparse
import sqlite3
import sys
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.boolean_cube.majority import majority, majority_level1_report
from src.boolean_cube.walsh import BooleanFunction, bh_functional_boolean, degree, sup_norm_boolean
from src.index_sets.certificates import surprise_certificate
from src.index_sets.multi_index import FamilyKind, count_exact, enumerate_family
from src.ksz_lab.boolean_search import ksz_boolean_search
from src.ksz_lab.trials import ksz_constant_sweep, ksz_trig_trial
from src.multipliers.bracket import MultiplierSpec, Space, multiplier_norm_bracket, sidon_estimate
from src.multipliers.kislyakov import MODES, kislyakov_check, monomial_weights
from src.multipliers.verdicts import Verdict, VerdictReport
from src.reports.registry import RegisteredCheck, assert_registry_complete, registered_checks
from src.reports.run_config import OUTPUT_FORMATS, RunConfig
from src.reports.writer import ReportWriter
from src.sequences.bohr import bohr_radius_upper
from src.sequences.monomial import boolean_mon_necessary, dirichlet_sigma_test, mon_criterion
from src.storage.sqlite_manager import SQLiteManager
from src.utils.errors import CapExceededError, CertificateError, ConfigError, DomainError, UsageError, WorkbenchError
from src.utils.logger import get_logger, set_log_level

logger = get_logger(__name__)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# verdict for a check that raised instead of reporting
ERROR_VERDICT = "error"

# flag dest -> RunConfig field
CONFIG_FLAGS = {
    "seed": "seed",
    "format": "output_format",
    "grid_cap": "grid_cap",
    "enum_cap": "enum_cap",
    "tol_abs": "tol_abs",
    "tol_rel": "tol_rel",
    "delta": "delta",
    "constant_C": "constant_C",
    "constant_gamma": "constant_gamma",
    "quick": "quick",
    "workers": "workers",
    "budget": "budget",
    "log_level": "log_level",
    "store_reports": "store_reports",
}


# -------------------------------------------------------------------------
# Parser
# -------------------------------------------------------------------------
def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run settings")
    g.add_argument("--seed", type=int, default=None, help="64-bit seed for every random draw")
    g.add_argument("--out", default=None, help="write the report stream to this file instead of stdout")
    g.add_argument("--format", choices=OUTPUT_FORMATS, default=None)
    g.add_argument("--grid-cap", dest="grid_cap", type=int, default=None)
    g.add_argument("--enum-cap", dest="enum_cap", type=int, default=None)
    g.add_argument("--tol-abs", dest="tol_abs", type=float, default=None)
    g.add_argument("--tol-rel", dest="tol_rel", type=float, default=None)
    g.add_argument("--delta", type=float, default=None, help="band half-width around 1 for mon verdicts")
    g.add_argument("--constant-C", dest="constant_C", type=float, default=None)
    g.add_argument("--constant-gamma", dest="constant_gamma", type=float, default=None)
    g.add_argument("--quick", action="store_const", const=True, default=None, help="scaled-down parameters")
    g.add_argument("--config", default=None, help="key=value run config file")
    g.add_argument("--workers", type=int, default=None)
    g.add_argument("--budget", type=int, default=None, help="candidate-search budget units")
    g.add_argument("--log-level", dest="log_level", default=None)
    g.add_argument("--no-store", dest="store_reports", action="store_const", const=False, default=None,
                   help="do not persist report entries to the SQLite cache")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="multiplier-workbench", description="Multiplier, Sidon and KSZ numerical workbench")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("count", parents=[common], help="cardinality of an index family")
    p.add_argument("--kind", required=True, help="lambda-le | lambda-eq | t-set | subsets-le | subsets-eq")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="dump the family file instead of the count")
    p.add_argument("--certificate", action="store_true", help="also report the |Lambda| surprise certificate")

    p = sub.add_parser("sidon", parents=[common], help="bracket for the p-Sidon constant")
    p.add_argument("--m", type=int, required=True, help="degree")
    p.add_argument("--n", type=int, required=True, help="variables (N on the cube)")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--boolean", action="store_true", help="Boolean cube instead of the torus")

    p = sub.add_parser("multiplier", parents=[common], help="multiplier norm bracket and inequality verdict")
    p.add_argument("--space", choices=["torus", "boolean"], default="torus")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--xi", default="1", help="constant weight or a file with one weight per line (family order)")
    p.add_argument("--z", type=_float_list, default=None, help="sequence for the rearrangement modes (xi_alpha = z^alpha)")
    p.add_argument("--mode", choices=sorted(MODES), default=None)

    p = sub.add_parser("ksz", parents=[common], help="random-sign supremum experiments")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--c", type=float, default=1.0, help="constant coefficient value")
    p.add_argument("--sweep", action="store_true", help="CSV table over --ms x --ns")
    p.add_argument("--ms", type=_int_list, default=[1, 2])
    p.add_argument("--ns", type=_int_list, default=[1, 2])
    p.add_argument("--boolean", action="store_true", help="sign search on the cube with c = const over all subsets")

    p = sub.add_parser("walsh", parents=[common], help="Walsh spectrum of a Boolean function")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--majority", type=int, help="odd N")
    src.add_argument("--table", help="Boolean function file (header 'N truth|walsh')")
    p.add_argument("--exact", action="store_true", help="exact rational coefficients")

    p = sub.add_parser("mon", parents=[common], help="monomial convergence criterion")
    p.add_argument("--generator", choices=["power", "primes", "const"], required=True)
    p.add_argument("--sigma", type=float, default=0.5)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--J", type=int, default=100_000, help="truncation length")
    p.add_argument("--boolean", action="store_true", help="also report the cube necessary conditions")

    p = sub.add_parser("bohr", parents=[common], help="Bohr radius upper bound from a Sidon bracket")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    sub.add_parser("verify-all", parents=[common], help="run every registered check")
    return parser


def load_run_config(args: argparse.Namespace) -> RunConfig:
    overrides = {field: getattr(args, flag, None) for flag, field in CONFIG_FLAGS.items()}
    return RunConfig.load(args.config, **overrides)


# -------------------------------------------------------------------------
# Subcommands
# -------------------------------------------------------------------------
def cmd_count(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    kind = FamilyKind.parse(args.kind)
    if args.enumerate:
        for line in enumerate_family(kind, args.m, args.n, cap=cfg.enum_cap).to_lines():
            writer.write_text(line)
    else:
        writer.write_text(str(count_exact(kind, args.m, args.n)))
    if not args.certificate:
        return []
    if kind is not FamilyKind.LAMBDA_LE:
        raise UsageError("--certificate applies to --kind lambda-le")
    cert = surprise_certificate(args.m, args.n)
    entry = VerdictReport.exact(
        True, lhs=float(cert.mid), rhs=float(cert.upper),
        check_id="index_sets.surprise_certificate", anchor="sqrt(1+(n-1)/m) <= |Lambda|^(1/2m) <= 2 sqrt(2e) sqrt(1+(n-1)/m)",
        space=kind.value, m=args.m, n=args.n, seed=cfg.seed, inputs=cert.to_dict(),
    ).to_entry()
    return [entry]


def cmd_sidon(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    space = Space.boolean(args.n, args.m, args.homogeneous) if args.boolean else Space.torus(args.m, args.n, args.homogeneous)
    est = sidon_estimate(space, args.p, cfg.budget, cfg.seed, cfg.constant_gamma, cfg.candidates_per_unit,
                         cfg.grid_cap, cfg.enum_cap, cfg.workers)
    report = VerdictReport.build(
        est.bracket.lower, 1.0, est.envelope, est.envelope, envelope=True,
        tol_abs=cfg.tol_abs, tol_rel=cfg.tol_rel,
        check_id="multipliers.sidon", anchor="chi_p <= gamma^m (n/m)^(m/r-1/2)",
        space=space.label, m=space.m, n=space.n, p=args.p, seed=cfg.seed,
        inputs=est.to_dict(), provenance={"bracket": est.bracket.method},
        notes=est.notes + est.bracket.notes,
    )
    return [report.to_entry()]


def _read_xi(text: str, space: Space, p: float, cfg: RunConfig) -> MultiplierSpec:
    try:
        constant = float(text)
    except ValueError:
        constant = None
    if constant is not None:
        return MultiplierSpec.build(space, constant, p, cap=cfg.enum_cap)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"--xi '{text}' is neither a number nor an existing file")
    weights = np.loadtxt(path, dtype=float, ndmin=1)
    return MultiplierSpec.build(space, weights, p, cap=cfg.enum_cap)


def cmd_multiplier(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    if args.space == "boolean":
        space = Space.boolean(args.n, args.m, args.homogeneous)
    else:
        space = Space.torus(args.m, args.n, args.homogeneous)
    mode = args.mode or ("cube" if args.space == "boolean" else "torus")
    spec = _read_xi(args.xi, space, args.p, cfg)
    if args.z is not None:
        spec = MultiplierSpec(space, spec.family, monomial_weights(spec, args.z), args.p)
    bracket = multiplier_norm_bracket(spec, cfg.budget, cfg.seed, cfg.candidates_per_unit, cfg.grid_cap, cfg.workers)
    report = kislyakov_check(spec, mode, bracket, cfg.constant_C, z=args.z, tol_abs=cfg.tol_abs, tol_rel=cfg.tol_rel)
    report.check_id = f"multipliers.{mode}"
    report.seed = cfg.seed
    report.inputs["bracket"] = bracket.to_dict()
    return [report.to_entry()]


def cmd_ksz(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    if args.sweep:
        trials = args.trials or (20 if cfg.quick else 200)
        frame = ksz_constant_sweep(args.ms, args.ns, trials, cfg.seed, lambda m, n: args.c, cfg.grid_cap, cfg.workers)
        writer.write_text(frame.to_csv(index=False, lineterminator="\n"))
        return []
    if args.boolean:
        trials = args.trials or (1000 if cfg.quick else 10_000)
        result = ksz_boolean_search(np.full(1 << args.n, args.c), args.n, trials, cfg.seed)
        result.report.check_id = "ksz_lab.boolean_search"
        result.report.inputs["ratio"] = result.ratio
        return [result.report.to_entry()]
    trials = args.trials or (100 if cfg.quick else 1000)
    trial = ksz_trig_trial(args.m, args.n, args.c, trials, cfg.seed, cfg.grid_cap, cfg.workers)
    report = VerdictReport(
        lhs=trial.mean_sup,
        rhs_lower=trial.scale,
        rhs_upper=trial.scale,
        constant_used=trial.constant_hat,
        verdict=Verdict.INCONCLUSIVE,
        notes=["empirical constant only; the universal constant is not pinned"],
        check_id="ksz_lab.trig_trial",
        anchor="E sup|sum eps c z^alpha| <= C sqrt(n log(1+m)) ||c||_2",
        space="torus(T)", m=args.m, n=args.n, seed=cfg.seed,
        inputs={**trial.summary(), "K": trial.K, "error_bar": trial.error_bar},
    )
    return [report.to_entry()]


def cmd_walsh(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    f = majority(args.majority) if args.majority is not None else BooleanFunction.read(args.table)
    walsh = f.walsh
    d = degree(f)
    inputs: Dict[str, Any] = {
        "N": f.N,
        "degree": d,
        "sup": sup_norm_boolean(f),
        "bh_functional": bh_functional_boolean(f, max(d, 1)),
        "level_weights": f.level_weights().tolist(),
    }
    if args.exact:
        if not np.array_equal(f.truth_table, np.rint(f.truth_table)):
            raise UsageError("--exact needs an integer-valued truth table")
        exact = f.walsh_exact()
        inputs["coefficients"] = {str(mask): str(v) for mask, v in enumerate(exact) if v != 0}
    else:
        inputs["coefficients"] = {str(mask): float(v) for mask, v in enumerate(walsh) if abs(v) > 1e-12}
    if args.majority is not None:
        inputs["level1"] = majority_level1_report(args.majority).to_dict()
    energy = float(np.sum(walsh**2))
    mean_square = float(np.mean(f.truth_table**2))
    report = VerdictReport.exact(
        abs(energy - mean_square) <= cfg.tol_abs + cfg.tol_rel * mean_square, lhs=energy, rhs=mean_square,
        check_id="boolean_cube.walsh", anchor="sum_S f^(S)^2 = E f^2",
        space="boolean", n=f.N, seed=cfg.seed, inputs=inputs,
    )
    return [report.to_entry()]


def cmd_mon(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    J = args.J
    if args.generator == "primes":
        verdict = dirichlet_sigma_test(args.sigma, J, cfg.delta, cfg.trend_tol)
        z = None
    else:
        j = np.arange(1, J + 1, dtype=float)
        z = args.c * j ** (-args.sigma) if args.generator == "power" else np.full(J, args.c)
        verdict = mon_criterion(z, J, cfg.delta, cfg.trend_tol)
    inputs = {"generator": args.generator, "sigma": args.sigma, "c": args.c, "J": J, **verdict.to_dict()}
    if args.boolean and z is not None:
        inputs["boolean_necessary"] = boolean_mon_necessary(z, growth_slope=cfg.growth_slope).to_dict()
    entry = {
        "check_id": "sequences.mon",
        "anchor": "limsup (1/log n) sum_{j<=n} (z*_j)^2 < 1",
        "space": "sequence",
        "verdict": verdict.classification,
        "seed": cfg.seed,
        "inputs": inputs,
        "notes": verdict.notes,
    }
    return [entry]


def cmd_bohr(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    est = sidon_estimate(Space.torus(args.m, args.n, homogeneous=True), 1.0, cfg.budget, cfg.seed, cfg.constant_gamma,
                         cfg.candidates_per_unit, cfg.grid_cap, cfg.enum_cap, cfg.workers)
    bound = bohr_radius_upper(args.n, args.m, est.bracket)
    report = VerdictReport.exact(
        bound.bound <= 1.0, lhs=bound.bound, rhs=1.0,
        check_id="sequences.bohr", anchor="K_n <= chi(m, n)^(-1/m)",
        space=est.space.label, m=args.m, n=args.n, p=1.0, seed=cfg.seed,
        inputs={**bound.to_dict(), "sidon": est.to_dict()},
    )
    return [report.to_entry()]


def _run_check(check: RegisteredCheck, cfg: RunConfig) -> List[Dict[str, Any]]:
    logger.info(f"▶ {check.check_id}")
    try:
        reports = check.func(cfg)
    except CapExceededError as e:
        logger.warning(f"{check.check_id} hit a cap: {e}")
        return [{
            "check_id": check.check_id, "anchor": check.anchor, "verdict": Verdict.INCONCLUSIVE.value,
            "seed": cfg.seed, "inputs": {"would_be": e.would_be, "cap": e.cap}, "notes": [str(e)],
        }]
    except WorkbenchError as e:
        logger.error(f"❌ {check.check_id} failed: {e}")
        return [{
            "check_id": check.check_id, "anchor": check.anchor, "verdict": ERROR_VERDICT,
            "seed": cfg.seed, "inputs": {"quick": cfg.quick, "error": type(e).__name__}, "notes": [str(e)],
        }]
    entries = []
    for report in reports:
        entry = report.to_entry()
        entry["check_id"] = entry.get("check_id") or check.check_id
        entry["anchor"] = entry.get("anchor") or check.anchor
        if entry.get("seed") is None:
            entry["seed"] = cfg.seed
        entries.append(entry)
    return entries


def cmd_verify_all(args, cfg: RunConfig, writer: ReportWriter) -> List[Dict[str, Any]]:
    assert_registry_complete()
    checks = registered_checks()
    logger.info(f"Running {len(checks)} checks (seed={cfg.seed}, quick={cfg.quick}, workers={cfg.workers})")
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            batches = list(pool.map(lambda c: _run_check(c, cfg), checks))
    else:
        batches = [_run_check(c, cfg) for c in checks]
    return [entry for batch in batches for entry in batch]


COMMANDS = {
    "count": cmd_count,
    "sidon": cmd_sidon,
    "multiplier": cmd_multiplier,
    "ksz": cmd_ksz,
    "walsh": cmd_walsh,
    "mon": cmd_mon,
    "bohr": cmd_bohr,
    "verify-all": cmd_verify_all,
}


# -------------------------------------------------------------------------
# Entry point
# -------------------------------------------------------------------------
def store_entries(entries: Sequence[Dict[str, Any]], seed: int) -> Optional[str]:
    """Persist entries under a fresh run id; storage problems are logged, never fatal."""
    if not entries:
        return None
    run_id = uuid.uuid4().hex
    try:
        store = SQLiteManager()
        for entry in entries:
            store.insert_report(run_id, entry)
        store.record_run(run_id, seed)
    except sqlite3.Error as e:
        logger.warning(f"Could not store reports: {e}")
        return None
    logger.info(f"💾 Stored {len(entries)} report entries as run {run_id}")
    return run_id


def exit_status(entries: Sequence[Dict[str, Any]]) -> int:
    if any(e.get("verdict") == ERROR_VERDICT for e in entries):
        return EXIT_INTERNAL
    if any(e.get("verdict") == Verdict.COUNTEREXAMPLE.value for e in entries):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        cfg = load_run_config(args)
    except ConfigError as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    set_log_level(cfg.log_level)

    try:
        with ReportWriter(cfg.output_format, args.out, stream) as writer:
            entries = COMMANDS[args.command](args, cfg, writer)
            writer.write_all(entries)
    except CertificateError as e:
        logger.error(f"❌ Internal certificate failure: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ConfigError, DomainError, CapExceededError) as e:
        logger.error(f"❌ {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.store_reports:
        store_entries(entries, cfg.seed)
    status = exit_status(entries)
    logger.info(f"Done: {len(entries)} entries, exit {status}")
    return status


def main() -> None:
    sys.exit(run())
