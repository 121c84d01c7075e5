import argparse
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv

from gpc.__version__ import __version__
from gpc.catalog import list_scenarios, primes_profile, run_scenario, scenario_to_dict, summarize
from gpc.catalog.scenarios import SCENARIOS
from gpc.config import (
    DEFAULT_MAX_SWEEPS,
    DEFAULT_SEED,
    DEFAULT_STARTS,
    DEFAULT_TOL_ENT,
    DEFAULT_TOL_FACT,
    DEFAULT_UNIVERSAL_TRIALS,
    DEFAULT_WORKERS,
    PRIME_DEFAULTS,
    SEED_ENV_VAR,
    UNIVERSALITY_TOL,
    get_export_path
)
from gpc.factorizers import AlsConfig, Tolerances, classify, classify_bipartitions
from gpc.mixed import DensityMatrix, ensemble_to_density, ppt_witness, separable_companion
from gpc.products import GeneralProduct, apply, parse_builtin, universal_map
from gpc.utils.errors import FileAccessError, GpcError, InputError, KernelError
from gpc.utils.linalg import kron_all
from gpc.utils.logging_utils import setup_logging
from gpc.utils.serialization import (
    load_ensemble,
    load_product,
    load_state,
    report_to_dict,
    reports_to_list,
    to_jsonable,
    witness_to_dict,
    write_json
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_KERNEL = 2
EXIT_CHECK_FAILED = 3
RECONSTRUCT_TOL = 1e-10


class CliParser(argparse.ArgumentParser):
    """Argument errors become InputError so they share the exit-1 path"""

    def error(self, message):
        raise InputError(message, field="argv")


def load_product_source(source: str) -> GeneralProduct:
    """``builtin:NAME(args)`` or a product JSON path"""
    if source.startswith("builtin:"):
        return parse_builtin(source)
    return load_product(source)


def file_stem(p: GeneralProduct) -> str:
    """wedge(2) -> wedge_2, for export file names"""
    return (p.name or "product").replace("(", "_").replace(")", "").replace(",", "_")


def parse_params(items: Optional[List[str]]) -> Dict[str, Any]:
    """KEY=VALUE pairs; values are read as int, then float"""
    params = {}
    for item in items or []:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise InputError(f"expected KEY=VALUE, got '{item}'", field="--param")
        try:
            params[key] = int(raw)
        except ValueError:
            try:
                params[key] = float(raw)
            except ValueError:
                raise InputError(f"value for {key} must be numeric, got '{raw}'", field="--param")
    return params


class FactorizationManager:
    def __init__(self, argv: Optional[List[str]] = None):
        self.argv = list(sys.argv[1:] if argv is None else argv)
        self.setup_environment()

    def setup_environment(self):
        """Setup environment variables"""
        load_dotenv()
        setup_logging()

        raw_seed = os.getenv(SEED_ENV_VAR)
        self.env_seed = None
        if raw_seed:
            try:
                self.env_seed = int(raw_seed)
            except ValueError:
                raise InputError(f"must be an unsigned integer, got '{raw_seed}'", field=SEED_ENV_VAR)

    def resolve_seed(self, flag_seed: Optional[int]) -> int:
        if flag_seed is not None:
            return flag_seed
        if self.env_seed is not None:
            return self.env_seed
        return DEFAULT_SEED

    def als_config(self, args) -> AlsConfig:
        return AlsConfig(
            starts=args.starts,
            max_sweeps=args.max_sweeps,
            seed=self.resolve_seed(args.seed),
            workers=args.workers,
        )

    @staticmethod
    def tolerances(args) -> Tolerances:
        return Tolerances(tol_fact=args.tol_fact, tol_ent=args.tol_ent)

    @staticmethod
    def output_path(out: Optional[str], data_type: str, **fields) -> Path:
        """--out if given, else the export location for the data type"""
        return Path(out) if out else get_export_path(data_type, **fields)

    def write_output(self, data: Any, path: Path) -> Path:
        """Report plus a ``.meta.json`` sidecar holding the run timestamp and argv"""
        write_json(data, path)
        write_json(
            {
                "created_at": datetime.now(timezone.utc).isoformat(),
                "argv": self.argv,
                "tool_version": __version__,
            },
            path.with_suffix(".meta.json"),
        )
        return path

    # Subcommands

    def validate(self, args) -> int:
        p = load_product_source(args.product)
        lmap = universal_map(p)
        injective = lmap.is_injective()
        summary = {
            "name": p.describe(),
            "arity": p.arity,
            "input_dims": list(p.input_dims),
            "output_dim": p.output_dim,
            "nnz": p.nnz,
            "injective": injective,
        }
        if p.input_size <= p.output_dim:
            summary["rank"] = lmap.rank()
        for key, value in summary.items():
            text = str(value).lower() if isinstance(value, bool) else value
            print(f"{key}: {text}")
        if args.out:
            self.write_output(summary, Path(args.out))
        return EXIT_OK

    def factorize(self, args) -> int:
        p = load_product_source(args.product)
        target = load_state(args.state)
        cfg = self.als_config(args)
        tolerances = self.tolerances(args)

        if args.bipartitions:
            reports = classify_bipartitions(p, target, cfg, tolerances)
            data = {"tool_version": __version__, "bipartitions": reports_to_list(reports)}
            for cut, report in reports.items():
                print(f"{cut}: {report.verdict.value} (residual {report.relative_residual:.6g})")
        else:
            report = classify(p, target, cfg, tolerances)
            data = report_to_dict(report)
            print(f"verdict: {report.verdict.value}")
            print(f"relative_residual: {report.relative_residual:.6g}")

        path = self.write_output(data, self.output_path(args.out, "report", name=file_stem(p)))
        print(f"report: {path}")
        return EXIT_OK

    def universal_check(self, args) -> int:
        if args.trials < 1:
            raise InputError(f"must be a positive integer, got {args.trials}", field="--trials")
        p = load_product_source(args.product)
        seed = self.resolve_seed(args.seed)
        rng = np.random.default_rng(seed)
        matrix = universal_map(p).matrix

        max_deviation = 0.0
        for _ in range(args.trials):
            factors = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in p.input_dims]
            deviation = np.linalg.norm(apply(p, factors).amplitudes - matrix @ kron_all(factors))
            max_deviation = max(max_deviation, float(deviation))

        passed = max_deviation <= UNIVERSALITY_TOL
        summary = {
            "tool_version": __version__,
            "product": p.describe(),
            "trials": args.trials,
            "seed": seed,
            "max_deviation": max_deviation,
            "tolerance": UNIVERSALITY_TOL,
            "passed": passed,
        }
        print(f"max deviation: {max_deviation:.3e} over {args.trials} trials")
        self.write_output(summary, self.output_path(args.out, "universal", name=file_stem(p)))
        return EXIT_OK if passed else EXIT_CHECK_FAILED

    def catalog(self, args) -> int:
        if args.action == "list":
            for info in list_scenarios():
                print(f"{info.name}: {info.product} -> {info.expected_verdict}")
            return EXIT_OK

        overrides = parse_params(args.param)
        for key in ("seed", "starts", "tol_fact", "tol_ent"):
            value = getattr(args, key)
            if value is not None:
                overrides[key] = value
        if "seed" not in overrides and self.env_seed is not None:
            overrides["seed"] = self.env_seed

        if args.all == bool(args.name):
            raise InputError("give exactly one of a scenario NAME or --all", field="catalog run")
        names = list(SCENARIOS) if args.all else [args.name]
        # Size parameters only apply to the scenario that declares them
        results = [
            run_scenario(name, overrides if not args.all else {
                k: v for k, v in overrides.items() if k in SCENARIOS[name].resolve()
            })
            for name in names
        ]

        summary = summarize(results)
        print(summary.to_string(index=False))
        name = "all" if args.all else args.name
        if args.format == "csv":
            path = Path(args.out) if args.out else get_export_path("catalog", name=name).with_suffix(".csv")
            path.parent.mkdir(parents=True, exist_ok=True)
            summary.to_csv(path, index=False)
        elif args.all:
            self.write_output(
                {"scenarios": [scenario_to_dict(r) for r in results]},
                self.output_path(args.out, "catalog", name=name),
            )
        else:
            self.write_output(scenario_to_dict(results[0]), self.output_path(args.out, "catalog", name=name))

        return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED

    def primes(self, args) -> int:
        profile = primes_profile(args.max)
        path = self.output_path(args.out, "primes", n_max=args.max, ext=args.format)
        if args.format == "csv":
            path.parent.mkdir(parents=True, exist_ok=True)
            profile.to_csv(path, index=False, encoding="utf-8")
        else:
            self.write_output({"n_max": args.max, "rows": profile.to_dict(orient="records")}, path)
        print(f"{len(profile)} rows, {int((profile['c_q'] == 0).sum())} zero amplitudes -> {path}")
        return EXIT_OK

    def mixed(self, args) -> int:
        p = load_product_source(args.product)
        if args.check == "ppt" and args.ensemble is None and args.state is None:
            raise InputError("ppt needs --ensemble or --state", field="mixed")
        if args.check == "reconstruct" and args.ensemble is None:
            raise InputError("reconstruct needs --ensemble", field="mixed")
        path = self.output_path(args.out, "mixed", check=args.check, name=file_stem(p))

        if args.check == "ppt":
            if args.ensemble is not None:
                rho = ensemble_to_density(p, load_ensemble(args.ensemble))
            else:
                rho = DensityMatrix.pure(load_state(args.state))
            result = ppt_witness(p, rho)
            print(f"outcome: {result.outcome.value} (conclusive: {str(result.conclusive).lower()})")
            self.write_output(witness_to_dict(result), path)
            return EXIT_OK

        sigma, check = separable_companion(p, load_ensemble(args.ensemble))
        passed = check <= RECONSTRUCT_TOL
        summary = {
            "tool_version": __version__,
            "product": p.describe(),
            "check": check,
            "tolerance": RECONSTRUCT_TOL,
            "sigma_prime_trace": sigma.trace,
            "passed": passed,
        }
        print(f"reconstruction check: {check:.3e}")
        self.write_output(to_jsonable(summary), path)
        return EXIT_OK if passed else EXIT_CHECK_FAILED

    def run(self, args) -> int:
        handlers = {
            "validate": self.validate,
            "factorize": self.factorize,
            "universal-check": self.universal_check,
            "catalog": self.catalog,
            "primes": self.primes,
            "mixed": self.mixed,
        }
        return handlers[args.command](args)


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="gpc", description="Decide and quantify factorizability under general products")
    parser.add_argument("--version", action="version", version=f"gpc {__version__}")
    parser.add_argument("--log-level", default=None, help="Overrides GPC_LOG_LEVEL")

    solver = CliParser(add_help=False)
    solver.add_argument("--tol-fact", type=float, default=DEFAULT_TOL_FACT)
    solver.add_argument("--tol-ent", type=float, default=DEFAULT_TOL_ENT)
    solver.add_argument("--starts", type=int, default=DEFAULT_STARTS)
    solver.add_argument("--max-sweeps", type=int, default=DEFAULT_MAX_SWEEPS)
    solver.add_argument("--workers", type=int, default=DEFAULT_WORKERS)

    output = CliParser(add_help=False)
    output.add_argument("--out", default=None)
    output.add_argument("--seed", type=int, default=None)

    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", parents=[output])
    validate.add_argument("--product", required=True)

    factorize = commands.add_parser("factorize", parents=[solver, output])
    factorize.add_argument("--product", required=True)
    factorize.add_argument("--state", required=True)
    factorize.add_argument("--bipartitions", action="store_true", help="Classify every cut of an arity-3 product")

    universal = commands.add_parser("universal-check", parents=[output])
    universal.add_argument("--product", required=True)
    universal.add_argument("--trials", type=int, default=DEFAULT_UNIVERSAL_TRIALS)

    catalog = commands.add_parser("catalog", parents=[output])
    catalog.add_argument("action", choices=["list", "run"])
    catalog.add_argument("name", nargs="?", default=None)
    catalog.add_argument("--all", action="store_true")
    catalog.add_argument("--param", action="append", metavar="KEY=VALUE")
    catalog.add_argument("--starts", type=int, default=None)
    catalog.add_argument("--tol-fact", type=float, default=None)
    catalog.add_argument("--tol-ent", type=float, default=None)
    catalog.add_argument("--format", choices=["json", "csv"], default="json")

    primes = commands.add_parser("primes", parents=[output])
    primes.add_argument("--max", type=int, default=PRIME_DEFAULTS["n_max"])
    primes.add_argument("--format", choices=["csv", "json"], default="csv")

    mixed = commands.add_parser("mixed", parents=[output])
    mixed.add_argument("--check", choices=["ppt", "reconstruct"], required=True)
    mixed.add_argument("--product", required=True)
    mixed.add_argument("--ensemble", default=None)
    mixed.add_argument("--state", default=None)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        manager = FactorizationManager(argv)
        if args.log_level:
            setup_logging(args.log_level)
        return manager.run(args)
    except InputError as e:
        print(e.one_line(), file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        error = FileAccessError(e.strerror or str(e), field=e.filename and str(e.filename))
        print(error.one_line(), file=sys.stderr)
        return EXIT_INPUT
    except KernelError as e:
        logger.error(f"numerical kernel failed: {e}")
        print(e.one_line(), file=sys.stderr)
        return EXIT_KERNEL
    except GpcError as e:
        print(e.one_line(), file=sys.stderr)
        return EXIT_KERNEL


if __name__ == "__main__":
    sys.exit(main())
