"""
QuantumTruth - exact verification of quantized coordinate algebras
"""

import sys
import os
import argparse
from fractions import Fraction
from typing import List, Optional

from src.utils.logger import logger

try:
    # Relative imports for package execution (python -m src.main)
    from .config import config, VerificationProfile
    from .layers.algebra.errors import QuantumTruthError, ResourceError, UsageError
    from .layers.qgroups.catalog import KINDS, build
    from .layers.checks.base import CheckParams, aggregate_exit_code
    from .layers.checks.core import CHECK_IDS, Verifier
    from .layers.reporting.generator import STATUS_ICON, MultiFormatReporter
except ImportError:
    # Fallback for script execution (python src/main.py)
    sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    from src.config import config, VerificationProfile
    from src.layers.algebra.errors import QuantumTruthError, ResourceError, UsageError
    from src.layers.qgroups.catalog import KINDS, build
    from src.layers.checks.base import CheckParams, aggregate_exit_code
    from src.layers.checks.core import CHECK_IDS, Verifier
    from src.layers.reporting.generator import STATUS_ICON, MultiFormatReporter


def status(message: str):
    """Status lines go to stderr; stdout carries only the JSON report."""
    print(message, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="QuantumTruth: exact verification suites for quantum groups",
        epilog=f"Checks: {', '.join(CHECK_IDS)}"
    )
    parser.add_argument("check", nargs="?", help="Check id, or 'all' for a whole profile")

    # Parameters
    parser.add_argument("--n", type=int, default=2, help="Matrix size N (default: 2)")
    parser.add_argument("--q", default=str(config.numeric.q0),
                        help="Rational specialization point p/r in (0, 1) for numeric checks")
    parser.add_argument("--degree-cap", type=int, help="Completion degree cap (default: 2N + 2)")
    parser.add_argument("--threshold", type=int, action="append",
                        help="Filtration threshold M (repeatable)")
    parser.add_argument("--window", type=int, default=config.numeric.window,
                        help="Filtration window for λ_1 - λ_N and |λ_N|")
    parser.add_argument("--seed", type=int, default=config.numeric.seed,
                        help="Seed of randomized property tests")
    parser.add_argument("--profile", choices=[p.value for p in VerificationProfile], default="quick",
                        help="Profile for 'all': quick (N=2) or full (adds N=3, N=4 for ybe/hecke)")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes for 'all'")

    # Output
    parser.add_argument("--out", help="Write the JSON report to FILE instead of stdout")
    parser.add_argument("--csv", nargs="?", const="", metavar="FILE",
                        help="Write filtration tables as CSV (default: filtration.csv in the reports directory)")
    parser.add_argument("--dump-presentation", choices=KINDS, metavar="KIND",
                        help=f"Print the completed presentation of KIND ({', '.join(KINDS)}) at --n")
    parser.add_argument("--list", action="store_true", help="List the available checks")
    return parser


def params_from_args(args: argparse.Namespace) -> CheckParams:
    """
    Validate parsed arguments into CheckParams.

    Raises:
        UsageError: for values outside their range.
    """
    if args.n < 1:
        raise UsageError(f"--n must be positive, got {args.n}")
    try:
        q0 = Fraction(args.q)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--q must be a rational p/r, got {args.q!r}") from None
    if not 0 < q0 < 1:
        raise UsageError(f"--q must lie in (0, 1), got {q0}")
    if args.degree_cap is not None and args.degree_cap < 2:
        raise UsageError(f"--degree-cap must be at least 2, got {args.degree_cap}")
    if args.window < 0:
        raise UsageError(f"--window must be non-negative, got {args.window}")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be positive, got {args.jobs}")
    thresholds = args.threshold or list(config.numeric.thresholds)
    if any(m <= 0 for m in thresholds):
        raise UsageError("--threshold values must be positive")
    return CheckParams(
        n=args.n,
        q0=q0,
        degree_cap=args.degree_cap,
        thresholds=sorted(set(thresholds)),
        window=args.window,
        seed=args.seed,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    verifier = Verifier()

    if args.list:
        for cid in verifier.check_ids():
            check = verifier.checks[cid]
            marker = "" if check.is_available() else "  (unavailable)"
            print(f"  {cid:<16} {check.description}{marker}")
        return 0

    try:
        params = params_from_args(args)
        if args.degree_cap:
            config.limits.degree_cap_override = args.degree_cap
        if args.dump_presentation:
            print(build(args.dump_presentation, args.n).presentation.dump())
            return 0
        if not args.check:
            raise UsageError("Give a check id, 'all', --list or --dump-presentation")
        if args.check == "all":
            profile = VerificationProfile(args.profile)
            status(f"🔬 QuantumTruth | Profile: {profile.value.upper()} | Jobs: {args.jobs}")
            reports = verifier.run_all(profile, params, jobs=args.jobs)
        else:
            verifier.get(args.check)
            status(f"🔬 Running {args.check} (N={params.n})")
            reports = [verifier.run(args.check, params)]
    except UsageError as e:
        status(f"❌ {e}")
        return 2
    except ResourceError as e:
        status(f"⚠️ Resource cap exceeded: {e}")
        return 3
    except QuantumTruthError as e:
        logger.error(f"{type(e).__name__}: {e}")
        status(f"❌ {e}")
        return 1

    reporter = MultiFormatReporter()
    for report in reports:
        icon = STATUS_ICON.get(report.status, "")
        status(f"{icon} {report.check} (N={report.params.get('n')}): {report.status} in {report.elapsed_ms} ms")
    if args.check == "all":
        reporter.print_summary(reports)

    payload = reports if args.check == "all" else reports[0]
    if args.out:
        reporter.write_json(payload, args.out)
    else:
        print(reporter.to_json(payload))
    if args.csv is not None:
        reporter.write_csv(reports, args.csv or os.path.join(config.paths.reports_dir, "filtration.csv"))
    return aggregate_exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
