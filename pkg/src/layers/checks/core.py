"""
Verifier Module.

Orchestrates the checks: lookup by id, per-check error isolation, and
profile runs with optional worker processes.
"""

import time
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from src.config import config, VerificationProfile
from src.utils.logger import logger
from src.layers.algebra.errors import CompletionError, QuantumTruthError, ResourceError, UsageError
from src.layers.casimir.base import serialize

from .base import ERROR, FAIL, Check, CheckParams, CheckReport

# aggregation order of every report
CHECK_IDS = (
    "ybe", "hecke", "pbw-confluence", "det", "det-pairing", "glr-star",
    "re-embed", "cholesky", "iso-ut", "pairing-ut", "ad-coaction",
    "bk", "ch", "newton-central", "hc", "ehc", "l-family", "bn-slice",
    "bi-commute", "qr-inject", "rep-dims", "filtration", "spectrum",
)


class Verifier:
    """
    Main verification engine.
    Maps check ids to checks and turns every outcome into a CheckReport.
    """

    def __init__(self):
        self.checks: Dict[str, Check] = {}
        self._load_checks()

    def _load_checks(self):
        """Load all checks into a map."""
        try:
            from .algebra import get_algebra_checks
            from .maps import get_map_checks
            from .casimir import get_casimir_checks
            from .representations import get_representation_checks

            all_getters = [
                get_algebra_checks,
                get_map_checks,
                get_casimir_checks,
                get_representation_checks
            ]

            for getter in all_getters:
                for check in getter():
                    self.checks[check.check_id] = check

        except ImportError as e:
            logger.warning(f"Could not load some checks: {e}")

    def check_ids(self) -> List[str]:
        return [cid for cid in CHECK_IDS if cid in self.checks]

    def get(self, check_id: str) -> Check:
        try:
            return self.checks[check_id]
        except KeyError:
            raise UsageError(
                f"Unknown check {check_id!r}; expected one of {', '.join(CHECK_IDS)}"
            ) from None

    def run(self, check_id: str, params: Optional[CheckParams] = None) -> CheckReport:
        """
        Run one check.

        Args:
            check_id (str): One of CHECK_IDS.
            params (CheckParams): Inputs; defaults from config.

        Returns:
            CheckReport: pass, fail (library error or failed identity) or error.

        Raises:
            UsageError: for an unknown check id.
        """
        check = self.get(check_id)
        params = params or CheckParams()
        names = check.param_names
        if not check.is_available():
            missing = ", ".join(check.get_required_libraries())
            logger.warning(f"Check {check_id} unavailable (requires {missing})")
            return CheckReport(check_id, params.to_dict(names), ERROR,
                               witness={"error": f"requires {missing}"})

        logger.info(f"Running {check_id} (N={params.n})")
        start = time.perf_counter()
        try:
            report = check.run(params)
        except ResourceError as e:
            logger.error(f"Check {check_id} exceeded a resource cap: {e}")
            report = CheckReport(check_id, params.to_dict(names), ERROR,
                                 witness={"error": type(e).__name__, "message": str(e)},
                                 resource_exceeded=True)
        except QuantumTruthError as e:
            logger.error(f"Check {check_id} failed: {type(e).__name__}")
            witness = {"error": type(e).__name__, "message": str(e)}
            if isinstance(e, CompletionError) and e.overlap is not None:
                witness["overlap"] = str(e.overlap)
            report = CheckReport(check_id, params.to_dict(names), FAIL, witness=witness)
        except Exception as e:
            logger.error(f"Check {check_id} failed: {e}", exc_info=True)
            report = CheckReport(check_id, params.to_dict(names), ERROR,
                                 witness={"error": type(e).__name__, "message": str(e)})
        if report.elapsed_ms == 0:
            report.elapsed_ms = int((time.perf_counter() - start) * 1000)

        if report.status == FAIL:
            failures = report.details.failures if report.details else []
            logger.error(f"Check {check_id} (N={params.n}) failed with {len(failures) or 1} failure(s)")
        else:
            logger.info(f"Check {check_id} (N={params.n}): {report.status} in {report.elapsed_ms} ms")
        return report

    def plan(self, profile: VerificationProfile, params: CheckParams) -> List[Tuple[str, CheckParams]]:
        """(check id, params) pairs of a profile, in report order."""
        return [(cid, params.with_n(n))
                for cid in self.check_ids()
                for n in config.sizes_for(profile, cid)]

    def run_all(self, profile: VerificationProfile = VerificationProfile.QUICK,
                params: Optional[CheckParams] = None, jobs: int = 1,
                progress: bool = True) -> List[CheckReport]:
        """
        Run every check of a profile.

        Worker processes only change the wall time; reports come back in
        plan order.
        """
        params = params or CheckParams()
        tasks = self.plan(profile, params)
        logger.info(f"Running {len(tasks)} checks ({profile.value} profile, {jobs} job(s))")
        if jobs <= 1:
            return [self.run(cid, p) for cid, p in tqdm(tasks, desc="Checks", disable=not progress)]

        with Pool(processes=jobs) as pool:
            pending = [pool.apply_async(_run_in_worker, (cid, p)) for cid, p in tasks]
            pool.close()
            reports = [job.get() for job in tqdm(pending, desc="Checks", disable=not progress)]
            pool.join()
        return reports


def _run_in_worker(check_id: str, params: CheckParams) -> CheckReport:
    if params.degree_cap:
        config.limits.degree_cap_override = params.degree_cap
    report = Verifier().run(check_id, params)
    # exact scalars do not cross process boundaries
    if report.details is not None:
        report.details.metrics = serialize(report.details.metrics)
    return report
