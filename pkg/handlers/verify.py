import argparse
import logging

from models.report import VerifyReport
from services.groebner import GroebnerEngine
from services.verification import CheckContext, run_checks
from settings import settings
from utils.router import Router, argument

logger = logging.getLogger(__name__)
router = Router()


@router.command("verify-paper", arguments=[argument("--only", default=None, help="префикс имени проверки")])
def cmd_verify(args: argparse.Namespace, seed: int, engine: GroebnerEngine) -> VerifyReport:
    """Повторный расчёт всех проверяемых утверждений с отчётом pass/fail/discrepancy-noted"""
    ctx = CheckContext(seed=seed, samples=args.samples or 100, engine=engine, survey_bound=settings.survey_bound)
    report = run_checks(ctx, args.only)
    logger.info(f"Verification finished: {report.counts}")
    if not report.checks:
        logger.warning(f"No check matches the prefix {args.only!r}")
    return report
