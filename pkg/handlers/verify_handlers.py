"""The verify command: run identity suites and print their reports."""
import logging
import sys

import click

from core.exceptions import ArctanPowError, EmptyGridError
from core.identities import SUITES, run_suites
from formatters import FORMATS, render_verify_reports

logger = logging.getLogger(__name__)


@click.command("verify")
@click.argument("suites", nargs=-1, type=click.Choice(["all", *SUITES]))
@click.option("--kmax", "k_max", type=click.IntRange(min=0), default=None, help="Override k_max in every suite that has one.")
@click.option("--nmax", "n_max", type=click.IntRange(min=0), default=None, help="Override n_max.")
@click.option("--mmax", "m_max", type=click.IntRange(min=1), default=None, help="Override m_max.")
@click.option("--order", type=click.IntRange(min=1), default=None, help="Override the truncation order.")
@click.option("--fast", is_flag=True, help="Shrink every grid for smoke runs.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Exact suites run in parallel.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
def verify_command(suites, k_max, n_max, m_max, order, fast, jobs, fmt):
    """
    Run verification suites (default: all) and exit 1 if any fails.

    Examples:

        arctanpow verify all --fast

        arctanpow verify theorem1 --kmax 100
    """
    names = None if not suites or "all" in suites else list(dict.fromkeys(suites))
    overrides = {"k_max": k_max, "n_max": n_max, "m_max": m_max, "order": order}
    try:
        reports = run_suites(names, jobs=jobs, overrides=overrides, fast=fast)
    except EmptyGridError as e:
        raise click.UsageError(str(e))
    except ArctanPowError as e:
        logger.error(f"Verification aborted: {e}")
        sys.exit(1)

    click.echo(render_verify_reports(reports, fmt))
    failed = [report.identity for report in reports if not report.passed]
    if failed:
        logger.error(f"Failed suites: {', '.join(failed)}")
        sys.exit(1)
