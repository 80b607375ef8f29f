"""Commands that print or export coefficient tables."""
import logging
import sys

import click

from core.coeffs import cross_check_triangle, triangle_records
from core.combinatorics import p_records, stirling_records
from core.exceptions import ArctanPowError
from formatters import FORMATS, render_records
from utils.file_manager import FileManager

logger = logging.getLogger(__name__)

COEFF_COLUMNS = ["k", "n", "t"]
STIRLING_COLUMNS = ["n", "m", "s"]
P_COLUMNS = ["m", "l", "n", "p"]


@click.command("coeffs")
@click.option("--kmax", "k_max", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--nmax", "n_max", type=click.IntRange(min=0), default=5, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option(
    "--check/--no-check",
    default=True,
    show_default=True,
    help="Cross-check the update, closed-form and five-term routes before printing.",
)
def coeffs_command(k_max: int, n_max: int, fmt: str, check: bool):
    """
    Print the triangle t_k(n) for k <= KMAX and n <= NMAX.

    Rows are ordered by n, then k; values are exact fractions.

    Examples:

        arctanpow coeffs --kmax 2 --nmax 1 --format csv
    """
    try:
        if check:
            cross_check_triangle(k_max, n_max)
        records = triangle_records(k_max, n_max)
    except ArctanPowError as e:
        logger.error(f"Coefficient table failed: {e}")
        sys.exit(1)
    click.echo(render_records(records, COEFF_COLUMNS, fmt))


def _export_records(table_name: str, k_max: int, n_max: int, m_max: int):
    if table_name == "coeffs":
        cross_check_triangle(k_max, n_max)
        return triangle_records(k_max, n_max), COEFF_COLUMNS
    if table_name == "stirling":
        return stirling_records(n_max), STIRLING_COLUMNS
    return p_records(m_max), P_COLUMNS


@click.command("export")
@click.argument("table_name", type=click.Choice(["coeffs", "stirling", "p"]))
@click.option("--kmax", "k_max", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--nmax", "n_max", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--mmax", "m_max", type=click.IntRange(min=1), default=14, show_default=True)
@click.option("--format", "fmt", type=click.Choice(sorted(FileManager.ALLOWED_FORMATS)), default="csv", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Target file (.csv or .json).")
def export_command(table_name: str, k_max: int, n_max: int, m_max: int, fmt: str, output: str):
    """
    Write a coefficient, Stirling or p table to a file.

    Without --output the file goes to ARCTANPOW_OUTPUT_DIR (default: reports/).
    """
    if output:
        if not FileManager.is_valid_output(output):
            raise click.BadParameter("output file must end in .csv or .json", param_hint="--output")
        fmt = FileManager.get_file_extension(output)
    path = output or FileManager.default_path(table_name, fmt)

    try:
        records, columns = _export_records(table_name, k_max, n_max, m_max)
    except ArctanPowError as e:
        logger.error(f"Export of {table_name} failed: {e}")
        sys.exit(1)

    if not FileManager.write_text(path, render_records(records, columns, fmt) + "\n"):
        sys.exit(1)
    logger.info(f"Exported {len(records)} {table_name} records")
    click.echo(path)
