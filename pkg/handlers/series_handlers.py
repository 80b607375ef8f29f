"""Commands that evaluate the expansion: eval, pi and table1."""
import logging
import sys

import click
import mpmath

from core.algebra import format_rational, parse_bigfloat, working_precision
from core.exceptions import ArctanPowError, DomainError
from core.series import (
    TABULATED_DERIVATIVE_ROWS,
    build_eval_report,
    derivative_coeff,
    derivative_errata,
    derived_derivative_row,
    direct_oracle,
    eval_expansion,
    pi_power_reference,
    pi_power_sum,
)
from formatters import FORMATS, render_model, render_table1
from utils.config import MIN_PRECISION_BITS, get_precision_bits

logger = logging.getLogger(__name__)

# Plain sums at x = 1 converge like 1/terms; long runs are cheap only for n = 1.
PLAIN_TERMS_FIRST_POWER = 100000
PLAIN_TERMS = 2000
ACCELERATED_TERMS = 200

PRECISION_OPTION = click.option(
    "--precision",
    type=click.IntRange(min=MIN_PRECISION_BITS),
    default=None,
    help="Working precision in bits (default: ARCTANPOW_PRECISION or 256).",
)


@click.command("eval")
@click.option("-n", "n", type=click.IntRange(min=1), required=True, help="Power of arctan(x)/x.")
@click.option("-x", "x_text", required=True, help="Decimal point with |x| < 1.")
@PRECISION_OPTION
@click.option("--max-terms", type=click.IntRange(min=1), default=2000, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
def eval_command(n: int, x_text: str, precision: int, max_terms: int, fmt: str):
    """
    Sum the expansion of (arctan(x)/x)^n and compare with a direct evaluation.

    Exits with 1 if the error exceeds the reported tail bound.
    """
    bits = precision or get_precision_bits()
    with working_precision(bits):
        try:
            x = parse_bigfloat(x_text)
        except DomainError as e:
            raise click.BadParameter(str(e), param_hint="-x") from e
        if not mpmath.isfinite(x):
            raise click.BadParameter(f"x must be a finite number, got {x_text}", param_hint="-x")
        if abs(x) >= 1:
            raise click.BadParameter(
                f"the expansion converges for |x| < 1 only, got {x_text}; use `pi` for x = 1",
                param_hint="-x",
            )

    try:
        result = eval_expansion(n, x, max_terms=max_terms, precision=bits)
        oracle = direct_oracle(n, x, bits)
    except ArctanPowError as e:
        logger.error(f"Evaluation failed: {e}")
        sys.exit(1)

    report = build_eval_report(n, x_text, result, oracle)
    click.echo(render_model(report, fmt))
    if not report.within_bound:
        logger.error(f"Error {report.abs_error} exceeds tail bound {report.tail_bound}")
        sys.exit(1)


@click.command("pi")
@click.option("-n", "n", type=click.IntRange(min=1), required=True)
@click.option("--terms", type=click.IntRange(min=1), default=None, help="Default: 200 accelerated; plain 100000 for n = 1, else 2000.")
@click.option("--accelerate", is_flag=True, help="Apply the Euler transform to the alternating sum.")
@PRECISION_OPTION
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
def pi_command(n: int, terms: int, accelerate: bool, precision: int, fmt: str):
    """Sum the expansion at x = 1 and compare with pi^n / (2^n n!)."""
    bits = precision or get_precision_bits()
    if terms is None:
        if accelerate:
            terms = ACCELERATED_TERMS
        elif n == 1:
            terms = PLAIN_TERMS_FIRST_POWER
        else:
            terms = PLAIN_TERMS
            logger.warning(
                f"Plain sum for n={n} stops at {terms} terms and is accurate to about 1/{terms}; "
                f"pass --accelerate for a precise value"
            )
    try:
        result = pi_power_sum(n, terms, accelerate=accelerate, precision=bits)
    except ArctanPowError as e:
        logger.error(f"Sum at x = 1 failed: {e}")
        sys.exit(1)
    reference = pi_power_reference(n, bits)
    click.echo(render_model(build_eval_report(n, "1", result, reference), fmt))


@click.command("table1")
@click.option("--nmax", "n_max", type=click.IntRange(min=1), default=12, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="plain", show_default=True)
def table1_command(n_max: int, fmt: str):
    """Derivatives of (arctan(x)/x)^n at 0: printed rows against re-derived ones."""
    rows = []
    values = []
    for m, printed in sorted(TABULATED_DERIVATIVE_ROWS.items()):
        derived = derived_derivative_row(m)
        rows.append({"m": m, "printed": str(printed), "derived": str(derived), "agrees": printed == derived})
        for n in range(1, n_max + 1):
            values.append(
                {
                    "m": m,
                    "n": n,
                    "derivative": format_rational(derivative_coeff(n, m)),
                    "printed": format_rational(printed(n)),
                    "derived": format_rational(derived(n)),
                }
            )
    errata = derivative_errata()
    click.echo(render_table1(rows, values, errata, fmt))
    mismatched = [value for value in values if value["derivative"] != value["derived"]]
    if mismatched:
        logger.error(f"{len(mismatched)} derivative values disagree with the re-derived rows")
        sys.exit(1)
