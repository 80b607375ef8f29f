import logging

import click
from dotenv import load_dotenv

from handlers.coeff_handlers import coeffs_command, export_command
from handlers.series_handlers import eval_command, pi_command, table1_command
from handlers.verify_handlers import verify_command
from utils.logger import setup_logging

load_dotenv()
setup_logging()
logger = logging.getLogger(__name__)


@click.group()
@click.version_option(version="1.0.0", prog_name="arctanpow")
def cli():
    """
    Exact coefficients and evaluation of the series for (arctan(x)/x)^n.

    Reports go to standard output, logs to standard error. Exit codes: 0 on
    success, 1 on a failed verification or accuracy check, 2 on usage errors.

    Examples:

        python main.py coeffs --kmax 2 --nmax 1

        python main.py eval -n 5 -x 0.8 --precision 256

        python main.py verify all --fast
    """


cli.add_command(coeffs_command)
cli.add_command(export_command)
cli.add_command(eval_command)
cli.add_command(pi_command)
cli.add_command(table1_command)
cli.add_command(verify_command)


if __name__ == "__main__":
    cli()
