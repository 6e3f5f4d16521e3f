import click

from tripartite_hardy import __version__
from tripartite_hardy.config import Config, configure_logging, logging
from tripartite_hardy.controllers.commands import COMMANDS, emit
from tripartite_hardy.utils.constants import exitCodes
from tripartite_hardy.utils.errors import BaseError
from tripartite_hardy.utils.reports import build_error_report


class HardyGroup(click.Group):
    """
    Command group whose error handler turns BaseError into an error report and
    its exit code. Anything else is reported as an internal error.
    """

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.Abort):
            raise
        except click.UsageError as error:
            error.show()
            ctx.exit(exitCodes["INPUT_ERROR"])
        except BaseError as error:
            emit(ctx, build_error_report(
                message=error.message,
                exit_code=error.exitCode,
                data={"error_type": error.errorType, "details": error.verboseMessage},
            ))
            ctx.exit(error.exitCode)
        except Exception as error:
            logging.error(f"Unhandled exception: {error}", exc_info=True)
            emit(ctx, build_error_report(
                message="Internal error",
                exit_code=exitCodes["INPUT_ERROR"],
                data={"details": str(error)},
            ))
            ctx.exit(exitCodes["INPUT_ERROR"])


@click.group(cls=HardyGroup)
@click.option("--log-level", default=lambda: Config.LOG_LEVEL, help="Log level for stderr output.")
@click.version_option(__version__, prog_name="tripartite-hardy")
def cli(log_level):
    """Hardy-type tests of genuine tripartite nonlocality for pure states."""
    Config.validate_env()
    configure_logging(log_level.upper())


for command in COMMANDS:
    cli.add_command(command)
