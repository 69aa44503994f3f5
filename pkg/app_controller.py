"""
Application Controller Module - Command-line coordinator and exit-code policy
Wires the argument parser, logging and command handlers together
"""

import logging
import sys

from core.errors import (
    CliqueTfidfError,
    ConfigError,
    DatasetNotFoundError,
    ExperimentError,
    GraphParseError,
    InvalidKError,
    InvalidParameterError,
    UsageError,
)
from ui.cli_parser import build_parser
from ui.command_handlers import PipelineCommandHandlers
from utils.log_setup import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

# bad flags or bad input files; everything else is a runtime failure
USAGE_ERRORS = (
    UsageError, ConfigError, GraphParseError, DatasetNotFoundError, InvalidParameterError, InvalidKError,
)


def exit_code_for(error):
    """Map an exception to the 0/1/2 exit-code contract"""
    if isinstance(error, ExperimentError):
        error = error.cause
    return EXIT_USAGE if isinstance(error, USAGE_ERRORS) else EXIT_RUNTIME


class PipelineAppController:
    """Parses arguments, configures logging, runs one command"""

    def __init__(self, stdout=None, stderr=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.parser = build_parser()
        self.args = None
        self.handlers = None

    def _report_error(self, error):
        self.stderr.write(f"error: {error}\n")

    def run(self, argv=None):
        """
        Execute the command line

        Returns:
            int: process exit code
        """
        try:
            self.args = self.parser.parse_args(argv)
        except UsageError as e:
            self._report_error(e)
            return EXIT_USAGE

        configure_logging(self.args.verbose, stream=self.stderr)
        self.handlers = PipelineCommandHandlers(
            threads=self.args.threads, stdout=self.stdout, stderr=self.stderr
        )
        try:
            return self.handlers.dispatch(self.args)
        except CliqueTfidfError as e:
            self._report_error(e)
            return exit_code_for(e)
        except OSError as e:
            self._report_error(e)
            return EXIT_RUNTIME
        except Exception as e:
            logger.debug("Unexpected failure", exc_info=True)
            self._report_error(f"unexpected {type(e).__name__}: {e}")
            return EXIT_RUNTIME
