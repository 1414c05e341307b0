from typing import List, Optional

from sspt.cli.commands import (
    COMMANDS,
    cmd_analyze,
    cmd_cluster,
    cmd_phantom,
    cmd_refine,
    cmd_track,
)
from sspt.cli.parser import create_parser
from sspt.cli.run_config import RunConfig
from sspt.exceptions import ConfigurationError, SsptException
from sspt.logging import logger, update_level
from sspt.settings import SsptSettings

EXIT_SUCCESS = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2


def exit_code(error: SsptException) -> int:
    if error.code.is_usage_error:
        return EXIT_USAGE_ERROR
    return EXIT_RUNTIME_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
        if args.debug:
            SsptSettings().is_debug_enabled = True
            update_level()
        return COMMANDS[args.command](args)

    except SsptException as error:
        message = error.log_message
        if isinstance(error, ConfigurationError) and error.flag is not None:
            message = f"{message} [flag {error.flag}]"
        logger.error(message)
        if error.user_message is not None:
            logger.error(error.user_message)
        if error.detail is not None:
            logger.debug(error.detail)
        return exit_code(error)

    except KeyboardInterrupt:
        logger.warning("Interrupt signal received")
        return EXIT_RUNTIME_ERROR
