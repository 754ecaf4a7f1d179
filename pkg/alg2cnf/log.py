# ##############################################################################
#  This file is part of alg2cnf                                                #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Logging of the alg2cnf commands.

Messages go to stderr (colorized on terminals) at the level given by the settings
and the `-v` option. When `LOG_DIRECTORY` is set, each verb also writes everything
(DEBUG level) to its own rotated file, like `alg2cnf-solve-root.log`, which keeps the
full history of long solver runs.
"""
import logging
import logging.handlers
import os
import sys
import warnings
from typing import Dict, List, Optional

from django.core.management.color import color_style

from alg2cnf.checks import Warning, config_check_results

PLAIN_FORMAT = "%(asctime)s [%(name)s] [%(levelname)s] %(message)s"


class ColorizedFormatter(logging.Formatter):
    """Color the message according to its level."""

    styles = [
        (logging.DEBUG, "HTTP_NOT_MODIFIED"),
        (logging.INFO, "HTTP_INFO"),
        (logging.WARNING, "WARNING"),
    ]

    def __init__(self, *args, **kwargs):
        self.style = color_style()
        kwargs.setdefault("fmt", PLAIN_FORMAT)
        kwargs.setdefault("datefmt", "%H:%M:%S")
        super().__init__(*args, **kwargs)

    def colorize(self, levelno: int, text: str) -> str:
        for max_level, style_name in self.styles:
            if levelno <= max_level:
                return getattr(self.style, style_name)(text)
        return self.style.ERROR(text)

    def format(self, record):
        record.msg = self.colorize(record.levelno, record.getMessage())
        record.args = None
        return super().format(record)

    def formatStack(self, stack_info):
        return self.style.ERROR(stack_info)


class RemoveDuplicateWarnings(logging.Filter):
    """Let a Python warning through only once per source file and arguments."""

    def __init__(self, name=""):
        super().__init__(name=name)
        self.seen = set()

    def filter(self, record):
        key = (record.pathname, repr(record.args))
        if key in self.seen:
            return False
        self.seen.add(key)
        return True


class LogConfiguration:
    """Build the :func:`logging.config.dictConfig` dictionary of one command.

    The level is chosen in this order:

    * `-v 0` shows errors only, `-v 2` info and `-v 3` (or more) debug messages,
    * otherwise `DEBUG = True` shows everything,
    * otherwise `LOG_LEVEL` is used ("debug", "info", "warning", "error", "critical").

    `py.warnings` is shown one level above, so deprecation noise only appears in debug
    mode. With `LOG_DIRECTORY`, the root logger also writes to a file at DEBUG level.
    """

    required_settings = ["DEBUG", "LOG_DIRECTORY", "LOG_LEVEL"]
    aliases = {
        "WARN": "WARNING",
        "CRIT": "CRITICAL",
        "EMERGENCY": "CRITICAL",
        "ALERT": "CRITICAL",
        "NOTICE": "INFO",
    }
    verbosity_levels = {0: "ERROR", 2: "INFO", 3: "DEBUG"}
    next_level = {"DEBUG": "INFO", "INFO": "WARNING", "WARNING": "ERROR", "ERROR": "CRITICAL"}

    def __init__(self, stderr=None):
        self.stderr = stderr or sys.stderr
        self.command_name = "alg2cnf-main"
        self.handlers = {}  # type: Dict[str, Dict]
        self.root = {}  # type: Dict

    def __repr__(self):
        return f"{self.__module__}.log_configuration"

    def __call__(self, settings_dict, argv=None, verbosity: int = 1) -> Dict:
        level = self.get_log_level(settings_dict, verbosity)
        self.command_name = self.get_smart_command_name(sys.argv if argv is None else argv)
        self.handlers = {}
        self.root = {"handlers": [], "level": level}
        loggers = {
            "alg2cnf": {"handlers": [], "level": level, "propagate": True},
            "py.warnings": {
                "handlers": [],
                "level": self.next_level.get(level, level),
                "propagate": True,
                "filters": ["remove_duplicate_warnings"],
            },
        }
        if settings_dict["DEBUG"]:
            warnings.simplefilter("always", DeprecationWarning)
            logging.captureWarnings(True)
        self.attach(*self.console_handler(level))
        if settings_dict["LOG_DIRECTORY"]:
            handler = self.file_handler(settings_dict["LOG_DIRECTORY"])
            if handler:
                self.attach(*handler)
                self.root["level"] = "DEBUG"
                loggers["alg2cnf"]["level"] = "DEBUG"
        return {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "nocolor": {
                    "()": "logging.Formatter",
                    "fmt": PLAIN_FORMAT,
                    "datefmt": "%Y-%m-%d %H:%M:%S",
                },
                "colorized": {"()": "alg2cnf.log.ColorizedFormatter"},
            },
            "filters": {
                "remove_duplicate_warnings": {"()": "alg2cnf.log.RemoveDuplicateWarnings"},
            },
            "handlers": self.handlers,
            "loggers": loggers,
            "root": self.root,
        }

    def get_log_level(self, settings_dict, verbosity: int) -> str:
        """
        >>> LogConfiguration().get_log_level({"DEBUG": False, "LOG_LEVEL": "warn"}, 1)
        'WARNING'
        >>> LogConfiguration().get_log_level({"DEBUG": False, "LOG_LEVEL": "warning"}, 2)
        'INFO'
        """
        if verbosity > 3:
            return "DEBUG"
        elif verbosity in self.verbosity_levels:
            return self.verbosity_levels[verbosity]
        elif settings_dict["DEBUG"]:
            return "DEBUG"
        level = (settings_dict["LOG_LEVEL"] or "WARNING").upper()
        return self.aliases.get(level, level)

    def attach(self, name: str, handler: Dict):
        self.handlers.setdefault(name, handler)
        if name not in self.root["handlers"]:
            self.root["handlers"].append(name)

    def console_handler(self, level: str):
        formatter = "colorized" if self.stderr.isatty() else "nocolor"
        handler = {
            "class": "logging.StreamHandler",
            "level": level,
            "stream": "ext://sys.stderr",
            "formatter": formatter,
        }
        return f"stderr.{level.lower()}.{formatter}", handler

    def file_handler(self, directory: str) -> Optional[List]:
        """Rotated file of the command, or `None` (with a warning) if it cannot be written."""
        directory = os.path.normpath(directory)
        if not os.path.isdir(directory):
            config_check_results.append(
                Warning(
                    f"Missing directory '{directory}'.", obj="configuration", id="alg2cnf.W008"
                )
            )
            return None
        filename = os.path.join(directory, f"{self.command_name}-root.log")
        if not os.access(directory, os.W_OK) or (
            os.path.exists(filename) and not os.access(filename, os.W_OK)
        ):
            config_check_results.append(
                Warning(
                    f"Unable to write logs in '{directory}'.",
                    obj="configuration",
                    id="alg2cnf.W009",
                )
            )
            return None
        handler = {
            "class": "logging.handlers.RotatingFileHandler",
            "maxBytes": 1000000,
            "backupCount": 3,
            "formatter": "nocolor",
            "filename": filename,
            "level": "DEBUG",
            "delay": True,
        }
        return [f"{self.command_name}.root", handler]

    @staticmethod
    def get_smart_command_name(argv) -> str:
        """Name of the running verb, used in log file names.

        >>> LogConfiguration.get_smart_command_name(["alg2cnf", "solve", "x.cnf"])
        'alg2cnf-solve'
        """
        return "alg2cnf-" + (argv[1] if len(argv) >= 2 else "main")
