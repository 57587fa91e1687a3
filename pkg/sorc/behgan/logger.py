"""
Module
------

    logger.py

Description
-----------

    This module contains the logging interface used by all behgan
    modules. It mirrors the ufs_pyutils utils.logger_interface
    Logger: the caller_name keyword and the debug, error, info and
    warn methods, each taking a single msg string. Nothing beyond
    that interface is provided; the stderr handler and the format
    are set once on the behgan root logger.

Classes
-------

    Logger(caller_name=None)

        This is the base-class object for message logging; it wraps a
        Python logging.Logger object named for the caller.

Environment
-----------

    BEHGAN_LOG_LEVEL

        The logging level name (e.g., DEBUG, INFO, WARNING); the
        default is INFO.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import logging
import os
import sys

# ----

# Define all available module properties.
__all__ = ["Logger"]

# ----

LOG_FORMAT = "%(asctime)s :: %(name)s :: %(levelname)s :: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# ----


class Logger:
    """
    Description
    -----------

    This is the base-class object for message logging.

    Keywords
    --------

    caller_name: ``str``, optional

        A Python string specifying the name of the calling module
        and/or class; the root package logger is used if NoneType.

    """

    def __init__(self, caller_name: str = None):
        """
        Description
        -----------

        Creates a new Logger object.

        """

        # Define the base-class attributes.
        self.caller_name = caller_name if caller_name is not None else "behgan"
        self.logger = logging.getLogger(self.caller_name)
        root = logging.getLogger("behgan")
        if not root.handlers:
            handler = logging.StreamHandler(stream=sys.stderr)
            handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
            root.addHandler(handler)
            root.setLevel(os.environ.get("BEHGAN_LOG_LEVEL", "INFO").upper())

    def debug(self, msg: str) -> None:
        """
        Description
        -----------

        This method writes a message at the debug level.

        Parameters
        ----------

        msg: ``str``

            A Python string containing the message to be logged.

        """

        self.logger.debug(msg)

    def error(self, msg: str) -> None:
        """
        Description
        -----------

        This method writes a message at the error level.

        Parameters
        ----------

        msg: ``str``

            A Python string containing the message to be logged.

        """

        self.logger.error(msg)

    def info(self, msg: str) -> None:
        """
        Description
        -----------

        This method writes a message at the info level.

        Parameters
        ----------

        msg: ``str``

            A Python string containing the message to be logged.

        """

        self.logger.info(msg)

    def warn(self, msg: str) -> None:
        """
        Description
        -----------

        This method writes a message at the warning level.

        Parameters
        ----------

        msg: ``str``

            A Python string containing the message to be logged.

        """

        self.logger.warning(msg)
