#!/usr/bin/env python3

"""
Script
------

    behgan_driver.py

Description
-----------

    This script is the driver-level interface to the `behgan`
    command-line subcommands; it logs the run time of the requested
    subcommand.

Usage
-----

    user@host:$ python behgan_driver.py <subcommand> [options]

History
-------

    2026-10-18: Initial implementation.

"""

# ----

import os
import sys
import time

from behgan.cli import main as cli_main
from behgan.logger import Logger

# ----


def main() -> int:
    """
    Description
    -----------

    This is the driver-level function to invoke the tasks within this
    script.

    """

    script_name = os.path.basename(__file__)
    start_time = time.time()
    msg = f"Beginning application {script_name}."
    Logger().info(msg=msg)

    # Launch the task.
    status = cli_main(sys.argv[1:])

    stop_time = time.time()
    msg = f"Completed application {script_name} with exit status {status}."
    Logger().info(msg=msg)
    total_time = stop_time - start_time
    msg = f"Total Elapsed Time: {total_time} seconds."
    Logger().info(msg=msg)

    return status


# ----


if __name__ == "__main__":
    sys.exit(main())
