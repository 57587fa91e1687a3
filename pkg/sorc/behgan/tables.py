"""
Module
------

    tables.py

Description
-----------

    This module contains functions to compose plain-text tables for
    the log.

Functions
---------

    compose(header, rows, floatfmt=".4f")

        This function composes a table from a header and a list of
        rows.

Requirements
------------

- tabulate; https://github.com/astanin/python-tabulate

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from typing import List, Sequence

from tabulate import tabulate

# ----

# Define all available module properties.
__all__ = ["compose"]

# ----


def compose(header: Sequence[str], rows: List[Sequence], floatfmt: str = ".4f") -> str:
    """
    Description
    -----------

    This function composes a table from a header and a list of rows.

    Parameters
    ----------

    header: ``Sequence[str]``

        The column names.

    rows: ``List[Sequence]``

        The table rows.

    Keywords
    --------

    floatfmt: ``str``, optional

        The format applied to floating-point cells.

    Returns
    -------

    table: ``str``

        A Python string containing the composed table.

    """

    return tabulate(rows, headers=list(header), tablefmt="outline", floatfmt=floatfmt)
