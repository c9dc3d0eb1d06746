# -*- coding: utf-8 -*-
"""Exceptions raised by the arithmetic engines.

The cli maps them onto exit codes: PreconditionError -> 2,
PrecisionError and BudgetExceeded -> 3.
"""


class TafError(Exception):
    """Base class for all errors of this package"""


class PreconditionError(TafError, ValueError):
    """An input violates the precondition of an operation"""


class PrecisionError(TafError, ArithmeticError):
    """Working precision is too low for a trustworthy answer"""


class BudgetExceeded(TafError, RuntimeError):
    """An enumeration or search ran out of its configured budget"""
