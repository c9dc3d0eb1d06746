# -*- coding: utf-8 -*-
"""JSON reports emitted by the command line"""

from importlib import metadata
import os
import platform

import numpy
import pandas
import simplejson
import sympy

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "schema", "report.schema.json")


def package_version():
    try:
        return metadata.version("taf-arithmetic")
    except metadata.PackageNotFoundError:
        return "unknown"


def versions():
    return {
        "taf-arithmetic": package_version(),
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "pandas": pandas.__version__,
        "simplejson": simplejson.__version__,
        "sympy": sympy.__version__,
    }


def build_report(command, inputs, outputs, precision_used=None, elapsed=None):
    """Report dict; timing only when elapsed (seconds) is given"""
    report = {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "versions": versions(),
        "precision_used": precision_used,
    }
    if elapsed is not None:
        report["timing"] = {"elapsed_ms": int(round(elapsed * 1000))}
    return report


def dumps(report):
    return simplejson.dumps(report, sort_keys=True, indent=2, ignore_nan=True)


def load_schema():
    with open(SCHEMA_PATH) as f:
        return simplejson.load(f)
