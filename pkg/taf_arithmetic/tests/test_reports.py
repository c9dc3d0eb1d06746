# -*- coding: utf-8 -*-
"""Tests for reports.py"""

import jsonschema
import pytest
import simplejson

from taf_arithmetic import reports


def test_report_validates():
    report = reports.build_report(
        "level1 classgroup", {"d": -5}, {"h": 2, "forms": [[1, 0, 5], [2, 2, 3]]}
    )
    jsonschema.validate(report, reports.load_schema())
    assert "timing" not in report
    assert report["precision_used"] is None


def test_timing_in_whole_milliseconds():
    report = reports.build_report("newton", {}, {}, 60, elapsed=0.0123)
    assert report["timing"] == {"elapsed_ms": 12}
    jsonschema.validate(report, reports.load_schema())


def test_floats_are_rejected():
    report = reports.build_report("newton", {}, {"slope": 0.5})
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(report, reports.load_schema())


def test_unknown_fields_are_rejected():
    report = reports.build_report("newton", {}, {})
    report["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(report, reports.load_schema())


def test_dumps_is_sorted():
    text = reports.dumps(reports.build_report("newton", {"b": 1, "a": 2}, {}))
    assert text.index('"a"') < text.index('"b"')
    assert simplejson.loads(text)["inputs"] == {"a": 2, "b": 1}
    assert reports.versions()["taf-arithmetic"]
