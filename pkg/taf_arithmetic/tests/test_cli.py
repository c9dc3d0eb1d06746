# -*- coding: utf-8 -*-
"""Tests for cli.py"""

from fractions import Fraction
import logging
import os

import jsonschema
import mock
import pytest
import simplejson

from taf_arithmetic import cli
from taf_arithmetic.reports import load_schema


def _run_json(argv, capsys):
    code, report = cli.run(["--json"] + argv)
    out = capsys.readouterr().out
    assert code == 0
    return report, out


def test_get_parser_defaults():
    options = cli.get_parser().parse_args(["greek", "alpha", "-p", "5", "-t", "4"])
    assert options.command == "greek"
    assert options.action == "alpha"
    assert options.j == 1
    assert not options.verbose
    assert not options.json
    assert options.prec is None
    assert options.mmax == 1
    assert options.budget == 20000


def test_greek_alpha_text(capsys):
    code, report = cli.run(["greek", "alpha", "-p", "5", "-t", "4", "-j", "1"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "exists, order 5"
    assert report["command"] == "greek alpha"
    assert report["outputs"]["order"] == 5


def test_greek_beta(capsys):
    code, report = cli.run(["greek", "beta", "-p", "5", "-i", "1"])
    assert code == 0
    assert report["inputs"] == {"p": 5, "i": 1, "j": 1, "k": 1}
    assert isinstance(report["outputs"]["exists"], bool)


def test_newton_breakpoints(capsys):
    code, report = cli.run(["newton", "--slopes", "1/3,1/2,1"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("breakpoints (0,0),(3,1),(5,2),(6,3)")
    assert report["outputs"]["breakpoints"] == [[0, 0], [3, 1], [5, 2], [6, 3]]
    assert report["outputs"]["polarizable"] is False


def test_level1_classgroup(capsys):
    code, report = cli.run(["level1", "classgroup", "-d", "-5"])
    assert code == 0
    assert capsys.readouterr().out.startswith("h=2")
    assert report["outputs"]["h"] == 2
    assert report["outputs"]["D"] == -20


def test_level1_commands(capsys):
    _, report = cli.run(["level1", "genprime", "-d", "-1", "-p", "5"])
    assert report["outputs"]["ell"] == 13
    assert report["outputs"]["t"] == ["3", "2"]
    _, report = cli.run(["level1", "decomp", "-d", "-5", "-p", "29"])
    assert report["outputs"]["factors"] == 2
    _, report = cli.run(["level1", "points", "-d", "-1", "-p", "5"])
    assert report["outputs"]["mass"] == "1/4"
    _, report = cli.run(["level1", "sunits", "-d", "-1", "--primes", "13+", "-p", "5"])
    assert report["outputs"]["closure"]["index"] == 1
    assert report["outputs"]["units"]["rank"] == 1


def test_level1_jorders(capsys):
    _, report = cli.run(["level1", "jorders", "-p", "5", "-k", "2"])
    orders = {row["t"]: row["order"] for row in report["outputs"]["rows"]}
    assert orders[4] == 5
    assert orders[20] == 25
    _, report = cli.run(["level1", "jorders", "-p", "5", "-d", "-1", "--tmax", "8"])
    assert [row["order"] for row in report["outputs"]["rows"]] == [1, 5, 1, 5]


def test_hondatate(capsys):
    _, report = cli.run(["hondatate", "split", "-n", "3", "-p", "7"])
    assert report["outputs"]["invariants"]["m"] == 3
    assert report["outputs"]["realizable"]
    weil = ["hondatate", "weil", "-d", "-1", "-b", "1", "-q", "5"]
    _, report = cli.run(weil + ["-a", "2"])
    assert report["outputs"]["status"] == "ok"
    assert report["outputs"]["type"]["eta"] == {"u": "0", "uc": "1"}
    _, report = cli.run(weil + ["-a", "3"])
    assert report["outputs"]["status"] == "violation"


def test_forms(capsys):
    _, report = cli.run(
        ["forms", "local", "-d", "-1", "--place", "inf", "--entries", "1,-1,1/2"]
    )
    assert report["outputs"] == {"place": "inf", "kind": "signature", "value": [2, 1]}
    assert report["inputs"]["entries"] == ["1", "-1", "1/2"]
    _, report = cli.run(["forms", "global", "-d", "-1", "--entries", "1,1"])
    assert report["outputs"]["exists_U"] is True
    _, report = cli.run(["forms", "table", "-d", "-1", "--ell", "3", "-n", "2"])
    assert len(report["outputs"]["rows"]) == 2


def test_building(capsys):
    _, report = cli.run(["building", "chamber", "--ell", "2", "-n", "2"])
    assert report["outputs"]["group"] == "GL"
    assert report["outputs"]["dimension"] == 2
    _, report = cli.run(["building", "ball", "--ell", "2", "-n", "2"])
    assert len(report["outputs"]["vertices"]) == 4
    assert len(report["outputs"]["edges"]) == 3
    assert report["outputs"]["census"]["by_type"] == {"1": 3}
    capsys.readouterr()
    cli.run(["building", "ball", "--ell", "2", "-n", "2", "--dot"])
    assert capsys.readouterr().out.startswith("graph building {")
    _, report = cli.run(["building", "chamber", "-d", "-1", "--ell", "3", "-n", "2"])
    assert report["outputs"]["group"] == "U"
    _, report = cli.run(
        ["building", "skeleton", "-d", "-1", "--ell", "3", "-n", "2", "-s", "0"]
    )
    assert report["outputs"]["s"] == 0


def test_congruence_uses_the_cache(tmp_path, capsys):
    argv = ["--cache-dir", str(tmp_path), "congruence", "A", "-p", "5", "-t", "4"]
    _, report = cli.run(argv)
    assert report["outputs"]["order"] == 5
    assert len(os.listdir(tmp_path)) == 2
    _, again = cli.run(argv)
    assert again["outputs"] == report["outputs"]


def test_congruence_serre(tmp_path, capsys):
    argv = ["--cache-dir", str(tmp_path), "congruence", "serre", "-p", "5"]
    code, report = cli.run(argv + ["--f1", "0,0,0", "--f2", "1,0,0"])
    assert code == 0
    assert report["outputs"] == {"weights": [0, 4], "verdict": "consistent"}
    # E6 is not congruent to 1 mod 5
    code, _ = cli.run(argv + ["--f1", "0,0,0", "--f2", "0,1,0"])
    assert code == 2


def test_exit_codes(tmp_path, capsys):
    assert cli.run([])[0] == 64
    assert cli.run(["frobnicate"])[0] == 64
    assert cli.run(["greek"])[0] == 64
    serre = ["congruence", "serre", "-p", "5", "--f1", "1,2", "--f2", "0,0,0"]
    assert cli.run(serre)[0] == 64
    assert cli.run(["greek", "alpha", "-p", "4", "-t", "4"]) == (2, None)
    assert cli.run(["level1", "genprime", "-d", "-1", "-p", "3"])[0] == 2
    assert cli.run(["level1", "genprime", "-d", "-1", "-p", "5", "--cap", "10"])[0] == 3
    argv = ["--prec", "2", "--cache-dir", str(tmp_path), "congruence", "A"]
    assert cli.run(argv + ["-p", "5", "-t", "4"])[0] == 3


DETERMINISTIC = [
    ["greek", "alpha", "-p", "5", "-t", "4", "-j", "1"],
    ["newton", "--slopes", "1/3,1/2,1"],
    ["level1", "classgroup", "-d", "-5"],
    ["level1", "genprime", "-d", "-1", "-p", "13"],
    ["forms", "local", "-d", "-5", "--place", "5", "--entries", "1,2"],
    ["building", "chamber", "-d", "-1", "--ell", "3", "-n", "3"],
]


@pytest.mark.parametrize("argv", DETERMINISTIC)
def test_json_is_byte_stable_and_valid(argv, capsys):
    schema = load_schema()
    report, first = _run_json(argv, capsys)
    _, second = _run_json(argv, capsys)
    assert first == second
    jsonschema.validate(report, schema)
    jsonschema.validate(simplejson.loads(first), schema)
    assert "timing" not in report


def test_timing_is_optional(capsys):
    report, _ = _run_json(["--timing", "level1", "classgroup", "-d", "-23"], capsys)
    assert report["timing"]["elapsed_ms"] >= 0
    jsonschema.validate(report, load_schema())


def test_jsonable():
    assert cli.jsonable({1: (Fraction(1, 2), None, True)}) == {"1": ["1/2", None, True]}
    with pytest.raises(TypeError):
        cli.jsonable(0.5)


@pytest.mark.parametrize("flags,level", [([], logging.INFO), (["-v"], logging.DEBUG)])
def test_main_configures_the_package_logger(flags, level, capsys):
    argv = ["taf-arithmetic"] + flags + ["greek", "alpha", "-p", "5", "-t", "4"]
    with mock.patch("sys.argv", argv):
        with mock.patch("taf_arithmetic.cli.configure_logger") as configure:
            with pytest.raises(SystemExit) as exit_info:
                cli.main()
    configure.assert_called_once_with(level)
    assert exit_info.value.code == 0
    assert capsys.readouterr().out.strip() == "exists, order 5"
