# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/integration/test_cli.py
"""End-to-end tests of the hvmod command line through typer's runner."""

import json

import pytest
from typer.testing import CliRunner

from hvmod.cli import app
from hvmod.parser import parse_presentation
from hvmod.types import TRUNCATION_NOTE
from tests.fixtures.modules import mod_file

runner = CliRunner()


def invoke(*args, env=None):
    return runner.invoke(app, [str(a) for a in args], env=env)


def as_json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_adem_text():
    result = invoke("adem", "Sq2 Sq2")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "$ hvmod adem 'Sq2 Sq2'"
    assert "Sq3 Sq1" in lines
    assert lines[-1] == f"note: {TRUNCATION_NOTE}"


def test_adem_json():
    report = as_json(invoke("adem", "Sq1 Sq2", "-f", "json"))
    assert report["schema"] == 1
    assert report["command"] == ["adem", "Sq1 Sq2"]
    assert report["result"] == "Sq3"
    assert report["degree"] == 3
    assert report["note"] == TRUNCATION_NOTE


def test_adem_rejects_garbage():
    result = invoke("adem", "Sq")
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_check_hfree_failure_shows_witness():
    result = invoke("module", "check", mod_file("jv1"), "--predicate",
                    "hfree", "-N", "8")
    assert result.exit_code == 1
    assert "hfree: fails" in result.stdout
    assert "witness in degree 1" in result.stdout


def test_check_default_predicate_validates():
    report = as_json(invoke("module", "check", mod_file("tensor_j2"),
                            "-f", "json"))
    assert report["predicate"] == "validate"
    assert report["verdict"]["status"] == "holds-up-to-N"
    assert report["max_degree"] == 16


def test_check_reports_adem_violation():
    result = invoke("module", "check", mod_file("bad_adem"), "-f", "json")
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert report["verdict"]["status"] == "fails"
    assert report["verdict"]["witness"]["degree"] == 2


def test_malformed_file_cites_line():
    result = invoke("module", "check", mod_file("malformed"))
    assert result.exit_code == 2
    assert "malformed.mod:4:" in result.output


def test_unknown_catalog_name():
    result = invoke("module", "check", "catalog:nonsense")
    assert result.exit_code == 2
    assert "unknown catalog entry" in result.output


def test_missing_file():
    result = invoke("module", "check", "no/such/file.mod")
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_bad_predicate_is_a_usage_error():
    result = invoke("module", "check", "catalog:hv", "-p", "shiny")
    assert result.exit_code == 2


def test_max_degree_from_environment():
    report = as_json(invoke("module", "quotient", "catalog:hv", "-f",
                            "json", env={"HVMOD_MAX_DEGREE": "6"}))
    assert report["max_degree"] == 6
    assert report["quotient"]["dims"] == {"0": 1}


def test_tor1_of_trivial_module():
    report = as_json(invoke("module", "tor1", "catalog:f2", "-N", "6",
                            "-f", "json"))
    assert report["tor1"]["dims"] == {"1": 1}


def test_iso_failure_exits_one():
    result = invoke("module", "iso", "catalog:sigma-h", "catalog:tH",
                    "-N", "8")
    assert result.exit_code == 1
    assert "isomorphic: fails" in result.stdout


def test_iso_of_exotic_file_with_catalog():
    result = invoke("module", "iso", mod_file("exotic_j2"),
                    "catalog:j2-exotic", "-N", "8")
    assert result.exit_code == 0
    assert "isomorphic: holds" in result.stdout


def test_fix_json():
    report = as_json(invoke("fix", mod_file("sigma_t_h"), "-f", "json"))
    assert report["fix"]["dims"] == {"1": 1}
    assert report["certified_degree"] == 8


def test_fix_refuses_torsion():
    result = invoke("fix", "catalog:jv1", "-N", "8")
    assert result.exit_code == 2
    assert "not free over H" in result.output


def test_smith_exotic():
    report = as_json(invoke("smith", "catalog:j2-exotic", "-f", "json"))
    assert report["four_term_exact"]["status"] == "holds-up-to-N"
    assert report["modules"]["tauC"]["dims"] == {"1": 1}


def test_classify_sigma():
    result = invoke("classify", "sigma", mod_file("t_h"), "-N", "10")
    assert result.exit_code == 0
    assert "class: tH" in result.stdout


def test_classify_sigma_split_json():
    report = as_json(invoke("classify", "sigma", "catalog:h-plus-sigma-h",
                            "--split", "-N", "8", "-f", "json"))
    assert report["classification"]["class"] == "H + ΣH"
    assert report["serre"]["status"] == "holds-up-to-N"


def test_classify_sigma_refuses_torsion():
    result = invoke("classify", "sigma", "catalog:jv1", "-N", "8")
    assert result.exit_code == 1
    assert "not free" in result.output


def test_classify_j2():
    result = invoke("classify", "j2", mod_file("exotic_j2"), "-N", "8")
    assert result.exit_code == 0
    assert "class: exotic (catalog j2-exotic)" in result.stdout


def test_enumerate_sigma():
    report = as_json(invoke("enumerate", "sigma", "--n", "2", "--rank",
                            "2", "-f", "json"))
    assert report["count"] == 10
    assert report["max_degree"] is None


def test_search_sigma_small():
    report = as_json(invoke("search", "sigma", "--n", "1", "-N", "8",
                            "-f", "json"))
    assert report["count"] == 2
    assert sorted(c["class"] for c in report["classes"]) == ["tH", "ΣH"]


@pytest.mark.exhaustive
def test_search_j2_finds_two_classes():
    report = as_json(invoke("search", "j2", "-N", "8", "-f", "json"))
    assert report["count"] == 2
    assert sorted(c["class"] for c in report["classes"]) == [
        "exotic", "tensor"]


def test_catalog_list():
    result = invoke("catalog", "--list")
    assert result.exit_code == 0
    assert "j2-exotic" in result.stdout
    assert "rp2" in result.stdout


def test_catalog_entry_json():
    report = as_json(invoke("catalog", "rp2", "2", "1", "-N", "8",
                            "-f", "json"))
    entry = report["entry"]
    assert entry["args"] == ["2", "1"]
    assert entry["quotient"]["dims"] == {"1": 1, "2": 1}


def test_catalog_export_reparses():
    result = invoke("catalog", "j2-exotic", "--export")
    assert result.exit_code == 0
    p = parse_presentation(result.stdout)
    assert [g.name for g in p.generators] == ["e", "s"]
    assert len(p.subgens) == 2


def test_catalog_bad_arguments():
    result = invoke("catalog", "sigma-h", "3")
    assert result.exit_code == 2


def test_gysin():
    report = as_json(invoke("gysin", "t,0", "-N", "4", "-f", "json"))
    assert report["entry"]["module"]["dims"] == {
        "0": 1, "1": 1, "2": 2, "3": 2, "4": 2}


def test_verify_gysin():
    result = invoke("verify", "gysin")
    assert result.exit_code == 0
    assert "gysin: passed" in result.stdout


def test_verify_unknown_suite():
    result = invoke("verify", "nonsense")
    assert result.exit_code == 2
    assert "unknown suite" in result.output


def test_output_is_deterministic():
    first = invoke("smith", "catalog:j2-exotic", "-f", "json")
    second = invoke("smith", "catalog:j2-exotic", "-f", "json")
    assert first.stdout == second.stdout
    text = invoke("catalog", "j2-tensor", "-N", "6")
    again = invoke("catalog", "j2-tensor", "-N", "6")
    assert text.stdout == again.stdout


def _crash(expr):
    raise RuntimeError("table corrupted")


def test_internal_error_has_its_own_exit_code(monkeypatch):
    monkeypatch.setattr("hvmod.cli.parse_steenrod", _crash)
    result = invoke("adem", "Sq2")
    assert result.exit_code == 3
    assert "Internal error: RuntimeError: table corrupted" in result.output


def test_internal_error_reraises_under_debug(monkeypatch):
    monkeypatch.setattr("hvmod.cli.parse_steenrod", _crash)
    result = invoke("adem", "Sq2", "--debug")
    assert isinstance(result.exception, RuntimeError)
