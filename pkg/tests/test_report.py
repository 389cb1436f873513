"""Report assembly, schema validation and the two output modes."""

import io
import json
import time
from fractions import Fraction

import pytest

import config
from supergrade.errors import StructureError, UnknownEntryError
from supergrade.report import (
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_INTERNAL,
    EXIT_OK,
    Verdict,
    build_report,
    emit,
    render_human,
    validate_report,
)


@pytest.fixture(autouse=True)
def plain_output(monkeypatch):
    monkeypatch.setattr(config, "COLOR_MODE", "never")


def _report(verdicts=(), error=None):
    return build_report("check", ["check", "a.json"], list(verdicts), {"algebra": "a"}, time.perf_counter(), error)


def test_exit_codes():
    assert _report([Verdict("super jacobi", True)])["exit_code"] == EXIT_OK
    assert _report([Verdict("super jacobi", True), Verdict("nilpotent", False)])["exit_code"] == EXIT_FAILED
    assert _report(error=UnknownEntryError("unknown catalog id 'zz'"))["exit_code"] == EXIT_INPUT
    assert _report(error=ValueError("boom"))["exit_code"] == EXIT_INTERNAL


def test_no_verdicts_is_ok():
    report = _report()
    assert report["ok"] and report["exit_code"] == EXIT_OK


def test_error_object_is_json_safe():
    report = _report(error=StructureError("bad", {"value": Fraction(1, 3)}))
    assert report["error"] == {"type": "StructureError", "message": "bad", "details": {"value": "1/3"}}
    assert not report["ok"]
    validate_report(report)


def test_reports_validate():
    validate_report(_report([Verdict("a", True, "fine")]))
    validate_report(_report(error=RuntimeError("x")))


def test_extra_key_rejected():
    report = _report()
    report["extra"] = 1
    with pytest.raises(StructureError, match="report document invalid"):
        validate_report(report)


def test_human_lists_every_verdict():
    report = _report([Verdict("super leibniz", True, "holds"), Verdict("nilpotent", False, "not nilpotent")])
    text = render_human(report, ["body line"])
    assert "PASS super leibniz: holds" in text
    assert "FAIL nilpotent: not nilpotent" in text
    assert "body line" in text
    assert text.splitlines()[-1].startswith("not ok (exit 1,")


def test_human_shows_error():
    text = render_human(_report(error=UnknownEntryError("unknown scenario 'x'")))
    assert "ERROR UnknownEntryError: unknown scenario 'x'" in text


def test_emit_json():
    out = io.StringIO()
    code = emit(_report([Verdict("a", False)]), as_json=True, stream=out)
    assert code == EXIT_FAILED
    data = json.loads(out.getvalue())
    assert data["verdicts"] == [{"name": "a", "ok": False, "detail": ""}]
    assert data["tool_version"] == config.TOOL_VERSION
