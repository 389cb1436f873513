"""
Supergrade - Command Reports

Every CLI command produces one report dict. JSON mode prints it as is,
after validating it against schemas/report.json; human mode prints every
verdict plus an optional free-text body.

Exit codes:
  0  every verdict passed
  1  at least one verdict failed
  2  the input could not be processed (SupergradeError)
  3  unexpected failure
"""

import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

from config import TOOL_VERSION, logger, paint
from .errors import SupergradeError
from .files import validate

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class Verdict:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def error_object(exc: BaseException) -> Dict[str, Any]:
    details = exc.details if isinstance(exc, SupergradeError) else {}
    return {
        "type": type(exc).__name__,
        "message": exc.message if isinstance(exc, SupergradeError) else str(exc),
        "details": json.loads(json.dumps(details, default=str)),
    }


def build_report(
    command: str,
    argv: Sequence[str],
    verdicts: Sequence[Verdict],
    data: Optional[Dict[str, Any]],
    started: float,
    error: Optional[BaseException] = None,
) -> Dict[str, Any]:
    """Assemble the report; `started` is a time.perf_counter() reading."""
    if error is None:
        exit_code = EXIT_OK if all(v.ok for v in verdicts) else EXIT_FAILED
    elif isinstance(error, SupergradeError):
        exit_code = EXIT_INPUT
    else:
        exit_code = EXIT_INTERNAL
    return {
        "command": command,
        "argv": list(argv),
        "ok": exit_code == EXIT_OK,
        "exit_code": exit_code,
        "tool_version": TOOL_VERSION,
        "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 3),
        "verdicts": [v.to_dict() for v in verdicts],
        "data": data or {},
        "error": error_object(error) if error is not None else None,
    }


def validate_report(report: Dict[str, Any]) -> None:
    validate(report, "report")


def render_human(report: Dict[str, Any], body: Sequence[str] = ()) -> str:
    lines: List[str] = [paint(f"supergrade {report['command']}", "bold")]
    lines.extend(body)
    for v in report["verdicts"]:
        tag = paint("PASS", "green") if v["ok"] else paint("FAIL", "red")
        lines.append(f"{tag} {v['name']}" + (f": {v['detail']}" if v["detail"] else ""))
    if report["error"] is not None:
        err = report["error"]
        lines.append(paint(f"ERROR {err['type']}: {err['message']}", "red"))
    status = paint("ok", "green") if report["ok"] else paint("not ok", "yellow")
    lines.append(f"{status} (exit {report['exit_code']}, {report['elapsed_ms']:.1f} ms)")
    return "\n".join(lines)


def emit(report: Dict[str, Any], as_json: bool, body: Sequence[str] = (), stream=None) -> int:
    stream = stream or sys.stdout
    if as_json:
        validate_report(report)
        stream.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write(render_human(report, body) + "\n")
    logger.debug(f"[REPORT] {report['command']} exit {report['exit_code']}")
    return report["exit_code"]
