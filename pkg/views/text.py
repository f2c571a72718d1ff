from typing import Any

from pydantic import BaseModel

from models.report import VerifyReport

POINT_FIELDS = {"point", "vertex", "center"}


def _point(value: list) -> str:
    return "(" + ":".join(str(v) for v in value) + ")"


def _scalar(key: str, value: Any) -> str:
    if key in POINT_FIELDS and isinstance(value, list):
        return _point(value)
    if isinstance(value, dict) and "terms" in value and "text" in value:
        return value["text"] or ""
    return str(value)


def _lines(data: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in data.items():
        if value is None:
            continue
        if isinstance(value, dict) and not ("terms" in value and "text" in value):
            lines.append(f"{pad}{key}:")
            lines.extend(_lines(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict) and "terms" not in value[0]:
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.extend(_lines(item, indent + 1))
                lines.append("")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  {item['text']}" for item in value)
        else:
            lines.append(f"{pad}{key}: {_scalar(key, value)}")
    return lines


def render_report(report: VerifyReport) -> str:
    lines = [f"seed: {report.seed}"]
    for c in report.checks:
        lines.append(f"[{c.status.value}] {c.name}: {c.anchor}")
        if c.note:
            lines.append(f"    {c.note}")
    lines.append(", ".join(f"{status}: {count}" for status, count in report.counts.items()))
    return "\n".join(lines)


def render_text(result: BaseModel) -> str:
    """Текстовый вывод результата команды; точки в записи (a:b:c:d)"""
    if isinstance(result, VerifyReport):
        return render_report(result)
    return "\n".join(_lines(result.model_dump(mode="json"))).rstrip()
