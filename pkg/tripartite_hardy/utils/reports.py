import json
import math
import numbers


def build_success_report(message, exit_code=0, data=None):
    """Build a standardized report for a finished command."""

    return {
        'success': True,
        'message': message,
        'exit_code': exit_code,
        'data': data or {}
    }


def build_error_report(message, exit_code=1, data=None):
    """Build a standardized report for a failed command."""

    return {
        'success': False,
        'error_message': message,
        'exit_code': exit_code,
        'data': data or {}
    }


def _json_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"Out of range float values are not JSON compliant: {value!r}")
    text = format(value, ".17g")
    # keep integral floats as JSON floats
    return text if any(c in text for c in ".e") else text + ".0"


def _encode(value, level: int) -> str:
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return _json_float(float(value))

    pad, close = "  " * (level + 1), "  " * level
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(key))}: {_encode(item, level + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(item, level + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def render_json(report) -> str:
    """Indented JSON; floats with 17 significant digits, like the text report."""
    return _encode(report, 0)


def _format_value(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower() if value is not None else "none"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value):
        re, im = value
        return f"{format(re, '.17g')} {format(im, '.17g')}"
    if isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value):
        return " ".join(_format_value(v) for v in value)
    return str(value)


def _render_lines(data, indent=0) -> list:
    pad = "  " * indent
    lines = []
    items = data.items() if isinstance(data, dict) else enumerate(data)
    for key, value in items:
        nested = isinstance(value, dict) or (isinstance(value, list) and any(isinstance(v, (dict, list, str)) for v in value))
        is_pair = isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value)
        if nested and not is_pair:
            lines.append(f"{pad}{key}:")
            lines.extend(_render_lines(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {_format_value(value)}")
    return lines


def render_text(report) -> str:
    """Indented ``key: value`` lines; floats with 17 significant digits."""
    head = report['message'] if report['success'] else f"error: {report['error_message']}"
    return "\n".join([head] + _render_lines(report['data']))
