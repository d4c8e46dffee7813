"""
Sectioned key = value run configuration.

    problem = model2d

    [time]
    scheme = implicit
    dt = 0.003
    dtau = 0.3

`[section]` headers and dotted keys are interchangeable (`time.scheme = rk2`).
`#` starts a comment, `none` is an unset value. The problem preset is applied
first and user keys override it.
"""

import copy
from pathlib import Path
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ValidationError

from src.benchmarks.probes import HistoryPoint, ProbeLine
from src.data.schemas import LONG_RUNNING, PRESETS, PROBLEMS, RunSpec
from src.utils.errors import ConfigurationError
from src.utils.file_utils import format_float
from src.utils.logger import get_logger

logger = get_logger(__name__)

TOP_LEVEL_KEYS = ("problem", "seed")


def _tokenize(text: str) -> Dict[Tuple[str, ...], Tuple[str, int]]:
    """Map dotted key paths to (raw value, line number)."""
    entries: Dict[Tuple[str, ...], Tuple[str, int]] = {}
    section = None

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise ConfigurationError(f"line {number}: malformed section header '{raw.strip()}'")
            section = line[1:-1].strip()
            if not section or "." in section or " " in section:
                raise ConfigurationError(f"line {number}: invalid section name '{section}'")
            continue

        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(f"line {number}: expected 'key = value', got '{raw.strip()}'")

        if "." in key:
            path = tuple(part.strip() for part in key.split("."))
        elif section is None or key in TOP_LEVEL_KEYS:
            path = (key,)
        else:
            path = (section, key)

        if len(path) > 2 or not all(path):
            raise ConfigurationError(f"line {number}: invalid key '{key}'")
        if path in entries:
            first = entries[path][1]
            raise ConfigurationError(
                f"line {number}: duplicate key '{'.'.join(path)}' (first set on line {first})"
            )
        entries[path] = (value.strip(), number)

    return entries


def _nest(entries: Dict[Tuple[str, ...], Tuple[str, int]]) -> Dict[str, Any]:
    tree: Dict[str, Any] = {}
    for path, (value, number) in entries.items():
        parsed = None if value.lower() == "none" else value
        if len(path) == 1:
            if isinstance(tree.get(path[0]), dict):
                raise ConfigurationError(f"line {number}: '{path[0]}' is a section, not a key")
            tree[path[0]] = parsed
        else:
            section = tree.setdefault(path[0], {})
            if not isinstance(section, dict):
                raise ConfigurationError(f"line {number}: '{path[0]}' is a key, not a section")
            section[path[1]] = parsed
    return tree


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _validation_message(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"]) or "config"
        lines.append(f"{key}: {item['msg']}")
    return "; ".join(lines)


def parse_config(text: str, long_running: bool = False) -> RunSpec:
    """
    Parse configuration text into a validated RunSpec.

    Args:
        text: Sectioned key = value text
        long_running: Apply the full-scale overrides of the problem preset

    Returns:
        Fully resolved RunSpec

    Raises:
        ConfigurationError: Syntax errors (with line number), unknown problem,
            unknown keys or failed validation (naming the key)
    """
    user = _nest(_tokenize(text))

    problem = user.get("problem")
    if problem is None:
        raise ConfigurationError("problem: missing required key")
    if problem not in PROBLEMS:
        raise ConfigurationError(
            f"problem: unknown problem '{problem}' (expected one of {', '.join(PROBLEMS)})"
        )

    resolved = copy.deepcopy(PRESETS[problem])
    if long_running and problem in LONG_RUNNING:
        resolved = _merge(resolved, LONG_RUNNING[problem])
        logger.info(f"Applying long-running configuration for {problem}")
    resolved = _merge(resolved, user)

    try:
        spec = RunSpec.model_validate(resolved)
    except ValidationError as e:
        raise ConfigurationError(_validation_message(e)) from e

    logger.debug(f"Parsed configuration for problem {spec.problem}")
    return spec


def load_config(path: str | Path, long_running: bool = False) -> RunSpec:
    """Read and parse a configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read configuration {path}: {e}") from e
    return parse_config(text, long_running=long_running)


def _format_point(point) -> str:
    return " ".join(format_float(v) for v in point)


def _format_value(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, ProbeLine):
        text = f"{value.name} {value.axis} {_format_point(value.point)}"
        return f"{text} snap" if value.snap else text
    if isinstance(value, HistoryPoint):
        return f"{value.name} {_format_point(value.point)}"
    if isinstance(value, (list, tuple)):
        separator = "; " if value and isinstance(value[0], BaseModel) else ", "
        return separator.join(_format_value(item) for item in value)
    return str(value)


def emit_config(spec: RunSpec) -> str:
    """
    Effective configuration text with every field written out.

    parse_config(emit_config(spec)) reproduces `spec`.
    """
    lines = [f"{key} = {_format_value(getattr(spec, key))}" for key in TOP_LEVEL_KEYS]
    for name in RunSpec.model_fields:
        section = getattr(spec, name)
        if not isinstance(section, BaseModel):
            continue
        lines.append("")
        lines.append(f"[{name}]")
        for key in type(section).model_fields:
            lines.append(f"{key} = {_format_value(getattr(section, key))}")
    return "\n".join(lines) + "\n"
