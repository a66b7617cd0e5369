"""Instance files (TOML) and deterministic report output."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .exact.rational import RationalParseError, format_rational, to_rational
from .instance import Instance, InstanceError


class InstanceFileError(ValueError):
    """A file that cannot be turned into an instance; message names the field."""


OPTIONAL_FIELDS = {
    "beta": "rational",
    "place": "place",
    "epsilon": "epsilon",
    "n_max": "int",
    "T": "int",
    "H_max": "int",
    "precision": "int",
}


@dataclass
class InstanceFile:
    instance: Instance
    source: str
    style: str  # "roots" or "coeffs"
    options: dict[str, Any] = field(default_factory=dict)


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceFileError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    try:
        return to_rational(value)
    except (RationalParseError, ValueError, ZeroDivisionError) as exc:
        raise InstanceFileError(f"{where}: {exc}") from None


def _rational_list(data: dict, key: str, source: str) -> list[Fraction]:
    value = data[key]
    if not isinstance(value, list):
        raise InstanceFileError(f"{source}: field '{key}' must be a list")
    return [_rational(x, f"{source}: field '{key}[{i}]'") for i, x in enumerate(value)]


def _option(name: str, kind: str, value: Any, source: str) -> Any:
    where = f"{source}: field '{name}'"
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise InstanceFileError(f"{where}: expected a non-negative integer, got {value!r}")
        return value
    if kind == "rational":
        return _rational(value, where)
    if kind == "place":
        from .heights import Place

        try:
            return Place.parse(value)
        except ValueError as exc:
            raise InstanceFileError(f"{where}: {exc}") from None
    if kind == "epsilon":
        return parse_epsilon(value, where)
    raise AssertionError(kind)


def parse_epsilon(value: Any, where: str = "epsilon"):
    """A rational, or 'V/k' meaning V_{v0}(beta)/k."""
    if isinstance(value, str) and value.strip().upper().startswith("V"):
        rest = value.strip()[1:].strip()
        if not rest:
            return ("V", Fraction(1))
        if rest.startswith("/"):
            return ("V", 1 / _rational(rest[1:].strip(), where))
        raise InstanceFileError(f"{where}: expected 'V/k' or a rational, got {value!r}")
    return _rational(value, where)


def parse_instance_text(text: str, source: str = "<string>") -> InstanceFile:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InstanceFileError(f"{source}: TOML syntax error: {exc}") from None
    has_roots = "alpha" in data or "s" in data
    has_coeffs = "a_coeffs" in data or "b_coeffs" in data
    if has_roots and has_coeffs:
        raise InstanceFileError(f"{source}: give either alpha/s or a_coeffs/b_coeffs, not both")
    try:
        if has_roots:
            for k in ("alpha", "s"):
                if k not in data:
                    raise InstanceFileError(f"{source}: missing field '{k}'")
            inst = Instance.from_roots(_rational_list(data, "alpha", source), _rational_list(data, "s", source))
            style = "roots"
        elif has_coeffs:
            for k in ("a_coeffs", "b_coeffs"):
                if k not in data:
                    raise InstanceFileError(f"{source}: missing field '{k}'")
            inst = Instance.from_coeffs(_rational_list(data, "a_coeffs", source), _rational_list(data, "b_coeffs", source))
            style = "coeffs"
        else:
            raise InstanceFileError(f"{source}: no instance given (need alpha/s or a_coeffs/b_coeffs)")
    except InstanceError as exc:
        raise InstanceFileError(f"{source}: {exc}") from None
    known = {"alpha", "s", "a_coeffs", "b_coeffs"} | set(OPTIONAL_FIELDS)
    unknown = sorted(set(data) - known)
    if unknown:
        raise InstanceFileError(f"{source}: unknown field(s) {', '.join(unknown)}")
    options = {k: _option(k, kind, data[k], source) for k, kind in OPTIONAL_FIELDS.items() if k in data}
    return InstanceFile(inst, source, style, options)


def load_instance(path: str | Path) -> InstanceFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFileError(f"{p}: {exc.strerror}") from None
    return parse_instance_text(text, str(p))


def _toml_list(xs) -> str:
    return "[" + ", ".join(f'"{format_rational(x)}"' for x in xs) + "]"


def instance_to_toml(inst: Instance) -> str:
    """Echo that re-validates to the same instance (root order preserved).

    Falls back to coefficients when some s_i is undefined.
    """
    if all(s is not None for s in inst.s):
        return f"alpha = {_toml_list(inst.alpha)}\ns = {_toml_list(inst.s)}\n"
    return f"a_coeffs = {_toml_list(inst.a.coeffs)}\nb_coeffs = {_toml_list(inst.b.coeffs)}\n"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_text(out_dir: str | Path | None, name: str, text: str) -> Path | None:
    if out_dir is None:
        return None
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    path = d / name
    path.write_text(text, encoding="utf-8")
    return path


__all__ = [
    "InstanceFile",
    "InstanceFileError",
    "dumps",
    "instance_to_toml",
    "load_instance",
    "parse_epsilon",
    "parse_instance_text",
    "write_text",
]
