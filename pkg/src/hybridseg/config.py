"""Batch run configuration: file grammar, parsing, and validation.

The config file is flat ``key = value`` text with ``#`` comments. Each
``[case]`` section opens one (image, truth, label) entry; every other key
lives at the top level. Unknown keys are rejected. The full grammar is
documented in the README.

Errors fall into three categories: :class:`ConfigError` for a missing file,
:class:`ConfigSyntaxError` for lines that do not parse, and
:class:`ConfigValidationError` for well-formed values that violate a
constraint; validation messages always name the offending key.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .preprocess import PreprocessConfig
from .segment import DEFAULT_DELTA_T, RegionGrowParams

__all__ = [
    "ALGORITHMS",
    "CaseSpec",
    "RunConfig",
    "ConfigError",
    "ConfigSyntaxError",
    "ConfigValidationError",
    "parse_config",
]

ALGORITHMS = ("region_growing", "threshold", "hybrid")

REPORT_FORMATS = ("csv", "json")


class ConfigError(Exception):
    """Base class for configuration problems."""


class ConfigSyntaxError(ConfigError):
    """A config line could not be parsed."""


class ConfigValidationError(ConfigError):
    """A parsed value violates a constraint; the message names the key."""


@dataclass(frozen=True)
class CaseSpec:
    """One batch entry: input image, ground-truth mask, and report label."""

    image: str
    truth: str
    label: str

    def __post_init__(self) -> None:
        if not self.image:
            raise ValueError("case image path must be non-empty")
        if not self.truth:
            raise ValueError("case truth path must be non-empty")
        if not self.label or any(ch in self.label for ch in ",\r\n"):
            raise ValueError("case label must be non-empty and free of commas/newlines")


@dataclass(frozen=True)
class RunConfig:
    """Everything a batch run needs."""

    cases: tuple[CaseSpec, ...]
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    grow: RegionGrowParams = field(default_factory=RegionGrowParams)
    delta_t: float = DEFAULT_DELTA_T
    algorithms: tuple[str, ...] = ALGORITHMS
    output_dir: str = "out"
    emit_masks: bool = False
    report_format: str = "csv"

    def __post_init__(self) -> None:
        if not self.cases:
            raise ValueError("cases must be non-empty")
        if not self.algorithms:
            raise ValueError("algorithms must be non-empty")
        seen = set()
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"algorithms entry {name!r} is not one of {ALGORITHMS}")
            if name in seen:
                raise ValueError(f"algorithms entry {name!r} is repeated")
            seen.add(name)
        if self.delta_t <= 0.0:
            raise ValueError("delta_t must be > 0")
        if self.report_format not in REPORT_FORMATS:
            raise ValueError(f"report_format must be one of {REPORT_FORMATS}")


_FLOAT_KEYS = ("delta_t", "tolerance", "stretch_low_pct", "stretch_high_pct")
_INT_KEYS = ("median_window", "swt_levels")
_STR_KEYS = ("connectivity", "output_dir", "report_format")
_BOOL_KEYS = ("emit_masks",)
_LIST_KEYS = ("algorithms",)
_TOP_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS + _BOOL_KEYS + _LIST_KEYS
_CASE_KEYS = ("image", "truth", "label")

_BOOL_WORDS = {
    "true": True,
    "yes": True,
    "1": True,
    "false": False,
    "no": False,
    "0": False,
}


def _parse_lines(text: str, path: str) -> tuple[dict[str, str], list[dict[str, str]]]:
    top: dict[str, str] = {}
    cases: list[dict[str, str]] = []
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if line != "[case]":
                raise ConfigSyntaxError(f"{path}:{lineno}: unknown section {line!r} (only [case])")
            current = {}
            cases.append(current)
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigSyntaxError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = key.strip(), value.strip()
        if current is not None:
            if key not in _CASE_KEYS:
                raise ConfigValidationError(f"{path}:{lineno}: unknown case key {key!r}")
            current[key] = value
        else:
            if key not in _TOP_KEYS:
                raise ConfigValidationError(f"{path}:{lineno}: unknown key {key!r}")
            top[key] = value
    return top, cases


def _convert(top: dict[str, str]) -> dict:
    values: dict = {}
    for key, raw in top.items():
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(raw)
            except ValueError:
                raise ConfigValidationError(f"{key} must be a number, got {raw!r}") from None
        elif key in _INT_KEYS:
            try:
                values[key] = int(raw)
            except ValueError:
                raise ConfigValidationError(f"{key} must be an integer, got {raw!r}") from None
        elif key in _BOOL_KEYS:
            word = raw.lower()
            if word not in _BOOL_WORDS:
                raise ConfigValidationError(f"{key} must be true or false, got {raw!r}")
            values[key] = _BOOL_WORDS[word]
        elif key in _LIST_KEYS:
            values[key] = tuple(item.strip() for item in raw.split(",") if item.strip())
        else:
            values[key] = raw
    return values


def _build_cases(raw_cases: list[dict[str, str]]) -> tuple[CaseSpec, ...]:
    specs = []
    for index, entry in enumerate(raw_cases, start=1):
        for required in ("image", "truth"):
            if required not in entry:
                raise ConfigValidationError(f"case {index} is missing key {required!r}")
        label = entry.get("label") or os.path.splitext(os.path.basename(entry["image"]))[0]
        try:
            specs.append(CaseSpec(image=entry["image"], truth=entry["truth"], label=label))
        except ValueError as exc:
            raise ConfigValidationError(f"case {index}: {exc}") from None
    return tuple(specs)


def build_run_config(values: dict, cases: tuple[CaseSpec, ...]) -> RunConfig:
    """Assemble a validated RunConfig from converted key/value pairs."""
    try:
        pre = PreprocessConfig(
            stretch_low_pct=values.get("stretch_low_pct", 1.0),
            stretch_high_pct=values.get("stretch_high_pct", 99.0),
            median_window=values.get("median_window", 3),
            swt_levels=values.get("swt_levels", 1),
        )
        grow = RegionGrowParams(
            tolerance=values.get("tolerance", 0.1),
            connectivity=values.get("connectivity", "eight"),
        )
        return RunConfig(
            cases=cases,
            preprocess=pre,
            grow=grow,
            delta_t=values.get("delta_t", DEFAULT_DELTA_T),
            algorithms=tuple(values.get("algorithms", ALGORITHMS)),
            output_dir=values.get("output_dir", "out"),
            emit_masks=values.get("emit_masks", False),
            report_format=values.get("report_format", "csv"),
        )
    except ValueError as exc:
        raise ConfigValidationError(str(exc)) from None


def parse_config(path) -> RunConfig:
    """Parse and validate a batch config file."""
    path = os.fspath(path)
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    top, raw_cases = _parse_lines(text, path)
    values = _convert(top)
    cases = _build_cases(raw_cases)
    if not cases:
        raise ConfigValidationError("cases must be non-empty (add at least one [case] section)")
    return build_run_config(values, cases)
