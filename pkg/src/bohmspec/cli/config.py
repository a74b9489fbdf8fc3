"""Scenario documents: a single JSON object of flat keys.

Every scenario accepts the shared keys ``kind``, ``hbar``, ``mass``, ``V``,
``tol``, ``quad_tol`` and ``out``; the remaining keys depend on ``kind`` and
are listed in :data:`SCHEMA`. Unknown keys are rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from ..core import DomainError, Grid1D, PhysicalConstants
from ..ermakov import WEAK_EPS_LIMIT

KINDS = ("branch", "spectrum", "difference", "shifted", "aperture", "slit", "verify")

COMMON_DEFAULTS = {
    "hbar": 1.0,
    "mass": 1.0,
    "V": 0.0,
    "tol": 1e-12,
    "quad_tol": 1e-12,
    "out": None,
}

# kind -> (required keys, optional keys with defaults)
SCHEMA: dict[str, tuple[tuple[str, ...], dict[str, Any]]] = {
    "branch": (("A", "eps", "k", "grid"), {"S0": 0.0, "negative_current": False}),
    "spectrum": (("eps",), {"A": 1.0, "k": 1.0, "S0": 0.0}),
    "difference": (("E1", "E2", "C1", "C2", "k1", "k2", "A", "eps", "grid"),
                   {"C": None, "rho0": 0.0, "rho0_prime": 0.0}),
    "shifted": (("A", "eps", "k", "a", "grid"), {"S0": 0.0}),
    "aperture": (("L", "u", "v", "eps_x", "eps_y", "grid"),
                 {"grid_y": None, "A_x": None, "A_y": None}),
    "slit": (("R_curv", "k_y", "A_kx", "eps_kx", "grid"), {"k_x": 0.0, "N": None}),
    "verify": ((), {}),
}

_POSITIVE = {"hbar", "mass", "tol", "quad_tol", "A", "k", "k1", "k2", "L", "R_curv",
             "k_y", "A_kx", "A_x", "A_y"}
_NONNEGATIVE = {"k_x"}
_WEAK = {"eps", "eps_x", "eps_y", "eps_kx"}
_INTEGER = {"u", "v", "N"}
_BOOLEAN = {"negative_current"}
_GRIDS = {"grid", "grid_y"}


class ConfigError(ValueError):
    """One or more problems in a scenario document, each tied to a key path."""

    def __init__(self, problems: list[tuple[str, str]]):
        self.problems = problems
        super().__init__("; ".join(f"{path}: {reason}" for path, reason in problems))


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    params: Mapping[str, Any] = field(default_factory=dict)
    grid: Grid1D | None = None
    grid_y: Grid1D | None = None
    tol: float = 1e-12
    quad_tol: float = 1e-12
    out: str | None = None

    def __getitem__(self, key):
        return self.params[key]


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _check_value(key, v, problems):
    if key in _BOOLEAN:
        if not isinstance(v, bool):
            problems.append((key, "expected true or false"))
        return
    if key in _GRIDS:
        if not (isinstance(v, list) and len(v) == 3):
            problems.append((key, "expected [x0, x1, n]"))
            return
        for i, item in enumerate(v):
            if not _is_number(item):
                problems.append((f"{key}[{i}]", "expected a finite number"))
                return
        if int(v[2]) != v[2] or v[2] < 2:
            problems.append((f"{key}[2]", "sample count must be an integer >= 2"))
        if not v[1] > v[0]:
            problems.append((f"{key}[1]", "upper end must exceed the lower end"))
        return
    if key == "out":
        if not isinstance(v, str) or not v:
            problems.append((key, "expected a non-empty string"))
        return
    if not _is_number(v):
        problems.append((key, "expected a finite number"))
        return
    if key in _INTEGER and int(v) != v:
        problems.append((key, "expected an integer"))
    elif key in ("u", "v") and v < 1:
        problems.append((key, "mode index must be >= 1"))
    elif key == "N" and v < 0:
        problems.append((key, "truncation order must be >= 0"))
    elif key in _POSITIVE and not v > 0:
        problems.append((key, "must be positive"))
    elif key in _NONNEGATIVE and v < 0:
        problems.append((key, "must be non-negative"))
    elif key in _WEAK and not abs(v) < WEAK_EPS_LIMIT:
        problems.append((key, f"|{key}| must be below {WEAK_EPS_LIMIT}"))


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario document.

    Raises
    ------
    ConfigError
        Listing every unknown, missing or out-of-range key.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([("<document>", f"not valid JSON: {exc}")]) from None
    if not isinstance(doc, dict):
        raise ConfigError([("<document>", "top level must be an object")])
    kind = doc.get("kind")
    if kind not in KINDS:
        reason = "missing required key" if kind is None else f"unknown kind {kind!r}"
        raise ConfigError([("kind", reason)])

    required, optional = SCHEMA[kind]
    allowed = {"kind", *COMMON_DEFAULTS, *required, *optional}
    problems: list[tuple[str, str]] = []
    for key in sorted(doc):
        if key not in allowed:
            problems.append((key, f"unknown key for kind {kind!r}"))
    for key in required:
        if key not in doc:
            problems.append((key, "missing required key"))

    values = {**COMMON_DEFAULTS, **optional}
    for key, v in doc.items():
        if key in allowed and key != "kind":
            if v is None and values.get(key, 0) is None:
                continue
            _check_value(key, v, problems)
            values[key] = v
    if kind == "difference" and not problems:
        if not 0.5 * (values["E1"] + values["E2"]) > values["V"]:
            problems.append(("E1", "mean energy (E1 + E2)/2 must exceed V"))
    if problems:
        raise ConfigError(problems)

    def grid(key):
        v = values.get(key)
        return None if v is None else Grid1D(float(v[0]), float(v[1]), int(v[2]))

    try:
        constants = PhysicalConstants(float(values["hbar"]), float(values["mass"]),
                                      float(values["V"]))
    except DomainError as exc:
        raise ConfigError([("hbar", str(exc))]) from None
    params = {k: v for k, v in values.items()
              if k not in COMMON_DEFAULTS and k not in _GRIDS}
    for key in _INTEGER:
        if params.get(key) is not None:
            params[key] = int(params[key])
    return ScenarioConfig(
        kind=kind,
        constants=constants,
        params=params,
        grid=grid("grid"),
        grid_y=grid("grid_y"),
        tol=float(values["tol"]),
        quad_tol=float(values["quad_tol"]),
        out=values["out"],
    )
