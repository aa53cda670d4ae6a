"""JSON model documents.

Three shapes, selected by ``"model"``::

    {"model": "linear_atomic",
     "bits": ["W1", "W2"], "atoms": {"W5": "1/3"},
     "variables": {"Y": {"bits": ["W1", "W2"], "atoms": ["W5"]},
                   "X1": {"bits": ["W1^W2"]}},
     "dependent": "Y"}

    {"model": "pmf", "variables": ["A", "B"],
     "outcomes": [["1/2", [0, 0]], ["1/2", [1, 1]]]}

    {"model": "entropy_table", "variables": ["A", "B"],
     "entropy": {"A": "1", "B": "1", "A,B": "2"}}

Rational literals are ``"p/q"`` strings, integer strings or JSON integers.
Unknown keys are rejected.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import ModelError
from .sources import EntropyTableSource, LinearAtomicSource, PmfSource, SourceModel

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

_KEYS = {
    "linear_atomic": {"model", "bits", "atoms", "variables", "dependent"},
    "pmf": {"model", "variables", "outcomes", "dependent"},
    "entropy_table": {"model", "variables", "entropy", "dependent"},
}


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ModelError(f"not a rational literal: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x.strip()):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            pass
    raise ModelError(f"not a rational literal: {x!r}")


def _list_of_str(doc: dict, key: str) -> list[str]:
    val = doc.get(key, [])
    if not isinstance(val, list) or not all(isinstance(v, str) for v in val):
        raise ModelError(f"{key!r} must be a list of strings")
    return val


def parse_model(doc: dict) -> tuple[SourceModel, str | None]:
    """Build a model from a decoded document; returns ``(model, dependent)``."""
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    kind = doc.get("model")
    if kind not in _KEYS:
        raise ModelError(f"'model' must be one of {sorted(_KEYS)}, got {kind!r}")
    extra = set(doc) - _KEYS[kind]
    if extra:
        raise ModelError(f"unknown keys for {kind}: {sorted(extra)}")
    dependent = doc.get("dependent")
    if dependent is not None and not isinstance(dependent, str):
        raise ModelError("'dependent' must be a variable name")
    try:
        if kind == "linear_atomic":
            variables = doc.get("variables")
            if not isinstance(variables, dict):
                raise ModelError("linear_atomic 'variables' must map names to definitions")
            atoms = doc.get("atoms", {})
            if not isinstance(atoms, dict):
                raise ModelError("'atoms' must map names to weights")
            model: SourceModel = LinearAtomicSource(
                _list_of_str(doc, "bits"),
                {k: parse_rational(v) for k, v in atoms.items()},
                variables,
            )
        elif kind == "pmf":
            outcomes = []
            for row in doc.get("outcomes", []):
                if not (isinstance(row, list) and len(row) == 2 and isinstance(row[1], list)):
                    raise ModelError(f"outcome must be [probability, [values...]], got {row!r}")
                outcomes.append((parse_rational(row[0]), row[1]))
            model = PmfSource(_list_of_str(doc, "variables"), outcomes)
        else:
            table = doc.get("entropy", {})
            if not isinstance(table, dict):
                raise ModelError("'entropy' must map comma-joined names to values")
            model = EntropyTableSource(
                _list_of_str(doc, "variables"),
                {k: parse_rational(v) for k, v in table.items()},
            )
    except ModelError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(str(exc)) from exc
    if dependent is not None and dependent not in model.variables:
        raise ModelError(f"dependent variable {dependent!r} is not declared")
    return model, dependent


def load_model(path: str | Path) -> tuple[SourceModel, str | None]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON ({exc})") from exc
    return parse_model(doc)


FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    """Path of a bundled example model, e.g. ``fixture_path("example_a")``."""
    return FIXTURES / f"{name}.json"


def load_fixture(name: str) -> tuple[SourceModel, str | None]:
    return load_model(fixture_path(name))
