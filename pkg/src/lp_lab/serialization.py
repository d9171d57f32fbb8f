"""Bit-exact file and report serialization.

Model, pair and prior files are JSON with every probability written as a
canonical rational string, so parse(serialize(v)) == v exactly. Reports
are plain JSON-able dictionaries built from the same rational rendering.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import LpLabError
from .evidence import Prior
from .model import (
    FiniteModel,
    ModelDataPair,
    format_rational,
    validate_model,
)
from .partition import Partition


def model_to_dict(model: FiniteModel) -> dict:
    return {
        "theta": list(model.theta_labels),
        "space": list(model.sample_labels),
        "probs": [
            [format_rational(v) for v in row] for row in model.probs
        ],
    }


def model_from_dict(data: dict) -> FiniteModel:
    try:
        return validate_model(data["theta"], data["space"], data["probs"])
    except KeyError as exc:
        raise LpLabError(f"missing field {exc} in model description")


def pair_to_dict(pair: ModelDataPair) -> dict:
    data = model_to_dict(pair.model)
    data["observed"] = pair.observed_label
    return data


def pair_from_dict(data: dict) -> ModelDataPair:
    model = model_from_dict(data)
    try:
        observed = data["observed"]
    except KeyError:
        raise LpLabError("missing field 'observed' in pair description")
    if observed not in model.sample_labels:
        raise LpLabError(f"observed label {observed!r} not in sample space")
    return ModelDataPair(model, model.sample_labels.index(observed))


def prior_to_dict(prior: Prior) -> dict:
    return {
        "theta": list(prior.theta_labels),
        "weights": [format_rational(w) for w in prior.weights],
    }


def prior_from_dict(data: dict) -> Prior:
    try:
        return Prior.of(data["theta"], data["weights"])
    except KeyError as exc:
        raise LpLabError(f"missing field {exc} in prior description")


def _load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LpLabError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LpLabError(f"{path} is not valid JSON: {exc}")


def load_model(path: str | Path) -> FiniteModel:
    return model_from_dict(_load_json(path))


def load_pair(path: str | Path) -> ModelDataPair:
    return pair_from_dict(_load_json(path))


def load_prior(path: str | Path) -> Prior:
    return prior_from_dict(_load_json(path))


def _dump(data: dict, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def save_model(model: FiniteModel, path: str | Path) -> None:
    _dump(model_to_dict(model), path)


def save_pair(pair: ModelDataPair, path: str | Path) -> None:
    _dump(pair_to_dict(pair), path)


def save_prior(prior: Prior, path: str | Path) -> None:
    _dump(prior_to_dict(prior), path)


def partition_to_labels(
    partition: Partition, sample_labels
) -> list[list[str]]:
    return [
        [sample_labels[x] for x in sorted(block)]
        for block in partition.blocks
    ]


def to_jsonable(value: Any) -> Any:
    """Render any lp-lab value as JSON-able data with exact rationals."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, FiniteModel):
        return model_to_dict(value)
    if isinstance(value, ModelDataPair):
        return pair_to_dict(value)
    if isinstance(value, Prior):
        return prior_to_dict(value)
    if isinstance(value, Partition):
        return [sorted(block) for block in value.blocks]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            field.name: to_jsonable(getattr(value, field.name))
            for field in dataclasses.fields(value)
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [to_jsonable(v) for v in items]
    if value is None or isinstance(value, (str, int, bool)):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_machine(payload: Any) -> str:
    """Deterministic machine rendering: sorted keys, no whitespace drift."""
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True)
