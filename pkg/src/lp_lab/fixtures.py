"""Canonical small fixtures shared by the test suite and documentation."""

from __future__ import annotations

from .evidence import Prior
from .model import FiniteModel, validate_model


def fix_a() -> FiniteModel:
    return validate_model(
        ["t1", "t2"],
        ["x1", "x2", "x3"],
        [["1/6", "1/3", "1/2"], ["1/12", "1/6", "3/4"]],
    )


def fix_b() -> FiniteModel:
    return validate_model(
        ["t1", "t2"],
        ["y1", "y2"],
        [["1/2", "1/2"], ["1/4", "3/4"]],
    )


def fix_c() -> FiniteModel:
    return validate_model(
        ["t1", "t2"],
        ["z1", "z2"],
        [["1/3", "2/3"], ["1/2", "1/2"]],
    )


def fix_d() -> FiniteModel:
    return validate_model(
        ["t1", "t2"],
        ["1", "2", "3", "4"],
        [["1/6", "2/6", "1/6", "2/6"], ["2/6", "1/6", "2/6", "1/6"]],
    )


def fix_e() -> Prior:
    return Prior.of(["t1", "t2"], ["1/2", "1/2"])
