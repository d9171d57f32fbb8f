"""Exhaustive search substrate: deterministic enumeration of small models
on rational grids, and counterexample searches for the relation algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .ancillarity import DEFAULT_MAX_SPACE, CWitness, c_related
from .errors import ModelValidationError
from .model import (
    FiniteModel,
    ModelDataPair,
    canonical_form,
    canonical_model,
    validate_model,
)
from .relations import conditional_pairs, l_related
from .sufficiency import s_related


@dataclass(frozen=True)
class SearchBounds:
    theta_size: int = 2
    max_space: int = 6
    max_denominator: int = 6


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`,
    in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def enumerate_models(
    theta_size: int = 2,
    max_space: int = 6,
    max_denominator: int = 6,
) -> Iterator[FiniteModel]:
    """All validated canonical models on the rational grid, deduplicated.

    Order is deterministic: by sample-space size, then by the least common
    denominator of the entries, then lexicographically by row matrix. Each
    model appears exactly once, at the minimal denominator expressing it.
    """
    thetas = [f"t{i + 1}" for i in range(theta_size)]
    for size in range(1, max_space + 1):
        points = [f"x{i + 1}" for i in range(size)]
        for den in range(1, max_denominator + 1):
            rows = [
                tuple(Fraction(k, den) for k in comp)
                for comp in _compositions(den, size)
            ]
            seen: set[FiniteModel] = set()
            for combo in _row_products(rows, theta_size):
                lcd = math.lcm(
                    *(v.denominator for row in combo for v in row)
                )
                if lcd != den:
                    continue
                try:
                    model = validate_model(thetas, points, combo)
                except ModelValidationError:
                    continue
                canon = canonical_model(model)
                if canon not in seen:
                    seen.add(canon)
                    yield canon


def _row_products(rows, count) -> Iterator[tuple]:
    if count == 0:
        yield ()
        return
    for head in rows:
        for tail in _row_products(rows, count - 1):
            yield (head,) + tail


def enumerate_pairs(
    theta_size: int = 2,
    max_space: int = 6,
    max_denominator: int = 6,
) -> Iterator[ModelDataPair]:
    """Canonical model-data pairs over enumerate_models, deduplicated."""
    seen: set[ModelDataPair] = set()
    for model in enumerate_models(theta_size, max_space, max_denominator):
        for x in range(model.n_points):
            pair = canonical_form(ModelDataPair(model, x))
            if pair not in seen:
                seen.add(pair)
                yield pair


@dataclass(frozen=True)
class TransitivityCounterexample:
    """A verified triple breaking transitivity of the one-step relation C."""

    p1: ModelDataPair
    p2: ModelDataPair
    p3: ModelDataPair
    witness_12: CWitness
    witness_23: CWitness


def search_c_transitivity_counterexample(
    bounds: SearchBounds = SearchBounds(),
    max_space_enum: int = DEFAULT_MAX_SPACE,
) -> Optional[TransitivityCounterexample]:
    """First triple (p1, p2, p3) with C(p1,p2), C(p2,p3) but not C(p1,p3).

    p1 and p3 are taken among the conditionals of a scanned pair p2, so the
    two positive claims hold by construction (and are re-verified by the
    oracle); the negative claim is verified by exhaustive ancillary
    enumeration on both endpoint models.
    """
    for model in enumerate_models(
        bounds.theta_size, bounds.max_space, bounds.max_denominator
    ):
        for x in range(model.n_points):
            p2 = ModelDataPair(model, x)
            conditionals = []
            seen: set[ModelDataPair] = set()
            for _, cond in conditional_pairs(p2, max_space_enum):
                key = canonical_form(cond)
                if key not in seen:
                    seen.add(key)
                    conditionals.append(cond)
            for i, pa in enumerate(conditionals):
                for pb in conditionals[i + 1 :]:
                    if c_related(pa, pb, max_space_enum) is not None:
                        continue
                    w12 = c_related(pa, p2, max_space_enum)
                    w23 = c_related(p2, pb, max_space_enum)
                    assert w12 is not None and w23 is not None
                    return TransitivityCounterexample(pa, p2, pb, w12, w23)
    return None


@dataclass(frozen=True)
class ProperContainmentWitness:
    """A pair in L but in neither S nor C, with the proportionality constant."""

    p1: ModelDataPair
    p2: ModelDataPair
    likelihood_ratio: Fraction


def check_l_minus_sc(
    p1: ModelDataPair,
    p2: ModelDataPair,
    max_space_enum: int = DEFAULT_MAX_SPACE,
) -> Optional[ProperContainmentWitness]:
    """Verify a candidate witness for L \\ (S union C); None if it fails."""
    c = l_related(p1, p2)
    if c is None:
        return None
    if s_related(p1, p2) is not None:
        return None
    if c_related(p1, p2, max_space_enum) is not None:
        return None
    return ProperContainmentWitness(p1, p2, c)


def search_l_minus_sc(
    bounds: SearchBounds = SearchBounds(theta_size=2, max_space=2, max_denominator=4),
    max_space_enum: int = DEFAULT_MAX_SPACE,
) -> Optional[ProperContainmentWitness]:
    """First enumerated pair of pairs in L but outside S and C.

    Negatives are decided by exhaustive ancillary enumeration, so a
    returned witness is fully verified.
    """
    pairs = list(
        enumerate_pairs(
            bounds.theta_size, bounds.max_space, bounds.max_denominator
        )
    )
    for i, p1 in enumerate(pairs):
        for p2 in pairs[i + 1 :]:
            witness = check_l_minus_sc(p1, p2, max_space_enum)
            if witness is not None:
                return witness
    return None
