"""Likelihood-based sufficiency: the minimal sufficient partition, model
reduction with exact factorization, and the relation S."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import LpLabError, ParameterSpaceMismatch, UnreachablePoint
from .model import (
    FiniteModel,
    ModelDataPair,
    canonical_form,
    normalized_direction,
    pairs_isomorphic,
)
from .partition import Partition


@dataclass(frozen=True)
class ReductionResult:
    """Quotient of a pair by its minimal sufficient partition.

    Carries the exact factorization f_theta(x) = g_theta(block(x)) * h(x):
    ``block_map[x]`` is the block index of x in the reduced sample space and
    ``theta_free_factor[x]`` is h(x).
    """

    reduced: ModelDataPair
    block_map: tuple[int, ...]
    theta_free_factor: tuple[Fraction, ...]


@dataclass(frozen=True)
class SWitness:
    left: ReductionResult
    right: ReductionResult
    bijection: tuple[int, ...]


def likelihood_partition(model: FiniteModel) -> Partition:
    """Group sample points whose likelihood vectors are proportional.

    This is the minimal sufficient partition of a finite discrete model:
    two points land in one block iff their columns agree up to a positive
    scalar (zero patterns included).
    """
    keys = [normalized_direction(model.column(x)) for x in range(model.n_points)]
    return Partition.from_labels(keys)


def is_sufficient(model: FiniteModel, partition: Partition) -> bool:
    """True iff within every block all likelihood vectors are proportional."""
    for block in partition.blocks:
        keys = {normalized_direction(model.column(x)) for x in block}
        if len(keys) > 1:
            return False
    return True


def statistic_induced_model(
    model: FiniteModel, partition: Partition, labels: tuple[str, ...] | None = None
) -> FiniteModel:
    """Marginal model of a statistic: block probabilities by exact sums."""
    if labels is None:
        labels = tuple(
            "{" + ",".join(model.sample_labels[x] for x in sorted(block)) + "}"
            for block in partition.blocks
        )
    rows = tuple(
        tuple(sum(row[x] for x in block) for block in partition.blocks)
        for row in model.probs
    )
    for i, block in enumerate(partition.blocks):
        if all(row[i] == 0 for row in rows):
            raise UnreachablePoint(f"block {sorted(block)} has zero mass")
    return FiniteModel(model.theta_labels, labels, rows)


@functools.lru_cache(maxsize=None)
def reduce_to_mss(pair: ModelDataPair) -> ReductionResult:
    """Quotient the pair by its minimal sufficient partition.

    The theta-free factor h(x) = f_theta(x) / g_theta(block(x)) is computed
    with one parameter value and asserted identical across all of them.
    """
    partition = likelihood_partition(pair.model)
    reduced_model = statistic_induced_model(pair.model, partition)
    block_map = tuple(
        partition.block_index_of(x) for x in range(pair.model.n_points)
    )
    factors = []
    for x in range(pair.model.n_points):
        b = block_map[x]
        h: Optional[Fraction] = None
        for row, g_row in zip(pair.model.probs, reduced_model.probs):
            if g_row[b] == 0:
                if row[x] != 0:
                    raise LpLabError("zero block mass with positive point mass")
                continue
            value = row[x] / g_row[b]
            if h is None:
                h = value
            elif h != value:
                raise LpLabError(
                    "conditional factor depends on the parameter; "
                    "likelihood partition is inconsistent"
                )
        if h is None:
            raise UnreachablePoint("sample point unreachable after reduction")
        factors.append(h)
    reduced_pair = ModelDataPair(reduced_model, block_map[pair.observed])
    return ReductionResult(reduced_pair, block_map, tuple(factors))


def s_related(p1: ModelDataPair, p2: ModelDataPair) -> Optional[SWitness]:
    """Present iff the canonical MSS reductions are isomorphic pairs."""
    if p1.model.theta_labels != p2.model.theta_labels:
        raise ParameterSpaceMismatch(
            f"{p1.model.theta_labels} vs {p2.model.theta_labels}"
        )
    r1 = reduce_to_mss(p1)
    r2 = reduce_to_mss(p2)
    phi = pairs_isomorphic(r1.reduced, r2.reduced)
    if phi is None:
        return None
    return SWitness(r1, r2, phi)


def s_class_key(pair: ModelDataPair) -> ModelDataPair:
    """Canonical invariant deciding S: equal keys iff s_related."""
    return canonical_form(reduce_to_mss(pair).reduced)
