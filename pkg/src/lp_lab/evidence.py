"""Relative-belief evidence calculus on finite models: posterior, relative
belief ratio, Bayes factor, direction and strength of evidence, plus model
checking and prior-data conflict checking. All quantities are exact."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ancillarity import block_masses
from .errors import (
    DegenerateHypothesis,
    EmptyHypothesis,
    LpLabError,
    NotAncillary,
    ParameterSpaceMismatch,
    UnknownTheta,
)
from .model import FiniteModel, ModelDataPair, parse_rational
from .partition import Partition
from .sufficiency import reduce_to_mss


@dataclass(frozen=True)
class Prior:
    """Strictly positive prior weights on a parameter space, summing to 1."""

    theta_labels: tuple[str, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.theta_labels) != len(self.weights):
            raise ParameterSpaceMismatch(
                f"{len(self.theta_labels)} labels, {len(self.weights)} weights"
            )
        if any(w <= 0 for w in self.weights):
            raise LpLabError("prior weights must be strictly positive")
        if sum(self.weights) != 1:
            raise LpLabError("prior weights must sum to exactly 1")

    @staticmethod
    def of(theta_labels: Sequence[str], weights: Sequence) -> "Prior":
        return Prior(
            tuple(str(t) for t in theta_labels),
            tuple(parse_rational(w) for w in weights),
        )

    @staticmethod
    def uniform(theta_labels: Sequence[str]) -> "Prior":
        n = len(theta_labels)
        return Prior.of(theta_labels, [Fraction(1, n)] * n)


class Direction(enum.Enum):
    FOR = "for"
    AGAINST = "against"
    NEUTRAL = "neutral"


def _check_match(model: FiniteModel, prior: Prior) -> None:
    if model.theta_labels != prior.theta_labels:
        raise ParameterSpaceMismatch(
            f"{model.theta_labels} vs {prior.theta_labels}"
        )


def prior_predictive(
    model: FiniteModel, prior: Prior
) -> tuple[Fraction, ...]:
    """m(x) = sum_theta pi(theta) f_theta(x); entries sum to 1."""
    _check_match(model, prior)
    return tuple(
        sum(w * row[x] for w, row in zip(prior.weights, model.probs))
        for x in range(model.n_points)
    )


def posterior(pair: ModelDataPair, prior: Prior) -> tuple[Fraction, ...]:
    """pi(theta | x) over the parameter space; sums to 1 exactly."""
    _check_match(pair.model, prior)
    m = prior_predictive(pair.model, prior)[pair.observed]
    return tuple(
        w * row[pair.observed] / m
        for w, row in zip(prior.weights, pair.model.probs)
    )


def relative_belief(
    pair: ModelDataPair, prior: Prior
) -> tuple[Fraction, ...]:
    """RB(theta | x) = posterior / prior = f_theta(x) / m(x)."""
    post = posterior(pair, prior)
    return tuple(p / w for p, w in zip(post, prior.weights))


def _hypothesis_indices(prior: Prior, hypothesis: Sequence[str]) -> list[int]:
    indices = []
    for label in hypothesis:
        if label not in prior.theta_labels:
            raise UnknownTheta(f"unknown parameter label {label!r}")
        indices.append(prior.theta_labels.index(label))
    return sorted(set(indices))


def bayes_factor(
    pair: ModelDataPair, prior: Prior, hypothesis: Sequence[str]
) -> Optional[Fraction]:
    """Posterior odds over prior odds of the hypothesis.

    Returns None when the posterior odds are infinite (the complement has
    posterior probability zero).
    """
    indices = _hypothesis_indices(prior, hypothesis)
    if not indices or len(indices) == len(prior.theta_labels):
        raise DegenerateHypothesis(
            "hypothesis must be a nonempty proper subset of the parameter space"
        )
    post = posterior(pair, prior)
    p_a = sum(prior.weights[i] for i in indices)
    q_a = sum(post[i] for i in indices)
    if q_a == 1:
        return None
    return (q_a / (1 - q_a)) / (p_a / (1 - p_a))


def evidence_direction(
    pair: ModelDataPair, prior: Prior, hypothesis: Sequence[str]
) -> Direction:
    """Exact three-way comparison of posterior and prior probability."""
    indices = _hypothesis_indices(prior, hypothesis)
    if not indices:
        raise EmptyHypothesis("hypothesis must be nonempty")
    post = posterior(pair, prior)
    p_a = sum(prior.weights[i] for i in indices)
    q_a = sum(post[i] for i in indices)
    if q_a > p_a:
        return Direction.FOR
    if q_a < p_a:
        return Direction.AGAINST
    return Direction.NEUTRAL


def rb_estimate(pair: ModelDataPair, prior: Prior) -> set[str]:
    """Parameter values maximizing the relative belief ratio; ties kept."""
    rb = relative_belief(pair, prior)
    best = max(rb)
    return {
        label for label, value in zip(prior.theta_labels, rb) if value == best
    }


def rb_strength(
    pair: ModelDataPair, prior: Prior, theta0: str
) -> Fraction:
    """Posterior probability of {theta : RB(theta|x) <= RB(theta0|x)}.

    Small values mean the evidence for theta0 is weak even when its
    relative belief ratio exceeds 1.
    """
    if theta0 not in prior.theta_labels:
        raise UnknownTheta(f"unknown parameter label {theta0!r}")
    rb = relative_belief(pair, prior)
    post = posterior(pair, prior)
    cutoff = rb[prior.theta_labels.index(theta0)]
    return sum(
        (p for p, value in zip(post, rb) if value <= cutoff),
        Fraction(0),
    )


def check_model_mss(pair: ModelDataPair) -> Fraction:
    """Exact tail probability of the data given the minimal sufficient value.

    The conditional distribution within the observed MSS block is
    parameter-free (carried by the reduction's theta-free factors); the
    returned value sums the conditional probabilities no larger than the
    observed one.
    """
    reduction = reduce_to_mss(pair)
    b = reduction.block_map[pair.observed]
    block = [
        x for x in range(pair.model.n_points) if reduction.block_map[x] == b
    ]
    q = {x: reduction.theta_free_factor[x] for x in block}
    observed_q = q[pair.observed]
    return sum(
        (value for value in q.values() if value <= observed_q), Fraction(0)
    )


def check_model_ancillary(
    pair: ModelDataPair, ancillary: Partition
) -> Fraction:
    """Exact tail probability of the ancillary at its observed value."""
    masses = block_masses(pair.model, ancillary)
    if masses is None:
        raise NotAncillary("partition has parameter-dependent block masses")
    observed_mass = masses[ancillary.block_index_of(pair.observed)]
    return sum(
        (w for w in masses if w <= observed_mass), Fraction(0)
    )


def check_prior_conflict(pair: ModelDataPair, prior: Prior) -> Fraction:
    """Tail probability of the prior predictive of the MSS at its observed
    value; small values signal prior-data conflict."""
    reduction = reduce_to_mss(pair)
    reduced = reduction.reduced
    m = prior_predictive(reduced.model, prior)
    observed_m = m[reduced.observed]
    return sum((v for v in m if v <= observed_m), Fraction(0))


@dataclass(frozen=True)
class HypothesisRecord:
    hypothesis: tuple[str, ...]
    prior_probability: Fraction
    posterior_probability: Fraction
    bayes_factor: Optional[Fraction]
    direction: Direction
    strength: Optional[Fraction]


@dataclass(frozen=True)
class EvidenceReport:
    prior_predictive_at_data: Fraction
    posterior: tuple[Fraction, ...]
    rb: tuple[Fraction, ...]
    estimate: tuple[str, ...]
    hypotheses: tuple[HypothesisRecord, ...]


def evidence_report(
    pair: ModelDataPair,
    prior: Prior,
    hypotheses: Sequence[Sequence[str]] = (),
) -> EvidenceReport:
    """Full evidence summary for a pair, a prior and optional hypotheses."""
    m = prior_predictive(pair.model, prior)[pair.observed]
    post = posterior(pair, prior)
    rb = relative_belief(pair, prior)
    records = []
    for hypothesis in hypotheses:
        indices = _hypothesis_indices(prior, hypothesis)
        labels = tuple(prior.theta_labels[i] for i in indices)
        p_a = sum(prior.weights[i] for i in indices)
        q_a = sum(post[i] for i in indices)
        proper = 0 < len(indices) < len(prior.theta_labels)
        records.append(
            HypothesisRecord(
                labels,
                p_a,
                q_a,
                bayes_factor(pair, prior, labels) if proper else None,
                evidence_direction(pair, prior, labels),
                rb_strength(pair, prior, labels[0])
                if len(labels) == 1
                else None,
            )
        )
    return EvidenceReport(
        m,
        post,
        rb,
        tuple(sorted(rb_estimate(pair, prior))),
        tuple(records),
    )
