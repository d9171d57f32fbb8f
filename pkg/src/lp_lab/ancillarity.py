"""Ancillary statistics on finite models: testing, exhaustive enumeration,
maximal and laminal ancillaries, conditioning, and the relations C and
Durbin-restricted C."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NotAncillary,
    NotUnique,
    ParameterSpaceMismatch,
    SpaceTooLarge,
)
from .model import FiniteModel, ModelDataPair, pairs_isomorphic
from .partition import Partition, all_partitions, is_function_of
from .sufficiency import likelihood_partition

# Bell-number growth: Bell(12) is ~4.2M, the practical ceiling for
# exhaustive enumeration. Override per call, or via LP_LAB_MAX_SPACE in
# the CLI.
DEFAULT_MAX_SPACE = 12


@dataclass(frozen=True)
class AncillaryCatalog:
    all: tuple[Partition, ...]
    maximal: tuple[Partition, ...]
    laminal: Partition


@dataclass(frozen=True)
class CWitness:
    """Certificate that one pair is an ancillary conditional of the other.

    ``parent`` names which argument carries the ancillary ("first" or
    "second"); conditioning the parent on the block of its observed point
    and applying ``bijection`` reproduces the child pair exactly.
    """

    parent: str
    ancillary: Partition
    conditional: ModelDataPair
    bijection: tuple[int, ...]


def block_masses(model: FiniteModel, partition: Partition) -> Optional[
    tuple[Fraction, ...]
]:
    """Per-block masses if they are parameter-free, else None."""
    masses = []
    for block in partition.blocks:
        sums = {sum(row[x] for x in block) for row in model.probs}
        if len(sums) > 1:
            return None
        masses.append(sums.pop())
    return tuple(masses)


def is_ancillary(model: FiniteModel, partition: Partition) -> bool:
    """True iff every block has the same exact mass under every parameter."""
    return block_masses(model, partition) is not None


def enumerate_ancillaries(
    model: FiniteModel, max_space: int = DEFAULT_MAX_SPACE
) -> list[Partition]:
    """All ancillary partitions of the sample space, in canonical order."""
    if model.n_points > max_space:
        raise SpaceTooLarge(
            f"|X| = {model.n_points} exceeds enumeration bound {max_space}"
        )
    return [
        p for p in all_partitions(model.n_points) if is_ancillary(model, p)
    ]


def maximal_ancillaries(
    model: FiniteModel, max_space: int = DEFAULT_MAX_SPACE
) -> list[Partition]:
    """Refinement-maximal ancillaries: no other ancillary strictly refines them."""
    ancillaries = enumerate_ancillaries(model, max_space)
    out = []
    for a in ancillaries:
        if not any(b != a and b.refines(a) for b in ancillaries):
            out.append(a)
    return out


def laminal_ancillary(
    model: FiniteModel, max_space: int = DEFAULT_MAX_SPACE
) -> Partition:
    """The finest ancillary that is a function of every maximal ancillary.

    Raises NotUnique (carrying the antichain of finest candidates) if no
    single finest candidate exists.
    """
    ancillaries = enumerate_ancillaries(model, max_space)
    maximal = maximal_ancillaries(model, max_space)
    candidates = [
        a
        for a in ancillaries
        if all(is_function_of(a, m) for m in maximal)
    ]
    finest = [
        a
        for a in candidates
        if all(a.refines(b) for b in candidates)
    ]
    if len(finest) != 1:
        minimal = [
            a
            for a in candidates
            if not any(b != a and b.refines(a) for b in candidates)
        ]
        raise NotUnique("no unique finest common-coarsening ancillary", minimal)
    return finest[0]


def ancillary_catalog(
    model: FiniteModel, max_space: int = DEFAULT_MAX_SPACE
) -> AncillaryCatalog:
    return AncillaryCatalog(
        tuple(enumerate_ancillaries(model, max_space)),
        tuple(maximal_ancillaries(model, max_space)),
        laminal_ancillary(model, max_space),
    )


def condition_on_block(
    pair: ModelDataPair, ancillary: Partition
) -> ModelDataPair:
    """Conditional pair given the ancillary block of the observed point."""
    masses = block_masses(pair.model, ancillary)
    if masses is None:
        raise NotAncillary("partition has parameter-dependent block masses")
    b = ancillary.block_index_of(pair.observed)
    block = sorted(ancillary.blocks[b])
    mass = masses[b]
    labels = tuple(pair.model.sample_labels[x] for x in block)
    rows = tuple(
        tuple(row[x] / mass for x in block) for row in pair.model.probs
    )
    return ModelDataPair(
        FiniteModel(pair.model.theta_labels, labels, rows),
        block.index(pair.observed),
    )


def _conditioning_witness(
    parent: ModelDataPair,
    child: ModelDataPair,
    which: str,
    max_space: int,
    admissible: Optional[Partition],
) -> Optional[CWitness]:
    if child.model.n_points > parent.model.n_points:
        return None
    for a in enumerate_ancillaries(parent.model, max_space):
        if len(a.block_of(parent.observed)) != child.model.n_points:
            continue
        if admissible is not None and not is_function_of(a, admissible):
            continue
        conditional = condition_on_block(parent, a)
        phi = pairs_isomorphic(conditional, child)
        if phi is not None:
            return CWitness(which, a, conditional, phi)
    return None


def c_related(
    p1: ModelDataPair,
    p2: ModelDataPair,
    max_space: int = DEFAULT_MAX_SPACE,
    durbin: bool = False,
) -> Optional[CWitness]:
    """One conditioning step (either direction), up to isomorphism.

    Present iff some ancillary of one model conditions its pair to a copy
    of the other. The trivial ancillary makes C reflexive and relates any
    two isomorphic pairs. With ``durbin=True`` the witnessing ancillary
    must be a function of the parent's minimal sufficient partition.
    """
    if p1.model.theta_labels != p2.model.theta_labels:
        raise ParameterSpaceMismatch(
            f"{p1.model.theta_labels} vs {p2.model.theta_labels}"
        )
    mss1 = likelihood_partition(p1.model) if durbin else None
    witness = _conditioning_witness(p1, p2, "first", max_space, mss1)
    if witness is not None:
        return witness
    mss2 = likelihood_partition(p2.model) if durbin else None
    return _conditioning_witness(p2, p1, "second", max_space, mss2)


def durbin_c_related(
    p1: ModelDataPair, p2: ModelDataPair, max_space: int = DEFAULT_MAX_SPACE
) -> Optional[CWitness]:
    """C restricted to ancillaries that are functions of the parent's MSS."""
    return c_related(p1, p2, max_space, durbin=True)


def verify_c_witness(
    p1: ModelDataPair, p2: ModelDataPair, witness: CWitness
) -> bool:
    """Independent re-check of a conditioning certificate."""
    parent, child = (p1, p2) if witness.parent == "first" else (p2, p1)
    if not is_ancillary(parent.model, witness.ancillary):
        return False
    conditional = condition_on_block(parent, witness.ancillary)
    if conditional != witness.conditional:
        return False
    phi = witness.bijection
    m1, m2 = conditional.model, child.model
    if m1.theta_labels != m2.theta_labels or len(phi) != m1.n_points:
        return False
    if sorted(phi) != list(range(m2.n_points)):
        return False
    if phi[conditional.observed] != child.observed:
        return False
    return all(
        m1.column(x) == m2.column(phi[x]) for x in range(m1.n_points)
    )
