"""The relation algebra on model-data pairs: one-step oracles for S, C, L
and variants, finite-universe equivalence closure with witness chains, and
the Birnbaum / EFM mixture constructions."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .ancillarity import (
    DEFAULT_MAX_SPACE,
    CWitness,
    c_related,
    condition_on_block,
    verify_c_witness,
)
from .errors import NotLRelated, ParameterSpaceMismatch
from .model import (
    FiniteModel,
    ModelDataPair,
    canonical_form,
    likelihood_vector,
    proportional,
)
from .partition import Partition
from .sufficiency import SWitness, s_related


class RelationKind(enum.Enum):
    S = "S"
    C = "C"
    L = "L"
    S_OR_C = "SC"
    DURBIN_C = "DURBIN"


StepWitness = Union[SWitness, CWitness, Fraction]


def l_related(
    p1: ModelDataPair, p2: ModelDataPair
) -> Optional[Fraction]:
    """Positive c with likelihood(p1) = c * likelihood(p2), if any."""
    if p1.model.theta_labels != p2.model.theta_labels:
        raise ParameterSpaceMismatch(
            f"{p1.model.theta_labels} vs {p2.model.theta_labels}"
        )
    return proportional(likelihood_vector(p1), likelihood_vector(p2))


def related(
    p1: ModelDataPair,
    p2: ModelDataPair,
    kind: RelationKind,
    max_space: int = DEFAULT_MAX_SPACE,
) -> Optional[StepWitness]:
    """Dispatch to the one-step oracle for the given relation kind."""
    if kind is RelationKind.S:
        return s_related(p1, p2)
    if kind is RelationKind.C:
        return c_related(p1, p2, max_space)
    if kind is RelationKind.DURBIN_C:
        return c_related(p1, p2, max_space, durbin=True)
    if kind is RelationKind.L:
        return l_related(p1, p2)
    witness = s_related(p1, p2)
    if witness is not None:
        return witness
    return c_related(p1, p2, max_space)


@dataclass(frozen=True)
class ChainStep:
    kind: RelationKind
    witness: StepWitness
    # False when the recorded witness was computed for the reversed node
    # order (relations are symmetric, certificates are oriented)
    forward: bool = True


@dataclass(frozen=True)
class WitnessChain:
    """An explicit chain of one-step relations certifying closure membership.

    ``steps[i]`` relates ``nodes[i]`` and ``nodes[i+1]``; each step can be
    re-checked independently with :func:`verify_chain`.
    """

    nodes: tuple[ModelDataPair, ...]
    steps: tuple[ChainStep, ...]


def verify_chain(
    chain: WitnessChain, max_space: int = DEFAULT_MAX_SPACE
) -> bool:
    """Re-run the independent oracle on every consecutive node pair."""
    if len(chain.nodes) != len(chain.steps) + 1:
        return False
    for a, b, step in zip(chain.nodes, chain.nodes[1:], chain.steps):
        if related(a, b, step.kind, max_space) is None:
            return False
        if isinstance(step.witness, CWitness):
            first, second = (a, b) if step.forward else (b, a)
            if not verify_c_witness(first, second, step.witness):
                return False
    return True


# ---------------------------------------------------------------------------
# Mixture constructions


def _mixture_model(
    p1: ModelDataPair,
    p2: ModelDataPair,
    w1: Fraction,
    w2: Fraction,
) -> FiniteModel:
    m1, m2 = p1.model, p2.model
    if m1.theta_labels != m2.theta_labels:
        raise ParameterSpaceMismatch(
            f"{m1.theta_labels} vs {m2.theta_labels}"
        )
    labels = tuple(f"1:{s}" for s in m1.sample_labels) + tuple(
        f"2:{s}" for s in m2.sample_labels
    )
    rows = tuple(
        tuple(w1 * v for v in r1) + tuple(w2 * v for v in r2)
        for r1, r2 in zip(m1.probs, m2.probs)
    )
    return FiniteModel(m1.theta_labels, labels, rows)


def component_indicator(p1: ModelDataPair, p2: ModelDataPair) -> Partition:
    """The two-block partition of a mixture space by component of origin."""
    n1, n2 = p1.model.n_points, p2.model.n_points
    return Partition.of(n1 + n2, [range(n1), range(n1, n1 + n2)])


def birnbaumize(
    p1: ModelDataPair, p2: ModelDataPair
) -> tuple[FiniteModel, ModelDataPair, ModelDataPair]:
    """Equal-weight mixture on the disjoint union, plus the embedded pairs.

    The component indicator is ancillary in the mixture (each component
    carries mass 1/2 under every parameter).
    """
    half = Fraction(1, 2)
    mixture = _mixture_model(p1, p2, half, half)
    e1 = ModelDataPair(mixture, p1.observed)
    e2 = ModelDataPair(mixture, p1.model.n_points + p2.observed)
    return mixture, e1, e2


def birnbaum_chain(
    p1: ModelDataPair,
    p2: ModelDataPair,
    max_space: int = DEFAULT_MAX_SPACE,
) -> WitnessChain:
    """The three-step chain p1 -C- (M*,(1,x1)) -S- (M*,(2,x2)) -C- p2.

    Requires proportional likelihoods; every step is verified by the
    corresponding one-step oracle before the chain is returned.
    """
    if l_related(p1, p2) is None:
        raise NotLRelated("inputs do not have proportional likelihoods")
    _, e1, e2 = birnbaumize(p1, p2)
    w1 = c_related(p1, e1, max_space)
    ws = s_related(e1, e2)
    w2 = c_related(e2, p2, max_space)
    if w1 is None or ws is None or w2 is None:
        raise NotLRelated("mixture chain failed oracle verification")
    return WitnessChain(
        (p1, e1, e2, p2),
        (
            ChainStep(RelationKind.C, w1),
            ChainStep(RelationKind.S, ws),
            ChainStep(RelationKind.C, w2),
        ),
    )


@dataclass(frozen=True)
class DurbinChainAttempt:
    """Outcome of rebuilding the Birnbaum chain under the Durbin restriction."""

    indicator_is_function_of_mss: bool
    first_step: Optional[CWitness]
    last_step: Optional[CWitness]

    @property
    def succeeded(self) -> bool:
        return self.first_step is not None and self.last_step is not None


def birnbaum_chain_durbin(
    p1: ModelDataPair,
    p2: ModelDataPair,
    max_space: int = DEFAULT_MAX_SPACE,
) -> DurbinChainAttempt:
    """Attempt the Birnbaum chain with only MSS-measurable ancillaries.

    For non-isomorphic L-related pairs the mixture's minimal sufficient
    partition merges the two embedded observations into one block, so the
    component indicator is inadmissible and the outer C steps fail.
    """
    from .partition import is_function_of
    from .sufficiency import likelihood_partition

    if l_related(p1, p2) is None:
        raise NotLRelated("inputs do not have proportional likelihoods")
    mixture, e1, e2 = birnbaumize(p1, p2)
    indicator = component_indicator(p1, p2)
    admissible = is_function_of(indicator, likelihood_partition(mixture))
    first = c_related(p1, e1, max_space, durbin=True)
    last = c_related(e2, p2, max_space, durbin=True)
    return DurbinChainAttempt(admissible, first, last)


@dataclass(frozen=True)
class EfmResult:
    """Unequal-weight mixture relating two L-related pairs by C steps alone.

    ``parent`` is the mixture observed at the embedded first observation;
    conditioning it on ``indicator`` recovers p1 and conditioning on
    ``swapped_indicator`` (the indicator pushed through the swap of the two
    equal-probability observed points) recovers p2.
    """

    parent: ModelDataPair
    indicator: Partition
    swapped_indicator: Partition
    chain: WitnessChain


def efm_parent(
    p1: ModelDataPair,
    p2: ModelDataPair,
    max_space: int = DEFAULT_MAX_SPACE,
) -> EfmResult:
    """Mixture with weights 1/(1+c), c/(1+c) equalizing the observed points.

    With likelihood(p1) = c * likelihood(p2) the two embedded observed
    points get exactly equal probability under every parameter, so swapping
    them is measure-preserving and carries the component indicator to a
    second ancillary whose conditional reproduces p2. Returns the verified
    two-step C-only chain p1 - parent - p2.
    """
    c = l_related(p1, p2)
    if c is None:
        raise NotLRelated("inputs do not have proportional likelihoods")
    w1 = Fraction(1, 1 + c)
    w2 = c / (1 + c)
    mixture = _mixture_model(p1, p2, w1, w2)
    n1 = p1.model.n_points
    i_obs1 = p1.observed
    i_obs2 = n1 + p2.observed
    for row in mixture.probs:
        assert row[i_obs1] == row[i_obs2]
    parent = ModelDataPair(mixture, i_obs1)
    indicator = component_indicator(p1, p2)
    swap = {i_obs1: i_obs2, i_obs2: i_obs1}
    swapped = Partition.of(
        mixture.n_points,
        [
            [swap.get(x, x) for x in block]
            for block in indicator.blocks
        ],
    )
    step1 = c_related(p1, parent, max_space)
    step2 = c_related(parent, p2, max_space)
    if step1 is None or step2 is None:
        raise NotLRelated("EFM chain failed oracle verification")
    chain = WitnessChain(
        (p1, parent, p2),
        (ChainStep(RelationKind.C, step1), ChainStep(RelationKind.C, step2)),
    )
    return EfmResult(parent, indicator, swapped, chain)


# ---------------------------------------------------------------------------
# Finite universes, closure, relation-law audit


@dataclass(frozen=True)
class Universe:
    """A finite set of canonical, pairwise non-isomorphic model-data pairs."""

    members: tuple[ModelDataPair, ...]

    @staticmethod
    def of(pairs: Sequence[ModelDataPair]) -> "Universe":
        canon = []
        seen = set()
        theta = None
        for p in pairs:
            if theta is None:
                theta = p.model.theta_labels
            elif p.model.theta_labels != theta:
                raise ParameterSpaceMismatch(
                    "universe members must share one parameter space"
                )
            c = canonical_form(p)
            if c not in seen:
                seen.add(c)
                canon.append(c)
        return Universe(tuple(canon))


@dataclass(frozen=True)
class ClosureEdge:
    i: int
    j: int
    kind: RelationKind
    witness: StepWitness


@dataclass
class ClosureResult:
    """Connected components of the one-step relation graph on a universe."""

    universe: Universe
    kind: RelationKind
    classes: tuple[tuple[int, ...], ...]
    edges: tuple[ClosureEdge, ...]

    def class_of(self, index: int) -> tuple[int, ...]:
        for cls in self.classes:
            if index in cls:
                return cls
        raise IndexError(index)

    def chain(self, i: int, j: int) -> Optional[WitnessChain]:
        """Shortest witness chain between two members, if same class."""
        if i == j:
            members = self.universe.members
            return WitnessChain((members[i],), ())
        adjacency: dict[int, list[ClosureEdge]] = {}
        for e in self.edges:
            adjacency.setdefault(e.i, []).append(e)
            adjacency.setdefault(e.j, []).append(e)
        prev: dict[int, tuple[int, ClosureEdge]] = {}
        queue = deque([i])
        seen = {i}
        while queue:
            u = queue.popleft()
            if u == j:
                break
            for e in adjacency.get(u, []):
                v = e.j if e.i == u else e.i
                if v not in seen:
                    seen.add(v)
                    prev[v] = (u, e)
                    queue.append(v)
        if j not in prev:
            return None
        path = [j]
        steps: list[ChainStep] = []
        node = j
        while node != i:
            node, edge = prev[node]
            path.append(node)
            steps.append(ChainStep(edge.kind, edge.witness, edge.i == node))
        path.reverse()
        steps.reverse()
        members = self.universe.members
        return WitnessChain(tuple(members[k] for k in path), tuple(steps))


def closure(
    universe: Universe,
    kind: RelationKind,
    max_space: int = DEFAULT_MAX_SPACE,
) -> ClosureResult:
    """Equivalence classes of the chain-closure restricted to the universe.

    Chains never leave the universe; enlarging it can only merge classes.
    """
    members = universe.members
    n = len(members)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if kind is RelationKind.S_OR_C:
                witness: Optional[StepWitness] = s_related(
                    members[i], members[j]
                )
                step_kind = RelationKind.S
                if witness is None:
                    witness = c_related(members[i], members[j], max_space)
                    step_kind = RelationKind.C
            else:
                witness = related(members[i], members[j], kind, max_space)
                step_kind = kind
            if witness is not None:
                edges.append(ClosureEdge(i, j, step_kind, witness))
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = tuple(
        tuple(sorted(g)) for g in sorted(groups.values(), key=min)
    )
    return ClosureResult(universe, kind, classes, tuple(edges))


@dataclass(frozen=True)
class LawReport:
    holds: bool
    counterexamples: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RelationPropertiesReport:
    kind: RelationKind
    size: int
    reflexive: LawReport
    symmetric: LawReport
    transitive: LawReport

    @property
    def is_equivalence(self) -> bool:
        return (
            self.reflexive.holds
            and self.symmetric.holds
            and self.transitive.holds
        )


def relation_properties_report(
    universe: Universe,
    kind: RelationKind,
    max_space: int = DEFAULT_MAX_SPACE,
    max_counterexamples: int = 5,
) -> RelationPropertiesReport:
    """Audit reflexivity, symmetry and transitivity of the one-step relation.

    Every ordered pair is decided by the actual oracle; failures are
    reported with explicit index tuples into the universe.
    """
    members = universe.members
    n = len(members)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if related(members[i], members[j], kind, max_space) is not None:
                neighbors[i].add(j)
    refl = [(i,) for i in range(n) if i not in neighbors[i]]
    sym = [
        (i, j)
        for i in range(n)
        for j in neighbors[i]
        if i not in neighbors[j]
    ]
    trans = []
    for i in range(n):
        for j in neighbors[i]:
            missing = neighbors[j] - neighbors[i]
            for k in sorted(missing):
                trans.append((i, j, k))
                if len(trans) >= max_counterexamples:
                    break
            if len(trans) >= max_counterexamples:
                break
        if len(trans) >= max_counterexamples:
            break
    return RelationPropertiesReport(
        kind,
        n,
        LawReport(not refl, tuple(refl[:max_counterexamples])),
        LawReport(not sym, tuple(sym[:max_counterexamples])),
        LawReport(not trans, tuple(trans)),
    )


def conditional_pairs(
    pair: ModelDataPair, max_space: int = DEFAULT_MAX_SPACE
) -> list[tuple[Partition, ModelDataPair]]:
    """All one-step conditionals of a pair, one per ancillary partition."""
    from .ancillarity import enumerate_ancillaries

    return [
        (a, condition_on_block(pair, a))
        for a in enumerate_ancillaries(pair.model, max_space)
    ]
