"""Cost functions on owner joins and the efficiency checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .enumeration import disjoint_pairs, mask_to_set, mask_to_tuple
from .errors import EmptySet, InputError, SubsetLimitExceeded, UndefinedCost
from .rational import to_fraction
from .resource_model import ResourceUniverse, check_owners

DEFAULT_SUBSET_BOUND = 20
DEFAULT_PAIR_BOUND = 12


@dataclass(frozen=True)
class OperatorLinearCost:
    """Fixed cost paid once by the cheapest member plus per-measure marginal costs.

    ``cost(P) = sum(marginal[i] * x[i] for i in P) + min(fixed[i] for i in P)``
    """

    fixed: tuple[Fraction, ...]
    marginal: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        fixed = tuple(to_fraction(c) for c in self.fixed)
        marginal = tuple(to_fraction(d) for d in self.marginal)
        if len(fixed) != len(marginal):
            raise InputError("fixed and marginal cost vectors differ in length")
        if any(c < 0 for c in fixed) or any(d < 0 for d in marginal):
            raise InputError("operator-linear costs must be nonnegative")
        object.__setattr__(self, "fixed", fixed)
        object.__setattr__(self, "marginal", marginal)


@dataclass(frozen=True)
class TabulatedCost:
    """Explicit costs per owner join; joins missing from the table are undefined."""

    table: Mapping[frozenset[int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        table = {frozenset(k): to_fraction(v) for k, v in dict(self.table).items()}
        object.__setattr__(self, "table", table)

    def __hash__(self) -> int:
        return hash(frozenset(self.table.items()))


CostModel = OperatorLinearCost | TabulatedCost


def _check_sizes(model: CostModel, u: ResourceUniverse) -> None:
    if isinstance(model, OperatorLinearCost) and len(model.fixed) != u.n:
        raise InputError(f"cost model has {len(model.fixed)} owners, universe has {u.n}")


def cost(model: CostModel, u: ResourceUniverse, p: Iterable[int]) -> Fraction:
    p = check_owners(u, p)
    if not p:
        raise EmptySet()
    if isinstance(model, OperatorLinearCost):
        _check_sizes(model, u)
        variable = sum((model.marginal[i] * u.weights[i] for i in p), Fraction(0))
        return variable + min(model.fixed[i] for i in p)
    try:
        return model.table[p]
    except KeyError:
        raise UndefinedCost(p) from None


def operator_of(model: OperatorLinearCost, p: Iterable[int]) -> int:
    """Lowest-index member with the smallest fixed cost (reporting only)."""
    return min(p, key=lambda i: (model.fixed[i], i))


def delta(model: OperatorLinearCost) -> Fraction:
    """Largest pairwise difference of marginal costs."""
    return max(model.marginal) - min(model.marginal)


def satisfies_prop1_condition(model: OperatorLinearCost) -> bool:
    """Sufficient condition for the grand pool to be cost efficient: delta <= min fixed cost."""
    return delta(model) <= min(model.fixed)


def is_viable(p: Iterable[int], cost_model: CostModel, reward, u: ResourceUniverse) -> bool:
    from .reward_model import evaluate

    p = check_owners(u, p)
    if not p:
        raise EmptySet()
    return evaluate(reward, u.measure(p)) >= cost(cost_model, u, p)


@dataclass(frozen=True)
class EfficiencyResult:
    efficient: bool
    witness: frozenset[int] | None = None
    subsets_checked: int = 0

    def __bool__(self) -> bool:
        return self.efficient


def _integer_costs(model: OperatorLinearCost, u: ResourceUniverse, members: Sequence[int]):
    """Per-subset (scaled cost, scaled measure) integer tables for an operator-linear model.

    Costs are scaled by ``L*D`` and measures by ``D``, so ratio comparisons
    via cross-multiplication are exact on plain ints.
    """
    xs = [u.weights[i] for i in members]
    D = lcm(*(x.denominator for x in xs))
    L = lcm(*(v.denominator for i in members for v in (model.fixed[i], model.marginal[i])))
    a = [int(x * D) for x in xs]
    c = [int(model.fixed[i] * L) for i in members]
    dx = [int(model.marginal[i] * L) * ai for i, ai in zip(members, a)]
    m = len(members)
    size = 1 << m
    sig = [0] * size
    lin = [0] * size
    low = [0] * size
    for mask in range(1, size):
        b = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        sig[mask] = sig[rest] + a[b]
        lin[mask] = lin[rest] + dx[b]
        low[mask] = c[b] if rest == 0 else min(low[rest], c[b])
    costs = [lin[mask] + D * low[mask] for mask in range(size)]
    return costs, sig


def is_cost_efficient(
    p: Iterable[int],
    cost_model: CostModel,
    u: ResourceUniverse,
    max_owners: int = DEFAULT_SUBSET_BOUND,
) -> EfficiencyResult:
    """Check ``c(P)/s(P) <= c(S)/s(S)`` for every nonempty ``S`` of ``P`` by enumeration.

    The witness, when there is one, is the lexicographically smallest
    violating subset.
    """
    members = sorted(check_owners(u, p))
    if not members:
        raise EmptySet()
    if len(members) > max_owners:
        raise SubsetLimitExceeded(len(members), max_owners)
    full = (1 << len(members)) - 1

    if isinstance(cost_model, OperatorLinearCost):
        _check_sizes(cost_model, u)
        costs, sig = _integer_costs(cost_model, u, members)
        cp, sp = costs[full], sig[full]
        violators = [m for m in range(1, full + 1) if cp * sig[m] > costs[m] * sp]
    else:
        cp, sp = cost(cost_model, u, members), u.measure(members)
        violators = []
        for m in range(1, full + 1):
            s = mask_to_set(m, members)
            if s in cost_model.table and cp * u.measure(s) > cost_model.table[s] * sp:
                violators.append(m)

    if not violators:
        return EfficiencyResult(True, None, full)
    worst = min(violators, key=lambda m: mask_to_tuple(m, members))
    return EfficiencyResult(False, mask_to_set(worst, members), full)


@dataclass(frozen=True)
class ScaleWitness:
    first: frozenset[int]
    second: frozenset[int]
    merged_cost: Fraction
    separate_cost: Fraction


def check_economies_of_scale(
    cost_model: CostModel,
    u: ResourceUniverse,
    max_owners: int = DEFAULT_PAIR_BOUND,
) -> ScaleWitness | None:
    """Return ``None`` when merging any two disjoint joins never costs more.

    Pairs touching an undefined tabulated entry are skipped.
    """
    if u.n > max_owners:
        raise SubsetLimitExceeded(u.n, max_owners)
    members = list(u.owners)
    cache: dict[int, Fraction | None] = {}

    def c(mask: int) -> Fraction | None:
        if mask not in cache:
            try:
                cache[mask] = cost(cost_model, u, mask_to_set(mask, members))
            except UndefinedCost:
                cache[mask] = None
        return cache[mask]

    best = None
    for first, second in disjoint_pairs(u.n):
        merged, a, b = c(first | second), c(first), c(second)
        if merged is None or a is None or b is None or merged <= a + b:
            continue
        key = (mask_to_tuple(first, members), mask_to_tuple(second, members))
        if best is None or key < best[0]:
            best = (key, ScaleWitness(mask_to_set(first, members), mask_to_set(second, members), merged, a + b))
    return None if best is None else best[1]
