"""Weight vectors and the cyclic groups attached to their coordinate charts.

A weight vector (a_0; a_1, ..., a_m) encodes a diagonal circle action with one
negative exponent; each coordinate chart of the associated space carries a
cyclic quotient group whose order is the weight at that slot. This module is
pure integer arithmetic; everything is exact and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable


@dataclass(frozen=True)
class WeightVector:
    """Leading entry a0 plus the remaining entries (a_1..a_m), all integers."""

    a0: int
    rest: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rest", tuple(int(v) for v in self.rest))

    @property
    def m(self) -> int:
        return len(self.rest)

    def entries(self) -> tuple[int, ...]:
        return (self.a0, *self.rest)

    def __str__(self) -> str:
        return "(" + str(self.a0) + ";" + ",".join(str(v) for v in self.rest) + ")"


@dataclass(frozen=True)
class CyclicGroupSpec:
    """Cyclic group of the given order acting diagonally with these exponents.

    Exponents are taken mod the order and may be negative as written.
    """

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(v) for v in self.exponents))

    @property
    def m(self) -> int:
        return len(self.exponents)

    def entries(self) -> tuple[int, ...]:
        return (self.order, *self.exponents)

    def __str__(self) -> str:
        return "(" + str(self.order) + ";" + ",".join(str(v) for v in self.exponents) + ")"


@dataclass(frozen=True)
class ValidationResult:
    positive: bool
    unit_gcd: bool
    pairwise_coprime: bool
    isolated: bool

    @property
    def ok(self) -> bool:
        return self.positive and self.unit_gcd and self.pairwise_coprime and self.isolated


def _pairwise_coprime(values: Iterable[int]) -> bool:
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if gcd(vals[i], vals[j]) != 1:
                return False
    return True


def validate_weight_vector(w: WeightVector) -> ValidationResult:
    """Check positivity, overall gcd 1, pairwise coprimality of the rest,
    and isolatedness (gcd(a_0, a_i) = 1 for every i)."""
    entries = w.entries()
    positive = all(v >= 1 for v in entries)
    overall = 0
    for v in entries:
        overall = gcd(overall, abs(v))
    unit_gcd = overall == 1
    pairwise = _pairwise_coprime(w.rest)
    isolated = all(gcd(w.a0, v) == 1 for v in w.rest)
    return ValidationResult(positive, unit_gcd, pairwise, isolated)


def full_pairwise_coprime(w: WeightVector) -> bool:
    """All m+1 entries pairwise coprime: the condition for every chart
    singularity of the associated space to be isolated."""
    return _pairwise_coprime(w.entries())


def residues(b: CyclicGroupSpec) -> CyclicGroupSpec:
    """Minimal positive residues of the exponents, each in [1, order].

    Requires order > 1 (for order 1 the group is trivial and residues are
    meaningless).
    """
    if b.order <= 1:
        raise ValueError("residues need order > 1, got %d" % b.order)
    red = tuple(v % b.order or b.order for v in b.exponents)
    return CyclicGroupSpec(b.order, red)


def congruent(b: CyclicGroupSpec, c: CyclicGroupSpec) -> bool:
    """Same order and entrywise congruent exponents mod that order."""
    if b.order != c.order or b.m != c.m:
        return False
    return all((x - y) % b.order == 0 for x, y in zip(b.exponents, c.exponents))


def chart_group(w: WeightVector, slot: int) -> CyclicGroupSpec:
    """Cyclic group of the coordinate chart at the given slot (1-based into
    the rest entries): order a_slot, exponents (-a_0, a_1, ..., a_m) with the
    slot entry removed."""
    if not (1 <= slot <= w.m):
        raise ValueError("slot out of range")
    order = w.rest[slot - 1]
    others = w.rest[: slot - 1] + w.rest[slot:]
    return CyclicGroupSpec(order, (-w.a0, *others))


def singular_points(w: WeightVector) -> list[tuple[int, CyclicGroupSpec]]:
    """Chart groups at every slot with weight > 1, as (slot, group) pairs.

    Requires pairwise coprime rest entries so that the listed points are
    genuinely isolated.
    """
    if not _pairwise_coprime(w.rest):
        raise ValueError("singular_points requires pairwise coprime entries")
    return [(i, chart_group(w, i)) for i in range(1, w.m + 1) if w.rest[i - 1] > 1]


def gamma_group(w: WeightVector) -> CyclicGroupSpec:
    """The cyclic group at infinity: order a_0, exponents a_i mod a_0."""
    return CyclicGroupSpec(w.a0, tuple(v % w.a0 for v in w.rest))


def is_isolated_group(b: CyclicGroupSpec) -> bool:
    """gcd(order, exponent) = 1 for every exponent (isolated fixed point)."""
    return all(gcd(b.order, v) == 1 for v in b.exponents)


def canonical_residue_key(
    b: CyclicGroupSpec, unit_canonicalization: bool = False
) -> tuple[int, tuple[int, ...]]:
    """Canonical key for memoization: order plus sorted minimal residues.

    With unit_canonicalization the key is minimized over multiplication of
    the residue tuple by every unit mod the order, identifying group
    presentations that differ by a generator change.
    """
    if b.order == 1:
        return (1, tuple(1 for _ in b.exponents))
    base = tuple(sorted(v % b.order or b.order for v in b.exponents))
    if not unit_canonicalization:
        return (b.order, base)
    best = base
    for u in range(1, b.order):
        if gcd(u, b.order) != 1:
            continue
        cand = tuple(sorted((u * v) % b.order or b.order for v in base))
        if cand < best:
            best = cand
    return (b.order, best)


def group_with_multiplicity(values: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Group repeated weights: returns ascending distinct values and the
    multiplicity counts n_j (number of EXTRA repeats, so a value appearing
    t times has n_j = t - 1)."""
    vals = sorted(int(v) for v in values)
    if not vals:
        raise ValueError("empty weight list")
    distinct: list[int] = []
    mults: list[int] = []
    for v in vals:
        if distinct and distinct[-1] == v:
            mults[-1] += 1
        else:
            distinct.append(v)
            mults.append(0)
    return tuple(distinct), tuple(mults)


@dataclass(frozen=True)
class GroupedWeights:
    """Weight vector in grouped form: distinct ascending values a_1 < ... < a_l
    with extra-repeat counts n_j, so the flat form repeats a_j exactly n_j + 1
    times."""

    a0: int
    values: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "mults", tuple(int(v) for v in self.mults))
        if self.a0 < 1 or any(v < 1 for v in self.values):
            raise ValueError("weights must be positive")
        if any(n < 0 for n in self.mults):
            raise ValueError("multiplicities must be >= 0")
        if len(self.values) != len(self.mults):
            raise ValueError("values and mults must have equal length")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("grouped values must be strictly ascending")

    @property
    def ell(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return self.ell + sum(self.mults)

    @property
    def c(self) -> int:
        prod = self.a0
        for v in self.values:
            prod *= v
        return prod

    def flat(self) -> WeightVector:
        rest: list[int] = []
        for v, n in zip(self.values, self.mults):
            rest.extend([v] * (n + 1))
        return WeightVector(self.a0, tuple(rest))

    def __str__(self) -> str:
        return str(self.flat())


def grouped_weights(w: WeightVector) -> GroupedWeights:
    """Group a flat weight vector by repeated values (ascending)."""
    values, mults = group_with_multiplicity(w.rest)
    return GroupedWeights(w.a0, values, mults)
