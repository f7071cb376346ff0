"""Exact rational labelled polytopes, weighted inward normals, and lattices.

Everything here is exact: facets are affine functionals with rational
coefficients, stored as a primitive functional plus a positive rational label
weight (the labelled inward normal is weight times the primitive normal).
Lattice indices are computed by integer echelon reduction and gcds of maximal
minors, never by floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .polys import gcd_of_maximal_minors, solve_linear
from .weights import GroupedWeights, WeightVector, grouped_weights


@dataclass(frozen=True)
class Facet:
    """Affine functional L(x) = <normal, x> + offset, nonnegative on the
    polytope, together with the label weight; the weighted inward normal is
    weight * normal."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    weight: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(Fraction(v) for v in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight <= 0:
            raise ValueError("facet weight must be positive")

    def value(self, x: Sequence) -> Fraction:
        return sum((n * v for n, v in zip(self.normal, x)), self.offset)

    def weighted_normal(self) -> tuple[Fraction, ...]:
        return tuple(self.weight * n for n in self.normal)


@dataclass(frozen=True)
class LabelledPolytope:
    dimension: int
    facets: tuple[Facet, ...]
    bounded: bool
    interior_point: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "facets", tuple(self.facets))
        object.__setattr__(
            self, "interior_point", tuple(Fraction(v) for v in self.interior_point)
        )
        for f in self.facets:
            if len(f.normal) != self.dimension:
                raise ValueError("facet dimension mismatch")
        if any(f.value(self.interior_point) <= 0 for f in self.facets):
            raise ValueError("interior point is not interior")

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(f.value(x) > 0 for f in self.facets)
        return all(f.value(x) >= 0 for f in self.facets)

    def weighted_normals(self) -> list[tuple[Fraction, ...]]:
        return [f.weighted_normal() for f in self.facets]


def facet_distance(P: LabelledPolytope, x: Sequence) -> tuple[Fraction, ...]:
    """Primitive facet values L_r(x), one per facet; all positive iff x is
    interior."""
    if len(x) != P.dimension:
        raise ValueError("dimension mismatch")
    return tuple(f.value(x) for f in P.facets)


def block_layout(mults: Sequence[int]) -> list[tuple[int, int]]:
    """Joint-coordinate layout: positions of the per-block entries. Block j
    (1-based) owns position j-1 for its base entry and the returned (start,
    stop) slice for its fiber entries."""
    ell = len(mults)
    out = []
    pos = ell
    for n in mults:
        out.append((pos, pos + n))
        pos += n
    return out


def fibered_to_joint(x: Sequence, fibers: Sequence[Sequence]) -> tuple:
    """Map base coordinates x (length l) and per-block fiber simplex
    coordinates to the joint coordinates: base entry x_j(1 - sum fiber_j),
    fiber entries x_j * fiber_j."""
    ell = len(x)
    if len(fibers) != ell:
        raise ValueError("need one fiber tuple per block")
    head = []
    tail: list = []
    for xj, fib in zip(x, fibers):
        s = sum(fib, Fraction(0) if isinstance(xj, (Fraction, int)) else 0.0)
        head.append(xj * (1 - s))
        tail.extend(xj * t for t in fib)
    return tuple(head) + tuple(tail)


def joint_to_fibered(xt: Sequence, mults: Sequence[int]) -> tuple[tuple, list[tuple]]:
    """Inverse of fibered_to_joint on the locus where every block sum is
    nonzero: x_j is the block sum, fiber entries are the joint fiber entries
    divided by it."""
    ell = len(mults)
    if len(xt) != ell + sum(mults):
        raise ValueError("dimension mismatch")
    layout = block_layout(mults)
    x = []
    fibers = []
    for j in range(ell):
        start, stop = layout[j]
        block = list(xt[start:stop])
        xj = xt[j] + sum(block)
        if xj == 0:
            raise ZeroDivisionError("block sum vanishes; fiber coordinates undefined")
        x.append(xj)
        fibers.append(tuple(t / xj for t in block))
    return tuple(x), fibers


def wps_polytope(a, cone: bool = False) -> LabelledPolytope:
    """Moment polytope of the noncompact space for grouped weights a: the
    coordinate facets (block j labelled with weight c/a_j) plus, unless cone
    is set, the facet sum - 1 >= 0 labelled with weight c/a_0. The region is
    unbounded either way."""
    gw = a if isinstance(a, GroupedWeights) else grouped_weights(a if isinstance(a, WeightVector) else WeightVector(a[0], tuple(a[1:])))
    m = gw.m
    c = gw.c
    facets = []
    for j in range(gw.ell):
        e = [Fraction(0)] * m
        e[j] = Fraction(1)
        facets.append(Facet(tuple(e), Fraction(0), Fraction(c, gw.values[j])))
    layout = block_layout(gw.mults)
    for j in range(gw.ell):
        start, stop = layout[j]
        for pos in range(start, stop):
            e = [Fraction(0)] * m
            e[pos] = Fraction(1)
            facets.append(Facet(tuple(e), Fraction(0), Fraction(c, gw.values[j])))
    if not cone:
        ones = tuple(Fraction(1) for _ in range(m))
        facets.append(Facet(ones, Fraction(-1), Fraction(c, gw.a0)))
    interior = tuple(Fraction(2, m) for _ in range(m))
    return LabelledPolytope(m, tuple(facets), bounded=False, interior_point=interior)


@dataclass(frozen=True)
class Lattice:
    dimension: int
    generators: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "generators",
            tuple(tuple(Fraction(v) for v in g) for g in self.generators),
        )
        for g in self.generators:
            if len(g) != self.dimension:
                raise ValueError("generator dimension mismatch")


def standard_lattice(dim: int) -> Lattice:
    gens = []
    for i in range(dim):
        e = [Fraction(0)] * dim
        e[i] = Fraction(1)
        gens.append(tuple(e))
    return Lattice(dim, tuple(gens))


def wps_lattice(a) -> Lattice:
    """Lattice in R^l generated by the weighted normals of the base polytope,
    in the order (sum facet, coordinate facets)."""
    gw = a if isinstance(a, GroupedWeights) else grouped_weights(a if isinstance(a, WeightVector) else WeightVector(a[0], tuple(a[1:])))
    ell = gw.ell
    c = gw.c
    gens = [tuple(Fraction(c, gw.a0) for _ in range(ell))]
    for j in range(ell):
        e = [Fraction(0)] * ell
        e[j] = Fraction(c, gw.values[j])
        gens.append(tuple(e))
    return Lattice(ell, tuple(gens))


def _integer_echelon_basis(rows: list[list[int]], dim: int) -> list[list[int]]:
    """Echelon basis of the integer row lattice via unimodular operations
    (swap, negate, subtract integer multiples)."""
    work = [r[:] for r in rows if any(v != 0 for v in r)]
    rank_row = 0
    for col in range(dim):
        while True:
            nz = [i for i in range(rank_row, len(work)) if work[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(work[i][col]))
            p = nz[0]
            for i in nz[1:]:
                q = work[i][col] // work[p][col]
                work[i] = [a - q * b for a, b in zip(work[i], work[p])]
        nz = [i for i in range(rank_row, len(work)) if work[i][col] != 0]
        if nz:
            p = nz[0]
            work[rank_row], work[p] = work[p], work[rank_row]
            if work[rank_row][col] < 0:
                work[rank_row] = [-a for a in work[rank_row]]
            rank_row += 1
    return work[:rank_row]


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """Index of sub inside sup: express the sub generators in an echelon
    basis of sup (integrality certifies containment), then take the gcd of
    all maximal minors of the coordinate matrix."""
    if sub.dimension != sup.dimension:
        raise ValueError("dimension mismatch")
    dim = sub.dimension
    denoms = [v.denominator for g in sub.generators for v in g]
    denoms += [v.denominator for g in sup.generators for v in g]
    scale = lcm(*denoms) if denoms else 1
    sup_rows = [[int(v * scale) for v in g] for g in sup.generators]
    basis = _integer_echelon_basis(sup_rows, dim)
    if len(basis) != dim:
        raise ValueError("super lattice is rank deficient")
    bt = [[Fraction(basis[r][c]) for r in range(dim)] for c in range(dim)]
    coord_rows = []
    for g in sub.generators:
        target = [Fraction(int(v * scale)) for v in g]
        y = solve_linear([row[:] for row in bt], target)
        if any(v.denominator != 1 for v in y):
            raise ValueError("sub lattice is not contained in super lattice")
        coord_rows.append([int(v) for v in y])
    g = gcd_of_maximal_minors(coord_rows, dim)
    if g == 0:
        raise ValueError("sub lattice is rank deficient")
    return g


def vertices(P: LabelledPolytope) -> list[tuple[tuple[Fraction, ...], tuple[int, ...]]]:
    """All vertices, each with the indices of every facet vanishing there.
    Found by exact solves over all dimension-sized facet subsets."""
    from itertools import combinations

    dim = P.dimension
    seen: list[tuple[tuple[Fraction, ...], tuple[int, ...]]] = []
    for subset in combinations(range(len(P.facets)), dim):
        mat = [[Fraction(v) for v in P.facets[i].normal] for i in subset]
        rhs = [-P.facets[i].offset for i in subset]
        try:
            x = solve_linear([row[:] for row in mat], rhs)
        except ValueError:
            continue
        pt = tuple(x)
        if not P.contains(pt):
            continue
        if any(pt == p for p, _ in seen):
            continue
        active = tuple(i for i, f in enumerate(P.facets) if f.value(pt) == 0)
        seen.append((pt, active))
    return seen


def vertex_compatibility(P: LabelledPolytope) -> bool:
    """Simplicity check: at every vertex exactly dimension facets vanish and
    their normals are linearly independent (exact rank)."""
    from .polys import mat_det

    for pt, active in vertices(P):
        if len(active) != P.dimension:
            return False
        mat = [[Fraction(v) for v in P.facets[i].normal] for i in active]
        if mat_det(mat) == 0:
            return False
    return True


def _frac_str(v: Fraction) -> str:
    return str(Fraction(v))


def polytope_to_json(P: LabelledPolytope) -> str:
    payload = {
        "bounded": P.bounded,
        "dimension": P.dimension,
        "facets": [
            {
                "normal": [_frac_str(v) for v in f.normal],
                "offset": _frac_str(f.offset),
                "weight": _frac_str(f.weight),
            }
            for f in P.facets
        ],
        "interior_point": [_frac_str(v) for v in P.interior_point],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def polytope_from_json(text: str) -> LabelledPolytope:
    payload = json.loads(text)
    facets = tuple(
        Facet(
            tuple(Fraction(s) for s in f["normal"]),
            Fraction(f["offset"]),
            Fraction(f["weight"]),
        )
        for f in payload["facets"]
    )
    return LabelledPolytope(
        payload["dimension"],
        facets,
        payload["bounded"],
        tuple(Fraction(s) for s in payload["interior_point"]),
    )
