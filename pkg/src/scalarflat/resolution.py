"""Recursive classification of cyclic quotient singularities that admit an
iterated weighted-blow-up resolution, together with the resolution trees.

A group spec (b_0; b_1..b_m) is accepted ("yes") when some positive entrywise
lift of its residue tuple is either the smooth shape (b_0, 1, ..., 1) or a
fully pairwise-coprime weight vector all of whose chart singularities are
recursively accepted. The search over lifts is bounded, so the other verdict
is "unknown", never a rejection: the underlying arithmetic question is open.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .weights import (
    CyclicGroupSpec,
    WeightVector,
    canonical_residue_key,
    chart_group,
    full_pairwise_coprime,
    is_isolated_group,
    residues,
    singular_points,
)


@dataclass(frozen=True)
class ClassifierConfig:
    """Search bounds: residues r_i + k*b_0 with 0 <= k <= lift_bound are
    tried at each slot; recursion stops at max_depth. unit_canonicalization
    widens memo keys by generator changes of the group (rarely needed)."""

    lift_bound: int = 3
    max_depth: int = 64
    unit_canonicalization: bool = False
    memoize: bool = True

    def __post_init__(self) -> None:
        if self.lift_bound < 0:
            raise ValueError("lift_bound must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass(frozen=True)
class ResolutionTree:
    """One blow-up stage: the chosen lift at this node and, for every slot
    carrying a residual singularity, the subtree resolving it."""

    weights: WeightVector
    children: dict[int, "ResolutionTree"] = field(default_factory=dict)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children.values())

    def depth(self) -> int:
        if not self.children:
            return 1
        return 1 + max(c.depth() for c in self.children.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResolutionTree):
            return NotImplemented
        return self.weights == other.weights and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.weights, tuple(sorted(self.children.items(), key=lambda kv: kv[0]))))


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict "yes" (with a resolution tree) or "unknown" (with the search
    statistics of the exhausted bounded search)."""

    status: str
    tree: ResolutionTree | None
    stats: dict

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"


def _as_group(b) -> CyclicGroupSpec:
    if isinstance(b, CyclicGroupSpec):
        return b
    if isinstance(b, WeightVector):
        return CyclicGroupSpec(b.a0, b.rest)
    vals = [int(v) for v in b]
    if len(vals) < 2:
        raise ValueError("need a leading order and at least one exponent")
    return CyclicGroupSpec(vals[0], tuple(vals[1:]))


def euclid_overestimated(q: int, p: int) -> list[tuple[int, int]]:
    """Iterate (q, p) -> (p, p - (q mod p)) down to p = 1, returning every
    pair along the way. Requires coprime q > p >= 1; the second entry
    strictly decreases, so the list is finite."""
    if not (q > p >= 1):
        raise ValueError("need q > p >= 1")
    if gcd(q, p) != 1:
        raise ValueError("need coprime q, p")
    chain = [(q, p)]
    while chain[-1][1] > 1:
        qq, pp = chain[-1]
        nxt = (pp, pp - (qq % pp))
        assert nxt[1] < pp
        chain.append(nxt)
    return chain


def candidate_lifts(b, cfg: ClassifierConfig | None = None) -> list[WeightVector]:
    """Positive entrywise lifts of the residues of b by multiples of the
    order, keeping only the smooth shape (b_0, 1, ..., 1) or fully pairwise
    coprime tuples, ordered by max entry then lexicographically."""
    cfg = cfg or ClassifierConfig()
    group = _as_group(b)
    if group.order <= 1:
        return []
    red = residues(group)
    b0 = group.order
    per_slot = [[r + k * b0 for k in range(cfg.lift_bound + 1)] for r in red.exponents]
    out = []
    for combo in product(*per_slot):
        wv = WeightVector(b0, combo)
        if all(v == 1 for v in combo) or full_pairwise_coprime(wv):
            out.append(wv)
    out.sort(key=lambda w: (max(w.rest), w.rest))
    return out


def _smooth_leaf(group: CyclicGroupSpec) -> ResolutionTree:
    return ResolutionTree(WeightVector(max(group.order, 1), tuple(1 for _ in group.exponents)), {})


def _solve(
    group: CyclicGroupSpec,
    depth: int,
    stack: set,
    memo: dict | None,
    cfg: ClassifierConfig,
    stats: dict,
) -> tuple[str, ResolutionTree | None, bool]:
    """Returns (verdict, tree, tainted). tainted means the unknown verdict
    was truncated by the cycle guard or depth cap somewhere below, so it must
    not be memoized (a fresh evaluation could still succeed)."""
    stats["nodes"] += 1
    stats["depth_reached"] = max(stats["depth_reached"], depth)
    if group.order == 1:
        return "yes", _smooth_leaf(group), False
    red = residues(group)
    if all(r == 1 for r in red.exponents):
        # the smooth shape (b_0, 1, ..., 1) is preferred over any other lift
        return "yes", ResolutionTree(WeightVector(group.order, red.exponents), {}), False
    key = canonical_residue_key(group, cfg.unit_canonicalization)
    if memo is not None and memo.get(key) == "unknown":
        stats["memo_hits"] += 1
        return "unknown", None, False
    if key in stack:
        stats["truncations"] += 1
        return "unknown", None, True
    if depth >= cfg.max_depth:
        stats["truncations"] += 1
        return "unknown", None, True
    if memo is not None and memo.get(key) == "yes":
        stats["memo_hits"] += 1
        # fall through: the tree still has to be assembled below
    stack.add(key)
    tainted_any = False
    verdict, tree = "unknown", None
    try:
        for lift in candidate_lifts(red, cfg):
            stats["lifts_tried"] += 1
            if all(v == 1 for v in lift.rest):
                verdict, tree = "yes", ResolutionTree(lift, {})
                break
            children: dict[int, ResolutionTree] = {}
            ok = True
            for slot, chart in singular_points(lift):
                sub_verdict, sub_tree, sub_taint = _solve(chart, depth + 1, stack, memo, cfg, stats)
                tainted_any = tainted_any or sub_taint
                if sub_verdict != "yes":
                    ok = False
                    break
                children[slot] = sub_tree
            if ok:
                verdict, tree = "yes", ResolutionTree(lift, children)
                break
    finally:
        stack.discard(key)
    tainted = verdict == "unknown" and tainted_any
    if memo is not None and not tainted:
        memo[key] = verdict
    return verdict, tree, tainted


def classify(b, cfg: ClassifierConfig | None = None) -> ClassificationResult:
    """Decide whether the cyclic quotient described by b admits the iterated
    chart resolution, by bounded search over congruent lifts.

    b may be a CyclicGroupSpec, a WeightVector, or a plain (b_0, b_1, ...)
    sequence. The order must be >= 1 and coprime to every exponent.
    """
    cfg = cfg or ClassifierConfig()
    group = _as_group(b)
    if group.order < 1:
        raise ValueError("order must be >= 1")
    if not is_isolated_group(group):
        raise ValueError("non-isolated input: gcd(order, exponent) > 1 at some slot")
    stats = {"nodes": 0, "lifts_tried": 0, "memo_hits": 0, "truncations": 0, "depth_reached": 0}
    memo: dict | None = {} if cfg.memoize else None
    verdict, tree, _ = _solve(group, 0, set(), memo, cfg, stats)
    return ClassificationResult(verdict, tree, stats)


def _tree_payload(tree: ResolutionTree) -> dict:
    children = {}
    for slot in sorted(tree.children):
        children[str(slot)] = _tree_payload(tree.children[slot])
    return {"weights": list(tree.weights.entries()), "children": children}


def export_tree(tree: ResolutionTree, fmt: str = "json") -> str:
    """Serialize a tree deterministically; children are ordered by slot.
    Formats: json (round-trippable) and dot (for graphviz)."""
    if fmt == "json":
        return json.dumps(_tree_payload(tree), separators=(",", ":"))
    if fmt == "dot":
        lines = ["digraph resolution {"]
        counter = [0]

        def walk(node: ResolutionTree) -> int:
            my_id = counter[0]
            counter[0] += 1
            lines.append('  n%d [label="%s"];' % (my_id, str(node.weights)))
            for slot in sorted(node.children):
                child_id = walk(node.children[slot])
                lines.append('  n%d -> n%d [label="%d"];' % (my_id, child_id, slot))
            return my_id

        walk(tree)
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError("unknown format: %r" % fmt)


def tree_from_json(text: str) -> ResolutionTree:
    def build(payload: dict) -> ResolutionTree:
        entries = [int(v) for v in payload["weights"]]
        wv = WeightVector(entries[0], tuple(entries[1:]))
        children = {int(k): build(v) for k, v in payload.get("children", {}).items()}
        return ResolutionTree(wv, children)

    return build(json.loads(text))


def tree_edges_consistent(tree: ResolutionTree) -> bool:
    """Every edge (parent, slot) must satisfy: the chart group of the parent
    lift at that slot has the same residues as the child's weight tuple."""
    for slot, child in tree.children.items():
        chart = chart_group(tree.weights, slot)
        if chart.order == 1 or child.weights.a0 != chart.order:
            return False
        want = residues(chart)
        got = residues(CyclicGroupSpec(child.weights.a0, child.weights.rest))
        if want.entries() != got.entries():
            return False
        if not tree_edges_consistent(child):
            return False
    return True
