"""Classifier and resolution-tree construction."""

import json
import math

import pytest

from scalarflat.resolution import (
    ClassifierConfig,
    candidate_lifts,
    classify,
    euclid_overestimated,
    export_tree,
    tree_edges_consistent,
    tree_from_json,
)
from scalarflat.weights import (
    CyclicGroupSpec,
    WeightVector,
    chart_group,
    congruent,
    residues,
)


def test_euclid_overestimated_frozen_examples():
    assert euclid_overestimated(5, 3) == [(5, 3), (3, 1)]
    assert euclid_overestimated(7, 5) == [(7, 5), (5, 3), (3, 1)]
    for q in range(2, 20):
        assert euclid_overestimated(q, 1) == [(q, 1)]


def test_euclid_overestimated_steps_shrink():
    for q in range(3, 40):
        for p in range(1, q):
            if math.gcd(q, p) != 1:
                continue
            chain = euclid_overestimated(q, p)
            assert chain[0] == (q, p)
            orders = [pair[0] for pair in chain]
            assert orders == sorted(orders, reverse=True)
            assert chain[-1][1] == 1
            for (qa, pa), (qb, pb) in zip(chain, chain[1:]):
                assert qb == pa
                assert pb == (pa - qa % pa) % pa or pb == pa


def test_candidate_lifts_first_elements():
    lifts = candidate_lifts(CyclicGroupSpec(3, (-5, 2, 1)))
    assert lifts[0] == WeightVector(3, (1, 2, 1))
    lifts = candidate_lifts(CyclicGroupSpec(2, (-5, 3, 1)))
    assert lifts[0] == WeightVector(2, (1, 1, 1))


def test_candidate_lifts_obstructed_residue_class():
    """An even exponent modulo an even order admits no fully coprime lift."""
    assert candidate_lifts(CyclicGroupSpec(6, (1, 2, 3))) == []


def test_candidate_lifts_agree_with_exhaustive_filter():
    cfg = ClassifierConfig(lift_bound=2)
    for spec in [
        CyclicGroupSpec(3, (-5, 2, 1)),
        CyclicGroupSpec(5, (2, 3)),
        CyclicGroupSpec(4, (1, 3)),
    ]:
        got = candidate_lifts(spec, cfg)
        base = [e % spec.order or spec.order for e in spec.exponents]
        brute = []
        grids = [range(b, b + spec.order * (cfg.lift_bound + 1), spec.order)
                 for b in base]
        def rec(idx, acc):
            if idx == len(grids):
                entries = (spec.order,) + tuple(acc)
                if all(math.gcd(u, v) == 1
                       for i, u in enumerate(entries)
                       for v in entries[i + 1:]):
                    brute.append(WeightVector(spec.order, tuple(acc)))
                return
            for val in grids[idx]:
                rec(idx + 1, acc + [val])
        rec(0, [])
        assert sorted(got, key=lambda w: (max(w.entries()), w.entries())) == got
        assert set(got) == set(brute)


def test_classify_frozen_tree_shape():
    res = classify((5, 3, 2, 1))
    assert res.status == "yes"
    assert res.is_yes
    tree = res.tree
    assert tree.weights == WeightVector(5, (3, 2, 1))
    assert sorted(tree.children) == [1, 2]
    assert tree.children[1].weights == WeightVector(3, (1, 2, 1))
    assert tree.children[2].weights == WeightVector(2, (1, 1, 1))
    assert tree.children[1].children[2].weights == WeightVector(2, (1, 1, 1))
    assert tree.node_count() == 4
    assert tree.depth() == 3


def test_classify_stats_counters():
    res = classify((5, 3, 2, 1))
    assert res.stats["nodes"] == 4
    assert res.stats["truncations"] == 0
    assert res.stats["depth_reached"] == 2


def test_classify_smooth_orders_are_leaves():
    for q in range(2, 30):
        res = classify((q, 1, 1, 1))
        assert res.status == "yes"
        assert res.tree.node_count() == 1
        assert res.tree.children == {}


def test_classify_rejects_non_isolated_input():
    with pytest.raises(ValueError):
        classify((6, 2, 3, 1))
    with pytest.raises(ValueError):
        classify((0, 1, 1))


def test_classify_two_slot_depth_tracks_euclid_chain():
    for q in range(2, 61):
        for p in range(1, min(q, 8)):
            if math.gcd(q, p) != 1:
                continue
            res = classify((q, p, 1, 1))
            assert res.status == "yes"
            assert res.tree.depth() == len(euclid_overestimated(q, p))


def test_classify_edges_are_chart_consistent():
    for entries in [(5, 3, 2, 1), (7, 5, 1, 1), (9, 2, 5, 1)]:
        res = classify(entries)
        assert res.status == "yes"
        assert tree_edges_consistent(res.tree)
        stack = [res.tree]
        while stack:
            node = stack.pop()
            for slot, child in node.children.items():
                want = residues(chart_group(node.weights, slot))
                assert congruent(want, residues(gamma_of(child.weights)))
                stack.append(child)


def gamma_of(w):
    return CyclicGroupSpec(w.a0, w.rest)


def test_classify_invariant_under_tail_permutation():
    base = classify((5, 3, 2, 1))
    for tail in [(2, 3, 1), (1, 2, 3), (2, 1, 3), (3, 1, 2)]:
        res = classify((5,) + tail)
        assert res.status == base.status
        assert res.tree.node_count() == base.tree.node_count()
        assert res.tree.depth() == base.tree.depth()


def test_classify_memoization_does_not_change_answers():
    plain = ClassifierConfig(memoize=False)
    cached = ClassifierConfig(memoize=True)
    for a0 in range(2, 13):
        for e1 in range(1, min(a0, 5)):
            if math.gcd(a0, e1) != 1:
                continue
            entries = (a0, e1, 1)
            res_a = classify(entries, plain)
            res_b = classify(entries, cached)
            assert res_a.status == res_b.status
            assert export_tree(res_a.tree) == export_tree(res_b.tree)


def test_classify_memo_hits_counted_on_repeated_subtrees():
    res = classify((13, 5, 8, 1), ClassifierConfig(memoize=True))
    assert res.status == "yes"
    assert res.stats["memo_hits"] >= 1
    bare = classify((13, 5, 8, 1), ClassifierConfig(memoize=False))
    assert bare.stats["memo_hits"] == 0
    assert export_tree(bare.tree) == export_tree(res.tree)


def test_export_tree_json_round_trip():
    res = classify((5, 3, 2, 1))
    text = export_tree(res.tree)
    parsed = json.loads(text)
    assert parsed["weights"] == [5, 3, 2, 1]
    back = tree_from_json(text)
    assert export_tree(back) == text


def test_export_tree_dot_lists_every_edge():
    res = classify((5, 3, 2, 1))
    dot = export_tree(res.tree, fmt="dot")
    assert dot.startswith("digraph")
    assert dot.count("->") == res.tree.node_count() - 1
    assert "(5;3,2,1)" in dot


def test_export_tree_rejects_unknown_format():
    res = classify((2, 1, 1))
    with pytest.raises(ValueError):
        export_tree(res.tree, fmt="yaml")


def test_truncation_reports_unknown_not_failure():
    res = classify((7, 5, 1, 1), ClassifierConfig(max_depth=1))
    assert res.status == "unknown"
    assert res.stats["truncations"] >= 1
