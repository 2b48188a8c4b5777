import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treechild import (
    GenSpec,
    canonical_key,
    clean_up,
    delete_reticulation_edge,
    is_isomorphic,
    is_valid_edge,
    is_valid_network,
    parse,
    random_tree_child,
    validate,
)
from treechild.errors import (
    CycleDetectedError,
    DegreeViolationError,
    DuplicateTaxonError,
    MultipleRootsError,
    NotReticulationEdgeError,
    UnreachableNodeError,
)

from oracles import brute_blob_levels, brute_up_down_distance

CHERRY_EDGES = [(0, 1), (1, 2), (1, 3)]
CHERRY_LABELS = {2: "x", 3: "y"}


class TestValidate:
    def test_cherry_is_valid(self):
        n = validate(CHERRY_EDGES, CHERRY_LABELS)
        assert n.taxa == {"x", "y"}
        assert n.kind(0) == "root" and n.kind(1) == "tree"

    def test_single_leaf_is_valid(self):
        n = validate([(0, 1)], {1: "x"})
        assert n.level == 0 and n.blobs() == ()

    def test_cycle_detected(self):
        with pytest.raises(CycleDetectedError):
            validate(CHERRY_EDGES + [(2, 0)], CHERRY_LABELS)

    def test_degree_violation(self):
        # node of indegree 2, outdegree 2
        edges = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7), (7, 8)]
        with pytest.raises(DegreeViolationError):
            validate(edges, {8: "x"})

    def test_multiple_roots(self):
        with pytest.raises(MultipleRootsError):
            validate([(0, 2), (1, 2), (2, 3), (2, 4)], {3: "x", 4: "y"})

    def test_disconnected_node_rejected(self):
        # an isolated node is a second indegree-0 node, so that diagnosis wins;
        # the dedicated reachability check is defensive
        with pytest.raises((MultipleRootsError, UnreachableNodeError)):
            validate(CHERRY_EDGES, CHERRY_LABELS, nodes=[9])

    def test_duplicate_taxon(self):
        with pytest.raises(DuplicateTaxonError):
            validate(CHERRY_EDGES, {2: "x", 3: "x"})


class TestTreeChild:
    def test_triangle_is_tree_child(self, triangle):
        assert triangle.is_tree_child

    def test_diamond_is_not_tree_child(self, diamond):
        assert not diamond.is_tree_child

    def test_trees_are_tree_child(self, small_corpus):
        for n in small_corpus:
            if n.level == 0:
                assert n.is_tree_child


class TestBlobs:
    def test_cherry_single_level0_blob(self, cherry):
        (blob,) = cherry.blobs()
        assert blob.level == 0
        assert blob.leaf_descendants == {"x", "y"}

    def test_triangle_blob(self, triangle):
        (blob,) = triangle.blobs()
        assert blob.level == 1 and len(blob.node_set) == 3
        assert triangle.level == 1

    def test_every_internal_node_in_exactly_one_blob(self, small_corpus):
        for n in small_corpus:
            counts = {v: 0 for v in n.nodes if n.is_tree_node(v) or n.is_reticulation(v)}
            for blob in n.blobs():
                for v in blob.node_set:
                    if v in counts:
                        counts[v] += 1
            assert all(c == 1 for c in counts.values())

    def test_blob_levels_match_brute_force(self, small_corpus):
        for n in small_corpus:
            if n.node_count > 25:
                continue
            expected = brute_blob_levels(n)
            got = {b.node_set: b.level for b in n.blobs()}
            assert got == expected

    def test_leaf_descendants_match_reachability(self, small_corpus):
        for n in small_corpus:
            for blob in n.blobs():
                reach = set()
                stack = [blob.pure_node]
                seen = set()
                while stack:
                    v = stack.pop()
                    if v in seen:
                        continue
                    seen.add(v)
                    if n.is_leaf(v):
                        reach.add(n.label_of(v))
                    stack.extend(n.children(v))
                assert blob.leaf_descendants == reach


class TestCleanUp:
    def test_suppression(self):
        # u -> v -> w with v of indegree 1, outdegree 1
        n = clean_up([(0, 1), (1, 2), (2, 3), (2, 4)], {3: "x", 4: "y"})
        assert n.node_count == 4  # node 1 suppressed

    def test_parallel_edges_resolved(self, triangle):
        # deleting one triangle side leaves a parallel pair mid-cleanup
        edges = [e for e in triangle.edges]
        ret = triangle.reticulations[0]
        tails = triangle.parents(ret)
        n = clean_up([e for e in edges if e != (tails[0], ret)], triangle.leaf_labels)
        assert n.taxa == {"x", "y"}

    def test_fixpoint_on_valid_network(self, small_corpus):
        for n in small_corpus:
            again = clean_up(n.edges, n.leaf_labels)
            assert again.node_count == n.node_count
            assert sorted(again.edges) == sorted(n.edges)

    def test_idempotent(self, small_corpus):
        for n in small_corpus[:10]:
            for e in n.reticulation_edges[:2]:
                once = delete_reticulation_edge(n, e)
                twice = clean_up(once.edges, once.leaf_labels)
                assert sorted(once.edges) == sorted(twice.edges)


def _random_rule_order_cleanup(edges, labels, rng):
    """Re-implementation of cleanup applying an applicable rule chosen at random."""
    import networkx as nx

    g = nx.MultiDiGraph()
    g.add_edges_from(edges)
    while True:
        applicable = []
        for v in g.nodes:
            if g.out_degree(v) == 0 and v not in labels:
                applicable.append(("sink", v))
            if g.in_degree(v) == 1 and g.out_degree(v) == 1:
                applicable.append(("suppress", v))
        parallels = {(u, w) for u, w in g.edges() if g.number_of_edges(u, w) > 1}
        applicable.extend(("parallel", p) for p in sorted(parallels))
        if not applicable:
            break
        rule, target = rng.choice(sorted(applicable, key=str))
        if rule == "sink":
            g.remove_node(target)
        elif rule == "suppress":
            (u,), (w,) = g.predecessors(target), g.successors(target)
            g.remove_node(target)
            g.add_edge(u, w)
        else:
            u, w = target
            g.remove_edge(u, w)
            # the rule suppresses both endpoints on the spot
            for v in (u, w):
                if g.in_degree(v) == 1 and g.out_degree(v) == 1:
                    (p,), (c,) = g.predecessors(v), g.successors(v)
                    g.remove_node(v)
                    g.add_edge(p, c)
    return validate(g.edges(), {v: lab for v, lab in labels.items() if v in g}, g.nodes)


class TestCleanupConfluence:
    def test_random_rule_orders_agree(self, small_corpus):
        import random

        rng = random.Random(7)
        for n in small_corpus:
            for e in n.reticulation_edges[:2]:
                reference = delete_reticulation_edge(n, e)
                edges = [x for x in n.edges if x != e]
                for _ in range(3):
                    other = _random_rule_order_cleanup(edges, n.leaf_labels, rng)
                    assert is_isomorphic(reference, other)


class TestEdgeDeletion:
    def test_triangle_both_deletions_give_cherry(self, triangle, cherry):
        ret = triangle.reticulations[0]
        for p in triangle.parents(ret):
            result = delete_reticulation_edge(triangle, (p, ret))
            assert is_isomorphic(result, cherry)

    def test_diamond_central_deletion_counts(self, diamond):
        # the central edge joins the two reticulations
        (central,) = [
            (u, v) for u, v in diamond.reticulation_edges if diamond.is_reticulation(u)
        ]
        result = delete_reticulation_edge(diamond, central)
        assert diamond.node_count - result.node_count == 4
        assert diamond.edge_count - result.edge_count == 6
        assert not is_valid_edge(diamond, central)

    def test_non_reticulation_edge_rejected(self, cherry):
        with pytest.raises(NotReticulationEdgeError):
            delete_reticulation_edge(cherry, cherry.edges[0])

    def test_tree_child_edges_all_valid(self, small_corpus):
        for n in small_corpus:
            if n.is_tree_child:
                assert is_valid_network(n)

    def test_validity_agrees_with_count_check(self, diamond):
        for e in diamond.reticulation_edges:
            result = delete_reticulation_edge(diamond, e)
            expected = (
                result.node_count == diamond.node_count - 2
                and result.edge_count == diamond.edge_count - 3
            )
            assert is_valid_edge(diamond, e) == expected

    def test_maximum_subnetworks_of_tree_child_stay_tree_child(self, small_corpus):
        for n in small_corpus:
            for e in n.reticulation_edges:
                assert delete_reticulation_edge(n, e).is_tree_child


class TestUpDownDistance:
    def test_cherry_distance(self, cherry):
        x, y = cherry.leaf_with_label("x"), cherry.leaf_with_label("y")
        assert cherry.up_down_distance(x, y) == 2

    def test_self_distance_zero(self, cherry):
        x = cherry.leaf_with_label("x")
        assert cherry.up_down_distance(x, x) == 0

    def test_triangle_distance(self, triangle):
        x, y = triangle.leaf_with_label("x"), triangle.leaf_with_label("y")
        assert triangle.up_down_distance(x, y) == 3

    def test_accepts_arbitrary_node_pairs(self):
        # a purely directed path is an up-down path with the apex at its top
        n = parse("((a,b),(c,d));")
        a = n.leaf_with_label("a")
        assert n.up_down_distance(n.root, a) == 3
        assert n.up_down_distance(a, n.root) == 3
        assert math.isfinite(n.up_down_distance(a, n.leaf_with_label("c")))

    def test_matches_brute_force(self, small_corpus):
        import itertools

        for n in small_corpus:
            if n.node_count > 20:
                continue
            labels = sorted(n.taxa)
            for x, y in itertools.combinations(labels[:5], 2):
                lx, ly = n.leaf_with_label(x), n.leaf_with_label(y)
                assert n.up_down_distance(lx, ly) == brute_up_down_distance(n, lx, ly)

    def test_single_deletion_shrinks_distance_by_at_most_one(self, small_corpus):
        import itertools

        for n in small_corpus:
            if not n.reticulation_edges or not n.is_tree_child:
                continue
            for e in n.reticulation_edges[:3]:
                after = delete_reticulation_edge(n, e)
                for x, y in itertools.combinations(sorted(n.taxa)[:4], 2):
                    before_d = n.up_down_distance(n.leaf_with_label(x), n.leaf_with_label(y))
                    after_d = after.up_down_distance(
                        after.leaf_with_label(x), after.leaf_with_label(y)
                    )
                    assert after_d >= before_d - 1


class TestCountingInvariant:
    @given(st.integers(0, 10_000), st.integers(2, 14), st.integers(0, 3))
    @settings(max_examples=40, deadline=None)
    def test_edges_equal_nodes_minus_one_plus_reticulations(self, seed, n_leaves, level):
        if level and n_leaves < 2 * level + 1:
            n_leaves = 2 * level + 1
        n = random_tree_child(
            GenSpec(n_leaves=n_leaves, target_level=level, seed=seed)
        )
        assert n.edge_count == n.node_count - 1 + len(n.reticulations)

    def test_tree_path_to_leaf_from_every_node(self, small_corpus):
        for n in small_corpus:
            if not n.is_tree_child:
                continue
            for v in n.nodes:
                current = v
                for _ in range(n.node_count):
                    if n.is_leaf(current):
                        break
                    # follow any non-reticulation child; tree-child guarantees one
                    nxt = [c for c in n.children(current) if not n.is_reticulation(c)]
                    assert nxt, f"node {current} has only reticulation children"
                    current = nxt[0]
                assert n.is_leaf(current)
