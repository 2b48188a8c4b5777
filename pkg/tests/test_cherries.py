import pytest

from treechild import (
    collapse_pendant,
    cut_ret_cherry,
    expand_pair,
    expand_pendant,
    find_cherries,
    is_isomorphic,
    isolate_ret_cherry,
    parse,
    reduce_pair,
)
from treechild.blobtree import blob_tree
from treechild.cherries import (
    lowest_ret_cherry_shape,
    ret_cherry_shape_on_leaves,
    ret_cherry_shapes,
)
from treechild.errors import NoCherryOnPairError, NoPendantAtSetError, ShapeNotPresentError
from treechild.shapes import ShapeKind, classify_pair


class TestFindCherries:
    def test_cherry_network(self, cherry):
        assert find_cherries(cherry) == [(frozenset({"x", "y"}), "cherry")]

    def test_triangle(self, triangle):
        assert find_cherries(triangle) == [(frozenset({"x", "y"}), "reticulated-cherry")]

    def test_tree_child_always_has_one(self, small_corpus):
        for n in small_corpus:
            if len(n.taxa) >= 2:
                assert find_cherries(n), f"no cherry found in {n}"

    def test_every_reticulation_in_a_shape(self, small_corpus):
        for n in small_corpus:
            if not n.is_tree_child:
                continue
            covered = {s.p_y for s in ret_cherry_shapes(n)}
            assert covered == set(n.reticulations)

    def test_each_positive_blob_has_outside_shape(self, small_corpus):
        for n in small_corpus:
            for blob in n.blobs():
                if blob.level >= 1:
                    shape = lowest_ret_cherry_shape(n, blob)
                    assert shape.x not in blob.node_set and shape.y not in blob.node_set


class TestCutIsolate:
    def test_isolate_triangle_gives_cherry(self, triangle, cherry):
        shape = ret_cherry_shape_on_leaves(triangle, "x", "y")
        assert is_isomorphic(isolate_ret_cherry(triangle, shape), cherry)

    def test_cut_triangle_gives_cherry(self, triangle, cherry):
        shape = ret_cherry_shape_on_leaves(triangle, "x", "y")
        assert is_isomorphic(cut_ret_cherry(triangle, shape), cherry)

    def test_stale_shape_rejected(self, triangle, cherry):
        shape = ret_cherry_shape_on_leaves(triangle, "x", "y")
        with pytest.raises(ShapeNotPresentError):
            cut_ret_cherry(cherry, shape)

    def test_cut_outcomes_for_each_remote_cherry_configuration(self):
        from treechild import Shape, validate

        # outer reticulation parent above x's parent: cutting leaves the
        # subdividing tree node on x
        above = parse("(((((y)#H1,x),(z)#H2),#H1),#H2);")
        shape = ret_cherry_shape_on_leaves(above, "x", "y")
        cut = cut_ret_cherry(above, shape)
        assert classify_pair(cut, "x", "y") == Shape(ShapeKind.STRETCHED_CHERRY, "y", "x")

        # the reticulation's parents are siblings: the tree node lands on y
        siblings = validate(
            [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6), (5, 7)],
            {4: "x", 6: "z", 7: "y"},
        )
        shape = ret_cherry_shape_on_leaves(siblings, "x", "y")
        cut = cut_ret_cherry(siblings, shape)
        assert classify_pair(cut, "x", "y") == Shape(ShapeKind.STRETCHED_CHERRY, "x", "y")

        # the reticulation's parents meet only further up: the pair separates
        far = validate(
            [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (4, 6), (4, 7), (3, 7), (3, 8), (7, 9)],
            {5: "u", 6: "x", 8: "v", 9: "y"},
        )
        shape = ret_cherry_shape_on_leaves(far, "x", "y")
        cut = cut_ret_cherry(far, shape)
        assert classify_pair(cut, "x", "y") == Shape(ShapeKind.SEPARATED, "x", "y")

    def test_cut_then_reinsert_restores(self, level2plus_corpus):
        from treechild.cherries import add_reticulation_between

        for n in level2plus_corpus[:8]:
            blob = n.max_level_blobs()[0]
            shape = lowest_ret_cherry_shape(n, blob)
            if not (n.is_leaf(shape.x) and n.is_leaf(shape.y)):
                continue
            cut = cut_ret_cherry(n, shape)
            lx, ly = cut.leaf_with_label(n.label_of(shape.x)), cut.leaf_with_label(
                n.label_of(shape.y)
            )
            restored = add_reticulation_between(
                cut, (cut.parent(lx), lx), (cut.parent(ly), ly)
            )
            assert is_isomorphic(restored, n)


class TestReduceExpand:
    def test_cherry_reduction(self, cherry):
        reduced, record = reduce_pair(cherry, "x", "y")
        assert reduced.taxa == {"x"}
        assert record.kind == "cherry"

    def test_triangle_reduction(self, triangle):
        reduced, record = reduce_pair(triangle, "x", "y")
        assert reduced.taxa == {"x"}
        assert record.kind == "reticulated-cherry"

    def test_pair_without_cherry_rejected(self, remote_cherry_level2):
        with pytest.raises(NoCherryOnPairError):
            reduce_pair(remote_cherry_level2, "x", "z")

    def test_round_trip_on_random_networks(self, small_corpus):
        for n in small_corpus:
            if len(n.taxa) < 2:
                continue
            pair, _ = find_cherries(n)[0]
            x, y = sorted(pair)
            reduced, record = reduce_pair(n, x, y)
            assert is_isomorphic(expand_pair(reduced, record), n)

    def test_reduction_accepts_swapped_arguments(self, triangle):
        reduced, record = reduce_pair(triangle, "y", "x")
        # the reticulation sits on y, so y is the removed leaf either way
        assert record.removed == "y" and reduced.taxa == {"x"}

    def test_reduction_preserves_tree_child(self, small_corpus):
        for n in small_corpus:
            if len(n.taxa) < 2 or not n.is_tree_child:
                continue
            pair, _ = find_cherries(n)[0]
            reduced, _ = reduce_pair(n, *sorted(pair))
            assert reduced.is_tree_child


class TestPendants:
    def test_collapse_cherry_in_tree(self):
        n = parse("((x,y),z);")
        collapsed, pendant = collapse_pendant(n, frozenset({"x", "y"}))
        assert collapsed.taxa == {"{x,y}", "z"}
        assert pendant.composite_label == "{x,y}"

    def test_collapse_then_expand_round_trips(self, small_corpus):
        for n in small_corpus:
            targets = [
                b.leaf_descendants
                for b in n.blobs()
                if 2 <= len(b.leaf_descendants) < len(n.taxa)
            ]
            if not targets:
                continue
            taxa = min(targets, key=lambda s: (len(s), sorted(s)))
            collapsed, pendant = collapse_pendant(n, taxa)
            assert is_isomorphic(expand_pendant(collapsed, pendant), n)

    def test_no_pendant_at_arbitrary_set(self, remote_cherry_level2):
        # {x, z} spans two sides of the blob, so no cut edge isolates it
        with pytest.raises(NoPendantAtSetError):
            collapse_pendant(remote_cherry_level2, frozenset({"x", "z"}))

    def test_blob_tree_loses_exactly_the_pendant_subtree(self, small_corpus):
        for n in small_corpus:
            targets = [
                b.leaf_descendants
                for b in n.blobs()
                if 2 <= len(b.leaf_descendants) < len(n.taxa)
            ]
            if not targets:
                continue
            taxa = min(targets, key=lambda s: (len(s), sorted(s)))
            collapsed, pendant = collapse_pendant(n, taxa)
            before = blob_tree(n)
            after = blob_tree(collapsed)
            removed = before.descendant_labels(taxa) | {taxa}
            expected = frozenset(
                frozenset(label - taxa | {pendant.composite_label}) if taxa <= label else label
                for label in before.labels() - removed
            )
            assert after.labels() == expected
