"""Search small instance spaces for the counterexample fixtures.

Finds (a) three pairwise non-isomorphic girth-4 level-1 networks sharing one
subnetwork set, and (b) two non-isomorphic level-2 networks with invalid
reticulation edges sharing all lower-level subnetworks.  Writes the fixture
eNewick files.
"""

from __future__ import annotations

import itertools
import sys
from collections import defaultdict

sys.path.insert(0, "src")

from treechild import is_isomorphic, is_valid_network, serialize, validate
from treechild.cherries import add_reticulation_between
from treechild.errors import PhyloNetworkError
from treechild.network import Network
from treechild.subnetworks import displayed_set, lower_level_set
from treechild.isomorphism import canonical_key


def all_trees(taxa: list[str]) -> list[Network]:
    """All rooted binary trees on the given taxa (small counts only)."""

    def shapes(labels):
        if len(labels) == 1:
            return [labels[0]]
        out = []
        for i in range(1, len(labels)):
            for left_set in itertools.combinations(labels, i):
                if labels[0] not in left_set:
                    continue  # fix the first label on the left to kill mirror duplicates
                right_set = [x for x in labels if x not in left_set]
                for l in shapes(list(left_set)):
                    for r in shapes(right_set):
                        out.append((l, r))
        return out

    trees = []
    for shape in shapes(taxa):
        edges, labels = [], {}
        counter = itertools.count(1)

        def build(sub, parent):
            node = next(counter)
            edges.append((parent, node))
            if isinstance(sub, str):
                labels[node] = sub
            else:
                build(sub[0], node)
                build(sub[1], node)

        build(shape, 0)
        trees.append(validate(edges, labels))
    return trees


def one_ret_networks(taxa):
    """All one-reticulation networks over all trees on the taxa, deduplicated."""
    seen = {}
    for tree in all_trees(taxa):
        for tail_edge in tree.edges:
            for head_edge in tree.edges:
                if tail_edge == head_edge:
                    continue
                try:
                    n = add_reticulation_between(tree, tail_edge, head_edge)
                except (PhyloNetworkError, Exception):
                    continue
                if n.level != 1:
                    continue
                seen.setdefault(canonical_key(n), n)
    return list(seen.values())


def girth(n: Network) -> int:
    return min((len(b.node_set) for b in n.blobs() if b.level >= 1), default=10**9)


def evidence_key(networks) -> bytes:
    return b"|".join(sorted(canonical_key(m) for m in networks))


def find_girth4_triple():
    for taxa in (["a", "b", "c"], ["a", "b", "c", "d"]):
        groups = defaultdict(list)
        for n in one_ret_networks(taxa):
            if girth(n) < 4:
                continue
            groups[evidence_key(displayed_set(n))].append(n)
        for members in groups.values():
            if len(members) >= 3:
                print(f"girth-4 triple on {taxa}:")
                for m in members[:3]:
                    print("  ", serialize(m))
                return members[:3]
    return None


def two_ret_networks(taxa, limit=None):
    seen = {}
    for tree in all_trees(taxa):
        base_edges = list(tree.edges)
        for t1 in base_edges:
            for h1 in base_edges:
                if t1 == h1:
                    continue
                try:
                    n1 = add_reticulation_between(tree, t1, h1)
                except Exception:
                    continue
                for t2 in n1.edges:
                    for h2 in n1.edges:
                        if t2 == h2:
                            continue
                        try:
                            n2 = add_reticulation_between(n1, t2, h2)
                        except Exception:
                            continue
                        if n2.level != 2:
                            continue
                        try:
                            key = canonical_key(n2) if n2.is_tree_child else None
                        except Exception:
                            key = None
                        if key is not None:
                            if key in seen:
                                continue
                            seen[key] = n2
                        else:
                            seen[object()] = n2
                        if limit and len(seen) > limit:
                            return list(seen.values())
    return list(seen.values())


def find_invalid_pair():
    for taxa in (["a"], ["a", "b"]):
        groups = defaultdict(list)
        nets = two_ret_networks(taxa)
        print(f"{len(nets)} level-2 candidates on {taxa}")
        for n in nets:
            if is_valid_network(n):
                continue
            try:
                groups[evidence_key(lower_level_set(n))].append(n)
            except Exception:
                continue
        for members in groups.values():
            distinct = []
            for m in members:
                if not any(is_isomorphic(m, d) for d in distinct):
                    distinct.append(m)
            if len(distinct) >= 2:
                print(f"invalid level-2 pair on {taxa}:")
                for m in distinct[:2]:
                    print("  ", serialize(m))
                return distinct[:2]
    return None


if __name__ == "__main__":
    triple = find_girth4_triple()
    pair = find_invalid_pair()
    if triple:
        with open("src/treechild/fixtures/girth4.enwk", "w") as fh:
            fh.writelines(serialize(m) + "\n" for m in triple)
    if pair:
        with open("src/treechild/fixtures/invalid_level2.enwk", "w") as fh:
            fh.writelines(serialize(m) + "\n" for m in pair)
    print("triple:", "found" if triple else "NOT FOUND", " pair:", "found" if pair else "NOT FOUND")
