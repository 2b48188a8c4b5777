"""Label-preserving isomorphism of networks via path-count vectors.

Each node gets a vector counting, per taxon, the number of distinct directed
paths from the node to that taxon's leaf.  For tree-child networks the
multiset of these vectors determines the network up to isomorphism, which
gives an O(|X|^2)-style comparison and a canonical key for deduplication.
Non-tree-child inputs fall back to an explicit bijection search.
"""

from __future__ import annotations

from .errors import NotTreeChildAndTooLargeError, NotTreeChildError
from .network import Network, NodeId

MuVector = tuple[int, ...]

MAX_BRUTE_FORCE_INTERNAL_NODES = 14


def path_count_vectors(n: Network) -> dict[NodeId, MuVector]:
    """Per-node path-count vectors, taxa in sorted order.

    Counts are exact big integers; a leaf's vector is the unit vector of its
    own taxon and every other node's vector is the sum over its children.
    """
    got = n._cache.get("mu_map")  # noqa: SLF001 - cache lives on the immutable network
    if got is None:
        taxa = sorted(n.taxa)
        index = {lab: i for i, lab in enumerate(taxa)}
        mu: dict[NodeId, tuple[int, ...]] = {}
        for v in reversed(n.topological_order()):
            vec = [0] * len(taxa)
            if n.is_leaf(v):
                vec[index[n.label_of(v)]] = 1
            else:
                for c in n.children(v):
                    for i, count in enumerate(mu[c]):
                        vec[i] += count
            mu[v] = tuple(vec)
        got = mu
        n._cache["mu_map"] = got  # noqa: SLF001
    return got


def mu_representation(n: Network) -> tuple[MuVector, ...]:
    """Sorted multiset of the per-node path-count vectors."""
    got = n._cache.get("mu")  # noqa: SLF001
    if got is None:
        got = tuple(sorted(path_count_vectors(n).values()))
        n._cache["mu"] = got  # noqa: SLF001
    return got


def is_isomorphic(n: Network, m: Network) -> bool:
    """Decide label-preserving isomorphism.

    Tree-child inputs are compared by their path-count multisets; other
    inputs go through the brute-force matcher, which refuses networks with
    more than 14 non-leaf nodes.
    """
    if n.taxa != m.taxa:
        return False
    if n.node_count != m.node_count or n.edge_count != m.edge_count:
        return False
    if n.is_tree_child and m.is_tree_child:
        return mu_representation(n) == mu_representation(m)
    internal = n.node_count - len(n.leaves)
    if internal > MAX_BRUTE_FORCE_INTERNAL_NODES:
        raise NotTreeChildAndTooLargeError(
            f"non-tree-child network with {internal} non-leaf nodes exceeds the brute-force guard"
        )
    return brute_force_isomorphic(n, m)


def canonical_key(n: Network) -> bytes:
    """A byte string equal for two tree-child networks iff they are isomorphic."""
    if not n.is_tree_child:
        raise NotTreeChildError("canonical keys are defined for tree-child networks only")
    taxa = ",".join(sorted(n.taxa))
    body = ";".join(" ".join(map(str, vec)) for vec in mu_representation(n))
    return f"{taxa}|{body}".encode()


def brute_force_isomorphic(n: Network, m: Network) -> bool:
    """Backtracking bijection search, anchored at the roots and the leaf labels."""
    if n.taxa != m.taxa or n.node_count != m.node_count or n.edge_count != m.edge_count:
        return False

    mapping: dict[NodeId, NodeId] = {}
    reverse: dict[NodeId, NodeId] = {}

    def assign(u: NodeId, v: NodeId) -> bool:
        if u in mapping:
            return mapping[u] == v
        if v in reverse:
            return False
        if n.kind(u) != m.kind(v):
            return False
        if n.is_leaf(u) and n.label_of(u) != m.label_of(v):
            return False
        mapping[u] = v
        reverse[v] = u
        children_u, children_v = n.children(u), m.children(v)
        if len(children_u) != len(children_v):
            del mapping[u], reverse[v]
            return False
        for ordering in _orderings(children_v):
            saved = (dict(mapping), dict(reverse))
            if all(assign(cu, cv) for cu, cv in zip(children_u, ordering)):
                return True
            mapping.clear(), reverse.clear()
            mapping.update(saved[0]), reverse.update(saved[1])
        del mapping[u], reverse[v]
        return False

    return assign(n.root, m.root)


def _orderings(children: tuple[NodeId, ...]):
    if len(children) == 2:
        yield children
        yield (children[1], children[0])
    else:
        yield children


def dedupe(networks) -> list[Network]:
    """Drop isomorphic duplicates, keeping first occurrences in order."""
    kept: list[Network] = []
    seen_keys: set[bytes] = set()
    for n in networks:
        if n.is_tree_child:
            key = canonical_key(n)
            if key in seen_keys:
                continue
            seen_keys.add(key)
            kept.append(n)
        elif not any(is_isomorphic(n, other) for other in kept):
            kept.append(n)
    return kept
