"""Independent brute-force oracles the property tests check the library against.

Everything here recomputes results from first principles along a different
route than the library: biconnectivity via explicit cycle enumeration,
up-down distances via path enumeration, isomorphism via networkx's VF2
matcher, and path counts via exhaustive DFS.
"""

from __future__ import annotations

import itertools

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from treechild.network import Network


def undirected_simple_cycles(n: Network) -> list[frozenset]:
    """All simple cycles of the underlying undirected graph, as edge sets."""
    g = nx.Graph()
    g.add_edges_from(frozenset(e) for e in ())
    edges = [tuple(sorted(e)) for e in ({tuple(sorted((u, v))) for u, v in n.edges})]
    adjacency: dict = {}
    for u, v in edges:
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)
    cycles: set[frozenset] = set()
    nodes = sorted(adjacency)

    def extend(path: list, start):
        current = path[-1]
        for nxt in sorted(adjacency[current]):
            if nxt == start and len(path) >= 3:
                cycles.add(frozenset(frozenset(p) for p in zip(path, path[1:] + [start])))
            elif nxt not in path and nxt > start:
                extend(path + [nxt], start)

    for start in nodes:
        extend([start], start)
    return sorted(cycles, key=sorted)


def brute_blob_levels(n: Network) -> dict[frozenset, int]:
    """Blob node-sets and levels from cycle overlap, plus lone tree nodes.

    Two edges are in one biconnected component iff some simple cycle contains
    both; components are the transitive closure of that relation.
    """
    cycles = undirected_simple_cycles(n)
    parent: dict[frozenset, frozenset] = {}

    def find(e):
        while parent.get(e, e) != e:
            e = parent[e] = parent.get(parent[e], parent[e])
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for cycle in cycles:
        first = next(iter(cycle))
        for edge in cycle:
            union(edge, first)
    components: dict[frozenset, set] = {}
    cyclic_edges = {e for c in cycles for e in c}
    for e in cyclic_edges:
        components.setdefault(find(e), set()).update(e)
    result = {}
    in_component = set()
    for nodes in components.values():
        level = sum(1 for v in nodes if n.is_reticulation(v))
        result[frozenset(nodes)] = level
        in_component |= nodes
    for v in n.nodes:
        if n.is_tree_node(v) and v not in in_component:
            result[frozenset([v])] = 0
    return result


def brute_up_down_distance(n: Network, x, y) -> float:
    """Shortest up-down distance by enumerating all up-down paths."""
    best = float("inf")
    down: dict = {}
    for v in reversed(n.topological_order()):
        down[v] = {v: 0}
        for c in n.children(v):
            for target, dist in down[c].items():
                if dist + 1 < down[v].get(target, float("inf")):
                    down[v][target] = dist + 1
    for apex in n.nodes:
        if x in down[apex] and y in down[apex]:
            best = min(best, down[apex][x] + down[apex][y])
    return best


def brute_all_up_down_paths(n: Network, x, y, cap=10):
    """Lengths of every up-down path from x to y up to the cap, via DFS."""
    lengths = set()
    reverse = {v: n.parents(v) for v in n.nodes}

    def descend(v, length, target, acc):
        if length > cap:
            return
        if v == target:
            acc.add(length)
        for c in n.children(v):
            descend(c, length + 1, target, acc)

    def climb(v, up_length, visited):
        if up_length > cap:
            return
        down_from_here: set = set()
        descend(v, 0, y, down_from_here)
        for d in down_from_here:
            if up_length + d <= cap:
                lengths.add(up_length + d)
        for p in reverse[v]:
            if p not in visited:
                climb(p, up_length + 1, visited | {p})

    climb(x, 0, {x})
    return lengths


def vf2_isomorphic(n: Network, m: Network) -> bool:
    """Label-preserving isomorphism via networkx's VF2 backtracking matcher."""

    def attrs(net):
        g = nx.DiGraph(net.edges)
        for v in g.nodes:
            g.nodes[v]["tag"] = net.label_of(v) if net.is_leaf(v) else net.kind(v)
        return g

    return DiGraphMatcher(
        attrs(n), attrs(m), node_match=lambda a, b: a["tag"] == b["tag"]
    ).is_isomorphic()


def brute_root_to_leaf_path_count(n: Network) -> int:
    """Number of distinct root-to-leaf directed paths, by DFS enumeration."""

    def walk(v):
        if n.is_leaf(v):
            return 1
        return sum(walk(c) for c in n.children(v))

    return walk(n.root)


def all_deletion_results(n: Network):
    """Every cleanup of 'at most one incoming edge deleted per reticulation'."""
    from treechild.network import clean_up_network_minus_edges

    per_ret = [
        [None] + [(p, r) for p in n.parents(r)]
        for r in n.reticulations
    ]
    for combo in itertools.product(*per_ret):
        removed = [e for e in combo if e is not None]
        yield removed, clean_up_network_minus_edges(n, removed)
