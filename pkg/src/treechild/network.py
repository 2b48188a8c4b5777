"""Rooted binary phylogenetic networks: data model, validation, cleanup, blobs.

A network is a rooted binary DAG whose leaves are bijectively labelled by a
taxon set.  Node categories are forced by degrees: the root has indegree 0 and
outdegree 1, leaves have indegree 1 and outdegree 0, tree nodes indegree 1 and
outdegree 2, reticulations indegree 2 and outdegree 1.  Networks are immutable
after construction; every operation returns a new network and node identifiers
of surviving nodes are preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx

from .errors import (
    CycleDetectedError,
    DegreeViolationError,
    DuplicateTaxonError,
    MultipleRootsError,
    NotCleanableError,
    NotReticulationEdgeError,
    UnreachableNodeError,
    ValidationError,
)

NodeId = int
Edge = tuple[NodeId, NodeId]

ROOT = "root"
LEAF = "leaf"
TREE = "tree"
RETICULATION = "reticulation"


@dataclass(frozen=True)
class Blob:
    """A biconnected component with >= 3 nodes, or a lone tree node.

    ``level`` counts the reticulations inside, ``pure_node`` is the unique top
    node, and ``leaf_descendants`` is the taxon set reachable from it.
    """

    node_set: frozenset[NodeId]
    level: int
    pure_node: NodeId
    leaf_descendants: frozenset[str]


class Network:
    """Immutable rooted binary phylogenetic network with labelled leaves.

    Construct through :func:`validate` (or the parsing / generation helpers),
    not directly.
    """

    __slots__ = ("_g", "_root", "_leaf_labels", "_label_to_leaf", "_cache")

    def __init__(self, graph: nx.DiGraph, root: NodeId, leaf_labels: Mapping[NodeId, str]):
        self._g = graph
        self._root = root
        self._leaf_labels = dict(leaf_labels)
        self._label_to_leaf = {lab: v for v, lab in leaf_labels.items()}
        self._cache: dict = {}

    # -- basic queries ------------------------------------------------------

    @property
    def root(self) -> NodeId:
        return self._root

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(self._g.nodes)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._g.edges)

    @property
    def node_count(self) -> int:
        return self._g.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self._g.number_of_edges()

    @property
    def leaves(self) -> tuple[NodeId, ...]:
        return tuple(self._leaf_labels)

    @property
    def taxa(self) -> frozenset[str]:
        return frozenset(self._label_to_leaf)

    def label_of(self, leaf: NodeId) -> str:
        return self._leaf_labels[leaf]

    def leaf_with_label(self, label: str) -> NodeId:
        return self._label_to_leaf[label]

    @property
    def leaf_labels(self) -> dict[NodeId, str]:
        return dict(self._leaf_labels)

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return self._g.has_edge(u, v)

    def children(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(self._g.successors(v))

    def parents(self, v: NodeId) -> tuple[NodeId, ...]:
        return tuple(self._g.predecessors(v))

    def parent(self, v: NodeId) -> NodeId:
        """The unique parent of a node of indegree 1."""
        (p,) = self.parents(v)
        return p

    def child(self, v: NodeId) -> NodeId:
        """The unique child of a node of outdegree 1."""
        (c,) = self.children(v)
        return c

    def kind(self, v: NodeId) -> str:
        if self._g.in_degree(v) == 0:
            return ROOT
        if self._g.out_degree(v) == 0:
            return LEAF
        return TREE if self._g.in_degree(v) == 1 else RETICULATION

    def is_leaf(self, v: NodeId) -> bool:
        return v in self._leaf_labels

    def is_reticulation(self, v: NodeId) -> bool:
        return self._g.in_degree(v) == 2

    def is_tree_node(self, v: NodeId) -> bool:
        return self._g.in_degree(v) == 1 and self._g.out_degree(v) == 2

    @property
    def reticulations(self) -> tuple[NodeId, ...]:
        return tuple(v for v in self._g.nodes if self._g.in_degree(v) == 2)

    @property
    def reticulation_edges(self) -> tuple[Edge, ...]:
        """Edges whose head is a reticulation."""
        return tuple((u, v) for u, v in self._g.edges if self._g.in_degree(v) == 2)

    def is_reticulation_edge(self, e: Edge) -> bool:
        return self._g.has_edge(*e) and self._g.in_degree(e[1]) == 2

    def to_digraph(self) -> nx.DiGraph:
        """A fresh mutable copy of the underlying graph, for surgery."""
        return self._g.copy()

    def fresh_id(self) -> NodeId:
        return max(self._g.nodes) + 1

    def topological_order(self) -> list[NodeId]:
        return list(nx.topological_sort(self._g))

    # -- derived structure (cached; instances are immutable) -----------------

    def descendant_taxa(self, v: NodeId) -> frozenset[str]:
        """Taxa of the leaves reachable from ``v`` (including ``v`` itself)."""
        desc = self._cache.get("desc")
        if desc is None:
            desc = {}
            for u in reversed(self.topological_order()):
                here = frozenset([self._leaf_labels[u]]) if u in self._leaf_labels else frozenset()
                desc[u] = here.union(*(desc[c] for c in self._g.successors(u)))
            self._cache["desc"] = desc
        return desc[v]

    @property
    def is_tree_child(self) -> bool:
        """True iff every non-leaf node has a child that is a tree node or leaf."""
        got = self._cache.get("tree_child")
        if got is None:
            got = all(
                any(self._g.in_degree(c) <= 1 for c in self._g.successors(v))
                for v in self._g.nodes
                if self._g.out_degree(v) > 0
            )
            self._cache["tree_child"] = got
        return got

    def blobs(self) -> tuple[Blob, ...]:
        """All blobs: biconnected components with >= 3 nodes plus lone tree nodes."""
        got = self._cache.get("blobs")
        if got is None:
            undirected = nx.Graph(self._g.edges)
            in_big_component: set[NodeId] = set()
            result = []
            for comp in nx.biconnected_components(undirected):
                if len(comp) < 3:
                    continue
                comp = frozenset(comp)
                in_big_component |= comp
                pure = self._top_node_of(comp)
                level = sum(1 for v in comp if self._g.in_degree(v) == 2)
                result.append(Blob(comp, level, pure, self.descendant_taxa(pure)))
            for v in self._g.nodes:
                if self.is_tree_node(v) and v not in in_big_component:
                    result.append(Blob(frozenset([v]), 0, v, self.descendant_taxa(v)))
            got = tuple(result)
            self._cache["blobs"] = got
        return got

    def _top_node_of(self, comp: frozenset[NodeId]) -> NodeId:
        tops = [v for v in comp if not any(p in comp for p in self._g.predecessors(v))]
        if len(tops) != 1:
            raise ValidationError(f"biconnected component without a unique top node: {sorted(comp)}")
        return tops[0]

    def blob_of(self, v: NodeId) -> Blob | None:
        """The blob containing ``v``, or None for the root and the leaves."""
        for blob in self.blobs():
            if v in blob.node_set:
                return blob
        return None

    @property
    def level(self) -> int:
        """Maximum number of reticulations in any blob; 0 for a tree."""
        return max((b.level for b in self.blobs()), default=0)

    def max_level_blobs(self) -> tuple[Blob, ...]:
        """The blobs whose level equals the network level (empty for trees)."""
        k = self.level
        if k == 0:
            return ()
        return tuple(b for b in self.blobs() if b.level == k)

    # -- distances ------------------------------------------------------------

    def up_down_distance(self, x: NodeId, y: NodeId) -> float:
        """Length of a shortest up-down path from ``x`` to ``y``.

        An up-down path climbs from ``x`` against the edge directions to an
        apex and then descends to ``y``; its length is the minimum over all
        apexes of the two directed distances.  Returns ``math.inf`` when no
        common apex exists (never the case for two leaves of a network).
        """
        dist_x = nx.single_source_shortest_path_length(self._g.reverse(copy=False), x)
        dist_y = nx.single_source_shortest_path_length(self._g.reverse(copy=False), y)
        best = min((dist_x[v] + dist_y[v] for v in dist_x if v in dist_y), default=math.inf)
        return best

    def __repr__(self) -> str:
        return (
            f"<Network taxa={sorted(self.taxa)} nodes={self.node_count} "
            f"reticulations={len(self.reticulations)} level={self.level}>"
        )


# -- validation ---------------------------------------------------------------


def validate(
    edges: Iterable[Edge],
    leaf_labels: Mapping[NodeId, str],
    nodes: Iterable[NodeId] = (),
) -> Network:
    """Check the network invariants on a raw graph and wrap it.

    Raises a diagnostic naming the first violated invariant: multiple roots,
    a directed cycle, a degree outside the four allowed categories, a node
    unreachable from the root, or a broken leaf/taxon bijection.
    """
    edges = list(edges)
    if len(set(edges)) != len(edges):
        raise DegreeViolationError("duplicate (parallel) edges are not allowed")
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    if g.number_of_nodes() == 0:
        raise ValidationError("empty graph")

    roots = [v for v in g.nodes if g.in_degree(v) == 0]
    if len(roots) > 1:
        raise MultipleRootsError(f"indegree-0 nodes: {sorted(roots)}")
    if not roots or not nx.is_directed_acyclic_graph(g):
        raise CycleDetectedError("the graph contains a directed cycle")
    root = roots[0]
    if g.out_degree(root) != 1:
        raise DegreeViolationError(f"root {root} must have outdegree 1, has {g.out_degree(root)}")

    for v in g.nodes:
        indeg, outdeg = g.in_degree(v), g.out_degree(v)
        if (indeg, outdeg) not in ((0, 1), (1, 0), (1, 2), (2, 1)):
            raise DegreeViolationError(f"node {v} has indegree {indeg}, outdegree {outdeg}")

    reachable = {root} | nx.descendants(g, root)
    if len(reachable) != g.number_of_nodes():
        missing = sorted(set(g.nodes) - reachable)
        raise UnreachableNodeError(f"nodes unreachable from the root: {missing}")

    sinks = {v for v in g.nodes if g.out_degree(v) == 0}
    if set(leaf_labels) != sinks:
        raise ValidationError(
            f"leaf labels must cover exactly the outdegree-0 nodes; "
            f"labelled {sorted(leaf_labels)}, sinks {sorted(sinks)}"
        )
    labels = list(leaf_labels.values())
    if len(set(labels)) != len(labels):
        dup = sorted({lab for lab in labels if labels.count(lab) > 1})
        raise DuplicateTaxonError(f"duplicate taxon labels: {dup}")
    if any(not lab for lab in labels):
        raise DuplicateTaxonError("empty taxon label")

    return Network(g, root, dict(leaf_labels))


def is_valid_graph(edges: Iterable[Edge], leaf_labels: Mapping[NodeId, str]) -> bool:
    try:
        validate(edges, leaf_labels)
        return True
    except ValidationError:
        return False


# -- cleaning up ----------------------------------------------------------------


def _clean_up_rules(g: nx.MultiDiGraph, labels: dict[NodeId, str]) -> None:
    """Apply the three cleanup rules in place until none applies.

    Rules, tried in order on every pass: delete an unlabelled outdegree-0
    node; suppress an indegree-1 outdegree-1 node; replace a parallel edge
    pair by a single edge and suppress both endpoints.  Each application
    shrinks the graph, so this terminates.
    """
    while True:
        sinks = [v for v in g.nodes if g.out_degree(v) == 0 and v not in labels]
        if sinks:
            g.remove_nodes_from(sinks)
            continue
        passthrough = next(
            (v for v in g.nodes if g.in_degree(v) == 1 and g.out_degree(v) == 1), None
        )
        if passthrough is not None:
            (u,) = g.predecessors(passthrough)
            (w,) = g.successors(passthrough)
            g.remove_node(passthrough)
            g.add_edge(u, w)
            continue
        parallel = next(((u, w) for u, w in g.edges() if g.number_of_edges(u, w) > 1), None)
        if parallel is not None:
            # deleting one copy leaves both endpoints indegree-1 outdegree-1,
            # so the suppression half of the rule is the previous rule
            g.remove_edge(*parallel)
            continue
        return


def clean_up(
    edges: Iterable[Edge],
    leaf_labels: Mapping[NodeId, str],
    nodes: Iterable[NodeId] = (),
) -> Network:
    """Clean up a directed graph and return the resulting network.

    Intended for graphs obtained from a valid network by deleting, per
    reticulation, at most one incoming edge; for those the result is always a
    network on the same taxa.  Anything else raises ``NotCleanableError``.
    """
    g = nx.MultiDiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    labels = dict(leaf_labels)
    _clean_up_rules(g, labels)
    try:
        return validate(g.edges(), {v: lab for v, lab in labels.items() if v in g}, g.nodes)
    except ValidationError as exc:
        raise NotCleanableError(f"cleanup did not produce a valid network: {exc}") from exc


def clean_up_network_minus_edges(n: Network, removed: Iterable[Edge]) -> Network:
    """Delete the given edges from ``n`` and clean up."""
    removed = set(removed)
    return clean_up(
        (e for e in n.edges if e not in removed),
        n.leaf_labels,
        n.nodes,
    )


# -- reticulation edge deletion --------------------------------------------------


def delete_reticulation_edge(n: Network, edge: Edge) -> Network:
    """The maximum subnetwork obtained by deleting one reticulation edge."""
    if not n.is_reticulation_edge(edge):
        raise NotReticulationEdgeError(f"{edge} is not an edge into a reticulation")
    return clean_up_network_minus_edges(n, [edge])


def is_valid_edge(n: Network, edge: Edge) -> bool:
    """True iff deleting ``edge`` removes exactly 2 nodes and 3 edges.

    A deletion that triggers further cleanup beyond suppressing the two edge
    endpoints is invalid; in a tree-child network every reticulation edge is
    valid.
    """
    result = delete_reticulation_edge(n, edge)
    return result.node_count == n.node_count - 2 and result.edge_count == n.edge_count - 3


def is_valid_network(n: Network) -> bool:
    """True iff every reticulation edge of ``n`` is valid."""
    return all(is_valid_edge(n, e) for e in n.reticulation_edges)
