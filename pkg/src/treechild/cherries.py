"""Cherry and reticulated-cherry machinery, reductions, and pendant surgery.

Two non-reticulation nodes x and y form a reticulated cherry shape when the
parent of y is a reticulation and the parent of x is also a parent of that
reticulation.  Cutting deletes the edge between the two parents; isolating
deletes the other incoming edge of the reticulation.  When x and y are leaves
the shape is a reticulated cherry proper, and together with plain cherries it
drives the reduction machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import (
    NoCherryOnPairError,
    NoPendantAtSetError,
    ShapeNotPresentError,
    UnknownTaxonError,
)
from .network import Edge, Network, NodeId, clean_up, clean_up_network_minus_edges, validate

CHERRY = "cherry"
RETICULATED_CHERRY = "reticulated-cherry"


@dataclass(frozen=True)
class RetCherryShape:
    """A reticulated cherry shape: the reticulation ``p_y`` sits on ``y``."""

    x: NodeId
    y: NodeId
    p_x: NodeId
    p_y: NodeId
    g_y: NodeId

    def present_in(self, n: Network) -> bool:
        return (
            n.has_edge(self.p_x, self.x)
            and n.has_edge(self.p_x, self.p_y)
            and n.has_edge(self.g_y, self.p_y)
            and n.has_edge(self.p_y, self.y)
            and n.is_reticulation(self.p_y)
        )


def ret_cherry_shapes(n: Network) -> list[RetCherryShape]:
    """All reticulated cherry shapes of ``n``, one or two per reticulation."""
    shapes = []
    for r in n.reticulations:
        y = n.child(r)
        if n.is_reticulation(y):
            continue
        u, v = n.parents(r)
        for p_x, g_y in ((u, v), (v, u)):
            if not n.is_tree_node(p_x):
                continue
            x = next(c for c in n.children(p_x) if c != r)
            if not n.is_reticulation(x):
                shapes.append(RetCherryShape(x=x, y=y, p_x=p_x, p_y=r, g_y=g_y))
    return shapes


def lowest_ret_cherry_shape(n: Network, blob) -> RetCherryShape:
    """A reticulated cherry shape of ``blob`` whose nodes x, y lie outside it.

    Exists for every blob of level >= 1 in a tree-child network; the parent of
    x is a lowest tree node of the blob.  Deterministic: lowest tree nodes are
    tried in node-id order.
    """
    candidates = sorted(
        t
        for t in blob.node_set
        if n.is_tree_node(t)
        and not any(c in blob.node_set and n.is_tree_node(c) for c in _strict_descendants(n, t))
    )
    for t in candidates:
        for shape in ret_cherry_shapes(n):
            if shape.p_x == t and shape.p_y in blob.node_set:
                return shape
    raise ShapeNotPresentError(f"no reticulated cherry shape below blob at {sorted(blob.leaf_descendants)}")


def _strict_descendants(n: Network, v: NodeId) -> set[NodeId]:
    return nx.descendants(n._g, v)  # noqa: SLF001 - intra-package


def cut_ret_cherry(n: Network, shape: RetCherryShape) -> Network:
    """Delete the edge from x's parent into the reticulation, then clean up."""
    if not shape.present_in(n):
        raise ShapeNotPresentError(f"{shape} is not a reticulated cherry shape of the network")
    return clean_up_network_minus_edges(n, [(shape.p_x, shape.p_y)])


def isolate_ret_cherry(n: Network, shape: RetCherryShape) -> Network:
    """Delete the other incoming edge of the reticulation, then clean up.

    Isolating a reticulated cherry on leaves x, y turns it into the cherry on
    x, y.
    """
    if not shape.present_in(n):
        raise ShapeNotPresentError(f"{shape} is not a reticulated cherry shape of the network")
    return clean_up_network_minus_edges(n, [(shape.g_y, shape.p_y)])


def find_cherries(n: Network) -> list[tuple[frozenset[str], str]]:
    """All leaf pairs forming a cherry or a reticulated cherry.

    Nonempty for every tree-child network with at least two leaves.
    """
    found: dict[frozenset[str], str] = {}
    for x in n.leaves:
        p = n.parent(x)
        if n.is_reticulation(p):
            continue
        for y in n.children(p):
            if y != x and n.is_leaf(y):
                found.setdefault(frozenset({n.label_of(x), n.label_of(y)}), CHERRY)
    for shape in ret_cherry_shapes(n):
        if n.is_leaf(shape.x) and n.is_leaf(shape.y):
            found[frozenset({n.label_of(shape.x), n.label_of(shape.y)})] = RETICULATED_CHERRY
    return sorted(found.items(), key=lambda item: sorted(item[0]))


def ret_cherry_shape_on_leaves(n: Network, x: str, y: str) -> RetCherryShape | None:
    """The reticulated cherry shape on leaf taxa (x, y) with the reticulation on y."""
    for taxon in (x, y):
        if taxon not in n.taxa:
            raise UnknownTaxonError(taxon)
    lx, ly = n.leaf_with_label(x), n.leaf_with_label(y)
    for shape in ret_cherry_shapes(n):
        if shape.x == lx and shape.y == ly:
            return shape
    return None


# -- reductions --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionRecord:
    """Everything needed to undo a cherry or reticulated-cherry reduction.

    For the reticulated case ``tail_edge`` names the surviving edge into which
    the reticulation's outer parent must be re-inserted; ``None`` means the
    outer parent sat directly above x's parent (the triangle case), so at
    expansion it subdivides the fresh cherry parent's incoming edge.
    """

    kind: str
    kept: str
    removed: str
    tail_edge: Edge | None = None


def reduce_pair(n: Network, x: str, y: str) -> tuple[Network, ReductionRecord]:
    """Reduce the cherry or reticulated cherry on taxa {x, y}.

    A cherry is reduced by deleting the leaf y and cleaning up.  A reticulated
    cherry with the reticulation on y is reduced by isolating it and reducing
    the resulting cherry.  Returns the reduced network and a record that
    :func:`expand_pair` uses to undo the reduction exactly.
    """
    for taxon in (x, y):
        if taxon not in n.taxa:
            raise UnknownTaxonError(taxon)
    lx, ly = n.leaf_with_label(x), n.leaf_with_label(y)
    if n.parent(lx) == n.parent(ly) and not n.is_reticulation(n.parent(lx)):
        reduced = _delete_leaf(n, ly)
        return reduced, ReductionRecord(CHERRY, kept=x, removed=y)

    shape = ret_cherry_shape_on_leaves(n, x, y)
    if shape is None:
        shape = ret_cherry_shape_on_leaves(n, y, x)
        if shape is not None:
            x, y, lx, ly = y, x, ly, lx
    if shape is None:
        raise NoCherryOnPairError(f"{{{x}, {y}}} forms neither a cherry nor a reticulated cherry")

    triangle = n.parent(shape.p_x) == shape.g_y
    if triangle:
        tail_edge = None
    else:
        (g_parent,) = n.parents(shape.g_y)
        g_other = next(c for c in n.children(shape.g_y) if c != shape.p_y)
        tail_edge = (g_parent, g_other)
    reduced = _delete_leaf(isolate_ret_cherry(n, shape), ly)
    return reduced, ReductionRecord(RETICULATED_CHERRY, kept=x, removed=y, tail_edge=tail_edge)


def expand_pair(n: Network, record: ReductionRecord) -> Network:
    """Undo :func:`reduce_pair` on the network it produced."""
    g = n.to_digraph()
    labels = n.leaf_labels
    lx = n.leaf_with_label(record.kept)
    cherry_parent = _subdivide(g, (next(g.predecessors(lx)), lx))
    new_leaf = max(g.nodes) + 1
    g.add_edge(cherry_parent, new_leaf)
    labels[new_leaf] = record.removed
    if record.kind == RETICULATED_CHERRY:
        ret = _subdivide(g, (cherry_parent, new_leaf))
        if record.tail_edge is None:
            tail_edge = (next(g.predecessors(cherry_parent)), cherry_parent)
        else:
            tail_edge = record.tail_edge
        tail = _subdivide(g, tail_edge)
        g.add_edge(tail, ret)
    return validate(g.edges, labels, g.nodes)


def _delete_leaf(n: Network, leaf: NodeId) -> Network:
    labels = n.leaf_labels
    del labels[leaf]
    return clean_up((e for e in n.edges if leaf not in e), labels, (v for v in n.nodes if v != leaf))


def _subdivide(g: nx.DiGraph, edge: Edge) -> NodeId:
    """Replace edge (u, w) by u -> v -> w for a fresh v; returns v."""
    u, w = edge
    v = max(g.nodes) + 1
    g.remove_edge(u, w)
    g.add_edge(u, v)
    g.add_edge(v, w)
    return v


def add_reticulation_between(n: Network, tail_edge: Edge, head_edge: Edge) -> Network:
    """Subdivide both edges and add an edge from the first to the second.

    The node subdividing ``head_edge`` becomes a new reticulation; this is the
    inverse of a valid reticulation edge deletion.  The two edges must be
    distinct.
    """
    if tail_edge == head_edge:
        raise ValueError("tail and head must subdivide distinct edges")
    g = n.to_digraph()
    tail = _subdivide(g, tail_edge)
    head = _subdivide(g, head_edge)
    g.add_edge(tail, head)
    return validate(g.edges, n.leaf_labels, g.nodes)


# -- pendant subnetworks -------------------------------------------------------


@dataclass(frozen=True)
class Pendant:
    """A detached pendant subnetwork plus the composite leaf that replaced it."""

    composite_label: str
    root_node: NodeId
    edges: tuple[Edge, ...]
    leaf_labels: tuple[tuple[NodeId, str], ...]


def composite_label(taxa) -> str:
    """Brace-set encoding of a taxon set, e.g. ``{x,y}``; nests for composites."""
    return "{" + ",".join(sorted(taxa)) + "}"


def pendant_root_for(n: Network, taxa: frozenset[str]) -> NodeId | None:
    """The node whose incoming cut-edge hangs exactly the taxa below it."""
    candidates = [
        v
        for v in n.nodes
        if v != n.root and n.descendant_taxa(v) == taxa and _is_cut_edge(n, (n.parent(v), v))
    ]
    if not candidates:
        return None
    # at most one exists: any second node with this descendant set lies inside
    # a blob and its incoming edge is not a cut edge
    return candidates[0]


def _is_cut_edge(n: Network, edge: Edge) -> bool:
    u, v = edge
    below = {v} | _strict_descendants(n, v)
    for w in below:
        for p in n.parents(w):
            if p in below or (w == v and p == u):
                continue
            return False
    return True


def collapse_pendant(n: Network, taxa: frozenset[str]) -> tuple[Network, Pendant]:
    """Replace the pendant subnetwork spanning ``taxa`` by one composite leaf."""
    root_node = pendant_root_for(n, frozenset(taxa))
    if root_node is None:
        raise NoPendantAtSetError(f"no pendant subnetwork with leaf set {sorted(taxa)}")
    below = {root_node} | _strict_descendants(n, root_node)
    pendant = Pendant(
        composite_label=composite_label(taxa),
        root_node=root_node,
        edges=tuple((u, v) for u, v in n.edges if u in below),
        leaf_labels=tuple((v, lab) for v, lab in n.leaf_labels.items() if v in below),
    )
    labels = {v: lab for v, lab in n.leaf_labels.items() if v not in below}
    labels[root_node] = pendant.composite_label
    collapsed = validate(
        ((u, v) for u, v in n.edges if v == root_node or u not in below),
        labels,
        (v for v in n.nodes if v == root_node or v not in below),
    )
    return collapsed, pendant


def expand_pendant(n: Network, pendant: Pendant) -> Network:
    """Re-attach a collapsed pendant at its composite leaf."""
    leaf = n.leaf_with_label(pendant.composite_label)
    attach = n.parent(leaf)
    g = n.to_digraph()
    g.remove_node(leaf)
    labels = n.leaf_labels
    del labels[leaf]

    remap: dict[NodeId, NodeId] = {}
    next_id = max(g.nodes) + 1
    pendant_nodes = {u for e in pendant.edges for u in e} | {pendant.root_node}
    for v in sorted(pendant_nodes):
        remap[v] = next_id
        next_id += 1
    g.add_edges_from((remap[u], remap[v]) for u, v in pendant.edges)
    g.add_edge(attach, remap[pendant.root_node])
    labels.update((remap[v], lab) for v, lab in pendant.leaf_labels)
    return validate(g.edges, labels, g.nodes)


def replace_pendant(n: Network, taxa: frozenset[str], fragment: Pendant) -> Network:
    """Swap the pendant subnetwork spanning ``taxa`` for ``fragment``.

    The fragment must span the same taxa; used to transplant a rebuilt blob
    into every member of a working set.
    """
    collapsed, _ = collapse_pendant(n, taxa)
    stand_in = Pendant(
        composite_label=composite_label(taxa),
        root_node=fragment.root_node,
        edges=fragment.edges,
        leaf_labels=fragment.leaf_labels,
    )
    return expand_pendant(collapsed, stand_in)


def extract_pendant(n: Network, root_node: NodeId) -> Pendant:
    """Detach (a copy of) the pendant subnetwork rooted at ``root_node``."""
    below = {root_node} | _strict_descendants(n, root_node)
    return Pendant(
        composite_label=composite_label(n.descendant_taxa(root_node)),
        root_node=root_node,
        edges=tuple((u, v) for u, v in n.edges if u in below),
        leaf_labels=tuple((v, lab) for v, lab in n.leaf_labels.items() if v in below),
    )
