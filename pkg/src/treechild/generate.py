"""Seeded random generation of binary tree-child networks, plus test fixtures.

Networks are grown by inverse reductions: a random base tree is built by
repeated cherry expansion, then each requested blob is raised to its target
level by repeatedly hanging a fresh leaf below a new reticulation whose two
parents subdivide an edge at the blob's anchor leaf and an edge inside the
blob.  Every step preserves the tree-child property, so the construction
cannot wander out of the class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from .cherries import _subdivide
from .errors import UnsatisfiableError
from .network import Network, validate
from .newick import parse


@dataclass(frozen=True)
class GenSpec:
    """Parameters for :func:`random_tree_child`.

    ``n_level_k_blobs`` counts blobs at exactly ``target_level``; it defaults
    to one when the target level is positive.  ``max_reticulations`` caps the
    total reticulation count including lower-level decoration blobs.
    """

    n_leaves: int
    target_level: int = 0
    n_level_k_blobs: int | None = None
    seed: int = 0
    max_reticulations: int | None = None

    @property
    def blob_count(self) -> int:
        if self.n_level_k_blobs is not None:
            return self.n_level_k_blobs
        return 1 if self.target_level >= 1 else 0


def random_tree_child(spec: GenSpec) -> Network:
    """A random binary tree-child network matching the spec, deterministic in the seed."""
    _check_feasible(spec)
    rng = random.Random(spec.seed)
    for _ in range(32):
        n = _build(spec, rng)
        blob_levels = [b.level for b in n.blobs()]
        ok = (
            len(n.leaves) == spec.n_leaves
            and n.level == spec.target_level
            and blob_levels.count(spec.target_level) >= spec.blob_count
            and (spec.target_level == 0 or blob_levels.count(spec.target_level) == spec.blob_count)
            and n.is_tree_child
        )
        if ok:
            return n
    raise UnsatisfiableError(f"could not realize {spec}")


def _check_feasible(spec: GenSpec) -> None:
    k, l = spec.target_level, spec.blob_count
    if spec.n_leaves < 1 or k < 0:
        raise UnsatisfiableError(f"bad parameters in {spec}")
    if k == 0 and l != 0:
        raise UnsatisfiableError("a tree has no positive-level blobs")
    if k >= 1 and l < 1:
        raise UnsatisfiableError("a positive target level needs at least one blob at that level")
    if k >= 1 and spec.n_leaves < k + 1:
        raise UnsatisfiableError(f"level {k} needs at least {k + 1} leaves (tree-child bound)")
    if spec.n_leaves < l * k + max(1, l):
        raise UnsatisfiableError(f"{l} blobs of level {k} need at least {l * k + max(1, l)} leaves")
    if spec.max_reticulations is not None and spec.max_reticulations < l * k:
        raise UnsatisfiableError("max_reticulations is below the reticulations the blobs require")


def _build(spec: GenSpec, rng: random.Random) -> Network:
    k, l = spec.target_level, spec.blob_count
    width = max(2, len(str(spec.n_leaves)))
    labels = [f"t{i:0{width}d}" for i in range(1, spec.n_leaves + 1)]

    # decide lower-level decoration blobs within the leaf and reticulation budget
    ret_budget = spec.n_leaves - 1 if spec.max_reticulations is None else spec.max_reticulations
    decorations: list[int] = []
    if k >= 2:
        slack = spec.n_leaves - l * k - max(1, l)
        ret_slack = ret_budget - l * k
        for _ in range(rng.randint(0, 2)):
            if slack < 2 or ret_slack < 1:
                break
            j = rng.randint(1, min(k - 1, slack - 1, ret_slack))
            decorations.append(j)
            slack -= j + 1  # the decoration consumes its anchor leaf too
            ret_slack -= j

    n_base = spec.n_leaves - l * k - sum(decorations)
    pool = list(labels)
    base_labels = [pool.pop(0) for _ in range(n_base)]
    n = _random_tree(base_labels, rng)

    anchors = rng.sample(sorted(base_labels), l + len(decorations))
    for anchor, level in zip(anchors, [k] * l + decorations):
        n = _grow_blob(n, anchor, level, pool, rng)
    return n


def _random_tree(leaf_labels: list[str], rng: random.Random) -> Network:
    root, first = 0, 1
    edges = [(root, first)]
    labels = {first: leaf_labels[0]}
    next_id = 2
    for label in leaf_labels[1:]:
        target = rng.choice(sorted(labels))
        (tail,) = [u for u, v in edges if v == target]
        edges.remove((tail, target))
        parent, leaf = next_id, next_id + 1
        next_id += 2
        edges += [(tail, parent), (parent, target), (parent, leaf)]
        labels[leaf] = label
    return validate(edges, labels)


def _grow_blob(n: Network, anchor: str, level: int, pool: list[str], rng: random.Random) -> Network:
    for step in range(level):
        x = n.leaf_with_label(anchor)
        anchor_edge = (n.parent(x), x)
        if step == 0:
            donors = [anchor_edge]
            u = n.parent(x)
            grand = n.parents(u)
            # a square start needs the grandparent edge to sit outside every cycle
            if grand and (blob := n.blob_of(u)) is not None and blob.level == 0:
                donors.append((grand[0], u))
            donor = rng.choice(donors)
        else:
            blob = n.blob_of(n.parent(x))
            donors = [
                (u, v)
                for u, v in n.edges
                if u in blob.node_set and v in blob.node_set and not n.is_reticulation(v)
            ]
            donors.append((n.parent(blob.pure_node), blob.pure_node))
            donor = rng.choice(sorted(donors))
        n = _attach_reticulated_leaf(n, anchor_edge, donor, pool.pop(0))
    return n


def _attach_reticulated_leaf(n: Network, anchor_edge, donor_edge, label: str) -> Network:
    """Hang a new leaf below a fresh reticulation spanning the two edges."""
    g = n.to_digraph()
    a = _subdivide(g, anchor_edge)
    if donor_edge == anchor_edge:
        donor_edge = (anchor_edge[0], a)  # directly above the anchor: a triangle
    b = _subdivide(g, donor_edge)
    ret, leaf = max(g.nodes) + 1, max(g.nodes) + 2
    g.add_edge(a, ret)
    g.add_edge(b, ret)
    g.add_edge(ret, leaf)
    labels = n.leaf_labels
    labels[leaf] = label
    return validate(g.edges, labels, g.nodes)


def corpus(count: int, seed: int, **spec_ranges) -> list[Network]:
    """A list of random networks with parameters drawn from the given ranges.

    ``spec_ranges`` accepts ``n_leaves``, ``target_level`` and
    ``n_level_k_blobs`` as (lo, hi) tuples or fixed ints.
    """
    rng = random.Random(seed)

    def draw(name, default):
        value = spec_ranges.get(name, default)
        return rng.randint(*value) if isinstance(value, tuple) else value

    networks = []
    while len(networks) < count:
        k = draw("target_level", (0, 3))
        l = draw("n_level_k_blobs", 1) if k >= 1 else 0
        lo_leaves = max(2, l * k + max(1, l))
        n_leaves = draw("n_leaves", (lo_leaves, lo_leaves + 10))
        if n_leaves < lo_leaves:
            continue
        networks.append(
            random_tree_child(
                GenSpec(n_leaves=n_leaves, target_level=k, n_level_k_blobs=l or None, seed=rng.getrandbits(48))
            )
        )
    return networks


def fixtures() -> dict[str, Network]:
    """Named hand-built instances used across the test suite.

    The girth-3 pair and girth-4 triple are level-1 families whose members
    share identical subnetwork evidence; the invalid level-2 pair shares all
    lower-level subnetworks while being non-isomorphic; the diamond carries an
    invalid reticulation edge whose deletion collapses the whole network.
    """
    loaded = {}
    for name in ("girth3", "girth4", "invalid_level2", "diamond"):
        text = resources.files("treechild.fixtures").joinpath(f"{name}.enwk").read_text()
        lines = [line for line in text.splitlines() if line.strip()]
        if len(lines) == 1:
            loaded[name] = parse(lines[0])
        else:
            for suffix, line in zip("abc", lines):
                loaded[f"{name}_{suffix}"] = parse(line)
    return loaded
