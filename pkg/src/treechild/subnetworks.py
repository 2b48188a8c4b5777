"""Maximum subnetworks and maximum lower-level subnetworks (MLLSs).

A maximum subnetwork deletes one reticulation edge.  An MLLS deletes exactly
one valid reticulation edge from every blob at the network's level, so it is
a subnetwork of strictly lower level with the maximum possible edge count.
The enumeration is the Cartesian product of the per-blob valid edge choices,
deduplicated up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cherries import RetCherryShape, lowest_ret_cherry_shape
from .errors import (
    LevelZeroInputError,
    NoValidEdgeInBlobError,
    TooLargeForOracleError,
)
from .isomorphism import canonical_key, dedupe, is_isomorphic
from .network import (
    Edge,
    Network,
    clean_up_network_minus_edges,
    delete_reticulation_edge,
    is_valid_edge,
)

ORACLE_MAX_RETICULATION_EDGES = 12


@dataclass(frozen=True)
class MllsSet:
    """Isomorphism-deduplicated MLLSs, with the edge choices that produced them."""

    networks: tuple[Network, ...]
    provenance: dict[int, list[tuple[Edge, ...]]] = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.networks)

    def __len__(self) -> int:
        return len(self.networks)


def maximum_subnetworks(n: Network) -> list[tuple[Edge, Network]]:
    """One (deleted edge, subnetwork) entry per reticulation edge of ``n``."""
    if n.level == 0:
        raise LevelZeroInputError("a tree has no reticulation edges to delete")
    return [(e, delete_reticulation_edge(n, e)) for e in n.reticulation_edges]


def valid_edges_per_max_level_blob(n: Network) -> list[list[Edge]]:
    """The valid reticulation edges of each blob at the network's level."""
    if n.level == 0:
        raise LevelZeroInputError("a tree has no positive-level blobs")
    per_blob = []
    for blob in n.max_level_blobs():
        edges = [
            e
            for e in n.reticulation_edges
            if e[1] in blob.node_set and is_valid_edge(n, e)
        ]
        if not edges:
            raise NoValidEdgeInBlobError(
                f"blob over {sorted(blob.leaf_descendants)} has no valid reticulation edge"
            )
        per_blob.append(sorted(edges))
    return per_blob


def enumerate_mlls(n: Network) -> MllsSet:
    """All MLLSs of ``n``: one valid edge deleted from every maximum-level blob.

    Deletions in distinct blobs never interact, so each combination is applied
    to the network in one pass and cleaned up once.
    """
    combos = itertools.product(*valid_edges_per_max_level_blob(n))
    networks: list[Network] = []
    provenance: dict[int, list[tuple[Edge, ...]]] = {}
    keys: dict[bytes, int] = {}
    for combo in combos:
        member = clean_up_network_minus_edges(n, combo)
        if member.is_tree_child:
            key = canonical_key(member)
            if key not in keys:
                keys[key] = len(networks)
                networks.append(member)
            provenance.setdefault(keys[key], []).append(combo)
        else:
            index = next(
                (i for i, kept in enumerate(networks) if is_isomorphic(member, kept)), None
            )
            if index is None:
                index = len(networks)
                networks.append(member)
            provenance.setdefault(index, []).append(combo)
    return MllsSet(tuple(networks), provenance)


def designated_mlls_pair(n: Network) -> tuple[Network, Network]:
    """The cut-MLLS and isolate-MLLS of a lowest reticulated cherry shape per blob.

    These two members always suffice to reconstruct the blob tree of ``n``.
    """
    shapes = [lowest_ret_cherry_shape(n, blob) for blob in n.max_level_blobs()]
    cut = clean_up_network_minus_edges(n, [(s.p_x, s.p_y) for s in shapes])
    isolate = clean_up_network_minus_edges(n, [(s.g_y, s.p_y) for s in shapes])
    return cut, isolate


def designated_mlls_triple(n: Network) -> tuple[Network, Network, Network]:
    """Three MLLSs that suffice to reconstruct ``n`` when its blob count is known.

    Per maximum-level blob with lowest reticulated cherry shape on reticulation
    r: the first cuts it, the second isolates it, and the third deletes an edge
    of another reticulation chosen so that the two parents of r stay
    non-adjacent.  Requires level >= 2.
    """
    if n.level < 2:
        raise LevelZeroInputError("the designated triple needs a network of level >= 2")
    shapes = [lowest_ret_cherry_shape(n, blob) for blob in n.max_level_blobs()]
    third_choices = []
    for blob, shape in zip(n.max_level_blobs(), shapes):
        choice = next(
            (
                e
                for e in sorted(n.reticulation_edges)
                if e[1] in blob.node_set
                and e[1] != shape.p_y
                and _keeps_shape_remote(n, e, shape)
            ),
            None,
        )
        if choice is None:
            raise NoValidEdgeInBlobError(
                f"no third deletion keeps the shape remote in blob over "
                f"{sorted(blob.leaf_descendants)}"
            )
        third_choices.append(choice)
    cut = clean_up_network_minus_edges(n, [(s.p_x, s.p_y) for s in shapes])
    isolate = clean_up_network_minus_edges(n, [(s.g_y, s.p_y) for s in shapes])
    third = clean_up_network_minus_edges(n, third_choices)
    return cut, isolate, third


def _keeps_shape_remote(n: Network, edge: Edge, shape: RetCherryShape) -> bool:
    after = delete_reticulation_edge(n, edge)
    if not all(v in after.nodes for v in (shape.p_y, shape.x, shape.y)):
        return False
    parents = after.parents(shape.p_y)
    if len(parents) != 2:
        return False
    a, b = parents
    return not (after.has_edge(a, b) or after.has_edge(b, a))


# -- exponential oracles (test-scale only) ----------------------------------------


def displays(n: Network, m: Network) -> bool:
    """Whether ``n`` displays ``m``: some per-reticulation choice of at most one
    incoming-edge deletion cleans up to a network isomorphic to ``m``.

    Exponential; guarded to networks with at most 12 reticulation edges.
    """
    if n.taxa != m.taxa:
        return False
    for candidate in _all_displayed(n):
        if is_isomorphic(candidate, m):
            return True
    return False


def _all_displayed(n: Network):
    """Every network obtained by deleting, per reticulation, at most one in-edge."""
    if len(n.reticulation_edges) > ORACLE_MAX_RETICULATION_EDGES:
        raise TooLargeForOracleError(
            f"{len(n.reticulation_edges)} reticulation edges exceed the oracle guard "
            f"of {ORACLE_MAX_RETICULATION_EDGES}"
        )
    per_ret = []
    for r in n.reticulations:
        e1, e2 = ((p, r) for p in n.parents(r))
        per_ret.append((None, e1, e2))
    for combo in itertools.product(*per_ret):
        removed = [e for e in combo if e is not None]
        yield clean_up_network_minus_edges(n, removed)


def displayed_set(n: Network) -> list[Network]:
    """All subnetworks of ``n`` (displayed networks other than ``n`` itself)."""
    return [m for m in dedupe(_all_displayed(n)) if not is_isomorphic(m, n)]


def lower_level_set(n: Network) -> list[Network]:
    """All subnetworks of ``n`` of level at most ``n.level - 1`` (brute force)."""
    k = n.level
    return [m for m in displayed_set(n) if m.level <= k - 1]


def lower_level_closure(mlls: MllsSet) -> list[Network]:
    """The members plus every subnetwork of a member, deduplicated.

    For a valid source network this equals the full set of lower-level
    subnetworks.  Guarded like the other oracles.
    """
    out = list(mlls.networks)
    for member in mlls.networks:
        if member.level >= 1:
            out.extend(displayed_set(member))
    return dedupe(out)


def mlls_of_from_brute_force(n: Network) -> list[Network]:
    """The maximum-edge-count members of the brute-force lower-level set."""
    lower = lower_level_set(n)
    best = max(m.edge_count for m in lower)
    return [m for m in lower if m.edge_count == best]
