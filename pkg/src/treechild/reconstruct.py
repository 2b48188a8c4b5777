"""Unique reconstruction of a tree-child network from its MLLS set.

The recursion mirrors how the evidence was produced.  Working on a set of
candidate subnetworks it repeatedly: collapses maximal common pendant
subnetworks to composite leaves; locates a lowest foundation node A shared by
all blob trees; finds a leaf pair inside A witnessed by a cherry in one
member, a remote cherry in another, and a stretched cherry or separated pair
in a third; re-inserts the deleted reticulation edge above that pair in the
third member, which restores the missing blob; and collapses the restored
pendant everywhere.  When all members coincide the collapsed pendants are
re-expanded in reverse order.  A final check that the output's MLLS set
matches the input turns the procedure into a decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blobtree import blob_tree, foundation_set
from .cherries import (
    Pendant,
    collapse_pendant,
    expand_pendant,
    extract_pendant,
    pendant_root_for,
    add_reticulation_between,
)
from .errors import (
    NoPendantAtSetError,
    NotAnMllsSetError,
    NotConsistentTripleError,
    PhyloNetworkError,
    PureNodeNotFoundError,
    ShapeEvidenceMissingError,
)
from .isomorphism import canonical_key, dedupe, is_isomorphic
from .network import Network, validate
from .shapes import Shape, ShapeKind, classify_pair, shape_profile
from .subnetworks import enumerate_mlls


@dataclass
class ReconstructionOutcome:
    network: Network
    rebuilt_blob_count: int
    trace: list[dict]


def reconstruct_from_mlls(members, verify: bool = True) -> Network:
    """Rebuild the unique level>=2 tree-child network whose MLLS set is ``members``.

    With ``verify`` on (the default) the output's own MLLS set is compared
    against the input, so a success certifies the answer; any failure raises
    ``NotAnMllsSetError``.
    """
    return reconstruct_from_mlls_with_trace(members, verify=verify).network


def reconstruct_from_mlls_with_trace(members, verify: bool = True) -> ReconstructionOutcome:
    members = list(members)
    outcome = _run_engine(members, error=NotAnMllsSetError)
    if verify:
        _verify_full(members, outcome.network)
    return outcome


def reconstruct_from_three(
    first: Network, second: Network, third: Network, max_level_blob_count: int
) -> Network:
    """Rebuild a network from three of its MLLSs and its maximum-level blob count.

    Verification is necessarily weaker than in the full mode: the output must
    have exactly the stated number of maximum-level blobs and each input must
    be one of its MLLSs.  Failure raises ``NotConsistentTripleError`` without
    claiming that no consistent network exists.
    """
    if max_level_blob_count < 1:
        raise NotConsistentTripleError("the blob count must be at least 1")
    inputs = [first, second, third]
    outcome = _run_engine(inputs, error=NotConsistentTripleError)
    if outcome.rebuilt_blob_count != max_level_blob_count:
        raise NotConsistentTripleError(
            f"{outcome.rebuilt_blob_count} blobs were rebuilt, expected {max_level_blob_count}"
        )
    result = outcome.network
    if len(result.max_level_blobs()) != max_level_blob_count or result.level < 2:
        raise NotConsistentTripleError("output does not have the stated maximum-level blobs")
    result_mlls = enumerate_mlls(result)
    for given in inputs:
        if not any(is_isomorphic(given, m) for m in result_mlls):
            raise NotConsistentTripleError("an input is not an MLLS of the output")
    return result


# -- the shared engine ---------------------------------------------------------


def _run_engine(members: list[Network], error) -> ReconstructionOutcome:
    try:
        return _engine(members)
    except error:
        raise
    except PhyloNetworkError as exc:
        raise error(str(exc)) from exc


def _engine(members: list[Network]) -> ReconstructionOutcome:
    _sanity_check(members)
    members = dedupe(members)
    pendants: list[Pendant] = []
    trace: list[dict] = []
    rebuilds = 0
    for _ in range(4 * sum(len(m.taxa) for m in members) + 8):
        members = dedupe(members)
        if len(members) == 1:
            break
        members, collapsed_labels = _collapse_common_pendants(members, pendants)
        members = dedupe(members)
        if len(members) == 1:
            trace.append({"collapsed": collapsed_labels})
            break

        common = foundation_set(members)
        minimal = [a for a in common if not any(b < a for b in common)]
        if not minimal:
            raise NotAnMllsSetError("the members share no blob-tree node")
        foundation = min(minimal, key=lambda a: (len(a), sorted(a)))

        x, y, witness_index, profile = _find_rebuild_pair(members, foundation)
        members, fragment = _rebuild_blob_everywhere(members, foundation, x, y, witness_index)
        pendants.append(fragment)
        rebuilds += 1
        trace.append(
            {
                "collapsed": collapsed_labels,
                "foundation": sorted(foundation),
                "pair": [x, y],
                "edge_added_above": [x, y],
                "profile": {str(shape): count for shape, count in sorted(profile.items(), key=lambda kv: str(kv[0]))},
            }
        )
    else:
        raise NotAnMllsSetError("reconstruction failed to make progress")

    network = members[0]
    for pendant in reversed(pendants):
        network = expand_pendant(network, pendant)
    return ReconstructionOutcome(network, rebuilds, trace)


def _sanity_check(members: list[Network]) -> None:
    if not members:
        raise NotAnMllsSetError("empty input set")
    taxa = members[0].taxa
    nodes, edges = members[0].node_count, members[0].edge_count
    for m in members:
        if not m.is_tree_child:
            raise NotAnMllsSetError("a member is not tree-child")
        if m.taxa != taxa:
            raise NotAnMllsSetError("members disagree on the taxon set")
        if (m.node_count, m.edge_count) != (nodes, edges):
            # every MLLS loses exactly two nodes and three edges per blob
            raise NotAnMllsSetError("members differ in size, so they cannot all be MLLSs")


def rebuild_blob(members, x: str, y: str) -> list[Network]:
    """Restore, in every member, the blob witnessed by a remote cherry on (x, y).

    One member must carry a stretched cherry or separated pair on {x, y};
    nodes are inserted directly above x and y there and joined by a new edge,
    which recreates the blob; the repaired pendant then replaces the
    corresponding pendant of every other member.
    """
    members = list(members)
    witness_index = next(
        (i for i, m in enumerate(members) if _is_rebuild_witness(classify_pair(m, x, y), x, y)),
        None,
    )
    if witness_index is None:
        raise ShapeEvidenceMissingError(
            f"no member carries a stretched cherry or separated pair on ({x},{y})"
        )
    rebuilt_witness, taxa = _insert_edge_above(members[witness_index], x, y)
    root_node = pendant_root_for(rebuilt_witness, taxa)
    if root_node is None:
        raise PureNodeNotFoundError(f"no pure node spans {sorted(taxa)} after the rebuild")
    fragment = extract_pendant(rebuilt_witness, root_node)
    out = []
    for i, m in enumerate(members):
        if i == witness_index:
            out.append(rebuilt_witness)
            continue
        collapsed, _ = collapse_pendant(m, taxa)
        out.append(expand_pendant(collapsed, fragment))
    return out


def _is_rebuild_witness(shape: Shape, x: str, y: str) -> bool:
    if shape.kind == ShapeKind.SEPARATED:
        return True
    return shape.kind == ShapeKind.STRETCHED_CHERRY and {shape.first, shape.second} == {x, y}


def _insert_edge_above(member: Network, x: str, y: str) -> tuple[Network, frozenset[str]]:
    lx, ly = member.leaf_with_label(x), member.leaf_with_label(y)
    rebuilt = add_reticulation_between(
        member, (member.parent(lx), lx), (member.parent(ly), ly)
    )
    new_ret = rebuilt.parent(rebuilt.leaf_with_label(y))
    blob = rebuilt.blob_of(new_ret)
    return rebuilt, blob.leaf_descendants


def _find_rebuild_pair(members, foundation):
    """A pair (x, y) in the foundation node witnessed by all three shapes.

    Requires a member with the cherry, a member with the remote cherry on
    (x, y), a member with a stretched cherry or separated pair, and no member
    with a reticulated cherry of the opposite orientation.
    """
    taxa = sorted(foundation)
    for x in taxa:
        for y in taxa:
            if x == y:
                continue
            profile = shape_profile(members, x, y)
            kinds = {(s.kind, s.first, s.second) for s in profile}
            if (ShapeKind.CHERRY, *sorted((x, y))) not in kinds:
                continue
            if (ShapeKind.REMOTE_CHERRY, x, y) not in kinds:
                continue
            if any(k in kinds for k in ((ShapeKind.REMOTE_CHERRY, y, x), (ShapeKind.TRIANGLE_CHERRY, y, x))):
                continue
            witness_index = next(
                (
                    i
                    for i, m in enumerate(members)
                    if _is_rebuild_witness(classify_pair(m, x, y), x, y)
                ),
                None,
            )
            if witness_index is not None:
                return x, y, witness_index, profile
    raise NotAnMllsSetError(
        f"no leaf pair inside {sorted(foundation)} carries the rebuild evidence"
    )


def _rebuild_blob_everywhere(members, foundation, x, y, witness_index):
    rebuilt_witness, taxa = _insert_edge_above(members[witness_index], x, y)
    if taxa != foundation:
        raise PureNodeNotFoundError(
            f"rebuilt blob spans {sorted(taxa)}, expected {sorted(foundation)}"
        )
    root_node = pendant_root_for(rebuilt_witness, taxa)
    if root_node is None:
        raise PureNodeNotFoundError(f"no pure node spans {sorted(taxa)} after the rebuild")
    fragment = extract_pendant(rebuilt_witness, root_node)
    collapsed_members = []
    for m in members:
        try:
            collapsed, _ = collapse_pendant(m, taxa)
        except NoPendantAtSetError as exc:
            raise NotAnMllsSetError(str(exc)) from exc
        collapsed_members.append(collapsed)
    return collapsed_members, fragment


def _collapse_common_pendants(members, pendants):
    """Collapse every maximal common pendant subnetwork; returns new members.

    A pendant is common when every member's blob tree carries the same node
    with the same descendant labels and the pendant networks are isomorphic.
    """
    trees = [blob_tree(m) for m in members]
    common = trees[0].labels()
    for tree in trees[1:]:
        common &= tree.labels()
    all_taxa = members[0].taxa
    candidates = [
        label
        for label in common
        if len(label) >= 2
        and label != all_taxa
        and all(t.descendant_labels(label) == trees[0].descendant_labels(label) for t in trees)
    ]
    maximal = [a for a in candidates if not any(a < b for b in candidates)]
    collapsed_labels = []
    for label in sorted(maximal, key=lambda a: (len(a), sorted(a))):
        fragments = []
        new_members = []
        for m in members:
            collapsed, pendant = collapse_pendant(m, label)
            new_members.append(collapsed)
            fragments.append(pendant)
        reference = _pendant_network(fragments[0])
        for other in fragments[1:]:
            if not is_isomorphic(reference, _pendant_network(other)):
                raise NotAnMllsSetError(
                    f"pendant subnetworks over {sorted(label)} differ between members"
                )
        members = new_members
        pendants.append(fragments[0])
        collapsed_labels.append(sorted(label))
    return members, collapsed_labels


def _pendant_network(pendant: Pendant) -> Network:
    root = -1
    return validate(
        list(pendant.edges) + [(root, pendant.root_node)],
        dict(pendant.leaf_labels),
    )


def _verify_full(original_members, result: Network) -> None:
    if result.level < 2:
        raise NotAnMllsSetError(f"output level {result.level} is below 2")
    try:
        produced = enumerate_mlls(result)
    except PhyloNetworkError as exc:
        raise NotAnMllsSetError(f"output has no MLLS set: {exc}") from exc
    produced_keys = {canonical_key(m) for m in produced}
    given_keys = {canonical_key(m) for m in original_members}
    if produced_keys != given_keys:
        raise NotAnMllsSetError("the output's MLLS set differs from the input")
