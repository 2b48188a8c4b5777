"""Blob trees: the tree of biconnected pieces, and its reconstruction.

The blob tree of a network contracts every blob to one node labelled by the
blob's leaf-descendant set, keeps the root unlabelled, and drops the leaves.
For tree-child networks the labels are pairwise distinct and nested, so the
tree is determined by its label set; that is what makes it recoverable from
subnetwork evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InconsistentInputError
from .network import Network


@dataclass(frozen=True)
class BlobTree:
    """Rooted tree; the root has label ``None``, every other node a taxon set."""

    label: frozenset[str] | None
    children: tuple["BlobTree", ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.children, key=lambda c: sorted(c.label)))
        object.__setattr__(self, "children", ordered)

    def labels(self) -> frozenset[frozenset[str]]:
        """All labels in the tree (the foundation set when built from a network)."""
        found = set() if self.label is None else {self.label}
        for child in self.children:
            found |= child.labels()
        return frozenset(found)

    def find(self, label: frozenset[str]) -> "BlobTree | None":
        if self.label == label:
            return self
        for child in self.children:
            if (hit := child.find(label)) is not None:
                return hit
        return None

    def child_labels(self, label: frozenset[str]) -> frozenset[frozenset[str]]:
        node = self.find(label)
        if node is None:
            raise KeyError(sorted(label))
        return frozenset(c.label for c in node.children)

    def descendant_labels(self, label: frozenset[str]) -> frozenset[frozenset[str]]:
        """Labels strictly below ``label``."""
        node = self.find(label)
        if node is None:
            raise KeyError(sorted(label))
        return frozenset(node.labels() - {node.label})


def blob_tree(n: Network) -> BlobTree:
    """The blob tree of a network."""
    blobs = n.blobs()
    blob_of = {v: b for b in blobs for v in b.node_set}

    def subtree(blob) -> BlobTree:
        below = []
        for v in blob.node_set:
            for c in n.children(v):
                child_blob = blob_of.get(c)
                if child_blob is not None and child_blob is not blob:
                    below.append(child_blob)
        return BlobTree(blob.leaf_descendants, tuple(subtree(b) for b in below))

    top = blob_of.get(n.child(n.root))
    children = (subtree(top),) if top is not None else ()
    return BlobTree(None, children)


def foundation_set(networks: Iterable[Network]) -> frozenset[frozenset[str]]:
    """Labels common to the blob trees of all given networks."""
    trees = [blob_tree(n) for n in networks]
    if not trees:
        raise InconsistentInputError("empty input set")
    common = trees[0].labels()
    for tree in trees[1:]:
        common &= tree.labels()
    return common


def tree_from_labels(labels: frozenset[frozenset[str]]) -> BlobTree:
    """Assemble the inclusion tree of a laminar family of taxon sets.

    The parent of each label is its unique minimal strict superset; the
    maximal labels hang from the unlabelled root.  Raises
    ``InconsistentInputError`` when two labels partially overlap.
    """
    for a in labels:
        for b in labels:
            if a & b and not (a <= b or b <= a):
                raise InconsistentInputError(
                    f"labels {sorted(a)} and {sorted(b)} overlap without nesting"
                )

    by_size = sorted(labels, key=lambda s: (len(s), sorted(s)))

    def parent_of(a):
        superset = [b for b in labels if a < b]
        return min(superset, key=len) if superset else None

    children_map: dict[frozenset[str] | None, list] = {lab: [] for lab in labels}
    children_map[None] = []
    for lab in by_size:
        children_map[parent_of(lab)].append(lab)

    def build(label) -> BlobTree:
        return BlobTree(label, tuple(build(c) for c in children_map[label]))

    return BlobTree(None, tuple(build(c) for c in children_map[None]))


def reconstruct_blob_tree(networks: Iterable[Network]) -> BlobTree:
    """Recover the blob tree of the hidden network from its MLLS set.

    The foundation set is the intersection of the members' blob-tree labels;
    the tree is its inclusion order.  Non-MLLS inputs surface as
    ``InconsistentInputError`` rather than being repaired.
    """
    return tree_from_labels(foundation_set(networks))


def identify_max_level_blobs(
    networks: Iterable[Network], reconstructed: BlobTree
) -> frozenset[frozenset[str]]:
    """The foundation nodes whose blobs are at the hidden network's level.

    A blob is below the maximum level exactly when its node keeps the same
    child set in the blob tree of every member; flag the others.  Meaningful
    for hidden levels >= 2 (triangles leave no trace in their subnetworks).
    """
    member_trees = [blob_tree(n) for n in networks]
    flagged = set()
    for label in reconstructed.labels():
        expected = reconstructed.child_labels(label)
        if any(tree.child_labels(label) != expected for tree in member_trees):
            flagged.add(label)
    return frozenset(flagged)
