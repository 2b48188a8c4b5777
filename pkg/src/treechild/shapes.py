"""Leaf-pair topology: classification in one network, inference from many.

Every leaf pair of a network falls into exactly one of five kinds, three of
them oriented, for eight shapes total:

* ``cherry``: the leaves share a parent (up-down distance 2);
* ``stretched-cherry``: a cherry subdivided by one tree node, oriented toward
  the leaf whose parent is the subdividing node;
* ``triangle-cherry``: a reticulated cherry whose reticulation's two parents
  are themselves parent and child (a 3-cycle), oriented toward the leaf below
  the reticulation;
* ``remote-cherry``: a reticulated cherry whose second reticulation parent is
  further away (a cycle of length >= 4), same orientation;
* ``separated``: up-down distance at least 4.

Across the MLLS set of a hidden network of level >= 2, the shape the hidden
network carries on a pair is identifiable from the multiset of shapes the
members carry; for a remote cherry the inference also reveals whether its
blob sits at the hidden network's level.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import NoRuleMatchesError, UnknownTaxonError
from .network import Network


class ShapeKind(Enum):
    CHERRY = "cherry"
    STRETCHED_CHERRY = "stretched-cherry"
    TRIANGLE_CHERRY = "triangle-cherry"
    REMOTE_CHERRY = "remote-cherry"
    SEPARATED = "separated"


@dataclass(frozen=True, order=True)
class Shape:
    """A shape on the ordered leaf pair (first, second).

    For the oriented kinds the distinguished structure sits on ``second``:
    the subdividing tree node of a stretched cherry, or the reticulation of
    the two reticulated-cherry kinds.  ``cherry`` and ``separated`` are
    symmetric and stored with the pair sorted.
    """

    kind: ShapeKind
    first: str
    second: str

    def __post_init__(self):
        a, b = self.first, self.second
        if self.kind in (ShapeKind.CHERRY, ShapeKind.SEPARATED) and a > b:
            object.__setattr__(self, "first", b)
            object.__setattr__(self, "second", a)

    def mirrored(self) -> "Shape":
        return Shape(self.kind, self.second, self.first)

    def oriented_like(self, first: str, second: str) -> bool:
        return (self.first, self.second) == (first, second) or self.kind in (
            ShapeKind.CHERRY,
            ShapeKind.SEPARATED,
        )

    def is_reticulated_cherry(self) -> bool:
        return self.kind in (ShapeKind.TRIANGLE_CHERRY, ShapeKind.REMOTE_CHERRY)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.first},{self.second})"


@dataclass(frozen=True)
class InferredShape:
    """Result of inference; the flag is set only for remote cherries."""

    shape: Shape
    blob_at_max_level: bool | None = None


def classify_pair(n: Network, x: str, y: str) -> Shape:
    """The shape on the unordered leaf pair {x, y} in one network.

    Orientation is structural, so swapping the arguments returns the same
    shape: a reticulated cherry reports the leaf under the reticulation as
    ``second`` no matter the argument order.
    """
    for taxon in (x, y):
        if taxon not in n.taxa:
            raise UnknownTaxonError(taxon)
    if x == y:
        raise UnknownTaxonError(f"need two distinct taxa, got {x!r} twice")
    cache = n._cache.setdefault("shapes", {})  # noqa: SLF001 - immutable network
    key = frozenset({x, y})
    if key not in cache:
        cache[key] = _classify(n, *sorted(key))
    return cache[key]


def _classify(n: Network, x: str, y: str) -> Shape:
    lx, ly = n.leaf_with_label(x), n.leaf_with_label(y)
    px, py = n.parent(lx), n.parent(ly)
    if px == py:
        return Shape(ShapeKind.CHERRY, x, y)
    if n.has_edge(px, py) or n.has_edge(py, px):
        if n.has_edge(py, px):  # mirror so the apex is x's parent
            x, y, lx, ly, px, py = y, x, ly, lx, py, px
        if not n.is_reticulation(py):
            return Shape(ShapeKind.STRETCHED_CHERRY, x, y)
        other_parent = next(p for p in n.parents(py) if p != px)
        if n.parent(px) == other_parent:
            return Shape(ShapeKind.TRIANGLE_CHERRY, x, y)
        return Shape(ShapeKind.REMOTE_CHERRY, x, y)
    return Shape(ShapeKind.SEPARATED, x, y)


def shape_profile(networks: Iterable[Network], x: str, y: str) -> Counter[Shape]:
    """Multiset of the shapes on {x, y} across a set of networks."""
    return Counter(classify_pair(n, x, y) for n in networks)


def infer_shape(networks: Iterable[Network], x: str, y: str) -> InferredShape:
    """Infer the shape on {x, y} in the hidden network from its MLLS set.

    Implements the identifiability rules for hidden level >= 2; exactly one
    rule matches a profile coming from a genuine MLLS set.  Raises
    ``NoRuleMatchesError`` otherwise.
    """
    networks = list(networks)
    profile = shape_profile(networks, x, y)
    matches = [
        inferred
        for first, second in ((x, y), (y, x))
        for inferred in _matching_rules(profile, first, second)
    ]
    if not matches:
        raise NoRuleMatchesError(
            f"shape profile on ({x},{y}) fits no identifiability rule: "
            + ", ".join(sorted(map(str, profile)))
        )
    if len(matches) > 1:
        raise NoRuleMatchesError(
            f"shape profile on ({x},{y}) is ambiguous between "
            + " and ".join(str(m.shape) for m in matches)
        )
    return matches[0]


def _matching_rules(profile: Counter[Shape], x: str, y: str) -> list[InferredShape]:
    """All identifiability rules matching the profile for the orientation (x, y)."""

    def has(kind: ShapeKind, *pair) -> bool:
        return Shape(kind, *pair) in profile

    def all_are(kind: ShapeKind, *pair) -> bool:
        return set(profile) == {Shape(kind, *pair)}

    cherry = has(ShapeKind.CHERRY, x, y)
    separated = has(ShapeKind.SEPARATED, x, y)
    stretched_xy = has(ShapeKind.STRETCHED_CHERRY, x, y)
    stretched_yx = has(ShapeKind.STRETCHED_CHERRY, y, x)
    ret_cherry_xy = has(ShapeKind.TRIANGLE_CHERRY, x, y) or has(ShapeKind.REMOTE_CHERRY, x, y)
    ret_cherry_yx = has(ShapeKind.TRIANGLE_CHERRY, y, x) or has(ShapeKind.REMOTE_CHERRY, y, x)

    matches: list[InferredShape] = []
    if x < y and all_are(ShapeKind.CHERRY, x, y):
        matches.append(InferredShape(Shape(ShapeKind.CHERRY, x, y)))
    if stretched_xy and not (stretched_yx or ret_cherry_xy or ret_cherry_yx or separated):
        matches.append(InferredShape(Shape(ShapeKind.STRETCHED_CHERRY, x, y)))
    if all_are(ShapeKind.TRIANGLE_CHERRY, x, y):
        matches.append(InferredShape(Shape(ShapeKind.TRIANGLE_CHERRY, x, y)))
    if cherry and has(ShapeKind.REMOTE_CHERRY, x, y) and not ret_cherry_yx:
        matches.append(InferredShape(Shape(ShapeKind.REMOTE_CHERRY, x, y), blob_at_max_level=True))
    if all_are(ShapeKind.REMOTE_CHERRY, x, y):
        matches.append(InferredShape(Shape(ShapeKind.REMOTE_CHERRY, x, y), blob_at_max_level=False))
    if x < y and separated and not cherry:
        matches.append(InferredShape(Shape(ShapeKind.SEPARATED, x, y)))
    return matches
