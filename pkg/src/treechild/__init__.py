"""Tree-child phylogenetic networks and their reconstruction from subnetworks."""

__version__ = "0.1.0"

from .network import (
    Blob,
    Network,
    clean_up,
    delete_reticulation_edge,
    is_valid_edge,
    is_valid_network,
    validate,
)
from .cherries import (
    Pendant,
    ReductionRecord,
    RetCherryShape,
    collapse_pendant,
    cut_ret_cherry,
    expand_pair,
    expand_pendant,
    find_cherries,
    isolate_ret_cherry,
    reduce_pair,
)
from .isomorphism import canonical_key, is_isomorphic, mu_representation
from .blobtree import (
    BlobTree,
    blob_tree,
    identify_max_level_blobs,
    reconstruct_blob_tree,
)
from .newick import parse, read_document, serialize, write_document
from .shapes import InferredShape, Shape, ShapeKind, classify_pair, infer_shape, shape_profile
from .subnetworks import (
    MllsSet,
    designated_mlls_pair,
    designated_mlls_triple,
    displays,
    enumerate_mlls,
    lower_level_closure,
    maximum_subnetworks,
)
from .reconstruct import rebuild_blob, reconstruct_from_mlls, reconstruct_from_three
from .generate import GenSpec, fixtures, random_tree_child

__all__ = [
    "Blob",
    "BlobTree",
    "GenSpec",
    "InferredShape",
    "MllsSet",
    "Network",
    "Pendant",
    "ReductionRecord",
    "RetCherryShape",
    "Shape",
    "ShapeKind",
    "blob_tree",
    "canonical_key",
    "classify_pair",
    "clean_up",
    "collapse_pendant",
    "cut_ret_cherry",
    "delete_reticulation_edge",
    "designated_mlls_pair",
    "designated_mlls_triple",
    "displays",
    "enumerate_mlls",
    "expand_pair",
    "expand_pendant",
    "find_cherries",
    "fixtures",
    "identify_max_level_blobs",
    "infer_shape",
    "is_isomorphic",
    "is_valid_edge",
    "is_valid_network",
    "isolate_ret_cherry",
    "lower_level_closure",
    "maximum_subnetworks",
    "mu_representation",
    "parse",
    "random_tree_child",
    "read_document",
    "rebuild_blob",
    "reconstruct_blob_tree",
    "reconstruct_from_mlls",
    "reconstruct_from_three",
    "reduce_pair",
    "serialize",
    "shape_profile",
    "validate",
    "write_document",
]
