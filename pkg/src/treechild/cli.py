"""Command-line front end.

Subcommands: validate, mlls, blobtree, shapes, reconstruct, iso, generate.
Exit codes: 0 on success, 1 on a domain error (e.g. an input that is not an
MLLS set), 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .blobtree import blob_tree, identify_max_level_blobs, reconstruct_blob_tree
from .errors import PhyloNetworkError
from .generate import GenSpec, random_tree_child
from .isomorphism import is_isomorphic
from .network import Network
from .newick import (
    blob_tree_to_json,
    parse,
    read_document,
    serialize,
    write_document,
)
from .reconstruct import reconstruct_from_mlls_with_trace, reconstruct_from_three
from .shapes import classify_pair, infer_shape
from .subnetworks import enumerate_mlls


def _read_networks(path: str) -> list[Network]:
    return read_document(Path(path).read_text())


def _read_single(path: str) -> Network:
    networks = _read_networks(path)
    if len(networks) != 1:
        raise PhyloNetworkError(f"{path}: expected exactly one network, found {len(networks)}")
    return networks[0]


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_validate(args) -> int:
    for path in args.inputs:
        for i, line in enumerate(Path(path).read_text().splitlines(), start=1):
            if not line.strip():
                continue
            n = parse(line)
            print(
                f"{path}:{i}: valid network on {len(n.taxa)} taxa, "
                f"{len(n.reticulations)} reticulations, level {n.level}"
            )
    return 0


def cmd_mlls(args) -> int:
    n = _read_single(args.input)
    members = enumerate_mlls(n)
    _write(write_document(members), args.output)
    return 0


def cmd_blobtree(args) -> int:
    networks = _read_networks(args.input)
    if args.reconstruct or len(networks) > 1:
        tree = reconstruct_blob_tree(networks)
        if args.flag_blobs:
            flagged = identify_max_level_blobs(networks, tree)
            print("maximum-level blobs:", sorted(sorted(a) for a in flagged))
    else:
        tree = blob_tree(networks[0])
    _write(blob_tree_to_json(tree) + "\n", args.output)
    return 0


def cmd_shapes(args) -> int:
    x, y = args.pair.split(",")
    networks = _read_networks(args.input)
    if len(networks) == 1:
        print(str(classify_pair(networks[0], x, y)))
    else:
        inferred = infer_shape(networks, x, y)
        line = str(inferred.shape)
        if inferred.blob_at_max_level is not None:
            line += (
                " [blob at the maximum level]"
                if inferred.blob_at_max_level
                else " [blob below the maximum level]"
            )
        print(line)
    return 0


def cmd_reconstruct(args) -> int:
    networks = _read_networks(args.input)
    if args.three:
        if args.blobs is None:
            raise PhyloNetworkError("--three requires --blobs")
        if len(networks) != 3:
            raise PhyloNetworkError(f"--three expects exactly 3 networks, found {len(networks)}")
        result = reconstruct_from_three(*networks, max_level_blob_count=args.blobs)
        trace = []
    else:
        outcome = reconstruct_from_mlls_with_trace(networks, verify=not args.no_verify)
        result, trace = outcome.network, outcome.trace
    _write(serialize(result) + "\n", args.output)
    if args.trace is not None:
        Path(args.trace).write_text(json.dumps(trace, indent=2) + "\n")
    return 0


def cmd_iso(args) -> int:
    a, b = _read_single(args.first), _read_single(args.second)
    same = is_isomorphic(a, b)
    print("isomorphic" if same else "non-isomorphic")
    return 0


def cmd_generate(args) -> int:
    spec = GenSpec(
        n_leaves=args.leaves,
        target_level=args.level,
        n_level_k_blobs=args.blobs,
        seed=args.seed,
        max_reticulations=args.max_reticulations,
    )
    _write(serialize(random_tree_child(spec)) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treechild", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that files contain valid networks")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("mlls", help="enumerate the maximum lower-level subnetworks")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_mlls)

    p = sub.add_parser("blobtree", help="blob tree of a network, or reconstruct one from an MLLS file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--reconstruct", action="store_true", help="force reconstruction mode")
    p.add_argument("--flag-blobs", action="store_true", help="also list the maximum-level blobs")
    p.set_defaults(run=cmd_blobtree)

    p = sub.add_parser("shapes", help="classify a leaf pair, or infer it from an MLLS file")
    p.add_argument("input")
    p.add_argument("--pair", required=True, metavar="X,Y")
    p.set_defaults(run=cmd_shapes)

    p = sub.add_parser("reconstruct", help="rebuild the network from its MLLS file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--three", action="store_true", help="three-subnetwork mode")
    p.add_argument("--blobs", type=int, help="number of maximum-level blobs (three mode)")
    p.add_argument("--no-verify", action="store_true", help="skip the final MLLS-set check")
    p.add_argument("--trace", help="write a JSON reconstruction trace to this file")
    p.set_defaults(run=cmd_reconstruct)

    p = sub.add_parser("iso", help="compare two network files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_iso)

    p = sub.add_parser("generate", help="generate a random tree-child network")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--blobs", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-reticulations", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_generate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except PhyloNetworkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
