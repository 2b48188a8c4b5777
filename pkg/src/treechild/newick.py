"""Extended Newick parsing and canonical serialization, plus blob-tree JSON.

One network per line, each terminated by ``;``.  A reticulation appears once
with its child, tagged ``#H<k>``, and once more as a bare ``#H<k>`` reference
under its second parent.  Serialization is canonical: two isomorphic
tree-child networks produce identical text.
"""

from __future__ import annotations

import json
import re

from .blobtree import BlobTree
from .errors import DanglingHybridLabelError, EnewickSyntaxError
from .isomorphism import path_count_vectors
from .network import Network, NodeId, validate

_BARE_LABEL = re.compile(r"[A-Za-z0-9_.+|\-]+")


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, str] = {}
        self.hybrid_ids: dict[str, int] = {}
        self.hybrid_child_count: dict[str, int] = {}
        self.hybrid_occurrences: dict[str, int] = {}
        self.next_id = 1  # 0 is reserved for the added root

    def fail(self, message: str):
        raise EnewickSyntaxError(message, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_space(self):
        while self.peek().isspace():
            self.pos += 1

    def fresh(self) -> int:
        node = self.next_id
        self.next_id += 1
        return node

    def parse_network(self) -> Network:
        self.skip_space()
        top = self.parse_subtree()
        self.skip_space()
        if self.peek() != ";":
            self.fail("expected ';'")
        self.pos += 1
        self.skip_space()
        if self.pos != len(self.text):
            self.fail("trailing text after ';'")
        for tag, count in self.hybrid_occurrences.items():
            if count == 1:
                raise DanglingHybridLabelError(f"hybrid label #{tag} occurs only once")
        self.edges.append((0, top))
        return validate(self.edges, self.labels)

    def parse_subtree(self) -> int:
        self.skip_space()
        children: list[int] = []
        has_parens = self.peek() == "("
        if has_parens:
            self.pos += 1
            children.append(self.parse_subtree())
            self.skip_space()
            while self.peek() == ",":
                self.pos += 1
                children.append(self.parse_subtree())
                self.skip_space()
            if self.peek() != ")":
                self.fail("expected ')' or ','")
            self.pos += 1
        name = self.parse_name()
        tag = self.parse_hybrid_tag()

        if tag is not None:
            self.hybrid_occurrences[tag] = self.hybrid_occurrences.get(tag, 0) + 1
            if tag not in self.hybrid_ids:
                self.hybrid_ids[tag] = self.fresh()
                self.hybrid_child_count[tag] = 0
            node = self.hybrid_ids[tag]
            if children:
                if self.hybrid_child_count[tag]:
                    self.fail(f"hybrid #{tag} has children in two places")
                self.hybrid_child_count[tag] = len(children)
        else:
            node = self.fresh()
            if not children:
                if name is None:
                    self.fail("leaf without a label")
                self.labels[node] = name
        for child in children:
            self.edges.append((node, child))
        return node

    def parse_name(self) -> str | None:
        self.skip_space()
        if self.peek() == "'":
            start = self.pos
            self.pos += 1
            out = []
            while True:
                ch = self.peek()
                if ch == "":
                    self.pos = start
                    self.fail("unterminated quoted label")
                self.pos += 1
                if ch == "'":
                    if self.peek() == "'":  # doubled quote escapes a quote
                        out.append("'")
                        self.pos += 1
                    else:
                        return "".join(out)
                else:
                    out.append(ch)
        match = _BARE_LABEL.match(self.text, self.pos)
        if match:
            self.pos = match.end()
            return match.group()
        return None

    def parse_hybrid_tag(self) -> str | None:
        if self.peek() != "#":
            return None
        self.pos += 1
        match = _BARE_LABEL.match(self.text, self.pos)
        if not match:
            self.fail("expected a hybrid label after '#'")
        self.pos = match.end()
        return match.group()


def parse(text: str) -> Network:
    """Parse one extended Newick network; a root edge is added above the top node."""
    return _Parser(text).parse_network()


def read_document(text: str) -> list[Network]:
    """Parse a document with one network per non-empty line."""
    return [parse(line) for line in text.splitlines() if line.strip()]


# -- serialization ---------------------------------------------------------------


def _format_label(label: str) -> str:
    if _BARE_LABEL.fullmatch(label):
        return label
    return "'" + label.replace("'", "''") + "'"


def serialize(n: Network) -> str:
    """Canonical extended Newick text for a network.

    Children are ordered by the canonical form of their fully unfolded
    subtrees, ties broken by path-count vectors, and hybrid numbers follow
    the first visit in that order, so isomorphic tree-child networks
    serialize identically.
    """
    unfold_memo: dict[NodeId, str] = {}

    def unfold(v: NodeId) -> str:
        if v not in unfold_memo:
            if n.is_leaf(v):
                unfold_memo[v] = _format_label(n.label_of(v))
            else:
                unfold_memo[v] = "(" + ",".join(sorted(unfold(c) for c in n.children(v))) + ")"
        return unfold_memo[v]

    mu = path_count_vectors(n)
    sort_key = {v: (unfold(v), mu[v]) for v in n.nodes}
    hybrid_numbers: dict[NodeId, int] = {}

    def emit(v: NodeId) -> str:
        if n.is_leaf(v):
            return _format_label(n.label_of(v))
        if n.is_reticulation(v):
            if v in hybrid_numbers:
                return f"#H{hybrid_numbers[v]}"
            hybrid_numbers[v] = len(hybrid_numbers) + 1
            number = hybrid_numbers[v]
            return f"({emit(n.child(v))})#H{number}"
        parts = [emit(c) for c in sorted(n.children(v), key=sort_key.__getitem__)]
        return "(" + ",".join(parts) + ")"

    return emit(n.child(n.root)) + ";"


def write_document(networks) -> str:
    return "".join(serialize(n) + "\n" for n in networks)


# -- blob tree JSON ----------------------------------------------------------------


def blob_tree_to_json(tree: BlobTree) -> str:
    def convert(node: BlobTree) -> dict:
        return {
            "label": None if node.label is None else sorted(node.label),
            "children": [convert(c) for c in node.children],
        }

    return json.dumps(convert(tree), indent=2)


def blob_tree_from_json(text: str) -> BlobTree:
    def convert(obj: dict) -> BlobTree:
        label = None if obj["label"] is None else frozenset(obj["label"])
        return BlobTree(label, tuple(convert(c) for c in obj["children"]))

    return convert(json.loads(text))
