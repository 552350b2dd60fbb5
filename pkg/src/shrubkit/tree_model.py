"""Tree-models: rooted trees whose leaves are graph vertices.

A model has uniform leaf depth d, a leaf coloring with colors 1..m, and a
symmetric signature S of (color, color, level) triples.  The realized graph
joins two leaves exactly when their colors together with half their tree
distance form a triple of S.  The k-copied variant is an ordinary model of
depth d+1 whose depth-d nodes each hold at most k leaves.

The structured file format is JSON: a recursive node record ({"children":
[...]} internally, {"vertex": v, "color": c} at leaves) together with
"depth", "colors" and "signature" ([[i, j, level], ...]).  Writers order
children by a canonical code, so files round-trip byte for byte.
"""

from __future__ import annotations

import json

from .errors import DomainError, SignatureConflict, ValidationError
from .graph import Graph
from .rooted_tree import RootedTree, subtree_on


def _symmetrize(signature):
    out = set()
    for i, j, lvl in signature:
        out.add((i, j, lvl))
        out.add((j, i, lvl))
    return frozenset(out)


class TreeModel:
    """An immutable tree-model.

    leaf_vertex maps each leaf node to the graph vertex it represents (a
    bijection onto 0..n-1); leaf_color maps each leaf node to 1..colors.
    """

    __slots__ = ("tree", "depth", "colors", "leaf_vertex", "leaf_color", "signature")

    def __init__(self, tree, depth, colors, leaf_vertex, leaf_color, signature):
        if depth < 0:
            raise ValidationError(f"depth must be >= 0, got {depth}")
        if colors < 1:
            raise ValidationError(f"color count must be >= 1, got {colors}")
        leaves = tree.leaves()
        for u in leaves:
            if tree.depth(u) != depth:
                raise ValidationError(
                    f"leaf {u} at depth {tree.depth(u)}, expected uniform depth {depth}"
                )
        n = len(leaves)
        if sorted(leaf_vertex) != sorted(leaves):
            raise ValidationError("leaf_vertex keys must be exactly the leaves")
        if sorted(leaf_vertex.values()) != list(range(n)):
            raise ValidationError("leaf_vertex must biject leaves onto 0..n-1")
        if sorted(leaf_color) != sorted(leaves):
            raise ValidationError("leaf_color keys must be exactly the leaves")
        for u, c in leaf_color.items():
            if not 1 <= c <= colors:
                raise ValidationError(f"leaf {u} has color {c} outside 1..{colors}")
        signature = frozenset(tuple(t) for t in signature)
        for i, j, lvl in signature:
            if not (1 <= i <= colors and 1 <= j <= colors and 1 <= lvl <= depth):
                raise ValidationError(f"signature triple {(i, j, lvl)} out of range")
            if (j, i, lvl) not in signature:
                raise ValidationError(
                    f"signature not symmetric: missing {(j, i, lvl)}"
                )
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "leaf_vertex", dict(leaf_vertex))
        object.__setattr__(self, "leaf_color", dict(leaf_color))
        object.__setattr__(self, "signature", signature)

    def __setattr__(self, name, value):
        raise AttributeError("TreeModel is immutable")

    @property
    def n(self):
        return len(self.leaf_vertex)

    def pair_level(self, u, v):
        """Half the tree distance between two distinct leaves."""
        return self.depth - self.tree.depth(self.tree.lca(u, v))

    def __eq__(self, other):
        if not isinstance(other, TreeModel):
            return NotImplemented
        return (
            self.tree == other.tree
            and self.depth == other.depth
            and self.colors == other.colors
            and self.leaf_vertex == other.leaf_vertex
            and self.leaf_color == other.leaf_color
            and self.signature == other.signature
        )

    def __repr__(self):
        return (
            f"TreeModel(depth={self.depth}, colors={self.colors}, "
            f"n={self.n}, signature={sorted(self.signature)})"
        )

    def __getstate__(self):
        return (
            self.tree,
            self.depth,
            self.colors,
            self.leaf_vertex,
            self.leaf_color,
            self.signature,
        )

    def __setstate__(self, state):
        self.__init__(*state)


def realize(model):
    """The graph a model denotes, on vertex ids given by leaf_vertex."""
    leaves = model.tree.leaves()
    edges = []
    for a in range(len(leaves)):
        for b in range(a + 1, len(leaves)):
            u, v = leaves[a], leaves[b]
            lvl = model.pair_level(u, v)
            triple = (model.leaf_color[u], model.leaf_color[v], lvl)
            if triple in model.signature:
                edges.append((model.leaf_vertex[u], model.leaf_vertex[v]))
    return Graph(model.n, edges)


def verify(model, g):
    """True iff the model realizes g exactly (same ids, same edges)."""
    realized = realize(model)
    return realized.n == g.n and realized.edges == g.edges


def infer_signature(tree, leaf_vertex, leaf_color, g):
    """The unique minimal signature making (tree, coloring) a model of g.

    Only (color, color, level) classes witnessed by some leaf pair appear.
    Raises SignatureConflict naming two pairs of the same class that
    disagree on adjacency.
    """
    leaves = tree.leaves()
    depths = {tree.depth(u) for u in leaves}
    if len(depths) != 1:
        raise DomainError("leaves do not sit at a uniform depth")
    depth = depths.pop()
    if sorted(leaf_vertex.values()) != list(range(g.n)):
        raise DomainError("leaf_vertex must biject leaves onto the vertex set")
    seen = {}
    signature = set()
    for a in range(len(leaves)):
        for b in range(a + 1, len(leaves)):
            u, v = leaves[a], leaves[b]
            lvl = depth - tree.depth(tree.lca(u, v))
            cu, cv = leaf_color[u], leaf_color[v]
            key = (min(cu, cv), max(cu, cv), lvl)
            adjacent = g.has_edge(leaf_vertex[u], leaf_vertex[v])
            if key in seen:
                prev_pair, prev_adj = seen[key]
                if prev_adj != adjacent:
                    pair = (leaf_vertex[u], leaf_vertex[v])
                    edge_pair = prev_pair if prev_adj else pair
                    non_pair = pair if prev_adj else prev_pair
                    raise SignatureConflict(key, edge_pair, non_pair)
            else:
                seen[key] = ((leaf_vertex[u], leaf_vertex[v]), adjacent)
            if adjacent:
                signature.add((cu, cv, lvl))
                signature.add((cv, cu, lvl))
    return frozenset(signature)


def restrict(model, keep):
    """Model of the induced subgraph on `keep` (ids renumbered ascending)."""
    keep = sorted(set(keep))
    if not keep:
        raise DomainError("keep must contain at least one vertex")
    if not all(0 <= v < model.n for v in keep):
        raise DomainError("keep contains vertices outside the realized graph")
    pos = {old: new for new, old in enumerate(keep)}
    kept_nodes = set()
    for u, vert in model.leaf_vertex.items():
        if vert in pos:
            kept_nodes.add(u)
            kept_nodes.update(model.tree.ancestors(u))
    tree, kept = subtree_on(model.tree, kept_nodes)
    old_of = {new: old for new, old in enumerate(kept)}
    leaf_vertex = {}
    leaf_color = {}
    for new_id, old_id in old_of.items():
        if old_id in model.leaf_vertex:
            leaf_vertex[new_id] = pos[model.leaf_vertex[old_id]]
            leaf_color[new_id] = model.leaf_color[old_id]
    return TreeModel(
        tree, model.depth, model.colors, leaf_vertex, leaf_color, model.signature
    )


def complement_model(model):
    """Same tree and coloring; signature replaced by its complement."""
    full = {
        (i, j, lvl)
        for i in range(1, model.colors + 1)
        for j in range(1, model.colors + 1)
        for lvl in range(1, model.depth + 1)
    }
    return TreeModel(
        model.tree,
        model.depth,
        model.colors,
        model.leaf_vertex,
        model.leaf_color,
        full - model.signature,
    )


def lift_depth(model):
    """Hang the whole tree under a fresh root; realize is unchanged."""
    parent = list(model.tree.parent)
    new_root = len(parent)
    parent[model.tree.root] = new_root
    parent.append(-1)
    return TreeModel(
        RootedTree(parent),
        model.depth + 1,
        model.colors,
        model.leaf_vertex,
        model.leaf_color,
        model.signature,
    )


def grow_leaf(tree, u, d):
    """Grow a fresh path from u down to depth d and return (tree, its leaf).

    A node already at depth d is returned unchanged as its own leaf.
    """
    if tree.depth(u) > d:
        raise DomainError(f"node {u} is deeper than target depth {d}")
    return tree.extend_path(u, d - tree.depth(u))


def add_leaf_level(model):
    """Hang each leaf alone under its former node, one level deeper.

    The result realizes the same graph as a depth d+1 model whose depth-d
    nodes hold one leaf each (a 1-copied model).
    """
    parent = list(model.tree.parent)
    leaf_vertex = {}
    leaf_color = {}
    for u in model.tree.leaves():
        parent.append(u)
        new_leaf = len(parent) - 1
        leaf_vertex[new_leaf] = model.leaf_vertex[u]
        leaf_color[new_leaf] = model.leaf_color[u]
    signature = {(i, j, lvl + 1) for i, j, lvl in model.signature}
    return TreeModel(
        RootedTree(parent),
        model.depth + 1,
        model.colors,
        leaf_vertex,
        leaf_color,
        signature,
    )


class CopiedTreeModel:
    """A k-copied tree-model: a depth d+1 model with parameters (d, m, k)."""

    __slots__ = ("model", "d", "m", "k")

    def __init__(self, model, d, m, k):
        if not verify_k_copied(model, d, m, k):
            raise ValidationError(
                f"model is not a valid {k}-copied model of depth {d} with {m} colors"
            )
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)

    def __setattr__(self, name, value):
        raise AttributeError("CopiedTreeModel is immutable")

    def __repr__(self):
        return f"CopiedTreeModel(d={self.d}, m={self.m}, k={self.k}, n={self.model.n})"


def verify_k_copied(model, d, m, k):
    """True iff model is a depth d+1 model, with <= m colors, whose depth-d
    nodes each hold at most k leaf children."""
    if d < 0 or m < 1 or k < 1:
        raise DomainError("need d >= 0, m >= 1, k >= 1")
    if model.depth != d + 1 or model.colors > m:
        return False
    tree = model.tree
    for u in range(tree.n):
        if tree.depth(u) == d and not tree.is_leaf(u):
            if len(tree.children(u)) > k:
                return False
    return True


# ---------------------------------------------------------------------------
# colored rooted trees and the repeated-subtree reduction


class ColoredTree:
    """A rooted tree with a color (positive int) on every node."""

    __slots__ = ("tree", "color")

    def __init__(self, tree, color):
        color = tuple(color)
        if len(color) != tree.n:
            raise ValidationError("need exactly one color per node")
        for c in color:
            if c < 1:
                raise ValidationError(f"colors must be positive ints, got {c}")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "color", color)

    def __setattr__(self, name, value):
        raise AttributeError("ColoredTree is immutable")

    def __eq__(self, other):
        if not isinstance(other, ColoredTree):
            return NotImplemented
        return self.tree == other.tree and self.color == other.color

    def __repr__(self):
        return f"ColoredTree(n={self.tree.n}, height={self.tree.height})"


def canonical_code(ct, node=None):
    """Canonical color-isomorphism code of the subtree rooted at `node`.

    Two subtrees get the same code exactly when a color-preserving rooted
    isomorphism maps one onto the other.
    """
    if node is None:
        node = ct.tree.root
    children = ct.tree.children(node)
    return (ct.color[node], tuple(sorted(canonical_code(ct, c) for c in children)))


def _threshold_at(thresholds, height):
    idx = min(height, len(thresholds)) - 1
    return thresholds[idx]


def reduce_tree(ct, thresholds, modulus):
    """Trim repeated sibling subtrees, keeping counts congruent mod `modulus`.

    Bottom up, each node partitions its (already reduced) child subtrees
    into color-isomorphism classes; a class of size at least R + modulus,
    where R is the threshold for the node's current subtree height, is cut
    down to R + ((size - R) mod modulus).  Removal drops the members with
    the largest node ids, so the result is deterministic and is always a
    subtree of the input with the same root.

    thresholds is a non-empty non-decreasing sequence; index i-1 holds the
    threshold for height i and the last entry covers all larger heights.
    """
    thresholds = tuple(thresholds)
    if not thresholds or any(t < 0 for t in thresholds):
        raise DomainError("thresholds must be a non-empty sequence of ints >= 0")
    if list(thresholds) != sorted(thresholds):
        raise DomainError("thresholds must be non-decreasing")
    if modulus < 1:
        raise DomainError("modulus must be >= 1")

    tree = ct.tree

    def process(u):
        """Returns (code, height, kept node ids) for the reduced subtree at u."""
        if tree.is_leaf(u):
            return (ct.color[u], ()), 0, [u]
        reduced = [process(c) for c in tree.children(u)]
        height = 1 + max(h for _, h, _ in reduced)
        limit = _threshold_at(thresholds, height)
        classes = {}
        for child_id, (code, h, kept) in zip(tree.children(u), reduced):
            classes.setdefault(code, []).append((child_id, h, kept))
        kept_nodes = [u]
        child_codes = []
        # a zero threshold can drop a whole class, so the height ancestors
        # see must be recomputed from the children actually kept
        new_height = 0
        for code in sorted(classes):
            members = sorted(classes[code])
            size = len(members)
            if size >= limit + modulus:
                size = limit + (size - limit) % modulus
            for child_id, h, kept in members[:size]:
                kept_nodes.extend(kept)
                child_codes.append(code)
                new_height = max(new_height, h + 1)
        return (ct.color[u], tuple(sorted(child_codes))), new_height, kept_nodes

    _, _, kept = process(tree.root)
    new_tree, kept_ids = subtree_on(tree, kept)
    return ColoredTree(new_tree, tuple(ct.color[old] for old in kept_ids))


# ---------------------------------------------------------------------------
# serialization


def _node_record(model, u):
    if model.tree.is_leaf(u):
        return {"vertex": model.leaf_vertex[u], "color": model.leaf_color[u]}
    records = [_node_record(model, c) for c in model.tree.children(u)]
    return {"children": sorted(records, key=_record_key)}


def _record_key(record):
    if "vertex" in record:
        return (0, record["color"], record["vertex"])
    return (1, tuple(_record_key(c) for c in record["children"]))


def model_to_text(model):
    """Canonical JSON serialization of a model."""
    doc = {
        "depth": model.depth,
        "colors": model.colors,
        "signature": sorted([i, j, lvl] for i, j, lvl in model.signature),
        "tree": _node_record(model, model.tree.root),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _build_tree(record, parent, leaf_vertex, leaf_color, parent_id):
    parent.append(parent_id)
    me = len(parent) - 1
    if "vertex" in record or "color" in record:
        if set(record) != {"vertex", "color"}:
            raise ValidationError(f"bad leaf record: {sorted(record)}")
        leaf_vertex[me] = record["vertex"]
        leaf_color[me] = record["color"]
    else:
        if set(record) != {"children"}:
            raise ValidationError(f"bad node record: {sorted(record)}")
        if not record["children"]:
            raise ValidationError("internal node with empty children list")
        for child in record["children"]:
            _build_tree(child, parent, leaf_vertex, leaf_color, me)


def model_from_text(text):
    """Parse the JSON model format; malformed input raises ValidationError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad model JSON: {exc}") from None
    for key in ("depth", "colors", "signature", "tree"):
        if key not in doc:
            raise ValidationError(f"model record lacks {key!r}")
    parent, leaf_vertex, leaf_color = [], {}, {}
    _build_tree(doc["tree"], parent, leaf_vertex, leaf_color, -1)
    signature = [tuple(t) for t in doc["signature"]]
    if any(len(t) != 3 for t in signature):
        raise ValidationError("signature triples must have three entries")
    return TreeModel(
        RootedTree(parent),
        doc["depth"],
        doc["colors"],
        leaf_vertex,
        leaf_color,
        signature,
    )


def _colored_record(ct, u):
    children = [_colored_record(ct, c) for c in ct.tree.children(u)]
    children.sort(key=_colored_key)
    return {"color": ct.color[u], "children": children}


def _colored_key(record):
    return (record["color"], tuple(_colored_key(c) for c in record["children"]))


def colored_tree_to_text(ct):
    """Canonical JSON serialization of a colored rooted tree."""
    return json.dumps(_colored_record(ct, ct.tree.root), indent=2, sort_keys=True) + "\n"


def colored_tree_from_text(text):
    """Parse the JSON colored-tree format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad colored-tree JSON: {exc}") from None

    parent, color = [], []

    def build(record, parent_id):
        if not isinstance(record, dict) or "color" not in record:
            raise ValidationError("colored-tree nodes need a color")
        parent.append(parent_id)
        color.append(record["color"])
        me = len(parent) - 1
        for child in record.get("children", ()):
            build(child, me)

    build(doc, -1)
    return ColoredTree(RootedTree(parent), color)
