"""Elimination forests, exact tree-depth, and the model a decomposition yields.

The forest text format is one `v parent` line per vertex in ascending vertex
order, with parent -1 for roots.
"""

from __future__ import annotations

from .errors import DomainError, ResourceLimitError, ValidationError
from .graph import Graph
from .rooted_tree import RootedTree
from .tree_model import TreeModel, grow_leaf

DEFAULT_TD_CAP = 16


class EliminationForest:
    """An immutable rooted forest on vertices 0..n-1 (parent -1 at roots)."""

    __slots__ = ("parent", "_depth")

    def __init__(self, parent):
        parent = tuple(parent)
        n = len(parent)
        for v, p in enumerate(parent):
            if p != -1 and not 0 <= p < n:
                raise ValidationError(f"vertex {v} has out-of-range parent {p}")
        depth = [-1] * n
        children = [[] for _ in range(n)]
        stack = []
        for v, p in enumerate(parent):
            if p == -1:
                depth[v] = 0
                stack.append(v)
            else:
                children[p].append(v)
        while stack:
            u = stack.pop()
            for c in children[u]:
                depth[c] = depth[u] + 1
                stack.append(c)
        if n and min(depth) < 0:
            raise ValidationError("parent pointers contain a cycle")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "_depth", tuple(depth))

    def __setattr__(self, name, value):
        raise AttributeError("EliminationForest is immutable")

    @property
    def n(self):
        return len(self.parent)

    @property
    def height(self):
        return max(self._depth, default=-1)

    def depth(self, v):
        return self._depth[v]

    def roots(self):
        return tuple(v for v, p in enumerate(self.parent) if p == -1)

    def ancestors(self, v):
        out = []
        while self.parent[v] != -1:
            v = self.parent[v]
            out.append(v)
        return out

    def __eq__(self, other):
        if not isinstance(other, EliminationForest):
            return NotImplemented
        return self.parent == other.parent

    def __repr__(self):
        return f"EliminationForest(parent={list(self.parent)})"


def closure(f):
    """Graph joining every vertex to each of its strict ancestors."""
    edges = []
    for v in range(f.n):
        for a in f.ancestors(v):
            edges.append((v, a))
    return Graph(f.n, edges)


def validate_td(g, f):
    """True iff f is an elimination forest for g (every edge is covered)."""
    if f.n != g.n:
        raise DomainError(
            f"forest has {f.n} vertices but the graph has {g.n}"
        )
    ancestry = [set(f.ancestors(v)) for v in range(f.n)]
    return all(v in ancestry[u] or u in ancestry[v] for u, v in g.edges)


def tree_depth(g, cap=DEFAULT_TD_CAP):
    """Exact tree-depth with a witness forest of height tree_depth - 1.

    Recursion over connected vertex subsets: a disconnected graph takes the
    maximum over components, a connected one is 1 + the best vertex
    deletion.  Subsets are memoized as bitmasks.
    """
    n = g.n
    if n > cap:
        raise ResourceLimitError(f"tree_depth cap is {cap} vertices, got {n}")
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def split(mask):
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                v = frontier.bit_length() - 1
                frontier &= ~(1 << v)
                grow = adj[v] & mask & ~comp
                comp |= grow
                frontier |= grow
            comps.append(comp)
            rest &= ~comp
        return comps

    memo = {}

    def td(mask):
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        comps = split(mask)
        if len(comps) > 1:
            result = max(td(c) for c in comps)
        else:
            result = 1 + min(
                td(mask & ~(1 << v)) for v in range(n) if mask >> v & 1
            )
        memo[mask] = result
        return result

    parent = [-1] * n

    def build(mask, above):
        for comp in split(mask):
            target = td(comp)
            for v in range(n):
                if comp >> v & 1 and td(comp & ~(1 << v)) == target - 1:
                    parent[v] = above
                    build(comp & ~(1 << v), v)
                    break

    if n:
        value = td((1 << n) - 1)
        build((1 << n) - 1, -1)
    else:
        value = 0
    return value, EliminationForest(parent)


def td_to_tm(g, f):
    """Tree-model realizing g, built from an elimination forest.

    With a single-root forest the forest itself is the tree (depth =
    height), otherwise a fresh root joins the trees (depth = height + 1).
    Vertices are colored by their depth together with the set of ancestor
    distances carrying an edge, vertices above leaf level grow a private
    path down, and adjacency becomes a color rule: a pair is adjacent
    exactly when it meets at the shallower vertex and the depth difference
    lies in the deeper vertex's ancestor-edge set.  Color count stays below
    2^(height(f) + 1).
    """
    if g.n == 0:
        raise DomainError("cannot build a model for the empty graph")
    if not validate_td(g, f):
        raise DomainError("forest is not an elimination forest for the graph")
    d = f.height + 1
    roots = f.roots()
    if len(roots) == 1:
        tree = RootedTree(f.parent)
    else:
        parent = list(f.parent)
        new_root = len(parent)
        for r in roots:
            parent[r] = new_root
        parent.append(-1)
        tree = RootedTree(parent)
    model_depth = tree.height

    def color_of(u):
        j = model_depth - tree.depth(u)
        ancestor_edges = frozenset(
            i
            for i, a in enumerate(tree.ancestors(u), start=1)
            if a < g.n and g.has_edge(u, a)
        )
        # colors pack (depth offset j, ancestor-edge set I) injectively
        offset = sum(1 << (d - 1 - jj) for jj in range(j))
        return offset + 1 + sum(1 << (i - 1) for i in ancestor_edges), j, ancestor_edges

    colors = {u: color_of(u) for u in range(g.n)}

    leaf_vertex = {}
    leaf_color = {}
    for u in range(g.n):
        tree, leaf = grow_leaf(tree, u, model_depth)
        leaf_vertex[leaf] = u
        leaf_color[leaf] = colors[u][0]

    signature = set()
    used = {}
    for u in range(g.n):
        c, j, edges_i = colors[u]
        used.setdefault((c, j, edges_i), u)
    for c1, j1, i1 in used:
        for c2, j2, _ in used:
            if j1 < j2 and (j2 - j1) in i1:
                signature.add((c1, c2, j2))
                signature.add((c2, c1, j2))

    return TreeModel(
        tree, model_depth, 2**d - 1, leaf_vertex, leaf_color, signature
    )


def forest_to_text(f):
    """Serialize to `v parent` lines."""
    return "".join(f"{v} {p}\n" for v, p in enumerate(f.parent))


def forest_from_text(text):
    """Parse `v parent` lines; vertices must be exactly 0..n-1."""
    entries = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValidationError(f"bad forest line: {ln!r}")
        try:
            v, p = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(f"bad forest line: {ln!r}") from None
        if v in entries:
            raise ValidationError(f"vertex {v} listed twice")
        entries[v] = p
    if sorted(entries) != list(range(len(entries))):
        raise ValidationError("forest lines must cover vertices 0..n-1")
    return EliminationForest(tuple(entries[v] for v in range(len(entries))))
