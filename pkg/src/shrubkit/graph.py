"""Simple undirected graphs on vertex set {0..n-1} with optional vertex labels.

The text format is line based: the first line holds the vertex count, every
following `u v` line one edge with u < v, and optional trailing lines
`label v NAME` attach a label to a vertex.  Writers emit edges and labels
sorted, so a written file re-reads and re-writes to identical bytes.
"""

from __future__ import annotations

from .errors import DomainError, ValidationError


class Graph:
    """An immutable simple graph.

    Edges are stored as a sorted tuple of (u, v) pairs with u < v, labels as
    a dict mapping a vertex to a frozenset of label names (vertices without
    labels are absent from the dict).
    """

    __slots__ = ("n", "edges", "labels", "_adj")

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValidationError(f"vertex count must be >= 0, got {n}")
        edge_set = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {e} out of range for n={n}")
            if u == v:
                raise ValidationError(f"loop at vertex {u} is not allowed")
            edge_set.add((min(u, v), max(u, v)))
        label_map = {}
        if labels:
            for v, names in labels.items():
                if not 0 <= v < n:
                    raise ValidationError(f"label on missing vertex {v}")
                names = frozenset(str(name) for name in names)
                if names:
                    label_map[v] = names
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(edge_set)))
        object.__setattr__(self, "labels", label_map)
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def has_edge(self, u, v):
        return v in self._adj[u]

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def vertex_labels(self, v):
        return self.labels.get(v, frozenset())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.edges, frozenset(self.labels.items())))

    def __repr__(self):
        parts = [f"Graph(n={self.n}, edges={list(self.edges)}"]
        if self.labels:
            parts.append(f", labels={dict(sorted(self.labels.items()))}")
        return "".join(parts) + ")"

    def __getstate__(self):
        return (self.n, self.edges, self.labels)

    def __setstate__(self, state):
        n, edges, labels = state
        self.__init__(n, edges, labels)


def complement_on_subset(g, x):
    """Flip the adjacency of every vertex pair inside x; pairs leaving x stay."""
    x = set(x)
    for v in x:
        if not 0 <= v < g.n:
            raise DomainError(f"subset vertex {v} not in graph")
    xs = sorted(x)
    edges = set(g.edges)
    for i, u in enumerate(xs):
        for v in xs[i + 1 :]:
            pair = (u, v)
            if pair in edges:
                edges.remove(pair)
            else:
                edges.add(pair)
    return Graph(g.n, edges, g.labels)


def induced_subgraph(g, keep):
    """Induced subgraph on `keep`, renumbered densely in ascending id order.

    Returns (subgraph, id_map) where id_map[new] = old.
    """
    keep = sorted(set(keep))
    for v in keep:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} not in graph")
    pos = {old: new for new, old in enumerate(keep)}
    edges = [
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    ]
    labels = {pos[v]: names for v, names in g.labels.items() if v in pos}
    return Graph(len(keep), edges, labels), tuple(keep)


def relabel_graph(g, perm):
    """Rename vertices by perm (perm[old] = new, a bijection on 0..n-1)."""
    if sorted(perm) != list(range(g.n)):
        raise DomainError("perm is not a bijection on the vertex set")
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    labels = {perm[v]: names for v, names in g.labels.items()}
    return Graph(g.n, edges, labels)


def components(g):
    """Connected components as sorted vertex lists, ordered by minimum vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _are_twins(g, u, v):
    return (g.neighbors(u) - {v}) == (g.neighbors(v) - {u})


def twin_partition(g):
    """Partition vertices into twin classes (blocks sorted, ordered by minimum).

    Two vertices are twins when their neighbourhoods agree outside the pair
    itself; this relation is an equivalence, so the partition is unique.
    """
    classes = []
    for v in range(g.n):
        for cls in classes:
            if _are_twins(g, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return [sorted(c) for c in classes]


def neighbourhood_diversity(g):
    """Number of twin classes."""
    return len(twin_partition(g))


def _refine_colors(g, colors):
    """Iterated neighbourhood refinement; returns stable per-vertex color ids."""
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.n)
        ]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def canonical_form(g):
    """Canonical key and labeling of g.

    Returns (key, perm) where perm[old] = canonical position and two graphs
    are isomorphic (label-preserving) iff their keys are equal.  The key is
    the minimum adjacency encoding over all orderings that respect the
    refined color cells, found by prefix-pruned backtracking.
    """
    n = g.n
    init_keys = [
        (tuple(sorted(g.vertex_labels(v))), g.degree(v)) for v in range(n)
    ]
    order = {k: i for i, k in enumerate(sorted(set(init_keys)))}
    colors = _refine_colors(g, [order[k] for k in init_keys])

    cells = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    cell_order = sorted(cells)
    # per canonical position, the color id of the cell it belongs to
    pos_color = []
    for c in cell_order:
        pos_color.extend([c] * len(cells[c]))
    cell_signature = tuple(
        (tuple(sorted(g.vertex_labels(cells[c][0]))), len(cells[c]))
        for c in cell_order
    )

    best_rows = []
    best_perm = [None]
    placed = []
    used = [False] * n

    def residual_twins(u, v):
        ru = {w for w in g.neighbors(u) if not used[w]} - {v}
        rv = {w for w in g.neighbors(v) if not used[w]} - {u}
        return ru == rv

    def dfs(pos):
        if pos == n:
            best_perm[0] = {v: i for i, v in enumerate(placed)}
            return
        color = pos_color[pos]
        candidates = [v for v in cells[color] if not used[v]]
        # vertices interchangeable by an automorphism explore identically
        reps = []
        for v in candidates:
            row = 0
            for i, w in enumerate(placed):
                if g.has_edge(v, w):
                    row |= 1 << i
            if any(r == row and residual_twins(v, u) for r, u in reps):
                continue
            reps.append((row, v))
        for row, v in sorted(reps):
            if pos < len(best_rows):
                if row > best_rows[pos]:
                    continue
                if row < best_rows[pos]:
                    del best_rows[pos:]
                    best_rows.append(row)
            else:
                best_rows.append(row)
            used[v] = True
            placed.append(v)
            dfs(pos + 1)
            placed.pop()
            used[v] = False

    if n:
        dfs(0)
    key = (n, cell_signature, tuple(best_rows))
    perm = best_perm[0] if n else {}
    return key, perm


def are_isomorphic(g, h, witness=False):
    """Decide label-preserving isomorphism.

    With witness=True returns (flag, mapping) where mapping sends vertices of
    g to vertices of h (None when not isomorphic).
    """
    key_g, perm_g = canonical_form(g)
    key_h, perm_h = canonical_form(h)
    if key_g != key_h:
        return (False, None) if witness else False
    if not witness:
        return True
    inv_h = {pos: v for v, pos in perm_h.items()}
    mapping = {v: inv_h[perm_g[v]] for v in range(g.n)}
    assert all(
        h.has_edge(mapping[u], mapping[v]) == g.has_edge(u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
    )
    return True, mapping


def is_induced_subgraph(h, g, embedding=False):
    """Decide whether h embeds into g as an induced subgraph.

    Edges and non-edges of h must both be preserved; labels are ignored.
    With embedding=True returns (flag, mapping h-vertex -> g-vertex) where
    mapping is None when no embedding exists.
    """
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    assign = {}
    used = [False] * g.n

    def extend(idx):
        if idx == len(order):
            return True
        a = order[idx]
        for b in range(g.n):
            if used[b]:
                continue
            ok = True
            for a2, b2 in assign.items():
                if h.has_edge(a, a2) != g.has_edge(b, b2):
                    ok = False
                    break
            if not ok:
                continue
            assign[a] = b
            used[b] = True
            if extend(idx + 1):
                return True
            del assign[a]
            used[b] = False
        return False

    found = extend(0)
    if embedding:
        return found, dict(sorted(assign.items())) if found else None
    return found


def graph_to_text(g):
    """Serialize to the line-based text format (deterministic)."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    for v in sorted(g.labels):
        for name in sorted(g.labels[v]):
            lines.append(f"label {v} {name}")
    return "\n".join(lines) + "\n"


def graph_from_text(text):
    """Parse the line-based text format; malformed input raises ValidationError."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValidationError(f"bad vertex count line: {lines[0]!r}") from None
    edges = []
    labels = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "label":
            if len(parts) != 3:
                raise ValidationError(f"bad label line: {ln!r}")
            try:
                v = int(parts[1])
            except ValueError:
                raise ValidationError(f"bad label line: {ln!r}") from None
            labels.setdefault(v, set()).add(parts[2])
        else:
            if len(parts) != 2:
                raise ValidationError(f"bad edge line: {ln!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValidationError(f"bad edge line: {ln!r}") from None
            if not u < v:
                raise ValidationError(f"edge line must have u < v: {ln!r}")
            edges.append((u, v))
    return Graph(n, edges, labels)
