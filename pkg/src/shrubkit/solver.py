"""Exact membership tests for bounded-depth model classes, at desk scale.

Tree shapes of a fixed depth are enumerated as chains of nested partitions
of the vertex set, one partition per internal level; colorings are searched
incrementally with first-occurrence symmetry breaking, failing as soon as
two vertex pairs force one (color, color, level) class both ways.
"""

from __future__ import annotations

import multiprocessing

from .errors import DomainError, ResourceLimitError
from .graph import Graph, canonical_form, complement_on_subset, components, induced_subgraph, relabel_graph
from .rooted_tree import RootedTree
from .sc_model import SCTree
from .tree_model import CopiedTreeModel, TreeModel

DEFAULT_TM_CAP = 10
DEFAULT_SC_CAP = 9
_CHUNK = 64


def _iter_partitions(verts, max_block=None):
    """Partitions of a vertex tuple; blocks ordered by first element."""
    if not verts:
        yield []
        return
    first, rest = verts[0], verts[1:]

    def extend(blocks, remaining):
        if not remaining:
            yield [tuple(b) for b in blocks]
            return
        v, tail = remaining[0], remaining[1:]
        for b in blocks:
            if max_block is None or len(b) < max_block:
                b.append(v)
                yield from extend(blocks, tail)
                b.pop()
        blocks.append([v])
        yield from extend(blocks, tail)
        blocks.pop()

    if max_block == 0:
        raise DomainError("partition blocks need room for one vertex")
    yield from extend([[first]], rest)


def _iter_chains(verts, levels, last_max_block):
    """Chains of nested partitions, coarsest first, of the given length."""
    if levels == 0:
        yield []
        return
    cap = last_max_block if levels == 1 else None
    for blocks in _iter_partitions(verts, cap):
        for subchains in _product_chains(blocks, levels - 1, last_max_block):
            merged = [
                [blk for sub in subchains for blk in sub[k]]
                for k in range(levels - 1)
            ]
            yield [blocks] + merged


def _product_chains(blocks, levels, last_max_block):
    if not blocks:
        yield []
        return
    for head in _iter_chains(blocks[0], levels, last_max_block):
        for tail in _product_chains(blocks[1:], levels, last_max_block):
            yield [head] + tail


def _meet_matrix(n, chain):
    meet = [[0] * n for _ in range(n)]
    for k, partition in enumerate(chain, start=1):
        for block in partition:
            for a in range(len(block)):
                for b in range(a + 1, len(block)):
                    u, v = block[a], block[b]
                    meet[u][v] = meet[v][u] = k
    return meet


def _search_coloring(g, m, depth, meet):
    """First-occurrence-canonical coloring consistent with some signature.

    Returns (colors, signature) or None.  A tri-state class map grows as
    vertices are colored and rolls back on backtrack.
    """
    n = g.n
    classes = {}
    colors = [0] * n

    def place(t, used):
        if t == n:
            return True
        for c in range(1, min(used + 1, m) + 1):
            added = []
            ok = True
            for s in range(t):
                lvl = depth - meet[s][t]
                a, b = colors[s], c
                key = (min(a, b), max(a, b), lvl)
                want = g.has_edge(s, t)
                if key in classes:
                    if classes[key] != want:
                        ok = False
                        break
                else:
                    classes[key] = want
                    added.append(key)
            if ok:
                colors[t] = c
                if place(t + 1, max(used, c)):
                    return True
            for key in added:
                del classes[key]
        colors[t] = 0
        return False

    if not place(0, 0):
        return None
    signature = set()
    for (a, b, lvl), adjacent in classes.items():
        if adjacent:
            signature.add((a, b, lvl))
            signature.add((b, a, lvl))
    return list(colors), signature


def _build_witness(g, depth, m, chain, colors, signature):
    """Assemble the model whose internal levels follow the chain."""
    n = g.n
    parent = [-1]
    node_of_block = []
    for k, partition in enumerate(chain):
        level_nodes = {}
        for block in sorted(partition, key=min):
            if k == 0:
                above = 0
            else:
                above = node_of_block[k - 1][
                    next(b for b in chain[k - 1] if block[0] in b)
                ]
            node = len(parent)
            parent.append(above)
            level_nodes[block] = node
        node_of_block.append(level_nodes)
    leaf_vertex = {}
    leaf_color = {}
    for v in range(n):
        if chain:
            above = node_of_block[-1][
                next(b for b in chain[-1] if v in b)
            ]
        else:
            above = 0
        leaf = len(parent)
        parent.append(above)
        leaf_vertex[leaf] = v
        leaf_color[leaf] = colors[v]
    return TreeModel(
        RootedTree(parent), depth, m, leaf_vertex, leaf_color, signature
    )


def _chain_batch(args):
    g, m, depth, chains = args
    for chain in chains:
        found = _search_coloring(g, m, depth, _meet_matrix(g.n, chain))
        if found is not None:
            return chain, found[0], found[1]
    return None


def _first_hit(g, m, depth, chain_iter, jobs):
    """First chain admitting a coloring, in enumeration order."""
    if jobs <= 1:
        for chain in chain_iter:
            found = _search_coloring(g, m, depth, _meet_matrix(g.n, chain))
            if found is not None:
                return chain, found[0], found[1]
        return None

    def batches():
        batch = []
        for chain in chain_iter:
            batch.append(chain)
            if len(batch) == _CHUNK:
                yield g, m, depth, batch
                batch = []
        if batch:
            yield g, m, depth, batch

    # imap keeps submission order, so the first hit matches the
    # sequential answer even though later batches may finish sooner
    with multiprocessing.Pool(jobs) as pool:
        for result in pool.imap(_chain_batch, batches()):
            if result is not None:
                return result
    return None


def tm_membership(g, d, m, cap=DEFAULT_TM_CAP, jobs=1):
    """Least-shape witness model of depth d with m colors, or None.

    The first chain (in nested-partition enumeration order) admitting a
    coloring wins, so results are reproducible across jobs settings.
    """
    if d < 0 or m < 1:
        raise DomainError("need d >= 0 and m >= 1")
    if g.n > cap:
        raise ResourceLimitError(f"membership cap is {cap} vertices, got {g.n}")
    if g.n == 0:
        return None
    if d == 0:
        if g.n != 1:
            return None
        return TreeModel(RootedTree([-1]), 0, m, {0: 0}, {0: 1}, set())
    chain_iter = _iter_chains(tuple(range(g.n)), d - 1, None)
    hit = _first_hit(g, m, d, chain_iter, jobs)
    if hit is None:
        return None
    chain, colors, signature = hit
    return _build_witness(g, d, m, chain, colors, signature)


def tmc_membership(g, d, m, k, cap=DEFAULT_TM_CAP, jobs=1):
    """Witness for the k-copied class: depth d+1 models, m colors, at most
    k leaves per depth-d node.  Returns a CopiedTreeModel or None."""
    if d < 0 or m < 1 or k < 1:
        raise DomainError("need d >= 0, m >= 1, k >= 1")
    if g.n > cap:
        raise ResourceLimitError(f"membership cap is {cap} vertices, got {g.n}")
    if g.n == 0:
        return None
    if d == 0 and g.n > k:
        return None
    chain_iter = _iter_chains(tuple(range(g.n)), d, k)
    hit = _first_hit(g, m, d + 1, chain_iter, jobs)
    if hit is None:
        return None
    chain, colors, signature = hit
    witness = _build_witness(g, d + 1, m, chain, colors, signature)
    return CopiedTreeModel(witness, d, m, k)


def _relabel_sc(t, mapping):
    if t.is_leaf:
        return SCTree.leaf(mapping[t.vertex])
    return SCTree.inner(
        [_relabel_sc(c, mapping) for c in t.children],
        [mapping[v] for v in t.x],
    )


def sc_membership(g, depth, cap=DEFAULT_SC_CAP):
    """Witness SC-tree of height <= depth realizing g, or None.

    Tries every complement set X on the canonical form, recursing into the
    components of the complemented graph; decisions are memoized on
    (canonical form, remaining depth).
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")
    if g.n > cap:
        raise ResourceLimitError(f"sc membership cap is {cap} vertices, got {g.n}")
    if g.n == 0:
        return None
    memo = {}

    def member(h, budget):
        key, perm = canonical_form(h)
        if (key, budget) in memo:
            witness = memo[key, budget]
        else:
            hc = relabel_graph(h, perm)
            witness = _member_canonical(hc, budget)
            memo[key, budget] = witness
        if witness is None:
            return None
        inverse = [0] * h.n
        for old, new in perm.items():
            inverse[new] = old
        return _relabel_sc(witness, inverse)

    def _member_canonical(hc, budget):
        n = hc.n
        if n == 1 and not hc.edges:
            return SCTree.leaf(0)
        if budget == 0:
            return None
        for mask in range(1 << n):
            x = [v for v in range(n) if mask >> v & 1]
            flipped = complement_on_subset(hc, x)
            children = []
            for comp in components(flipped):
                if len(comp) == n:
                    # single part equal to the whole: recursing would loop
                    sub_witness = None
                    if x:
                        sub, ids = induced_subgraph(flipped, comp)
                        sub_witness = member(sub, budget - 1)
                        if sub_witness is not None:
                            children.append(
                                _relabel_sc(sub_witness, dict(enumerate(ids)))
                            )
                    if sub_witness is None:
                        children = None
                    break
                sub, ids = induced_subgraph(flipped, comp)
                sub_witness = member(sub, budget - 1)
                if sub_witness is None:
                    children = None
                    break
                children.append(_relabel_sc(sub_witness, dict(enumerate(ids))))
            if children is not None:
                return SCTree.inner(children, x)
        return None

    return member(g, depth)


_GRAPH_LISTS = {0: (Graph(0),)}


def enumerate_graphs(n):
    """Every graph on 0..n-1 up to isomorphism, each in canonical layout,
    ordered by canonical form.  Levels are cached across calls."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n not in _GRAPH_LISTS:
        seen = {}
        for g in enumerate_graphs(n - 1):
            for mask in range(1 << (n - 1)):
                edges = list(g.edges) + [
                    (v, n - 1) for v in range(n - 1) if mask >> v & 1
                ]
                h = Graph(n, edges)
                key, perm = canonical_form(h)
                if key not in seen:
                    seen[key] = relabel_graph(h, perm)
        _GRAPH_LISTS[n] = tuple(seen[key] for key in sorted(seen))
    return list(_GRAPH_LISTS[n])


def minimal_obstructions(d, m, max_n, cap=DEFAULT_TM_CAP, jobs=1):
    """Non-members (up to isomorphism, <= max_n vertices) all of whose
    one-vertex-deleted induced subgraphs are members."""
    if max_n < 1:
        raise DomainError("max_n must be >= 1")
    if max_n > cap:
        raise ResourceLimitError(
            f"membership cap is {cap} vertices, got max_n={max_n}"
        )
    verdicts = {}

    def is_member(h):
        key, _ = canonical_form(h)
        if key not in verdicts:
            verdicts[key] = tm_membership(h, d, m, cap=cap, jobs=jobs) is not None
        return verdicts[key]

    out = []
    for n in range(1, max_n + 1):
        for h in enumerate_graphs(n):
            if is_member(h):
                continue
            keep_all = all(
                is_member(induced_subgraph(h, [u for u in range(n) if u != v])[0])
                for v in range(n)
            )
            if keep_all:
                out.append(h)
    return out
