"""Rooted trees on integer node ids, stored as parent arrays."""

from __future__ import annotations

from .errors import DomainError, ValidationError


class RootedTree:
    """An immutable rooted tree.  parent[v] is v's parent, -1 marks the root."""

    __slots__ = ("parent", "root", "height", "_children", "_depth")

    def __init__(self, parent):
        parent = tuple(parent)
        n = len(parent)
        if n == 0:
            raise ValidationError("a rooted tree needs at least one node")
        roots = [i for i, p in enumerate(parent) if p == -1]
        if len(roots) != 1:
            raise ValidationError(f"expected exactly one root, found {len(roots)}")
        for i, p in enumerate(parent):
            if p != -1 and not 0 <= p < n:
                raise ValidationError(f"node {i} has out-of-range parent {p}")
        children = [[] for _ in range(n)]
        for i, p in enumerate(parent):
            if p != -1:
                children[p].append(i)
        depth = [-1] * n
        depth[roots[0]] = 0
        stack = [roots[0]]
        while stack:
            u = stack.pop()
            for c in children[u]:
                depth[c] = depth[u] + 1
                stack.append(c)
        if min(depth) < 0:
            raise ValidationError("parent pointers contain a cycle")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "root", roots[0])
        object.__setattr__(self, "_children", tuple(tuple(c) for c in children))
        object.__setattr__(self, "_depth", tuple(depth))
        object.__setattr__(self, "height", max(depth))

    def __setattr__(self, name, value):
        raise AttributeError("RootedTree is immutable")

    @property
    def n(self):
        return len(self.parent)

    def children(self, u):
        return self._children[u]

    def depth(self, u):
        return self._depth[u]

    def is_leaf(self, u):
        return not self._children[u]

    def leaves(self):
        return tuple(u for u in range(self.n) if self.is_leaf(u))

    def ancestors(self, u):
        """Path from u's parent up to the root."""
        out = []
        while self.parent[u] != -1:
            u = self.parent[u]
            out.append(u)
        return out

    def lca(self, u, v):
        while self._depth[u] > self._depth[v]:
            u = self.parent[u]
        while self._depth[v] > self._depth[u]:
            v = self.parent[v]
        while u != v:
            u = self.parent[u]
            v = self.parent[v]
        return u

    def leaf_descendants(self, u):
        out = []
        stack = [u]
        while stack:
            w = stack.pop()
            if self.is_leaf(w):
                out.append(w)
            else:
                stack.extend(self._children[w])
        return sorted(out)

    def subtree_height(self, u):
        return max(self._depth[w] for w in self.leaf_descendants(u)) - self._depth[u]

    def extend_path(self, u, length):
        """Append a fresh path of `length` edges below u.

        Returns (tree, tip) where tip is the new deepest node; length 0
        returns the tree unchanged with tip = u.
        """
        if length < 0:
            raise DomainError("path length must be >= 0")
        if length == 0:
            return self, u
        parent = list(self.parent)
        prev = u
        for _ in range(length):
            parent.append(prev)
            prev = len(parent) - 1
        return RootedTree(parent), prev

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.parent == other.parent

    def __hash__(self):
        return hash(self.parent)

    def __repr__(self):
        return f"RootedTree(parent={list(self.parent)})"

    def __getstate__(self):
        return self.parent

    def __setstate__(self, state):
        self.__init__(state)


def subtree_on(tree, keep):
    """Restrict to the node set `keep`, which must be closed under parents.

    Node ids are renumbered in ascending order of the kept original ids.
    Returns (tree, kept) with kept[new] = old.
    """
    kept = sorted(set(keep))
    pos = {old: new for new, old in enumerate(kept)}
    parent = []
    for old in kept:
        p = tree.parent[old]
        if p == -1:
            parent.append(-1)
        else:
            if p not in pos:
                raise DomainError(f"kept node {old} has dropped parent {p}")
            parent.append(pos[p])
    return RootedTree(parent), tuple(kept)
