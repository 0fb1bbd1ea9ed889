"""Trees, edge-list parsing, canonical codes and the trunk/twig decomposition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    Disconnected,
    DuplicateEdge,
    NoEdges,
    OutOfRange,
    ParseError,
    SelfLoop,
    TreeError,
)


class Tree:
    """An immutable simple tree on vertices ``0..n-1``.

    Construction validates everything: ids in range, no loops or repeated
    edges, no cycles, connected.  ``adj[v]`` is the sorted tuple of neighbours.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise TreeError(f"vertex count must be >= 1, got {n}")
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nbrs: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for edge in edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u}, {v}) has an id outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge ({u}, {v}) appears twice")
            seen.add(key)
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleDetected(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
            nbrs[u].append(v)
            nbrs[v].append(u)
        if len(seen) != n - 1:
            raise Disconnected(f"{n} vertices but only {len(seen)} edges")
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._hash = None

    @classmethod
    def path(cls, n: int) -> "Tree":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Tree":
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def spider(cls, legs: Iterable[int]) -> "Tree":
        """Centre 0 with one path of each given length hanging off it."""
        edges = []
        nxt = 1
        for length in legs:
            prev = 0
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return cls(nxt, edges)

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "Tree":
        """Build from a parent array where ``parents[0]`` is ignored (root)."""
        return cls(len(parents), [(v, parents[v]) for v in range(1, len(parents))])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def relabel(self, perm: Sequence[int]) -> "Tree":
        """Return the tree with vertex ``v`` renamed to ``perm[v]``."""
        return Tree(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self):
        return f"Tree(n={self.n}, edges={self.edges()})"


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: ``n`` on the first line, then ``u v`` lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty document")
    head = lines[0].split()
    if len(head) != 1:
        raise ParseError(f"first line must hold only the vertex count, got {lines[0]!r}")
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(f"vertex count {head[0]!r} is not an integer") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id in {ln!r}") from None
    return Tree(n, edges)


def degree_sequence(t: Tree) -> tuple[int, ...]:
    return tuple(sorted((len(a) for a in t.adj), reverse=True))


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def centers(t: Tree) -> list[int]:
    """The one or two middle vertices of a longest path (leaf peeling)."""
    n = t.n
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in t.adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_code(t: Tree, root: int) -> str:
    """AHU nested-parenthesis code of ``t`` rooted at ``root``."""
    order = []
    parent = [-1] * t.n
    parent[root] = root
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.adj[v]:
            if parent[w] == -1:
                parent[w] = v
                stack.append(w)
    kids: list[list[str]] = [[] for _ in range(t.n)]
    code = [""] * t.n
    for v in reversed(order):
        code[v] = "(" + "".join(sorted(kids[v])) + ")"
        if v != root:
            kids[parent[v]].append(code[v])
    return code[root]


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-complete code: the smallest AHU code over the centres."""
    return min(rooted_code(t, c) for c in centers(t)).encode("ascii")


def are_isomorphic(a: Tree, b: Tree) -> bool:
    return a.n == b.n and canonical_code(a) == canonical_code(b)


# ---------------------------------------------------------------------------
# Trunk and twigs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Twig:
    attach: int
    path: tuple[int, ...]  # attachment first, leaf last

    @property
    def length(self) -> int:
        return len(self.path) - 1


@dataclass(frozen=True)
class Decomposition:
    trunk_vertices: frozenset[int]
    twigs: tuple[Twig, ...]
    degenerate: bool

    @property
    def trunk_size(self) -> int:
        return len(self.trunk_vertices)

    @property
    def twig_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(tw.length for tw in self.twigs))

    def to_json(self) -> dict:
        return {
            "trunk": sorted(self.trunk_vertices),
            "trunk_size": self.trunk_size,
            "twigs": [
                {"attach": tw.attach, "path": list(tw.path), "length": tw.length}
                for tw in self.twigs
            ],
            "twig_lengths": list(self.twig_lengths),
            "degenerate": self.degenerate,
        }


def trunk(t: Tree) -> frozenset[int]:
    """Prune leaves of T-degree < 3 until every remaining leaf has T-degree >= 3.

    Empty when the tree has no vertex of degree >= 3.
    """
    if max(len(a) for a in t.adj) < 3:
        return frozenset()
    alive = [True] * t.n
    deg = [len(a) for a in t.adj]
    queue = deque(v for v in range(t.n) if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in t.adj[v]:
            if alive[w]:
                deg[w] -= 1
                # w becomes a leaf of the pruned tree; drop it unless it branches in T
                if deg[w] == 1 and len(t.adj[w]) < 3:
                    queue.append(w)
    return frozenset(v for v in range(t.n) if alive[v])


def _walk_from_leaf(t: Tree, leaf: int, stop) -> list[int]:
    path = [leaf]
    prev, cur = -1, leaf
    while True:
        nxt = [w for w in t.adj[cur] if w != prev]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)
        if stop(cur):
            return path


def decompose(t: Tree) -> Decomposition:
    if t.n == 1:
        raise NoEdges("a single vertex has no subtrees")
    core = trunk(t)
    leaves = t.leaves()
    if not core:
        # a path: each leaf's twig is the whole path, read from the other end
        twigs = []
        for leaf in leaves:
            walk = _walk_from_leaf(t, leaf, lambda v: len(t.adj[v]) == 1)
            twigs.append(Twig(attach=walk[-1], path=tuple(reversed(walk))))
        return Decomposition(frozenset(), tuple(twigs), True)
    twigs = []
    for leaf in leaves:
        walk = _walk_from_leaf(t, leaf, lambda v: v in core)
        twigs.append(Twig(attach=walk[-1], path=tuple(reversed(walk))))
    return Decomposition(core, tuple(twigs), False)
