"""The bivariate subtree polynomial: sum over subtrees of q^edges * r^leaves.

A subtree is a connected induced subgraph with at least one edge, so there is
no constant term.  Two routes are provided: direct enumeration of connected
vertex sets (the oracle) and a rooted dynamic program.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterator, Mapping

from . import caps
from .errors import MalformedPoly
from .tree_core import Tree


class BivariatePoly:
    """Sparse polynomial in q (edge count) and r (leaf count) with int coefficients.

    Zero coefficients are dropped; negative ones are rejected since every
    coefficient counts subtrees.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        for (qe, re), c in (coeffs or {}).items():
            c = int(c)
            if c < 0:
                raise MalformedPoly(f"negative coefficient {c} at q^{qe} r^{re}")
            if qe < 0 or re < 0:
                raise MalformedPoly(f"negative exponent in q^{qe} r^{re}")
            if c:
                clean[(int(qe), int(re))] = c
        self._coeffs = clean

    def coefficient(self, edges: int, leaves: int) -> int:
        return self._coeffs.get((edges, leaves), 0)

    def terms(self) -> list[tuple[int, int, int]]:
        """``(q_exp, r_exp, coeff)`` in lexicographic exponent order."""
        return [(qe, re, c) for (qe, re), c in sorted(self._coeffs.items())]

    def items(self):
        return self._coeffs.items()

    def max_q(self) -> int:
        return max(qe for qe, _ in self._coeffs) if self._coeffs else -1

    def total(self) -> int:
        """Value at q = r = 1, i.e. the number of subtrees."""
        return sum(self._coeffs.values())

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        return f"BivariatePoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        out = []
        for qe, re, c in self.terms():
            mono = "".join(
                s if e == 1 else f"{s}^{e}" for s, e in (("q", qe), ("r", re)) if e
            )
            out.append(mono if c == 1 and mono else f"{c}{mono}")
        return " + ".join(out)

    def to_json(self) -> dict:
        return {
            "n": self.max_q() + 1,
            "terms": [[qe, re, str(c)] for qe, re, c in self.terms()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "BivariatePoly":
        try:
            raw = doc["terms"]
            coeffs: dict[tuple[int, int], int] = {}
            for qe, re, c in raw:
                key = (int(qe), int(re))
                if key in coeffs:
                    raise MalformedPoly(f"repeated term q^{qe} r^{re}")
                coeffs[key] = int(c)
        except MalformedPoly:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedPoly(f"bad polynomial document: {exc}") from None
        poly = cls(coeffs)
        if "n" in doc and poly and int(doc["n"]) != poly.max_q() + 1:
            raise MalformedPoly(f"declared n={doc['n']} but top q-exponent is {poly.max_q()}")
        return poly


def coefficient(p: BivariatePoly, edges: int, leaves: int) -> int:
    return p.coefficient(edges, leaves)


# ---------------------------------------------------------------------------
# Oracle: enumerate connected vertex sets
# ---------------------------------------------------------------------------

def connected_subsets(t: Tree) -> Iterator[frozenset[int]]:
    """Every connected vertex set of size >= 2, each exactly once.

    A set is generated from its minimum vertex; each branch either takes a
    frontier vertex or bans it for the rest of that branch.
    """
    adj = t.adj

    def grow(members, frontier, banned, root):
        if len(members) >= 2:
            yield frozenset(members)
        frontier = list(frontier)
        banned = set(banned)
        while frontier:
            w = frontier.pop()
            new_front = list(frontier)
            for x in adj[w]:
                if x > root and x not in members and x not in banned and x not in new_front:
                    new_front.append(x)
            members.append(w)
            yield from grow(members, new_front, banned, root)
            members.pop()
            banned.add(w)

    for root in range(t.n):
        yield from grow([root], [x for x in adj[root] if x > root], set(), root)


def subtree_poly_bruteforce(t: Tree, cap: int | None = None) -> BivariatePoly:
    caps.check("subtree_poly_bruteforce n", t.n, caps.SUBTREE_BRUTEFORCE, cap)
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for sub in connected_subsets(t):
        leaves = sum(1 for v in sub if sum(1 for w in t.adj[v] if w in sub) == 1)
        counts[(len(sub) - 1, leaves)] += 1
    return BivariatePoly(counts)


# ---------------------------------------------------------------------------
# Dynamic program
# ---------------------------------------------------------------------------

def _mul(a: dict, b: dict) -> dict:
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (e1, l1), c1 in a.items():
        for (e2, l2), c2 in b.items():
            out[(e1 + e2, l1 + l2)] += c1 * c2
    return out


def _add_into(dst: dict, src: dict) -> None:
    for k, c in src.items():
        dst[k] += c


def subtree_poly_fast(t: Tree) -> BivariatePoly:
    """Subtree polynomial by a DP over the tree rooted at vertex 0.

    For each vertex v the DP keeps partial subtrees that contain v and lie
    below it, split by how many children of v are taken (0, 1 or >= 2) and
    counting leaves strictly below v.  A subtree is tallied at its topmost
    vertex, where v is a leaf exactly when one child was taken.
    """
    n = t.n
    order = []
    parent = [-1] * n
    parent[0] = 0
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in t.adj[v]:
            if parent[w] == -1:
                parent[w] = v
                stack.append(w)

    total: dict[tuple[int, int], int] = defaultdict(int)
    # ext[c]: partial subtrees through the edge parent(c)-c, c's leaf status resolved
    ext: list[dict | None] = [None] * n
    for v in reversed(order):
        states = [{(0, 0): 1}, {}, {}]
        for c in t.adj[v]:
            if c == parent[v]:
                continue
            child = ext[c]
            ext[c] = None
            new = [defaultdict(int, s) for s in states]
            for k in range(3):
                if states[k]:
                    _add_into(new[min(k + 1, 2)], _mul(states[k], child))
            states = new
        for (e, l), c in states[1].items():
            total[(e, l + 1)] += c
        _add_into(total, states[2])
        if v != 0:
            up: dict[tuple[int, int], int] = defaultdict(int)
            for (e, l), c in states[0].items():
                up[(e + 1, l + 1)] += c
            for s in (states[1], states[2]):
                for (e, l), c in s.items():
                    up[(e + 1, l)] += c
            ext[v] = up
    return BivariatePoly(total)
