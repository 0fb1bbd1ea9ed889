"""Chromatic symmetric function of a tree, stored in the power-sum basis.

X_T = sum over edge subsets S of (-1)^|S| p_lambda(S), where lambda(S) lists
the component sizes of the spanning forest (V, S).  ``csf`` runs this sum as
a DP over a rooted tree (one state per partition, not per subset);
``csf_edge_subsets`` walks the 2^(n-1) subsets literally.  Both are checked
against ``csf_oracle``, which sums monomials over proper colourings.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter, defaultdict
from itertools import product
from typing import Iterable, Mapping

from . import caps
from .errors import CapExceeded
from .tree_core import Tree

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if not p or p[-1] < 1:
        raise ValueError(f"not a partition: {p}")
    return p


class PowerSumFunction:
    """Homogeneous symmetric function of degree n as {partition: coefficient}."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[Partition, int] | None = None):
        self.n = n
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = partition(lam)
            if sum(lam) != n:
                raise ValueError(f"partition {lam} does not have size {n}")
            if c:
                clean[lam] = clean.get(lam, 0) + int(c)
        self._coeffs = {lam: c for lam, c in clean.items() if c}

    def coefficient(self, lam: Iterable[int]) -> int:
        return self._coeffs.get(partition(lam), 0)

    def terms(self) -> list[tuple[Partition, int]]:
        """Terms with partitions in descending lexicographic order."""
        return sorted(self._coeffs.items(), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, PowerSumFunction):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def __repr__(self):
        body = " + ".join(f"{c}*p{list(lam)}" for lam, c in self.terms())
        return f"PowerSumFunction(n={self.n}, {body or '0'})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": "powersum",
            "terms": [[list(lam), str(c)] for lam, c in self.terms()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "PowerSumFunction":
        if doc.get("basis", "powersum") != "powersum":
            raise ValueError(f"unsupported basis {doc.get('basis')!r}")
        return cls(int(doc["n"]), {tuple(lam): int(c) for lam, c in doc["terms"]})

    def monomials(self, num_vars: int) -> dict[tuple[int, ...], int]:
        """Expand into monomials in x_1..x_num_vars (exponent vector -> coefficient)."""
        cache: dict[int, dict] = {}

        def power_sum(k):
            if k not in cache:
                cache[k] = {
                    tuple(k if j == i else 0 for j in range(num_vars)): 1
                    for i in range(num_vars)
                }
            return cache[k]

        out: dict[tuple[int, ...], int] = defaultdict(int)
        for lam, c in self._coeffs.items():
            acc = {(0,) * num_vars: c}
            for k in lam:
                nxt: dict[tuple[int, ...], int] = defaultdict(int)
                for e1, c1 in acc.items():
                    for e2, c2 in power_sum(k).items():
                        nxt[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
                acc = nxt
            for e, v in acc.items():
                out[e] += v
        return {e: v for e, v in out.items() if v}


def csf(t: Tree, cap: int | None = None) -> PowerSumFunction:
    """X_T in the power-sum basis.

    Rooted DP: for each vertex keep a map (size of its open component,
    partition of closed components below) -> signed count.  Keeping the edge
    to a child merges the open components with sign -1; cutting it closes the
    child's component.
    """
    caps.check("csf n", t.n, caps.CSF, cap)
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

    table: list[dict | None] = [None] * n
    for v in reversed(order):
        cur: dict[tuple[int, Partition], int] = {(1, ()): 1}
        for c in t.adj[v]:
            if c == parent[v]:
                continue
            child = table[c]
            table[c] = None
            nxt: dict[tuple[int, Partition], int] = defaultdict(int)
            for (s1, lam1), c1 in cur.items():
                for (s2, lam2), c2 in child.items():
                    closed = lam1 + lam2
                    # keep the edge: components merge
                    nxt[(s1 + s2, tuple(sorted(closed, reverse=True)))] -= c1 * c2
                    # cut it: the child's component is finished
                    nxt[(s1, tuple(sorted(closed + (s2,), reverse=True)))] += c1 * c2
            cur = {k: c for k, c in nxt.items() if c}
        table[v] = cur
    result: dict[Partition, int] = defaultdict(int)
    for (s, lam), c in table[0].items():
        result[tuple(sorted(lam + (s,), reverse=True))] += c
    return PowerSumFunction(n, result)


def csf_edge_subsets(t: Tree, cap: int | None = None) -> PowerSumFunction:
    """X_T by walking every edge subset and reading component sizes off union-find."""
    caps.check("csf n", t.n, caps.CSF, cap)
    edges = t.edges()
    m = len(edges)
    result: Counter = Counter()
    for mask in range(1 << m):
        parent = list(range(t.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(m):
            if mask >> i & 1:
                u, v = edges[i]
                parent[find(u)] = find(v)
        sizes = Counter(find(x) for x in range(t.n))
        sign = -1 if bin(mask).count("1") % 2 else 1
        result[tuple(sorted(sizes.values(), reverse=True))] += sign
    return PowerSumFunction(t.n, result)


def csf_oracle(t: Tree, num_vars: int) -> dict[tuple[int, ...], int]:
    """Sum of x^kappa over proper colourings with colours 1..num_vars.

    Returns exponent vector -> coefficient, zero terms omitted.
    """
    caps.check("csf_oracle n", t.n, caps.CSF_ORACLE)
    if num_vars > t.n:
        raise CapExceeded(f"num_vars={num_vars} exceeds n={t.n}")
    edges = t.edges()
    out: Counter = Counter()
    for colouring in product(range(num_vars), repeat=t.n):
        if any(colouring[u] == colouring[v] for u, v in edges):
            continue
        exps = [0] * num_vars
        for col in colouring:
            exps[col] += 1
        out[tuple(exps)] += 1
    return dict(out)


def count_proper_colorings(f: PowerSumFunction, m: int) -> int:
    """Specialise x_1 = ... = x_m = 1 and the rest to 0, so every p_k becomes m."""
    return sum(c * m ** len(lam) for lam, c in f.terms())


def csf_fingerprint(f: PowerSumFunction) -> bytes:
    blob = json.dumps(f.to_json(), separators=(",", ":")).encode()
    return hashlib.sha256(blob).digest()
