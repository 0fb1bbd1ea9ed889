"""Recover trunk size and twig lengths of a tree from its subtree polynomial.

Only the polynomial is consulted.  With a the leaf count and v the vertex
count of the smallest a-leaf subtree U (trunk plus the first edge of every
twig), the trunk has v - a vertices.  An a-leaf subtree on v + k + 1
vertices is U extended by k + 1 vertices along the twigs; a twig of length L
can absorb L - 1 of them.  Counting those extensions one k at a time pins
down how many twigs have each length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InconsistentPoly, MalformedPoly, NotFound
from .subtree_poly import BivariatePoly

STANDARD = "standard"
PATH = "path"


@dataclass(frozen=True)
class RecoveredProfile:
    kind: str
    n: int
    leaves: int
    trunk_size: int
    twig_lengths: tuple[int, ...]
    # intermediate values kept for inspection; absent for paths
    min_size: int | None = field(default=None, compare=False)
    twig_counts: dict[int, int] = field(default_factory=dict, compare=False)
    extension_counts: tuple[int, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "leaves": self.leaves,
            "trunk_size": self.trunk_size,
            "twigs": list(self.twig_lengths),
        }


@dataclass
class TwigKnowledge:
    """Twig counts by length settled so far; the rest are longer than ``k``."""

    a: int
    known: dict[int, int] = field(default_factory=dict)
    k: int = 0

    @property
    def unknown_count(self) -> int:
        return self.a - sum(self.known.values())

    def settle(self, length: int, count: int) -> None:
        if count < 0 or count > self.unknown_count:
            raise InconsistentPoly(
                f"{count} twigs of length {length} with only {self.unknown_count} unresolved"
            )
        self.known[length] = count
        self.k = length


def read_top(p: BivariatePoly) -> tuple[int, int]:
    """``(n, a)``: vertex count and leaf count, read off the whole-tree term."""
    if not p:
        raise MalformedPoly("empty polynomial")
    top = p.max_q()
    at_top = [(re, c) for (qe, re), c in p.items() if qe == top]
    if len(at_top) != 1 or at_top[0][1] != 1:
        raise MalformedPoly(
            f"expected a single unit term at q^{top}, found {sorted(at_top)}"
        )
    return top + 1, at_top[0][0]


def minimal_a_leaf_size(p: BivariatePoly, a: int) -> int:
    """Vertex count of the smallest subtree with ``a`` leaves; it must be unique."""
    sizes = sorted(qe + 1 for (qe, re), c in p.items() if re == a and c > 0)
    if not sizes:
        raise NotFound(f"no subtree with {a} leaves")
    v = sizes[0]
    c = p.coefficient(v - 1, a)
    if c != 1:
        raise InconsistentPoly(f"{c} smallest subtrees with {a} leaves, expected 1")
    return v


def count_bounded_compositions(total: int, caps: Iterable[tuple[int, int]]) -> int:
    """Tuples of non-negative ints summing to ``total`` with per-entry upper bounds.

    ``caps`` holds ``(cap, multiplicity)`` groups.  Computed as the x^total
    coefficient of prod (1 + x + ... + x^cap)^multiplicity, truncated at total.
    """
    if total < 0:
        return 0
    ways = [1] + [0] * total
    for cap, mult in caps:
        if cap < 0 or mult < 0:
            raise ValueError(f"bad cap group ({cap}, {mult})")
        if cap == 0:
            continue
        for _ in range(mult):
            # multiply by 1 + x + ... + x^cap using a sliding window sum
            nxt = [0] * (total + 1)
            window = 0
            for s in range(total + 1):
                window += ways[s]
                if s - cap - 1 >= 0:
                    window -= ways[s - cap - 1]
                nxt[s] = window
            ways = nxt
    return ways[total]


def recover_profile(p: BivariatePoly) -> RecoveredProfile:
    n, a = read_top(p)
    if a < 2:
        raise InconsistentPoly(f"whole tree reports {a} leaves")
    if a == 2:
        return RecoveredProfile(PATH, n, 2, 0, (n - 1, n - 1))

    v = minimal_a_leaf_size(p, a)
    trunk_size = v - a
    if trunk_size < 1:
        raise InconsistentPoly(f"smallest {a}-leaf subtree has only {v} vertices")

    know = TwigKnowledge(a)
    extension_counts = []
    k = 0
    while know.unknown_count:
        if k >= n:
            raise InconsistentPoly("twig lengths did not resolve within n rounds")
        # a-leaf subtrees on v + k + 1 vertices: U plus k + 1 twig vertices
        ext = p.coefficient(v + k, a)
        extension_counts.append(ext)
        # spreads over several twigs; unresolved twigs (length > k) capped at k
        spread = count_bounded_compositions(
            k + 1,
            [(i - 1, c) for i, c in know.known.items()] + [(k, know.unknown_count)],
        )
        longer = ext - spread  # twigs of length >= k + 2 absorb all k + 1 alone
        if longer < 0:
            raise InconsistentPoly(f"round {k}: {ext} extensions but {spread} spread ones")
        know.settle(k + 1, know.unknown_count - longer)
        k += 1

    lengths = tuple(sorted(i for i, c in know.known.items() for _ in range(c)))
    if trunk_size + sum(lengths) != n:
        raise InconsistentPoly(
            f"trunk {trunk_size} + twig edges {sum(lengths)} != {n} vertices"
        )
    return RecoveredProfile(
        STANDARD,
        n,
        a,
        trunk_size,
        lengths,
        min_size=v,
        twig_counts=dict(know.known),
        extension_counts=tuple(extension_counts),
    )
