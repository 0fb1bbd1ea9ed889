"""Free-tree generation, a Prüfer-sequence oracle, and invariant collision scans."""

from __future__ import annotations

import hashlib
import heapq
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterator

from . import caps
from .csf import PowerSumFunction, csf, csf_fingerprint
from .errors import ArborError
from .recovery import PATH, STANDARD, RecoveredProfile, recover_profile
from .subtree_poly import subtree_poly_fast
from .tree_core import Tree, canonical_code, decompose, rooted_code

INVARIANTS = ("csf", "subtree_poly", "recovered_profile")
_ALIASES = {"subtree": "subtree_poly", "profile": "recovered_profile"}


# ---------------------------------------------------------------------------
# Rooted level sequences
# ---------------------------------------------------------------------------

def rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of rooted trees on n vertices (root at level 0).

    Starts from the path and steps with the Beyer-Hedetniemi successor; ends
    after the star.
    """
    if n < 1:
        return
    seq = list(range(n))
    while True:
        yield list(seq)
        p = n - 1
        while p > 0 and seq[p] <= 1:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while seq[q] != seq[p] - 1:
            q -= 1
        gap = p - q
        for i in range(p, n):
            seq[i] = seq[i - gap]


def _parents_from_levels(seq: list[int]) -> list[int]:
    parents = [0] * len(seq)
    last_at = {}
    for i, lev in enumerate(seq):
        if lev:
            parents[i] = last_at[lev - 1]
        last_at[lev] = i
    return parents


def _root_branch_heights(seq: list[int]) -> list[tuple[int, int]]:
    """(depth of the deepest vertex, start index) for each root branch."""
    out = []
    for i in range(1, len(seq)):
        if seq[i] == 1:
            out.append([1, i])
        elif seq[i] > out[-1][0]:
            out[-1][0] = seq[i]
    return [tuple(b) for b in out]


def free_trees(n: int, cap: int | None = None) -> Iterator[Tree]:
    """One tree per isomorphism class on n vertices.

    Rooted trees are generated by level sequence and kept only when rooted at
    a centre; for two centres, only the rooting with the larger AHU code.
    """
    if n < 1:
        raise ArborError(f"n must be >= 1, got {n}")
    caps.check("free_trees n", n, caps.FREE_TREES, cap)
    if n == 1:
        yield Tree(1, [])
        return
    for seq in rooted_level_sequences(n):
        branches = _root_branch_heights(seq)
        depths = sorted((d for d, _ in branches), reverse=True)
        h1 = depths[0]
        h2 = depths[1] if len(depths) > 1 else 0
        if h1 - h2 > 1:
            continue
        t = Tree.from_parents(_parents_from_levels(seq))
        if h1 == h2 + 1:
            other = next(start for d, start in branches if d == h1)
            if rooted_code(t, 0) < rooted_code(t, other):
                continue
        yield t


# ---------------------------------------------------------------------------
# Prüfer oracle
# ---------------------------------------------------------------------------

def prufer_decode(seq, n: int) -> Tree:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return Tree(n, edges)


def _sorted_degree_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Prüfer sequences whose label multiplicities do not increase with the label.

    Any tree can be relabelled so degrees are non-increasing in the label, and
    a label's multiplicity in the sequence is its degree minus one, so every
    isomorphism class is still reached.
    """
    def multiplicities(remaining, slots, bound):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for m in range(min(bound, remaining), -1, -1):
            for rest in multiplicities(remaining - m, slots - 1, m):
                yield (m,) + rest

    for mult in multiplicities(n - 2, n, n - 2):
        base = [v for v, m in enumerate(mult) for _ in range(m)]
        yield from set(permutations(base))


def prufer_oracle(n: int, exhaustive: bool = False, cap: int | None = None) -> int:
    """Number of isomorphism classes of trees on n vertices, via Prüfer decoding.

    ``exhaustive`` decodes all n^(n-2) sequences; otherwise only the
    degree-sorted ones (see ``_sorted_degree_sequences``).
    """
    if n < 2:
        raise ArborError(f"prufer_oracle needs n >= 2, got {n}")
    caps.check("prufer_oracle n", n, caps.PRUFER, cap)
    if n == 2:
        return 1
    seqs = product(range(n), repeat=n - 2) if exhaustive else _sorted_degree_sequences(n)
    return len({canonical_code(prufer_decode(s, n)) for s in seqs})


# ---------------------------------------------------------------------------
# Scanning
# ---------------------------------------------------------------------------

@dataclass
class ScanReport:
    n: int
    tree_count: int
    invariant: str
    collisions: list[tuple[str, str]] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        doc = {
            "n": self.n,
            "invariant": self.invariant,
            "tree_count": self.tree_count,
            "collisions": [list(pair) for pair in self.collisions],
            "failures": self.failures,
        }
        if timing:
            doc["elapsed"] = round(self.elapsed, 3)
        return doc


def normalize_invariant(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in INVARIANTS:
        raise ArborError(f"unknown invariant {name!r}; choose from {', '.join(INVARIANTS)}")
    return name


def roundtrip_check(t: Tree) -> tuple[RecoveredProfile | None, dict | None]:
    """Recover the profile from the polynomial and compare it with ``decompose``.

    Returns ``(profile, None)`` on agreement and ``(profile_or_None, record)``
    otherwise.
    """
    dec = decompose(t)
    try:
        got = recover_profile(subtree_poly_fast(t))
    except ArborError as exc:
        return None, {"tree": t.to_text(), "error": exc.code, "detail": str(exc)}
    want_kind = PATH if dec.degenerate else STANDARD
    if (got.kind, got.trunk_size, got.twig_lengths) != (want_kind, dec.trunk_size, dec.twig_lengths):
        return got, {
            "tree": t.to_text(),
            "expected": {"kind": want_kind, "trunk_size": dec.trunk_size, "twigs": list(dec.twig_lengths)},
            "recovered": got.to_json(),
        }
    return got, None


def _evaluate(job):
    """Worker: ``(code, n, edges, invariant)`` -> ``(code, value, failure)``."""
    code, n, edges, invariant = job
    t = Tree(n, edges)
    if invariant == "csf":
        return code, csf(t), None
    if invariant == "subtree_poly":
        return code, subtree_poly_fast(t), None
    profile, failure = roundtrip_check(t)
    return code, (None if failure else profile), failure


def _fingerprint(value) -> bytes:
    if isinstance(value, PowerSumFunction):
        return csf_fingerprint(value)
    blob = json.dumps(value.to_json(), separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(blob.encode()).digest()


def parallel_map(fn: Callable, jobs_list: list, jobs: int) -> list:
    if jobs <= 1 or len(jobs_list) < 2:
        return [fn(j) for j in jobs_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, jobs_list, chunksize=max(1, len(jobs_list) // (4 * jobs))))


def scan(n: int, invariant: str, jobs: int = 1, cap: int | None = None) -> ScanReport:
    """Compute an invariant on every free tree of order n and report collisions.

    Trees are bucketed by a hash of the invariant; inside a bucket the full
    values are compared.  Output is sorted by canonical code, so it does not
    depend on ``jobs``.
    """
    invariant = normalize_invariant(invariant)
    default = caps.SCAN_CSF if invariant == "csf" else caps.SCAN_SUBTREE
    caps.check(f"scan {invariant} n", n, default, cap)
    if n < 2 and invariant != "csf":
        raise ArborError("subtree invariants need n >= 2")
    start = time.perf_counter()
    work = []
    for t in free_trees(n, cap=n):
        work.append((canonical_code(t).decode(), t.n, t.edges(), invariant))
    results = sorted(parallel_map(_evaluate, work, jobs), key=lambda r: r[0])

    buckets: dict[bytes, list[tuple[str, object]]] = {}
    failures = []
    for code, value, failure in results:
        if failure is not None:
            failures.append({"code": code, **failure})
            continue
        buckets.setdefault(_fingerprint(value), []).append((code, value))
    collisions = []
    for members in buckets.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if members[i][1] == members[j][1]:
                    collisions.append((members[i][0], members[j][0]))
    collisions.sort()
    return ScanReport(
        n=n,
        tree_count=len(work),
        invariant=invariant,
        collisions=collisions,
        failures=failures,
        elapsed=time.perf_counter() - start,
    )


def code_hash(t: Tree) -> str:
    """Short stable file name stem for a tree."""
    return hashlib.sha256(canonical_code(t)).hexdigest()[:16]
