"""Exit criteria for the package, one test each.

Each test appends a PASS/FAIL line that is printed in the terminal summary.
"""

import random
import time
from collections import Counter
from itertools import combinations_with_replacement, product

import pytest

from arbor.csf import count_proper_colorings, csf, csf_oracle
from arbor.enumeration import free_trees, prufer_oracle, scan
from arbor.recovery import (
    PATH,
    STANDARD,
    count_bounded_compositions,
    minimal_a_leaf_size,
    read_top,
    recover_profile,
)
from arbor.subtree_poly import subtree_poly_bruteforce, subtree_poly_fast
from arbor.tree_core import Tree, decompose

from conftest import ACCEPTANCE_LINES, FIGURE1_EDGES, random_tree

FREE_TREE_COUNTS = [1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]  # n = 2..12


@pytest.fixture
def record(request):
    """Log one line per criterion; a failing assertion still logs FAIL."""
    state = {"detail": ""}
    yield state
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    ACCEPTANCE_LINES.append(
        f"{'FAIL' if failed else 'PASS'}  {request.node.name}: {state['detail']}"
    )


def partitions(m, min_parts, largest=None):
    largest = m if largest is None else largest
    if m == 0:
        if min_parts <= 0:
            yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, min_parts - 1, first):
            yield (first,) + rest


def test_criterion_1_main_theorem_round_trip(record):
    start = time.perf_counter()
    counts = []
    failures = []
    for n in range(2, 13):
        trees = list(free_trees(n))
        counts.append(len(trees))
        for t in trees:
            dec = decompose(t)
            prof = recover_profile(subtree_poly_fast(t))
            want = (PATH if dec.degenerate else STANDARD, dec.trunk_size, dec.twig_lengths)
            if (prof.kind, prof.trunk_size, prof.twig_lengths) != want:
                failures.append(t)
    prufer = [prufer_oracle(n) for n in range(2, 10)]
    elapsed = time.perf_counter() - start
    record["detail"] = f"{sum(counts)} trees, {len(failures)} failures, {elapsed:.1f}s"
    assert counts == FREE_TREE_COUNTS
    assert prufer == FREE_TREE_COUNTS[:8]
    assert failures == []
    assert elapsed < 300


def test_criterion_2_figure1_fixture(record):
    t = Tree(11, FIGURE1_EDGES)
    dec = decompose(t)
    poly = subtree_poly_bruteforce(t)
    n, a = read_top(poly)
    v = minimal_a_leaf_size(poly, a)
    prof = recover_profile(poly)
    record["detail"] = (
        f"trunk {dec.trunk_size}, twigs {list(dec.twig_lengths)}; "
        f"a={a} v={v} t={prof.twig_counts}"
    )
    assert dec.trunk_size == 4
    assert dec.twig_lengths == (1, 1, 1, 1, 1, 2)
    assert (prof.kind, prof.trunk_size, prof.twig_lengths) == (STANDARD, 4, (1, 1, 1, 1, 1, 2))
    assert (n, a, v) == (11, 6, 10)
    assert prof.twig_counts == {1: 5, 2: 1}


def test_criterion_3_oracle_equivalence(record):
    checked = 0
    for n in range(1, 13):
        for t in free_trees(n):
            assert subtree_poly_fast(t) == subtree_poly_bruteforce(t)
            checked += 1
    rng = random.Random(20241018)
    sizes = []
    for _ in range(200):
        t = random_tree(rng, rng.randint(13, 18))
        sizes.append(t.n)
        assert subtree_poly_fast(t) == subtree_poly_bruteforce(t)
    record["detail"] = f"{checked} free trees + 200 random trees (n {min(sizes)}..{max(sizes)}) equal"
    assert min(sizes) >= 13 and max(sizes) <= 18


def test_criterion_4_csf_correctness(record):
    expansions = 0
    for n in range(1, 9):
        for t in free_trees(n):
            f = csf(t)
            for k in (2, 3):
                if k <= n:
                    assert f.monomials(k) == csf_oracle(t, k)
                    expansions += 1
    colorings = 0
    for n in range(1, 11):
        for t in free_trees(n):
            f = csf(t)
            for m in (2, 3, 4):
                assert count_proper_colorings(f, m) == m * (m - 1) ** (n - 1)
                colorings += 1
    record["detail"] = f"{expansions} monomial expansions, {colorings} colouring counts exact"


def test_criterion_5_csf_scan(record):
    start = time.perf_counter()
    reports = [scan(n, "csf", jobs=4) for n in range(1, 11)]
    elapsed = time.perf_counter() - start
    collisions = sum(len(r.collisions) for r in reports)
    record["detail"] = (
        f"n<=10: {sum(r.tree_count for r in reports)} trees, {collisions} collisions, "
        f"{reports[-1].tree_count} at n=10, {elapsed:.1f}s"
    )
    assert collisions == 0
    assert reports[-1].tree_count == 106
    assert elapsed < 600


def test_criterion_6_extension_count_identity(record):
    checks = mismatches = 0
    for n in range(2, 13):
        for t in free_trees(n):
            dec = decompose(t)
            if dec.degenerate:
                continue
            p = subtree_poly_fast(t)
            a = len(dec.twigs)
            v = minimal_a_leaf_size(p, a)
            caps = list(Counter(L - 1 for L in dec.twig_lengths).items())
            # past k = n - v no subtree has v + k + 1 vertices; checked a bit beyond
            for k in range(n - v + 3):
                checks += 1
                if p.coefficient(v + k, a) != count_bounded_compositions(k + 1, caps):
                    mismatches += 1
    record["detail"] = f"{checks} (tree, k) pairs, {mismatches} mismatches"
    assert mismatches == 0


def test_criterion_7_spiders(record):
    seen = {}
    failures = 0
    for m in range(3, 13):
        for legs in partitions(m, 3):
            if len(legs) < 3:
                continue
            prof = recover_profile(subtree_poly_fast(Tree.spider(legs)))
            if (prof.kind, prof.trunk_size, prof.twig_lengths) != (STANDARD, 1, tuple(sorted(legs))):
                failures += 1
            seen.setdefault((prof.trunk_size, prof.twig_lengths), []).append(legs)
    record["detail"] = f"{len(seen)} spiders, {failures} failures, all profiles distinct"
    assert failures == 0
    assert all(len(v) == 1 for v in seen.values())


def test_criterion_8_bounded_compositions(record):
    cases = 0
    for parts in range(0, 7):
        for caps in combinations_with_replacement(range(6), parts):
            sums = Counter(map(sum, product(*(range(c + 1) for c in caps))))
            grouped = list(Counter(caps).items())
            for total in range(9):
                cases += 1
                assert count_bounded_compositions(total, grouped) == sums[total]
                assert count_bounded_compositions(total, [(c, 1) for c in caps]) == sums[total]
    record["detail"] = f"{cases} (caps, total) cases exact"
