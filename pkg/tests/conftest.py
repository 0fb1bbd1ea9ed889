import random

import pytest
from hypothesis import strategies as st

from arbor.enumeration import prufer_decode
from arbor.tree_core import Tree

# Figure 1 tree, vertices numbered left to right, top to bottom:
# v1=0 v2=1 v3=2 v4=3 v5=4 v6=5 v7=6 v8=7 v9=8 vt=9 ve=10
FIGURE1_EDGES = [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (3, 6), (6, 7), (7, 8), (7, 9), (9, 10)]

ACCEPTANCE_LINES = []


@pytest.fixture
def figure1():
    return Tree(11, FIGURE1_EDGES)


def random_tree(rng: random.Random, n: int) -> Tree:
    if n <= 2:
        return Tree.path(n)
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


@st.composite
def trees(draw, min_n=2, max_n=14):
    n = draw(st.integers(min_n, max_n))
    if n <= 2:
        return Tree.path(n)
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_decode(seq, n)


@st.composite
def relabelled(draw, min_n=2, max_n=14):
    t = draw(trees(min_n, max_n))
    perm = draw(st.permutations(range(t.n)))
    return t, list(perm)


def is_connected_subset(t: Tree, verts) -> bool:
    verts = set(verts)
    if not verts:
        return False
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in t.adj[v]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def distance_matrix(t: Tree):
    dist = []
    for s in range(t.n):
        d = [-1] * t.n
        d[s] = 0
        queue = [s]
        for v in queue:
            for w in t.adj[v]:
                if d[w] < 0:
                    d[w] = d[v] + 1
                    queue.append(w)
        dist.append(d)
    return dist


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
