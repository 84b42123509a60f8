"""Independent reference implementations used only by the tests.

Nothing here imports the algorithms under test: flows use plain
Edmonds-Karp on a capacity matrix, separators and packings are brute force.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations


def edmonds_karp(node_count, edges, source, sink) -> int:
    cap = [[0] * node_count for _ in range(node_count)]
    for t, h, c in edges:
        cap[t][h] += c
    value = 0
    while True:
        prev = [-1] * node_count
        prev[source] = source
        queue = deque([source])
        while queue and prev[sink] < 0:
            v = queue.popleft()
            for w in range(node_count):
                if cap[v][w] > 0 and prev[w] < 0:
                    prev[w] = v
                    queue.append(w)
        if prev[sink] < 0:
            return value
        push = float("inf")
        w = sink
        while w != source:
            push = min(push, cap[prev[w]][w])
            w = prev[w]
        w = sink
        while w != source:
            cap[prev[w]][w] -= push
            cap[w][prev[w]] += push
            w = prev[w]
        value += push


def reaches(n, arcs, u, v, removed=frozenset()) -> bool:
    out = {i: [] for i in range(n)}
    for t, h in arcs:
        out[t].append(h)
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for y in out[x]:
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return False


def brute_separator_size(n, arcs, u, v) -> int | None:
    """Smallest vertex set avoiding u, v that kills every u->v path."""
    if (u, v) in set(arcs):
        return None
    rest = [w for w in range(n) if w not in (u, v)]
    for k in range(len(rest) + 1):
        for cut in combinations(rest, k):
            if not reaches(n, arcs, u, v, frozenset(cut)):
                return k
    return None


def brute_strong(n, arcs, removed=frozenset()) -> bool:
    alive = [v for v in range(n) if v not in removed]
    if len(alive) <= 1:
        return True
    s = alive[0]
    return all(reaches(n, arcs, s, w, removed) and reaches(n, arcs, w, s, removed) for w in alive)


def brute_kappa(n, arcs) -> int:
    """Smallest separator destroying strong connectivity (n - 1 when complete)."""
    for k in range(n - 1):
        for cut in combinations(range(n), k):
            if not brute_strong(n, arcs, frozenset(cut)):
                return k
    return n - 1


def simple_paths(n, arcs, u, v, avoid=frozenset()):
    out = {i: [] for i in range(n)}
    for t, h in arcs:
        out[t].append(h)
    stack = [[u]]
    while stack:
        path = stack.pop()
        for w in out[path[-1]]:
            if w == v:
                yield path + [w]
            elif w not in path and w not in avoid:
                stack.append(path + [w])


def max_disjoint_sets(sets) -> int:
    """Largest pairwise disjoint subfamily (plain recursion)."""
    sets = sorted(set(map(frozenset, sets)), key=lambda s: (len(s), sorted(s)))

    def go(i, used):
        if i == len(sets):
            return 0
        best = go(i + 1, used)
        if not (sets[i] & used):
            best = max(best, 1 + go(i + 1, used | sets[i]))
        return best

    return go(0, frozenset())


def max_conflict_free(count, conflicts) -> int:
    """Maximum independent set in the conflict graph."""
    bad = {i: set() for i in range(count)}
    for i, j in conflicts:
        bad[i].add(j)
        bad[j].add(i)

    def go(cands):
        if not cands:
            return 0
        v = min(cands)
        rest = cands - {v}
        return max(go(rest), 1 + go(rest - bad[v]))

    return go(frozenset(range(count)))


def expected_case(coords) -> str:
    """Branch label predicted from the terminal coordinates (root first)."""
    (p, a), (q, b), (w, c) = coords
    rows = len({p, q, w})
    cols = len({a, b, c})
    if rows == 1:
        return "one_layer"
    if rows == 2:
        if q == p or w == p:
            (f, g), (f2, g2) = ((q, b), (w, c)) if q == p else ((w, c), (q, b))
            if g2 not in (a, g):
                return "two_layers.root_row.fresh_column"
            return "two_layers.root_row.shared_column" if g2 == g else "two_layers.root_row.root_column"
        return "two_layers.far_row.fresh_column" if a not in (b, c) else "two_layers.far_row.root_column"
    if cols == 3:
        return "three_layers.h3"
    if cols == 1:
        return "three_layers.h1"
    return "three_layers.h2.root_column" if a in (b, c) else "three_layers.h2.shared_column"


ALL_CASES = (
    "one_layer",
    "two_layers.root_row.fresh_column",
    "two_layers.root_row.shared_column",
    "two_layers.root_row.root_column",
    "two_layers.far_row.fresh_column",
    "two_layers.far_row.root_column",
    "three_layers.h3",
    "three_layers.h2.root_column",
    "three_layers.h2.shared_column",
    "three_layers.h1",
)
