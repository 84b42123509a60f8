"""Simple digraphs on dense integer vertex ids, plus connectivity helpers."""

from __future__ import annotations

import json
import random
from collections import deque
from typing import Iterable, Sequence

from . import _kernels
from ._accel import NUMBA_ENABLED, as_kernel_array
from .errors import InvalidDigraph, InvalidParameter, InvalidVertex, NotStrong

Arc = tuple[int, int]

# int64 bitmasks inside compiled kernels
_KERNEL_MAX_N = 62


class Digraph:
    """Immutable loop-free digraph without parallel arcs on vertices ``0..n-1``."""

    __slots__ = ("n", "arcs", "_arcset", "_out", "_in", "_masks")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise InvalidDigraph(f"vertex count must be a non-negative int, got {n!r}")
        seen = set()
        for arc in arcs:
            if len(arc) != 2:
                raise InvalidDigraph(f"arc must be a pair, got {arc!r}")
            t, h = int(arc[0]), int(arc[1])
            if not (0 <= t < n and 0 <= h < n):
                raise InvalidDigraph(f"arc {t}->{h} has an endpoint outside [0, {n})")
            if t == h:
                raise InvalidDigraph(f"loop at vertex {t}")
            if (t, h) in seen:
                raise InvalidDigraph(f"duplicate arc {t}->{h}")
            seen.add((t, h))
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for t, h in sorted(seen):
            out[t].append(h)
            inn[h].append(t)
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(sorted(seen))
        self._arcset = frozenset(seen)
        self._out = tuple(tuple(a) for a in out)
        self._in = tuple(tuple(sorted(a)) for a in inn)
        self._masks = None

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self._arcset == other._arcset

    def __hash__(self):
        return hash((self.n, self._arcset))

    def __contains__(self, arc) -> bool:
        return tuple(arc) in self._arcset

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, t: int, h: int) -> bool:
        return (t, h) in self._arcset

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidVertex(f"vertex {v!r} not in [0, {self.n})")
        return v

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[self.check_vertex(v)]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[self.check_vertex(v)]

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbors(v))

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    def adjacency_masks(self) -> tuple[list[int], list[int]]:
        """Out- and in-neighbourhoods as Python int bitmasks."""
        if self._masks is None:
            out = [sum(1 << h for h in hs) for hs in self._out]
            inn = [sum(1 << t for t in ts) for ts in self._in]
            self._masks = (out, inn)
        return self._masks

    # serialization

    def to_dict(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_dict(cls, data: dict) -> "Digraph":
        try:
            n = data["n"]
            arcs = data["arcs"]
        except (KeyError, TypeError) as exc:
            raise InvalidDigraph(f"digraph JSON needs keys 'n' and 'arcs': {exc}") from None
        return cls(n, arcs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Digraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "D") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in self.vertices]
        lines += [f"  {t} -> {h};" for t, h in self.arcs]
        lines.append("}")
        return "\n".join(lines) + "\n"


def out_neighbors(d: Digraph, v: int) -> tuple[int, ...]:
    return d.out_neighbors(v)


def in_neighbors(d: Digraph, v: int) -> tuple[int, ...]:
    return d.in_neighbors(v)


def _bfs(adj, start, blocked=frozenset()):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                queue.append(w)
    return seen


def is_strong(d: Digraph) -> bool:
    """True iff every ordered pair is joined by a directed path."""
    if d.n <= 1:
        return True
    return len(_bfs(d._out, 0)) == d.n and len(_bfs(d._in, 0)) == d.n


def _kernel_masks(d: Digraph):
    out, inn = d.adjacency_masks()
    if NUMBA_ENABLED and d.n <= _KERNEL_MAX_N:
        return as_kernel_array(out), as_kernel_array(inn), False
    return out, inn, True


def _kernel(fn, use_python):
    return getattr(_kernels.py, fn.__name__) if use_python else fn


def is_l_strong(d: Digraph, l: int) -> bool:
    """Exhaustive ``l``-strong test: ``n >= l + 1`` and no separator of size < l.

    Enumerates every vertex subset of size below ``l``; meant for small hosts.
    """
    if l < 1:
        raise InvalidParameter(f"l must be positive, got {l}")
    out, inn, py = _kernel_masks(d)
    return bool(_kernel(_kernels.l_strong, py)(out, inn, d.n, l))


def min_semi_degree(d: Digraph) -> int:
    if d.n == 0:
        return 0
    return min(min(len(d._out[v]), len(d._in[v])) for v in d.vertices)


def local_connectivity(d: Digraph, u: int, v: int) -> int:
    """Maximum number of internally disjoint ``u -> v`` paths (vertex splitting + Dinic)."""
    from .maxflow import build_iddp_network, dinic_max_flow

    d.check_vertex(u)
    d.check_vertex(v)
    if u == v:
        raise InvalidParameter("local connectivity needs distinct vertices")
    value, _ = dinic_max_flow(build_iddp_network(d, u, v, max(d.n, 1)))
    return value


def vertex_connectivity(d: Digraph) -> int:
    """kappa(d): minimum local connectivity over ordered non-adjacent pairs;
    ``n - 1`` for complete symmetric digraphs."""
    if not is_strong(d):
        raise NotStrong("vertex connectivity is defined here for strong digraphs only")
    best = max(d.n - 1, 0)
    for u in d.vertices:
        for v in d.vertices:
            if u == v or d.has_arc(u, v):
                continue
            best = min(best, local_connectivity(d, u, v))
    return best


def min_vertex_separator(d: Digraph, u: int, v: int) -> frozenset[int] | None:
    """Smallest vertex set (avoiding u, v) meeting every ``u -> v`` path, found
    by exhaustive enumeration. ``None`` when ``u -> v`` is an arc."""
    d.check_vertex(u)
    d.check_vertex(v)
    if u == v:
        raise InvalidParameter("separator needs distinct vertices")
    out, _inn, py = _kernel_masks(d)
    positions = [w for w in d.vertices if w not in (u, v)]
    if not py:
        positions = as_kernel_array(positions)
    mask = int(_kernel(_kernels.min_separator, py)(out, d.n, u, v, positions))
    if mask < 0:
        return None
    return frozenset(w for w in d.vertices if mask >> w & 1)


def remove_vertices(d: Digraph, x: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Induced subdigraph on ``V - x`` with the old-id -> new-id map (order preserving)."""
    removed = set()
    for v in x:
        removed.add(d.check_vertex(v))
    keep = [v for v in d.vertices if v not in removed]
    remap = {v: i for i, v in enumerate(keep)}
    arcs = [(remap[t], remap[h]) for t, h in d.arcs if t in remap and h in remap]
    return Digraph(len(keep), arcs), remap


def add_arcs(d: Digraph, arcs: Iterable[Arc]) -> Digraph:
    return Digraph(d.n, set(d.arcs) | {tuple(a) for a in arcs})


# generators


def bidirected_path(n: int) -> Digraph:
    if n < 1:
        raise InvalidParameter(f"bidirected_path needs n >= 1, got {n}")
    arcs = [(i, i + 1) for i in range(n - 1)] + [(i + 1, i) for i in range(n - 1)]
    return Digraph(n, arcs)


def directed_path(n: int) -> Digraph:
    if n < 1:
        raise InvalidParameter(f"directed_path needs n >= 1, got {n}")
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(m: int) -> Digraph:
    if m < 2:
        raise InvalidParameter(f"directed_cycle needs m >= 2, got {m}")
    return Digraph(m, [(j, (j + 1) % m) for j in range(m)])


def complete_symmetric(n: int) -> Digraph:
    if n < 1:
        raise InvalidParameter(f"complete_symmetric needs n >= 1, got {n}")
    return Digraph(n, [(i, j) for i in range(n) for j in range(n) if i != j])


def is_complete_symmetric(d: Digraph) -> bool:
    return len(d.arcs) == d.n * (d.n - 1)


RANDOM_STRONG_RETRIES = 1000


def random_strong(n: int, arc_probability: float, seed: int | None = None) -> Digraph:
    """Sample ``G(n, p)`` digraphs until one is strong.

    After ``RANDOM_STRONG_RETRIES`` failures the last sample is augmented with
    a random Hamiltonian cycle, which biases sparse settings towards cycles.
    """
    if n < 1:
        raise InvalidParameter(f"random_strong needs n >= 1, got {n}")
    if not 0.0 <= arc_probability <= 1.0:
        raise InvalidParameter(f"arc_probability must lie in [0, 1], got {arc_probability}")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    arcs: list[Arc] = []
    for _ in range(RANDOM_STRONG_RETRIES):
        arcs = [a for a in pairs if rng.random() < arc_probability]
        d = Digraph(n, arcs)
        if is_strong(d):
            return d
    order = list(range(n))
    rng.shuffle(order)
    cycle = {(order[i], order[(i + 1) % n]) for i in range(n)} if n > 1 else set()
    return Digraph(n, set(arcs) | cycle)


def read_digraph(path) -> Digraph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidDigraph(f"{path}: not valid JSON ({exc})") from None
    return Digraph.from_dict(data)


def write_digraph(d: Digraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(d.to_json() + "\n")
