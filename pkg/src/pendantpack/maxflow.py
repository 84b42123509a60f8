"""Dinic's maximum flow on vertex-split networks, with fan and
internally-disjoint-path extraction on top of it."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .digraph import Digraph
from .errors import (
    DecompositionError,
    FanNotFound,
    InvalidNetwork,
    InvalidParameter,
    InvalidVertex,
    PathsNotFound,
)

IN, OUT = "in", "out"


@dataclass(frozen=True)
class DirectedPath:
    """Vertex sequence of a simple directed path; ``len`` counts arcs."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        if not self.vertices:
            raise InvalidParameter("a path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidParameter(f"path repeats a vertex: {self.vertices}")

    def __len__(self):
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def predecessor(self, v: int) -> int:
        """Vertex just before ``v`` on the path."""
        i = self.vertices.index(v)
        if i == 0:
            raise InvalidParameter(f"{v} is the first vertex of the path")
        return self.vertices[i - 1]

    def subpath(self, a: int, b: int) -> "DirectedPath":
        i, j = self.vertices.index(a), self.vertices.index(b)
        if i > j:
            raise InvalidParameter(f"{a} does not precede {b}")
        return DirectedPath(self.vertices[i : j + 1])

    def is_valid_in(self, d: Digraph) -> bool:
        return all(d.has_arc(t, h) for t, h in self.arcs)

    def sort_key(self):
        return (len(self), self.vertices)


@dataclass(frozen=True)
class Fan:
    target: int
    paths: tuple[DirectedPath, ...]

    def starts(self) -> list[int]:
        return [p.start for p in self.paths]


@dataclass
class FlowNetwork:
    """Capacitated network; ``origin_map`` sends split nodes back to
    ``(vertex, side)`` and omits auxiliary nodes such as a super source."""

    node_count: int
    edges: list[tuple[int, int, int]]
    source: int
    sink: int
    origin_map: dict[int, tuple[int, str]] = field(default_factory=dict)


def _split_in(x):
    return 2 * x


def _split_out(x):
    return 2 * x + 1


def _split_network(d: Digraph, endpoint_caps: dict[int, int], arc_cap: int):
    edges = []
    origin = {}
    for x in d.vertices:
        edges.append((_split_in(x), _split_out(x), endpoint_caps.get(x, 1)))
        origin[_split_in(x)] = (x, IN)
        origin[_split_out(x)] = (x, OUT)
    for t, h in d.arcs:
        edges.append((_split_out(t), _split_in(h), arc_cap))
    return edges, origin


def build_fan_network(d: Digraph, z: Iterable[int], u: int) -> FlowNetwork:
    """Network for a fan from ``z`` into ``u``: unit vertex capacities except
    ``u`` (capacity ``|z|``), arcs of capacity ``|z|``, super source feeding
    each ``z_i`` with one unit, sink ``u_out``."""
    zs = sorted(set(z))
    d.check_vertex(u)
    for v in zs:
        d.check_vertex(v)
    if u in zs:
        raise InvalidVertex(f"fan target {u} must not be a source")
    if not zs:
        raise InvalidParameter("fan needs at least one source")
    ell = len(zs)
    edges, origin = _split_network(d, {u: ell}, ell)
    s = 2 * d.n
    edges.extend((s, _split_in(v), 1) for v in zs)
    return FlowNetwork(2 * d.n + 1, edges, s, _split_out(u), origin)


def build_iddp_network(d: Digraph, u: int, v: int, l: int) -> FlowNetwork:
    """Network for internally disjoint ``u -> v`` paths: source ``u_out``,
    sink ``v_in``. The arc ``u -> v`` itself, if present, gets capacity 1 so
    it is used by at most one path."""
    d.check_vertex(u)
    d.check_vertex(v)
    if u == v:
        raise InvalidVertex("path endpoints must differ")
    if l < 1:
        raise InvalidParameter(f"path count must be positive, got {l}")
    edges, origin = _split_network(d, {u: l, v: l}, l)
    direct = (_split_out(u), _split_in(v), l)
    if direct in edges:
        edges[edges.index(direct)] = (_split_out(u), _split_in(v), 1)
    return FlowNetwork(2 * d.n, edges, _split_out(u), _split_in(v), origin)


def _validate(net: FlowNetwork):
    if net.source == net.sink:
        raise InvalidNetwork("source equals sink")
    for node in (net.source, net.sink):
        if not 0 <= node < net.node_count:
            raise InvalidNetwork(f"terminal node {node} out of range")
    for t, h, c in net.edges:
        if not (0 <= t < net.node_count and 0 <= h < net.node_count):
            raise InvalidNetwork(f"edge {t}->{h} out of range")
        if not isinstance(c, int) or c < 0:
            raise InvalidNetwork(f"edge {t}->{h} has invalid capacity {c!r}")


def dinic_max_flow(net: FlowNetwork) -> tuple[int, list[int]]:
    """Maximum flow value and per-edge flow (aligned with ``net.edges``).

    BFS levels, then blocking flow by DFS with current-arc pointers. Adjacency
    is scanned by ascending head node id, ties by insertion order.
    """
    _validate(net)
    size = net.node_count
    to, res = [], []
    for t, h, c in net.edges:
        to += [h, t]
        res += [c, 0]
    adj = [[] for _ in range(size)]
    for e in range(len(to)):
        adj[to[e ^ 1]].append(e)
    for lst in adj:
        lst.sort(key=lambda e: (to[e], e))
    s, t = net.source, net.sink
    value = 0
    while True:
        level = [-1] * size
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for e in adj[v]:
                if res[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[v] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        ptr = [0] * size
        while True:
            pushed = _augment(s, t, adj, to, res, level, ptr)
            if not pushed:
                break
            value += pushed
    flow = [c - res[2 * k] for k, (_, _, c) in enumerate(net.edges)]
    return value, flow


def _augment(s, t, adj, to, res, level, ptr):
    stack = []
    v = s
    while True:
        if v == t:
            f = min(res[e] for e in stack)
            for e in stack:
                res[e] -= f
                res[e ^ 1] += f
            return f
        edges = adj[v]
        while ptr[v] < len(edges):
            e = edges[ptr[v]]
            if res[e] > 0 and level[to[e]] == level[v] + 1:
                break
            ptr[v] += 1
        else:
            if v == s:
                return 0
            level[v] = -1
            e = stack.pop()
            v = to[e ^ 1]
            ptr[v] += 1
            continue
        stack.append(e)
        v = to[e]


def decompose_flow_to_paths(net: FlowNetwork, flow: Sequence[int]) -> list[DirectedPath]:
    """Split an integral flow into unit source-to-sink walks, mapped back to
    vertex paths. Circulations met on the way are dropped. Ties pick the
    smallest next vertex id."""
    if len(flow) != len(net.edges):
        raise DecompositionError("flow length does not match the edge list")
    left = list(flow)
    out_edges = [[] for _ in range(net.node_count)]

    def rank(k):
        head = net.edges[k][1]
        origin = net.origin_map.get(head)
        return (origin[0] if origin else -1, head, k)

    for k, (tl, _, _) in enumerate(net.edges):
        if flow[k] < 0:
            raise DecompositionError(f"negative flow on edge {k}")
        if flow[k]:
            out_edges[tl].append(k)
    for lst in out_edges:
        lst.sort(key=rank)

    units = sum(left[k] for k in out_edges[net.source])
    units -= sum(left[k] for k, (_, h, _) in enumerate(net.edges) if h == net.source)
    paths = []
    for _ in range(max(units, 0)):
        walk = [net.source]
        on_walk = {net.source: 0}
        while walk[-1] != net.sink:
            node = walk[-1]
            nxt = next((k for k in out_edges[node] if left[k] > 0), None)
            if nxt is None:
                raise DecompositionError(f"flow stuck at node {node}")
            left[nxt] -= 1
            head = net.edges[nxt][1]
            if head in on_walk:
                for dropped in walk[on_walk[head] + 1 :]:
                    del on_walk[dropped]
                del walk[on_walk[head] + 1 :]
                continue
            on_walk[head] = len(walk)
            walk.append(head)
        vertices = []
        for node in walk:
            origin = net.origin_map.get(node)
            if origin is not None and (not vertices or vertices[-1] != origin[0]):
                vertices.append(origin[0])
        paths.append(DirectedPath(tuple(vertices)))
    return paths


def find_fan(d: Digraph, z: Sequence[int], u: int) -> Fan:
    """``|z|`` paths ``z_i -> u`` sharing only ``u``; ``paths[i]`` starts at ``z[i]``."""
    z = list(z)
    if len(set(z)) != len(z):
        raise InvalidParameter(f"fan sources must be distinct: {z}")
    net = build_fan_network(d, z, u)
    value, flow = dinic_max_flow(net)
    if value < len(z):
        raise FanNotFound(f"only {value} of {len(z)} fan paths into {u}")
    by_start = {p.start: p for p in decompose_flow_to_paths(net, flow)}
    return Fan(u, tuple(by_start[v] for v in z))


def find_iddp(d: Digraph, u: int, v: int, l: int) -> list[DirectedPath]:
    """``l`` internally disjoint ``u -> v`` paths, shortest first (ties by vertex sequence)."""
    net = build_iddp_network(d, u, v, l)
    value, flow = dinic_max_flow(net)
    if value < l:
        raise PathsNotFound(f"only {value} internally disjoint {u}->{v} paths, wanted {l}")
    paths = sorted(decompose_flow_to_paths(net, flow), key=DirectedPath.sort_key)
    return paths[:l]


def fan_is_valid(fan: Fan, d: Digraph | None = None) -> bool:
    """Pairwise internal disjointness of a fan (shared vertices only at the target)."""
    seen = set()
    for p in fan.paths:
        if p.end != fan.target:
            return False
        if d is not None and not p.is_valid_in(d):
            return False
        body = set(p.vertices) - {fan.target}
        if body & seen:
            return False
        seen |= body
    return True


def paths_internally_disjoint(paths: Sequence[DirectedPath]) -> bool:
    seen = set()
    for p in paths:
        inner = set(p.internal)
        if inner & seen:
            return False
        seen |= inner
    return len({tuple(p.vertices) for p in paths}) == len(paths)
