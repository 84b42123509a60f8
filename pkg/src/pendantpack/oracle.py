"""Exact (exponential) tau_{S,r} and tau_3 by candidate enumeration and
maximum packing.

Every arc of a pendant tree has at least one non-terminal endpoint (an arc
between two terminals would leave the root or a leaf with a forbidden
degree), so two pendant trees are internally disjoint exactly when their
non-terminal vertex sets ("supports") are disjoint. Packing therefore only
needs inclusion-minimal supports, and a support-minimal tree is built from
chordless paths. Both reductions keep the maximum unchanged.
"""

from __future__ import annotations

import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from ._accel import NUMBA_ENABLED
from .digraph import Digraph, is_strong, min_semi_degree, vertex_connectivity
from .errors import InstanceTooLarge, InvalidParameter
from .trees import OutTree, TerminalSpec, TreeFamily, assemble_tree

TAU3_MAX_VERTICES = 14
TAU_SR_MAX_VERTICES = 20
_KERNEL_MAX_N = 62


def _guard(host: Digraph, bound: int | None, default: int, force: bool):
    limit = default if bound is None else bound
    if not force and host.n > limit:
        raise InstanceTooLarge(
            f"host has {host.n} vertices, above the bound {limit}; pass force=True to run anyway"
        )


def _use_compiled(n: int) -> bool:
    return NUMBA_ENABLED and n <= _KERNEL_MAX_N


def _fn(kernel, compiled: bool):
    return kernel if compiled else getattr(_kernels.py, kernel.__name__)


def _masks(host: Digraph, compiled: bool):
    out, inn = host.adjacency_masks()
    if compiled:
        return np.asarray(out, dtype=np.int64), np.asarray(inn, dtype=np.int64)
    return out, inn


def _check_spec(host: Digraph, spec: TerminalSpec):
    for t in spec.terminals:
        host.check_vertex(t)


# candidate supports


def minimal_supports(host: Digraph, spec: TerminalSpec) -> list[int]:
    """Inclusion-minimal support bitmasks, sorted by size then mask."""
    _check_spec(host, spec)
    compiled = _use_compiled(host.n)
    out, inn = _masks(host, compiled)
    x, y = spec.others
    found = _fn(_kernels.minimal_supports, compiled)(out, inn, host.n, spec.root, x, y)
    return [int(m) for m in found]


def _bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def _path_within(host: Digraph, start: int, end: int, allowed: set[int]) -> list[int]:
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == end:
            break
        for w in host.out_neighbors(v):
            if w in allowed and w not in prev:
                prev[w] = v
                queue.append(w)
    trail = [end]
    while trail[-1] != start:
        trail.append(prev[trail[-1]])
    return trail[::-1]


def tree_for_support(host: Digraph, spec: TerminalSpec, support: int) -> OutTree:
    """A pendant tree whose non-terminal vertex set is exactly ``support``."""
    x, y = spec.others
    out, inn = host.adjacency_masks()
    paths = _kernels.py.induced_paths
    a_end, a_mask = paths(out, inn, spec.root, support)
    b_end, b_mask = paths(inn, out, x, support)
    c_end, c_mask = paths(inn, out, y, support)
    for alpha in _bits(support):
        bit = 1 << alpha
        ra = [m for e, m in zip(a_end, a_mask) if e == alpha]
        rb = [m for e, m in zip(b_end, b_mask) if e == alpha]
        rc = [m for e, m in zip(c_end, c_mask) if e == alpha]
        for ma in ra:
            for mb in rb:
                if ma & mb != bit:
                    continue
                for mc in rc:
                    if mc & (ma | mb) == bit and ma | mb | mc == support:
                        arcs = set()
                        pa = _path_within(host, spec.root, alpha, set(_bits(ma)))
                        pb = _path_within(host, alpha, x, set(_bits(mb)) | {x})
                        pc = _path_within(host, alpha, y, set(_bits(mc)) | {y})
                        for trail in (pa, pb, pc):
                            arcs.update(zip(trail, trail[1:]))
                        return assemble_tree(host, spec.root, arcs)
    raise InvalidParameter(f"no pendant tree has support {_bits(support)}")


# full enumeration


def enumerate_minimal_pendant_trees(
    host: Digraph, spec: TerminalSpec, max_vertices: int | None = None, force: bool = False
) -> list[OutTree]:
    """Every tree ``P(r->alpha) + P(alpha->x) + P(alpha->y)`` over simple paths.

    Plain DFS over simple paths; no chordless-path or dominance pruning, so
    this is the reference the reduced candidate set is tested against.
    """
    _guard(host, max_vertices, TAU3_MAX_VERTICES, force)
    _check_spec(host, spec)
    r = spec.root
    x, y = spec.others
    terminals = set(spec.terminals)

    def simple_paths(start, stop_at, used):
        # yields vertex lists from start; stop_at decides which ends to report
        stack = [(start, [start])]
        while stack:
            v, trail = stack.pop()
            for w in host.out_neighbors(v):
                if w in trail or w in used:
                    continue
                if w in terminals:
                    if stop_at(w):
                        yield trail + [w]
                    continue
                yield trail + [w]
                stack.append((w, trail + [w]))

    seen = {}
    for pa in simple_paths(r, lambda w: False, set()):
        alpha = pa[-1]
        used_a = set(pa[:-1])
        for pb in simple_paths(alpha, lambda w: w == x, used_a):
            if pb[-1] != x:
                continue
            used_b = used_a | set(pb[1:])
            for pc in simple_paths(alpha, lambda w: w == y, used_b):
                if pc[-1] != y:
                    continue
                arcs = frozenset(zip(pa, pa[1:])) | frozenset(zip(pb, pb[1:])) | frozenset(zip(pc, pc[1:]))
                if arcs not in seen:
                    seen[arcs] = assemble_tree(host, r, arcs)
    return [seen[k] for k in sorted(seen, key=lambda a: sorted(a))]


# packing


def support_of(tree: OutTree, spec: TerminalSpec) -> int:
    mask = 0
    for v in tree.vertices - set(spec.terminals):
        mask |= 1 << v
    return mask


@dataclass
class PackingInstance:
    """Candidate trees plus the pairwise conflict relation."""

    host: Digraph
    spec: TerminalSpec
    candidate_trees: list[OutTree]
    supports: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.supports:
            self.supports = [support_of(t, self.spec) for t in self.candidate_trees]

    def conflicts(self) -> list[tuple[int, int]]:
        """Pairs sharing a non-terminal vertex or an arc."""
        pairs = []
        arcsets = [set(t.arcs) for t in self.candidate_trees]
        for i, j in combinations(range(len(self.supports)), 2):
            if self.supports[i] & self.supports[j] or arcsets[i] & arcsets[j]:
                pairs.append((i, j))
        return pairs

    def solve(self, target: int | None = None) -> tuple[int, list[int]]:
        order = sorted(range(len(self.supports)), key=lambda k: (bin(self.supports[k]).count("1"), self.supports[k]))
        value, chosen = _pack(self.host, self.spec, [self.supports[k] for k in order], target)
        return value, [order[k] for k in chosen]


def packing_instance(host: Digraph, spec: TerminalSpec, reduced: bool = True, **bounds) -> PackingInstance:
    """``reduced`` keeps one tree per inclusion-minimal support; otherwise
    every enumerated candidate."""
    if reduced:
        _guard(host, bounds.get("max_vertices"), TAU_SR_MAX_VERTICES, bounds.get("force", False))
        sup = minimal_supports(host, spec)
        return PackingInstance(host, spec, [tree_for_support(host, spec, m) for m in sup], sup)
    return PackingInstance(host, spec, enumerate_minimal_pendant_trees(host, spec, **bounds))


def _pack(host: Digraph, spec: TerminalSpec, cands: list[int], target: int | None):
    out, inn = host.adjacency_masks()
    x, y = spec.others
    terminals = 0
    for t in spec.terminals:
        terminals |= 1 << t
    r_out = out[spec.root] & ~terminals
    x_in = inn[x] & ~terminals
    y_in = inn[y] & ~terminals
    if target is None:
        target = len(cands) + 1
    compiled = _use_compiled(host.n)
    arr = np.asarray(cands, dtype=np.int64) if compiled else list(cands)
    if compiled and not cands:
        arr = np.zeros(0, dtype=np.int64)
    value, chosen = _fn(_kernels.max_packing, compiled)(arr, r_out, x_in, y_in, target)
    return int(value), [int(k) for k in chosen]


def degree_bound(host: Digraph, spec: TerminalSpec) -> int:
    """Free out-neighbours of the root and free in-neighbours of each leaf."""
    x, y = spec.others
    s = set(spec.terminals)
    return min(
        len(set(host.out_neighbors(spec.root)) - s),
        len(set(host.in_neighbors(x)) - s),
        len(set(host.in_neighbors(y)) - s),
    )


@dataclass
class TauResult:
    value: int
    spec: TerminalSpec | None
    family: TreeFamily | None
    exact: bool = True

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness_spec": self.spec.to_dict() if self.spec else None,
            "witness_family": self.family.to_list() if self.family else [],
        }


def _solve_spec(host: Digraph, spec: TerminalSpec, target: int | None):
    """Returns (value, supports); value < target means it is exact."""
    if target is not None and target <= 0:
        return 0, []
    if degree_bound(host, spec) == 0:
        return 0, []
    cands = minimal_supports(host, spec)
    value, chosen = _pack(host, spec, cands, target)
    return value, [cands[k] for k in chosen]


def tau_S_r(
    host: Digraph, spec: TerminalSpec, max_vertices: int | None = None, force: bool = False
) -> TauResult:
    """Exact maximum number of internally disjoint pendant (S, r)-trees,
    with a witness family."""
    _guard(host, max_vertices, TAU_SR_MAX_VERTICES, force)
    _check_spec(host, spec)
    value, chosen = _solve_spec(host, spec, None)
    trees = [tree_for_support(host, spec, m) for m in chosen]
    return TauResult(value, spec, TreeFamily(host, spec, trees))


def all_specs(n: int):
    """Every (S, r) in lexicographic order of (sorted S, r)."""
    for trio in combinations(range(n), 3):
        for r in trio:
            yield TerminalSpec(trio, r)


def degree_obstruction(host: Digraph) -> TerminalSpec | None:
    """A spec whose pendant trees are blocked by a vertex of semi-degree < 3.

    If ``v`` has at most two out-neighbours, rooting at ``v`` with those
    neighbours as terminals forces the root's only child to be a leaf.
    Symmetrically a leaf whose in-neighbours are all terminals has no
    admissible parent.
    """
    if host.n < 3:
        return None
    for v in host.vertices:
        for nbrs, as_root in ((host.out_neighbors(v), True), (host.in_neighbors(v), False)):
            if len(nbrs) >= 3:
                continue
            trio = [v, *nbrs]
            filler = (w for w in host.vertices if w not in trio)
            while len(trio) < 3:
                trio.append(next(filler))
            root = v if as_root else (nbrs[0] if nbrs else trio[1])
            return TerminalSpec(tuple(trio), root)
    return None


def tau3(
    host: Digraph,
    max_vertices: int | None = None,
    force: bool = False,
    workers: int = 1,
) -> TauResult:
    """Exact tau_3 with the lexicographically first spec attaining it.

    Each spec is searched only as far as needed to decide whether it beats
    the current incumbent. Hosts of minimum semi-degree below 3 return 0
    straight away with a degree-obstructed spec.
    """
    _guard(host, max_vertices, TAU3_MAX_VERTICES, force)
    if host.n < 3:
        raise InvalidParameter("tau_3 needs at least three vertices")
    if min_semi_degree(host) < 3:
        spec = degree_obstruction(host)
        return TauResult(0, spec, TreeFamily(host, spec, []))

    lock = threading.Lock()
    best = {"value": None, "key": None, "trees": []}

    def run(spec: TerminalSpec):
        with lock:
            bv, bk = best["value"], best["key"]
        if bv is None:
            target = None
        else:
            target = bv + 1 if spec.key() < bk else bv
        value, chosen = _solve_spec(host, spec, target)
        if target is not None and value >= target:
            return
        with lock:
            if best["value"] is None or (value, spec.key()) < (best["value"], best["key"]):
                best.update(value=value, key=spec.key(), trees=chosen, spec=spec)

    specs = list(all_specs(host.n))
    if workers <= 1:
        for s in specs:
            run(s)
            if best["value"] == 0:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, specs))
    spec = best["spec"]
    trees = [tree_for_support(host, spec, m) for m in best["trees"]]
    return TauResult(best["value"], spec, TreeFamily(host, spec, trees))


@dataclass
class NecessaryConditions:
    l: int
    connectivity: int
    min_semi_degree: int

    @property
    def connectivity_margin(self) -> int:
        return self.connectivity - (self.l + 1)

    @property
    def degree_margin(self) -> int:
        return self.min_semi_degree - (self.l + 2)

    @property
    def ok(self) -> bool:
        return self.connectivity_margin >= 0 and self.degree_margin >= 0

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "connectivity": self.connectivity,
            "required_connectivity": self.l + 1,
            "connectivity_margin": self.connectivity_margin,
            "min_semi_degree": self.min_semi_degree,
            "required_min_semi_degree": self.l + 2,
            "degree_margin": self.degree_margin,
            "ok": self.ok,
        }


def check_necessary_conditions(host: Digraph, l: int) -> NecessaryConditions:
    """Connectivity and semi-degree a host needs for tau_3 >= l."""
    if l < 0:
        raise InvalidParameter(f"l must be non-negative, got {l}")
    kappa = vertex_connectivity(host) if is_strong(host) else 0
    return NecessaryConditions(l, kappa, min_semi_degree(host))
