"""Internally disjoint pendant (S, r)-trees in a Cartesian product D x H.

Given ``l`` disjoint pendant trees in D and ``h`` in H (for the projected
terminal sets), :func:`construct` returns ``l + h`` internally disjoint
pendant trees in the product. The work is a handful of max-flow calls in
the factors plus copying factor paths and trees into product layers.

Notation used in comments: the root is ``(p, a)``, the other two terminals
``(q, b)`` and ``(w, c)``. A "column" is the copy of D at a fixed H-vertex,
a "row" the copy of H at a fixed D-vertex.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache

from .digraph import (
    Digraph,
    complete_symmetric,
    is_complete_symmetric,
    is_strong,
    min_semi_degree,
    vertex_connectivity,
)
from .errors import (
    FanNotFound,
    InstanceTooLarge,
    InternalContractViolation,
    PathsNotFound,
    PreconditionViolated,
)
from .maxflow import DirectedPath, find_fan, find_iddp
from .product import ProductDigraph, project
from .trees import (
    OutTree,
    TerminalSpec,
    TreeFamily,
    are_internally_disjoint,
    assemble_tree,
    branch_vertex,
    is_pendant_tree,
    tree_path,
    verify_family,
)

Arc = tuple[int, int]


@dataclass
class FactorCertificates:
    """Factor tree families for the projected terminal sets.

    ``d_trees`` are pendant ``(S_D, p)``-trees in D, needed when the three
    terminals have distinct D-coordinates; ``h_trees`` likewise in H.
    """

    ell: int
    h: int
    d_trees: list[OutTree] | None = None
    h_trees: list[OutTree] | None = None

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "h": self.h,
            "d_trees": None if self.d_trees is None else [t.to_dict() for t in self.d_trees],
            "h_trees": None if self.h_trees is None else [t.to_dict() for t in self.h_trees],
        }


@dataclass
class Piece:
    label: str
    arcs: list[Arc]

    def to_dict(self) -> dict:
        return {"label": self.label, "arcs": [list(a) for a in self.arcs]}


@dataclass
class ConstructionTrace:
    """Which branch ran and which factor objects make up each output tree."""

    case: str = ""
    s_d: int = 0
    s_h: int = 0
    provenance: list[list[Piece]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(
        default_factory=lambda: {"flow": 0.0, "lifting": 0.0, "assembly": 0.0, "verification": 0.0}
    )

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "s_d": self.s_d,
            "s_h": self.s_h,
            "notes": list(self.notes),
            "trees": [[pc.to_dict() for pc in pieces] for pieces in self.provenance],
            "timings": dict(self.timings),
        }


# precondition checks


@lru_cache(maxsize=64)
def _connectivity(d: Digraph) -> int:
    return vertex_connectivity(d)


def _check_factor(name: str, g: Digraph, k: int):
    if not is_strong(g):
        raise PreconditionViolated(f"factor {name} is not strong")
    if k < 1:
        raise PreconditionViolated(f"factor {name}: tau_3 = {k}; the construction needs at least 1")
    delta = min_semi_degree(g)
    if delta < k + 2:
        raise PreconditionViolated(
            f"factor {name}: min semi-degree {delta} < {k + 2}, so tau_3({name}) >= {k} is impossible"
            " (semi-degree necessary condition)"
        )
    kappa = _connectivity(g)
    if kappa < k + 1:
        raise PreconditionViolated(
            f"factor {name}: connectivity {kappa} < {k + 1}, so tau_3({name}) >= {k} is impossible"
            " (connectivity necessary condition)"
        )


def _ingest(name: str, g: Digraph, trees, count: int, spec: TerminalSpec) -> list[OutTree]:
    if trees is None or len(trees) < count:
        have = 0 if trees is None else len(trees)
        raise PreconditionViolated(f"factor {name}: need {count} certificate trees for {spec.key()}, got {have}")
    trees = list(trees)[:count]
    for k, t in enumerate(trees):
        if t.host != g:
            raise PreconditionViolated(f"factor {name}: certificate tree {k} lives on another digraph")
        check = is_pendant_tree(t, spec)
        if not check:
            raise PreconditionViolated(
                f"factor {name}: certificate tree {k} is not pendant for {spec.key()} ({check.condition})"
            )
    for i in range(count):
        for j in range(i + 1, count):
            check = are_internally_disjoint(trees[i], trees[j], spec)
            if not check:
                raise PreconditionViolated(
                    f"factor {name}: certificate trees {i} and {j} overlap ({check.condition} {check.witness})"
                )
    return trees


# construction


class _Run:
    def __init__(self, d: Digraph, h: Digraph, p: ProductDigraph, spec: TerminalSpec, trace: ConstructionTrace):
        self.d, self.h, self.p, self.spec, self.trace = d, h, p, spec, trace
        self.m = p.m
        self.out: list[OutTree] = []

    @contextmanager
    def phase(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.trace.timings[name] += time.perf_counter() - t0

    def v(self, i: int, j: int) -> int:
        return i * self.m + j

    # flows in the factors

    def iddp(self, g: Digraph, u: int, v: int, count: int, name: str) -> list[DirectedPath]:
        """``count`` disjoint paths with the shortest one moved to the end."""
        with self.phase("flow"):
            try:
                paths = find_iddp(g, u, v, count)
            except PathsNotFound as exc:
                raise InternalContractViolation(f"{name}: {exc}", self.trace) from None
        return paths[1:] + paths[:1]

    def fan(self, g: Digraph, starts: list[int], target: int, name: str) -> list[DirectedPath]:
        with self.phase("flow"):
            try:
                return list(find_fan(g, starts, target).paths)
            except FanNotFound as exc:
                raise InternalContractViolation(f"{name}: {exc}", self.trace) from None

    # lifting

    def col(self, vertices, j: int) -> list[Arc]:
        vs = list(vertices)
        return [(self.v(s, j), self.v(t, j)) for s, t in zip(vs, vs[1:])]

    def row(self, vertices, i: int) -> list[Arc]:
        vs = list(vertices)
        return [(self.v(i, s), self.v(i, t)) for s, t in zip(vs, vs[1:])]

    def tree_col(self, t: OutTree, j: int) -> list[Arc]:
        return [(self.v(s, j), self.v(e, j)) for s, e in t.arcs]

    def tree_row(self, t: OutTree, i: int) -> list[Arc]:
        return [(self.v(i, s), self.v(i, e)) for s, e in t.arcs]

    def emit(self, pieces: list[tuple[str, list[Arc]]]):
        with self.phase("assembly"):
            arcs: list[Arc] = []
            seen = set()
            for label, part in pieces:
                for arc in part:
                    if arc in seen:
                        raise InternalContractViolation(f"arc {arc} attributed twice ({label})", self.trace)
                    seen.add(arc)
                arcs.extend(part)
            self.out.append(assemble_tree(self.p.graph, self.spec.root, arcs))
            self.trace.provenance.append([Piece(label, list(part)) for label, part in pieces])


def _vertices(path: DirectedPath, a=None, b=None):
    if a is None and b is None:
        return path.vertices
    return path.subpath(path.start if a is None else a, path.end if b is None else b).vertices


def case_one_layer(run: _Run, ell: int, hh: int, h_trees: list[OutTree]):
    """All terminals in the row of ``p``."""
    (p, a), (_, b), (_, c) = _coords(run)
    run.trace.case = "one_layer"
    with run.phase("lifting"):
        for j, t in enumerate(h_trees):
            run.emit([(f"h_tree[{j}]@row{p}", run.tree_row(t, p))])
    zs = sorted(run.d.out_neighbors(p))[:ell]
    fan = run.fan(run.d, zs, p, "fan into the root's D-vertex")
    for i, z in enumerate(zs):
        with run.phase("lifting"):
            pieces = [
                ("root-arc", [(run.v(p, a), run.v(z, a))]),
                (f"h_tree[0]@row{z}", run.tree_row(h_trees[0], z)),
                (f"d_fan[{i}]@col{b}", run.col(fan[i].vertices, b)),
                (f"d_fan[{i}]@col{c}", run.col(fan[i].vertices, c)),
            ]
        run.emit(pieces)


def case_two_layers(run: _Run, ell: int, hh: int, h_trees: list[OutTree] | None, h_spec: TerminalSpec):
    """Terminals spread over exactly two rows."""
    r, x, y = _coords(run)
    p, a = r
    if x[0] == p:
        (f, g), (f2, g2) = x, y
    elif y[0] == p:
        (f, g), (f2, g2) = y, x
    else:
        (f, g), (f2, g2) = x, y  # both off the root row: y plays the second role
    P = run.iddp(run.d, p, f2, ell + 1, "disjoint D-paths from the root row")
    zs = [P[i].predecessor(f2) for i in range(ell)]
    last = P[ell]

    if f == p:
        if g2 not in (a, g):
            run.trace.case = "two_layers.root_row.fresh_column"
            trees = h_trees
            R = run.fan(run.d, zs + [f2], p, "fan back to the root's D-vertex")
            for j, t in enumerate(trees):
                s = t.parent[g2]
                with run.phase("lifting"):
                    lifted = [arc for arc in run.tree_row(t, p) if arc != (run.v(p, s), run.v(p, g2))]
                    pieces = [
                        (f"h_tree[{j}]-last-arc@row{p}", lifted),
                        (f"d_path[{ell}]@col{s}", run.col(last.vertices, s)),
                        ("exit-arc", [(run.v(f2, s), run.v(f2, g2))]),
                    ]
                run.emit(pieces)
            for i, z in enumerate(zs):
                with run.phase("lifting"):
                    pieces = [
                        (f"d_path[{i}][:z]@col{a}", run.col(_vertices(P[i], None, z), a)),
                        (f"h_tree[0]@row{z}", run.tree_row(trees[0], z)),
                        (f"d_fan[{i}]@col{g}", run.col(R[i].vertices, g)),
                        ("exit-arc", [(run.v(z, g2), run.v(f2, g2))]),
                    ]
                run.emit(pieces)
            return
        Q = run.iddp(run.h, a, g, hh + 1, "disjoint H-paths in the root row")
        ss = [Q[j].predecessor(g) for j in range(hh)]
        R = run.fan(run.d, zs + [f2], p, "fan back to the root's D-vertex")
        if g2 == g:
            run.trace.case = "two_layers.root_row.shared_column"
            for j, s in enumerate(ss):
                with run.phase("lifting"):
                    pieces = [
                        (f"h_path[{j}]@row{p}", run.row(Q[j].vertices, p)),
                        (f"d_path[{ell}]@col{s}", run.col(last.vertices, s)),
                        ("exit-arc", [(run.v(f2, s), run.v(f2, g))]),
                    ]
                run.emit(pieces)
            for i, z in enumerate(zs):
                with run.phase("lifting"):
                    pieces = [
                        (f"d_path[{i}][:z]@col{a}", run.col(_vertices(P[i], None, z), a)),
                        (f"h_path[0]@row{z}", run.row(Q[0].vertices, z)),
                        (f"d_fan[{i}]@col{g}", run.col(R[i].vertices, g)),
                        ("exit-arc", [(run.v(z, g), run.v(f2, g))]),
                    ]
                run.emit(pieces)
            return
        run.trace.case = "two_layers.root_row.root_column"
        W = run.fan(run.h, ss + [g], a, "H-fan back to the root column")
        for j, s in enumerate(ss):
            with run.phase("lifting"):
                pieces = [
                    (f"h_path[{j}]@row{p}", run.row(Q[j].vertices, p)),
                    (f"d_path[{ell}]@col{s}", run.col(last.vertices, s)),
                    (f"h_fan[{j}]@row{f2}", run.row(W[j].vertices, f2)),
                ]
            run.emit(pieces)
        for i, z in enumerate(zs):
            with run.phase("lifting"):
                pieces = [
                    (f"d_path[{i}]@col{a}", run.col(P[i].vertices, a)),
                    (f"h_path[0]@row{z}", run.row(Q[0].vertices, z)),
                    (f"d_fan[{i}]@col{g}", run.col(R[i].vertices, g)),
                ]
            run.emit(pieces)
        return

    # both non-root terminals in the row of f
    if a not in (g, g2):
        run.trace.case = "two_layers.far_row.fresh_column"
        trees = h_trees
        for j, t in enumerate(trees):
            s = branch_vertex(t, h_spec)
            with run.phase("lifting"):
                pieces = [
                    (f"h_tree[{j}][:branch]@row{p}", run.row(tree_path(t, a, s).vertices, p)),
                    (f"d_path[{ell}]@col{s}", run.col(last.vertices, s)),
                    (f"h_tree[{j}][branch:x]@row{f}", run.row(tree_path(t, s, g).vertices, f)),
                    (f"h_tree[{j}][branch:y]@row{f}", run.row(tree_path(t, s, g2).vertices, f)),
                ]
            run.emit(pieces)
        for i, z in enumerate(zs):
            with run.phase("lifting"):
                pieces = [
                    (f"d_path[{i}][:z]@col{a}", run.col(_vertices(P[i], None, z), a)),
                    (f"h_tree[0]@row{z}", run.tree_row(trees[0], z)),
                    ("exit-arc", [(run.v(z, g), run.v(f, g))]),
                    ("exit-arc", [(run.v(z, g2), run.v(f, g2))]),
                ]
            run.emit(pieces)
        return
    run.trace.case = "two_layers.far_row.root_column"
    e2 = g2 if g == a else g
    Q = run.iddp(run.h, a, e2, hh + 1, "disjoint H-paths")
    ss = [Q[j].predecessor(e2) for j in range(hh)]
    W = run.fan(run.h, ss + [e2], a, "H-fan back to the root column")
    for j, s in enumerate(ss):
        with run.phase("lifting"):
            pieces = [
                (f"h_path[{j}][:s]@row{p}", run.row(_vertices(Q[j], None, s), p)),
                (f"d_path[{ell}]@col{s}", run.col(last.vertices, s)),
                (f"h_fan[{j}]@row{f}", run.row(W[j].vertices, f)),
                ("exit-arc", [(run.v(f, s), run.v(f, e2))]),
            ]
        run.emit(pieces)
    for i, z in enumerate(zs):
        with run.phase("lifting"):
            pieces = [
                (f"d_path[{i}]@col{a}", run.col(P[i].vertices, a)),
                (f"h_path[0]@row{z}", run.row(Q[0].vertices, z)),
                ("exit-arc", [(run.v(z, e2), run.v(f, e2))]),
            ]
        run.emit(pieces)


def case_three_layers(
    run: _Run,
    ell: int,
    hh: int,
    d_trees: list[OutTree],
    d_spec: TerminalSpec,
    h_trees: list[OutTree] | None,
    h_spec: TerminalSpec | None,
):
    """Three distinct D-coordinates."""
    (p, a), (q, b), (w, c) = _coords(run)
    zs = [branch_vertex(t, d_spec) for t in d_trees]
    t1 = d_trees[0]
    s_h = len({a, b, c})

    if s_h == 3:
        run.trace.case = "three_layers.h3"
        trees = h_trees
        ss = [branch_vertex(t, h_spec) for t in trees]
        W = run.fan(run.h, ss + [a], b, "H-fan into x's column")
        Y = run.fan(run.h, ss + [a], c, "H-fan into y's column")
        for j, (t, s) in enumerate(zip(trees, ss)):
            with run.phase("lifting"):
                pieces = [
                    (f"h_tree[{j}][:branch]@row{p}", run.row(tree_path(t, a, s).vertices, p)),
                    (f"d_tree[0]@col{s}", run.tree_col(t1, s)),
                    (f"h_fan_x[{j}]@row{q}", run.row(W[j].vertices, q)),
                    (f"h_fan_y[{j}]@row{w}", run.row(Y[j].vertices, w)),
                ]
            run.emit(pieces)
        for i in range(1, ell):
            t, z = d_trees[i], zs[i]
            with run.phase("lifting"):
                pieces = [
                    (f"d_tree[{i}][:branch]@col{a}", run.col(tree_path(t, p, z).vertices, a)),
                    (f"h_tree[0]@row{z}", run.tree_row(trees[0], z)),
                    (f"d_tree[{i}][branch:x]@col{b}", run.col(tree_path(t, z, q).vertices, b)),
                    (f"d_tree[{i}][branch:y]@col{c}", run.col(tree_path(t, z, w).vertices, c)),
                ]
            run.emit(pieces)
        with run.phase("lifting"):
            pieces = [
                (f"d_tree[0]@col{a}", run.tree_col(t1, a)),
                (f"h_fan_x[{hh}]@row{q}", run.row(W[hh].vertices, q)),
                (f"h_fan_y[{hh}]@row{w}", run.row(Y[hh].vertices, w)),
            ]
        run.emit(pieces)
        return

    if s_h == 2:
        # order the non-root terminals so the second one's H-coordinate differs from a
        if c != a:
            (f, g), (f2, g2) = (q, b), (w, c)
        else:
            (f, g), (f2, g2) = (w, c), (q, b)
        Q = run.iddp(run.h, a, g2, hh + 1, "disjoint H-paths")
        ss = [Q[j].predecessor(g2) for j in range(hh)]
        if g == a:
            run.trace.case = "three_layers.h2.root_column"
            run.trace.notes.append(
                "the H-path used by the D-routed trees is the shortest of the h+1 H-paths (index h+1)"
            )
            W = run.fan(run.h, ss + [g2], a, "H-fan back to the root column")
            for j, s in enumerate(ss):
                with run.phase("lifting"):
                    pieces = [
                        (f"h_path[{j}][:s]@row{p}", run.row(_vertices(Q[j], None, s), p)),
                        (f"d_tree[0]@col{s}", run.tree_col(t1, s)),
                        (f"h_fan[{j}]@row{f}", run.row(W[j].vertices, f)),
                        ("exit-arc", [(run.v(f2, s), run.v(f2, g2))]),
                    ]
                run.emit(pieces)
            for i in range(1, ell):
                t, z = d_trees[i], zs[i]
                with run.phase("lifting"):
                    pieces = [
                        (f"d_tree[{i}][:branch]@col{a}", run.col(tree_path(t, p, z).vertices, a)),
                        (f"d_tree[{i}][branch:{f}]@col{a}", run.col(tree_path(t, z, f).vertices, a)),
                        (f"h_path[{hh}]@row{z}", run.row(Q[hh].vertices, z)),
                        (f"d_tree[{i}][branch:{f2}]@col{g2}", run.col(tree_path(t, z, f2).vertices, g2)),
                    ]
                run.emit(pieces)
            with run.phase("lifting"):
                pieces = [
                    (f"d_tree[0]@col{a}", run.tree_col(t1, a)),
                    (f"h_path[{hh}]@row{f2}", run.row(Q[hh].vertices, f2)),
                ]
            run.emit(pieces)
            return
        run.trace.case = "three_layers.h2.shared_column"
        run.trace.notes.append(
            "last D-routed tree: first D-tree split at its branch vertex, joined by the shortest H-path"
        )
        for j, s in enumerate(ss):
            with run.phase("lifting"):
                pieces = [
                    (f"h_path[{j}][:s]@row{p}", run.row(_vertices(Q[j], None, s), p)),
                    (f"d_tree[0]@col{s}", run.tree_col(t1, s)),
                    ("exit-arc", [(run.v(q, s), run.v(q, g2))]),
                    ("exit-arc", [(run.v(w, s), run.v(w, g2))]),
                ]
            run.emit(pieces)
        for i in range(1, ell + 1):
            k = i % ell  # the first D-tree goes last
            t, z = d_trees[k], zs[k]
            hp = 0 if k else hh
            with run.phase("lifting"):
                pieces = [
                    (f"d_tree[{k}][:branch]@col{a}", run.col(tree_path(t, p, z).vertices, a)),
                    (f"h_path[{hp}]@row{z}", run.row(Q[hp].vertices, z)),
                    (f"d_tree[{k}][branch:x]@col{g2}", run.col(tree_path(t, z, q).vertices, g2)),
                    (f"d_tree[{k}][branch:y]@col{g2}", run.col(tree_path(t, z, w).vertices, g2)),
                ]
            run.emit(pieces)
        return

    run.trace.case = "three_layers.h1"
    ss = sorted(run.h.out_neighbors(a))[:hh]
    W = run.fan(run.h, ss, a, "H-fan back to the shared column")
    for j, s in enumerate(ss):
        with run.phase("lifting"):
            pieces = [
                ("root-arc", [(run.v(p, a), run.v(p, s))]),
                (f"d_tree[0]@col{s}", run.tree_col(t1, s)),
                (f"h_fan[{j}]@row{q}", run.row(W[j].vertices, q)),
                (f"h_fan[{j}]@row{w}", run.row(W[j].vertices, w)),
            ]
        run.emit(pieces)
    for i, t in enumerate(d_trees):
        with run.phase("lifting"):
            pieces = [(f"d_tree[{i}]@col{a}", run.tree_col(t, a))]
        run.emit(pieces)


def _coords(run: _Run):
    x, y = run.spec.others
    return run.p.decode(run.spec.root), run.p.decode(x), run.p.decode(y)


def factor_specs(p: ProductDigraph, spec: TerminalSpec):
    """Projected factor specs (or ``None`` when a projection has < 3 vertices)."""
    r = p.decode(spec.root)
    proj = project(p, spec.terminals)
    d_spec = TerminalSpec(proj.s_D, r[0]) if len(proj.s_D) == 3 else None
    h_spec = TerminalSpec(proj.s_H, r[1]) if len(proj.s_H) == 3 else None
    return d_spec, h_spec


def construct(
    d: Digraph,
    h: Digraph,
    p: ProductDigraph,
    spec: TerminalSpec,
    certs: FactorCertificates,
    verify: bool = True,
) -> tuple[TreeFamily, ConstructionTrace]:
    """``certs.ell + certs.h`` internally disjoint pendant (S, r)-trees in ``p``."""
    if p.n != d.n or p.m != h.n or len(p.graph.arcs) != d.n * len(h.arcs) + h.n * len(d.arcs):
        raise PreconditionViolated("product digraph does not match the given factors")
    for t in spec.terminals:
        p.graph.check_vertex(t)
    ell, hh = certs.ell, certs.h
    _check_factor("D", d, ell)
    _check_factor("H", h, hh)
    d_spec, h_spec = factor_specs(p, spec)
    s_d = len(project(p, spec.terminals).s_D)
    trace = ConstructionTrace(s_d=s_d, s_h=len(project(p, spec.terminals).s_H))
    h_trees = _ingest("H", h, certs.h_trees, hh, h_spec) if h_spec is not None else None
    d_trees = _ingest("D", d, certs.d_trees, ell, d_spec) if d_spec is not None else None

    run = _Run(d, h, p, spec, trace)
    if s_d == 1:
        case_one_layer(run, ell, hh, h_trees)
    elif s_d == 2:
        case_two_layers(run, ell, hh, h_trees, h_spec)
    else:
        case_three_layers(run, ell, hh, d_trees, d_spec, h_trees, h_spec)

    family = TreeFamily(p.graph, spec, run.out)
    if verify:
        with run.phase("verification"):
            report = verify_family(family)
        if not report.valid or len(family) != ell + hh:
            raise InternalContractViolation(
                f"construction produced an invalid family ({trace.case}): {report.to_dict()}", trace
            )
    return family, trace


# certificates


def complete_symmetric_trees(n: int, spec: TerminalSpec) -> list[OutTree]:
    """One tree ``r -> alpha -> {x, y}`` per non-terminal ``alpha`` of the
    complete symmetric digraph; these ``n - 3`` trees are optimal."""
    k = complete_symmetric(n)
    x, y = spec.others
    out = []
    for alpha in range(n):
        if alpha in spec.terminals:
            continue
        out.append(assemble_tree(k, spec.root, [(spec.root, alpha), (alpha, x), (alpha, y)]))
    return out


@lru_cache(maxsize=64)
def factor_tau3(g: Digraph, force: bool = False) -> int:
    """tau_3 of a factor: closed form for complete symmetric digraphs,
    the exact oracle otherwise."""
    if is_complete_symmetric(g) and g.n >= 3:
        return g.n - 3
    from .oracle import tau3

    return tau3(g, force=force).value


def _factor_trees(g: Digraph, spec: TerminalSpec, count: int, force: bool) -> list[OutTree]:
    if is_complete_symmetric(g):
        return complete_symmetric_trees(g.n, spec)[:count]
    from .oracle import tau_S_r

    return tau_S_r(g, spec, force=force).family.trees[:count]


def certify(
    d: Digraph,
    h: Digraph,
    p: ProductDigraph,
    spec: TerminalSpec,
    ell: int | None = None,
    hh: int | None = None,
    force: bool = False,
) -> FactorCertificates:
    """Factor certificates for ``spec``; tau_3 values default to the oracle.

    Raises :class:`InstanceTooLarge` when a factor is too big for the oracle
    and is not complete symmetric.
    """
    ell = factor_tau3(d, force) if ell is None else ell
    hh = factor_tau3(h, force) if hh is None else hh
    d_spec, h_spec = factor_specs(p, spec)
    d_trees = _factor_trees(d, d_spec, ell, force) if d_spec is not None and ell > 0 else None
    h_trees = _factor_trees(h, h_spec, hh, force) if h_spec is not None and hh > 0 else None
    return FactorCertificates(ell, hh, d_trees, h_trees)


__all__ = [
    "ConstructionTrace",
    "FactorCertificates",
    "InstanceTooLarge",
    "Piece",
    "case_one_layer",
    "case_three_layers",
    "case_two_layers",
    "certify",
    "complete_symmetric_trees",
    "construct",
    "factor_specs",
    "factor_tau3",
]
