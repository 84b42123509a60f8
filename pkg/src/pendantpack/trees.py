"""Out-trees, pendant (S, r)-tree checks and family verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .digraph import Digraph
from .errors import InvalidParameter, NotArborescence, NotOnPath, NotPendantTree
from .maxflow import DirectedPath

Arc = tuple[int, int]


@dataclass(frozen=True)
class Check:
    """Boolean verdict plus the violated condition and a witness."""

    ok: bool
    condition: str | None = None
    witness: object = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, (set, frozenset)):
            w = sorted(w)
        elif isinstance(w, tuple):
            w = list(w)
        return {"ok": self.ok, "condition": self.condition, "witness": w}


PASS = Check(True)


class OutTree:
    """Arborescence stored as a parent map over a host digraph."""

    __slots__ = ("root", "parent", "host", "_children")

    def __init__(self, root: int, parent: Mapping[int, int], host: Digraph):
        host.check_vertex(root)
        parent = {int(v): int(u) for v, u in parent.items()}
        if root in parent:
            raise NotArborescence("root_has_parent", root)
        for v, u in parent.items():
            if not host.has_arc(u, v):
                raise NotArborescence("arc_not_in_host", (u, v))
        children: dict[int, list[int]] = {root: []}
        for v in parent:
            children.setdefault(v, [])
        for v, u in sorted(parent.items()):
            if u not in children:
                raise NotArborescence("disconnected", u)
            children[u].append(v)
        # every vertex must climb to the root without revisiting
        settled = {root}
        for v in parent:
            trail = []
            w = v
            while w not in settled:
                if w in trail:
                    raise NotArborescence("cycle", w)
                trail.append(w)
                w = parent[w]
            settled.update(trail)
        self.root = root
        self.parent = parent
        self.host = host
        self._children = {v: tuple(c) for v, c in children.items()}

    def __repr__(self):
        return f"OutTree(root={self.root}, arcs={self.arcs})"

    def __eq__(self, other):
        if not isinstance(other, OutTree):
            return NotImplemented
        return self.root == other.root and self.parent == other.parent and self.host == other.host

    def __hash__(self):
        return hash((self.root, frozenset(self.parent.items())))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._children)

    @property
    def arcs(self) -> list[Arc]:
        return sorted((u, v) for v, u in self.parent.items())

    def __contains__(self, v) -> bool:
        return v in self._children

    def children(self, v: int) -> tuple[int, ...]:
        return self._children.get(v, ())

    def out_degree(self, v: int) -> int:
        return len(self.children(v))

    def in_degree(self, v: int) -> int:
        return 1 if v in self.parent else 0

    def to_dict(self) -> dict:
        return {"root": self.root, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_dict(cls, data: dict, host: Digraph) -> "OutTree":
        return assemble_tree(host, data["root"], [tuple(a) for a in data["arcs"]])


@dataclass(frozen=True)
class TerminalSpec:
    """Three distinct terminals with a designated root."""

    terminals: tuple[int, ...]
    root: int

    def __post_init__(self):
        ts = tuple(sorted(int(t) for t in self.terminals))
        if len(ts) != 3 or len(set(ts)) != 3:
            raise InvalidParameter(f"need three distinct terminals, got {self.terminals}")
        if self.root not in ts:
            raise InvalidParameter(f"root {self.root} is not a terminal")
        object.__setattr__(self, "terminals", ts)

    @property
    def others(self) -> tuple[int, int]:
        x, y = (t for t in self.terminals if t != self.root)
        return x, y

    def key(self):
        return (self.terminals, self.root)

    def to_dict(self) -> dict:
        return {"terminals": list(self.terminals), "root": self.root}

    @classmethod
    def from_dict(cls, data: dict) -> "TerminalSpec":
        return cls(tuple(data["terminals"]), data["root"])


@dataclass
class TreeFamily:
    host: Digraph
    spec: TerminalSpec
    trees: list[OutTree] = field(default_factory=list)

    def __len__(self):
        return len(self.trees)

    def to_list(self) -> list[dict]:
        return [t.to_dict() for t in self.trees]


def is_pendant_tree(t: OutTree, spec: TerminalSpec) -> Check:
    if t.root != spec.root:
        return Check(False, "root_mismatch", t.root)
    for s in spec.terminals:
        if s not in t:
            return Check(False, "missing_terminal", s)
    if t.out_degree(spec.root) != 1:
        return Check(False, "root_out_degree", t.out_degree(spec.root))
    for s in spec.others:
        if t.out_degree(s) != 0:
            return Check(False, "terminal_not_leaf", s)
    return PASS


def tree_path(t: OutTree, u: int, v: int) -> DirectedPath:
    """The unique tree path from ``u`` down to ``v``."""
    if u not in t or v not in t:
        raise NotOnPath(f"{u} or {v} not in the tree")
    trail = [v]
    while trail[-1] != u:
        w = trail[-1]
        if w not in t.parent:
            raise NotOnPath(f"{v} is not a descendant of {u}")
        trail.append(t.parent[w])
    return DirectedPath(tuple(reversed(trail)))


def branch_vertex(t: OutTree, spec: TerminalSpec) -> int:
    """Where the root-to-x and root-to-y paths split."""
    check = is_pendant_tree(t, spec)
    if not check:
        raise NotPendantTree(f"{check.condition}: {check.witness}")
    x, y = spec.others
    px = tree_path(t, spec.root, x).vertices
    py = tree_path(t, spec.root, y).vertices
    k = 0
    while k + 1 < min(len(px), len(py)) and px[k + 1] == py[k + 1]:
        k += 1
    return px[k]


def prune_to_minimal(t: OutTree, spec: TerminalSpec) -> OutTree:
    """Union of the root-to-terminal paths; again pendant when ``t`` is."""
    arcs = set()
    for s in spec.others:
        arcs.update(tree_path(t, spec.root, s).arcs)
    return assemble_tree(t.host, spec.root, arcs)


def are_internally_disjoint(t1: OutTree, t2: OutTree, spec: TerminalSpec) -> Check:
    shared_arcs = set(t1.arcs) & set(t2.arcs)
    if shared_arcs:
        return Check(False, "shared_arc", min(shared_arcs))
    common = t1.vertices & t2.vertices
    extra = common - set(spec.terminals)
    if extra:
        return Check(False, "shared_vertex", min(extra))
    missing = set(spec.terminals) - common
    if missing:
        return Check(False, "missing_terminal", min(missing))
    return PASS


@dataclass
class FamilyReport:
    size: int
    tree_checks: list[Check]
    pair_failures: list[tuple[int, int, Check]]

    @property
    def valid(self) -> bool:
        return all(self.tree_checks) and not self.pair_failures

    def __bool__(self):
        return self.valid

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "size": self.size,
            "trees": [c.to_dict() for c in self.tree_checks],
            "pair_failures": [
                {"pair": [i, j], **c.to_dict()} for i, j, c in self.pair_failures
            ],
        }


def verify_family(f: TreeFamily) -> FamilyReport:
    checks = []
    for t in f.trees:
        if t.host != f.host:
            checks.append(Check(False, "foreign_host"))
        else:
            checks.append(is_pendant_tree(t, f.spec))
    failures = []
    for i, j in combinations(range(len(f.trees)), 2):
        c = are_internally_disjoint(f.trees[i], f.trees[j], f.spec)
        if not c:
            failures.append((i, j, c))
    return FamilyReport(len(f.trees), checks, failures)


def assemble_tree(host: Digraph, root: int, arcs: Iterable[Sequence[int]]) -> OutTree:
    """Validate that ``arcs`` form an arborescence rooted at ``root``.

    Extra arcs are rejected, never pruned.
    """
    parent: dict[int, int] = {}
    for arc in arcs:
        u, v = int(arc[0]), int(arc[1])
        if not host.has_arc(u, v):
            raise NotArborescence("arc_not_in_host", (u, v))
        if v == root:
            raise NotArborescence("root_has_parent", (u, v))
        if v in parent and parent[v] != u:
            raise NotArborescence("multiple_parents", v)
        parent[v] = u
    return OutTree(root, parent, host)


# serialization


def family_to_json(family: TreeFamily) -> str:
    return json.dumps(
        {"spec": family.spec.to_dict(), "trees": family.to_list()}, indent=1, sort_keys=True
    )


def family_from_dict(data, host: Digraph, spec: TerminalSpec | None = None) -> TreeFamily:
    """Accepts either a bare list of tree objects or ``{"spec", "trees"}``."""
    if isinstance(data, dict):
        spec = spec or TerminalSpec.from_dict(data["spec"])
        data = data["trees"]
    if spec is None:
        raise InvalidParameter("family JSON has no spec and none was given")
    return TreeFamily(host, spec, [OutTree.from_dict(t, host) for t in data])


PEN_COLORS = (
    "blue", "orange", "darkgreen", "red", "purple", "brown",
    "deeppink", "gray40", "olive", "cyan4", "gold3", "navy",
)


def family_to_dot(family: TreeFamily, name: str = "family", labels=None) -> str:
    """Host arcs in light gray, each tree in its own pen color, terminals filled."""
    label = labels or (lambda v: str(v))
    owner = {}
    for k, t in enumerate(family.trees):
        for arc in t.arcs:
            owner[arc] = k
    lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
    for v in family.host.vertices:
        style = ', style=filled, fillcolor="black", fontcolor="white"' if v in family.spec.terminals else ""
        lines.append(f'  {v} [label="{label(v)}"{style}];')
    for t, h in family.host.arcs:
        k = owner.get((t, h))
        if k is None:
            lines.append(f'  {t} -> {h} [color="gray85"];')
        else:
            color = PEN_COLORS[k % len(PEN_COLORS)]
            lines.append(f'  {t} -> {h} [color="{color}", penwidth=2, label="T{k + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
