"""Cartesian product digraphs, their layers, projections and lifting.

Product vertex ``(i, j)`` (``i`` in the first factor D, ``j`` in the second
factor H) has flat id ``i * m + j`` where ``m = |V(H)|``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .digraph import Digraph
from .errors import InvalidParameter, InvalidVertex
from .maxflow import DirectedPath
from .trees import OutTree

D_LAYER, H_LAYER = "D", "H"


@dataclass(frozen=True)
class ProductDigraph:
    graph: Digraph
    n: int
    m: int

    @property
    def factor_sizes(self) -> tuple[int, int]:
        return (self.n, self.m)

    def encode(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.m):
            raise InvalidVertex(f"coordinate ({i}, {j}) outside {self.n}x{self.m}")
        return i * self.m + j

    def decode(self, v: int) -> tuple[int, int]:
        self.graph.check_vertex(v)
        return divmod(v, self.m)

    def coordinate_map(self) -> dict[str, list[int]]:
        return {str(v): list(self.decode(v)) for v in self.graph.vertices}


@dataclass(frozen=True)
class Layer:
    """Copy of a factor inside the product: ``vertices[k]`` is the image of
    factor vertex ``k``. Kind ``D`` at H-vertex ``index`` or kind ``H`` at
    D-vertex ``index``."""

    kind: str
    index: int
    vertices: tuple[int, ...]

    def image(self, factor_vertex: int) -> int:
        return self.vertices[factor_vertex]

    def preimage(self, product_vertex: int) -> int:
        try:
            return self.vertices.index(product_vertex)
        except ValueError:
            raise InvalidVertex(f"{product_vertex} is not in layer {self.kind}{self.index}") from None


@dataclass(frozen=True)
class Projection:
    s_D: tuple[int, ...]
    s_H: tuple[int, ...]
    mult_D: dict[int, int]
    mult_H: dict[int, int]


def cartesian_product(d: Digraph, h: Digraph) -> ProductDigraph:
    n, m = d.n, h.n
    if n < 1 or m < 1:
        raise InvalidParameter("both factors need at least one vertex")
    arcs = [(i * m + j, k * m + j) for i, k in d.arcs for j in range(m)]
    arcs += [(i * m + j, i * m + k) for j, k in h.arcs for i in range(n)]
    return ProductDigraph(Digraph(n * m, arcs), n, m)


def layer_D(p: ProductDigraph, j: int) -> Layer:
    """The copy of D at H-vertex ``j``."""
    if not 0 <= j < p.m:
        raise InvalidVertex(f"H-vertex {j} outside [0, {p.m})")
    return Layer(D_LAYER, j, tuple(i * p.m + j for i in range(p.n)))


def layer_H(p: ProductDigraph, i: int) -> Layer:
    """The copy of H at D-vertex ``i``."""
    if not 0 <= i < p.n:
        raise InvalidVertex(f"D-vertex {i} outside [0, {p.n})")
    return Layer(H_LAYER, i, tuple(i * p.m + j for j in range(p.m)))


def layer(p: ProductDigraph, kind: str, index: int) -> Layer:
    if kind == D_LAYER:
        return layer_D(p, index)
    if kind == H_LAYER:
        return layer_H(p, index)
    raise InvalidParameter(f"layer kind must be 'D' or 'H', got {kind!r}")


def layer_subdigraph(p: ProductDigraph, lay: Layer) -> Digraph:
    """Induced subdigraph on a layer, relabelled to factor ids."""
    index = {v: k for k, v in enumerate(lay.vertices)}
    arcs = [(index[t], index[h]) for t, h in p.graph.arcs if t in index and h in index]
    return Digraph(len(lay.vertices), arcs)


def project(p: ProductDigraph, s: Iterable[int]) -> Projection:
    coords = [p.decode(v) for v in s]
    mult_D = Counter(i for i, _ in coords)
    mult_H = Counter(j for _, j in coords)
    return Projection(tuple(sorted(mult_D)), tuple(sorted(mult_H)), dict(mult_D), dict(mult_H))


def lift_path_to_D_layer(p: ProductDigraph, path: DirectedPath, j: int) -> DirectedPath:
    lay = layer_D(p, j)
    return DirectedPath(tuple(lay.image(_factor_vertex(v, p.n)) for v in path.vertices))


def lift_path_to_H_layer(p: ProductDigraph, path: DirectedPath, i: int) -> DirectedPath:
    lay = layer_H(p, i)
    return DirectedPath(tuple(lay.image(_factor_vertex(v, p.m)) for v in path.vertices))


def lift_tree_to_layer(p: ProductDigraph, tree: OutTree, kind: str, index: int) -> OutTree:
    """Image of a factor out-tree in the layer ``kind`` at ``index``."""
    lay = layer(p, kind, index)
    size = p.n if kind == D_LAYER else p.m
    if tree.host.n != size:
        raise InvalidVertex(f"tree host has {tree.host.n} vertices, layer has {size}")
    parent = {lay.image(v): lay.image(u) for v, u in tree.parent.items()}
    return OutTree(lay.image(tree.root), parent, p.graph)


def project_tree(p: ProductDigraph, tree: OutTree, factor: Digraph, kind: str) -> OutTree:
    """Inverse of :func:`lift_tree_to_layer` for a tree lying inside one layer."""
    axis = 0 if kind == D_LAYER else 1
    coords = {v: p.decode(v) for v in tree.vertices}
    fixed = {c[1 - axis] for c in coords.values()}
    if len(fixed) != 1:
        raise InvalidVertex("tree is not contained in a single layer")
    parent = {coords[v][axis]: coords[u][axis] for v, u in tree.parent.items()}
    return OutTree(coords[tree.root][axis], parent, factor)


def _factor_vertex(v: int, size: int) -> int:
    if not 0 <= v < size:
        raise InvalidVertex(f"factor vertex {v} outside [0, {size})")
    return v
