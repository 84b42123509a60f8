import pytest
from hypothesis import given, strategies as st

from pendantpack.digraph import bidirected_path, complete_symmetric, directed_cycle, random_strong
from pendantpack.errors import InvalidParameter, InvalidVertex
from pendantpack.maxflow import DirectedPath
from pendantpack.product import (
    cartesian_product,
    layer,
    layer_D,
    layer_H,
    layer_subdigraph,
    lift_path_to_D_layer,
    lift_path_to_H_layer,
    lift_tree_to_layer,
    project,
    project_tree,
)
from pendantpack.trees import assemble_tree

factors = st.builds(random_strong, st.integers(1, 5), st.floats(0.2, 1.0), st.integers(0, 10**6))


@given(factors, factors)
def test_arc_count_and_coordinates(d, h):
    p = cartesian_product(d, h)
    assert p.graph.n == d.n * h.n
    assert len(p.graph.arcs) == d.n * len(h.arcs) + h.n * len(d.arcs)
    for v in p.graph.vertices:
        assert p.encode(*p.decode(v)) == v
    for t, e in p.graph.arcs:
        (i, j), (k, l) = p.decode(t), p.decode(e)
        assert (j == l and d.has_arc(i, k)) or (i == k and h.has_arc(j, l))


@given(factors, factors)
def test_layers_are_factor_copies(d, h):
    p = cartesian_product(d, h)
    for j in h.vertices:
        assert layer_subdigraph(p, layer_D(p, j)) == d
    for i in d.vertices:
        assert layer_subdigraph(p, layer_H(p, i)) == h


def test_example_product_size():
    p = cartesian_product(bidirected_path(4), directed_cycle(3))
    assert p.graph.n == 12 and len(p.graph.arcs) == 30
    assert p.factor_sizes == (4, 3)
    assert p.coordinate_map()["5"] == [1, 2]


def test_layer_lookup_and_errors():
    p = cartesian_product(complete_symmetric(3), directed_cycle(4))
    lay = layer(p, "H", 2)
    assert lay.vertices == (8, 9, 10, 11) and lay.preimage(10) == 2 and lay.image(3) == 11
    with pytest.raises(InvalidVertex):
        lay.preimage(0)
    with pytest.raises(InvalidParameter):
        layer(p, "X", 0)
    with pytest.raises(InvalidVertex):
        p.encode(3, 0)


def test_projection_multiplicities():
    p = cartesian_product(complete_symmetric(3), complete_symmetric(3))
    proj = project(p, [p.encode(0, 0), p.encode(0, 1), p.encode(2, 1)])
    assert proj.s_D == (0, 2) and proj.s_H == (0, 1)
    assert proj.mult_D == {0: 2, 2: 1} and proj.mult_H == {0: 1, 1: 2}


def test_lifting_paths_and_trees_roundtrip():
    d, h = complete_symmetric(4), directed_cycle(3)
    p = cartesian_product(d, h)
    path = DirectedPath((0, 2, 3))
    lifted = lift_path_to_D_layer(p, path, 1)
    assert lifted.vertices == (1, 7, 10) and lifted.is_valid_in(p.graph)
    hp = lift_path_to_H_layer(p, DirectedPath((2, 0)), 3)
    assert hp.vertices == (11, 9)
    tree = assemble_tree(d, 0, [(0, 1), (1, 2), (1, 3)])
    for j in h.vertices:
        up = lift_tree_to_layer(p, tree, "D", j)
        assert up.arcs == sorted((p.encode(a, j), p.encode(b, j)) for a, b in tree.arcs)
        assert project_tree(p, up, d, "D") == tree
    with pytest.raises(InvalidVertex):
        lift_tree_to_layer(p, tree, "H", 0)
