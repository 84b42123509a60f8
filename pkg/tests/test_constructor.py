import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import expected_case
from pendantpack.constructor import (
    FactorCertificates,
    certify,
    complete_symmetric_trees,
    construct,
    factor_specs,
    factor_tau3,
)
from pendantpack.digraph import Digraph, complete_symmetric, directed_cycle, min_semi_degree, random_strong
from pendantpack.errors import PreconditionViolated
from pendantpack.oracle import tau_S_r
from pendantpack.product import cartesian_product
from pendantpack.trees import TerminalSpec, assemble_tree, verify_family

K4, K5 = complete_symmetric(4), complete_symmetric(5)
PK5 = cartesian_product(K5, K5)


def _spec(p, *coords):
    ids = [p.encode(i, j) for i, j in coords]
    return TerminalSpec(tuple(ids), ids[0])


def _run(d, h, p, spec):
    return construct(d, h, p, spec, certify(d, h, p, spec))


def test_three_distinct_coordinates_on_k5():
    spec = _spec(PK5, (0, 0), (1, 1), (2, 2))
    family, trace = _run(K5, K5, PK5, spec)
    assert len(family) == 4 and verify_family(family).valid
    assert trace.case == "three_layers.h3"


def test_single_row_on_k5():
    spec = _spec(PK5, (0, 0), (0, 1), (0, 2))
    family, trace = _run(K5, K5, PK5, spec)
    assert len(family) == 4 and trace.case == "one_layer"
    row = {PK5.encode(0, j) for j in range(5)}
    assert all(t.vertices <= row for t in family.trees[:2])


def test_three_rows_one_column_reuses_d_trees():
    spec = _spec(PK5, (0, 3), (1, 3), (2, 3))
    family, trace = _run(K5, K5, PK5, spec)
    d_spec, _ = factor_specs(PK5, spec)
    lifted = [sorted((PK5.encode(u, 3), PK5.encode(v, 3)) for u, v in t.arcs)
              for t in complete_symmetric_trees(5, d_spec)]
    assert [t.arcs for t in family.trees[-2:]] == lifted


def test_complete_symmetric_certificates_are_optimal():
    for spec in [TerminalSpec((0, 1, 2), 0), TerminalSpec((1, 3, 4), 4)]:
        trees = complete_symmetric_trees(6, spec)
        assert len(trees) == 3 == tau_S_r(complete_symmetric(6), spec).value


def _all_cases_instances():
    d = random_strong(6, 0.85, 4)
    assert factor_tau3(d) >= 1
    return [(K4, K5), (K5, K4), (d, K4), (K4, d)]


@settings(max_examples=150)
@given(st.integers(0, 3), st.integers(0, 10**6))
def test_random_specs_verify_and_dispatch(pair, seed):
    d, h = _all_cases_instances()[pair]
    p = cartesian_product(d, h)
    rng = random.Random(seed)
    trio = rng.sample(range(p.graph.n), 3)
    spec = TerminalSpec(tuple(trio), trio[0])
    family, trace = _run(d, h, p, spec)
    assert len(family) == factor_tau3(d) + factor_tau3(h)
    assert verify_family(family).valid
    assert trace.case == expected_case([p.decode(v) for v in trio])


def test_trace_attributes_each_arc_once():
    for coords in [((0, 0), (1, 1), (2, 2)), ((0, 0), (0, 1), (1, 0)), ((0, 0), (1, 1), (1, 2))]:
        spec = _spec(PK5, *coords)
        family, trace = _run(K5, K5, PK5, spec)
        for tree, pieces in zip(family.trees, trace.provenance):
            arcs = [a for pc in pieces for a in pc.arcs]
            assert len(arcs) == len(set(arcs))
            assert sorted(arcs) == tree.arcs


def test_determinism():
    spec = _spec(PK5, (4, 0), (1, 0), (1, 3))
    a, ta = _run(K5, K5, PK5, spec)
    b, tb = _run(K5, K5, PK5, spec)
    assert [t.arcs for t in a.trees] == [t.arcs for t in b.trees]
    assert ta.to_dict()["trees"] == tb.to_dict()["trees"]


def test_bound_consistency_on_small_product():
    p = cartesian_product(K4, K4)
    rng = random.Random(0)
    for _ in range(6):
        trio = rng.sample(range(16), 3)
        spec = TerminalSpec(tuple(trio), trio[0])
        family, _ = _run(K4, K4, p, spec)
        assert tau_S_r(p.graph, spec).value >= len(family) == 2


def test_preconditions():
    c3 = directed_cycle(3)
    p = cartesian_product(c3, K5)
    spec = _spec(p, (0, 0), (1, 1), (2, 2))
    with pytest.raises(PreconditionViolated, match="semi-degree"):
        construct(c3, K5, p, spec, FactorCertificates(1, 2))
    with pytest.raises(PreconditionViolated, match="at least 1"):
        construct(c3, K5, p, spec, FactorCertificates(0, 2))
    spec = _spec(PK5, (0, 0), (1, 1), (2, 2))
    with pytest.raises(PreconditionViolated, match="certificate trees"):
        construct(K5, K5, PK5, spec, FactorCertificates(2, 2, None, None))
    good = certify(K5, K5, PK5, spec)
    clash = FactorCertificates(2, 2, [good.d_trees[0], good.d_trees[0]], good.h_trees)
    with pytest.raises(PreconditionViolated, match="overlap"):
        construct(K5, K5, PK5, spec, clash)
    wrong = FactorCertificates(2, 2, [assemble_tree(K5, 1, [(1, 3), (3, 0), (3, 2)])] * 2, good.h_trees)
    with pytest.raises(PreconditionViolated, match="not pendant"):
        construct(K5, K5, PK5, spec, wrong)
    with pytest.raises(PreconditionViolated, match="product"):
        construct(K5, K4, PK5, spec, good)


def test_connectivity_precondition():
    # semi-degree 3 but a 1-vertex cut: two K4's glued at a vertex
    arcs = [(i, j) for i in range(4) for j in range(4) if i != j]
    arcs += [(i, j) for i in range(3, 7) for j in range(3, 7) if i != j]
    d = Digraph(7, arcs)
    assert min_semi_degree(d) == 3
    p = cartesian_product(d, K5)
    with pytest.raises(PreconditionViolated, match="connectivity"):
        construct(d, K5, p, _spec(p, (0, 0), (1, 1), (2, 2)), FactorCertificates(1, 2))


def test_large_complete_product_is_fast():
    k = complete_symmetric(12)
    p = cartesian_product(k, k)
    spec = _spec(p, (0, 0), (0, 5), (7, 5))
    family, trace = _run(k, k, p, spec)
    assert len(family) == 18 and verify_family(family).valid
    assert set(trace.timings) == {"flow", "lifting", "assembly", "verification"}
