"""Acceptance gate. Each criterion prints one PASS/FAIL line in the
terminal summary (see conftest)."""

import itertools
import math
import random
import time

import pytest

from helpers import ALL_CASES, brute_separator_size, edmonds_karp, expected_case
from pendantpack import (
    TerminalSpec,
    bidirected_path,
    cartesian_product,
    certify,
    complete_symmetric,
    construct,
    directed_cycle,
    random_strong,
    tau3,
    tau_S_r,
    verify_family,
)
from pendantpack.cli import bench_rows
from pendantpack.constructor import factor_tau3
from pendantpack.digraph import is_strong, min_semi_degree, vertex_connectivity
from pendantpack.errors import PathsNotFound
from pendantpack.maxflow import FlowNetwork, dinic_max_flow, fan_is_valid, find_fan, find_iddp
from pendantpack.oracle import check_necessary_conditions, enumerate_minimal_pendant_trees

PRODUCT_BOUND = 16


def _corpus_factors():
    """K4, K5 and seeded random strong digraphs (n = 5, 6) with tau_3 >= 1."""
    pool = [("K4", complete_symmetric(4)), ("K5", complete_symmetric(5))]
    seed = 0
    while len(pool) < 12:
        n = 5 + seed % 2
        d = random_strong(n, 0.8, 1000 + seed)
        seed += 1
        if min_semi_degree(d) >= 3 and factor_tau3(d) >= 1:
            pool.append((f"R{n}s{1000 + seed - 1}", d))
    return pool


@pytest.fixture(scope="module")
def corpus():
    return _corpus_factors()


@pytest.mark.criterion(1, "sharpness: tau3(P3 x C3) = tau3(P4 x C3) = 0")
@pytest.mark.parametrize("n", [3, 4])
def test_sharpness(n):
    t0 = time.perf_counter()
    p = cartesian_product(bidirected_path(n), directed_cycle(3))
    assert tau3(p.graph).value == 0
    spec = TerminalSpec((p.encode(0, 0), p.encode(0, 1), p.encode(1, 0)), p.encode(0, 0))
    result = tau_S_r(p.graph, spec)
    assert result.value == 0
    assert enumerate_minimal_pendant_trees(p.graph, spec) == []
    assert time.perf_counter() - t0 < 60


def _small_factors():
    out = [complete_symmetric(4), complete_symmetric(3), directed_cycle(3), directed_cycle(4),
           bidirected_path(3), bidirected_path(4)]
    for seed in range(40):
        n = 3 + seed % 2
        out.append(random_strong(n, 0.75, seed))
    return out


@pytest.mark.criterion(2, "product lower bound tau3(DxH) >= tau3(D) + tau3(H), >= 30 pairs")
def test_product_lower_bound():
    t0 = time.perf_counter()
    factors = _small_factors()
    rng = random.Random(2024)
    pairs = [(factors[0], factors[0]), (factors[0], factors[2]), (factors[0], factors[4])]
    while len(pairs) < 36:
        pairs.append((rng.choice(factors), rng.choice(factors)))
    checked = 0
    nontrivial = 0
    for d, h in pairs:
        assert is_strong(d) and is_strong(h) and d.n <= 4 and h.n <= 4
        p = cartesian_product(d, h)
        assert p.graph.n <= PRODUCT_BOUND
        lhs = tau3(p.graph, max_vertices=PRODUCT_BOUND).value
        rhs = tau3(d).value + tau3(h).value
        assert lhs >= rhs, (d.arcs, h.arcs, lhs, rhs)
        nontrivial += rhs > 0
        checked += 1
    assert checked >= 30 and nontrivial >= 1
    assert time.perf_counter() - t0 < 600


def _stratified_specs(p, rng, count):
    """At least a few triples per reachable branch, the rest uniform."""
    by_case = {}
    vertices = list(range(p.graph.n))
    for _ in range(4000):
        trio = rng.sample(vertices, 3)
        coords = [p.decode(v) for v in trio]
        by_case.setdefault(expected_case(coords), []).append(tuple(trio))
    chosen = []
    for case in ALL_CASES:
        chosen += by_case.get(case, [])[:4]
    flat = [t for ts in by_case.values() for t in ts]
    while len(chosen) < count:
        chosen.append(rng.choice(flat))
    return chosen


@pytest.mark.criterion(3, "constructor returns l+h verified trees, >= 100 instances x >= 50 triples")
def test_constructor_corpus(corpus):
    t0 = time.perf_counter()
    rng = random.Random(3)
    pairs = list(itertools.product(corpus, corpus))
    assert len(pairs) >= 100
    seen_cases = set()
    runs = 0
    for (dn, d), (hn, h) in pairs:
        p = cartesian_product(d, h)
        ell, hh = factor_tau3(d), factor_tau3(h)
        assert ell >= 1 and hh >= 1
        for trio in _stratified_specs(p, rng, 50):
            spec = TerminalSpec(trio, trio[0])
            family, trace = construct(d, h, p, spec, certify(d, h, p, spec))
            assert len(family) == ell + hh
            assert verify_family(family).valid
            assert trace.case == expected_case([p.decode(v) for v in trio])
            seen_cases.add(trace.case)
            runs += 1
    assert runs >= 5000
    assert seen_cases == set(ALL_CASES)
    assert time.perf_counter() - t0 < 900


@pytest.mark.criterion(4, "tau3(K_n) = n - 3 for n = 4..7")
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_complete_symmetric_baseline(n):
    t0 = time.perf_counter()
    result = tau3(complete_symmetric(n))
    assert result.value == n - 3
    assert verify_family(result.family).valid and len(result.family) == n - 3
    assert time.perf_counter() - t0 < 300


@pytest.mark.criterion(5, "Dinic agrees with Edmonds-Karp on >= 1000 random networks")
def test_dinic_against_reference():
    t0 = time.perf_counter()
    rng = random.Random(5)
    for _ in range(1000):
        size = rng.randint(2, 50)
        edges = []
        for _ in range(rng.randint(0, 4 * size)):
            t, h = rng.randrange(size), rng.randrange(size)
            if t != h:
                edges.append((t, h, rng.randint(0, 5)))
        s, t = rng.sample(range(size), 2)
        value, flow = dinic_max_flow(FlowNetwork(size, edges, s, t))
        assert value == edmonds_karp(size, edges, s, t)
    assert time.perf_counter() - t0 < 120


def _menger_hosts():
    rng = random.Random(6)
    hosts = []
    while len(hosts) < 100:
        n = rng.randint(3, 6)
        hosts.append(random_strong(n, rng.uniform(0.3, 0.9), rng.randrange(10**6)))
    return hosts


@pytest.mark.criterion(6, "Menger and fan agreement on 100 strong digraphs, n <= 6")
def test_menger_and_fan():
    t0 = time.perf_counter()
    for d in _menger_hosts():
        for u, v in itertools.permutations(d.vertices, 2):
            if d.has_arc(u, v):
                continue
            achievable = 0
            while True:
                try:
                    find_iddp(d, u, v, achievable + 1)
                except PathsNotFound:
                    break
                achievable += 1
            assert achievable == brute_separator_size(d.n, d.arcs, u, v)
        kappa = vertex_connectivity(d)
        for u in d.vertices:
            others = [w for w in d.vertices if w != u]
            for z in itertools.combinations(others, kappa):
                fan = find_fan(d, z, u)
                assert fan_is_valid(fan, d) and fan.starts() == list(z)
    assert time.perf_counter() - t0 < 600


@pytest.mark.criterion(7, "necessary conditions: kappa >= l+1 and min semi-degree >= l+2")
def test_necessary_conditions(corpus):
    for _, d in corpus:
        top = tau3(d).value
        for ell in range(1, top + 1):
            report = check_necessary_conditions(d, ell)
            assert report.connectivity >= ell + 1
            assert report.min_semi_degree >= ell + 2
            assert report.ok


@pytest.mark.criterion(8, "K20 x K20 construct < 5 s and polynomial bench growth")
def test_performance_contract():
    k = complete_symmetric(20)
    p = cartesian_product(k, k)
    spec = TerminalSpec((p.encode(0, 0), p.encode(1, 1), p.encode(2, 2)), p.encode(0, 0))
    t0 = time.perf_counter()
    family, _ = construct(k, k, p, spec, certify(k, k, p, spec))
    elapsed = time.perf_counter() - t0
    assert len(family) == 34 and elapsed < 5.0

    rows = bench_rows([5, 10, 15, 20], repeats=5)
    totals = [r["total_s"] for r in rows]
    assert all(b >= a for a, b in zip(totals, totals[1:]))
    xs = [math.log(r["n"]) for r in rows]
    ys = [math.log(t) for t in totals]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    assert slope < 5, slope
