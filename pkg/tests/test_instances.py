"""Instance-specific behaviour: pointed sets, path categories, free modules, ordinals."""

from __future__ import annotations

from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainbundles.bundles import (
    ChainBundle,
    enumerate_bundle_morphisms,
    extract_chains,
    kernel_of_bundle_morphism,
    product_bundles,
    validate_bundle,
    validate_bundle_morphism,
    verify_kernel,
    verify_product,
)
from chainbundles.core import compose
from chainbundles.errors import ExplosionGuard, NonComposable
from chainbundles.instances import DeltaPlus, FreeModule, FreeZ, Graph, Ordinal, PathCategory, PointedSets, pointed
from chainbundles.instances.paths import (
    compose_graph_maps,
    enumerate_paths,
    graph_bundle,
    graph_bundle_map,
    identity_graph_map,
    validate_graph_bundle,
    validate_graph_bundle_map,
)

import oracles

VERTICES = ("v1", "v2", "v3", "v4", "v5", "v6")
EDGES = (("v1", "v2"), ("v2", "v4"), ("v2", "v3"), ("v4", "v5"), ("v3", "v5"), ("v4", "v6"))
GRAPH = Graph(VERTICES, EDGES)

# ---------------------------------------------------------------------------
# pointed sets

PTS = PointedSets()


def _pset(k):
    return pointed(["*"] + [f"a{i}" for i in range(k)], "*")


@pytest.mark.parametrize("k", range(4))
def test_pointed_hom_count(k):
    for m in range(4):
        a, b = _pset(k), _pset(m)
        homs = PTS.hom(a, b)
        brute = [
            t for t in cartesian(b.carrier, repeat=len(a.carrier))
            if dict(zip(a.carrier, t))["*"] == "*"
        ]
        assert len(homs) == len(brute) == (m + 1) ** k


def test_pointed_kernel_and_cokernel_by_tables():
    a, b = _pset(3), _pset(2)
    for f in PTS.hom(a, b):
        t = PTS.table(f)
        k = PTS.kernel(f)
        assert set(k.dom.carrier) == {x for x in a.carrier if t[x] == "*"}
        q = PTS.cokernel(f)
        assert len(q.cod.carrier) == len(set(b.carrier) - set(t.values())) + 1
        assert PTS.is_zero_morphism(compose(f, q))


def test_pointed_hom_guard():
    small = PointedSets()
    small.max_hom = 10
    with pytest.raises(ExplosionGuard):
        small.hom(_pset(3), _pset(3))


def test_pointed_bundle_product_and_kernel():
    c = ChainBundle.from_levels(PTS, [_pset(1), _pset(1)])
    d = ChainBundle.from_levels(PTS, [_pset(2), _pset(0)])
    prod, p1, p2 = product_bundles(c, d)
    assert validate_bundle(prod).ok
    assert len(prod.obj(2).carrier) == 2 * 3
    for F in enumerate_bundle_morphisms(c, c):
        for G in enumerate_bundle_morphisms(c, d):
            assert verify_product(prod, p1, p2, F, G).ok
    for F in enumerate_bundle_morphisms(c, d):
        a, K = kernel_of_bundle_morphism(F)
        assert verify_kernel(F, K, [a, c, d]).ok


# ---------------------------------------------------------------------------
# path categories and graph chain bundles


def test_paths_ending_at_v5_match_walk_oracle():
    b = enumerate_paths(GRAPH, "v5")
    assert set(b.paths) == oracles.walks_into(VERTICES, EDGES, "v5", 5)
    assert len(b.paths) == 7
    assert ("v2", "v3", "v5") in b.paths
    assert validate_graph_bundle(b).ok


@pytest.mark.parametrize("end", VERTICES)
@pytest.mark.parametrize("max_len", [0, 1, 2, 5])
def test_path_enumeration_every_vertex(end, max_len):
    b = enumerate_paths(GRAPH, end, max_len)
    assert set(b.paths) == oracles.walks_into(VERTICES, EDGES, end, max_len)


def test_cyclic_graph_needs_bound():
    g = Graph(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(ExplosionGuard):
        enumerate_paths(g, "a")
    assert set(enumerate_paths(g, "a", 3).paths) == oracles.walks_into(("a", "b"), g.edges, "a", 3)


def test_path_category_laws():
    pc = PathCategory(GRAPH)
    p = pc.path(["v1", "v2"])
    q = pc.path(["v2", "v4", "v5"])
    assert compose(p, q) == pc.path(["v1", "v2", "v4", "v5"])
    assert compose(pc.identity("v1"), p) == p
    with pytest.raises(NonComposable):
        compose(q, p)
    assert len(pc.hom("v1", "v5")) == 2
    assert pc.hom("v5", "v1") == []


def _bundles():
    c_v2 = graph_bundle(GRAPH, "v2", [("v1", "v2"), ("v2",)])
    c_v5 = enumerate_paths(GRAPH, "v5")
    listed = graph_bundle(GRAPH, "v5", [
        ("v1", "v2", "v4", "v5"), ("v1", "v2", "v3", "v5"), ("v2", "v4", "v5"), ("v4", "v5"), ("v3", "v5"), ("v5",),
    ])
    return c_v2, c_v5, listed


def test_graph_maps_into_enumerated_bundle():
    c_v2, c_v5, listed = _bundles()
    f1 = graph_bundle_map(c_v2, c_v5, [("v2", "v4", "v5")])
    f2 = graph_bundle_map(c_v2, c_v5, [("v2", "v3", "v5")])
    assert validate_graph_bundle_map(f1).ok and validate_graph_bundle_map(f2).ok
    assert f2.action() == [(("v1", "v2"), ("v1", "v2", "v3", "v5")), (("v2",), ("v2", "v3", "v5"))]
    # the six listed paths omit v2 v3 v5, which f2 needs
    r = validate_graph_bundle_map(graph_bundle_map(c_v2, listed, [("v2", "v3", "v5")]))
    assert [f.witness for f in r.failures()] == ["v2v3v5"]


def test_mutated_graph_map_has_witness():
    c_v2, c_v5, _ = _bundles()
    r = validate_graph_bundle_map(graph_bundle_map(c_v2, c_v5, [("v4", "v5")]))
    assert not r.ok
    assert any("v2 ends at v2 but v4v5 starts at v4" in f.witness for f in r.failures())


def test_graph_map_composition():
    c_v2, c_v5, _ = _bundles()
    c_v1 = graph_bundle(GRAPH, "v1", [("v1",)])
    g = graph_bundle_map(c_v1, c_v2, [("v1", "v2")])
    f = graph_bundle_map(c_v2, c_v5, [("v2", "v4", "v5")])
    h = compose_graph_maps(g, f)
    assert h.paths == (("v1", "v2", "v4", "v5"),)
    assert validate_graph_bundle_map(h).ok
    assert compose_graph_maps(identity_graph_map(c_v2), f) == f
    with pytest.raises(NonComposable):
        compose_graph_maps(f, g)


# ---------------------------------------------------------------------------
# free modules

FREE = FreeZ()


def test_freez_hom_window():
    a, b = FreeModule(("a",)), FreeModule(("x", "y"))
    homs = FREE.hom(a, b)
    w = FREE.window
    assert len(homs) == (2 * w + 1) ** 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_freez_composition_is_matrix_product(r1, r2):
    a, b = FreeModule(("a", "b")), FreeModule(("x", "y"))
    f = FREE.matrix(a, b, [r1, r2])
    g = FREE.matrix(b, a, [r2, r1])
    h = compose(f, g)
    expect = [[sum(g.data[i][k] * f.data[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert [list(r) for r in h.data] == expect


# ---------------------------------------------------------------------------
# augmented simplex category

DP = DeltaPlus()


def test_delta_bundle_chains_are_plain_selections():
    b = ChainBundle.from_levels(DP, [Ordinal(1), Ordinal(2)], base=Ordinal(0))
    assert validate_bundle(b).ok
    assert len(extract_chains(b, "plain")) == len(oracles.monotone_maps(1, 2))


def test_delta_bundle_morphisms_validate():
    b = ChainBundle.from_levels(DP, [Ordinal(0), Ordinal(1)], base=Ordinal(0))
    ms = enumerate_bundle_morphisms(b, b)
    assert ms
    assert all(validate_bundle_morphism(m).ok for m in ms)
