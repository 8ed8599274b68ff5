"""Functors, their lift to bundles, and universal arrows."""

from __future__ import annotations

import pytest

from chainbundles.bundles import (
    ChainBundle,
    compose_bundle_morphisms,
    enumerate_bundle_morphisms,
    identity_bundle_morphism,
    validate_bundle,
    validate_bundle_morphism,
)
from chainbundles.core import Universe, compose
from chainbundles.errors import FunctorDomainMismatch
from chainbundles.functors import (
    apply_functor_to_bundle,
    forget_basepoint,
    forget_group,
    identity_functor,
    lift_to_bundles,
    lookup_functor,
    verify_universal_arrow,
)
from chainbundles.instances import CyclicGroups, FinSets, PointedSets, Z, finset, pointed

CYC = CyclicGroups()
PTS = PointedSets()
SETS = FinSets()


def test_forget_group_on_example_bundle():
    c = ChainBundle.from_levels(CYC, [Z(3), Z(6), Z(2)])
    U = forget_group()
    fc = apply_functor_to_bundle(U, c)
    assert validate_bundle(fc).ok
    assert [len(fc.obj(i).carrier) for i in (3, 2, 1, 0)] == [3, 6, 2, 1]
    assert all(fc.obj(i).base == 0 for i in range(4))
    assert [len(fc.elements(i)) for i in (1, 2, 3)] == [1, 2, 3]
    # underlying functions are the element tables
    x = c.elements(3)[1]
    fx = fc.elements(3)[1]
    assert PTS.table(fx) == {e: CYC.apply(x, e) for e in range(3)}


def test_functor_laws_on_cyclic_morphisms():
    U = forget_group()
    objs = [Z(1), Z(2), Z(3), Z(4), Z(6)]
    for a in objs:
        assert U(CYC.identity(a)) == PTS.identity(U(a))
        for b in objs:
            for f in CYC.hom(a, b):
                for c in objs:
                    for g in CYC.hom(b, c):
                        assert U(compose(f, g)) == compose(U(f), U(g))


def test_functor_rejects_wrong_instance():
    with pytest.raises(FunctorDomainMismatch):
        forget_group().morph(PTS.identity(pointed(["*"], "*")))
    with pytest.raises(FunctorDomainMismatch):
        apply_functor_to_bundle(forget_basepoint(), ChainBundle.from_levels(CYC, [Z(2)]))


def test_lookup():
    assert lookup_functor("forget_group").name == "forget_group"
    assert lookup_functor("identity", CYC).source is CYC
    with pytest.raises(KeyError):
        lookup_functor("nope")


def test_lifted_functor_preserves_bundle_structure():
    U = lift_to_bundles(forget_group())
    bs = [ChainBundle.from_levels(CYC, [Z(2), Z(2)]), ChainBundle.from_levels(CYC, [Z(4), Z(2)])]
    for a in bs:
        assert U(identity_bundle_morphism(a)) == identity_bundle_morphism(U(a))
        for b in bs:
            for f in enumerate_bundle_morphisms(a, b):
                assert validate_bundle_morphism(U(f)).ok
                for c in bs:
                    for g in enumerate_bundle_morphisms(b, c):
                        assert U(compose_bundle_morphisms(f, g)) == compose_bundle_morphisms(U(f), U(g))


def _psets():
    return [pointed(["*"] + [f"p{i}" for i in range(k)], "*") for k in range(3)]


@pytest.mark.parametrize("k", range(3))
def test_adjoining_a_basepoint_is_universal(k):
    labels = [f"a{i}" for i in range(k)]
    d = finset(labels)
    c = pointed(["*"] + labels, "*")
    g = SETS.function(d, finset(c.carrier), {x: x for x in labels})
    r = verify_universal_arrow(forget_basepoint(), d, c, g, _psets())
    assert r.ok, [f.as_dict() for f in r.failures()]


def test_collapsing_arrow_is_not_universal():
    d = finset(["a"])
    c = pointed(["*", "a"], "*")
    g = SETS.function(d, finset(c.carrier), {"a": "*"})
    r = verify_universal_arrow(forget_basepoint(), d, c, g, _psets())
    assert not r.ok
    # g' = (a -> p0) into {*, p0} has no factorization through the collapse
    assert any("0 witnesses" in f.witness for f in r.failures())


def test_identity_arrow_is_universal_for_identity_functor():
    u = Universe(CYC, [Z(1), Z(2), Z(3), Z(4), Z(6)])
    for c in u.objects:
        r = verify_universal_arrow(identity_functor(CYC), c, c, CYC.identity(c), u.objects)
        assert r.ok


def test_malformed_candidate_is_reported():
    d = finset(["a"])
    c = pointed(["*", "a", "b"], "*")
    g = SETS.function(d, finset(["*", "a"]), {"a": "a"})
    r = verify_universal_arrow(forget_basepoint(), d, c, g, _psets())
    assert [f.location for f in r.failures()] == ["candidate"]
