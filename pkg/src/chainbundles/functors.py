"""Functors between instances, their action on bundles, and universal arrows."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .bundles import (
    BundleCategory,
    BundleMorphism,
    ChainBundle,
    Explicit,
    table_assignment,
)
from .core import DEFAULT_MAX_ENUM, Budget, Category, Morphism, compose
from .errors import FunctorDomainMismatch
from .instances.cyclic import CyclicGroups
from .instances.pointed import FinSets, PointedSets, finset, pointed
from .report import Report


@dataclass(frozen=True)
class FunctorSpec:
    name: str
    source: Category
    target: Category
    on_object: Callable
    on_morphism: Callable

    def __call__(self, x):
        if self.source.is_object(x):
            return self.obj(x)
        return self.morph(x)

    def obj(self, a):
        if not self.source.is_object(a):
            raise FunctorDomainMismatch(f"{a!s} is not an object of {self.source.name}")
        return self.on_object(a)

    def morph(self, f: Morphism) -> Morphism:
        if getattr(f, "cat", None) != self.source:
            raise FunctorDomainMismatch(f"{self.name} is defined on {self.source.name}, not {f.cat.name}")
        return self.on_morphism(f)


def forget_group(cyc: CyclicGroups | None = None, pts: PointedSets | None = None) -> FunctorSpec:
    """Finite cyclic groups to pointed sets: ``G -> (G, 0)`` and the underlying functions."""
    cyc = cyc or CyclicGroups()
    pts = pts or PointedSets()

    def on_object(a):
        elems = cyc.elements(a)
        return pointed(elems, elems[0])

    def on_morphism(f):
        dom, cod = on_object(f.dom), on_object(f.cod)
        return pts.function(dom, cod, {x: cyc.apply(f, x) for x in dom.carrier})

    return FunctorSpec("forget_group", cyc, pts, on_object, on_morphism)


def forget_basepoint(pts: PointedSets | None = None, sets: FinSets | None = None) -> FunctorSpec:
    """Pointed sets to sets."""
    pts = pts or PointedSets()
    sets = sets or FinSets()

    def on_morphism(f):
        return Morphism(finset(f.dom.carrier), finset(f.cod.carrier), f.data, sets)

    return FunctorSpec("forget_basepoint", pts, sets, lambda a: finset(a.carrier), on_morphism)


def identity_functor(cat: Category) -> FunctorSpec:
    return FunctorSpec("identity", cat, cat, lambda a: a, lambda f: f)


REGISTRY: dict[str, Callable[[], FunctorSpec]] = {
    "forget_group": forget_group,
    "forget_basepoint": forget_basepoint,
}


def lookup_functor(name: str, cat: Category | None = None) -> FunctorSpec:
    if name == "identity":
        if cat is None:
            raise FunctorDomainMismatch("the identity functor needs an instance")
        return identity_functor(cat)
    if name not in REGISTRY:
        raise KeyError(f"unknown functor {name!r}; known: identity, {', '.join(sorted(REGISTRY))}")
    return REGISTRY[name]()


# ---------------------------------------------------------------------------
# Action on bundles


def apply_functor_to_bundle(F: FunctorSpec, b: ChainBundle) -> ChainBundle:
    if b.cat != F.source:
        raise FunctorDomainMismatch(f"{F.name} is defined on {F.source.name}, not {b.cat.name}")
    objs = tuple(F.obj(a) for a in b.objects)
    sets = tuple(Explicit(tuple(F.morph(x) for x in b.elements(i))) for i in range(1, b.length + 1))
    return ChainBundle(F.target, objs, sets)


def apply_functor_to_bundle_morphism(F: FunctorSpec, m: BundleMorphism) -> BundleMorphism:
    src = apply_functor_to_bundle(F, m.source)
    tgt = apply_functor_to_bundle(F, m.target)
    L = m.length
    vertex = tuple(F.morph(m.f(i)) for i in range(L + 1))
    sig = []
    for i in range(1, L + 1):
        pairs = []
        for x in m.source.elements(i):
            y = m.assign(i, x)
            if y is not None:
                pairs.append((F.morph(x), F.morph(y)))
        sig.append(table_assignment(pairs))
    return BundleMorphism(src, tgt, vertex, tuple(sig))


def lift_to_bundles(F: FunctorSpec) -> FunctorSpec:
    """The functor induced on bundle categories."""
    return FunctorSpec(
        f"{F.name} on bundles",
        BundleCategory(F.source),
        BundleCategory(F.target),
        lambda b: apply_functor_to_bundle(F, b),
        lambda m: apply_functor_to_bundle_morphism(F, m),
    )


# ---------------------------------------------------------------------------
# Universal arrows


def verify_universal_arrow(
    F: FunctorSpec,
    d,
    c,
    g: Morphism,
    source_objects,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> Report:
    """Check that ``(c, g: d -> F c)`` is universal from ``d`` to ``F``.

    For every ``c'`` in ``source_objects`` and every ``g': d -> F c'`` there
    must be exactly one ``f: c -> c'`` with ``g ; F(f) == g'``.  The report
    names every ``(c', g')`` with zero or several witnesses.
    """
    budget = Budget(max_enum)
    r = Report()
    tgt = F.target
    r.add("candidate", "g : d -> F(c)", g.dom == d and g.cod == F.obj(c) and tgt.is_valid(g),
          f"{_fmt_obj(tgt, g.dom)} -> {_fmt_obj(tgt, g.cod)}: {_fmt_mor(tgt, g)}")
    if not r.ok:
        return r
    for cp in source_objects:
        Fc = F.obj(cp)
        gps = tgt.hom(d, Fc)
        fs = F.source.hom(c, cp)
        budget.spend(len(gps) * max(1, len(fs)))
        images = [compose(g, F.morph(f)) for f in fs]
        bad = 0
        for gp in gps:
            n = sum(1 for im in images if im == gp)
            if n != 1:
                bad += 1
                r.add(f"c'={_fmt_obj(F.source, cp)}", "unique f with g ; F(f) == g'", False,
                      f"g'={_fmt_mor(tgt, gp)}: {n} witnesses")
        if not bad:
            r.add(f"c'={_fmt_obj(F.source, cp)}", "unique f with g ; F(f) == g'", True,
                  f"{len(gps)} arrows g' checked")
    return r


def _compact(value) -> str:
    return value if isinstance(value, str) else json.dumps(value, sort_keys=True, separators=(",", ":"))


def _fmt_obj(cat, a):
    try:
        return _compact(cat.format_object(a))
    except Exception:  # noqa: BLE001 - presentation only
        return str(a)


def _fmt_mor(cat, f):
    try:
        return _compact(cat.format_morphism(f))
    except Exception:  # noqa: BLE001 - presentation only
        return str(f)


__all__ = [
    "FunctorSpec",
    "REGISTRY",
    "apply_functor_to_bundle",
    "apply_functor_to_bundle_morphism",
    "forget_basepoint",
    "forget_group",
    "identity_functor",
    "lift_to_bundles",
    "lookup_functor",
    "verify_universal_arrow",
]
