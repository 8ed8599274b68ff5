"""Chain bundles over a category instance and the morphisms between them.

A chain bundle ``M_L -S_L-> ... -S_2-> M_1 -S_1-> M_0`` is stored bottom-up:
``objects[i]`` is ``M_i`` and ``sets[i - 1]`` is ``S_i``, a set of arrows
``M_i -> M_{i-1}``.  Levels above ``L`` are implicitly the zero object with
the zero arrow, so bundles of different lengths can be compared and paired.

A bundle morphism ``c -> d`` has vertex maps ``f_i: M_i -> N_i`` and, per
level, an assignment ``sigma_i: S_i -> T_i`` witnessing the squares
``x ; f_{i-1} == f_i ; sigma_i(x)`` (composition is "first, then").  Two
bundle morphisms are equal when they have the same source, target and vertex
maps; the assignments are witnesses and do not take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable

from .core import DEFAULT_MAX_ENUM, Budget, Category, Morphism, compose
from .errors import (
    ChainBundleError,
    CokernelsUnsupported,
    ExplosionGuard,
    InstanceMismatch,
    KernelsUnsupported,
    NoImage,
    NonComposable,
    SourceMismatch,
    Unsupported,
)
from .report import Report

ALL = "ALL"
TABLE = "table"
FORCED = "forced"
MULTIPLIER = "multiplier"


# ---------------------------------------------------------------------------
# Morphism sets


class MorphismSet:
    """A set ``S_i`` of arrows between two fixed objects."""

    def elements(self, cat: Category, dom, cod) -> list[Morphism]:
        raise NotImplementedError

    def contains(self, cat: Category, dom, cod, x: Morphism) -> bool:
        raise NotImplementedError

    def is_finite(self, cat: Category) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Explicit(MorphismSet):
    morphisms: tuple

    def elements(self, cat, dom, cod):
        return list(self.morphisms)

    def contains(self, cat, dom, cod, x):
        return x in self.morphisms

    def is_finite(self, cat):
        return True


@dataclass(frozen=True)
class AllHom(MorphismSet):
    """The whole hom-set; enumerated through the instance."""

    def elements(self, cat, dom, cod):
        return cat.hom(dom, cod)

    def contains(self, cat, dom, cod, x):
        return x.dom == dom and x.cod == cod and cat.is_valid(x)

    def is_finite(self, cat):
        return cat.complete_homs


@dataclass(frozen=True)
class PairSet(MorphismSet):
    """``S' x S``: the arrows ``x' x x`` between product objects."""

    left: MorphismSet
    right: MorphismSet
    left_dom: object
    left_cod: object
    right_dom: object
    right_cod: object

    def elements(self, cat, dom, cod):
        ls = self.left.elements(cat, self.left_dom, self.left_cod)
        rs = self.right.elements(cat, self.right_dom, self.right_cod)
        return [cat.product_map(a, b) for a in ls for b in rs]

    def split(self, cat, x):
        return cat.split_product_map(x, self.left_dom, self.right_dom, self.left_cod, self.right_cod)

    def contains(self, cat, dom, cod, x):
        if x.dom != dom or x.cod != cod or not cat.is_valid(x):
            return False
        parts = self.split(cat, x)
        if parts is None:
            return False
        a, b = parts
        return self.left.contains(cat, self.left_dom, self.left_cod, a) and self.right.contains(
            cat, self.right_dom, self.right_cod, b
        )

    def is_finite(self, cat):
        return self.left.is_finite(cat) and self.right.is_finite(cat)


def as_morphism_set(spec) -> MorphismSet:
    if isinstance(spec, MorphismSet):
        return spec
    if spec == ALL:
        return AllHom()
    out = []
    for x in spec:
        if x not in out:
            out.append(x)
    return Explicit(tuple(out))


# ---------------------------------------------------------------------------
# Chain bundles


@dataclass(frozen=True, eq=False)
class ChainBundle:
    cat: Category
    objects: tuple  # M_0 .. M_L
    sets: tuple  # S_1 .. S_L

    def __post_init__(self):
        if len(self.objects) < 2:
            raise ValueError("a chain bundle needs at least one level above the base")
        if len(self.sets) != len(self.objects) - 1:
            raise ValueError("one morphism set per level is required")

    @classmethod
    def from_levels(cls, cat: Category, levels, sets=None, base=None) -> "ChainBundle":
        """Build from objects listed top level first (``M_L, ..., M_1``).

        ``sets`` lists ``S_L, ..., S_2`` (``S_1`` then defaults to ``ALL``) or
        ``S_L, ..., S_1``; each entry is ``ALL``, a list of morphisms or a
        :class:`MorphismSet`.  ``base`` defaults to the zero object.
        """
        levels = list(levels)
        if base is None:
            base = cat.zero_object()
        objects = (base,) + tuple(reversed(levels))
        L = len(levels)
        sets = [ALL] * L if sets is None else list(sets)
        if len(sets) == L - 1:
            sets = sets + [ALL]
        if len(sets) != L:
            raise ValueError(f"expected {L - 1} or {L} morphism sets, got {len(sets)}")
        return cls(cat, objects, tuple(as_morphism_set(s) for s in reversed(sets)))

    @property
    def length(self) -> int:
        return len(self.objects) - 1

    @property
    def base(self):
        return self.objects[0]

    def obj(self, i: int):
        if i < len(self.objects):
            return self.objects[i]
        return self.cat.zero_object()

    def mset(self, i: int) -> MorphismSet:
        if i <= self.length:
            return self.sets[i - 1]
        return Explicit((self.cat.zero_morphism(self.obj(i), self.obj(i - 1)),))

    def elements(self, i: int) -> list[Morphism]:
        return self.mset(i).elements(self.cat, self.obj(i), self.obj(i - 1))

    def contains(self, i: int, x: Morphism) -> bool:
        return self.mset(i).contains(self.cat, self.obj(i), self.obj(i - 1), x)

    def is_finite(self) -> bool:
        return all(s.is_finite(self.cat) for s in self.sets)

    def padded(self, L: int) -> "ChainBundle":
        if L <= self.length:
            return self
        if not self.cat.has_zero:
            raise Unsupported(f"{self.cat.name} has no zero object to pad bundles with")
        objs = tuple(self.obj(i) for i in range(L + 1))
        sets = tuple(self.mset(i) for i in range(1, L + 1))
        return ChainBundle(self.cat, objs, sets)

    def _support(self) -> int:
        L = self.length
        cat = self.cat
        while L > 1 and cat.has_zero and cat.is_zero_object(self.objects[L]):
            s = self.sets[L - 1]
            if not s.is_finite(cat) or len(s.elements(cat, self.objects[L], self.objects[L - 1])) != 1:
                break
            L -= 1
        return L

    def _set_key(self, i: int):
        s = self.mset(i)
        if s.is_finite(self.cat):
            return frozenset(self.elements(i))
        return s

    def __eq__(self, other):
        if not isinstance(other, ChainBundle) or other.cat != self.cat:
            return False
        L = self._support()
        if other._support() != L:
            return False
        return all(self.obj(i) == other.obj(i) for i in range(L + 1)) and all(
            self._set_key(i) == other._set_key(i) for i in range(1, L + 1)
        )

    def __hash__(self):
        return hash((self.cat, self.objects[: self._support() + 1]))

    def levels_top_down(self) -> list:
        return [self.objects[i] for i in range(self.length, 0, -1)]


def is_chain(b: ChainBundle) -> bool:
    """Exactly one morphism per level."""
    return b.is_finite() and all(len(b.elements(i)) == 1 for i in range(1, b.length + 1))


def is_zero_bundle(b: ChainBundle) -> bool:
    return b.cat.has_zero and all(b.cat.is_zero_object(a) for a in b.objects)


def zero_bundle(cat: Category) -> ChainBundle:
    z = cat.zero_object()
    return ChainBundle(cat, (z, z), (AllHom(),))


def validate_bundle(b: ChainBundle) -> Report:
    """Per-level hom membership, ``ALL`` expansion and base conventions."""
    r = Report()
    cat = b.cat
    for i, a in enumerate(b.objects):
        r.add(f"M_{i}", f"object of {cat.name}", cat.is_object(a), str(cat.format_object(a)))
    if cat.has_zero:
        r.add("M_0", "base is a zero object", cat.is_zero_object(b.base), str(cat.format_object(b.base)))
    check = getattr(cat, "check_bundle", None)
    if check is not None:
        check(b, r)
    expanded = {}
    for i in range(1, b.length + 1):
        s = b.mset(i)
        dom, cod = b.obj(i), b.obj(i - 1)
        where = f"S_{i}"
        if isinstance(s, AllHom) and not s.is_finite(cat):
            r.note(where, "ALL is infinite; membership is decided by the validity rule")
            continue
        bad = 0
        xs = b.elements(i)
        for x in xs:
            ok = x.dom == dom and x.cod == cod and cat.is_valid(x)
            if not ok:
                bad += 1
                r.add(where, f"in Hom(M_{i}, M_{i - 1})", False, _show(cat, x))
        if not bad:
            r.add(where, f"in Hom(M_{i}, M_{i - 1})", True, f"{len(xs)} morphisms")
        if isinstance(s, AllHom):
            expanded[str(i)] = [cat.format_morphism(x) for x in xs]
    if expanded:
        r.derived["expanded_sets"] = expanded
    return r


def _show(cat: Category, x: Morphism) -> str:
    return f"{cat.format_object(x.dom)} -[{cat.format_morphism(x)}]-> {cat.format_object(x.cod)}"


# ---------------------------------------------------------------------------
# Bundle morphisms


@dataclass(frozen=True)
class Assignment:
    """How ``sigma_i`` picks ``sigma_i(x)`` in the target set.

    ``table`` lists explicit ``(x, y)`` pairs; ``forced`` takes the element
    of ``T_i`` that closes the square (solved by the instance when ``T_i`` is
    infinite); ``multiplier`` keeps the multiplier ``k`` of ``x -> kx``.
    """

    rule: str = FORCED
    table: tuple = ()


def table_assignment(pairs) -> Assignment:
    return Assignment(TABLE, tuple(pairs))


@dataclass(frozen=True, eq=False)
class BundleMorphism:
    source: ChainBundle
    target: ChainBundle
    vertex_maps: tuple  # f_0 .. f_L
    assignments: tuple = field(default=())  # sigma_1 .. sigma_L

    def __post_init__(self):
        if len(self.vertex_maps) < max(self.source.length, self.target.length) + 1:
            raise ValueError("one vertex map per level (including the base) is required")

    @property
    def length(self) -> int:
        return len(self.vertex_maps) - 1

    @property
    def dom(self) -> ChainBundle:
        return self.source

    @property
    def cod(self) -> ChainBundle:
        return self.target

    @property
    def cat(self) -> "BundleCategory":
        return BundleCategory(self.source.cat)

    def f(self, i: int) -> Morphism:
        if i < len(self.vertex_maps):
            return self.vertex_maps[i]
        return self.source.cat.zero_morphism(self.source.obj(i), self.target.obj(i))

    def sigma(self, i: int) -> Assignment:
        if i - 1 < len(self.assignments):
            return self.assignments[i - 1]
        return Assignment(FORCED)

    def assign(self, i: int, x: Morphism) -> Morphism | None:
        """``sigma_i(x)``, or ``None`` when the assignment is undefined at ``x``."""
        a = self.sigma(i)
        cat = self.source.cat
        dom, cod = self.target.obj(i), self.target.obj(i - 1)
        if a.rule == TABLE:
            for k, v in a.table:
                if k == x:
                    return v
            return None
        if a.rule == MULTIPLIER:
            move = getattr(cat, "transport_multiplier", None)
            y = move(x, dom, cod) if move is not None else None
            return y if y is not None and cat.is_valid(y) and self.target.contains(i, y) else None
        lhs = compose(x, self.f(i - 1))
        fi = self.f(i)
        tset = self.target.mset(i)
        if tset.is_finite(cat):
            for y in self.target.elements(i):
                if compose(fi, y) == lhs:
                    return y
            return None
        solve = getattr(cat, "solve_square", None)
        y = solve(lhs, fi, cod) if solve is not None else None
        return y if y is not None and self.target.contains(i, y) else None

    def __eq__(self, other):
        if not isinstance(other, BundleMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        L = max(self.length, other.length)
        return all(self.f(i) == other.f(i) for i in range(L + 1))

    def __hash__(self):
        return hash((self.source, self.target, self.vertex_maps[: self.source._support() + 1]))

    def __str__(self) -> str:
        cat = self.source.cat
        maps = ", ".join(str(cat.format_morphism(self.f(i))) for i in range(self.length, -1, -1))
        return f"({maps})"


def _assign_by(source: ChainBundle, i: int, fn: Callable) -> Assignment:
    if not source.mset(i).is_finite(source.cat):
        return Assignment(FORCED)
    pairs = []
    for x in source.elements(i):
        y = fn(x)
        if y is not None:
            pairs.append((x, y))
    return table_assignment(pairs)


def bundle_morphism(source: ChainBundle, target: ChainBundle, maps, assignments=None) -> BundleMorphism:
    """Build from vertex maps listed top level first (``f_L, ..., f_1, f_0``).

    ``f_0`` may be omitted when both bases are zero objects.  ``assignments``
    lists ``sigma_L, ..., sigma_1`` as :class:`Assignment` values, dicts or
    rule names; omitted levels use the forced rule.
    """
    cat = source.cat
    L = max(source.length, target.length)
    maps = list(maps)
    if len(maps) == L:
        maps.append(cat.zero_morphism(source.base, target.base))
    if len(maps) != L + 1:
        raise ValueError(f"expected {L} or {L + 1} vertex maps, got {len(maps)}")
    vertex = tuple(reversed(maps))
    if assignments is None:
        sig = tuple(Assignment(FORCED) for _ in range(L))
    else:
        sig = tuple(_coerce_assignment(a) for a in reversed(list(assignments)))
    m = BundleMorphism(source, target, vertex, sig)
    return m


def _coerce_assignment(a) -> Assignment:
    if isinstance(a, Assignment):
        return a
    if isinstance(a, dict):
        return table_assignment(a.items())
    if a in (FORCED, MULTIPLIER):
        return Assignment(a)
    raise ValueError(f"unknown assignment {a!r}")


def materialize(m: BundleMorphism) -> BundleMorphism:
    """Replace rule-based assignments by tables wherever the source set is finite."""
    sig = tuple(_assign_by(m.source, i, lambda x, i=i: m.assign(i, x)) for i in range(1, m.length + 1))
    return BundleMorphism(m.source, m.target, m.vertex_maps, sig)


def _difference(cat: Category, g: Morphism, h: Morphism) -> str:
    elements = getattr(cat, "elements", None)
    apply = getattr(cat, "apply", None)
    if elements is not None and apply is not None:
        try:
            for e in elements(g.dom):
                a, b = apply(g, e), apply(h, e)
                if a != b:
                    return f"at {e}: {a} != {b}"
        except ChainBundleError:
            pass
    if hasattr(g.dom, "carrier") and hasattr(cat, "apply"):
        for e in g.dom.carrier:
            a, b = cat.apply(g, e), cat.apply(h, e)
            if a != b:
                return f"at {e}: {a} != {b}"
    return f"{cat.format_morphism(g)} != {cat.format_morphism(h)}"


def validate_bundle_morphism(m: BundleMorphism) -> Report:
    """Check every vertex map and every square ``x ; f_{i-1} == f_i ; sigma_i(x)``."""
    r = Report()
    src, tgt = m.source, m.target
    if src.cat != tgt.cat:
        r.add("bundles", "same instance", False, f"{src.cat.name} vs {tgt.cat.name}")
        return r
    cat = src.cat
    for i in range(m.length + 1):
        f = m.f(i)
        ok = f.dom == src.obj(i) and f.cod == tgt.obj(i) and cat.is_valid(f)
        r.add(f"f_{i}", f"valid arrow M_{i} -> N_{i}", ok, _show(cat, f))
    for i in range(1, m.length + 1):
        where = f"level {i}"
        if not src.mset(i).is_finite(cat):
            r.note(where, "S_i is infinite; squares checked on the enumerable window only")
        xs = src.elements(i)
        bad = 0
        for x in xs:
            y = m.assign(i, x)
            label = f"{where}, x={cat.format_morphism(x)}"
            if y is None:
                bad += 1
                r.add(label, "sigma(x) defined", False, "no element of T_i closes the square")
                continue
            if not tgt.contains(i, y):
                bad += 1
                r.add(label, "sigma(x) in T_i", False, _show(cat, y))
                continue
            lhs, rhs = compose(x, m.f(i - 1)), compose(m.f(i), y)
            if lhs != rhs:
                bad += 1
                r.add(label, "x ; f_{i-1} == f_i ; sigma(x)", False,
                      f"sigma(x)={cat.format_morphism(y)}, {_difference(cat, lhs, rhs)}")
        if not bad:
            r.add(where, "all squares commute", True, f"{len(xs)} morphisms")
    return r


def identity_bundle_morphism(b: ChainBundle) -> BundleMorphism:
    cat = b.cat
    vertex = tuple(cat.identity(a) for a in b.objects)
    sig = tuple(_assign_by(b, i, lambda x: x) for i in range(1, b.length + 1))
    return BundleMorphism(b, b, vertex, sig)


def zero_bundle_morphism(c: ChainBundle, d: ChainBundle) -> BundleMorphism:
    cat = c.cat
    L = max(c.length, d.length)
    vertex = tuple(cat.zero_morphism(c.obj(i), d.obj(i)) for i in range(L + 1))
    return materialize(BundleMorphism(c, d, vertex, tuple(Assignment(FORCED) for _ in range(L))))


def is_zero_bundle_morphism(m: BundleMorphism) -> bool:
    cat = m.source.cat
    return all(cat.is_zero_morphism(m.f(i)) for i in range(m.length + 1))


def compose_bundle_morphisms(m1: BundleMorphism, m2: BundleMorphism) -> BundleMorphism:
    """``m1`` then ``m2``: levelwise composites, ``sigma = sigma_2 . sigma_1``."""
    if m1.source.cat != m2.source.cat:
        raise InstanceMismatch("bundle morphisms over different instances")
    if m1.target != m2.source:
        raise NonComposable("target of the first bundle morphism is not the source of the second")
    L = max(m1.length, m2.length)
    vertex = tuple(compose(m1.f(i), m2.f(i)) for i in range(L + 1))

    def through(i):
        def fn(x):
            y = m1.assign(i, x)
            return None if y is None else m2.assign(i, y)

        return fn

    sig = tuple(_assign_by(m1.source, i, through(i)) for i in range(1, L + 1))
    return BundleMorphism(m1.source, m2.target, vertex, sig)


# ---------------------------------------------------------------------------
# Subbundles and factorization


def restrict(cat: Category, x: Morphism, dom, cod) -> Morphism | None:
    """The arrow ``dom -> cod`` that agrees with ``x`` on the subobject ``dom``."""
    j = cat.inclusion(dom, x.dom)
    if j is None:
        return None
    return cat.corestrict(compose(j, x), cod)


def subbundle_report(sub: ChainBundle, sup: ChainBundle) -> Report:
    if sub.cat != sup.cat:
        raise InstanceMismatch("bundles over different instances")
    cat = sub.cat
    r = Report()
    L = max(sub.length, sup.length)
    for i in range(L + 1):
        a, b = sub.obj(i), sup.obj(i)
        r.add(f"M_{i}", "subobject", cat.inclusion(a, b) is not None,
              f"{cat.format_object(a)} in {cat.format_object(b)}")
    if not r.ok:
        return r
    for i in range(1, L + 1):
        if not sub.mset(i).is_finite(cat):
            r.note(f"S_{i}", "infinite set; subbundle check uses the enumerable window")
        big = sup.elements(i)
        for xp in sub.elements(i):
            hit = any(restrict(cat, x, sub.obj(i), sub.obj(i - 1)) == xp for x in big)
            r.add(f"S_{i}, x'={cat.format_morphism(xp)}", "restriction of some x in S_i", hit,
                  "" if hit else f"none of {len(big)} morphisms restricts to it")
    return r


def is_subbundle(sub: ChainBundle, sup: ChainBundle) -> bool:
    return subbundle_report(sub, sup).ok


@dataclass(frozen=True)
class BundleFactorization:
    epi_part: BundleMorphism
    inclusion_part: BundleMorphism
    intermediate: ChainBundle


def factorize_bundle_morphism(m: BundleMorphism) -> BundleFactorization:
    """``m = m0 ; J`` through the levelwise images ``Im f_i``.

    ``S_i'`` collects the restrictions of ``sigma_i(x)`` to the images.
    """
    src, tgt = m.source, m.target
    cat = src.cat
    L = m.length
    parts = [cat.image(m.f(i)) for i in range(L + 1)]
    ims = tuple(q.cod for q, _ in parts)
    new_sets, m0_tables, j_tables = [], [], []
    for i in range(1, L + 1):
        if not src.mset(i).is_finite(cat):
            raise Unsupported("factorizing a bundle morphism needs finite source morphism sets")
        restricted, m0_pairs, j_pairs = [], [], []
        for x in src.elements(i):
            y = m.assign(i, x)
            if y is None:
                raise ChainBundleError(f"sigma_{i} is undefined at {cat.format_morphism(x)}")
            yr = restrict(cat, y, ims[i], ims[i - 1])
            if yr is None:
                raise NoImage(
                    f"sigma_{i}({cat.format_morphism(x)}) does not map the image at level {i} into the one below"
                )
            m0_pairs.append((x, yr))
            if yr not in restricted:
                restricted.append(yr)
                j_pairs.append((yr, y))
        new_sets.append(Explicit(tuple(restricted)))
        m0_tables.append(table_assignment(m0_pairs))
        j_tables.append(table_assignment(j_pairs))
    mid = ChainBundle(cat, ims, tuple(new_sets))
    m0 = BundleMorphism(src, mid, tuple(q for q, _ in parts), tuple(m0_tables))
    J = BundleMorphism(mid, tgt, tuple(j for _, j in parts), tuple(j_tables))
    return BundleFactorization(m0, J, mid)


# ---------------------------------------------------------------------------
# Products


def _common_length(c: ChainBundle, d: ChainBundle) -> int:
    if c.cat != d.cat:
        raise InstanceMismatch("bundles over different instances")
    return max(c.length, d.length)


def product_bundles(c: ChainBundle, d: ChainBundle):
    """``(c x d, pi_1, pi_2)`` with levelwise products and pair sets."""
    L = _common_length(c, d)
    c, d = c.padded(L), d.padded(L)
    cat = c.cat
    prods = [cat.product(c.obj(i), d.obj(i)) for i in range(L + 1)]
    objects = tuple(p for p, _, _ in prods)
    sets = tuple(
        PairSet(c.mset(i), d.mset(i), c.obj(i), c.obj(i - 1), d.obj(i), d.obj(i - 1)) for i in range(1, L + 1)
    )
    prod = ChainBundle(cat, objects, sets)

    def proj(k):
        def fn(i):
            def pick(x):
                parts = sets[i - 1].split(cat, x)
                return None if parts is None else parts[k]

            return pick

        return fn

    p1 = BundleMorphism(prod, c, tuple(p for _, p, _ in prods),
                        tuple(_assign_by(prod, i, proj(0)(i)) for i in range(1, L + 1)))
    p2 = BundleMorphism(prod, d, tuple(p for _, _, p in prods),
                        tuple(_assign_by(prod, i, proj(1)(i)) for i in range(1, L + 1)))
    return prod, p1, p2


def pair_morphisms(F: BundleMorphism, G: BundleMorphism) -> BundleMorphism:
    """The induced ``L: l -> c x d`` with ``L ; pi_1 == F`` and ``L ; pi_2 == G``."""
    if F.source != G.source:
        raise SourceMismatch("pairing needs bundle morphisms with a common source")
    prod, _, _ = product_bundles(F.target, G.target)
    cat = F.source.cat
    L = max(prod.length, F.source.length)
    # past the product's length the target levels are the zero object
    vertex = tuple(
        cat.pair(F.f(i), G.f(i)) if i <= prod.length else cat.zero_morphism(F.source.obj(i), prod.obj(i))
        for i in range(L + 1)
    )

    def both(i):
        def fn(k):
            a, b = F.assign(i, k), G.assign(i, k)
            return None if a is None or b is None else cat.product_map(a, b)

        return fn

    sig = tuple(
        _assign_by(F.source, i, both(i)) if i <= prod.length else Assignment(FORCED) for i in range(1, L + 1)
    )
    return BundleMorphism(F.source, prod, vertex, sig)


# ---------------------------------------------------------------------------
# Exhaustive search over bundle morphisms


def enumerate_bundle_morphisms(
    source: ChainBundle,
    target: ChainBundle,
    vertex_filter: Callable[[int, Morphism], bool] | None = None,
    budget: Budget | None = None,
) -> list[BundleMorphism]:
    """Every bundle morphism ``source -> target`` (distinct as arrows).

    Candidates are drawn from the instance's hom enumeration, so for
    instances with windowed hom-sets the search is window-relative.
    ``vertex_filter(i, f)`` prunes vertex maps level by level.
    """
    budget = budget or Budget(DEFAULT_MAX_ENUM)
    L = _common_length(source, target)
    cat = source.cat
    cands = []
    for i in range(L + 1):
        hs = cat.hom(source.obj(i), target.obj(i))
        budget.spend(len(hs))
        cands.append([f for f in hs if vertex_filter is None or vertex_filter(i, f)])
    xs = [None] + [source.elements(i) for i in range(1, L + 1)]
    out = []

    def squares_close(i, chosen, cur):
        # only f_{i-1} and f_i matter for sigma_i; later slots are filler
        probe = BundleMorphism(source, target, tuple(chosen) + (cur,) * (L + 1 - i))
        for x in xs[i]:
            budget.spend()
            if probe.assign(i, x) is None:
                return False
        return True

    def extend(i, chosen):
        if i > L:
            m = BundleMorphism(source, target, tuple(chosen))
            out.append(materialize(m))
            return
        for f in cands[i]:
            budget.spend()
            if i == 0 or squares_close(i, chosen, f):
                extend(i + 1, chosen + [f])

    extend(0, [])
    return out


def verify_product(prod, p1, p2, F: BundleMorphism, G: BundleMorphism, budget: Budget | None = None) -> Report:
    """Triangle identities for ``pair(F, G)`` and its uniqueness by exhaustive search."""
    r = Report()
    Lm = pair_morphisms(F, G)
    r.add("pair", "L valid", validate_bundle_morphism(Lm).ok, str(Lm))
    r.add("pair", "L ; pi_1 == F", compose_bundle_morphisms(Lm, p1) == F, "")
    r.add("pair", "L ; pi_2 == G", compose_bundle_morphisms(Lm, p2) == G, "")

    def triangles(i, u):
        return compose(u, p1.f(i)) == F.f(i) and compose(u, p2.f(i)) == G.f(i)

    found = enumerate_bundle_morphisms(F.source, prod, triangles, budget)
    r.add("pair", "unique morphism making both triangles commute",
          found == [Lm], f"{len(found)} found")
    return r


# ---------------------------------------------------------------------------
# Kernels and cokernels


def kernel_of_bundle_morphism(F: BundleMorphism):
    """``(a, K)``: objects ``ker f_i`` and the kernel restrictions of ``S_i``."""
    c = F.source
    cat = c.cat
    L = F.length
    ks = [cat.kernel(F.f(i)) for i in range(L + 1)]
    objs = tuple(k.dom for k in ks)
    sets, tables = [], []
    for i in range(1, L + 1):
        if not c.mset(i).is_finite(cat):
            raise KernelsUnsupported("kernel bundles need finite morphism sets")
        rs, pairs = [], []
        for x in c.elements(i):
            xr = restrict(cat, x, objs[i], objs[i - 1])
            if xr is None:
                raise KernelsUnsupported(f"{cat.format_morphism(x)} does not map kernel into kernel at level {i}")
            if xr not in rs:
                rs.append(xr)
                pairs.append((xr, x))
        sets.append(Explicit(tuple(rs)))
        tables.append(table_assignment(pairs))
    a = ChainBundle(cat, objs, tuple(sets))
    return a, BundleMorphism(a, c.padded(L), tuple(ks), tuple(tables))


def cokernel_of_bundle_morphism(F: BundleMorphism):
    """``(q, Q)``: objects ``coker f_i`` and the maps induced by ``T_i``."""
    d = F.target
    cat = d.cat
    L = F.length
    qs = [cat.cokernel(F.f(i)) for i in range(L + 1)]
    objs = tuple(q.cod for q in qs)
    sets, tables = [], []
    for i in range(1, L + 1):
        if not d.mset(i).is_finite(cat):
            raise CokernelsUnsupported("cokernel bundles need finite morphism sets")
        zs, pairs = [], []
        for y in d.padded(L).elements(i):
            want = compose(y, qs[i - 1])
            z = next((z for z in cat.hom(objs[i], objs[i - 1]) if compose(qs[i], z) == want), None)
            if z is None:
                raise CokernelsUnsupported(f"{cat.format_morphism(y)} does not descend to the quotients at level {i}")
            pairs.append((y, z))
            if z not in zs:
                zs.append(z)
        sets.append(Explicit(tuple(zs)))
        tables.append(table_assignment(pairs))
    q = ChainBundle(cat, objs, tuple(sets))
    return q, BundleMorphism(d.padded(L), q, tuple(qs), tuple(tables))


def verify_kernel(F: BundleMorphism, K: BundleMorphism, test_sources, budget: Budget | None = None) -> Report:
    """``K ; F == 0`` and unique factorization of every ``K'`` with ``K' ; F == 0``."""
    budget = budget or Budget(DEFAULT_MAX_ENUM)
    r = Report()
    r.add("K", "K valid", validate_bundle_morphism(K).ok, "")
    r.add("K ; F", "zero bundle morphism", is_zero_bundle_morphism(compose_bundle_morphisms(K, F)), "")
    a, c = K.source, F.source
    for idx, src in enumerate(test_sources):
        bad = 0
        tested = 0
        for Kp in enumerate_bundle_morphisms(src, c, budget=budget):
            if not is_zero_bundle_morphism(compose_bundle_morphisms(Kp, F)):
                continue
            tested += 1

            def through(i, u, Kp=Kp):
                return compose(u, K.f(i)) == Kp.f(i)

            us = enumerate_bundle_morphisms(src, a, through, budget)
            if len(us) != 1:
                bad += 1
                r.add(f"test source {idx}", "unique u with u ; K == K'", False,
                      f"K'={Kp}: {len(us)} factorizations")
        if not bad:
            r.add(f"test source {idx}", "unique u with u ; K == K'", True, f"{tested} morphisms K' checked")
    return r


def verify_cokernel(F: BundleMorphism, Q: BundleMorphism, test_targets, budget: Budget | None = None) -> Report:
    """``F ; Q == 0`` and unique factorization of every ``Q'`` with ``F ; Q' == 0``."""
    budget = budget or Budget(DEFAULT_MAX_ENUM)
    r = Report()
    r.add("Q", "Q valid", validate_bundle_morphism(Q).ok, "")
    r.add("F ; Q", "zero bundle morphism", is_zero_bundle_morphism(compose_bundle_morphisms(F, Q)), "")
    q, d = Q.target, Q.source
    for idx, tgt in enumerate(test_targets):
        bad = 0
        tested = 0
        for Qp in enumerate_bundle_morphisms(d, tgt, budget=budget):
            if not is_zero_bundle_morphism(compose_bundle_morphisms(F, Qp)):
                continue
            tested += 1

            def through(i, u, Qp=Qp):
                return compose(Q.f(i), u) == Qp.f(i)

            us = enumerate_bundle_morphisms(q, tgt, through, budget)
            if len(us) != 1:
                bad += 1
                r.add(f"test target {idx}", "unique u with Q ; u == Q'", False,
                      f"Q'={Qp}: {len(us)} factorizations")
        if not bad:
            r.add(f"test target {idx}", "unique u with Q ; u == Q'", True, f"{tested} morphisms Q' checked")
    return r


# ---------------------------------------------------------------------------
# Chains


def extract_chains(b: ChainBundle, mode: str = "plain", cap: int = DEFAULT_MAX_ENUM) -> list[ChainBundle]:
    """One morphism per level; ``complex`` keeps selections with zero composites.

    Selections are produced in lexicographic order of the per-level element
    order, top level varying slowest.
    """
    if mode not in ("plain", "complex"):
        raise ValueError(f"mode must be 'plain' or 'complex', got {mode!r}")
    cat = b.cat
    if mode == "complex" and not cat.has_zero:
        raise Unsupported(f"{cat.name} has no zero morphisms to test composites against")
    if not b.is_finite():
        raise ExplosionGuard("chain extraction needs finite morphism sets")
    L = b.length
    per = [b.elements(i) for i in range(L, 0, -1)]
    total = 1
    for p in per:
        total *= len(p)
    if total > cap:
        raise ExplosionGuard(f"{total} selections exceed the cap {cap}")
    out = []
    for choice in cartesian(*per):
        # choice[0] is s_L ... choice[-1] is s_1
        if mode == "complex" and not all(
            cat.is_zero_morphism(compose(choice[k], choice[k + 1])) for k in range(len(choice) - 1)
        ):
            continue
        sets = tuple(Explicit((s,)) for s in reversed(choice))
        out.append(ChainBundle(cat, b.objects, sets))
    return out


# ---------------------------------------------------------------------------
# Bundles as a category


class BundleCategory(Category):
    """Chain bundles over ``base`` and bundle morphisms, as a category instance.

    Hom enumeration is the exhaustive search of
    :func:`enumerate_bundle_morphisms`.
    """

    def __init__(self, base: Category):
        self.base = base
        self.name = f"bundles({base.name})"
        self.complete_homs = base.complete_homs

    def __eq__(self, other):
        return isinstance(other, BundleCategory) and other.base == self.base

    def __hash__(self):
        return hash(("bundles", self.base))

    def is_object(self, a) -> bool:
        return isinstance(a, ChainBundle) and a.cat == self.base

    def is_valid(self, f) -> bool:
        return validate_bundle_morphism(f).ok

    def identity(self, a) -> BundleMorphism:
        return identity_bundle_morphism(a)

    def _compose(self, f, g):
        return compose_bundle_morphisms(f, g)

    def hom(self, a, b) -> list[BundleMorphism]:
        return enumerate_bundle_morphisms(a, b)

    def describe(self, f) -> str:
        return str(f)

    def format_object(self, a):
        return [self.base.format_object(x) for x in a.levels_top_down()] + [self.base.format_object(a.base)]

    def format_morphism(self, f):
        return str(f)
