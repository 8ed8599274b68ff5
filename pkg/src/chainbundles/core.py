"""Finite-category kernel.

Every concrete instance (cyclic groups, submodules of Z, pointed sets, the
augmented simplex category, path categories, free Z-modules) subclasses
:class:`Category`.  Composition is diagrammatic throughout: ``compose(f, g)``
is "f then g", so ``compose(f, g).dom == f.dom`` and ``.cod == g.cod``.

Mono/epi and the other classifications are decided by exhaustive search over
an explicitly supplied :class:`Universe`, i.e. they are relative to the finite
fragment of the category the caller declared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import (
    CokernelsUnsupported,
    InstanceMismatch,
    KernelsUnsupported,
    NoImage,
    NonComposable,
    ProductsUnsupported,
    Unsupported,
    UniverseTooLarge,
)

DEFAULT_MAX_ENUM = 10**6


@dataclass(frozen=True)
class Morphism:
    dom: Any
    cod: Any
    data: Any
    cat: "Category" = field(repr=False)

    def then(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __rshift__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __str__(self) -> str:
        return self.cat.describe(self)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f`` then ``g``."""
    if f.cat != g.cat:
        raise InstanceMismatch(f"cannot compose {f.cat.name} arrow with {g.cat.name} arrow")
    if f.cod != g.dom:
        raise NonComposable(f"cod {f.cod!s} != dom {g.dom!s}")
    return f.cat._compose(f, g)


def compose_all(first: Morphism, *rest: Morphism) -> Morphism:
    out = first
    for g in rest:
        out = compose(out, g)
    return out


class Budget:
    """Counts candidates examined by a search and enforces the cap."""

    def __init__(self, limit: int = DEFAULT_MAX_ENUM, what: str = "candidate morphisms"):
        self.limit = limit
        self.used = 0
        self.what = what

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise UniverseTooLarge(f"more than {self.limit} {self.what} examined")


class Category:
    """A concrete category instance.

    Subclasses must provide object membership, hom validity, identities,
    composition and hom enumeration.  The remaining structure (subobject
    preorder, images, kernels, cokernels, products, zero object) is optional;
    the defaults describe a category with only trivial inclusions and none of
    the limit constructions.
    """

    name = "category"
    has_zero = False
    # False when hom() only enumerates a finite window of an infinite hom-set.
    complete_homs = True

    # -- required -----------------------------------------------------------
    def is_object(self, a) -> bool:
        raise NotImplementedError

    def is_valid(self, f: Morphism) -> bool:
        raise NotImplementedError

    def identity(self, a) -> Morphism:
        raise NotImplementedError

    def _compose(self, f: Morphism, g: Morphism) -> Morphism:
        raise NotImplementedError

    def hom(self, a, b) -> list[Morphism]:
        raise NotImplementedError

    # -- subobjects and factorization ----------------------------------------
    def inclusion(self, a, b) -> Morphism | None:
        return self.identity(a) if a == b else None

    def subobjects(self, b) -> list:
        """All declared subobjects of ``b`` (used to build test universes)."""
        return [b]

    def image(self, f: Morphism) -> tuple[Morphism, Morphism]:
        raise NoImage(f"{self.name} does not represent images")

    def corestrict(self, g: Morphism, b) -> Morphism | None:
        """The arrow ``g'`` into subobject ``b`` with ``g' ; j_b = g``, if any."""
        j = self.inclusion(b, g.cod)
        if j is None:
            return None
        for c in self.hom(g.dom, b):
            if compose(c, j) == g:
                return c
        return None

    # -- zero -----------------------------------------------------------------
    def zero_object(self):
        raise Unsupported(f"{self.name} has no zero object")

    def is_zero_object(self, a) -> bool:
        return False

    def zero_morphism(self, a, b) -> Morphism:
        raise Unsupported(f"{self.name} has no zero morphisms")

    def is_zero_morphism(self, f: Morphism) -> bool:
        return False

    # -- limits ---------------------------------------------------------------
    def kernel(self, f: Morphism) -> Morphism:
        raise KernelsUnsupported(f"{self.name} does not provide kernels")

    def cokernel(self, f: Morphism) -> Morphism:
        raise CokernelsUnsupported(f"{self.name} does not provide cokernels")

    def product(self, a, b) -> tuple[Any, Morphism, Morphism]:
        raise ProductsUnsupported(f"{self.name} does not provide products")

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        raise ProductsUnsupported(f"{self.name} does not provide products")

    def product_map(self, f: Morphism, g: Morphism) -> Morphism:
        """``f x g`` between the products of the domains and codomains."""
        _, p1, p2 = self.product(f.dom, g.dom)
        return self.pair(compose(p1, f), compose(p2, g))

    def split_product_map(self, x: Morphism, left_dom, right_dom, left_cod, right_cod):
        """Inverse of :meth:`product_map`; ``None`` when ``x`` is not of that form."""
        for f in self.hom(left_dom, left_cod):
            for g in self.hom(right_dom, right_cod):
                if self.product_map(f, g) == x:
                    return f, g
        return None

    # -- presentation ---------------------------------------------------------
    def describe(self, f: Morphism) -> str:
        return f"{self.format_object(f.dom)} -[{self.format_morphism(f)}]-> {self.format_object(f.cod)}"

    def format_object(self, a) -> Any:
        return str(a)

    def format_morphism(self, f: Morphism) -> Any:
        return repr(f.data)

    def parse_object(self, spec) -> Any:
        raise NotImplementedError

    def parse_morphism(self, dom, cod, spec) -> Morphism:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# Universes and classification


class Universe:
    """A finite, fully enumerable fragment of a category instance."""

    def __init__(self, cat: Category, objects: Iterable, max_enum: int = DEFAULT_MAX_ENUM):
        self.cat = cat
        objs = []
        for a in objects:
            if not cat.is_object(a):
                raise InstanceMismatch(f"{a!s} is not an object of {cat.name}")
            if a not in objs:
                objs.append(a)
        self.objects = tuple(objs)
        self.max_enum = max_enum
        self.budget = Budget(max_enum)
        self._homs: dict = {}

    def hom(self, a, b) -> list[Morphism]:
        key = (a, b)
        if key not in self._homs:
            homs = self.cat.hom(a, b)
            self.budget.spend(len(homs))
            self._homs[key] = homs
        return self._homs[key]

    def with_objects(self, *extra) -> "Universe":
        missing = [a for a in extra if a not in self.objects]
        if not missing:
            return self
        u = Universe(self.cat, self.objects + tuple(missing), self.max_enum)
        u._homs = dict(self._homs)
        u.budget = self.budget
        return u

    def morphisms(self) -> list[Morphism]:
        return [f for a in self.objects for b in self.objects for f in self.hom(a, b)]


@dataclass(frozen=True)
class MorphismClass:
    mono: bool
    epi: bool
    split_mono: bool
    split_epi: bool
    embedding: bool
    is_inclusion: bool


def _injective(values: list) -> bool:
    return len(set(values)) == len(values)


def is_mono(f: Morphism, universe: Universe) -> bool:
    u = universe.with_objects(f.dom, f.cod)
    for x in u.objects:
        if not _injective([compose(g, f) for g in u.hom(x, f.dom)]):
            return False
    return True


def is_epi(f: Morphism, universe: Universe) -> bool:
    u = universe.with_objects(f.dom, f.cod)
    for x in u.objects:
        if not _injective([compose(f, g) for g in u.hom(f.cod, x)]):
            return False
    return True


def classify_morphism(f: Morphism, universe: Universe) -> MorphismClass:
    """Decide mono/epi/split/embedding/inclusion by exhaustive search."""
    if f.cat != universe.cat:
        raise InstanceMismatch("morphism and universe belong to different instances")
    cat = f.cat
    u = universe.with_objects(f.dom, f.cod)
    mono = is_mono(f, u)
    epi = is_epi(f, u)
    back = u.hom(f.cod, f.dom)
    split_mono = any(compose(f, r) == cat.identity(f.dom) for r in back)
    split_epi = any(compose(s, f) == cat.identity(f.cod) for s in back)
    inc = cat.inclusion(f.dom, f.cod)
    is_inclusion = inc is not None and inc == f
    embedding = False
    if mono:
        for a in u.objects:
            j = cat.inclusion(a, f.cod)
            if j is None:
                continue
            below = any(compose(h, j) == f for h in u.hom(f.dom, a))
            above = any(compose(h, f) == j for h in u.hom(a, f.dom))
            if below and above:
                embedding = True
                break
    return MorphismClass(mono, epi, split_mono, split_epi, embedding, is_inclusion)


def subobject_leq(cat: Category, a, b) -> Morphism | None:
    """The inclusion ``a -> b`` when ``a`` is a subobject of ``b``."""
    for x in (a, b):
        if not cat.is_object(x):
            raise InstanceMismatch(f"{x!s} is not an object of {cat.name}")
    return cat.inclusion(a, b)


@dataclass(frozen=True)
class Factorization:
    epi_part: Morphism
    inclusion_part: Morphism
    image: Any


def factorize(f: Morphism) -> Factorization:
    """Canonical factorization through the image: ``f = epi_part ; inclusion_part``."""
    q, j = f.cat.image(f)
    return Factorization(q, j, q.cod)


def canonical_factorizations(f: Morphism, universe: Universe) -> list[tuple[Morphism, Morphism]]:
    """Every epi-then-inclusion factorization of ``f`` through objects of ``universe``."""
    cat = f.cat
    u = universe.with_objects(f.dom, f.cod)
    out = []
    for a in u.objects:
        j = cat.inclusion(a, f.cod)
        if j is None:
            continue
        for q in u.hom(f.dom, a):
            if compose(q, j) == f and is_epi(q, u):
                out.append((q, j))
    return out


def _has_im_property(f, x, j, facts, cat) -> bool:
    for y, _ in facts:
        jj = cat.inclusion(x.cod, y.cod)
        if jj is None or compose(x, jj) != y:
            return False
    return True


def has_image(f: Morphism, universe: Universe) -> bool:
    """Check the image property of :func:`factorize` against the universe.

    Every canonical factorization ``f = y ; j'`` found in the universe (plus
    the image object) must satisfy ``y = f0 ; j''`` for an inclusion ``j''``.
    When it holds, uniqueness of such a factorization is asserted.
    """
    try:
        fac = factorize(f)
    except NoImage:
        return False
    cat = f.cat
    u = universe.with_objects(fac.image)
    facts = canonical_factorizations(f, u)
    if (fac.epi_part, fac.inclusion_part) not in facts:
        return False
    if not _has_im_property(f, fac.epi_part, fac.inclusion_part, facts, cat):
        return False
    with_im = [(x, j) for x, j in facts if _has_im_property(f, x, j, facts, cat)]
    assert with_im == [(fac.epi_part, fac.inclusion_part)], "image factorization is not unique"
    return True


def is_zero_object(cat: Category, a, universe: Universe | None = None) -> bool:
    """Zero-object test; by exhaustive hom counting when a universe is given."""
    if universe is None:
        return cat.is_zero_object(a)
    u = universe.with_objects(a)
    return all(len(u.hom(a, x)) == 1 and len(u.hom(x, a)) == 1 for x in u.objects)
