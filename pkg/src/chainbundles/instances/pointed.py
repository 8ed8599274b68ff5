"""Finite sets and finite pointed sets.

Carriers are stored in a canonical order so that structurally equal objects
compare equal.  A morphism's data is the tuple of images of the domain
carrier, in carrier order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from ..core import Category, Morphism
from ..errors import DocumentError, ExplosionGuard


def label_key(x):
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(label_key(y) for y in x))
    return (3, repr(x))


def _canon(carrier) -> tuple:
    items = sorted(set(carrier), key=label_key)
    return tuple(items)


def _label_in(spec):
    if isinstance(spec, list):
        return tuple(_label_in(s) for s in spec)
    if isinstance(spec, (str, int)) and not isinstance(spec, bool):
        return spec
    raise DocumentError(f"labels must be strings, integers or lists of labels, got {spec!r}")


def label_out(x):
    return [label_out(y) for y in x] if isinstance(x, tuple) else x


@dataclass(frozen=True)
class FinSetObject:
    carrier: tuple

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.carrier)) + "}"


def finset(carrier) -> FinSetObject:
    return FinSetObject(_canon(carrier))


@dataclass(frozen=True)
class PointedSet:
    carrier: tuple
    base: object

    def __str__(self) -> str:
        return "(" + "{" + ", ".join(map(str, self.carrier)) + "}" + f", {self.base})"


def pointed(carrier, base) -> PointedSet:
    c = _canon(carrier)
    if base not in c:
        raise ValueError(f"basepoint {base!r} not in carrier")
    return PointedSet(c, base)


class _FunctionCategory(Category):
    max_hom = 10**6

    def table(self, f: Morphism) -> dict:
        return dict(zip(f.dom.carrier, f.data))

    def apply(self, f: Morphism, x):
        return self.table(f)[x]

    def function(self, dom, cod, mapping) -> Morphism:
        return Morphism(dom, cod, tuple(mapping[x] for x in dom.carrier), self)

    def is_valid(self, f: Morphism) -> bool:
        return (
            self.is_object(f.dom)
            and self.is_object(f.cod)
            and len(f.data) == len(f.dom.carrier)
            and all(y in f.cod.carrier for y in f.data)
        )

    def identity(self, a) -> Morphism:
        return Morphism(a, a, a.carrier, self)

    def _compose(self, f, g):
        t = self.table(g)
        return Morphism(f.dom, g.cod, tuple(t[y] for y in f.data), self)

    def inclusion(self, a, b):
        if not set(a.carrier) <= set(b.carrier) or not self._same_base(a, b):
            return None
        return Morphism(a, b, a.carrier, self)

    def _same_base(self, a, b) -> bool:
        return True

    def corestrict(self, g, b):
        if self.inclusion(b, g.cod) is None or not set(g.data) <= set(b.carrier):
            return None
        return Morphism(g.dom, b, g.data, self)

    def format_morphism(self, f):
        return [[label_out(x), label_out(y)] for x, y in zip(f.dom.carrier, f.data)]

    def parse_morphism(self, dom, cod, spec):
        if isinstance(spec, dict):
            pairs = list(spec.items())
        elif isinstance(spec, list) and all(isinstance(p, list) and len(p) == 2 for p in spec):
            pairs = [(_label_in(x), _label_in(y)) for x, y in spec]
        else:
            raise DocumentError(f"functions are {{label: label}} or [[x, y], ...], got {spec!r}")
        table = {}
        by_str = {str(x): x for x in dom.carrier}
        for x, y in pairs:
            if x not in dom.carrier:
                if str(x) in by_str:
                    x = by_str[str(x)]
                else:
                    raise DocumentError(f"{x!r} is not in the domain carrier")
            if isinstance(y, str) and y not in cod.carrier:
                y = {str(c): c for c in cod.carrier}.get(y, y)
            table[x] = y
        missing = [x for x in dom.carrier if x not in table]
        if missing:
            raise DocumentError(f"function is not total: no image for {missing!r}")
        return Morphism(dom, cod, tuple(table[x] for x in dom.carrier), self)


class FinSets(_FunctionCategory):
    """Finite sets and all functions."""

    name = "set"

    def __eq__(self, other):
        return type(other) is FinSets

    def __hash__(self):
        return hash("set")

    def is_object(self, a) -> bool:
        return isinstance(a, FinSetObject)

    def hom(self, a, b):
        size = len(b.carrier) ** len(a.carrier)
        if size > self.max_hom:
            raise ExplosionGuard(f"|Hom({a}, {b})| = {size}")
        return [Morphism(a, b, tuple(c), self) for c in cartesian(b.carrier, repeat=len(a.carrier))]

    def subobjects(self, b):
        out = []
        for mask in cartesian((0, 1), repeat=len(b.carrier)):
            out.append(FinSetObject(tuple(x for x, m in zip(b.carrier, mask) if m)))
        return out

    def image(self, f):
        im = FinSetObject(_canon(f.data))
        return Morphism(f.dom, im, f.data, self), self.inclusion(im, f.cod)

    def product(self, a, b):
        p = FinSetObject(tuple(cartesian(a.carrier, b.carrier)))
        return p, Morphism(p, a, tuple(x for x, _ in p.carrier), self), Morphism(p, b, tuple(y for _, y in p.carrier), self)

    def pair(self, f, g):
        p, _, _ = self.product(f.cod, g.cod)
        return Morphism(f.dom, p, tuple(zip(f.data, g.data)), self)

    def format_object(self, a):
        return {"carrier": [label_out(x) for x in a.carrier]}

    def parse_object(self, spec):
        if not isinstance(spec, dict) or "carrier" not in spec:
            raise DocumentError(f"a finite set is {{'carrier': [...]}}, got {spec!r}")
        return finset(_label_in(x) for x in spec["carrier"])


class PointedSets(_FunctionCategory):
    """Finite pointed sets and basepoint-preserving functions."""

    name = "pointed_set"
    has_zero = True

    def __eq__(self, other):
        return type(other) is PointedSets

    def __hash__(self):
        return hash("pointed_set")

    def is_object(self, a) -> bool:
        return isinstance(a, PointedSet) and a.base in a.carrier

    def is_valid(self, f) -> bool:
        return super().is_valid(f) and self.apply(f, f.dom.base) == f.cod.base

    def _same_base(self, a, b) -> bool:
        return a.base == b.base

    def hom(self, a, b):
        rest = [x for x in a.carrier if x != a.base]
        size = len(b.carrier) ** len(rest)
        if size > self.max_hom:
            raise ExplosionGuard(f"|Hom({a}, {b})| = {size}")
        out = []
        for c in cartesian(b.carrier, repeat=len(rest)):
            t = dict(zip(rest, c))
            t[a.base] = b.base
            out.append(self.function(a, b, t))
        return out

    def subobjects(self, b):
        rest = [x for x in b.carrier if x != b.base]
        out = []
        for mask in cartesian((0, 1), repeat=len(rest)):
            out.append(pointed([b.base] + [x for x, m in zip(rest, mask) if m], b.base))
        return out

    def zero_object(self):
        return pointed(["*"], "*")

    def is_zero_object(self, a) -> bool:
        return self.is_object(a) and len(a.carrier) == 1

    def zero_morphism(self, a, b):
        return Morphism(a, b, tuple(b.base for _ in a.carrier), self)

    def is_zero_morphism(self, f) -> bool:
        return all(y == f.cod.base for y in f.data)

    def image(self, f):
        im = pointed(f.data, f.cod.base)
        return Morphism(f.dom, im, f.data, self), self.inclusion(im, f.cod)

    def kernel(self, f):
        k = pointed([x for x, y in zip(f.dom.carrier, f.data) if y == f.cod.base], f.dom.base)
        return self.inclusion(k, f.dom)

    def cokernel(self, f):
        im = set(f.data)
        q = pointed([y for y in f.cod.carrier if y not in im] + [f.cod.base], f.cod.base)
        return self.function(f.cod, q, {y: (f.cod.base if y in im else y) for y in f.cod.carrier})

    def product(self, a, b):
        p = pointed(list(cartesian(a.carrier, b.carrier)), (a.base, b.base))
        p1 = self.function(p, a, {xy: xy[0] for xy in p.carrier})
        p2 = self.function(p, b, {xy: xy[1] for xy in p.carrier})
        return p, p1, p2

    def pair(self, f, g):
        p, _, _ = self.product(f.cod, g.cod)
        return Morphism(f.dom, p, tuple(zip(f.data, g.data)), self)

    def product_map(self, f, g):
        dom, _, _ = self.product(f.dom, g.dom)
        cod, _, _ = self.product(f.cod, g.cod)
        tf, tg = self.table(f), self.table(g)
        return self.function(dom, cod, {(x, y): (tf[x], tg[y]) for x, y in dom.carrier})

    def split_product_map(self, x, left_dom, right_dom, left_cod, right_cod):
        t = self.table(x)
        f = {a: t[(a, right_dom.base)][0] for a in left_dom.carrier}
        g = {b: t[(left_dom.base, b)][1] for b in right_dom.carrier}
        if any(t[(a, b)] != (f[a], g[b]) for a, b in x.dom.carrier):
            return None
        return self.function(left_dom, left_cod, f), self.function(right_dom, right_cod, g)

    def format_object(self, a):
        return {"carrier": [label_out(x) for x in a.carrier], "base": label_out(a.base)}

    def parse_object(self, spec):
        if spec == "0" or spec == 0:
            return self.zero_object()
        if not isinstance(spec, dict) or "carrier" not in spec or "base" not in spec:
            raise DocumentError(f"a pointed set is {{'carrier': [...], 'base': x}}, got {spec!r}")
        carrier = [_label_in(x) for x in spec["carrier"]]
        base = _label_in(spec["base"])
        if base not in carrier:
            raise DocumentError(f"basepoint {base!r} is not in the carrier")
        return pointed(carrier, base)
