"""The augmented simplex category: ordinals ``[n] = {0..n}``, ``[-1]`` empty.

Morphisms are weakly monotone maps, stored as their value lists.  The
subobject preorder is the chain of initial segments ``[m] <= [n]`` for
``m <= n``; images exist exactly when a map's range is an initial segment.
There is no zero object: ``[-1]`` is initial and ``[0]`` is terminal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..core import Category, Morphism
from ..errors import DocumentError, ExplosionGuard, NoImage
from ..report import Report


@dataclass(frozen=True, order=True)
class Ordinal:
    n: int

    def __str__(self) -> str:
        return f"[{self.n}]"


class DeltaPlus(Category):
    """Finite ordinals with weakly monotone maps."""

    name = "delta_plus"
    max_hom = 10**6

    def __eq__(self, other):
        return type(other) is DeltaPlus

    def __hash__(self):
        return hash("delta_plus")

    def is_object(self, a) -> bool:
        return isinstance(a, Ordinal) and a.n >= -1

    def is_valid(self, f: Morphism) -> bool:
        v = f.data
        if not (self.is_object(f.dom) and self.is_object(f.cod)) or len(v) != f.dom.n + 1:
            return False
        if any(not 0 <= x <= f.cod.n for x in v):
            return False
        return all(a <= b for a, b in zip(v, v[1:]))

    def monotone(self, dom: Ordinal, cod: Ordinal, values) -> Morphism:
        return Morphism(dom, cod, tuple(values), self)

    def identity(self, a) -> Morphism:
        return self.monotone(a, a, range(a.n + 1))

    def _compose(self, f, g):
        return self.monotone(f.dom, g.cod, (g.data[x] for x in f.data))

    def hom(self, a, b) -> list[Morphism]:
        if a.n == -1:
            return [self.monotone(a, b, ())]
        out = []
        for values in combinations_with_replacement(range(b.n + 1), a.n + 1):
            out.append(self.monotone(a, b, values))
            if len(out) > self.max_hom:
                raise ExplosionGuard(f"|Hom({a}, {b})| exceeds {self.max_hom}")
        return out

    def inclusion(self, a, b):
        if a.n > b.n:
            return None
        return self.monotone(a, b, range(a.n + 1))

    def subobjects(self, b) -> list:
        return [Ordinal(k) for k in range(-1, b.n + 1)]

    def image(self, f):
        top = max(f.data, default=-1)
        if set(f.data) != set(range(top + 1)):
            raise NoImage(f"range {sorted(set(f.data))} of {self.describe(f)} is not an initial segment")
        im = Ordinal(top)
        return self.monotone(f.dom, im, f.data), self.inclusion(im, f.cod)

    def corestrict(self, g, b):
        if b.n > g.cod.n or any(x > b.n for x in g.data):
            return None
        return self.monotone(g.dom, b, g.data)

    def check_bundle(self, bundle, report: Report) -> None:
        """The ordinal ordering ``[m_L] <= ... <= [m_1]`` and the base ``[0]``."""
        report.add("base", "base is [0]", bundle.base == Ordinal(0), str(bundle.base))
        ns = [a.n for a in bundle.objects[1:]]
        for i in range(1, len(ns)):
            upper, lower = ns[i], ns[i - 1]
            report.add(
                f"level {i + 1}",
                f"[m_{i + 1}] <= [m_{i}]",
                upper <= lower,
                f"[{upper}] vs [{lower}]",
            )

    def format_object(self, a):
        return a.n

    def parse_object(self, spec):
        if isinstance(spec, bool) or not isinstance(spec, int) or spec < -1:
            raise DocumentError(f"an ordinal is an integer n >= -1, got {spec!r}")
        return Ordinal(spec)

    def format_morphism(self, f):
        return list(f.data)

    def parse_morphism(self, dom, cod, spec):
        if not isinstance(spec, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in spec):
            raise DocumentError(f"a monotone map is a list of integers, got {spec!r}")
        return self.monotone(dom, cod, spec)
