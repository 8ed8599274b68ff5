"""Finitely generated free abelian groups with labeled bases.

This is the ambient category of integer chain complexes.  A morphism is an
integer matrix with one row per codomain basis element and one column per
domain basis element.  Subobjects are sub-bases (kept in the ambient order)
and images exist when they are spanned by basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .._lattice import in_lattice
from ..core import Category, Morphism
from ..errors import DocumentError, ExplosionGuard, ImageNotBasisAligned


@dataclass(frozen=True)
class FreeModule:
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.basis)) + ">" if self.basis else "0"


class FreeZ(Category):
    """Free Z-modules ``Z<basis>`` and integer matrices."""

    name = "freeZ"
    has_zero = True
    complete_homs = False

    def __init__(self, window: int = 1, max_hom: int = 10**6):
        self.window = window
        self.max_hom = max_hom

    def __eq__(self, other):
        return isinstance(other, FreeZ)

    def __hash__(self):
        return hash("freeZ")

    def is_object(self, a) -> bool:
        return isinstance(a, FreeModule) and len(set(a.basis)) == len(a.basis)

    def matrix(self, dom, cod, rows) -> Morphism:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if len(data) != cod.rank or any(len(r) != dom.rank for r in data):
            raise ValueError(f"matrix shape must be {cod.rank}x{dom.rank}")
        return Morphism(dom, cod, data, self)

    def is_valid(self, f: Morphism) -> bool:
        return (
            self.is_object(f.dom)
            and self.is_object(f.cod)
            and len(f.data) == f.cod.rank
            and all(len(r) == f.dom.rank and all(isinstance(x, int) for x in r) for r in f.data)
        )

    def identity(self, a) -> Morphism:
        n = a.rank
        return self.matrix(a, a, [[int(i == j) for j in range(n)] for i in range(n)])

    def _compose(self, f, g):
        A, B = f.data, g.data
        rows = [[sum(B[i][k] * A[k][j] for k in range(f.cod.rank)) for j in range(f.dom.rank)] for i in range(g.cod.rank)]
        return self.matrix(f.dom, g.cod, rows)

    def hom(self, a, b) -> list[Morphism]:
        span = range(-self.window, self.window + 1)
        size = len(span) ** (a.rank * b.rank)
        if size > self.max_hom:
            raise ExplosionGuard(f"|window of Hom({a}, {b})| = {size}")
        out = []
        for flat in cartesian(span, repeat=a.rank * b.rank):
            out.append(self.matrix(a, b, [flat[i * a.rank:(i + 1) * a.rank] for i in range(b.rank)]))
        return out

    def inclusion(self, a, b):
        if not set(a.basis) <= set(b.basis):
            return None
        if [x for x in b.basis if x in a.basis] != list(a.basis):
            return None
        return self.matrix(a, b, [[int(x == y) for y in a.basis] for x in b.basis])

    def zero_object(self):
        return FreeModule(())

    def is_zero_object(self, a) -> bool:
        return self.is_object(a) and a.rank == 0

    def zero_morphism(self, a, b):
        return self.matrix(a, b, [[0] * a.rank for _ in range(b.rank)])

    def is_zero_morphism(self, f) -> bool:
        return all(x == 0 for r in f.data for x in r)

    def image(self, f):
        hit = [i for i, r in enumerate(f.data) if any(r)]
        cols = [[f.data[i][j] for i in range(f.cod.rank)] for j in range(f.dom.rank)]
        for i in hit:
            unit = [int(k == i) for k in range(f.cod.rank)]
            if not in_lattice(cols, unit):
                raise ImageNotBasisAligned(
                    f"image of {self.describe(f)} does not contain basis element {f.cod.basis[i]}"
                )
        im = FreeModule(tuple(f.cod.basis[i] for i in hit))
        return self.matrix(f.dom, im, [f.data[i] for i in hit]), self.inclusion(im, f.cod)

    def corestrict(self, g, b):
        j = self.inclusion(b, g.cod)
        if j is None:
            return None
        keep = [g.cod.basis.index(x) for x in b.basis]
        if any(any(r) for i, r in enumerate(g.data) if i not in keep):
            return None
        return self.matrix(g.dom, b, [g.data[i] for i in keep])

    def format_object(self, a):
        return [str(x) for x in a.basis]

    def parse_object(self, spec):
        if spec == 0 or spec == "0":
            return self.zero_object()
        if not isinstance(spec, list) or not all(isinstance(x, str) for x in spec):
            raise DocumentError(f"a free module is a list of basis labels, got {spec!r}")
        return FreeModule(tuple(spec))

    def format_morphism(self, f):
        return [list(r) for r in f.data]

    def parse_morphism(self, dom, cod, spec):
        if not isinstance(spec, list) or not all(isinstance(r, list) for r in spec):
            raise DocumentError(f"a free-module map is an integer matrix, got {spec!r}")
        try:
            return self.matrix(dom, cod, spec)
        except ValueError as e:
            raise DocumentError(str(e)) from None
