"""Matrix calculus shared by the product-completed abelian instances.

Objects are tuples of *atoms* (one cyclic group or one submodule of Z per
component).  A morphism between tuples is a matrix whose entry ``(i, j)`` is
an atomic homomorphism from domain atom ``j`` to codomain atom ``i``; the
morphism acts by summing the entries of each row.  Single-atom objects and
1x1 matrices reproduce the plain (non-product) notation.
"""

from __future__ import annotations

from itertools import product as cartesian

from ..core import Category, Morphism, compose
from ..errors import ExplosionGuard, NoImage

Matrix = tuple  # tuple of row tuples


class MatrixCategory(Category):
    has_zero = True
    max_hom = 10**6

    # -- atom interface, supplied by subclasses -------------------------------
    def atom_ok(self, atom) -> bool:
        raise NotImplementedError

    def atom_valid(self, a, b, e) -> bool:
        raise NotImplementedError

    def atom_norm(self, a, b, e):
        raise NotImplementedError

    def atom_compose(self, a, b, c, e1, e2):
        raise NotImplementedError

    def atom_add(self, c, e1, e2):
        raise NotImplementedError

    def atom_identity(self, a):
        raise NotImplementedError

    def atom_homs(self, a, b) -> list:
        raise NotImplementedError

    def atom_is_zero(self, a) -> bool:
        raise NotImplementedError

    def atom_inclusion(self, a, b):
        """Entry of the inclusion ``a -> b`` or ``None`` when ``a`` is not below ``b``."""
        raise NotImplementedError

    def make(self, parts):
        raise NotImplementedError

    zero_atom = None

    # -- category structure -----------------------------------------------------
    def is_object(self, a) -> bool:
        return type(a) is self.object_type and len(a.parts) >= 1 and all(map(self.atom_ok, a.parts))

    def morphism(self, dom, cod, data) -> Morphism:
        data = tuple(
            tuple(self.atom_norm(dom.parts[j], cod.parts[i], data[i][j]) for j in range(len(dom.parts)))
            for i in range(len(cod.parts))
        )
        return Morphism(dom, cod, data, self)

    def is_valid(self, f: Morphism) -> bool:
        if not (self.is_object(f.dom) and self.is_object(f.cod)):
            return False
        rows = f.data
        if len(rows) != len(f.cod.parts) or any(len(r) != len(f.dom.parts) for r in rows):
            return False
        return all(
            self.atom_valid(a, b, rows[i][j])
            for i, b in enumerate(f.cod.parts)
            for j, a in enumerate(f.dom.parts)
        )

    def identity(self, a) -> Morphism:
        n = len(a.parts)
        data = tuple(
            tuple(self.atom_identity(a.parts[i]) if i == j else 0 for j in range(n)) for i in range(n)
        )
        return self.morphism(a, a, data)

    def _compose(self, f: Morphism, g: Morphism) -> Morphism:
        A, B, C = f.dom.parts, f.cod.parts, g.cod.parts
        rows = []
        for i, c in enumerate(C):
            row = []
            for j, a in enumerate(A):
                acc = 0
                for k, b in enumerate(B):
                    acc = self.atom_add(c, acc, self.atom_compose(a, b, c, f.data[k][j], g.data[i][k]))
                row.append(acc)
            rows.append(tuple(row))
        return self.morphism(f.dom, g.cod, tuple(rows))

    def hom(self, a, b) -> list[Morphism]:
        entries = [[self.atom_homs(x, y) for x in a.parts] for y in b.parts]
        size = 1
        for row in entries:
            for e in row:
                size *= len(e)
        if size > self.max_hom:
            raise ExplosionGuard(f"|Hom({self.format_object(a)}, {self.format_object(b)})| = {size}")
        flat = [e for row in entries for e in row]
        n = len(a.parts)
        out = []
        for choice in cartesian(*flat):
            data = tuple(tuple(choice[i * n:(i + 1) * n]) for i in range(len(b.parts)))
            out.append(self.morphism(a, b, data))
        return out

    # -- subobjects -------------------------------------------------------------
    def inclusion(self, a, b) -> Morphism | None:
        if len(a.parts) != len(b.parts):
            return None
        diag = []
        for x, y in zip(a.parts, b.parts):
            e = self.atom_inclusion(x, y)
            if e is None:
                return None
            diag.append(e)
        n = len(diag)
        data = tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n))
        return self.morphism(a, b, data)

    def corestrict(self, g: Morphism, b) -> Morphism | None:
        if self.inclusion(b, g.cod) is None:
            return None
        h = self.morphism(g.dom, b, self._pull_entries(g, b))
        if not self.is_valid(h):
            return None
        return h if compose(h, self.inclusion(b, g.cod)) == g else None

    def _pull_entries(self, g: Morphism, b):
        return g.data

    # -- zero -------------------------------------------------------------------
    def zero_object(self):
        return self.make((self.zero_atom,))

    def is_zero_object(self, a) -> bool:
        return self.is_object(a) and all(self.atom_is_zero(x) for x in a.parts)

    def zero_morphism(self, a, b) -> Morphism:
        return self.morphism(a, b, tuple(tuple(0 for _ in a.parts) for _ in b.parts))

    def is_zero_morphism(self, f: Morphism) -> bool:
        return all(e == 0 for row in f.data for e in row)

    # -- products ---------------------------------------------------------------
    def product(self, a, b):
        p = self.make(a.parts + b.parts)
        na, nb = len(a.parts), len(b.parts)
        ida, idb = self.identity(a).data, self.identity(b).data
        p1 = tuple(tuple(ida[i][j] if j < na else 0 for j in range(na + nb)) for i in range(na))
        p2 = tuple(tuple(idb[i][j - na] if j >= na else 0 for j in range(na + nb)) for i in range(nb))
        return p, self.morphism(p, a, p1), self.morphism(p, b, p2)

    def pair(self, f: Morphism, g: Morphism) -> Morphism:
        if f.dom != g.dom:
            raise ValueError("pairing needs a common domain")
        p, _, _ = self.product(f.cod, g.cod)
        return self.morphism(f.dom, p, f.data + g.data)

    def product_map(self, f: Morphism, g: Morphism) -> Morphism:
        dom, _, _ = self.product(f.dom, g.dom)
        cod, _, _ = self.product(f.cod, g.cod)
        na, nb = len(f.dom.parts), len(g.dom.parts)
        rows = [tuple(r) + (0,) * nb for r in f.data] + [(0,) * na + tuple(r) for r in g.data]
        return self.morphism(dom, cod, tuple(rows))

    def split_product_map(self, x, left_dom, right_dom, left_cod, right_cod):
        na, nc = len(left_dom.parts), len(left_cod.parts)
        rows = x.data
        top, bottom = rows[:nc], rows[nc:]
        if any(e != 0 for r in top for e in r[na:]) or any(e != 0 for r in bottom for e in r[:na]):
            return None
        f = self.morphism(left_dom, left_cod, tuple(tuple(r[:na]) for r in top))
        g = self.morphism(right_dom, right_cod, tuple(tuple(r[na:]) for r in bottom))
        return f, g

    # -- factorization helpers ------------------------------------------------
    def _factor_through(self, f: Morphism, im) -> tuple[Morphism, Morphism]:
        j = self.inclusion(im, f.cod)
        if j is None:
            raise NoImage(f"{self.format_object(im)} is not a subobject of {self.format_object(f.cod)}")
        q = self.morphism(f.dom, im, self._pull_entries(f, im))
        return q, j

    def format_morphism(self, f: Morphism):
        if len(f.dom.parts) == 1 and len(f.cod.parts) == 1:
            return self.format_entry(f.dom.parts[0], f.cod.parts[0], f.data[0][0])
        return [
            [self.format_entry(a, b, f.data[i][j]) for j, a in enumerate(f.dom.parts)]
            for i, b in enumerate(f.cod.parts)
        ]

    def format_entry(self, a, b, e):
        return e

    def parse_morphism(self, dom, cod, spec) -> Morphism:
        from ..errors import DocumentError

        nd, nc = len(dom.parts), len(cod.parts)
        if isinstance(spec, list) and spec and all(isinstance(r, list) for r in spec):
            if len(spec) != nc or any(len(r) != nd for r in spec):
                raise DocumentError(f"matrix shape must be {nc}x{nd}, got {spec!r}")
            data = [[self.parse_entry(dom.parts[j], cod.parts[i], spec[i][j]) for j in range(nd)] for i in range(nc)]
        elif isinstance(spec, list):
            if nd != nc or len(spec) != nd:
                raise DocumentError(f"diagonal list needs {nd} entries and equal arity, got {spec!r}")
            data = [
                [self.parse_entry(dom.parts[j], cod.parts[i], spec[i]) if i == j else 0 for j in range(nd)]
                for i in range(nc)
            ]
        else:
            if nd != 1 or nc != 1:
                if nd == nc:
                    return self.parse_morphism(dom, cod, [spec] * nd)
                raise DocumentError(f"scalar {spec!r} given for a {nc}x{nd} morphism")
            data = [[self.parse_entry(dom.parts[0], cod.parts[0], spec)]]
        return self.morphism(dom, cod, tuple(tuple(r) for r in data))

    def parse_entry(self, a, b, spec):
        raise NotImplementedError
