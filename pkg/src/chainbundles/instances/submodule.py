"""Submodules ``nZ`` of the integers, product-completed to ``n1Z x ... x nrZ``.

A morphism acts by rational multiplication, ``x -> q x``; the entry ``q`` is
valid from ``nZ`` to ``mZ`` when ``q n`` is an integer multiple of ``m``.
Hom-sets are infinite, so :meth:`SubmoduleZ.hom` enumerates only the finite
window ``|q| <= window``; searches over this instance are window-relative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .._lattice import gcd_all, in_lattice, rank, solve_left
from ..core import Morphism
from ..errors import DocumentError, KernelsUnsupported, NoImage
from .abelian import MatrixCategory

_RAT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class SubmoduleObject:
    parts: tuple

    @property
    def components(self) -> tuple:
        return self.parts

    def __str__(self) -> str:
        return " x ".join(_atom_str(n) for n in self.parts)


def _atom_str(n: int) -> str:
    if n == 0:
        return "0"
    return "Z" if n == 1 else f"{n}Z"


def nZ(*components: int) -> SubmoduleObject:
    return SubmoduleObject(tuple(components))


def _frac_str(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(eq=False)
class SubmoduleZ(MatrixCategory):
    window: Fraction = field(default=Fraction(4))

    name = "submoduleZ"
    object_type = SubmoduleObject
    zero_atom = 0
    complete_homs = False

    def __post_init__(self):
        self.window = Fraction(self.window)

    def __eq__(self, other):
        return type(other) is SubmoduleZ

    def __hash__(self):
        return hash("submoduleZ")

    def make(self, parts):
        return SubmoduleObject(tuple(parts))

    def atom_ok(self, atom) -> bool:
        return isinstance(atom, int) and atom >= 0

    def atom_valid(self, a, b, q) -> bool:
        if not isinstance(q, Fraction):
            return False
        if a == 0:
            return q == 0
        v = q * a
        if v.denominator != 1:
            return False
        if b == 0:
            return v == 0
        return v.numerator % b == 0

    def atom_norm(self, a, b, q):
        q = Fraction(q)
        return Fraction(0) if a == 0 else q

    def atom_compose(self, a, b, c, q1, q2):
        return q1 * q2

    def atom_add(self, c, q1, q2):
        return Fraction(q1) + Fraction(q2)

    def atom_identity(self, a):
        return Fraction(1) if a else Fraction(0)

    def atom_homs(self, a, b) -> list:
        if a == 0 or b == 0:
            return [Fraction(0)]
        step = Fraction(b, a)
        k = floor(self.window / step)
        return [j * step for j in range(-k, k + 1)]

    def atom_is_zero(self, a) -> bool:
        return a == 0

    def atom_inclusion(self, a, b):
        if b == 0:
            return Fraction(0) if a == 0 else None
        if a % b:
            return None
        return Fraction(1) if a else Fraction(0)

    def subobjects(self, b) -> list:
        return [b]

    def is_zero_morphism(self, f: Morphism) -> bool:
        return all(e == 0 for row in f.data for e in row)

    def solve_square(self, lhs: Morphism, f: Morphism, cod) -> Morphism | None:
        """The unique ``y: f.cod -> cod`` with ``f ; y == lhs``, if any."""
        if not any(cod.parts):
            # Hom(-, 0) has one element
            return self.zero_morphism(f.cod, cod) if self.is_zero_morphism(lhs) else None
        live = [i for i, n in enumerate(f.cod.parts) if n]
        a = [f.data[i] for i in live]
        if not a:
            return None
        sol = solve_left(a, lhs.data)
        if sol is None:
            return None
        rows = []
        for k in range(len(cod.parts)):
            row = [Fraction(0)] * len(f.cod.parts)
            for pos, i in enumerate(live):
                row[i] = sol[k][pos]
            rows.append(tuple(row))
        y = self.morphism(f.cod, cod, tuple(rows))
        return y if self.is_valid(y) else None

    # -- image and kernel -----------------------------------------------------
    def _columns(self, f: Morphism) -> list[list[int]]:
        cols = []
        for j, n in enumerate(f.dom.parts):
            col = []
            for i in range(len(f.cod.parts)):
                v = f.data[i][j] * n
                if v.denominator != 1:
                    raise NoImage(f"{self.describe(f)} is not a valid morphism")
                col.append(v.numerator)
            cols.append(col)
        return cols

    def image(self, f: Morphism):
        cols = self._columns(f)
        parts = []
        for i in range(len(f.cod.parts)):
            g = gcd_all(c[i] for c in cols)
            target = [g if k == i else 0 for k in range(len(f.cod.parts))]
            if g and not in_lattice(cols, target):
                raise NoImage(f"image of {self.describe(f)} is not a product of submodules")
            parts.append(g)
        return self._factor_through(f, SubmoduleObject(tuple(parts)))

    def kernel(self, f: Morphism) -> Morphism:
        live = [j for j, n in enumerate(f.dom.parts) if n and any(f.data[i][j] for i in range(len(f.cod.parts)))]
        cols = [[f.data[i][j] for i in range(len(f.cod.parts))] for j in live]
        if rank(cols) != len(live):
            raise KernelsUnsupported(f"kernel of {self.describe(f)} is not a product of submodules")
        k = SubmoduleObject(tuple(0 if j in live else n for j, n in enumerate(f.dom.parts)))
        return self.inclusion(k, f.dom)

    # -- document syntax ------------------------------------------------------
    def format_object(self, a):
        return a.parts[0] if len(a.parts) == 1 else list(a.parts)

    def parse_object(self, spec):
        if isinstance(spec, list):
            if not spec or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 0 for n in spec):
                raise DocumentError(f"submodule tuple must be nonnegative integers, got {spec!r}")
            return SubmoduleObject(tuple(spec))
        if isinstance(spec, int) and not isinstance(spec, bool) and spec >= 0:
            return SubmoduleObject((spec,))
        if isinstance(spec, str):
            s = spec.strip()
            if s == "0":
                return SubmoduleObject((0,))
            if s == "Z":
                return SubmoduleObject((1,))
            if s.endswith("Z") and s[:-1].isdigit():
                return SubmoduleObject((int(s[:-1]),))
        raise DocumentError(f"submodule object must be n, 'nZ' or a list of n, got {spec!r}")

    def format_entry(self, a, b, q):
        return _frac_str(q)

    def parse_entry(self, a, b, spec):
        if isinstance(spec, bool) or isinstance(spec, float):
            raise DocumentError(f"rational entries must be integers or 'p/q' strings, got {spec!r}")
        if isinstance(spec, int):
            return Fraction(spec)
        if isinstance(spec, str):
            m = _RAT.match(spec)
            if m and m.group(2) != "0":
                return Fraction(int(m.group(1)), int(m.group(2) or 1))
        raise DocumentError(f"rational entries must be integers or 'p/q' strings, got {spec!r}")
