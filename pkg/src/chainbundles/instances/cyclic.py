"""Finite cyclic groups and their subgroups, product-completed.

An atom ``(n, d)`` with ``d | n`` is the subgroup ``dZ_n = {0, d, 2d, ...}``
of ``Z_n``; ``d = 1`` is the whole group and ``d = n`` the trivial subgroup.
An atomic homomorphism is fixed by the image ``e`` of the generator ``d``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd, prod

from .._lattice import in_lattice
from ..core import Morphism
from ..errors import CokernelsUnsupported, DocumentError, ExplosionGuard, KernelsUnsupported, NoImage
from .abelian import MatrixCategory

_ATOM = re.compile(r"^\s*Z\((\d+)\)(?:\[(\d+)\])?\s*$")


@dataclass(frozen=True)
class CyclicObject:
    parts: tuple

    @property
    def modulus(self) -> int:
        (n, _), = self.parts
        return n

    @property
    def divisor(self) -> int:
        (_, d), = self.parts
        return d

    @property
    def order(self) -> int:
        return prod(n // d for n, d in self.parts)

    def __str__(self) -> str:
        return " x ".join(_atom_str(a) for a in self.parts)


def _atom_str(atom) -> str:
    n, d = atom
    if n == 1:
        return "0"
    return f"Z({n})" if d == 1 else f"Z({n})[{d}]"


def Z(n: int, d: int = 1) -> CyclicObject:
    return CyclicObject(((n, d),))


class CyclicGroups(MatrixCategory):
    """Finite cyclic groups ``Z_n``, their subgroups, and finite products."""

    name = "cyclic"
    object_type = CyclicObject
    zero_atom = (1, 1)
    max_elements = 10**5

    def __eq__(self, other):
        return type(other) is CyclicGroups

    def __hash__(self):
        return hash("cyclic")

    def make(self, parts):
        return CyclicObject(tuple(parts))

    def atom_ok(self, atom) -> bool:
        n, d = atom
        return n >= 1 and d >= 1 and n % d == 0

    def atom_valid(self, a, b, e) -> bool:
        (n1, d1), (n2, d2) = a, b
        return isinstance(e, int) and e % d2 == 0 and ((n1 // d1) * e) % n2 == 0

    def atom_norm(self, a, b, e):
        return e % b[0]

    def atom_compose(self, a, b, c, e1, e2):
        return ((e1 // b[1]) * e2) % c[0]

    def atom_add(self, c, e1, e2):
        return (e1 + e2) % c[0]

    def atom_identity(self, a):
        return a[1] % a[0]

    def atom_homs(self, a, b) -> list:
        (n1, d1), (n2, d2) = a, b
        return [e for e in range(0, n2, d2) if ((n1 // d1) * e) % n2 == 0]

    def atom_is_zero(self, a) -> bool:
        return a[0] == a[1]

    def atom_inclusion(self, a, b):
        if a[0] != b[0] or a[1] % b[1]:
            return None
        return a[1] % a[0]

    def subobjects(self, b) -> list:
        options = [[(n, e) for e in range(d, n + 1, d) if n % e == 0] for n, d in b.parts]
        return [CyclicObject(tuple(c)) for c in cartesian(*options)]

    # -- elements ---------------------------------------------------------------
    def elements(self, a) -> list:
        if a.order > self.max_elements:
            raise ExplosionGuard(f"{a} has {a.order} elements")
        per = [list(range(0, n, d)) for n, d in a.parts]
        if len(per) == 1:
            return per[0]
        return [tuple(c) for c in cartesian(*per)]

    def apply(self, f: Morphism, x):
        xs = (x,) if len(f.dom.parts) == 1 else x
        ys = []
        for i, (n, _) in enumerate(f.cod.parts):
            ys.append(sum((xs[j] // d) * f.data[i][j] for j, (_, d) in enumerate(f.dom.parts)) % n)
        return ys[0] if len(ys) == 1 else tuple(ys)

    # -- image, kernel, cokernel ------------------------------------------------
    def _image_parts(self, f: Morphism):
        cols = [[f.data[i][j] for i in range(len(f.cod.parts))] for j in range(len(f.dom.parts))]
        rels = [[n if k == i else 0 for k in range(len(f.cod.parts))] for i, (n, _) in enumerate(f.cod.parts)]
        parts = []
        for i, (n, _) in enumerate(f.cod.parts):
            g = n
            for c in cols:
                g = gcd(g, c[i])
            target = [g if k == i else 0 for k in range(len(f.cod.parts))]
            if not in_lattice(cols + rels, target):
                return None
            parts.append((n, g))
        return CyclicObject(tuple(parts))

    def image(self, f: Morphism):
        im = self._image_parts(f)
        if im is None:
            raise NoImage(f"image of {self.describe(f)} is not a product of cyclic subgroups")
        return self._factor_through(f, im)

    def kernel(self, f: Morphism) -> Morphism:
        ker = [x for x in self.elements(f.dom) if self._is_zero_elem(self.apply(f, x))]
        xs = [(x,) if len(f.dom.parts) == 1 else x for x in ker]
        parts = []
        for j, (n, _) in enumerate(f.dom.parts):
            g = n
            for x in xs:
                g = gcd(g, x[j])
            parts.append((n, g))
        k = CyclicObject(tuple(parts))
        if k.order != len(ker):
            raise KernelsUnsupported(f"kernel of {self.describe(f)} is not a product of cyclic subgroups")
        return self.inclusion(k, f.dom)

    @staticmethod
    def _is_zero_elem(y) -> bool:
        return y == 0 if isinstance(y, int) else not any(y)

    def cokernel(self, f: Morphism) -> Morphism:
        im = self._image_parts(f)
        if im is None:
            raise CokernelsUnsupported(f"image of {self.describe(f)} is not a product of cyclic subgroups")
        parts = tuple((g // d, 1) for (_, g), (_, d) in zip(im.parts, f.cod.parts))
        q = CyclicObject(parts)
        n = len(parts)
        data = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return self.morphism(f.cod, q, data)

    # -- document syntax --------------------------------------------------------
    def format_object(self, a):
        strs = [_atom_str(p) for p in a.parts]
        return strs[0] if len(strs) == 1 else strs

    def parse_object(self, spec):
        if isinstance(spec, list):
            if not spec:
                raise DocumentError("empty product object")
            return CyclicObject(tuple(p for s in spec for p in self.parse_object(s).parts))
        if spec == 0 or spec == "0":
            return Z(1)
        if not isinstance(spec, str):
            raise DocumentError(f"cyclic object must look like Z(n) or Z(n)[d], got {spec!r}")
        m = _ATOM.match(spec)
        if not m:
            raise DocumentError(f"cyclic object must look like Z(n) or Z(n)[d], got {spec!r}")
        n, d = int(m.group(1)), int(m.group(2) or 1)
        if n < 1 or d < 1 or n % d:
            raise DocumentError(f"{spec!r}: divisor must divide the modulus")
        return Z(n, d)

    def format_entry(self, a, b, e):
        return e if a[1] == 1 else f"gen:{e}"

    def parse_entry(self, a, b, spec):
        if isinstance(spec, bool):
            raise DocumentError(f"bad cyclic morphism entry {spec!r}")
        if isinstance(spec, int):
            return (spec * a[1]) % b[0]
        if isinstance(spec, str):
            s = spec.strip()
            if s.startswith("gen:"):
                s = s[4:]
                try:
                    return int(s) % b[0]
                except ValueError:
                    pass
            else:
                try:
                    return (int(s) * a[1]) % b[0]
                except ValueError:
                    pass
        raise DocumentError(f"bad cyclic morphism entry {spec!r}: use an integer multiplier or 'gen:e'")

    def multiplier(self, a, b, e):
        """Smallest ``k >= 0`` with ``x -> kx`` equal to the atomic map ``e``, or ``None``."""
        for k in range(b[0]):
            if (k * a[1]) % b[0] == e:
                return k
        return None

    def transport_multiplier(self, x: Morphism, dom, cod) -> Morphism | None:
        """The arrow ``dom -> cod`` given by the same multiplier ``k`` as ``x``."""
        if len(x.dom.parts) != 1 or len(dom.parts) != 1 or len(cod.parts) != 1:
            return None
        k = self.multiplier(x.dom.parts[0], x.cod.parts[0], x.data[0][0])
        if k is None:
            return None
        return self.morphism(dom, cod, (((k * dom.parts[0][1]),),))
