"""Simplicial complexes, their integer chain complexes and induced chain maps.

Vertices carry a declared order and every simplex is stored sorted by it.
The boundary is the alternating sum of faces in that order, and an induced
chain map sends a simplex to its sorted image with the sign of the sorting
permutation, or to 0 when two vertices collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bundles import BundleMorphism, ChainBundle, Explicit, table_assignment
from .errors import ImageNotBasisAligned
from .instances.freez import FreeModule, FreeZ
from .report import Report
from ._lattice import in_lattice

Simplex = tuple


def simplex_label(s: Simplex) -> str:
    names = [str(v) for v in s]
    return "".join(names) if all(len(n) == 1 for n in names) else "-".join(names)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    simplices: frozenset

    def key(self, s: Simplex):
        return (len(s), tuple(self.vertices.index(v) for v in s))

    def sort_simplex(self, vs) -> Simplex:
        return tuple(sorted(set(vs), key=self.vertices.index))

    def grade(self, n: int) -> list[Simplex]:
        return sorted((s for s in self.simplices if len(s) == n + 1), key=self.key)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)


def simplicial_complex(vertices, simplices) -> SimplicialComplex:
    vertices = tuple(vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertex label")
    out = set()
    for s in simplices:
        s = tuple(s)
        if not s:
            raise ValueError("simplices are nonempty")
        for v in s:
            if v not in vertices:
                raise ValueError(f"simplex uses undeclared vertex {v!r}")
        out.add(tuple(sorted(set(s), key=vertices.index)))
    return SimplicialComplex(vertices, frozenset(out))


def closure(K: SimplicialComplex) -> SimplicialComplex:
    faces = set()
    for s in K.simplices:
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    return SimplicialComplex(K.vertices, frozenset(faces))


def validate_complex(K: SimplicialComplex) -> Report:
    """Report every missing face."""
    r = Report()
    missing = 0
    for s in sorted(K.simplices, key=K.key):
        for k in range(1, len(s)):
            for face in combinations(s, k):
                if face not in K.simplices:
                    missing += 1
                    r.add(simplex_label(s), "face present", False, simplex_label(face))
    if not missing:
        r.add("complex", "face-closed", True, f"{len(K.simplices)} simplices")
    return r


@dataclass(frozen=True)
class SimplicialMap:
    dom: SimplicialComplex
    cod: SimplicialComplex
    vertex_map: tuple  # (v, f(v)) pairs in dom vertex order

    def __call__(self, v):
        return dict(self.vertex_map)[v]

    def image_of(self, s: Simplex) -> Simplex:
        return self.cod.sort_simplex(self(v) for v in s)


def simplicial_map(dom: SimplicialComplex, cod: SimplicialComplex, table: dict) -> SimplicialMap:
    return SimplicialMap(dom, cod, tuple((v, table[v]) for v in dom.vertices if v in table))


def validate_simplicial_map(f: SimplicialMap) -> Report:
    r = Report()
    table = dict(f.vertex_map)
    for v in f.dom.vertices:
        r.add(str(v), "has an image vertex", v in table and table[v] in f.cod.vertices, str(table.get(v)))
    if not r.ok:
        return r
    bad = 0
    for s in sorted(f.dom.simplices, key=f.dom.key):
        im = f.image_of(s)
        if im not in f.cod.simplices:
            bad += 1
            r.add(simplex_label(s), "image is a simplex", False, simplex_label(im))
    if not bad:
        r.add("map", "simplices go to simplices", True, f"{len(f.dom.simplices)} simplices")
    return r


def compose_simplicial(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """``f`` then ``g``."""
    return SimplicialMap(f.dom, g.cod, tuple((v, g(w)) for v, w in f.vertex_map))


def identity_simplicial(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, tuple((v, v) for v in K.vertices))


def image_subcomplex(f: SimplicialMap) -> SimplicialComplex:
    verts = {f(v) for v in f.dom.vertices}
    order = tuple(v for v in f.cod.vertices if v in verts)
    return SimplicialComplex(order, frozenset(f.image_of(s) for s in f.dom.simplices))


# ---------------------------------------------------------------------------
# Integer chain complexes


def _mat(rows, shape) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    return a.reshape(shape)


def _tup(a: np.ndarray) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in a)


@dataclass(frozen=True)
class ChainComplexZ:
    """Graded bases ``C_0 .. C_top`` and boundary matrices ``d_n: C_n -> C_{n-1}``.

    ``boundaries[n - 1]`` is ``d_n`` for ``n >= 1``, stored as nested tuples
    with one row per basis element of ``C_{n-1}``.
    """

    bases: tuple
    boundaries: tuple

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def basis(self, n: int) -> tuple:
        return self.bases[n] if 0 <= n < len(self.bases) else ()

    def boundary(self, n: int) -> np.ndarray:
        rows, cols = len(self.basis(n - 1)), len(self.basis(n))
        if 1 <= n <= self.top:
            return _mat(self.boundaries[n - 1], (rows, cols))
        return np.zeros((rows, cols), dtype=np.int64)

    def check_square_zero(self) -> Report:
        r = Report()
        for n in range(2, self.top + 1):
            prod = self.boundary(n - 1) @ self.boundary(n)
            r.add(f"grade {n}", "d_{n-1} d_n == 0", not prod.any(), str(prod.tolist()))
        if self.top < 2:
            r.add("complex", "d_{n-1} d_n == 0", True, "fewer than three grades")
        return r


def chain_complex(bases, boundaries) -> ChainComplexZ:
    bases = [tuple(b) for b in bases]
    while bases and not bases[-1]:
        bases.pop()
    bs = []
    for n in range(1, len(bases)):
        bs.append(_tup(_mat(boundaries[n - 1], (len(bases[n - 1]), len(bases[n])))))
    return ChainComplexZ(tuple(bases), tuple(bs))


def chain_complex_of(K: SimplicialComplex) -> ChainComplexZ:
    grades = [K.grade(n) for n in range(K.dimension + 1)]
    bounds = []
    for n in range(1, len(grades)):
        index = {s: i for i, s in enumerate(grades[n - 1])}
        d = np.zeros((len(grades[n - 1]), len(grades[n])), dtype=np.int64)
        for j, s in enumerate(grades[n]):
            for i in range(len(s)):
                d[index[s[:i] + s[i + 1:]], j] += (-1) ** i
        bounds.append(_tup(d))
    C = ChainComplexZ(tuple(tuple(simplex_label(s) for s in g) for g in grades), tuple(bounds))
    assert C.check_square_zero().ok, "boundary squares to a nonzero map"
    return C


@dataclass(frozen=True)
class ChainMapZ:
    dom: ChainComplexZ
    cod: ChainComplexZ
    components: tuple  # C_n(f) for n = 0 .. top

    def component(self, n: int) -> np.ndarray:
        rows, cols = len(self.cod.basis(n)), len(self.dom.basis(n))
        if 0 <= n < len(self.components):
            return _mat(self.components[n], (rows, cols))
        return np.zeros((rows, cols), dtype=np.int64)

    @property
    def top(self) -> int:
        return max(self.dom.top, self.cod.top)


def chain_map(dom: ChainComplexZ, cod: ChainComplexZ, components) -> ChainMapZ:
    top = max(dom.top, cod.top)
    comps = []
    for n in range(top + 1):
        shape = (len(cod.basis(n)), len(dom.basis(n)))
        comps.append(_tup(_mat(components[n], shape)) if n < len(components) else _tup(np.zeros(shape, dtype=np.int64)))
    return ChainMapZ(dom, cod, tuple(comps))


def check_chain_map(F: ChainMapZ) -> Report:
    """``d_n^cod C_n(f) == C_{n-1}(f) d_n^dom`` for every grade."""
    r = Report()
    for n in range(1, F.top + 1):
        lhs = F.cod.boundary(n) @ F.component(n)
        rhs = F.component(n - 1) @ F.dom.boundary(n)
        r.add(f"grade {n}", "d C_n(f) == C_{n-1}(f) d", np.array_equal(lhs, rhs),
              f"{lhs.tolist()} vs {rhs.tolist()}")
    return r


def induced_chain_map(f: SimplicialMap) -> ChainMapZ:
    C1, C2 = chain_complex_of(f.dom), chain_complex_of(f.cod)
    top = max(C1.top, C2.top)
    comps = []
    for n in range(top + 1):
        src, dst = f.dom.grade(n), f.cod.grade(n)
        index = {s: i for i, s in enumerate(dst)}
        m = np.zeros((len(dst), len(src)), dtype=np.int64)
        for j, s in enumerate(src):
            images = [f(v) for v in s]
            if len(set(images)) != len(images):
                continue  # degenerate image collapses to 0
            order = sorted(range(len(images)), key=lambda k: f.cod.vertices.index(images[k]))
            m[index[tuple(images[k] for k in order)], j] += _sign(order)
        comps.append(_tup(m))
    F = ChainMapZ(C1, C2, tuple(comps))
    assert check_chain_map(F).ok, "induced map does not commute with the boundary"
    return F


def _sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def compose_chain_maps(F: ChainMapZ, G: ChainMapZ) -> ChainMapZ:
    """``F`` then ``G``."""
    top = max(F.top, G.top)
    return ChainMapZ(F.dom, G.cod, tuple(_tup(G.component(n) @ F.component(n)) for n in range(top + 1)))


def identity_chain_map(C: ChainComplexZ) -> ChainMapZ:
    return ChainMapZ(C, C, tuple(_tup(np.eye(len(b), dtype=np.int64)) for b in C.bases))


@dataclass(frozen=True)
class ChainFactorization:
    epi_part: ChainMapZ
    inclusion_part: ChainMapZ
    intermediate: ChainComplexZ


def factorize_chain_map(F: ChainMapZ) -> ChainFactorization:
    """Factor through the sub-bases hit by ``F``.

    Each component's image must be spanned by the basis elements it touches;
    otherwise :class:`ImageNotBasisAligned` is raised.
    """
    top = F.top
    hits = []
    for n in range(top + 1):
        m = F.component(n)
        hit = [i for i in range(m.shape[0]) if m[i].any()]
        cols = [[int(x) for x in m[:, j]] for j in range(m.shape[1])]
        for i in hit:
            unit = [int(k == i) for k in range(m.shape[0])]
            if not in_lattice(cols, unit):
                raise ImageNotBasisAligned(f"grade {n}: image does not contain {F.cod.basis(n)[i]}")
        hits.append(hit)
    bases = [tuple(F.cod.basis(n)[i] for i in hits[n]) for n in range(top + 1)]
    bounds = []
    for n in range(1, top + 1):
        d = F.cod.boundary(n)
        sub = d[np.ix_(hits[n - 1], hits[n])] if hits[n - 1] and hits[n] else np.zeros((len(hits[n - 1]), len(hits[n])), dtype=np.int64)
        outside = [i for i in range(d.shape[0]) if i not in hits[n - 1]]
        if outside and hits[n] and d[np.ix_(outside, hits[n])].any():
            raise ImageNotBasisAligned(f"grade {n}: boundary leaves the image")
        bounds.append(sub)
    mid = chain_complex(bases, bounds)
    epi = chain_map(F.dom, mid, [F.component(n)[hits[n], :] for n in range(top + 1)])
    inc = chain_map(mid, F.cod, [np.eye(len(F.cod.basis(n)), dtype=np.int64)[:, hits[n]] for n in range(top + 1)])
    return ChainFactorization(epi, inc, mid)


# ---------------------------------------------------------------------------
# Chains in the bundle sense


def _modules(C: ChainComplexZ) -> list[FreeModule]:
    return [FreeModule(())] + [FreeModule(tuple(C.basis(n))) for n in range(C.top + 1)]


def as_chain_bundle(C: ChainComplexZ, cat: FreeZ | None = None) -> ChainBundle:
    """The chain ``C_top -> ... -> C_0 -> 0`` with one morphism (the boundary) per level."""
    cat = cat or FreeZ()
    mods = _modules(C)
    if len(mods) == 1:
        mods.append(FreeModule(()))
    sets = [Explicit((cat.zero_morphism(mods[1], mods[0]),))]
    for n in range(1, len(mods) - 1):
        sets.append(Explicit((cat.matrix(mods[n + 1], mods[n], C.boundary(n).tolist()),)))
    return ChainBundle(cat, tuple(mods), tuple(sets))


def chain_map_as_bundle_morphism(F: ChainMapZ, cat: FreeZ | None = None) -> BundleMorphism:
    cat = cat or FreeZ()
    src, tgt = as_chain_bundle(F.dom, cat), as_chain_bundle(F.cod, cat)
    L = max(src.length, tgt.length)
    src, tgt = src.padded(L), tgt.padded(L)
    vertex = [cat.zero_morphism(src.base, tgt.base)]
    for n in range(L):
        vertex.append(cat.matrix(src.obj(n + 1), tgt.obj(n + 1), F.component(n).tolist()))
    sig = tuple(table_assignment([(src.elements(i)[0], tgt.elements(i)[0])]) for i in range(1, L + 1))
    return BundleMorphism(src, tgt, tuple(vertex), sig)


def format_complex(C: ChainComplexZ) -> dict:
    return {
        "bases": [list(b) for b in C.bases],
        "boundaries": {str(n): [list(r) for r in C.boundaries[n - 1]] for n in range(1, C.top + 1)},
    }


def format_chain_map(F: ChainMapZ) -> dict:
    return {"components": {str(n): [list(r) for r in F.components[n]] for n in range(len(F.components))}}
