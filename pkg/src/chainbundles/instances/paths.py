"""Path categories of finite directed graphs and graph chain bundles.

A path is stored as its vertex sequence; the trivial path ``(v,)`` is the
identity at ``v`` and composition is concatenation.  A graph chain bundle is
a set of paths sharing an end vertex, and a map between two of them is a set
``P`` of connecting paths such that appending any ``p`` in ``P`` to any
source path lands in the target bundle.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Category, Morphism
from ..errors import DocumentError, ExplosionGuard
from ..report import Report

Path = tuple


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple  # (tail, head) pairs

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        for t, h in self.edges:
            if t not in self.vertices or h not in self.vertices:
                raise ValueError(f"edge ({t}, {h}) uses an undeclared vertex")

    def successors(self, v) -> list:
        return [h for t, h in self.edges if t == v]

    def predecessors(self, v) -> list:
        return [t for t, h in self.edges if h == v]

    def is_walk(self, path: Path) -> bool:
        if not path or any(v not in self.vertices for v in path):
            return False
        edges = set(self.edges)
        return all((a, b) in edges for a, b in zip(path, path[1:]))

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, h in self.edges:
            indeg[h] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for h in self.successors(v):
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
        return seen == len(self.vertices)

    def path_key(self, path: Path):
        return (-len(path), tuple(self.vertices.index(v) for v in path))


def path_str(path: Path) -> str:
    return "".join(str(v) for v in path)


def concat(p: Path, q: Path) -> Path | None:
    """``p`` then ``q``; ``None`` when ``p`` does not end where ``q`` starts."""
    if p[-1] != q[0]:
        return None
    return p + q[1:]


def _bound(graph: Graph, max_len: int | None) -> int:
    if max_len is not None:
        return max_len
    if not graph.is_acyclic():
        raise ExplosionGuard("graph has a cycle: path enumeration needs a length bound")
    return len(graph.vertices) - 1


def _walks_into(graph: Graph, end, max_len: int, cap: int) -> list[Path]:
    out = []
    frontier = [(end,)]
    for _ in range(max_len + 1):
        nxt = []
        for p in frontier:
            out.append(p)
            if len(out) > cap:
                raise ExplosionGuard(f"more than {cap} paths end at {end}")
            for t in graph.predecessors(p[0]):
                nxt.append((t,) + p)
        frontier = nxt
    return out


class PathCategory(Category):
    """The free category on a finite directed graph."""

    name = "graph"

    def __init__(self, graph: Graph, max_len: int | None = None, max_enum: int = 10**6):
        self.graph = graph
        self.max_len = max_len
        self.max_enum = max_enum
        self.complete_homs = max_len is None or graph.is_acyclic()

    def __eq__(self, other):
        return isinstance(other, PathCategory) and other.graph == self.graph

    def __hash__(self):
        return hash(("graph", self.graph))

    def is_object(self, a) -> bool:
        return a in self.graph.vertices

    def is_valid(self, f: Morphism) -> bool:
        p = f.data
        return self.graph.is_walk(p) and p[0] == f.dom and p[-1] == f.cod

    def path(self, vertices) -> Morphism:
        p = tuple(vertices)
        return Morphism(p[0], p[-1], p, self)

    def identity(self, a) -> Morphism:
        return Morphism(a, a, (a,), self)

    def _compose(self, f, g):
        return Morphism(f.dom, g.cod, f.data + g.data[1:], self)

    def hom(self, a, b) -> list[Morphism]:
        walks = _walks_into(self.graph, b, _bound(self.graph, self.max_len), self.max_enum)
        out = [Morphism(a, b, p, self) for p in walks if p[0] == a]
        return sorted(out, key=lambda f: self.graph.path_key(f.data))

    def image(self, f):
        # trivial subobject preorder: every path is its own image
        return f, self.identity(f.cod)

    def format_object(self, a):
        return a

    def format_morphism(self, f):
        return list(f.data)

    def describe(self, f):
        return path_str(f.data)

    def parse_object(self, spec):
        if spec not in self.graph.vertices:
            raise DocumentError(f"unknown vertex {spec!r}")
        return spec

    def parse_morphism(self, dom, cod, spec):
        if not isinstance(spec, list) or not spec:
            raise DocumentError(f"a path is a nonempty list of vertices, got {spec!r}")
        return Morphism(dom, cod, tuple(spec), self)


# ---------------------------------------------------------------------------
# Graph chain bundles


@dataclass(frozen=True)
class GraphChainBundle:
    graph: Graph
    end: object
    paths: tuple

    def __str__(self) -> str:
        return "{" + ", ".join(path_str(p) for p in self.paths) + "}"


def graph_bundle(graph: Graph, end, paths) -> GraphChainBundle:
    ps = sorted({tuple(p) for p in paths}, key=graph.path_key)
    return GraphChainBundle(graph, end, tuple(ps))


def enumerate_paths(graph: Graph, end, max_len: int | None = None, cap: int = 10**6) -> GraphChainBundle:
    """All paths of length at most ``max_len`` ending at ``end``, trivial path included."""
    if end not in graph.vertices:
        raise ValueError(f"unknown vertex {end!r}")
    if max_len is not None and max_len < 0:
        raise ValueError("max_len must be nonnegative")
    return graph_bundle(graph, end, _walks_into(graph, end, _bound(graph, max_len), cap))


def validate_graph_bundle(b: GraphChainBundle) -> Report:
    r = Report()
    for p in b.paths:
        r.add(path_str(p), "is a walk", b.graph.is_walk(p), path_str(p))
        r.add(path_str(p), f"ends at {b.end}", p[-1] == b.end, str(p[-1]))
    return r


@dataclass(frozen=True)
class GraphBundleMap:
    source: GraphChainBundle
    target: GraphChainBundle
    paths: tuple  # the connecting set P

    def action(self) -> list[tuple[Path, Path]]:
        """``(q, q p)`` for every source path ``q`` and connecting path ``p``."""
        out = []
        for p in self.paths:
            for q in self.source.paths:
                qp = concat(q, p)
                if qp is not None:
                    out.append((q, qp))
        return out


def graph_bundle_map(source: GraphChainBundle, target: GraphChainBundle, paths) -> GraphBundleMap:
    ps = sorted({tuple(p) for p in paths}, key=source.graph.path_key)
    return GraphBundleMap(source, target, tuple(ps))


def validate_graph_bundle_map(m: GraphBundleMap) -> Report:
    """Check that ``q p`` lies in the target for every source path ``q`` and ``p`` in ``P``."""
    r = Report()
    g = m.source.graph
    r.add("graph", "source and target share a graph", g == m.target.graph, "")
    targets = set(m.target.paths)
    for p in m.paths:
        loc = f"p={path_str(p)}"
        r.add(loc, "is a walk", g.is_walk(p), path_str(p))
        r.add(loc, f"runs from {m.source.end} to {m.target.end}",
              p[0] == m.source.end and p[-1] == m.target.end, f"{p[0]} -> {p[-1]}")
        for q in m.source.paths:
            qp = concat(q, p)
            if qp is None:
                r.add(f"{loc}, q={path_str(q)}", "q p is a walk", False,
                      f"{path_str(q)} ends at {q[-1]} but {path_str(p)} starts at {p[0]}")
                continue
            ok = g.is_walk(qp) and qp in targets
            r.add(f"{loc}, q={path_str(q)}", "q p in target", ok, path_str(qp))
    return r


def identity_graph_map(b: GraphChainBundle) -> GraphBundleMap:
    return GraphBundleMap(b, b, ((b.end,),))


def compose_graph_maps(m1: GraphBundleMap, m2: GraphBundleMap) -> GraphBundleMap:
    """``m1`` then ``m2``: connecting paths concatenate."""
    if m1.target != m2.source:
        from ..errors import NonComposable

        raise NonComposable("target of the first graph map is not the source of the second")
    paths = [concat(p, q) for p in m1.paths for q in m2.paths]
    return graph_bundle_map(m1.source, m2.target, [p for p in paths if p is not None])
