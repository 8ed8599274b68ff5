"""JSON scenario documents: parsing into library values and echoing them back.

A document is one JSON object with ``"schema": 1`` and an ``"instance"``
name.  Bundles list their objects top level first, ending with the base, and
their morphism sets ``S_L .. S_1`` (``S_1`` may be omitted); each set is the
token ``"ALL"`` or a list of morphisms.  Bundle morphisms list vertex maps
``f_L .. f_0`` (``f_0`` may be omitted over a zero base) and optional
assignments per level: ``"forced"``, ``"multiplier"`` or ``[[x, y], ...]``.
Numbers are integers or ``"p/q"`` strings; floats are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bundles import (
    ALL,
    FORCED,
    MULTIPLIER,
    TABLE,
    AllHom,
    Assignment,
    BundleMorphism,
    ChainBundle,
    Explicit,
    MorphismSet,
    PairSet,
    table_assignment,
)
from .core import DEFAULT_MAX_ENUM, Category
from .errors import DocumentError
from .instances.cyclic import CyclicGroups
from .instances.delta import DeltaPlus
from .instances.freez import FreeZ
from .instances.paths import Graph, GraphBundleMap, GraphChainBundle, enumerate_paths, graph_bundle, graph_bundle_map
from .instances.pointed import FinSets, PointedSets
from .instances.submodule import SubmoduleZ
from .simplicial import SimplicialComplex, SimplicialMap, simplicial_complex, simplicial_map

SCHEMA = 1
INSTANCES = ("cyclic", "submoduleZ", "pointed_set", "set", "delta_plus", "graph", "simplicial")


def make_instance(name: str, settings: dict) -> Category:
    max_enum = settings.get("max_enum", DEFAULT_MAX_ENUM)
    if name == "cyclic":
        cat = CyclicGroups()
    elif name == "submoduleZ":
        cat = SubmoduleZ(Fraction(settings.get("window", 4)))
    elif name == "pointed_set":
        cat = PointedSets()
    elif name == "set":
        cat = FinSets()
    elif name == "delta_plus":
        cat = DeltaPlus()
    elif name in ("graph", "simplicial"):
        return FreeZ()
    else:
        raise DocumentError(f"instance: unknown instance {name!r}; expected one of {', '.join(INSTANCES)}")
    cat.max_hom = max_enum
    return cat


def _reject_floats(value, path: str):
    if isinstance(value, float):
        raise DocumentError(f"{path}: floating point value {value!r} is not allowed; use an integer or 'p/q'")
    if isinstance(value, list):
        for k, v in enumerate(value):
            _reject_floats(v, f"{path}[{k}]")
    elif isinstance(value, dict):
        for k, v in value.items():
            _reject_floats(v, f"{path}.{k}")


def _at(path: str, fn, *args):
    try:
        return fn(*args)
    except DocumentError as e:
        msg = str(e)
        raise DocumentError(msg if msg.startswith(path) else f"{path}: {msg}") from None
    except (ValueError, TypeError, KeyError, IndexError) as e:
        raise DocumentError(f"{path}: {e}") from None


# ---------------------------------------------------------------------------
# bundles


def parse_set(cat: Category, spec, dom, cod, path: str) -> MorphismSet:
    if spec == ALL:
        return AllHom()
    if isinstance(spec, dict) and "pair" in spec:
        ld, lc = (_at(f"{path}.left", cat.parse_object, o) for o in spec["left"])
        rd, rc = (_at(f"{path}.right", cat.parse_object, o) for o in spec["right"])
        left = parse_set(cat, spec["pair"][0], ld, lc, f"{path}.pair[0]")
        right = parse_set(cat, spec["pair"][1], rd, rc, f"{path}.pair[1]")
        return PairSet(left, right, ld, lc, rd, rc)
    if not isinstance(spec, list):
        raise DocumentError(f"{path}: a morphism set is \"ALL\" or a list of morphisms, got {spec!r}")
    out = []
    for k, x in enumerate(spec):
        f = _at(f"{path}[{k}]", cat.parse_morphism, dom, cod, x)
        if f not in out:
            out.append(f)
    return Explicit(tuple(out))


def format_set(cat: Category, s: MorphismSet, dom, cod):
    if isinstance(s, AllHom):
        return ALL
    if isinstance(s, PairSet) and not s.is_finite(cat):
        return {
            "pair": [format_set(cat, s.left, s.left_dom, s.left_cod), format_set(cat, s.right, s.right_dom, s.right_cod)],
            "left": [cat.format_object(s.left_dom), cat.format_object(s.left_cod)],
            "right": [cat.format_object(s.right_dom), cat.format_object(s.right_cod)],
        }
    return [cat.format_morphism(x) for x in s.elements(cat, dom, cod)]


def parse_bundle(cat: Category, spec, path: str) -> ChainBundle:
    if not isinstance(spec, dict) or "objects" not in spec:
        raise DocumentError(f"{path}: a bundle needs an \"objects\" list")
    objs = spec["objects"]
    if not isinstance(objs, list) or len(objs) < 2:
        raise DocumentError(f"{path}.objects: list M_L, ..., M_1, base (at least two entries)")
    parsed = [_at(f"{path}.objects[{k}]", cat.parse_object, o) for k, o in enumerate(objs)]
    for k, o in enumerate(parsed):
        if not cat.is_object(o):
            raise DocumentError(f"{path}.objects[{k}]: not an object of {cat.name}")
    objects = tuple(reversed(parsed))  # M_0 .. M_L
    L = len(objects) - 1
    sets_spec = spec.get("sets", [ALL] * L)
    if not isinstance(sets_spec, list) or len(sets_spec) not in (L - 1, L):
        raise DocumentError(f"{path}.sets: expected {L - 1} or {L} entries (S_L, ..., S_1)")
    if len(sets_spec) == L - 1:
        sets_spec = sets_spec + [ALL]
    sets = []
    for i in range(1, L + 1):
        k = L - i
        sets.append(parse_set(cat, sets_spec[k], objects[i], objects[i - 1], f"{path}.sets[{k}]"))
    return ChainBundle(cat, objects, tuple(sets))


def format_bundle(b: ChainBundle) -> dict:
    cat = b.cat
    return {
        "objects": [cat.format_object(b.obj(i)) for i in range(b.length, -1, -1)],
        "sets": [format_set(cat, b.mset(i), b.obj(i), b.obj(i - 1)) for i in range(b.length, 0, -1)],
    }


# ---------------------------------------------------------------------------
# bundle morphisms


def _default_assignment(cat, src: ChainBundle, tgt: ChainBundle, i: int, path: str) -> Assignment:
    s, t = src.mset(i), tgt.mset(i)
    if s.is_finite(cat) and t.is_finite(cat) and len(src.elements(i)) == 1 and len(tgt.elements(i)) == 1:
        return table_assignment([(src.elements(i)[0], tgt.elements(i)[0])])
    if cat.has_zero and cat.is_zero_object(tgt.obj(i - 1)):
        return Assignment(FORCED)  # only the zero map lands in a zero object
    if isinstance(cat, CyclicGroups) and isinstance(s, AllHom) and isinstance(t, AllHom):
        return Assignment(MULTIPLIER)
    raise DocumentError(
        f"{path}: level {i} needs an explicit assignment (\"forced\", \"multiplier\" or a table of [x, y] pairs)"
    )


def parse_bundle_morphism(cat: Category, spec, bundles: dict, path: str) -> BundleMorphism:
    if not isinstance(spec, dict):
        raise DocumentError(f"{path}: a morphism is an object with source, target and maps")
    for key in ("source", "target", "maps"):
        if key not in spec:
            raise DocumentError(f"{path}: missing field {key!r}")
    src = _resolve(bundles, spec["source"], f"{path}.source")
    tgt = _resolve(bundles, spec["target"], f"{path}.target")
    L = max(src.length, tgt.length)
    try:
        src, tgt = src.padded(L), tgt.padded(L)
    except Exception as e:  # noqa: BLE001
        raise DocumentError(f"{path}: {e}") from None
    maps = spec["maps"]
    if not isinstance(maps, list) or len(maps) not in (L, L + 1):
        raise DocumentError(f"{path}.maps: expected {L} or {L + 1} vertex maps (f_L, ..., f_0)")
    vertex = []
    for i in range(L + 1):
        k = L - i
        if k >= len(maps):
            if not cat.has_zero:
                raise DocumentError(f"{path}.maps: f_0 is required for {cat.name}")
            vertex.append(cat.zero_morphism(src.obj(0), tgt.obj(0)))
        else:
            vertex.append(_at(f"{path}.maps[{k}]", cat.parse_morphism, src.obj(i), tgt.obj(i), maps[k]))
    asg = spec.get("assignments")
    if asg is not None and (not isinstance(asg, list) or len(asg) != L):
        raise DocumentError(f"{path}.assignments: expected {L} entries (sigma_L, ..., sigma_1)")
    sig = []
    for i in range(1, L + 1):
        k = L - i
        a = None if asg is None else asg[k]
        where = f"{path}.assignments[{k}]"
        if a is None:
            sig.append(_default_assignment(cat, src, tgt, i, where))
        elif a in (FORCED, MULTIPLIER):
            sig.append(Assignment(a))
        elif isinstance(a, list):
            pairs = []
            for n, pair in enumerate(a):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise DocumentError(f"{where}[{n}]: expected [x, y]")
                x = _at(f"{where}[{n}][0]", cat.parse_morphism, src.obj(i), src.obj(i - 1), pair[0])
                y = _at(f"{where}[{n}][1]", cat.parse_morphism, tgt.obj(i), tgt.obj(i - 1), pair[1])
                pairs.append((x, y))
            sig.append(table_assignment(pairs))
        else:
            raise DocumentError(f"{where}: unknown assignment {a!r}")
    return BundleMorphism(src, tgt, tuple(vertex), tuple(sig))


def _resolve(bundles: dict, ref, path: str) -> ChainBundle:
    if isinstance(ref, str):
        if ref not in bundles:
            raise DocumentError(f"{path}: unknown bundle {ref!r}")
        return bundles[ref]
    raise DocumentError(f"{path}: expected a bundle name, got {ref!r}")


def format_assignment(cat: Category, a: Assignment):
    if a.rule == TABLE:
        return [[cat.format_morphism(x), cat.format_morphism(y)] for x, y in a.table]
    return a.rule


def format_bundle_morphism(m: BundleMorphism, source: str, target: str) -> dict:
    cat = m.source.cat
    return {
        "source": source,
        "target": target,
        "maps": [cat.format_morphism(m.f(i)) for i in range(m.length, -1, -1)],
        "assignments": [format_assignment(cat, m.sigma(i)) for i in range(m.length, 0, -1)],
    }


# ---------------------------------------------------------------------------
# documents


@dataclass
class Document:
    instance: str
    cat: Category
    settings: dict
    bundles: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    universe: list = field(default_factory=list)
    graph: Graph | None = None
    graph_bundles: dict = field(default_factory=dict)
    graph_maps: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    simplicial_maps: dict = field(default_factory=dict)
    universal: dict | None = None
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def max_enum(self) -> int:
        return self.settings.get("max_enum", DEFAULT_MAX_ENUM)


def load_document(source, max_enum: int | None = None) -> Document:
    """Parse a document from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        raw = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_document(raw, max_enum)


def parse_document(raw: dict, max_enum: int | None = None) -> Document:
    if not isinstance(raw, dict):
        raise DocumentError("document: top level must be a JSON object")
    _reject_floats(raw, "document")
    if raw.get("schema") != SCHEMA:
        raise DocumentError(f"schema: expected {SCHEMA}, got {raw.get('schema')!r}")
    inst = raw.get("instance")
    settings = dict(raw.get("settings", {}))
    if max_enum is not None:
        settings["max_enum"] = max_enum
    cat = make_instance(inst, settings)
    doc = Document(inst, cat, settings, raw=raw)

    names = set()

    def claim(name, path):
        if name in names:
            raise DocumentError(f"{path}: duplicate name {name!r}")
        names.add(name)

    for k, o in enumerate(raw.get("universe", [])):
        doc.universe.append(_at(f"universe[{k}]", cat.parse_object, o))
    for name, spec in raw.get("bundles", {}).items():
        claim(name, f"bundles.{name}")
        doc.bundles[name] = parse_bundle(cat, spec, f"bundles.{name}")
    for name, spec in raw.get("morphisms", {}).items():
        claim(name, f"morphisms.{name}")
        doc.morphisms[name] = parse_bundle_morphism(cat, spec, doc.bundles, f"morphisms.{name}")
    if "graph" in raw:
        doc.graph = _parse_graph(raw["graph"])
        for name, spec in raw.get("graph_bundles", {}).items():
            claim(name, f"graph_bundles.{name}")
            doc.graph_bundles[name] = _parse_graph_bundle(doc.graph, spec, f"graph_bundles.{name}", doc.max_enum)
        for name, spec in raw.get("graph_maps", {}).items():
            claim(name, f"graph_maps.{name}")
            doc.graph_maps[name] = _parse_graph_map(doc, spec, f"graph_maps.{name}")
    for name, spec in raw.get("complexes", {}).items():
        claim(name, f"complexes.{name}")
        doc.complexes[name] = _parse_complex(spec, f"complexes.{name}")
    for name, spec in raw.get("simplicial_maps", {}).items():
        claim(name, f"simplicial_maps.{name}")
        doc.simplicial_maps[name] = _parse_simplicial_map(doc, spec, f"simplicial_maps.{name}")
    if "universal" in raw:
        doc.universal = raw["universal"]
    return doc


def _parse_graph(spec) -> Graph:
    if not isinstance(spec, dict) or "vertices" not in spec:
        raise DocumentError("graph: needs \"vertices\" and \"edges\"")
    edges = spec.get("edges", [])
    for k, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(f"graph.edges[{k}]: expected [tail, head]")
    return _at("graph", Graph, tuple(spec["vertices"]), tuple(tuple(e) for e in edges))


def _parse_graph_bundle(g: Graph, spec, path: str, cap: int) -> GraphChainBundle:
    if not isinstance(spec, dict) or "end" not in spec:
        raise DocumentError(f"{path}: needs an \"end\" vertex")
    if spec["end"] not in g.vertices:
        raise DocumentError(f"{path}.end: unknown vertex {spec['end']!r}")
    if spec.get("paths") == ALL:
        return _at(path, enumerate_paths, g, spec["end"], spec.get("max_len"), cap)
    paths = spec.get("paths")
    if not isinstance(paths, list):
        raise DocumentError(f"{path}.paths: expected a list of vertex lists or \"ALL\"")
    return graph_bundle(g, spec["end"], [tuple(p) for p in paths])


def _parse_graph_map(doc: Document, spec, path: str) -> GraphBundleMap:
    for key in ("source", "target", "paths"):
        if key not in spec:
            raise DocumentError(f"{path}: missing field {key!r}")
    src = doc.graph_bundles.get(spec["source"])
    tgt = doc.graph_bundles.get(spec["target"])
    if src is None:
        raise DocumentError(f"{path}.source: unknown graph bundle {spec['source']!r}")
    if tgt is None:
        raise DocumentError(f"{path}.target: unknown graph bundle {spec['target']!r}")
    return graph_bundle_map(src, tgt, [tuple(p) for p in spec["paths"]])


def _parse_complex(spec, path: str) -> SimplicialComplex:
    if not isinstance(spec, dict) or "vertices" not in spec or "simplices" not in spec:
        raise DocumentError(f"{path}: needs \"vertices\" and \"simplices\"")
    return _at(path, simplicial_complex, spec["vertices"], [tuple(s) for s in spec["simplices"]])


def _parse_simplicial_map(doc: Document, spec, path: str) -> SimplicialMap:
    for key in ("source", "target", "vertex_map"):
        if key not in spec:
            raise DocumentError(f"{path}: missing field {key!r}")
    src = doc.complexes.get(spec["source"])
    tgt = doc.complexes.get(spec["target"])
    if src is None:
        raise DocumentError(f"{path}.source: unknown complex {spec['source']!r}")
    if tgt is None:
        raise DocumentError(f"{path}.target: unknown complex {spec['target']!r}")
    if not isinstance(spec["vertex_map"], dict):
        raise DocumentError(f"{path}.vertex_map: expected {{vertex: vertex}}")
    return simplicial_map(src, tgt, spec["vertex_map"])


def format_graph_bundle(b: GraphChainBundle) -> dict:
    return {"end": b.end, "paths": [list(p) for p in b.paths]}


def dumps(value: Any) -> str:
    return json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False)
