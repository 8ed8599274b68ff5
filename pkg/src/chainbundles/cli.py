"""Command-line front end: ``chainbundles <command> <file> [options]``.

Exit codes: 0 when every check passes, 1 when a check fails (the report
carries witnesses), 2 for malformed input or an exceeded enumeration cap.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .bundles import (
    BundleMorphism,
    ChainBundle,
    compose_bundle_morphisms,
    extract_chains,
    factorize_bundle_morphism,
    kernel_of_bundle_morphism,
    cokernel_of_bundle_morphism,
    materialize,
    pair_morphisms,
    product_bundles,
    subbundle_report,
    validate_bundle,
    validate_bundle_morphism,
    verify_cokernel,
    verify_kernel,
    verify_product,
    is_zero_bundle_morphism,
)
from .core import Budget, Universe, is_epi
from .document import (
    Document,
    dumps,
    format_bundle,
    format_bundle_morphism,
    format_graph_bundle,
    load_document,
)
from .errors import ChainBundleError, DocumentError, UniverseTooLarge
from .functors import lookup_functor, verify_universal_arrow
from .instances.paths import enumerate_paths, path_str, validate_graph_bundle, validate_graph_bundle_map
from .report import FAIL, Report
from .simplicial import (
    chain_complex_of,
    chain_map_as_bundle_morphism,
    as_chain_bundle,
    check_chain_map,
    compose_chain_maps,
    factorize_chain_map,
    format_chain_map,
    format_complex,
    image_subcomplex,
    induced_chain_map,
    validate_complex,
    validate_simplicial_map,
)
from ._lattice import in_lattice

ERROR = "error"


class CommandFailed(Exception):
    """A library operation refused the input; reported as a failed check."""


def _need(table: dict, name: str, kind: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none"
        raise DocumentError(f"unknown {kind} {name!r} (known: {known})")
    return table[name]


def _morphism_out(doc: Document, m: BundleMorphism, source: str, target: str) -> dict:
    if m.source.is_finite():
        m = materialize(m)
    return format_bundle_morphism(m, source, target)


# ---------------------------------------------------------------------------
# bundle commands


def cmd_validate(doc: Document, args) -> Report:
    r = Report()
    names = [args.bundle] if args.bundle else None
    pools = [("bundle", doc.bundles), ("graph bundle", doc.graph_bundles), ("complex", doc.complexes)]
    if names is not None and not any(args.bundle in p for _, p in pools):
        raise DocumentError(f"unknown bundle {args.bundle!r}")
    for kind, pool in pools:
        for name, value in pool.items():
            if names is not None and name not in names:
                continue
            if kind == "bundle":
                sub = validate_bundle(value)
                if sub.derived:
                    r.derived[name] = sub.derived
            elif kind == "graph bundle":
                sub = validate_graph_bundle(value)
            else:
                sub = validate_complex(value)
            r.extend(sub, prefix=f"{name}: ")
    return r


def cmd_check_morphism(doc: Document, args) -> Report:
    m = _need(doc.morphisms, args.morphism, "morphism")
    r = Report()
    src, tgt = doc.raw["morphisms"][args.morphism]["source"], doc.raw["morphisms"][args.morphism]["target"]
    r.extend(validate_bundle(m.source), prefix=f"{src}: ")
    r.extend(validate_bundle(m.target), prefix=f"{tgt}: ")
    r.extend(validate_bundle_morphism(m), prefix=f"{args.morphism}: ")
    if r.ok:
        r.derived["morphisms"] = {args.morphism: _morphism_out(doc, m, src, tgt)}
    return r


def _universe(doc: Document, extra=()) -> Universe:
    objs = list(doc.universe)
    for b in doc.bundles.values():
        objs.extend(b.objects)
    objs.extend(extra)
    return Universe(doc.cat, objs, doc.max_enum)


def cmd_factorize(doc: Document, args) -> Report:
    name = args.morphism
    m = _need(doc.morphisms, name, "morphism")
    spec = doc.raw["morphisms"][name]
    src, tgt = spec["source"], spec["target"]
    cat = doc.cat
    r = Report()
    check = validate_bundle_morphism(m)
    if check.ok:
        r.add(name, "valid bundle morphism", True, "")
    else:
        # the factorization is still computed from the vertex maps
        for f in check.failures():
            r.note(f"{name}: {f.location}", f"input morphism: {f.check}", f.witness)
    try:
        fact = factorize_bundle_morphism(m)
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    mid, m0, J = fact.intermediate, fact.epi_part, fact.inclusion_part
    u = _universe(doc, mid.objects)
    for i in range(m.length + 1):
        r.add(f"level {i}", "m0 vertex map is epi", is_epi(m0.f(i), u), str(cat.format_morphism(m0.f(i))))
        inc = cat.inclusion(mid.obj(i), m.target.obj(i))
        r.add(f"level {i}", "J vertex map is the inclusion", inc is not None and J.f(i) == inc,
              f"{cat.format_object(mid.obj(i))} in {cat.format_object(m.target.obj(i))}")
    for part, pm in (("m0", m0), ("J", J)):
        ok = validate_bundle_morphism(pm).ok
        if check.ok or ok:
            r.add(part, "valid bundle morphism", ok, "")
        else:
            # an invalid input square is inherited by the parts
            r.note(part, "valid bundle morphism", "inherits the failing squares of the input")
    r.add("m0 ; J", "equals the input morphism", compose_bundle_morphisms(m0, J) == m, "")
    r.extend(subbundle_report(mid, m.target), prefix="intermediate in target: ")
    image = f"{name}.image"
    r.derived = {
        "bundles": {image: format_bundle(mid)},
        "morphisms": {
            f"{name}.epi": _morphism_out(doc, m0, src, image),
            f"{name}.inclusion": _morphism_out(doc, J, image, tgt),
        },
    }
    return r


def cmd_product(doc: Document, args) -> Report:
    c = _need(doc.bundles, args.left, "bundle")
    d = _need(doc.bundles, args.right, "bundle")
    try:
        prod, p1, p2 = product_bundles(c, d)
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    pname = f"{args.left}x{args.right}"
    r = Report()
    r.extend(validate_bundle(prod), prefix=f"{pname}: ")
    r.add("pi_1", "valid bundle morphism", validate_bundle_morphism(p1).ok, "")
    r.add("pi_2", "valid bundle morphism", validate_bundle_morphism(p2).ok, "")
    r.derived = {
        "bundles": {pname: format_bundle(prod)},
        "morphisms": {
            f"{pname}.pi_1": _morphism_out(doc, p1, pname, args.left),
            f"{pname}.pi_2": _morphism_out(doc, p2, pname, args.right),
        },
    }
    if args.pair:
        parts = args.pair.split(",")
        if len(parts) != 2:
            raise DocumentError("--pair expects two morphism names separated by a comma")
        F = _need(doc.morphisms, parts[0], "morphism")
        G = _need(doc.morphisms, parts[1], "morphism")
        r.add(parts[0], "valid bundle morphism", validate_bundle_morphism(F).ok, "")
        r.add(parts[1], "valid bundle morphism", validate_bundle_morphism(G).ok, "")
        r.add("pair", f"{parts[0]} lands in {args.left}", F.target == c.padded(F.length), "")
        r.add("pair", f"{parts[1]} lands in {args.right}", G.target == d.padded(G.length), "")
        try:
            r.extend(verify_product(prod, p1, p2, F, G, Budget(doc.max_enum)))
            L = pair_morphisms(F, G)
        except UniverseTooLarge:
            raise
        except ChainBundleError as e:
            raise CommandFailed(str(e)) from None
        lsrc = doc.raw["morphisms"][parts[0]]["source"]
        r.derived["morphisms"][f"<{parts[0]},{parts[1]}>"] = _morphism_out(doc, L, lsrc, pname)
    return r


def _test_bundles(doc: Document, first: ChainBundle) -> list[ChainBundle]:
    out = [first]
    for b in doc.bundles.values():
        if b.is_finite() and b not in out:
            out.append(b)
    return out


def cmd_kernel(doc: Document, args) -> Report:
    name = args.morphism
    F = _need(doc.morphisms, name, "morphism")
    src = doc.raw["morphisms"][name]["source"]
    r = Report()
    r.add(name, "valid bundle morphism", validate_bundle_morphism(F).ok, "")
    try:
        a, K = kernel_of_bundle_morphism(F)
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    tests = _test_bundles(doc, a)
    budget = Budget(doc.max_enum)
    r.extend(verify_kernel(F, K, tests, budget), prefix="computed: ")
    r.note("construction", "kernel sets are the kernel restrictions of S_i",
           "rather than sending every morphism to the zero morphism")
    kname = f"{name}.kernel"
    r.derived = {
        "bundles": {kname: format_bundle(a)},
        "morphisms": {f"{kname}.inclusion": _morphism_out(doc, K, kname, src)},
    }
    if args.claimed:
        Kc = _need(doc.morphisms, args.claimed, "morphism")
        where = f"claimed {args.claimed}: "
        r.add(f"{where}K", "lands in the source of F", Kc.target == F.source.padded(Kc.length), "")
        r.add(f"{where}K", "valid bundle morphism", validate_bundle_morphism(Kc).ok, "")
        r.add(f"{where}K ; F", "zero bundle morphism",
              is_zero_bundle_morphism(compose_bundle_morphisms(Kc, F)), "")
        cat = doc.cat
        same = Kc.source == a
        r.add(f"{where}kernel object", "equals the computed kernel bundle", same,
              "" if same else "claimed ["
              + ", ".join(str(cat.format_object(Kc.source.obj(i))) for i in range(Kc.source.length, -1, -1))
              + "] vs computed ["
              + ", ".join(str(cat.format_object(a.obj(i))) for i in range(a.length, -1, -1)) + "]")
        r.extend(verify_kernel(F, Kc, _test_bundles(doc, Kc.source), budget), prefix=where)
    return r


def cmd_cokernel(doc: Document, args) -> Report:
    name = args.morphism
    F = _need(doc.morphisms, name, "morphism")
    tgt = doc.raw["morphisms"][name]["target"]
    r = Report()
    r.add(name, "valid bundle morphism", validate_bundle_morphism(F).ok, "")
    try:
        q, Q = cokernel_of_bundle_morphism(F)
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    r.extend(verify_cokernel(F, Q, _test_bundles(doc, q), Budget(doc.max_enum)))
    qname = f"{name}.cokernel"
    r.derived = {
        "bundles": {qname: format_bundle(q)},
        "morphisms": {f"{qname}.quotient": _morphism_out(doc, Q, tgt, qname)},
    }
    return r


def cmd_subbundle(doc: Document, args) -> Report:
    a = _need(doc.bundles, args.sub, "bundle")
    b = _need(doc.bundles, args.super, "bundle")
    return subbundle_report(a, b)


def cmd_chains(doc: Document, args) -> Report:
    b = _need(doc.bundles, args.bundle, "bundle")
    mode = "complex" if args.complex else "plain"
    r = Report()
    r.add(args.bundle, "valid bundle", validate_bundle(b).ok, "")
    try:
        chains = extract_chains(b, mode, cap=doc.max_enum)
    except UniverseTooLarge:
        raise
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    r.add(args.bundle, f"{mode} chains extracted", True, f"{len(chains)} chains")
    r.derived = {
        "mode": mode,
        "count": len(chains),
        "bundles": {f"{args.bundle}.chain{k}": format_bundle(ch) for k, ch in enumerate(chains)},
    }
    return r


# ---------------------------------------------------------------------------
# graph commands


def _graph(doc: Document):
    if doc.graph is None:
        raise DocumentError("graph: this document declares no graph")
    return doc.graph


def cmd_paths(doc: Document, args) -> Report:
    g = _graph(doc)
    if args.end not in g.vertices:
        raise DocumentError(f"unknown vertex {args.end!r}")
    b = enumerate_paths(g, args.end, args.max_len, doc.max_enum)
    r = validate_graph_bundle(b)
    r.add(args.end, "paths enumerated", True, f"{len(b.paths)} paths")
    r.derived = {"graph_bundles": {f"paths.{args.end}": format_graph_bundle(b)},
                 "labels": [path_str(p) for p in b.paths]}
    return r


def cmd_graph_map(doc: Document, args) -> Report:
    _graph(doc)
    m = _need(doc.graph_maps, args.map, "graph map")
    r = validate_graph_bundle_map(m)
    r.derived = {"action": [[path_str(q), path_str(qp)] for q, qp in m.action()]}
    return r


# ---------------------------------------------------------------------------
# simplicial commands


def _surjective(mat: np.ndarray) -> bool:
    cols = [[int(x) for x in mat[:, j]] for j in range(mat.shape[1])]
    return all(in_lattice(cols, [int(k == i) for k in range(mat.shape[0])]) for i in range(mat.shape[0]))


def _is_inclusion(mat: np.ndarray) -> bool:
    return all(sorted(mat[:, j].tolist()) == [0] * (mat.shape[0] - 1) + [1] for j in range(mat.shape[1])) and len(
        {int(np.argmax(mat[:, j])) for j in range(mat.shape[1])}
    ) == mat.shape[1]


def _chain_maps_equal(F, G) -> bool:
    top = max(F.top, G.top)
    return all(
        F.component(n).shape == G.component(n).shape and np.array_equal(F.component(n), G.component(n))
        for n in range(top + 1)
    )


def cmd_simplicial(doc: Document, args) -> Report:
    r = Report()
    if args.action == "chain":
        if not doc.complexes:
            raise DocumentError("complexes: this document declares no simplicial complexes")
        out = {}
        for name, K in doc.complexes.items():
            r.extend(validate_complex(K), prefix=f"{name}: ")
            if not r.ok:
                continue
            C = chain_complex_of(K)
            r.extend(C.check_square_zero(), prefix=f"C({name}): ")
            out[name] = format_complex(C)
        r.derived = {"chain_complexes": out}
        return r
    if not args.map:
        raise DocumentError(f"simplicial {args.action} needs --map NAME")
    f = _need(doc.simplicial_maps, args.map, "simplicial map")
    r.extend(validate_simplicial_map(f), prefix=f"{args.map}: ")
    if not r.ok:
        return r
    F = induced_chain_map(f)
    r.extend(check_chain_map(F), prefix=f"C({args.map}): ")
    if args.action == "chain-map":
        r.derived = {
            "source": format_complex(F.dom),
            "target": format_complex(F.cod),
            "chain_map": format_chain_map(F),
        }
        return r
    try:
        fact = factorize_chain_map(F)
    except ChainBundleError as e:
        raise CommandFailed(str(e)) from None
    mid, epi, inc = fact.intermediate, fact.epi_part, fact.inclusion_part
    r.extend(mid.check_square_zero(), prefix="intermediate: ")
    for n in range(F.top + 1):
        r.add(f"grade {n}", "epi part is surjective", _surjective(epi.component(n)), "")
        r.add(f"grade {n}", "inclusion part is a basis inclusion", _is_inclusion(inc.component(n)), "")
    r.add("epi ; inclusion", f"equals C({args.map})", _chain_maps_equal(compose_chain_maps(epi, inc), F), "")
    im = chain_complex_of(image_subcomplex(f))
    same = [list(im.basis(n)) for n in range(im.top + 1)] == [list(mid.basis(n)) for n in range(mid.top + 1)]
    r.add("intermediate", "is the chain complex of the image subcomplex", same,
          f"bases {[list(mid.basis(n)) for n in range(mid.top + 1)]}")
    bundle_fact = factorize_bundle_morphism(chain_map_as_bundle_morphism(F))
    r.add("intermediate", "agrees with the bundle factorization",
          bundle_fact.intermediate == as_chain_bundle(mid), "")
    r.derived = {
        "intermediate": format_complex(mid),
        "epi": format_chain_map(epi),
        "inclusion": format_chain_map(inc),
    }
    return r


# ---------------------------------------------------------------------------
# universal arrows


def cmd_universal(doc: Document, args) -> Report:
    spec = doc.universal
    if not isinstance(spec, dict):
        raise DocumentError("universal: this document declares no universal-arrow data")
    try:
        F = lookup_functor(args.functor, doc.cat)
    except KeyError as e:
        raise DocumentError(str(e.args[0])) from None
    objects = spec.get("objects", {})
    arrows = spec.get("arrows", {})
    parts = args.candidate.split(",")
    if len(parts) != 2:
        raise DocumentError("--candidate expects c,g")
    cname, gname = parts

    def obj(name, cat, path):
        raw = _need(objects, name, "object")
        try:
            return cat.parse_object(raw)
        except DocumentError as e:
            raise DocumentError(f"{path}.{name}: {e}") from None

    d = obj(args.object, F.target, "universal.objects")
    c = obj(cname, F.source, "universal.objects")
    graw = _need(arrows, gname, "arrow")
    if graw.get("source") != args.object or graw.get("target") != cname:
        raise DocumentError(f"universal.arrows.{gname}: must run from {args.object} to the image of {cname}")
    g = F.target.parse_morphism(d, F.obj(c), graw.get("map"))
    names = spec.get("universe", list(objects))
    cps = []
    for n in names:
        try:
            cps.append(obj(n, F.source, "universal.objects"))
        except DocumentError:
            if "universe" in spec:
                raise
    r = verify_universal_arrow(F, d, c, g, cps, doc.max_enum)
    r.derived = {"functor": F.name, "objects_checked": len(cps)}
    return r


# ---------------------------------------------------------------------------
# driver

COMMANDS = {
    "validate": cmd_validate,
    "check-morphism": cmd_check_morphism,
    "factorize": cmd_factorize,
    "product": cmd_product,
    "kernel": cmd_kernel,
    "cokernel": cmd_cokernel,
    "subbundle": cmd_subbundle,
    "chains": cmd_chains,
    "paths": cmd_paths,
    "graph-map": cmd_graph_map,
    "simplicial": cmd_simplicial,
    "universal": cmd_universal,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="scenario document (JSON)")
    common.add_argument("--json", action="store_true", help="emit the report as one JSON object")
    common.add_argument("--max-enum", type=int, default=None, help="enumeration cap (default 10**6)")

    p = argparse.ArgumentParser(prog="chainbundles", description="Verify chain bundles over finite categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate bundles")
    s.add_argument("--bundle")
    s = sub.add_parser("check-morphism", parents=[common], help="validate a bundle morphism")
    s.add_argument("--morphism", required=True)
    s = sub.add_parser("factorize", parents=[common], help="epi-inclusion factorization")
    s.add_argument("--morphism", required=True)
    s = sub.add_parser("product", parents=[common], help="product bundle and projections")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--pair", help="F,G: also verify the pairing of two morphisms")
    s = sub.add_parser("kernel", parents=[common], help="kernel bundle and its universal property")
    s.add_argument("--morphism", required=True)
    s.add_argument("--claimed", help="a morphism claimed to be the kernel")
    s = sub.add_parser("cokernel", parents=[common], help="cokernel bundle and its universal property")
    s.add_argument("--morphism", required=True)
    s = sub.add_parser("subbundle", parents=[common], help="decide the subbundle relation")
    s.add_argument("--sub", required=True)
    s.add_argument("--super", required=True)
    s = sub.add_parser("chains", parents=[common], help="extract chains from a bundle")
    s.add_argument("--bundle", required=True)
    s.add_argument("--complex", action="store_true", help="keep only selections with zero composites")
    s = sub.add_parser("paths", parents=[common], help="enumerate paths into a vertex")
    s.add_argument("--end", required=True)
    s.add_argument("--max-len", type=int, default=None)
    s = sub.add_parser("graph-map", parents=[common], help="validate a graph bundle map")
    s.add_argument("--map", required=True)
    s = sub.add_parser("simplicial", parents=[common], help="chain complexes of simplicial complexes")
    s.add_argument("action", choices=["chain", "chain-map", "factorize"])
    s.add_argument("--map")
    s = sub.add_parser("universal", parents=[common], help="verify a universal arrow")
    s.add_argument("--functor", required=True)
    s.add_argument("--object", required=True)
    s.add_argument("--candidate", required=True, help="c,g")
    return p


def _label(args) -> str:
    for key in ("morphism", "bundle", "map", "end"):
        v = getattr(args, key, None)
        if v:
            return v
    if args.command == "product":
        return f"{args.left} x {args.right}"
    if args.command == "subbundle":
        return f"{args.sub} <= {args.super}"
    if args.command == "universal":
        return f"{args.candidate} for {args.object}"
    if args.command == "simplicial":
        return args.action
    return ""


def render(command: str, label: str, status: str, findings: list[dict], derived: dict, as_json: bool) -> str:
    if as_json:
        return dumps({"command": command, "subject": label, "status": status,
                      "findings": findings, "derived": derived})
    head = f"{command} {label}" if label else command
    lines = [f"{head}: {status.upper()}"]
    for f in findings:
        w = f" [{f['witness']}]" if f["witness"] else ""
        lines.append(f"  {f['verdict']:<4}  {f['location']}: {f['check']}{w}")
    if derived:
        lines.append("derived:")
        lines.append(dumps(derived))
    return "\n".join(lines)


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the command and return ``(exit code, report text)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    label = _label(args)
    try:
        if args.max_enum is not None and args.max_enum < 1:
            raise DocumentError("--max-enum must be positive")
        doc = load_document(args.file, args.max_enum)
        report = COMMANDS[args.command](doc, args)
    except FileNotFoundError as e:
        return 2, render(args.command, label, ERROR, [_error("input", "read file", str(e.strerror) + ": " + args.file)], {}, args.json)
    except DocumentError as e:
        return 2, render(args.command, label, ERROR, [_error("input", "parse document", str(e))], {}, args.json)
    except UniverseTooLarge as e:
        return 2, render(args.command, label, ERROR, [_error("enumeration", "within cap", str(e))], {}, args.json)
    except CommandFailed as e:
        return 1, render(args.command, label, FAIL, [_error("operation", "supported", str(e), FAIL)], {}, args.json)
    except ChainBundleError as e:
        return 1, render(args.command, label, FAIL,
                         [_error("operation", type(e).__name__, str(e), FAIL)], {}, args.json)
    findings = [f.as_dict() for f in report.findings]
    return (0 if report.ok else 1), render(args.command, label, report.status, findings, report.derived, args.json)


def _error(location: str, check: str, witness: str, verdict: str = ERROR) -> dict:
    return {"location": location, "check": check, "verdict": verdict, "witness": witness}


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code != 2 or "--json" in (argv if argv is not None else sys.argv[1:]) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
