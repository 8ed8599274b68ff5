"""Command-line behaviour: exit codes, error reporting, determinism and round trips."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from chainbundles.bundles import factorize_bundle_morphism
from chainbundles.cli import main, run
from chainbundles.document import load_document

from conftest import GOLDEN


def _run(*argv):
    return run([str(a) for a in argv])


def _json(*argv):
    code, text = _run(*argv, "--json")
    return code, json.loads(text)


EXIT_CASES = [
    (("factorize", "paper_ex23.json", "--morphism", "m"), 0),
    (("factorize", "paper_ex23.json", "--morphism", "m_valid"), 0),
    (("check-morphism", "paper_ex23.json", "--morphism", "m"), 1),
    (("check-morphism", "paper_ex23.json", "--morphism", "m_valid"), 0),
    (("product", "product_submodules.json", "--left", "c", "--right", "d", "--pair", "F,G"), 0),
    (("kernel", "kernel_cyclic.json", "--morphism", "F"), 0),
    (("kernel", "kernel_cyclic.json", "--morphism", "F", "--claimed", "K_claimed"), 1),
    (("cokernel", "kernel_cyclic.json", "--morphism", "F"), 0),
    (("validate", "empty_bundle.json"), 0),
    (("validate", "delta_plus.json", "--bundle", "b"), 0),
    (("validate", "delta_plus.json", "--bundle", "increasing"), 1),
    (("chains", "cyclic_442.json", "--bundle", "b", "--complex"), 0),
    (("paths", "graph_paths.json", "--end", "v5"), 0),
    (("graph-map", "graph_paths.json", "--map", "f1"), 0),
    (("graph-map", "graph_paths.json", "--map", "f2"), 0),
    (("graph-map", "graph_paths.json", "--map", "f2_listed"), 1),
    (("graph-map", "graph_paths.json", "--map", "mutated"), 1),
    (("simplicial", "simplicial.json", "chain"), 0),
    (("simplicial", "simplicial.json", "factorize", "--map", "f"), 0),
    (("universal", "universal_pointed.json", "--functor", "forget_basepoint", "--object", "d",
      "--candidate", "c,g"), 0),
    (("universal", "universal_pointed.json", "--functor", "forget_basepoint", "--object", "d",
      "--candidate", "c,g_zero"), 1),
]


def _golden_argv(argv):
    out = list(argv)
    for k, a in enumerate(out):
        if a.endswith(".json"):
            out[k] = GOLDEN / a
    return out


@pytest.mark.parametrize("argv,code", EXIT_CASES, ids=[" ".join(a[:3]) for a, _ in EXIT_CASES])
def test_exit_codes(argv, code):
    got, text = _run(*_golden_argv(argv))
    assert got == code, text
    status = json.loads(_run(*_golden_argv(argv), "--json")[1])["status"]
    assert status == ("pass" if code == 0 else "fail")


def test_failure_reports_carry_witnesses():
    code, out = _json("check-morphism", GOLDEN / "paper_ex23.json", "--morphism", "m")
    bad = [f for f in out["findings"] if f["verdict"] == "fail"]
    assert code == 1 and bad
    assert all(f["witness"] for f in bad)
    assert [f["location"] for f in bad] == ["m: level 2, x=1"]


def _write(tmp_path, text, name="doc.json"):
    p = tmp_path / name
    p.write_text(text)
    return p


BASE = {
    "schema": 1,
    "instance": "cyclic",
    "bundles": {"c": {"objects": ["Z(4)", "Z(2)", "0"]}},
    "morphisms": {"id": {"source": "c", "target": "c", "maps": [1, 1, 0]}},
}


@pytest.mark.parametrize(
    "mutate,needle",
    [
        (lambda d: d["morphisms"]["id"].__setitem__("maps", [1.0, 1, 0]), "float"),
        (lambda d: d.__setitem__("instance", "widgets"), "widgets"),
        (lambda d: d["morphisms"]["id"].__setitem__("target", "nope"), "nope"),
        (lambda d: d.__setitem__("schema", 7), "schema"),
    ],
    ids=["float", "instance", "reference", "schema"],
)
def test_malformed_documents_exit_2(tmp_path, mutate, needle):
    doc = json.loads(json.dumps(BASE))
    mutate(doc)
    p = _write(tmp_path, json.dumps(doc))
    code, out = _json("validate", p)
    assert code == 2
    assert out["status"] == "error"
    assert needle in out["findings"][0]["witness"]


def test_json_syntax_error_has_position(tmp_path):
    p = _write(tmp_path, '{\n  "schema": 1,\n  "instance": "cyclic",,\n}')
    code, out = _json("validate", p)
    assert code == 2
    assert "line 3, column" in out["findings"][0]["witness"]


def test_missing_file_exits_2(tmp_path):
    code, out = _json("validate", tmp_path / "absent.json")
    assert code == 2 and out["status"] == "error"


def test_cap_exceeded_exits_2():
    code, out = _json("chains", GOLDEN / "cyclic_442.json", "--bundle", "b", "--max-enum", "3")
    assert code == 2
    assert out["findings"][0]["location"] == "enumeration"


def test_bad_max_enum():
    code, _ = _run("validate", GOLDEN / "empty_bundle.json", "--max-enum", "0")
    assert code == 2


def test_unknown_names_exit_2():
    code, out = _json("factorize", GOLDEN / "paper_ex23.json", "--morphism", "ghost")
    assert code == 2 and "ghost" in out["findings"][0]["witness"]


def test_output_is_deterministic():
    argv = ["product", GOLDEN / "product_submodules.json", "--left", "c", "--right", "d", "--pair", "F,G"]
    texts = {_run(*argv)[1] for _ in range(3)}
    assert len(texts) == 1
    code = (
        "import sys; from chainbundles.cli import run; "
        f"print(run({[str(a) for a in argv] + ['--json']!r})[1])"
    )
    outs = {subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                           env={"PYTHONHASHSEED": str(seed), "PATH": ""}).stdout for seed in (1, 2)}
    assert len(outs) == 1


def test_main_streams(capsys):
    assert main(["validate", str(GOLDEN / "empty_bundle.json")]) == 0
    assert "validate: PASS" in capsys.readouterr().out
    assert main(["validate", str(GOLDEN / "missing.json")]) == 2
    err = capsys.readouterr()
    assert err.out == "" and "ERROR" in err.err


# ---------------------------------------------------------------------------
# derived artifacts feed back into documents


def _merged(path, derived):
    raw = json.loads(path.read_text())
    for key in ("bundles", "morphisms", "graph_bundles"):
        if key in derived:
            raw.setdefault(key, {}).update(derived[key])
    return raw


def test_factorization_round_trip(tmp_path):
    src = GOLDEN / "paper_ex23.json"
    _, out = _json("factorize", src, "--morphism", "m_valid")
    raw = _merged(src, out["derived"])
    p = _write(tmp_path, json.dumps(raw))
    for name in ("m_valid.epi", "m_valid.inclusion"):
        code, text = _run("check-morphism", p, "--morphism", name)
        assert code == 0, text
    # the reloaded image bundle equals the one the library computes
    fact = factorize_bundle_morphism(load_document(src).morphisms["m_valid"])
    assert load_document(p).bundles["m_valid.image"] == fact.intermediate


def test_product_round_trip(tmp_path):
    src = GOLDEN / "product_submodules.json"
    _, out = _json("product", src, "--left", "c", "--right", "d", "--pair", "F,G")
    p = _write(tmp_path, json.dumps(_merged(src, out["derived"])))
    for name in ("cxd.pi_1", "cxd.pi_2", "<F,G>"):
        code, text = _run("check-morphism", p, "--morphism", name)
        assert code == 0, text
    assert _run("validate", p, "--bundle", "cxd")[0] == 0


def test_kernel_and_cokernel_round_trip(tmp_path):
    src = GOLDEN / "kernel_cyclic.json"
    _, k = _json("kernel", src, "--morphism", "F")
    _, q = _json("cokernel", src, "--morphism", "F")
    raw = _merged(src, k["derived"])
    raw = {**raw, "bundles": {**raw["bundles"], **q["derived"]["bundles"]},
           "morphisms": {**raw["morphisms"], **q["derived"]["morphisms"]}}
    p = _write(tmp_path, json.dumps(raw))
    for name in ("F.kernel.inclusion", "F.cokernel.quotient"):
        assert _run("check-morphism", p, "--morphism", name)[0] == 0


def test_chains_round_trip(tmp_path):
    src = GOLDEN / "cyclic_442.json"
    _, out = _json("chains", src, "--bundle", "b", "--complex")
    assert out["derived"]["count"] == 6
    p = _write(tmp_path, json.dumps(_merged(src, out["derived"])))
    doc = load_document(p)
    for name in out["derived"]["bundles"]:
        code, again = _json("chains", p, "--bundle", name, "--complex")
        assert code == 0 and again["derived"]["count"] == 1
        assert doc.bundles[name] == load_document(p).bundles[name]


def test_paths_round_trip(tmp_path):
    src = GOLDEN / "graph_paths.json"
    _, out = _json("paths", src, "--end", "v5")
    assert len(out["derived"]["labels"]) == 7
    raw = _merged(src, out["derived"])
    raw["graph_maps"]["into_enumerated"] = {"source": "c_v2", "target": "paths.v5", "paths": [["v2", "v3", "v5"]]}
    p = _write(tmp_path, json.dumps(raw))
    assert _run("graph-map", p, "--map", "into_enumerated")[0] == 0


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "chainbundles", "validate", str(GOLDEN / "empty_bundle.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
