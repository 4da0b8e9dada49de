import json

from moebiuskit import cli
from moebiuskit.catposet import FinPoset, divisor_poset
from moebiuskit.examples import poset_key


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def chain3_doc():
    return {"kind": "poset", "elements": [0, 1, 2], "relations": [[0, 1], [1, 2]]}


def adjunction_doc():
    return {
        "kind": "adjunction",
        "left": {"kind": "poset", "elements": [0, 1, 2], "relations": [[0, 1], [1, 2]]},
        "right": {"kind": "poset", "elements": [0, 1], "relations": [[0, 1]]},
        "f": [[0, 0], [1, 0], [2, 1]],
        "g": [[0, 1], [1, 2]],
    }


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_poset_segal_passes(tmp_path, capsys):
    path = write(tmp_path, "chain3.json", chain3_doc())
    code, out, _ = run(capsys, "check", path, "--profile", "segal", "--max-level", "2")
    assert code == 0
    assert "PASS" in out


def test_check_malformed_json_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, _out, err = run(capsys, "check", str(path))
    assert code == 2
    assert "input error" in err


def test_check_builtin_layered_posets_segal_fails_with_witness(capsys):
    code, out, _ = run(capsys, "check", "builtin:layered-posets",
                       "--profile", "segal", "--grade", "2", "--max-level", "1")
    assert code == 1
    assert "witness" in out


def test_check_builtin_layered_posets_decomposition_passes(capsys):
    code, out, _ = run(capsys, "check", "builtin:layered-posets",
                       "--profile", "decomposition", "--grade", "2",
                       "--max-level", "1")
    assert code == 0


def test_check_respects_thread_cap(capsys, monkeypatch):
    monkeypatch.setenv("MOEBIUSKIT_THREADS", "2")
    code, out, _ = run(capsys, "check", "builtin:layered-sets",
                       "--profile", "segal", "--grade", "2", "--max-level", "1")
    assert code == 0


def test_mobius_builtin_posets_table(capsys):
    code, out, _ = run(capsys, "mobius", "builtin:posets", "--n", "3",
                       "--format", "csv")
    assert code == 0
    rows = [line for line in out.strip().splitlines()[1:] if line]
    assert len(rows) == 5
    values = [row.rsplit(",", 1)[1] for row in rows]
    assert values.count("-1") == 1      # the discrete class
    assert values.count("0") == 4


def test_mobius_builtin_sets(capsys):
    code, out, _ = run(capsys, "mobius", "builtin:sets", "--n", "4")
    assert code == 0
    assert out.strip().splitlines()[-1].split()[-1] == "1"


def test_mobius_divisor_interval(tmp_path, capsys):
    P = divisor_poset(12)
    doc = {"kind": "poset", "elements": list(P.elements),
           "relations": sorted(P.strict_pairs())}
    path = write(tmp_path, "divisors12.json", doc)
    code, out, _ = run(capsys, "mobius", path, "--interval", "1", "12")
    assert code == 0
    assert out.strip().splitlines()[-1].split()[-1] == "0"


def test_mobius_refusal_names_hypothesis(tmp_path, capsys):
    doc = {"kind": "category", "objects": ["*"],
           "morphisms": [{"id": "id", "src": "*", "tgt": "*"},
                         {"id": "g", "src": "*", "tgt": "*"}],
           "compose": [["id", "id", "id"], ["id", "g", "g"],
                       ["g", "id", "g"], ["g", "g", "id"]],
           "identities": [["*", "id"]]}
    path = write(tmp_path, "involution.json", doc)
    code, _out, err = run(capsys, "mobius", path)
    assert code == 1
    assert "locally finite length" in err


def test_rota_chain_adjunction_builtin(capsys):
    code, out, _ = run(capsys, "rota", "builtin:chain-adjunction")
    assert code == 0
    assert "MISMATCH" not in out


def test_rota_adjunction_file(tmp_path, capsys):
    path = write(tmp_path, "adj.json", adjunction_doc())
    code, out, _ = run(capsys, "rota", path)
    assert code == 0


def test_rota_non_adjunction_rejected(tmp_path, capsys):
    doc = adjunction_doc()
    doc["g"] = [[0, 0], [1, 2]]   # not a right adjoint
    path = write(tmp_path, "broken.json", doc)
    code, _out, err = run(capsys, "rota", path)
    assert code == 2
    assert "not an adjunction" in err


def test_rota_builtin_sets_posets(capsys):
    code, out, _ = run(capsys, "rota", "builtin:sets-posets", "--grade", "2")
    assert code == 0
    assert "MISMATCH" not in out


def test_output_deterministic(capsys):
    _code, out1, _ = run(capsys, "mobius", "builtin:posets", "--n", "3",
                         "--format", "json")
    _code, out2, _ = run(capsys, "mobius", "builtin:posets", "--n", "3",
                         "--format", "json")
    assert out1 == out2


def test_poset_json_roundtrip(tmp_path, capsys):
    P = FinPoset(["a", "b", "c"], [("a", "b")])
    doc = cli.poset_json(P)
    path = write(tmp_path, "roundtrip.json", doc)
    loaded = cli.load_poset(json.loads((tmp_path / "roundtrip.json").read_text()))
    assert poset_key(loaded) == poset_key(P)
