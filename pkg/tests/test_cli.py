import io
import json
from pathlib import Path

import pytest

from bitambara.cli import run

SCHEMA = Path(__file__).resolve().parents[1] / "docs" / "spectrum.schema.json"
B4 = ["--construction", "burnside:p=2,n=2"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_enumerate_pairs():
    code, out, _ = call("enumerate", "pairs", "--group", "cyclic:9")
    assert code == 0
    assert out.splitlines()[0] == "12 compatible pairs"
    assert "  (O1,O3)" in out.splitlines()


def test_enumerate_systems_json():
    code, out, _ = call("enumerate", "systems", "--group", "cyclic:8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 14 and len(data["systems"]) == 14


def test_hull():
    code, out, _ = call("hull", "O3", "--group", "cyclic:4")
    assert (code, out) == (0, "Hull(O3) = Ocomp\n")
    code, out, _ = call("hull", "--group", "cyclic:4")
    assert len(out.splitlines()) == 5


def test_spectrum_json_example():
    code, out, _ = call("spectrum", *B4, "--pair", "Ocomp,Ocomp", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [f["name"] for f in data["families"]] == ["C3", "D", "G"]
    assert data["identifications"] == ["C3_p = D_p = G_p"]
    assert data["pair"]["name"] == "(Ocomp,Ocomp)"


def test_spectrum_json_matches_schema_and_round_trips():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    _, out, _ = call("spectrum", *B4, "--pair", "O1,O3", "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, schema)
    pair = f'{data["pair"]["mult"]},{data["pair"]["add"]}'
    _, again, _ = call("spectrum", *B4, "--pair", pair, "--format", "json")
    assert again == out


def test_output_is_byte_stable():
    a = call("export", *B4, "--format", "json")[1]
    b = call("export", *B4, "--format", "json")[1]
    assert a == b
    data = json.loads(a)
    assert len(data["spectra"]) == 12
    assert sum(len(c) for c in data["homeomorphism_classes"]) == 12


def test_dot_format(tmp_path):
    target = tmp_path / "s.dot"
    code, out, _ = call("spectrum", *B4, "--pair", "O2,O2", "--format", "dot", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("digraph") and "rankdir=BT;" in text


def test_text_spectrum_lists_classes():
    code, out, _ = call("spectrum", "--construction", "constantZ", "--prime", "2")
    assert code == 0
    assert out.rstrip().endswith("3 homeomorphism classes")


def test_prime_with_group():
    code, out, _ = call("spectrum", "--construction", "burnside", "--prime", "2", "--group", "cyclic:4",
                        "--pair", "Ocomp,Ocomp")
    assert code == 0 and "C3" in out


@pytest.mark.parametrize("argv", [
    ["spectrum", "--construction", "mackey:p=2"],
    ["spectrum", "--construction", "burnside:p=2", "--pair", "Ocomp,Otriv"],
    ["enumerate", "pairs", "--group", "dihedral:4"],
    ["check", *B4, "--format", "dot"],
    ["verify", "paper", "--only", "11"],
    ["spectrum", "--construction", "burnside", "--prime", "3", "--group", "cyclic:4"],
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert err.startswith("usage:") and "error:" in err


def test_check_passes_and_reports_cohomology():
    code, out, _ = call("check", "--construction", "constantZ:p=3", "--samples", "50", "--seed", "1")
    assert code == 0
    assert "additively cohomological: True" in out


def test_check_failure_exits_1(monkeypatch):
    import bitambara.cli as cli
    monkeypatch.setattr(cli, "check_all", lambda D, samples, seed: ["forced counterexample"])
    code, out, _ = call("check", *B4, "--samples", "5")
    assert code == 1 and out.startswith("FAIL")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("TAMBARA_SEED", "4242")
    _, out, _ = call("check", "--construction", "burnside:p=2", "--samples", "5")
    assert "seed 4242" in out
    _, out, _ = call("check", "--construction", "burnside:p=2", "--samples", "5", "--seed", "9")
    assert "seed 9" in out


def test_verify_subset():
    code, out, _ = call("verify", "paper", "--seed", "7", "--only", "1,2,4")
    assert code == 0
    assert out.splitlines()[-1] == "3/3 checks passed (seed 7)"
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_main_entry_point(capsys):
    from bitambara.cli import main
    assert main(["hull", "Otriv", "--group", "cyclic:2"]) == 0
    assert capsys.readouterr().out == "Hull(Otriv) = Otriv\n"
