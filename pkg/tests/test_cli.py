import json

import pytest

from iotak import cli, serialize
from iotak.models import torus_knot


def run(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_torus_emits_parseable_file(tmp_path, capsys):
    path = tmp_path / "tr.json"
    code, out, err = run(capsys, "torus", "2", "3", "-o", str(path))
    assert code == 0
    name, ic = serialize.load(str(path))
    assert name == "T(2,3)"
    assert len(ic.complex) == 3


def test_round_trip_byte_identical(tmp_path, capsys):
    path = tmp_path / "t34.json"
    run(capsys, "torus", "3", "4", "-o", str(path))
    first = path.read_bytes()
    name, ic = serialize.load(str(path))
    assert serialize.dumps(serialize.iota_complex_to_dict(name, ic)).encode() == first


def test_invariants_torus_json(capsys):
    code, out, err = run(capsys, "invariants", "--torus", "2", "3")
    assert code == 0
    assert json.loads(out) == {
        "d": -2, "d_bar": -2, "d_under": -2, "V0": 1, "V0_bar": 1, "V0_under": 1,
    }


def test_invariants_text_format(capsys):
    code, out, err = run(capsys, "invariants", "--torus", "2", "3", "--format", "text")
    assert code == 0
    assert out == "T(2,3): (V0_bar, V0, V0_under) = (1, 1, 1)\n"


def test_invariants_unknot(capsys):
    code, out, err = run(capsys, "invariants", "--torus", "1", "1")
    assert code == 0
    rep = json.loads(out)
    assert (rep["V0_bar"], rep["V0"], rep["V0_under"]) == (0, 0, 0)


def test_sum_pipeline_t45(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "torus", "4", "5", "-o", str(a))
    code, out, err = run(capsys, "sum", str(a), str(a), "-o", str(b))
    assert code == 0
    code, out, err = run(capsys, "invariants", str(b))
    assert code == 0
    rep = json.loads(out)
    assert (rep["V0_bar"], rep["V0"], rep["V0_under"]) == (4, 4, 6)


def test_sum_variants_agree(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(capsys, "torus", "3", "4", "-o", str(a))
    outs = []
    for variant in ("1", "2"):
        out_path = tmp_path / f"s{variant}.json"
        run(capsys, "sum", str(a), str(a), "--variant", variant, "-o", str(out_path))
        code, out, err = run(capsys, "invariants", str(out_path))
        assert code == 0
        outs.append(json.loads(out))
    assert outs[0] == outs[1]


def test_invariants_oracle_flag(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(capsys, "torus", "3", "4", "-o", str(a))
    code, out, err = run(capsys, "invariants", str(a), "--oracle")
    assert code == 0


def test_invariants_deterministic(capsys):
    _, out1, _ = run(capsys, "invariants", "--torus", "5", "6")
    _, out2, _ = run(capsys, "invariants", "--torus", "5", "6")
    assert out1 == out2


def test_check_pass_and_fail(tmp_path, capsys):
    path = tmp_path / "tr.json"
    run(capsys, "torus", "2", "3", "-o", str(path))
    code, out, err = run(capsys, "check", str(path))
    assert code == 0
    assert "axiom (6)" in out and "iota-complex" in out

    doc = json.loads(path.read_text())
    doc["iota"] = [
        {"from": g["name"], "to": g["name"], "mono": [[0, 0]]} for g in doc["generators"]
    ]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1
    assert "FAIL" in out


def test_dual_subcommand(tmp_path, capsys):
    a = tmp_path / "a.json"
    d = tmp_path / "d.json"
    run(capsys, "torus", "2", "3", "-o", str(a))
    code, out, err = run(capsys, "dual", str(a), "-o", str(d))
    assert code == 0
    code, out, err = run(capsys, "invariants", str(d))
    rep = json.loads(out)
    assert (rep["V0_bar"], rep["V0"], rep["V0_under"]) == (-1, 0, 0)


def test_obstruct_verdicts(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "torus", "4", "5", "-o", str(a))
    run(capsys, "sum", str(a), str(a), "-o", str(b))
    code, out, err = run(capsys, "obstruct", str(b))
    assert code == 0
    verdict = json.loads(out)
    assert verdict["consistent_with_thin_or_lspace"] is False

    tr = a.parent / "tr.json"
    run(capsys, "torus", "2", "3", "-o", str(tr))
    code, out, err = run(capsys, "obstruct", str(tr))
    assert json.loads(out)["consistent_with_thin_or_lspace"] is True


def test_local_equiv_outcomes(tmp_path, capsys):
    unk = tmp_path / "unk.json"
    tr = tmp_path / "tr.json"
    run(capsys, "torus", "1", "1", "-o", str(unk))
    run(capsys, "torus", "2", "3", "-o", str(tr))
    code, out, err = run(capsys, "local-equiv", str(unk), str(tr))
    assert code == 0
    assert json.loads(out) == {"locally_equivalent": False, "search": "exhausted"}

    code, out, err = run(capsys, "local-equiv", str(tr), str(tr))
    assert code == 0
    assert json.loads(out)["locally_equivalent"] is True

    code, out, err = run(capsys, "local-equiv", str(tr), str(tr), "--cap", "0")
    assert code == 3


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "torus", "4", "6", "-o", str(tmp_path / "x.json"))[0] == 2
    tr = tmp_path / "tr.json"
    run(capsys, "torus", "2", "3", "-o", str(tr))
    assert run(capsys, "invariants", str(tr), "--torus", "2", "3")[0] == 2
    assert run(capsys, "invariants")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_verification_failure_exit_code(tmp_path, capsys):
    doc = {
        "name": "broken",
        "generators": [{"name": "a", "gr_u": 0, "gr_v": 0}, {"name": "b", "gr_u": -1, "gr_v": -1}],
        "differential": [{"from": "b", "to": "a", "mono": [[1, 0]]}],
        "iota": [{"from": "a", "to": "a", "mono": [[0, 0]]}, {"from": "b", "to": "b", "mono": [[0, 0]]}],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "invariants", str(path))
    assert code == 1


def test_threads_env_validation(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("IOTAK_THREADS", "zero")
    assert run(capsys, "invariants", "--torus", "2", "3")[0] == 2
    monkeypatch.setenv("IOTAK_THREADS", "4")
    assert run(capsys, "invariants", "--torus", "2", "3")[0] == 0
