import json

import pytest

from shortpa.cli import main, read_config, InputError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    assert run(capsys, "classify", "[[1,1],[1,2]]")[1].strip() == "pseudo-Anosov, |trace| 3"
    assert run(capsys, "classify", "[[1,0],[0,1]]")[1].strip() == "identity"
    assert run(capsys, "classify", "[[0,-1],[1,0]]")[1].strip() == "finite order"
    code, out, _ = run(capsys, "classify", "[[1,3],[0,1]]", "--format", "json")
    data = json.loads(out)
    assert data["fixed_slope"] == "1/0" and data["twist_power"] == 3


@pytest.mark.parametrize("bad", ["nope", "[[1,1],[1,1]]", "[[1,2]]"])
def test_classify_parse_errors(capsys, bad):
    assert run(capsys, "classify", bad)[0] == 2


def test_construct(capsys, tmp_path):
    sig = tmp_path / "s.json"
    sig.write_text("[[[1,0],[-1,1]], [[1,1],[0,1]]]")
    code, out, _ = run(capsys, "construct", str(sig), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["output_class"]["kind"] == "pseudo-anosov"
    assert data["within_K_bound"]

    sig.write_text('[[["1","4"],["0","1"]]]')
    code, out, _ = run(capsys, "construct", str(sig), "--out", str(tmp_path / "r"))
    data = json.loads((tmp_path / "r" / "construction.json").read_text())
    assert code == 0 and data["active_subsurface"] == {"kind": "annulus", "core": "1/0"}

    sig.write_text("")
    assert run(capsys, "construct", str(sig))[0] == 2
    assert run(capsys, "construct", str(tmp_path / "missing.json"))[0] == 2


def test_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "zigzag", "--out", str(tmp_path))
    assert code == 0 and "zigzag: pass" in out
    assert json.loads((tmp_path / "zigzag.json").read_text())["verdict"] == "pass"
    assert (tmp_path / "index.json").exists()
    assert run(capsys, "certify", "unknown")[0] == 2


def test_certify_behrstock(capsys):
    code, out, _ = run(capsys, "certify", "behrstock", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_survey_is_deterministic(capsys, tmp_path):
    a = run(capsys, "survey", "12", "--seed", "4")[1]
    b = run(capsys, "survey", "12", "--seed", "4")[1]
    assert a == b and a.count("\n") == 13
    code, out, _ = run(capsys, "survey", "1", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 1
    assert run(capsys, "survey", "0")[0] == 2


def test_survey_hundred(capsys, tmp_path):
    code, out, _ = run(capsys, "survey", "100", "--out", str(tmp_path))
    summary = json.loads(out)
    assert summary["within_K_bound"] + summary["flagged"] >= 100
    rows = (tmp_path / "survey.csv").read_text().splitlines()
    assert len(rows) == 101


def test_distance_and_project(capsys):
    code, out, _ = run(capsys, "distance", "inf", "2/5", "--path")
    assert code == 0 and out.splitlines()[0] == "3"
    assert run(capsys, "project", "--core", "inf", "0/1", "20")[1].strip() == "22"
    assert run(capsys, "project", "--core", "inf", "inf", "1/2")[1].strip() == "undefined"
    assert run(capsys, "distance", "1/x", "2")[0] == 2


def test_config(capsys, tmp_path):
    led, runcfg = read_config("# ledger\nc = 1/2\nM = 10\nseed = 7\nformat = \"json\"\n")
    assert led == {"c": 0.5, "M": 10} and runcfg == {"seed": 7, "format": "json"}
    with pytest.raises(InputError):
        read_config("bogus = 1")
    with pytest.raises(InputError):
        read_config("just words")
    cfg = tmp_path / "c.cfg"
    cfg.write_text("c = 2\n")
    sig = tmp_path / "s.json"
    sig.write_text("[[[1,0],[-1,1]], [[1,1],[0,1]]]")
    code, out, _ = run(capsys, "construct", str(sig), "--config", str(cfg), "--format", "json")
    assert json.loads(out)["ledger"]["Q"] == 12
    cfg.write_text("Q = 3\n")
    assert run(capsys, "construct", str(sig), "--config", str(cfg))[0] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
