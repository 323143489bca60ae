"""Exit-code contract and JSON output of the command line, run in-process."""

import json

import pytest

from semired.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def model2(tmp_path, run):
    path = tmp_path / "m.json"
    assert run("build", "--family", "enhanced-gl", "--n", "2", "--out", str(path))[0] == 0
    return str(path)


def test_build_to_stdout(run):
    code, out, _ = run("build", "--family", "witt-nonneg", "--n", "1", "--p", "5")
    assert code == 0
    obj = json.loads(out)
    assert obj["family"] == "witt-nonneg" and len(obj["basis"]) == 4
    assert obj["field"] == {"kind": "Fp", "p": 5}


def test_build_invalid_n(run):
    code, _, err = run("build", "--family", "enhanced-gl", "--n", "0")
    assert code == 2 and "n >= 1" in err


def test_build_parabolic(run):
    code, out, _ = run("build", "--family", "parabolic-gl", "--blocks", "2,1", "--field", "F5")
    assert code == 0 and len(json.loads(out)["basis"]) == 7


def test_unknown_flag(run):
    code, _, err = run("build", "--family", "enhanced-gl", "--bogus")
    assert code == 2 and "usage" in err


def test_unknown_subcommand(run):
    assert run("frobnicate")[0] == 2


def test_validate(run, model2, tmp_path):
    code, out, _ = run("validate", "--model", model2)
    assert code == 0 and json.loads(out)["status"] == "pass"
    obj = json.loads(open(model2).read())
    obj["sc"].append([0, 1, 1, "5"])  # breaks antisymmetry
    code, out, _ = run("validate", "--model", write(tmp_path / "bad.json", obj))
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_malformed_json_names_path(run, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("{nope")
    code, _, err = run("validate", "--model", str(bad))
    assert code == 2 and "broken.json" in err
    code, _, err = run("positivity", "--weights", str(tmp_path / "missing.json"))
    assert code == 2 and "missing.json" in err


def test_model_missing_key(run, tmp_path):
    code, _, err = run("validate", "--model", write(tmp_path / "m.json", {"family": "enhanced-gl"}))
    assert code == 2 and "m.json" in err


def test_positivity_counterexample(run, tmp_path):
    path = write(tmp_path / "hk.json", {"rank": 1, "weights": [[3], [-3]]})
    code, out, _ = run("positivity", "--weights", path, "--oracle")
    obj = json.loads(out)
    assert code == 0
    assert obj["status"] == "infeasible" and obj["certificate"] == {"0": "1", "1": "1"}
    assert obj["oracle"]["agrees"]


def test_positivity_feasible(run, tmp_path):
    path = write(tmp_path / "w.json", {"rank": 2, "weights": [[1, -1], [1, 0], [0, 1]]})
    code, out, _ = run("positivity", "--weights", path)
    assert code == 0 and json.loads(out)["cocharacter"] == [2, 1]


def test_positivity_bad_shape(run, tmp_path):
    assert run("positivity", "--weights", write(tmp_path / "w.json", {"weights": [[1], [1, 2]]}))[0] == 2


def test_element_commands(run, model2, tmp_path):
    elt = write(tmp_path / "e.json", {"coords": ["1", "1", "0", "2", "0", "1/2"]})
    code, out, _ = run("jordan", "--model", model2, "--element", elt)
    assert code == 0
    jp = json.loads(out)
    # distinct eigenvalues 1, 2 and v in the image of x: already semisimple
    assert jp["semisimple"] == ["1", "1", "0", "2", "0", "1/2"]
    assert jp["nilpotent"] == ["0"] * 6
    code, out, _ = run("steinberg", "--model", model2, "--element", elt)
    assert code == 0 and json.loads(out)["chi"] == ["2", "3"]
    code, out, _ = run("nilcone", "--model", model2, "--element", elt)
    assert code == 0 and json.loads(out)["in_nilpotent_cone"] is False


def test_element_wrong_length(run, model2, tmp_path):
    elt = write(tmp_path / "e.json", {"coords": ["1"]})
    code, _, err = run("steinberg", "--model", model2, "--element", elt)
    assert code == 2 and "e.json" in err


def test_invariants_command(run, model2, tmp_path):
    code, out, _ = run("invariants", "--model", model2, "--restrict")
    obj = json.loads(out)
    assert code == 0 and obj["degrees"] == [2, 1]
    assert obj["restricted"][1] == {"0,1": "1", "1,0": "1"}
    code, out, _ = run("invariants", "--model", model2, "--sg-dim", "2", "--dual")
    assert code == 0 and json.loads(out)["dimension"] == 0


def test_bruhat_commands(run, tmp_path):
    path = str(tmp_path / "m.json")
    run("build", "--family", "enhanced-gl", "--n", "2", "--field", "F2", "--out", path)
    code, out, _ = run("bruhat", "--model", path, "--census")
    assert code == 0 and json.loads(out)["cells"] == {"e": 8, "s1": 16}
    g = write(tmp_path / "g.json", {"matrix": [[0, 1, 1], [1, 1, 0], [0, 0, 1]]})
    code, out, _ = run("bruhat", "--model", path, "--matrix", g)
    assert code == 0 and json.loads(out)["weyl"] == "s1"
    assert run("bruhat", "--model", path)[0] == 2


def test_borel_census_command(run, tmp_path):
    x = write(tmp_path / "x.json", {"matrix": [[0, 1], [0, 0]]})
    code, out, _ = run("borel-census", "--n", "2", "--q", "2", "--x", x)
    obj = json.loads(out)
    assert code == 0 and (obj["count"], obj["total"]) == (1, 3)
    y = write(tmp_path / "y.json", {"matrix": [[1, 0], [0, 0]]})
    assert run("borel-census", "--n", "2", "--q", "2", "--x", y)[0] == 2
    assert run("borel-census", "--n", "2", "--q", "4")[0] == 2


def test_verify_suite_is_deterministic(run):
    code1, out1, _ = run("verify", "--suite", "bruhat", "--seed", "3")
    code2, out2, _ = run("--seed", "3", "verify", "--suite", "bruhat")
    assert code1 == code2 == 0

    def strip(text):
        obj = json.loads(text)
        obj.pop("elapsed")
        for c in obj["checks"]:
            c.pop("elapsed")
        return obj

    assert strip(out1) == strip(out2)
    assert all(c["status"] == "pass" for c in json.loads(out1)["checks"])


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("SEMIRED_SEED", "11")
    assert main(["verify", "--suite", "bruhat"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 11
