import json
import subprocess
import sys

import pytest

from aperiodica.capcore import CapPoint
from aperiodica.cli import main, golden_check


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


TERNARY = ["--eps", "-1/sqrt(2)", "--eta", "1/sqrt(2)", "--len", "-2+2*sqrt(2)"]


def test_subst_example(capsys):
    code, out, _ = run(capsys, "subst", "--eps", "-1/sqrt(2)", "--c", "0", "--len", "-2+2*sqrt(2)")
    assert code == 0
    data = json.loads(out)
    assert data["images"] == {"0": "002013", "1": "00202", "2": "00202013", "3": "013"}
    assert data["initial"] == ["3", "0"]
    assert data["projection"] == {"0": "A", "1": "A", "2": "B", "3": "C"}
    assert data["alphabet"] == ["0", "1", "2", "3"]


def test_subst_extras(capsys):
    code, out, _ = run(
        capsys, "subst", "--eps=-1/sqrt(2)", "--len=-2+2*sqrt(2)", "--merge", "2", "--iterate", "2", "--verify", "2000"
    )
    data = json.loads(out)
    assert code == 0
    assert data["merged"]["images"]["C"] == "AABAACAABABAAC"
    assert data["iterations"][1] == "013|002013"
    assert data["verification"]["ok"]


def test_gen_without_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["gen", "--bogus"],
        ["gen", *TERNARY, "--format", "xml"],
        ["gen", "--eps", "0.5", "--eta", "tau", "--len", "1"],
        ["analyze", *TERNARY, "--n", "0"],
        ["subst", "--eps", "pi", "--len", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["subst", "--eps", "1/2-1/2*sqrt(5)", "--len", "1/2"],
        ["gen", "--eps", "tau", "--eta", "tau", "--len", "1"],
        ["beta", "--beta", "2,2,+", "--subst"],
        ["selfsim", "--eps", "-1/tau", "--eta", "sqrt(2)", "--len", "1", "--find"],
    ],
)
def test_domain_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("aperiodica: error:")


def test_gen_word(capsys):
    code, out, _ = run(capsys, "gen", *TERNARY, "--left", "6", "--right", "6", "--format", "word")
    assert code == 0 and out.strip() == "BABAAC|AABAAC"


def test_gen_json_round_trip(capsys):
    _, out, _ = run(capsys, "gen", *TERNARY, "--left", "3", "--right", "6")
    data = json.loads(out)
    pts = [CapPoint.from_json(p) for p in data["points"]]
    assert [(p.p, p.q) for p in pts] == [(-2, -3), (-1, -2), (0, -1), (0, 0), (1, 1), (2, 2), (3, 4), (4, 5), (5, 6), (5, 7)]
    assert all(CapPoint.from_json(p.to_json()) == p for p in pts)


def test_gen_csv(capsys):
    _, out, _ = run(capsys, "gen", "--preset", "ternary-sqrt2", "--right", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "index,p,q,value,star,letter" and len(lines) == 5


def test_deterministic_output(capsys):
    first = run(capsys, "analyze", *TERNARY, "--n", "6", "--what", "density")[1]
    second = run(capsys, "analyze", *TERNARY, "--n", "6", "--what", "density")[1]
    assert first == second


def test_rauzy_fibonacci_dot(capsys):
    code, out, _ = run(capsys, "rauzy", "--preset", "fibonacci", "--n", "4")
    assert code == 0
    nodes = [l for l in out.splitlines() if "[label=" in l and "->" not in l]
    edges = [l for l in out.splitlines() if "->" in l]
    assert (len(nodes), len(edges)) == (5, 6)
    assert "sqrt(5)" in out


def test_rauzy_json_reduced(capsys):
    _, out, _ = run(capsys, "rauzy", "--preset", "fibonacci", "--n", "4", "--reduce", "--format", "json", "--no-weights")
    data = json.loads(out)
    assert len(data["vertices"]) <= 4 and all(e["weight"] is None for e in data["edges"])


@pytest.mark.parametrize("what", ["factors", "complexity", "special", "density"])
def test_analyze(what, capsys):
    code, out, _ = run(capsys, "analyze", "--eps", "-1/tau", "--eta", "tau", "--len", "9/10", "--n", "4", "--what", what)
    assert code == 0 and json.loads(out)


def test_analyze_factors_csv(capsys):
    _, out, _ = run(capsys, "analyze", "--eps", "-1/tau", "--eta", "tau", "--len", "9/10", "--n", "4", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 9


def test_dn(capsys):
    _, out, _ = run(capsys, "dn", "--eps", "-1/tau", "--n", "4", "--factors")
    data = json.loads(out)
    assert data["breakpoints"] == ["3-sqrt(5)", "-5/2+3/2*sqrt(5)", "1"]
    assert [len(s["factors"]) for s in data["factor_sets"]] == [9, 6, 9, 7, 9, 5]


def test_beta(capsys):
    _, out, _ = run(capsys, "beta", "--beta", "3,1,-", "--renyi", "--admissible", "22", "--subst", "--equivalence", "--points", "200")
    data = json.loads(out)
    assert data["renyi"]["text"] == "2(1)^w"
    assert data["admissible"] is False
    assert data["substitution"]["images"] == {"A": "AAB", "B": "AB"}
    assert data["equivalence"]["agrees"]


def test_beta_expand(capsys):
    _, out, _ = run(capsys, "beta", "--beta", "tau", "--expand", "2")
    assert json.loads(out)["expansion"] == "10.01"


def test_selfsim(capsys):
    _, out, _ = run(capsys, "selfsim", "--preset", "ternary-sqrt2", "--check", "--find", "--verify", "300")
    data = json.loads(out)
    assert data["factor"]["gamma"] == "3+2*sqrt(2)" and data["inclusion"]["ok"]


def test_selfsim_morphism(capsys):
    _, out, _ = run(capsys, "selfsim", "--morphism", "A->AB, B->A", "--points", "3")
    data = json.loads(out)
    assert data["eigenvalue"] == "1/2+1/2*sqrt(5)" and data["lengths"]["B"] == "1"


def test_replay_passes(capsys):
    code, out, _ = run(capsys, "paper-check")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert set(data["checks"]) == {"subst", "fibonacci", "dn", "beta", "selfsim"}


def test_replay_only(capsys):
    _, out, _ = run(capsys, "paper-check", "--only", "subst")
    assert list(json.loads(out)["checks"]) == ["subst"]


def test_corrupted_golden(tmp_path, capsys):
    from importlib import resources

    golden = json.loads(resources.files("aperiodica").joinpath("golden.json").read_text())
    golden["subst"]["images"]["3"] = "031"
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(golden))
    code, out, err = run(capsys, "paper-check", "--golden", str(path))
    assert code == 1 and "subst" in err
    diffs = json.loads(out)["checks"]["subst"]["differences"]
    assert diffs == ['images.3: expected "031", got "013"']


def test_replay_function():
    assert all(not diffs for diffs in golden_check(["fibonacci", "dn"]).values())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "aperiodica", "gen", *TERNARY, "--right", "6", "--format", "word"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "|AABAAC"
