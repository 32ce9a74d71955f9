import io
import json
from pathlib import Path

import pytest

from eiscong.cli import dump_report, read_problem_file, run, to_jsonable, write_problem_file
from eiscong.errors import ParseError
from eiscong.polyfield import IntPoly
from eiscong.verifier import kummer_problem

DOCS = Path(__file__).resolve().parent.parent / "docs"
KUMMER_FILE = (DOCS / "kummer.problem").read_text()


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_docs_example_parses():
    problem, options = read_problem_file(KUMMER_FILE)
    assert problem == kummer_problem(IntPoly([3, 1]), IntPoly([3, 0, 0, 1]))
    assert options == {"n_max": 30, "p_max": 31}


def test_problem_file_round_trip():
    problem, options = read_problem_file(KUMMER_FILE)
    again, opts2 = read_problem_file(write_problem_file(problem, **options))
    assert again == problem and opts2 == options


@pytest.mark.parametrize(
    "text",
    [
        "N = 2\nf = [t]\n",  # missing g
        "N = 2\nf = [t + 3]\ng = [1]\nh = 3\n",  # unknown key
        "N = 2\nN = 3\nf = [t + 3]\ng = [1]\n",  # duplicate key
        "N = two\nf = [t + 3]\ng = [1]\n",
        "N = 2\nf = t + 3\ng = [1]\n",  # not a list
        "N = 2\nf = [t/2 + 3]\ng = [1]\n",  # non-integral index
        "N = 2\nf = [t + 3,]\ng = [1]\n",
        "N = 2\nf = [t + 3]\ng = [1]\nn_max = lots\n",
        "no equals sign\n",
    ],
)
def test_bad_problem_files(text):
    with pytest.raises(ParseError):
        read_problem_file(text)


def test_von_staudt_preset_exit_0(tmp_path):
    path = tmp_path / "vs.json"
    code, text = call("preset", "--preset", "von-staudt", "--f", "t - 1", "--pmax", "97", "--json", str(path))
    assert code == 0
    assert "P = 4" in text and "23/23 primes pass" in text
    report = json.loads(path.read_text(encoding="utf-8"))
    assert report["schema"] == 1
    assert report["bound"]["P"] == 4
    assert [r["p"] for r in report["verify"]][0] == 5
    assert all(r["pass"] for r in report["verify"])


def test_tightened_kummer_check_conditions_exit_1(tmp_path):
    path = tmp_path / "k3.problem"
    path.write_text(KUMMER_FILE.replace("N = 2", "N = 3"))
    out_json = tmp_path / "k3.json"
    code, text = call("check-conditions", "--problem", str(path), "--json", str(out_json))
    assert code == 1
    assert "C3 l=4 m=1: v_t = 1 >= 2  FAIL" in text
    entries = json.loads(out_json.read_text())["conditions"]["entries"]
    failing = [e for e in entries if not e["pass"]]
    assert (failing[0]["condition"], failing[0]["l"], failing[0]["m"]) == ("C3", 4, 1)


def test_missing_file_exit_2(tmp_path):
    code, _ = call("verify", "--problem", str(tmp_path / "missing.file"))
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus-command"],
        ["verify"],
        ["preset", "--preset", "von-staudt"],
        ["preset", "--preset", "von-staudt", "--f", "2t"],
        ["preset", "--preset", "kummer", "--f", "t + 3"],
        ["taylor", "--n", "2", "--p", "5"],
        ["preset", "--preset", "e-kummer", "--p", "691", "--k", "12", "--r", "1"],
    ],
)
def test_input_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_tiny_budget_exit_3(tmp_path):
    path = tmp_path / "k.problem"
    path.write_text(KUMMER_FILE)
    code, text = call("verify", "--problem", str(path), "--budget", "30", "--pmax", "31", "--nmax", "5")
    assert code == 3
    assert "ERROR" in text


def test_verify_kummer_file_and_overrides(tmp_path):
    path = tmp_path / "k.problem"
    path.write_text(KUMMER_FILE)
    code, text = call("verify", "--problem", str(path), "--pmax", "13", "--nmax", "8")
    assert code == 0
    assert "3/3 primes pass" in text


def test_star_verify(tmp_path):
    code, text = call("star-verify", "--preset", "kummer", "--f", "t + 3", "--g", "t^3 + 3", "--pmax", "31", "--nmax", "8")
    assert code == 0
    assert "p = 31: a0 part margin" in text


def test_compute_bound_and_taylor():
    code, text = call("compute-bound", "--preset", "kummer", "--f", "t + 3", "--g", "t^3 + 3")
    assert code == 0 and text.startswith("P = 6")
    code, text = call("taylor", "--n", "2", "--p", "5", "--l", "2", "--W", "2", "--k", "26")
    assert code == 0
    assert "m=0: val 0, unit 13" in text
    assert "series at k = 26: 8 mod 5^2" in text


def test_e_presets_cli():
    code, text = call("preset", "--preset", "e-trivial", "--p", "5", "--k", "4", "--r", "1", "--nmax", "20")
    assert code == 0 and "E_4 = 1 mod 5^1: pass" in text
    code, _ = call("preset", "--preset", "e-kummer", "--p", "7", "--k", "4", "--r", "2", "--nmax", "20")
    assert code == 0


def test_json_is_byte_identical_outside_timing(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert call("preset", "--preset", "kummer", "--f", "t + 3", "--g", "t^3 + 3",
                    "--pmax", "17", "--nmax", "10", "--json", str(path), "--workers", str(1 + 3 * i))[0] == 0
        report = json.loads(path.read_bytes())
        assert set(report["timing"]) == {"7", "11", "13", "17"}
        del report["timing"]
        outs.append(dump_report(report))
    assert outs[0] == outs[1]
    # the whole file is canonical: sorted keys and a trailing newline
    raw = (tmp_path / "r0.json").read_bytes()
    assert raw == dump_report(json.loads(raw))


def test_jsonable_conventions():
    from fractions import Fraction

    assert to_jsonable({"a": Fraction(-3, 4), "b": float("inf"), 2: (1, 2)}) == {
        "a": "-3/4",
        "b": "inf",
        "2": [1, 2],
    }
