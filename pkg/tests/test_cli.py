"""Command-line surface: literals, table mode, golden files, record lines,
and the exit-code contract."""

import json
import pathlib

import pytest

import qadic.suites
from qadic.cli import OutputRecord, main, run
from qadic.correspondence import exceptional_q
from qadic.errors import DomainError, InvariantError
from qadic.suites import SuiteResult

GOLDEN = pathlib.Path(__file__).parent / "golden"


def out_of(capsys) -> str:
    return capsys.readouterr().out.rstrip("\n")


# -- documented examples -----------------------------------------------------


def test_iota_rational_exponent(capsys):
    assert run(["iota", "--p", "3", "--q", "4", "--z", "-1/2", "--n", "6"]) == 0
    assert out_of(capsys) == "3^6:1,1,1,1,1,1"


def test_iota_identity_parameter(capsys):
    assert run(["iota", "--p", "3", "--q", "1", "--z", "5", "--n", "3"]) == 0
    assert out_of(capsys) == "5"


def test_fixed_count(capsys):
    assert run(["fixed", "count", "--p", "3", "--q", "4", "--n", "4"]) == 0
    assert out_of(capsys) == "21"


def test_fixed_enumerate(capsys):
    assert run(["fixed", "enumerate", "--p", "3", "--q", "7", "--n", "2"]) == 0
    assert out_of(capsys) == "0,1,3,4,6,7"


def test_fixed_classify(capsys):
    assert run(["fixed", "classify", "--p", "3", "--q", "4", "--n", "4", "--z", "13"]) == 0
    assert out_of(capsys) == "rooted"


def test_exceptional_eight_digits(capsys):
    # digit index 3 is 2, not 0: the printed source form drops one term, and
    # the certified digit stream (each stage exhausts its 3-candidate search
    # with an evaluation witness) is the authority here
    assert run(["exceptional", "--branch", "seven", "--digits", "8"]) == 0
    assert out_of(capsys) == "3^8:1,2,1,2,0,0,1,2"


def test_phi_examples(capsys):
    assert run(["phi", "--q", "4", "--precision", "6"]) == 0
    assert out_of(capsys) == "3^5:1,1,1,1,1"
    assert run(["phi", "--q", "7", "--precision", "8"]) == 0
    assert out_of(capsys) == "3^7:0,2,2,0,2,2,2"


def test_psi_examples(capsys):
    assert run(["psi", "--z", "0", "--precision", "8"]) == 0
    assert out_of(capsys) == "3^8:1,2,1,2,0,0,1,2"
    assert run(["psi", "--z", "1", "--precision", "8"]) == 0
    assert out_of(capsys) == "3^8:1,1,2,0,2,1,0,1"
    assert run(["psi", "--z", "-1/2", "--precision", "8"]) == 0
    assert out_of(capsys) == "3^8:1,1,0,0,0,0,0,0"


def test_phi_reports_exceptional_parameter(capsys):
    q0 = str(exceptional_q("seven", 9))
    assert run(["phi", "--q", q0, "--precision", "9"]) == 0
    text = out_of(capsys)
    assert "seven" in text and "3^8" in text


def test_negative_literal_both_spellings(capsys):
    run(["iota", "--p", "3", "--q", "4", "--z", "-1/2", "--n", "4"])
    split_form = out_of(capsys)
    run(["iota", "--p", "3", "--q", "4", "--z=-1/2", "--n", "4"])
    assert out_of(capsys) == split_form


def test_digit_string_q_matches_integer_q(capsys):
    run(["iota", "--p", "3", "--q", "4", "--z", "7", "--n", "3"])
    want = out_of(capsys)
    run(["iota", "--p", "3", "--q", "3^5:1,1,0,0,0", "--z", "7", "--n", "3"])
    assert out_of(capsys) == want


# -- golden tables -----------------------------------------------------------


@pytest.mark.parametrize(
    "fname,n,limit",
    [("table_mod81.txt", 4, 82), ("table_mod243.txt", 5, 112), ("table_mod729.txt", 6, 82)],
)
def test_golden_tables_byte_identical(tmp_path, fname, n, limit):
    out = tmp_path / fname
    code = run(
        [
            "iota", "--p", "3", "--q", "4", "--n", str(n),
            "--table", str(limit), "--mark-fixed", "--out", str(out),
        ]
    )
    assert code == 0
    assert out.read_bytes() == (GOLDEN / fname).read_bytes()


def test_table_marks_the_fixed_residues(capsys):
    assert run(["iota", "--p", "3", "--q", "4", "--n", "4", "--table", "82",
                "--mark-fixed", "--json"]) == 0
    record = OutputRecord.from_line(out_of(capsys))
    marked = record.result["fixed_positions"]
    assert len(marked) == 23  # 21 residues, two of them seen again past z = 80
    assert {z % 81 for z in marked} == {
        0, 1, 4, 10, 13, 19, 22, 27, 28, 31, 37, 40, 46, 49, 54, 55, 58, 64, 67, 73, 76,
    }


# -- structured records ------------------------------------------------------


def test_record_roundtrip_direct():
    r = OutputRecord(
        command=("iota", "--p", "3"),
        inputs={"p": 3, "q": "4"},
        result={"value": "5"},
        method="structural",
        timing=0.25,
    )
    assert OutputRecord.from_line(r.to_line()) == r


def test_json_mode_emits_one_sorted_record(capsys):
    argv = ["iota", "--p", "3", "--q", "4", "--z", "5", "--n", "3", "--json"]
    assert run(argv) == 0
    line = out_of(capsys)
    assert "\n" not in line
    record = OutputRecord.from_line(line)
    assert list(record.command) == argv
    assert record.method == "structural"
    assert record.result == {"value": str((4**5 - 1) // 3 % 27)}
    assert record.inputs["p"] == 3 and record.inputs["q"] == "4"
    assert record.timing >= 0
    # deterministic serialization: the line is its own canonical form
    assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))


def test_verify_json_method_provenance(capsys):
    assert run(["verify", "--suite", "census", "--depth", "4", "--json"]) == 0
    assert OutputRecord.from_line(out_of(capsys)).method == "structural"
    assert run(["verify", "--suite", "criterion", "--depth", "2", "--json"]) == 0
    assert OutputRecord.from_line(out_of(capsys)).method == "oracle"


def test_record_parser_rejects_malformed_lines():
    with pytest.raises(DomainError):
        OutputRecord.from_line("not json at all {")
    with pytest.raises(DomainError):
        OutputRecord.from_line('{"command":[],"inputs":{}}')
    with pytest.raises(DomainError):
        OutputRecord.from_line("[1,2,3]")


# -- output destination ------------------------------------------------------


def test_out_file_writes_instead_of_stdout(tmp_path, capsys):
    target = tmp_path / "value.txt"
    assert run(["iota", "--p", "3", "--q", "4", "--z", "5", "--n", "3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text() == "17\n"  # (4^5 - 1)/3 = 341 = 17 mod 27


# -- verify ------------------------------------------------------------------


def test_verify_single_suite_passes(capsys):
    assert run(["verify", "--suite", "census", "--depth", "4"]) == 0
    text = out_of(capsys)
    assert "census" in text and "pass" in text


def test_verify_reports_first_counterexample(monkeypatch, capsys):
    bad = SuiteResult(name="census", cases=3, failures=["n=4: count off by 1"])

    monkeypatch.setattr(qadic.suites, "run_suites", lambda names, depth, seed: [bad])
    assert run(["verify", "--suite", "census"]) == 3
    text = out_of(capsys)
    assert "FAIL" in text
    assert "first counterexample: n=4: count off by 1" in text


def test_verify_invariant_error_exits_three(monkeypatch, capsys):
    def boom(names, depth, seed):
        raise InvariantError("cross-check broke")

    monkeypatch.setattr(qadic.suites, "run_suites", boom)
    assert run(["verify", "--suite", "census"]) == 3
    assert "invariant violated" in capsys.readouterr().err


# -- exit codes --------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["iota", "--p", "3", "--q", "abc", "--z", "1", "--n", "3"],  # bad literal
        ["iota", "--p", "3", "--q", "4", "--n", "3"],  # neither --z nor --table
        ["iota", "--p", "3", "--q", "4", "--z", "1", "--n", "3", "--table", "5"],
        ["iota", "--p", "3", "--q", "4", "--z", "1", "--n", "3", "--mark-fixed"],
        ["iota", "--p", "3", "--q", "4", "--z", "1", "--n", "0"],
        ["iota", "--p", "3", "--q", "5^3:1,0,0", "--z", "1", "--n", "2"],  # wrong prime
        ["iota", "--p", "5", "--q", "2", "--z", "1/2", "--n", "2"],  # rational z off-domain
        ["fixed", "enumerate", "--p", "3", "--q", "4", "--n", "3", "--z", "1"],
        ["fixed", "classify", "--p", "3", "--q", "4", "--n", "3"],  # classify without --z
        ["verify", "--suite", "no-such-suite"],
        ["exceptional", "--branch", "seven", "--digits", "0"],
        ["iota"],  # argparse failure routed through the same path
        ["no-such-command"],
    ],
)
def test_domain_errors_exit_one(argv, capsys):
    assert run(argv) == 1
    assert "error" in capsys.readouterr().err


def test_precision_errors_exit_two(capsys):
    # q given with too few digits for the requested level
    assert run(["iota", "--p", "3", "--q", "3^2:1,1", "--z", "5", "--n", "4"]) == 2
    assert "precision" in capsys.readouterr().err
    # z digit string shorter than the level
    assert run(["iota", "--p", "3", "--q", "4", "--z", "3^2:1,1", "--n", "4"]) == 2


def test_resource_cap_exits_four(capsys):
    assert run(["iota", "--p", "3", "--q", "4", "--z", "1", "--n", "100"]) == 4
    assert "resource cap" in capsys.readouterr().err


def test_main_raises_systemexit(monkeypatch):
    monkeypatch.setattr(
        "sys.argv", ["qadic", "iota", "--p", "3", "--q", "4", "--z", "5", "--n", "3"]
    )
    with pytest.raises(SystemExit) as exc:
        main()
    assert exc.value.code == 0
