import json
import re

import pytest

from paramode.chevalley import matrix_from_json, matrix_to_json, parameter_matrix
from paramode.cli import main
from paramode.gauge import gauge_apply, matrices_equal
from paramode.jets import diff_equals


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_emit_scalar_text(capsys):
    code, out, _ = run_cli(capsys, "emit", "--family", "sl", "--rank", "2",
                           "--scalar", "--format", "text")
    assert code == 0
    assert out.strip() == "y''' - t2 y' - t1 y = 0"


def test_emit_matrix_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "emit", "--family", "g2", "--rank", "2",
                           "--matrix", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["dim"] == 7 and blob["kind"] == "G2"
    back = matrix_from_json(blob)
    want = parameter_matrix("G2", 2, "g2")
    for r1, r2 in zip(back, want):
        for a, b in zip(r1, r2):
            assert diff_equals(a, b)


def test_emit_rank_validation(capsys):
    code, out, err = run_cli(capsys, "emit", "--family", "d", "--rank", "2")
    assert code == 2
    assert "rank >= 3" in err


def test_emit_bad_flags_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["emit", "--family", "sl"])  # missing --rank
    assert info.value.code == 2


def test_emit_latex(capsys):
    code, out, _ = run_cli(capsys, "emit", "--family", "sp", "--rank", "2",
                           "--scalar", "--format", "latex")
    assert code == 0
    assert out.strip() == "y^{(4)} - (t_{1} y')' + t_{2} y = 0"


def test_emit_all_families_all_formats(capsys):
    for family, rank in [("sl", 3), ("sp", 2), ("so_odd", 2), ("so_even", 3),
                         ("g2", 2)]:
        for mode in ("--matrix", "--scalar"):
            for fmt in ("text", "latex", "json"):
                code, out, _ = run_cli(capsys, "emit", "--family", family,
                                       "--rank", str(rank), mode, "--format", fmt)
                assert code == 0 and out.strip(), (family, mode, fmt)


def test_exponents_table(capsys):
    code, out, _ = run_cli(capsys, "exponents", "--max-rank", "4", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    by_label = {(r["kind"], r["rank"]): r for r in rows}
    assert by_label[("D", 4)]["exponents"] == [1, 3, 3, 5]
    assert by_label[("G2", 2)]["census"] == [2, 1, 1, 1, 1]


def test_verify_suite_json_and_determinism(capsys):
    code, out1, _ = run_cli(capsys, "verify", "--suite", "exponents",
                            "--max-rank", "5", "--seed", "7",
                            "--format", "json", "--no-timings")
    assert code == 0
    report = json.loads(out1)
    assert report["passed"] is True
    code, out2, _ = run_cli(capsys, "verify", "--suite", "exponents",
                            "--max-rank", "5", "--seed", "7",
                            "--format", "json", "--no-timings")
    assert out1 == out2  # same seed, byte-identical content


def test_verify_adjoint_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "adjoint")
    assert code == 0
    assert "FAIL" not in out


def test_reduce_round_trip(tmp_path, capsys):
    from paramode.chevalley import build_rep

    rep = build_rep("A", 2)
    a = parameter_matrix("A", 2, "ms")  # lies in A_0^+ + b^-
    blob = matrix_to_json(a, "A", 2)
    path = tmp_path / "matrix.json"
    path.write_text(json.dumps(blob))
    code, out, _ = run_cli(capsys, "reduce", "--input", str(path))
    assert code == 0
    result = json.loads(out)
    u = matrix_from_json(result["u"])
    b = matrix_from_json(result["B"])
    assert matrices_equal(gauge_apply(u, a), b)
    assert result["polarity"] == "flipped"
    assert all(len(f) == 2 for f in result["factors"])


def test_taylor_command(capsys):
    code, out, _ = run_cli(capsys, "taylor", "--family", "sl", "--rank", "2",
                           "--order", "4", "--point", '{"t1": ["1"], "t2": ["0", "1"]}')
    assert code == 0
    blob = json.loads(out)
    assert blob["order"] == 4
    assert len(blob["coefficients"]) == 4
    assert blob["coefficients"][0] == [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def test_taylor_rejects_missing_target():
    with pytest.raises(SystemExit) as info:
        main(["taylor", "--order", "4"])
    assert info.value.code == 2


def test_taylor_from_matrix_file(tmp_path, capsys):
    blob = matrix_to_json(parameter_matrix("C", 2, "sp"), "C", 2)
    path = tmp_path / "sp.json"
    path.write_text(json.dumps(blob))
    code, out, _ = run_cli(capsys, "taylor", "--input", str(path), "--order", "5",
                           "--point", '{"t1": ["1"], "t2": ["2"]}')
    assert code == 0
    blob = json.loads(out)
    assert len(blob["coefficients"]) == 5
    assert blob["coefficients"][1][0][1] == "1"  # A entry (1,2) at first order
