"""CLI contract: exit codes, JSON/CSV shapes, determinism."""

import json

import pytest

from linvariants.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_bcoeff_row(capsys):
    code, payload = run_json(capsys, "bcoeff", "--n", "1", "--k", "1")
    assert code == 0
    assert payload["values"] == ["1", "-1"]


def test_bcoeff_single_value(capsys):
    code, payload = run_json(capsys, "bcoeff", "--n", "3", "--k", "3", "--i", "1")
    assert code == 0
    assert payload["value"] == "-108"


def test_bcoeff_csv(capsys):
    code, out = run(capsys, "--format", "csv", "bcoeff", "--n", "1", "--k", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,k,i,value"
    assert lines[1] == "1,1,0,1"
    assert lines[2] == "1,1,1,-1"


def test_cg_single_value(capsys):
    code, payload = run_json(
        capsys, "cg", "--m", "2", "--n", "2", "--p", "2",
        "--u", "1", "--v", "0", "--w", "0",
    )
    assert code == 0
    assert payload["value"] == "-2"


def test_cg_table_deterministic(capsys):
    args = ("cg", "--m", "2", "--n", "2", "--p", "2", "--table")
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    rows = json.loads(out1)["rows"]
    assert rows == sorted(rows), "lexicographic index order"


def test_cg_invalid_triple_exit_2(capsys):
    code, payload = run_json(capsys, "cg", "--m", "2", "--n", "2", "--p", "3",
                             "--u", "0", "--v", "0", "--w", "0")
    assert code == 2
    assert "error" in payload


def test_project_endo(capsys):
    code, payload = run_json(
        capsys, "project-endo", "--n", "1", "--k", "1", "--diag", '["3", "5"]'
    )
    assert code == 0
    assert payload["middle"] == "-2"
    assert all(x == "0" for x in payload["tail"])


def test_phin_benois_and_gr1(capsys):
    code, payload = run_json(
        capsys, "phin", "--case", "steinberg", "--n", "2", "--L", "1",
        "--benois", "--gr1",
    )
    assert code == 0
    assert payload["D"] == [2, 1]
    assert payload["benois"]["D_minus1"] == [2]
    assert payload["benois"]["D_1"] == [2, 1, 0]
    assert payload["gr1"] == {"rank": 1, "eigenvalue": {}}


def test_phin_submodules(capsys):
    code, payload = run_json(
        capsys, "phin", "--case", "steinberg", "--n", "1", "--all-submodules"
    )
    assert code == 0
    assert len(payload["stable_submodules"]) == 4
    assert payload["regular_submodules"] == [[1]]


def test_phin_zero_l_rejected(capsys):
    code, payload = run_json(capsys, "phin", "--case", "steinberg", "--n", "1", "--L", "0")
    assert code == 2
    assert payload["error"]["code"] == "domain"


def test_hecke_beta0(capsys):
    code, payload = run_json(
        capsys, "hecke", "--g", "2", "--t", '{"a": [0, 0], "a0": -1}'
    )
    assert code == 0
    assert payload["value"] == {"p": "-3/2", "sigma": "-1"}


def test_hecke_all_weyl(capsys):
    code, payload = run_json(
        capsys, "hecke", "--g", "2", "--t", '{"a": [0, 0], "a0": -1}', "--all"
    )
    assert code == 0
    assert len(payload["eigenvalues"]) == 8


def test_recover_chi_round_trip(capsys):
    # trivial characters at weight zero: thetas are the pure p-powers p^{c_i}
    code, payload = run_json(
        capsys, "recover-chi", "--g", "2",
        "--eigs", '[{"p": "-2"}, {"p": "-3/2"}]',
        "--weights", '{"mu": [0, 0], "mu0": 0}',
    )
    assert code == 0
    assert payload["chi"] == [{}, {}]
    assert payload["sigma"] == {}


def test_slope_hilbert(tmp_path, capsys):
    path = tmp_path / "slope.json"
    path.write_text(json.dumps({"k": [12], "w": -10, "slopes": ["3"]}))
    code, payload = run_json(capsys, "slope", "--family", "hilbert", "--input", str(path))
    assert code == 0
    assert payload == {"noncritical": True}


def test_slope_gsp_with_twist(tmp_path, capsys):
    path = tmp_path / "slope.json"
    path.write_text(
        json.dumps(
            {
                "weights": [[5, 3]],
                "mu0": 0,
                "t": {"a": [0, 0], "a0": -1},
                "slopes": [0],
                "find_twist": True,
            }
        )
    )
    code, payload = run_json(capsys, "slope", "--family", "gsp", "--input", str(path))
    assert code == 0
    assert payload["noncritical"] is False
    assert isinstance(payload["twist"], int)


def test_obstruction(capsys):
    code, payload = run_json(
        capsys, "obstruction", "--exponents", "3,2,1,0", "--check-N", "60"
    )
    assert code == 0
    assert payload["orders"] == [1, 2, 3, 4]
    assert payload["check_N"] == {"N": 60, "sufficient": True}


def linv_input(tmp_path, direction_u, direction_u0, gradients_list, params=None):
    payload = {
        "params": params or {},
        "direction": {"u": direction_u, "u0": direction_u0},
        "places": [
            {"gradients": {f"a_{j + 1}": g for j, g in enumerate(grads)}}
            for grads in gradients_list
        ],
    }
    path = tmp_path / "linv.json"
    path.write_text(json.dumps(payload))
    return str(path)


def test_linv_hilbert_thm_a(tmp_path, capsys):
    path = linv_input(tmp_path, ["1"], "-1", [["1"]])
    code, payload = run_json(capsys, "linv", "--family", "hilbert", "--input", path)
    assert code == 0
    assert payload["value"] == "-2"


def test_linv_compare_theorem(tmp_path, capsys):
    path = linv_input(tmp_path, ["3", "1"], "0", [["2", "7/2"]])
    code, payload = run_json(
        capsys, "linv", "--family", "gsp4_spin", "--input", path,
        "--compare-theorem", "B",
    )
    assert code == 0
    assert payload["classification"] == {"kind": "sign_flip", "scalar": "-1"}


def test_linv_compare_family_mismatch(tmp_path, capsys):
    path = linv_input(tmp_path, ["1"], "-1", [["1"]])
    code, payload = run_json(
        capsys, "linv", "--family", "hilbert", "--input", path,
        "--compare-theorem", "B",
    )
    assert code == 2
    assert payload["error"]["code"] == "input"


def test_linv_unitary_d2_row(tmp_path, capsys):
    path = linv_input(
        tmp_path, ["1", "2", "3", "4"], "0",
        [["1", "0", "0", "0"]], params={"n": 1},
    )
    code, payload = run_json(
        capsys, "linv", "--family", "unitary", "--input", path,
        "--compare-theorem", "D2",
    )
    assert code == 0
    assert payload["classification"]["kind"] == "sign_flip"


def test_linv_singular_direction_exit_3(tmp_path, capsys):
    path = linv_input(tmp_path, ["2", "1"], "5", [["1", "1"]])
    code, payload = run_json(capsys, "linv", "--family", "gsp4_spin", "--input", path)
    assert code == 3
    assert payload["error"]["code"] == "singular_direction"
    assert payload["error"]["place"] == 0


def test_malformed_json_exit_2(capsys):
    code, payload = run_json(capsys, "project-endo", "--n", "1", "--k", "1",
                             "--diag", "[1, 2")
    assert code == 2
    assert payload["error"]["code"] == "input"


def test_outputs_reparse_and_are_stable(capsys):
    for args in (
        ("bcoeff", "--n", "4", "--k", "2"),
        ("hecke", "--g", "2", "--t", '{"a": [1, 0], "a0": -2}', "--all"),
        ("obstruction", "--exponents", "2,1,0"),
    ):
        code1, out1 = run(capsys, *args)
        code2, out2 = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        json.loads(out1)
