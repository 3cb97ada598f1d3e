import json
import math
import os
import shutil
import subprocess
import sys

import pytest

from fockbundle.cli import main, parse_state_spec, parse_times


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


# ---------------------------------------------------------------- parsing


def test_parse_state_terms_accumulate():
    p = parse_state_spec("nm:1,0,0.5,0+nm:1,0,0.5,0", 32)
    assert p.coeffs[(1, 0)] == 1.0 + 0.0j


def test_parse_state_grade_form():
    p = parse_state_spec("grade:2:1,0,-1", 32)
    assert set(p.coeffs) == {(2, 0), (2, 2)}


def test_parse_state_grows_nmax():
    p = parse_state_spec("nm:40,3", 32)
    assert p.nmax >= 40


def test_parse_times_linspace_inclusive():
    ts = parse_times("0:1:5")
    assert ts == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_times("0.5:9:1") == [0.5]
    assert parse_times("1,2,3.5") == [1.0, 2.0, 3.5]


# ------------------------------------------------------------------- eval


def test_eval_ground_at_origin(capsys):
    code, out, _ = run_cli(capsys, ["eval", "nm:0,0", "0,0,0,0"])
    assert code == 0
    header, rows = csv_rows(out)
    assert header[-1] == "abs_psi2"
    assert len(rows) == 1
    val = float(rows[0][-1])
    assert abs(val - 1.0 / math.pi**2) < 1e-15


def test_eval_first_excited(capsys):
    code, out, _ = run_cli(capsys, ["eval", "nm:1,0", "1,0,0,0"])
    assert code == 0
    _, rows = csv_rows(out)
    val = float(rows[0][-1])
    assert abs(val - math.exp(-1.0) / math.pi**2) < 1e-15


def test_eval_no_points_header_only(capsys):
    code, out, _ = run_cli(capsys, ["eval", "nm:0,0"])
    assert code == 0
    assert out.strip() == "re_z0,im_z0,re_z1,im_z1,re_psi,im_psi,abs_psi2"


def test_eval_json_shape(capsys):
    code, out, _ = run_cli(
        capsys, ["eval", "nm:0,0", "0,0,0,0", "--format", "json"]
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"meta", "data"}
    assert obj["meta"]["command"] == "eval"
    assert set(obj["data"][0]) == {
        "re_z0", "im_z0", "re_z1", "im_z1", "re_psi", "im_psi", "abs_psi2"
    }


def test_csv_floats_roundtrip_to_json_values(capsys):
    argv = ["eval", "nm:2,1,0.3,-0.2+nm:0,0", "0.37,-1.21,0.55,0.09"]
    code, out_csv, _ = run_cli(capsys, argv)
    assert code == 0
    code, out_json, _ = run_cli(capsys, argv + ["--format", "json"])
    assert code == 0
    _, rows = csv_rows(out_csv)
    row_json = json.loads(out_json)["data"][0]
    for key, tok in zip(
        ["re_z0", "im_z0", "re_z1", "im_z1", "re_psi", "im_psi", "abs_psi2"],
        rows[0],
    ):
        assert float(tok) == row_json[key]


def test_eval_bad_state_exits_2(capsys):
    code, _, err = run_cli(capsys, ["eval", "bogus", "0,0,0,0"])
    assert code == 2
    assert "error:" in err


def test_eval_bad_point_exits_2(capsys):
    code, _, _ = run_cli(capsys, ["eval", "nm:0,0", "1,2,3"])
    assert code == 2


# ------------------------------------------------------------------ orbit


def test_orbit_classical_full_period(capsys):
    two_pi = 2.0 * math.pi
    code, out, _ = run_cli(
        capsys,
        ["orbit", "classical", "--z", "0.8,0.1,-0.3,0.5", "--times", f"0,{two_pi}"],
    )
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 2
    for a, b in zip(rows[0][1:5], rows[1][1:5]):
        assert abs(float(a) - float(b)) < 1e-10


def test_orbit_zn_phi_stays_in_sector(capsys):
    code, out, _ = run_cli(
        capsys,
        ["orbit", "zn", "--n", "4", "--z", "1,0,0,0", "--times", "0:6:25"],
    )
    assert code == 0
    header, rows = csv_rows(out)
    i = header.index("phi")
    for row in rows:
        phi = float(row[i])
        assert -1e-12 <= phi < math.pi / 2 + 1e-12


def test_orbit_fiber_base_fixed_theta_moves(capsys):
    code, out, _ = run_cli(
        capsys,
        ["orbit", "fiber", "--z", "0.6,0,0.2,0.1", "--times", "0,0.5"],
    )
    assert code == 0
    header, rows = csv_rows(out)
    assert header[-1] == "theta"
    for j in range(1, 5):
        assert float(rows[0][j]) == float(rows[1][j])
    th0, th1 = float(rows[0][-1]), float(rows[1][-1])
    assert abs(th0 - 0.0) < 1e-12
    assert abs(th1 - ((-0.5) % (2.0 * math.pi))) < 1e-12


def test_orbit_zn_origin_is_fixed_point(capsys):
    code, out, _ = run_cli(
        capsys, ["orbit", "zn", "--n", "3", "--z", "0,0,0,0", "--times", "0,1"]
    )
    assert code == 0
    _, rows = csv_rows(out)
    for row in rows:
        assert all(float(v) == 0.0 for v in row[1:])


def test_orbit_decreasing_grid_exits_2(capsys):
    code, _, _ = run_cli(
        capsys, ["orbit", "classical", "--z", "1,0,0,0", "--times", "3,2,1"]
    )
    assert code == 2


# ------------------------------------------------------------------ stars


def test_stars_plus_minus_one(capsys):
    code, out, _ = run_cli(capsys, ["stars", "grade:2:1,0,-1"])
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 2
    coords = sorted(
        (complex(float(r[1]), float(r[2])) for r in rows),
        key=lambda c: (c.real, c.imag),
    )
    assert abs(coords[0] - (-1.0)) < 1e-10
    assert abs(coords[1] - 1.0) < 1e-10
    assert all(int(r[3]) == 1 for r in rows)
    # Antipodal pair on the sphere: z coordinates cancel.
    assert abs(float(rows[0][6]) + float(rows[1][6])) < 1e-10


def test_stars_degree_sums_to_grade(capsys):
    code, out, _ = run_cli(capsys, ["stars", "nm:5,2"])
    assert code == 0
    _, rows = csv_rows(out)
    assert sum(int(r[3]) for r in rows) == 5


def test_stars_mixed_grade_exits_2(capsys):
    code, _, _ = run_cli(capsys, ["stars", "nm:0,0+nm:1,0"])
    assert code == 2


def test_stars_zero_section_exits_3(capsys):
    # A term with explicit zero amplitude parses but leaves no section.
    code, _, err = run_cli(capsys, ["stars", "nm:3,1,0,0"])
    assert code == 3
    assert "error:" in err


# --------------------------------------------------------------- coherent


def test_coherent_vacuum_label(capsys):
    code, out, _ = run_cli(
        capsys, ["coherent", "--b", "0,0,0,0", "--nmax", "6"]
    )
    assert code == 0
    header, rows = csv_rows(out)
    row = dict(zip(header, rows[0]))
    assert abs(float(row["occ_0"]) - 1.0) < 1e-15
    assert all(float(row[f"occ_{n}"]) == 0.0 for n in range(1, 7))
    assert float(row["eigen_residual"]) < 1e-12


def test_coherent_occupations_static_under_evolution(capsys):
    code, out, _ = run_cli(
        capsys,
        ["coherent", "--b", "0.5,0,0.2,-0.1", "--times", "0,0.7,2.1", "--nmax", "24"],
    )
    assert code == 0
    header, rows = csv_rows(out)
    occ_cols = [i for i, h in enumerate(header) if h.startswith("occ_")]
    base = [float(rows[0][i]) for i in occ_cols]
    assert abs(sum(base) - 1.0) < 1e-12
    for row in rows[1:]:
        for i, ref in zip(occ_cols, base):
            assert abs(float(row[i]) - ref) < 1e-12
    # The rotating-frame label keeps the state an exact eigenvector.
    for row in rows:
        assert float(row[header.index("eigen_residual")]) < 1e-10


# ------------------------------------------------------------------ check


def test_check_single_suite(capsys):
    code, out, _ = run_cli(capsys, ["check", "--suite", "blowup", "--seed", "0"])
    assert code == 0
    obj = json.loads(out)
    assert obj["meta"]["command"] == "check"
    assert len(obj["data"]) == 1
    row = obj["data"][0]
    assert row["suite"] == "blowup"
    assert row["pass"] is True
    assert row["cases"] > 0


def test_check_repeat_is_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, ["check", "--suite", "cocycle", "--seed", "0"])
    _, out2, _ = run_cli(capsys, ["check", "--suite", "cocycle", "--seed", "0"])
    assert out1 == out2


def test_check_filtered_randoms_match_full_run(capsys):
    # Suite streams are keyed by suite id, so a filtered run must see the
    # same draws (hence the same residual) as the full run does.
    _, alone, _ = run_cli(capsys, ["check", "--suite", "orbifold", "--seed", "7"])
    row_alone = json.loads(alone)["data"][0]
    _, full, _ = run_cli(capsys, ["check", "--seed", "7"])
    row_full = next(r for r in json.loads(full)["data"] if r["suite"] == "orbifold")
    assert row_alone["max_residual"] == row_full["max_residual"]


# -------------------------------------------------------------- integrate


def test_integrate_deterministic(capsys):
    argv = ["integrate", "nm:0,0", "nm:0,0", "--samples", "4096", "--seed", "5"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2
    _, rows = csv_rows(out1)
    est = complex(float(rows[0][0]), float(rows[0][1]))
    stderr = float(rows[0][2])
    assert abs(est - 1.0) < 4 * stderr + 1e-12


def test_integrate_zero_samples_exits_2(capsys):
    code, _, _ = run_cli(
        capsys, ["integrate", "nm:0,0", "nm:0,0", "--samples", "0"]
    )
    assert code == 2


# ------------------------------------------------------------------- misc


def test_out_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    code, out, _ = run_cli(
        capsys, ["eval", "nm:0,0", "0,0,0,0", "--out", str(path)]
    )
    assert code == 0
    assert out == ""
    text = path.read_text()
    assert text.startswith("re_z0,")


def test_installed_entry_point():
    exe = shutil.which("fockbundle")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run(
        [exe, "check", "--suite", "spectrum", "--seed", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["data"][0]["pass"] is True
