import io
import json
import contextlib
import os

import pytest

from proregular.cli import run
from proregular.session import SessionError, parse_session

SESSIONS = os.path.join(os.path.dirname(__file__), "..", "sessions")


def sess(name):
    return os.path.join(SESSIONS, name)


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


# ---------------------------------------------------------------------------
# session parsing


def test_parse_minimal_session():
    s = parse_session(sess("s01_z_p2.session"))
    assert repr(s.ring) == "Z"
    assert list(s.ideals) == ["a"]
    assert set(s.modules) == {"M12", "Zfree", "M8"}
    assert s.modules["Zfree"].free_rank == 1


def test_parse_poly_and_quotient_sessions():
    s = parse_session(sess("s03_q_xy.session"))
    assert s.ring.kind == "polynomial"
    s6 = parse_session(sess("s06_witness_a4.session"))
    assert s6.ring.kind == "quotient"


def test_parse_complex_session():
    s = parse_session(sess("s10_complex.session"))
    c = s.complexes["C"]
    assert c.lo == -1 and c.hi == 0
    assert c.diff(-1).matrix.entry(0, 0) == 3


def test_reject_non_prime_field():
    with pytest.raises(SessionError) as exc:
        parse_session(sess("s11_bad_field.session"))
    assert "prime" in str(exc.value)
    assert "line 1" in str(exc.value)


def test_reject_dd_nonzero_complex():
    with pytest.raises(SessionError) as exc:
        parse_session(sess("s12_bad_complex.session"))
    assert "d o d" in str(exc.value)


def test_reject_duplicate_and_unresolved(tmp_path):
    bad = tmp_path / "dup.session"
    bad.write_text("ring Z\nideal a = (2)\nideal a = (3)\n")
    with pytest.raises(SessionError) as exc:
        parse_session(str(bad))
    assert "line 3" in str(exc.value)
    bad2 = tmp_path / "unres.session"
    bad2.write_text("ring Z\nmodule F = [[]]\n"
                    "complex C = degrees (0, 1) modules (F, G) maps ([[2]])\n")
    with pytest.raises(SessionError):
        parse_session(str(bad2))


def test_ring_must_come_first(tmp_path):
    bad = tmp_path / "noring.session"
    bad.write_text("ideal a = (2)\n")
    with pytest.raises(SessionError):
        parse_session(str(bad))


# ---------------------------------------------------------------------------
# exit code contract on the corpus


GOLDEN_RUNS = [
    (["wpr", sess("s01_z_p2.session"), "--depth", "4"], 0),
    (["wpr", sess("s02_z_46.session"), "--depth", "5"], 0),
    (["wpr", sess("s03_q_xy.session"), "--depth", "4"], 0),
    (["wpr", sess("s04_f5_xyz.session"), "--depth", "4"], 0),
    (["wpr", sess("s05_q_mixed.session"), "--depth", "4"], 0),
    (["wpr", sess("s06_witness_a4.session"), "--depth", "4"], 2),
    (["gamma", sess("s01_z_p2.session"), "--module", "M12"], 0),
    (["lc-tower", sess("s01_z_p2.session"), "--module", "Zfree",
      "--degree", "1", "--depth", "4", "--model", "ext"], 0),
    (["lc-tower", sess("s01_z_p2.session"), "--module", "Zfree",
      "--degree", "1", "--depth", "4", "--model", "koszul"], 0),
    (["completion-tower", sess("s01_z_p2.session"), "--module", "M12",
      "--depth", "3"], 0),
    (["completion-tower", sess("s10_complex.session"), "--complex", "C",
      "--depth", "3"], 0),
    (["profinite-tower", sess("s09_z_profinite.session"), "--module", "M4",
      "--chain", "2,4,8"], 0),
    (["mgm-check", sess("s07_z_mgm.session"), "--module", "M",
      "--depth", "4", "--window", "1"], 0),
    (["idempotence", sess("s01_z_p2.session"), "--depth", "4"], 0),
    (["idempotence", sess("s06_witness_a4.session"), "--depth", "4"], 2),
    (["stability", sess("s13_z_p3.session"), "--depth", "6"], 0),
    (["thm45", sess("s14_z_p5.session"), "--depth", "6"], 0),
    (["koszul", sess("s08_qx.session"), "--depth", "3"], 0),
    (["wpr", sess("s11_bad_field.session")], 3),
    (["wpr", sess("s12_bad_complex.session")], 3),
    (["gamma", sess("s01_z_p2.session")], 3),  # several modules, none picked
    (["wpr", sess("missing_file.session")], 3),
    (["profinite-tower", sess("s09_z_profinite.session"), "--module", "M4",
      "--chain", "2,3"], 3),
    (["gamma", sess("s09_z_profinite.session"), "--module", "M4"], 3),  # no ideal
]


@pytest.mark.parametrize("argv,expected", GOLDEN_RUNS,
                         ids=[" ".join(os.path.basename(a) for a in argv[:2])
                              + f"#{i}" for i, (argv, _) in enumerate(GOLDEN_RUNS)])
def test_exit_code_contract(argv, expected):
    code, out = run_cli(argv)
    assert code == expected, out
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["exit_status"] == expected


def test_budget_exit_code(tmp_path):
    code, out = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M8",
                         "--max-stabilization", "1"])
    assert code == 4
    assert json.loads(out)["exit_status"] == 4


def test_reports_byte_identical_across_runs():
    for argv, _ in GOLDEN_RUNS[:18]:
        outs = {run_cli(argv)[1] for _ in range(3)}
        assert len(outs) == 1, argv


def test_report_shapes_wpr():
    code, out = run_cli(["wpr", sess("s02_z_46.session"), "--depth", "5"])
    rep = json.loads(out)
    assert rep["verdict"] == "pass"
    assert rep["per_degree"]["-1"]["certificates"]["3"] == 5
    assert rep["per_degree"]["-1"]["certificates"]["4"] is None


def test_report_witness_a4():
    code, out = run_cli(["wpr", sess("s06_witness_a4.session"), "--depth", "4"])
    rep = json.loads(out)
    assert rep["verdict"] == "undetermined"
    deg = rep["per_degree"]["-1"]
    assert deg["witness_level"] == 1
    assert deg["nonzero_partners"] == [2, 3, 4]


def test_report_gamma_invariants():
    code, out = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M12"])
    rep = json.loads(out)
    assert rep["torsion_submodule"]["invariant_factors"] == [4]


def test_tsv_format_deterministic():
    a = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M12",
                 "--format", "tsv"])
    b = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M12",
                 "--format", "tsv"])
    assert a == b
    assert "torsion_submodule.invariant_factors\t4" in a[1]


def test_out_flag(tmp_path):
    path = tmp_path / "report.json"
    code, out = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M12",
                         "--out", str(path)])
    assert out == ""
    assert json.loads(path.read_text())["exit_status"] == 0


def test_unknown_command_is_input_error():
    code, _ = run_cli(["frobnicate", sess("s01_z_p2.session")])
    assert code == 3


def test_lc_tower_requires_degree():
    code, out = run_cli(["lc-tower", sess("s01_z_p2.session"),
                         "--module", "Zfree"])
    assert code == 3


def test_timing_flag_adds_key():
    code, out = run_cli(["gamma", sess("s01_z_p2.session"), "--module", "M12",
                         "--timing"])
    assert "timing_seconds" in json.loads(out)
