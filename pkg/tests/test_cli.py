"""End-to-end command line checks, run in process through main()."""

import pytest

from cspprune.cli import main
from cspprune.fixtures import fixture
from cspprune.formats import instance_fingerprint, parse_instance, parse_trace
from cspprune.model import is_solution


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def k4_path(tmp_path, capsys):
    path = tmp_path / "k4.bcsp"
    assert main(["gen", "K4_COLOUR", "-o", str(path)]) == 0
    capsys.readouterr()
    return str(path)


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "cspprune" in capsys.readouterr().out


def test_gen_round_trip(tmp_path, capsys):
    path = tmp_path / "inst.bcsp"
    code, _, _ = run(capsys, "gen", "BOOL3", "-o", str(path))
    assert code == 0
    assert parse_instance(path.read_text()) == fixture("BOOL3").instance


def test_gen_params_and_stdout(capsys):
    code, out, _ = run(capsys, "gen", "STAR", "6")
    assert code == 0
    assert parse_instance(out).nvars == 6


def test_gen_unknown_fixture(capsys):
    code, _, err = run(capsys, "gen", "NOPE")
    assert code == 2
    assert err.startswith("error:")


def test_preprocess_reduces_k4(k4_path, capsys):
    code, out, _ = run(capsys, "preprocess", k4_path)
    assert code == 0
    assert "variables eliminated: 4" in out
    assert "result: reduced instance" in out
    assert "time:" in out


def test_preprocess_restricted_to_one_rule(k4_path, capsys):
    code, out, _ = run(capsys, "preprocess", k4_path, "--rules", "Exists2Snake")
    assert code == 0
    assert "values eliminated: 3" in out
    assert "rule Exists2Snake: 3" in out
    assert "arc consistency removals: 3" in out


def test_preprocess_wipeout_exits_one(tmp_path, capsys):
    path = tmp_path / "k3.bcsp"
    run(capsys, "gen", "K3_2COL", "-o", str(path))
    code, out, _ = run(capsys, "preprocess", str(path))
    assert code == 1
    assert "result: wipeout (unsatisfiable)" in out


def test_preprocess_writes_output_and_trace(k4_path, tmp_path, capsys):
    out_path = tmp_path / "reduced.bcsp"
    trace_path = tmp_path / "run.trace"
    code, _, _ = run(capsys, "preprocess", k4_path, "--no-var",
                     "-o", str(out_path), "--trace", str(trace_path))
    assert code == 0
    reduced = parse_instance(out_path.read_text())
    assert all(len(reduced.domain(v)) == 1 for v in range(4))
    trace = parse_trace(trace_path.read_text())
    assert trace.fingerprint == instance_fingerprint(fixture("K4_COLOUR").instance)


def test_preprocess_explicit_order(tmp_path, capsys):
    path = tmp_path / "nc.bcsp"
    run(capsys, "gen", "NONCONF", "-o", str(path))
    code, out, _ = run(capsys, "preprocess", str(path), "--no-var",
                       "--order", "explicit:val:2:1")
    assert code == 0
    assert "result: reduced instance" in out


def test_preprocess_bad_order(k4_path, capsys):
    code, _, err = run(capsys, "preprocess", k4_path, "--order", "sideways")
    assert code == 2
    assert "canonical" in err


def test_preprocess_bad_rule(k4_path, capsys):
    code, _, err = run(capsys, "preprocess", k4_path, "--rules", "Bogus")
    assert code == 2
    assert err.startswith("error:")


def test_solve_plain(k4_path, capsys):
    code, out, _ = run(capsys, "solve", k4_path)
    assert code == 0
    assert out.startswith("solution ")


def test_solve_unsatisfiable(tmp_path, capsys):
    path = tmp_path / "k3.bcsp"
    run(capsys, "gen", "K3_2COL", "-o", str(path))
    code, out, _ = run(capsys, "solve", str(path), "--preprocess")
    assert code == 1
    assert "unsatisfiable" in out


def test_solve_preprocess_reconstruct(k4_path, capsys):
    code, out, _ = run(capsys, "solve", k4_path,
                       "--preprocess", "--reconstruct")
    assert code == 0
    assert out.startswith("solution ")
    sol = {int(k): int(v) for k, v in
           (tok.split("=") for tok in out.split()[1:])}
    assert is_solution(fixture("K4_COLOUR").instance, sol)


def test_solve_reconstruct_needs_preprocess(k4_path, capsys):
    code, _, err = run(capsys, "solve", k4_path, "--reconstruct")
    assert code == 2
    assert "requires --preprocess" in err


def test_count(k4_path, capsys):
    code, out, _ = run(capsys, "count", k4_path)
    assert code == 0
    assert out.strip() == "4"


def test_check_reports_absence(tmp_path, capsys):
    path = tmp_path / "star.bcsp"
    run(capsys, "gen", "STAR", "-o", str(path))
    code, out, _ = run(capsys, "check", str(path),
                       "--pattern", "∃snake", "--at", "0", "--map", "a=0")
    assert code == 0
    assert out.strip() == "no occurrence"


def test_check_prints_witness(k4_path, capsys):
    code, out, _ = run(capsys, "check", k4_path,
                       "--pattern", "NS", "--at", "0", "--map", "a=0,b=1")
    assert code == 0
    assert out.startswith("occurrence")
    assert "vars:" in out
    assert "values of" in out


def test_check_unquantified_anywhere(tmp_path, capsys):
    path = tmp_path / "k3.bcsp"
    run(capsys, "gen", "K3_2COL", "-o", str(path))
    code, out, _ = run(capsys, "check", str(path), "--pattern", "Triangle")
    assert code == 0
    assert out.strip() == "no occurrence"


def test_check_quantified_needs_anchor(k4_path, capsys):
    code, _, err = run(capsys, "check", k4_path, "--pattern", "∃snake")
    assert code == 2
    assert "--at" in err


def test_check_bad_map_key(k4_path, capsys):
    code, _, err = run(capsys, "check", k4_path,
                       "--pattern", "NS", "--at", "0", "--map", "q=3")
    assert code == 2
    assert "unknown map key" in err


def test_verify_all_fixtures(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln]
    assert len(lines) == 20
    assert all(ln.startswith("ok ") for ln in lines)


def test_report_writes_files(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "report")
    assert code == 0
    assert (tmp_path / "report.csv").exists()
    assert (tmp_path / "report.png").exists()
    assert "wrote report.csv" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "preprocess", "/no/such/file.bcsp")
    assert code == 2
    assert err.startswith("error:")
