import json
import subprocess
import sys
from pathlib import Path

from toruscycles.cli import main
from toruscycles.inputs import (
    load_polynomial,
    polynomial_from_document,
    polynomial_to_document,
    vertical_ladder,
)
from toruscycles.reporting import AnalysisOptions, analyze, report_json, stress_sweep

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(*argv):
    return main(list(argv))


# ------------------------------------------------------------
# inputs
# ------------------------------------------------------------


def test_load_fixture_round_trip(tmp_path):
    H, label = load_polynomial(FIXTURES / "example1_degree3.json")
    assert H.degree == 3
    doc = polynomial_to_document(H, label)
    H2, label2 = polynomial_from_document(doc)
    assert H2 == H and label2 == label


def test_family_file(tmp_path):
    H, _ = load_polynomial(FIXTURES / "family6.json")
    assert H == vertical_ladder(6)


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("analyze", str(bad)) == 1
    bad.write_text(json.dumps({"terms": [{"k": 1, "j": 2, "value": "1"}]}))
    assert run_cli("analyze", str(bad)) == 1
    bad.write_text(json.dumps({"degree": 3, "terms": [{"k": 1, "j": 0, "value": "1"}]}))
    assert run_cli("analyze", str(bad)) == 1


def test_constant_term_is_geometric_error(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(
        json.dumps(
            {"terms": [{"k": 2, "j": 0, "value": "1"}, {"k": 0, "j": 0, "value": "1"}]}
        )
    )
    assert run_cli("analyze", str(f)) == 2


# ------------------------------------------------------------
# analyze
# ------------------------------------------------------------


def test_analyze_report_deterministic():
    H, label = load_polynomial(FIXTURES / "example1_degree3.json")
    r1, _ = analyze(H, label)
    r2, _ = analyze(H, label)
    r1.pop("meta")
    r2.pop("meta")
    assert report_json(r1) == report_json(r2)


def test_analyze_report_echo_reparses():
    H, label = load_polynomial(FIXTURES / "example1_degree3.json")
    report, _ = analyze(H, label, AnalysisOptions(trace=False))
    H2, _ = polynomial_from_document(report["polynomial"])
    assert H2 == H


def test_analyze_outdir_artifacts(tmp_path):
    out = tmp_path / "run"
    code = run_cli(
        "analyze", str(FIXTURES / "example1_degree3.json"), "--outdir", str(out)
    )
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    assert report["types"]["aba"]["count"] == 6
    assert report["types"]["aba"]["theoretical_bound"] == 6
    assert report["types"]["aba"]["infinity_intersection_free"] is True
    png = out / "cycles.png"
    assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    csvs = sorted(out.glob("trace_*.csv"))
    assert csvs, "expected CSV polylines for verified cycles"
    header = csvs[0].read_text().splitlines()[0]
    assert header == "segment_index,x,y"


def test_analyze_quadratic_section(tmp_path):
    out = tmp_path / "q"
    code = run_cli("analyze", str(FIXTURES / "quadratic_bb.json"), "--outdir", str(out))
    assert code == 0
    report = json.loads((out / "report.json").read_text())
    q = report["quadratic"]
    assert q["bb_exists"] is True
    assert q["bb_witness"]["x0"] == 0.5
    assert q["aba_cross_check_consistent"] is True
    assert report["types"]["bb"]["verified_count"] == 1


# ------------------------------------------------------------
# quadratic / trace / stress commands
# ------------------------------------------------------------


def test_quadratic_command(tmp_path, capsys):
    assert run_cli("quadratic", "1", "2", "--", "-1") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bb_exists"] is True
    assert out["bb_witness"]["x0"] == 0.5
    assert out["bb_cross_check"]["consistent"] is True


def test_quadratic_command_no_cycle(capsys):
    assert run_cli("quadratic", "1", "0", "1") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bb_exists"] is False
    assert out["bb_cross_check"]["enumerated_and_verified"] is False
    assert out["bb_cross_check"]["consistent"] is True
    assert "unavailable" in out["aba"]  # b = 0: closed forms undefined


def test_trace_command(tmp_path, capsys):
    csv = tmp_path / "t.csv"
    svg = tmp_path / "t.svg"
    code = run_cli(
        "trace",
        str(FIXTURES / "family6.json"),
        "--edge",
        "bottom",
        "--t",
        "2/6",
        "--exact",
        "--csv",
        str(csv),
        "--svg",
        str(svg),
    )
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["closed"] is True and out["word"] == "b"
    assert csv.exists() and svg.exists()
    assert svg.read_text().lstrip().startswith("<?xml")


def test_trace_corner_exit_code():
    assert (
        run_cli(
            "trace", str(FIXTURES / "family6.json"), "--edge", "bottom", "--t", "0"
        )
        == 2
    )


def test_stress_command(tmp_path, capsys):
    summary_path = tmp_path / "s.json"
    code = run_cli(
        "stress",
        "--degree",
        "2",
        "--trials",
        "60",
        "--seed",
        "5",
        "--summary",
        str(summary_path),
    )
    assert code == 0
    summary = json.loads(summary_path.read_text())
    assert summary["bounds"] == {"aa": 1, "bb": 1, "aba": 2, "bab": 2}
    assert all(summary["max_counts"][t] <= summary["bounds"][t] for t in summary["bounds"])
    assert isinstance(summary["histograms"]["bb"], dict)


def test_stress_worker_determinism():
    s1 = stress_sweep(2, 40, seed=9, workers=1)
    s2 = stress_sweep(2, 40, seed=9, workers=2)
    for s in (s1, s2):
        s.pop("runtime_seconds")
    assert s1 == s2


def test_stress_injection_attains_diagonal_bound():
    s = stress_sweep(3, 3, seed=1, inject_example=True)
    assert s["max_counts"]["aba"] == 6
    assert s["max_count_witness"]["aba"] == "injected-cubic-fixture"


def test_bound_violation_exit_code(monkeypatch):
    from toruscycles import cli
    from toruscycles.errors import BoundViolation

    def boom(**kwargs):
        raise BoundViolation("synthetic")

    monkeypatch.setattr(cli, "stress_sweep", lambda **kw: boom())
    assert run_cli("stress", "--degree", "2", "--trials", "1") == 3


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toruscycles.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "analyze" in proc.stdout and "stress" in proc.stdout
