"""Command-line surface: records, exit codes, files, determinism."""

import json
import re
from fractions import Fraction

import pytest

from lfmoments import (
    density_exact,
    moment_closed_form,
    moment_constant,
    sample_density,
    SymmetryClass,
)
from lfmoments.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ------------------------------------------------------------- spec examples


def test_gk_example(capsys):
    code, rec = run_json(capsys, "gk", "U", "4")
    assert code == 0
    assert rec["result"] == "24024"


def test_cp_example(capsys):
    code, rec = run_json(capsys, "cp", "5", "3/13", "--exact")
    assert code == 0
    assert rec["result"] == "23/72"


def test_mollify_example(capsys):
    code, rec = run_json(capsys, "mollify", "Sp", "--P", "0,1", "--Q", "1")
    assert code == 0
    assert rec["result"] == "1 + 2*theta^-1 + theta^-2"


# ---------------------------------------------------------------- exit codes


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["vp", "U", "4", "100"])  # 4 is not prime
    assert exc.value.code == 2


def test_unknown_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_domain_error_record_exits_one(capsys):
    code, rec = run_json(capsys, "glambda", "U", "-0.5", "--closed")
    assert code == 1
    assert rec["error"]["type"] == "PoleError"
    assert "pole" in rec["error"]["message"]


def test_spquad_requires_integer_order(capsys):
    code, rec = run_json(capsys, "ak", "spquad", "3/2", "--cutoff", "500")
    assert code == 1
    assert "error" in rec


# ------------------------------------------------------------------ records


def test_gk_factor_round_trip(capsys):
    code, rec = run_json(capsys, "gk", "U", "4", "--factor")
    assert code == 0
    assert int(rec["result"]) == moment_constant(SymmetryClass.U, 4)
    assert {int(p): e for p, e in rec["factorization"].items()} == {
        2: 3, 3: 1, 7: 1, 11: 1, 13: 1,
    }


def test_gk_survives_huge_constants(capsys):
    # k = 100 gives a 16154-digit integer, past the default int-to-str guard
    code, rec = run_json(capsys, "gk", "U", "100", "--factor")
    assert code == 0
    assert len(rec["result"]) > 16_000
    assert rec["factorization"]["199"] == 49
    assert int(rec["result"]) == moment_constant(SymmetryClass.U, 100)


def test_gk_zero_gets_a_note(capsys):
    code, rec = run_json(capsys, "gk", "U", "0")
    assert code == 0
    assert rec["result"] == "1"
    assert "empty product" in rec["note"]


def test_vp_record(capsys):
    code, rec = run_json(capsys, "vp", "U", "3", "100")
    assert code == 0
    assert rec["result"] == "65"


def test_cp_value_round_trip(capsys):
    code, rec = run_json(capsys, "cp", "3", "7/5", "--exact")
    assert code == 0
    assert Fraction(rec["result"]) == density_exact(3, Fraction(7, 5))


def test_classify_record(capsys):
    code, rec = run_json(capsys, "classify", "5", "3", "13")
    assert code == 0
    assert rec["result"] == "self-similar"
    assert rec["period"] == "4"


def test_glambda_matches_library(capsys):
    code, rec = run_json(capsys, "glambda", "O", "5/2", "--closed")
    assert code == 0
    want = float(moment_closed_form(SymmetryClass.O, Fraction(5, 2)))
    assert float(rec["result"]) == pytest.approx(want, rel=1e-12)


def test_glambda_limit_route(capsys):
    code, rec = run_json(capsys, "glambda", "O", "2.5", "--limit", "--digits", "8")
    assert code == 0
    want = float(moment_closed_form(SymmetryClass.O, Fraction(5, 2)))
    assert float(rec["result"]) == pytest.approx(want, rel=1e-7)


def test_ghalf_digits(capsys):
    code, rec = run_json(capsys, "ghalf")
    assert code == 0
    assert rec["result"].startswith("1.0362329154")


def test_ak_zeta_record(capsys):
    code, rec = run_json(capsys, "ak", "zeta", "1", "--cutoff", "500")
    assert code == 0
    assert float(rec["result"]) == pytest.approx(1.0, abs=1e-12)


def test_assemble_orthogonal_notes_missing_factor(capsys):
    code, rec = run_json(capsys, "assemble", "O", "1", "2")
    assert code == 0
    assert "a_k = 1" in rec["note"]
    assert rec["log_power"] == "1"


def test_assemble_override(capsys):
    code, rec = run_json(capsys, "assemble", "O", "1", "2", "--ak", "1/2")
    assert code == 0
    assert float(rec["result"]) == pytest.approx(1.0)


def test_poles_record(capsys):
    code, rec = run_json(capsys, "poles", "Sp", "1")
    assert code == 0
    assert rec["inputs"]["at"] == "-1/2"
    assert rec["result"] == "0"


def test_asym_record(capsys):
    code, rec = run_json(capsys, "asym", "U", "50")
    assert code == 0
    assert float(rec["abs_error"]) < 1e-3


def test_mollify_evaluates_at_theta(capsys):
    code, rec = run_json(capsys, "mollify", "Sp", "--P", "0,1", "--Q", "1",
                         "--theta", "1/2")
    assert code == 0
    assert rec["value_at_theta"] == "9"
    assert rec["theta_validity"] == "1"


# ------------------------------------------------------------ output formats


def test_csv_output_is_one_row(capsys):
    code, out = run(capsys, "gk", "U", "4", "--csv")
    assert code == 0
    header, row = out.strip().split("\n")
    assert header.split(",")[0] == "command"
    assert "24024" in row


def test_timing_flag_adds_elapsed(capsys):
    code, rec = run_json(capsys, "gk", "U", "4", "--timing")
    assert code == 0
    assert "elapsed_ms" in rec


def test_determinism(capsys):
    _, first = run(capsys, "glambda", "Sp", "1.7", "--closed")
    _, second = run(capsys, "glambda", "Sp", "1.7", "--closed")
    assert first == second


# -------------------------------------------------------------------- files


def test_cp_plot_writes_both_files(tmp_path, capsys):
    svg = tmp_path / "plot.svg"
    csv = tmp_path / "points.csv"
    code, rec = run_json(capsys, "cp-plot", "3", "0.2", "8", "200",
                         "--svg", str(svg), "--csv", str(csv))
    assert code == 0
    assert rec["points"] == 200

    lines = csv.read_text().strip().split("\n")
    assert lines[0] == "x,cp"
    assert len(lines) == 201

    text = svg.read_text()
    assert text.startswith("<svg")
    assert "<polyline" in text


def test_cp_plot_polyline_tracks_samples(tmp_path, capsys):
    svg = tmp_path / "plot.svg"
    code, _ = run_json(capsys, "cp-plot", "3", "0.2", "8", "120",
                       "--svg", str(svg))
    assert code == 0
    match = re.search(r'<polyline[^>]*points="([^"]+)"', svg.read_text())
    assert match
    pairs = [tuple(map(float, chunk.split(","))) for chunk in match.group(1).split()]
    assert len(pairs) == 120
    ys = [y for _, y in pairs]
    values = [v for _, v in sample_density(3, Fraction(1, 5), 8, 120)]
    # invert the (downward-growing) pixel map and compare every ordinate
    lo, hi = min(values), max(values)
    for y_pix, want in zip(ys, values):
        got = lo + (455 - y_pix) / 410 * (hi - lo)
        assert abs(got - want) <= (hi - lo) / 200


def test_cp_plot_requires_a_destination(capsys):
    code, rec = run_json(capsys, "cp-plot", "3", "0.2", "8", "50")
    assert code == 1
    assert "error" in rec
