import csv
import io
import json
from fractions import Fraction

import pytest

from xhr.cli import build_parser, main, poly_from_record, resolve_config
from xhr.darboux import ExceptionalFamily
from xhr.hr import hr_poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_hr_records(capsys):
    code, out, _ = run(capsys, "poly", "--family", "hr", "--alpha", "1/2", "--beta", "1/3", "--n", "0..3")
    assert code == 0
    recs = json.loads(out)
    assert [r["degree"] for r in recs] == [0, 1, 2, 3]
    for r in recs:
        assert poly_from_record(r) == hr_poly(r["n"], (Fraction(1, 2), Fraction(1, 3)))
        assert all(isinstance(c, str) for _, c in r["coefficients"])


def test_poly_exceptional_skips_deleted_index(capsys):
    code, out, _ = run(capsys, "poly", "--family", "exceptional", "--j0", "1", "--l0", "2", "--n", "0..4")
    assert code == 0
    recs = json.loads(out)
    assert [r["n"] for r in recs] == [0, 1, 3, 4]
    assert [r["degree"] for r in recs] == [1, 2, 4, 5]
    fam = ExceptionalFamily.of(1, 2, (Fraction(1, 2), Fraction(1, 3)))
    assert all(poly_from_record(r) == fam.P(r["n"]) for r in recs)


def test_poly_type_four_added_index(capsys):
    code, out, _ = run(capsys, "poly", "--family", "exceptional", "--j0", "4", "--l0", "1", "--n", "-2..1")
    assert code == 0
    recs = json.loads(out)
    assert recs[0]["n"] == -2 and recs[0]["degree"] == 0
    assert [r["n"] for r in recs] == [-2, 0, 1]


def test_single_excluded_index_is_an_error(capsys):
    code, _, err = run(capsys, "poly", "--family", "exceptional", "--j0", "1", "--l0", "2", "--n", "2")
    assert code == 2 and "not in the index set" in err


def test_csv_poly(capsys):
    code, out, _ = run(capsys, "poly", "--n", "0..2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["family", "n", "degree", "exponent", "coefficient"]
    assert len(rows) == 1 + 1 + 2 + 3


def test_determinism(capsys):
    args = ("table", "--kind", "gram", "--family", "exceptional", "--j0", "3", "--l0", "2",
            "--alpha", "1/2", "--beta", "3/4", "--n", "0..3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a


def test_decimal_parameters_rejected(capsys):
    code, _, err = run(capsys, "poly", "--alpha", "0.5")
    assert code == 2 and "exact rational" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gevp", "--alpha", "2/5", "--beta", "1/3", "--n", "0..8")
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == 0 and rep["worst_error"] == 0
    assert set(rep) >= {"suite", "cases", "passed", "failed", "worst_error"}
    code, out, _ = run(capsys, "verify", "--suite", "biorth-classical", "--n", "0..3", "--tolerance", "1e-20")
    assert code == 1 and json.loads(out)["failed"] > 0


def test_verify_exceptional_example(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "biorth-exceptional", "--j0", "3", "--l0", "2",
                       "--alpha", "1/2", "--beta", "3/4", "--n", "0..6", "--quad-level", "9")
    assert code == 0 and json.loads(out)["worst_error"] < 1e-8


def test_verify_states_example(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "states", "--j0", "4", "--l0", "3")
    assert code == 0


def test_divergent_weight_names_condition(capsys):
    code, _, err = run(capsys, "table", "--kind", "weight", "--alpha", "-3/2", "--beta", "1/4")
    assert code == 2 and "alpha+beta" in err
    code, _, err = run(capsys, "table", "--kind", "weight", "--family", "exceptional", "--j0", "2",
                       "--l0", "1", "--alpha", "1/3", "--beta", "2/3")
    assert code == 2 and "seed-denominator" in err


def test_table_shapes(capsys):
    _, out, _ = run(capsys, "table", "--kind", "weight", "--family", "exceptional", "--j0", "3", "--l0", "2",
                    "--alpha", "1/2", "--beta", "3/4")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "weight_re", "weight_im"] and len(rows) == 513
    _, out, _ = run(capsys, "table", "--kind", "norms", "--family", "exceptional", "--j0", "1", "--l0", "2",
                    "--n", "0..6")
    rows = list(csv.reader(io.StringIO(out)))
    assert "formula_value" in rows[0] and len(rows) == 7
    assert [r[0] for r in rows[1:]] == ["0", "1", "3", "4", "5", "6"]
    _, out, _ = run(capsys, "table", "--kind", "gram", "--family", "exceptional", "--j0", "4", "--l0", "2",
                    "--alpha", "1/2", "--beta", "3/4", "--n", "-3..1")
    rows = list(csv.reader(io.StringIO(out)))
    assert ("-3", "-3") in {(r[0], r[1]) for r in rows[1:]}


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# example\nalpha = 2/5\nbeta = 1/4\nn = 0..2\n")
    ns = build_parser().parse_args(["poly", "--config", str(cfg), "--beta", "1/3"])
    rc = resolve_config(ns, env={})
    assert rc.alpha == Fraction(2, 5) and rc.beta == Fraction(1, 3) and (rc.n_lo, rc.n_hi) == (0, 2)


def test_env_quad_level(monkeypatch):
    ns = build_parser().parse_args(["verify", "--suite", "moments"])
    assert resolve_config(ns, env={"XHR_QUAD_LEVEL": "7"}).quad_level == 7
    ns = build_parser().parse_args(["verify", "--suite", "moments", "--quad-level", "8"])
    assert resolve_config(ns, env={"XHR_QUAD_LEVEL": "7"}).quad_level == 8
    monkeypatch.setenv("XHR_QUAD_LEVEL", "13")
    assert main(["verify", "--suite", "moments"]) == 2


def test_out_path(tmp_path, capsys):
    target = tmp_path / "p.json"
    assert main(["poly", "--n", "0..1", "--out", str(target)]) == 0
    assert len(json.loads(target.read_text())) == 2


def test_usage_errors(capsys):
    assert main(["verify"]) == 2
    assert main(["poly", "--n", "3..1"]) == 2
    assert main(["bogus"]) == 2
