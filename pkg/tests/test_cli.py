"""Command line behavior: argument parsing, output formats, exit codes, and
pipe composition."""

import csv
import io
import json
import math
from fractions import Fraction

import pytest

from hyplp.cli import (UsageError, fmt, jval, load_certificate, main,
                       parse_theta, thread_count)
from hyplp.constructions import named_fixture
from hyplp.hypergraph import Hypergraph
from hyplp.orthopoly import Params


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def text_value(out, key):
    for line in out.splitlines():
        if line.startswith(key + ":"):
            return line.split(":", 1)[1].strip()
    raise KeyError(key)


def test_parse_theta():
    assert parse_theta("2") == 2 and isinstance(parse_theta("2"), int)
    assert parse_theta("-1") == -1
    assert parse_theta("3/2") == Fraction(3, 2)
    assert parse_theta("0.5") == Fraction(1, 2)
    assert parse_theta("sqrt2") == pytest.approx(math.sqrt(2))
    assert parse_theta(" sqrt10 ") == pytest.approx(math.sqrt(10))
    for bad in ("sqrtx", "sqrt0", "sqrt-3", "abc", "1/0", ""):
        with pytest.raises(UsageError):
            parse_theta(bad)


def test_fmt_rules():
    assert fmt(True) == "yes" and fmt(False) == "no"
    assert fmt(5) == "5"
    assert fmt(Fraction(3, 2)) == "3/2"
    assert fmt(Fraction(8, 2)) == "4"
    assert fmt(Fraction(10 ** 7 + 1, 10 ** 7)) == "1.00000"
    assert fmt(1.5) == "1.50000"
    assert fmt(math.inf) == "inf"
    assert fmt("word") == "word"


def test_jval_rules():
    assert jval(Fraction(1, 2)) == "1/2"
    assert jval(Fraction(4, 1)) == 4
    assert jval(math.inf) == "inf"
    assert jval({"a": [Fraction(1, 3), 2.5]}) == {"a": ["1/3", 2.5]}
    assert jval(True) is True


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("HYPLP_THREADS", "2")
    assert thread_count() == 2
    monkeypatch.setenv("HYPLP_THREADS", "abc")
    with pytest.raises(UsageError):
        thread_count()
    monkeypatch.delenv("HYPLP_THREADS")
    assert thread_count() >= 1


def test_bound_closed_form_text(capsys):
    code, out, err = run(capsys, "bound", "closed-form", "--r", "3", "--u", "2",
                         "--theta", "1")
    assert code == 0
    assert text_value(out, "theorem") == "CLOSED_FORM"
    assert text_value(out, "value") == "10"
    assert text_value(out, "d") == "2" and text_value(out, "c") == "1"
    assert text_value(out, "certificate_f_basis") == "(5, 5, 3, 1)"
    assert "refinement [divisibility]" in out


def test_bound_closed_form_refinement_trail(capsys):
    code, out, _ = run(capsys, "bound", "closed-form", "--r", "3", "--u", "3",
                       "--theta", "2")
    assert code == 0
    assert text_value(out, "value") == "24"
    assert text_value(out, "c") == "4/3"
    assert "25 -> 24" in out


def test_bound_formats_agree(capsys):
    _, text_out, _ = run(capsys, "bound", "closed-form", "--r", "5", "--u", "3",
                         "--theta", "2")
    _, csv_out, _ = run(capsys, "bound", "closed-form", "--r", "5", "--u", "3",
                        "--theta", "2", "--format", "csv")
    _, json_out, _ = run(capsys, "bound", "closed-form", "--r", "5", "--u", "3",
                         "--theta", "2", "--format", "json")
    rows = {row["field"]: row["value"]
            for row in csv.DictReader(io.StringIO(csv_out))}
    for key in ("theorem", "value", "c", "d"):
        assert rows[key] == text_value(text_out, key)
    payload = json.loads(json_out)
    assert payload["value"] == 39
    assert payload["c"] == "8/3"
    assert payload["theorem"] == "CLOSED_FORM"


def test_bound_lp_with_certificate(tmp_path, capsys):
    cert = tmp_path / "petersen.fpoly"
    cert.write_text("3 2 3\n5 5 3 1\n")
    code, out, _ = run(capsys, "bound", "lp", "--r", "3", "--u", "2",
                       "--theta", "1", "--cert", str(cert))
    assert code == 0
    assert text_value(out, "value") == "10"

    f = load_certificate(str(cert), Params(3, 2))
    assert f.coeffs == (5, 5, 3, 1)


def test_certificate_loader_errors(tmp_path):
    p = Params(3, 2)
    bad = tmp_path / "bad.fpoly"
    with pytest.raises(UsageError):
        load_certificate(str(tmp_path / "missing"), p)
    bad.write_text("3 2\n5 5 3 1\n")
    with pytest.raises(UsageError):
        load_certificate(str(bad), p)
    bad.write_text("4 2 3\n5 5 3 1\n")
    with pytest.raises(UsageError):
        load_certificate(str(bad), p)
    bad.write_text("3 2 3\n5 5 3\n")
    with pytest.raises(UsageError):
        load_certificate(str(bad), p)
    bad.write_text("3 2 3\n5 x 3 1\n")
    with pytest.raises(UsageError):
        load_certificate(str(bad), p)


def test_bound_lp_cert_failure_exit_code(tmp_path, capsys):
    cert = tmp_path / "neg.fpoly"
    cert.write_text("3 2 1\n0 1\n")  # f_0 = 0 breaks the hypotheses
    code, _, err = run(capsys, "bound", "lp", "--r", "3", "--u", "2",
                       "--theta", "1", "--cert", str(cert))
    assert code == 2
    assert "f_0 > 0" in err


def test_bound_lp_needs_cert_or_degree(capsys):
    code, _, err = run(capsys, "bound", "lp", "--r", "3", "--u", "2",
                       "--theta", "1")
    assert code == 2
    assert "--cert" in err and "--degree" in err


def test_bound_lp_optimize(capsys):
    code, out, _ = run(capsys, "bound", "lp", "--r", "3", "--u", "2",
                       "--theta", "1", "--degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["theorem"] == "LP_OPT"
    value = payload["value"]
    if isinstance(value, str):
        value = float(Fraction(value))
    assert 10 - 1e-4 <= value <= 10.01


def test_bound_dss(capsys):
    code, out, _ = run(capsys, "bound", "dss", "--r", "3", "--u", "2",
                       "--d", "2", "--n", "10", "--theta", "1")
    assert code == 0
    assert text_value(out, "passed") == "yes"
    assert text_value(out, "slack") == "0"
    code, out, _ = run(capsys, "bound", "dss", "--r", "5", "--u", "2",
                       "--d", "2", "--n", "32", "--theta", "2")
    assert code == 0
    assert text_value(out, "passed") == "no"
    assert "order <= 24 < 32" in text_value(out, "conclusion")


def test_bound_imp2(capsys):
    code, out, _ = run(capsys, "bound", "imp2", "--r", "3", "--u", "2",
                       "--d", "2", "--theta", "0.5")
    assert code == 0
    assert text_value(out, "case") == "between"
    assert text_value(out, "value").startswith("7.27")


def test_bound_diam(capsys):
    code, out, _ = run(capsys, "bound", "diam", "--r", "3", "--u", "2",
                       "--ell", "1")
    assert code == 0
    assert text_value(out, "value") == "10"
    assert text_value(out, "equality_possible") == "yes"


def test_bound_ru1(capsys):
    code, out, _ = run(capsys, "bound", "ru1", "--r", "16", "--u", "3")
    assert code == 0
    assert text_value(out, "value") == "51"
    code, out, _ = run(capsys, "bound", "ru1", "--r", "15", "--u", "3")
    assert code == 0
    assert text_value(out, "value") == "not applicable"
    assert "needs r >=" in text_value(out, "reason")


def test_bound_tau2_lower(capsys):
    code, out, _ = run(capsys, "bound", "tau2-lower", "--r", "3", "--u", "2",
                       "--n", "10")
    assert code == 0
    assert text_value(out, "tau2_lower") == "1.00000"
    assert text_value(out, "d") == "2" and text_value(out, "c") == "1"


def test_bound_defect_region(capsys):
    code, out, _ = run(capsys, "bound", "defect-region", "--r", "8", "--u", "2",
                       "--d", "2", "--e", "8")
    assert code == 0
    assert text_value(out, "lower") == "2.09503"
    assert text_value(out, "upper") == "3.40512"


def test_bound_domain_error_exit(capsys):
    code, _, err = run(capsys, "bound", "closed-form", "--r", "3", "--u", "2",
                       "--theta", "5")
    assert code == 2 and "theta" in err


def test_analyze_petersen(tmp_path, capsys):
    f = tmp_path / "petersen.hg"
    f.write_text(named_fixture("petersen").to_text())
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 0
    assert text_value(out, "order") == "10"
    assert text_value(out, "degrees") == "3-regular 2-uniform"
    assert text_value(out, "girth") == "5"
    assert text_value(out, "girth_by_trace") == "5"
    assert text_value(out, "tau2") == "1.00000"
    assert text_value(out, "ramanujan") == "yes"
    assert "met with equality" in text_value(out, "order_bound_at_tau2")
    assert "valid=yes" in text_value(out, "distance_regular")
    assert text_value(out, "spectrum_correspondence") == "ok"


def test_analyze_json_precision(tmp_path, capsys):
    f = tmp_path / "petersen.hg"
    f.write_text(named_fixture("petersen").to_text())
    code, out, _ = run(capsys, "analyze", str(f), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["tau2"] - 1.0) < 1e-8
    assert payload["order"] == 10
    assert payload["order_bound_at_tau2"]["relation"] == "met with equality"
    assert payload["distance_regular"] == {"valid": True, "b": [3, 2],
                                           "c": [1, 1], "a": [0, 0, 2]}


def test_analyze_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(named_fixture("k4").to_text()))
    code, out, _ = run(capsys, "analyze", "-")
    assert code == 0
    assert text_value(out, "order") == "4"
    assert text_value(out, "tau2") == "-1.00000"


def test_analyze_iregular_and_disconnected(tmp_path, capsys):
    f = tmp_path / "h.hg"
    f.write_text("3 2\n0 1\n1 2\n")
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 0
    assert text_value(out, "degrees").startswith("irregular:")
    f.write_text("4 2\n0 1\n2 3\n")
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 0
    assert text_value(out, "diameter") == "inf (disconnected)"


def test_analyze_error_paths(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.hg"))
    assert code == 2
    f = tmp_path / "bad.hg"
    f.write_text("2 1\n0 zz\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2
    assert "line 2" in err


def test_table1_verify(capsys):
    code, out, _ = run(capsys, "table", "table1", "--verify")
    assert code == 0
    assert "11/11 rows match" in out
    assert "columns:" in out and "defect-region" in out


def test_table1_deterministic_across_thread_counts(monkeypatch, capsys):
    _, base, _ = run(capsys, "table", "table1")
    monkeypatch.setenv("HYPLP_THREADS", "3")
    _, threaded, _ = run(capsys, "table", "table1")
    assert threaded == base


def test_table1_csv(capsys):
    code, out, _ = run(capsys, "table", "table1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    first = rows[0]
    assert (first["r"], first["d"], first["v"]) == ("8", "2", "57")
    assert first["lambda"] == "2.19258"


def test_h_catalog_verify(capsys):
    code, out, _ = run(capsys, "table", "h-catalog", "--verify")
    assert code == 0
    assert "39/39 cells match" in out


def test_h_catalog_filter_and_lp_column(capsys):
    code, out, _ = run(capsys, "table", "h-catalog", "--r", "3", "--u", "2",
                       "--theta", "1", "--degree", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 1
    row = payload["rows"][0]
    assert row["tag"] == "attained"
    assert row["printed"] == "10" and row["expected"] == "10"
    lp = row["lp_opt(s=4)"]
    if isinstance(lp, str):
        lp = float(Fraction(lp))
    assert 10 - 1e-4 <= lp <= 10.01
    assert payload["provenance"]["lp_opt(s=4)"] == "lp-optimizer"


def test_h_catalog_ad_hoc_cell(capsys):
    code, out, _ = run(capsys, "table", "h-catalog", "--r", "3", "--u", "2",
                       "--theta", "0")
    assert code == 0
    assert "not a catalog cell" in out
    code, _, err = run(capsys, "table", "h-catalog", "--r", "99")
    assert code == 2
    assert "no catalog cells" in err


def test_construct_named_to_file(tmp_path, capsys):
    target = tmp_path / "petersen.hg"
    code, out, _ = run(capsys, "construct", "named", "petersen",
                       "-o", str(target))
    assert code == 0
    assert text_value(out, "order") == "10"  # report lands on stdout
    assert Hypergraph.from_text(target.read_text()) == named_fixture("petersen")


def test_construct_unknown_name(capsys):
    code, _, err = run(capsys, "construct", "named", "nope")
    assert code == 2
    assert "petersen" in err  # error lists the available fixtures


def test_construct_mols_oa_pipeline(tmp_path, capsys):
    oa_file = tmp_path / "oa.txt"
    code, out, _ = run(capsys, "construct", "mols-oa", "--p", "5", "--rows", "4",
                       "-o", str(oa_file))
    assert code == 0
    assert text_value(out, "valid") == "yes"
    assert text_value(out, "columns") == "25"

    h_file = tmp_path / "h.hg"
    code, out, _ = run(capsys, "construct", "oa-minus", str(oa_file),
                       "--symbol", "0", "-o", str(h_file))
    assert code == 0
    assert text_value(out, "order") == "15"
    assert text_value(out, "tau2") == "1.00000"

    code, out, _ = run(capsys, "analyze", str(h_file))
    assert code == 0
    assert text_value(out, "degrees") == "4-regular 3-uniform"


def test_construct_stdout_stdin_pipe(monkeypatch, capsys):
    # payload on stdout, report on stderr, then fed back through stdin
    code, out, err = run(capsys, "construct", "mols-oa", "--p", "3", "--rows", "3")
    assert code == 0
    assert out.startswith("3 9 3\n")
    assert "valid: yes" in err
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out2, err2 = run(capsys, "construct", "from-oa", "-")
    assert code == 0
    assert out2.startswith("9 9\n")
    assert "tau2: 0.00000" in err2


def test_construct_bad_arguments(capsys):
    code, _, err = run(capsys, "construct", "mols-oa", "--p", "4", "--rows", "3")
    assert code == 2 and "not prime" in err
    code, _, err = run(capsys, "construct", "mols-oa", "--p", "5", "--rows", "2")
    assert code == 2 and "--rows" in err


def test_usage_exit_codes(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "bound", "closed-form", "--r", "3")[0] == 2
    assert run(capsys, "bound", "closed-form", "--r", "3", "--u", "2",
               "--theta", "zzz")[0] == 2
