import json

import pytest
from click.testing import CliRunner

from minorarc.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    return go


def js(res):
    return json.loads(res.stdout)


def test_version(run):
    assert run("--version").exit_code == 0


def test_bound_small_q(run):
    r = run("--json", "bound", "--x", "1e25", "--q", "1000")
    assert r.exit_code == 0
    d = js(r)
    assert d["schema"] == 1 and d["branch"] == "small_q"
    assert d["total"]["lower"] <= d["total"]["upper"]


def test_bound_worst_case_table_row(run):
    r = run("--json", "bound", "--x", "1e27", "--q", "1e6", "--delta-cap", "8", "--worst-case")
    assert r.exit_code == 0
    assert abs(js(r)["worst_case"]["ratio"]["value"] - 0.01767) < 1e-4


def test_bound_domain_error(run):
    assert run("bound", "--x", "1e10", "--q", "5").exit_code == 2
    assert run("bound", "--x", "1e25", "--q", "4", "--a", "2").exit_code == 2


def test_usage_errors(run):
    assert run("bound", "--x", "1e25").exit_code == 2
    assert run("bound", "--x", "1e25", "--q", "1.5").exit_code == 2
    assert run("nonsense").exit_code == 2
    assert run("vaughan", "--alpha", "0.1").exit_code == 2


def test_table_tsv(run):
    r = run("table", "--convention", "primorial")
    assert r.exit_code == 0
    rows = [l.split("\t") for l in r.stdout.strip().splitlines()]
    assert len(rows) == 8 and rows[0][0] == "q0"


def test_table_json(run):
    d = js(run("--json", "table"))
    assert len(d["rows"]) == 7


def test_verify_mertens_small(run, tmp_path):
    r = run("--json", "verify-mertens", "--limit", "1e6", "--envelope", "both",
            "--checkpoint-dir", tmp_path)
    assert r.exit_code == 0
    d = js(r)
    assert d["envelopes"]["half_inv_sqrt"]["first_violation"] is None
    r2 = run("verify-mertens", "--limit", "1e6", "--resume")
    assert r2.exit_code == 2


def test_verify_mertens_limit_cap(run):
    assert run("verify-mertens", "--limit", "1e13").exit_code == 2


def test_verify_chebyshev(run):
    r = run("verify-chebyshev", "--y", "2", "--y", "1000", "--y", "123457")
    assert r.exit_code == 0, r.stdout


def test_verify_gv(run, tmp_path, monkeypatch):
    monkeypatch.setenv("MINORARC_CACHE", str(tmp_path))
    r = run("--json", "verify-gv", "--v", "1", "--x-max", "1e5")
    assert r.exit_code == 0
    assert js(r)["holds"]


def test_verify_corto(run):
    assert run("verify-corto", "--v", "2", "--s-max", "1e4").exit_code == 0
    # the integral bound fails at the printed constant
    r = run("--json", "verify-corto", "--v", "2", "--s-max", "1e4", "--integral")
    assert r.exit_code == 1
    assert js(r)["integral"]["holds"] is False


def test_certify_fourier_coarse_step_is_undecided(run, tmp_path):
    out = tmp_path / "c.cert"
    r = run("certify-fourier", "--step", "0.01", "--out", out)
    assert r.exit_code == 3


def test_verify_lemmas(run, tmp_path):
    rep = tmp_path / "r.jsonl"
    r = run("--json", "verify-lemmas", "--suite", "trig", "--count", "20", "--report", rep)
    assert r.exit_code == 0
    assert js(r)["violations"] == {"exact": 0}
    assert len(rep.read_text().splitlines()) == 60


def test_verify_lemmas_printed_form_fails(run):
    r = run("verify-lemmas", "--suite", "typeI", "--count", "200", "--printed-log-weighted")
    assert r.exit_code == 1


def test_vaughan(run):
    r = run("--json", "vaughan", "--alpha", "0.3", "--x", "5000", "--U", "20", "--V", "30")
    assert r.exit_code == 0 and js(r)["holds"]
    assert run("vaughan", "--suite", "3").exit_code == 0


def test_params(run):
    d = js(run("--json", "params", "--x", "2.16e20", "--q", "10"))
    assert all(d["checks"].values())
    assert run("params", "--x", "2.16e20", "--q", "1e7", "--choice", "second").exit_code == 0
    assert run("params", "--x", "2.16e20", "--q", "1e7").exit_code == 2


@pytest.mark.parametrize("args", [
    ("bound", "--x", "1e27", "--q", "77", "--delta", "-3"),
    ("table",),
    ("verify-corto", "--s-max", "2000"),
    ("vaughan", "--suite", "2", "--seed", "9"),
])
def test_json_is_reproducible(run, args):
    a, b = run("--json", *args), run("--json", *args)
    assert a.stdout == b.stdout and a.stdout
