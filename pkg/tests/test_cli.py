import json
import subprocess
import sys

import pytest

from weakring.cli import main
from weakring.predicates import ClassificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "Zn(12)")
    assert code == 0 and "weakly_nil_clean=true" in out
    code, out, _ = run(capsys, "classify", "M(2,Zn(3))")
    assert "weakly_nil_clean=false" in out


def test_classify_json_roundtrip(capsys):
    code, out, _ = run(capsys, "classify", "Zn(1)", "--json")
    rep = ClassificationReport.from_json(out)
    assert code == 0 and rep.order == 1 and rep.to_json() == out.strip()


def test_decompose(capsys):
    assert run(capsys, "decompose", "Zn(3)", "2")[1] == "- sign=- b=0 e=1\n"
    code, out, _ = run(capsys, "decompose", "Zn(4)", "3")
    assert "+ b=2 e=1" in out and out.count("\n") == 1
    code, out, _ = run(capsys, "decompose", "Zn(4)", "3", "--all")
    assert out.splitlines() == ["- sign=+ b=2 e=1", "- sign=- b=0 e=1"]
    code, out, _ = run(capsys, "decompose", "M(2,Zn(3))", "[[1,0],[0,2]]")
    assert code == 0 and out.strip() == "none"
    code, out, _ = run(capsys, "decompose", "M(2,Zn(2))", "gf(2) [[1,1],[0,0]]", "--all", "--json")
    assert code == 0 and json.loads(out)


def test_decompose_bad_element(capsys):
    assert run(capsys, "decompose", "Zn(3)", "9")[0] == 2
    assert run(capsys, "decompose", "M(2,Zn(3))", "[[1,0]]")[0] == 2
    assert run(capsys, "decompose", "M(2,Zn(3))", "gf(5) [[1,0],[0,1]]")[0] == 2
    assert run(capsys, "decompose", "Zn(3)", "[[1]]")[0] == 2


def test_listings(capsys):
    assert run(capsys, "radical", "Zn(12)")[1].splitlines() == ["{0,6}", "size=2"]
    assert run(capsys, "center", "M(2,Zn(2))")[1].splitlines()[1] == "size=2"
    code, out, _ = run(capsys, "idempotents", "Zn(6)", "--json")
    assert json.loads(out)["members"] == [0, 1, 3, 4]


def test_exit_codes(capsys):
    assert run(capsys, "classify", "Zn(")[0] == 2
    assert run(capsys, "classify", "M(3,Zn(4))")[0] == 2
    assert run(capsys, "classify", "M(5,Zn(3))")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("WEAKRING_BUDGET", "50")  # Skew(3) has order 81
    assert run(capsys, "classify", "Skew(3)")[0] == 3
    assert run(capsys, "classify", "Zn(12)")[0] == 0


def test_verify_catalogs(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    code, out, _ = run(capsys, "verify", "--catalog", str(empty), "--json")
    assert code == 0 and json.loads(out) == []

    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps([{"label": "z12", "expr": "Zn(12)"}, {"label": "s2", "expr": "Skew(2)"}]))
    code, out, _ = run(capsys, "verify", "--catalog", str(cat), "--check", "fine", "one")
    assert code == 0 and "summary: 4 results, 4 confirmed" in out


@pytest.mark.parametrize("content", ["{", '{"a": 1}', '[{"label": "x"}]', '[{"label": "x", "expr": "Zn(0)"}]',
                                     '[{"label": "x", "expr": "Zn(2)"}, {"label": "x", "expr": "Zn(3)"}]'])
def test_verify_bad_catalog(capsys, tmp_path, content):
    f = tmp_path / "bad.json"
    f.write_text(content)
    assert run(capsys, "verify", "--catalog", str(f))[0] == 2


def test_verify_reports_violation(capsys, tmp_path, monkeypatch):
    from weakring import theorems as th

    def broken(R):
        return th.TheoremCheckResult("clean", R.label, th.VIOLATED, {"element": 0}, order=R.order)

    monkeypatch.setitem(th.RING_CHECKS, "clean", broken)
    f = tmp_path / "c.json"
    f.write_text('[{"label": "z2", "expr": "Zn(2)"}]')
    assert run(capsys, "verify", "--catalog", str(f), "--check", "clean")[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weakring", "radical", "Zn(12)"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("{0,6}")
