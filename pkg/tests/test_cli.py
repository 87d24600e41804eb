import json
import subprocess
import sys


from wreathvar.cli import CACHE_VERSION, ReportCache, main
from wreathvar.constructions import build
from wreathvar.structure import analyze


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_criterion_exit_codes(capsys):
    code, out, _ = run(capsys, "criterion", "Heis(2,3)", "C(2)")
    assert code == 1 and "(c) C(2) contains C2^2: FAIL" in out
    code, out, _ = run(capsys, "criterion", "C(2)", "C(3)")
    assert code == 0 and out.startswith("Equal")
    code, out, _ = run(capsys, "criterion", "C(4)", "C(6)")
    assert "gcd = 2: FAIL" in out and "(b) not evaluated" in out


def test_json_stable(capsys):
    outs = {run(capsys, "criterion", "D(4)", "C(3) X C(3)", "--json")[1] for _ in range(2)}
    assert len(outs) == 1
    doc = json.loads(outs.pop())
    assert doc["verdict"] == "Equal" and doc["cond_c"]["required"] == [3, 2]


def test_separate_then_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "separate", "C(2)", "C(2)", "--json")
    assert code == 0
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "valid" in out
    doc = json.loads(path.read_text())
    doc["violation_side"]["tuple"][0] = list(range(8))
    path.write_text(json.dumps(doc))
    assert run(capsys, "verify", str(path))[0] == 1


def test_separate_inconclusive(capsys):
    code, out, _ = run(capsys, "separate", "C(4)", "C(6)", "--json")
    assert code == 2 and json.loads(out)["kind"] == "inconclusive"


def test_error_codes(capsys):
    code, _, err = run(capsys, "analyze", "C(")
    assert code == 3 and "position 2" in err
    code, _, err = run(capsys, "analyze", "Wr(D(4),C(3) X C(3))")
    assert code == 4
    code, _, err = run(capsys, "separate", "C(2)", "C(3)")
    assert code == 5 and "Equal" in err
    code, _, err = run(capsys, "fingen", "C(1)", "C(3)")
    assert code == 5


def test_law_and_member(capsys):
    assert run(capsys, "law", "x1^4", "D(4)")[0] == 0
    assert run(capsys, "law", "[x1,x2]", "D(4)")[0] == 1
    assert run(capsys, "law", "[x1,x2]", "C(5)", "--mode", "sampled", "--samples", "100")[0] == 2
    assert run(capsys, "member", "C(4)", "D(4)")[0] == 0
    code, out, _ = run(capsys, "member", "C(3)", "D(4)")
    assert code == 1 and "x1^4" in out
    assert run(capsys, "fingen", "D(4)", "C(3)")[0] == 0
    assert run(capsys, "circ", "D(4)", "C(5)")[0] == 1


def test_cache_matches_fresh(tmp_path, capsys):
    cache_dir = tmp_path / "cache"
    for text in ("D(4) X C(2)", "S(4)", "C(4) X C(2)", "Heis(2,3)"):
        run(capsys, "analyze", text, "--cache", str(cache_dir))
        cache = ReportCache(str(cache_dir))
        cached = cache.load(text, 2**20)
        assert cached == analyze(build(text))
    files = list(cache_dir.glob("*.json"))
    assert len(files) == 4
    assert all(json.loads(f.read_text())["version"] == CACHE_VERSION for f in files)


def test_cache_rejects_stale_version(tmp_path):
    cache = ReportCache(str(tmp_path))
    rep = cache.report("C(6)", 2**20)
    path = cache.path("C(6)", 2**20)
    doc = json.loads(path.read_text())
    doc["version"] = CACHE_VERSION + 1
    doc["report"]["order"] = 999
    path.write_text(json.dumps(doc))
    assert cache.load("C(6)", 2**20) is None
    assert cache.report("C(6)", 2**20) == rep


def test_cache_key_depends_on_cap():
    assert ReportCache.key("C(6)", 10) != ReportCache.key("C(6)", 11)


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog", "--max-order", "8")
    assert code == 0 and "Q8" in out and "D(4)" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "wreathvar", "criterion", "C(2)", "C(3)"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("Equal")
