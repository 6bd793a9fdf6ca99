import io
import json
import subprocess
import sys

import pytest

from arabizi.charmap import dump_table, load_default_table
from arabizi.cli import main
from arabizi.langmodel import build_frequency, build_ngram, save_model
from arabizi.selector import Backend, SelectionPolicy, transliterate_message
from arabizi.textprep import filter_arabic_corpus


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, io.StringIO(stdin), out, err)
    return code, out.getvalue(), err.getvalue()


RAW = "\n".join([
    "مطر مطر جميل", "kraht hiati", "حياااااتي حياتي!!", "كرهت الدنيا", "salam مطر",
    "راحت رحت رحت",
]) + "\n"


@pytest.fixture
def freq_model(tmp_path):
    path = tmp_path / "m.freq"
    save_model(build_frequency(["حياتي حياتي كرهت مطر", "بيك برك"]), path)
    return path


def test_candidates_count_only():
    assert run(["candidates", "kraht", "--count-only"]) == (0, "32\n", "")


def test_candidates_listing():
    code, out, _ = run(["candidates", "hiati"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 16
    assert lines[0] == "1\tهياتي"
    code, out, err = run(["candidates", "kraht", "--cap", "4"])
    assert len(out.splitlines()) == 4 and "truncated" in err


def test_usage_errors():
    assert run(["translit"])[0] == 1
    assert run([])[0] == 1
    assert run(["grid", "--corpus", "x", "--gold", "g", "--fractions", "3"])[0] == 1
    assert run(["candidates", "b", "--cap", "0"])[0] == 1
    assert run(["--help"])[0] == 0


def test_data_errors(tmp_path, freq_model):
    bad = tmp_path / "bad.freq"
    bad.write_text("#FREQ v1 total=1 vocab=1 sha256=00\nx\t1\n", encoding="utf-8")
    assert run(["translit", "--model", str(bad)], "bark\n")[0] == 2
    assert run(["translit", "--model", str(tmp_path / "none")], "bark\n")[0] == 2
    gold = tmp_path / "g.tsv"
    gold.write_text("bark\tbark\n", encoding="utf-8")
    assert run(["evaluate", "--gold", str(gold), "--model", str(freq_model)])[0] == 2
    assert run(["translit", "--model", str(freq_model), "--backend", "ngram"], "x\n")[0] == 2
    assert run(["candidates", "2ana"])[0] == 2


def test_translit_and_explain(freq_model):
    code, out, err = run(["translit", "--model", str(freq_model), "--explain"],
                         "kraht hiati\nمطر !\n")
    assert code == 0
    assert out == "كرهت حياتي\nمطر !\n"
    rows = [l.split("\t") for l in err.splitlines()]
    assert rows[0] == ["source", "chosen", "score", "matched", "candidate_count"]
    assert rows[1] == ["kraht", "كرهت", "1", "true", "32"]
    assert rows[2][:2] == ["hiati", "حياتي"]


def test_evaluate_four_pairs(tmp_path, freq_model):
    gold = tmp_path / "g.tsv"
    gold.write_text("# four pairs\nhiati\tحياتي\nkraht\tكرهت\nbik\tبيك\nbark\tبارك\n",
                    encoding="utf-8")
    code, out, _ = run(["evaluate", "--gold", str(gold), "--model", str(freq_model)])
    assert code == 0
    assert "accuracy\t0.75\n" in out
    report = tmp_path / "r.json"
    fig = tmp_path / "r.png"
    code, out, _ = run(["evaluate", "--gold", str(gold), "--model", str(freq_model), "--json",
                        "--report", str(report), "--figure", str(fig)])
    doc = json.loads(out)
    assert doc["accuracy"] == 0.75 and doc["total"] == 4 and doc["correct"] == 3
    assert json.loads(report.read_text(encoding="utf-8")) == doc
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_prepare_reports_counts():
    code, out, err = run(["prepare"], RAW)
    assert code == 0
    assert out.splitlines() == ["مطر مطر جميل", "حياتي حياتي!!", "كرهت الدنيا", "راحت رحت رحت"]
    assert "kept/dropped: 4/2" in err


def test_mapping_override(tmp_path, monkeypatch):
    text = dump_table(load_default_table()).replace("t\tfinal\tت|ط", "t\tfinal\tت")
    path = tmp_path / "m.map"
    path.write_text(text, encoding="utf-8")
    assert run(["candidates", "kraht", "--count-only", "--mapping", str(path)])[1] == "16\n"
    monkeypatch.setenv("ARABIZI_MAPPING", str(path))
    assert run(["candidates", "kraht", "--count-only"])[1] == "16\n"
    path.write_text("b\tmedial\tNULL\n", encoding="utf-8")
    assert run(["candidates", "b"])[0] == 2


def test_grid_command(tmp_path):
    corpus = tmp_path / "c.txt"
    corpus.write_text("\n".join(["حياتي كرهت"] * 50 + ["في من"] * 50) + "\n", encoding="utf-8")
    gold = tmp_path / "t.tsv"
    gold.write_text("hiati\tحياتي\nkraht\tكرهت\n", encoding="utf-8")
    fig, rep = tmp_path / "g.png", tmp_path / "g.json"
    code, out, err = run(["grid", "--corpus", str(corpus), "--gold", str(gold),
                          "--fractions", "1,50,100", "--figure", str(fig), "--report", str(rep)])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "approach\ttest_set\t1%\t50%\t100%"
    assert lines[1].startswith("simple-search\tt\t") and lines[1].endswith("100.00")
    assert "nondecreasing" in err
    assert json.loads(rep.read_text(encoding="utf-8"))["t"]["grid"]["ngram"]["100"] == 1.0
    assert fig.exists()


@pytest.mark.parametrize("backend", ["simple", "ngram"])
def test_pipes_match_in_process(tmp_path, backend):
    exe = [sys.executable, "-m", "arabizi"]
    raw = tmp_path / "raw.txt"
    raw.write_text(RAW, encoding="utf-8")
    model = tmp_path / "m.model"
    prep = subprocess.run(exe + ["prepare", "--input", str(raw)], capture_output=True, check=True)
    subprocess.run(exe + ["build-model", "-o", str(model), "--backend", backend],
                   input=prep.stdout, capture_output=True, check=True)
    query = "kraht hiaaati!\nraht bik 2ana\n".encode("utf-8")
    got = subprocess.run(exe + ["translit", "--model", str(model)], input=query,
                         capture_output=True, check=True).stdout

    prepared = [m.text for m in filter_arabic_corpus(RAW.splitlines())]
    m = build_frequency(prepared) if backend == "simple" else build_ngram(prepared, 2)
    table = load_default_table()
    expected = "".join(
        transliterate_message(line, table, SelectionPolicy(Backend(backend)), m)[0] + "\n"
        for line in query.decode("utf-8").splitlines())
    assert got == expected.encode("utf-8")
    assert prep.stdout.decode("utf-8").splitlines() == prepared
