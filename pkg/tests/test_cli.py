import json
import subprocess
import sys
from fractions import Fraction

import pytest

from kemeny_bridges.cli import dump_report, load_report, main
from kemeny_bridges.fixtures import CYCLE_CLIQUE_STAR_TEXT, pentagon_with_chord, two_squares
from kemeny_bridges.generators import complete_graph, cycle_graph, path_graph, star_graph
from kemeny_bridges.graph import format_graph


@pytest.fixture
def files(tmp_path):
    out = {}

    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)

    put("chain.txt", CYCLE_CLIQUE_STAR_TEXT)
    put("c4.txt", format_graph(cycle_graph(4)))
    put("p4.txt", format_graph(path_graph(4)))
    put("k4.txt", format_graph(complete_graph(4)))
    put("star.txt", format_graph(star_graph(5)))
    put("squares.txt", format_graph(two_squares()))
    put("chord.txt", format_graph(pentagon_with_chord()))
    put("k8.txt", format_graph(complete_graph(8)))
    put("split.txt", "a b\nc d\n")
    put("bad.txt", "a b c\n")
    put("tree3.txt", "0 1\n0 2\n")
    put("tree4.txt", "0 1\n1 2\n2 3\n")
    return out


def run_json(capsys, argv):
    code = main(argv + ["--output", "json"])
    return code, load_report(capsys.readouterr().out)


def test_analyze_all_exact(files, capsys):
    code, r = run_json(capsys, ["analyze", files["chain.txt"], "--exact", "--bridges", "w1~v2", "w2~v3"])
    assert code == 0
    assert set(r["methods"]) == {"direct", "chain", "chain-mfpt", "forest-oracle"}
    assert all(m["kemeny"] == Fraction(3575, 150) for m in r["methods"].values())
    assert r["input"]["bridges_found"] == 5
    assert [c["tree_count"] for c in r["components"]] == [4, 16, 1]
    assert r["max_deviation"] == 0 and r["agree"]
    assert any("7.5" in w for w in r["warnings"])


def test_analyze_text_output(files, capsys):
    assert main(["analyze", files["chain.txt"], "--exact"]) == 0
    out = capsys.readouterr().out
    assert "143/6" in out and "bridge_term" in out and "warning:" in out


def test_analyze_cycle_direct(files, capsys):
    code, r = run_json(capsys, ["analyze", files["c4.txt"], "--method", "direct"])
    assert code == 0
    assert r["methods"]["direct"]["kemeny"] == pytest.approx(2.5)
    assert r["input"]["bridges_found"] == 0


def test_analyze_path_chain(files, capsys):
    code, r = run_json(capsys, ["analyze", files["p4.txt"], "--method", "chain", "--exact"])
    assert code == 0
    assert r["methods"]["chain"]["kemeny"] == Fraction(19, 6)
    assert r["input"]["bridges_found"] == 3
    assert [c["vertices"] for c in r["components"]] == [1, 1, 1, 1]


def test_oracle_skipped_in_all_mode(files, capsys):
    code, r = run_json(capsys, ["analyze", files["k8.txt"]])
    assert code == 0
    assert "forest-oracle" in r["skipped"] and "forest-oracle" not in r["methods"]


def test_tolerance_failure_gives_exit_1(files, capsys):
    assert main(["analyze", files["chain.txt"], "--tolerance", "-1"]) == 1


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "/nonexistent/graph.txt"], 3),
        (["analyze", "{split}"], 4),
        (["analyze", "{bad}"], 4),
        (["analyze", "{c4}", "--bridges", "0~1"], 4),
        (["analyze", "{k8}", "--method", "forest-oracle"], 5),
        (["optimize", "{k4}", "{k4}", "{k4}", "--mode", "exhaustive", "--cap", "100"], 6),
        (["optimize", "{k4}", "{k4}", "--tree", "{tree3}"], 7),
        (["optimize", "{k4}"], 2),
        (["optimize", "{k4}", "{k4}", "{k4}", "--sense", "max"], 2),
        (["bench", "--k", "500", "--clique-size", "20"], 5),
        (["bench", "--methods", "direct,magic", "--k", "2", "--clique-size", "3"], 2),
    ],
)
def test_exit_codes(files, capsys, argv, code):
    argv = [a.format(**{k[:-4]: v for k, v in files.items()}) for a in argv]
    assert main(argv) == code
    assert "error" in capsys.readouterr().err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 2


def test_optimize_reference_pair(files, capsys):
    code, r = run_json(
        capsys,
        ["optimize", files["squares.txt"], files["chord.txt"], "--mode", "exhaustive", "--exact"],
    )
    assert code == 0
    p = r["placements"][0]
    assert p["kemeny"] == Fraction(7005, 330)
    assert p["ends"] == [["c", "p1"]]
    assert sorted(map(tuple, (t[0] for t in p["ties"]))) == [("c", "p1"), ("c", "p3")]
    assert any("20.687" in w for w in r["warnings"])
    code, r = run_json(
        capsys,
        ["optimize", files["squares.txt"], files["chord.txt"], "--mode", "exhaustive", "--sense", "max"],
    )
    assert r["placements"][0]["kemeny"] == pytest.approx(8741 / 330, abs=1e-9)
    assert r["placements"][0]["ends"][0][0] in ("f1", "f2")
    assert any("25.947" in w for w in r["warnings"])


def test_optimize_both_modes_agree(files, capsys):
    code, r = run_json(
        capsys,
        ["optimize", files["k4.txt"], files["k4.txt"], files["k4.txt"], "--tree", "star", "--mode", "both", "--exact"],
    )
    assert code == 0 and r["agree"]
    assert [p["method"] for p in r["placements"]] == ["accessibility-shortcut", "exhaustive"]
    shortcut = r["placements"][0]
    assert len({a for a, _ in shortcut["ends"]}) == 1


def test_optimize_stars_join_at_centres(files, capsys):
    code, r = run_json(capsys, ["optimize", files["star.txt"], files["star.txt"]])
    assert r["placements"][0]["ends"] == [["0", "0"]]


def test_optimize_tree_file(files, capsys):
    code, r = run_json(
        capsys,
        ["optimize", files["c4.txt"], files["k4.txt"], files["star.txt"], files["c4.txt"], "--tree", files["tree4.txt"]],
    )
    assert code == 0
    assert r["tree"] == [[0, 1], [1, 2], [2, 3]]


def test_bench_small(capsys):
    code, r = run_json(capsys, ["bench", "--k", "8", "--clique-size", "8", "--repeat", "1"])
    assert code == 0
    assert r["max_deviation"] <= 1e-9
    assert r["methods"]["direct"]["kemeny"] == pytest.approx(r["methods"]["chain"]["kemeny"], rel=1e-9)


def test_bench_single_copy(capsys):
    code, r = run_json(capsys, ["bench", "--k", "1", "--clique-size", "6", "--repeat", "1"])
    assert code == 0
    assert r["methods"]["direct"]["kemeny"] == pytest.approx(25 / 6)


def test_env_sets_default_mode(files, capsys, monkeypatch):
    monkeypatch.setenv("KEMENY_BRIDGES_EXACT", "1")
    _, r = run_json(capsys, ["analyze", files["c4.txt"], "--method", "direct"])
    assert r["mode"] == "exact" and r["methods"]["direct"]["kemeny"] == Fraction(5, 2)
    _, r = run_json(capsys, ["analyze", files["c4.txt"], "--method", "direct", "--float"])
    assert r["mode"] == "float"


def test_report_round_trip(files, capsys):
    for flag in ("--exact", "--float"):
        code, r = run_json(capsys, ["analyze", files["chain.txt"], flag])
        text = dump_report(r)
        again = load_report(text)
        assert again == r
        assert dump_report(again) == text
    assert json.loads(text)["schema_version"] == 1


def test_stdin_and_module_entry(files):
    text = open(files["c4.txt"]).read()
    proc = subprocess.run(
        [sys.executable, "-m", "kemeny_bridges", "analyze", "-", "--method", "direct", "--exact"],
        input=text, capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "5/2" in proc.stdout
