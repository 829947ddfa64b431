"""Golden tests for the ``lga`` command line.

Every case runs in one shared scratch directory, in order, so later cases
can read what earlier ones wrote. Stdout and every file a case writes are
compared byte for byte with ``tests/golden``. Set ``LGA_REGEN_GOLDEN=1`` to
rewrite the goldens after an intended change, then review the diff.
"""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from localgrammar import cli, fixtures

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("LGA_REGEN_GOLDEN") == "1"
INPUTS = ["small_grammar.fsa", "shared_matcher.fsm3", "small_text.fsa", "this.fsa", "un.fsa", "demo.lex", "this_limit.txt", "un.txt"]

# (name, argv, stdin, files written)
CASES = [
    ("compile_small_grammar", "compile small_grammar.fsa -o small_grammar.fsm3", None, ["small_grammar.fsm3"]),
    ("compile_this", "compile this.fsa -o this.fsm3", None, ["this.fsm3"]),
    ("compile_un", "compile un.fsa -o un.fsm3", None, ["un.fsm3"]),
    ("scan_small_grammar", "scan small_grammar.fsm3", "a a c d\nb c d a b d\nx y\n\n", []),
    ("scan_shared", "scan shared_matcher.fsm3", "a a c d\n", []),
    ("apply_small_text", "apply small_text.fsa small_grammar.fsm3 --no-minimize -o small_text_out.fsa --stats small_text_out.json", None,
     ["small_text_out.fsa", "small_text_out.json"]),
    ("stats_small_text_out", "stats small_text_out.fsa", None, []),
    ("stats_small_text_out_json", "stats small_text_out.fsa --json", None, []),
    ("apply_shared", "apply small_text.fsa shared_matcher.fsm3 --no-minimize -o small_text_kept.fsa", None, ["small_text_kept.fsa"]),
    ("apply_small_text_min", "apply small_text.fsa small_grammar.fsm3 -o small_text_min.fsa --stats small_text_min.json", None,
     ["small_text_min.fsa", "small_text_min.json"]),
    ("text_this", "text this_limit.txt demo.lex -o this", None, ["this/0001.fsa"]),
    ("apply_this", "apply this/0001.fsa this.fsm3 -o this_out.fsa --stats this_out.json", None,
     ["this_out.fsa", "this_out.json"]),
    ("stats_this_out", "stats this_out.fsa", None, []),
    ("text_un", "text un.txt demo.lex -o un", None, ["un/0001.fsa", "un/0002.fsa", "un/0003.fsa", "un/0004.fsa"]),
    ("apply_un", "apply un un.fsm3 --positive -o un_out --stats un_out.json", None,
     ["un_out/0001.fsa", "un_out/0002.fsa", "un_out/0003.fsa", "un_out/0004.fsa", "un_out.json"]),
    ("oracle_small_text", "oracle-check small_text.fsa small_grammar.fsa", None, []),
    ("oracle_this", "oracle-check this/0001.fsa this.fsa", None, []),
    ("oracle_un", "oracle-check un/0001.fsa un.fsa --positive", None, []),
    ("oracle_un_mismatch", "oracle-check un/0002.fsa un.fsa --positive", None, []),
]


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    for name in INPUTS:
        shutil.copy(fixtures.path(name), d / name)
    return d


def run(argv, cwd, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "localgrammar", *argv],
        cwd=cwd,
        input=stdin,
        capture_output=True,
        text=True,
        env={**os.environ, "LGA_COLOR": "0"},
    )
    return proc.returncode, proc.stdout, proc.stderr


def check_golden(name, content):
    path = GOLDEN / name
    if REGEN:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(content)
    assert path.read_bytes() == content, name


def run_case(name, argv, stdin, files, workdir):
    code, out, err = run(argv.split(), workdir, stdin)
    assert code == 0, err
    check_golden(f"{name}.stdout", out.encode())
    for f in files:
        check_golden(f"files/{f}", (workdir / f).read_bytes())


@pytest.mark.parametrize("case", CASES, ids=[c[0] for c in CASES])
def test_golden(case, workdir):
    run_case(*case, workdir)


def test_scan_reports_aacd(workdir):
    assert (GOLDEN / "scan_shared.stdout").read_text() == "4\n"
    assert (GOLDEN / "scan_small_grammar.stdout").read_text().splitlines()[0] == "4"


def test_apply_stats_schema():
    stats = json.loads((GOLDEN / "files/small_text_out.json").read_text())
    assert list(stats) == [
        "states", "transitions", "finals", "acyclic", "deterministic", "paths", "labels",
        "dropped_transitions", "paths_in", "paths_out", "mode",
    ]
    assert stats["paths"] == stats["paths_out"] == 16
    assert stats["paths_in"] == 24
    assert stats["mode"] == "negative"


def test_positive_directory_apply():
    stats = json.loads((GOLDEN / "files/un_out.json").read_text())
    assert [s["paths_out"] for s in stats.values()] == [1, 0, 1, 0]


# -- error exit codes --------------------------------------------------------


@pytest.fixture
def scratch(tmp_path):
    for name in INPUTS:
        shutil.copy(fixtures.path(name), tmp_path / name)
    return tmp_path


def test_usage_errors(scratch):
    assert run([], scratch)[0] == 1
    assert run(["compile"], scratch)[0] == 1
    assert run(["stats", "small_text.fsa", "--bogus"], scratch)[0] == 1
    assert run(["bench", "--sequences", "0"], scratch)[0] == 1
    code, _, err = run(["stats", "missing.fsa"], scratch)
    assert code == 1 and "missing.fsa" in err


def test_parse_error(scratch):
    (scratch / "bad.fsa").write_text("lga-fsa v1\ninitial 0\n0 1\n")
    code, out, err = run(["stats", "bad.fsa"], scratch)
    assert code == 2
    assert out == ""
    assert "line 3" in err
    assert run(["apply", "small_text.fsa", "small_grammar.fsa", "-o", "x.fsa"], scratch)[0] == 2
    assert not (scratch / "x.fsa").exists()


def test_cyclic_grammar(scratch):
    (scratch / "loop.fsa").write_text("lga-fsa v1\ninitial 0\nfinal 1\n0 1 a\n1 0 b\n")
    code, _, err = run(["compile", "loop.fsa", "-o", "loop.fsm3"], scratch)
    assert code == 3
    assert "cycle" in err
    assert not (scratch / "loop.fsm3").exists()
    assert run(["oracle-check", "loop.fsa", "small_grammar.fsa"], scratch)[0] == 3


def test_strict_unknown_token_leaves_no_output(scratch):
    (scratch / "s.txt").write_text("un fauteuil\nun zzz\n")
    code, _, err = run(["text", "s.txt", "demo.lex", "--strict", "-o", "out"], scratch)
    assert code == 3
    assert "zzz" in err
    assert not list((scratch).glob("out/*.fsa"))
    assert run(["text", "s.txt", "demo.lex", "-o", "out"], scratch)[0] == 0
    assert "<UNK>\n4 5 zzz" in (scratch / "out/0002.fsa").read_text()


def test_oracle_disagreement_is_internal_error(scratch, monkeypatch, capsys):
    monkeypatch.setattr(cli, "oracle_check", lambda *a: (False, 3, 1))
    assert cli.main(["oracle-check", str(scratch / "small_text.fsa"), str(scratch / "small_grammar.fsa")]) == 4
    assert "oracle mismatch" in capsys.readouterr().err


def test_color_only_changes_diagnostics(scratch):
    env = {**os.environ, "LGA_COLOR": "1"}
    proc = subprocess.run([sys.executable, "-m", "localgrammar", "stats", "nope.fsa"],
                          cwd=scratch, capture_output=True, text=True, env=env)
    assert proc.stderr.startswith("\033[31m")
    assert proc.stdout == ""


def test_bench_small_run(capsys):
    argv = "bench --sequences 60 --min-len 5 --alphabet 12 --grammar-states 25 --seed 2 --json".split()
    assert cli.main(argv) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["kept_ok"] == report["kept_checked"] == report["result_paths"]
    assert report["removed_ok"] == report["removed_checked"] == report["text_paths"] - report["result_paths"]
    assert report["grammar_states_raw"] == 25
    assert report["growth_ratio"] == round(report["matcher_states"] / report["grammar_states"], 4)


def test_bench_is_stable_apart_from_timings(capsys):
    argv = "bench --sequences 30 --min-len 4 --alphabet 8 --grammar-states 12 --seed 5 --json".split()
    reports = []
    for _ in range(2):
        cli.main(argv)
        reports.append({k: v for k, v in json.loads(capsys.readouterr().out).items() if not k.startswith("seconds")})
    assert reports[0] == reports[1]
