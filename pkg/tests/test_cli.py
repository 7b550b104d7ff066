import io

import pytest

from omlkit import corpus
from omlkit.cli import run

PETERSON = corpus.corpus_get("peterson").notation


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        code = run(argv, out, err)
    except SystemExit as e:  # argparse usage errors
        code = e.code
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pet_file(tmp_path):
    p = tmp_path / "peterson.txt"
    p.write_text(PETERSON + " peterson\n")
    return str(p)


@pytest.fixture
def mixed_file(tmp_path):
    p = tmp_path / "mixed.txt"
    p.write_text("# two lattices\n123.\n\n" + PETERSON + "\n")
    return str(p)


def test_states_strong_peterson(pet_file):
    code, out, _ = call(["states", "--mode", "strong", pet_file])
    assert code == 0
    assert out.strip() == "line 1: not strong; witness 1, 7'; min 1"
    code, _, _ = call(["states", "--fail-on-violation", pet_file])
    assert code == 2


def test_states_other_modes(mixed_file):
    code, out, _ = call(["states", "--mode", "any", mixed_file])
    lines = out.splitlines()
    assert lines[0].startswith("line 2: state; 1=")
    code, out, _ = call(["states", "--mode", "unique", mixed_file])
    assert "many states" in out


def test_parse_reports_errors_with_lines(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("123.\n123,134.\n123,345,561.\n")
    code, out, _ = call(["parse", str(p)])
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "line 1: ok (3 atoms, 1 blocks, 8 elements)"
    assert lines[1].startswith("line 2: error: BlocksShareTwoAtoms")
    assert lines[2].startswith("line 3: error: NotALattice")


def test_other_commands_fail_on_parse_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("123.\n12#.\n")
    code, _, err = call(["info", str(p)])
    assert code == 1
    assert ":2: UnknownLabelCharacter" in err


def test_missing_file():
    code, _, err = call(["info", "/nonexistent/file"])
    assert code == 1 and "cannot read" in err


def test_usage_error_exit_code():
    assert call(["bogus"])[0] == 1
    assert call(["check", "--family"])[0] == 1


def test_info_tsv(mixed_file):
    code, out, _ = call(["info", "--format", "tsv", mixed_file])
    rows = [r.split("\t") for r in out.splitlines()]
    assert rows[0] == ["line", "atoms", "blocks", "elements", "diagram"]
    assert rows[1] == ["2", "3", "1", "8", "123."]
    assert rows[2][:4] == ["4", "15", "10", "32"]


def test_check_family_and_eq(pet_file, mixed_file):
    code, out, _ = call(["check", "--family", "go_gamma:4", "--fail-on-violation", pet_file])
    assert code == 2 and "fails at" in out
    code, out, _ = call(["check", "--family", "go_gamma:3", "--fail-on-violation", pet_file])
    assert code == 0 and out.strip() == "line 1: holds"
    code, out, _ = call(["check", "--eq", "a # b |- a ^ b == 0", mixed_file])
    assert code == 0 and out.count("holds") == 2
    assert call(["check", "--eq", "a #", pet_file])[0] == 1
    assert call(["check", "--family", "nosuch", pet_file])[0] == 1
    assert call(["check", pet_file])[0] == 1


def test_exit_status_independent_of_jobs(pet_file):
    a = call(["check", "--family", "go_gamma:4", "--fail-on-violation", pet_file])
    b = call(["check", "--family", "go_gamma:4", "--fail-on-violation", "--jobs", "3", pet_file])
    assert a == b


def test_goscan(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(corpus.corpus_get("23-16-p7go-f8go-a").notation + "\n123.\n")
    code, out, _ = call(["goscan", str(p)])
    lines = out.splitlines()
    assert "first-fail n=8" in lines[0]
    assert "converged" in lines[1]
    code, out, _ = call(["goscan", "--max-n", "5", "--format", "tsv", str(p)])
    assert out.splitlines()[1].split("\t")[:3] == ["1", "cutoff", "5"]


def test_genmge(pet_file, tmp_path):
    code, out, _ = call(["genmge", pet_file])
    assert code == 0
    assert "condensed  45+9A+E8+6D=56+89+4A+DE" in out
    assert "renamed    ab+cd+ef+gh=bg+fc+ad+he" in out
    p = tmp_path / "b.txt"
    p.write_text("123.\n")
    assert "nothing to generate" in call(["genmge", str(p)])[1]


def test_corpus_commands():
    code, out, _ = call(["corpus", "list"])
    assert code == 0 and len(out.splitlines()) == len(corpus.NAMES)
    code, out, _ = call(["corpus", "show", "peterson"])
    assert "notation: " + PETERSON in out
    assert call(["corpus", "show", "nosuch"])[0] == 1
    code, out, _ = call(["corpus", "verify", "peterson", "23-16-p7go-f8go-a"])
    assert code == 0
    assert "FAIL" not in out and out.count("ok") >= 5


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("123.\n"))
    code, out, _ = call(["info", "-"])
    assert out.strip() == "line 1: 3 atoms, 1 blocks, 8 elements"
