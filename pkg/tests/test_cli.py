import io
import os

from braidforge.cli import run

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def run_cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_monodromy_b2_file():
    code, out = run_cli("monodromy", os.path.join(DATA, "b2.wd"))
    assert code == 0
    assert "gamma: 2 3 2 2 3 2" in out
    assert "V: 1 4 | 2 5 | 3" in out
    assert out.count("generator") == 4


def test_lines_matches_wiring_file(tmp_path):
    code1, out1 = run_cli("monodromy", os.path.join(DATA, "b2.wd"))
    code2, out2 = run_cli("lines", os.path.join(DATA, "b2.lines"))
    assert code1 == code2 == 0
    assert out1 == out2


def test_lines_file_errors(tmp_path):
    bad = tmp_path / "bad.lines"
    bad.write_text("1 0\n1 0\n")
    code, out = run_cli("lines", str(bad))
    assert code == 2
    assert "error" in out
    code, out = run_cli("lines", str(tmp_path / "missing.lines"))
    assert code == 2


def test_typeb_verify():
    code, out = run_cli("typeb", "--n", "2", "--verify")
    assert code == 0
    assert "4/4 checks passed" in out
    assert "chi(c[1])" in out


def test_monomial_suites():
    code, out = run_cli("monomial", "--r", "2", "--n", "2", "--verify", "relations")
    assert code == 0
    code, out = run_cli("monomial", "--r", "1", "--n", "3", "--verify", "lemma-conj")
    assert code == 0
    code, out = run_cli("monomial", "--r", "2", "--n", "2", "--verify", "generators")
    assert code == 0
    code, out = run_cli("monomial", "--r", "1", "--n", "2", "--verify", "presentation")
    assert code == 0


def test_monomial_jobs_parallel_matches_sequential():
    code1, out1 = run_cli("monomial", "--r", "2", "--n", "3", "--verify", "relations")
    code2, out2 = run_cli(
        "monomial", "--r", "2", "--n", "3", "--verify", "relations", "--jobs", "2"
    )
    assert (code1, out1) == (code2, out2)


def test_present_commands():
    code, out = run_cli("present", "typeb", "--n", "2")
    assert code == 0
    assert "c[1]^-1 c[2] c[1] =" in out
    code, out = run_cli("present", "monomial", "--r", "2", "--n", "2")
    assert code == 0
    assert "Z[1]^-1 Z[2] Z[1] =" in out


def test_lie_exponents():
    code, out = run_cli("lie", "--exponents", "1,3", "--max-degree", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["degree", "rank", "expected", "match"]
    assert lines[1].split() == ["1", "4", "4", "yes"]
    assert lines[3].split() == ["3", "8", "8", "yes"]


def test_lie_monomial_tsv():
    code, out = run_cli(
        "lie", "--monomial", "2,2", "--max-degree", "5", "--format", "tsv"
    )
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[1:] == [
        ["1", "4", "4", "yes"],
        ["2", "3", "3", "yes"],
        ["3", "8", "8", "yes"],
        ["4", "18", "18", "yes"],
        ["5", "48", "48", "yes"],
    ]


def test_lie_flats_file(tmp_path):
    flats = tmp_path / "triple.flats"
    flats.write_text("gens: a b c\nflat: a b c\n")
    code, out = run_cli(
        "lie", "--flats", str(flats), "--exponents", "1,2", "--max-degree", "3"
    )
    assert code == 0
    assert out.splitlines()[1].split() == ["1", "3", "3", "yes"]


def test_lie_mismatch_exit_code(tmp_path):
    flats = tmp_path / "pair.flats"
    flats.write_text("a b\n")
    code, out = run_cli(
        "lie", "--flats", str(flats), "--exponents", "2", "--max-degree", "2"
    )
    assert code == 1
    assert "FAIL\tlie\tdegree" in out


def test_verify_purebraid():
    code, out = run_cli("verify", "purebraid", "--n", "3")
    assert code == 0
    assert "checks passed" in out
    code2, out2 = run_cli("verify", "purebraid", "--n", "3", "--jobs", "2")
    assert (code, out) == (code2, out2)


def test_guards():
    code, out = run_cli("typeb", "--n", "9", "--verify")
    assert code == 2 and "exceeds the supported bound" in out
    code, out = run_cli("monomial", "--r", "7", "--n", "2", "--verify", "relations")
    assert code == 2
    code, out = run_cli("lie", "--exponents", "1", "--max-degree", "9")
    assert code == 2


def test_missing_mode_error():
    code, out = run_cli("lie", "--max-degree", "3")
    assert code == 2
    assert "one of" in out


def test_deterministic_output():
    runs = [run_cli("typeb", "--n", "3", "--verify") for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run_cli("lie", "--monomial", "3,2", "--max-degree", "4") for _ in range(2)]
    assert runs[0] == runs[1]


def test_monodromy_golden_file():
    golden = os.path.join(os.path.dirname(__file__), "golden_b2_monodromy.txt")
    with open(golden, "r", encoding="utf-8") as fh:
        expected = fh.read()
    code, out = run_cli("monodromy", os.path.join(DATA, "b2.wd"))
    assert code == 0
    assert out == expected
