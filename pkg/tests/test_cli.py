from __future__ import annotations

from pathlib import Path

from dimatch.cli import main
from dimatch.graph import cycle, save_graph


def write(tmp_path: Path, name: str, text: str) -> str:
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_solve_yes_and_check_roundtrip(tmp_path, capsys):
    gpath = write(tmp_path, "c6.g", save_graph(cycle(6)))
    cert = str(tmp_path / "cert.txt")
    assert main(["solve", gpath, "--certificate", cert]) == 0
    out = capsys.readouterr().out
    assert out.startswith("YES")
    assert main(["check", gpath, cert]) == 0
    assert "OK" in capsys.readouterr().out


def test_solve_no(tmp_path, capsys):
    gpath = write(tmp_path, "c5.g", save_graph(cycle(5)))
    assert main(["solve", gpath]) == 1
    out = capsys.readouterr().out
    assert "NO" in out and "witness" in out


def test_solve_rejects_long_claw(tmp_path, capsys):
    text = "7 6\n1 2\n1 3\n1 4\n2 5\n3 6\n4 7\n"
    gpath = write(tmp_path, "claw.g", text)
    assert main(["solve", gpath]) == 2


def test_check_fails_on_bad_certificate(tmp_path, capsys):
    gpath = write(tmp_path, "c4.g", save_graph(cycle(4)))
    cert = write(tmp_path, "bad.cert", "1 B\n2 W\n3 B\n4 W\n")
    assert main(["check", gpath, cert]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_check_accepts_known_good(tmp_path, capsys):
    gpath = write(tmp_path, "c6.g", save_graph(cycle(6)))
    cert = write(tmp_path, "good.cert", "1 B\n2 B\n3 W\n4 B\n5 B\n6 W\n")
    assert main(["check", gpath, cert]) == 0


def test_gen_then_solve(tmp_path, capsys):
    gpath = str(tmp_path / "gen.g")
    assert main(["gen", "--model", "triangle_chain", "--n", "9", "--seed", "3", "--out", gpath]) == 0
    code = main(["solve", gpath])
    assert code in (0, 1)


def test_oracle_command(tmp_path, capsys):
    gpath = write(tmp_path, "c6.g", save_graph(cycle(6)))
    assert main(["oracle", gpath]) == 0
    gpath = write(tmp_path, "c4.g", save_graph(cycle(4)))
    assert main(["oracle", gpath]) == 1


def test_compare_command(capsys):
    assert main(["compare", "--count", "25", "--min-n", "7", "--max-n", "10", "--seed", "5"]) == 0
    assert "0 discrepancies" in capsys.readouterr().out


def test_saturate_command(tmp_path, capsys):
    gpath = write(tmp_path, "p3.g", "3 2\n1 2\n2 3\nU: 2\n")
    assert main(["saturate", gpath]) == 0
    out = capsys.readouterr().out.split()
    assert len(out) == 2
    gpath = write(tmp_path, "p3b.g", "3 2\n1 2\n2 3\nU: 1 3\n")
    assert main(["saturate", gpath]) == 1
    assert "infeasible" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path):
    gpath = write(tmp_path, "bad.g", "2 1\n1 1\n")
    assert main(["solve", gpath]) == 2
    assert main(["solve", str(tmp_path / "missing.g")]) == 2


def test_usage_error_exit_code():
    assert main(["frobnicate"]) == 2
