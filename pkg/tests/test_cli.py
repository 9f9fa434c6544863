import json

import pytest

from matchaug.cli import main


@pytest.fixture
def t1(tmp_path):
    path = tmp_path / "t1.txt"
    assert main(["gen", "--family", "tight-s3", "--param", "1", "--output", str(path)]) == 0
    return path


def test_gen_is_byte_stable(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["gen", "--family", "random", "--param", "9", "--seed", "4", "--output", str(a)])
    main(["gen", "--family", "random", "--param", "9", "--seed", "4", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_solve_and_verify(t1, tmp_path, capsys):
    report = tmp_path / "r.txt"
    js = tmp_path / "r.json"
    assert main(["solve", "--input", str(t1), "--output", str(report), "--json", str(js), "--trace"]) == 0
    text = report.read_text()
    assert "bound_ok true" in text and "verify pass" in text
    data = json.loads(js.read_text())
    sol = tmp_path / "sol.txt"
    sol.write_text("\n".join(str(i) for i in data[0]["solution"]) + "\n")
    assert main(["verify", "--input", str(t1), "--solution", str(sol)]) == 0
    sol.write_text("1\n2\n")
    assert main(["verify", "--input", str(t1), "--solution", str(sol)]) == 2


def test_invalid_input_exit_code(tmp_path):
    path = tmp_path / "path.txt"
    path.write_text("3 2\n1 2 1\n2 3 1\n")
    assert main(["solve", "--input", str(path)]) == 2
    assert main(["solve"]) == 2


def test_scan_and_oracle(tmp_path, capsys):
    path = tmp_path / "g1.txt"
    main(["gen", "--family", "g1", "--output", str(path)])
    capsys.readouterr()
    assert main(["scan", "--input", str(path)]) == 0
    assert "S34 5 6 7 8" in capsys.readouterr().out
    assert main(["oracle", "--input", str(path)]) == 0
    assert capsys.readouterr().out.strip().endswith("opt 7")


def test_ratio(capsys):
    assert main(["ratio", "--family", "g3", "--param", "1", "--budget-nodes", "20"]) == 0
    assert "opt/d2=10/7 (≈ 1.429)" in capsys.readouterr().out


def test_breach_exit_code(monkeypatch, t1, capsys):
    from matchaug import pipeline
    from matchaug.errors import InvariantBreach

    def boom(*a, **k):
        raise InvariantBreach("forced", pipeline.parse_instance("3 3\n1 2 1\n2 3 1\n3 1 1\n"))
    monkeypatch.setattr(pipeline, "glue", boom)
    assert main(["solve", "--input", str(t1)]) == 3
    assert "offending instance" in capsys.readouterr().err
