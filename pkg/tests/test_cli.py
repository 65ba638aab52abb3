import pytest

from inducedc4.bench import read_csv, run_bench, write_csv
from inducedc4.cli import main


def run(args):
    return main(args)


def test_gen_detect_find_verify(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    assert run(["gen", "gnp:n=64,p=0.5,seed=1", "-o", path]) == 0
    assert run(["detect", path]) == 0
    out = capsys.readouterr().out
    assert "FOUND" in out and "phase=" in out
    assert run(["detect", path, "--algo", "oracle"]) == 0
    assert run(["find", path]) == 0
    found_line = capsys.readouterr().out.strip().split("\n")[-1]
    ids = found_line.split()[1:]
    assert run(["verify", path, *ids]) == 0
    assert capsys.readouterr().out.strip().endswith("OK")


def test_detect_none_exit_code(tmp_path, capsys):
    path = str(tmp_path / "h.txt")
    assert run(["gen", "polarity-blowup:q=3,w=4", "-o", path]) == 0
    assert run(["detect", path]) == 1
    assert "NONE" in capsys.readouterr().out
    assert run(["find", path]) == 1


def test_verify_bad(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    run(["gen", "gnp:n=8,p=1,seed=1", "-o", path])
    capsys.readouterr()
    assert run(["verify", path, "0", "1", "2", "3"]) == 1
    assert capsys.readouterr().out.strip() == "BAD"


def test_error_exit_codes(tmp_path, capsys):
    assert run(["detect", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 9\n")
    assert run(["detect", str(bad)]) == 2
    assert run(["gen", "mystery:n=4", "-o", str(tmp_path / "x.txt")]) == 2


def test_gen_empty_graph(tmp_path):
    path = tmp_path / "empty.txt"
    assert run(["gen", "gnp:n=0,p=0.5,seed=1", "-o", str(path)]) == 0
    assert path.read_text() == "0 0\n"


def test_backend_flag(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    run(["gen", "gnp:n=32,p=0.5,seed=2", "-o", path])
    assert run(["--backend", "python", "detect", path]) == 0
    from inducedc4 import kernels

    kernels.select_backend("auto")


def test_bench_rows_and_slope(tmp_path, capsys):
    csv_path = str(tmp_path / "out.csv")
    code = run([
        "bench", "--sizes", "64,128", "--reps", "2",
        "--oracle-max", "128", "--naive-max", "64", "--csv", csv_path,
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "slope=" in out
    text = open(csv_path).read()
    records = read_csv(text)
    fast_rows = [r for r in records if r.algo == "fast"]
    assert len(fast_rows) == 4  # 2 sizes x 2 reps
    assert any(r.algo == "oracle" for r in records)
    assert any(r.algo == "naive" for r in records)


def test_csv_roundtrip(tmp_path):
    records = run_bench([32, 64], 1, oracle_max=64, naive_max=32)
    path = str(tmp_path / "r.csv")
    write_csv(records, path)
    back = read_csv(open(path).read())
    # written records parse back to the same serialized rows
    assert [r.to_csv() for r in back] == [r.to_csv() for r in records]
    assert [(r.n, r.seed, r.gen, r.algo, r.found) for r in back] == [
        (r.n, r.seed, r.gen, r.algo, r.found) for r in records
    ]
    with pytest.raises(ValueError):
        read_csv("not,a,header\n")


def test_selftest_quick(capsys):
    assert run(["selftest", "--quick", "--max-n", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 8
