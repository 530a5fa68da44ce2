import subprocess
import sys

import pytest

from wspd.cli import RunConfig, main


def stats(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line.split("=")[0])


@pytest.fixture
def bowtie(tmp_path):
    p = tmp_path / "curve.txt"
    p.write_text("0 0\n4 0\n2 2\n2 -2\n")
    return p


def test_two_point_file(tmp_path, capsys):
    pts = tmp_path / "points.txt"
    pts.write_text("0 0\n1 0\n")
    assert main(["wspd-euclid", "--eps", "0.5", str(pts)]) == 0
    s = stats(capsys.readouterr().out)
    assert s["pairs"] == "1" and s["valid"] == "ok"


def test_distill_example_with_svg(tmp_path, bowtie, capsys):
    out, svg = tmp_path / "out.txt", tmp_path / "out.svg"
    assert main(["distill", str(bowtie), "--out", str(out), "--svg", str(svg)]) == 0
    assert stats(capsys.readouterr().out)["vertices_out"] == "3"
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert rows == ["0.0 0.0", "2.0 0.0", "2.0 -2.0"]
    assert svg.read_text().startswith("<svg")


def test_round_trip_then_tamper(tmp_path, capsys):
    pts, pairs = tmp_path / "p.txt", tmp_path / "w.txt"
    assert main(["gen", "uniform", "--n", "60", "--seed", "3", "--out", str(pts)]) == 0
    assert main(["wspd-euclid", str(pts), "--eps", "0.5", "--out", str(pairs)]) == 0
    capsys.readouterr()
    assert main(["validate", "--eps", "0.5", str(pairs), str(pts)]) == 0
    assert stats(capsys.readouterr().out)["valid"] == "ok"
    lines = pairs.read_text().splitlines()
    victim = next(l for l in lines[1:] if l.startswith("A:") and "," not in l.split()[0] + l.split()[1])
    pairs.write_text("\n".join(l for l in lines if l != victim) + "\n")
    assert main(["validate", "--eps", "0.5", str(pairs), str(pts)]) == 1
    cap = capsys.readouterr()
    i, j = victim.split()[0][2:], victim.split()[1][2:]
    a, b = sorted((int(i), int(j)))
    assert f"uncovered: {a} {b}" in cap.err
    assert stats(cap.out)["valid"] == "fail"


@pytest.mark.parametrize("cmd", ["wspd-optimal", "wspd-udg"])
def test_graph_constructions(tmp_path, capsys, cmd):
    pts, pairs = tmp_path / "p.txt", tmp_path / "w.txt"
    main(["gen", "udg", "--n", "50", "--seed", "1", "--out", str(pts)])
    extra = ["--metric", "udg"] if cmd == "wspd-optimal" else []
    assert main([cmd, str(pts), "--eps", "0.5", "--out", str(pairs), "--svg", str(tmp_path / "w.svg")] + extra) == 0
    assert stats(capsys.readouterr().out)["valid"] == "ok"
    assert main(["validate", str(pairs), str(pts)]) == 0


def test_disconnected_udg_reported(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n5 0\n")
    assert main(["wspd-udg", str(pts)]) == 2
    assert "disconnected" in capsys.readouterr().err


def test_parse_error_has_line_number(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n1 x\n")
    assert main(["wspd-euclid", str(pts)]) == 2
    assert "p.txt:2" in capsys.readouterr().err


def test_eps_range(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n1 0\n")
    assert main(["wspd-euclid", str(pts), "--eps", "1.5"]) == 2
    with pytest.raises(ValueError):
        RunConfig("shortcut", alpha=1.0)


def test_shortcut_log(tmp_path, bowtie, capsys):
    log = tmp_path / "log.txt"
    assert main(["shortcut", str(bowtie), "--alpha", "2", "--log", str(log)]) == 0
    entries = [l.split() for l in log.read_text().splitlines()]
    assert entries and all(e[3] in ("merge", "sweep") for e in entries)
    assert stats(capsys.readouterr().out)["vertices_out"] == "2"


def test_maps(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("0 0\n1 0\n0 1\n3 3\n")
    b.write_text("0 0\n2 0\n0 2\n6 6\n")
    assert main(["dilation", str(a), str(b), "--eps", "0.1"]) == 0
    s = stats(capsys.readouterr().out)
    assert 1.8 <= float(s["ell"]) <= 2.0
    assert main(["distortion", str(a), str(b), "--eps", "0.1"]) == 0
    assert 1.0 <= float(stats(capsys.readouterr().out)["distortion"]) <= 1.1
    b.write_text("0 0\n2 0\n0 0\n6 6\n")
    assert main(["distortion", str(a), str(b)]) == 0
    assert stats(capsys.readouterr().out)["distortion"] == "inf"


def test_gen_deterministic(capsys):
    main(["gen", "clustered", "--n", "20", "--seed", "5"])
    first = capsys.readouterr().out
    main(["gen", "clustered", "--n", "20", "--seed", "5"])
    assert capsys.readouterr().out == first


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "wspd", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "wspd-euclid" in r.stdout
