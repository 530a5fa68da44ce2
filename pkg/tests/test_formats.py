import numpy as np
import pytest

from wspd.euclid import euclidean_wspd
from wspd.io import PointFileError, format_points, parse_points
from wspd.metric import PointSet, euclidean_metric
from wspd.oracles import validate_wspd
from wspd.pairs import Pair, PairDecomposition, PairFileError, format_pairs, parse_pairs


def test_pair_round_trip():
    ps = PointSet(np.random.default_rng(0).random((40, 2)))
    w = euclidean_wspd(ps, 0.3)
    m = euclidean_metric(ps)
    text = format_pairs(w, m.distance)
    back = parse_pairs(text.splitlines())
    assert back.eps == 0.3
    assert [p.key() for p in back.pairs] == [p.key() for p in w.pairs]
    assert [(p.rep_a, p.rep_b) for p in back.pairs] == [(p.rep_a, p.rep_b) for p in w.pairs]
    assert validate_wspd(m, back).ok == validate_wspd(m, w).ok


def test_optional_fields_survive():
    w = PairDecomposition([Pair((0, 2), (5,), 0, 5, -3, "short")], 0.5, "graph")
    back = parse_pairs(format_pairs(w).splitlines())
    p = back.pairs[0]
    assert (p.a, p.b, p.level, p.regime, back.metric) == ((0, 2), (5,), -3, "short", "graph")


def test_eps_override_and_missing():
    assert parse_pairs(["A:0 B:1"], eps=0.25).eps == 0.25
    with pytest.raises(PairFileError):
        parse_pairs(["A:0 B:1"])


@pytest.mark.parametrize(
    "line, needle",
    [("A:0 B", "line 2"), ("A:0", "missing field B"), ("A:0,x B:1", "bad index"), ("A: B:1", "empty")],
)
def test_pair_errors_name_line(line, needle):
    with pytest.raises(PairFileError, match=needle):
        parse_pairs(["# eps=0.5", line])


def test_validate_detects_missing_pair():
    m = euclidean_metric(PointSet([(0, 0), (1, 0), (5, 0)]))
    w = PairDecomposition([Pair((0,), (1,), 0, 1), Pair((0,), (2,), 0, 2)], 0.5)
    rep = validate_wspd(m, w)
    assert not rep.coverage_ok
    assert rep.uncovered_pairs == [(1, 2)]
    assert "uncovered: 1 2" in rep.to_text()


def test_validate_two_points_any_eps():
    m = euclidean_metric(PointSet([(0, 0), (1, 0)]))
    for eps in (1e-6, 0.5, 1.0):
        assert validate_wspd(m, PairDecomposition([Pair((0,), (1,), 0, 1)], eps)).ok


def test_validate_flags_bad_separation_and_overlap():
    m = euclidean_metric(PointSet([(0, 0), (1, 0), (2, 0)]))
    w = PairDecomposition([Pair((0, 1), (2,), 0, 2), Pair((0,), (1,), 0, 1), Pair((1,), (1, 2), 1, 1)], 0.5)
    rep = validate_wspd(m, w)
    assert not rep.separation_ok and 0 in rep.failing_pairs
    assert not rep.disjoint_ok and rep.overlapping == [2]
    kv = dict(line.split("=", 1) for line in rep.to_kv().splitlines())
    assert kv["valid"] == "fail" and kv["pairs"] == "3"


def test_validate_cap():
    m = euclidean_metric(PointSet(np.random.default_rng(1).random((20, 2))))
    with pytest.raises(ValueError):
        validate_wspd(m, PairDecomposition([], 0.5), cap=10)


def test_points_round_trip():
    c = np.random.default_rng(2).random((30, 3)) * 1e3
    back = parse_points(format_points(c).splitlines())
    assert np.array_equal(back, c)


def test_points_comments_and_blank_lines():
    got = parse_points(["# a comment", "", "1 2", "  3 4  ", "# trailing"])
    assert got.tolist() == [[1.0, 2.0], [3.0, 4.0]]


@pytest.mark.parametrize(
    "lines, needle",
    [
        (["1 2", "3"], "f.txt:2: expected 2"),
        (["# dim=3", "1 2"], "f.txt:2: expected 3"),
        (["1 a"], "f.txt:1: non-numeric"),
        (["1 inf"], "f.txt:1: non-finite"),
        (["# dim=x"], "f.txt:1: bad dim"),
        ([], "no points"),
    ],
)
def test_point_errors(lines, needle):
    with pytest.raises(PointFileError, match=needle):
        parse_points(lines, "f.txt")


def test_nan_distance_written_without_metric():
    w = PairDecomposition([Pair((0,), (1,), 0, 1)], 0.5)
    assert "dist:nan" in format_pairs(w)
