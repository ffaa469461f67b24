import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import wlattice as wl
from wlattice import io as wio
from wlattice.errors import ParseError

mp = wl.make_clodum("max-plus")
mm = wl.make_clodum("max-min")

floats = st.one_of(st.floats(allow_nan=False, allow_infinity=True, width=64),
                   st.sampled_from([0.1, -0.0, 1e-300, -np.inf, np.inf]))


@settings(max_examples=200)
@given(st.lists(st.lists(floats, min_size=3, max_size=3), min_size=1, max_size=4))
def test_matrix_round_trip(tmp_path_factory, rows):
    path = tmp_path_factory.mktemp("m") / "m.txt"
    M = wl.matrix(rows, mp)
    wio.write_matrix(path, M)
    back = wio.read_matrix(path, mp)
    # sentinels and finite values come back bit-identical (repr round-trips)
    assert np.array_equal(back.data, M.data)


def test_comments_commas_and_blank_lines(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("# header\n1, 2  # trailing\n\n-inf +inf\n")
    assert wio.read_matrix(p, mp).tolist() == [[1, 2], [-np.inf, np.inf]]


def test_parse_error_names_file_line_and_carrier(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0.1 0.2\n0.3 1.7\n")
    with pytest.raises(ParseError) as exc:
        wio.read_matrix(p, mm)
    msg = str(exc.value)
    assert "bad.txt:2" in msg and "[0, 1]" in msg
    assert exc.value.line == 2


def test_ragged_rows(tmp_path):
    p = tmp_path / "r.txt"
    p.write_text("1 2\n3\n")
    with pytest.raises(ParseError, match=":2:"):
        wio.read_matrix(p, mp)


def test_vector_shape(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("1 2 3\n")
    assert wio.read_vector(p, mp).tolist() == [1, 2, 3]
    p.write_text("1 2\n3 4\n")
    with pytest.raises(ParseError):
        wio.read_vector(p, mp)


def test_system_yaml_forms(tmp_path):
    (tmp_path / "A.txt").write_text("-1 0\n-inf -2\n")
    cfg = tmp_path / "s.yaml"
    cfg.write_text(
        "clodum: max-plus\n"
        "A: {file: A.txt}\n"
        "B: |\n"
        "  0\n"
        "  -inf\n"
        "C: [[0, 0]]\n"
        "D: [[-inf]]\n"
        "x0: [0, 0]\n"
        "u: [1, 2, 3]\n")
    sc = wio.load_system(cfg)
    assert sc.system.A.tolist() == [[-1, 0], [-np.inf, -2]]
    assert sc.system.B.tolist() == [[0], [-np.inf]]
    assert sc.x0.tolist() == [0, 0] and sc.u.shape == (3, 1)


def test_system_yaml_error_line(tmp_path):
    cfg = tmp_path / "s.yaml"
    cfg.write_text("clodum: max-min\nA:\n  - [0.5, 0.2]\n  - [0.1, 2.0]\nB: [1, 1]\nC: [[1, 1]]\nD: [[0]]\n")
    with pytest.raises(ParseError) as exc:
        wio.load_system(cfg)
    assert exc.value.line == 4 and "[0, 1]" in str(exc.value)


def test_yaml_syntax_error(tmp_path):
    cfg = tmp_path / "s.yaml"
    cfg.write_text("A: [1, 2\n")
    with pytest.raises(ParseError):
        wio.load_system(cfg)


def test_missing_key(tmp_path):
    cfg = tmp_path / "s.yaml"
    cfg.write_text("A: [[0]]\n")
    with pytest.raises(ParseError, match="'B'"):
        wio.load_system(cfg)


def test_hmm_yaml(fixture_path):
    h = wio.load_hmm(fixture_path("viterbi_n3.yaml"))
    assert h.n == 3 and h.horizon == 5 and h.clodum.name == "product-tnorm"


def test_json_sentinels():
    rep = wl.solve_max(wl.matrix([[0, -np.inf]], mp), wl.vector([1], mp))
    data = json.loads(wio.dumps_json(rep))
    assert data["solution"] == [1.0, "+inf"]
    assert wio.format_scalar(-np.inf) == "-inf"
