import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from jsonschema import ValidationError

from steinhaus_lab.utils.figure_utils import (
    FigureKind,
    alpha_steinhaus_triangle,
    anti_diagonal,
    build_figure,
    cardinality,
    dat,
    figure_from_orbit,
    lozenge,
    parse_figure,
    pascal_trapezoid,
    pascal_triangle,
    render,
    rot120,
    rot240,
    steinhaus_trapezoid,
    steinhaus_triangle,
    trapezoid_from,
)
from steinhaus_lab.utils.sequence_utils import FiniteSeq, Weights, derive, universal_sequence
from tests.test_utils import load_json, rows_of, sequences

GALLERY = load_json("z5_gallery.json")
DAT_Z15 = load_json("dat_z15.json")

FIG1 = FiniteSeq((2, 4, 3, 1, 1), 5)


@pytest.mark.parametrize(
    "kind", ["triangle", "trapezoid", "pascal", "pascal-trapezoid", "lozenge"]
)
def test_gallery(kind):
    entry = GALLERY[kind]
    figure = build_figure(kind, 5, entry["sequence"], entry.get("height"))
    assert rows_of(figure) == entry["rows"]
    assert figure.cardinality == sum(len(row) for row in entry["rows"])


def test_triangle_counts():
    figure = steinhaus_triangle(FIG1)
    assert list(figure.multiplicity().counts) == GALLERY["triangle"]["counts"]
    assert not figure.is_balanced()
    assert figure.widths == [5, 4, 3, 2, 1]


def test_dat():
    figure = dat(0, 8, 1, 5, 15)
    assert figure.to_dict() == DAT_Z15
    assert figure.multiplicity()[2] == 3
    assert not figure.is_balanced()
    assert parse_figure(DAT_Z15) == figure


def test_dat_needs_modulus():
    with pytest.raises(ValueError):
        dat(0, 1, 2, 3)
    with pytest.raises(ValueError):
        build_figure("dat", 5, a=0, d1=1)


def test_cardinality():
    assert cardinality("triangle", 5) == 15
    assert cardinality("pascal", 5) == 15
    assert cardinality("trapezoid", 7, 4) == 22
    assert cardinality("pascal-trapezoid", 7, 4) == 22
    assert cardinality("lozenge", 4) == 16
    with pytest.raises(ValueError):
        cardinality("trapezoid", 7)


@given(s=sequences(min_size=1, max_size=9))
def test_lozenge_size(s):
    if len(s) % 2:
        m = (len(s) + 1) // 2
        assert lozenge(s).cardinality == m * m
        assert pascal_triangle(s).cardinality == cardinality("pascal", m)
    assert steinhaus_triangle(s).cardinality == cardinality("triangle", len(s))


def test_trapezoid_from():
    s = FiniteSeq(tuple(GALLERY["trapezoid"]["sequence"]), 5)
    assert trapezoid_from(steinhaus_triangle(s), 4) == steinhaus_trapezoid(s, 4)
    p = FiniteSeq(tuple(GALLERY["pascal-trapezoid"]["sequence"]), 5)
    assert trapezoid_from(pascal_triangle(p), 4) == pascal_trapezoid(p, 4)
    with pytest.raises(ValueError):
        trapezoid_from(lozenge(p), 2)
    with pytest.raises(ValueError):
        steinhaus_trapezoid(s, 8)


def test_pascal_needs_odd_length():
    with pytest.raises(ValueError):
        pascal_triangle(FiniteSeq((1, 2), 5))


def test_balanced_lozenge():
    figure = lozenge(FiniteSeq((0, 1, 0, 2, 0), 3))
    assert rows_of(figure) == [[0], [1, 2], [2, 0, 1], [2, 1], [0]]
    assert figure.is_balanced()


def test_rotations():
    s = FiniteSeq((2, 2, 0, 3, 3), 5)
    assert rot120(s).terms == (3, 1, 4, 4, 0)
    assert rot240(s).terms == (0, 1, 1, 4, 2)


@settings(max_examples=100)
@given(s=sequences(modulus=st.sampled_from([5, 7]), min_size=1, max_size=9))
def test_rotated_triangles_have_same_multiset(s):
    table = steinhaus_triangle(s).multiplicity()
    assert alpha_steinhaus_triangle(rot120(s), Weights((-1, 1))).multiplicity() == table
    assert alpha_steinhaus_triangle(rot240(s), Weights((1, -1))).multiplicity() == table


def test_rotation_group_law():
    s = FiniteSeq((0, 1), 5)
    assert rot120(rot120(s)) != rot240(s)
    for terms in [(0, 1), (1, 1), (1, 0, 1), (0, 1, 1)]:
        s = FiniteSeq(terms, 2)
        assert rot120(rot120(s)) == rot240(s)
        assert rot120(rot120(rot120(s))) == s


def test_alpha_triangle():
    figure = alpha_steinhaus_triangle(FIG1)
    assert figure.rows == steinhaus_triangle(FIG1).rows
    with pytest.raises(ValueError):
        alpha_steinhaus_triangle(FIG1, Weights((1, 1, 1)))
    figure = build_figure("alpha-triangle", 5, [2, 4, 3, 1, 1], weights=[-1, 1])
    assert figure.rows[1] == (2, 4, 3, 0)


def test_anti_diagonal():
    triangle = steinhaus_triangle(FIG1)
    assert anti_diagonal(triangle, 2).terms == (3, 2, 3)
    assert anti_diagonal(triangle, 0).terms == (2,)
    with pytest.raises(ValueError):
        anti_diagonal(triangle, 5)


def test_render_text():
    text = render(steinhaus_triangle(FIG1))
    assert text == "2 4 3 1 1\n 1 2 4 2\n  3 1 1\n   4 2\n    1\n"


def test_render_wide_cells():
    text = render(steinhaus_triangle(FiniteSeq((10, 2), 11)))
    assert text == "10   2\n   1\n"


def test_json_round_trip():
    figure = lozenge(FiniteSeq(tuple(GALLERY["lozenge"]["sequence"]), 5))
    document = render(figure, "json")
    assert json.loads(document)["kind"] == "lozenge"
    assert parse_figure(document) == figure
    with pytest.raises(ValueError):
        render(figure, "svg")


def test_parse_rejects_bad_documents():
    with pytest.raises(ValidationError):
        parse_figure({"kind": "triangle", "modulus": 5, "params": {}})
    with pytest.raises(ValidationError):
        parse_figure({"kind": "hexagon", "modulus": 5, "params": {}, "rows": []})
    with pytest.raises(ValueError):
        parse_figure({"kind": "triangle", "modulus": 5, "params": {}, "rows": [[7]]})


def test_figure_from_orbit():
    spec = universal_sequence(3)
    figure = figure_from_orbit(spec, FigureKind.LOZENGE, 1, -3, 3)
    assert rows_of(figure) == [[0], [1, 2], [2, 0, 1], [2, 1], [0]]
    assert figure.params["row"] == 1
    with pytest.raises(ValueError):
        figure_from_orbit(spec, FigureKind.DAT, 0, 0, 3)


TRAPEZOID_CASES = [((1, 4, 0, 2, 3, 3, 1), 5), ((2, 0, 5, 1, 6, 3, 3, 4, 1), 7), ((1, 0, 1, 1, 0), 2)]


@pytest.mark.parametrize("terms, n", TRAPEZOID_CASES)
def test_trapezoid_is_a_difference_of_triangles(terms, n):
    s = FiniteSeq(terms, n)
    whole = steinhaus_triangle(s).multiplicity()
    inner = s
    for h in range(1, len(s) + 1):
        inner = derive(inner)
        expected = whole if h == len(s) else whole - steinhaus_triangle(inner).multiplicity()
        assert steinhaus_trapezoid(s, h).multiplicity().counts == expected.counts


@pytest.mark.parametrize("terms, n", TRAPEZOID_CASES)
def test_pascal_trapezoid_is_a_difference_of_triangles(terms, n):
    s = FiniteSeq(terms, n)
    m = (len(s) + 1) // 2
    whole = pascal_triangle(s).multiplicity()
    for h in range(1, m + 1):
        if h == m:
            expected = whole
        else:
            expected = whole - pascal_triangle(FiniteSeq(terms[h : 2 * m - h - 1], n)).multiplicity()
        assert pascal_trapezoid(s, h).multiplicity().counts == expected.counts


@pytest.mark.parametrize(
    "a, d1, d2, m, n", [(1, 1, 2, 7, 5), (0, 3, 5, 9, 7), (4, 2, 7, 6, 9), (2, -1, 1, 5, 4)]
)
def test_dat_progressions(a, d1, d2, m, n):
    rows = rows_of(dat(a, d1, d2, m, n))
    assert rows[0][0] == a % n
    for i in range(m):
        for j in range(1, m - i):
            assert (rows[i][j] - rows[i][j - 1]) % n == d2 % n
            assert (rows[j][i] - rows[j - 1][i]) % n == d1 % n
    for k in range(m):
        for i in range(1, k + 1):
            assert (rows[i][k - i] - rows[i - 1][k - i + 1]) % n == (d1 - d2) % n


@given(s=sequences(min_size=1, max_size=11))
@settings(max_examples=60)
def test_lozenge_double_sum(s):
    t = s.terms[: len(s) - 1 + len(s) % 2]
    n, m = s.modulus, (len(t) + 1) // 2
    expected = [
        sum(comb(i + j, k) * t[m - 1 - j + k] for k in range(i + j + 1)) % n
        for i in range(m)
        for j in range(m)
    ]
    assert sorted(lozenge(FiniteSeq(t, n)).values()) == sorted(expected)


@pytest.mark.parametrize("n", [2, 5, 10007])
@pytest.mark.parametrize("m", range(1, 13))
def test_pascal_triangle_of_central_one(m, n):
    terms = tuple(int(j == m - 1) for j in range(2 * m - 1))
    assert rows_of(pascal_triangle(FiniteSeq(terms, n))) == [
        [comb(i, k) % n for k in range(i + 1)] for i in range(m)
    ]
