import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinhaus_lab.utils.residue_utils import (
    MultiplicityTable,
    Residue,
    invertible_units,
    is_balanced,
    is_invertible,
    is_mirror_symmetric,
    multiplicity_of,
    residue_add,
    residue_mul,
    residue_neg,
)
from tests.test_utils import load_json

GALLERY = load_json("z5_gallery.json")


def test_residue_arithmetic():
    assert Residue(7, 5).value == 2
    assert Residue(-1, 5).value == 4
    assert residue_add(Residue(3, 5), Residue(4, 5)) == Residue(2, 5)
    assert residue_mul(Residue(3, 5), Residue(4, 5)) == Residue(2, 5)
    assert residue_neg(Residue(2, 5)) == Residue(3, 5)
    assert Residue(3, 5) - Residue(4, 5) == Residue(4, 5)
    assert int(Residue(12, 7)) == 5


def test_zero_ring():
    assert Residue(5, 1).value == 0
    assert is_invertible(Residue(0, 1))


def test_mixed_moduli():
    with pytest.raises(TypeError):
        Residue(1, 5) + Residue(1, 7)
    with pytest.raises(TypeError):
        multiplicity_of([Residue(1, 3), Residue(1, 5)])


def test_bad_modulus():
    with pytest.raises(ValueError):
        Residue(1, 0)


def test_invertible_units():
    assert invertible_units(15) == (1, 2, 4, 7, 8, 11, 13, 14)
    assert invertible_units(7) == (1, 2, 3, 4, 5, 6)
    assert not is_invertible(Residue(6, 15))


def test_gallery_triangle_counts():
    triangle = GALLERY["triangle"]
    values = [v for row in triangle["rows"] for v in row]
    table = multiplicity_of(values, 5)
    assert list(table.counts) == triangle["counts"]
    assert table.cardinality == 15
    assert not is_balanced(table)


def test_multiplicity_from_residues():
    table = multiplicity_of([Residue(x, 3) for x in (0, 1, 2, 2, 1, 0)])
    assert table.counts == (2, 2, 2)
    assert is_balanced(table)


def test_empty_stream():
    assert multiplicity_of([], 4).counts == (0, 0, 0, 0)
    assert is_balanced(multiplicity_of([], 4))
    with pytest.raises(ValueError):
        multiplicity_of([])


def test_table_algebra():
    table = MultiplicityTable(5, (0, 6, 4, 2, 3))
    assert table.negated().counts == (0, 3, 2, 4, 6)
    assert not is_mirror_symmetric(table)
    assert is_mirror_symmetric(MultiplicityTable(5, (1, 2, 3, 3, 2)))
    assert (table + table).counts == (0, 12, 8, 4, 6)
    assert (table - MultiplicityTable(5, (0, 1, 1, 1, 1))).counts == (0, 5, 3, 1, 2)
    with pytest.raises(ValueError):
        table - MultiplicityTable(5, (1, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        MultiplicityTable(3, (1, 2))


@settings(max_examples=1000)
@given(
    n=st.integers(min_value=1, max_value=9),
    values=st.lists(st.integers(min_value=0, max_value=50), max_size=40),
)
def test_balanced_implies_divisible(n, values):
    table = multiplicity_of(values, n)
    if is_balanced(table):
        assert table.cardinality % n == 0
