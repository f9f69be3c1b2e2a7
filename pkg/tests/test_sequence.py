from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinhaus_lab.utils.figure_utils import steinhaus_triangle
from steinhaus_lab.utils.residue_utils import is_mirror_symmetric
from steinhaus_lab.utils.sequence_utils import (
    FiniteSeq,
    IAPSpec,
    Weights,
    center_condition,
    derive,
    derive_alpha,
    derive_iap,
    derive_iap_iterated,
    iap_window,
    idao_orbit_entry,
    idao_sequence,
    is_antisymmetric,
    negate,
    orbit_rows,
    thm4_derived_closed_form,
    thm4_sequence,
    universal_orbit_entry,
    universal_sequence,
)
from tests.test_utils import antisymmetric_sequences, iap_specs

US = IAPSpec((0, -1, 1), (1, -2, 1))


def test_derive():
    s = FiniteSeq((2, 4, 3, 1, 1), 5)
    assert derive(s).terms == (1, 2, 4, 2)
    assert derive(FiniteSeq((3,), 5)).terms == ()
    with pytest.raises(ValueError):
        derive(FiniteSeq((), 5))


def test_derive_alpha():
    s = FiniteSeq((2, 4, 3, 1, 1), 5)
    assert derive_alpha(s, Weights((1, 1))) == derive(s)
    assert derive_alpha(s, Weights((-1, 1))).terms == (2, 4, 3, 0)
    assert derive_alpha(s, Weights((1, 1, 1))).terms == (4, 3, 0)
    with pytest.raises(ValueError):
        derive_alpha(FiniteSeq((1,), 5), Weights((1, 1)))


def test_universal_window():
    assert iap_window(US, 0, 8).terms == (0, -1, 1, 1, -3, 2, 2, -5, 3)
    assert iap_window(derive_iap(US), 0, 8).terms == (-1, 0, 2, -2, -1, 4, -3, -2, 6)
    assert iap_window(derive_iap_iterated(US, 3), 0, 5).terms == (1, 2, -3, 0, 4, -4)
    assert universal_sequence(7) == US.reduce(7)


def test_negative_indices():
    assert [US.term(j) for j in (-3, -2, -1)] == [-1, 1, 0]


def test_orbit_rows():
    rows = orbit_rows(US, 3, 0, 3)
    assert [r.terms for r in rows] == [(0, -1, 1, 1), (-1, 0, 2, -2), (-1, 2, 0, -3)]


@settings(max_examples=200)
@given(spec=iap_specs(), i=st.integers(min_value=0, max_value=12))
def test_iterated_derivation_matches_pointwise(spec, i):
    width = 3 * spec.k + 1
    row = iap_window(spec, 0, width - 1 + i)
    for _ in range(i):
        row = derive(row)
    assert iap_window(derive_iap_iterated(spec, i), 0, width - 1) == row


@given(spec=iap_specs())
def test_single_derivation(spec):
    assert derive_iap_iterated(spec, 1) == derive_iap(spec)
    assert derive_iap_iterated(spec, 0) == spec


@given(s=antisymmetric_sequences())
def test_antisymmetry_is_inherited(s):
    assert is_antisymmetric(s)
    if len(s) > 1:
        assert is_antisymmetric(derive(s))


@given(s=antisymmetric_sequences())
def test_antisymmetric_triangle_is_mirror_symmetric(s):
    if len(s):
        assert is_mirror_symmetric(steinhaus_triangle(s).multiplicity())


def test_center_condition():
    assert center_condition(FiniteSeq((1, 0, 4), 5))
    assert not center_condition(FiniteSeq((1, 2, 3), 5))
    assert center_condition(FiniteSeq((2, 1, 4, 3), 5))
    assert center_condition(FiniteSeq((), 5))


def test_negate():
    assert negate(FiniteSeq((1, 2, 0), 5)).terms == (4, 3, 0)


def test_bad_iap():
    with pytest.raises(ValueError):
        IAPSpec((1, 2), (1,))
    with pytest.raises(ValueError):
        derive_iap_iterated(US, -1)
    with pytest.raises(ValueError):
        iap_window(US, 3, 2)


def test_antisymmetric_family_closed_form():
    n, a, d = 7, 2, 3
    s = thm4_sequence(n, a, d)
    for t in range(3 * n + 1):
        assert thm4_derived_closed_form(n, a, d, t) == derive_iap_iterated(s, t)


def test_universal_closed_form():
    assert universal_orbit_entry(7, 1, 0, 3).value == 1
    assert universal_orbit_entry(7, 1, 1, 0).value == 6
    n, d = 11, 2
    rows = orbit_rows(universal_sequence(n, d), 11, 0, 20)
    for i in range(11):
        for j in range(21):
            assert universal_orbit_entry(n, d, i, j).value == rows[i][j]
    with pytest.raises(ValueError):
        universal_orbit_entry(7, 1, -1, 0)


@pytest.mark.parametrize("a0, a1, a2, d", [(0, -1, 1, 1), (1, 2, 3, 1), (2, -5, 0, 3)])
def test_idao_class_table(a0, a1, a2, d):
    spec = idao_sequence(a0, a1, a2, d)
    rows = orbit_rows(spec, 18, 0, 8)
    for i in range(18):
        for j in range(9):
            assert idao_orbit_entry(a0, a1, a2, d, i, j) == rows[i][j]
    assert idao_orbit_entry(0, -1, 1, 1, 6, 0) == -2
    assert idao_orbit_entry(0, -1, 1, 1, 6, 0, modulus=7) == 5


@pytest.mark.parametrize("n, m", [(n, m) for n in (2, 3, 5, 6) for m in range(1, 6)])
def test_antisymmetry_from_derivative_and_center(n, m):
    for terms in product(range(n), repeat=m):
        s = FiniteSeq(terms, n)
        assert is_antisymmetric(s) == (is_antisymmetric(derive(s)) and center_condition(s))


@pytest.mark.parametrize("a0, a1, a2, d", [(0, -1, 1, 1), (1, 2, 3, 1), (2, -5, 0, 3)])
def test_idao_class_table_negative_columns(a0, a1, a2, d):
    spec = idao_sequence(a0, a1, a2, d)
    rows = orbit_rows(spec, 18, -12, 12)
    for i in range(18):
        for j in range(-12, 13):
            assert idao_orbit_entry(a0, a1, a2, d, i, j) == rows[i][j + 12]
