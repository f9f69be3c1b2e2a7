import pytest

from steinhaus_lab.utils.idao_utils import (
    IdaoRefutation,
    IdaoWitness,
    idao_block_matrix,
    idao_solve_batch,
    idao_system_solve,
    idao_verify,
    matches_idao_family,
    unwrap_period3,
)
from steinhaus_lab.utils.matrix_utils import ExactMatrix, row_times, wendt
from steinhaus_lab.utils.sequence_utils import IAPSpec, idao_sequence

UNIVERSAL_A6 = (0, -1, 1, 1, -3, 2)
UNIVERSAL_D6 = (2, -4, 2, 2, -4, 2)


def _apply(m: ExactMatrix, column):
    return row_times(column, m.T)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 7, 8, 9, 10, 11])
def test_no_solutions_off_multiples_of_six(k):
    assert idao_system_solve(k) == []


@pytest.mark.parametrize("k", [6, 12])
def test_kernel_dimension(k):
    assert len(idao_system_solve(k)) == 4
    assert len(idao_system_solve(k, "proof")) == 4


def test_universal_sequence_in_kernel():
    column = UNIVERSAL_A6 + UNIVERSAL_D6
    assert all(x == 0 for x in _apply(idao_block_matrix(6), column))
    assert all(x == 0 for x in _apply(idao_block_matrix(6, "proof"), column))
    assert all(x == 0 for x in row_times(UNIVERSAL_D6, wendt(6)))


def test_forms_agree():
    assert idao_block_matrix(6) == idao_block_matrix(6, "proof")
    assert idao_system_solve(12) == idao_system_solve(12, "proof")
    with pytest.raises(ValueError):
        idao_block_matrix(6, "other")


def test_kernel_elements_are_idao_family():
    for firsts, diffs in idao_system_solve(6):
        assert all(x == 0 for x in row_times(diffs, wendt(6)))
        spec = IAPSpec(firsts, diffs)
        assert isinstance(idao_verify(spec, 6, 6), IdaoWitness)
        small = unwrap_period3(firsts, diffs)
        assert small is not None
        assert matches_idao_family(small)


def test_unwrap_period3():
    small = unwrap_period3(UNIVERSAL_A6, UNIVERSAL_D6)
    assert small == IAPSpec((0, -1, 1), (1, -2, 1))
    assert unwrap_period3((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0)) is None
    with pytest.raises(ValueError):
        unwrap_period3((1, 2), (0, 0))


def test_family_membership():
    assert matches_idao_family(idao_sequence(1, 2, 3, 4))
    assert matches_idao_family(idao_sequence(1, 2, 3, 4, 7))
    assert not matches_idao_family(IAPSpec((1, 2, 3), (4, 4, 4)))
    assert not matches_idao_family(IAPSpec((1,), (1,)))


def test_universal_orbit_is_six_three_interlaced():
    witness = idao_verify(IAPSpec((0, -1, 1), (1, -2, 1)), 6, 3)
    assert isinstance(witness, IdaoWitness)
    assert witness.class_table[(0, 0)] == (0, -2, 1)
    assert len(witness.to_dict()["classes"]) == 18


def test_zero_sequence():
    assert isinstance(idao_verify(IAPSpec((0,), (0,)), 1, 1), IdaoWitness)


def test_refutation():
    outcome = idao_verify(IAPSpec((1,), (1,)), 1, 1)
    assert isinstance(outcome, IdaoRefutation)
    assert outcome.cell == (1, -3)
    assert outcome.expected == 0
    assert outcome.actual == -3
    assert outcome.residue_class == (0, 0)
    assert outcome.steps == (1, -3)
    assert outcome.to_dict()["class"] == [0, 0]
    assert outcome.to_dict()["steps"] == [1, -3]


def test_non_kernel_vector_refuted():
    spec = IAPSpec((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 0))
    assert isinstance(idao_verify(spec, 6, 6), IdaoRefutation)


def test_box_too_small():
    spec = IAPSpec((0, -1, 1), (1, -2, 1))
    with pytest.raises(ValueError):
        idao_verify(spec, 6, 3, depth=1)
    with pytest.raises(ValueError):
        idao_verify(spec, 0, 3)


def test_batch_solve_matches_single_solves():
    serial = idao_solve_batch([6, 7, 12])
    parallel = idao_solve_batch([6, 7, 12], threads=2)
    assert list(parallel) == [6, 7, 12]
    assert parallel == serial
    assert {k: len(basis) for k, basis in parallel.items()} == {6: 4, 7: 0, 12: 4}
    assert parallel[12] == idao_system_solve(12)
    with pytest.raises(ValueError):
        idao_solve_batch([6, 0])
