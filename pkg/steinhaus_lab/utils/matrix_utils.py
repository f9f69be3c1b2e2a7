import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import List, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ExactMatrix:
    """
    Integer matrix with arbitrary-precision entries.

    Products go through numpy object arrays so no entry is ever truncated to a
    machine integer.
    """

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix rows: widths {sorted(widths)}")
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries)
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ExactMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, k: int) -> "ExactMatrix":
        return cls(tuple(tuple(int(r == s) for s in range(k)) for r in range(k)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> int:
        r, s = index
        return self.entries[r][s]

    def _array(self) -> np.ndarray:
        arr = np.empty(self.shape, dtype=object)
        for r, row in enumerate(self.entries):
            for s, x in enumerate(row):
                arr[r, s] = x
        return arr

    @classmethod
    def _from_array(cls, arr: np.ndarray) -> "ExactMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in arr))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix._from_array(self._array() @ other._array())

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix._from_array(self._array() + other._array())

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix._from_array(self._array() - other._array())

    def __pow__(self, exponent: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices can be raised to a power")
        result = ExactMatrix.identity(self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


def block_matrix(blocks: Sequence[Sequence[ExactMatrix]]) -> ExactMatrix:
    """Assembles a matrix from a grid of equally tall (per row) and wide (per column) blocks."""
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        for r in range(height):
            rows.append(tuple(x for block in block_row for x in block.entries[r]))
    return ExactMatrix(tuple(rows))


def row_times(vector: Sequence[int], m: ExactMatrix) -> Tuple[int, ...]:
    """Row vector times matrix, v·M."""
    if len(vector) != m.rows:
        raise ValueError(f"vector of length {len(vector)} does not fit {m.shape}")
    return tuple(
        sum(vector[r] * m.entries[r][s] for r in range(m.rows)) for s in range(m.cols)
    )


def circulant(first_row: Sequence[int]) -> ExactMatrix:
    """Circ(c_0, …, c_{k-1}): row r is the first row shifted right r places."""
    k = len(first_row)
    return ExactMatrix(
        tuple(tuple(first_row[(s - r) % k] for s in range(k)) for r in range(k))
    )


def circulant_c(i: int, k: int) -> ExactMatrix:
    """
    The circulant C_i with c_t = sum over l of C(i, lk - t).

    Derivation of a k-interlaced progression multiplies its first terms and
    its differences by C_i after i steps; C_0 is the identity and C_i = C_1^i.
    """
    if i < 0 or k < 1:
        raise ValueError(f"need i >= 0 and k >= 1, got i={i}, k={k}")
    first_row = [
        sum(comb(i, x) for x in range(i + 1) if (x + t) % k == 0) for t in range(k)
    ]
    return circulant(first_row)


def toeplitz_t(i: int, k: int) -> ExactMatrix:
    """T_i with entries sum over l >= 0 of l·C(i, r - s + lk)."""
    if i < 0 or k < 1:
        raise ValueError(f"need i >= 0 and k >= 1, got i={i}, k={k}")
    rows = []
    for r in range(k):
        row = []
        for s in range(k):
            total, l = 0, 1
            while r - s + l * k <= i:
                x = r - s + l * k
                if x >= 0:
                    total += l * comb(i, x)
                l += 1
            row.append(total)
        rows.append(tuple(row))
    return ExactMatrix(tuple(rows))


def wendt(k: int) -> ExactMatrix:
    """Wendt's matrix W_k = Circ(C(k,0), …, C(k,k-1)) = C_k - I_k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return circulant([comb(k, t) for t in range(k)])


def _bareiss(m: ExactMatrix) -> Tuple[int, int, List[List[int]]]:
    """
    Fraction-free forward elimination.

    Returns:
        (rank, sign of the row permutation, eliminated rows)
    """
    a = [list(row) for row in m.entries]
    n_rows, n_cols = m.shape
    rank, prev, sign = 0, 1, 1
    for c in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            sign = -sign
        p = a[rank][c]
        for r in range(rank + 1, n_rows):
            for s in range(c + 1, n_cols):
                a[r][s] = (p * a[r][s] - a[r][c] * a[rank][s]) // prev
            a[r][c] = 0
        prev = p
        rank += 1
    return rank, sign, a


def exact_rank(m: ExactMatrix) -> int:
    rank, _, _ = _bareiss(m)
    return rank


def exact_det(m: ExactMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.shape} matrix")
    if m.rows == 0:
        return 1
    rank, sign, a = _bareiss(m)
    if rank < m.rows:
        return 0
    return sign * a[-1][-1]


def _content_reduced(vector: Sequence[Fraction]) -> Tuple[int, ...]:
    denominator = reduce(lambda x, y: x * y // gcd(x, y), (v.denominator for v in vector), 1)
    ints = [int(v * denominator) for v in vector]
    content = reduce(gcd, (abs(x) for x in ints), 0) or 1
    ints = [x // content for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def exact_kernel(m: ExactMatrix) -> List[Tuple[int, ...]]:
    """
    Basis of the right kernel {x : M x = 0} over the rationals.

    Elimination runs on Fractions (reduced row echelon form); each basis vector
    is then scaled to integers and divided by its content.
    """
    n_rows, n_cols = m.shape
    a = [[Fraction(x) for x in row] for row in m.entries]
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row_index, pc in enumerate(pivots):
            v[pc] = -a[row_index][f]
        basis.append(_content_reduced(v))
    logging.debug(f"kernel of {m.shape} matrix has dimension {len(basis)}")
    return basis
