import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .common import fan_out
from .matrix_utils import (
    ExactMatrix,
    block_matrix,
    exact_kernel,
    exact_rank,
    toeplitz_t,
    wendt,
)
from .sequence_utils import IAPSpec, orbit_rows

BLOCK_FORMS = ("display", "proof")


@dataclass(frozen=True)
class IdaoWitness:
    """
    Class table of a (k1, k2)-interlaced doubly arithmetic orbit: for every
    (i0, j0) the base value a_{i0,j0} and the steps added per k1 rows and
    per k2 columns. `depth` and `width` bound the box that was checked.
    """

    k1: int
    k2: int
    class_table: Dict[Tuple[int, int], Tuple[int, int, int]]
    depth: int
    width: int

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "depth": self.depth,
            "width": self.width,
            "classes": [
                {"i0": i0, "j0": j0, "base": base, "rowStep": row, "colStep": col}
                for (i0, j0), (base, row, col) in sorted(self.class_table.items())
            ],
        }


@dataclass(frozen=True)
class IdaoRefutation:
    k1: int
    k2: int
    cell: Tuple[int, int]
    expected: int
    actual: int
    residue_class: Tuple[int, int]
    steps: Tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "cell": list(self.cell),
            "expected": self.expected,
            "actual": self.actual,
            "class": list(self.residue_class),
            "steps": list(self.steps),
        }


def idao_block_matrix(k: int, form: str = "display") -> ExactMatrix:
    """
    The 2k x 2k system whose kernel is the set of column vectors (A; D) with a
    (k, k)-interlaced doubly arithmetic orbit.

    Parameters:
        k: interlacing period
        form: "display" assembles (W², W·Tᵀ ; 0, W); "proof" assembles the
            transposed row conditions D·W = 0 and A·W² + D·T·W = 0.
    """
    if form not in BLOCK_FORMS:
        raise ValueError(f"form must be one of {BLOCK_FORMS}, got {form!r}")
    w = wendt(k)
    t = toeplitz_t(k, k)
    zero = ExactMatrix.zeros(k, k)
    if form == "display":
        return block_matrix([[w @ w, w @ t.T], [zero, w]])
    return block_matrix([[(w @ w).T, (t @ w).T], [zero, w.T]])


def idao_system_solve(k: int, form: str = "display") -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Integer kernel basis of the block system, each element split into (A, D)."""
    system = idao_block_matrix(k, form)
    basis = exact_kernel(system)
    logging.debug(
        f"idao system k={k} ({form}): rank {exact_rank(system)}, kernel dimension {len(basis)}"
    )
    return [(tuple(v[:k]), tuple(v[k:])) for v in basis]


def _solve_job(job):
    k, form = job
    return k, idao_system_solve(k, form)


def idao_solve_batch(
    ks: Sequence[int], form: str = "display", threads: int = 1, progress: bool = False
) -> Dict[int, List[Tuple[Tuple[int, ...], Tuple[int, ...]]]]:
    """Kernel bases for several k, one worker task per k, keyed in the order given."""
    for k in ks:
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
    return dict(fan_out(_solve_job, [(k, form) for k in ks], threads, progress, "kernels"))


def unwrap_period3(firsts, diffs, modulus: Optional[int] = None) -> Optional[IAPSpec]:
    """
    Rewrites a k-IAP (3 | k) as a 3-IAP when its terms are 3-interlaced
    arithmetic, returning None otherwise.
    """
    k = len(firsts)
    if k % 3 or len(diffs) != k:
        raise ValueError(f"period must be a multiple of 3 with matching diffs, got {k} and {len(diffs)}")
    big = IAPSpec(tuple(firsts), tuple(diffs), modulus)
    small = IAPSpec(
        tuple(big.term(j) for j in range(3)),
        tuple(big.term(j + 3) - big.term(j) for j in range(3)),
        modulus,
    )
    if all(big.term(j) == small.term(j) for j in range(-2 * k, 3 * k)):
        return small
    return None


def matches_idao_family(spec: IAPSpec) -> bool:
    """True when spec is IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ)) for some a0, a1, a2, d."""
    if spec.k != 3:
        return False
    a0, a1, a2 = spec.firsts
    d0, d1, d2 = spec.diffs
    sigma = a0 + a1 + a2
    expected = (d0, -2 * d0 - 3 * sigma, d0 + 3 * sigma)
    if spec.modulus is None:
        return (d0, d1, d2) == expected
    return all((x - y) % spec.modulus == 0 for x, y in zip((d0, d1, d2), expected))


def idao_verify(
    spec: IAPSpec, k1: int, k2: int, depth: int = 4, width: int = 4
) -> Union[IdaoWitness, IdaoRefutation]:
    """
    Checks a_{i0+i·k1, j0+j·k2} = a_{i0,j0} + i·rowStep + j·colStep on every
    orbit cell with 0 <= row < depth·k1 and |column| < width·k2.

    Returns:
        IdaoWitness with the class table, or IdaoRefutation naming the first
        violating cell in row-major order.

    Raises:
        ValueError: depth or width below 2, or non-positive periods.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError(f"interlacing periods must be positive, got ({k1}, {k2})")
    if depth < 2 or width < 2:
        raise ValueError(
            f"depth and width must be at least 2 to fix both steps, got ({depth}, {width})"
        )
    n = spec.modulus
    j_lo, j_hi = -width * k2 + 1, width * k2 - 1
    rows = orbit_rows(spec, depth * k1, j_lo, j_hi)

    def cell(i: int, j: int) -> int:
        return rows[i].terms[j - j_lo]

    def same(x: int, y: int) -> bool:
        return x == y if n is None else (x - y) % n == 0

    table = {}
    for i0 in range(k1):
        for j0 in range(k2):
            base = cell(i0, j0)
            table[(i0, j0)] = (base, cell(i0 + k1, j0) - base, cell(i0, j0 + k2) - base)

    for i in range(depth * k1):
        for j in range(j_lo, j_hi + 1):
            qi, i0 = divmod(i, k1)
            qj, j0 = divmod(j, k2)
            base, row_step, col_step = table[(i0, j0)]
            expected = base + qi * row_step + qj * col_step
            if n is not None:
                expected %= n
            if not same(expected, cell(i, j)):
                logging.debug(f"({k1},{k2})-IDAO check fails at cell ({i}, {j})")
                return IdaoRefutation(k1, k2, (i, j), expected, cell(i, j), (i0, j0), (qi, qj))
    return IdaoWitness(k1, k2, table, depth, width)
