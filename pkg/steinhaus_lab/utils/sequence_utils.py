import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Tuple, Union

from .matrix_utils import circulant_c, row_times, toeplitz_t
from .residue_utils import Residue, is_invertible


def _reduce(values: Iterable[int], modulus: Optional[int]) -> Tuple[int, ...]:
    if modulus is None:
        return tuple(int(v) for v in values)
    return tuple(int(v) % modulus for v in values)


def _check_modulus(modulus: Optional[int]):
    if modulus is not None and modulus < 1:
        raise ValueError(f"modulus must be a positive integer, got {modulus}")


@dataclass(frozen=True)
class FiniteSeq:
    """
    A finite sequence over Z/nZ (`modulus` = n) or over the integers (`modulus` = None).
    """

    terms: Tuple[int, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        _check_modulus(self.modulus)
        object.__setattr__(self, "terms", _reduce(self.terms, self.modulus))

    @property
    def ring(self) -> Union[str, int]:
        return "integers" if self.modulus is None else self.modulus

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, j: int) -> int:
        return self.terms[j]

    def residues(self) -> List[Residue]:
        if self.modulus is None:
            raise ValueError("integer sequences have no residues")
        return [Residue(t, self.modulus) for t in self.terms]

    def reversed(self) -> "FiniteSeq":
        return FiniteSeq(self.terms[::-1], self.modulus)

    def reduce(self, modulus: int) -> "FiniteSeq":
        """Projection of an integer sequence into Z/nZ."""
        return FiniteSeq(self.terms, modulus)


@dataclass(frozen=True)
class Weights:
    alpha: Tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) < 1:
            raise ValueError("weights must be a non-empty list")
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))


STANDARD_WEIGHTS = Weights((1, 1))


@dataclass(frozen=True)
class IAPSpec:
    """
    A k-interlaced arithmetic progression IAP(A, D): a_{j0 + jk} = a_{j0} + j·d_{j0}.
    """

    firsts: Tuple[int, ...]
    diffs: Tuple[int, ...]
    modulus: Optional[int] = None

    def __post_init__(self):
        _check_modulus(self.modulus)
        if len(self.firsts) != len(self.diffs) or not self.firsts:
            raise ValueError(
                f"firsts and diffs must be non-empty and of equal length, got {len(self.firsts)} and {len(self.diffs)}"
            )
        object.__setattr__(self, "firsts", _reduce(self.firsts, self.modulus))
        object.__setattr__(self, "diffs", _reduce(self.diffs, self.modulus))

    @property
    def k(self) -> int:
        return len(self.firsts)

    def term(self, j: int) -> int:
        q, j0 = divmod(j, self.k)
        value = self.firsts[j0] + q * self.diffs[j0]
        return value if self.modulus is None else value % self.modulus

    def reduce(self, modulus: int) -> "IAPSpec":
        return IAPSpec(self.firsts, self.diffs, modulus)

    def to_dict(self) -> dict:
        return {
            "firsts": list(self.firsts),
            "diffs": list(self.diffs),
            "modulus": self.modulus,
        }


def derive(s: FiniteSeq) -> FiniteSeq:
    """The derived sequence (a_j + a_{j+1}); a single term derives to the empty sequence."""
    if len(s) < 1:
        raise ValueError("cannot derive an empty sequence")
    t = s.terms
    return FiniteSeq(tuple(t[j] + t[j + 1] for j in range(len(t) - 1)), s.modulus)


def derive_alpha(s: FiniteSeq, w: Weights) -> FiniteSeq:
    k = len(w.alpha)
    if len(s) < k:
        raise ValueError(
            f"sequence of length {len(s)} is shorter than the {k} weights"
        )
    t = s.terms
    return FiniteSeq(
        tuple(
            sum(alpha * t[j + l] for l, alpha in enumerate(w.alpha))
            for j in range(len(t) - k + 1)
        ),
        s.modulus,
    )


def negate(s: FiniteSeq) -> FiniteSeq:
    return FiniteSeq(tuple(-x for x in s.terms), s.modulus)


def is_antisymmetric(s: FiniteSeq) -> bool:
    t, n = s.terms, s.modulus
    m = len(t)
    if n is None:
        return all(t[m - 1 - j] == -t[j] for j in range(m))
    return all((t[m - 1 - j] + t[j]) % n == 0 for j in range(m))


def is_symmetric(s: FiniteSeq) -> bool:
    return s.terms == s.terms[::-1]


def center_condition(s: FiniteSeq) -> bool:
    """
    a_c + a_{m-1-c} = 0 with c = floor((m-1)/2).

    Together with an antisymmetric derived sequence this is equivalent to s
    being antisymmetric. For odd m it reads 2·a_c = 0 on the central term.
    """
    m = len(s)
    if m == 0:
        return True
    c = (m - 1) // 2
    total = s.terms[c] + s.terms[m - 1 - c]
    return total == 0 if s.modulus is None else total % s.modulus == 0


def derive_iap(spec: IAPSpec) -> IAPSpec:
    a, d, k = spec.firsts, spec.diffs, spec.k
    firsts = [a[j] + a[j + 1] for j in range(k - 1)] + [a[k - 1] + a[0] + d[0]]
    diffs = [d[j] + d[(j + 1) % k] for j in range(k)]
    return IAPSpec(tuple(firsts), tuple(diffs), spec.modulus)


def derive_iap_iterated(spec: IAPSpec, i: int) -> IAPSpec:
    """∂^i IAP(A, D) = IAP(A·C_i + D·T_i, D·C_i)."""
    if i < 0:
        raise ValueError(f"number of derivations must be non-negative, got {i}")
    c_i = circulant_c(i, spec.k)
    t_i = toeplitz_t(i, spec.k)
    firsts = tuple(
        x + y for x, y in zip(row_times(spec.firsts, c_i), row_times(spec.diffs, t_i))
    )
    return IAPSpec(firsts, row_times(spec.diffs, c_i), spec.modulus)


def negate_iap(spec: IAPSpec) -> IAPSpec:
    return IAPSpec(
        tuple(-x for x in spec.firsts), tuple(-x for x in spec.diffs), spec.modulus
    )


def iap_window(spec: IAPSpec, j0: int, j1: int) -> FiniteSeq:
    """S[j0, j1] = (a_{j0}, …, a_{j1}); negative indices follow the closed form."""
    if j0 > j1:
        raise ValueError(f"empty window [{j0}, {j1}]")
    return FiniteSeq(tuple(spec.term(j) for j in range(j0, j1 + 1)), spec.modulus)


def orbit_rows(spec: IAPSpec, count: int, j0: int, j1: int) -> List[FiniteSeq]:
    """
    Rows 0..count-1 of the orbit of spec on the columns [j0, j1].

    Row r is obtained by r pointwise derivations of the wider window
    S[j0, j1 + count - 1], then cut back to the requested columns.
    """
    row = iap_window(spec, j0, j1 + count - 1)
    width = j1 - j0 + 1
    rows = []
    for r in range(count):
        rows.append(FiniteSeq(row.terms[:width], spec.modulus))
        if r < count - 1:
            row = derive(row)
    return rows


def _as_int(x: Union[int, Residue]) -> int:
    return x.value if isinstance(x, Residue) else int(x)


def universal_sequence(n: int, d: Union[int, Residue] = 1) -> IAPSpec:
    """
    The universal sequence scaled by d and projected into Z/nZ: IAP((0,-d,d),(d,-2d,d)).
    """
    d = _as_int(d)
    if not is_invertible(Residue(d, n)):
        logging.warning(
            f"d={d} is not invertible mod {n}; balance results do not apply to this orbit"
        )
    return IAPSpec((0, -d, d), (d, -2 * d, d), n)


def thm4_sequence(n: int, a: int, d: int) -> IAPSpec:
    """The antisymmetric family IAP((a,-d,d-a),(d,-2d,d)) in Z/nZ."""
    return IAPSpec((a, -d, d - a), (d, -2 * d, d), n)


def idao_sequence(
    a0: int, a1: int, a2: int, d: int, modulus: Optional[int] = None
) -> IAPSpec:
    """IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ)) with Σ = a0+a1+a2."""
    sigma = a0 + a1 + a2
    return IAPSpec((a0, a1, a2), (d, -2 * d - 3 * sigma, d + 3 * sigma), modulus)


def thm4_derived_closed_form(n: int, a: int, d: int, t: int) -> IAPSpec:
    """∂^t of IAP((a,-d,d-a),(d,-2d,d)) from the three closed forms for t mod 3."""
    i, r = divmod(t, 3)
    sign = -1 if i % 2 else 1
    if r == 0:
        firsts = (a - i * d, -(i + 1) * d, (2 * i + 1) * d - a)
        diffs = (d, -2 * d, d)
    elif r == 1:
        firsts = (a - (2 * i + 1) * d, i * d - a, (i + 2) * d)
        diffs = (-d, -d, 2 * d)
    else:
        firsts = (-(i + 1) * d, (2 * i + 2) * d - a, a - i * d)
        diffs = (-2 * d, d, d)
    return IAPSpec(
        tuple(sign * x for x in firsts), tuple(sign * x for x in diffs), n
    )


def universal_orbit_entry(
    n: int, d: Union[int, Residue], i: int, j: int
) -> Residue:
    """
    Closed form of the cell (i, j) of the universal orbit for i, j >= 0:
    (-1)^i · sum over k of C(k, j+2i-k)·(-1)^k·(k-i)·d.
    """
    if i < 0 or j < 0:
        raise ValueError(f"closed form holds for non-negative indices only, got ({i}, {j})")
    t = j + 2 * i
    total = sum(
        comb(k, t - k) * (-1) ** k * (k - i) for k in range(max(1, (t + 1) // 2), t + 1)
    )
    return Residue((-1) ** i * total * _as_int(d), n)


# (i mod 6, j mod 3) -> (base, row step, column step) as integer combinations
# of a0, a1, a2, d, Σ; row step applies per 6 rows, column step per 3 columns.
def _idao_class_table(a0, a1, a2, d):
    s = a0 + a1 + a2
    p = d + 3 * s
    q = 2 * d + 3 * s
    return {
        (0, 0): (a0, -2 * p, d),
        (0, 1): (a1, -2 * d, -q),
        (0, 2): (a2, 2 * q, p),
        (1, 0): (a0 + a1, -2 * q, -p),
        (1, 1): (a1 + a2, 2 * p, -d),
        (1, 2): (a0 + a2 + d, 2 * d, q),
        (2, 0): (a1 + s, -2 * d, -q),
        (2, 1): (a2 + s + d, 2 * q, p),
        (2, 2): (a0 - 2 * s, -2 * p, d),
        (3, 0): (a1 + a2 + 2 * s + d, 2 * p, -d),
        (3, 1): (a0 + a2 - s + d, 2 * d, q),
        (3, 2): (a0 + a1 - 4 * s - 2 * d, -2 * q, -p),
        (4, 0): (a2 + 2 * s + 2 * d, 2 * q, p),
        (4, 1): (a0 - 4 * s - d, -2 * p, d),
        (4, 2): (a1 - s - 2 * d, -2 * d, -q),
        (5, 0): (a0 + a2 - 2 * s + d, 2 * d, q),
        (5, 1): (a0 + a1 - 5 * s - 3 * d, -2 * q, -p),
        (5, 2): (a1 + a2 + 4 * s + d, 2 * p, -d),
    }


def idao_orbit_entry(
    a0: int,
    a1: int,
    a2: int,
    d: int,
    i: int,
    j: int,
    modulus: Optional[int] = None,
) -> int:
    """
    Cell (i, j) of the (6,3)-interlaced doubly arithmetic orbit of
    IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ)), read from the 18-class table.
    """
    if i < 0:
        raise ValueError(f"row index must be non-negative, got {i}")
    bi, i0 = divmod(i, 6)
    bj, j0 = divmod(j, 3)
    base, row_step, col_step = _idao_class_table(a0, a1, a2, d)[(i0, j0)]
    value = base + bi * row_step + bj * col_step
    return value if modulus is None else value % modulus
