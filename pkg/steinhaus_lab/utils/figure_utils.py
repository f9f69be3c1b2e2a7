import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from jsonschema import validate

from .common import FIGURE_SCHEMA
from .residue_utils import (
    MultiplicityTable,
    Residue,
    is_balanced,
    multiplicity_of,
)
from .sequence_utils import (
    FiniteSeq,
    IAPSpec,
    STANDARD_WEIGHTS,
    Weights,
    derive_alpha,
    derive_iap_iterated,
    iap_window,
)


class FigureKind(str, Enum):
    STEINHAUS_TRIANGLE = "triangle"
    STEINHAUS_TRAPEZOID = "trapezoid"
    PASCAL_TRIANGLE = "pascal"
    PASCAL_TRAPEZOID = "pascal-trapezoid"
    LOZENGE = "lozenge"
    DAT = "dat"
    ALPHA_TRIANGLE = "alpha-triangle"


ORBIT_KINDS = (
    FigureKind.STEINHAUS_TRIANGLE,
    FigureKind.STEINHAUS_TRAPEZOID,
    FigureKind.PASCAL_TRIANGLE,
    FigureKind.PASCAL_TRAPEZOID,
    FigureKind.LOZENGE,
)


@dataclass(frozen=True)
class Figure:
    """
    A positioned multiset of Z/nZ: row i holds the cells (i, 0), (i, 1), ….

    Pascal triangles and trapezoids store their rows top to base, so row
    widths grow; every other kind stores shrinking rows.
    """

    kind: FigureKind
    modulus: int
    rows: Tuple[Tuple[int, ...], ...]
    params: Dict = field(default_factory=dict, hash=False)

    @property
    def cardinality(self) -> int:
        return sum(len(row) for row in self.rows)

    @property
    def widths(self) -> List[int]:
        return [len(row) for row in self.rows]

    @property
    def cells(self) -> Dict[Tuple[int, int], Residue]:
        return {
            (i, j): Residue(v, self.modulus)
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
        }

    def values(self) -> Iterator[int]:
        for row in self.rows:
            yield from row

    def multiplicity(self) -> MultiplicityTable:
        return multiplicity_of(self.values(), self.modulus)

    def is_balanced(self) -> bool:
        return is_balanced(self.multiplicity())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "modulus": self.modulus,
            "params": dict(self.params),
            "rows": [list(row) for row in self.rows],
        }


def cardinality(kind: Union[FigureKind, str], m: int, h: Optional[int] = None) -> int:
    """
    Number of cells of a figure; for Pascal figures and lozenges `m` is the
    height, the generating sequence having length 2m - 1.
    """
    kind = FigureKind(kind)
    if kind in (FigureKind.STEINHAUS_TRAPEZOID, FigureKind.PASCAL_TRAPEZOID):
        if h is None:
            raise ValueError(f"{kind.value} needs a height")
        return h * (2 * m - h + 1) // 2
    if kind == FigureKind.LOZENGE:
        return m * m
    return comb(m + 1, 2)


def derived_rows(terms: Sequence[int], modulus: int, count: int) -> List[Tuple[int, ...]]:
    """The first `count` rows of the Steinhaus triangle generated by `terms`."""
    row = np.asarray(terms, dtype=np.int64) % modulus
    rows = []
    for _ in range(count):
        rows.append(tuple(row.tolist()))
        row = (row[:-1] + row[1:]) % modulus
    return rows


def _require_modulus(s: FiniteSeq) -> int:
    if s.modulus is None:
        raise ValueError("figures are built over Z/nZ; reduce the sequence first")
    return s.modulus


def _pascal_height(s: FiniteSeq) -> int:
    if len(s) % 2 == 0:
        raise ValueError(f"Pascal figures need an odd-length sequence, got {len(s)}")
    return (len(s) + 1) // 2


def steinhaus_triangle(s: FiniteSeq) -> Figure:
    n = _require_modulus(s)
    m = len(s)
    if m < 1:
        raise ValueError("a Steinhaus triangle needs a non-empty sequence")
    rows = derived_rows(s.terms, n, m)
    return Figure(FigureKind.STEINHAUS_TRIANGLE, n, tuple(rows), {"order": m})


def steinhaus_trapezoid(s: FiniteSeq, h: int) -> Figure:
    n = _require_modulus(s)
    m = len(s)
    if not 1 <= h <= m:
        raise ValueError(f"height {h} out of range [1, {m}]")
    rows = derived_rows(s.terms, n, h)
    return Figure(
        FigureKind.STEINHAUS_TRAPEZOID, n, tuple(rows), {"order": m, "height": h}
    )


def pascal_triangle(s: FiniteSeq) -> Figure:
    """
    Δs: row i is the window ∂^i s[m-1-i, m-1] of length i + 1, so the apex
    sits over the central term of s.
    """
    n = _require_modulus(s)
    m = _pascal_height(s)
    full = derived_rows(s.terms, n, m)
    rows = tuple(full[i][m - 1 - i : m] for i in range(m))
    return Figure(FigureKind.PASCAL_TRIANGLE, n, rows, {"order": len(s), "height": m})


def pascal_trapezoid(s: FiniteSeq, h: int) -> Figure:
    m = _pascal_height(s)
    if not 1 <= h <= m:
        raise ValueError(f"height {h} out of range [1, {m}]")
    return trapezoid_from(pascal_triangle(s), h)


def trapezoid_from(f: Figure, h: int) -> Figure:
    """
    Cuts a trapezoid of height h out of a Steinhaus triangle (its first h rows)
    or a Pascal triangle (its last h rows).
    """
    m = len(f.rows)
    if not 1 <= h <= m:
        raise ValueError(f"height {h} out of range [1, {m}]")
    if f.kind == FigureKind.STEINHAUS_TRIANGLE:
        return Figure(
            FigureKind.STEINHAUS_TRAPEZOID,
            f.modulus,
            f.rows[:h],
            {"order": m, "height": h},
        )
    if f.kind == FigureKind.PASCAL_TRIANGLE:
        return Figure(
            FigureKind.PASCAL_TRAPEZOID,
            f.modulus,
            f.rows[m - h :],
            {"order": 2 * m - 1, "height": h},
        )
    raise ValueError(f"no trapezoid can be cut from a {f.kind.value}")


def lozenge(s: FiniteSeq) -> Figure:
    """◊s = Δs ⊎ ∇∂^m s, stored as the m Pascal rows followed by m - 1 Steinhaus rows."""
    n = _require_modulus(s)
    m = _pascal_height(s)
    full = derived_rows(s.terms, n, len(s))
    rows = tuple(full[i][m - 1 - i : m] for i in range(m)) + tuple(full[m:])
    return Figure(FigureKind.LOZENGE, n, rows, {"order": len(s), "height": m})


def dat(
    a: Union[int, Residue],
    d1: Union[int, Residue],
    d2: Union[int, Residue],
    m: int,
    modulus: Optional[int] = None,
) -> Figure:
    """DAT(a, d1, d2, m) = {a + i·d1 + j·d2 | 0 <= i <= m-1, 0 <= j <= m-1-i}."""
    if modulus is None:
        moduli = {x.modulus for x in (a, d1, d2) if isinstance(x, Residue)}
        if len(moduli) != 1:
            raise ValueError("a modulus is required for a DAT")
        modulus = moduli.pop()
    a, d1, d2 = (x.value if isinstance(x, Residue) else int(x) for x in (a, d1, d2))
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    j = np.arange(m, dtype=np.int64)
    rows = tuple(
        tuple(((a + i * d1 + j[: m - i] * d2) % modulus).tolist()) for i in range(m)
    )
    return Figure(
        FigureKind.DAT,
        modulus,
        rows,
        {"order": m, "a": a % modulus, "d1": d1 % modulus, "d2": d2 % modulus},
    )


def rot120(s: FiniteSeq) -> FiniteSeq:
    """(Σ_{k<=j} C(j,k)·a_{m-1-k})_j: the right side of ∇s read downwards."""
    m = len(s)
    if m < 1:
        raise ValueError("cannot rotate an empty sequence")
    t = s.terms
    return FiniteSeq(
        tuple(sum(comb(j, k) * t[m - 1 - k] for k in range(j + 1)) for j in range(m)),
        s.modulus,
    )


def rot240(s: FiniteSeq) -> FiniteSeq:
    """(Σ_{k<=m-1-j} C(m-1-j,k)·a_k)_j: the left side of ∇s read upwards."""
    m = len(s)
    if m < 1:
        raise ValueError("cannot rotate an empty sequence")
    t = s.terms
    return FiniteSeq(
        tuple(
            sum(comb(m - 1 - j, k) * t[k] for k in range(m - j)) for j in range(m)
        ),
        s.modulus,
    )


def alpha_steinhaus_triangle(s: FiniteSeq, w: Weights = STANDARD_WEIGHTS) -> Figure:
    n = _require_modulus(s)
    if len(w.alpha) != 2:
        raise ValueError(f"alpha-triangles need exactly two weights, got {len(w.alpha)}")
    if len(s) < 1:
        raise ValueError("an alpha-triangle needs a non-empty sequence")
    rows = [s.terms]
    row = s
    while len(row) > 1:
        row = derive_alpha(row, w)
        rows.append(row.terms)
    return Figure(
        FigureKind.ALPHA_TRIANGLE,
        n,
        tuple(rows),
        {"order": len(s), "alpha": list(w.alpha)},
    )


def anti_diagonal(f: Figure, j: int) -> FiniteSeq:
    """AD_j = (a_{0,j}, a_{1,j-1}, …, a_{j,0}) of a Steinhaus triangle."""
    if f.kind != FigureKind.STEINHAUS_TRIANGLE:
        raise ValueError(f"anti-diagonals are read on Steinhaus triangles, not {f.kind.value}")
    if not 0 <= j < len(f.rows):
        raise ValueError(f"anti-diagonal {j} outside a triangle of order {len(f.rows)}")
    return FiniteSeq(tuple(f.rows[i][j - i] for i in range(j + 1)), f.modulus)


def figure_from_orbit(
    spec: IAPSpec,
    kind: Union[FigureKind, str],
    row: int,
    j0: int,
    m: int,
    h: Optional[int] = None,
) -> Figure:
    """
    Builds a figure whose generating sequence is the window of the orbit row
    `row` starting at column j0 (length m, or 2m - 1 for Pascal figures and
    lozenges).
    """
    kind = FigureKind(kind)
    derived = derive_iap_iterated(spec, row) if row else spec
    if kind in (FigureKind.STEINHAUS_TRIANGLE, FigureKind.STEINHAUS_TRAPEZOID):
        window = iap_window(derived, j0, j0 + m - 1)
    else:
        window = iap_window(derived, j0, j0 + 2 * m - 2)
    if kind not in ORBIT_KINDS:
        raise ValueError(f"{kind.value} figures are not orbit figures")
    figure = build_figure(kind, window.modulus, window.terms, h)
    return replace(figure, params={**figure.params, "row": row, "column": j0})


def render(f: Figure, format: str = "text") -> str:
    """
    Text: one line per row, each row indented by (widest row - row width)
    half-cells so the hexagonal offset shows. JSON: {kind, modulus, params, rows}.
    """
    if format == "json":
        return json.dumps(f.to_dict(), sort_keys=True)
    if format != "text":
        raise ValueError(f"unknown render format {format!r}")
    if not f.rows:
        return ""
    w = len(str(f.modulus - 1))
    cell = w + 1 if (w + 1) % 2 == 0 else w + 2
    separator = " " * (cell - w)
    widest = max(f.widths)
    lines = []
    for row in f.rows:
        indent = " " * ((widest - len(row)) * cell // 2)
        lines.append(indent + separator.join(str(v).rjust(w) for v in row))
    return "\n".join(lines) + "\n"


def parse_figure(document: Union[str, dict]) -> Figure:
    """Rebuilds a Figure from its JSON rendering; raises jsonschema.ValidationError on bad input."""
    data = json.loads(document) if isinstance(document, str) else document
    validate(instance=data, schema=FIGURE_SCHEMA)
    n = data["modulus"]
    for row in data["rows"]:
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"cell value {v} is not a canonical residue mod {n}")
    logging.debug(f"parsed {data['kind']} figure with {len(data['rows'])} rows")
    return Figure(
        FigureKind(data["kind"]),
        n,
        tuple(tuple(row) for row in data["rows"]),
        dict(data["params"]),
    )


def build_figure(
    kind: Union[FigureKind, str],
    modulus: int,
    sequence: Optional[Sequence[int]] = None,
    height: Optional[int] = None,
    a: Optional[int] = None,
    d1: Optional[int] = None,
    d2: Optional[int] = None,
    order: Optional[int] = None,
    weights: Optional[Sequence[int]] = None,
) -> Figure:
    """
    Builds any figure kind from flat parameters: a generating sequence for
    the orbit figures, (a, d1, d2, order) for a DAT.

    Raises:
        ValueError: If a parameter the kind needs is missing.
    """
    kind = FigureKind(kind)
    if kind == FigureKind.DAT:
        if None in (a, d1, d2, order):
            raise ValueError("a DAT needs a, d1, d2 and order")
        return dat(a, d1, d2, order, modulus)
    if sequence is None:
        raise ValueError(f"a {kind.value} needs a generating sequence")
    s = FiniteSeq(tuple(sequence), modulus)
    if kind in (FigureKind.STEINHAUS_TRAPEZOID, FigureKind.PASCAL_TRAPEZOID) and height is None:
        raise ValueError(f"a {kind.value} needs a height")
    builders = {
        FigureKind.STEINHAUS_TRIANGLE: lambda: steinhaus_triangle(s),
        FigureKind.STEINHAUS_TRAPEZOID: lambda: steinhaus_trapezoid(s, height),
        FigureKind.PASCAL_TRIANGLE: lambda: pascal_triangle(s),
        FigureKind.PASCAL_TRAPEZOID: lambda: pascal_trapezoid(s, height),
        FigureKind.LOZENGE: lambda: lozenge(s),
        FigureKind.ALPHA_TRIANGLE: lambda: alpha_steinhaus_triangle(
            s, Weights(tuple(weights)) if weights else STANDARD_WEIGHTS
        ),
    }
    return builders[kind]()
