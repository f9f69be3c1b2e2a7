import json
import logging
import math
import time
from dataclasses import dataclass
from math import comb, factorial
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from jsonschema import validate
from tqdm import tqdm

from .common import TETRA_SCHEMA
from .data_model import SearchReport
from .residue_utils import MultiplicityTable, Residue, is_balanced, multiplicity_of

TETRA_KINDS = ("steinhaus", "pascal")


@dataclass(frozen=True)
class TriangleSlice:
    """
    Triangular array of residues: row i' holds the cells (i', 0), …, (i', m-1-i').
    """

    modulus: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        m = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != m - i:
                raise ValueError(f"row {i} of a size-{m} slice must hold {m - i} cells, got {len(row)}")
        object.__setattr__(
            self, "rows", tuple(tuple(int(v) % self.modulus for v in row) for row in self.rows)
        )

    @classmethod
    def from_cells(cls, modulus: int, m: int, values: Sequence[int]) -> "TriangleSlice":
        """Builds a slice from its C(m+1,2) cells listed row after row."""
        if len(values) != comb(m + 1, 2):
            raise ValueError(f"a size-{m} slice has {comb(m + 1, 2)} cells, got {len(values)}")
        rows, k = [], 0
        for i in range(m):
            rows.append(tuple(values[k : k + m - i]))
            k += m - i
        return cls(modulus, tuple(rows))

    @classmethod
    def from_flat(cls, modulus: int, values: Sequence[int]) -> "TriangleSlice":
        """Infers the size m from the C(m+1,2) cells listed row after row."""
        m = (math.isqrt(8 * len(values) + 1) - 1) // 2
        return cls.from_cells(modulus, m, values)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def cells(self) -> Dict[Tuple[int, int], Residue]:
        return {
            (i, j): Residue(v, self.modulus)
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
        }

    def values(self):
        for row in self.rows:
            yield from row

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def _dense(self) -> np.ndarray:
        m = self.size
        arr = np.zeros((m, m), dtype=np.int64)
        for i, row in enumerate(self.rows):
            arr[i, : len(row)] = row
        return arr


@dataclass(frozen=True)
class Tetrahedron:
    """Floors of a Steinhaus tetrahedron (base first) or a Pascal tetrahedron (apex first)."""

    modulus: int
    kind: str
    floors: Tuple[TriangleSlice, ...]

    @property
    def base(self) -> TriangleSlice:
        return self.floors[0] if self.kind == "steinhaus" else self.floors[-1]

    @property
    def height(self) -> int:
        return len(self.floors)

    @property
    def cardinality(self) -> int:
        return sum(comb(f.size + 1, 2) for f in self.floors)

    def values(self):
        for floor in self.floors:
            yield from floor.values()

    def multiplicity(self) -> MultiplicityTable:
        return multiplicity_of(self.values(), self.modulus)

    def is_balanced(self) -> bool:
        return is_balanced(self.multiplicity())

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "kind": self.kind,
            "floors": [floor.to_lists() for floor in self.floors],
        }


def derive_2d(t: TriangleSlice) -> TriangleSlice:
    """One step of the rule a_{i,j} + a_{i,j+1} + a_{i+1,j}; a size-1 slice derives to the empty slice."""
    m = t.size
    if m < 1:
        raise ValueError("cannot derive an empty slice")
    if m == 1:
        return TriangleSlice(t.modulus, ())
    arr = t._dense()
    nxt = (arr[:-1, :-1] + arr[:-1, 1:] + arr[1:, :-1]) % t.modulus
    return TriangleSlice(t.modulus, tuple(tuple(nxt[i, : m - 1 - i].tolist()) for i in range(m - 1)))


def trinomial(k: int, i: int, j: int) -> int:
    """k! / (i! j! (k-i-j)!), zero outside 0 <= i, j and i + j <= k."""
    if k < 0 or i < 0 or j < 0 or i + j > k:
        return 0
    return factorial(k) // (factorial(i) * factorial(j) * factorial(k - i - j))


def steinhaus_tetrahedron(base: TriangleSlice) -> Tetrahedron:
    if base.size < 1:
        raise ValueError("a Steinhaus tetrahedron needs a non-empty base")
    floors = [base]
    while floors[-1].size > 1:
        floors.append(derive_2d(floors[-1]))
    return Tetrahedron(base.modulus, "steinhaus", tuple(floors))


def pascal_tetrahedron(base: TriangleSlice) -> Tetrahedron:
    """
    The central tetrahedron of height m inside the Steinhaus tetrahedron over a
    base of size 3m - 2, listed from its apex, the base cell (m-1, m-1), down:
    floor f holds the cells (m-1-a, m-1-b), a + b <= f, of derivation level f.
    """
    size = base.size
    if size < 1 or (size + 2) % 3:
        raise ValueError(f"a Pascal tetrahedron needs a base of size 3m-2, got {size}")
    m = (size + 2) // 3
    c = m - 1
    floors = []
    level = base
    for f in range(m):
        rows = tuple(
            tuple(level.rows[c - a][c - b] for b in range(f + 1 - a)) for a in range(f + 1)
        )
        floors.append(TriangleSlice(base.modulus, rows))
        if f < m - 1:
            level = derive_2d(level)
    return Tetrahedron(base.modulus, "pascal", tuple(floors))


def tetra_cell_closed_form(base: TriangleSlice, f: int, i: int, j: int) -> int:
    """Cell (i, j) of floor f of the Steinhaus tetrahedron: Σ trinomial(f; i', j')·a_{i+i', j+j'}."""
    m = base.size
    if f < 0 or i < 0 or j < 0 or i + j > m - 1 - f:
        raise ValueError(f"no cell ({i}, {j}) on floor {f} of a size-{m} tetrahedron")
    total = 0
    for di in range(f + 1):
        for dj in range(f + 1 - di):
            total += trinomial(f, di, dj) * base.rows[i + di][j + dj]
    return total % base.modulus


def tetra_apex_closed_form(base: TriangleSlice) -> int:
    return tetra_cell_closed_form(base, base.size - 1, 0, 0)


def render_tetrahedron(t: Tetrahedron, format: str = "text") -> str:
    if format == "json":
        return json.dumps(t.to_dict(), sort_keys=True)
    if format != "text":
        raise ValueError(f"unknown render format {format!r}")
    w = len(str(t.modulus - 1))
    lines = []
    for f, floor in enumerate(t.floors):
        lines.append(f"floor {f}:")
        for row in floor.rows:
            lines.append(" ".join(str(v).rjust(w) for v in row))
    return "\n".join(lines) + "\n"


def parse_tetrahedron(document) -> Tetrahedron:
    data = json.loads(document) if isinstance(document, str) else document
    validate(instance=data, schema=TETRA_SCHEMA)
    n = data["modulus"]
    floors = tuple(TriangleSlice(n, tuple(tuple(r) for r in floor)) for floor in data["floors"])
    return Tetrahedron(n, data.get("kind", "steinhaus"), floors)


def _tetra_cells(kind: str, m: int) -> Tuple[int, List[Tuple[int, int, int]]]:
    """Base size and the (floor, i, j) Steinhaus coordinates of every cell of the figure."""
    if kind == "steinhaus":
        cells = [(f, i, j) for f in range(m) for i in range(m - f) for j in range(m - f - i)]
        return m, cells
    c = m - 1
    cells = [(f, c - a, c - b) for f in range(m) for a in range(f + 1) for b in range(f + 1 - a)]
    return 3 * m - 2, cells


class BaseSliceSearch:
    """
    Depth-first enumeration of base slices, cells assigned by anti-diagonal.
    Only the base cells some tetrahedron cell reads with a non-zero weight are
    enumerated; the others are fixed to 0, so every base found is a distinct
    figure. A tetrahedron cell is counted as soon as the last base cell it
    depends on is assigned; branches stop when a residue exceeds |figure| / n.
    """

    def __init__(self, modulus: int, m: int, kind: str = "steinhaus", max_found: int = 10):
        if kind not in TETRA_KINDS:
            raise ValueError(f"tetrahedron kind must be one of {TETRA_KINDS}, got {kind!r}")
        self.n = modulus
        size, cells = _tetra_cells(kind, m)
        reads = []
        for f, i, j in cells:
            weights = tuple(
                ((i + di, j + dj), trinomial(f, di, dj) % modulus)
                for di in range(f + 1)
                for dj in range(f + 1 - di)
            )
            reads.append(tuple((cell, w) for cell, w in weights if w))
        order = sorted({cell for weights in reads for cell, _ in weights}, key=lambda c: (c[0] + c[1], c[0]))
        position = {cell: p for p, cell in enumerate(order)}
        self.size = size
        self.order = order
        self.length = len(order)
        self.free_cells = comb(size + 1, 2) - len(order)
        self.target = len(cells) // modulus
        self.triggers: List[List[Tuple[Tuple[int, int], ...]]] = [[] for _ in order]
        for weights in reads:
            placed = tuple((position[cell], w) for cell, w in weights)
            self.triggers[max(p for p, _ in placed)].append(placed)
        self.max_found = max_found
        self.examined = 0
        self.found: List[Tuple[int, ...]] = []
        self.found_total = 0
        self.complete = True

    def push(self, values: List[int], counts: List[int], a: int) -> bool:
        values.append(a)
        touched = []
        for weights in self.triggers[len(values) - 1]:
            v = sum(values[p] * w for p, w in weights) % self.n
            counts[v] += 1
            touched.append(v)
            if counts[v] > self.target:
                for t in touched:
                    counts[t] -= 1
                values.pop()
                return False
        return True

    def pop(self, values: List[int], counts: List[int]):
        for weights in self.triggers[len(values) - 1]:
            counts[sum(values[p] * w for p, w in weights) % self.n] -= 1
        values.pop()

    def base_of(self, values: Sequence[int]) -> Tuple[int, ...]:
        """Assignment in anti-diagonal order to base cells listed row after row, unread cells 0."""
        by_cell = dict(zip(self.order, values))
        return tuple(by_cell.get((i, j), 0) for i in range(self.size) for j in range(self.size - i))

    def run(self, prefix: Sequence[int] = (), budget: Optional[int] = None):
        values, counts = [], [0] * self.n
        for a in prefix:
            if not self.push(values, counts, a):
                raise ValueError(f"prefix {tuple(prefix)} is already pruned")
        self._explore(values, counts, budget)
        return self

    def _explore(self, values, counts, budget):
        if len(values) == self.length:
            self.found_total += 1
            if len(self.found) < self.max_found:
                self.found.append(self.base_of(values))
            return
        for a in range(self.n):
            if budget is not None and self.examined >= budget:
                self.complete = False
                return
            self.examined += 1
            if self.push(values, counts, a):
                self._explore(values, counts, budget)
                self.pop(values, counts)
            if not self.complete:
                return

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        out = []

        def walk(values, counts):
            if len(values) == depth:
                out.append(tuple(values))
                return
            for a in range(self.n):
                self.examined += 1
                if self.push(values, counts, a):
                    walk(values, counts)
                    self.pop(values, counts)

        walk([], [0] * self.n)
        return out


def _tetra_task(job):
    n, m, kind, prefix, budget, max_found = job
    engine = BaseSliceSearch(n, m, kind, max_found).run(prefix, budget)
    return engine.examined, engine.found, engine.found_total, engine.complete


def search_balanced_tetra(
    n: int,
    m: int,
    kind: str = "steinhaus",
    budget: Optional[int] = None,
    threads: int = 1,
    max_found: int = 10,
    progress: bool = False,
) -> SearchReport:
    """
    Enumerates every base of a Steinhaus (size m) or Pascal (size 3m - 2)
    tetrahedron of height m in Z/nZ looking for balanced ones.
    """
    if n < 1 or m < 1:
        raise ValueError(f"modulus and height must be positive, got {n} and {m}")
    if kind not in TETRA_KINDS:
        raise ValueError(f"tetrahedron kind must be one of {TETRA_KINDS}, got {kind!r}")
    start = time.perf_counter()
    total = comb(m + 2, 3)
    report = SearchReport(
        claim=f"balanced {kind} tetrahedron of height {m} in Z/{n}Z",
        parameters={"modulus": n, "kind": kind, "height": m, "budget": budget, "cardinality": total},
        admissible=total % n == 0,
    )
    if not report.admissible:
        logging.warning(f"{report.claim}: cardinality {total} is not divisible by {n}, none can exist")
        report.exhaustive = True
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        return report

    logging.info(f"searching for a {report.claim}")
    planner = BaseSliceSearch(n, m, kind, max_found)
    if planner.free_cells:
        report.symmetry_reductions.append(
            f"{planner.free_cells} base cells read by no figure cell fixed to 0"
        )
    if threads > 1:
        depth = 1
        while n > 1 and n**depth < 64 and depth < planner.length:
            depth += 1
        tasks = planner.prefixes(depth)
        per_task = None if budget is None else max(1, math.ceil(budget / max(1, len(tasks))))
        jobs = [(n, m, kind, prefix, per_task, max_found) for prefix in tasks]
        with Pool(processes=threads) as pool:
            results = list(tqdm(pool.imap(_tetra_task, jobs), total=len(jobs), desc="bases", disable=not progress))
        report.examined = planner.examined
        report.exhaustive = True
        for examined, found, found_total, complete in results:
            report.examined += examined
            report.found_total += found_total
            report.found.extend(found[: max_found - len(report.found)])
            report.exhaustive = report.exhaustive and complete
    else:
        engine = planner.run((), budget)
        report.examined = engine.examined
        report.found = engine.found
        report.found_total = engine.found_total
        report.exhaustive = engine.complete
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    if not report.exhaustive:
        logging.warning(f"{report.claim}: budget of {budget} exhausted after {report.examined} nodes")
    logging.info(f"{report.claim}: {report.found_total} found, {report.examined} nodes")
    return report
