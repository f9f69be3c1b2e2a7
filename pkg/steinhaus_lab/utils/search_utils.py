import logging
import math
import time
from itertools import product
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

from tqdm import tqdm

from .data_model import SearchReport, SearchSpec, SearchStrategy
from .figure_utils import FigureKind, build_figure

PREFIX_TASKS = 64


def figure_rows_by_diagonal(kind: FigureKind, m: int, h: Optional[int]) -> List[Tuple[int, ...]]:
    """
    For every anti-diagonal k of the orbit of a generating sequence, the rows i
    such that the cell (i, k - i) belongs to the figure.
    """
    kind = FigureKind(kind)
    if kind in (FigureKind.STEINHAUS_TRIANGLE, FigureKind.STEINHAUS_TRAPEZOID):
        length = m
        top = m if kind == FigureKind.STEINHAUS_TRIANGLE else h

        def inside(i, j):
            return i < top and j < m - i

    else:
        length = 2 * m - 1
        c = m - 1
        first = 0 if kind != FigureKind.PASCAL_TRAPEZOID else m - h

        def inside(i, j):
            if first <= i < m and c - i <= j <= c:
                return True
            return kind == FigureKind.LOZENGE and m <= i and j < length - i

    return [tuple(i for i in range(k + 1) if inside(i, k - i)) for k in range(length)]


class SequenceSearch:
    """
    Depth-first enumeration of generating sequences. Appending the term at
    position k fixes the whole anti-diagonal k of the orbit, so the
    multiplicity counts of the figure cells on it are updated at once and a
    branch is cut as soon as some residue exceeds |figure| / n.
    """

    def __init__(
        self,
        modulus: int,
        kind: FigureKind,
        order: int,
        height: Optional[int] = None,
        negation_halving: bool = False,
        fixed_point: bool = False,
        max_found: int = 10,
    ):
        self.n = modulus
        self.rows_on = figure_rows_by_diagonal(kind, order, height)
        self.length = len(self.rows_on)
        self.max_row = max(i for rows in self.rows_on for i in rows)
        size = sum(len(rows) for rows in self.rows_on)
        self.target = size // modulus
        self.negation_halving = negation_halving
        self.fixed_point = fixed_point
        self.max_found = max_found
        self.examined = 0
        self.found: List[Tuple[int, ...]] = []
        self.found_total = 0
        self.complete = True

    def choices(self, seq: Sequence[int]) -> Sequence[int]:
        k, n = len(seq), self.n
        if self.fixed_point:
            mirror = self.length - 1 - k
            if mirror < k:
                return ((-seq[mirror]) % n,)
            if mirror == k:
                return tuple(a for a in range(n) if (2 * a) % n == 0)
        if self.negation_halving and not any(seq):
            return range(n // 2 + 1)
        return range(n)

    def push(self, diagonals: List[List[int]], counts: List[int], a: int) -> bool:
        k = len(diagonals)
        n = self.n
        prev = diagonals[-1] if diagonals else []
        diag = [a]
        for i in range(1, min(k, self.max_row) + 1):
            diag.append((prev[i - 1] + diag[i - 1]) % n)
        touched = []
        for i in self.rows_on[k]:
            v = diag[i]
            counts[v] += 1
            touched.append(v)
            if counts[v] > self.target:
                for t in touched:
                    counts[t] -= 1
                return False
        diagonals.append(diag)
        return True

    def pop(self, diagonals: List[List[int]], counts: List[int]):
        k = len(diagonals) - 1
        diag = diagonals.pop()
        for i in self.rows_on[k]:
            counts[diag[i]] -= 1

    def replay(self, prefix: Sequence[int]) -> Tuple[List[int], List[List[int]], List[int]]:
        seq, diagonals, counts = [], [], [0] * self.n
        for a in prefix:
            if not self.push(diagonals, counts, a):
                raise ValueError(f"prefix {tuple(prefix)} is already pruned")
            seq.append(a)
        return seq, diagonals, counts

    def run(self, prefix: Sequence[int] = (), budget: Optional[int] = None):
        seq, diagonals, counts = self.replay(prefix)
        self._explore(seq, diagonals, counts, budget)
        return self

    def _explore(self, seq, diagonals, counts, budget):
        if len(seq) == self.length:
            self.found_total += 1
            if len(self.found) < self.max_found:
                self.found.append(tuple(seq))
            return
        for a in self.choices(seq):
            if budget is not None and self.examined >= budget:
                self.complete = False
                return
            self.examined += 1
            if self.push(diagonals, counts, a):
                seq.append(a)
                self._explore(seq, diagonals, counts, budget)
                seq.pop()
                self.pop(diagonals, counts)
            if not self.complete:
                return

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        """Surviving prefixes of the given length, in lexicographic order; counts the nodes it visits."""
        out = []

        def walk(seq, diagonals, counts):
            if len(seq) == depth:
                out.append(tuple(seq))
                return
            for a in self.choices(seq):
                self.examined += 1
                if self.push(diagonals, counts, a):
                    seq.append(a)
                    walk(seq, diagonals, counts)
                    seq.pop()
                    self.pop(diagonals, counts)

        walk([], [], [0] * self.n)
        return out


def _engine_for(spec: SearchSpec) -> SequenceSearch:
    return SequenceSearch(
        spec.modulus,
        spec.kind,
        spec.order,
        spec.height,
        negation_halving=spec.negation_halving,
        fixed_point=spec.strategy == SearchStrategy.FIRST_ROW_FIXED_POINT,
        max_found=spec.max_found,
    )


def _search_task(job) -> Tuple[int, List[Tuple[int, ...]], int, bool]:
    spec, prefix, budget = job
    engine = _engine_for(spec).run(prefix, budget)
    logging.debug(f"prefix {prefix}: {engine.examined} nodes, {engine.found_total} found")
    return engine.examined, engine.found, engine.found_total, engine.complete


def prefix_length(n: int, length: int) -> int:
    """Smallest p with n^p >= 64 tasks, capped by the sequence length."""
    p = 1
    while n > 1 and n**p < PREFIX_TASKS:
        p += 1
    return min(length, p)


def _claim(spec: SearchSpec) -> str:
    size = f"order {spec.order}"
    if spec.height is not None:
        size += f", height {spec.height}"
    return f"balanced {spec.kind.value} of {size} in Z/{spec.modulus}Z"


def _reductions(spec: SearchSpec) -> List[str]:
    reductions = []
    if spec.strategy == SearchStrategy.FIRST_ROW_FIXED_POINT:
        reductions.append("antisymmetric generating sequences only (S = -reverse(S))")
    if spec.negation_halving:
        reductions.append("negation: one of S and -S (first non-zero term <= n/2)")
    return reductions


def search_balanced(spec: SearchSpec, threads: int = 1, progress: bool = False) -> SearchReport:
    """
    Enumerates every generating sequence of spec's figure with early pruning.

    Parameters:
        spec: what to search
        threads: worker processes for the prefixParallel strategy
        progress: tqdm bar over the prefix tasks

    Returns:
        SearchReport; exhaustive is False only when the budget ran out.
    """
    start = time.perf_counter()
    report = SearchReport(
        claim=_claim(spec),
        parameters=spec.to_dict(),
        admissible=spec.admissible,
        symmetry_reductions=_reductions(spec),
    )
    if not spec.admissible:
        logging.warning(
            f"{report.claim}: cardinality {spec.cardinality} is not divisible by {spec.modulus}, none can exist"
        )
        report.exhaustive = True
        report.elapsed_ms = (time.perf_counter() - start) * 1000
        return report

    logging.info(f"searching for a {report.claim} ({spec.strategy.value})")
    if spec.strategy == SearchStrategy.PREFIX_PARALLEL:
        planner = _engine_for(spec)
        depth = prefix_length(spec.modulus, planner.length)
        tasks = planner.prefixes(depth)
        report.examined = planner.examined
        report.exhaustive = True
        if tasks:
            per_task = None if spec.budget is None else max(1, math.ceil(spec.budget / len(tasks)))
            jobs = [(spec, prefix, per_task) for prefix in tasks]
            if threads > 1:
                with Pool(processes=threads) as pool:
                    results = list(
                        tqdm(
                            pool.imap(_search_task, jobs),
                            total=len(jobs),
                            desc="prefixes",
                            disable=not progress,
                        )
                    )
            else:
                results = [
                    _search_task(job)
                    for job in tqdm(jobs, desc="prefixes", disable=not progress)
                ]
            for examined, found, found_total, complete in results:
                report.examined += examined
                report.found_total += found_total
                report.found.extend(found[: spec.max_found - len(report.found)])
                report.exhaustive = report.exhaustive and complete
    else:
        engine = _engine_for(spec).run((), spec.budget)
        report.examined = engine.examined
        report.found = engine.found
        report.found_total = engine.found_total
        report.exhaustive = engine.complete

    report.elapsed_ms = (time.perf_counter() - start) * 1000
    if not report.exhaustive:
        logging.warning(f"{report.claim}: budget of {spec.budget} exhausted after {report.examined} nodes")
    logging.info(
        f"{report.claim}: {report.found_total} found, {report.examined} nodes, {report.elapsed_ms:.0f} ms"
    )
    return report


def brute_force_balanced(
    n: int, kind: FigureKind, m: int, h: Optional[int] = None
) -> List[Tuple[int, ...]]:
    """Every balanced generating sequence, found by building each figure in full."""
    kind = FigureKind(kind)
    length = m if kind in (FigureKind.STEINHAUS_TRIANGLE, FigureKind.STEINHAUS_TRAPEZOID) else 2 * m - 1
    return [
        terms
        for terms in product(range(n), repeat=length)
        if build_figure(kind, n, terms, h).is_balanced()
    ]
