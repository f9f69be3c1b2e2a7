import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .common import fan_out
from .data_model import VerificationReport
from .figure_utils import (
    Figure,
    FigureKind,
    anti_diagonal,
    build_figure,
    dat,
    figure_from_orbit,
    steinhaus_triangle,
)
from .residue_utils import Residue, invertible_units, is_invertible
from .sequence_utils import (
    IAPSpec,
    derive_iap,
    derive_iap_iterated,
    idao_sequence,
    iap_window,
    is_antisymmetric,
    is_symmetric,
    negate_iap,
    orbit_rows,
    thm4_derived_closed_form,
    thm4_sequence,
    universal_orbit_entry,
    universal_sequence,
)


@dataclass(frozen=True)
class AdmissibleClasses:
    """Residues (or (m, h) residue pairs for trapezoids) modulo `period` with n | cardinality."""

    modulus: int
    kind: FigureKind
    period: int
    classes: Tuple

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "kind": self.kind.value,
            "period": self.period,
            "classes": [list(c) if isinstance(c, tuple) else c for c in self.classes],
        }


def _require_odd(n: int):
    if n < 1 or n % 2 == 0:
        raise ValueError(f"modulus must be a positive odd number, got {n}")


def admissible_orders(n: int, kind: Union[FigureKind, str]) -> AdmissibleClasses:
    """
    Size classes whose cardinality is divisible by n. Triangle sizes m(m+1)/2
    repeat with period n for odd n and 2n for even n; lozenges m² with period n.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    kind = FigureKind(kind)
    period = n if n % 2 else 2 * n
    if kind == FigureKind.LOZENGE:
        return AdmissibleClasses(
            n, kind, n, tuple(m for m in range(n) if (m * m) % n == 0)
        )
    if kind in (FigureKind.STEINHAUS_TRAPEZOID, FigureKind.PASCAL_TRAPEZOID):
        pairs = tuple(
            (m, h)
            for m, h in product(range(period), repeat=2)
            if (h * (2 * m - h + 1) // 2) % n == 0
        )
        return AdmissibleClasses(n, kind, period, pairs)
    return AdmissibleClasses(
        n, kind, period, tuple(m for m in range(period) if (m * (m + 1) // 2) % n == 0)
    )


def distinct_prime_factors(n: int) -> int:
    count, p = 0, 2
    while p * p <= n:
        if n % p == 0:
            count += 1
            while n % p == 0:
                n //= p
        p += 1
    return count + (1 if n > 1 else 0)


def _coverage(admissible: List[int], covered: Callable[[int], bool]) -> Dict:
    hit = [m for m in admissible if covered(m)]
    return {
        "admissible": len(admissible),
        "covered": len(hit),
        "coveredClasses": hit,
        "fraction": str(Fraction(len(hit), len(admissible))),
    }


def proportion_report(n: int) -> Dict:
    """
    Share of admissible size classes (mod 3n) covered by the universal orbit,
    for triangles, Pascal triangles and lozenges, against the lower bound
    2/(3·2^(ω(n)-1)).
    """
    _require_odd(n)
    omega = distinct_prime_factors(n)
    bound = Fraction(1) if n == 1 else Fraction(2, 3 * 2 ** (omega - 1))
    q = 3 * n
    triangle_classes = [m for m in range(q) if (m * (m + 1) // 2) % n == 0]
    lozenge_classes = [m for m in range(n) if (m * m) % n == 0]
    report = {
        "modulus": n,
        "omega": omega,
        "bound": str(bound),
        "triangle": _coverage(
            triangle_classes, lambda m: m % n == 0 or m % q == q - 1
        ),
        "pascal": _coverage(
            triangle_classes, lambda m: m % n == (n - 1) % n or m % q == 0
        ),
        "lozenge": _coverage(lozenge_classes, lambda m: m % n == 0),
    }
    for kind in ("triangle", "pascal"):
        if Fraction(report[kind]["fraction"]) < bound:
            logging.error(f"n={n}: {kind} coverage {report[kind]['fraction']} is below {bound}")
    return report


def _dat_steps(n: int) -> List[Tuple[int, int]]:
    units = set(invertible_units(n))
    return [
        (d1, d2)
        for d1 in sorted(units)
        for d2 in sorted(units)
        if (d1 - d2) % n in units
    ]


def _default_dat_orders(n: int) -> List[int]:
    return [m for m in (n - 1, n, 2 * n - 1, 2 * n, 3 * n - 1, 3 * n) if m > 0]


def _dat_instance(job) -> VerificationReport:
    claim, n, a, steps, m_values = job
    part = VerificationReport(claim, {})
    for d1, d2 in steps:
        for m in m_values:
            part.check_figure(f"DAT({a},{d1 % n},{d2 % n},{m})", dat(a, d1, d2, m, n))
    return part


def _absorb_all(report: VerificationReport, parts: List[VerificationReport]) -> VerificationReport:
    for part in parts:
        report.absorb(part)
    return report


def verify_thm1(
    n: int,
    samples: Optional[int] = None,
    m_values: Optional[Sequence[int]] = None,
    seed: int = 0,
    threads: int = 1,
    progress: bool = False,
) -> VerificationReport:
    """
    DAT(a, d1, d2, m) is balanced for every a, every d1, d2, d1 - d2
    invertible and m ≡ 0, -1 (mod n).

    Parameters:
        samples: number of random (a, d1, d2) triples; None sweeps them all
        m_values: orders to test, n-1, n, 2n-1, 2n, 3n-1, 3n by default
        threads: worker processes, one task per first term a
    """
    _require_odd(n)
    m_values = list(m_values) if m_values is not None else _default_dat_orders(n)
    for m in m_values:
        if m < 1 or m % n not in (0, (n - 1) % n):
            raise ValueError(f"order {m} is not ≡ 0 or -1 mod {n}")
    triples = [(a, d1, d2) for a in range(n) for d1, d2 in _dat_steps(n)]
    if samples is not None and samples < len(triples):
        rng = np.random.default_rng(seed)
        picks = sorted(rng.choice(len(triples), size=samples, replace=False).tolist())
        triples = [triples[i] for i in picks]
    report = VerificationReport(
        "balanced doubly arithmetic triangles",
        {"modulus": n, "orders": m_values, "samples": samples, "seed": seed},
    )
    steps_by_a: Dict[int, List[Tuple[int, int]]] = {}
    for a, d1, d2 in triples:
        steps_by_a.setdefault(a, []).append((d1, d2))
    jobs = [(report.claim, n, a, tuple(steps), tuple(m_values)) for a, steps in steps_by_a.items()]
    _absorb_all(report, fan_out(_dat_instance, jobs, threads, progress, "DATs"))
    logging.info(f"DAT sweep mod {n}: {report.examined} triangles, {len(report.violations)} refuted")
    return report


def verify_dat_remark(
    n: int, d: int = 1, m_values: Optional[Sequence[int]] = None, threads: int = 1, progress: bool = False
) -> VerificationReport:
    """DAT(a,d,-d,m), DAT(a,d,2d,m) and DAT(a,2d,d,m) for every a."""
    _require_odd(n)
    if not is_invertible(Residue(d, n)):
        raise ValueError(f"d={d} is not invertible mod {n}")
    m_values = list(m_values) if m_values is not None else _default_dat_orders(n)
    report = VerificationReport(
        "balanced DAT(a,d,-d,m), DAT(a,d,2d,m), DAT(a,2d,d,m)",
        {"modulus": n, "d": d, "orders": m_values},
    )
    steps = ((d, -d), (d, 2 * d), (2 * d, d))
    jobs = [(report.claim, n, a, steps, tuple(m_values)) for a in range(n)]
    return _absorb_all(report, fan_out(_dat_instance, jobs, threads, progress, "DATs"))


def _balanced_dats(job) -> VerificationReport:
    claim, n, m, a, units = job
    part = VerificationReport(claim, {})
    for d1, d2 in product(range(n), repeat=2):
        if dat(a, d1, d2, m, n).is_balanced():
            part.check(
                f"DAT({a},{d1},{d2},{m})",
                d1 in units and d2 in units and (d1 - d2) % n in units,
            )
    return part


def verify_prop1(n: int, m_max: int, threads: int = 1, progress: bool = False) -> VerificationReport:
    """Every balanced DAT of order <= m_max has d1, d2 and d1 - d2 invertible."""
    if n < 1 or m_max < 1:
        raise ValueError(f"modulus and order bound must be positive, got {n} and {m_max}")
    units = frozenset(invertible_units(n))
    report = VerificationReport(
        "balanced DATs have invertible d1, d2, d1 - d2", {"modulus": n, "m_max": m_max}
    )
    jobs = [
        (report.claim, n, m, a, units)
        for m in range(1, m_max + 1)
        if (m * (m + 1) // 2) % n == 0
        for a in range(n)
    ]
    # one check per balanced DAT
    _absorb_all(report, fan_out(_balanced_dats, jobs, threads, progress, "DATs"))
    balanced = report.examined
    report.notes.append(f"{balanced} balanced DATs found")
    if n % 2 == 0:
        report.check("no balanced DAT for even n", balanced == 0, {"balanced": balanced})
    return report


def _window_figure(
    spec: IAPSpec, kind: FigureKind, j0: int, j1: int, h: Optional[int] = None
) -> Figure:
    return build_figure(kind, spec.modulus, iap_window(spec, j0, j1).terms, h)


def _heights(m: int, accept: Callable[[int], bool]) -> List[int]:
    return [h for h in range(1, m + 1) if accept(h)]


def _idao_figures(job) -> VerificationReport:
    claim, n, a0, a1, a2, d, m, row, j0 = job
    spec = idao_sequence(a0, a1, a2, d, n)
    period = 6 * n
    part = VerificationReport(claim, {})
    at = f"row {row}, column {j0}"

    def check(kind, h=None):
        figure = figure_from_orbit(spec, kind, row, j0, m, h)
        suffix = f" h={h}" if h is not None else ""
        part.check_figure(f"{kind.value} m={m}{suffix} at {at}", figure)

    check(FigureKind.STEINHAUS_TRIANGLE)
    check(FigureKind.PASCAL_TRIANGLE)
    for h in _heights(m, lambda h: (h - m) % period in (0, 1)):
        check(FigureKind.STEINHAUS_TRAPEZOID, h)
        check(FigureKind.PASCAL_TRAPEZOID, h)
    if m % period == 0:
        check(FigureKind.LOZENGE)
    return part


def verify_thm3(
    n: int,
    a0: int,
    a1: int,
    a2: int,
    d: int,
    lambda_max: int = 1,
    offsets: Sequence[int] = (0, 1, 2),
    rows: Sequence[int] = (0,),
    threads: int = 1,
    progress: bool = False,
) -> VerificationReport:
    """
    Balanced figures of the orbit of IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ)) for
    sizes m ≡ 0, -1 (mod 6n): triangles, trapezoids with h ≡ m, m+1 (mod 6n),
    Pascal triangles and trapezoids, and lozenges when m ≡ 0 (mod 6n).
    Each figure is taken at every (row, offset) pair requested.
    """
    _require_odd(n)
    sigma = a0 + a1 + a2
    for label, value in (("d", d), ("d+3Σ", d + 3 * sigma), ("2d+3Σ", 2 * d + 3 * sigma)):
        if not is_invertible(Residue(value, n)):
            raise ValueError(f"{label}={value % n} is not invertible mod {n}")
    period = 6 * n
    report = VerificationReport(
        "balanced figures in the (6,3)-IDAO orbit",
        {
            "modulus": n,
            "a": [a0, a1, a2],
            "d": d,
            "lambda_max": lambda_max,
            "offsets": list(offsets),
            "rows": list(rows),
        },
    )
    report.notes.append(f"positions checked: rows {list(rows)} x offsets {list(offsets)}")
    jobs = [
        (report.claim, n, a0, a1, a2, d, m, row, j0)
        for lam in range(1, lambda_max + 1)
        for m in (period * lam - 1, period * lam)
        for row in rows
        for j0 in offsets
    ]
    _absorb_all(report, fan_out(_idao_figures, jobs, threads, progress, "figures"))
    logging.info(f"IDAO sweep mod {n}: {report.examined} figures, {len(report.violations)} refuted")
    return report


def _antisymmetric_figures(job) -> VerificationReport:
    claim, n, a, d, lam = job
    s = thm4_sequence(n, a, d)
    ds = derive_iap(s)
    q = 3 * n
    big = q * lam
    part = VerificationReport(claim, {})
    part.check_figure(f"triangle S[0,{big - 1}]", _window_figure(s, FigureKind.STEINHAUS_TRIANGLE, 0, big - 1))
    part.check_figure(f"triangle dS[0,{big - 2}]", _window_figure(ds, FigureKind.STEINHAUS_TRIANGLE, 0, big - 2))
    for h in _heights(big, lambda h: h % q in (0, 1)):
        part.check_figure(
            f"trapezoid S[0,{big - 1}] h={h}",
            _window_figure(s, FigureKind.STEINHAUS_TRAPEZOID, 0, big - 1, h),
        )
    for h in _heights(big - 1, lambda h: h % q in (q - 1, 0)):
        part.check_figure(
            f"trapezoid dS[0,{big - 2}] h={h}",
            _window_figure(ds, FigureKind.STEINHAUS_TRAPEZOID, 0, big - 2, h),
        )
    for m in (big - 1, big):
        part.check_figure(f"pascal dS[{-m},{m - 2}]", _window_figure(ds, FigureKind.PASCAL_TRIANGLE, -m, m - 2))
        for h in _heights(m, lambda h: (h - m) % q in (0, 1)):
            part.check_figure(
                f"pascal-trapezoid dS[{-m},{m - 2}] h={h}",
                _window_figure(ds, FigureKind.PASCAL_TRAPEZOID, -m, m - 2, h),
            )
    part.check_figure(f"lozenge dS[{-big},{big - 2}]", _window_figure(ds, FigureKind.LOZENGE, -big, big - 2))
    return part


def verify_thm4(
    n: int, a: int, d: int, lambda_max: int = 1, threads: int = 1, progress: bool = False
) -> VerificationReport:
    """Balanced figures of the orbit of IAP((a,-d,d-a),(d,-2d,d))."""
    _require_odd(n)
    if not is_invertible(Residue(d, n)):
        raise ValueError(f"d={d} is not invertible mod {n}")
    report = VerificationReport(
        "balanced figures in the antisymmetric orbit",
        {"modulus": n, "a": a, "d": d, "lambda_max": lambda_max},
    )
    jobs = [(report.claim, n, a, d, lam) for lam in range(1, lambda_max + 1)]
    return _absorb_all(report, fan_out(_antisymmetric_figures, jobs, threads, progress, "figures"))


def _universal_figures(job) -> VerificationReport:
    claim, n, d, m = job
    s = universal_sequence(n, d)
    ds = derive_iap(s)
    q = 3 * n
    part = VerificationReport(claim, {})
    if m % n == 0:
        part.check_figure(f"triangle S[{m},{2 * m - 1}]", _window_figure(s, FigureKind.STEINHAUS_TRIANGLE, m, 2 * m - 1))
        for h in _heights(m, lambda h: h % n == 0 or (h - m - 1) % q == 0):
            part.check_figure(
                f"trapezoid S[{m},{2 * m - 1}] h={h}",
                _window_figure(s, FigureKind.STEINHAUS_TRAPEZOID, m, 2 * m - 1, h),
            )
        part.check_figure(f"lozenge dS[{-m},{m - 2}]", _window_figure(ds, FigureKind.LOZENGE, -m, m - 2))
    if m % q == q - 1:
        part.check_figure(f"triangle dS[0,{m - 1}]", _window_figure(ds, FigureKind.STEINHAUS_TRIANGLE, 0, m - 1))
        for h in _heights(m, lambda h: h % n == n - 1 or h % q == 0):
            part.check_figure(
                f"trapezoid dS[0,{m - 1}] h={h}",
                _window_figure(ds, FigureKind.STEINHAUS_TRAPEZOID, 0, m - 1, h),
            )
    if m % n == n - 1 or m % q == 0:
        part.check_figure(f"pascal dS[{-m},{m - 2}]", _window_figure(ds, FigureKind.PASCAL_TRIANGLE, -m, m - 2))
        for h in _heights(m, lambda h: (h - m - 1) % n == 0 or (h - m) % q == 0):
            part.check_figure(
                f"pascal-trapezoid dS[{-m},{m - 2}] h={h}",
                _window_figure(ds, FigureKind.PASCAL_TRAPEZOID, -m, m - 2, h),
            )
    return part


def verify_thm5(
    n: int, d: int = 1, lambda_max: int = 1, threads: int = 1, progress: bool = False
) -> VerificationReport:
    """Balanced figures of the universal orbit, for every size class up to 3·lambda_max·n."""
    _require_odd(n)
    if not is_invertible(Residue(d, n)):
        raise ValueError(f"d={d} is not invertible mod {n}")
    q = 3 * n
    report = VerificationReport(
        "balanced figures in the universal orbit",
        {"modulus": n, "d": d, "lambda_max": lambda_max},
    )
    jobs = [
        (report.claim, n, d, m)
        for m in range(1, q * lambda_max + 1)
        if m % n in (0, n - 1)
    ]
    return _absorb_all(report, fan_out(_universal_figures, jobs, threads, progress, "sizes"))


def elementary_triangles(n: int, d: int = 1) -> Dict[str, Figure]:
    """The three Steinhaus and three Pascal building blocks of the universal orbit."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"elementary triangles need an odd modulus >= 3, got {n}")
    s = universal_sequence(n, d)
    ds = derive_iap(s)
    blocks = {}
    for t in range(3):
        blocks[f"T{t + 1}"] = _window_figure(s, FigureKind.STEINHAUS_TRIANGLE, t * n, (t + 1) * n - 1)
        blocks[f"P{t + 1}"] = _window_figure(
            ds, FigureKind.PASCAL_TRIANGLE, t * n + 1, (t + 2) * n - 3
        )
    return blocks


def verify_prop10(n: int, d: int = 1) -> VerificationReport:
    """T2, T1 ⊎ T3, P3 and P1 ⊎ P2 of the universal orbit are balanced."""
    blocks = elementary_triangles(n, d)
    report = VerificationReport(
        "balanced elementary triangles of the universal orbit", {"modulus": n, "d": d}
    )
    report.check_figure("triangle S[n,2n-1]", blocks["T2"])
    report.check_table("triangles S[0,n-1] + S[2n,3n-1]", blocks["T1"].multiplicity() + blocks["T3"].multiplicity())
    report.check_figure("pascal dS[2n+1,4n-3]", blocks["P3"])
    report.check_table("pascals dS[1,2n-3] + dS[n+1,3n-3]", blocks["P1"].multiplicity() + blocks["P2"].multiplicity())
    return report


def verify_prop12(n: int, a: int, d: int) -> VerificationReport:
    """
    ∇S[0,3n-1] and Δ∂S[1,6n-3] are balanced for S = IAP((a,-d,d-a),(d,-2d,d)),
    the closed forms of ∂^t S hold for t < 3n and ∂^(3n) S = -S.
    """
    _require_odd(n)
    s = thm4_sequence(n, a, d)
    report = VerificationReport(
        "balanced base triangles of the antisymmetric orbit", {"modulus": n, "a": a, "d": d}
    )
    report.check_figure(f"triangle S[0,{3 * n - 1}]", _window_figure(s, FigureKind.STEINHAUS_TRIANGLE, 0, 3 * n - 1))
    report.check_figure(
        f"pascal dS[1,{6 * n - 3}]",
        _window_figure(derive_iap(s), FigureKind.PASCAL_TRIANGLE, 1, 6 * n - 3),
    )
    for t in range(3 * n):
        report.check(f"closed form of derivative {t}", thm4_derived_closed_form(n, a, d, t) == derive_iap_iterated(s, t))
    report.check(f"derivative {3 * n} is the negation", derive_iap_iterated(s, 3 * n) == negate_iap(s))
    return report


def verify_thm4_thm5(
    n: int, a: int, d: int, lambda_max: int = 1, threads: int = 1, progress: bool = False
) -> VerificationReport:
    report = VerificationReport(
        "balanced figures in the antisymmetric and universal orbits",
        {"modulus": n, "a": a, "d": d, "lambda_max": lambda_max},
    )
    report.absorb(verify_thm4(n, a, d, lambda_max, threads, progress))
    report.absorb(verify_prop12(n, a, d))
    if a % n == 0:
        report.absorb(verify_thm5(n, d, lambda_max, threads, progress))
        if n >= 3:
            report.absorb(verify_prop10(n, d))
    else:
        report.notes.append("universal-orbit checks skipped: they need a = 0")
    logging.info(f"antisymmetric sweep mod {n}: {report.examined} checks, {len(report.violations)} refuted")
    return report


def _idao_windows(job) -> VerificationReport:
    claim, n, a0, a1, lambda_max = job
    part = VerificationReport(claim, {})
    for a2, d in product(range(n), repeat=2):
        expected = (a0 + a1 + a2) % n == 0 and (a1 + d) % n == 0
        spec = idao_sequence(a0, a1, a2, d, n)
        for lam in range(1, lambda_max + 1):
            window = iap_window(spec, 0, 3 * lam * n - 1)
            part.check(
                f"({a0},{a1},{a2},{d}) window [0,{3 * lam * n - 1}]",
                is_antisymmetric(window) == expected,
                {"expected": expected},
            )
    return part


def verify_prop8(n: int, lambda_max: int = 1, threads: int = 1, progress: bool = False) -> VerificationReport:
    """
    The window [0, 3λn-1] of IAP((a0,a1,a2),(d,-2d-3Σ,d+3Σ)) is antisymmetric
    exactly when Σ = 0 and a1 = -d, over every (a0, a1, a2, d) in Z/nZ.
    """
    _require_odd(n)
    report = VerificationReport(
        "antisymmetric windows of the IDAO family", {"modulus": n, "lambda_max": lambda_max}
    )
    jobs = [(report.claim, n, a0, a1, lambda_max) for a0, a1 in product(range(n), repeat=2)]
    return _absorb_all(report, fan_out(_idao_windows, jobs, threads, progress, "sequences"))


def verify_lemma4(n: int, d: int = 1) -> VerificationReport:
    """
    On the universal orbit a_{i,i} = 0 for i <= 3n, and in ∇S[0,3n-1] the
    even anti-diagonals are antisymmetric and the odd ones symmetric.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    s = universal_sequence(n, d)
    rows = orbit_rows(s, 3 * n + 1, 0, 3 * n)
    report = VerificationReport("diagonal and anti-diagonals of the universal orbit", {"modulus": n, "d": d})
    for i in range(3 * n + 1):
        report.check(f"cell ({i},{i})", rows[i][i] == 0, {"value": rows[i][i]})
    triangle = steinhaus_triangle(iap_window(s, 0, 3 * n - 1))
    for j in range(3 * n):
        ad = anti_diagonal(triangle, j)
        holds = is_antisymmetric(ad) if j % 2 == 0 else is_symmetric(ad)
        report.check(f"anti-diagonal {j}", holds, {"terms": list(ad.terms)})
    return report


def _closed_form_row(job) -> VerificationReport:
    claim, n, d, i, orbit_row = job
    part = VerificationReport(claim, {})
    for j, expected in enumerate(orbit_row):
        value = universal_orbit_entry(n, d, i, j).value
        part.check(f"cell ({i},{j})", value == expected, {"closedForm": value, "orbit": expected})
    return part


def verify_prop13(
    n: int,
    d: int = 1,
    rows: Optional[int] = None,
    cols: Optional[int] = None,
    threads: int = 1,
    progress: bool = False,
) -> VerificationReport:
    """Closed form of the universal orbit against iterated derivation on 0 <= i <= rows, 0 <= j <= cols."""
    rows = 3 * n if rows is None else rows
    cols = 6 * n if cols is None else cols
    if rows < 0 or cols < 0:
        raise ValueError(f"box bounds must be non-negative, got ({rows}, {cols})")
    s = universal_sequence(n, d)
    orbit = orbit_rows(s, rows + 1, 0, cols)
    report = VerificationReport(
        "closed form of the universal orbit", {"modulus": n, "d": d, "rows": rows, "cols": cols}
    )
    jobs = [(report.claim, n, d, i, tuple(orbit[i].terms)) for i in range(rows + 1)]
    return _absorb_all(report, fan_out(_closed_form_row, jobs, threads, progress, "rows"))


VERIFY_CLAIMS = (
    "thm1",
    "dat-remark",
    "thm3",
    "thm4",
    "thm5",
    "thm4-thm5",
    "prop1",
    "prop8",
    "prop10",
    "prop12",
    "lemma4",
    "prop13",
)


def run_verification(
    claim: str,
    n: int,
    a: int = 0,
    a0: int = 0,
    a1: int = 1,
    a2: int = 2,
    d: int = 1,
    lambda_max: int = 1,
    samples: Optional[int] = None,
    m_max: int = 8,
    threads: int = 1,
    progress: bool = False,
) -> VerificationReport:
    """
    Dispatches a claim name to its sweep with the shared parameter set.
    Sweeps over many instances spread them over `threads` worker processes;
    the merged report does not depend on the number of workers.
    """
    runners = {
        "thm1": lambda: verify_thm1(n, samples, threads=threads, progress=progress),
        "dat-remark": lambda: verify_dat_remark(n, d, threads=threads, progress=progress),
        "thm3": lambda: verify_thm3(n, a0, a1, a2, d, lambda_max, threads=threads, progress=progress),
        "thm4": lambda: verify_thm4(n, a, d, lambda_max, threads, progress),
        "thm5": lambda: verify_thm5(n, d, lambda_max, threads, progress),
        "thm4-thm5": lambda: verify_thm4_thm5(n, a, d, lambda_max, threads, progress),
        "prop1": lambda: verify_prop1(n, m_max, threads, progress),
        "prop8": lambda: verify_prop8(n, lambda_max, threads, progress),
        "prop10": lambda: verify_prop10(n, d),
        "prop12": lambda: verify_prop12(n, a, d),
        "lemma4": lambda: verify_lemma4(n, d),
        "prop13": lambda: verify_prop13(n, d, threads=threads, progress=progress),
    }
    if claim not in runners:
        raise ValueError(f"unknown claim {claim!r}, expected one of {VERIFY_CLAIMS}")
    return runners[claim]()
