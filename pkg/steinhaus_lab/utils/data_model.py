import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .figure_utils import Figure, FigureKind, cardinality
from .residue_utils import MultiplicityTable, is_balanced, multiplicity_of

SEARCH_KINDS = [
    FigureKind.STEINHAUS_TRIANGLE,
    FigureKind.STEINHAUS_TRAPEZOID,
    FigureKind.PASCAL_TRIANGLE,
    FigureKind.PASCAL_TRAPEZOID,
    FigureKind.LOZENGE,
]


class SearchStrategy(str, Enum):
    FULL = "full"
    FIRST_ROW_FIXED_POINT = "firstRowFixedPoint"
    PREFIX_PARALLEL = "prefixParallel"


@dataclass(frozen=True)
class SearchSpec:
    """
    What to enumerate: every generating sequence of a figure kind and size in Z/nZ.

    `order` is the length m of the generating sequence for Steinhaus figures
    and the height m (sequence length 2m - 1) for Pascal figures and lozenges.
    """

    modulus: int
    kind: FigureKind
    order: int
    height: Optional[int] = None
    strategy: SearchStrategy = SearchStrategy.FULL
    budget: Optional[int] = None
    max_found: int = 10
    negation_halving: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", FigureKind(self.kind))
        object.__setattr__(self, "strategy", SearchStrategy(self.strategy))
        if self.kind not in SEARCH_KINDS:
            raise ValueError(f"cannot search over {self.kind.value} figures")
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        trapezoid = self.kind in (
            FigureKind.STEINHAUS_TRAPEZOID,
            FigureKind.PASCAL_TRAPEZOID,
        )
        if trapezoid and (self.height is None or not 1 <= self.height <= self.order):
            raise ValueError(f"height must lie in [1, {self.order}], got {self.height}")
        if self.budget is not None and self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget}")

    @property
    def sequence_length(self) -> int:
        if self.kind in (FigureKind.STEINHAUS_TRIANGLE, FigureKind.STEINHAUS_TRAPEZOID):
            return self.order
        return 2 * self.order - 1

    @property
    def cardinality(self) -> int:
        return cardinality(self.kind, self.order, self.height)

    @property
    def admissible(self) -> bool:
        return self.cardinality % self.modulus == 0

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "kind": self.kind.value,
            "order": self.order,
            "height": self.height,
            "strategy": self.strategy.value,
            "budget": self.budget,
            "cardinality": self.cardinality,
        }


@dataclass
class SearchReport:
    claim: str
    parameters: Dict
    examined: int = 0
    found: List[Tuple[int, ...]] = field(default_factory=list)
    found_total: int = 0
    exhaustive: bool = False
    admissible: bool = True
    symmetry_reductions: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_dict(self, include_timing: bool = False) -> dict:
        result = {
            "claim": self.claim,
            "parameters": dict(self.parameters),
            "examined": self.examined,
            "found": [list(s) for s in self.found],
            "found_total": self.found_total,
            "exhaustive": self.exhaustive,
            "admissible": self.admissible,
            "symmetry_reductions": list(self.symmetry_reductions),
        }
        if include_timing:
            result["elapsedMs"] = round(self.elapsed_ms, 3)
        return result


@dataclass
class VerificationReport:
    """
    Outcome of a theorem sweep: every examined figure is re-counted from
    scratch and any unbalanced one is listed as a violation.
    """

    claim: str
    parameters: Dict
    examined: int = 0
    violations: List[Dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def check_figure(self, label: str, figure: Figure, expect_balanced: bool = True):
        self.check_table(label, multiplicity_of(figure.values(), figure.modulus), expect_balanced)

    def check_table(self, label: str, table: MultiplicityTable, expect_balanced: bool = True):
        self.examined += 1
        if is_balanced(table) != expect_balanced:
            logging.error(f"{self.claim}: {label} refuted, counts {list(table.counts)}")
            self.violations.append({"figure": label, "counts": list(table.counts)})

    def check(self, label: str, condition: bool, detail: Optional[Dict] = None):
        self.examined += 1
        if not condition:
            logging.error(f"{self.claim}: {label} refuted")
            self.violations.append({"figure": label, **(detail or {})})

    def absorb(self, other: "VerificationReport"):
        self.examined += other.examined
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "parameters": dict(self.parameters),
            "examined": self.examined,
            "violations": list(self.violations),
            "passed": self.passed,
            "notes": list(self.notes),
        }
