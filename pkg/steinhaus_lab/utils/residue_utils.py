import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class Residue:
    """
    An element of Z/nZ stored by its canonical representative in [0, n).
    """

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue"):
        if not isinstance(other, Residue):
            raise TypeError(f"cannot combine Residue with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise TypeError(
                f"modulus mismatch: {self.value} mod {self.modulus} vs {other.value} mod {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def residue_add(a: Residue, b: Residue) -> Residue:
    return a + b


def residue_neg(a: Residue) -> Residue:
    return -a


def residue_mul(a: Residue, b: Residue) -> Residue:
    return a * b


def is_invertible(a: Residue) -> bool:
    """True iff gcd(value, modulus) = 1; everything is invertible in the zero ring."""
    if a.modulus == 1:
        return True
    return gcd(a.value, a.modulus) == 1


def invertible_units(n: int) -> Tuple[int, ...]:
    return tuple(x for x in range(n) if is_invertible(Residue(x, n)))


@dataclass(frozen=True)
class MultiplicityTable:
    """
    The multiplicity function of a multiset of Z/nZ as a dense count vector.
    """

    modulus: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.modulus:
            raise ValueError(
                f"expected {self.modulus} counts, got {len(self.counts)}"
            )

    @property
    def cardinality(self) -> int:
        return sum(self.counts)

    def __getitem__(self, x: int) -> int:
        return self.counts[x % self.modulus]

    def __add__(self, other: "MultiplicityTable") -> "MultiplicityTable":
        if other.modulus != self.modulus:
            raise TypeError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )
        return MultiplicityTable(
            self.modulus, tuple(a + b for a, b in zip(self.counts, other.counts))
        )

    def __sub__(self, other: "MultiplicityTable") -> "MultiplicityTable":
        if other.modulus != self.modulus:
            raise TypeError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )
        counts = tuple(a - b for a, b in zip(self.counts, other.counts))
        if min(counts, default=0) < 0:
            raise ValueError("multiset difference is not contained in the minuend")
        return MultiplicityTable(self.modulus, counts)

    def negated(self) -> "MultiplicityTable":
        """Table of the multiset -M."""
        n = self.modulus
        return MultiplicityTable(n, tuple(self.counts[(-x) % n] for x in range(n)))

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "counts": list(self.counts)}


def multiplicity_of(
    items: Iterable[Union[Residue, int]], modulus: Optional[int] = None
) -> MultiplicityTable:
    """
    Counts the occurrences of every residue in a stream.

    Parameters:
        items (Iterable[Residue | int]): Residues, or plain integers when `modulus` is given.
        modulus (int, optional): Required for plain integers or an empty stream.

    Returns:
        MultiplicityTable: counts[x] is the number of occurrences of x.

    Raises:
        TypeError: If the stream mixes moduli.
        ValueError: If the modulus cannot be determined.
    """
    values = []
    for item in items:
        if isinstance(item, Residue):
            if modulus is None:
                modulus = item.modulus
            elif item.modulus != modulus:
                raise TypeError(
                    f"mixed moduli in stream: {item.modulus} and {modulus}"
                )
            values.append(item.value)
        else:
            values.append(int(item))
    if modulus is None:
        raise ValueError("an explicit modulus is required for an empty or integer stream")
    arr = np.asarray([v % modulus for v in values], dtype=np.int64)
    counts = np.bincount(arr, minlength=modulus)
    return MultiplicityTable(modulus, tuple(int(c) for c in counts))


def is_balanced(table: MultiplicityTable) -> bool:
    balanced = len(set(table.counts)) <= 1
    if not balanced:
        logging.debug(f"unbalanced multiplicities mod {table.modulus}: {table.counts}")
    return balanced


def is_mirror_symmetric(table: MultiplicityTable) -> bool:
    """counts[x] == counts[-x] for every x."""
    return table == table.negated()
