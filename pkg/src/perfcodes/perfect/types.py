from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from perfcodes import kernels
from perfcodes.perm import Permutation, format_cycles, unrank


class Status(str, Enum):
    PERFECT = "Perfect"
    NOT_PERFECT = "NotPerfect"

    @classmethod
    def of(cls, perfect: bool) -> Status:
        return cls.PERFECT if perfect else cls.NOT_PERFECT


class Policy(str, Enum):
    FAST = "fast"
    ORACLE = "oracle"
    CHECKED = "checked"


class Interpretation(str, Enum):
    """Two readings of the 'odd number of same type of disjoint cycles' condition."""

    SAME_LENGTH_ODD_COUNT = "SameLengthOddCount"
    NOT_A_SQUARE = "NotASquare"


@dataclass(frozen=True)
class Provenance:
    kind: str  # OracleProven | TheoremFastPath | ReducedThenOracle
    detail: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": list(self.detail)}

    @classmethod
    def from_json(cls, d: dict) -> Provenance:
        return cls(d["kind"], tuple(d.get("detail", ())))


@dataclass(frozen=True)
class Verdict:
    status: Status
    provenance: Provenance

    @property
    def perfect(self) -> bool:
        return self.status is Status.PERFECT


class Transversal:
    """Inverse-closed left transversal, stored as Lehmer ranks in S_n."""

    kind = "transversal"

    def __init__(self, ranks, n: int):
        self.ranks = np.sort(np.asarray(ranks, dtype=np.int64))
        self.n = n

    @classmethod
    def from_perms(cls, perms: list[Permutation]) -> Transversal:
        n = perms[0].degree
        rows = np.array([p.array_form for p in perms], dtype=np.uint8)
        return cls(kernels.rank_rows(rows), n)

    def rows(self) -> np.ndarray:
        return kernels.unrank_range_many(self.ranks, self.n)

    @property
    def representatives(self) -> list[Permutation]:
        return [unrank(int(r), self.n) for r in self.ranks]

    def __len__(self) -> int:
        return int(self.ranks.size)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transversal) and self.n == other.n and np.array_equal(self.ranks, other.ranks)

    def __repr__(self) -> str:
        return f"Transversal(size={len(self)}, n={self.n})"


@dataclass(frozen=True)
class BadDoubleCoset:
    representative: Permutation
    kind = "bad_double_coset"


Certificate = Transversal | BadDoubleCoset


@dataclass
class TraceStep:
    rule: str
    basis: str
    inputs: dict[str, Any]
    outcome: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "basis": self.basis, "inputs": self.inputs, "outcome": self.outcome}


@dataclass
class ClassifyReport:
    n: int
    generators: list[str]
    order: int
    verdict: Verdict
    certificate: Certificate | None
    trace: list[TraceStep]
    discrepancies: list[dict] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


@dataclass
class HypothesisInstance:
    """Bindings found by one of the non-cyclic checkers.

    ``xs`` holds x1, x2, ... in order; ``witness`` is the element whose left
    coset of H the corresponding argument shows to be inverse-closed and
    involution-free.
    """

    rule: str
    xs: tuple[Permutation, ...]
    witness: Permutation
    y: Permutation | None = None
    k: int | None = None
    l: int | None = None
    s: int | None = None
    m: int | None = None
    t1: int | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        f = format_cycles
        return {
            "rule": self.rule,
            "xs": [f(x) for x in self.xs],
            "witness": f(self.witness),
            "y": f(self.y) if self.y is not None else None,
            "k": self.k,
            "l": self.l,
            "s": self.s,
            "m": self.m,
            "t1": self.t1,
            "notes": self.notes,
        }
