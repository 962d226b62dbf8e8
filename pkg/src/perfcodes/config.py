"""Resource caps and error types shared by every module."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace


class ResourceCapExceeded(RuntimeError):
    """A configured size limit would be exceeded; no answer is produced."""


class SearchBudgetExceeded(ResourceCapExceeded):
    """The transversal search ran out of nodes before deciding."""


class VerificationError(RuntimeError):
    """A freshly built certificate failed independent re-verification."""


@dataclass(frozen=True)
class Caps:
    ambient_max_degree: int = 10
    ambient_max_degree_big: int = 12
    transversal_max_degree: int = 10
    transversal_max_degree_big: int = 11
    subgroup_max_order: int = 1 << 20
    transversal_budget: int = 10**7
    root_candidate_cap: int = 20000
    allow_big: bool = False

    def ambient_limit(self) -> int:
        return self.ambient_max_degree_big if self.allow_big else self.ambient_max_degree

    def transversal_limit(self) -> int:
        return self.transversal_max_degree_big if self.allow_big else self.transversal_max_degree

    def as_dict(self) -> dict:
        return asdict(self)

    def with_(self, **kw) -> Caps:
        return replace(self, **kw)


def _from_env() -> Caps:
    caps = Caps()
    if os.environ.get("PERFCODES_ALLOW_BIG", "") in ("1", "true", "yes"):
        caps = caps.with_(allow_big=True)
    if "PERFCODES_SUBGROUP_CAP" in os.environ:
        caps = caps.with_(subgroup_max_order=int(os.environ["PERFCODES_SUBGROUP_CAP"]))
    return caps


_caps = _from_env()


def get_caps() -> Caps:
    return _caps


def set_caps(caps: Caps) -> None:
    global _caps
    _caps = caps
