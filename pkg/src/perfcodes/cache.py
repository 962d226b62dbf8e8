"""Append-only JSON-lines cache of verdicts keyed by degree and generators."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from perfcodes import __version__

CACHE_ENV = "PERFCODES_CACHE"


@dataclass(frozen=True)
class CacheEntry:
    n: int
    generators: tuple[str, ...]
    verdict: str
    provenance: dict
    certificate_digest: str | None
    tool_version: str
    caps: dict

    @property
    def key(self) -> tuple[int, tuple[str, ...]]:
        return self.n, self.generators

    def to_json(self) -> dict:
        return {
            "key": {"n": self.n, "generators": list(self.generators)},
            "verdict": self.verdict,
            "provenance": self.provenance,
            "certificate_digest": self.certificate_digest,
            "tool_version": self.tool_version,
            "caps": self.caps,
        }

    @classmethod
    def from_json(cls, d: dict) -> CacheEntry:
        return cls(
            n=d["key"]["n"],
            generators=tuple(d["key"]["generators"]),
            verdict=d["verdict"],
            provenance=d["provenance"],
            certificate_digest=d.get("certificate_digest"),
            tool_version=d["tool_version"],
            caps=d["caps"],
        )


def cache_key(n: int, generators) -> tuple[int, tuple[str, ...]]:
    return n, tuple(sorted(generators))


class VerdictCache:
    """Entries are served only when tool version and caps match the caller's."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    @classmethod
    def from_env(cls, override: str | None = None) -> VerdictCache | None:
        path = override or os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def _entries(self):
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    yield CacheEntry.from_json(json.loads(line))
                except (ValueError, KeyError, TypeError):
                    continue  # a torn or foreign line is skipped, never trusted

    def get(self, n: int, generators, caps: dict) -> CacheEntry | None:
        key = cache_key(n, generators)
        hit = None
        for e in self._entries():
            if e.key == key and e.tool_version == __version__ and e.caps == caps:
                hit = e
        return hit

    def put(self, n: int, generators, verdict: str, provenance: dict, digest: str | None, caps: dict) -> CacheEntry:
        _, gens = cache_key(n, generators)
        entry = CacheEntry(n, gens, verdict, provenance, digest, __version__, caps)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(entry.to_json(), sort_keys=True) + "\n")
        return entry
