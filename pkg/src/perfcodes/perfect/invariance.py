"""Randomised checks that oracle verdicts respect the standard reductions."""

from __future__ import annotations

import math

import numpy as np

from perfcodes.group import Ambient, Subgroup, close, conjugate_subgroup, normalizer_in, sylow2
from perfcodes.perfect.oracle import oracle_double_coset
from perfcodes.perm import Permutation, format_cycles, order, power, unrank


def _verdict(H: Subgroup, G: Ambient | None = None) -> str:
    G = Ambient(H.n) if G is None else G
    return oracle_double_coset(H, G, certificate=False)[0].status.value


def _random_perm(rng: np.random.Generator, n: int) -> Permutation:
    return unrank(int(rng.integers(math.factorial(n))), n)


def random_subgroup(rng: np.random.Generator, n: int, gens: int = 2, max_order: int = 5040) -> Subgroup:
    """Closure of a few random elements, each raised to a random power so that
    small subgroups (where non-perfect ones live) are well represented."""
    while True:
        picked = []
        for _ in range(int(rng.integers(1, gens + 1))):
            g = _random_perm(rng, n)
            picked.append(power(g, int(rng.integers(order(g)))) if rng.random() < 0.5 else g)
        H = close(picked, n)
        if H.order <= max_order:
            return H


def random_two_subgroup(rng: np.random.Generator, n: int, max_order: int = 128) -> Subgroup:
    """A non-trivial 2-subgroup: 2-parts of random elements, then a Sylow 2-subgroup."""
    while True:
        gens = []
        for _ in range(int(rng.integers(1, 3))):
            g = _random_perm(rng, n)
            o = order(g)
            odd = o >> ((o & -o).bit_length() - 1)
            gens.append(power(g, odd))
        Q = sylow2(close(gens, n))
        if 1 < Q.order <= max_order:
            return Q


def _record(kind: str, H: Subgroup, left: str, right: str, **extra) -> dict:
    return {"check": kind, "generators": H.canonical_generators(), "left": left, "right": right, **extra}


def conjugation_checks(n: int, samples: int, rng: np.random.Generator) -> list[dict]:
    out = []
    for _ in range(samples):
        H = random_subgroup(rng, n)
        g = _random_perm(rng, n)
        out.append(_record("conjugation", H, _verdict(H), _verdict(conjugate_subgroup(H, g)), g=format_cycles(g)))
    return out


def extension_checks(n: int, samples: int, rng: np.random.Generator) -> list[dict]:
    out = []
    for _ in range(samples):
        H = random_subgroup(rng, n)
        out.append(_record("degree-extension", H, _verdict(H), _verdict(H.extend(n + 1)), degrees=[n, n + 1]))
    return out


def sylow_checks(n: int, samples: int, rng: np.random.Generator) -> list[dict]:
    out = []
    while len(out) < samples:
        H = random_subgroup(rng, n)
        if H.order % 2:
            continue
        Q = sylow2(H)
        out.append(_record("sylow-2", H, _verdict(H), _verdict(Q), sylow_order=Q.order))
    return out


def normalizer_checks(degrees: tuple[int, ...], samples: int, rng: np.random.Generator) -> list[dict]:
    out = []
    for i in range(samples):
        n = degrees[i % len(degrees)]
        Q = random_two_subgroup(rng, n)
        N = normalizer_in(Q, Ambient(n))
        out.append(_record("normalizer", Q, _verdict(Q), _verdict(Q, Ambient.of(N)), n=n, normalizer_order=N.order))
    return out


def invariance_suite(
    n: int,
    samples: int = 20,
    seed: int = 0,
    *,
    conjugation: int | None = None,
    extension: int | None = None,
    sylow: int | None = None,
    normalizer: int | None = None,
    normalizer_degrees: tuple[int, ...] | None = None,
) -> dict:
    """Sample subgroups and compare oracle verdicts across each reduction.

    Counts default to ``samples``; extension goes from S_n to S_{n+1}.
    Every record carries both verdicts and the report lists mismatches.
    """
    rng = np.random.default_rng(seed)
    records = []
    records += conjugation_checks(n, samples if conjugation is None else conjugation, rng)
    records += extension_checks(n, samples if extension is None else extension, rng)
    records += sylow_checks(n, samples if sylow is None else sylow, rng)
    records += normalizer_checks(normalizer_degrees or (n,), samples if normalizer is None else normalizer, rng)
    counts: dict[str, int] = {}
    for r in records:
        counts[r["check"]] = counts.get(r["check"], 0) + 1
    mismatches = [r for r in records if r["left"] != r["right"]]
    return {"n": n, "seed": seed, "counts": counts, "records": records, "mismatches": mismatches}
