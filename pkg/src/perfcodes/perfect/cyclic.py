"""Fast path for cyclic 2-subgroups and the sweep that adjudicates it."""

from __future__ import annotations

from perfcodes.group import Ambient, close
from perfcodes.perfect.oracle import oracle_double_coset
from perfcodes.perfect.types import Interpretation, Provenance, Status, Verdict
from perfcodes.perm import Permutation, cycle_type_key, is_odd, is_square, order, representative_of_type


def _is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def same_length_odd_count(x: Permutation) -> bool:
    """All non-trivial cycles share one length and there is an odd number of them."""
    lengths = cycle_type_key(x)
    return bool(lengths) and len(set(lengths)) == 1 and len(lengths) % 2 == 1


def cyclic_fast_path(x: Permutation, n: int | None = None, interpretation: Interpretation = Interpretation.NOT_A_SQUARE) -> Verdict:
    """Verdict for ``<x>`` when ``x`` has order ``2^m``, m >= 1.

    Odd permutations are always perfect.  For even ones the chosen reading
    decides: ``SAME_LENGTH_ODD_COUNT`` is perfect iff all non-trivial cycles
    share a length and come in odd number; ``NOT_A_SQUARE`` is perfect iff
    ``x`` has no square root in S_n.
    """
    if n is not None and n != x.degree:
        raise ValueError("degree mismatch")
    o = order(x)
    if o < 2 or not _is_power_of_two(o):
        raise ValueError(f"order {o} is not a positive power of two")
    if is_odd(x):
        return Verdict(Status.PERFECT, Provenance("TheoremFastPath", ("cyclic-odd-permutation",)))
    interpretation = Interpretation(interpretation)
    if interpretation is Interpretation.SAME_LENGTH_ODD_COUNT:
        perfect = same_length_odd_count(x)
    else:
        perfect = not is_square(x)
    return Verdict(Status.of(perfect), Provenance("TheoremFastPath", ("cyclic-even-permutation", interpretation.value)))


def two_power_cycle_types(n: int) -> list[tuple[int, ...]]:
    """Non-trivial cycle types (descending lengths) of elements of 2-power order > 1 in S_n."""
    parts = [1 << i for i in range(1, n.bit_length()) if 1 << i <= n]

    out = []

    def rec(remaining: int, max_part: int, acc: list[int]) -> None:
        if acc:
            out.append(tuple(acc))
        for p in reversed(parts):
            if p <= max_part and p <= remaining:
                rec(remaining - p, p, acc + [p])

    rec(n, n, [])
    return sorted(out, key=lambda t: (sum(t), t))


def sweep_cyclic(n: int, run_oracle: bool = True) -> list[dict]:
    """One row per 2-power-order cycle type in S_n comparing both readings with the oracle."""
    rows = []
    G = Ambient(n) if run_oracle else None
    for lengths in two_power_cycle_types(n):
        x = representative_of_type(lengths, n)
        fast = {
            interp.value: cyclic_fast_path(x, n, interp).status.value
            for interp in Interpretation
        }
        row = {
            "n": n,
            "cycle_type": list(lengths),
            "generator": str(x),
            "parity": "odd" if is_odd(x) else "even",
            "is_square": is_square(x),
            "fast": fast,
            "readings_agree": len(set(fast.values())) == 1,
            "oracle": None,
        }
        if G is not None:
            verdict, _ = oracle_double_coset(close([x], n), G, certificate=False)
            row["oracle"] = verdict.status.value
            row["reading_matches_oracle"] = {k: v == row["oracle"] for k, v in fast.items()}
            row["discrepancy"] = not all(row["reading_matches_oracle"].values())
        rows.append(row)
    return rows
