"""Checkers for structural hypotheses that predict a subgroup is not a perfect code.

Each checker searches for bindings of the permutations (x1, x2, ..., y) and
integers (k, l, s) that satisfy one family of hypotheses and returns a
:class:`HypothesisInstance` or ``None``.  An instance is a *prediction*: its
``witness`` w should make ``wH`` an inverse-closed left coset with no
involution.  Callers decide what to do with it; :func:`classify` only acts on
a prediction after re-verifying the witness.

All searches are bounded.  Square roots of a permutation are enumerated
exhaustively up to ``Caps.root_candidate_cap`` per root target, and a checker
that hits a bound simply reports nothing.
"""

from __future__ import annotations

from collections.abc import Iterator

from perfcodes.config import get_caps
from perfcodes.group import Subgroup, close, is_abelian
from perfcodes.numtheory import exists_power_neg_one
from perfcodes.perfect.types import HypothesisInstance
from perfcodes.perm import Permutation, commutes, compose, inverse, order, power, square_roots


def _log2(m: int) -> int | None:
    return m.bit_length() - 1 if m > 0 and m & (m - 1) == 0 else None


def _roots(p: Permutation) -> list[Permutation]:
    return sorted(square_roots(p, limit=get_caps().root_candidate_cap))


def _conj_exponent(a: Permutation, b: Permutation, y_inv: Permutation, span: int) -> list[int]:
    """Every k in [1, span] with ``a∘y⁻¹ == y^(-k)∘b``; k counts powers of y⁻¹."""
    lhs = compose(a, y_inv)
    out = []
    cur = b
    for k in range(1, span + 1):
        cur = compose(y_inv, cur)
        if cur == lhs:
            out.append(k)
    return out


def _two_generator_pairs(H: Subgroup, within: Subgroup | None = None) -> Iterator[tuple[Permutation, Permutation, int, Subgroup]]:
    """Pairs (x1, x2) of H with x1 of order 2^l >= 2, x2 an involution not
    commuting with x1, and |<x1, x2>| = 2^(l+1).  ``within`` restricts the
    pairs to generate exactly that subgroup."""
    elems = list(H)
    involutions = [e for e in elems if order(e) == 2]
    for x1 in elems:
        o1 = order(x1)
        l = _log2(o1)
        if l is None or l < 1:
            continue
        powers = {power(x1, i) for i in range(o1)}
        for x2 in involutions:
            if commutes(x1, x2):
                continue
            # x2 x1 x2 must land in <x1> for the relation to be possible
            if compose(compose(x2, x1), x2) not in powers:
                continue
            K = close([x1, x2], H.n)
            if K.order != 2 * o1:
                continue
            if within is not None and K != within:
                continue
            yield x1, x2, l, K


def hyp_commutative(H: Subgroup) -> HypothesisInstance | None:
    """Commutative 2-group with generators x1..xm and some x outside H with
    ``x∘x == x1`` commuting with x2..xm.

    Each given generator is tried as x1 in turn; x1 must be non-trivial.
    """
    if _log2(H.order) is None or H.order == 1 or not is_abelian(H):
        return None
    gens = list(H.generators)
    for i, x1 in enumerate(gens):
        if x1.is_identity():
            continue
        rest = gens[:i] + gens[i + 1:]
        for x in _roots(x1):
            if x in H:
                continue
            if all(commutes(x, g) for g in rest):
                return HypothesisInstance(
                    rule="commutative-root",
                    xs=(x1, *rest),
                    witness=x,
                    m=len(gens),
                    notes={"order": H.order},
                )
    return None


def _root_with_exponent(x1: Permutation, x2: Permutation, l: int):
    """Roots y of x1⁻¹ and the odd k with ``x2∘y⁻¹ == y^(-k)∘x2``, k ≢ -1 mod 2^(l+1)."""
    span = 1 << (l + 1)
    for y in _roots(inverse(x1)):
        y_inv = inverse(y)
        for k in _conj_exponent(x2, x2, y_inv, span):
            if k % 2 == 1 and k % span != span - 1:
                yield y, k


def hyp_k11(H: Subgroup) -> HypothesisInstance | None:
    """Non-commutative ``H = <x1, x2>`` of order 2^(l+1) with o(x1) = 2^l,
    o(x2) = 2, some y with ``y∘y == x1⁻¹`` and ``x2∘y⁻¹ == y^(-k)∘x2`` for an
    odd k with k ≢ -1 (mod 2^(l+1)).  The witness is y."""
    if _log2(H.order) is None or H.order < 8:
        return None
    for x1, x2, l, _ in _two_generator_pairs(H, within=H):
        for y, k in _root_with_exponent(x1, x2, l):
            return HypothesisInstance(rule="two-generator-root", xs=(x1, x2), witness=y, y=y, k=k, l=l)
    return None


def hyp_extension(H: Subgroup, base: HypothesisInstance | None = None) -> HypothesisInstance | None:
    """``H = <x1, x2, x3, ..., xm>`` where (x1, x2, y, k) is a two-generator
    instance on a proper subgroup and the extra generators commute with y,
    with x2 and with each other.  The witness is y.

    Extras are picked greedily by rank from the elements of H that commute
    with y and x2, keeping the set pairwise commuting.
    """
    if H.order % 8:
        return None
    if base is not None:
        bases = [(base.xs[0], base.xs[1], base.l, close(base.xs[:2], H.n), base.y, base.k)]
    else:
        bases = (
            (x1, x2, l, K, y, k)
            for x1, x2, l, K in _two_generator_pairs(H)
            if K.order < H.order
            for y, k in _root_with_exponent(x1, x2, l)
        )
    elems = list(H)
    for x1, x2, l, K, y, k in bases:
        if not all(g in H for g in (x1, x2)):
            continue
        extras: list[Permutation] = []
        current = K
        for z in elems:
            if current.order == H.order:
                break
            if z in current or not (commutes(z, y) and commutes(z, x2)):
                continue
            if all(commutes(z, e) for e in extras):
                extras.append(z)
                current = close([x1, x2, *extras], H.n)
        if extras and current.order == H.order:
            return HypothesisInstance(
                rule="commuting-extension",
                xs=(x1, x2, *extras),
                witness=y,
                y=y,
                k=k,
                l=l,
                m=2 + len(extras),
            )
    return None


def hyp_thm10(H: Subgroup) -> HypothesisInstance | None:
    """``H = <x1, x2, x3>`` where <x1, x2> is non-commutative of order
    2^(l+1), o(x1) = 2^l, o(x2) = 2, ``y∘y == x1⁻¹``, and with a common odd
    ``k < 2^l`` both ``x2∘y⁻¹ == y^(-k)∘x2`` and ``x3∘y⁻¹ == y^(-k)∘x3``,
    while ``x2∘x3⁻¹ == x3^(-s)∘x2`` for some s >= 1.  The witness is y.

    The instance notes record, for l >= 2, that no power of k is -1 modulo
    2^(l+1); the involution-freeness argument leans on that fact.
    """
    if H.order % 4:
        return None
    elems = list(H)
    for x1, x2, l, K in _two_generator_pairs(H):
        span = 1 << (l + 1)
        for y in _roots(inverse(x1)):
            y_inv = inverse(y)
            ks = [k for k in _conj_exponent(x2, x2, y_inv, span) if k % 2 == 1 and k < 1 << l]
            if not ks:
                continue
            # x3 outside <x1, x2> first so the instance is informative
            for x3 in sorted(elems, key=lambda e: e in K):
                k3 = set(_conj_exponent(x3, x3, y_inv, span))
                shared = [k for k in ks if k in k3]
                if not shared:
                    continue
                if close([x1, x2, x3], H.n).order != H.order:
                    continue
                t1 = order(x3)
                s_vals = _conj_exponent(x2, x2, inverse(x3), t1)
                if not s_vals:
                    continue
                k = shared[0]
                notes = {"order_x3": t1}
                if l >= 2:
                    notes["power_of_k_hits_minus_one"] = exists_power_neg_one(k, l)
                return HypothesisInstance(
                    rule="three-generator-root",
                    xs=(x1, x2, x3),
                    witness=y,
                    y=y,
                    k=k,
                    l=l,
                    s=s_vals[0],
                    t1=t1,
                    notes=notes,
                )
    return None


def _check_relations(inst: HypothesisInstance) -> None:
    if len(inst.xs) < 3 or inst.y is None or inst.k is None or inst.l is None or inst.s is None:
        raise ValueError("instance lacks x1, x2, x3, y, k, l or s")
    x1, x2, x3 = inst.xs[:3]
    y, k, l, s = inst.y, inst.k, inst.l, inst.s
    y_inv = inverse(y)
    n = x1.degree
    problems = []
    if compose(y, y) != inverse(x1):
        problems.append("y∘y != x1⁻¹")
    if order(x1) != 1 << l:
        problems.append("o(x1) != 2^l")
    if order(x2) != 2:
        problems.append("o(x2) != 2")
    if commutes(x1, x2) or close([x1, x2], n).order != 1 << (l + 1):
        problems.append("<x1, x2> is not non-commutative of order 2^(l+1)")
    if compose(x2, y_inv) != compose(power(y, -k), x2):
        problems.append("x2∘y⁻¹ != y^(-k)∘x2")
    if compose(x3, y_inv) != compose(power(y, -k), x3):
        problems.append("x3∘y⁻¹ != y^(-k)∘x3")
    if compose(x2, inverse(x3)) != compose(power(x3, -s), x2):
        problems.append("x2∘x3⁻¹ != x3^(-s)∘x2")
    if problems:
        raise ValueError("; ".join(problems))


def quotient_cyclic_check(inst: HypothesisInstance) -> bool:
    """Do the powers of x3 meet every left coset of <x1, x2> in <x1, x2, x3>?

    The defining relations are re-verified first; a broken instance raises
    ``ValueError``.
    """
    _check_relations(inst)
    x1, x2, x3 = inst.xs[:3]
    n = x1.degree
    K = close([x1, x2], n)
    L = close([x1, x2, x3], n)
    cosets = set()
    for i in range(order(x3)):
        xi = power(x3, i)
        cosets.add(min(compose(xi, h) for h in K))
    return len(cosets) == L.order // K.order
