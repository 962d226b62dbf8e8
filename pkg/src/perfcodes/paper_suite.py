"""Published fixtures re-decided by the oracles.

Each fixture records the claimed verdict, what the oracle says and whether
they agree.  A disagreement with a published claim is a *finding* and does
not fail the suite; only disagreement between this tool's own deciders
(double-coset criterion, transversal search, certificate checks) does.
"""

from __future__ import annotations

import time

from perfcodes.group import Ambient, Subgroup, close, find_isomorphism, normalizer_in, sylow2
from perfcodes.perfect.classify import audit_checkers
from perfcodes.perfect.cyclic import cyclic_fast_path
from perfcodes.perfect.oracle import build_transversal, oracle_double_coset, verify_certificate
from perfcodes.perfect.types import BadDoubleCoset, Interpretation
from perfcodes.perm import format_cycles, parse_cycles

D4_H1 = ["(1 4 7 6)(2 8 3 5)", "(2 5)(3 8)(4 6)"]
D4_H2 = ["(1 6)(2 4)(3 8)(5 7)", "(1 8 5 4)(2 7 3 6)"]
D4_WITNESS = "(1 2 6 5 7 3 4 8)"
D4_H2_NORMALIZER_REPS = ["(4 8)(6 7)", "(2 3)(6 7)", "(2 6)(3 7)(4 8)", "(2 7)(3 6)(4 8)", "(2 6 3 7)", "(2 7 3 6)"]
CYCLIC_EXAMPLE = ["(1 2 3 4)(5 6)"]
CYCLIC_EXAMPLE_K = ["(1 2 3 4)(5 6)", "(7 8 9)"]
S11_H = ["(4 8)(5 6)", "(3 7)(4 8)", "(1 8 2 4)(3 5 7 6)"]
S11_H1 = ["(3 7)(4 8)", "(1 8 2 4)(3 5 7 6)"]
S11_K = ["(4 8)(5 6)", "(3 7)(4 8)", "(1 8 2 4)(3 5 7 6)", "(9 10 11)"]


class InternalInconsistency(RuntimeError):
    """The tool's own deciders disagree."""


def _group(gens: list[str], n: int) -> Subgroup:
    return close([parse_cycles(g, n) for g in gens], n)


def _decide(H: Subgroup, G: Ambient | None = None) -> tuple[str, dict]:
    """Oracle verdict, cross-checked against the transversal search."""
    G = Ambient(H.n) if G is None else G
    verdict, cert = oracle_double_coset(H, G)
    T = cert if not isinstance(cert, BadDoubleCoset) else build_transversal(H, G)
    if (T is not None) != verdict.perfect:
        raise InternalInconsistency(f"double-coset and transversal deciders disagree on {H!r}")
    info = {"certificate": cert.kind, "certificate_verified": verify_certificate(H, G, cert)}
    if isinstance(cert, BadDoubleCoset):
        info["witness"] = format_cycles(cert.representative)
    return verdict.status.value, info


def _fixture(name: str, claim: str | None, oracle: str, **details) -> dict:
    agree = None if claim is None else claim == oracle
    return {"fixture": name, "claim": claim, "oracle": oracle, "agree": agree, "finding": agree is False, **details}


def d4_pair() -> list[dict]:
    n = 8
    H1, H2 = _group(D4_H1, n), _group(D4_H2, n)
    v1, info1 = _decide(H1)
    w = parse_cycles(D4_WITNESS, n)
    info1["published_witness_verified"] = verify_certificate(H1, Ambient(n), BadDoubleCoset(w))
    v2, info2 = _decide(H2)
    iso = find_isomorphism(H1, H2)
    N = normalizer_in(H2, Ambient(n), method="scan")
    reps_inside = {r: parse_cycles(r, n) in N for r in D4_H2_NORMALIZER_REPS}
    return [
        _fixture("d4-H1-in-S8", "NotPerfect", v1, generators=D4_H1, **info1),
        _fixture(
            "d4-H2-in-S8", "Perfect", v2, generators=D4_H2, **info2,
            normalizer_order=N.order, listed_normalizer_reps_inside=reps_inside,
            listed_normalizer_order=8 * (len(D4_H2_NORMALIZER_REPS) + 1),
        ),
        _fixture(
            "d4-isomorphic", "isomorphic", "isomorphic" if iso else "not isomorphic",
            images={format_cycles(k): format_cycles(v) for k, v in (iso or {}).items()},
        ),
    ]


def cyclic_example(n: int) -> list[dict]:
    """The [4,2] cyclic subgroup claimed not perfect, and K = H x <3-cycle>."""
    H = _group(CYCLIC_EXAMPLE, n)
    v, info = _decide(H)
    x = parse_cycles(CYCLIC_EXAMPLE[0], n)
    readings = {i.value: cyclic_fast_path(x, n, i).status.value for i in Interpretation}
    out = [_fixture(f"cyclic-4-2-in-S{n}", "NotPerfect", v, generators=CYCLIC_EXAMPLE, readings=readings, **info)]
    if n >= 9:
        K = _group(CYCLIC_EXAMPLE_K, n)
        vk, infok = _decide(K)
        Q = sylow2(K)
        out.append(_fixture(
            f"cyclic-4-2-times-3-cycle-in-S{n}", "NotPerfect", vk, generators=CYCLIC_EXAMPLE_K,
            sylow_generators=Q.canonical_generators(), sylow_matches_example=Q == H,
            same_verdict_as_sylow=vk == v, **infok,
        ))
        if vk != v:
            raise InternalInconsistency("K and its Sylow 2-subgroup got different verdicts")
    return out


def s11_example(direct: bool) -> list[dict]:
    """Subgroups of the S_11 example, decided in S_8 (they fix 9, 10, 11).

    A verdict in S_8 carries to S_11: for a 2-group the normalizer in S_11 is
    the normalizer in S_8 times Sym{9,10,11}.  ``direct`` also decides each
    inside its S_11 normalizer.
    """
    out = []
    for name, gens in (("s11-H", S11_H), ("s11-H1", S11_H1)):
        H8 = _group(gens, 8)
        v8, info = _decide(H8)
        fired = audit_checkers(H8)
        rec = _fixture(f"{name}-via-S8", "NotPerfect", v8, generators=gens, checkers_fired=[f["rule"] for f in fired], checker_records=fired, **info)
        if direct:
            H11 = H8.extend(11)
            N = normalizer_in(H11, Ambient(11, check_caps=False))
            v11, _ = oracle_double_coset(H11, Ambient.of(N), certificate=False)
            rec["direct_in_normalizer_S11"] = v11.status.value
            rec["normalizer_order_S11"] = N.order
            if v11.status.value != v8:
                raise InternalInconsistency(f"{name}: S_8 and S_11-normalizer verdicts differ")
        out.append(rec)
    # K's Sylow 2-subgroup is H, so K inherits H's verdict
    K = _group(S11_K, 11)
    Q = sylow2(K)
    out.append(_fixture(
        "s11-K-via-sylow", "NotPerfect", out[0]["oracle"], generators=S11_K,
        sylow_order=Q.order, sylow_is_H=Q == _group(S11_H, 11),
    ))
    return out


def run_paper_suite(budget: str = "quick") -> dict:
    """``quick`` stays within S_8; ``full`` adds S_10 and the direct S_11 checks."""
    if budget not in ("quick", "full"):
        raise ValueError("budget must be 'quick' or 'full'")
    t0 = time.perf_counter()
    fixtures = d4_pair() + cyclic_example(6) + s11_example(direct=budget == "full")
    if budget == "full":
        fixtures += cyclic_example(10)
    return {
        "budget": budget,
        "fixtures": fixtures,
        "findings": [f["fixture"] for f in fixtures if f["finding"]],
        "elapsed_s": time.perf_counter() - t0,
    }
