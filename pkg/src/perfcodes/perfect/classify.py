"""Layered classifier: cheap structural rules first, exhaustive oracle last."""

from __future__ import annotations

import time
from dataclasses import replace

from perfcodes.config import ResourceCapExceeded, get_caps
from perfcodes.group import Ambient, Subgroup, index_in, is_cyclic, normalizer_in, sylow2
from perfcodes.perfect.cyclic import cyclic_fast_path
from perfcodes.perfect.hypotheses import hyp_commutative, hyp_extension, hyp_k11, hyp_thm10
from perfcodes.perfect.oracle import oracle_double_coset, verify_certificate
from perfcodes.perfect.types import (
    BadDoubleCoset,
    Certificate,
    ClassifyReport,
    Interpretation,
    Policy,
    Provenance,
    Status,
    TraceStep,
    Verdict,
)
from perfcodes.perm import format_cycles

CHECKERS = (
    ("commutative-root", hyp_commutative, "commutative 2-group with a commuting square root of a generator outside H"),
    ("two-generator-root", hyp_k11, "two-generator 2-group twisted by a square root of x1⁻¹"),
    ("commuting-extension", hyp_extension, "two-generator instance extended by commuting generators"),
    ("three-generator-root", hyp_thm10, "three generators sharing the twist exponent k < 2^l"),
)


class _Timer:
    def __init__(self) -> None:
        self.timings: dict[str, float] = {}

    def __call__(self, name: str):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.timings[name] = timer.timings.get(name, 0.0) + (time.perf_counter() - self.t0) * 1e3

        return _Ctx()


def _fast_pipeline(H: Subgroup, n: int, interpretation: Interpretation, trace: list[TraceStep], clock: _Timer, predictions: list[dict]):
    """Steps that avoid enumerating S_n.  Returns (verdict, certificate) or (None, None)."""
    G_meta = Ambient(n, check_caps=False)
    with clock("odd_rule"):
        index = index_in(H, G_meta)
    odd = H.order % 2 == 1 or index % 2 == 1
    trace.append(TraceStep(
        "odd-order-or-index",
        "a subgroup of odd order or odd index is a perfect code",
        {"order": H.order, "index": index},
        "Perfect" if odd else "not applicable",
    ))
    if odd:
        return Verdict(Status.PERFECT, Provenance("TheoremFastPath", ("odd-order-or-index",))), None

    with clock("sylow2"):
        Q = sylow2(H)
    reduced = Q != H
    trace.append(TraceStep(
        "sylow-2-reduction",
        "H and any Sylow 2-subgroup of H share perfect-code status",
        {"order": H.order, "sylow_order": Q.order, "sylow_generators": Q.canonical_generators()},
        "reduced" if reduced else "H is already a 2-group",
    ))
    chain = ("sylow-2",) if reduced else ()

    with clock("cyclic"):
        gen = is_cyclic(Q)
    if gen is not None:
        v = cyclic_fast_path(gen, n, interpretation)
        trace.append(TraceStep(
            "cyclic-fast-path",
            "cyclic 2-subgroup: odd generator is perfect, else decided by the chosen square criterion",
            {"generator": format_cycles(gen), "interpretation": Interpretation(interpretation).value},
            v.status.value,
        ))
        return Verdict(v.status, Provenance(v.provenance.kind, chain + v.provenance.detail)), None
    trace.append(TraceStep("cyclic-fast-path", "cyclic 2-subgroups only", {}, "not applicable"))

    for rule, checker, basis in CHECKERS:
        with clock("checkers"):
            inst = checker(Q)
        if inst is None:
            trace.append(TraceStep(rule, basis, {}, "no instance"))
            continue
        with clock("checkers"):
            ok = verify_certificate(Q, G_meta, BadDoubleCoset(inst.witness))
        trace.append(TraceStep(rule, basis, inst.to_json(), "NotPerfect" if ok else "witness rejected"))
        if not ok:
            predictions.append({"rule": rule, "status": Status.NOT_PERFECT.value, "witness_verified": False, "instance": inst.to_json()})
        else:
            cert = BadDoubleCoset(inst.witness) if not reduced else None
            return Verdict(Status.NOT_PERFECT, Provenance("TheoremFastPath", chain + (rule,))), cert

    try:
        with clock("normalizer"):
            N = normalizer_in(Q, G_meta)
            verdict, _ = oracle_double_coset(Q, Ambient.of(N), certificate=False)
    except ResourceCapExceeded as exc:
        trace.append(TraceStep("normalizer-reduction", "decide the 2-subgroup inside its normalizer", {}, f"skipped: {exc}"))
        return None, None
    trace.append(TraceStep(
        "normalizer-reduction",
        "a 2-subgroup is perfect in G iff it is perfect in its normalizer",
        {"normalizer_order": N.order},
        verdict.status.value,
    ))
    return Verdict(verdict.status, Provenance("ReducedThenOracle", chain + ("normalizer",))), None


def _oracle_feasible(n: int) -> bool:
    return n <= get_caps().ambient_limit()


def classify(
    H: Subgroup,
    n: int | None = None,
    policy: Policy | str = Policy.CHECKED,
    interpretation: Interpretation | str = Interpretation.NOT_A_SQUARE,
) -> ClassifyReport:
    """Decide whether H is a perfect code of S_n and explain how.

    ``fast`` stops at the first decisive structural rule and only falls back
    to the full oracle when none applies.  ``oracle`` skips the rules.
    ``checked`` runs the rules and then the oracle whenever S_n is within
    caps; any disagreement is recorded and the oracle's verdict is reported.
    """
    n = H.n if n is None else n
    if n != H.n:
        H = H.extend(n)
    policy = Policy(policy)
    interpretation = Interpretation(interpretation)
    clock = _Timer()
    trace: list[TraceStep] = []
    predictions: list[dict] = []
    discrepancies: list[dict] = []
    verdict: Verdict | None = None
    cert: Certificate | None = None
    t0 = time.perf_counter()

    if policy is not Policy.ORACLE:
        verdict, cert = _fast_pipeline(H, n, interpretation, trace, clock, predictions)

    run_oracle = policy is Policy.ORACLE or verdict is None or (policy is Policy.CHECKED and _oracle_feasible(n))
    if run_oracle:
        if not _oracle_feasible(n):
            raise ResourceCapExceeded(f"undecided: resources (S_{n} exceeds the oracle cap and no rule decided)")
        with clock("oracle"):
            oracle_verdict, oracle_cert = oracle_double_coset(H, Ambient(n))
        trace.append(TraceStep(
            "full-oracle",
            "self-inverse double coset with odd left-coset count and no involution",
            {"ambient": f"S_{n}"},
            oracle_verdict.status.value,
        ))
        for p in predictions:
            if p["status"] != oracle_verdict.status.value:
                discrepancies.append({"rule": p["rule"], "fast": p["status"], "oracle": oracle_verdict.status.value, **{k: v for k, v in p.items() if k not in ("rule", "status")}})
        if verdict is not None and verdict.status is not oracle_verdict.status:
            discrepancies.append({"rule": "->".join(verdict.provenance.detail) or verdict.provenance.kind, "fast": verdict.status.value, "oracle": oracle_verdict.status.value})
        if verdict is None or discrepancies or policy is Policy.ORACLE:
            verdict = oracle_verdict
        else:
            verdict = replace(verdict, provenance=Provenance(verdict.provenance.kind, verdict.provenance.detail + ("oracle-confirmed",)))
        cert = oracle_cert

    if cert is not None and not verify_certificate(H, Ambient(n, check_caps=False), cert):  # pragma: no cover - oracle raises first
        cert = None
    clock.timings["total"] = (time.perf_counter() - t0) * 1e3
    return ClassifyReport(
        n=n,
        generators=H.canonical_generators(),
        order=H.order,
        verdict=verdict,
        certificate=cert,
        trace=trace,
        discrepancies=discrepancies,
        timings=clock.timings,
    )


def audit_checkers(H: Subgroup) -> list[dict]:
    """Run every structural checker on H and hold each firing against the oracle.

    One record per checker that fires.  ``discrepancy`` is set when the oracle
    finds H perfect, i.e. the checker's prediction is wrong.  Instances with
    three generators also report whether powers of x3 cover the cosets of
    <x1, x2>.
    """
    from perfcodes.perfect.hypotheses import quotient_cyclic_check

    oracle_status = None
    records = []
    for rule, checker, _ in CHECKERS:
        inst = checker(H)
        if inst is None:
            continue
        if oracle_status is None:
            oracle_status = oracle_double_coset(H, Ambient(H.n), certificate=False)[0].status
        rec = {
            "rule": rule,
            "generators": H.canonical_generators(),
            "n": H.n,
            "instance": inst.to_json(),
            "witness_verified": verify_certificate(H, Ambient(H.n, check_caps=False), BadDoubleCoset(inst.witness)),
            "oracle": oracle_status.value,
            "discrepancy": oracle_status is not Status.NOT_PERFECT,
        }
        if len(inst.xs) >= 3 and inst.s is not None:
            rec["quotient_cyclic"] = quotient_cyclic_check(inst)
        records.append(rec)
    return records
