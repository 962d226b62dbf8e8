"""JSON encoding of classification reports and certificates."""

from __future__ import annotations

import hashlib
import json

from perfcodes import __version__
from perfcodes.config import get_caps
from perfcodes.perfect.types import (
    BadDoubleCoset,
    Certificate,
    ClassifyReport,
    Provenance,
    Status,
    TraceStep,
    Transversal,
    Verdict,
)
from perfcodes.perm import format_cycles, parse_cycles

SCHEMA = "perfcodes.report/1"

# transversals up to this size are written in cycle notation, larger ones as ranks
CYCLE_ENCODING_LIMIT = 256


def certificate_to_json(cert: Certificate | None, n: int) -> dict | None:
    if cert is None:
        return None
    if isinstance(cert, BadDoubleCoset):
        return {"kind": cert.kind, "encoding": "cycles", "n": n, "data": [format_cycles(cert.representative)]}
    if len(cert) <= CYCLE_ENCODING_LIMIT:
        return {"kind": cert.kind, "encoding": "cycles", "n": n, "data": [format_cycles(p) for p in cert.representatives]}
    return {"kind": cert.kind, "encoding": "rank", "n": n, "data": [int(r) for r in cert.ranks]}


def certificate_from_json(d: dict | None) -> Certificate | None:
    if d is None:
        return None
    n = d["n"]
    if d["kind"] == BadDoubleCoset.kind:
        return BadDoubleCoset(parse_cycles(d["data"][0], n))
    if d["kind"] != Transversal.kind:
        raise ValueError(f"unknown certificate kind {d['kind']!r}")
    if d["encoding"] == "rank":
        return Transversal(d["data"], n)
    return Transversal.from_perms([parse_cycles(s, n) for s in d["data"]]) if d["data"] else Transversal([], n)


def certificate_digest(cert: Certificate | None, n: int) -> str | None:
    if cert is None:
        return None
    blob = json.dumps(certificate_to_json(cert, n), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def report_to_json(report: ClassifyReport, command: str = "classify", caps: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "n": report.n,
        "generators": list(report.generators),
        "order": report.order,
        "verdict": report.verdict.status.value,
        "provenance": report.verdict.provenance.to_json(),
        "rule_trace": [s.to_json() for s in report.trace],
        "certificate": certificate_to_json(report.certificate, report.n),
        "discrepancies": report.discrepancies,
        "timing_ms": report.timings,
        "caps": get_caps().as_dict() if caps is None else caps,
    }


def report_from_json(d: dict) -> ClassifyReport:
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    return ClassifyReport(
        n=d["n"],
        generators=list(d["generators"]),
        order=d["order"],
        verdict=Verdict(Status(d["verdict"]), Provenance.from_json(d["provenance"])),
        certificate=certificate_from_json(d["certificate"]),
        trace=[TraceStep(s["rule"], s["basis"], s["inputs"], s["outcome"]) for s in d["rule_trace"]],
        discrepancies=list(d["discrepancies"]),
        timings=dict(d["timing_ms"]),
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
