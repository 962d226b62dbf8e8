"""Command-line interface.

Exit codes: 0 ok, 1 usage or parse error, 2 resource cap, 3 verification
failure or counterexample.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from perfcodes import _accel
from perfcodes.cache import VerdictCache
from perfcodes.config import ResourceCapExceeded, VerificationError, get_caps, set_caps
from perfcodes.group import Ambient, close
from perfcodes.numtheory import check_unit_group
from perfcodes.paper_suite import InternalInconsistency, run_paper_suite
from perfcodes.perfect.classify import classify
from perfcodes.perfect.cyclic import sweep_cyclic
from perfcodes.perfect.oracle import build_transversal, oracle_double_coset
from perfcodes.perfect.types import ClassifyReport, Interpretation, Policy, Provenance, Status, TraceStep, Verdict
from perfcodes.perm import format_cycles, parse_cycles
from perfcodes.report import certificate_digest, certificate_to_json, dumps, report_to_json

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3
NUMTHEORY_L_MAX = 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_generators(text: str, n: int):
    parts = [p.strip() for p in text.split(";")]
    return [parse_cycles(p, n) for p in parts if p]


def _write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".perfcodes-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _human_report(r: ClassifyReport) -> str:
    prov = r.verdict.provenance
    lines = [
        f"S_{r.n}, |H| = {r.order}, generators: {'; '.join(r.generators) or 'e'}",
        f"verdict: {r.verdict.status.value} ({prov.kind}{': ' + ', '.join(prov.detail) if prov.detail else ''})",
        "trace:",
    ]
    lines += [f"  {s.rule}: {s.outcome}" for s in r.trace]
    if r.certificate is not None:
        c = r.certificate
        desc = f"bad double coset of {format_cycles(c.representative)}" if c.kind == "bad_double_coset" else f"transversal of size {len(c)}"
        lines.append(f"certificate: {desc}")
    for d in r.discrepancies:
        lines.append(f"discrepancy: {d['rule']} said {d['fast']}, oracle says {d['oracle']}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    H = close(parse_generators(args.gens, args.n), args.n)
    gens = H.canonical_generators()
    caps = get_caps().as_dict()
    cache = VerdictCache.from_env(args.cache)
    hit = cache.get(args.n, gens, caps) if cache else None
    if hit is not None:
        report = ClassifyReport(
            n=args.n, generators=gens, order=H.order,
            verdict=Verdict(Status(hit.verdict), Provenance.from_json(hit.provenance)),
            certificate=None,
            trace=[TraceStep("cache", "verdict served from the verdict cache", {"certificate_digest": hit.certificate_digest}, hit.verdict)],
        )
    else:
        report = classify(H, args.n, args.policy, args.interpretation)
        if cache:
            cache.put(args.n, gens, report.verdict.status.value, report.verdict.provenance.to_json(),
                      certificate_digest(report.certificate, args.n), caps)
    print(dumps(report_to_json(report, "classify")) if args.json else _human_report(report))
    return EXIT_OK


def cmd_oracle(args) -> int:
    H = close(parse_generators(args.gens, args.n), args.n)
    t0 = time.perf_counter()
    verdict, cert = oracle_double_coset(H, Ambient(args.n))
    out = {
        "n": args.n,
        "generators": H.canonical_generators(),
        "order": H.order,
        "verdict": verdict.status.value,
        "provenance": verdict.provenance.to_json(),
        "certificate": certificate_to_json(cert, args.n),
        "timing_ms": {"oracle": (time.perf_counter() - t0) * 1e3},
    }
    if args.json:
        print(dumps(out))
    else:
        print(f"{out['verdict']} (|H| = {H.order} in S_{args.n})")
        if cert is not None and cert.kind == "bad_double_coset":
            print(f"witness: {format_cycles(cert.representative)}")
    return EXIT_OK


def cmd_transversal(args) -> int:
    H = close(parse_generators(args.gens, args.n), args.n)
    T = build_transversal(H, Ambient(args.n), budget=args.budget)
    if args.json:
        print(dumps({"n": args.n, "generators": H.canonical_generators(), "found": T is not None,
                     "certificate": certificate_to_json(T, args.n)}))
    elif T is None:
        print("none: no inverse-closed left transversal exists")
    else:
        print(f"inverse-closed left transversal of size {len(T)}")
        if len(T) <= 64:
            for p in T.representatives:
                print(f"  {format_cycles(p)}")
    return EXIT_OK


def cmd_sweep_cyclic(args) -> int:
    rows = sweep_cyclic(args.n, run_oracle=not args.no_oracle)
    text = "".join(json.dumps(r) + "\n" for r in rows)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    flagged = [r for r in rows if r.get("discrepancy") or not r["readings_agree"]]
    print(f"{len(rows)} cycle types, {len(flagged)} flagged", file=sys.stderr)
    return EXIT_OK


def cmd_paper_suite(args) -> int:
    result = run_paper_suite(args.budget)
    if args.json:
        print(dumps(result))
    else:
        for f in result["fixtures"]:
            status = "agree" if f["agree"] else "FINDING"
            print(f"{f['fixture']:36s} claim={f['claim']:<14} oracle={f['oracle']:<14} {status}")
        print(f"{len(result['findings'])} finding(s) in {result['elapsed_s']:.1f} s")
    return EXIT_OK


def cmd_numtheory_check(args) -> int:
    if not 2 <= args.l_max <= NUMTHEORY_L_MAX:
        raise UsageError(f"--l-max must lie in [2, {NUMTHEORY_L_MAX}]")
    result = check_unit_group(args.l_max)
    print(dumps(result) if args.json else
          f"l in [2, {args.l_max}]: {result['k_checked']} values of k checked, "
          f"{len(result['counterexamples'])} counterexample(s); order of 5 failures: {result['order_of_five_failures']}")
    return EXIT_VERIFY if result["counterexamples"] or result["order_of_five_failures"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None, help="worker threads for compiled kernels")
    common.add_argument("--cache", default=None, help="verdict cache file (default: $PERFCODES_CACHE)")
    common.add_argument("--allow-big", action="store_true", help="raise ambient caps to n <= 12")

    nodes = _Parser(add_help=False)
    nodes.add_argument("--budget", type=int, default=None, help="transversal search node budget")

    group_args = _Parser(add_help=False)
    group_args.add_argument("--n", type=int, required=True, help="degree of the symmetric group")
    group_args.add_argument("--gens", required=True, help='generators in cycle notation separated by ";"')

    p = _Parser(prog="perfcodes", description="Subgroup perfect codes in symmetric groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common, nodes, group_args], help="classify a subgroup")
    c.add_argument("--policy", choices=[x.value for x in Policy], default=Policy.CHECKED.value)
    c.add_argument("--interpretation", choices=[x.value for x in Interpretation], default=Interpretation.NOT_A_SQUARE.value)
    c.set_defaults(func=cmd_classify)

    o = sub.add_parser("oracle", parents=[common, nodes, group_args], help="double-coset oracle only")
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("transversal", parents=[common, nodes, group_args], help="search an inverse-closed transversal")
    t.set_defaults(func=cmd_transversal)

    s = sub.add_parser("sweep-cyclic", parents=[common], help="cyclic 2-subgroups by cycle type")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default=None, help="write JSON lines here instead of stdout")
    s.add_argument("--no-oracle", action="store_true")
    s.set_defaults(func=cmd_sweep_cyclic)

    ps = sub.add_parser("paper-suite", parents=[common], help="re-decide the published fixtures")
    ps.add_argument("--budget", choices=["quick", "full"], default="quick")
    ps.set_defaults(func=cmd_paper_suite)

    nt = sub.add_parser("numtheory-check", parents=[common], help="exhaustive unit-group checks")
    nt.add_argument("--l-max", type=int, default=14)
    nt.set_defaults(func=cmd_numtheory_check)
    return p


def _apply_global(args) -> None:
    caps = get_caps()
    if args.allow_big:
        caps = caps.with_(allow_big=True)
    if isinstance(getattr(args, "budget", None), int):
        caps = caps.with_(transversal_budget=args.budget)
    set_caps(caps)
    _accel.set_threads(args.threads)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _apply_global(args)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (VerificationError, InternalInconsistency) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
