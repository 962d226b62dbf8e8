"""Time the hot kernels with numba and with the pure-numpy fallback.

Each backend runs in its own interpreter because ``PERFCODES_NUMBA`` is read
at import time.  Usage::

    python3 benchmarks/bench_kernels.py --n 7 --repeat 3
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, math, sys, time
import numpy as np
from perfcodes import _accel, kernels
from perfcodes.group import Ambient, close
from perfcodes.perfect.oracle import build_transversal
from perfcodes.perm import parse_cycles

n, repeat = int(sys.argv[1]), int(sys.argv[2])
H = close([parse_cycles("(1 2)(3 4)", n), parse_cycles("(1 3)(2 4)", n)], n)
T = close([parse_cycles("(1 2)", n)], n)
amb = Ambient(n).arrays
gens = np.array([g.array_form for g in H.generators], dtype=np.uint8)
rows = kernels.unrank_range(0, math.factorial(n), n)

cases = {
    "unrank_range": lambda: kernels.unrank_range(0, math.factorial(n), n),
    "rank_rows": lambda: kernels.rank_rows(rows),
    "left_coset_labels": lambda: kernels.left_coset_labels(amb, H.elements),
    "double_coset_scan": lambda: kernels.double_coset_scan(amb, H.elements),
    "inverse_and_square": lambda: kernels.inverse_and_square(amb),
    "normalizer_mask": lambda: kernels.normalizer_mask(amb, gens, np.asarray(H.ranks)),
    "transversal_search": lambda: build_transversal(T, Ambient(n)),
}
out = {"numba": _accel.USE_NUMBA, "times": {}}
for name, fn in cases.items():
    fn()  # warm-up, includes compilation
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    out["times"][name] = min(samples)
print(json.dumps(out))
"""


def run_backend(flag: str, n: int, repeat: int) -> dict:
    env = dict(os.environ, PERFCODES_NUMBA=flag)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(n), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7, help="degree of the ambient symmetric group")
    ap.add_argument("--repeat", type=int, default=3, help="timed runs per kernel (best is kept)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    nb = run_backend("1", args.n, args.repeat)
    np_ = run_backend("0", args.n, args.repeat)
    rows = [
        {"kernel": k, "numba_s": nb["times"][k], "numpy_s": np_["times"][k],
         "speedup": np_["times"][k] / nb["times"][k] if nb["times"][k] else float("inf")}
        for k in nb["times"]
    ]
    if args.json:
        print(json.dumps({"n": args.n, "rows": rows}, indent=2))
        return 0
    print(f"S_{args.n}, best of {args.repeat}")
    print(f"{'kernel':22s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['kernel']:22s} {r['numba_s'] * 1e3:9.2f}ms {r['numpy_s'] * 1e3:9.2f}ms {r['speedup']:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
