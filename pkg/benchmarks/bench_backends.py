"""Compare the compiled kernel against the pure-Python fallback.

The backend is chosen at import time, so each measurement runs in a
subprocess with REALFORMS_KERNEL set.  Workloads cover the hot paths:
rational echelon reduction, structure-constant generation, and the
polynomial system plus reduced basis of a full classification run.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = ("rref", "tables", "system")


def run_workload(name: str) -> dict:
    from realforms._backend import BACKEND

    t0 = time.monotonic()
    if name == "rref":
        import random

        from realforms._backend import Rational
        from realforms.linalg import rref
        from realforms.scalars import FieldScalar

        rng = random.Random(11)
        rows = [
            [
                FieldScalar(Rational(rng.randint(-9, 9), rng.randint(1, 9)))
                for _ in range(60)
            ]
            for _ in range(60)
        ]
        rref(rows)
    elif name == "tables":
        from realforms.algebra import LieAlgebra

        L = LieAlgebra.build("E8", verify="none")
        L.verify_jacobi(sample=2000)
    elif name == "system":
        import json as _json
        from importlib import resources

        from realforms.forms import split_involution
        from realforms.groebner import groebner
        from realforms.pipeline import Embedding, involution_system

        raw = _json.loads(
            resources.files("realforms").joinpath("data").joinpath("a2_in_a3.json").read_text()
        )
        eps = Embedding.from_json_dict(raw)
        system = involution_system(eps, split_involution(eps.source))
        groebner(system.all_polys())
    else:
        raise SystemExit(f"unknown workload {name!r}")
    return {"backend": BACKEND, "seconds": time.monotonic() - t0}


def measure(workload: str, backend: str, repeat: int) -> float:
    best = None
    for _ in range(repeat):
        env = dict(os.environ, REALFORMS_KERNEL=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--worker", workload],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        rec = json.loads(out.stdout)
        assert rec["backend"] == backend, f"wanted {backend}, got {rec['backend']}"
        best = rec["seconds"] if best is None else min(best, rec["seconds"])
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="runs per cell, best taken")
    ap.add_argument("--worker", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        json.dump(run_workload(args.worker), sys.stdout)
        return 0

    print(f"{'workload':<10} {'compiled':>10} {'pure':>10} {'speedup':>9}")
    for name in WORKLOADS:
        fast = measure(name, "compiled", args.repeat)
        slow = measure(name, "pure", args.repeat)
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{name:<10} {fast:>9.3f}s {slow:>9.3f}s {ratio:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
