"""Time the compiled and numpy gate kernels on random matchgate sequences.

    python benchmarks/bench_kernels.py --qubits 8 12 16 --batch 1 16 --gates 100
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from matchgeo import statevector as sv
from matchgeo.gates import random_matchgate
from matchgeo.statevector import GateApplication


def workload(n: int, gates: int, rng: np.random.Generator) -> list[GateApplication]:
    pool = [random_matchgate(rng) for _ in range(8)]
    out = []
    for _ in range(gates):
        u, v = rng.choice(n, size=2, replace=False)
        out.append(GateApplication(pool[rng.integers(len(pool))], (int(u), int(v))))
    return out


def best_time(apps, state, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        sv.run_sequence(state, apps)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qubits", type=int, nargs="+", default=[8, 12, 16])
    p.add_argument("--batch", type=int, nargs="+", default=[1, 16])
    p.add_argument("--gates", type=int, default=100)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    backends = sv.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the numpy fallback only")
    rng = np.random.default_rng(args.seed)
    previous = sv.backend_name()
    print(f"{'qubits':>6} {'batch':>5} " + " ".join(f"{b + ' ms/gate':>16}" for b in backends) + "  speedup")
    try:
        for n in args.qubits:
            apps = workload(n, args.gates, rng)
            for batch in args.batch:
                if batch * 2 ** n > 2 ** 24:
                    continue
                state = rng.standard_normal((2 ** n, batch)) + 0j
                state /= np.linalg.norm(state, axis=0)
                times, outs = {}, {}
                for b in backends:
                    sv.set_backend(b)
                    times[b] = best_time(apps, state, args.repeats)
                    outs[b] = sv.run_sequence(state, apps)
                if len(outs) == 2:
                    assert np.allclose(outs["cython"], outs["python"], atol=1e-10), "backends disagree"
                cells = " ".join(f"{1e3 * times[b] / args.gates:16.4f}" for b in backends)
                speed = f"{times['python'] / times['cython']:7.1f}x" if len(times) == 2 else "      -"
                print(f"{n:>6} {batch:>5} {cells}  {speed}", flush=True)
    finally:
        sv.set_backend(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
