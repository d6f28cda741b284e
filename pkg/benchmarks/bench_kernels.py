#!/usr/bin/env python3
"""Benchmark the compiled clause-mask kernels against the pure-Python twin.

Two views:

* micro: the three kernel operations on random six-label hyper-power-set
  elements, timed in-process for both implementations;
* end-to-end: a dense conjunctive fold plus a full PCR5 combination, run in
  a subprocess per backend (the backend is chosen at import time).

Usage: ``python benchmarks/bench_kernels.py [--end-to-end-only]``
"""

import os
import random
import subprocess
import sys
import time

REPEATS = 5
N_LABELS = 6
N_ELEMENTS = 3000
SEED = 20260809


def random_elements(impl, count, rng):
    out = []
    full = (1 << N_LABELS) - 1
    for _ in range(count):
        clauses = [rng.randint(1, full) for _ in range(rng.randint(1, 4))]
        out.append(impl.absorb_masks(clauses))
    return out


def best_of(fn, repeats=REPEATS):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def micro(impl):
    rng = random.Random(SEED)
    elements = random_elements(impl, N_ELEMENTS, rng)
    pairs = [(elements[rng.randrange(N_ELEMENTS)], elements[rng.randrange(N_ELEMENTS)])
             for _ in range(N_ELEMENTS)]

    def run_intersect():
        for a, b in pairs:
            impl.intersect_canon(a, b)

    def run_union():
        for a, b in pairs:
            impl.union_canon(a, b)

    raw = [[rng.randint(0, (1 << N_LABELS) - 1) for _ in range(6)] for _ in range(N_ELEMENTS)]

    def run_absorb():
        for masks in raw:
            impl.absorb_masks(masks)

    return {
        "intersect": best_of(run_intersect) / N_ELEMENTS,
        "union": best_of(run_union) / N_ELEMENTS,
        "absorb": best_of(run_absorb) / N_ELEMENTS,
    }


def end_to_end():
    """Dense hyper-power-set combination; prints seconds on stdout."""
    from fractions import Fraction

    from massfusion import Bba, Frame, FREE, HYBRID, MassMatrix, Model, conjunctive, pcr5_multi
    from massfusion.kernels import BACKEND

    rng = random.Random(SEED)
    frame = Frame([f"h{i}" for i in range(N_LABELS)])
    free = Model(frame, FREE)
    constrained = Model(frame, HYBRID, ["h0&h1", "h2&h3&h4"])
    full = (1 << N_LABELS) - 1

    def random_bba(model, focals):
        from massfusion.kernels import absorb_masks

        elements = set()
        while len(elements) < focals:
            clauses = [rng.randint(1, full) for _ in range(rng.randint(1, 3))]
            elements.add(frame.element(absorb_masks(clauses)))
        weights = [rng.randint(1, 1000) for _ in range(len(elements))]
        total = sum(weights)
        return Bba(model, {e: Fraction(w, total) for e, w in zip(elements, weights)})

    matrix_free = MassMatrix([random_bba(free, 60) for _ in range(3)])
    matrix_hyb = MassMatrix([random_bba(constrained, 40) for _ in range(2)])

    def run():
        conjunctive(matrix_free).reduced()
        pcr5_multi(matrix_hyb, model=constrained)

    seconds = best_of(run, repeats=3)
    print(f"{BACKEND} {seconds:.4f}")
    return seconds


def run_subprocess(backend):
    env = dict(os.environ, MASSFUSION_KERNEL=backend)
    proc = subprocess.run([sys.executable, __file__, "--end-to-end-only"],
                          capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    name, seconds = proc.stdout.split()[-2:]
    return float(seconds)


def main():
    if "--end-to-end-only" in sys.argv:
        end_to_end()
        return

    from massfusion import _pykernels

    try:
        from massfusion import _ckernels
    except ImportError:
        _ckernels = None

    print(f"clause-mask kernels, {N_LABELS} labels, {N_ELEMENTS} elements per op")
    print()
    pure = micro(_pykernels)
    rows = [("pure", pure)]
    if _ckernels is not None:
        rows.append(("compiled", micro(_ckernels)))
    header = f"{'op':<12}" + "".join(f"{name:>14}" for name, _ in rows)
    if _ckernels is not None:
        header += f"{'speedup':>10}"
    print(header)
    for op in ("intersect", "union", "absorb"):
        cells = "".join(f"{timings[op] * 1e9:>12.0f}ns" for _, timings in rows)
        line = f"{op:<12}{cells}"
        if _ckernels is not None:
            line += f"{pure[op] / rows[1][1][op]:>9.1f}x"
        print(line)

    print()
    print("end-to-end: three-source dense conjunctive fold + two-source pcr5")
    timings = {}
    for backend in (["pure", "compiled"] if _ckernels is not None else ["pure"]):
        timings[backend] = run_subprocess(backend)
        print(f"  {backend:<9} {timings[backend] * 1e3:8.1f} ms")
    if "compiled" in timings:
        print(f"  speedup   {timings['pure'] / timings['compiled']:8.1f} x")


if __name__ == "__main__":
    main()
