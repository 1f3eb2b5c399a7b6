"""Compare the compiled and pure-Python truth-table kernels.

Run with ``python3 benchmarks/bench_kernel.py``. Each backend evaluates the
same random formulas over ``n`` atoms; outputs are checked for equality
before timings are reported.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from trivalent import _kernel_py
from trivalent.formula import random_formula
from trivalent.semantics import DEFAULT, compile_formula

try:
    from trivalent import _kernel as compiled
except ImportError:
    compiled = None


def workload(n_atoms: int, count: int, depth: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    names = tuple(f"x{i}" for i in range(n_atoms))
    return [compile_formula(random_formula(rng, names, depth), names) for _ in range(count)]


def run(backend, programs, n_atoms: int, bivalent: bool) -> list[bytes]:
    tables = (DEFAULT.and_table, DEFAULT.or_table, DEFAULT.cond_table)
    return [backend.evaluate(p, n_atoms, bivalent, *tables) for p in programs]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", type=int, nargs="+", default=[3, 6, 9])
    parser.add_argument("--formulas", type=int, default=200)
    parser.add_argument("--depth", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    print(f"{'atoms':>5} {'mode':>9} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.atoms:
        programs = workload(n, args.formulas, args.depth, args.seed)
        for bivalent in (False, True):
            if run(compiled, programs, n, bivalent) != run(_kernel_py, programs, n, bivalent):
                print(f"backends disagree at {n} atoms", file=sys.stderr)
                return 1
            times = {}
            for name, backend in (("python", _kernel_py), ("cython", compiled)):
                times[name] = min(
                    timeit.repeat(lambda: run(backend, programs, n, bivalent), number=1, repeat=args.repeat)
                )
            mode = "bivalent" if bivalent else "trivalent"
            speedup = times["python"] / times["cython"]
            print(f"{n:>5} {mode:>9} {times['python']:>10.4f} {times['cython']:>10.4f} {speedup:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
