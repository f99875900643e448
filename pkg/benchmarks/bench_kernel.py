"""Time the compiled normalizer against the pure-Python one.

Run: python3 benchmarks/bench_kernel.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

from deltacalc import _pykernel
from deltacalc.lam import Relation, normalize_steps
from deltacalc.syntax import parse_lambda

try:
    from deltacalc import _ckernel
except ImportError:
    _ckernel = None


def church(n: int) -> str:
    return r"(\f. \x. " + "f (" * n + "x" + ")" * n + ")"


MULT = r"(\m. \n. \f. m (n f))"
EXP = r"(\m. \n. n m)"

WORKLOADS = {
    "church 12*12": f"{MULT} {church(12)} {church(12)}",
    "church 3^5": f"{EXP} {church(3)} {church(5)}",
    "church 2^8": f"{EXP} {church(2)} {church(8)}",
    "eta-heavy": r"\g. " + r"(\a. \y. a y) (" * 40 + "g" + ")" * 40,
}


def bench(kernel, term, mode: Relation, repeat: int) -> tuple[float, int]:
    steps = normalize_steps(term, mode, 1_000_000, kernel=kernel)[1]
    best = min(timeit.repeat(lambda: normalize_steps(term, mode, 1_000_000, kernel=kernel), number=1, repeat=repeat))
    return best, steps


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernel is None:
        print("compiled kernel not built; only the fallback is available")
    print(f"{'workload':<16}{'mode':<9}{'steps':>7}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    for name, src in WORKLOADS.items():
        term = parse_lambda(src)
        mode = Relation.BETAETA if name.startswith("eta") else Relation.BETA
        py, steps = bench(_pykernel, term, mode, args.repeat)
        row = f"{name:<16}{mode.value:<9}{steps:>7}{py * 1e3:>12.2f}"
        if _ckernel is not None:
            cy, _ = bench(_ckernel, term, mode, args.repeat)
            row += f"{cy * 1e3:>12.2f}{py / cy:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
