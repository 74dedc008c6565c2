"""Compare the numba and numpy backends of the resonant box enumeration.

Run with ``python benchmarks/bench_enumeration.py [--repeat N]``. Both backends
must return identical arrays; the script exits non-zero otherwise.
"""

import argparse
import sys
import time
from fractions import Fraction

import numpy as np

from hopf_pfaff import _accel
from hopf_pfaff.sections import SectionProblem, _budget, _offset, log_weight_bounds

# mu = (1/2, 1/4, 1/3, 1/9, 1/5, 1/25): three independent relations
SPECTRUM = [Fraction(1, d) for d in (2, 4, 3, 9, 5, 25)]
CHARACTER = (6, 1, 4, 1, 4, 1)


def workload():
    from hopf_pfaff.spectrum import Spectrum

    p = SectionProblem.create(Spectrum.exact(SPECTRUM), 2, CHARACTER)
    primes, M = p.spectrum.prime_exponent_matrix()
    M = np.array(M, dtype=np.int64)
    lo, hi = log_weight_bounds(p.spectrum)
    jobs = []
    for idx in [(0, 1), (2, 3), (0, 4), (1, 5)]:
        w = np.array(_offset(p, idx), dtype=np.int64)
        budget = _budget(w, lo, hi)
        caps = np.floor(budget / lo).astype(np.int64)
        jobs.append((M, M @ w, lo, budget, caps))
    return jobs


def timed(jobs, use_numba, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = [_accel.enumerate_weighted(*job, use_numba=use_numba) for job in jobs]
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    jobs = workload()
    t_np, out_np = timed(jobs, False, args.repeat)
    print(f"numpy : {t_np * 1e3:9.2f} ms  ({sum(len(o) for o in out_np)} points)")
    if not _accel.NUMBA_AVAILABLE:
        print("numba : not installed")
        return 0
    start = time.perf_counter()
    _accel.enumerate_weighted(*jobs[0], use_numba=True)
    print(f"numba : {(time.perf_counter() - start) * 1e3:9.2f} ms  first call (compile or cache load)")
    t_nb, out_nb = timed(jobs, True, args.repeat)
    print(f"numba : {t_nb * 1e3:9.2f} ms  best of {args.repeat}, speedup x{t_np / t_nb:.1f}")
    if not all(np.array_equal(a, b) for a, b in zip(out_np, out_nb)):
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
