"""Compare the compiled and pure-numpy backends of the two hot kernels.

Run:  python benchmarks/bench_kernels.py [--rows 800] [--bits 192] [--repeat 5]

The workloads mirror real use: ``maximal_mask`` over packed separation-side
bitsets and ``find_covering_triple`` over small-side cover rows where no
triple exists (the worst case, since the scan cannot exit early).
"""

import argparse
import random
import time

import numpy as np

from tanglekit import _kernels
from tanglekit._kernels import (
    _find_triple_np,
    _maximal_mask_np,
    pack_masks,
)


def make_inputs(rows, bits, seed=0):
    rng = random.Random(seed)
    smalls = [rng.getrandbits(bits) for _ in range(rows)]
    bigs = [m | rng.getrandbits(bits) for m in smalls]
    # covers that never complete a triple: keep one bit permanently clear
    vfull = (1 << bits) - 1
    vcovs = [rng.getrandbits(bits) & (vfull >> 1) for _ in range(rows)]
    ebits = bits // 2
    efull = (1 << ebits) - 1
    ecovs = [rng.getrandbits(ebits) for _ in range(rows)]
    return (
        pack_masks(smalls, bits),
        pack_masks(bigs, bits),
        pack_masks(vcovs, bits),
        pack_masks(ecovs, ebits),
        pack_masks([vfull], bits)[0],
        pack_masks([efull], ebits)[0],
    )


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=800)
    ap.add_argument("--bits", type=int, default=192)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    small, big, vcov, ecov, vfull, efull = make_inputs(args.rows, args.bits)

    print(f"rows={args.rows} bits={args.bits} numba_available={_kernels.HAS_NUMBA}")

    if _kernels.HAS_NUMBA:
        from tanglekit._kernels import _find_triple_nb, _maximal_mask_nb

        _maximal_mask_nb(small[:4], big[:4])  # compile
        _find_triple_nb(vcov[:4], ecov[:4], vfull, efull)
        t_nb, out_nb = timeit(lambda: _maximal_mask_nb(small, big), args.repeat)
        print(f"maximal_mask        numba : {t_nb * 1e3:9.2f} ms")
    else:
        t_nb = out_nb = None
        print("maximal_mask        numba :    unavailable")

    t_np, out_np = timeit(lambda: _maximal_mask_np(small, big), args.repeat)
    print(f"maximal_mask        numpy : {t_np * 1e3:9.2f} ms")
    if out_nb is not None:
        assert list(out_nb) == list(out_np)
        print(f"maximal_mask        ratio : {t_np / t_nb:9.2f}x")

    if _kernels.HAS_NUMBA:
        from tanglekit._kernels import _find_triple_nb

        t_nb, r_nb = timeit(
            lambda: _find_triple_nb(vcov, ecov, vfull, efull), args.repeat
        )
        print(f"find_covering_triple numba: {t_nb * 1e3:9.2f} ms")
    else:
        t_nb = r_nb = None
        print("find_covering_triple numba:    unavailable")

    t_np, r_np = timeit(lambda: _find_triple_np(vcov, ecov, vfull, efull), args.repeat)
    print(f"find_covering_triple numpy: {t_np * 1e3:9.2f} ms")
    if r_nb is not None:
        assert tuple(int(x) for x in r_nb) == tuple(r_np)
        print(f"find_covering_triple ratio: {t_np / t_nb:9.2f}x")


if __name__ == "__main__":
    main()
