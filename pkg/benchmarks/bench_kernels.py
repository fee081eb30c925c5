"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the outer-product vectorization alone, then full face-dimension oracle
runs, once per backend. Backends are swapped in-process by rebinding the
dispatch module's implementation.
"""
import argparse
import timeit

import numpy as np

from sepfaces import OracleConfig, PureState, face_dim_oracle, kernels
from sepfaces import _pykernels

try:
    from sepfaces import _ckernels
except ImportError:
    _ckernels = None


def _rows(n, d, seed=0):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))


def _oracle_case(dims, seed=0):
    rng = np.random.default_rng(seed)
    d = int(np.prod(dims))
    state = PureState.from_amplitudes(dims, rng.standard_normal(d) + 1j * rng.standard_normal(d))
    cfg = OracleConfig(seed=1)
    return lambda: face_dim_oracle(state, cfg)


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled extension not built; timing the fallback only")

    z16, z64 = _rows(4096, 16), _rows(1024, 64)
    cases = [
        ("vectorize 4096 x 16", lambda: kernels.vectorize_outer_rows(z16)),
        ("vectorize 1024 x 64", lambda: kernels.vectorize_outer_rows(z64)),
    ]
    for dims in ((2, 2, 2), (3, 3), (2, 2, 2, 2), (3, 3, 2)):
        cases.append((f"oracle dims={dims}", _oracle_case(dims)))

    original = kernels._impl
    print(f"{'case':<26}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    try:
        for label, fn in cases:
            times = {}
            for name, mod in backends.items():
                kernels._impl = mod
                times[name] = _best(fn, args.repeat)
            row = f"{label:<26}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)
    finally:
        kernels._impl = original


if __name__ == "__main__":
    main()
