"""Timing comparison of the compiled and pure-numpy kernel backends.

Runs the two hot kernels (batched monomial-sum evaluation and the
simultaneous root iteration) on the same inputs through both modules
and prints per-call medians plus the speedup.  The library picks its
backend once at import; this script bypasses that and times both
directly.

Usage: python3 benchmarks/bench_kernels.py [--points N] [--terms K]
       [--degree D] [--repeats R]
"""

import argparse
import math
import statistics
import time

import numpy as np

from fockbundle import _core_py

try:
    from fockbundle import _core
except ImportError:
    _core = None


def _time_call(fn, repeats):
    spans = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        spans.append(time.perf_counter() - t0)
    return statistics.median(spans)


def _fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.3f} s "


def bench_eval_terms(rng, points, terms, repeats):
    e0 = rng.integers(0, 12, size=terms).astype(np.int64)
    e1 = rng.integers(0, 12, size=terms).astype(np.int64)
    c = np.ascontiguousarray(
        rng.normal(size=terms) + 1j * rng.normal(size=terms), dtype=np.complex128
    )
    z0 = rng.normal(size=points) + 1j * rng.normal(size=points)
    z1 = rng.normal(size=points) + 1j * rng.normal(size=points)

    rows = []
    t_py = _time_call(lambda: _core_py.eval_terms(e0, e1, c, z0, z1), repeats)
    rows.append(("python", t_py))
    if _core is not None:
        t_c = _time_call(lambda: _core.eval_terms(e0, e1, c, z0, z1), repeats)
        rows.append(("compiled", t_c))
        a = _core_py.eval_terms(e0, e1, c, z0, z1)
        b = _core.eval_terms(e0, e1, c, z0, z1)
        worst = float(np.max(np.abs(a - b) / np.maximum(np.abs(a), 1.0)))
        assert worst <= 1e-12, f"backends disagree: {worst:.3e}"
    return f"eval_terms ({points} pts x {terms} terms)", rows


def bench_aberth(rng, degree, repeats):
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    c[-1] += 2.0
    c = np.ascontiguousarray(c, dtype=np.complex128)
    ang = 2 * math.pi * np.arange(degree) / degree + 0.4
    x0 = np.ascontiguousarray(np.exp(1j * ang), dtype=np.complex128)

    def run(mod):
        def call():
            x = x0.copy()
            assert mod.aberth(c, x, 200, 1e-12) > 0

        return call

    rows = [("python", _time_call(run(_core_py), repeats))]
    if _core is not None:
        rows.append(("compiled", _time_call(run(_core), repeats)))
    return f"aberth (degree {degree})", rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--terms", type=int, default=45)
    ap.add_argument("--degree", type=int, default=24)
    ap.add_argument("--repeats", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    if _core is None:
        print("compiled backend unavailable; timing the python kernels alone")

    benches = [
        bench_eval_terms(rng, args.points, args.terms, args.repeats),
        bench_aberth(rng, args.degree, args.repeats),
    ]
    for title, rows in benches:
        print(title)
        base = dict(rows).get("python")
        for name, t in rows:
            extra = ""
            if name != "python" and base:
                extra = f"  ({base / t:.1f}x vs python)"
            print(f"  {name:9s} {_fmt(t)}{extra}")


if __name__ == "__main__":
    main()
