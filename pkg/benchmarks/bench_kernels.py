"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times the hot kernels directly, then the 1000-case oracle battery end to
end in a subprocess per backend (FNMETRIC_PURE=1 forces the fallback).
"""
import argparse
import os
import subprocess
import sys
import timeit

from fnmetric import _pykernels

try:
    from fnmetric import _ckernels
except ImportError:
    _ckernels = None

CASES = {
    "mul": ("mul", ((1.5, 0.2, 0.3, 0.7066666666666667), (0.9, -0.1, 0.4, 1.0666666666666667))),
    "sphere_lengths": ("sphere_lengths", (0.5, 0.3, 0.2, 1.0, 0.8, 0.4)),
    "torus_lengths": ("torus_lengths", (0.5, 0.8, 0.4)),
}


def _recover_args(mod):
    d, t = mod.sphere_lengths(0.5, 0.3, 0.2, 1.0, 0.8, 0.7)
    return 1, (0.5, 0.3, 0.2, 1.0), 0.8, d, t


def bench(mod, repeat):
    out = {}
    for name, (fn, args) in CASES.items():
        f = getattr(mod, fn)
        n, _ = timeit.Timer(lambda: f(*args)).autorange()
        out[name] = min(timeit.repeat(lambda: f(*args), number=n, repeat=repeat)) / n
    rargs = _recover_args(mod)
    f = mod.recover_twist
    out["recover_twist"] = min(timeit.repeat(lambda: f(*rargs), number=20, repeat=repeat)) / 20
    return out


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["FNMETRIC_PURE"] = "1"
    else:
        env.pop("FNMETRIC_PURE", None)
    code = ("import time, fnmetric\nfrom fnmetric.oracle_check import run_battery\n"
            "t = time.perf_counter(); r = run_battery(1000, 7, axioms=0)\n"
            "print(fnmetric.BACKEND, time.perf_counter() - t, r.passed)")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, secs, ok = res.stdout.split()
    return backend, float(secs), ok == "True"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = bench(_pykernels, args.repeat)
    cy = bench(_ckernels, args.repeat) if _ckernels else {}
    print(f"{'kernel':16s} {'python (us)':>12s} {'cython (us)':>12s} {'speedup':>8s}")
    for k, v in py.items():
        c = cy.get(k)
        cs = f"{c * 1e6:12.3f}" if c else f"{'n/a':>12s}"
        sp = f"{v / c:8.1f}" if c else f"{'':>8s}"
        print(f"{k:16s} {v * 1e6:12.3f} {cs} {sp}")
    print()
    rows = [end_to_end(True)]
    if _ckernels:
        rows.append(end_to_end(False))
    for backend, secs, ok in rows:
        print(f"battery 1000 cases, {backend:7s}: {secs:7.3f} s  passed={ok}")


if __name__ == "__main__":
    main()
