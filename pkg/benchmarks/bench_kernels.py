"""Compare the compiled kernels with the pure-Python fallback.

Each kernel runs in its own interpreter (``QGAUSS_PURE=1`` selects the
fallback), so module-level selection is exercised exactly as users see it.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, sys, timeit
from qgauss import polyalg, qkernel, verify
from qgauss.polyalg import IntPoly

repeat = int(sys.argv[1])
rng = random.Random(0)
small_a = IntPoly([rng.randrange(-1000, 1000) for _ in range(400)])
small_b = IntPoly([rng.randrange(-1000, 1000) for _ in range(400)])
big_a = IntPoly([rng.randrange(2 ** 80) for _ in range(200)])
big_b = IntPoly([rng.randrange(2 ** 80) for _ in range(200)])

def pascal():
    qkernel.clear_cache()
    qkernel.q_binomial(160, 80)

def divide():
    qkernel.q_binomial_via_factorials(60, 30)

def scan():
    qkernel.clear_cache()
    for quad in verify.enumerate_quadruples(64):
        verify.check_c1_c2(*quad)

cases = {
    "mul 400x400 small ints": lambda: small_a * small_b,
    "mul 200x200 80-bit ints": lambda: big_a * big_b,
    "Pascal fill binom(160,80)": pascal,
    "exact division 60!/(30!30!)": divide,
    "conjecture scan ad=bc<=64": scan,
}
out = {"kernel": polyalg.KERNEL}
for name, fn in cases.items():
    out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
print(json.dumps(out))
"""


def measure(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("QGAUSS_PURE", None)
    if pure:
        env["QGAUSS_PURE"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast, slow = measure(False, args.repeat), measure(True, args.repeat)
    if fast.pop("kernel") != "compiled":
        sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation` first")
    slow.pop("kernel")
    width = max(map(len, fast))
    print(f"{'workload':{width}}  {'compiled':>10}  {'python':>10}  speedup")
    for name in fast:
        c, p = fast[name], slow[name]
        print(f"{name:{width}}  {c * 1e3:8.2f}ms  {p * 1e3:8.2f}ms  {p / c:6.1f}x")


if __name__ == "__main__":
    main()
