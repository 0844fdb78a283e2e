"""Time the search kernels with numba and with the pure-Python fallback.

Each backend runs in its own interpreter (the choice is made at import time
from TIHANY_KIT_PURE).  Compilation is excluded by a warm-up call.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from tihany_kit._accel import backend
from tihany_kit.chromatic import chromatic_index, chromatic_index_at_most
from tihany_kit.harness.families import enumerate_classes, multicycle, petersen
from tihany_kit.linegraph import build_line_graph, chromatic_number_bruteforce, max_clique_bruteforce

repeat = int(sys.argv[1])
family = list(enumerate_classes(5, 8, 3))
hard = [petersen(3, 3, 3), petersen(3, 1, 1), multicycle(7, 3), multicycle(5, 5)]
chromatic_index(multicycle(5, 2))
max_clique_bruteforce(build_line_graph(multicycle(5, 2)))
chromatic_number_bruteforce(build_line_graph(multicycle(3, 1)))

def clock(fn):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best

out = {
    "backend": backend(),
    "edge_colouring_search (441 classes)": clock(lambda: [chromatic_index(g) for g in family]),
    "edge_colouring_search (class-2 multigraphs)": clock(lambda: [chromatic_index(g) for g in hard]),
    "infeasible decision (Petersen x3, 9 colours)": clock(lambda: chromatic_index_at_most(petersen(3, 3, 3), 9)),
    "max_clique (441 line graphs)": clock(lambda: [max_clique_bruteforce(build_line_graph(g)) for g in family]),
    "vertex_colouring_oracle (441 line graphs)": clock(lambda: [chromatic_number_bruteforce(build_line_graph(g)) for g in family]),
}
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("TIHANY_KIT_PURE", None)
    if pure:
        env["TIHANY_KIT_PURE"] = "1"
    done = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(done.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "numba":
        print("numba unavailable; both runs used the Python kernels")
    width = max(len(k) for k in fast if k != "backend")
    print(f"{'workload':<{width}}  {'numba s':>9}  {'python s':>9}  {'speedup':>8}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:<{width}}  {fast[key]:9.4f}  {slow[key]:9.4f}  {slow[key] / max(fast[key], 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
