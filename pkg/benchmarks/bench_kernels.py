"""Side-by-side timing of the available search kernels.

Runs a fixed suite of embedding decisions plus a batch of random 0-1
models through every kernel that imported, then prints wall times, node
counts, and the speedup of the compiled extension over the pure-Python
fallback. Verdicts must agree between kernels; node counts may differ on
relaxation-heavy instances where pivot rounding reorders the tree.

Usage: python benchmarks/bench_kernels.py [--quick] [--seed N]
"""

import argparse
import sys
import time

from tembed.formulations import build_bte_model, build_qte_model
from tembed.generators import DENSITIES, GenSpec, generate
from tembed.graphs import complete_graph
from tembed.ilp import IlpModel, solve
from tembed.ilp.kernel import available_kernels
from tembed.rng import SplitMix64


def random_model(rng: SplitMix64) -> IlpModel:
    n = 2 + rng.randrange(9)
    mod = IlpModel(f"rnd{rng.randrange(10**6)}")
    xs = [mod.binary(f"x{j}") for j in range(n)]
    mod.maximize({j: rng.randrange(21) - 10 for j in xs if rng.randrange(4) != 0})
    for _ in range(rng.randrange(2 * n + 1)):
        coeffs = {j: rng.randrange(13) - 6 for j in xs if rng.randrange(3) != 0}
        coeffs = {j: a for j, a in coeffs.items() if a}
        if not coeffs:
            coeffs = {rng.randrange(n): 1 + rng.randrange(3)}
        rhs = rng.randrange(17) - 5
        if rng.randrange(6) == 0:
            mod.add_ge(coeffs, rhs)
        else:
            mod.add_le(coeffs, rhs)
    return mod


def embedding_cases(quick: bool):
    yield "K17 bte(16,16)", build_bte_model(complete_graph(17), 16, 16), 17.0
    yield "K18 bte(16,16)", build_bte_model(complete_graph(18), 16, 16), 18.0
    grid = [
        ("BarabasiAlbert", 20, "high", 1),
        ("Percolation", 24, "low", 2),
    ]
    if not quick:
        grid.append(("ErdosRenyi", 22, "medium", 5))
    for fam, n, dens, seed in grid:
        g = generate(GenSpec(fam, n, DENSITIES[dens], seed))
        yield f"{fam} n={n} {dens} bte", build_bte_model(g, 16, 16), float(n)
    g = generate(GenSpec("ErdosRenyi", 18, DENSITIES["medium"], 3))
    yield "ErdosRenyi n=18 qte", build_qte_model(g, (8, 16, 16, 8)), 18.0
    g = generate(GenSpec("NoisyBipartite", 20, DENSITIES["medium"], 4))
    yield "NoisyBipartite n=20 qte", build_qte_model(g, (8, 16, 16, 8)), 20.0


def time_solve(mod, target, kernel, time_limit):
    t0 = time.monotonic()
    res = solve(mod, target=target, kernel=kernel, time_limit=time_limit)
    return time.monotonic() - t0, res


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="skip the slowest instance")
    ap.add_argument("--seed", type=int, default=616)
    ap.add_argument("--time-limit", type=float, default=120.0)
    args = ap.parse_args(argv)

    kernels = available_kernels()
    print(f"kernels: {', '.join(kernels)}")
    width = max(len(k) for k in kernels) + 18

    rows = []
    for name, mod, target in embedding_cases(args.quick):
        cells = {}
        for k in kernels:
            wall, res = time_solve(mod, target, k, args.time_limit)
            cells[k] = (wall, res)
        verdicts = {cells[k][1].status for k in kernels}
        if len(verdicts) != 1:
            print(f"!! verdict mismatch on {name}: {verdicts}", file=sys.stderr)
            return 1
        rows.append((name, cells))

    batch = 100 if args.quick else 300
    rng_by_kernel = {k: SplitMix64(args.seed) for k in kernels}
    cells = {}
    for k in kernels:
        rng = rng_by_kernel[k]
        t0 = time.monotonic()
        nodes = 0
        for _ in range(batch):
            res = solve(random_model(rng), kernel=k)
            nodes += res.nodes
        cells[k] = (time.monotonic() - t0, nodes)
    rows.append((f"random models x{batch}", cells))

    print(f"\n{'case':30s}" + "".join(f"{k:>{width}}" for k in kernels) + f"{'speedup':>10s}")
    for name, cells in rows:
        line = f"{name:30s}"
        walls = []
        for k in kernels:
            wall, res = cells[k]
            nodes = res if isinstance(res, int) else res.nodes
            walls.append(wall)
            line += f"{wall:>{width - 12}.3f}s {nodes:>9d}n"
        if len(walls) == 2 and walls[1] > 0:
            line += f"{walls[0] / walls[1]:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
