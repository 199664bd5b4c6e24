"""Timing the recursions on seeded random co-trees.

Generation is timed separately from the recursion. The first call compiles
the kernels, which ``run_benchmark`` does before timing.
"""
from cograph_smd.bench import run_benchmark

sizes = [10**3, 10**4, 10**5, 10**6]
for directed in (False, True):
    print("directed" if directed else "undirected")
    print(f"{'leaves':>9} {'generate ms':>12} {'dp ms':>9} {'smd':>9}")
    for row in run_benchmark(sizes, seed=0, directed=directed):
        print(f"{row.size:>9} {row.generate_ms:>12.1f} {row.dp_ms:>9.1f} {row.smd:>9}")
