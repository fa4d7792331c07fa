"""Deletion to a structured residual while keeping the deleted part connected.

Each solver removes at most k vertices S so that G - S falls into a class
(bounded degree, pathwidth one, small treedepth, no long path, scattered) and
G[S] itself is p-edge-connected.  The answers are checked against brute force.
"""

from steiner_extension import oracle
from steiner_extension.deletion import solve_bdds, solve_pvc, solve_pw1ds, solve_scattered, solve_tdds
from steiner_extension.generators import generate

g = generate("random_degenerate", {"n": 9, "eta": 2, "density": 0.9}, 3)
print("edges:", sorted(g.edges))

runs = [
    ("bdds", {"eta": 2}, lambda k, p: solve_bdds(g, k, p, 2)),
    ("pw1ds", {}, lambda k, p: solve_pw1ds(g, k, p)),
    ("tdds", {"eta": 2}, lambda k, p: solve_tdds(g, k, p, 2)),
    ("pvc", {"eta": 3}, lambda k, p: solve_pvc(g, k, p, 3)),
    ("scattered", {"alpha": 2, "beta": 4}, lambda k, p: solve_scattered(g, k, p, alpha=2, beta=4)),
]
for name, extras, solve in runs:
    for k in range(0, 6):
        res = solve(k, 1)
        truth = oracle.brute_deletion(name, g, k, 1, extras)
        assert res.status == truth.status
        if res.yes:
            print(f"{name:9s} smallest connected deletion set: {sorted(res.solution)} (k={k}, oracle agrees)")
            break
    else:
        print(f"{name:9s} nothing within k=5")
