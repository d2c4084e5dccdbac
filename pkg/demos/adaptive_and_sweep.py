#!/usr/bin/env python3
"""Adaptive localization and the full benchmark sweep.

First runs the iterative procedure that localizes the phase without prior
knowledge, then sweeps both probe families over the flip-angle grid and
writes the precision / variance / mean datasets to ./demo_output/.
"""

import math
import os

from ipower import (
    adaptive_localize,
    discordant_probe,
    flip_angle_grid,
    run_sweep,
    setting_hamiltonian,
    sweep_csv_text,
    sweep_rows,
)

PHI_TRUE = math.pi / 4

print("Adaptive localization (low-purity probe, p = 0.13, setting 1)")
rho = discordant_probe(0.13)
trials, converged = adaptive_localize(rho, setting_hamiltonian(1), PHI_TRUE, max_iters=5)
for n, value in enumerate(trials, start=1):
    print(f"  round {n}: trial phase = {value:.10f}")
print(f"  converged to pi/4 = {PHI_TRUE:.10f}: {converged}")
print("  (the first measurement already pins the phase in exact mode)")

print()
print("Benchmark sweep over the 37-point flip-angle grid, exact mode")
runs = run_sweep(("Q", "C"), (1, 2, 3), flip_angle_grid(), PHI_TRUE)
rows = sweep_rows(runs)

failed = [(r["s"], r["k"]) for r in rows if r["failed"] and r["p"] > 1e-12]
at_origin = sum(1 for r in rows if r["failed"] and r["p"] <= 1e-12)
print(f"  {len(rows)} runs; {at_origin} fail at p = 0 (no information there)")
print(f"  failing pairs with p > 0: {sorted(set(failed))}")
print("  only the classical probe under its blind generator ever fails")

print()
print("Worst-case saturation: for the discordant family at k = 2, 3 the")
print("reconstructed F/4 equals the interferometric power p^2:")
for row in rows:
    if row["s"] == "Q" and row["k"] == 2 and row["p"] in (rows[5]["p"], rows[20]["p"]):
        print(
            f"  p = {row['p']:.4f}:  F/4 = {row['f_exp_over_4']:.10f}"
            f"   power = {row['ip']:.10f}"
        )

os.makedirs("demo_output", exist_ok=True)
path = os.path.join("demo_output", "benchmark_sweep.csv")
with open(path, "w", encoding="utf-8") as fh:
    fh.write(sweep_csv_text(runs))
print()
print(f"Full sweep written to {path}")
print("Columns: s,k,p,f_exp_over_4,ip,var,nu_var_product,phi_hat,failed")
print("The same datasets are available from the command line:")
print("  ipower figure3 --out demo_output/fig")
