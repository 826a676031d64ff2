# Triangles in a union of random 2-paths appear once m passes n^(3 - gamma_bar) = n.
# Run: python demos/05_subgraph_appearance.py

# %%
from motifgraph import appearance_experiment, preset

n = 80
S, H = preset("triangle"), preset("path:3")
grid = [int(n ** e) for e in (0.5, 0.75, 1.0, 1.25, 1.5)]

# %%
res = appearance_experiment(S, H, n, grid, trials=60, seed=3)
print("threshold exponent:", res["exponent"])
for pt in res["points"]:
    print(f"m={pt['p_or_m']:5d}  log(m/m*)={pt['log_ratio']:+.2f}  p_hat={pt['p_hat']:.2f}")
