# Connectivity of G(triangle, n, p) switches on near p = ln n / m_1.
# Run: python demos/02_connectivity_threshold.py

# %%
import math

from motifgraph import ExperimentConfig, preset, m_r, threshold_curve

n = 150
H = preset("triangle")
centre = math.log(n) / m_r(n, H, 1)
grid = [centre * f for f in (0.5, 0.75, 1.0, 1.25, 1.5, 2.0)]

# %%
cfg = ExperimentConfig("triangle", n, trials=60, seed=11, property="connected", grid=grid)
for pt in threshold_curve(cfg):
    lo, hi = pt.interval
    bar = "#" * int(round(30 * pt.p_hat))
    print(f"p/centre={pt.value / centre:4.2f}  p_hat={pt.p_hat:5.3f}  [{lo:.2f}, {hi:.2f}]  {bar}")

# %%
# the minimum-degree version uses the same sampler
cfg = ExperimentConfig("triangle", n, trials=60, seed=11, property="mindeg:2", grid=grid)
print("min degree >= 2:", [round(p.p_hat, 2) for p in threshold_curve(cfg)])
