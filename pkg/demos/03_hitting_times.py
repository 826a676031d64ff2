# In the motif process, the graph tends to become connected, and to gain a
# perfect matching, at the very step the last isolated vertex disappears.
# Run: python demos/03_hitting_times.py

# %%
from motifgraph import HittingConfig, hitting_stats, preset

for name in ("edge", "path:3", "triangle"):
    res = hitting_stats(HittingConfig(n=120, motif=preset(name), trials=30, seed=5))
    s = res["summary"]
    print(
        f"{name:9s} conn==tau1 {s['conn_eq_tau1']['fraction']:.2f}  "
        f"pm==tau1 {s['pm_eq_tau1']['fraction']:.2f}  "
        f"ham==tau2 {s['ham_eq_tau2']['fraction']:.2f}  "
        f"mean tau1 {s['tau1']['mean']:.0f}"
    )

# %%
# one trial in detail
rep = res["reports"][0]
print({k: getattr(rep, k) for k in ("tau1", "tau2", "tau_c", "tau_M", "tau_H", "ham_checks")})
