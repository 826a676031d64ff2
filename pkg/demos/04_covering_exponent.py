# Exact covering exponents, by enumeration and by the closed form for paths.
# Run: python demos/04_covering_exponent.py

# %%
from itertools import combinations

from motifgraph import gamma_bar, path_closed_form, preset

subjects = {
    "edge": [(0, 1)],
    "triangle": [(0, 1), (1, 2), (0, 2)],
    "path on 4": [(0, 1), (1, 2), (2, 3)],
    "K4": list(combinations(range(4), 2)),
}
H = preset("path:3")

# %%
for name, S in subjects.items():
    res = gamma_bar(S, H)
    cf = path_closed_form(S, H.k)
    print(f"{name:10s} gamma_bar={str(res.gamma_bar):4s} closed form={str(cf.gamma_bar):4s} "
          f"exc={cf.exc} beta={cf.beta} eta={cf.eta}  appears near m = n^{res.exponent}")

# %%
# the covering that attains the maximum for K4: six paths, each with its own fresh end
w = gamma_bar(subjects["K4"], H).witness
for p in w.placements:
    print("  path", p.vertices)
print("a =", w.a, "b =", w.b)
