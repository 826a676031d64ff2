# Three ways to build a random motif graph, all seeded.
# Run: python demos/01_sampling_models.py

# %%
from motifgraph import (
    SeededRng, preset, total_copies, m_r, sample_binomial, sample_uniform, process_stream,
)

H = preset("triangle")
n = 40
N = total_copies(n, H)   # copies of H in K_n
print(f"{H.label}: k={H.k}, aut={H.aut}, copies in K_{n} = {N}, m_1 = {m_r(n, H, 1)}")

# %%
# binomial model: every copy kept with probability p
g = sample_binomial(n, H, 0.002, SeededRng(seed := 7, 0))
print("binomial:", g, "min degree", g.min_degree())

# %%
# uniform model: exactly m distinct copies
g = sample_uniform(n, H, 25, SeededRng(seed, 1))
print("uniform: ", g, "isolated", g.isolated_count())

# %%
# the process adds copies one at a time in random order
stream = process_stream(n, H, SeededRng(seed, 2))
for step, placement in zip(range(1, 6), stream):
    print(f"step {step}: vertices {placement.vertices} edges {placement.edges}")

# %%
# same seed and stream, same graph
a = sample_binomial(n, H, 0.002, SeededRng(seed, 0)).to_json()
b = sample_binomial(n, H, 0.002, SeededRng(seed, 0)).to_json()
print("reproducible:", a == b)
