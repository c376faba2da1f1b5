"""Counting equivalence classes by exhaustive generation."""
# %%
import time

from covarray import are_equivalent
from covarray.classify import classify, count_classes, default_constraints, max_degree_search
from covarray.constructions import fixed_matrix, hadamard_3ca_12x11

# %% six rows, strength 2
for n in range(6, 11):
    print(f"CA(6;2,{n},2): {count_classes(6, 2, n)} class(es)")

# %% the biggest degree each size allows
for m in range(4, 8):
    n, witness = max_degree_search(m, 2)
    print(m, "rows ->", n, "columns")

# %% strength 3 with 12 rows; the forced distances are not needed here
t0 = time.perf_counter()
for n in range(6, 12):
    c = count_classes(12, 3, n, default_constraints(12, 3, n, distances=False))
    print(f"CA(12;3,{n},2): {c}")
print(f"{time.perf_counter() - t0:.1f} s")

# %% the unique classes really are the known arrays
r = classify(10, 3, 5)
print(r.count, are_equivalent(r.representatives[0], fixed_matrix("CA10x5")))
r = classify(12, 3, 11)
print(r.count, are_equivalent(r.representatives[0], hadamard_3ca_12x11()))
print({k: v for k, v in r.stats.items() if k != "levels"})
