"""Building, checking and comparing small binary covering arrays."""
# %%
import numpy as np

from covarray import (
    CoveringArray,
    are_equivalent,
    canonical_form,
    is_covering,
    residual,
    row_distance_structure,
    verify_coverage,
)
from covarray.constructions import fixed_matrix, hadamard_3ca_12x11, johnson_entringer, standard_maximal_2ca

# %% the largest 6-row pairwise array has 10 columns
A = standard_maximal_2ca(6)
print(A.entries)
print("strength 2:", is_covering(A, 2))

# one strength higher fails, and the report says where
rep = verify_coverage(A, 3)
print("first gap at strength 3:", rep.first_missing())

# %% 2^n // 3 rows give strength n - 2
for n in range(4, 9):
    je = johnson_entringer(n)
    print(n, je.shape, is_covering(je, n - 2))

# %% splitting on a column drops the strength by one
H = hadamard_3ca_12x11()
order = np.argsort(1 - H.entries[:, 0].astype(int), kind="stable")
top = residual(CoveringArray(H.entries[order], 2), [(1, 1)])
print("residual:", top.shape, "2-covering:", is_covering(top, 2))
print("same class as A:", are_equivalent(top, A))

# %% A, B1 and B2 look different but are one class
B1, B2 = fixed_matrix("B1"), fixed_matrix("B2")
print(are_equivalent(A, B1), are_equivalent(B1, B2))
cert = canonical_form(B1)
print(cert.canonical.entries)
print("replay lands on the canonical form:", cert.replay(B1) == cert.canonical)

# row distance profiles agree too (a cheap necessary check)
print(row_distance_structure(A) == row_distance_structure(B2))
