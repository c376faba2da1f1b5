"""Bounds on CAN and the search-backed arguments that sharpen them."""
# %%
from covarray.bounds import (
    all_bounds,
    can2,
    improved_lower_3,
    replay_even_certificate,
    replay_odd_certificate,
    roux_lower,
    structure_window,
)
from covarray.classify import columns_to_array
from covarray.normalization import lift_to_target
from covarray.proofs import guided_uniqueness_24x12, nonexistence_14x16, nonexistence_48x13

# %% strength 2 is closed form
print([can2(n) for n in range(2, 16)])
print("window for 7 rows:", structure_window(7))

# %% distance-sum and rank certificates
print(replay_odd_certificate(7, 15).summary())
print(replay_even_certificate(8, 35).summary())
print("CAN(3,16,2) >=", improved_lower_3(16).value)

# %% the 14 x 16 case, done concretely
for line in nonexistence_14x16().lines():
    print(line)

# %% 24 x 12 is unique, so 48 x 13 cannot exist
r = guided_uniqueness_24x12()
print(r.summary(), r.stats["branches"]["B1"])
p = nonexistence_48x13()
print(p.verdict, "roux gives", roux_lower(5, 13, 2).value, "search gives", p.quantities["implied_lower"])

for b in all_bounds(5, 13, 2):
    print(f"  {b.kind:5s} {b.value:3d}  {b.provenance}")

# %% pushing column weights up without losing coverage
a = columns_to_array([0b000011, 0b010101, 0b101001], 6)
print(a.weights(), "->", lift_to_target(a, 3).weights())
