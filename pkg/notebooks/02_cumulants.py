# %% [markdown]
# Partitioned cumulants by Moebius inversion, checked against Good's formula,
# the product formula and the Toeplitz closed forms.

# %%
from fractions import Fraction

from fockcumulants.cumulants import (cumulant, cumulant_table, good_cumulant, toeplitz_cumulants_all,
                                     with_copies)
from fockcumulants.fock_sim import QModel
from fockcumulants.partitions import SetPartition, enumerate_partitions

X = "a1+c1"
model = with_copies(QModel(), [X], 4)
for pi, k in cumulant_table([X] * 4, model).items():
    print(f"{str(pi):>8}  {k}")

# %% [markdown]
# Good's formula is a floating check at q = 1/2.

# %%
half = with_copies(QModel(q=Fraction(1, 2)), [X], 3)
for pi in enumerate_partitions(3):
    print(pi, cumulant([X] * 3, pi, half), good_cumulant([X] * 3, pi, half))

# %% [markdown]
# A q-Toeplitz operator whose only nonzero coefficient is alpha_2. Its
# pair-partition cumulants record the right reduced crossings.

# %%
for r in toeplitz_cumulants_all(QModel(), [0, 1, 0, 0], 4):
    if r.computed:
        print(r.partition, r.computed, r.predicted)

# %%
print(cumulant(["a1", "a1", "c1^2"], SetPartition.one(3), with_copies(QModel(), ["a1"], 3)))
