# %% [markdown]
# Vacuum expectations in the deformed Fock models.
#
# Each model is simulated directly on tensors, and the result is compared
# with the closed pair-partition sum.

# %%
from fractions import Fraction

from fockcumulants.fock_sim import (NModel, QModel, VKModel, deformed_factorial,
                                    pair_partition_expectation, t_N, t_q)
from fockcumulants.words import dyck_words, parse_word

w = parse_word("a1 a1 a1 c1 c1 c1")
print("q-model:", QModel().vacuum_expectation(w))
print("N-model:", NModel().vacuum_expectation(w))
print("VK, uniform on 2 letters:", VKModel.uniform(2).vacuum_expectation(w))

# %% [markdown]
# The operator side and the pairing side agree on every two-color Dyck word.

# %%
qm, nm = QModel(dim=2), NModel(dim=2)
words = dyck_words(6, (1, 2))
agree = all(qm.vacuum_expectation(v) == pair_partition_expectation(v, t_q()) and
            nm.vacuum_expectation(v) == pair_partition_expectation(v, t_N()) for v in words)
print(len(words), "words, all agree:", agree)

# %% [markdown]
# Deformed factorials b_n = rho((L*)^(n-1) L^(n-1)).

# %%
for n in range(1, 7):
    print(n, deformed_factorial(n, QModel()), "|", deformed_factorial(n, NModel()))

# %% [markdown]
# Setting N = 2 in the symbolic N-model recovers the uniform VK value.

# %%
print(NModel().vacuum_expectation(w).eval({"t": Fraction(1, 2)}))
