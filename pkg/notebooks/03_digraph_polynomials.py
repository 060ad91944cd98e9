# %% [markdown]
# Cycle cover polynomials of word digraphs and the weighted cycle indicator.

# %%
from fractions import Fraction

from fockcumulants.digraph_poly import cover_poly, cycle_cover_poly, cycle_indicator, word_digraph
from fockcumulants.theorems import thm_cycle_cover, thm_cycle_indicator
from fockcumulants.words import parse_word

g = word_digraph(parse_word("a1 a1 a2 c1 c2 c1"))
print(g.to_text())
print("C_c:", cycle_cover_poly(g), "=", cycle_cover_poly(g, "bruteforce"))
print("geometric:", cover_poly(g, "geometric"))
print("factorial:", cover_poly(g, "factorial"))

# %% [markdown]
# The N-model expectation equals t^n C_c(Gamma; 1/t).

# %%
r = thm_cycle_cover("a1 a1 a2 c1 c2 c1", N=2)
print(r.lhs, "|", r.rhs, "|", r.equal, r.note)

# %% [markdown]
# Weighted words in the Vershik-Kerov model against I_c at power sums.

# %%
gw = word_digraph(parse_word("a1(1) a1 c1 c1(2)"), weighted=True)
print(cycle_indicator(gw))
r = thm_cycle_indicator("a1(1) a1 c1 c1(2)", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
print(r.lhs, r.rhs, r.equal)
