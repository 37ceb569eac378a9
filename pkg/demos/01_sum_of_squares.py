# %% [markdown]
# # Sums of squares in Q_p and Q((t))
#
# In the Laurent field the norm of a sum of squares is the largest norm
# of its terms.  Every Q_p breaks this with a short tuple of small integers.

# %%
from nawelch import LaurentField, PadicField
from nawelch.scalars import check_fu_tuple, fu_search

# %%
for p in (2, 3, 5, 7, 11, 13):
    w = fu_search(PadicField(p), p - 1, 4)
    print(p, [x.to_rational() for x in w.tuple], "v(sum) =", w.lhs_valuation, "v(max) =", w.rhs_valuation)

# %% [markdown]
# In Q_3 the tuple (1, 1, 1) sums to 3, which is small.

# %%
F = PadicField(3)
print(check_fu_tuple([F(1), F(1), F(1)]))

# %% [markdown]
# The same exhaustive search over the Laurent field finds nothing:
# leading coefficients of squares are positive rationals and cannot cancel.

# %%
print(fu_search(LaurentField(), 3, 3))
