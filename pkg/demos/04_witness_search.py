# %% [markdown]
# # Searching for equality-case systems
#
# A witness is a tight system of unit-norm pairs whose off-diagonal
# pairing products all sit at the flatness target.  Results hold at working
# precision only.

# %%
from nawelch import PadicField
from nawelch.frames import MeasuredIndex, orthonormal_system
from nawelch.search import SearchSpace, entry_set, nearest_miss_report, search, slack_rows

# %% [markdown]
# In dimension 1 over Q_3 with two points, tau = f = 1 everywhere works.

# %%
F = PadicField(3)
out = search(SearchSpace(F, 1, MeasuredIndex.counting(2, [2]), entry_set(F, 2, (0, 0))))
print(out.status, out.witness_position, out.counters)

# %% [markdown]
# In dimension 2 over Q_2 with entries {0, 1} nothing qualifies.

# %%
F2 = PadicField(2, 4)
out = search(SearchSpace(F2, 2, MeasuredIndex.counting(2, [2]), [F2(0), F2(1)]))
print(out.status, out.counters)
for row in nearest_miss_report(out)[:5]:
    print(row)

# %%
print(slack_rows(orthonormal_system(PadicField(5), 2)))
