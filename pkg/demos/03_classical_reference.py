# %% [markdown]
# # Real and complex reference bounds

# %%
import math

import numpy as np

from nawelch.classical import ClassicalFrame, companion_bounds, welch_max_bound, welch_sum_bound

# %%
angles = [0, 2 * math.pi / 3, 4 * math.pi / 3]
mb = ClassicalFrame([[math.cos(a), math.sin(a)] for a in angles])
print(welch_sum_bound(mb, 1))
print(welch_max_bound(mb, 1))

# %% [markdown]
# Random frames sit above the bound; the gap shrinks as n grows.

# %%
rng = np.random.default_rng(0)
for n in (3, 5, 8, 16):
    v = rng.standard_normal((n, 2))
    fr = ClassicalFrame(v / np.linalg.norm(v, axis=1, keepdims=True))
    r = welch_max_bound(fr, 1)
    print(n, round(r["coherence_pow"], 4), ">=", round(r["rhs"], 4))

# %%
v = rng.standard_normal((6, 2))
print(companion_bounds(ClassicalFrame(v / np.linalg.norm(v, axis=1, keepdims=True))))
