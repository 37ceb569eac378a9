# %% [markdown]
# # Ultrametric Welch bounds
#
# Both sides of the bound are compared as valuations.  A verdict of
# `holds` or `fails` is only reported when the frame operator hypothesis
# has been certified.

# %%
from nawelch import PadicField, LaurentField
from nawelch.frames import cyclic_example, design_size, orthonormal_system, random_system
from nawelch.welch import verify_first_order, verify_higher_order

# %% [markdown]
# Four points over Q_2 indexed by Z/4, alternating between the two basis
# vectors.  The frame operator is 2I.

# %%
r = verify_first_order(cyclic_example(PadicField(2)))
print(r.path, "lhs v =", r.lhs, "rhs v =", r.rhs, r.verdict)

# %% [markdown]
# An orthonormal basis gives equality.

# %%
r = verify_first_order(orthonormal_system(PadicField(5), 3))
print("lhs v =", r.lhs, "rhs v =", r.rhs, "slack =", r.slack)

# %% [markdown]
# Second order over Q_3: the same Z/4 system is not tight on Sym^2, so the
# report stays unverified even though the raw comparison would go the
# other way.

# %%
r = verify_higher_order(cyclic_example(PadicField(3)), 2)
print("lhs v =", r.lhs, "rhs v =", r.rhs, r.verdict, r.hypotheses["tight"])

# %% [markdown]
# Systems tight on Sym^2 come from a weighted design with 18 points in
# dimension 2.

# %%
verdicts = {}
for p in (2, 3, 5, 7):
    for seed in range(20):
        s = random_system(PadicField(p), 2, design_size(2), seed, {"tight"}, order=2)
        for m in (1, 2):
            v = verify_higher_order(s, m).verdict
            verdicts[v] = verdicts.get(v, 0) + 1
print(verdicts)

# %%
L = LaurentField()
slacks = [verify_higher_order(random_system(L, 2, 5, seed, {"diagonalizable"}), 2).slack for seed in range(20)]
print("Laurent second-order slacks:", slacks)
