"""
Kernels of (ell, ell)-isogenies from E1728 x E1728
==================================================

Walk through the maximal isotropic subgroups of (E x E)[ell], the action of
Aut(E x E) on them and the resulting classes, at ell = 5.
"""

# %%
from collections import Counter

from superspecial import E1728_SQ, analyze, classify, eigen_setup, enumerate_kernels, find_loops, orbit_decompose

ell = 5
kernels = enumerate_kernels(ell)
diagonal = [k for k in kernels if type(k).__name__ == "Diagonal"]
print(f"{len(kernels)} kernels, {len(diagonal)} of them products of two lines")

# %%
# X = i acts on E[ell]; at ell = 1 mod 4 it has two eigenlines L1, L2.
setup = eigen_setup(E1728_SQ, ell)
print("t =", setup.t, " lambda =", setup.lam, " L1 =", setup.L1, " L2 =", setup.L2)
print("|Aut(E x E)| =", len(setup.group))

# %%
# Orbits under the unit group, with stabilizer orders.
orbits = orbit_decompose(setup)
print(Counter((o.class_label, len(o.orbit), o.stabilizer_order) for o in orbits))

# %%
# Class sizes, and the loops (kernels of endomorphisms of degree ell).
print(dict(sorted(Counter(classify(setup).values()).items())))
loops = find_loops(setup)
print(len(loops), "loops:", sorted(str(k) for k in loops))

# %%
# The orbit-stabilizer identity holds for every kernel.
an = analyze(E1728_SQ, ell)
assert all(len(o.orbit) * o.stabilizer_order == len(setup.group) for o in orbits)
print("kernels per orbit id:", len(set(an.orbit_id.tolist())), "orbits")
