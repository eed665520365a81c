"""
Explicit curves as a cross-check
================================

Build E1728 and E0 over F_{p^2}, look at torsion, the Weil pairing and the
automorphism on E[ell], then repeat the kernel census with actual points and
count isogeny neighbors with Velu's formulas.
"""

# %%
from superspecial import (
    E0_SQ,
    E1728_SQ,
    build_curve,
    census_agrees,
    concrete_kernel_census,
    elliptic_neighborhood,
    endo_eigenlines,
    torsion_basis,
    velu_neighborhood,
    vertex_census,
    weil_pairing,
)

E = build_curve("E1728", 103)
print("#E(F_p^2) =", E.count_points(), " j =", E.j_invariant())

# %%
P, Q = torsion_basis(E, 13)
e = weil_pairing(E, P, Q, 13)
print("e(P, Q) =", e, " order 13:", e**13 == E.F(1) and e != E.F(1))

# %%
# The automorphism i on E[13] has eigenvalues t with t^2 = -1 mod 13.
eig = endo_eigenlines(E, 13)
print("matrix of i:\n", eig.matrix, "\nt =", eig.t)

# %%
# Kernel census from points agrees with the symbolic classifier.
for case, p, ell in [(E1728_SQ, 23, 2), (E0_SQ, 11, 3)]:
    c = concrete_kernel_census(case, p, ell)
    print(case, p, ell, c.n_kernels, "kernels", dict(sorted(c.class_counts.items())), "agrees:", census_agrees(c))

# %%
# Neighbors of j = 1728 in the 13-isogeny graph at p = 103.
v = velu_neighborhood("E1728", 103, 13)
print(v.vertices, "neighbors, edges", sorted(v.neighbors.values()), "loops", v.loops)
print(elliptic_neighborhood("E1728", 5, 103))

# %%
for p in (11, 13, 23):
    r = vertex_census(p)
    print(p, "supersingular j:", r.S_p2, " product vertices:", r.product_type_count,
          " Jacobian closed form:", r.jacobian_formula)
