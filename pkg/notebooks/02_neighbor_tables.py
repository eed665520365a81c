"""
Neighbor tables of product vertices
===================================

Group non-loop kernels into target vertices and print the neighbor table for
each vertex family, then run the regression check over small ell.
"""

# %%
from superspecial import (
    CASES,
    PAIR_DISTINCT,
    export,
    neighbor_table,
    scenarios_for,
    verify_tables,
)

ell = 7
for case in CASES:
    for sc in scenarios_for(ell) if case == PAIR_DISTINCT else [None]:
        t = neighbor_table(case, ell, sc)
        label = case if sc is None else f"{case} [{sc}]"
        print(f"{label}: {list(t.rows)}  loops={len(t.loops)}  edges={t.total_edges}")

# %%
# Every table accounts for all (ell+1)(ell^2+1) kernels.
assert all(neighbor_table(c, ell).total_edges == (ell + 1) * (ell * ell + 1) for c in CASES if c != PAIR_DISTINCT)

# %%
# The tiny cases ell = 2, 3 list each vertex with its edge count.
for case, small in [("E1728Sq", 2), ("E0Sq", 2), ("E0Sq", 3)]:
    t = neighbor_table(case, small)
    print(case, small, "vertices (diagonal?, edges):", list(t.vertices), "loops:", len(t.loops))

# %%
# Compare everything with the closed forms for ell <= 7.
report = verify_tables(7)
failed = [c for c in report if not c.passed]
print(f"{len(report) - len(failed)}/{len(report)} checks passed")
for c in failed:
    print("  mismatch:", c.case, c.ell, c.name, c.detail)

# %%
print(export(neighbor_table("SquareGeneric", 5), "csv").decode())
