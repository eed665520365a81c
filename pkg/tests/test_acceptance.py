"""The ten acceptance criteria, one test each, each recording a single pass/fail line."""

import time
from itertools import product

import pytest
from sympy import primerange

from action_tables import diagonal_table_holds, quadruple_table_holds
from superspecial import closed_forms as cf
from superspecial.cases import CASES, E0_SQ, E1728_SQ, PAIR_DISTINCT, SQUARE_GENERIC, scenarios_for
from superspecial.curves import census_agrees, concrete_kernel_census, velu_neighborhood
from superspecial.hermitian import CASE_II, classify_l4_loop, solve_gram, unit_group
from superspecial.isotropic import allowed_types, isotropic_count, isotropic_enumerate_oracle, subgroup_type
from superspecial.kernels import analyze, eigen_setup, find_loops, matrix_kernel
from superspecial.neighborhood import neighbor_table, vertex_census
from superspecial.quaternion import O0, O1728, make_order
from superspecial.rings import count_double_hexagonal, count_four_squares

ELLS = list(primerange(2, 32))


def four_squares_brute(limit):
    r = int(limit**0.5) + 1
    sq = [x * x for x in range(-r, r + 1)]
    counts = [0] * (limit + 1)
    for a, b, c, d in product(sq, repeat=4):
        s = a + b + c + d
        if s <= limit:
            counts[s] += 1
    return counts


def hexagonal_brute(limit):
    r = int((4 * limit / 3) ** 0.5) + 1
    counts = [0] * (limit + 1)
    forms = [x * x + x * y + y * y for x, y in product(range(-r, r + 1), repeat=2)]
    forms = [f for f in forms if f <= limit]
    for f in forms:
        for g in forms:
            if f + g <= limit:
                counts[f + g] += 1
    return counts


def test_criterion_1_unit_groups(accept):
    t0 = time.perf_counter()
    got = {c: len(unit_group(c, p)) for c, p in [(E1728_SQ, 23), (E0_SQ, 11), (PAIR_DISTINCT, 103),
                                                (SQUARE_GENERIC, 103)]}
    dt = time.perf_counter() - t0
    want = {E1728_SQ: 32, E0_SQ: 72, PAIR_DISTINCT: 4, SQUARE_GENERIC: 8}
    ok = got == want and dt < 1
    assert accept(1, ok, f"unit group orders {list(got.values())} in {dt:.2f}s")


def test_criterion_2_representation_counts(accept):
    t0 = time.perf_counter()
    fs, hx = four_squares_brute(500), hexagonal_brute(300)
    ok4 = all(count_four_squares(n) == fs[n] for n in range(1, 501)) and count_four_squares(2) == 24
    ok6 = all(count_double_hexagonal(n) == hx[n] for n in range(1, 301))
    dt = time.perf_counter() - t0
    assert accept(2, ok4 and ok6 and dt < 10, f"four squares n<=500 {ok4}, double hexagonal n<=300 {ok6}, {dt:.1f}s")


def test_criterion_3_classification(accept):
    t0 = time.perf_counter()
    bad, compared = [], 0
    for ell in ELLS:
        for case in CASES:
            an = analyze(case, ell)
            order = len(an.setup.group)
            sizes = {}
            for i, oid in enumerate(an.orbit_id):
                sizes[oid] = sizes.get(oid, 0) + 1
            if any(sizes[oid] * st != order for oid, st in zip(an.orbit_id, an.stabilizer)):
                bad.append(f"{case} {ell} orbit-stabilizer")
            want = cf.class_sizes(case, ell)
            if want is None:
                continue
            got = {}
            for lab in an.labels:
                got[lab] = got.get(lab, 0) + 1
            compared += 1
            if got != want:
                bad.append(f"{case} {ell} class sizes")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    assert accept(3, ok, f"{compared} class-size tables, orbit-stabilizer on all kernels, {dt:.1f}s" + (f" {bad}" if bad else ""))


def test_criterion_4_action_tables(accept):
    results = {ell: (quadruple_table_holds(ell), diagonal_table_holds(ell)) for ell in (5, 7)}
    ok = all(a and b for a, b in results.values())
    assert accept(4, ok, f"(quadruple, diagonal) tables at ell=5,7: {results}")


def gram_kernels(order, case, ell):
    return frozenset(matrix_kernel(x.to_ring(), ell) for cls in solve_gram(order, case, ell) for x in cls)


def test_criterion_5_loops(accept):
    t0 = time.perf_counter()
    bad, compared = [], 0
    for ell in ELLS:
        for case in CASES:
            setup = eigen_setup(case, ell)
            for sc in scenarios_for(ell) if case == PAIR_DISTINCT else [None]:
                want = cf.loop_count(case, ell, sc)
                if want is None:
                    continue
                compared += 1
                if len(find_loops(setup, sc)) != want:
                    bad.append(f"{case} {ell} {sc}")
    for case, kind, p, ells in [(E1728_SQ, O1728, 103, (2, 5, 7)), (E0_SQ, O0, 101, (2, 3, 5))]:
        order = make_order(kind, p)
        for ell in ells:
            compared += 1
            if gram_kernels(order, case, ell) != find_loops(eigen_setup(case, ell)):
                bad.append(f"gram {case} p={p} {ell}")
    dt = time.perf_counter() - t0
    assert accept(5, not bad and dt < 60, f"{compared} loop checks, {dt:.1f}s" + (f" {bad}" if bad else ""))


@pytest.mark.xfail(strict=True, reason="stated (E0 x E0, ell=3) vertex list contradicts the orbit sizes 6 and 18")
def test_criterion_6_neighbor_tables(accept):
    t0 = time.perf_counter()
    bad, compared = [], 0
    for ell in ELLS:
        for case in CASES:
            for sc in scenarios_for(ell) if case == PAIR_DISTINCT else [None]:
                tab = neighbor_table(case, ell, sc)
                if tab.total_edges != (ell + 1) * (ell * ell + 1):
                    bad.append(f"{case} {ell} {sc} conservation")
                rows = cf.neighbor_rows(case, ell, sc)
                if rows is not None:
                    compared += 1
                    if list(tab.rows) != cf.normalize_rows(rows):
                        bad.append(f"{case} {ell} {sc} table")
                special = cf.special_vertices(case, ell)
                if special is not None:
                    compared += 1
                    if list(tab.vertices) != special[0] or len(tab.loops) != special[1]:
                        bad.append(f"{case} ell={ell} special vertices {list(tab.vertices)} vs {special[0]}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    accept(6, ok, f"{compared} tables, conservation everywhere, {dt:.1f}s" + (f" {bad}" if bad else ""))
    # the only expected miss; anything else is a real failure, not the known conflict
    assert bad == [f"{E0_SQ} ell=3 special vertices {list(neighbor_table(E0_SQ, 3).vertices)} "
                   f"vs {cf.special_vertices(E0_SQ, 3)[0]}"]
    assert ok


def test_criterion_7_degree_l4_loops(accept):
    t0 = time.perf_counter()
    got = {}
    for case, kind, p in [(E1728_SQ, O1728, 103), (E0_SQ, O0, 101)]:
        order = make_order(kind, p)
        for ell in (3, 5):
            tags = [classify_l4_loop(cls[0], ell).case for cls in solve_gram(order, case, ell * ell)]
            got[(case, ell)] = (sum(t == CASE_II for t in tags), len(tags))
    dt = time.perf_counter() - t0
    # the count is stated for E1728 x E1728; at (E0 x E0, ell = 3) every solution is a unit times 3I
    ok = all(got[(E1728_SQ, ell)][0] == ell * ell + ell for ell in (3, 5)) and dt < 120
    assert accept(7, ok, f"(Case II, all classes) E1728 {got[(E1728_SQ, 3)]} {got[(E1728_SQ, 5)]}, "
                         f"E0 {got[(E0_SQ, 3)]} {got[(E0_SQ, 5)]}, {dt:.1f}s")


def test_criterion_8_isotropic(accept):
    t0 = time.perf_counter()
    got = []
    ok = True
    for ell, n, want in [(2, 1, 15), (3, 1, 40), (2, 2, 150)]:
        subs = isotropic_enumerate_oracle(ell, n)
        shapes = all(subgroup_type(h, ell**n) in allowed_types(ell, n) for h in subs)
        got.append((len(subs), isotropic_count(ell, n)))
        ok &= len(subs) == isotropic_count(ell, n) == want and shapes
    dt = time.perf_counter() - t0
    assert accept(8, ok and dt < 60, f"(oracle, formula) {got}, {dt:.1f}s")


def test_criterion_9_concrete(accept):
    t0 = time.perf_counter()
    agree = {(c, p, ell): census_agrees(concrete_kernel_census(c, p, ell))
             for c, p, ell in [(E1728_SQ, 23, 2), (E1728_SQ, 103, 13), (E0_SQ, 11, 3)]}
    v = velu_neighborhood("E1728", 103, 13)
    velu_ok = v.vertices == 6 and set(v.neighbors.values()) == {2} and v.loops == 2
    dt = time.perf_counter() - t0
    ok = all(agree.values()) and velu_ok and dt < 300
    assert accept(9, ok, f"census agreement {list(agree.values())}, Velu {v.vertices} x 2 + {v.loops} loops, {dt:.1f}s")


def test_criterion_10_census(accept):
    got = {p: vertex_census(p) for p in (7, 11, 13, 23)}
    want = {11: 2, 13: 1, 23: 3}
    ok = all(got[p].S_p2 == s and got[p].product_type_count == s * (s + 1) // 2 for p, s in want.items())
    flags = {p: (str(r.jacobian_formula), r.jacobian_integral) for p, r in got.items()}
    assert accept(10, ok, f"S_p2 {[got[p].S_p2 for p in want]}, #J_p closed form {flags}")
