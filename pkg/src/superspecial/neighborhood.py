"""Neighbor tables of product vertices, their verification, and small reports."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime, legendre_symbol, primerange

from . import closed_forms as cf
from .cases import (
    CASES,
    E0_SQ,
    E1728_SQ,
    PAIR_DISTINCT,
    SQUARE_GENERIC,
    Scenario,
    check_case,
    scenarios_for,
)
from .kernels import (
    Diagonal,
    analyze,
    eigen_setup,
    find_loops,
    gram_loop_kernels,
    vertex_partition,
)
from .rings import EISEN, GAUSS, ImQuadInt, solve_norm_equation, units

VERIFY_LIMIT = 31


@dataclass(frozen=True)
class NeighborTable:
    case: str
    ell: int
    scenario: Scenario | None
    rows: tuple[tuple[str, int, int], ...]  # (class, vertices, multiplicity)
    loops: tuple[tuple[str, str], ...]  # (kernel, class)
    vertices: tuple[tuple[bool, int], ...] = ()  # (diagonal?, multiplicity) per vertex

    @property
    def total_edges(self) -> int:
        return sum(n * m for _, n, m in self.rows) + len(self.loops)


def neighbor_table(case: str, ell: int, scenario: Scenario | None = None) -> NeighborTable:
    check_case(case)
    setup = eigen_setup(case, ell)
    an = analyze(case, ell)
    groups = vertex_partition(setup, scenario)
    counts: dict[tuple[str, int], int] = {}
    for g in groups:
        key = (g.label, g.multiplicity)
        counts[key] = counts.get(key, 0) + 1
    rows = cf.normalize_rows([(lab, n, m) for (lab, m), n in counts.items()])
    idx = setup.space.index
    loops = tuple(sorted((str(k), an.labels[idx[k]]) for k in find_loops(setup, scenario)))
    verts = tuple(sorted((isinstance(g.kernels[0], Diagonal), g.multiplicity) for g in groups))
    return NeighborTable(case, ell, scenario, tuple(rows), loops, verts)


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Check:
    case: str
    ell: int
    scenario: str
    name: str
    passed: bool
    detail: str = ""


def _check(out, case, ell, scen, name, got, want):
    ok = got == want
    out.append(Check(case, ell, str(scen) if scen is not None else "", name, ok,
                     "" if ok else f"got {got}, expected {want}"))


def _verify_one(case: str, ell: int) -> list[Check]:
    out: list[Check] = []
    setup = eigen_setup(case, ell)
    an = analyze(case, ell)
    order = len(setup.group)
    n = setup.space.n
    orbit_sizes = np.bincount(an.orbit_id, minlength=n)[an.orbit_id]
    _check(out, case, ell, None, "orbit-stabilizer", bool((orbit_sizes * an.stabilizer == order).all()), True)

    want = cf.class_sizes(case, ell)
    if want is not None:
        got: dict[str, int] = {}
        for lab in an.labels:
            got[lab] = got.get(lab, 0) + 1
        _check(out, case, ell, None, "class sizes", got, want)
        sizes = cf.orbit_sizes(case, ell)
        got_orb = {lab: sorted({int(s) for s, l2 in zip(orbit_sizes, an.labels) if l2 == lab}) for lab in sizes if lab in got}
        _check(out, case, ell, None, "orbit sizes", got_orb, {lab: [sizes[lab]] for lab in got_orb})

    if case in (E1728_SQ, E0_SQ) or (case == SQUARE_GENERIC and ell > 2):
        _check(out, case, ell, None, "gram loops", gram_loop_kernels(case, ell), find_loops(setup))

    scens = scenarios_for(ell) if case == PAIR_DISTINCT else [None]
    for sc in scens:
        tab = neighbor_table(case, ell, sc)
        _check(out, case, ell, sc, "edge conservation", tab.total_edges, (ell + 1) * (ell * ell + 1))
        nloops = cf.loop_count(case, ell, sc)
        if nloops is not None:
            _check(out, case, ell, sc, "loop count", len(tab.loops), nloops)
        rows = cf.neighbor_rows(case, ell, sc)
        if rows is not None:
            _check(out, case, ell, sc, "table", list(tab.rows), cf.normalize_rows(rows))
        special = cf.special_vertices(case, ell)
        if special is not None:
            _check(out, case, ell, sc, "small-ell vertices", list(tab.vertices), special[0])
        if case in (PAIR_DISTINCT, SQUARE_GENERIC):
            _check(out, case, ell, sc, "multiplicity divides |G|", all(order % m == 0 for _, _, m in tab.rows), True)
    return out


def verify_tables(ell_max: int, workers: int = 1) -> list[Check]:
    """Recompute every table for primes ell <= ell_max and compare with the closed forms."""
    if ell_max > VERIFY_LIMIT:
        raise ValueError(f"ell_max must be at most {VERIFY_LIMIT}")
    jobs = [(case, ell) for ell in primerange(2, ell_max + 1) for case in CASES]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_verify_one, *zip(*jobs)))
    else:
        parts = [_verify_one(c, l) for c, l in jobs]
    return [c for part in parts for c in part]


# ---------------------------------------------------------------- elliptic neighborhood


@dataclass(frozen=True)
class EllipticNeighborhood:
    curve: str
    ell: int
    p: int
    vertices: int
    edges_per_vertex: int
    loops: int
    rational_vertices: int | None


CURVES = ("E1728", "E0")


def elliptic_neighborhood(curve: str, ell: int, p: int) -> EllipticNeighborhood:
    """Neighbors of [E1728] or [E0] in the supersingular ell-isogeny graph."""
    if curve not in CURVES:
        raise ValueError(f"curve must be one of {CURVES}")
    if not (isprime(ell) and isprime(p)) or ell == p:
        raise ValueError("ell and p must be distinct primes")
    ring = GAUSS if curve == "E1728" else EISEN
    if curve == "E1728":
        if p % 4 != 3:
            raise ValueError("E1728 needs p = 3 mod 4")
        if ell == 2:
            raise ValueError("E1728 needs odd ell")
        if p <= 4 * ell * ell:
            raise ValueError("need p > 4 ell^2")
    else:
        if p % 3 != 2:
            raise ValueError("E0 needs p = 2 mod 3")
        if p <= 3 * ell * ell:
            raise ValueError("need p > 3 ell^2")
    x = ImQuadInt(ring, 0, 1).operator(ell)
    # Aut(E)/{+-1} acts on the ell+1 kernel lines; fixed lines are loops
    seen: set[tuple[int, int]] = set()
    sizes = []
    for i in range(ell + 1):
        v = (1, i) if i < ell else (0, 1)
        if v in seen:
            continue
        orb = []
        w = np.array(v)
        while True:
            nv = _norm_line(w, ell)
            if nv in orb:
                break
            orb.append(nv)
            w = x @ w % ell
        seen.update(orb)
        sizes.append(len(orb))
    loops_from_lines = sizes.count(1)
    orbit = 2 if curve == "E1728" else 3
    nonloop = [s for s in sizes if s != 1]
    if any(s != orbit for s in nonloop):
        raise AssertionError(f"unexpected orbit sizes {sizes}")
    elems, _ = solve_norm_equation(ring, ell)
    loops = len(elems) // len(units(ring))
    if loops != loops_from_lines:
        raise AssertionError("norm-equation loops disagree with fixed lines")
    rational = None  # the rational-vertex formula assumes ell > 3
    if ell > 3:
        rational = 1 + int(legendre_symbol(ell, p) if curve == "E1728" else legendre_symbol(-p % ell, ell))
    return EllipticNeighborhood(curve, ell, p, len(nonloop), orbit, loops, rational)


def _norm_line(v, ell):
    a, b = int(v[0]) % ell, int(v[1]) % ell
    if a:
        return (1, b * pow(a, -1, ell) % ell)
    return (0, 1)


# ---------------------------------------------------------------- census


@dataclass(frozen=True)
class CensusReport:
    p: int
    S_p2: int
    product_type_count: int
    jacobian_formula: Fraction  # the stated closed form; may be non-integral
    jacobian_integral: bool


_MASS_CORRECTION = {1: 0, 5: 1, 7: 1, 11: 2}


def supersingular_count(p: int) -> int:
    return p // 12 + _MASS_CORRECTION[p % 12]


def vertex_census(p: int) -> CensusReport:
    if not isprime(p) or p <= 5:
        raise ValueError("p must be a prime > 5")
    s = supersingular_count(p)
    j = Fraction(p**3 + 24 * p * p + 141 * p - 346, 2880)
    return CensusReport(p, s, s * (s + 1) // 2, j, j.denominator == 1)


# ---------------------------------------------------------------- export

TABLE_HEADER = ["case", "ell", "class", "vertices", "multiplicity"]


def table_dict(t: NeighborTable) -> dict:
    return {
        "case": t.case,
        "ell": t.ell,
        "scenario": None if t.scenario is None else str(t.scenario),
        "rows": [{"class": c, "vertices": n, "multiplicity": m} for c, n, m in t.rows],
        "loops": [{"kernel": k, "class": c} for k, c in t.loops],
    }


def _records(obj) -> tuple[list[str], list[list]]:
    if isinstance(obj, NeighborTable):
        return TABLE_HEADER, [[obj.case, obj.ell, c, n, m] for c, n, m in obj.rows]
    if isinstance(obj, CensusReport):
        head = ["p", "check", "value", "passed"]
        return head, [
            [obj.p, "S_p2", obj.S_p2, True],
            [obj.p, "product_type_count", obj.product_type_count, obj.product_type_count == obj.S_p2 * (obj.S_p2 + 1) // 2],
            [obj.p, "jacobian_formula", str(obj.jacobian_formula), obj.jacobian_integral],
        ]
    if isinstance(obj, EllipticNeighborhood):
        head = ["curve", "ell", "p", "vertices", "edges_per_vertex", "loops", "rational_vertices"]
        return head, [[obj.curve, obj.ell, obj.p, obj.vertices, obj.edges_per_vertex, obj.loops, obj.rational_vertices]]
    if isinstance(obj, list) and all(isinstance(c, Check) for c in obj):
        head = ["case", "ell", "scenario", "check", "passed", "detail"]
        return head, [[c.case, c.ell, c.scenario, c.name, c.passed, c.detail] for c in obj]
    raise TypeError(f"cannot export {type(obj).__name__}")


def to_dict(obj):
    if isinstance(obj, NeighborTable):
        return table_dict(obj)
    head, rows = _records(obj)
    if isinstance(obj, list):
        return [dict(zip(head, r)) for r in rows]
    if isinstance(obj, CensusReport):
        return {"p": obj.p, "S_p2": obj.S_p2, "product_type_count": obj.product_type_count,
                "jacobian_formula": str(obj.jacobian_formula), "jacobian_integral": obj.jacobian_integral}
    return dict(zip(head, rows[0]))


def export(obj, fmt: str = "json") -> bytes:
    """Serialize a table, census, elliptic result or check list as JSON or CSV."""
    if fmt == "json":
        return (json.dumps(to_dict(obj), indent=2) + "\n").encode()
    if fmt == "csv":
        head, rows = _records(obj)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")
