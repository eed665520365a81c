"""Vertex cases and the loop scenarios of a product of distinct curves."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

E1728_SQ = "E1728Sq"
E0_SQ = "E0Sq"
PAIR_DISTINCT = "PairDistinct"
SQUARE_GENERIC = "SquareGeneric"
CASES = (E1728_SQ, E0_SQ, PAIR_DISTINCT, SQUARE_GENERIC)
SQUARE_CASES = (E1728_SQ, E0_SQ, SQUARE_GENERIC)


def check_case(case: str) -> str:
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    return case


@dataclass(frozen=True)
class NoSquareComplementIsogeny:
    """No isogeny E -> E' of degree d with ell - d a square."""

    def __str__(self):
        return "none"


@dataclass(frozen=True)
class IsogenyDegreeD:
    """An isogeny E -> E' of degree d < ell with ell - d = a^2."""

    d: int

    def root(self, ell: int) -> int:
        a2 = ell - self.d
        a = isqrt(a2) if a2 > 0 else 0
        if self.d < 1 or a2 <= 0 or a * a != a2:
            raise ValueError(f"need d >= 1 and ell - d a positive square, got d={self.d}, ell={ell}")
        return a

    def __str__(self):
        return f"d={self.d}"


@dataclass(frozen=True)
class IsogenyDegreeL:
    """An isogeny E -> E' of degree ell."""

    def __str__(self):
        return "ell"


Scenario = NoSquareComplementIsogeny | IsogenyDegreeD | IsogenyDegreeL


def parse_scenario(text: str | None) -> Scenario | None:
    """Parse 'none', 'ell' or 'd=<int>' (as printed by str())."""
    if text is None:
        return None
    t = text.strip().lower()
    if t in ("none", "nosquarecomplementisogeny"):
        return NoSquareComplementIsogeny()
    if t in ("ell", "l", "isogenydegreel"):
        return IsogenyDegreeL()
    if t.startswith("d="):
        return IsogenyDegreeD(int(t[2:]))
    raise ValueError(f"cannot parse scenario {text!r}; use none, ell or d=<int>")


def scenarios_for(ell: int) -> list[Scenario]:
    """Every scenario that makes sense at ell; d = 1 is left out since E and E' are not isomorphic."""
    out: list[Scenario] = [NoSquareComplementIsogeny(), IsogenyDegreeL()]
    a = 1
    while a * a < ell - 1:
        out.append(IsogenyDegreeD(ell - a * a))
        a += 1
    return out
