"""Multigradings, shifted free modules and the built-in bigrading tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .lattice import fm_feasible
from .poly import Polynomial


class Multigrading:
    """Degree map ``N^n -> Z^d`` given by one vector per variable."""

    def __init__(self, table: Sequence[Sequence[int]], dim: Optional[int] = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if dim is None:
            dim = len(self.table[0]) if self.table else 1
        self.dim = dim
        for row in self.table:
            if len(row) != dim:
                raise ValueError("inconsistent degree vector lengths")

    def __repr__(self):
        return f"Multigrading({self.table})"

    def __eq__(self, other):
        return isinstance(other, Multigrading) and self.table == other.table and self.dim == other.dim

    def __hash__(self):
        return hash((self.table, self.dim))

    def degree(self, exps: Sequence[int]) -> Tuple[int, ...]:
        out = [0] * self.dim
        for e, row in zip(exps, self.table):
            if e:
                for k in range(self.dim):
                    out[k] += e * row[k]
        return tuple(out)

    def term_degree(self, mon, shifts: Optional[Sequence[Sequence[int]]] = None) -> Tuple[int, ...]:
        d = self.degree(mon[:-1])
        if shifts is not None:
            s = shifts[mon[-1]]
            d = tuple(a + b for a, b in zip(d, s))
        return d

    def positive_functional(self) -> Optional[List[Fraction]]:
        """A functional taking value >= 1 on every variable degree, if any."""
        if not self.table:
            return [Fraction(1)] * self.dim
        return fm_feasible(self.table)

    def is_positive(self) -> bool:
        return self.positive_functional() is not None


def is_positive(g: Multigrading) -> bool:
    return g.is_positive()


@dataclass(frozen=True)
class ShiftPair:
    """F-shifts ``n`` and V-shifts ``m`` of the free module ``D^r[n][m]``."""

    n: Tuple[int, ...]
    m: Tuple[int, ...]

    def __post_init__(self):
        if len(self.n) != len(self.m):
            raise ValueError("shift vectors must have equal length (the rank)")

    @classmethod
    def zero(cls, rank: int) -> "ShiftPair":
        return cls((0,) * rank, (0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.n)

    def bidegrees(self) -> List[Tuple[int, int]]:
        return list(zip(self.n, self.m))


def is_multihomogeneous(p, g: Multigrading, shifts: Optional[Sequence[Sequence[int]]] = None):
    """``(True, degree)`` when every term has one degree; zero gives ``(True, None)``.

    ``p`` may be a single element or a list of elements (a matrix given by
    columns); for a list the witness is the list of column degrees.
    """
    if isinstance(p, (list, tuple)):
        degs = []
        for col in p:
            ok, d = is_multihomogeneous(col, g, shifts)
            if not ok:
                return False, None
            degs.append(d)
        return True, degs
    if not p.terms:
        return True, None
    degs = {g.term_degree(m, shifts) for m in p.terms}
    if len(degs) == 1:
        return True, degs.pop()
    return False, None


# Bigrading tables.  Variable layout of the Weyl-type rings: positions x, t,
# derivations dx, dt, then the central variable.
FLAVOR_GRV_DH = "grV_Dh"
FLAVOR_GRF_RV = "grF_RV"


def builtin_bigrading(flavor: str, n: int, p: int) -> Multigrading:
    """Tables for gr^V(D^(h)) and gr^F(R_V(D)) on ``x, t, dx, dt, h|theta``."""
    if flavor == FLAVOR_GRV_DH:
        central = (1, 0)
    elif flavor == FLAVOR_GRF_RV:
        central = (0, 1)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    table = [(0, 0)] * n + [(0, -1)] * p + [(1, 0)] * n + [(1, 1)] * p + [central]
    return Multigrading(table)


def bigr_grading(n: int, p: int) -> Multigrading:
    """Bigrading of bigr(M): x (0,0), t (0,-1), xi (1,0), tau (1,1)."""
    return Multigrading([(0, 0)] * n + [(0, -1)] * p + [(1, 0)] * n + [(1, 1)] * p)


def standard_grading(nvars: int) -> Multigrading:
    return Multigrading([(1,)] * nvars)


def element_degree(p: Polynomial, g: Multigrading, shifts=None):
    ok, d = is_multihomogeneous(p, g, shifts)
    if not ok:
        raise ValueError(f"element is not homogeneous: {p}")
    return d
