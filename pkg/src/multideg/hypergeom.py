"""A-hypergeometric systems: toric ideals, volumes and multidegree reports.

All n variables of the system are put in the t-block, so the
V-filtration is taken along the origin.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from .bifiltered import BifilteredPresentation, MultidegreeReport, PipelineError
from .coeff import QQ, format_rational, rational
from .groebner import buchberger, free_resolution, minimize_resolution, saturate
from .kpoly import KPolynomial, Multidegree, expand_and_extract, k_from_initial
from .grading import standard_grading
from .lattice import det, fm_feasible, integer_kernel, rank, smith_invariants, solve_in_rowspan
from .poly import Polynomial, Ring, degrevlex, transfer
from .weyl import WeylRing

Matrix = List[List[int]]

BETA_RANGE = 10**6
BETA_RETRIES = 32


def _check_matrix(A: Sequence[Sequence[int]]) -> Matrix:
    A = [[int(x) for x in row] for row in A]
    if not A or not A[0]:
        raise ValueError("empty matrix")
    if len({len(r) for r in A}) != 1:
        raise ValueError("ragged matrix")
    return A


def check_lattice(A: Sequence[Sequence[int]]) -> None:
    """Raise unless A has full row rank and its columns generate Z^d."""
    A = _check_matrix(A)
    d = len(A)
    if rank(A) != d:
        raise PipelineError("toric", "matrix does not have full row rank")
    inv = smith_invariants(A)
    if len(inv) != d or any(x != 1 for x in inv):
        raise PipelineError("toric", "columns do not generate Z^d", invariants=inv)


def derivation_ring(n: int) -> Ring:
    return Ring([f"dt{i + 1}" for i in range(n)])


def _binomial(S: Ring, u: Sequence[int]) -> Polynomial:
    pos = tuple(max(x, 0) for x in u)
    neg = tuple(max(-x, 0) for x in u)
    return S.monomial(pos) - S.monomial(neg)


def toric_ideal(A: Sequence[Sequence[int]]) -> List[Polynomial]:
    """Reduced degrevlex Gröbner basis of I_A in k[dt1..dtn]."""
    A = _check_matrix(A)
    check_lattice(A)
    n = len(A[0])
    S = derivation_ring(n)
    kernel = integer_kernel(A)
    if not kernel:
        return []
    binomials = [_binomial(S, u) for u in kernel]
    prod = S.one()
    for i in range(n):
        prod = prod * S.var(i)
    G = saturate(binomials, prod)
    return list(G.elements)


def lift_to_weyl(P: Polynomial, D: WeylRing) -> Polynomial:
    """``k[dt] -> D``: derivation exponents copied into the dt block."""
    return transfer(P, D, [D.dt_idx[i] for i in range(P.ring.nvars)])


def euler_operators(A: Sequence[Sequence[int]], beta: Sequence, D: WeylRing) -> List[Polynomial]:
    out = []
    for row, b in zip(A, beta):
        terms = {}
        for j, a in enumerate(row):
            if a:
                m = [0] * (D.nvars + 1)
                m[D.t_idx[j]] = 1
                m[D.dt_idx[j]] = 1
                terms[tuple(m)] = QQ(a)
        b = rational(b)
        if b:
            terms[(0,) * (D.nvars + 1)] = -b
        out.append(Polynomial(D, terms))
    return out


def hypergeometric_ideal(A: Sequence[Sequence[int]], beta: Sequence) -> List[Polynomial]:
    A = _check_matrix(A)
    if len(beta) != len(A):
        raise ValueError("beta must have one entry per row of A")
    n = len(A[0])
    D = WeylRing(0, n)
    toric = [lift_to_weyl(g, D) for g in toric_ideal(A)]
    return toric + euler_operators(A, beta, D)


def is_homogeneous(A: Sequence[Sequence[int]]) -> bool:
    """``(1, ..., 1)`` lies in the rational row span of A."""
    A = _check_matrix(A)
    return solve_in_rowspan(A, [1] * len(A[0])) is not None


def is_pointed(A: Sequence[Sequence[int]]) -> Tuple[bool, Optional[List[int]]]:
    """Whether the row span of A meets ``Z^n_{>0}``, with a witness."""
    A = _check_matrix(A)
    cols = [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]
    y = fm_feasible(cols)
    if y is None:
        return False, None
    w = [sum(Fraction(y[i]) * A[i][j] for i in range(len(A))) for j in range(len(A[0]))]
    den = 1
    for x in w:
        den = den * x.denominator // _gcd(den, x.denominator)
    return True, [int(x * den) for x in w]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# Volume


def _orient(simplex: Sequence[Sequence[Fraction]]) -> Fraction:
    base = simplex[0]
    return det([[a - b for a, b in zip(v, base)] for v in simplex[1:]])


def placing_triangulation(points: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Full-dimensional simplices (index tuples) of a placing triangulation."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    d = len(pts[0])
    start: List[int] = []
    for i, p in enumerate(pts):
        trial = start + [i]
        if len(trial) == 1 or rank([[a - b for a, b in zip(pts[j], pts[trial[0]])] for j in trial[1:]]) == len(trial) - 1:
            start = trial
        if len(start) == d + 1:
            break
    if len(start) < d + 1:
        raise PipelineError("volume", "point configuration is not full dimensional")
    simplices = [tuple(start)]
    for i, p in enumerate(pts):
        if i in start:
            continue
        faces = {}
        for s in simplices:
            for k in range(d + 1):
                face = tuple(sorted(s[:k] + s[k + 1 :]))
                faces.setdefault(face, []).append(s[k])
        new = []
        for face, opp in faces.items():
            if len(opp) != 1:
                continue
            a = _orient([pts[j] for j in face] + [pts[opp[0]]])
            b = _orient([pts[j] for j in face] + [p])
            if a * b < 0:
                new.append(face + (i,))
        simplices.extend(new)
    return simplices


def volume(A: Sequence[Sequence[int]]) -> int:
    """Normalized volume of ``conv{0, a_1, ..., a_n}`` by a placing triangulation."""
    A = _check_matrix(A)
    d = len(A)
    pts = [tuple([0] * d)] + [tuple(A[i][j] for i in range(d)) for j in range(len(A[0]))]
    uniq = list(dict.fromkeys(pts))
    total = Fraction(0)
    for s in placing_triangulation(uniq):
        total += abs(_orient([[Fraction(x) for x in uniq[j]] for j in s]))
    if total == 0:
        raise PipelineError("volume", "degenerate configuration")
    return int(total)


def homogenized_toric(A: Sequence[Sequence[int]]) -> List[Polynomial]:
    """Gröbner basis of H(I_A) in k[dt1..dtn, h] (total-degree homogenization)."""
    A = _check_matrix(A)
    n = len(A[0])
    G = toric_ideal(A)
    S = Ring([f"dt{i + 1}" for i in range(n)] + ["h"])
    out = []
    for g in G:
        deg = g.total_degree()
        out.append(Polynomial(S, {m[:-1] + (deg - sum(m[:-1]), 0): c for m, c in g.terms.items()}))
    return out


def volume_by_degree(A: Sequence[Sequence[int]]) -> int:
    """Degree of ``k[dt, h]/H(I_A)`` read off its K-polynomial."""
    A = _check_matrix(A)
    n, d = len(A[0]), len(A)
    H = homogenized_toric(A)
    S = Ring([f"dt{i + 1}" for i in range(n)] + ["h"])
    G = buchberger(H, degrevlex(S.nvars), ring=S) if H else None
    grading = standard_grading(S.nvars)
    if G is None:
        K = KPolynomial.one(1)
    else:
        K = k_from_initial(G, grading)
    C = expand_and_extract(K, n - d)
    return C.terms.get((n - d,), 0)


def cohen_macaulay(A: Sequence[Sequence[int]]) -> bool:
    """``k[dt, h]/H(I_A)`` is Cohen-Macaulay iff its projective dimension is ``n - d``."""
    A = _check_matrix(A)
    n, d = len(A[0]), len(A)
    H = homogenized_toric(A)
    if not H:
        return True
    S = H[0].ring
    res = minimize_resolution(free_resolution(H, 1, [(1,)] * S.nvars, ring=S))
    return res.length == n - d


def closed_form_multidegree(A: Sequence[Sequence[int]], vol: Optional[int] = None) -> Multidegree:
    """``vol(A) * sum_j C(n-d, j-d) T1^j T2^(n-j)``."""
    A = _check_matrix(A)
    n, d = len(A[0]), len(A)
    v = volume(A) if vol is None else vol
    terms = {(j, n - j): v * comb(n - d, j - d) for j in range(d, n + 1)}
    return Multidegree(2, n, terms)


# ---------------------------------------------------------------------------
# Systems and reports


@dataclass
class GKZSystem:
    A: Matrix
    beta: Optional[Tuple] = None

    def __post_init__(self):
        self.A = _check_matrix(self.A)
        if self.beta is not None:
            self.beta = tuple(rational(b) for b in self.beta)
            if len(self.beta) != self.d:
                raise ValueError("beta must have one entry per row of A")

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def toric(self) -> List[Polynomial]:
        return toric_ideal(self.A)

    def presentation(self, seed: int = 0) -> BifilteredPresentation:
        if self.beta is None:
            raise ValueError("beta not set")
        return build_presentation(self.A, self.beta, seed)


def build_presentation(A: Sequence[Sequence[int]], beta: Sequence, seed: int = 0) -> BifilteredPresentation:
    A = _check_matrix(A)
    D = WeylRing(0, len(A[0]))
    return BifilteredPresentation(D, hypergeometric_ideal(A, beta), 1, None, seed)


def draw_beta(d: int, seed: int, stream: str = "beta") -> Tuple[int, ...]:
    rng = random.Random(f"{stream}:{seed}")
    return tuple(rng.randint(-BETA_RANGE, BETA_RANGE) for _ in range(d))


@dataclass
class HypergeometricReport:
    A: Matrix
    beta: Tuple
    generic: bool
    homogeneous: bool
    pointed: bool
    pointed_witness: Optional[List[int]]
    cohen_macaulay: bool
    volume: int
    report: MultidegreeReport
    closed_form: Multidegree
    nice_route_a: Optional[bool] = None
    beta_seeds: List[int] = field(default_factory=list)

    @property
    def multidegree(self) -> Multidegree:
        return self.report.multidegree

    @property
    def nice(self) -> bool:
        return self.report.nice

    @property
    def formula_match(self) -> bool:
        return self.report.multidegree == self.closed_form

    def to_json(self):
        out = {
            "A": self.A,
            "beta": [format_rational(b) for b in self.beta],
            "generic": self.generic,
            "homogeneous": self.homogeneous,
            "pointed": self.pointed,
            "pointed_witness": self.pointed_witness,
            "cohen_macaulay": self.cohen_macaulay,
            "volume": self.volume,
            "closed_form": self.closed_form.format(),
            "formula_match": self.formula_match,
        }
        if self.generic:
            out["beta_seeds"] = self.beta_seeds
        if self.nice_route_a is not None:
            out["nice_route_a"] = self.nice_route_a
        out.update(self.report.to_json())
        return out


def _run(A, beta, seed) -> MultidegreeReport:
    M = build_presentation(A, beta, seed)
    return M.report(), M


def analyze(
    A: Sequence[Sequence[int]],
    beta: Union[str, Sequence] = "generic",
    seed: int = 0,
    both_routes: bool = False,
) -> HypergeometricReport:
    """Checks, volume, multidegree and niceness of M_A(beta).

    For ``beta="generic"`` two integer points are drawn from independent
    seed streams; the draw is accepted once both give the same multidegree
    and niceness, and retried otherwise.
    """
    A = _check_matrix(A)
    d = len(A)
    hom = is_homogeneous(A)
    pointed, witness = is_pointed(A)
    cm = cohen_macaulay(A)
    vol = volume(A)
    closed = closed_form_multidegree(A, vol)
    seeds: List[int] = []
    if isinstance(beta, str):
        if beta != "generic":
            raise ValueError("beta must be a vector or 'generic'")
        generic = True
        failed = []
        for attempt in range(BETA_RETRIES):
            s1 = seed + 2 * attempt
            s2 = s1 + 1
            b1, b2 = draw_beta(d, s1), draw_beta(d, s2)
            r1, M1 = _run(A, b1, seed)
            r2, _ = _run(A, b2, seed)
            if r1.multidegree == r2.multidegree and r1.nice == r2.nice:
                rep, M, beta_t, seeds = r1, M1, b1, [s1, s2]
                break
            failed.append((s1, s2))
        else:
            raise PipelineError("generic_beta", "seed pairs disagree", failed_seeds=failed)
    else:
        generic = False
        beta_t = tuple(rational(b) for b in beta)
        rep, M = _run(A, beta_t, seed)
    route_a = M.nice_route_a() if both_routes else None
    return HypergeometricReport(
        A, tuple(rational(b) for b in beta_t), generic, hom, pointed, witness, cm, vol, rep, closed, route_a, seeds
    )
