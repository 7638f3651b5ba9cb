"""Weyl algebra D, homogenized D^(h), the Rees ring R_V(D) = D[theta].

Variables are laid out as positions ``x1..xn, t1..tp``, derivations
``dx1..dxn, dt1..dtp`` and, for the homogenized flavors, one central
variable (``h`` or ``theta``) last.  Elements are
:class:`multideg.poly.Polynomial` objects over a :class:`WeylRing`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, buchberger
from .poly import MonomialOrder, Polynomial, Ring, lead_monomial, transfer

WeylElement = Polynomial

FLAVORS = ("none", "h", "theta")


class WeylRing(Ring):
    """``D`` (flavor none), ``D^(h)`` (``[d, x] = h``) or ``R_V(D)`` (theta central)."""

    def __init__(self, n: int, p: int = 0, flavor: str = "none", x_names=None, t_names=None):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.n = n
        self.p = p
        self.flavor = flavor
        xs = list(x_names or [f"x{i + 1}" for i in range(n)])
        ts = list(t_names or [f"t{i + 1}" for i in range(p)])
        ds = [f"d{v}" for v in xs + ts]
        names = xs + ts + ds
        comm = {}
        if flavor == "h":
            names.append("h")
            comm = {"h": 1}
        elif flavor == "theta":
            names.append("theta")
        pairs = [(v, f"d{v}", comm) for v in xs + ts]
        super().__init__(names, pairs, label=flavor)
        m = n + p
        self.positions = list(range(m))
        self.derivations = list(range(m, 2 * m))
        self.x_idx = list(range(n))
        self.t_idx = list(range(n, m))
        self.dx_idx = list(range(m, m + n))
        self.dt_idx = list(range(m + n, 2 * m))
        self.central = 2 * m if flavor != "none" else None

    def with_flavor(self, flavor: str) -> "WeylRing":
        return WeylRing(self.n, self.p, flavor, self.names[: self.n], self.names[self.n : self.n + self.p])

    def symbol_ring(self) -> Ring:
        """Commutative image: derivation ``dv`` becomes ``xi_v``."""
        names = list(self.names)
        for i in self.derivations:
            names[i] = _symbol_name(names[i][1:])
        return Ring(names, label="gr")


def _symbol_name(var: str) -> str:
    m = re.fullmatch(r"([xt])(\d+)", var)
    if m:
        return ("xi" if m.group(1) == "x" else "tau") + m.group(2)
    return "xi_" + var


@dataclass(frozen=True)
class AdmissibleWeight:
    """Weights ``u`` on positions, ``v`` on derivations, ``l`` on h/theta."""

    u: Tuple[int, ...]
    v: Tuple[int, ...]
    l: int = 0

    def row(self, ring: WeylRing) -> Tuple[int, ...]:
        m = ring.n + ring.p
        if len(self.u) != m or len(self.v) != m:
            raise ValueError("weight length does not match the ring")
        row = list(self.u) + list(self.v)
        if ring.central is not None:
            row.append(self.l)
        return tuple(row)

    def check(self, ring: WeylRing) -> None:
        bound = self.l if ring.flavor == "h" else 0
        for a, b in zip(self.u, self.v):
            if a + b < bound:
                raise ValueError(f"weight ({self.u}, {self.v}, {self.l}) is not admissible")


def F_weight(ring: WeylRing) -> AdmissibleWeight:
    m = ring.n + ring.p
    return AdmissibleWeight((0,) * m, (1,) * m, 1 if ring.flavor == "h" else 0)


def V_weight(ring: WeylRing) -> AdmissibleWeight:
    u = (0,) * ring.n + (-1,) * ring.p
    v = (0,) * ring.n + (1,) * ring.p
    return AdmissibleWeight(u, v, 1 if ring.flavor == "theta" else 0)


def L_weight(ring: WeylRing, p: int, q: int) -> AdmissibleWeight:
    """``pF + qV`` on D."""
    u = (0,) * ring.n + (-q,) * ring.p
    v = (p,) * ring.n + (p + q,) * ring.p
    return AdmissibleWeight(u, v, 0)


# ---------------------------------------------------------------------------
# Arithmetic and weights


def weyl_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def ord_weight(P: Polynomial, w, shifts: Optional[Sequence[int]] = None) -> int:
    if not P.terms:
        raise ValueError("zero element has no order")
    row = w.row(P.ring) if isinstance(w, AdmissibleWeight) else tuple(w)
    return P.weighted_degree(row, shifts)


def f_homogenize(P: Polynomial, target: Optional[WeylRing] = None, shifts: Optional[Sequence[int]] = None) -> Polynomial:
    """``D -> D^(h)``: pad each term with ``h`` up to ``ord^F(P)``."""
    ring: WeylRing = P.ring
    target = target or ring.with_flavor("h")
    if not P.terms:
        return target.zero(P.rank)
    row = F_weight(ring).row(ring)
    d = P.weighted_degree(row, shifts)
    out = {}
    for m, c in P.terms.items():
        k = d - sum(w * e for w, e in zip(row, m)) - (shifts[m[-1]] if shifts else 0)
        out[m[:-1] + (k, m[-1])] = c
    return Polynomial(target, out, P.rank)


def v_homogenize(P: Polynomial, target: Optional[WeylRing] = None, shifts: Optional[Sequence[int]] = None) -> Polynomial:
    """``D -> R_V(D)``: pad each term with ``theta`` up to ``ord^V(P)``."""
    ring: WeylRing = P.ring
    target = target or ring.with_flavor("theta")
    if not P.terms:
        return target.zero(P.rank)
    row = V_weight(ring).row(ring)
    k = P.weighted_degree(row, shifts)
    out = {}
    for m, c in P.terms.items():
        e = k - sum(w * x for w, x in zip(row, m)) - (shifts[m[-1]] if shifts else 0)
        out[m[:-1] + (e, m[-1])] = c
    return Polynomial(target, out, P.rank)


def dehomogenize(P: Polynomial, target: Optional[WeylRing] = None) -> Polynomial:
    """Set the central variable (h or theta) to 1."""
    ring: WeylRing = P.ring
    target = target or ring.with_flavor("none")
    index_map = list(range(ring.nvars - 1)) + [None]
    return transfer(P, target, index_map, {ring.nvars - 1: 1})


def graded_ring(ring: Ring, row: Sequence[int]) -> Ring:
    """Associated graded ring of a Weyl-type ring for the weight ``row``.

    A pair stays noncommuting when ``x d`` and its commutator have the same
    weight; otherwise it commutes in the graded ring.
    """
    keep = []
    for ix, idd, comm in ring.pairs:
        wc = sum(row[j] * e for j, e in comm)
        if row[ix] + row[idd] == wc:
            keep.append((ix, idd, {j: e for j, e in comm}))
    if len(keep) == len(ring.pairs):
        return ring
    if not keep:
        if isinstance(ring, WeylRing):
            return ring.symbol_ring()
        return Ring(ring.names, label="gr")
    return Ring(ring.names, keep, label="gr")


def symbol(P: Polynomial, w, shifts: Optional[Sequence[int]] = None, target: Optional[Ring] = None) -> Polynomial:
    """Terms of maximal weight, placed in the associated graded ring."""
    if not P.terms:
        raise ValueError("zero element has no symbol")
    row = w.row(P.ring) if isinstance(w, AdmissibleWeight) else tuple(w)
    target = target or graded_ring(P.ring, row)
    top = P.weighted_part(row, shifts)
    return Polynomial(target, dict(top.terms), P.rank)


def to_ring(P: Polynomial, target: Ring) -> Polynomial:
    """Reinterpret the same exponent vectors in another ring of equal size."""
    if target.nvars != P.ring.nvars:
        raise ValueError("variable count mismatch")
    return Polynomial(target, dict(P.terms), P.rank)


# ---------------------------------------------------------------------------
# Gröbner bases


def buchberger_weyl(gens: Sequence[Polynomial], order: MonomialOrder, **kw) -> GroebnerBasis:
    """Left Gröbner basis; the order must be adapted to the Weyl relations."""
    return buchberger(gens, order, **kw)


def tiebreak_blocks(ring: Ring, m: Optional[int] = None):
    """Degrevlex with derivations listed first and the central variable last.

    Positions end up cheaper than derivations among monomials of equal
    degree; for hypergeometric systems this keeps Gröbner bases far smaller
    than the positions-first listing.
    """
    if m is None:
        m = ring.n + ring.p if isinstance(ring, WeylRing) else len(ring.pairs)
    perm = list(range(m, 2 * m)) + list(range(m)) + list(range(2 * m, ring.nvars))
    return [(perm, "degrevlex")]


def weight_order(ring: Ring, rows: Sequence[Sequence[int]], shifts=None, module: str = "top") -> MonomialOrder:
    return MonomialOrder(ring.nvars, rows, shifts, module=module, blocks=tiebreak_blocks(ring))


def _homogenization_ring(ring: Ring) -> Tuple[Ring, int]:
    """Add a central variable H; each commutator c becomes c * H^(2 - deg c)."""
    name = "H_"
    while name in ring.index:
        name += "_"
    names = list(ring.names) + [name]
    pairs = []
    for ix, idd, comm in ring.pairs:
        dc = sum(e for _, e in comm)
        if dc > 2:
            raise ValueError("commutator of degree > 2 cannot be homogenized")
        c = {ring.names[j]: e for j, e in comm}
        if dc < 2:
            c[name] = 2 - dc
        pairs.append((ring.names[ix], ring.names[idd], c))
    return Ring(names, pairs, label="homog"), len(names) - 1


def _total_homogenize(P: Polynomial, big: Ring) -> Polynomial:
    d = max(sum(m[:-1]) for m in P.terms)
    out = {m[:-1] + (d - sum(m[:-1]), m[-1]): c for m, c in P.terms.items()}
    return Polynomial(big, out, P.rank)


def weight_adapted_gb(
    gens: Sequence[Polynomial],
    rows: Sequence[Sequence[int]],
    shifts=None,
    ring: Optional[Ring] = None,
    rank: Optional[int] = None,
) -> GroebnerBasis:
    """Basis of the left submodule adapted to the weight chain ``rows``.

    When the chain is a well-order the result is the reduced Gröbner basis
    for ``rows`` refined by degrevlex.  Otherwise Buchberger runs on the
    total-degree homogenization in an extra central variable and the result
    is dehomogenized; its leading forms generate the initial module for the
    first weight row.
    """
    gens = [g for g in gens if g]
    ring = ring or gens[0].ring
    rank = rank if rank is not None else (gens[0].rank if gens else 1)
    blocks = tiebreak_blocks(ring)
    order = MonomialOrder(ring.nvars, rows, shifts, blocks=blocks)
    if order.is_well_order():
        return buchberger(gens, order, ring=ring, rank=rank)
    big, hidx = _homogenization_ring(ring)
    brows = [list(r) + [0] for r in rows]
    border = MonomialOrder(big.nvars, brows, shifts, blocks=[(list(blocks[0][0]) + [hidx], "degrevlex")])
    hgens = [_total_homogenize(g, big) for g in gens]
    G = buchberger(hgens, border, ring=big, rank=rank, homogeneous=True)
    back = list(range(ring.nvars)) + [None]
    out = []
    seen = set()
    for g in G.elements:
        d = transfer(g, ring, back, {hidx: 1})
        key = frozenset(d.terms.items())
        if d and key not in seen:
            seen.add(key)
            out.append(d)
    res = GroebnerBasis(out, order, ring, rank, reduced=False, minimal=False, stats=G.stats)
    return res


def gr_presentation(gens: Sequence[Polynomial], w, shifts=None, extra_rows=()) -> Tuple[List[Polynomial], Ring]:
    """Symbols of a ``w``-adapted basis: generators of ``gr^w(N)``."""
    ring = gens[0].ring
    row = w.row(ring) if isinstance(w, AdmissibleWeight) else tuple(w)
    rows = [row] + [tuple(r) for r in extra_rows]
    shift_rows = None if shifts is None else [shifts] + [None] * len(extra_rows)
    G = weight_adapted_gb(gens, rows, shift_rows, ring=ring)
    target = graded_ring(ring, row)
    return [symbol(g, row, shifts, target) for g in G.elements], target


# ---------------------------------------------------------------------------
# h-saturation criterion


def prop11_order(ring: WeylRing, shifts: Optional[Sequence[int]] = None) -> MonomialOrder:
    """``|beta| + k``, then ``|beta|``, then degrevlex, on D^(h)."""
    if ring.flavor != "h":
        raise ValueError("order defined on D^(h)")
    row1 = [0] * ring.nvars
    row2 = [0] * ring.nvars
    for i in ring.derivations:
        row1[i] = 1
        row2[i] = 1
    row1[ring.central] = 1
    sh = None if shifts is None else [tuple(shifts), None]
    return MonomialOrder(ring.nvars, [row1, row2], sh, blocks=tiebreak_blocks(ring))


def minimal_gb_and_h_divisibility(gens: Sequence[Polynomial], shifts: Optional[Sequence[int]] = None, rank: Optional[int] = None):
    """Minimal Gröbner basis for the ``prop11_order`` and whether h divides no lead.

    Input must be homogeneous for ``|beta| + k`` (plus shifts).
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("empty generator list")
    ring: WeylRing = gens[0].ring
    order = prop11_order(ring, shifts)
    row1 = order.weights[0]
    for idx, g in enumerate(gens):
        degs = {sum(w * e for w, e in zip(row1, m)) + (shifts[m[-1]] if shifts else 0) for m in g.terms}
        if len(degs) > 1:
            raise ValueError(f"generator {idx} is not homogeneous: {g}")
    G = buchberger(gens, order, ring=ring, rank=rank if rank is not None else gens[0].rank)
    h = ring.central
    saturated = all(m[h] == 0 for m in G.leads())
    return G, saturated


# ---------------------------------------------------------------------------
# Newton polygon


@dataclass(frozen=True)
class NewtonPolygon:
    points: frozenset
    antichain: Tuple[Tuple[int, int], ...]

    @property
    def is_trivial(self) -> bool:
        return len(self.antichain) == 1


def newton_polygon(P: Polynomial) -> NewtonPolygon:
    """Points ``(|nu| - |mu|, |beta| + |mu|)`` and their maximal antichain."""
    if not P.terms:
        raise ValueError("zero element has no Newton polygon")
    ring: WeylRing = P.ring
    pts = set()
    for m in P.terms:
        nu = sum(m[i] for i in ring.t_idx)
        mu = sum(m[i] for i in ring.dt_idx)
        beta = sum(m[i] for i in ring.dx_idx)
        pts.add((nu - mu, beta + mu))
    maximal = sorted(
        pt for pt in pts if not any(q != pt and q[0] >= pt[0] and q[1] >= pt[1] for q in pts)
    )
    return NewtonPolygon(frozenset(pts), tuple(maximal))


def leading_monomials(G: GroebnerBasis):
    return [lead_monomial(g, G.order) for g in G.elements]
