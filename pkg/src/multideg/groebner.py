"""Gröbner bases of submodules of free modules, syzygies and resolutions.

``buchberger`` works for commutative rings and for the Weyl-type rings of
:mod:`multideg.weyl` (left submodules).  Pairs are selected by sugar degree
and then by the smallest lcm; the Gebauer-Möller criteria prune pairs, with
the product criterion restricted to commutative ideals.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernels
from .coeff import PoleError, QQ, RationalFunction
from .poly import (
    Mon,
    MonomialOrder,
    Polynomial,
    Ring,
    degrevlex,
    divide,
    lead_monomial,
    transfer,
)

log = logging.getLogger(__name__)


@dataclass
class GBStats:
    pairs: int = 0
    zero_reductions: int = 0
    elements: int = 0
    pruned: int = 0

    def as_dict(self):
        return {"pairs": self.pairs, "zero_reductions": self.zero_reductions, "elements": self.elements, "pruned": self.pruned}


class GroebnerBasis:
    """A Gröbner basis together with the order it was computed for."""

    def __init__(self, elements, order, ring: Ring, rank: int, reduced=False, minimal=False, stats=None):
        self.elements: List[Polynomial] = list(elements)
        self.order = order
        self.ring = ring
        self.rank = rank
        self.reduced = reduced
        self.minimal = minimal
        self.stats = stats or GBStats(elements=len(self.elements))
        self._prepared = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]})"

    def leads(self) -> List[Mon]:
        return [lead_monomial(g, self.order) for g in self.elements]

    def _prep(self):
        if self._prepared is None:
            leads = self.leads()
            basis = [(g.terms[m], list(g.terms.items())) for g, m in zip(self.elements, leads)]
            self._prepared = (basis, leads)
        return self._prepared

    def reduce(self, p: Polynomial) -> Polynomial:
        basis, leads = self._prep()
        rem = kernels.normal_form(dict(p.terms), basis, leads, self.order.nkey, self.ring.pairs)
        return Polynomial(self.ring, rem, p.rank)

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def initial_module(self) -> "MonomialModule":
        return MonomialModule([m for m in self.leads()], self.ring.nvars, self.rank)

    def check(self) -> bool:
        """Buchberger criterion: every S-pair reduces to zero."""
        leads = self.leads()
        for i, j in itertools.combinations(range(len(self.elements)), 2):
            if leads[i][-1] != leads[j][-1]:
                continue
            s = s_polynomial(self.elements[i], self.elements[j], leads[i], leads[j])
            if self.reduce(s):
                return False
        return True


class MonomialModule:
    """Monomial submodule of ``S^rank``: generators are monomials with component."""

    def __init__(self, gens: Sequence[Mon], nvars: int, rank: int):
        self.nvars = nvars
        self.rank = rank
        self.gens = minimalize(gens)

    def component_ideal(self, j: int) -> List[Tuple[int, ...]]:
        return [m[:-1] for m in self.gens if m[-1] == j]

    def __repr__(self):
        return f"MonomialModule({self.gens})"

    def __eq__(self, other):
        return isinstance(other, MonomialModule) and sorted(self.gens) == sorted(other.gens) and self.rank == other.rank


def divides(a: Mon, b: Mon) -> bool:
    return a[-1] == b[-1] and all(x <= y for x, y in zip(a[:-1], b[:-1]))


def minimalize(gens: Sequence[Mon]) -> List[Mon]:
    """Drop monomials divisible by another one (keeps one copy of duplicates)."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda m: (sum(m[:-1]), m))
    out: List[Mon] = []
    for g in uniq:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def _lcm(a: Mon, b: Mon) -> Mon:
    return tuple(x if x > y else y for x, y in zip(a, b))


def s_polynomial(f: Polynomial, g: Polynomial, lf: Mon, lg: Mon) -> Polynomial:
    lcm = _lcm(lf, lg)
    mf = tuple(x - y for x, y in zip(lcm[:-1], lf[:-1])) + (0,)
    mg = tuple(x - y for x, y in zip(lcm[:-1], lg[:-1])) + (0,)
    out: Dict[Mon, object] = {}
    pairs = f.ring.pairs
    kernels.mul_terms(mf, 1 / f.terms[lf], list(f.terms.items()), pairs, out)
    kernels.mul_terms(mg, -1 / g.terms[lg], list(g.terms.items()), pairs, out)
    return Polynomial(f.ring, out, f.rank)


def _check_homogeneous(gens, weights) -> bool:
    for g in gens:
        degs = {sum(w * e for w, e in zip(weights, m)) for m in g.terms}
        if len(degs) > 1:
            return False
    return True


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    *,
    ring: Optional[Ring] = None,
    rank: Optional[int] = None,
    sugar_weights: Optional[Sequence[int]] = None,
    homogeneous: bool = False,
    reduced: bool = True,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the (left) submodule generated by ``gens``.

    Orders that are not well-orders are accepted only with
    ``homogeneous=True`` when every generator is homogeneous for the
    positive grading ``sugar_weights`` (all ones by default); reduction then
    stays within finite-dimensional graded pieces.
    """
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if rank is None:
        rank = gens[0].rank if gens else 1
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise ValueError("generators must lie in one free module")
    nv = ring.nvars
    weights = tuple(sugar_weights) if sugar_weights is not None else (1,) * nv
    if ring.pairs:
        order.check_weyl(ring)
    if not order.is_well_order():
        if not homogeneous or not _check_homogeneous(gens, weights):
            raise ValueError("order is not a well-order and input is not homogeneous")
    stats = GBStats()
    pairs = ring.pairs
    nkey = order.nkey
    key = order.key
    use_product = ring.commutative and rank == 1

    def deg(m):
        return sum(w * e for w, e in zip(weights, m))

    polys: List[Polynomial] = []
    leads: List[Mon] = []
    sugars: List[int] = []
    alive: List[int] = []
    basis_cache: List = []
    queue: List = []  # entries: (sugar, key(lcm) or key(lead), kind, data)

    for g in gens:
        lm = lead_monomial(g, order)
        queue.append((max(deg(m) for m in g.terms), key(lm), 0, g))

    def reducers():
        return [basis_cache[i] for i in alive], [leads[i] for i in alive]

    def add(poly: Polynomial, sugar: int):
        lm = lead_monomial(poly, order)
        c = poly.terms[lm]
        if c != 1:
            poly = poly.scale(1 / c)
        k = len(polys)
        polys.append(poly)
        leads.append(lm)
        sugars.append(sugar)
        basis_cache.append((poly.terms[lm], list(poly.terms.items())))
        _update(k)

    def _coprime(a, b):
        return all(not (x and y) for x, y in zip(a[:-1], b[:-1]))

    def _update(k):
        hk = leads[k]
        comp = hk[-1]
        cand = [i for i in alive if leads[i][-1] == comp]
        lcms = {i: _lcm(leads[i], hk) for i in cand}
        c_list = list(cand)
        d_list = []
        while c_list:
            i = c_list.pop(0)
            li = lcms[i]
            if use_product and _coprime(leads[i], hk):
                d_list.append(i)
                continue
            if any(divides(lcms[j], li) for j in c_list) or any(divides(lcms[j], li) for j in d_list):
                stats.pruned += 1
                continue
            d_list.append(i)
        new_pairs = []
        for i in d_list:
            if use_product and _coprime(leads[i], hk):
                stats.pruned += 1
                continue
            new_pairs.append(i)
        kept = []
        for entry in queue:
            if entry[2] == 1:
                _, _, _, (a, b, lab) = entry
                if (
                    divides(hk, lab)
                    and _lcm(leads[a], hk) != lab
                    and _lcm(leads[b], hk) != lab
                ):
                    stats.pruned += 1
                    continue
            kept.append(entry)
        queue[:] = kept
        for i in new_pairs:
            lab = lcms[i]
            s = max(
                sugars[i] + deg(lab) - deg(leads[i]),
                sugars[k] + deg(lab) - deg(hk),
            )
            queue.append((s, key(lab), 1, (i, k, lab)))
        alive[:] = [i for i in alive if not divides(hk, leads[i])]
        alive.append(k)

    while queue:
        best = min(range(len(queue)), key=lambda t: (queue[t][0], queue[t][1], queue[t][2]))
        sugar, _, kind, data = queue.pop(best)
        if kind == 0:
            terms = dict(data.terms)
        else:
            a, b, _ = data
            stats.pairs += 1
            terms = s_polynomial(polys[a], polys[b], leads[a], leads[b]).terms
        basis, blead = reducers()
        rem = kernels.normal_form(terms, basis, blead, nkey, pairs)
        if not rem:
            if kind == 1:
                stats.zero_reductions += 1
            continue
        add(Polynomial(ring, rem, rank), sugar)

    result = [polys[i] for i in alive]
    if reduced:
        result = interreduce(result, order)
    result.sort(key=lambda p: key(lead_monomial(p, order)))
    stats.elements = len(result)
    return GroebnerBasis(result, order, ring, rank, reduced=reduced, minimal=True, stats=stats)


def interreduce(polys: Sequence[Polynomial], order) -> List[Polynomial]:
    """Tail-reduce a minimal basis and make every element monic."""
    leads = [lead_monomial(p, order) for p in polys]
    out = []
    for i, p in enumerate(polys):
        others = [j for j in range(len(polys)) if j != i]
        basis = [(polys[j].terms[leads[j]], list(polys[j].terms.items())) for j in others]
        lm = leads[i]
        tail = {m: c for m, c in p.terms.items() if m != lm}
        rem = kernels.normal_form(tail, basis, [leads[j] for j in others], order.nkey, p.ring.pairs)
        c = p.terms[lm]
        rem[lm] = c
        q = Polynomial(p.ring, rem, p.rank)
        if c != 1:
            q = q.scale(1 / c)
        out.append(q)
    return out


def initial_module(G: GroebnerBasis) -> MonomialModule:
    return G.initial_module()


# ---------------------------------------------------------------------------
# Syzygies and resolutions


class SchreyerOrder:
    """Order on ``S^s`` induced by a list of leading monomials in ``S^r``.

    ``m e_i > n e_j`` iff ``m*lead_i > n*lead_j`` in the base order, or they
    are equal and ``i < j``.
    """

    def __init__(self, base, leads: Sequence[Mon]):
        self.base = base
        self.leads = [tuple(m) for m in leads]
        self._cache: Dict[Mon, tuple] = {}
        self._ncache: Dict[Mon, tuple] = {}

    def key(self, mon: Mon) -> tuple:
        k = self._cache.get(mon)
        if k is None:
            i = mon[-1]
            lead = self.leads[i]
            combined = tuple(x + y for x, y in zip(mon[:-1], lead[:-1])) + (lead[-1],)
            k = self.base.key(combined) + (-i,)
            self._cache[mon] = k
        return k

    def nkey(self, mon: Mon) -> tuple:
        k = self._ncache.get(mon)
        if k is None:
            k = tuple(-x for x in self.key(mon))
            self._ncache[mon] = k
        return k

    def is_well_order(self) -> bool:
        return self.base.is_well_order()

    def check_weyl(self, ring):
        pass


def syzygies(G: GroebnerBasis, prune: bool = True) -> GroebnerBasis:
    """Schreyer generators of the syzygy module of the elements of ``G``.

    The result is a Gröbner basis for the Schreyer order induced by ``G``.
    """
    ring = G.ring
    if not ring.commutative:
        raise ValueError("syzygies are implemented for commutative rings")
    elems = G.elements
    s = len(elems)
    leads = G.leads()
    sorder = SchreyerOrder(G.order, leads)
    by_first: Dict[int, List[Tuple[Mon, int]]] = {}
    for i, j in itertools.combinations(range(s), 2):
        if leads[i][-1] != leads[j][-1]:
            continue
        lab = _lcm(leads[i], leads[j])
        mi = tuple(x - y for x, y in zip(lab[:-1], leads[i][:-1])) + (i,)
        by_first.setdefault(i, []).append((mi, j))
    chosen: List[Tuple[int, int]] = []
    for i, lst in by_first.items():
        if prune:
            keep: List[Tuple[Mon, int]] = []
            for mi, j in sorted(lst, key=lambda t: (sum(t[0][:-1]), t[0], t[1])):
                if not any(divides(k[0], mi) for k in keep):
                    keep.append((mi, j))
            lst = keep
        chosen.extend((i, j) for _, j in lst)
    out = []
    for i, j in chosen:
        f, g = elems[i], elems[j]
        lab = _lcm(leads[i], leads[j])
        mi = tuple(x - y for x, y in zip(lab[:-1], leads[i][:-1]))
        mj = tuple(x - y for x, y in zip(lab[:-1], leads[j][:-1]))
        ci, cj = f.terms[leads[i]], g.terms[leads[j]]
        spoly = s_polynomial(f, g, leads[i], leads[j])
        qs, r = divide(spoly, elems, G.order)
        if r:
            raise ArithmeticError("input is not a Gröbner basis")
        terms: Dict[Mon, object] = {}
        terms[mi + (i,)] = 1 / ci
        terms[mj + (j,)] = terms.get(mj + (j,), 0) - 1 / cj
        for k, q in enumerate(qs):
            for m, c in q.terms.items():
                key = m[:-1] + (k,)
                v = terms.get(key, 0) - c
                if v:
                    terms[key] = v
                else:
                    terms.pop(key, None)
        out.append(Polynomial(ring, {m: c for m, c in terms.items() if c}, s))
    return GroebnerBasis(out, sorder, ring, s, reduced=False, minimal=prune)


@dataclass
class GradedFreeResolution:
    """``L_0 <- L_1 <- ... ``; ``maps[i]`` lists the columns of ``L_{i+1} -> L_i``."""

    ring: Ring
    degree_table: Tuple[Tuple[int, ...], ...]
    shifts: List[List[Tuple[int, ...]]]
    maps: List[List[Polynomial]] = field(default_factory=list)

    @property
    def ranks(self) -> List[int]:
        return [len(s) for s in self.shifts]

    @property
    def length(self) -> int:
        return len(self.shifts) - 1

    def apply(self, i: int, v: Polynomial) -> Polynomial:
        """Image of ``v`` in ``L_{i+1}`` under ``L_{i+1} -> L_i``."""
        cols = self.maps[i]
        rank = len(self.shifts[i])
        out = self.ring.zero(rank)
        for j, comp in enumerate(v.components()):
            if comp:
                out = out + comp * cols[j]
        return out

    def is_complex(self) -> bool:
        for i in range(1, len(self.maps)):
            for col in self.maps[i]:
                if self.apply(i - 1, col):
                    return False
        return True

    def is_homogeneous(self) -> bool:
        for i, cols in enumerate(self.maps):
            for j, col in enumerate(cols):
                target = self.shifts[i + 1][j]
                for m in col.terms:
                    d = _mdeg(m, self.degree_table, self.shifts[i])
                    if d != target:
                        return False
        return True

    def betti(self) -> List[int]:
        return self.ranks


def _mdeg(m: Mon, table, shifts) -> Tuple[int, ...]:
    dim = len(table[0]) if table else len(shifts[0])
    out = list(shifts[m[-1]]) if shifts is not None else [0] * dim
    for e, row in zip(m[:-1], table):
        if e:
            for k in range(dim):
                out[k] += e * row[k]
    return tuple(out)


class NonHomogeneousError(ValueError):
    pass


def _schreyer_sort(elems: List[Polynomial], order) -> List[Polynomial]:
    """Order by component, then lead exponents descending lexicographically."""

    def k(p):
        m = lead_monomial(p, order)
        return (m[-1], tuple(-x for x in m[:-1]))

    return sorted(elems, key=k)


def free_resolution(
    gens: Sequence[Polynomial],
    rank: int,
    degree_table: Sequence[Sequence[int]],
    shifts: Optional[Sequence[Sequence[int]]] = None,
    max_length: Optional[int] = None,
    ring: Optional[Ring] = None,
    order: Optional[MonomialOrder] = None,
) -> GradedFreeResolution:
    """Schreyer resolution of ``S^rank[shifts] / <gens>``.

    ``degree_table[i]`` is the multidegree of variable ``i``; ``shifts[j]``
    the degree of basis vector ``e_j``.
    """
    gens = [g for g in gens if g]
    ring = ring or (gens[0].ring if gens else None)
    if ring is None:
        raise ValueError("ring required")
    table = tuple(tuple(int(x) for x in row) for row in degree_table)
    dim = len(table[0]) if table else (len(shifts[0]) if shifts else 1)
    shifts0 = [tuple(s) for s in shifts] if shifts is not None else [(0,) * dim] * rank
    for idx, g in enumerate(gens):
        degs = {_mdeg(m, table, shifts0) for m in g.terms}
        if len(degs) > 1:
            raise NonHomogeneousError(f"generator {idx} is not homogeneous: {g}")
    if max_length is None:
        max_length = ring.nvars + 1
    order = order or degrevlex(ring.nvars)
    res = GradedFreeResolution(ring, table, [shifts0], [])
    if not gens:
        return res
    G = buchberger(gens, order, ring=ring, rank=rank)
    elems = _schreyer_sort(list(G.elements), order)
    G = GroebnerBasis(elems, order, ring, rank, reduced=True, minimal=True)
    prev_shifts = shifts0
    level = 0
    while G.elements and level < max_length:
        cols = list(G.elements)
        degs = [_mdeg(lead_monomial(c, G.order), table, prev_shifts) for c in cols]
        res.maps.append(cols)
        res.shifts.append(degs)
        level += 1
        if level >= max_length:
            break
        S = syzygies(G)
        if not S.elements:
            break
        elems = _schreyer_sort(list(S.elements), S.order)
        G = GroebnerBasis(elems, S.order, ring, len(cols), minimal=True)
        prev_shifts = degs
    return res


def _entry(col: Polynomial, i: int):
    """Component ``i`` of ``col`` as ``(is_nonzero_constant, value)``."""
    items = [(m, c) for m, c in col.terms.items() if m[-1] == i]
    if len(items) == 1 and not any(items[0][0][:-1]):
        return True, items[0][1]
    return False, None


def minimize_resolution(res: GradedFreeResolution, positive: Optional[bool] = None) -> GradedFreeResolution:
    """Cancel unit entries until no map has a nonzero constant entry."""
    from .grading import Multigrading

    if positive is None:
        positive = Multigrading(res.degree_table).is_positive() if res.degree_table else True
    if not positive:
        raise ValueError("minimality needs a positive grading")
    ring = res.ring
    maps = [[c for c in cols] for cols in res.maps]
    shifts = [list(s) for s in res.shifts]
    changed = True
    while changed:
        changed = False
        for k in range(len(maps)):
            cols = maps[k]
            rank_target = len(shifts[k])
            found = None
            for j, col in enumerate(cols):
                for i in range(rank_target):
                    ok, val = _entry(col, i)
                    if ok:
                        found = (i, j, val)
                        break
                if found:
                    break
            if not found:
                continue
            i, j, c = found
            colj = cols[j]
            new_cols = []
            for l, col in enumerate(cols):
                if l == j:
                    continue
                a = col.component(i)
                if a:
                    col = col - (a * colj).scale(1 / c)
                new_cols.append(col)
            keep = [t for t in range(rank_target) if t != i]
            mapping = [None] * rank_target
            for new, old in enumerate(keep):
                mapping[old] = new
            from .poly import remap_components

            maps[k] = [remap_components(col, mapping, len(keep)) for col in new_cols]
            # next map: drop component j of its columns
            if k + 1 < len(maps):
                src_rank = len(shifts[k + 1])
                mp = [None] * src_rank
                idx = 0
                for t in range(src_rank):
                    if t != j:
                        mp[t] = idx
                        idx += 1
                maps[k + 1] = [remap_components(col, mp, src_rank - 1) for col in maps[k + 1]]
            # previous map: drop column i
            if k > 0:
                maps[k - 1] = [col for t, col in enumerate(maps[k - 1]) if t != i]
            del shifts[k + 1][j]
            del shifts[k][i]
            changed = True
            break
    # strip trailing zero modules
    while maps and not maps[-1]:
        maps.pop()
        shifts.pop()
    return GradedFreeResolution(ring, res.degree_table, [list(s) for s in shifts], maps)


# ---------------------------------------------------------------------------
# Saturation, quotients, elimination


def _extend_ring(ring: Ring, name: str) -> Ring:
    names = list(ring.names)
    while name in names:
        name = name + "_"
    return Ring(names + [name], [(ring.names[ix], ring.names[idd], {ring.names[j]: e for j, e in comm}) for ix, idd, comm in ring.pairs])


def _lift(p: Polynomial, big: Ring) -> Polynomial:
    return transfer(p, big, list(range(p.ring.nvars)))


def _elimination_order(nvars: int, elim: int, base_rows=()) -> MonomialOrder:
    row = [0] * nvars
    row[elim] = 1
    rows = [row] + [list(r) + [0] for r in base_rows]
    return MonomialOrder(nvars, rows)


def saturate(gens: Sequence[Polynomial], f: Polynomial, rank: Optional[int] = None) -> GroebnerBasis:
    """``(N : f^oo)`` through one auxiliary variable ``y`` and ``1 - y f``."""
    ring = f.ring
    rank = rank if rank is not None else (gens[0].rank if gens else 1)
    big = _extend_ring(ring, "y_sat")
    y = big.var(big.nvars - 1)
    ff = _lift(f, big)
    new = [_lift(g, big) for g in gens]
    one_minus = big.one() - y * ff
    for j in range(rank):
        new.append(big.from_components([one_minus if t == j else big.zero() for t in range(rank)]) if rank > 1 else one_minus)
    G = buchberger(new, _elimination_order(big.nvars, big.nvars - 1), ring=big, rank=rank)
    back = list(range(ring.nvars)) + [None]
    keep = [transfer(g, ring, back, {ring.nvars: 0}) for g in G if all(m[ring.nvars] == 0 for m in g.terms)]
    return buchberger(keep, degrevlex(ring.nvars), ring=ring, rank=rank)


def intersect_with_multiples(gens: Sequence[Polynomial], f: Polynomial, rank: int) -> List[Polynomial]:
    """Generators of ``N ∩ f S^rank`` by eliminating ``u`` from ``uN + (1-u) f S^rank``."""
    ring = f.ring
    big = _extend_ring(ring, "u_int")
    u = big.var(big.nvars - 1)
    ff = _lift(f, big)
    new = [u * _lift(g, big) for g in gens]
    other = (big.one() - u) * ff
    for j in range(rank):
        new.append(big.from_components([other if t == j else big.zero() for t in range(rank)]) if rank > 1 else other)
    G = buchberger(new, _elimination_order(big.nvars, big.nvars - 1), ring=big, rank=rank)
    back = list(range(ring.nvars)) + [None]
    return [transfer(g, ring, back, {ring.nvars: 0}) for g in G if all(m[ring.nvars] == 0 for m in g.terms)]


def ideal_quotient(gens: Sequence[Polynomial], f: Polynomial, rank: Optional[int] = None) -> GroebnerBasis:
    """``(N : f) = {g : f g in N}``."""
    ring = f.ring
    rank = rank if rank is not None else (gens[0].rank if gens else 1)
    inter = intersect_with_multiples(gens, f, rank)
    out = []
    for g in inter:
        comps = []
        for c in g.components() if rank > 1 else [g]:
            q, r = divide(c, [f], degrevlex(ring.nvars))
            if r:
                raise ArithmeticError("element of N ∩ fS not divisible by f")
            comps.append(q[0])
        out.append(ring.from_components(comps) if rank > 1 else comps[0])
    return buchberger(out, degrevlex(ring.nvars), ring=ring, rank=rank)


def is_saturated_by_variable(gens: Sequence[Polynomial], var: int, rank: Optional[int] = None) -> bool:
    """Whether ``(N : x_var) == N`` for a submodule of a commutative free module.

    Homogenize with a new variable z, saturate by z (degrevlex, z last),
    then recompute with ``x_var`` last: by the Bayer-Stillman property the
    module is saturated iff no leading term is divisible by ``x_var``.
    """
    gens = [g for g in gens if g]
    if not gens:
        return True
    ring = gens[0].ring
    if ring.pairs:
        raise ValueError("commutative ring required")
    rank = rank if rank is not None else gens[0].rank
    if all(all(m[var] == 0 for m in g.terms) for g in gens):
        return True
    big = _extend_ring(ring, "z_hom")
    nv = ring.nvars
    hom = []
    for g in gens:
        d = max(sum(m[:-1]) for m in g.terms)
        hom.append(Polynomial(big, {m[:-1] + (d - sum(m[:-1]), m[-1]): c for m, c in g.terms.items()}, rank))
    G1 = buchberger(hom, degrevlex(nv + 1), ring=big, rank=rank)
    sat = []
    for g in G1:
        k = min(m[nv] for m in g.terms)
        sat.append(Polynomial(big, {m[:nv] + (m[nv] - k, m[-1]): c for m, c in g.terms.items()}, rank) if k else g)
    perm = [i for i in range(nv) if i != var] + [nv, var]
    G2 = buchberger(sat, MonomialOrder(nv + 1, blocks=[(perm, "degrevlex")]), ring=big, rank=rank)
    return all(m[var] == 0 for m in G2.leads())


def same_module(a: Sequence[Polynomial], b: Sequence[Polynomial], ring: Ring, rank: int) -> bool:
    Ga = buchberger(a, degrevlex(ring.nvars), ring=ring, rank=rank)
    Gb = buchberger(b, degrevlex(ring.nvars), ring=ring, rank=rank)
    return [g.terms for g in Ga] == [g.terms for g in Gb]


# ---------------------------------------------------------------------------
# Parameters and specialization


def parameter_block_order(nvars: int, params: Sequence[int], rows=(), shifts=None) -> MonomialOrder:
    """Block order with every non-parameter variable above the parameters.

    ``rows`` are weight rows over all variables; their entries on parameter
    variables must be zero.  The component is compared before parameters.
    """
    params = list(params)
    rest = [i for i in range(nvars) if i not in params]
    for r in rows:
        if any(r[i] for i in params):
            raise ValueError("weight rows must vanish on parameters")
    blocks = [(rest, "degrevlex")] + ([(params, "degrevlex")] if params else [])
    return MonomialOrder(nvars, rows, shifts, blocks=blocks, comp_after_block=0 if params else None)


def parametric_leading_coefficients(G: GroebnerBasis, params: Sequence[int]) -> List[Polynomial]:
    """For each element, the sum of the terms sharing its lead's non-parameter part."""
    params = set(params)
    out = []
    for g, lm in zip(G.elements, G.leads()):
        sig = tuple(0 if i in params else x for i, x in enumerate(lm[:-1])) + (lm[-1],)
        terms = {}
        for m, c in g.terms.items():
            s = tuple(0 if i in params else x for i, x in enumerate(m[:-1])) + (m[-1],)
            if s == sig:
                terms[tuple(x if i in params else 0 for i, x in enumerate(m[:-1])) + (0,)] = c
        out.append(Polynomial(g.ring, terms, 1))
    return out


def _eval_poly(p: Polynomial, values: Dict[int, object]):
    total = QQ(0)
    for m, c in p.terms.items():
        t = c
        for i, e in enumerate(m[:-1]):
            if e:
                t = t * QQ(values[i]) ** e
        total = total + t
    return total


def specialize(G: GroebnerBasis, c: Sequence, params: Optional[Sequence[int]] = None, target: Optional[Ring] = None):
    """Specialize a parametric Gröbner basis at ``c``.

    Two parametric forms are supported: parameters as ring variables listed
    in ``params`` (with ``G`` computed for :func:`parameter_block_order`),
    or coefficients in Q(l) (``params=None``).  Returns
    ``(specialized GroebnerBasis, ok)``; ``ok`` is False when some leading
    coefficient vanishes (or has a pole) at ``c``.
    """
    ring = G.ring
    if params is None:
        out = []
        for g, lm in zip(G.elements, G.leads()):
            try:
                q = g.terms[lm]
                qv = q.evaluate(c) if isinstance(q, RationalFunction) else q
                if not qv:
                    return None, False
                out.append(g.map_coefficients(lambda x: x.evaluate(c) if isinstance(x, RationalFunction) else x))
            except PoleError:
                return None, False
        return GroebnerBasis(out, G.order, ring, G.rank), True
    params = list(params)
    if len(c) != len(params):
        raise ValueError(f"expected {len(params)} parameter values")
    values = dict(zip(params, c))
    for q in parametric_leading_coefficients(G, params):
        if not _eval_poly(q, values):
            return None, False
    rest = [i for i in range(ring.nvars) if i not in values]
    if target is None:
        target = Ring([ring.names[i] for i in rest])
    index_map = [None if i in values else rest.index(i) for i in range(ring.nvars)]
    out = [transfer(g, target, index_map, values) for g in G.elements]
    rows = [[r[i] for i in rest] for r in G.order.weights]
    order = MonomialOrder(len(rest), rows, G.order.shifts, module=G.order.module)
    return GroebnerBasis(out, order, target, G.rank), True
