"""Bifiltered presentations ``D^r[n][m]/N`` and their invariants.

The F-filtration counts derivations; the V-filtration is along
``t_1 = ... = t_p = 0``.  From a presentation we compute the bigraded
module gr^F(R_V(M)), its K-polynomial and multidegree, niceness of the
bifiltration, bigr(M) and the intermediate graded modules gr^L(M).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    GroebnerBasis,
    buchberger,
    ideal_quotient,
    is_saturated_by_variable,
    parameter_block_order,
    specialize,
)
from .grading import Multigrading, ShiftPair, bigr_grading, builtin_bigrading
from .kpoly import KPolynomial, Multidegree, codim_monomial, expand_and_extract, k_from_initial
from .parsing import ParseError
from .poly import MonomialOrder, Polynomial, Ring
from .weyl import (
    F_weight,
    L_weight,
    V_weight,
    WeylRing,
    f_homogenize,
    minimal_gb_and_h_divisibility,
    symbol,
    tiebreak_blocks,
    to_ring,
    v_homogenize,
    weight_adapted_gb,
)

MAX_RETRIES = 32


class PipelineError(RuntimeError):
    """Failure inside one stage of the pipeline."""

    def __init__(self, stage: str, message: str, **details):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message
        self.details = details

    def to_json(self):
        return {"stage": self.stage, "message": self.message, **self.details}


class SpecializationError(PipelineError):
    def __init__(self, stage: str, seeds):
        super().__init__(stage, "no generic specialization found", failed_seeds=list(seeds))


class NotNiceError(PipelineError):
    pass


@dataclass
class MultidegreeReport:
    k_fv: KPolynomial
    codim: int
    multidegree: Multidegree
    nice: Optional[bool] = None
    codim_bigr: Optional[int] = None
    seed: int = 0
    stats: Dict[str, dict] = field(default_factory=dict)

    @property
    def vanishes(self) -> bool:
        """True when the bigr codimension exceeds ``codim`` (multidegree forced to 0)."""
        return self.codim_bigr is not None and self.codim < self.codim_bigr

    def to_json(self):
        out = {
            "k_fv": self.k_fv.format(),
            "codim": self.codim,
            "multidegree": self.multidegree.format(),
            "multidegree_terms": self.multidegree.to_json(),
            "nice": self.nice,
            "seed": self.seed,
            "stats": self.stats,
        }
        if self.codim_bigr is not None:
            out["codim_bigr"] = self.codim_bigr
            out["multidegree_vanishes"] = self.vanishes
        return out


class BifilteredPresentation:
    """``D^r[n][m]/N`` with ``N`` generated by ``gens``.

    Results of the expensive stages are cached on the instance.
    """

    def __init__(self, ring: WeylRing, gens: Sequence[Polynomial], rank: int = 1, shifts: Optional[ShiftPair] = None, seed: int = 0):
        if ring.flavor != "none":
            raise ValueError("presentations live in the plain Weyl algebra")
        self.ring = ring
        self.rank = rank
        self.gens = [g for g in gens if g]
        for g in self.gens:
            if g.ring != ring or g.rank != rank:
                raise ValueError("generator does not belong to D^r")
        self.shifts = shifts or ShiftPair.zero(rank)
        if self.shifts.rank != rank:
            raise ValueError("shift vectors must have length r")
        self.seed = seed
        self.stats: Dict[str, dict] = {}
        self._cache: Dict[str, object] = {}

    def __repr__(self):
        return f"BifilteredPresentation(n={self.ring.n}, p={self.ring.p}, r={self.rank}, gens={len(self.gens)})"

    # -- bookkeeping -------------------------------------------------------

    def _cached(self, name: str, fn):
        if name not in self._cache:
            t0 = time.perf_counter()
            self._cache[name] = fn()
            self.stats.setdefault(name, {})["seconds"] = round(time.perf_counter() - t0, 4)
        return self._cache[name]

    def _record(self, name: str, G: GroebnerBasis):
        entry = self.stats.setdefault(name, {})
        if G.stats is not None:
            entry.update(G.stats.as_dict())
        entry["size"] = len(G)

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def p(self) -> int:
        return self.ring.p

    def _order(self, ring: Ring, rows, shifts) -> MonomialOrder:
        return MonomialOrder(ring.nvars, rows, shifts, blocks=tiebreak_blocks(ring, self.n + self.p))

    def _symbols_gb(self, G: GroebnerBasis, row, shifts, S: Ring) -> GroebnerBasis:
        """Symbols of a reduced basis for an order led by ``row``: again a reduced basis."""
        syms = [symbol(g, row, shifts, S) for g in G.elements]
        return GroebnerBasis(syms, self._order(S, [row], [shifts]), S, self.rank, reduced=True, minimal=True)

    def _F_row(self, ring: WeylRing):
        return F_weight(ring).row(ring)

    def _V_row(self, ring: WeylRing):
        return V_weight(ring).row(ring)

    def is_v_homogeneous(self) -> bool:
        row = self._V_row(self.ring)
        for g in self.gens:
            if len({sum(w * e for w, e in zip(row, m)) + self.shifts.m[m[-1]] for m in g.terms}) > 1:
                return False
        return True

    # -- gr^F(R_V(M)) ------------------------------------------------------

    def v_standard_basis(self) -> List[Polynomial]:
        """Elements of N whose V-homogenizations generate R_V(N)."""

        def run():
            if self.is_v_homogeneous():
                return list(self.gens)
            G = weight_adapted_gb(self.gens, [self._V_row(self.ring)], [self.shifts.m], ring=self.ring, rank=self.rank)
            self._record("v_basis", G)
            return list(G.elements)

        return self._cached("v_basis", run)

    def rv_ring(self) -> WeylRing:
        return self.ring.with_flavor("theta")

    def rv_generators(self) -> List[Polynomial]:
        R = self.rv_ring()
        return [v_homogenize(g, R, self.shifts.m) for g in self.v_standard_basis()]

    def grF_RV_ring(self) -> Ring:
        return self.rv_ring().symbol_ring()

    def grF_RV(self) -> GroebnerBasis:
        """Gröbner basis of the commutative presentation of gr^F(R_V(M))."""

        def run():
            R = self.rv_ring()
            row = self._F_row(R)
            order = self._order(R, [row], [self.shifts.n])
            G = buchberger(self.rv_generators(), order, ring=R, rank=self.rank)
            self._record("grF_RV", G)
            return self._symbols_gb(G, row, self.shifts.n, self.grF_RV_ring())

        return self._cached("grF_RV", run)

    def bigrading(self) -> Multigrading:
        return builtin_bigrading("grF_RV", self.n, self.p)

    def bishifts(self) -> List[Tuple[int, int]]:
        return self.shifts.bidegrees()

    # -- generic specialization of x ---------------------------------------

    def _specialized(self, name: str, G: GroebnerBasis, params: Sequence[int], rows, shifts) -> Tuple[GroebnerBasis, int]:
        """Specialize the variables ``params`` at a generic point.

        Returns the specialized basis and the seed used.  The point is drawn
        from ``seed``-derived streams; each draw is verified by the
        non-vanishing of the parametric leading coefficients.
        """
        if not params:
            return G, self.seed
        ring = G.ring
        order = parameter_block_order(ring.nvars, params, rows, shifts)
        P = buchberger(list(G.elements), order, ring=ring, rank=G.rank)
        self._record(name + "_parametric", P)
        failed = []
        for attempt in range(MAX_RETRIES):
            s = self.seed + attempt
            rng = random.Random(f"{name}:{s}")
            c = [rng.randint(-(10**6), 10**6) for _ in params]
            S, ok = specialize(P, c, params)
            if ok:
                return S, s
            failed.append(s)
        raise SpecializationError(name, failed)

    def _x_params(self, S: Ring) -> List[int]:
        return list(range(self.n))

    def specialized_grF_RV(self) -> Tuple[GroebnerBasis, int]:
        def run():
            G = self.grF_RV()
            rows = [r for r in G.order.weights]
            return self._specialized("grF_RV", G, self._x_params(G.ring), rows, G.order.shifts)

        return self._cached("grF_RV_specialized", run)

    # -- invariants --------------------------------------------------------

    def k_fv(self) -> KPolynomial:
        """K_{F,V}: K-polynomial of gr^F(R_V(M)) in (T1, T2)."""
        G = self.grF_RV()
        return k_from_initial(G, self.bigrading(), self.bishifts())

    def codim_grF_RV(self) -> int:
        G, _ = self.specialized_grF_RV()
        return codim_monomial(G.leads(), G.ring.nvars, self.rank)

    def multidegree_fv(self) -> MultidegreeReport:
        K = self.k_fv()
        d = self.codim_grF_RV()
        _, seed = self.specialized_grF_RV()
        return MultidegreeReport(K, d, expand_and_extract(K, d), seed=seed, stats=self.stats)

    # -- F only --------------------------------------------------------------

    def grF(self) -> GroebnerBasis:
        """Gröbner basis of gr^F(N) in k[x, t, xi, tau]."""

        def run():
            row = self._F_row(self.ring)
            order = self._order(self.ring, [row], [self.shifts.n])
            G = buchberger(self.gens, order, ring=self.ring, rank=self.rank)
            self._record("grF", G)
            return self._symbols_gb(G, row, self.shifts.n, self.ring.symbol_ring())

        return self._cached("grF", run)

    def k_f(self) -> KPolynomial:
        G = self.grF()
        grading = Multigrading([(0,)] * (self.n + self.p) + [(1,)] * (self.n + self.p))
        return k_from_initial(G, grading, [(s,) for s in self.shifts.n])

    def specialized_grF(self) -> Tuple[GroebnerBasis, int]:
        def run():
            G = self.grF()
            params = list(range(self.n + self.p))
            return self._specialized("grF", G, params, G.order.weights, G.order.shifts)

        return self._cached("grF_specialized", run)

    def codim_grF(self) -> int:
        G, _ = self.specialized_grF()
        return codim_monomial(G.leads(), G.ring.nvars, self.rank)

    def multidegree_f(self) -> Multidegree:
        K = self.k_f()
        return expand_and_extract(K, self.codim_grF())

    def generic_rank(self) -> int:
        """Holonomic rank: the coefficient m of ``multidegree_f = m T^n``."""
        d = self.codim_grF()
        if d != self.n + self.p:
            raise PipelineError("generic_rank", "not holonomic at graded level", codim=d)
        C = self.multidegree_f()
        return C.terms.get((d,), 0)

    def standard_monomial_count(self) -> int:
        """``dim_K`` of the specialized gr^F(M); finite in the holonomic case."""
        G, _ = self.specialized_grF()
        return _count_standard(G.leads(), G.ring.nvars, self.rank)

    # -- niceness ------------------------------------------------------------

    def nice_route_b(self, method: str = "bayer-stillman") -> bool:
        """θ-saturation of gr^F(R_V(M)): ``(N : theta) == N``.

        ``method="quotient"`` computes the quotient by elimination and
        tests membership both ways; the default uses a revlex order with
        theta last.  A basis free of theta is saturated outright.
        """

        def run():
            G = self.grF_RV()
            S = G.ring
            th = S.nvars - 1
            if all(m[th] == 0 for g in G.elements for m in g.terms):
                return True
            if method == "quotient":
                Q = ideal_quotient(list(G.elements), S.var(th), self.rank)
                return all(not G.reduce(q) for q in Q.elements)
            return is_saturated_by_variable(list(G.elements), th, self.rank)

        if method not in ("bayer-stillman", "quotient"):
            raise ValueError(f"unknown method {method!r}")
        return self._cached(f"nice_b_{method}" if method != "bayer-stillman" else "nice_b", run)

    def nice_route_a(self) -> bool:
        """h-saturation of gr^V(R_F(M)) by leading monomials in D^(h)."""

        def run():
            Dh = self.ring.with_flavor("h")
            row = self._F_row(self.ring)
            GF = buchberger(self.gens, self._order(self.ring, [row], [self.shifts.n]), ring=self.ring, rank=self.rank)
            self._record("nice_a_F", GF)
            HN = [f_homogenize(g, Dh, self.shifts.n) for g in GF.elements]
            vrow = self._V_row(Dh)
            if self.is_v_homogeneous():
                grv = HN
            else:
                GV = weight_adapted_gb(HN, [vrow], [self.shifts.m], ring=Dh, rank=self.rank)
                self._record("nice_a_V", GV)
                grv = [symbol(g, vrow, self.shifts.m, Dh) for g in GV.elements]
            _, saturated = minimal_gb_and_h_divisibility(grv, self.shifts.n, self.rank)
            return saturated

        return self._cached("nice_a", run)

    def is_nicely_bifiltered(self, route: str = "B") -> bool:
        if route.upper() == "A":
            return self.nice_route_a()
        if route.upper() == "B":
            return self.nice_route_b()
        raise ValueError("route must be 'A' or 'B'")

    # -- bigr and gr^L -------------------------------------------------------

    def bigr_presentation(self) -> GroebnerBasis:
        """Commutative presentation of bigr(M) = gr^F gr^V(M) over k[x, t, xi, tau]."""
        if not self.nice_route_b():
            raise NotNiceError("bigr", "bifiltration is not nice")

        def run():
            F = self._F_row(self.ring)
            V = self._V_row(self.ring)
            G = weight_adapted_gb(self.gens, [V, F], [self.shifts.m, self.shifts.n], ring=self.ring, rank=self.rank)
            self._record("bigr_basis", G)
            S = self.ring.symbol_ring()
            syms = []
            for g in G.elements:
                top = g.weighted_part(V, self.shifts.m).weighted_part(F, self.shifts.n)
                syms.append(to_ring(top, S))
            order = self._order(S, [F], [self.shifts.n])
            H = buchberger(syms, order, ring=S, rank=self.rank)
            self._record("bigr", H)
            return H

        return self._cached("bigr", run)

    def k_bigr(self) -> KPolynomial:
        G = self.bigr_presentation()
        return k_from_initial(G, bigr_grading(self.n, self.p), self.bishifts())

    def codim_bigr(self) -> int:
        def run():
            G = self.bigr_presentation()
            S, _ = self._specialized("bigr", G, list(range(self.n)), G.order.weights, G.order.shifts)
            return codim_monomial(S.leads(), S.ring.nvars, self.rank)

        return self._cached("codim_bigr", run)

    def report(self, with_bigr: bool = False) -> MultidegreeReport:
        rep = self.multidegree_fv()
        rep.nice = self.nice_route_b()
        if with_bigr and rep.nice:
            rep.codim_bigr = self.codim_bigr()
            if rep.vanishes:
                rep.multidegree = Multidegree(2, rep.codim)
        rep.stats = self.stats
        return rep

    def gr_L(self, p: int, q: int) -> GroebnerBasis:
        """Reduced Gröbner basis of gr^L(N), L = pF + qV, in k[x, t, xi, tau]."""
        if p <= 0 or q <= 0:
            raise ValueError("p and q must be positive")
        if gcd(p, q) != 1:
            raise ValueError("p and q must be coprime")

        def run():
            w = L_weight(self.ring, p, q).row(self.ring)
            sh = [p * a + q * b for a, b in zip(self.shifts.n, self.shifts.m)]
            G = weight_adapted_gb(self.gens, [w], [sh], ring=self.ring, rank=self.rank)
            self._record(f"grL_{p}_{q}_basis", G)
            S = self.ring.symbol_ring()
            syms = [symbol(g, w, sh, S) for g in G.elements]
            H = buchberger(syms, self._order(S, [], None), ring=S, rank=self.rank)
            self._record(f"grL_{p}_{q}", H)
            return H

        return self._cached(f"grL_{p}_{q}", run)

    def slope_scan(self, slopes: Sequence[Tuple[int, int]]) -> "SlopeScan":
        if not slopes:
            raise ValueError("no slopes given")
        groups: List[List[Tuple[int, int]]] = []
        keys: List[tuple] = []
        for p, q in slopes:
            G = self.gr_L(p, q)
            key = tuple(tuple(sorted(g.terms.items())) for g in G.elements)
            for i, k in enumerate(keys):
                if k == key:
                    groups[i].append((p, q))
                    break
            else:
                keys.append(key)
                groups.append([(p, q)])
        ideals = [[g.format() for g in self.gr_L(*grp[0]).elements] for grp in groups]
        return SlopeScan(groups, ideals)


@dataclass
class SlopeScan:
    groups: List[List[Tuple[int, int]]]
    ideals: List[List[str]]

    @property
    def no_slopes_seen(self) -> bool:
        return len(self.groups) == 1

    def to_json(self):
        return {
            "groups": [[f"{p}/{q}" for p, q in g] for g in self.groups],
            "initial_ideals": self.ideals,
            "no_slopes_seen": self.no_slopes_seen,
        }


def _count_standard(leads, nvars: int, rank: int) -> int:
    """Number of monomials outside a monomial module; raises if infinite."""
    total = 0
    for j in range(rank):
        comp = [m[:-1] for m in leads if m[-1] == j]
        bounds = []
        for i in range(nvars):
            pure = [m[i] for m in comp if m[i] and all(e == 0 for k, e in enumerate(m) if k != i)]
            if not pure:
                raise ValueError("quotient is infinite dimensional")
            bounds.append(min(pure))

        def rec(i, prefix):
            if i == nvars:
                return 1
            cnt = 0
            for e in range(bounds[i]):
                mon = prefix + (e,)
                if any(all(a >= b for a, b in zip(mon, g[: i + 1])) and all(x == 0 for x in g[i + 1 :]) for g in comp):
                    continue
                cnt += rec(i + 1, mon)
            return cnt

        total += rec(0, ())
    return total


# ---------------------------------------------------------------------------
# Text input


def parse_presentation(text: str, seed: int = 0) -> BifilteredPresentation:
    """Read a presentation file.

    Format (``#`` starts a comment)::

        n 0
        p 1
        r 1
        shifts_n 0
        shifts_m 0
        gen t1*dt1 + 1
        gen [dt1, 0]

    Each ``gen`` line holds one operator (or a ``[..]`` vector when r > 1).
    """
    header = {"n": 0, "p": 0, "r": 1}
    sn = sm = None
    raw = []
    for lineno, full in enumerate(text.splitlines(), 1):
        line = full.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        offset = full.index(rest) if rest else 0
        if key in header:
            header[key] = int(rest)
        elif key == "shifts_n":
            sn = tuple(int(x) for x in rest.replace(",", " ").split())
        elif key == "shifts_m":
            sm = tuple(int(x) for x in rest.replace(",", " ").split())
        elif key == "gen":
            raw.append((rest, lineno, offset))
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    ring = WeylRing(header["n"], header["p"])
    r = header["r"]
    gens = []
    for t, ln, offset in raw:
        try:
            gens.append(ring.parse(t, rank=r, line=ln))
        except ParseError as e:
            # report the column within the file line, not the expression
            raise ParseError(e.message, e.line, e.col + offset) from None
    shifts = ShiftPair(sn or (0,) * r, sm or (0,) * r)
    return BifilteredPresentation(ring, gens, r, shifts, seed)
