"""K-polynomials and multidegrees of multigraded modules.

The default route reads the K-polynomial off a monomial initial module
with the pivot recursion

    K(S/I) = K(S/(I + <p>)) + T^deg(p) K(S/(I : p)),

pivoting on a power of the variable that occurs in most generators.  The
resolution route (alternating sum of twists) is kept as a cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .grading import Multigrading

Exps = Tuple[int, ...]


class KPolynomial:
    """Laurent polynomial in ``T1..Td`` with integer coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Optional[Dict[Exps, int]] = None):
        self.dim = dim
        self.terms = {tuple(k): int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, dim: int) -> "KPolynomial":
        return cls(dim, {(0,) * dim: 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "KPolynomial":
        return cls(len(exps), {tuple(exps): coeff})

    def __add__(self, other: "KPolynomial") -> "KPolynomial":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return KPolynomial(self.dim, out)

    def __neg__(self):
        return KPolynomial(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KPolynomial(self.dim, {k: v * other for k, v in self.terms.items()})
        out: Dict[Exps, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + ca * cb
        return KPolynomial(self.dim, out)

    __rmul__ = __mul__

    def shift(self, exps: Sequence[int]) -> "KPolynomial":
        return KPolynomial(self.dim, {tuple(x + y for x, y in zip(k, exps)): v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, KPolynomial) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def substitute_zero(self, var: int) -> "KPolynomial":
        """Set ``T_var = 0`` (requires non-negative exponents in that variable)."""
        out = {}
        for k, v in self.terms.items():
            if k[var] < 0:
                raise ValueError("negative exponent cannot be evaluated at 0")
            if k[var] == 0:
                out[k] = v
        return KPolynomial(self.dim, out)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]), reverse=True)

    def format(self) -> str:
        return format_laurent(self.sorted_items())

    __str__ = format

    def __repr__(self):
        return f"KPolynomial({self.format()!r})"

    def to_json(self):
        return [[list(k), v] for k, v in self.sorted_items()]


class Multidegree(KPolynomial):
    """Homogeneous form of a fixed total degree (possibly zero)."""

    __slots__ = ("degree",)

    def __init__(self, dim: int, degree: int, terms: Optional[Dict[Exps, int]] = None):
        super().__init__(dim, terms)
        self.degree = degree
        for k in self.terms:
            if sum(k) != degree:
                raise ValueError("multidegree terms must share the tagged total degree")

    def __eq__(self, other):
        if isinstance(other, Multidegree):
            return self.degree == other.degree and self.terms == other.terms
        return isinstance(other, KPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Multidegree({self.format()!r}, degree={self.degree})"


def _sort_key(k: Exps):
    return (sum(k),) + tuple(-x for x in reversed(k))


def format_laurent(items) -> str:
    if not items:
        return "0"
    parts = []
    for k, v in items:
        mono = "*".join(f"T{i + 1}" if e == 1 else f"T{i + 1}^{e}" for i, e in enumerate(k) if e)
        mag = abs(v)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if v < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def parse_laurent(text: str, dim: int) -> KPolynomial:
    """Parse ``"2*T1^3 + 2*T1^2*T2"`` style text."""
    from .parsing import parse_expression

    def var(name, line, col):
        if not name.startswith("T") or not name[1:].isdigit() or not 1 <= int(name[1:]) <= dim:
            from .parsing import ParseError

            raise ParseError(f"unknown variable {name!r}", line, col)
        e = [0] * dim
        e[int(name[1:]) - 1] = 1
        return KPolynomial.monomial(e)

    def const(c):
        if c.denominator != 1:
            raise ValueError("integer coefficients expected")
        return KPolynomial(dim, {(0,) * dim: int(c)})

    def inverse(base, line, col):
        if len(base.terms) != 1 or next(iter(base.terms.values())) != 1:
            from .parsing import ParseError

            raise ParseError("negative exponent needs a monomial base", line, col)
        (k,) = base.terms
        return KPolynomial(dim, {tuple(-x for x in k): 1})

    return parse_expression(text, var, const, inverse=inverse)


# ---------------------------------------------------------------------------
# Routes


def k_from_resolution(res) -> KPolynomial:
    """Alternating sum of the twists of a graded free resolution."""
    dim = len(res.shifts[0][0]) if res.shifts and res.shifts[0] else (len(res.degree_table[0]) if res.degree_table else 1)
    out: Dict[Exps, int] = {}
    for i, level in enumerate(res.shifts):
        sign = -1 if i % 2 else 1
        for b in level:
            out[tuple(b)] = out.get(tuple(b), 0) + sign
    return KPolynomial(dim, out)


def _min_gens(gens: Iterable[Exps]) -> Tuple[Exps, ...]:
    uniq = sorted(set(gens), key=lambda m: (sum(m), m))
    out: List[Exps] = []
    for g in uniq:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def k_monomial_ideal(gens: Sequence[Exps], grading: Multigrading, memo: Optional[dict] = None) -> KPolynomial:
    """K-polynomial of ``S/I`` for a monomial ideal ``I`` (exponent tuples)."""
    memo = {} if memo is None else memo
    dim = grading.dim
    return KPolynomial(dim, _krec(_min_gens(gens), grading, memo))


def _krec(gens: Tuple[Exps, ...], grading: Multigrading, memo: dict) -> Dict[Exps, int]:
    dim = grading.dim
    zero = (0,) * dim
    if not gens:
        return {zero: 1}
    hit = memo.get(gens)
    if hit is not None:
        return hit
    if any(not any(g) for g in gens):
        memo[gens] = {}
        return {}
    counts: Dict[int, int] = {}
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] = counts.get(i, 0) + 1
    if max(counts.values()) == 1:
        # pairwise coprime generators: product of (1 - T^deg g)
        out = {zero: 1}
        for g in gens:
            d = grading.degree(g)
            new: Dict[Exps, int] = {}
            for k, v in out.items():
                new[k] = new.get(k, 0) + v
                kk = tuple(a + b for a, b in zip(k, d))
                new[kk] = new.get(kk, 0) - v
            out = {k: v for k, v in new.items() if v}
        memo[gens] = out
        return out
    var = max(counts, key=lambda i: (counts[i], -i))
    e = min(g[var] for g in gens if g[var])
    pivot = tuple(e if i == var else 0 for i in range(len(gens[0])))
    plus = _min_gens([g for g in gens if g[var] < e] + [pivot])
    colon = _min_gens([tuple(max(0, x - y) for x, y in zip(g, pivot)) for g in gens])
    a = _krec(plus, grading, memo)
    b = _krec(colon, grading, memo)
    d = grading.degree(pivot)
    out = dict(a)
    for k, v in b.items():
        kk = tuple(x + y for x, y in zip(k, d))
        out[kk] = out.get(kk, 0) + v
    out = {k: v for k, v in out.items() if v}
    memo[gens] = out
    return out


def k_from_monomial_module(gens, rank: int, grading: Multigrading, shifts: Optional[Sequence[Sequence[int]]] = None) -> KPolynomial:
    """``sum_j T^shift_j K(S/I_j)`` for a monomial submodule of ``S^rank``."""
    dim = grading.dim
    shifts = shifts if shifts is not None else [(0,) * dim] * rank
    memo: dict = {}
    total = KPolynomial(dim)
    for j in range(rank):
        comp = [tuple(m[:-1]) for m in gens if m[-1] == j]
        total = total + k_monomial_ideal(comp, grading, memo).shift(shifts[j])
    return total


def k_from_initial(G, grading: Multigrading, shifts: Optional[Sequence[Sequence[int]]] = None) -> KPolynomial:
    """K-polynomial of ``S^r / N`` from a Gröbner basis of ``N``."""
    for idx, g in enumerate(G.elements):
        degs = {grading.term_degree(m, shifts) for m in g.terms}
        if len(degs) > 1:
            raise ValueError(f"generator {idx} is not homogeneous: {g}")
    return k_from_monomial_module(G.leads(), G.rank, grading, shifts)


# ---------------------------------------------------------------------------
# Dimension of monomial quotients


def _min_transversal(supports: List[frozenset], bound: int) -> int:
    """Size of a smallest set of variables meeting every support."""
    best = [bound]

    def rec(remaining: List[frozenset], chosen: int):
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        s = min(remaining, key=len)
        for v in sorted(s):
            rec([r for r in remaining if v not in r], chosen + 1)

    rec(supports, 0)
    return best[0]


def dim_monomial_ideal(gens: Sequence[Exps], nvars: int) -> Optional[int]:
    """Krull dimension of ``S/I``; None when ``I = S``."""
    supports = []
    for g in gens:
        s = frozenset(i for i, e in enumerate(g) if e)
        if not s:
            return None
        supports.append(s)
    uniq = sorted(set(supports), key=len)
    minimal = [s for s in uniq if not any(t < s for t in uniq)]
    return nvars - _min_transversal(minimal, nvars + 1)


def codim_monomial(gens, nvars: int, rank: int = 1) -> int:
    """Codimension of ``S^rank / N`` for a monomial submodule (ambient dim if zero)."""
    dims = []
    for j in range(rank):
        comp = [tuple(m[:-1]) for m in gens if m[-1] == j]
        d = dim_monomial_ideal(comp, nvars)
        if d is not None:
            dims.append(d)
    if not dims:
        return nvars
    return nvars - max(dims)


# ---------------------------------------------------------------------------
# Expansion at 1 - T


def _series(e: int, target: int) -> List[int]:
    """Coefficients of ``(1 - T)^e`` up to degree ``target``."""
    if e >= 0:
        return [(-1) ** j * comb(e, j) if j <= e else 0 for j in range(target + 1)]
    k = -e
    return [comb(k - 1 + j, j) for j in range(target + 1)]


def expand(K: KPolynomial, target: int) -> Dict[Exps, int]:
    """Terms of ``K(1 - T)`` of total degree <= ``target``."""
    dim = K.dim
    out: Dict[Exps, int] = {}
    cache: Dict[Tuple[int, int], List[int]] = {}
    for b, c in K.terms.items():
        partial = {(): c}
        for i in range(dim):
            ser = cache.get((b[i], target))
            if ser is None:
                ser = cache[(b[i], target)] = _series(b[i], target)
            new: Dict[Exps, int] = {}
            for k, v in partial.items():
                used = sum(k)
                for j in range(target - used + 1):
                    if ser[j]:
                        kk = k + (j,)
                        new[kk] = new.get(kk, 0) + v * ser[j]
            partial = new
        for k, v in partial.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def expand_and_extract(K: KPolynomial, target_degree: int) -> Multidegree:
    """Degree-``target_degree`` part of ``K(1 - T1, ..., 1 - Td)``."""
    if target_degree < 0:
        raise ValueError("target degree must be non-negative")
    terms = {k: v for k, v in expand(K, target_degree).items() if sum(k) == target_degree}
    return Multidegree(K.dim, target_degree, terms)


def lowest_form(K: KPolynomial, max_degree: int) -> Optional[Multidegree]:
    """Lowest nonzero homogeneous part of ``K(1 - T)`` up to ``max_degree``."""
    ex = expand(K, max_degree)
    for d in range(max_degree + 1):
        part = {k: v for k, v in ex.items() if sum(k) == d}
        if part:
            return Multidegree(K.dim, d, part)
    return None


# ---------------------------------------------------------------------------
# Hilbert series check


def _integer_functional(grading: Multigrading) -> List[int]:
    ell = grading.positive_functional()
    if ell is None:
        raise ValueError("grading is not positive")
    den = 1
    for x in ell:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in ell]


def graded_dimensions(initial_gens, nvars: int, rank: int, grading: Multigrading, bound: int, shifts=None) -> Dict[Exps, int]:
    """Dimensions of graded pieces of ``S^r / in(N)`` with functional value <= bound."""
    ell = _integer_functional(grading)
    dim = grading.dim
    shifts = shifts if shifts is not None else [(0,) * dim] * rank
    vdeg = [sum(a * b for a, b in zip(ell, row)) for row in grading.table]
    out: Dict[Exps, int] = {}
    for j in range(rank):
        comp = [tuple(m[:-1]) for m in initial_gens if m[-1] == j]
        base = sum(a * b for a, b in zip(ell, shifts[j]))
        budget = bound - base
        if budget < 0:
            continue
        exps = [0] * nvars

        def rec(i: int, left: int):
            if i == nvars:
                if not any(all(a <= b for a, b in zip(g, exps)) for g in comp):
                    d = tuple(x + y for x, y in zip(grading.degree(exps), shifts[j]))
                    out[d] = out.get(d, 0) + 1
                return
            e = 0
            while e * vdeg[i] <= left:
                exps[i] = e
                rec(i + 1, left - e * vdeg[i])
                e += 1
            exps[i] = 0

        rec(0, budget)
    return out


def hilbert_check(initial_gens, nvars: int, rank: int, grading: Multigrading, K: KPolynomial, bound: int, shifts=None) -> bool:
    """Compare graded piece dimensions with ``K / prod(1 - T^a_i)`` up to ``bound``."""
    ell = _integer_functional(grading)
    H = graded_dimensions(initial_gens, nvars, rank, grading, bound, shifts)

    def val(k):
        return sum(a * b for a, b in zip(ell, k))

    prod = dict(H)
    for row in grading.table:
        new = dict(prod)
        for k, v in prod.items():
            kk = tuple(a + b for a, b in zip(k, row))
            if val(kk) <= bound:
                new[kk] = new.get(kk, 0) - v
        prod = {k: v for k, v in new.items() if v}
    target = {k: v for k, v in K.terms.items() if val(k) <= bound}
    return prod == target
