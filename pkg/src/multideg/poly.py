"""Sparse polynomials, free-module elements and monomial orders.

One representation serves commutative polynomial rings and the Weyl-type
algebras of :mod:`multideg.weyl`: a :class:`Ring` lists its variables and,
for noncommutative rings, the conjugate pairs ``(x, d)`` with a central
commutator ``[d, x] = c``.  Elements are stored normally ordered (positions
before derivations), so a term is just an exponent vector.

A monomial is a tuple ``(e_0, ..., e_{N-1}, comp)``: exponents followed by
the free-module component (0 for ring elements).  Orders are parameters,
never baked into elements.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kernels
from .coeff import QQ, RationalFunction, format_rational, is_rational, rational
from .parsing import ParseError, parse_expression, split_vector

Mon = Tuple[int, ...]


class Ring:
    """Polynomial ring over Q (or Q(l)), optionally with Weyl relations.

    ``pairs`` holds ``(x, d, comm)`` triples: variable names (or indices) of
    a position and its derivation, and the commutator ``[d, x]`` given as a
    dict ``{name: exponent}`` of central variables (empty dict for 1).
    """

    def __init__(self, names: Sequence[str], pairs: Iterable = (), label: str = ""):
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError("duplicate variable names")
        self.index = {n: i for i, n in enumerate(self.names)}
        kp = []
        for x, d, comm in pairs:
            ix = self.index[x] if isinstance(x, str) else int(x)
            idd = self.index[d] if isinstance(d, str) else int(d)
            sparse = tuple(
                sorted(((self.index[k] if isinstance(k, str) else int(k)), int(e)) for k, e in dict(comm or {}).items() if e)
            )
            kp.append((ix, idd, sparse))
        self.pairs = tuple(kp)
        self.commutative = not self.pairs
        self.label = label
        self._key = (self.names, self.pairs)

    # identity -------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        kind = "commutative" if self.commutative else "Weyl-type"
        return f"Ring({kind}, {', '.join(self.names)})"

    # construction helpers ------------------------------------------------
    def zero(self, rank: int = 1) -> "Polynomial":
        return Polynomial(self, {}, rank)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c, rank: int = 1, comp: int = 0) -> "Polynomial":
        c = _coerce_coeff(c)
        if not c:
            return self.zero(rank)
        return Polynomial(self, {(0,) * self.nvars + (comp,): c}, rank)

    def var(self, name) -> "Polynomial":
        i = self.index[name] if isinstance(name, str) else int(name)
        e = [0] * (self.nvars + 1)
        e[i] = 1
        return Polynomial(self, {tuple(e): QQ(1)}, 1)

    def gens(self) -> List["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def basis_vector(self, comp: int, rank: int) -> "Polynomial":
        return self.const(1, rank, comp)

    def monomial(self, exps: Sequence[int], coeff=1, comp: int = 0, rank: int = 1) -> "Polynomial":
        coeff = _coerce_coeff(coeff)
        if not coeff:
            return self.zero(rank)
        return Polynomial(self, {tuple(exps) + (comp,): coeff}, rank)

    def from_dict(self, terms: Dict, rank: int = 1) -> "Polynomial":
        """Build from ``{exps: coeff}`` (comp 0) or ``{(exps, comp): coeff}``."""
        out = {}
        for k, c in terms.items():
            if len(k) == 2 and isinstance(k[0], tuple):
                mon = tuple(k[0]) + (k[1],)
            else:
                mon = tuple(k) + (0,)
            c = _coerce_coeff(c)
            if c:
                out[mon] = out.get(mon, 0) + c
        return Polynomial(self, {m: c for m, c in out.items() if c}, rank)

    def from_components(self, comps: Sequence["Polynomial"]) -> "Polynomial":
        rank = len(comps)
        terms = {}
        for j, p in enumerate(comps):
            if p.ring != self or p.rank != 1:
                raise ValueError("components must be ring elements of this ring")
            for m, c in p.terms.items():
                terms[m[:-1] + (j,)] = c
        return Polynomial(self, terms, rank)

    # text ----------------------------------------------------------------
    def parse(self, text: str, rank: int = 1, line: int = 1) -> "Polynomial":
        """Parse a polynomial, or ``[p1, ..., pr]`` for a module element."""
        stripped = text.strip()
        if stripped.startswith("["):
            parts = split_vector(stripped)
            if rank == 1:
                rank = len(parts)
            if len(parts) != rank:
                raise ParseError(f"expected {rank} components, found {len(parts)}", line, 1)
            return self.from_components([self._parse_scalar(p, line) for p in parts])
        p = self._parse_scalar(stripped, line)
        if rank != 1:
            raise ParseError(f"expected a vector of {rank} components", line, 1)
        return p

    def _parse_scalar(self, text: str, line: int) -> "Polynomial":
        def var(name, ln, col):
            if name not in self.index:
                raise ParseError(f"unknown variable {name!r}", ln, col)
            return self.var(name)

        return parse_expression(text, var, self.const, line)

    def format_monomial(self, exps: Sequence[int]) -> str:
        parts = []
        for n, e in zip(self.names, exps):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}")
        return "*".join(parts)


def _coerce_coeff(c):
    if isinstance(c, RationalFunction):
        return c
    if is_rational(c) or isinstance(c, str):
        return rational(c)
    return c


def _format_coeff(c) -> Tuple[str, str]:
    """Split a coefficient into (sign, magnitude text)."""
    if isinstance(c, RationalFunction):
        if c.is_constant():
            c = next(iter(c.num.values()), QQ(0))
        else:
            text = c.format()
            if len(c.num) > 1 and not text.startswith("("):
                text = f"({text})"
            return "+", text
    if c < 0:
        return "-", format_rational(-c)
    return "+", format_rational(c)


def degrevlex_sort_key(mon: Mon):
    e = mon[:-1]
    return (sum(e),) + tuple(-x for x in reversed(e)) + (-mon[-1],)


class Polynomial:
    """Sparse element of the free module ``R^rank`` (``rank`` 1: ring element)."""

    __slots__ = ("ring", "rank", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Optional[Dict[Mon, object]] = None, rank: int = 1):
        self.ring = ring
        self.rank = rank
        self.terms = terms if terms is not None else {}
        self._hash = None

    # basic protocol -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def copy(self) -> "Polynomial":
        return Polynomial(self.ring, dict(self.terms), self.rank)

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("ring mismatch")

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.rank == other.rank and self.terms == other.terms
        if is_rational(other) or isinstance(other, RationalFunction):
            if self.rank != 1:
                return False
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rank, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other, self.rank) if self.rank == 1 else NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _coerce_coeff(c)
        if not c:
            return self.ring.zero(self.rank)
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()}, self.rank)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if self.rank != 1:
            raise ValueError("left factor must be a ring element")
        out: Dict[Mon, object] = {}
        items = list(other.terms.items())
        pairs = self.ring.pairs
        for m, c in self.terms.items():
            kernels.mul_terms(m, c, items, pairs, out)
        return Polynomial(self.ring, out, other.rank)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0 or self.rank != 1:
            raise ValueError("non-negative powers of ring elements only")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        """Left multiplication by ``coeff * x^exps``."""
        out: Dict[Mon, object] = {}
        kernels.mul_terms(tuple(exps) + (0,), _coerce_coeff(coeff), list(self.terms.items()), self.ring.pairs, out)
        return Polynomial(self.ring, out, self.rank)

    # structure ----------------------------------------------------------
    def components(self) -> List["Polynomial"]:
        comps: List[Dict[Mon, object]] = [{} for _ in range(self.rank)]
        for m, c in self.terms.items():
            comps[m[-1]][m[:-1] + (0,)] = c
        return [Polynomial(self.ring, t, 1) for t in comps]

    def component(self, j: int) -> "Polynomial":
        return Polynomial(self.ring, {m[:-1] + (0,): c for m, c in self.terms.items() if m[-1] == j}, 1)

    def monomials(self) -> List[Mon]:
        return list(self.terms)

    def coefficient(self, exps: Sequence[int], comp: int = 0):
        return self.terms.get(tuple(exps) + (comp,), QQ(0))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero element has no degree")
        return max(sum(m[:-1]) for m in self.terms)

    def weighted_degree(self, weights: Sequence[int], shifts: Optional[Sequence[int]] = None) -> int:
        if not self.terms:
            raise ValueError("zero element has no degree")
        return max(_wdeg(m, weights, shifts) for m in self.terms)

    def weighted_part(self, weights: Sequence[int], shifts: Optional[Sequence[int]] = None) -> "Polynomial":
        """Terms of maximal weight."""
        top = self.weighted_degree(weights, shifts)
        return Polynomial(
            self.ring, {m: c for m, c in self.terms.items() if _wdeg(m, weights, shifts) == top}, self.rank
        )

    def is_constant(self) -> bool:
        return self.rank == 1 and all(not any(m[:-1]) for m in self.terms)

    def monic(self, order: "MonomialOrder") -> "Polynomial":
        _, _, c = lead(self, order)
        return self.scale(1 / c) if c != 1 else self

    def map_coefficients(self, fn) -> "Polynomial":
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                out[m] = v
        return Polynomial(self.ring, out, self.rank)

    # printing -----------------------------------------------------------
    def sorted_terms(self) -> List[Tuple[Mon, object]]:
        return sorted(self.terms.items(), key=lambda t: degrevlex_sort_key(t[0]), reverse=True)

    def format(self) -> str:
        if self.rank == 1:
            return _format_scalar(self.ring, self.sorted_terms())
        return "[" + ", ".join(p.format() for p in self.components()) + "]"

    __str__ = format

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


def _format_scalar(ring: Ring, items) -> str:
    if not items:
        return "0"
    out = []
    for m, c in items:
        sign, mag = _format_coeff(c)
        mono = ring.format_monomial(m[:-1])
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _wdeg(mon: Mon, weights: Sequence[int], shifts: Optional[Sequence[int]]) -> int:
    d = 0
    for w, e in zip(weights, mon):
        if w and e:
            d += w * e
    if shifts is not None:
        d += shifts[mon[-1]]
    return d


# ---------------------------------------------------------------------------
# Orders


class MonomialOrder:
    """Weight rows refined by a term order, on ``N^n x {components}``.

    ``weights`` is a list of integer rows; ``shifts[r][j]`` adds to row ``r``
    for component ``j``.  The tie-break is a list of blocks
    ``(variable indices, "degrevlex" | "lex")`` applied in turn.  ``module``
    is ``"top"`` (term over position) or ``"pot"``; lower component index is
    larger (e_1 > e_2).
    """

    def __init__(
        self,
        nvars: int,
        weights: Sequence[Sequence[int]] = (),
        shifts: Optional[Sequence[Optional[Sequence[int]]]] = None,
        tiebreak: str = "degrevlex",
        module: str = "top",
        blocks: Optional[Sequence[Tuple[Sequence[int], str]]] = None,
        comp_after_block: Optional[int] = None,
    ):
        self.nvars = nvars
        self.weights = tuple(tuple(int(x) for x in w) for w in weights)
        for w in self.weights:
            if len(w) != nvars:
                raise ValueError("weight row length differs from variable count")
        if shifts is None:
            shifts = [None] * len(self.weights)
        if len(shifts) != len(self.weights):
            raise ValueError("one shift vector per weight row expected")
        self.shifts = tuple(None if s is None else tuple(int(x) for x in s) for s in shifts)
        if blocks is None:
            blocks = [(tuple(range(nvars)), tiebreak)]
        self.blocks = tuple((tuple(ix), kind) for ix, kind in blocks)
        covered = sorted(i for ix, _ in self.blocks for i in ix)
        if covered != list(range(nvars)):
            raise ValueError("tie-break blocks must cover every variable exactly once")
        for _, kind in self.blocks:
            if kind not in ("degrevlex", "lex"):
                raise ValueError(f"unknown tie-break {kind!r}")
        if module not in ("top", "pot"):
            raise ValueError("module rule must be 'top' or 'pot'")
        self.module = module
        # Component compared right after this tie-break block (block orders
        # for parameters put the parameters after the component).
        self.comp_after_block = comp_after_block
        self._rows = tuple(
            (tuple((i, w) for i, w in enumerate(row) if w), sh) for row, sh in zip(self.weights, self.shifts)
        )
        self._cache: Dict[Mon, tuple] = {}
        self._ncache: Dict[Mon, tuple] = {}

    def __repr__(self):
        return f"MonomialOrder(weights={self.weights}, blocks={self.blocks}, module={self.module!r})"

    def key(self, mon: Mon) -> tuple:
        k = self._cache.get(mon)
        if k is not None:
            return k
        comp = mon[-1]
        parts = []
        for row, sh in self._rows:
            s = 0
            for i, w in row:
                s += w * mon[i]
            if sh is not None:
                s += sh[comp] if comp < len(sh) else 0
            parts.append(s)
        if self.module == "pot":
            parts.append(-comp)
        for b, (ix, kind) in enumerate(self.blocks):
            sub = [mon[i] for i in ix]
            if kind == "degrevlex":
                parts.append(sum(sub))
                parts.extend(-x for x in reversed(sub))
            else:
                parts.extend(sub)
            if b == self.comp_after_block and self.module == "top":
                parts.append(-comp)
        if self.module == "top" and self.comp_after_block is None:
            parts.append(-comp)
        k = tuple(parts)
        self._cache[mon] = k
        return k

    def nkey(self, mon: Mon) -> tuple:
        k = self._ncache.get(mon)
        if k is None:
            k = tuple(-x for x in self.key(mon))
            self._ncache[mon] = k
        return k

    def compare(self, a: Mon, b: Mon) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def is_well_order(self) -> bool:
        """First nonzero weight of every variable down the chain is >= 0."""
        for i in range(self.nvars):
            for row in self.weights:
                if row[i]:
                    if row[i] < 0:
                        return False
                    break
        return True

    def check_weyl(self, ring: Ring) -> None:
        """Require x_i d_i > [d_i, x_i] so leading exponents multiply additively."""
        for ix, idd, comm in ring.pairs:
            a = [0] * (ring.nvars + 1)
            a[ix] += 1
            a[idd] += 1
            b = [0] * (ring.nvars + 1)
            for j, e in comm:
                b[j] += e
            if not self.key(tuple(a)) > self.key(tuple(b)):
                raise ValueError(
                    f"order not adapted to the relation [{ring.names[idd]}, {ring.names[ix]}]: "
                    "weight is not admissible"
                )


def degrevlex(nvars: int, module: str = "top") -> MonomialOrder:
    return MonomialOrder(nvars, module=module)


def lex(nvars: int, module: str = "top") -> MonomialOrder:
    return MonomialOrder(nvars, tiebreak="lex", module=module)


def weight_order(nvars, rows, shifts=None, module="top", tiebreak="degrevlex") -> MonomialOrder:
    return MonomialOrder(nvars, rows, shifts, tiebreak=tiebreak, module=module)


def lead(p: Polynomial, order: MonomialOrder):
    """Leading ``(exponents, component, coefficient)`` of a nonzero element."""
    if not p.terms:
        raise ValueError("zero element has no leading term")
    key = order.key
    m = max(p.terms, key=key)
    return m[:-1], m[-1], p.terms[m]


def lead_monomial(p: Polynomial, order: MonomialOrder) -> Mon:
    return max(p.terms, key=order.key)


def divide(p: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder):
    """Division with remainder: ``p = sum q_i d_i + r``.

    For Weyl-type rings the quotients multiply from the left.  Every term of
    the remainder is irreducible by the leading monomials of ``divisors``.
    """
    ring = p.ring
    for d in divisors:
        if d.ring != ring:
            raise ValueError("ring mismatch")
        if not d.terms:
            raise ValueError("zero divisor")
    leads = [lead_monomial(d, order) for d in divisors]
    lcs = [d.terms[m] for m, d in zip(leads, divisors)]
    dterms = [list(d.terms.items()) for d in divisors]
    quot: List[Dict[Mon, object]] = [{} for _ in divisors]
    rest = dict(p.terms)
    rem: Dict[Mon, object] = {}
    pairs = ring.pairs
    key = order.key
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        i = kernels.find_divisor(m, leads)
        if i < 0:
            rem[m] = c
            del rest[m]
            continue
        q = tuple(x - y for x, y in zip(m[:-1], leads[i][:-1])) + (0,)
        f = c / lcs[i]
        quot[i][q] = quot[i].get(q, 0) + f
        kernels.mul_terms(q, -f, dterms[i], pairs, rest)
        rest.pop(m, None)
    qs = [Polynomial(ring, {m: c for m, c in t.items() if c}, 1) for t in quot]
    return qs, Polynomial(ring, rem, p.rank)


def reduce_full(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``p`` modulo ``basis`` (no quotients; faster)."""
    prepared = [(b.terms[lm], list(b.terms.items())) for b, lm in ((b, lead_monomial(b, order)) for b in basis)]
    leads = [lead_monomial(b, order) for b in basis]
    rem = kernels.normal_form(dict(p.terms), prepared, leads, order.nkey, p.ring.pairs)
    return Polynomial(p.ring, rem, p.rank)


def transfer(p: Polynomial, target: Ring, index_map: Sequence[Optional[int]], values=None, coeff_map=None) -> Polynomial:
    """Move ``p`` into ``target``.

    ``index_map[i]`` is the target index of source variable ``i``; ``None``
    means the variable is substituted by ``values[i]`` (commuting variables
    only).  ``coeff_map`` optionally transforms coefficients.
    """
    values = values or {}
    out: Dict[Mon, object] = {}
    nt = target.nvars
    for m, c in p.terms.items():
        if coeff_map is not None:
            c = coeff_map(c)
        e = [0] * nt
        for i, x in enumerate(m[:-1]):
            if not x:
                continue
            j = index_map[i]
            if j is None:
                c = c * QQ(values[i]) ** x
            else:
                e[j] += x
        if not c:
            continue
        key = tuple(e) + (m[-1],)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Polynomial(target, out, p.rank)


def remap_components(p: Polynomial, mapping: Sequence[Optional[int]], rank: int) -> Polynomial:
    """Send component ``j`` to ``mapping[j]``; ``None`` drops it."""
    out = {}
    for m, c in p.terms.items():
        j = mapping[m[-1]]
        if j is not None:
            out[m[:-1] + (j,)] = c
    return Polynomial(p.ring, out, rank)


def embed_rank(p: Polynomial, rank: int) -> Polynomial:
    return Polynomial(p.ring, dict(p.terms), rank)
