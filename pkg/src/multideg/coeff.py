"""Exact coefficient fields: rationals and rational functions in parameters.

Every field element used by the engines supports ``+ - * /``, unary minus,
``== 0`` and truthiness.  Rationals are ``gmpy2.mpq`` when gmpy2 is installed
and ``fractions.Fraction`` otherwise.  ``RationalFunction`` implements
``Frac(Q[l1..lp])`` with a canonical representation, so equality is a plain
comparison of stored numerator and denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

try:
    from gmpy2 import mpq as QQ

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction
    HAVE_GMPY2 = False

RATIONAL_TYPES = (int, Fraction, type(QQ(0)))


class PoleError(ArithmeticError):
    """A rational function was evaluated where its denominator vanishes."""


def rational(value) -> "QQ":
    """Coerce an int, Fraction, mpq or a string like ``"-3/4"`` to a rational."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return QQ(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


def is_rational(value) -> bool:
    return isinstance(value, RATIONAL_TYPES)


def format_rational(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# Sparse polynomials over Q in the parameters.  A polynomial is a dict
# {exponent tuple: nonzero rational}.  These helpers back RationalFunction.

LPoly = Dict[Tuple[int, ...], object]


def _padd(a: LPoly, b: LPoly, sign: int = 1) -> LPoly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign > 0 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: LPoly, b: LPoly) -> LPoly:
    out: LPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pscale(a: LPoly, c) -> LPoly:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _plead(a: LPoly):
    m = max(a)
    return m, a[m]


def _pdivexact(a: LPoly, b: LPoly) -> LPoly:
    """Quotient a/b, assuming b divides a (lex division)."""
    q: LPoly = {}
    r = dict(a)
    mb, cb = _plead(b)
    while r:
        mr, cr = _plead(r)
        d = tuple(x - y for x, y in zip(mr, mb))
        if min(d, default=0) < 0:
            raise ArithmeticError("inexact polynomial division")
        t = {d: cr / cb}
        q = _padd(q, t)
        r = _padd(r, _pmul(t, b), -1)
    return q


def _to_univariate(a: LPoly) -> Dict[int, LPoly]:
    out: Dict[int, LPoly] = {}
    for m, c in a.items():
        out.setdefault(m[0], {})[m[1:]] = c
    return out


def _from_univariate(u: Dict[int, LPoly]) -> LPoly:
    out: LPoly = {}
    for e, coef in u.items():
        for m, c in coef.items():
            out[(e,) + m] = c
    return out


def _monic(a: LPoly) -> LPoly:
    if not a:
        return a
    _, c = _plead(a)
    return _pscale(a, 1 / QQ(c))


def _ucontent(u: Dict[int, LPoly], nv: int) -> LPoly:
    if nv == 0:
        # over Q any nonzero constant is a unit; dividing by the leading one
        # keeps the remainder sequence monic instead of letting it blow up
        return {(): u[max(u)][()]}
    g: LPoly = {}
    for coef in u.values():
        g = _pgcd(g, coef, nv)
        if nv == 0 or (len(g) == 1 and not any(next(iter(g)))):
            break
    return g


def _uprem(a: Dict[int, LPoly], b: Dict[int, LPoly]) -> Dict[int, LPoly]:
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        new: Dict[int, LPoly] = {}
        for e, c in r.items():
            new[e] = _pmul(c, lb)
        for e, c in b.items():
            t = _padd(new.get(e + shift, {}), _pmul(c, lr), -1)
            new[e + shift] = t
        r = {e: c for e, c in new.items() if c}
    return r


def _uprimitive(u: Dict[int, LPoly], nv: int) -> Dict[int, LPoly]:
    c = _ucontent(u, nv)
    return {e: _pdivexact(v, c) for e, v in u.items()}


def _pgcd(a: LPoly, b: LPoly, nv: int) -> LPoly:
    """Monic (lex) gcd of two polynomials in ``nv`` variables over Q."""
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    if nv == 0:
        return {(): QQ(1)}
    ua, ub = _to_univariate(a), _to_univariate(b)
    ca, cb = _ucontent(ua, nv - 1), _ucontent(ub, nv - 1)
    content = _pgcd(ca, cb, nv - 1)
    pa = {e: _pdivexact(v, ca) for e, v in ua.items()}
    pb = {e: _pdivexact(v, cb) for e, v in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _uprem(pa, pb)
        pa, pb = pb, (_uprimitive(r, nv - 1) if r else {})
    g = _from_univariate(pa) if max(pa) > 0 else {(0,) * nv: QQ(1)}
    lift = {(0,) + m: c for m, c in content.items()}
    return _monic(_pmul(g, lift))


def poly_gcd(a: LPoly, b: LPoly, nvars: int) -> LPoly:
    return _pgcd(a, b, nvars)


def _peval(a: LPoly, point: Sequence) -> "QQ":
    total = QQ(0)
    for m, c in a.items():
        t = QQ(c)
        for x, e in zip(point, m):
            if e:
                t *= QQ(x) ** e
        total += t
    return total


def _pformat(a: LPoly, names: Sequence[str]) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=lambda m: (sum(m), m), reverse=True):
        c = a[m]
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
        )
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RationalFunction:
    """Element of Q(l1..lp) in canonical form num/den.

    gcd(num, den) = 1 and den is monic in lex order on parameter monomials.
    """

    __slots__ = ("nvars", "num", "den", "_hash")

    def __init__(self, nvars: int, num: LPoly | None = None, den: LPoly | None = None):
        self.nvars = nvars
        num = {m: QQ(c) for m, c in (num or {}).items() if c}
        one = {(0,) * nvars: QQ(1)}
        den = {m: QQ(c) for m, c in (den or one).items() if c}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = one
        else:
            g = _pgcd(num, den, nvars)
            if len(g) > 1 or any(next(iter(g))):
                num = _pdivexact(num, g)
                den = _pdivexact(den, g)
            _, lc = _plead(den)
            if lc != 1:
                num = _pscale(num, 1 / lc)
                den = _pscale(den, 1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> "RationalFunction":
        return cls(nvars, {(0,) * nvars: rational(c)} if c else {})

    @classmethod
    def parameter(cls, nvars: int, i: int) -> "RationalFunction":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): QQ(1)})

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "RationalFunction":
        from .parsing import parse_expression

        nv = len(names)
        index = {n: i for i, n in enumerate(names)}

        def var(name, line, col):
            if name not in index:
                from .parsing import ParseError

                raise ParseError(f"unknown parameter {name!r}", line, col)
            return cls.parameter(nv, index[name])

        return parse_expression(text, var, lambda c: cls.constant(nv, c), div=lambda a, b: a / b)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("parameter count mismatch")
            return other
        if is_rational(other):
            return RationalFunction.constant(self.nvars, other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.nvars, _padd(self.num, o.num), self.den)
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RationalFunction(self.nvars, num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.nvars, _pscale(self.num, -1), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.nvars, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.nvars, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return set(self.num) <= {zero} and set(self.den) == {zero}

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.nvars == other.nvars and self.num == other.num and self.den == other.den
        if is_rational(other):
            return self == RationalFunction.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # evaluation and printing -------------------------------------------
    def evaluate(self, point: Sequence) -> "QQ":
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        d = _peval(self.den, point)
        if not d:
            raise PoleError(f"denominator vanishes at {tuple(point)}")
        return _peval(self.num, point) / d

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"l{i + 1}" for i in range(self.nvars)]
        num = _pformat(self.num, names)
        if self.den == {(0,) * self.nvars: 1}:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = _pformat(self.den, names)
        if len(self.den) > 1 or "*" in den or "^" in den:
            den = f"({den})"
        return f"{num}/{den}"

    __str__ = format

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def evaluate(f, point: Sequence):
    """Evaluate a field element at a parameter point (rationals pass through)."""
    if isinstance(f, RationalFunction):
        return f.evaluate(point)
    return f


def field_one_like(c):
    if isinstance(c, RationalFunction):
        return RationalFunction.constant(c.nvars, 1)
    return QQ(1)


def convert_all(values: Iterable) -> list:
    return [rational(v) for v in values]
