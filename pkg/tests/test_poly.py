import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multideg.parsing import ParseError
from multideg.poly import MonomialOrder, Ring, degrevlex, divide, lead_monomial, lex, reduce_full, weight_order

R = Ring(["x", "y", "z"])
exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
mons = st.builds(lambda e, c: e + (c,), exps, st.integers(0, 1))

ORDERS = [
    degrevlex(3),
    lex(3),
    degrevlex(3, module="pot"),
    weight_order(3, [[1, 2, 0]]),
    MonomialOrder(3, blocks=[((2,), "degrevlex"), ((0, 1), "lex")]),
]


def add(a, b):
    return tuple(x + y for x, y in zip(a[:-1], b[:-1])) + (a[-1],)


@settings(max_examples=300, deadline=None)
@given(mons, mons, mons)
def test_orders_are_total_and_multiplicative(a, b, c):
    for o in ORDERS:
        ka, kb = o.key(a), o.key(b)
        assert (ka == kb) == (a == b)
        shift = c[:-1] + (0,)
        if ka > kb:
            assert o.key(add(a, shift)) > o.key(add(b, shift))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(exps, st.integers(-5, 5)), min_size=1, max_size=5),
       st.lists(st.lists(st.tuples(exps, st.integers(-3, 3)), min_size=1, max_size=3), min_size=1, max_size=3))
def test_division_identity(pterms, dlist):
    p = sum((R.monomial(e, c) for e, c in pterms), R.zero())
    divisors = [sum((R.monomial(e, c) for e, c in t), R.zero()) for t in dlist]
    divisors = [d for d in divisors if d]
    if not divisors:
        return
    order = degrevlex(3)
    qs, r = divide(p, divisors, order)
    total = r
    for q, d in zip(qs, divisors):
        total = total + q * d
    assert total == p
    leads = [lead_monomial(d, order) for d in divisors]
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(ld[:-1], m[:-1])) for ld in leads)
    assert reduce_full(p, divisors, order) == r


def test_arithmetic_and_format():
    x, y = R.var("x"), R.var("y")
    p = (x + y) ** 3
    assert p.coefficient((2, 1, 0)) == 3
    assert R.parse(p.format()) == p
    assert p.total_degree() == 3
    assert not (x * y - y * x)


def test_vectors_and_components():
    v = R.parse("[x, y^2]", rank=2)
    assert v.rank == 2
    assert [c.format() for c in v.components()] == ["x", "y^2"]
    with pytest.raises(ValueError):
        v * v


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        R.parse("x + * y")
    assert e.value.col == 5
    with pytest.raises(ParseError):
        R.parse("w + 1")


def test_order_validation():
    with pytest.raises(ValueError):
        MonomialOrder(3, blocks=[((0, 1), "lex")])
    with pytest.raises(ValueError):
        MonomialOrder(3, [[1, 1]])
    assert not weight_order(3, [[-1, 0, 1]]).is_well_order()
