"""The thirteen acceptance criteria, one test each, exact comparisons.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import itertools
import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import ALL_MODULES, EX1, EX2, EX3, EX4, EX5, EX6, MATRICES, build, record
from multideg import hypergeom
from multideg.bifiltered import BifilteredPresentation
from multideg.grading import Multigrading
from multideg.groebner import buchberger, free_resolution
from multideg.kpoly import KPolynomial, k_from_initial, k_from_resolution, parse_laurent
from multideg.poly import Ring, degrevlex
from multideg.weyl import F_weight, V_weight, WeylRing, dehomogenize, f_homogenize, symbol, v_homogenize


def md(text):
    return parse_laurent(text, 2)


def check(number, pairs):
    """``pairs`` is a list of (label, got, expected); record and assert."""
    bad = [(label, got, exp) for label, got, exp in pairs if got != exp]
    detail = "; ".join(f"{label}: got {got}, want {exp}" for label, got, exp in bad) or f"{len(pairs)} checks"
    record(number, not bad, detail)
    assert not bad, detail


def multideg_of(A, beta, seed=0):
    return hypergeom.analyze(A, beta, seed=seed)


def test_criterion_01_example1():
    want = md("2*T1^3 + 2*T1^2*T2")
    rows = []
    for beta in [(0, 0), (1, 2), (-3, 5), "generic"]:
        rows.append((f"beta={beta}", multideg_of(EX1, beta).multidegree, want))
    check(1, rows)


def test_criterion_02_example2():
    want = md("3*T1^4 + 6*T1^3*T2 + 3*T1^2*T2^2")
    check(2, [(f"beta={b}", multideg_of(EX2, b).multidegree, want) for b in [(1, 2), "generic"]])


def test_criterion_03_example3():
    generic = md("4*T1^4 + 8*T1^3*T2 + 4*T1^2*T2^2")
    special = md("5*T1^4 + 12*T1^3*T2 + 10*T1^2*T2^2 + 4*T1*T2^3 + T2^4")
    rows = [(f"generic seed={s}", multideg_of(EX3, "generic", seed=s).multidegree, generic) for s in (0, 1)]
    rows.append(("beta=(1,2)", multideg_of(EX3, (1, 2)).multidegree, special))
    check(3, rows)


def test_criterion_04_example4():
    generic = md("9*T1^5 + 27*T1^4*T2 + 27*T1^3*T2^2 + 9*T1^2*T2^3")
    special = md("10*T1^5 + 32*T1^4*T2 + 37*T1^3*T2^2 + 19*T1^2*T2^3 + 5*T1*T2^4 + T2^5")
    rows = [("generic", multideg_of(EX4, "generic").multidegree, generic)]
    for beta in [(2, 10), (2, 12), (3, 19)]:
        rows.append((f"beta={beta}", multideg_of(EX4, beta).multidegree, special))
    check(4, rows)


def test_criterion_05_example5():
    want = md("12*T1^3 + 12*T1^2*T2")
    rows = [("cohen_macaulay", hypergeom.cohen_macaulay(EX5), True)]
    for beta, seed in [((1, 1), 0), ("generic", 0), ("generic", 5)]:
        rep = multideg_of(EX5, beta, seed)
        rows.append((f"beta={beta} seed={seed} nice", rep.nice, True))
        rows.append((f"beta={beta} seed={seed}", rep.multidegree, want))
    check(5, rows)


def test_criterion_06_example6():
    rows = [("cohen_macaulay", hypergeom.cohen_macaulay(EX6), False)]
    for beta, want in [
        ("generic", md("6*T1^4 + 12*T1^3*T2 + 6*T1^2*T2^2")),
        ((-1, 2), md("7*T1^4 + 16*T1^3*T2 + 12*T1^2*T2^2 + 4*T1*T2^3 + T2^4")),
    ]:
        rep = multideg_of(EX6, beta)
        rows.append((f"beta={beta} nice", rep.nice, True))
        rows.append((f"beta={beta}", rep.multidegree, want))
    check(6, rows)


def binomial_formula(vol, n, d):
    terms = {(j, n - j): vol * _comb(n - d, j - d) for j in range(d, n + 1)}
    return KPolynomial(2, terms)


def _comb(a, b):
    out = Fraction(1)
    for i in range(b):
        out = out * (a - i) / (i + 1)
    return int(out)


def test_criterion_07_closed_form():
    rows = []
    for name in ("ex1", "ex2", "ex5"):
        A = MATRICES[name]
        rep = multideg_of(A, "generic")
        n, d = len(A[0]), len(A)
        # formula coded here from the statement, volume from the triangulation
        rows.append((name, rep.multidegree, binomial_formula(hypergeom.volume(A), n, d)))
        rows.append((name + " library closed form", rep.closed_form, rep.multidegree))
    check(7, rows)


# -- invariance ---------------------------------------------------------------

INVARIANCE_FAILURES = []


def _resolution_k(M):
    G = M.grF_RV()
    res = free_resolution(list(G.elements), M.rank, M.bigrading().table, M.bishifts(), ring=G.ring, order=G.order)
    return k_from_resolution(res)


def _perturbed(M, perm, i, j, a_exps, b_exps, ca, cb):
    ring = M.ring
    gens = [M.gens[k] for k in perm]
    a = ring.monomial(a_exps, ca)
    b = ring.monomial(b_exps, cb)
    extra = a * gens[i % len(gens)] + b * gens[j % len(gens)]
    if extra:
        gens = gens + [extra]
    return BifilteredPresentation(ring, gens, M.rank, M.shifts, M.seed)


def test_criterion_08_invariance():
    checked = []
    for name in ALL_MODULES:
        M = build(name)
        K = M.k_fv()
        rows = [(f"{name} resolution route", _resolution_k(M), K)]
        nv = M.ring.nvars

        @settings(max_examples=6, derandomize=True, deadline=None, suppress_health_check=list(HealthCheck))
        @given(
            st.permutations(range(len(M.gens))),
            st.integers(0, 9),
            st.integers(0, 9),
            st.lists(st.integers(0, 1), min_size=nv, max_size=nv),
            st.lists(st.integers(0, 1), min_size=nv, max_size=nv),
            st.integers(-3, 3),
            st.integers(-3, 3),
        )
        def prop(perm, i, j, ae, be, ca, cb):
            Mp = BifilteredPresentation(M.ring, [M.gens[k] for k in perm], M.rank, M.shifts, M.seed)
            rows.append((f"{name} permuted {perm}", Mp.k_fv(), K))
            Mr = _perturbed(M, perm, i, j, ae, be, ca, cb)
            rows.append((f"{name} redundant generator", Mr.k_fv(), K))

        prop()
        checked.extend(rows)
    check(8, checked)


# -- Hilbert series -------------------------------------------------------------


def _random_ideal(rng):
    nv = rng.randint(1, 4)
    extra = rng.randint(0, 1)
    # first coordinate is total degree, so every graded piece is finite
    table = [[1] + [rng.randint(0, 2) for _ in range(extra)] for _ in range(nv)]
    grading = Multigrading(table)
    ring = Ring([f"y{i}" for i in range(nv)])
    monos = [e for d in range(1, 5) for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]
    gens = []
    for _ in range(rng.randint(1, 3)):
        m1 = rng.choice(monos)
        same = [m for m in monos if m != m1 and grading.degree(m) == grading.degree(m1)]
        if same and rng.random() < 0.6:
            m2 = rng.choice(same)
            gens.append(ring.monomial(m1) - ring.monomial(m2).scale(rng.choice([1, 2, -1])))
        else:
            gens.append(ring.monomial(m1))
    return ring, grading, gens


def _rank(rows):
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        if not pivot_row:
            continue
        col = next(iter(pivot_row))
        pv = pivot_row[col]
        rank += 1
        new = []
        for r in rows:
            if col in r:
                f = r[col] / pv
                for k, v in pivot_row.items():
                    r[k] = r.get(k, 0) - f * v
                    if r[k] == 0:
                        del r[k]
            if r:
                new.append(r)
        rows = new
    return rank


def _brute_force_dims(ring, grading, gens, bound):
    """Graded dimensions of S/I by linear algebra on I_delta (no Groebner bases)."""
    nv = ring.nvars
    dims = {}
    for d in range(bound + 1):
        monos = [e for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]
        pieces = {}
        for e in monos:
            pieces.setdefault(grading.degree(e), []).append(e)
        for deg, basis in pieces.items():
            span = []
            for g in gens:
                gm = next(iter(g.terms))
                gdeg = grading.degree(gm[:-1])
                for e in basis:
                    q = tuple(a - b for a, b in zip(e, gm[:-1]))
                    if min(q) < 0 or grading.degree(q) != tuple(a - b for a, b in zip(deg, gdeg)):
                        continue
                    prod = ring.monomial(q) * g
                    span.append({m[:-1]: Fraction(str(c)) for m, c in prod.terms.items()})
            dims[deg] = len(basis) - _rank(span)
    return {k: v for k, v in dims.items() if v}


def _series(K, grading, bound):
    """Coefficients of K / prod(1 - T^a) with first coordinate <= bound."""
    out = {k: v for k, v in K.terms.items() if k[0] <= bound}
    for row in grading.table:
        new = dict(out)
        frontier = dict(out)
        while frontier:
            nxt = {}
            for k, v in frontier.items():
                kk = tuple(a + b for a, b in zip(k, row))
                if kk[0] <= bound:
                    nxt[kk] = nxt.get(kk, 0) + v
            for k, v in nxt.items():
                new[k] = new.get(k, 0) + v
            frontier = nxt
        out = new
    return {k: v for k, v in out.items() if v}


def test_criterion_09_hilbert_series():
    rng = random.Random("hilbert")
    rows = []
    for idx in range(50):
        ring, grading, gens = _random_ideal(rng)
        G = buchberger(gens, degrevlex(ring.nvars), ring=ring, rank=1)
        K = k_from_initial(G, grading)
        rows.append((f"ideal {idx} {[g.format() for g in gens]}", _series(K, grading, 8), _brute_force_dims(ring, grading, gens, 8)))
    check(9, rows)


def test_criterion_10_volume_routes():
    rows = []
    for (name, A), want in zip(MATRICES.items(), [2, 3, 4, 9, 12, 6]):
        rows.append((name + " triangulation", hypergeom.volume(A), want))
        rows.append((name + " degree", hypergeom.volume_by_degree(A), want))
    check(10, rows)


def test_criterion_11_rank():
    rows = []
    for name in ("ex1", "ex2"):
        A = MATRICES[name]
        assert hypergeom.is_homogeneous(A) and hypergeom.cohen_macaulay(A)
        rep = multideg_of(A, "generic")
        n, vol = len(A[0]), hypergeom.volume(A)
        rows.append((name + " C(T1,0)", rep.multidegree.substitute_zero(1), KPolynomial(2, {(n, 0): vol})))
        M = hypergeom.build_presentation(A, rep.beta)
        rows.append((name + " holonomic rank", M.generic_rank(), vol))
    check(11, rows)


def test_criterion_12_route_agreement():
    rows = []
    modules = [(name, build(name)) for name in ALL_MODULES]
    modules += [(f"{k} generic", hypergeom.build_presentation(MATRICES[k], hypergeom.draw_beta(2, 0))) for k in ("ex1", "ex2", "ex5", "ex6")]
    for name, M in modules:
        quotient = M.nice_route_b(method="quotient")
        rows.append((name + " h-divisibility", M.nice_route_a(), quotient))
        rows.append((name + " revlex saturation", M.nice_route_b(), quotient))
    check(12, rows)


# -- Weyl kernel -------------------------------------------------------------------

RING = WeylRing(1, 1)


def _operators():
    nv = RING.nvars
    term = st.tuples(st.lists(st.integers(0, 2), min_size=nv, max_size=nv), st.integers(-3, 3))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((RING.monomial(e, c) for e, c in ts), RING.zero())
    )


KERNEL_ROWS = []
KERNEL_CALLS = [0]


@settings(max_examples=1000, derandomize=True, deadline=None)
@given(_operators(), _operators(), _operators())
def _kernel_property(a, b, c):
    KERNEL_CALLS[0] += 1
    ok = (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c and (a + b) * c == a * c + b * c
    if not ok:
        KERNEL_ROWS.append(("assoc/distrib", (a.format(), b.format(), c.format()), None))
    for P in (a, b):
        if not P:
            continue
        if dehomogenize(f_homogenize(P)) != P or dehomogenize(v_homogenize(P)) != P:
            KERNEL_ROWS.append(("round trip", P.format(), None))
    if a and b:
        for w in (F_weight(RING), V_weight(RING)):
            s = symbol(a * b, w)
            if s != symbol(a, w, target=s.ring) * symbol(b, w, target=s.ring):
                KERNEL_ROWS.append(("symbol", (a.format(), b.format()), None))


def test_criterion_13_weyl_kernel():
    _kernel_property()
    rows = KERNEL_ROWS + [("failing triples", len(KERNEL_ROWS), 0), ("triples tried >= 1000", KERNEL_CALLS[0] >= 1000, True)]
    check(13, rows)
