import json

import pytest
import sympy

from conftest import EX1, EX2, EX3, EX4, EX5, EX6, MATRICES
from multideg import hypergeom
from multideg.bifiltered import PipelineError
from multideg.groebner import same_module


def sympy_toric(A):
    """I_A by eliminating Laurent parameters from <dt_j - s^a_j>; independent of the library."""
    d, n = len(A), len(A[0])
    s = sympy.symbols(f"s0:{d}")
    u = sympy.symbols(f"u0:{d}")
    dt = sympy.symbols(f"dt1:{n + 1}")
    eqs = [si * ui - 1 for si, ui in zip(s, u)]
    for j in range(n):
        mono = 1
        for i in range(d):
            a = A[i][j]
            mono *= s[i] ** a if a >= 0 else u[i] ** (-a)
        eqs.append(dt[j] - mono)
    G = sympy.groebner(eqs, *s, *u, *dt, order="lex", domain="QQ")
    keep = [g for g in G.exprs if not (g.free_symbols & set(s + u))]
    return sympy.groebner(keep, *dt, order="grevlex", domain="QQ")


def to_expr(p):
    dt = sympy.symbols(f"dt1:{p.ring.nvars + 1}")
    return sum(sympy.Rational(str(c)) * sympy.prod([v**e for v, e in zip(dt, m[:-1])]) for m, c in p.terms.items())


@pytest.mark.parametrize("name", ["ex1", "ex2", "ex3", "ex5", "ex6"])
def test_toric_ideal_against_elimination(name):
    A = MATRICES[name]
    mine = hypergeom.toric_ideal(A)
    ref = sympy_toric(A)
    n = len(A[0])
    dt = sympy.symbols(f"dt1:{n + 1}")
    assert sympy.groebner([to_expr(g) for g in mine], *dt, order="grevlex", domain="QQ").exprs == ref.exprs


def test_toric_generators_quoted_for_small_examples():
    S = hypergeom.derivation_ring(3)
    assert same_module(hypergeom.toric_ideal(EX1), [S.parse("dt1*dt3 - dt2^2")], S, 1)
    S4 = hypergeom.derivation_ring(4)
    quoted = ["dt2*dt4 - dt3^2", "dt1*dt4 - dt2*dt3", "dt1*dt3 - dt2^2"]
    assert same_module(hypergeom.toric_ideal(EX2), [S4.parse(q) for q in quoted], S4, 1)


def test_toric_binomials_are_homogeneous_and_vanish_on_torus():
    for A in MATRICES.values():
        for g in hypergeom.toric_ideal(A):
            degs = {tuple(sum(r[j] * m[j] for j in range(len(r))) for r in A) for m in g.terms}
            assert len(degs) == 1


def test_volume_of_two_row_homogeneous_matrices():
    # for rows (1..1), (a_1..a_n) with gcd 1 the volume is max a - min a
    for A in (EX1, EX2, EX3, EX4):
        assert hypergeom.volume(A) == max(A[1]) - min(A[1])


def test_placing_triangulation_covers_polygon():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]
    simplices = hypergeom.placing_triangulation(pts)
    assert all(len(s) == 3 for s in simplices)
    area = sum(abs(hypergeom._orient([[sympy.Rational(x) for x in pts[j]] for j in s])) for s in simplices)
    assert area == 3


def test_matrix_checks():
    assert hypergeom.is_homogeneous(EX1)
    assert not hypergeom.is_homogeneous(EX5)
    for A in (EX5, EX6):
        ok, w = hypergeom.is_pointed(A)
        assert ok and all(x > 0 for x in w)
        # witness lies in the row span
        assert sympy.Matrix(A + [w]).rank() == len(A)
    assert hypergeom.is_pointed([[1, -1]]) == (False, None)
    with pytest.raises(PipelineError, match="generate"):
        hypergeom.check_lattice([[2, 2, 2], [0, 1, 2]])
    with pytest.raises(PipelineError, match="rank"):
        hypergeom.check_lattice([[1, 1, 1], [2, 2, 2]])


def test_cohen_macaulay_flags():
    got = {k: hypergeom.cohen_macaulay(A) for k, A in MATRICES.items()}
    assert got == {"ex1": True, "ex2": True, "ex3": False, "ex4": False, "ex5": True, "ex6": False}


def test_closed_form():
    assert hypergeom.closed_form_multidegree(EX4).format() == "9*T1^5 + 27*T1^4*T2 + 27*T1^3*T2^2 + 9*T1^2*T2^3"


def test_beta_draws_are_seeded():
    assert hypergeom.draw_beta(2, 3) == hypergeom.draw_beta(2, 3)
    assert hypergeom.draw_beta(2, 3) != hypergeom.draw_beta(2, 4)
    assert all(abs(b) <= hypergeom.BETA_RANGE for b in hypergeom.draw_beta(5, 1))


def test_hypergeometric_ideal_shape():
    gens = hypergeom.hypergeometric_ideal(EX1, (1, 2))
    assert [g.format() for g in gens[-2:]] == ["t1*dt1 + t2*dt2 + t3*dt3 - 1", "t2*dt2 + 2*t3*dt3 - 2"]
    with pytest.raises(ValueError):
        hypergeom.hypergeometric_ideal(EX1, (1,))


def test_analyze_report():
    rep = hypergeom.analyze(EX1, "generic", seed=3, both_routes=True)
    out = rep.to_json()
    assert out["formula_match"] and out["nice"] and out["nice_route_a"]
    assert out["beta_seeds"] == [3, 4]
    json.dumps(out)
    with pytest.raises(ValueError):
        hypergeom.analyze(EX1, "special")


def test_gkz_system_wrapper():
    sysm = hypergeom.GKZSystem(EX1, (0, 0))
    assert sysm.d == 2 and sysm.n == 3
    assert sysm.presentation().report().multidegree.format() == "2*T1^3 + 2*T1^2*T2"
    with pytest.raises(ValueError):
        hypergeom.GKZSystem(EX1, (0,))


def test_example4_routes_agree():
    rep = hypergeom.analyze(EX4, (2, 10), both_routes=True)
    assert rep.nice is True and rep.nice_route_a is True
