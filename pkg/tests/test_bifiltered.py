import json

import pytest

from conftest import EX1, HAND_BUILT, build
from multideg import hypergeom
from multideg.bifiltered import BifilteredPresentation, NotNiceError, PipelineError, parse_presentation
from multideg.grading import ShiftPair
from multideg.kpoly import parse_laurent
from multideg.parsing import ParseError
from multideg.weyl import WeylRing


def K(text):
    return parse_laurent(text, 2)


def test_d_mod_dt():
    # gr^F R_V = k[t, tau, theta]/(tau), tau in bidegree (1, 1): K = 1 - T1 T2
    M = build("dt")
    rep = M.report(with_bigr=True)
    assert rep.k_fv == K("1 - T1*T2")
    assert rep.codim == 1
    assert rep.multidegree == K("T1 + T2")
    assert rep.nice and rep.codim_bigr == 1 and not rep.vanishes
    assert [g.format() for g in M.gr_L(1, 1).elements] == ["tau1"]
    assert M.k_bigr() == M.k_fv()


def test_f_only_invariants():
    M = parse_presentation("n 1\ngen dx1")
    assert M.k_f() == parse_laurent("1 - T1", 1)
    assert M.multidegree_f() == parse_laurent("T1", 1)
    assert M.generic_rank() == 1
    assert M.standard_monomial_count() == 1


def test_generic_rank_of_hypergeometric_equals_volume():
    M = hypergeom.build_presentation(EX1, (1, 2))
    assert M.generic_rank() == 2
    assert M.standard_monomial_count() == 2


def test_not_holonomic():
    M = parse_presentation("n 2\ngen dx1")
    with pytest.raises(PipelineError, match="holonomic"):
        M.generic_rank()


def test_irregular_slopes():
    # L = pF + qV gives t^2 dt weight p - q against 0 for the constant term,
    # so the initial ideal is <t^2 tau + 1>, <1> or <t^2 tau> by sign of p - q
    M = build("irregular")
    scan = M.slope_scan([(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)])
    assert scan.groups == [[(1, 1)], [(1, 2), (1, 3)], [(2, 1), (3, 1)]]
    assert scan.ideals == [["t1^2*tau1 + 1"], ["1"], ["t1^2*tau1"]]
    assert not scan.no_slopes_seen
    assert M.nice_route_b() is False
    with pytest.raises(NotNiceError):
        M.bigr_presentation()


def test_regular_operator_has_no_slopes():
    scan = build("regular").slope_scan([(1, 1), (1, 2), (2, 1)])
    assert scan.no_slopes_seen
    assert scan.to_json()["initial_ideals"] == [["t1*tau1^2"]]


def test_gr_l_argument_checks():
    M = build("dt")
    with pytest.raises(ValueError):
        M.gr_L(2, 4)
    with pytest.raises(ValueError):
        M.gr_L(0, 1)


def test_rank_two_module_with_shifts():
    M = build("rank2")
    assert M.shifts == ShiftPair((0, 1), (0, -1))
    rep = M.report()
    assert rep.k_fv == K("T1^3 - T1^2*T2^-1 - 2*T1 + T1*T2^-1 + 1")
    assert rep.multidegree == K("2*T1^2 + T1*T2")
    # shifting both components together multiplies K by the monomial
    text = HAND_BUILT["rank2"].replace("shifts_n 0 1", "shifts_n 1 2")
    assert parse_presentation(text).k_fv() == rep.k_fv * K("T1")


def test_hypergeometric_nice_and_bigr():
    M = hypergeom.build_presentation(EX1, (0, 0))
    rep = M.report(with_bigr=True)
    assert rep.nice and rep.codim_bigr == rep.codim == 3
    assert M.k_bigr() == M.k_fv()
    assert M.is_nicely_bifiltered("A") and M.is_nicely_bifiltered("B")
    with pytest.raises(ValueError):
        M.is_nicely_bifiltered("C")


def test_report_json_is_serializable():
    out = build("x_and_t").report().to_json()
    text = json.dumps(out, sort_keys=True)
    assert json.loads(text)["multidegree"] == "T1^2"


def test_invalid_presentations():
    D = WeylRing(0, 1)
    with pytest.raises(ValueError):
        BifilteredPresentation(D.with_flavor("h"), [])
    with pytest.raises(ValueError):
        BifilteredPresentation(D, [D.parse("dt1")], rank=2)
    with pytest.raises(ValueError):
        parse_presentation("p 1\nfoo 3")
    with pytest.raises(ParseError) as e:
        parse_presentation("p 1\n\ngen dt1 + * 2")
    assert e.value.line == 3


def test_stats_recorded():
    M = build("ex2(1,2)")
    M.report()
    assert M.stats["grF_RV"]["size"] == 14
    assert all("seconds" in v for v in M.stats.values())
