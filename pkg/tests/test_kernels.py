import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multideg import _kernels_py, kernels
from multideg.coeff import rational
from multideg.poly import degrevlex

compiled = pytest.importorskip("multideg._kernels", reason="compiled kernels not built")

W = 4  # x, t, dx, dt + component
PAIRS = ((0, 2, ()), (1, 3, ()))
PAIRS_H = ((0, 2, ((4, 1),)), (1, 3, ((4, 1),)))
mono = st.tuples(*[st.integers(0, 3)] * W).map(lambda e: e + (0,))
mono5 = st.tuples(*[st.integers(0, 3)] * 5).map(lambda e: e + (0,))


def canon(pairs_list):
    out = {}
    for m, c in pairs_list:
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


@settings(max_examples=300, deadline=None)
@given(mono, mono)
def test_mono_mul_agrees(a, b):
    assert canon(compiled.weyl_mono_mul(a, b, PAIRS)) == canon(_kernels_py.weyl_mono_mul(a, b, PAIRS))


@settings(max_examples=300, deadline=None)
@given(mono5, mono5)
def test_mono_mul_agrees_with_commutator_terms(a, b):
    assert canon(compiled.weyl_mono_mul(a, b, PAIRS_H)) == canon(_kernels_py.weyl_mono_mul(a, b, PAIRS_H))


poly = st.dictionaries(mono, st.integers(-4, 4).filter(bool), min_size=1, max_size=5)


@settings(max_examples=150, deadline=None)
@given(poly, st.lists(poly, min_size=1, max_size=3))
def test_normal_form_agrees(p, divisors):
    order = degrevlex(W)
    basis, leads = [], []
    for d in divisors:
        lm = max(d, key=order.key)
        leads.append(lm)
        basis.append((rational(d[lm]), [(m, rational(c)) for m, c in d.items()]))
    terms = {m: rational(c) for m, c in p.items()}
    a = compiled.normal_form(dict(terms), basis, leads, order.nkey, PAIRS)
    b = _kernels_py.normal_form(dict(terms), basis, leads, order.nkey, PAIRS)
    assert a == b
    for m in a:
        assert compiled.find_divisor(m, leads) == -1 == _kernels_py.find_divisor(m, leads)


@settings(max_examples=150, deadline=None)
@given(mono, poly)
def test_mul_terms_agrees(q, g):
    gt = [(m, rational(c)) for m, c in g.items()]
    assert compiled.mul_terms(q, rational(3), gt, PAIRS, {}) == _kernels_py.mul_terms(q, rational(3), gt, PAIRS, {})


def test_backend_selection():
    assert kernels.BACKEND == "cython"
    env = dict(os.environ, MULTIDEG_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from multideg import kernels; print(kernels.BACKEND)"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == "python"


def test_pure_python_pipeline_matches():
    code = (
        "from multideg import hypergeom; "
        "print(hypergeom.analyze([[1,1,1,1],[0,1,3,4]], (1, 2)).multidegree.format())"
    )
    env = dict(os.environ, MULTIDEG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "5*T1^4 + 12*T1^3*T2 + 10*T1^2*T2^2 + 4*T1*T2^3 + T2^4"
