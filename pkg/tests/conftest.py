import os

import pytest

from multideg import hypergeom
from multideg.bifiltered import parse_presentation

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")

EX1 = [[1, 1, 1], [0, 1, 2]]
EX2 = [[1, 1, 1, 1], [0, 1, 2, 3]]
EX3 = [[1, 1, 1, 1], [0, 1, 3, 4]]
EX4 = [[1, 1, 1, 1, 1], [0, 2, 4, 7, 9]]
EX5 = [[0, 1, 3], [4, 3, 2]]
EX6 = [[-2, -1, 0, 1], [1, 1, 2, 2]]
MATRICES = {"ex1": EX1, "ex2": EX2, "ex3": EX3, "ex4": EX4, "ex5": EX5, "ex6": EX6}

# small hand-built presentations (text format of parse_presentation)
HAND_BUILT = {
    "dt": "p 1\ngen dt1",
    "regular": "p 1\ngen t1*dt1^2 + 1",
    "irregular": "p 1\ngen t1^2*dt1 + 1",
    "x_and_t": "n 1\np 1\ngen dx1\ngen t1*dt1 - 2",
    "rank2": open(os.path.join(DATA, "module_r2.txt")).read(),
}

HYPERGEOMETRIC = {
    "ex1(0,0)": (EX1, (0, 0)),
    "ex2(1,2)": (EX2, (1, 2)),
    "ex3(1,2)": (EX3, (1, 2)),
    "ex5(1,1)": (EX5, (1, 1)),
    "ex6(-1,2)": (EX6, (-1, 2)),
}


def build(name, seed=0):
    if name in HAND_BUILT:
        return parse_presentation(HAND_BUILT[name], seed=seed)
    A, beta = HYPERGEOMETRIC[name]
    return hypergeom.build_presentation(A, beta, seed)


ALL_MODULES = list(HYPERGEOMETRIC) + list(HAND_BUILT)


@pytest.fixture(params=ALL_MODULES)
def module_name(request):
    return request.param


# acceptance results, printed once at the end of the run
ACCEPTANCE = {}


def record(number, ok, detail=""):
    ACCEPTANCE[number] = (bool(ok), detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} {detail}")
