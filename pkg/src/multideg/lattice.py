"""Exact integer and rational linear algebra at desk scale.

Smith normal form, integer kernels, rank, determinants and a
Fourier-Motzkin feasibility solver for systems ``y . a_i >= 1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def solve_in_rowspan(rows: Sequence[Sequence], target: Sequence) -> Optional[List[Fraction]]:
    """Rational ``y`` with ``y . rows = target``, or None."""
    d = len(rows)
    n = len(target)
    # augmented system: columns are unknowns y_k, equations indexed by j
    m = [[Fraction(rows[k][j]) for k in range(d)] + [Fraction(target[j])] for j in range(n)]
    r = 0
    pivcols = []
    for c in range(d):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    for i in range(r, n):
        if m[i][d] != 0:
            return None
    y = [Fraction(0)] * d
    for i, c in enumerate(pivcols):
        y[c] = m[i][d]
    return y


def smith_invariants(rows: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors (nonzero diagonal of the Smith normal form)."""
    a = [list(map(int, r)) for r in rows]
    if not a:
        return []
    m, n = len(a), len(a[0])
    out = []
    t = 0
    while t < min(m, n):
        # find nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best[0]][best[1]])):
                        best = (i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(a[best[0]][best[1]])):
                        best = (t, j)
                i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility condition on the rest of the block
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad:
                i, _ = bad
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                done = False
        out.append(abs(a[t][t]))
        t += 1
    return out


def integer_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of ``{u in Z^n : A u = 0}`` via column-style Hermite reduction."""
    a = [list(map(int, r)) for r in rows]
    d = len(a)
    n = len(a[0]) if a else 0
    # work on [A^T | I] and row-reduce the A^T part over Z
    m = [[a[k][j] for k in range(d)] + [1 if i == j else 0 for i in range(n)] for j in range(n)]
    r = 0
    for c in range(d):
        while True:
            nz = [i for i in range(r, n) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            again = False
            for i in range(r + 1, n):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        again = True
            if not again:
                r += 1
                break
    return [row[d:] for row in m[r:]]


def fm_feasible(vectors: Sequence[Sequence[int]]) -> Optional[List[Fraction]]:
    """Rational ``y`` with ``y . v >= 1`` for every ``v``, or None.

    Fourier-Motzkin elimination followed by back substitution.
    """
    vecs = [[Fraction(x) for x in v] for v in vectors]
    if not vecs:
        return []
    dim = len(vecs[0])
    if dim == 0:
        return None
    # constraint: coeffs . y >= rhs
    systems = [[(v, Fraction(1)) for v in vecs]]
    for k in range(dim - 1, -1, -1):
        cons = systems[-1]
        pos = [(c, b) for c, b in cons if c[k] > 0]
        neg = [(c, b) for c, b in cons if c[k] < 0]
        zero = [(c, b) for c, b in cons if c[k] == 0]
        new = list(zero)
        for cp, bp in pos:
            for cn, bn in neg:
                fp, fn = -cn[k], cp[k]
                coef = [fp * x + fn * y for x, y in zip(cp, cn)]
                new.append((coef, fp * bp + fn * bn))
        # drop duplicates to limit growth
        seen = set()
        uniq = []
        for c, b in new:
            g = max((abs(x) for x in c), default=Fraction(0))
            keyc = tuple(x / g for x in c) + (b / g,) if g else (b,)
            if keyc not in seen:
                seen.add(keyc)
                uniq.append((c, b))
        systems.append(uniq)
    for c, b in systems[-1]:
        if b > 0:
            return None
    y = [Fraction(0)] * dim
    for k in range(dim):
        cons = systems[dim - 1 - k]
        lo, hi = None, None
        for c, b in cons:
            if c[k] == 0:
                continue
            rest = sum(c[j] * y[j] for j in range(dim) if j != k and j < k)
            bound = (b - rest) / c[k]
            if c[k] > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None and lo > hi:
            return None
        if lo is not None:
            y[k] = lo
        elif hi is not None:
            y[k] = hi
    for v in vecs:
        if sum(a * b for a, b in zip(v, y)) < 1:
            return None
    return y
