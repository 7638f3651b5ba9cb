# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same signatures and results as ``_kernels_py``.

Leading monomials are copied into a C array once per reduction, with a
support bitmask per lead so most divisibility tests fail on one AND.
"""

from heapq import heapify, heappop, heappush
from libc.stdlib cimport free, malloc


cdef inline unsigned long long _support(long *m, Py_ssize_t w):
    cdef unsigned long long s = 0
    cdef Py_ssize_t k
    for k in range(w - 1):
        if m[k] > 0:
            s |= (<unsigned long long>1) << (k & 63)
    return s


cdef inline void _load(tuple mon, long *out, Py_ssize_t w):
    cdef Py_ssize_t k
    for k in range(w):
        out[k] = <long>mon[k]


cpdef list weyl_mono_mul(tuple a, tuple b, pairs):
    """Normal-ordered product of monomials ``a * b`` as ``[(mon, mult), ...]``."""
    cdef Py_ssize_t w = len(a), k, ix, idd, j
    cdef long p, q, kmax, e
    cdef object coef, c
    cdef list out, new, m
    base = tuple([<long>a[k] + <long>b[k] for k in range(w)])
    out = [(base, 1)]
    for pair in pairs:
        ix = pair[0]
        idd = pair[1]
        comm = pair[2]
        p = a[idd]
        q = b[ix]
        kmax = p if p < q else q
        if kmax <= 0:
            continue
        new = []
        for mon, c in out:
            new.append((mon, c))
            coef = 1
            m = list(mon)
            for k in range(1, kmax + 1):
                coef = coef * (p - k + 1) * (q - k + 1) // k
                m[ix] = <long>m[ix] - 1
                m[idd] = <long>m[idd] - 1
                for j, e in comm:
                    m[j] = <long>m[j] + e
                new.append((tuple(m), c * coef))
        out = new
    return out


def find_divisor(tuple mon, list leads):
    """Index of the first lead dividing ``mon`` (same component), else -1."""
    cdef Py_ssize_t i, k, w = len(mon)
    cdef tuple lead
    cdef bint ok
    comp = mon[w - 1]
    for i in range(len(leads)):
        lead = <tuple>leads[i]
        if lead[w - 1] != comp:
            continue
        ok = True
        for k in range(w - 1):
            if <long>lead[k] > <long>mon[k]:
                ok = False
                break
        if ok:
            return i
    return -1


cdef Py_ssize_t _find(long *lead_arr, unsigned long long *masks, Py_ssize_t L, long *mon, unsigned long long smask, Py_ssize_t w):
    cdef Py_ssize_t i, k
    cdef long *ld
    cdef bint ok
    for i in range(L):
        if masks[i] & ~smask:
            continue
        ld = lead_arr + i * w
        if ld[w - 1] != mon[w - 1]:
            continue
        ok = True
        for k in range(w - 1):
            if ld[k] > mon[k]:
                ok = False
                break
        if ok:
            return i
    return -1


def normal_form(dict terms, list basis, list leads, nkey, pairs, bint full=True):
    """Reduce ``terms`` (dict, consumed) modulo ``basis``; see ``_kernels_py``."""
    cdef Py_ssize_t L = len(leads), w = 0, i, k
    cdef long *lead_arr = NULL
    cdef unsigned long long *masks = NULL
    cdef long *mon_arr = NULL
    cdef dict rem = {}
    cdef list heap
    cdef tuple m, lead, q, pm
    cdef object c, lc, f, old, v
    if not terms:
        return rem
    w = len(next(iter(terms)))
    heap = [(nkey(mm), mm) for mm in terms]
    heapify(heap)
    lead_arr = <long *>malloc((L * w + 1) * sizeof(long))
    masks = <unsigned long long *>malloc((L + 1) * sizeof(unsigned long long))
    mon_arr = <long *>malloc((w + 1) * sizeof(long))
    if lead_arr == NULL or masks == NULL or mon_arr == NULL:
        free(lead_arr)
        free(masks)
        free(mon_arr)
        raise MemoryError()
    try:
        for i in range(L):
            _load(<tuple>leads[i], lead_arr + i * w, w)
            masks[i] = _support(lead_arr + i * w, w)
        while heap:
            m = heappop(heap)[1]
            c = terms.pop(m, None)
            if c is None:
                continue
            if L:
                _load(m, mon_arr, w)
                i = _find(lead_arr, masks, L, mon_arr, _support(mon_arr, w), w)
            else:
                i = -1
            if i < 0:
                rem[m] = c
                if not full:
                    rem.update(terms)
                    return rem
                continue
            lc, gterms = basis[i]
            lead = <tuple>leads[i]
            q = tuple([<long>m[k] - <long>lead[k] for k in range(w)])
            f = c / lc
            for gm, gc in gterms:
                if pairs:
                    prods = weyl_mono_mul(q, gm, pairs)
                else:
                    prods = ((tuple([<long>q[k] + <long>(<tuple>gm)[k] for k in range(w)]), 1),)
                for pm, pc in prods:
                    if pm == m:
                        continue
                    old = terms.get(pm)
                    if old is None:
                        terms[pm] = -f * gc * pc
                        heappush(heap, (nkey(pm), pm))
                    else:
                        v = old - f * gc * pc
                        if v:
                            terms[pm] = v
                        else:
                            del terms[pm]
        return rem
    finally:
        free(lead_arr)
        free(masks)
        free(mon_arr)


def mul_terms(tuple q, coeff, gterms, pairs, dict out):
    """Accumulate ``coeff * x^q * g`` into the dict ``out``."""
    cdef Py_ssize_t k, w = len(q)
    for gm, gc in gterms:
        if pairs:
            prods = weyl_mono_mul(q, gm, pairs)
        else:
            prods = ((tuple([<long>q[k] + <long>(<tuple>gm)[k] for k in range(w)]), 1),)
        for pm, pc in prods:
            v = out.get(pm, 0) + coeff * gc * pc
            if v:
                out[pm] = v
            else:
                out.pop(pm, None)
    return out
