"""Pure-Python hot kernels.  ``_kernels.pyx`` mirrors these signatures.

Monomials are tuples of exponents with the free-module component stored in
the last slot.  A Weyl pair is ``(ix, id, comm)`` where ``comm`` lists the
central commutator monomial sparsely as ``((index, exponent), ...)``.
"""

from heapq import heapify, heappop, heappush
from operator import add


def weyl_mono_mul(a, b, pairs):
    """Normal-ordered product of monomials ``a * b``.

    Returns a list of ``(monomial, integer multiplier)``; the first entry is
    always ``a + b`` with multiplier 1.  Leibniz rule per conjugate pair:
    d^p x^q = sum_k C(p, k) q!/(q-k)! x^(q-k) d^(p-k) comm^k.
    """
    base = tuple(map(add, a, b))
    out = [(base, 1)]
    for ix, idd, comm in pairs:
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
                m[ix] -= 1
                m[idd] -= 1
                for j, e in comm:
                    m[j] += e
                new.append((tuple(m), c * coef))
        out = new
    return out


def find_divisor(mon, leads):
    """Index of the first lead dividing ``mon`` (same component), else -1."""
    comp = mon[-1]
    for i, lead in enumerate(leads):
        if lead[-1] != comp:
            continue
        for x, y in zip(lead, mon):
            if x > y:
                break
        else:
            return i
    return -1


def normal_form(terms, basis, leads, nkey, pairs, full=True):
    """Reduce ``terms`` (dict, consumed) modulo ``basis``.

    ``basis[i]`` is ``(lead_coeff, [(mon, coeff), ...])`` listing every term,
    ``leads[i]`` its leading monomial, ``nkey`` maps a monomial to a key whose
    ascending order is the descending monomial order.  Returns the remainder
    as a dict.  With ``full=False`` only leading terms are reduced.
    """
    heap = [(nkey(m), m) for m in terms]
    heapify(heap)
    rem = {}
    while heap:
        _, m = heappop(heap)
        c = terms.pop(m, None)
        if c is None:
            continue
        i = find_divisor(m, leads) if leads else -1
        if i < 0:
            rem[m] = c
            if not full:
                rem.update(terms)
                return rem
            continue
        lc, gterms = basis[i]
        lead = leads[i]
        q = tuple([x - y for x, y in zip(m, lead)])
        f = c / lc
        for gm, gc in gterms:
            if pairs:
                prods = weyl_mono_mul(q, gm, pairs)
            else:
                prods = ((tuple(map(add, q, gm)), 1),)
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


def mul_terms(q, coeff, gterms, pairs, out):
    """Accumulate ``coeff * x^q * g`` into the dict ``out``."""
    for gm, gc in gterms:
        if pairs:
            prods = weyl_mono_mul(q, gm, pairs)
        else:
            prods = ((tuple(map(add, q, gm)), 1),)
        for pm, pc in prods:
            v = out.get(pm, 0) + coeff * gc * pc
            if v:
                out[pm] = v
            else:
                out.pop(pm, None)
    return out
