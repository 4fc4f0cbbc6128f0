"""Pure-Python fraction-free rank kernel.

Vectors are integer dicts ``{coordinate: value}``.  Reduction keeps a
semi-echelon table keyed by leading coordinate; every reduced vector is
divided by the gcd of its entries so coefficients stay small.
"""
from math import gcd


def _content_normalize(v):
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    first = v[min(v)]
    if first < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


def rank_int(vectors):
    """Exact rank of a list of sparse integer vectors."""
    pivots = {}
    rank = 0
    for vec in sorted((v for v in vectors if v), key=len):
        v = dict(vec)
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _content_normalize(v)
                rank += 1
                break
            a = p[lead]
            c = v[lead]
            g = gcd(a, c)
            a //= g
            c //= g
            out = {}
            for k, x in v.items():
                out[k] = a * x
            for k, y in p.items():
                z = out.get(k, 0) - c * y
                if z:
                    out[k] = z
                else:
                    out.pop(k, None)
            if out:
                out = _content_normalize(out)
            v = out
    return rank
