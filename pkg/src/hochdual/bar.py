"""Bar constructions, iterated bars and Koszul duals as duals of bars.

``Bar(a) = T(s I)`` on the augmentation ideal, words of ideal indices, with
degree ``sum(|ai| + 1)``.  The differential is the coderivation extending
the shifted product and differential (the interior part of the Hochschild
boundary).  For commutative ``a`` the shuffle product makes it a cdga,
which is what the iterated bar uses.

Truncation is by degree: a bar materialized through degree D contains
every word of degree <= D, so its homology is exact through D - 1.  The
Koszul dual is the degreewise dual, a coconnective algebra whose product
is dual to deconcatenation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import (Complex, DimTable, GradedMap, GradedSpace, TruncationInsufficient, Window,
                   homology_dims)
from .dg import DgAlgebra, NoAugmentation, NotCommutative, NotConnective, validate_dga
from .hochschild import WordEnumerator, _acc, _shuffles
from .signs import exact, koszul, parity

NotAugmented = NoAugmentation


def _check_augmented(a: DgAlgebra):
    if not a.augmented:
        raise NotAugmented(f"{a.name!r} carries no augmentation")


def _min_sd(a: DgAlgebra) -> int:
    sds = [a.degrees[i] + 1 for i in a.ideal]
    if not sds:
        return 1
    if min(sds) < 1:
        raise NotConnective("bar construction needs a connective augmentation ideal")
    return min(sds)


def bar_exact_top(a: DgAlgebra) -> int | None:
    """Largest bar degree materialized exactly, given the algebra's truncation."""
    if a.trunc is None:
        return None
    # a word of degree D uses elements of degree <= D - 1, products of degree <= D - 2
    return a.trunc.hi + 1


class BarOps:
    def __init__(self, a: DgAlgebra):
        self.a = a
        self.unit = a.unit
        self.sd = [d + 1 for d in a.degrees]
        self.par = [d & 1 for d in a.degrees]
        self.mul = {}
        for (x, y), v in a.mult.items():
            self.mul[(x, y)] = [(k, exact(c)) for k, c in v.items() if k != a.unit]
        self.diff = {x: [(k, exact(c)) for k, c in v.items() if k != a.unit] for x, v in a.diff.items()}

    def d(self, w: tuple) -> dict:
        out: dict = {}
        sd, par = self.sd, self.par
        pre = 0
        n = len(w)
        for i in range(n):
            x = w[i]
            s = -1 if pre & 1 else 1
            dv = self.diff.get(x)
            if dv:
                for k, c in dv:
                    _acc(out, w[:i] + (k,) + w[i + 1:], -s * c)
            if i + 1 < n:
                v = self.mul.get((x, w[i + 1]))
                if v:
                    s2 = -s if par[x] else s
                    head, tail = w[:i], w[i + 2:]
                    for k, c in v:
                        _acc(out, head + (k,) + tail, s2 * c)
            pre += sd[x]
        return out

    def shuffle(self, u: tuple, v: tuple) -> dict:
        out: dict = {}
        sd = self.sd
        for sh, s in _shuffles(u, v, [sd[i] for i in u], [sd[i] for i in v]):
            _acc(out, sh, s)
        return out


def bar_words(a: DgAlgebra, top: int) -> dict[int, list[tuple]]:
    """All bar words of degree <= top, by degree (excludes unit)."""
    _min_sd(a)
    en = WordEnumerator(a)
    out = {}
    for d in range(0, top + 1):
        ws = en.tails(d)
        out[d] = sorted(ws, key=lambda t: (len(t), t))
    return out


def _wlabel(a: DgAlgebra, w: tuple) -> str:
    return "[" + "|".join(a.labels[i] for i in w) + "]"


@dataclass
class BarComplex:
    algebra: DgAlgebra
    complex: Complex
    weight_bound: int
    top: int                      # words materialized through this degree
    valid_window: Window
    shuffle: DgAlgebra | None = None

    def homology(self, w: Window | None = None) -> DimTable:
        w = w or self.valid_window
        ww = w.intersect(self.valid_window)
        if ww != w:
            raise TruncationInsufficient(f"bar homology certified only on {self.valid_window}",
                                         certified=self.valid_window)
        return homology_dims(self.complex, w)

    def weight(self, key: tuple) -> int:
        return len(key)


def _top_for(a: DgAlgebra, w: Window, weight_bound: int | None) -> tuple[int, int, Window]:
    sig = _min_sd(a)
    top = w.hi + 1
    cap = bar_exact_top(a)
    if cap is not None:
        top = min(top, cap)
    if weight_bound is None:
        weight_bound = max(top // sig, 0)
    else:
        # every word of degree <= D has weight <= D // sig
        top = min(top, (weight_bound + 1) * sig - 1)
    if min(w.hi, top - 1) < w.lo:
        raise TruncationInsufficient(f"bar of {a.name!r} not exact on {w} (top degree {top})")
    return top, weight_bound, Window(w.lo, min(w.hi, top - 1))


def bar(a: DgAlgebra, weight_bound: int | None = None, w: Window = Window(0, 4),
        with_shuffle: bool | None = None) -> BarComplex:
    """Reduced bar complex T(sI), exact on ``w`` (clipped to what the bounds certify)."""
    _check_augmented(a)
    top, wb, valid = _top_for(a, w, weight_bound)
    words = bar_words(a, top)
    words = {d: [x for x in ws if len(x) <= wb] for d, ws in words.items()}
    space = GradedSpace(words, label=lambda x: _wlabel(a, x))
    ops = BarOps(a)
    degs = [d for d in words if d >= 1]
    dmap = GradedMap.from_function(space, space, -1, ops.d, degs)
    cplx = Complex(space, dmap, known_lo=None, known_hi=top)
    shuffle = None
    if with_shuffle is None:
        with_shuffle = a.commutative
    if with_shuffle:
        shuffle = bar_algebra(a, top, words, ops)
    return BarComplex(a, cplx, wb, top, valid, shuffle)


def bar_algebra(a: DgAlgebra, top: int, words: dict | None = None, ops: BarOps | None = None) -> DgAlgebra:
    """Bar(a) with shuffle product as a cdga, truncated above degree ``top``."""
    if not a.commutative:
        raise NotCommutative("shuffle product on the bar needs a commutative algebra")
    ops = ops or BarOps(a)
    words = words or bar_words(a, top)
    flat = [x for d in sorted(words) for x in words[d]]
    index = {x: i for i, x in enumerate(flat)}
    deg = [sum(ops.sd[i] for i in x) for x in flat]
    basis = [(_wlabel(a, x) if x else "1", deg[i]) for i, x in enumerate(flat)]
    unit = index[()]
    mult = {}
    for i, x in enumerate(flat):
        if i == unit:
            continue
        for j, y in enumerate(flat):
            if j == unit or deg[i] + deg[j] > top:
                continue
            v = ops.shuffle(x, y)
            if v:
                mult[(i, j)] = {index[k]: c for k, c in v.items()}
    diff = {}
    for i, x in enumerate(flat):
        v = ops.d(x)
        if v:
            diff[i] = {index[k]: c for k, c in v.items()}
    return DgAlgebra(basis, mult, unit, diff, aug=True, commutative=True,
                     name=f"Bar({a.name})", trunc=Window(0, top))


def bar_iterated(a: DgAlgebra, n: int, weight_bounds=None, w: Window = Window(0, 4)) -> BarComplex:
    """Bar^n for n in {1, 2}, iterating through the shuffle cdga."""
    if n == 1:
        return bar(a, None if weight_bounds is None else _wb(weight_bounds, 0), w)
    if n != 2:
        raise ValueError("iterated bar implemented for n = 1, 2")
    if not a.commutative:
        raise NotCommutative("iterated bar needs a commutative input")
    _check_augmented(a)
    inner_top = w.hi     # Bar(Bar a) exact through w.hi + 1 needs inner exact through w.hi
    inner = bar_algebra(a, inner_top)
    return bar(inner, None if weight_bounds is None else _wb(weight_bounds, 1), w, with_shuffle=False)


def _wb(bounds, i):
    if isinstance(bounds, int):
        return bounds
    return bounds[i]


# ---------------------------------------------------------------------------
# Koszul duals


@dataclass
class KoszulDual:
    n: int
    algebra: DgAlgebra | None
    complex: Complex
    valid_window: Window

    def homology(self, w: Window | None = None) -> DimTable:
        w = w or self.valid_window
        if w.intersect(self.valid_window) != w:
            raise TruncationInsufficient(f"Koszul dual certified only on {self.valid_window}",
                                         certified=self.valid_window)
        return homology_dims(self.complex, w)


def dual_algebra_of_bar(a: DgAlgebra, top: int, words: dict | None = None) -> DgAlgebra:
    """Degreewise dual of Bar(a) through degree ``top``: [u]*[v] = (-1)^{|u||v|}[uv]*.

    The dual differential is (d phi)(x) = -(-1)^{|phi|} phi(dx).  Truncated
    below degree -top, an honest quotient.
    """
    _check_augmented(a)
    ops = BarOps(a)
    words = words or bar_words(a, top)
    flat = [x for d in sorted(words) for x in words[d]]
    index = {x: i for i, x in enumerate(flat)}
    deg = [-sum(ops.sd[i] for i in x) for x in flat]
    basis = [(_wlabel(a, x) + "*" if x else "1", deg[i]) for i, x in enumerate(flat)]
    unit = index[()]
    mult = {}
    for i, x in enumerate(flat):
        if i == unit:
            continue
        for j, y in enumerate(flat):
            if j == unit or deg[i] + deg[j] < -top:
                continue
            mult[(i, j)] = {index[x + y]: koszul(deg[i], deg[j])}
    diff: dict = {}
    for j, y in enumerate(flat):
        # d[x]* picks up every y whose boundary contains x
        for x, c in ops.d(y).items():
            i = index[x]
            s = -parity(deg[i])
            diff.setdefault(i, {})
            diff[i][j] = diff[i].get(j, 0) + s * c
    diff = {i: {j: c for j, c in v.items() if c} for i, v in diff.items()}
    return DgAlgebra(basis, mult, unit, diff, aug=True, commutative=False,
                     name=f"D1({a.name})", trunc=Window(-top, 0))


def koszul_dual_n(a: DgAlgebra, n: int, w: Window, materialize: bool = True) -> KoszulDual:
    """D_n(a) as the dual of Bar^n(a) on the nonpositive window ``w``.

    For n = 1 the algebra is D1(a); for n = 2 it is D1(Bar a), whose
    underlying complex is the dual of Bar^2(a).
    """
    if w.hi > 0:
        w = Window(min(w.lo, 0), 0)
    _check_augmented(a)
    if n == 1:
        base = a
    elif n == 2:
        if not a.commutative:
            raise NotCommutative("D2 needs a commutative input")
        base = bar_algebra(a, -w.lo + 1)
    else:
        raise ValueError("Koszul duals implemented for n = 1, 2")
    top = -w.lo + 1
    cap = bar_exact_top(base)
    if cap is not None and cap < top:
        top = cap
    valid = Window(max(w.lo, -top + 1), w.hi)
    if valid.lo > valid.hi:
        raise TruncationInsufficient("Koszul dual window not certified", certified=None)
    words = bar_words(base, top)
    alg = dual_algebra_of_bar(base, top, words)
    cplx = alg.complex()
    cplx.known_lo = -top
    cplx.known_hi = None
    return KoszulDual(n, alg, cplx, valid)


def free_tensor_algebra(v: Complex, w: Window) -> DgAlgebra:
    """T(v) with concatenation, truncated below ``w.lo - 1`` (v in degrees <= -1)."""
    if not v.complete:
        raise TruncationInsufficient("free_tensor_algebra needs a finite generating complex")
    gens = [(n, k) for n in v.space.degrees() for k in v.space.basis(n)]
    if any(n > -1 for n, _ in gens):
        raise TruncationInsufficient("generators must sit in degrees <= -1 to certify a window")
    bottom = w.lo - 1
    gdeg = [n for n, _ in gens]
    words: list[tuple] = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for x in frontier:
            dx = sum(gdeg[i] for i in x)
            for g in range(len(gens)):
                if dx + gdeg[g] >= bottom:
                    nxt.append(x + (g,))
        words.extend(nxt)
        frontier = nxt
    words.sort(key=lambda x: (-sum(gdeg[i] for i in x), len(x), x))
    index = {x: i for i, x in enumerate(words)}
    deg = [sum(gdeg[i] for i in x) for x in words]
    glab = [str(k) for _, k in gens]
    basis = [("".join(f"{glab[i]}." for i in x)[:-1] if x else "1", deg[j]) for j, x in enumerate(words)]
    if len({b[0] for b in basis}) != len(basis):
        basis = [(("(" + ",".join(glab[i] for i in x) + ")") if x else "1", deg[j]) for j, x in enumerate(words)]
    unit = index[()]
    mult = {}
    for i, x in enumerate(words):
        for j, y in enumerate(words):
            if i == unit or j == unit:
                continue
            z = x + y
            if z in index:
                mult[(i, j)] = {index[z]: 1}
    gpos = {key: i for i, key in enumerate(gens)}
    dg = {}
    for i, (n, k) in enumerate(gens):
        img = v.d.apply(n, {k: 1})
        if img:
            dg[i] = {gpos[(n - 1, t)]: c for t, c in img.items()}
    diff = {}
    for j, x in enumerate(words):
        out: dict = {}
        pre = 0
        for p, g in enumerate(x):
            for h, c in dg.get(g, {}).items():
                y = x[:p] + (h,) + x[p + 1:]
                if y in index:
                    _acc(out, index[y], parity(pre) * c)
            pre += gdeg[g]
        if out:
            diff[j] = out
    return DgAlgebra(basis, mult, unit, diff, aug=True, name="T(v)", trunc=Window(bottom, 0))
