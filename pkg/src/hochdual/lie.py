"""Free graded Lie algebras, enveloping algebras, CE cochains and friends.

Free Lie algebras use the super-Lyndon basis: standard bracketings of
Lyndon words together with ``[u, u]`` for odd Lyndon ``u``.  Elements are
computed inside the tensor algebra, which gives structure constants by
exact linear solves.  An independent count comes from the graded Witt
formula (``witt_dims``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .core import (Complex, DimTable, GradedMap, GradedSpace, HomAlgError, MixedComplex,
                   TruncationInsufficient, Window, dual_complex, homology_dims)
from .dg import DgAlgebra, DgLieAlgebra, _add_into
from .linalg import Echelon, SpanSolver, SparseMatrix
from .signs import exact, koszul, parity


class CompletionRequired(HomAlgError):
    pass


# ---------------------------------------------------------------------------
# tensor algebra arithmetic (dict word -> coeff)


def _tmul(x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            _add_into(out, {u + v: a * b})
    return out


def _tbracket(x: Mapping, y: Mapping, dx: int, dy: int) -> dict:
    out = _tmul(x, y)
    _add_into(out, _tmul(y, x), -koszul(dx, dy))
    return out


def lyndon_words(k: int, max_len: int):
    """Lyndon words over 0..k-1 of length <= max_len (Duval's algorithm)."""
    if k == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def _standard_split(w: tuple, lyn: set) -> tuple[tuple, tuple]:
    for i in range(1, len(w)):
        if w[i:] in lyn:
            return w[:i], w[i:]
    raise AssertionError("no Lyndon suffix")


def witt_dims(gen_degrees: Sequence[int], bottom: int) -> dict[int, int]:
    """Free Lie dims per degree from T(V) = Sym(L) (super signs), degrees >= bottom < 0."""
    N = -bottom
    cnt = [0] * (N + 1)
    for d in gen_degrees:
        if d >= 0:
            raise ValueError("witt_dims expects generators in negative degrees")
        if -d <= N:
            cnt[-d] += 1
    # T(V) Hilbert series in |degree|
    T = [0] * (N + 1)
    T[0] = 1
    for n in range(1, N + 1):
        T[n] = sum(cnt[j] * T[n - j] for j in range(1, n + 1))
    ell = [0] * (N + 1)
    for n in range(1, N + 1):
        prod = [0] * (N + 1)
        prod[0] = 1
        for d in range(1, n):
            # even degree -> polynomial (1 - t^d)^{-l}, odd -> exterior (1 + t^d)^{l}
            for _ in range(ell[d]):
                if d % 2 == 0:
                    for i in range(d, N + 1):
                        prod[i] += prod[i - d]
                else:
                    for i in range(N, d - 1, -1):
                        prod[i] += prod[i - d]
        ell[n] = T[n] - prod[n]
    return {-n: ell[n] for n in range(1, N + 1) if ell[n]}


@dataclass
class FreeLie:
    generators: list[tuple[str, int]]
    basis_words: list[tuple]          # super-Lyndon words (u or u+u)
    tensors: list[dict]               # image of each basis element in T(v)
    dgla: DgLieAlgebra
    bottom: int

    def dims(self) -> dict[int, int]:
        return self.dgla.dims()


def free_lie(v: Complex, weight_bound: int | None = None, w: Window = Window(-6, -1)) -> FreeLie:
    """Free graded Lie algebra on v, exact in degrees >= w.lo - 1."""
    if not v.complete:
        raise TruncationInsufficient("free_lie needs a finite generating complex")
    gens = [(k, n) for n in sorted(v.space.degrees(), reverse=True) for k in v.space.basis(n)]
    if any(n > -1 for _, n in gens):
        raise TruncationInsufficient("free_lie certifies windows only for generators in degrees <= -1")
    bottom = min(w.lo - 1, -1)
    gdeg = [n for _, n in gens]
    g = len(gens)
    max_len = -bottom
    if weight_bound is not None:
        max_len = min(max_len, weight_bound)
    lyn = [x for x in lyndon_words(g, max_len) if sum(gdeg[i] for i in x) >= bottom]
    lynset = set(lyn)
    deg = lambda x: sum(gdeg[i] for i in x)
    memo: dict[tuple, dict] = {}

    def tensor(x):
        if x in memo:
            return memo[x]
        if len(x) == 1:
            t = {x: Fraction(1)}
        else:
            u, s = _standard_split(x, lynset_all)
            t = _tbracket(tensor(u), tensor(s), deg(u), deg(s))
        memo[x] = t
        return t

    lynset_all = set(lyndon_words(g, max_len))
    words: list[tuple] = []
    tens: list[dict] = []
    for x in sorted(lyn, key=lambda x: (-deg(x), len(x), x)):
        words.append(x)
        tens.append(tensor(x))
    for x in list(words):
        if deg(x) & 1 and 2 * deg(x) >= bottom and (weight_bound is None or 2 * len(x) <= weight_bound):
            words.append(x + x)
            tens.append(_tbracket(tensor(x), tensor(x), deg(x), deg(x)))
    order = sorted(range(len(words)), key=lambda i: (-deg(words[i]), len(words[i]), words[i]))
    words = [words[i] for i in order]
    tens = [tens[i] for i in order]
    degs = [deg(x) for x in words]
    by_deg: dict[int, list[int]] = {}
    for i, d in enumerate(degs):
        by_deg.setdefault(d, []).append(i)
    solvers = {d: SpanSolver([tens[i] for i in idx]) for d, idx in by_deg.items()}

    def coords(d, t):
        if not t:
            return {}
        if d not in solvers:
            return None
        c = solvers[d].coords(t)
        idx = by_deg[d]
        return {idx[k]: x for k, x in c.items()}

    bracket = {}
    for i, j in itertools.product(range(len(words)), repeat=2):
        d = degs[i] + degs[j]
        if d < bottom:
            continue
        t = _tbracket(tens[i], tens[j], degs[i], degs[j])
        c = coords(d, t)
        if c:
            bracket[(i, j)] = c
    # differential: derivation extension of d_v
    gpos = {(k, n): i for i, (k, n) in enumerate(gens)}
    dgen = {}
    for i, (k, n) in enumerate(gens):
        img = v.d.apply(n, {k: 1})
        if img:
            dgen[i] = {(gpos[(t, n - 1)],): c for t, c in img.items()}
    diff = {}
    if dgen:
        for i, t in enumerate(tens):
            out: dict = {}
            for word, c in t.items():
                pre = 0
                for p, x in enumerate(word):
                    for (y,), e in dgen.get(x, {}).items():
                        nw = word[:p] + (y,) + word[p + 1:]
                        _add_into(out, {nw: parity(pre) * c * e})
                    pre += gdeg[x]
            if out:
                d = degs[i] - 1
                diff[i] = coords(d, out) if d >= bottom else {}
    glab = [str(k) for k, _ in gens]

    def label(x):
        if len(x) == 1:
            return glab[x[0]]
        if len(x) % 2 == 0 and x[:len(x) // 2] == x[len(x) // 2:] and x[:len(x) // 2] in lynset_all \
                and x not in lynset_all:
            h = label(x[:len(x) // 2])
            return f"[{h},{h}]"
        u, s = _standard_split(x, lynset_all)
        return f"[{label(u)},{label(s)}]"

    basis = [(label(x), d) for x, d in zip(words, degs)]
    dgla = DgLieAlgebra(basis, bracket, diff, name="FreeLie", trunc=Window(bottom, -1))
    return FreeLie([(glab[i], gdeg[i]) for i in range(g)], words, tens, dgla, bottom)


def generators_complex(degrees: Mapping[int, int] | Sequence[int], prefix: str = "x") -> Complex:
    """A zero-differential complex with the given generator degrees."""
    if isinstance(degrees, Mapping):
        comps = {n: [f"{prefix}{-n}_{i}" if c > 1 else f"{prefix}{-n}" for i in range(c)]
                 for n, c in degrees.items()}
    else:
        comps: dict = {}
        for n in degrees:
            comps.setdefault(n, []).append(None)
        comps = {n: [f"{prefix}{-n}_{i}" if len(v) > 1 else f"{prefix}{-n}" for i in range(len(v))]
                 for n, v in comps.items()}
    return Complex(GradedSpace(comps))


# ---------------------------------------------------------------------------
# universal enveloping algebra


def _lie_bottom(l: DgLieAlgebra, w: Window) -> int:
    if any(d > -1 for d in l.degrees):
        raise TruncationInsufficient("enveloping algebra windows need the Lie algebra in degrees <= -1")
    bottom = w.lo - 1
    if l.trunc is not None and l.trunc.lo > bottom:
        raise TruncationInsufficient(f"Lie algebra known only down to degree {l.trunc.lo}",
                                     certified=Window(l.trunc.lo + 1, 0))
    return bottom


def pbw_monomials(degrees: Sequence[int], bottom: int) -> list[tuple]:
    """Non-decreasing index tuples, odd indices not repeated, degree >= bottom (all degrees < 0)."""
    out = [()]
    n = len(degrees)

    def grow(prefix, start, dsum):
        for i in range(start, n):
            d = dsum + degrees[i]
            if d < bottom:
                continue
            m = prefix + (i,)
            out.append(m)
            grow(m, i + 1 if degrees[i] & 1 else i, d)

    grow((), 0, 0)
    return out


class _Straightener:
    def __init__(self, l: DgLieAlgebra, bottom: int):
        self.l = l
        self.deg = l.degrees
        self.bottom = bottom
        self.memo: dict[tuple, dict] = {}

    def normal(self, w: tuple) -> dict:
        """PBW normal form of the product of basis elements w[0] w[1] ... ."""
        if w in self.memo:
            return self.memo[w]
        deg = self.deg
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x > y or (x == y and deg[x] & 1):
                break
        else:
            self.memo[w] = {w: Fraction(1)}
            return self.memo[w]
        out: dict = {}
        head, tail = w[:i], w[i + 2:]
        if x > y:
            # x y = (-1)^{|x||y|} y x + [x, y]
            _add_into(out, self.normal(head + (y, x) + tail), koszul(deg[x], deg[y]))
            for z, c in self.l.br(x, y).items():
                _add_into(out, self.normal(head + (z,) + tail), c)
        else:
            # odd x: x x = 1/2 [x, x]
            for z, c in self.l.br(x, x).items():
                _add_into(out, self.normal(head + (z,) + tail), c / 2)
        self.memo[w] = out
        return out


def universal_enveloping(l: DgLieAlgebra, w: Window) -> DgAlgebra:
    """U(l) with PBW basis, truncated below w.lo - 1 (an honest quotient)."""
    bottom = _lie_bottom(l, w)
    mons = pbw_monomials(l.degrees, bottom)
    mons.sort(key=lambda m: (-sum(l.degrees[i] for i in m), len(m), m))
    index = {m: i for i, m in enumerate(mons)}
    deg = [sum(l.degrees[i] for i in m) for m in mons]
    st = _Straightener(l, bottom)
    L = l.labels

    def lab(m):
        return "1" if not m else "*".join(L[i] for i in m)

    basis = [(lab(m), d) for m, d in zip(mons, deg)]
    unit = index[()]
    mult = {}
    for i, x in enumerate(mons):
        if i == unit:
            continue
        for j, y in enumerate(mons):
            if j == unit or deg[i] + deg[j] < bottom:
                continue
            v = st.normal(x + y)
            if v:
                mult[(i, j)] = {index[k]: c for k, c in v.items()}
    diff = {}
    if l.diff:
        for j, m in enumerate(mons):
            out: dict = {}
            pre = 0
            for p, x in enumerate(m):
                for y, c in l.diff.get(x, {}).items():
                    _add_into(out, {k: parity(pre) * c * e for k, e in
                                    st.normal(m[:p] + (y,) + m[p + 1:]).items()})
                pre += l.degrees[x]
            out = {index[k]: c for k, c in out.items() if c and k in index}
            if out:
                diff[j] = out
    return DgAlgebra(basis, mult, unit, diff, aug=True, name=f"U({l.name})", trunc=Window(bottom, 0))


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg


@dataclass
class CECochains:
    lie: DgLieAlgebra
    chains: Complex
    complex: Complex
    valid_window: Window

    def homology(self, w: Window | None = None) -> DimTable:
        w = w or self.valid_window
        if w.intersect(self.valid_window) != w:
            raise TruncationInsufficient(f"CE cochains certified only on {self.valid_window}",
                                         certified=self.valid_window)
        return homology_dims(self.complex, w)


def _sym_monomials(sdeg: Sequence[int], lo: int, hi: int, weight_bound: int | None):
    """Graded-symmetric monomials (odd letters unrepeated) with degree in [lo, hi]."""
    n = len(sdeg)
    pos = all(d > 0 for d in sdeg)
    neg = all(d < 0 for d in sdeg)
    out = [()] if lo <= 0 <= hi else []

    def grow(prefix, start, dsum):
        for i in range(start, n):
            d = dsum + sdeg[i]
            if weight_bound is not None and len(prefix) + 1 > weight_bound:
                continue
            if (pos and d > hi) or (neg and d < lo):
                continue
            m = prefix + (i,)
            if lo <= d <= hi:
                out.append(m)
            grow(m, i + 1 if sdeg[i] & 1 else i, d)

    grow((), 0, 0)
    return out


def _sort_sign(seq: list, sdeg) -> tuple[tuple, int] | None:
    """Sort letters with Koszul signs; None if an odd letter repeats."""
    s = 1
    a = list(seq)
    for i in range(1, len(a)):
        j = i
        while j > 0 and a[j - 1] > a[j]:
            if sdeg[a[j - 1]] & 1 and sdeg[a[j]] & 1:
                s = -s
            a[j - 1], a[j] = a[j], a[j - 1]
            j -= 1
    for i in range(len(a) - 1):
        if a[i] == a[i + 1] and sdeg[a[i]] & 1:
            return None
    return tuple(a), s


def ce_chains(l: DgLieAlgebra, lo: int, hi: int, weight_bound: int | None = None) -> Complex:
    """Sym^c(l[1]) on degrees [lo, hi] with the CE differential."""
    sdeg = [d + 1 for d in l.degrees]
    if any(d == 0 for d in sdeg):
        raise CompletionRequired("l[1] has degree-0 elements: a degree receives unbounded weights")
    if any(d > 0 for d in sdeg) and any(d < 0 for d in sdeg) and weight_bound is None:
        raise CompletionRequired("l[1] has both signs of degree: weights unbounded per degree")
    mons = _sym_monomials(sdeg, lo, hi, weight_bound)
    comps: dict[int, list] = {}
    for m in mons:
        comps.setdefault(sum(sdeg[i] for i in m), []).append(m)
    L = l.labels
    space = GradedSpace(comps, label=lambda m: "s(" + ",".join(L[i] for i in m) + ")" if m else "1")

    def d(m):
        out: dict = {}
        k = len(m)
        pre = 0
        for i in range(k):
            x = m[i]
            for y, c in l.diff.get(x, {}).items():
                r = _sort_sign(list(m[:i]) + [y] + list(m[i + 1:]), sdeg)
                if r:
                    _add_into(out, {r[0]: -parity(pre) * c * r[1]})
            pre += sdeg[x]
        for i in range(k):
            for j in range(i + 1, k):
                x, y = m[i], m[j]
                # move x, y to the front: Koszul sign
                s = 1
                between = sum(sdeg[t] for t in m[:i])
                s *= parity(sdeg[x] * between)
                between2 = sum(sdeg[t] for t in m[:j] if True) - sdeg[x]
                s *= parity(sdeg[y] * between2)
                rest = [m[t] for t in range(k) if t != i and t != j]
                for z, c in l.br(x, y).items():
                    r = _sort_sign([z] + rest, sdeg)
                    if r:
                        _add_into(out, {r[0]: s * parity(l.degrees[x]) * c * r[1]})
        return out

    dmap = GradedMap.from_function(space, space, -1, d, [n for n in comps if n - 1 >= lo])
    return Complex(space, dmap, known_lo=lo, known_hi=hi)


def ce_cochains(l: DgLieAlgebra, weight_bound: int | None, w: Window) -> CECochains:
    """Ch^*(l): the degreewise dual of CE chains, on window w."""
    lo, hi = -(w.hi + 1), -(w.lo - 1)
    if l.trunc is not None:
        # the truncated Lie algebra is exact in degrees >= trunc.lo; chains of degree >= lo use only
        # elements of degree >= ... which holds for l[1] negative when lo - 1 >= trunc.lo
        if any(d > -1 for d in l.degrees) or lo - 1 < l.trunc.lo:
            raise TruncationInsufficient(f"Lie algebra known only down to degree {l.trunc.lo}")
    ch = ce_chains(l, lo, hi, weight_bound)
    dual = dual_complex(ch, Window(w.lo - 1, w.hi + 1))
    return CECochains(l, ch, dual, w)


# ---------------------------------------------------------------------------
# D_infinity of square-zero extensions, circle cotensor


def koszul_dual_infty(r: DgAlgebra, w: Window = Window(-6, -1)) -> FreeLie:
    """Free_Lie(M^dual[-1]) for a square-zero extension r = k + M, differential dual to d_M."""
    if any(r.mult.values()):
        raise HomAlgError("koszul_dual_infty expects a trivial square-zero extension")
    comps: dict[int, list] = {}
    for i in r.ideal:
        comps.setdefault(-r.degrees[i] - 1, []).append(r.labels[i] + "^")
    space = GradedSpace(comps)

    def d(label):
        # dual of d_M on M^dual[-1]: (d phi)(m) = -(-1)^{|phi|} phi(dm), shift sign -1
        j = r.index[label[:-1]]
        out = {}
        for i, v in r.diff.items():
            c = v.get(j)
            if c:
                dphi = -parity(-r.degrees[j]) * c
                out[r.labels[i] + "^"] = -dphi
        return out

    dmap = GradedMap.from_function(space, space, -1, d)
    return free_lie(Complex(space, dmap), None, w)


def circle_cotensor(l: DgLieAlgebra) -> DgLieAlgebra:
    """l (x) Lambda(eta), |eta| = -1: [x(x)a, y(x)b] = (-1)^{|a||y|} [x,y] (x) ab."""
    n = l.dim
    basis = [(lab, d) for lab, d in zip(l.labels, l.degrees)] + \
            [(lab + "*eta", d - 1) for lab, d in zip(l.labels, l.degrees)]
    br = {}
    for (i, j), v in l.bracket.items():
        br[(i, j)] = dict(v)
        # (x)(y eta) = [x,y] eta ; (x eta)(y) = (-1)^{|y|} [x,y] eta
        br[(i, j + n)] = {k + n: c for k, c in v.items()}
        br[(i + n, j)] = {k + n: parity(l.degrees[j]) * c for k, c in v.items()}
    diff = {}
    for i, v in l.diff.items():
        diff[i] = dict(v)
        diff[i + n] = {k + n: c for k, c in v.items()}
    trunc = None
    if l.trunc is not None:
        trunc = Window(l.trunc.lo, l.trunc.hi)
    return DgLieAlgebra(basis, br, diff, name=f"{l.name}^S1", trunc=trunc)


# ---------------------------------------------------------------------------
# endomorphisms and homotopy fixed points


def _finite_quotient(m: MixedComplex, top: int | None = None) -> MixedComplex:
    """A finite mixed complex agreeing with m in degrees < top.

    Keeps degrees <= top and divides degree top by b(C_{top+1}); the result
    is closed under b and B (B lands above top, b B = -B b).
    """
    c = m.underlying
    sp = c.space
    degs = [n for n in sp.degrees() if sp.dim(n)]
    if top is None:
        if c.known_hi is None and c.known_lo is None:
            return m
        top = c.known_hi - 1 if c.known_hi is not None else max(degs)
    lo = min(degs)
    if c.known_lo is not None:
        raise TruncationInsufficient("finite model needs chains bounded below")
    keep = {n: list(sp.basis(n)) for n in degs if n <= top}
    # quotient at top by image of b from top + 1
    ech = Echelon()
    if sp.dim(top + 1):
        blk = c.d.block(top + 1)
        for col in blk.cols:
            ech.add(col)
    piv = ech.pivots()
    keep_top_idx = [i for i in range(sp.dim(top)) if i not in piv]
    comps = {n: (v if n != top else [sp.basis(top)[i] for i in keep_top_idx]) for n, v in keep.items()}
    space = GradedSpace(comps, label=lambda k: str(k))
    pos_top = {i: r for r, i in enumerate(keep_top_idx)}

    def proj_top(vec: dict) -> dict:
        # reduce modulo the image, then read off non-pivot coordinates
        r = ech.reduce(vec)
        return {pos_top[i]: x for i, x in r.items()}

    blocks_d, blocks_B = {}, {}
    for n in comps:
        if n - 1 in comps:
            blk = c.d.block(n)
            if n == top:
                cols = [blk.cols[i] for i in keep_top_idx]
            else:
                cols = list(blk.cols)
            if n - 1 == top:
                cols = [proj_top(col) for col in cols]
            blocks_d[n] = SparseMatrix(space.dim(n - 1), space.dim(n), cols)
        if n + 1 in comps:
            blk = m.B.block(n)
            cols = list(blk.cols)
            if n + 1 == top:
                cols = [proj_top(col) for col in cols]
            blocks_B[n] = SparseMatrix(space.dim(n + 1), space.dim(n), cols)
    cx = Complex(space, GradedMap(space, space, -1, blocks_d))
    return MixedComplex(cx, GradedMap(space, space, 1, blocks_B))


def _end_basis(space: GradedSpace) -> dict[int, list[tuple]]:
    degs = [n for n in space.degrees() if space.dim(n)]
    out: dict[int, list] = {}
    for s in degs:
        for t in degs:
            for i in range(space.dim(s)):
                for j in range(space.dim(t)):
                    out.setdefault(t - s, []).append((s, i, t, j))   # e_i in C_s -> e_j in C_t
    return out


def _mat(mc: MixedComplex, which: str, n: int) -> SparseMatrix:
    return (mc.d if which == "d" else mc.B).block(n)


def _ad(mc: MixedComplex, which: str, key: tuple, k_deg: int) -> dict:
    """[X, E] = X E - (-1)^{|E||X|} E X for the matrix unit E = key."""
    s, i, t, j = key
    space = mc.space
    xdeg = -1 if which == "d" else 1
    out: dict = {}
    # X E: e_i -> X(e_j) in C_{t + xdeg}
    if space.dim(t + xdeg):
        col = _mat(mc, which, t).cols[j]
        for r, c in col.items():
            _add_into(out, {(s, i, t + xdeg, r): c})
    # E X: for every basis vector e_p of C_{s - xdeg} with X(e_p) hitting e_i
    sgn = koszul(k_deg, xdeg)
    src = s - xdeg
    if space.dim(src):
        blk = _mat(mc, which, src)
        for p, col in enumerate(blk.cols):
            c = col.get(i)
            if c:
                _add_into(out, {(src, p, t, j): -sgn * c})
    return out


@dataclass
class HomotopyFixedComplex:
    base: MixedComplex
    u_bound: int
    total: Complex
    valid_window: Window

    def homology(self, w: Window | None = None) -> DimTable:
        w = w or self.valid_window
        if w.intersect(self.valid_window) != w:
            raise TruncationInsufficient(f"fixed complex certified only on {self.valid_window}",
                                         certified=self.valid_window)
        return homology_dims(self.total, w)

    def check_d_squared(self) -> list[int]:
        return self.total.check_d_squared()


def endomorphism_complex(m: MixedComplex) -> Complex:
    fm = _finite_quotient(m)
    basis = _end_basis(fm.space)
    space = GradedSpace(basis)
    dmap = GradedMap.from_function(space, space, -1, lambda key: _ad(fm, "d", key, key[2] - key[0]))
    return Complex(space, dmap)


def end_lie(m: MixedComplex) -> DgLieAlgebra:
    """End(m) with the graded commutator bracket and d_End."""
    fm = _finite_quotient(m)
    basis = _end_basis(fm.space)
    keys = [k for n in sorted(basis) for k in basis[n]]
    idx = {k: i for i, k in enumerate(keys)}
    deg = [k[2] - k[0] for k in keys]
    br = {}
    for a, (s1, i1, t1, j1) in enumerate(keys):
        for b, (s2, i2, t2, j2) in enumerate(keys):
            out: dict = {}
            # E_a E_b: b first then a: needs t2 == s1 and j2 == i1
            if t2 == s1 and j2 == i1:
                _add_into(out, {idx[(s2, i2, t1, j1)]: 1})
            if t1 == s2 and j1 == i2:
                _add_into(out, {idx[(s1, i1, t2, j2)]: -koszul(deg[a], deg[b])})
            if out:
                br[(a, b)] = out
    diff = {}
    for a, k in enumerate(keys):
        v = _ad(fm, "d", k, deg[a])
        if v:
            diff[a] = {idx[x]: c for x, c in v.items()}
    labels = [(f"E[{s}.{i}->{t}.{j}]", deg[a]) for a, (s, i, t, j) in enumerate(keys)]
    return DgLieAlgebra(labels, br, diff, name="End")


def homotopy_fixed_endomorphisms(m: MixedComplex, u_bound: int, w: Window) -> HomotopyFixedComplex:
    """Total complex of End(m)[[u]]/u^{N+1}, D = d_End + u ad_B, |u| = -2."""
    fm = _finite_quotient(m)
    basis = _end_basis(fm.space)
    N = u_bound
    ends = sorted(basis)
    hmin, hmax = (min(ends), max(ends)) if ends else (0, 0)
    comps: dict[int, list] = {}
    for n in range(w.lo - 1, w.hi + 2):
        keys = []
        for k in range(N + 1):
            keys.extend((k, key) for key in basis.get(n + 2 * k, []))
        comps[n] = keys
    space = GradedSpace(comps, label=lambda kk: f"u^{kk[0]}{kk[1]}")

    def D(kk):
        k, key = kk
        dg = key[2] - key[0]
        out = {(k, x): c for x, c in _ad(fm, "d", key, dg).items()}
        if k + 1 <= N:
            for x, c in _ad(fm, "B", key, dg).items():
                _add_into(out, {(k + 1, x): c})
        return out

    dmap = GradedMap.from_function(space, space, -1, D, list(range(w.lo, w.hi + 2)))
    total = Complex(space, dmap, known_lo=w.lo - 1, known_hi=w.hi + 1)
    # exact where the dropped u^{N+1} tail vanishes: n + 2(N + 1) > hmax at n - 1
    lo = max(w.lo, hmax - 2 * N)
    if lo > w.hi:
        raise TruncationInsufficient(f"u-bound {N} certifies no degree of {w}")
    return HomotopyFixedComplex(fm, N, total, Window(lo, w.hi))
