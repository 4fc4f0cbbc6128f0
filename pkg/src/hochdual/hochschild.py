"""Normalized Hochschild chains, Connes' operator and the calculus action.

A chain ``a0[a1|...|an]`` is stored as the index tuple ``(a0, a1, ..., an)``
with ``a1..an`` non-unit.  Its degree is ``|a0| + sum(|ai| + 1)``.  All
operators are written on the suspended cyclic word ``(sa0, ..., san)``, so
signs are Koszul signs for the shifted degrees ``|ai| + 1``.

The Hochschild boundary is the cyclic insertion action of the shifted
multiplication plus differential, ``b = L_{m + d}``; the classical formula
is kept separately (``classical_boundary``) as an independent check.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .cochains import Cochain, ArityOverflow, maurer_cartan
from .core import (Complex, DimTable, GradedMap, GradedSpace, MixedComplex, NotDegreewiseFinite,
                   TruncationInsufficient, Window, homology_dims)
from .dg import DgAlgebra, NotCommutative
from .signs import exact as _num, koszul, parity

Word = tuple


def _acc(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# ---------------------------------------------------------------------------
# words


class WordEnumerator:
    """Chain words of a given degree; letters after the first avoid the unit
    unless ``normalized`` is False."""

    def __init__(self, a: DgAlgebra, normalized: bool = True):
        self.a = a
        self.normalized = normalized
        letters = a.ideal if normalized else list(range(a.dim))
        self.letters = letters
        sds = {a.degrees[i] + 1 for i in letters}
        if 0 in sds:
            raise NotDegreewiseFinite("letters of degree -1 give infinitely many words per degree")
        if sds and min(sds) < 0 < max(sds):
            raise NotDegreewiseFinite("letters of both signs of suspended degree give infinite words")
        self.sign = 0 if not sds else (1 if min(sds) > 0 else -1)
        self.by_sd: dict[int, list[int]] = {}
        for i in letters:
            self.by_sd.setdefault(a.degrees[i] + 1, []).append(i)
        self._memo: dict[int, list[tuple]] = {}

    def tails(self, r: int) -> list[tuple]:
        """Letter sequences of total suspended degree r."""
        if r in self._memo:
            return self._memo[r]
        if r == 0:
            res = [()]
        elif self.sign == 0 or r * self.sign < 0:
            res = []
        else:
            res = []
            for sd in sorted(self.by_sd, key=abs):
                if abs(sd) > abs(r):
                    continue
                rest = self.tails(r - sd)
                if not rest:
                    continue
                for i in self.by_sd[sd]:
                    res.extend((i,) + t for t in rest)
            res.sort(key=lambda t: (len(t), t))
        self._memo[r] = res
        return res

    def words(self, n: int, max_len: int | None = None) -> list[Word]:
        out = []
        for a0 in range(self.a.dim):
            for t in self.tails(n - self.a.degrees[a0]):
                if max_len is None or len(t) <= max_len:
                    out.append((a0,) + t)
        out.sort(key=lambda w: (len(w), w))
        return out


def chain_known_range(a: DgAlgebra) -> tuple[int | None, int | None]:
    """Chain degrees on which normalized chains and b are exact for ``a``.

    A connective algebra truncated above degree N gives exact chains and
    boundary through degree N; a coconnective one (ideal in degrees <= -2)
    truncated below L gives exact chains from degree L + 2 on.
    """
    if a.trunc is None:
        return None, None
    lo_d, hi_d = a.connectivity()
    if lo_d >= 0:
        return None, a.trunc.hi
    if hi_d <= -2:
        return a.trunc.lo + 2, None
    raise TruncationInsufficient(f"cannot certify chains of truncated algebra {a.name!r}")


# ---------------------------------------------------------------------------
# operators on words


class WordOps:
    """Word-level b, B, insertion and contraction for a fixed algebra."""

    def __init__(self, a: DgAlgebra):
        self.a = a
        self.unit = a.unit
        self.deg = a.degrees
        self.sd = [d + 1 for d in a.degrees]
        self.par = [d & 1 for d in a.degrees]
        self.mul = {}
        for x in range(a.dim):
            for y in range(a.dim):
                v = a.mul(x, y)
                if v:
                    self.mul[(x, y)] = [(k, _num(c)) for k, c in v.items()]
        self.diff = {x: [(k, _num(c)) for k, c in v.items()] for x, v in a.diff.items()}

    def b(self, w: Word, normalized: bool = True, mul: dict | None = None, with_d: bool = True) -> dict:
        """Hochschild boundary, the insertion action of m + d.

        ``mul`` overrides the multiplication table (``{(x, y): [(k, c)]}``);
        the boundary is linear in it, which is used for deformations.
        """
        out: dict = {}
        unit = self.unit
        n = len(w) - 1
        sd = self.sd
        par = self.par
        mul = self.mul if mul is None else mul
        pre = [0] * (n + 2)
        for i in range(n + 1):
            pre[i + 1] = pre[i] + sd[w[i]]
        if self.diff and with_d:
            for i in range(n + 1):
                dv = self.diff.get(w[i])
                if not dv:
                    continue
                s = -1 if (pre[i] & 1) == 0 else 1
                for k, c in dv:
                    if i and normalized and k == unit:
                        continue
                    _acc(out, w[:i] + (k,) + w[i + 1:], s * c)
        if n >= 1:
            # interior merges
            for i in range(1, n):
                v = mul.get((w[i], w[i + 1]))
                if not v:
                    continue
                s = (-1 if pre[i] & 1 else 1) * (-1 if par[w[i]] else 1)
                head, tail = w[:i], w[i + 2:]
                for k, c in v:
                    if normalized and k == unit:
                        continue
                    _acc(out, head + (k,) + tail, s * c)
            # a0 a1
            v = mul.get((w[0], w[1]))
            if v:
                s = -1 if par[w[0]] else 1
                tail = w[2:]
                for k, c in v:
                    _acc(out, (k,) + tail, s * c)
            # an a0, after moving san to the front
            v = mul.get((w[n], w[0]))
            if v:
                s = (-1 if (pre[n] * sd[w[n]]) & 1 else 1) * (-1 if par[w[n]] else 1)
                mid = w[1:n]
                for k, c in v:
                    _acc(out, (k,) + mid, s * c)
        return out

    def B(self, w: Word) -> dict:
        """Connes operator: sum of cyclic rotations prefixed by the unit."""
        unit = self.unit
        if w[0] == unit:
            return {}
        sd = self.sd
        n = len(w) - 1
        tot = sum(sd[x] for x in w)
        out: dict = {}
        right = 0
        for j in range(n + 1):
            # move the last j letters to the front
            cut = n + 1 - j
            if j:
                right += sd[w[cut]]
            s = -1 if ((tot - right) * right) & 1 else 1
            _acc(out, (unit,) + w[cut:] + w[:cut], s)
        return out

    def insertion(self, f: Cochain, w: Word) -> dict:
        """L_f: insert f into every cyclically consecutive block of letters."""
        out: dict = {}
        for p in f.arities():
            self._insert(f, p, w, out)
        return out

    def _insert(self, f: Cochain, p: int, w: Word, out: dict):
        unit = self.unit
        sd = self.sd
        n = len(w) - 1
        fs = f.sdeg
        table = f.table
        pre = [0] * (n + 2)
        for i in range(n + 1):
            pre[i + 1] = pre[i] + sd[w[i]]
        for i in range(1, n - p + 2):
            v = table.get(w[i:i + p])
            if not v:
                continue
            s = -1 if (fs * pre[i]) & 1 else 1
            head, tail = w[:i], w[i + p:]
            for k, c in v.items():
                if k == unit:
                    continue
                _acc(out, head + (k,) + tail, s * c)
        if 1 <= p <= n + 1:
            tot = pre[n + 1]
            for j in range(p):
                cut = n + 1 - j
                right = tot - pre[cut]
                r = w[cut:] + w[:cut]
                v = table.get(r[:p])
                if not v:
                    continue
                s = -1 if ((tot - right) * right) & 1 else 1
                tail = r[p:]
                for k, c in v.items():
                    _acc(out, (k,) + tail, s * c)

    def cartan_homotopy(self, f: Cochain, w: Word) -> dict:
        """S_f: 1 prefixed to each rotation, f inserted after the old first letter.

        With it, [B, iota_f] + L_f = [b, S_f] + S_{delta f} exactly.
        """
        unit = self.unit
        if w[0] == unit:
            return {}
        sd = self.sd
        n = len(w) - 1
        tot = sum(sd[x] for x in w)
        fs = f.sdeg
        arities = f.arities()
        out: dict = {}
        right = 0
        for j in range(n + 1):
            cut = n + 1 - j
            if j:
                right += sd[w[cut]]
            s = -1 if ((tot - right) * right) & 1 else 1
            z = w[cut:] + w[:cut]
            pre = sum(sd[x] for x in z[:j + 1])
            for i in range(j + 1, n + 1):
                for p in arities:
                    if i + p - 1 > n:
                        continue
                    v = f.table.get(z[i:i + p])
                    if v:
                        s2 = -s if (fs * pre) & 1 else s
                        head, tail = (unit,) + z[:i], z[i + p:]
                        for k, c in v.items():
                            if k != unit:
                                _acc(out, head + (k,) + tail, s2 * c)
                pre += sd[z[i]]
        return out

    def contraction(self, f: Cochain, w: Word) -> dict:
        """iota_f: a0[a1|...|an] -> +-a0 f(a1..ap)[a_{p+1}|...]."""
        n = len(w) - 1
        out: dict = {}
        a0 = w[0]
        s0 = -1 if (f.sdeg * self.sd[a0]) & 1 == 0 else 1
        s0 *= -1 if self.par[a0] else 1
        for p in f.arities():
            if p > n:
                continue
            v = f.table.get(w[1:p + 1])
            if not v:
                continue
            tail = w[p + 1:]
            for x, c in v.items():
                for k, e in self.mul.get((a0, x), ()):
                    _acc(out, (k,) + tail, s0 * c * e)
        return out


def classical_boundary(a: DgAlgebra, w: Word, normalized: bool = True,
                       mul: Callable[[int, int], Mapping] | None = None) -> dict:
    """The textbook formula sum (-1)^i d_i for an ungraded algebra (independent check).

    ``mul`` replaces the product, e.g. by the first-order part of a deformation.
    """
    if any(d != 0 for d in a.degrees) or a.diff:
        raise ValueError("classical_boundary is for ungraded algebras without differential")
    mul = mul or a.mul
    n = len(w) - 1
    out: dict = {}
    for i in range(n):
        for k, c in mul(w[i], w[i + 1]).items():
            if i and normalized and k == a.unit:
                continue
            _acc(out, w[:i] + (k,) + w[i + 2:], parity(i) * c)
    if n >= 1:
        for k, c in mul(w[n], w[0]).items():
            _acc(out, (k,) + w[1:n], parity(n) * c)
    return out


# ---------------------------------------------------------------------------
# chain complexes


class HochschildChains:
    """Normalized Hochschild chains of ``algebra`` materialized on ``degrees``."""

    def __init__(self, algebra: DgAlgebra, degrees: Iterable[int], normalized: bool = True,
                 known: tuple[int | None, int | None] = (None, None)):
        self.algebra = algebra
        self.normalized = normalized
        self.ops = WordOps(algebra)
        self.enum = WordEnumerator(algebra, normalized)
        self.degrees = sorted(set(degrees))
        comps = {n: self.enum.words(n) for n in self.degrees}
        L = algebra.labels
        self.space = GradedSpace(comps, label=lambda w: L[w[0]] + "[" + "|".join(L[i] for i in w[1:]) + "]")
        lo, hi = known
        mat_lo, mat_hi = self.degrees[0], self.degrees[-1]
        # outside the materialized range we only know vanishing from the enumerator
        if self._empty_below(mat_lo):
            lo_k = lo
        else:
            lo_k = mat_lo if lo is None else max(lo, mat_lo)
        if self._empty_above(mat_hi):
            hi_k = hi
        else:
            hi_k = mat_hi if hi is None else min(hi, mat_hi)
        self._build(lo_k, hi_k)

    def _empty_below(self, n):
        return self.enum.sign >= 0 and n <= min(0, min(self.algebra.degrees))

    def _empty_above(self, n):
        return self.enum.sign <= 0 and n >= max(0, max(self.algebra.degrees))

    def _op_degrees(self, shift):
        have = set(self.degrees)
        out = []
        for n in self.degrees:
            m = n + shift
            if m in have or (m < self.degrees[0] and self._empty_below(m)) or \
                    (m > self.degrees[-1] and self._empty_above(m)):
                out.append(n)
        return out

    def _build(self, lo_k, hi_k):
        nz = self.normalized
        ops = self.ops
        d = GradedMap.from_function(self.space, self.space, -1, lambda w: ops.b(w, nz),
                                    self._op_degrees(-1))
        cplx = Complex(self.space, d, known_lo=lo_k, known_hi=hi_k)
        if nz:
            Bm = GradedMap.from_function(self.space, self.space, 1, ops.B, self._op_degrees(1))
        else:
            Bm = GradedMap(self.space, self.space, 1)
        self.mixed = MixedComplex(cplx, Bm)

    @property
    def complex(self) -> Complex:
        return self.mixed.underlying

    @property
    def word_bound(self) -> int:
        return max((len(w) - 1 for n in self.degrees for w in self.space.basis(n)), default=0)

    def operator(self, fn: Callable[[Word], dict], degree: int) -> GradedMap:
        return GradedMap.from_function(self.space, self.space, degree, fn, self._op_degrees(degree))

    def lie_derivative(self, f: Cochain) -> GradedMap:
        if f.arity is not None and f.arity > self.word_bound + 1:
            raise ArityOverflow(f"arity {f.arity} exceeds word bound {self.word_bound}")
        return self.operator(lambda w: self.ops.insertion(f, w), f.sdeg)

    def cap(self, f: Cochain) -> GradedMap:
        if f.arity is not None and f.arity > self.word_bound:
            raise ArityOverflow(f"arity {f.arity} exceeds word bound {self.word_bound}")
        return self.operator(lambda w: self.ops.contraction(f, w), f.degree)

    def homology(self, w: Window) -> DimTable:
        return homology_dims(self.complex, w)


def _window_degrees(a: DgAlgebra, w: Window, pad: int = 1) -> list[int]:
    return list(range(w.lo - pad, w.hi + pad + 1))


def hochschild_chains(a: DgAlgebra, w: Window, pad: int = 1, normalized: bool = True) -> HochschildChains:
    """Chains materialized on ``w`` widened by ``pad``; raises if ``w`` is not certified."""
    known = chain_known_range(a)
    hc = HochschildChains(a, _window_degrees(a, w, pad), normalized, known)
    c = hc.complex
    for n in (w.lo - 1, w.hi + 1):
        if not c.knows(n):
            cert = _certified(c, w)
            raise TruncationInsufficient(f"Hochschild chains of {a.name!r} not exact on {w}", certified=cert)
    return hc


def _certified(c: Complex, w: Window) -> Window | None:
    lo = w.lo if c.known_lo is None else max(w.lo, c.known_lo + 1)
    hi = w.hi if c.known_hi is None else min(w.hi, c.known_hi - 1)
    return Window(lo, hi) if lo <= hi else None


def hh_dims(a: DgAlgebra, w: Window) -> DimTable:
    return hochschild_chains(a, w).homology(w)


def normalization_map(full: HochschildChains, norm: HochschildChains) -> GradedMap:
    """Projection from unnormalized onto normalized chains (a quasi-isomorphism)."""
    unit = full.algebra.unit

    def fn(w):
        return {} if unit in w[1:] else {w: 1}

    return GradedMap.from_function(full.space, norm.space, 0, fn,
                                   [n for n in full.degrees if n in norm.degrees])


# ---------------------------------------------------------------------------
# shuffle product


def _shuffles(x: tuple, y: tuple, sx: list, sy: list):
    """All shuffles of x and y with Koszul signs for suspended degrees."""
    p, q = len(x), len(y)
    for pos in itertools.combinations(range(p + q), p):
        s = 0
        res = [None] * (p + q)
        posset = set(pos)
        xi = yi = 0
        # count sign: each y letter placed before an x letter crosses it
        passed_y = 0
        for t in range(p + q):
            if t in posset:
                res[t] = x[xi]
                s += sx[xi] * passed_y
                xi += 1
            else:
                res[t] = y[yi]
                passed_y += sy[yi]
                yi += 1
        yield tuple(res), (-1 if s & 1 else 1)


def shuffle_product(a: DgAlgebra, u: Word, v: Word) -> dict:
    """(a0 x U)(b0 x V) = (-1)^{|U||b0|} a0 b0 x (U sh V), normalized letters."""
    if not a.commutative:
        raise NotCommutative("shuffle product needs a commutative algebra")
    sd = [d + 1 for d in a.degrees]
    su = [sd[i] for i in u[1:]]
    sv = [sd[i] for i in v[1:]]
    sgn0 = parity(sum(su) * a.degrees[v[0]])
    out: dict = {}
    prod = a.mul(u[0], v[0])
    if not prod:
        return out
    for sh, s in _shuffles(u[1:], v[1:], su, sv):
        for k, c in prod.items():
            _acc(out, (k,) + sh, sgn0 * s * c)
    return out


def circle_words(r: DgAlgebra, N: int) -> list[Word]:
    """Normalized chain words of degree <= N in the order used by the circle tensor."""
    enum = WordEnumerator(r)
    words = []
    for n in range(0, N + 1):
        words.extend(enum.words(n))
    words.sort(key=lambda x: (sum(r.degrees[i] for i in x) + len(x) - 1, len(x), x))
    return words


def circle_tensor_commutative(r: DgAlgebra, w: Window) -> tuple[DgAlgebra, dict]:
    """Hochschild chains of a commutative algebra as a commutative dga (shuffle product).

    Returns the dga (truncated to chain degrees ``<= w.hi``, an honest
    quotient) together with Connes' operator as ``{index: {index: coeff}}``.
    The augmentation sends ``1[]`` to 1 and kills every other word.
    """
    if not r.commutative:
        raise NotCommutative(f"{r.name!r} is not commutative")
    lo_d, _ = r.connectivity()
    if lo_d < 0:
        raise TruncationInsufficient("circle tensor is implemented for connective algebras")
    N = w.hi
    known = chain_known_range(r)
    if known[1] is not None and known[1] < N:
        raise TruncationInsufficient(f"algebra truncation only exact below {known[1]}")
    ops = WordOps(r)
    words = circle_words(r, N)
    index = {x: i for i, x in enumerate(words)}
    L = r.labels
    basis = [(L[x[0]] + "[" + "|".join(L[i] for i in x[1:]) + "]", sum(r.degrees[i] for i in x) + len(x) - 1)
             for x in words]
    unit = index[(r.unit,)]
    mult = {}
    for i, x in enumerate(words):
        if i == unit:
            continue
        for j, y in enumerate(words):
            if j == unit:
                continue
            deg = basis[i][1] + basis[j][1]
            if deg > N:
                continue
            v = shuffle_product(r, x, y)
            if v:
                mult[(i, j)] = {index[k]: c for k, c in v.items()}
    diff = {}
    Bop = {}
    for i, x in enumerate(words):
        v = ops.b(x)
        if v:
            diff[i] = {index[k]: c for k, c in v.items()}
        if basis[i][1] + 1 <= N:
            v = ops.B(x)
            if v:
                Bop[i] = {index[k]: c for k, c in v.items()}
    dga = DgAlgebra(basis, mult, unit, diff, aug=True, commutative=True,
                    name=f"HH({r.name})", trunc=Window(0, N))
    return dga, Bop


# ---------------------------------------------------------------------------
# cyclic variants


def _total_complex(m: MixedComplex, pairs_for: Callable[[int], list], w: Window) -> Complex:
    """Total complex on components ``x u^k`` listed by ``pairs_for(n)``.

    ``pairs_for(n)`` gives the (chain degree, k) pairs in total degree n;
    the differential is ``b x u^k + B x u^{k+1}``, a term being dropped when
    its target pair is not listed (this realizes the u-adic quotients).
    """
    from .linalg import SparseMatrix
    sp = m.space
    comps = {}
    for n in range(w.lo - 1, w.hi + 2):
        comps[n] = [(k, key) for (cd, k) in pairs_for(n) for key in sp.basis(cd)]
    space = GradedSpace(comps, label=lambda kk: f"u^{kk[0]} {kk[1]}")
    blocks = {}
    for n in range(w.lo, w.hi + 2):
        tgt = space.index_map(n - 1)
        targets = set(pairs_for(n - 1))
        cols = []
        for (cd, k) in pairs_for(n):
            bb = m.d.block(cd) if (cd - 1, k) in targets else None
            BB = m.B.block(cd) if (cd + 1, k + 1) in targets else None
            kb, kB = sp.basis(cd - 1), sp.basis(cd + 1)
            for i in range(sp.dim(cd)):
                col: dict = {}
                if bb is not None:
                    for r, c in bb.cols[i].items():
                        col[tgt[(k, kb[r])]] = c
                if BB is not None:
                    for r, c in BB.cols[i].items():
                        t = tgt[(k + 1, kB[r])]
                        col[t] = col.get(t, 0) + c
                cols.append({i2: c for i2, c in col.items() if c})
        blocks[n] = SparseMatrix(space.dim(n - 1), len(comps[n]), cols)
    return Complex(space, GradedMap(space, space, -1, blocks), known_lo=w.lo - 1, known_hi=w.hi + 1)


def cyclic_variants(m: MixedComplex, u_bound: int, w: Window) -> dict:
    """Cyclic, negative and periodic homology of a mixed complex.

    u has degree -2.  Components: cyclic ``x u^{-k}`` with ``0 <= k <= N``
    (a quotient of k[u^{-1}]-coefficients, B drops the u^1 term); negative
    ``x u^k`` with ``0 <= k <= N`` (quotient by ``u^{N+1}``); periodic
    ``-N <= k <= N``.  Each table is computed on the largest run of ``w`` on
    which the truncation is exact; ``None`` if there is none.
    """
    c = m.underlying
    sp = m.space
    degs = [n for n in sp.degrees() if sp.dim(n)]
    lo_s, hi_s = (min(degs), max(degs)) if degs else (0, 0)
    N = u_bound

    def zero_at(cd):
        # provably zero chain group
        return (cd < lo_s and c.known_lo is None) or (cd > hi_s and c.known_hi is None)

    def exact_at(cd):
        return zero_at(cd) or (c.knows(cd) and lo_s <= cd <= hi_s) or \
            (c.knows(cd) and sp.dim(cd) == 0)

    def run(ks: Callable[[int], range], sign: int):
        def all_pairs(t):
            return [(t + sign * 2 * abs(k), k) for k in ks()]

        def pairs_for(t):
            return [(cd, k) for cd, k in all_pairs(t) if lo_s <= cd <= hi_s and sp.dim(cd)]

        def ok(n):
            for t in (n - 1, n, n + 1):
                if not all(exact_at(cd) for cd, _ in all_pairs(t)):
                    return False
                # the dropped tail must vanish
                for cd in _tail(t, sign, N):
                    if not zero_at(cd):
                        return False
            return True

        good = [n for n in w if ok(n)]
        if not good:
            return None
        runs: list[list[int]] = []
        for n in good:
            if runs and n == runs[-1][-1] + 1:
                runs[-1].append(n)
            else:
                runs.append([n])
        best = max(runs, key=len)
        ww = Window(best[0], best[-1])
        return homology_dims(_total_complex(m, pairs_for, ww), ww)

    def _tail(t, sign, N):
        out = []
        if sign < 0:      # cyclic: C_{t-2k} for k > N
            out.append(t - 2 * (N + 1))
        elif sign > 0:    # negative: C_{t+2k} for k > N
            out.append(t + 2 * (N + 1))
        return out

    cyc = run(lambda: range(0, -N - 1, -1), -1)
    neg = run(lambda: range(0, N + 1), 1)
    per = _periodic(m, N, w, exact_at, zero_at, lo_s, hi_s)
    return {"cyclic": cyc, "negative": neg, "periodic": per}


def _periodic(m, N, w, exact_at, zero_at, lo_s, hi_s):
    sp = m.space

    def all_pairs(t):
        return [(t + 2 * k, k) for k in range(-N, N + 1)]

    def pairs_for(t):
        return [(cd, k) for cd, k in all_pairs(t) if lo_s <= cd <= hi_s and sp.dim(cd)]

    def ok(n):
        for t in (n - 1, n, n + 1):
            if not all(exact_at(cd) for cd, _ in all_pairs(t)):
                return False
            if not (zero_at(t + 2 * (N + 1)) and zero_at(t - 2 * (N + 1))):
                return False
        return True

    good = [n for n in w if ok(n)]
    if not good:
        return None
    ww = Window(good[0], good[-1])
    if len(good) != len(ww):
        ww = Window(good[0], good[0])
    return homology_dims(_total_complex(m, pairs_for, ww), ww)
