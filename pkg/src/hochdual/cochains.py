"""Normalized Hochschild cochains as sparse shifted multilinear maps.

A cochain of arity p is stored through its shifted form
``(sA_bar)^{(x)p} -> sA``: ``table[args] = {out: coeff}`` with ``args`` a
tuple of non-unit basis indices.  Every sign below is the Koszul sign for
the shifted degrees ``|a| + 1``; see docs/signs.md.

The multiplication and the differential of the algebra are cochains too
(``mult_cochain``, ``diff_cochain``); they are the only ones allowed to
accept the unit as an argument.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Mapping

from .core import Complex, GradedMap, GradedSpace, HomAlgError, TruncationInsufficient, Window
from .dg import DgAlgebra
from .signs import exact, koszul, parity


class ArityOverflow(HomAlgError):
    pass


class NotCocycle(HomAlgError):
    pass


class Cochain:
    """Homogeneous normalized cochain in shifted form.

    ``sdeg`` is the shifted degree ``q + 1 - p``; the ordinary homological
    degree of the cochain is ``sdeg - 1``.
    """

    __slots__ = ("algebra", "table", "sdeg", "arity", "_by_out")

    def __init__(self, algebra: DgAlgebra, table: Mapping, sdeg: int | None = None, arity: int | None = None):
        self.algebra = algebra
        clean = {}
        for args, outs in table.items():
            o = {k: exact(c) for k, c in outs.items() if c}
            if o:
                clean[tuple(args)] = o
        self.table = clean
        if sdeg is None:
            sdeg = self._infer_sdeg()
        if arity is None:
            arities = {len(k) for k in clean}
            arity = arities.pop() if len(arities) == 1 else (0 if not arities else None)
        self.sdeg = sdeg
        self.arity = arity
        self._by_out = None

    def _infer_sdeg(self):
        a = self.algebra
        degs = set()
        for args, outs in self.table.items():
            ins = sum(a.degrees[i] + 1 for i in args)
            for k in outs:
                degs.add(a.degrees[k] + 1 - ins)
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous cochain, shifted degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    @property
    def degree(self) -> int:
        """Ordinary homological degree (arity-p cochain of a degree-0 algebra sits in -p)."""
        return self.sdeg - 1

    def eval(self, args: tuple) -> dict:
        return self.table.get(args, {})

    def by_out(self):
        if self._by_out is None:
            idx: dict = {}
            for args, outs in self.table.items():
                for k, c in outs.items():
                    idx.setdefault(k, []).append((args, c))
            self._by_out = idx
        return self._by_out

    def is_zero(self) -> bool:
        return not self.table

    def arities(self) -> list[int]:
        return sorted({len(k) for k in self.table})

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.sdeg != self.sdeg:
            raise ValueError("adding cochains of different degrees")
        t = {k: dict(v) for k, v in self.table.items()}
        for args, outs in other.table.items():
            d = t.setdefault(args, {})
            for k, c in outs.items():
                z = d.get(k, 0) + c
                if z:
                    d[k] = z
                else:
                    d.pop(k, None)
        return Cochain(self.algebra, t, self.sdeg, None)

    def scale(self, s) -> "Cochain":
        s = exact(s)
        return Cochain(self.algebra, {a: {k: s * c for k, c in o.items()} for a, o in self.table.items()},
                       self.sdeg, self.arity)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self - other).is_zero() if not (self.is_zero() and other.is_zero()) else True

    def __repr__(self):
        return f"Cochain(arity={self.arity}, sdeg={self.sdeg}, nnz={sum(len(v) for v in self.table.values())})"


def zero_cochain(a: DgAlgebra, sdeg: int = 0) -> Cochain:
    return Cochain(a, {}, sdeg, None)


def mult_cochain(a: DgAlgebra) -> Cochain:
    """Shifted multiplication m(sx, sy) = (-1)^{|x|} s(xy), unit arguments included."""
    t = {}
    for x in range(a.dim):
        for y in range(a.dim):
            v = a.mul(x, y)
            if v:
                s = parity(a.degrees[x])
                t[(x, y)] = {k: s * c for k, c in v.items()}
    return Cochain(a, t, -1, 2)


def diff_cochain(a: DgAlgebra) -> Cochain:
    """Shifted differential d(sx) = -s(dx)."""
    return Cochain(a, {(x,): {k: -c for k, c in v.items()} for x, v in a.diff.items()}, -1, 1)


def maurer_cartan(a: DgAlgebra) -> Cochain:
    return mult_cochain(a) + diff_cochain(a) if a.diff else mult_cochain(a)


def unit_cochain(a: DgAlgebra) -> Cochain:
    return Cochain(a, {(): {a.unit: 1}}, 1, 0)


def _normalized_args(a: DgAlgebra, args) -> bool:
    return a.unit not in args


def compose(f: Cochain, g: Cochain, normalize: bool = True) -> Cochain:
    """Gerstenhaber circle product f o g = sum_i f o_i g with Koszul signs."""
    a = f.algebra
    sd = a.degrees
    out: dict = {}
    gi = g.by_out()
    gs = g.sdeg
    for fargs, fout in f.table.items():
        pre = 0
        for i, z in enumerate(fargs):
            matches = gi.get(z)
            if matches:
                sign = parity(gs * pre)
                head, tail = fargs[:i], fargs[i + 1:]
                for gargs, c in matches:
                    args = head + gargs + tail
                    if normalize and a.unit in args:
                        continue
                    d = out.setdefault(args, {})
                    for k, e in fout.items():
                        v = d.get(k, 0) + sign * c * e
                        if v:
                            d[k] = v
                        else:
                            d.pop(k, None)
            pre += sd[z] + 1
    return Cochain(a, out, f.sdeg + g.sdeg, None)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber bracket [f, g] = f o g - (-1)^{|f||g|} g o f (shifted degrees)."""
    return compose(f, g) - compose(g, f).scale(koszul(f.sdeg, g.sdeg))


def delta(f: Cochain, mc: Cochain | None = None) -> Cochain:
    """Hochschild differential [m + d, f]."""
    mc = mc if mc is not None else maurer_cartan(f.algebra)
    return bracket(mc, f)


def brace_mult(f: Cochain, g: Cochain) -> Cochain:
    """m{f, g}(x, y) = (-1)^{|g||x|} m(f(x), g(y))."""
    a = f.algebra
    m = mult_cochain(a)
    out: dict = {}
    for fargs, fout in f.table.items():
        pre = sum(a.degrees[i] + 1 for i in fargs)
        s = parity(g.sdeg * pre)
        for gargs, gout in g.table.items():
            args = fargs + gargs
            d = out.setdefault(args, {})
            for x, c in fout.items():
                for y, e in gout.items():
                    for k, v in m.eval((x, y)).items():
                        z = d.get(k, 0) + s * c * e * v
                        if z:
                            d[k] = z
                        else:
                            d.pop(k, None)
    return Cochain(a, out, f.sdeg + g.sdeg - 1, None)


def cup(f: Cochain, g: Cochain, arity_bound: int | None = None) -> Cochain:
    """Cup product, f u g = (-1)^{deg f} m{f, g}; associative with unit 1."""
    if arity_bound is not None and (f.arity or 0) + (g.arity or 0) > arity_bound:
        raise ArityOverflow(f"cup of arities {f.arity}+{g.arity} exceeds {arity_bound}")
    return brace_mult(f, g).scale(parity(f.degree))


def gerstenhaber_bracket(f: Cochain, g: Cochain, arity_bound: int | None = None) -> Cochain:
    if arity_bound is not None and (f.arity or 0) + (g.arity or 0) - 1 > arity_bound:
        raise ArityOverflow(f"bracket of arities {f.arity}, {g.arity} exceeds {arity_bound}")
    return bracket(f, g)


def random_cochain(a: DgAlgebra, arity: int, sdeg: int, rng: random.Random, nnz: int = 4,
                   values=(-2, -1, 1, 2, 3)) -> Cochain:
    """A sparse random homogeneous cochain (deterministic given ``rng``)."""
    cands = []
    ideal = a.ideal
    for args in itertools.product(ideal, repeat=arity):
        ins = sum(a.degrees[i] + 1 for i in args)
        for k in range(a.dim):
            if a.degrees[k] + 1 - ins == sdeg:
                cands.append((args, k))
    if not cands:
        return Cochain(a, {}, sdeg, arity)
    pick = rng.sample(cands, min(nnz, len(cands)))
    t: dict = {}
    for args, k in pick:
        t.setdefault(args, {})[k] = Fraction(rng.choice(values))
    return Cochain(a, t, sdeg, arity)


# ---------------------------------------------------------------------------
# the cochain complex


class HochschildCochains:
    """Normalized cochains of arity <= ``trunc`` with the Hochschild differential."""

    def __init__(self, algebra: DgAlgebra, trunc: int, complex_: Complex, basis: dict,
                 certified: Window | None):
        self.algebra = algebra
        self.trunc = trunc
        self.complex = complex_
        self.basis = basis  # degree -> list of (args, out)
        self.certified = certified

    def cochain(self, coeffs: Mapping) -> Cochain:
        """Cochain from ``{(args, out): coeff}``."""
        t: dict = {}
        for (args, k), c in coeffs.items():
            t.setdefault(tuple(args), {})[k] = c
        return Cochain(self.algebra, t)

    def homology(self, w: Window | None = None):
        from .core import homology_dims
        w = w or self.certified
        if self.certified is not None:
            ww = w.intersect(self.certified)
            if ww is None or ww != w:
                raise TruncationInsufficient(f"cochain homology certified only on {self.certified}",
                                             certified=self.certified)
        return homology_dims(self.complex, w)


def _cochain_basis(a: DgAlgebra, arity_bound: int) -> dict:
    if not a.is_finite:
        raise TruncationInsufficient("cochains need a finite-dimensional algebra")
    by_deg: dict = {}
    for p in range(arity_bound + 1):
        for args in itertools.product(a.ideal, repeat=p):
            ins = sum(a.degrees[i] + 1 for i in args)
            for k in range(a.dim):
                sdeg = a.degrees[k] + 1 - ins
                by_deg.setdefault(sdeg - 1, []).append((args, k))
    return by_deg


def hochschild_cochains(a: DgAlgebra, arity_bound: int) -> HochschildCochains:
    """Cochain complex Hom(A_bar^{(x)p}, A), p <= arity_bound, homological grading."""
    basis = _cochain_basis(a, arity_bound)
    space = GradedSpace(basis, label=lambda key: f"{key[0]}->{key[1]}")
    mc = maurer_cartan(a)
    labels = a.labels

    def dfn(key):
        args, k = key
        f = Cochain(a, {args: {k: 1}})
        out = {}
        for args2, outs in delta(f, mc).table.items():
            if len(args2) > arity_bound:
                continue
            for k2, c in outs.items():
                out[(args2, k2)] = c
        return out

    dmap = GradedMap.from_function(space, space, -1, dfn)
    cplx = Complex(space, dmap)
    certified = _cochain_certified(a, arity_bound, basis)
    # arity truncation is a quotient complex: exact where arity > bound is absent
    cplx.known_lo = certified.lo - 1 if certified else None
    return HochschildCochains(a, arity_bound, cplx, basis, certified)


def _cochain_certified(a: DgAlgebra, N: int, basis: dict) -> Window | None:
    ideal_deg = [a.degrees[i] for i in a.ideal]
    if not ideal_deg:
        ds = list(basis)
        return Window(min(ds), max(ds) + 1)
    m1 = min(ideal_deg)
    if m1 + 1 <= 0:
        return None
    top_out = max(a.degrees)
    # arity p > N cochains live in degrees <= top_out - p (m1 + 1)
    first_bad = top_out - (N + 1) * (m1 + 1)
    lo = first_bad + 2
    hi = max(basis) + 1 if basis else lo
    return Window(lo, max(lo, hi))
