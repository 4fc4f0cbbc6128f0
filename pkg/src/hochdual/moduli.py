"""Tangent-level deformation theory: tangent spaces, cyclic deformations of
chains, base change along the augmentation, and the first-order comparison
of the two ways of deforming Hochschild chains.

Everything is first order: the base is ``k[t]/t^2`` and a deformation of a
complex ``C`` is ``C + tC`` with differential ``d0 + t d1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .calculus import deformation_table
from .cochains import (ArityOverflow, Cochain, NotCocycle, _cochain_basis, bracket, delta,
                       maurer_cartan)
from .core import (Complex, DimTable, GradedMap, GradedSpace, HomAlgError, MixedComplex,
                   TruncationInsufficient, Window, homology_dims, induced_rank)
from .dg import DgAlgebra, DgLieAlgebra, NotCommutative, _add_into, tensor_dga
from .hochschild import (WordOps, circle_tensor_commutative, circle_words, classical_boundary, cyclic_variants,
                         hochschild_chains)
from .linalg import Echelon, SparseMatrix
from .signs import koszul, parity


# ---------------------------------------------------------------------------
# tangent spaces


@dataclass
class TangentReport:
    lie: DgLieAlgebra
    d: int
    dimension: int

    def line(self) -> str:
        return f"T_{self.d}({self.lie.name or 'L'}) = {self.dimension}"


def tangent_space(l: DgLieAlgebra, d: int, w: Window | None = None) -> TangentReport:
    """dim H_{-d-1}(l): maps from the free Lie algebra on one generator of degree -d-1."""
    n = -d - 1
    if w is not None and n not in w:
        raise TruncationInsufficient(f"degree {n} lies outside {w}", certified=w)
    dims = homology_dims(l.complex(), Window(n, n))
    return TangentReport(l, d, dims[n])


def gerstenhaber_lie(a: DgAlgebra, arity_bound: int) -> DgLieAlgebra:
    """Normalized cochains shifted by one, with the Gerstenhaber bracket.

    Degree of a basis cochain is its shifted degree; brackets of total
    arity above ``arity_bound`` are dropped, so the result is a truncation
    (exact on the degrees certified for the cochain complex).
    """
    by_deg = _cochain_basis(a, arity_bound)
    keys = [k for n in sorted(by_deg) for k in by_deg[n]]
    index = {k: i for i, k in enumerate(keys)}
    sdeg = [n + 1 for n in sorted(by_deg) for _ in by_deg[n]]
    cochains = [Cochain(a, {args: {out: 1}}, sdeg[i], len(args)) for i, (args, out) in enumerate(keys)]
    mc = maurer_cartan(a)
    L = a.labels
    basis = [(f"({','.join(L[x] for x in args)})->{L[out]}", sdeg[i]) for i, (args, out) in enumerate(keys)]
    br = {}
    for i, f in enumerate(cochains):
        for j, g in enumerate(cochains):
            if len(keys[i][0]) + len(keys[j][0]) - 1 > arity_bound:
                continue
            v = bracket(f, g)
            vec = {index[(args, out)]: c for args, outs in v.table.items() for out, c in outs.items()
                   if len(args) <= arity_bound}
            if vec:
                br[(i, j)] = vec
    diff = {}
    for i, f in enumerate(cochains):
        v = delta(f, mc)
        vec = {index[(args, out)]: c for args, outs in v.table.items() for out, c in outs.items()
               if len(args) <= arity_bound}
        if vec:
            diff[i] = vec
    return DgLieAlgebra(basis, br, diff, name=f"G({a.name})")


# ---------------------------------------------------------------------------
# first-order deformations of chains


def _check_cocycle(a: DgAlgebra, mu: Cochain):
    if mu.is_zero():
        return
    if mu.arities() != [2] or mu.sdeg != -1:
        raise NotCocycle("a first-order deformation is a degree-0 product (arity-2 cochain)")
    if not delta(mu, maurer_cartan(a)).is_zero():
        raise NotCocycle("mu is not a Hochschild cocycle")


def _over_dual_numbers(space: GradedSpace, d0: GradedMap, d1: GradedMap | None, B: GradedMap,
                       known: tuple, degree_range: list[int]) -> MixedComplex:
    """Mixed complex (C + tC, d0 + t d1, B + tB), keys (power of t, key)."""
    comps = {n: [(e, k) for e in (0, 1) for k in space.basis(n)] for n in space.degrees()}
    big = GradedSpace(comps, label=lambda ek: ("t*" if ek[0] else "") + space._label(ek[1]))

    _deg_of = {k: n for n in space.degrees() for k in space.basis(n)}

    def dfn(ek):
        e, k = ek
        n = _deg_of[k]
        out = {(e, y): c for y, c in d0.apply(n, {k: 1}).items()}
        if d1 is not None and e == 0:
            for y, c in d1.apply(n, {k: 1}).items():
                _add_into(out, {(1, y): c})
        return out

    def Bfn(ek):
        e, k = ek
        return {(e, y): c for y, c in B.apply(_deg_of[k], {k: 1}).items()}

    dd = GradedMap.from_function(big, big, -1, dfn, degree_range)
    BB = GradedMap.from_function(big, big, 1, Bfn, [n for n in degree_range if (n + 1) in comps])
    cx = Complex(big, dd, known_lo=known[0], known_hi=known[1])
    return MixedComplex(cx, BB)


def t_map(m: MixedComplex) -> GradedMap:
    """Multiplication by t on a complex over k[t]/t^2 with keys (e, key)."""
    sp = m.space
    return GradedMap.from_function(sp, sp, 0, lambda ek: {} if ek[0] else {(1, ek[1]): 1})


@dataclass
class FirstOrderDeformation:
    algebra: DgAlgebra
    cocycle: Cochain
    deformed_chains: MixedComplex
    window: Window

    def check(self) -> dict:
        return self.deformed_chains.check_axioms()


def cyclic_deformation_chains(a: DgAlgebra, mu: Cochain, w: Window = Window(0, 3)) -> FirstOrderDeformation:
    """(C(a) + tC(a), b + t L_mu, B), with L_mu the insertion action of mu."""
    _check_cocycle(a, mu)
    hc = hochschild_chains(a, w)
    c = hc.complex
    d1 = None if mu.is_zero() else hc.lie_derivative(mu)
    degs = hc._op_degrees(-1)
    m = _over_dual_numbers(hc.space, c.d, d1, hc.mixed.B, (c.known_lo, c.known_hi), degs)
    return FirstOrderDeformation(a, mu, m, w)


@dataclass
class TModuleTable:
    """Per degree: total dimension over k and rank of t on homology."""
    dims: DimTable
    t_ranks: dict[int, int]

    def __eq__(self, other):
        return isinstance(other, TModuleTable) and self.dims.same_dims(other.dims) and self.t_ranks == other.t_ranks


def t_module(m: MixedComplex, w: Window) -> TModuleTable:
    c = m.underlying
    dims = homology_dims(c, w)
    t = t_map(m)
    ranks = {n: induced_rank(t, c, c, n) for n in w}
    return TModuleTable(dims, ranks)


def equivariant_restriction(fd: FirstOrderDeformation, w: Window | None = None) -> DimTable:
    """Homology dims of the deformed chains, degreewise over k."""
    return homology_dims(fd.deformed_chains.underlying, w or fd.window)


def deformed_algebra_chains(a: DgAlgebra, mu: Cochain, w: Window) -> MixedComplex:
    """Chains of the deformed algebra relative to k[t]/t^2, computed from the
    deformed product directly.

    For ungraded algebras the textbook face formula is used with the product
    ``m + t mu``; the boundary is linear in the product, so its t-part is the
    face formula of ``mu`` alone.  Graded algebras use the Koszul-signed
    interior merges with the product table replaced by ``mu``.
    """
    _check_cocycle(a, mu)
    hc = hochschild_chains(a, w)
    c = hc.complex
    d1 = None
    if not mu.is_zero():
        table = deformation_table(mu)
        ungraded = all(x == 0 for x in a.degrees) and not a.diff
        if ungraded:
            def mu_mul(x, y):
                return {k: v for k, v in table.get((x, y), [])}
            fn = lambda word: classical_boundary(a, word, True, mu_mul)
        else:
            ops = WordOps(a)
            fn = lambda word: ops.b(word, True, table, with_d=False)
        d1 = hc.operator(fn, -1)
    return _over_dual_numbers(hc.space, c.d, d1, hc.mixed.B, (c.known_lo, c.known_hi), hc._op_degrees(-1))


@dataclass
class SquareReport:
    ok: bool
    upper: TModuleTable
    lower: TModuleTable
    upper_cyclic: DimTable | None
    lower_cyclic: DimTable | None
    axioms_ok: bool

    def line(self) -> str:
        return f"upper {self.upper.dims} t-ranks {self.upper.t_ranks}; lower {self.lower.dims} " \
               f"t-ranks {self.lower.t_ranks}"


def tangent_square_report(a: DgAlgebra, mu: Cochain, w: Window, u_bound: int = 2) -> SquareReport:
    upper_m = deformed_algebra_chains(a, mu, w)
    fd = cyclic_deformation_chains(a, mu, w)
    lower_m = fd.deformed_chains
    ax = [upper_m.check_axioms(), lower_m.check_axioms()]
    axioms_ok = all(not v for r in ax for v in r.values())
    up, lo = t_module(upper_m, w), t_module(lower_m, w)
    uc = cyclic_variants(upper_m, u_bound, w)["cyclic"]
    lc = cyclic_variants(lower_m, u_bound, w)["cyclic"]
    same_cyc = (uc is None and lc is None) or (uc is not None and lc is not None and uc.same_dims(lc)
                                                and uc.valid_window == lc.valid_window)
    return SquareReport(axioms_ok and up == lo and same_cyc, up, lo, uc, lc, axioms_ok)


def tangent_square_check(a: DgAlgebra, mu: Cochain, w: Window) -> bool:
    """Whether deforming the algebra and deforming its chains by L_mu agree to first order."""
    return tangent_square_report(a, mu, w).ok


# ---------------------------------------------------------------------------
# base change along the augmentation of the base


def quotient_by_base_ideal(a: DgAlgebra, r: DgAlgebra, f: Mapping[int, Mapping]) -> DgAlgebra:
    """The underived base change a (x)_r k = a / a f(I_r), for central f."""
    ech = Echelon()
    for x in r.ideal:
        fx = f.get(x, {})
        for y in range(a.dim):
            v = a.mulvec({y: 1}, fx)
            if v:
                ech.add(v)
    piv = ech.pivots()
    keep = [i for i in range(a.dim) if i not in piv]
    if a.unit in piv:
        raise HomAlgError("base ideal generates the unit ideal")
    pos = {i: n for n, i in enumerate(keep)}

    def proj(v):
        return {pos[k]: c for k, c in ech.reduce(v).items()}

    basis = [(a.labels[i], a.degrees[i]) for i in keep]
    mult = {}
    for i in keep:
        for j in keep:
            if i == a.unit or j == a.unit:
                continue
            v = proj(a.mul(i, j))
            if v:
                mult[(pos[i], pos[j])] = v
    diff = {}
    for i in keep:
        v = proj(a.diff.get(i, {}))
        if v:
            diff[pos[i]] = v
    return DgAlgebra(basis, mult, pos[a.unit], diff, aug=a.augmented, commutative=a.commutative,
                     name=f"{a.name}/({r.name})", trunc=a.trunc)


def base_extension(r: DgAlgebra, b: DgAlgebra) -> tuple[DgAlgebra, dict]:
    """r (x) b with the structure map r -> r (x) b."""
    a = tensor_dga(r, b)
    f = {i: {i * b.dim + b.unit: 1} for i in range(r.dim)}
    return a, f


@dataclass
class BaseChangeReport:
    ok: bool
    derived: DimTable
    underived: DimTable
    window: Window


def relative_tensor_complex(a: DgAlgebra, r: DgAlgebra, f: Mapping[int, Mapping], top: int) -> Complex:
    """Two-sided bar B(C(a), C(r), k) through degree ``top``.

    C(r) acts on C(a) through the letterwise image of f and the shuffle
    product; elements ``m[c1|...|cn]`` with ``ci`` in the augmentation ideal
    of C(r).  Exact through degree top - 1.
    """
    if not (a.commutative and r.commutative):
        raise NotCommutative("the module structure uses shuffle products of commutative algebras")
    N = top
    ca, _ = circle_tensor_commutative(a, Window(0, N))
    cr, _ = circle_tensor_commutative(r, Window(0, N))
    aw, rw = circle_words(a, N), circle_words(r, N)
    aindex = {x: i for i, x in enumerate(aw)}
    # C(r) -> C(a): apply f to every letter (multilinear expansion)
    fmap: dict[int, dict] = {}
    for j, x in enumerate(rw):
        out: dict = {}
        for combo in itertools.product(*[list(f.get(i, {}).items()) for i in x]):
            word = tuple(k for k, _ in combo)
            if any(k == a.unit for k in word[1:]):
                continue
            c = 1
            for _, e in combo:
                c *= e
            _add_into(out, {aindex[word]: c})
        fmap[j] = out
    ideal = cr.ideal
    sdr = [d + 1 for d in cr.degrees]
    degm = ca.degrees
    comps: dict[int, list] = {}

    def grow(prefix, deg):
        yield prefix, deg
        for c in ideal:
            nd = deg + sdr[c]
            if nd <= N:
                yield from grow(prefix + (c,), nd)

    for m in range(ca.dim):
        if degm[m] > N:
            continue
        for tail, dg in grow((), degm[m]):
            comps.setdefault(dg, []).append((m,) + tail)
    space = GradedSpace(comps, label=lambda w: ca.labels[w[0]] + "[" + "|".join(cr.labels[i] for i in w[1:]) + "]")

    def act(m, c):
        return ca.mulvec({m: 1}, fmap[c])

    def d(w):
        m, cs = w[0], w[1:]
        out: dict = {}
        for k, c in ca.diff.get(m, {}).items():
            _add_into(out, {(k,) + cs: c})
        s0 = -parity(degm[m])
        if cs:
            for k, c in act(m, cs[0]).items():
                _add_into(out, {(k,) + cs[1:]: s0 * c})
        pre = degm[m]
        n = len(cs)
        for i in range(n):
            x = cs[i]
            s = parity(pre)
            for k, c in cr.diff.get(x, {}).items():
                if k != cr.unit:
                    _add_into(out, {(m,) + cs[:i] + (k,) + cs[i + 1:]: -s * c})
            if i + 1 < n:
                s2 = s * parity(cr.degrees[x])
                for k, c in cr.mul(x, cs[i + 1]).items():
                    if k != cr.unit:
                        _add_into(out, {(m,) + cs[:i] + (k,) + cs[i + 2:]: s2 * c})
            pre += sdr[x]
        return {k: c for k, c in out.items() if k in space.index_map(_dg(k))}

    def _dg(k):
        return degm[k[0]] + sum(sdr[i] for i in k[1:])

    dmap = GradedMap.from_function(space, space, -1, d, [n for n in comps if n >= 1])
    return Complex(space, dmap, known_hi=N)


def base_change_report(a: DgAlgebra, r: DgAlgebra, f: Mapping[int, Mapping] | None = None,
                       w: Window = Window(0, 3)) -> BaseChangeReport:
    if f is None:
        if a is not r:
            raise HomAlgError("a structure map r -> a is required")
        f = {i: {i: 1} for i in range(r.dim)}
    if w.lo < 0:
        raise TruncationInsufficient("base change is computed for connective algebras", certified=None)
    cx = relative_tensor_complex(a, r, f, w.hi + 1)
    derived = homology_dims(cx, w)
    q = quotient_by_base_ideal(a, r, f)
    underived = hochschild_chains(q, w).homology(w)
    return BaseChangeReport(derived.same_dims(underived, w), derived, underived, w)


def base_change_check(a: DgAlgebra, r: DgAlgebra, f: Mapping[int, Mapping] | None = None,
                      w: Window = Window(0, 3)) -> bool:
    """Whether C(a) (x)^L_{C(r)} k and C(a (x)_r k) have the same homology on w."""
    return base_change_report(a, r, f, w).ok
