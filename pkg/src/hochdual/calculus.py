"""Chain-level calculus: cap product, Lie derivative and their identities.

The operators act on words of normalized Hochschild chains (see
``hochschild.WordOps``).  ``calculus_identities`` evaluates the whole
identity suite exactly on all words up to a length bound; each identity is
stated in the graded-commutator form recorded in docs/signs.md.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .cochains import (Cochain, HomAlgError, NotCocycle, bracket, cup, delta, maurer_cartan,
                       mult_cochain, random_cochain, unit_cochain)
from .dg import DgAlgebra
from .hochschild import WordEnumerator, WordOps, classical_boundary, _num
from .signs import koszul, parity

WordFn = Callable[[tuple], dict]


def apply_op(fn: WordFn, vec: Mapping) -> dict:
    out: dict = {}
    for w, c in vec.items():
        for k, v in fn(w).items():
            z = out.get(k, 0) + c * v
            if z:
                out[k] = z
            else:
                out.pop(k, None)
    return out


def commutator(f: WordFn, g: WordFn, df: int, dg: int) -> WordFn:
    """Graded commutator fg - (-1)^{df dg} gf."""
    s = koszul(df, dg)

    def h(w):
        out = apply_op(f, g(w))
        for k, v in apply_op(g, f(w)).items():
            z = out.get(k, 0) - s * v
            if z:
                out[k] = z
            else:
                out.pop(k, None)
        return out

    return h


def combine(*terms: tuple) -> WordFn:
    """Linear combination of word operators given as (coeff, fn)."""
    def h(w):
        out: dict = {}
        for c, fn in terms:
            for k, v in fn(w).items():
                z = out.get(k, 0) + c * v
                if z:
                    out[k] = z
                else:
                    out.pop(k, None)
        return out

    return h


def first_failure(lhs: WordFn, rhs: WordFn, words: Iterable[tuple]):
    for w in words:
        if lhs(w) != rhs(w):
            return w
    return None


class CalculusAction:
    """Cap product and Lie derivative of cochains on chains of ``algebra``."""

    def __init__(self, algebra: DgAlgebra):
        self.algebra = algebra
        self.ops = WordOps(algebra)

    def cap(self, f: Cochain, chain: Mapping | None = None):
        fn = lambda w: self.ops.contraction(f, w)
        return fn if chain is None else apply_op(fn, chain)

    def lie_derivative(self, f: Cochain, chain: Mapping | None = None):
        fn = lambda w: self.ops.insertion(f, w)
        return fn if chain is None else apply_op(fn, chain)

    def homotopy(self, f: Cochain):
        return lambda w: self.ops.cartan_homotopy(f, w)


@dataclass
class IdentityResult:
    name: str
    ok: bool
    checked: int
    witness: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f" first failure at {self.witness}" if self.witness else ""
        return f"{tag} {self.name} ({self.checked} checks){extra}"


def _sdegs(a: DgAlgebra, arity: int) -> list[int]:
    degs = set()
    for args in itertools.product(a.ideal, repeat=arity):
        ins = sum(a.degrees[i] + 1 for i in args)
        for k in range(a.dim):
            degs.add(a.degrees[k] + 1 - ins)
    return sorted(degs)


def _rand(a, rng, arity, nnz):
    degs = _sdegs(a, arity)
    if not degs:
        return Cochain(a, {}, 0, arity)
    return random_cochain(a, arity, rng.choice(degs), rng, nnz)


def words_up_to(a: DgAlgebra, max_letters: int) -> list[tuple]:
    """All normalized chain words with at most ``max_letters`` bar letters."""
    en = WordEnumerator(a)
    if en.sign < 0:
        raise HomAlgError("word listing by length needs a connective algebra")
    out = []
    for w0 in range(a.dim):
        out.append((w0,))
    frontier = [(w0,) for w0 in range(a.dim)]
    for _ in range(max_letters):
        frontier = [w + (x,) for w in frontier for x in a.ideal]
        out.extend(frontier)
    return out


def calculus_identities(a: DgAlgebra, bound: int = 4, seed: int = 0, trials: int = 2,
                        nnz: int = 6) -> list[IdentityResult]:
    """The full identity suite for ``a`` with cochain arity and word length <= bound."""
    rng = random.Random(seed)
    res: list[IdentityResult] = []
    ops = WordOps(a)
    words = words_up_to(a, bound)
    short = [w for w in words if len(w) <= bound]        # room for a degree +1 operator
    mc = maurer_cartan(a)
    one = unit_cochain(a)

    def record(name, pairs):
        n = 0
        for lhs, rhs, wl in pairs:
            bad = first_failure(lhs, rhs, wl)
            n += len(wl)
            if bad is not None:
                res.append(IdentityResult(name, False, n, a.labels and _wstr(a, bad)))
                return
        res.append(IdentityResult(name, True, n))

    def record_cochain(name, items):
        n = 0
        for c in items:
            n += 1
            if not c.is_zero():
                res.append(IdentityResult(name, False, n, repr(c)))
                return
        res.append(IdentityResult(name, True, n))

    # cochain-level identities
    from .cochains import _cochain_basis
    basis = _cochain_basis(a, max(bound - 2, 0))
    record_cochain("delta^2 = 0 on basis cochains",
                   (delta(delta(Cochain(a, {args: {k: 1}}), mc), mc)
                    for keys in basis.values() for args, k in keys))
    record_cochain("[m, m] = 0", [bracket(mc, mc)])

    def rand_pair(max_sum):
        p = rng.randint(0, max_sum)
        return _rand(a, rng, p, nnz)

    cups, units, leib, anti, jac = [], [], [], [], []
    for _ in range(trials):
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        r = rng.randint(0, max(0, bound - p - q))
        f, g, h = _rand(a, rng, p, nnz), _rand(a, rng, q, nnz), _rand(a, rng, r, nnz)
        cups.append(cup(cup(f, g), h) - cup(f, cup(g, h)))
        units.append(cup(one, f) - f)
        units.append(cup(f, one) - f)
        if p + q + 1 <= bound:
            leib.append(delta(cup(f, g), mc) - cup(delta(f, mc), g)
                        - cup(f, delta(g, mc)).scale(parity(f.degree)))
        anti.append(bracket(f, g) + bracket(g, f).scale(koszul(f.sdeg, g.sdeg)))
        f, g, h = (_rand(a, rng, rng.randint(1, 2), nnz) for _ in range(3))
        jac.append(bracket(f, bracket(g, h)) - bracket(bracket(f, g), h)
                   - bracket(g, bracket(f, h)).scale(koszul(f.sdeg, g.sdeg)))
    record_cochain("cup associativity", cups)
    record_cochain("cup unit", units)
    record_cochain("delta derivation of cup", leib)
    record_cochain("bracket antisymmetry", anti)
    record_cochain("bracket Jacobi", jac)

    # operator identities on chains
    b = ops.b
    B = ops.B
    ll, lb, bi, bl, cartan = [], [], [], [], []
    for _ in range(trials):
        f = _rand(a, rng, rng.randint(1, 2), nnz)
        g = _rand(a, rng, rng.randint(1, 2), nnz)
        Lf = lambda w, f=f: ops.insertion(f, w)
        Lg = lambda w, g=g: ops.insertion(g, w)
        fg = bracket(f, g)
        ll.append((commutator(Lf, Lg, f.sdeg, g.sdeg), lambda w, fg=fg: ops.insertion(fg, w), words))
        lb.append((commutator(B, Lf, 1, f.sdeg), lambda w: {}, short))
        df = delta(f, mc)
        i_f = lambda w, f=f: ops.contraction(f, w)
        i_df = lambda w, df=df: ops.contraction(df, w)
        bi.append((commutator(b, i_f, -1, f.degree), combine((-1, i_df)), words))
        bl.append((commutator(b, Lf, -1, f.sdeg), lambda w, df=df: ops.insertion(df, w), words))
        S = lambda w, f=f: ops.cartan_homotopy(f, w)
        Sd = lambda w, df=df: ops.cartan_homotopy(df, w)
        cartan.append((combine((1, commutator(B, i_f, 1, f.degree)), (1, Lf)),
                       combine((1, commutator(b, S, -1, f.sdeg + 1)), (1, Sd)), short))
    record("[L_f, L_g] = L_[f,g]", ll)
    record("[B, L_f] = 0", lb)
    record("[b, iota_f] = -iota_(delta f)", bi)
    record("[b, L_f] = L_(delta f)", bl)
    record("[B, iota_f] + L_f = [b, S_f] + S_(delta f)", cartan)
    record("iota_1 = id", [(lambda w: ops.contraction(one, w), lambda w: {w: 1}, words)])
    return res


def _wstr(a, w):
    L = a.labels
    return L[w[0]] + "[" + "|".join(L[i] for i in w[1:]) + "]"


# ---------------------------------------------------------------------------
# first-order deformations


def deformation_table(mu: Cochain) -> dict:
    """Unshifted product mu(x, y) = (-1)^{|x|} mu~(sx, sy) as a word-op table."""
    a = mu.algebra
    out = {}
    for args, v in mu.table.items():
        if len(args) != 2:
            continue
        s = parity(a.degrees[args[0]])
        out[args] = [(k, _num(s * c)) for k, c in v.items()]
    return out


def deformed_differential_check(a: DgAlgebra, mu: Cochain, max_letters: int = 3) -> bool:
    """Whether the boundary of m + t mu over k[t]/t^2 is b + t L_mu with B unchanged.

    The t-linear part of the deformed boundary is computed from the deformed
    product directly (classical face formula for ungraded algebras), and
    compared on every word with at most ``max_letters`` letters to the
    insertion action of mu.  Also checks that (b + t L_mu, B) is a mixed
    complex over k[t]/t^2.
    """
    if mu.is_zero():
        return True
    if mu.arities() != [2] or mu.sdeg != -1:
        raise NotCocycle("a first-order deformation is a degree-0 product (arity-2 cochain)")
    mc = maurer_cartan(a)
    dmu = delta(mu, mc)
    if not dmu.is_zero():
        raise NotCocycle("mu is not a Hochschild cocycle")
    ops = WordOps(a)
    table = deformation_table(mu)
    ungraded = all(d == 0 for d in a.degrees) and not a.diff
    if ungraded:
        def mu_mul(x, y):
            return {k: c for k, c in table.get((x, y), [])}
        b1 = lambda w: classical_boundary(a, w, True, mu_mul)
    else:
        b1 = lambda w: ops.b(w, True, table, with_d=False)
    L = lambda w: ops.insertion(mu, w)
    words = words_up_to(a, max_letters)
    if first_failure(b1, L, words) is not None:
        return False
    # (b0 + t b1)^2 = 0 mod t^2 and (b0 + t b1) B + B (b0 + t b1) = 0
    b0 = ops.b
    if first_failure(combine((1, lambda w: apply_op(b0, b1(w))), (1, lambda w: apply_op(b1, b0(w)))),
                     lambda w: {}, words) is not None:
        return False
    if first_failure(combine((1, lambda w: apply_op(b1, ops.B(w))), (1, lambda w: apply_op(ops.B, b1(w)))),
                     lambda w: {}, [w for w in words if len(w) <= max_letters]) is not None:
        return False
    return True
