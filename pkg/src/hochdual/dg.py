"""Finite-type dg algebras and dg Lie algebras given by structure constants.

Basis elements are addressed by integer index; structure constants are
sparse dicts ``{(i, j): {k: Fraction}}``.  A truncated object carries a
window ``trunc``: it agrees with the untruncated algebra on those degrees
and products landing outside are dropped.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Complex, GradedMap, GradedSpace, HomAlgError, Window
from .signs import koszul, parity


class NotConnective(HomAlgError):
    pass


class BadParameter(HomAlgError):
    pass


class NoAugmentation(HomAlgError):
    pass


class NotCommutative(HomAlgError):
    pass


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(self.witness)
        return f"{self.axiom} at ({w})" + (f": {self.detail}" if self.detail else "")


def _add_into(acc: dict, vec: Mapping, scale=1):
    for k, c in vec.items():
        z = acc.get(k, 0) + scale * c
        if z:
            acc[k] = z
        else:
            acc.pop(k, None)
    return acc


def _clean(vec: Mapping) -> dict:
    return {k: Fraction(c) for k, c in vec.items() if c}


class _Graded:
    """Shared basis bookkeeping for algebras and Lie algebras."""

    def _init_basis(self, basis: Sequence[tuple[str, int]]):
        self.labels = [str(b[0]) for b in basis]
        self.degrees = [int(b[1]) for b in basis]
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        self.index = {l: i for i, l in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def in_range(self, n: int) -> bool:
        return self.trunc is None or n in self.trunc

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return dict(sorted(out.items()))

    def dvec(self, vec: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for i, c in vec.items():
            _add_into(out, self.diff.get(i, {}), c)
        return out

    def complex(self) -> Complex:
        comps = {n: [self.labels[i] for i in idx] for n, idx in self.by_degree().items()}
        space = GradedSpace(comps)

        def d(label):
            i = self.index[label]
            return {self.labels[k]: c for k, c in self.diff.get(i, {}).items()}

        dmap = GradedMap.from_function(space, space, -1, d)
        lo = hi = None
        if self.trunc is not None:
            lo, hi = self.trunc_known()
        return Complex(space, dmap, known_lo=lo, known_hi=hi)

    def trunc_known(self):
        # a truncation only cuts the unbounded side; the bounded side is complete
        lo, hi = self.trunc.lo, self.trunc.hi
        if all(d <= 0 for d in self.degrees) and all(d <= hi for d in self.degrees):
            hi = None
        if all(d >= 0 for d in self.degrees) and all(d >= lo for d in self.degrees):
            lo = None
        return lo, hi

    def vec_str(self, vec: Mapping) -> str:
        if not vec:
            return "0"
        return " + ".join(f"{c}*{self.labels[k]}" for k, c in sorted(vec.items()))


class DgAlgebra(_Graded):
    """Associative unital dg algebra with optional augmentation.

    The unit must be a basis element.  If an augmentation is given it must
    be adapted to the basis: it sends the unit to 1 and every other basis
    element to 0, so the augmentation ideal is spanned by the non-unit basis.
    """

    def __init__(self, basis, mult, unit, diff=None, aug: bool = False,
                 commutative: bool = False, name: str = "", trunc: Window | None = None,
                 coconnective_trunc: bool | None = None):
        self._init_basis(basis)
        self.unit = unit if isinstance(unit, int) else self.index[unit]
        self.mult: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), v in mult.items():
            v = _clean(v)
            if v:
                self.mult[(i, j)] = v
        self.diff: dict[int, dict[int, Fraction]] = {}
        for i, v in (diff or {}).items():
            v = _clean(v)
            if v:
                self.diff[i] = v
        self.augmented = bool(aug)
        self.commutative = bool(commutative)
        self.name = name
        self.trunc = trunc

    @property
    def ideal(self) -> list[int]:
        """Indices spanning the complement of the unit (augmentation ideal if augmented)."""
        return [i for i in range(self.dim) if i != self.unit]

    def mul(self, i: int, j: int) -> dict:
        if i == self.unit:
            return {j: Fraction(1)}
        if j == self.unit:
            return {i: Fraction(1)}
        return self.mult.get((i, j), {})

    def mulvec(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                _add_into(out, self.mul(i, j), a * b)
        return out

    def basis_vec(self, label) -> dict:
        return {self.index[label]: Fraction(1)}

    @property
    def is_finite(self) -> bool:
        return self.trunc is None

    def connectivity(self) -> tuple[int, int]:
        """(min, max) degree of the non-unit part."""
        ds = [self.degrees[i] for i in self.ideal]
        if not ds:
            return (0, 0)
        return (min(ds), max(ds))

    def __repr__(self):
        return f"DgAlgebra({self.name or '?'}, dims={self.dims()})"


class DgLieAlgebra(_Graded):
    """dg Lie algebra with degree-0 bracket given by structure constants."""

    def __init__(self, basis, bracket, diff=None, name: str = "", trunc: Window | None = None):
        self._init_basis(basis)
        self.bracket: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), v in bracket.items():
            v = _clean(v)
            if v:
                self.bracket[(i, j)] = v
        self.diff = {i: _clean(v) for i, v in (diff or {}).items() if _clean(v)}
        self.name = name
        self.trunc = trunc

    def br(self, i: int, j: int) -> dict:
        return self.bracket.get((i, j), {})

    def brvec(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                _add_into(out, self.br(i, j), a * b)
        return out

    def is_abelian(self) -> bool:
        return not self.bracket

    def __repr__(self):
        return f"DgLieAlgebra({self.name or '?'}, dims={self.dims()})"


# ---------------------------------------------------------------------------
# validation


def _deg_ok(obj, *degs) -> bool:
    return all(obj.in_range(d) for d in degs)


def _check_homogeneous(obj, table, name, shift, report):
    for key, vec in table.items():
        keys = key if isinstance(key, tuple) else (key,)
        expect = sum(obj.degrees[i] for i in keys) + shift
        for k in vec:
            if obj.degrees[k] != expect:
                report.append(Violation(f"{name}-degree", tuple(obj.labels[i] for i in keys),
                                        f"component {obj.labels[k]} has degree {obj.degrees[k]} != {expect}"))


def validate_dga(a: DgAlgebra) -> list[Violation]:
    """Every violated axiom with a witness; empty iff ``a`` is a valid dga."""
    report: list[Violation] = []
    L = a.labels
    deg = a.degrees
    _check_homogeneous(a, a.mult, "mult", 0, report)
    _check_homogeneous(a, a.diff, "diff", -1, report)
    for (i, j) in a.mult:
        if a.unit in (i, j):
            report.append(Violation("unit", (L[i], L[j]), "explicit product with the unit"))
    n = a.dim
    for x in range(n):
        if not _deg_ok(a, deg[x], deg[x] - 2):
            continue
        dd = a.dvec(a.dvec({x: 1}))
        if dd:
            report.append(Violation("d^2", (L[x],), a.vec_str(dd)))
    if a.diff.get(a.unit):
        report.append(Violation("d(1)", (L[a.unit],)))
    for x, y in itertools.product(range(n), repeat=2):
        if not _deg_ok(a, deg[x] + deg[y], deg[x] + deg[y] - 1):
            continue
        xy = a.mul(x, y)
        lhs = a.dvec(xy)
        rhs = a.mulvec(a.dvec({x: 1}), {y: 1})
        _add_into(rhs, a.mulvec({x: 1}, a.dvec({y: 1})), parity(deg[x]))
        if _add_into(dict(lhs), rhs, -1):
            report.append(Violation("leibniz", (L[x], L[y])))
        if a.commutative:
            yx = a.mul(y, x)
            if _add_into(dict(xy), yx, -koszul(deg[x], deg[y])):
                report.append(Violation("commutativity", (L[x], L[y])))
    for x, y, z in itertools.product(a.ideal, repeat=3):
        s = deg[x] + deg[y] + deg[z]
        if not _deg_ok(a, s, deg[x] + deg[y], deg[y] + deg[z]):
            continue
        lhs = a.mulvec(a.mul(x, y), {z: 1})
        rhs = a.mulvec({x: 1}, a.mul(y, z))
        if _add_into(dict(lhs), rhs, -1):
            report.append(Violation("associativity", (L[x], L[y], L[z])))
    if a.augmented:
        for (i, j), v in a.mult.items():
            if v.get(a.unit):
                report.append(Violation("augmentation", (L[i], L[j]), "ideal not closed"))
        for i, v in a.diff.items():
            if v.get(a.unit):
                report.append(Violation("augmentation", (L[i],), "d leaves the ideal"))
    return report


def validate_dgla(l: DgLieAlgebra) -> list[Violation]:
    report: list[Violation] = []
    L = l.labels
    deg = l.degrees
    _check_homogeneous(l, l.bracket, "bracket", 0, report)
    _check_homogeneous(l, l.diff, "diff", -1, report)
    n = l.dim
    for x in range(n):
        if _deg_ok(l, deg[x] - 2) and l.dvec(l.dvec({x: 1})):
            report.append(Violation("d^2", (L[x],)))
    for x, y in itertools.product(range(n), repeat=2):
        s = deg[x] + deg[y]
        if not _deg_ok(l, s, s - 1):
            continue
        if _add_into(dict(l.br(x, y)), l.br(y, x), koszul(deg[x], deg[y])):
            report.append(Violation("antisymmetry", (L[x], L[y])))
        lhs = l.dvec(l.br(x, y))
        rhs = l.brvec(l.dvec({x: 1}), {y: 1})
        _add_into(rhs, l.brvec({x: 1}, l.dvec({y: 1})), parity(deg[x]))
        if _add_into(dict(lhs), rhs, -1):
            report.append(Violation("leibniz", (L[x], L[y])))
    for x, y, z in itertools.product(range(n), repeat=3):
        s = deg[x] + deg[y] + deg[z]
        if not _deg_ok(l, s, deg[x] + deg[y], deg[y] + deg[z], deg[x] + deg[z]):
            continue
        # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        lhs = l.brvec({x: 1}, l.br(y, z))
        rhs = l.brvec(l.br(x, y), {z: 1})
        _add_into(rhs, l.brvec({y: 1}, l.br(x, z)), koszul(deg[x], deg[y]))
        if _add_into(dict(lhs), rhs, -1):
            report.append(Violation("jacobi", (L[x], L[y], L[z])))
    return report


# ---------------------------------------------------------------------------
# constructors


def ground_field(name="k") -> DgAlgebra:
    return DgAlgebra([("1", 0)], {}, 0, aug=True, commutative=True, name=name)


def square_zero(m: Complex, name: str = "") -> DgAlgebra:
    """Trivial square-zero extension k + M (augmented, commutative)."""
    if not m.complete:
        raise NotConnective("square_zero needs a complete (finite) complex")
    if any(n < 0 for n in m.space.degrees()):
        raise NotConnective("M must be connective")
    basis = [("1", 0)]
    pos = {}
    for n in m.space.degrees():
        for k in m.space.basis(n):
            pos[(n, k)] = len(basis)
            label = str(k)
            if label == "1":
                label = "m1"
            basis.append((label, n))
    diff = {}
    for n in m.space.degrees():
        for k in m.space.basis(n):
            img = m.d.apply(n, {k: 1})
            if img:
                diff[pos[(n, k)]] = {pos[(n - 1, t)]: c for t, c in img.items()}
    return DgAlgebra(basis, {}, 0, diff=diff, aug=True, commutative=True,
                     name=name or f"k+M{m.space.dims()}")


def truncated_polynomial(p: int, var: str = "x", degree: int = 0) -> DgAlgebra:
    """k[x]/(x^p) with x in the given (even) degree, augmentation x -> 0."""
    if p < 2:
        raise BadParameter("need p >= 2")
    if degree & 1:
        raise BadParameter("odd generators square to zero; use exterior()")
    basis = [("1", 0)] + [(f"{var}^{i}" if i > 1 else var, i * degree) for i in range(1, p)]
    mult = {}
    for i in range(1, p):
        for j in range(1, p):
            if i + j < p:
                mult[(i, j)] = {i + j: 1}
    return DgAlgebra(basis, mult, 0, aug=True, commutative=True, name=f"k[{var}]/{var}^{p}")


def dual_numbers() -> DgAlgebra:
    a = truncated_polynomial(2, var="e")
    a.name = "dual_numbers"
    return a


def exterior(degree: int, var: str = "y") -> DgAlgebra:
    """Free graded-commutative algebra on one odd generator: {1, y}."""
    if not degree & 1:
        raise BadParameter("exterior generator must have odd degree")
    return DgAlgebra([("1", 0), (var, degree)], {}, 0, aug=True, commutative=True, name=f"L({var})")


def polynomial(degree: int, top: int, var: str = "z") -> DgAlgebra:
    """k[z], |z| even, truncated to degrees with |.| <= |top| (connective or coconnective)."""
    if degree & 1 or degree == 0:
        raise BadParameter("polynomial generator needs even nonzero degree")
    n = abs(top) // abs(degree)
    basis = [("1", 0)] + [(f"{var}^{i}" if i > 1 else var, i * degree) for i in range(1, n + 1)]
    mult = {(i, j): {i + j: 1} for i in range(1, n + 1) for j in range(1, n + 1) if i + j <= n}
    trunc = Window(0, n * degree) if degree > 0 else Window(n * degree, 0)
    return DgAlgebra(basis, mult, 0, aug=True, commutative=True, name=f"k[{var}]", trunc=trunc)


def tensor_dga(a: DgAlgebra, b: DgAlgebra, name: str = "") -> DgAlgebra:
    """a (x) b with (x(x)y)(x'(x)y') = (-1)^{|y||x'|} xx' (x) yy'."""
    basis = []
    pos = {}
    for i in range(a.dim):
        for j in range(b.dim):
            if i == a.unit and j == b.unit:
                label = "1"
            elif j == b.unit:
                label = a.labels[i]
            elif i == a.unit:
                label = b.labels[j]
            else:
                label = f"{a.labels[i]}*{b.labels[j]}"
            pos[(i, j)] = len(basis)
            basis.append((label, a.degrees[i] + b.degrees[j]))
    if len({l for l, _ in basis}) != len(basis):
        basis = [(f"{a.labels[i]}(x){b.labels[j]}" if (i, j) != (a.unit, b.unit) else "1",
                  a.degrees[i] + b.degrees[j]) for i in range(a.dim) for j in range(b.dim)]
    unit = pos[(a.unit, b.unit)]
    mult = {}
    for (i, j), p in pos.items():
        for (k, l), q in pos.items():
            if p == unit or q == unit:
                continue
            s = koszul(b.degrees[j], a.degrees[k])
            out = {}
            for x, c in a.mul(i, k).items():
                for y, e in b.mul(j, l).items():
                    t = pos[(x, y)]
                    out[t] = out.get(t, 0) + s * c * e
            if any(out.values()):
                mult[(p, q)] = out
    diff = {}
    for (i, j), p in pos.items():
        out = {}
        for x, c in a.diff.get(i, {}).items():
            out[pos[(x, j)]] = out.get(pos[(x, j)], 0) + c
        s = parity(a.degrees[i])
        for y, c in b.diff.get(j, {}).items():
            out[pos[(i, y)]] = out.get(pos[(i, y)], 0) + s * c
        if out:
            diff[p] = out
    trunc = None
    if a.trunc is not None or b.trunc is not None:
        ta = a.trunc or Window(min(a.degrees), max(a.degrees))
        tb = b.trunc or Window(min(b.degrees), max(b.degrees))
        trunc = _tensor_trunc(ta, tb, a, b)
    out = DgAlgebra(basis, mult, unit, diff=diff, aug=a.augmented and b.augmented,
                    commutative=a.commutative and b.commutative,
                    name=name or f"{a.name}(x){b.name}", trunc=trunc)
    if trunc is not None:
        keep = [i for i, d in enumerate(out.degrees) if d in trunc]
        out = restrict_degrees(out, keep, trunc)
    return out


def _tensor_trunc(ta, tb, a, b):
    # exactness survives only where no factor can have been cut off
    if ta.lo >= 0 and tb.lo >= 0:
        hi = min(ta.hi if a.trunc else 10**9, tb.hi if b.trunc else 10**9)
        return Window(0, hi)
    if ta.hi <= 0 and tb.hi <= 0:
        lo = max(ta.lo if a.trunc else -10**9, tb.lo if b.trunc else -10**9)
        return Window(lo, 0)
    raise BadParameter("cannot tensor truncated algebras of mixed connectivity")


def restrict_degrees(a: DgAlgebra, keep: Iterable[int], trunc: Window) -> DgAlgebra:
    keep = sorted(set(keep) | {a.unit})
    new = {old: i for i, old in enumerate(keep)}
    basis = [(a.labels[i], a.degrees[i]) for i in keep]

    def conv(v):
        return {new[k]: c for k, c in v.items() if k in new}

    mult = {(new[i], new[j]): conv(v) for (i, j), v in a.mult.items() if i in new and j in new}
    diff = {new[i]: conv(v) for i, v in a.diff.items() if i in new}
    return DgAlgebra(basis, mult, new[a.unit], diff=diff, aug=a.augmented,
                     commutative=a.commutative, name=a.name, trunc=trunc)


def rebase_unit(labels_degrees, mult_fn, unit_vec: Mapping[int, Fraction], replace: int,
                unit_label="1", name="", diff=None) -> DgAlgebra:
    """Build an algebra whose i-th old basis vector is replaced by the unit.

    ``mult_fn(i, j)`` gives products in the old basis.
    """
    c_r = Fraction(unit_vec[replace])
    n = len(labels_degrees)

    def to_new(v):  # old coords -> new coords (new[replace] = unit)
        out = {k: Fraction(x) for k, x in v.items() if k != replace}
        x = Fraction(v.get(replace, 0))
        if x:
            # e_r = (u - sum_{i != r} c_i e_i) / c_r
            out[replace] = out.get(replace, 0) + x / c_r
            for i, ci in unit_vec.items():
                if i != replace:
                    out[i] = out.get(i, 0) - x * Fraction(ci) / c_r
        return {k: x for k, x in out.items() if x}

    def to_old(i):
        return dict(unit_vec) if i == replace else {i: Fraction(1)}

    mult = {}
    for i in range(n):
        for j in range(n):
            if i == replace or j == replace:
                continue
            acc: dict = {}
            for p, a in to_old(i).items():
                for q, b in to_old(j).items():
                    _add_into(acc, mult_fn(p, q), a * b)
            v = to_new(acc)
            if v:
                mult[(i, j)] = v
    basis = list(labels_degrees)
    basis[replace] = (unit_label, 0)
    return DgAlgebra(basis, mult, replace, diff=diff, name=name)


def matrix_algebra(a: DgAlgebra, n: int = 2, name: str = "") -> DgAlgebra:
    """M_n(a), with the last diagonal unit E_nn(x)1 replaced by the identity."""
    old = []
    for r in range(n):
        for c in range(n):
            for i in range(a.dim):
                lab = f"E{r + 1}{c + 1}" if i == a.unit else f"E{r + 1}{c + 1}{a.labels[i]}"
                old.append((lab, a.degrees[i], r, c, i))
    index = {(r, c, i): k for k, (_, _, r, c, i) in enumerate(old)}

    def mult_fn(p, q):
        _, _, r1, c1, i = old[p]
        _, _, r2, c2, j = old[q]
        if c1 != r2:
            return {}
        return {index[(r1, c2, k)]: v for k, v in a.mul(i, j).items()}

    unit_vec = {index[(r, r, a.unit)]: Fraction(1) for r in range(n)}
    replace = index[(n - 1, n - 1, a.unit)]
    if a.diff:
        raise BadParameter("matrix_algebra supports zero-differential coefficients only")
    return rebase_unit([(l, d) for l, d, *_ in old], mult_fn, unit_vec, replace,
                       name=name or f"M{n}({a.name})")


def abelian_lie(dims_or_basis, name="") -> DgLieAlgebra:
    if isinstance(dims_or_basis, Mapping):
        basis = [(f"x{d}_{i}" if v > 1 else f"x{d}", d) for d, v in dims_or_basis.items() for i in range(v)]
    else:
        basis = list(dims_or_basis)
    return DgLieAlgebra(basis, {}, name=name or "abelian")


def sl2() -> DgLieAlgebra:
    """sl_2 over Q in degree 0: [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    basis = [("e", 0), ("f", 0), ("h", 0)]
    e, f, h = 0, 1, 2
    br = {(h, e): {e: 2}, (e, h): {e: -2}, (h, f): {f: -2}, (f, h): {f: 2},
          (e, f): {h: 1}, (f, e): {h: -1}}
    return DgLieAlgebra(basis, br, name="sl2")


def augmentation_kernel_shift(a: DgAlgebra, n: int) -> Complex:
    """The complex Ker(aug)[n-1]."""
    if not a.augmented:
        raise NoAugmentation(f"{a.name} has no augmentation")
    comps: dict[int, list] = {}
    for i in a.ideal:
        comps.setdefault(a.degrees[i] + n - 1, []).append(a.labels[i])
    space = GradedSpace(comps)
    s = parity(n - 1)

    def d(label):
        i = a.index[label]
        return {a.labels[k]: s * c for k, c in a.diff.get(i, {}).items()}

    dmap = GradedMap.from_function(space, space, -1, d)
    if a.trunc is None:
        return Complex(space, dmap)
    return Complex(space, dmap, known_lo=a.trunc.lo + n - 1, known_hi=a.trunc.hi + n - 1)
