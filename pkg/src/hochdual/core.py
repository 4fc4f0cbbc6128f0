"""Graded rational vector spaces, chain complexes and homology.

Grading is homological: differentials have degree -1, ``X[n]`` raises
degrees by ``n`` and ``(X^dual)_n = (X_{-n})^dual``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .linalg import SparseMatrix, block
from .signs import parity


class HomAlgError(Exception):
    """Base class for errors raised by this package."""


class WindowUnderflow(HomAlgError):
    pass


class TruncationInsufficient(HomAlgError):
    def __init__(self, message, certified=None):
        super().__init__(message)
        self.certified = certified


class NotChainMap(HomAlgError):
    pass


class NotDegreewiseFinite(HomAlgError):
    pass


@dataclass(frozen=True, order=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, n) -> bool:
        return self.lo <= n <= self.hi

    def __len__(self):
        return self.hi - self.lo + 1

    @property
    def height(self) -> int:
        return self.hi - self.lo

    def intersect(self, other: "Window | None") -> "Window | None":
        if other is None:
            return self
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Window(lo, hi) if lo <= hi else None

    def widen(self, k: int = 1) -> "Window":
        return Window(self.lo - k, self.hi + k)

    def reflect(self) -> "Window":
        return Window(-self.hi, -self.lo)

    def shift(self, n: int) -> "Window":
        return Window(self.lo + n, self.hi + n)

    @classmethod
    def parse(cls, text: str) -> "Window":
        lo, _, hi = text.partition(":")
        return cls(int(lo), int(hi))

    def __str__(self):
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class DimTable:
    """Homology dimensions on a certified window (zeros included)."""

    dims: Mapping[int, int]
    valid_window: Window

    def __post_init__(self):
        bad = [n for n in self.dims if n not in self.valid_window]
        if bad:
            raise ValueError(f"entries {bad} outside valid window {self.valid_window}")

    def __getitem__(self, n):
        return self.dims.get(n, 0)

    def restrict(self, w: Window) -> "DimTable":
        ww = self.valid_window.intersect(w)
        if ww is None:
            raise WindowUnderflow(f"{w} does not meet {self.valid_window}")
        return DimTable({n: self[n] for n in ww}, ww)

    def nonzero(self) -> dict:
        return {n: d for n, d in sorted(self.dims.items()) if d}

    def as_list(self):
        return [[n, self[n]] for n in self.valid_window]

    def values(self) -> list[int]:
        """Dimensions in degree order over the whole window."""
        return [self[n] for n in self.valid_window]

    def same_dims(self, other: "DimTable", w: Window | None = None) -> bool:
        w = w or self.valid_window.intersect(other.valid_window)
        if w is None:
            return False
        return all(self[n] == other[n] for n in w)

    def __str__(self):
        return "{" + ", ".join(f"{n}:{self[n]}" for n in self.valid_window) + "}"


class GradedSpace:
    """Finitely supported family of finite-dimensional spaces with basis keys."""

    def __init__(self, components: Mapping[int, Iterable[Hashable]] | None = None,
                 label: Callable[[Hashable], str] = str):
        comps = {}
        for n, keys in (components or {}).items():
            keys = tuple(keys)
            if keys:
                if len(set(keys)) != len(keys):
                    raise ValueError(f"duplicate basis keys in degree {n}")
                comps[n] = keys
        self.components: dict[int, tuple] = dict(sorted(comps.items()))
        self._index = {n: {k: i for i, k in enumerate(keys)} for n, keys in self.components.items()}
        self._label = label

    def basis(self, n: int) -> tuple:
        return self.components.get(n, ())

    def dim(self, n: int) -> int:
        return len(self.components.get(n, ()))

    def index(self, n: int, key) -> int:
        return self._index[n][key]

    def index_map(self, n: int) -> dict:
        return self._index.get(n, {})

    def labels(self, n: int) -> list[str]:
        return [self._label(k) for k in self.basis(n)]

    def degrees(self) -> list[int]:
        return list(self.components)

    def dims(self) -> dict[int, int]:
        return {n: len(k) for n, k in self.components.items()}

    def total_dim(self) -> int:
        return sum(len(k) for k in self.components.values())

    def support(self) -> Window | None:
        if not self.components:
            return None
        ds = list(self.components)
        return Window(min(ds), max(ds))

    def __repr__(self):
        return f"GradedSpace({self.dims()})"


class GradedMap:
    """Homogeneous linear map of a fixed degree between graded spaces."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 blocks: Mapping[int, SparseMatrix] | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self.blocks: dict[int, SparseMatrix] = {}
        for n, m in (blocks or {}).items():
            if m.shape != (target.dim(n + degree), source.dim(n)):
                raise ValueError(f"block {n} has shape {m.shape}, expected "
                                 f"{(target.dim(n + degree), source.dim(n))}")
            if not m.is_zero():
                self.blocks[n] = m

    def block(self, n: int) -> SparseMatrix:
        m = self.blocks.get(n)
        if m is None:
            return SparseMatrix(self.target.dim(n + self.degree), self.source.dim(n))
        return m

    @classmethod
    def from_function(cls, source, target, degree, fn, degrees=None):
        """Build from ``fn(key) -> {target_key: coeff}`` on the given source degrees."""
        blocks = {}
        for n in (source.degrees() if degrees is None else degrees):
            keys = source.basis(n)
            if not keys:
                continue
            tindex = target.index_map(n + degree)
            cols = []
            for k in keys:
                col = {}
                for tk, c in fn(k).items():
                    if c:
                        try:
                            i = tindex[tk]
                        except KeyError:
                            raise KeyError(f"image {tk!r} of {k!r} not in target degree {n + degree}")
                        col[i] = col.get(i, 0) + Fraction(c)
                cols.append({i: c for i, c in col.items() if c})
            blocks[n] = SparseMatrix(target.dim(n + degree), len(keys), cols)
        return cls(source, target, degree, blocks)

    def apply(self, n: int, vec: Mapping) -> dict:
        """Apply to ``{key: coeff}`` in source degree ``n``; returns target keys."""
        idx = self.source.index_map(n)
        v = {idx[k]: Fraction(c) for k, c in vec.items() if c}
        out = self.block(n).apply(v)
        tkeys = self.target.basis(n + self.degree)
        return {tkeys[i]: c for i, c in out.items()}

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        blocks = {}
        for n in other.source.degrees():
            m = other.blocks.get(n)
            if m is None:
                continue
            s = self.blocks.get(n + other.degree)
            if s is None:
                continue
            blocks[n] = s @ m
        return GradedMap(other.source, self.target, self.degree + other.degree, blocks)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        blocks = dict(self.blocks)
        for n, m in other.blocks.items():
            blocks[n] = blocks[n] + m if n in blocks else m
        return GradedMap(self.source, self.target, self.degree, blocks)

    def scale(self, s) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {n: m.scale(s) for n, m in self.blocks.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self, degrees: Iterable[int] | None = None) -> bool:
        ds = self.blocks if degrees is None else degrees
        return all(self.block(n).is_zero() for n in ds if n in self.blocks)


def zero_map(source, target, degree):
    return GradedMap(source, target, degree)


def identity_map(space: GradedSpace) -> GradedMap:
    return GradedMap(space, space, 0, {n: SparseMatrix.identity(space.dim(n)) for n in space.degrees()})


class Complex:
    """Graded space with a degree -1 differential.

    ``known`` gives the degree range ``[lo, hi]`` on which components and
    differentials are materialized exactly; ``None`` on a side means the
    complex is complete (zero) beyond what is stored on that side.
    """

    def __init__(self, space: GradedSpace, d: GradedMap | None = None,
                 known_lo: int | None = None, known_hi: int | None = None):
        if d is None:
            d = GradedMap(space, space, -1)
        if d.degree != -1:
            raise ValueError("differential must have degree -1")
        self.space = space
        self.d = d
        self.known_lo = known_lo
        self.known_hi = known_hi

    def knows(self, n: int) -> bool:
        return (self.known_lo is None or n >= self.known_lo) and (self.known_hi is None or n <= self.known_hi)

    def known_window(self, default: Window | None = None) -> Window | None:
        sup = self.space.support()
        lo = self.known_lo if self.known_lo is not None else (sup.lo if sup else (default.lo if default else 0))
        hi = self.known_hi if self.known_hi is not None else (sup.hi if sup else (default.hi if default else 0))
        if default is not None:
            if self.known_lo is None:
                lo = min(lo, default.lo)
            if self.known_hi is None:
                hi = max(hi, default.hi)
        return Window(lo, hi) if lo <= hi else None

    @property
    def complete(self) -> bool:
        return self.known_lo is None and self.known_hi is None

    def dims(self):
        return self.space.dims()

    def check_d_squared(self) -> list[int]:
        """Degrees where d o d is nonzero (exact)."""
        bad = []
        for n in self.space.degrees():
            if not self.knows(n) or not self.knows(n - 2):
                continue
            if not (self.d.block(n - 1) @ self.d.block(n)).is_zero():
                bad.append(n)
        return bad

    def __repr__(self):
        return f"Complex({self.space.dims()}, known=[{self.known_lo}, {self.known_hi}])"


class MixedComplex:
    """Complex with a degree +1 operator B, B^2 = 0 and dB + Bd = 0."""

    def __init__(self, underlying: Complex, B: GradedMap | None = None):
        if B is None:
            B = GradedMap(underlying.space, underlying.space, 1)
        if B.degree != 1:
            raise ValueError("B must have degree +1")
        self.underlying = underlying
        self.B = B

    @property
    def space(self):
        return self.underlying.space

    @property
    def d(self):
        return self.underlying.d

    def check_axioms(self) -> dict:
        """Degrees where B^2 or dB + Bd fail, restricted to the known range."""
        c = self.underlying
        bad_bb, bad_db = [], []
        for n in c.space.degrees():
            if c.knows(n) and c.knows(n + 2):
                if not (self.B.block(n + 1) @ self.B.block(n)).is_zero():
                    bad_bb.append(n)
            if c.knows(n) and c.knows(n + 1) and c.knows(n - 1):
                m = c.d.block(n + 1) @ self.B.block(n) + self.B.block(n - 1) @ c.d.block(n)
                if not m.is_zero():
                    bad_db.append(n)
        return {"d2": c.check_d_squared(), "B2": bad_bb, "dB+Bd": bad_db}


def _need(c: Complex, lo: int, hi: int):
    for n in (lo, hi):
        if not c.knows(n):
            raise WindowUnderflow(f"degree {n} not materialized (known [{c.known_lo}, {c.known_hi}])")


def homology_dims(c: Complex, w: Window) -> DimTable:
    """dim H_n = dim ker d_n - rank d_{n+1} for n in w, by exact elimination."""
    _need(c, w.lo - 1, w.hi + 1)
    ranks = {}

    def rk(n):
        if n not in ranks:
            ranks[n] = c.d.block(n).rank() if c.space.dim(n) and c.space.dim(n - 1) else 0
        return ranks[n]

    dims = {n: c.space.dim(n) - rk(n) - rk(n + 1) for n in w}
    return DimTable(dims, w)


def chain_dims(c: Complex, w: Window) -> DimTable:
    """Dimensions of the chain groups themselves on ``w``."""
    _need(c, w.lo, w.hi)
    return DimTable({n: c.space.dim(n) for n in w}, w)


def tensor_complex(x: Complex, y: Complex, w: Window) -> Complex:
    """``x (x) y`` on degrees ``w``, with d(a(x)b) = da(x)b + (-1)^|a| a(x)db."""
    comps = {}
    for n in w:
        keys = []
        for p in x.space.degrees():
            q = n - p
            if y.space.dim(q):
                keys.extend((a, b) for a in x.space.basis(p) for b in y.space.basis(q))
        comps[n] = keys
    deg = {}
    for p in x.space.degrees():
        for a in x.space.basis(p):
            deg[("x", a)] = p
    for q in y.space.degrees():
        for b in y.space.basis(q):
            deg[("y", b)] = q
    space = GradedSpace(comps, label=lambda k: f"{k[0]}*{k[1]}")

    def d(key):
        a, b = key
        p, q = deg[("x", a)], deg[("y", b)]
        out = {}
        for a2, c in x.d.apply(p, {a: 1}).items():
            out[(a2, b)] = out.get((a2, b), 0) + c
        s = parity(p)
        for b2, c in y.d.apply(q, {b: 1}).items():
            out[(a, b2)] = out.get((a, b2), 0) + s * c
        return out

    dmap = GradedMap.from_function(space, space, -1, d, degrees=[n for n in w if n - 1 in w])
    lo = w.lo if _bounded_below(x, y, w.lo) else w.lo + 1
    hi = w.hi
    return Complex(space, dmap, known_lo=lo, known_hi=hi)


def _bounded_below(x, y, n):
    # the component below the window is zero when both inputs are bounded below there
    sx, sy = x.space.support(), y.space.support()
    if sx is None or sy is None:
        return True
    return x.known_lo is None and y.known_lo is None and sx.lo + sy.lo >= n


def dual_complex(x: Complex, w: Window | None = None) -> Complex:
    """Degreewise linear dual; ``w`` is a window of the *output* degrees."""
    if w is None:
        if not x.complete:
            raise NotDegreewiseFinite("dual of a truncated complex needs an explicit window")
        degrees = [-n for n in x.space.degrees()]
    else:
        degrees = list(w)
        for n in degrees:
            if x.space.dim(-n) and not x.knows(-n):
                raise NotDegreewiseFinite(f"source degree {-n} not materialized")
    comps = {n: tuple(("dual", k) for k in x.space.basis(-n)) for n in degrees}
    space = GradedSpace(comps, label=lambda k: f"{k[1]}^")
    blocks = {}
    for n in degrees:
        # (x^v)_n -> (x^v)_{n-1} is -(-1)^n times the transpose of d_{-n+1}
        if x.space.dim(-n) and space.dim(n - 1) and (n - 1) in comps:
            blocks[n] = x.d.block(-n + 1).transpose().scale(-parity(n))
    dmap = GradedMap(space, space, -1, blocks)
    if w is None:
        return Complex(space, dmap)
    return Complex(space, dmap, known_lo=w.lo, known_hi=w.hi)


def shift_complex(x: Complex, n: int) -> Complex:
    """``x[n]``: degrees raised by n, differential multiplied by (-1)^n."""
    comps = {m + n: x.space.basis(m) for m in x.space.degrees()}
    space = GradedSpace(comps, label=x.space._label)
    blocks = {m + n: b.scale(parity(n)) for m, b in x.d.blocks.items()}
    dmap = GradedMap(space, space, -1, blocks)
    lo = None if x.known_lo is None else x.known_lo + n
    hi = None if x.known_hi is None else x.known_hi + n
    return Complex(space, dmap, known_lo=lo, known_hi=hi)


def is_chain_map(f: GradedMap, c: Complex, d_: Complex, degrees: Iterable[int]) -> list[int]:
    bad = []
    for n in degrees:
        lhs = d_.d.block(n + f.degree) @ f.block(n)
        rhs = f.block(n - 1) @ c.d.block(n)
        if f.degree & 1:
            rhs = rhs.scale(-1)
        if lhs != rhs:
            bad.append(n)
    return bad


def mapping_cone(f: GradedMap, c: Complex, d_: Complex, w: Window) -> Complex:
    """cone_n = C_{n-1} + D_n, d(x, y) = (-dx, f x + dy); degrees ``w``."""
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 map")
    comps = {n: [("c", k) for k in c.space.basis(n - 1)] + [("d", k) for k in d_.space.basis(n)] for n in w}
    space = GradedSpace(comps)
    blocks = {}
    for n in w:
        if n - 1 not in w:
            continue
        nc, nd = c.space.dim(n - 1), d_.space.dim(n)
        tc, td = c.space.dim(n - 2), d_.space.dim(n - 1)
        if not (nc + nd) or not (tc + td):
            continue
        m = block([
            [c.d.block(n - 1).scale(-1) if nc and tc else _z(tc, nc), _z(tc, nd)],
            [f.block(n - 1) if nc and td else _z(td, nc), d_.d.block(n) if nd and td else _z(td, nd)],
        ])
        blocks[n] = m
    known_lo = w.lo if (c.knows(w.lo - 2) and d_.knows(w.lo - 1)) else w.lo + 1
    return Complex(space, GradedMap(space, space, -1, blocks), known_lo=known_lo, known_hi=w.hi)


def _z(r, c):
    return SparseMatrix(r, c)


def is_quasi_iso_in_window(f: GradedMap, c: Complex, d_: Complex, w: Window) -> bool:
    """True iff the mapping cone of the chain map f is acyclic on w."""
    _need(c, w.lo - 2, w.hi + 1)
    _need(d_, w.lo - 1, w.hi + 2)
    bad = is_chain_map(f, c, d_, range(w.lo - 1, w.hi + 2))
    if bad:
        raise NotChainMap(f"f fails to commute with d in degrees {bad}")
    cone = mapping_cone(f, c, d_, Window(w.lo - 1, w.hi + 2))
    h = homology_dims(cone, Window(w.lo, w.hi + 1))
    return all(v == 0 for v in h.dims.values())


def induced_rank(f: GradedMap, c: Complex, d_: Complex, n: int) -> int:
    """Rank of H_n(f): H_n(C) -> H_n(D) for a degree-0 chain map.

    Uses rank [[d^C_n, 0], [f_n, d^D_{n+1}]] - rank d^C_n - rank d^D_{n+1}.
    """
    _need(c, n - 1, n)
    _need(d_, n, n + 1)
    dc, dd, fn = c.d.block(n), d_.d.block(n + 1), f.block(n)
    if not c.space.dim(n) or not d_.space.dim(n):
        return 0
    m = block([[dc, _z(dc.nrows, dd.ncols)], [fn, dd]])
    return m.rank() - dc.rank() - dd.rank()


def direct_sum(*cs: Complex) -> Complex:
    comps = {}
    for i, c in enumerate(cs):
        for n in c.space.degrees():
            comps.setdefault(n, []).extend((i, k) for k in c.space.basis(n))
    space = GradedSpace(comps)

    def d(key):
        i, k = key
        c = cs[i]
        n = next(m for m in c.space.degrees() if k in c.space.index_map(m))
        return {(i, t): v for t, v in c.d.apply(n, {k: 1}).items()}

    dmap = GradedMap.from_function(space, space, -1, d)
    lo = max((c.known_lo for c in cs if c.known_lo is not None), default=None)
    hi = min((c.known_hi for c in cs if c.known_hi is not None), default=None)
    return Complex(space, dmap, known_lo=lo, known_hi=hi)


def zero_complex() -> Complex:
    return Complex(GradedSpace({}))


def ground_complex(degree: int = 0, label="1") -> Complex:
    return Complex(GradedSpace({degree: [label]}))


def complex_from_dims(dims: Mapping[int, int], prefix="e") -> Complex:
    """Zero-differential complex with the given dimensions."""
    return Complex(GradedSpace({n: [f"{prefix}{n}_{i}" for i in range(k)] for n, k in dims.items()}))
