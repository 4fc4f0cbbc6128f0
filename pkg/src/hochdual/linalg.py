"""Exact sparse linear algebra over Q.

Matrices are stored column-major: ``cols[j]`` is the image of the j-th
source basis vector as ``{row: Fraction}``.  Every rank goes through
:func:`rank`, which splits the matrix into connected blocks, clears
denominators and hands integer vectors to the active kernel.
"""
from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import Iterable

from . import _rank_py

try:  # compiled core, selected at import
    from . import _rank as _rank_ext
except ImportError:  # pragma: no cover - depends on build
    _rank_ext = None

KERNEL = "compiled" if _rank_ext is not None and not os.environ.get("HOCHDUAL_PURE") else "python"


def kernel_name() -> str:
    return KERNEL


def set_kernel(name: str) -> None:
    """Switch between ``"compiled"`` and ``"python"`` (benchmarks, tests)."""
    global KERNEL
    if name == "compiled" and _rank_ext is None:
        raise RuntimeError("compiled rank kernel is not built")
    if name not in ("compiled", "python"):
        raise ValueError(name)
    KERNEL = name


class SparseMatrix:
    """Exact rational matrix, ``nrows x ncols``, column-major dict storage."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        self.cols = cols

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = Fraction(x)
        return cls(nrows, ncols, cols)

    def to_dense(self):
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = []
        mine = self.cols
        for col in other.cols:
            acc: dict[int, Fraction] = {}
            for k, x in col.items():
                for i, y in mine[k].items():
                    z = acc.get(i, 0) + x * y
                    if z:
                        acc[i] = z
                    else:
                        acc.pop(i, None)
            cols.append(acc)
        return SparseMatrix(self.nrows, other.ncols, cols)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, y in b.items():
                z = c.get(i, 0) + y
                if z:
                    c[i] = z
                else:
                    c.pop(i, None)
            cols.append(c)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "SparseMatrix":
        s = Fraction(s)
        if s == 0:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, [{i: s * x for i, x in c.items()} for c in self.cols])

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def apply(self, vec: dict) -> dict:
        out: dict[int, Fraction] = {}
        for k, x in vec.items():
            for i, y in self.cols[k].items():
                z = out.get(i, 0) + x * y
                if z:
                    out[i] = z
                else:
                    out.pop(i, None)
        return out

    def rank(self) -> int:
        return rank(self.cols)


def hstack(*mats: SparseMatrix) -> SparseMatrix:
    nrows = mats[0].nrows
    cols = []
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row mismatch in hstack")
        cols.extend(m.cols)
    return SparseMatrix(nrows, len(cols), cols)


def block(rows_of_blocks) -> SparseMatrix:
    """Assemble a block matrix from a nested list (None means zero)."""
    heights = []
    for row in rows_of_blocks:
        h = next((b.nrows for b in row if b is not None), None)
        if h is None:
            raise ValueError("block row with no sizing block")
        heights.append(h)
    widths = []
    for j in range(len(rows_of_blocks[0])):
        w = next((row[j].ncols for row in rows_of_blocks if row[j] is not None), None)
        if w is None:
            raise ValueError("block column with no sizing block")
        widths.append(w)
    offsets = [sum(heights[:i]) for i in range(len(heights))]
    cols = []
    for j, w in enumerate(widths):
        for c in range(w):
            col = {}
            for i, row in enumerate(rows_of_blocks):
                b = row[j]
                if b is None:
                    continue
                off = offsets[i]
                for r, x in b.cols[c].items():
                    col[r + off] = x
            cols.append(col)
    return SparseMatrix(sum(heights), sum(widths), cols)


def _integerize(vec: dict) -> dict:
    den = 1
    for x in vec.values():
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = lcm(den, d)
    if den == 1:
        return {k: int(x) for k, x in vec.items()}
    return {k: int(x * den) for k, x in vec.items()}


def _components(vectors: list) -> list[list]:
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for v in vectors:
        it = iter(v)
        first = next(it)
        parent.setdefault(first, first)
        r0 = find(first)
        for k in it:
            parent.setdefault(k, k)
            rk = find(k)
            if rk != r0:
                parent[rk] = r0
    groups: dict = {}
    for v in vectors:
        groups.setdefault(find(next(iter(v))), []).append(v)
    return list(groups.values())


def _kernel_rank(vectors: list) -> int:
    # relabel coordinates by ascending occurrence count so sparse columns lead
    counts: dict = {}
    for v in vectors:
        for k in v:
            counts[k] = counts.get(k, 0) + 1
    order = {k: i for i, k in enumerate(sorted(counts, key=lambda k: (counts[k], k)))}
    relabeled = [{order[k]: x for k, x in v.items()} for v in vectors]
    if KERNEL == "compiled":
        try:
            return _rank_ext.rank_int(relabeled)
        except OverflowError:
            pass
    return _rank_py.rank_int(relabeled)


def rank(vectors: Iterable[dict]) -> int:
    """Exact rank of the span of sparse rational vectors."""
    vecs = [_integerize(v) for v in vectors if v]
    if not vecs:
        return 0
    total = 0
    for comp in _components(vecs):
        if len(comp) == 1:
            total += 1
        else:
            total += _kernel_rank(comp)
    return total


# ---------------------------------------------------------------------------
# Echelon bases for subspaces and quotients (small problems only).


class Echelon:
    """Fully reduced echelon basis of a subspace of Q^n, grown incrementally."""

    def __init__(self):
        self.rows: dict[int, dict] = {}  # pivot coordinate -> vector with pivot 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        for piv in sorted(set(v) & set(self.rows)):
            c = v.get(piv)
            if not c:
                continue
            for k, y in self.rows[piv].items():
                z = v.get(k, 0) - c * y
                if z:
                    v[k] = z
                else:
                    v.pop(k, None)
        # reduction can reintroduce pivot coordinates only via rows touching
        # other pivots, which full reduction forbids
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        c = v[piv]
        v = {k: x / c for k, x in v.items()}
        for p, row in self.rows.items():
            if piv in row:
                f = row[piv]
                for k, y in v.items():
                    z = row.get(k, 0) - f * y
                    if z:
                        row[k] = z
                    else:
                        row.pop(k, None)
        self.rows[piv] = v
        return True

    def pivots(self) -> set:
        return set(self.rows)


def solve_in_span(basis: list[dict], target: dict) -> dict | None:
    """Coefficients c with sum c_i basis_i == target, or None."""
    # augment each basis vector with a tag coordinate to recover coefficients
    tag = ("tag",)
    ech = Echelon()
    keyed = []
    coords = set()
    for v in basis:
        coords.update(v)
    coords.update(target)
    index = {k: i for i, k in enumerate(sorted(coords, key=repr))}
    n = len(index)
    for i, v in enumerate(basis):
        w = {index[k]: x for k, x in v.items()}
        w[n + i] = Fraction(1)
        keyed.append(w)
    for w in keyed:
        ech.add(w)
    t = {index[k]: Fraction(x) for k, x in target.items()}
    r = ech.reduce(t)
    if any(k < n for k in r):
        return None
    # target - sum(c_i v_i) reduces to -sum(c_i e_tag_i) residue
    return {k - n: -x for k, x in r.items()}


class SpanSolver:
    """Coordinates of vectors in a fixed linearly independent family.

    The family is reduced once; each ``coords`` call is one reduction.
    """

    def __init__(self, family: list[dict]):
        self.n = len(family)
        self.ech = Echelon()
        self._index: dict = {}
        for i, v in enumerate(family):
            w = {self._coord(k): x for k, x in v.items() if x}
            w[("tag", i)] = Fraction(1)
            if not self.ech.add(self._order(w)):
                raise ValueError("family is linearly dependent")

    def _coord(self, k):
        if k not in self._index:
            self._index[k] = len(self._index)
        return self._index[k]

    def _order(self, w: dict) -> dict:
        # tag coordinates sort after every real coordinate
        return {(k if not isinstance(k, tuple) else 10**12 + k[1]): x for k, x in w.items()}

    def coords(self, target: dict) -> dict:
        t = {}
        for k, x in target.items():
            if not x:
                continue
            if k not in self._index:
                raise ValueError(f"target not in span (coordinate {k!r})")
            t[self._index[k]] = x
        r = self.ech.reduce(t)
        if any(k < 10**12 for k in r):
            raise ValueError("target not in span")
        return {k - 10**12: -x for k, x in r.items()}
