"""Verification suites: each case compares two independent computations.

A suite is a list of cases; every case is a pure function of its
parameters, so cases can run in any order or in worker processes and the
report is assembled in case order.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from .bar import free_tensor_algebra, koszul_dual_n
from .calculus import apply_op, calculus_identities, words_up_to
from .cochains import Cochain, zero_cochain
from .core import DimTable, TruncationInsufficient, Window, complex_from_dims, homology_dims
from .dg import square_zero, truncated_polynomial
from .hochschild import WordOps, circle_tensor_commutative, hh_dims, hochschild_chains
from .lie import (ce_cochains, circle_cotensor, free_lie, generators_complex, koszul_dual_infty,
                  universal_enveloping)
from .moduli import base_change_report, base_extension, tangent_square_report
from .specio import CORPUS_NAMES, load_corpus

SUITES = ["mixed", "calculus", "koszul-free", "keycircle", "eta", "circle-route", "pbw", "ce-free",
          "base-change", "tangent-square", "morita"]


@dataclass
class Case:
    suite: str
    name: str
    ok: bool
    tables: dict[str, dict[str, int]] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("seconds")
        return d


@dataclass
class Options:
    window: Window | None = None
    weight_bound: int | None = None
    word_bound: int | None = None
    u_bound: int | None = None
    algebra: str = "all"
    R: str | None = None
    corpus: str | None = None


def _table(t: DimTable | dict | None) -> dict[str, int]:
    if t is None:
        return {}
    dims = t.dims if isinstance(t, DimTable) else t
    return {str(n): int(v) for n, v in sorted(dims.items())}


def _win(t: DimTable | None) -> str:
    return "" if t is None else str(t.valid_window)


def _algebras(opts: Options) -> list[str]:
    return list(CORPUS_NAMES) if opts.algebra in ("all", None) else [opts.algebra]


def _same(x: DimTable, y: DimTable, w: Window) -> bool:
    return all(x[n] == y[n] for n in w)


def _load(name: str, opts: Options):
    return load_corpus(name, opts.corpus)


# ---------------------------------------------------------------------------
# case implementations (module-level so worker processes can import them)


def case_mixed(name: str, opts: Options) -> Case:
    a = _load(name, opts)
    wb = opts.word_bound or 5
    ops = WordOps(a)
    words = words_up_to(a, wb)
    cb: dict = {}
    cB: dict = {}

    def b(w):
        v = cb.get(w)
        if v is None:
            v = cb[w] = ops.b(w)
        return v

    def B(w):
        v = cB.get(w)
        if v is None:
            v = cB[w] = ops.B(w)
        return v

    def app(fn, vec, out=None):
        out = {} if out is None else out
        get = out.get
        for w, c in vec.items():
            for k, v in fn(w).items():
                out[k] = get(k, 0) + c * v
        return out

    def nonzero(vec):
        return any(vec.values())

    bad = {"b^2": 0, "B^2": 0, "bB+Bb": 0}
    for w in words:
        bw, Bw = b(w), B(w)
        if nonzero(app(b, bw)):
            bad["b^2"] += 1
        if nonzero(app(B, Bw)):
            bad["B^2"] += 1
        if nonzero(app(B, bw, app(b, Bw))):
            bad["bB+Bb"] += 1
    ok = not any(bad.values())
    detail = f"{len(words)} words" + ("" if ok else f"; failures {bad}")
    return Case("mixed", name, ok, {}, {"word_bound": wb}, detail)


def case_calculus(name: str, opts: Options) -> Case:
    a = _load(name, opts)
    bound = opts.word_bound or 4
    res = calculus_identities(a, bound)
    ok = all(r.ok for r in res)
    return Case("calculus", name, ok, {}, {"word_bound": bound}, "; ".join(r.line() for r in res))


_KOSZUL_FREE = {"k[0]": {0: 1}, "k[1]": {1: 1}, "k[2]": {2: 1}, "k[0]+k[1]": {0: 1, 1: 1}}


def case_koszul_free(key: str, opts: Options) -> Case:
    dims = _KOSZUL_FREE[key]
    w = opts.window or Window(-6, 0)
    r = square_zero(complex_from_dims(dims, prefix="m"))
    kd = koszul_dual_n(r, 1, w)
    w = kd.valid_window
    lhs = kd.homology(w)
    t = free_tensor_algebra(generators_complex({-n - 1: c for n, c in dims.items()}), w)
    rhs = homology_dims(t.complex(), w)
    return Case("koszul-free", f"M={key}", _same(lhs, rhs, w),
                {"D1(k+M)": _table(lhs), "T(M^v[-1])": _table(rhs)}, {"window": str(w)})


def case_keycircle(name: str, opts: Options) -> Case:
    w = opts.window or Window(-5, 0)
    R = _load(name, opts)
    L = koszul_dual_infty(R, Window(w.lo - 1, -1))
    U = universal_enveloping(circle_cotensor(L.dgla), w)
    lhs = homology_dims(U.complex(), w)
    ct, _ = circle_tensor_commutative(R, Window(0, -w.lo + 1))
    kd = koszul_dual_n(ct, 1, w)
    if kd.valid_window != w:
        raise TruncationInsufficient(f"D1 of the circle tensor certified only on {kd.valid_window}",
                                     certified=kd.valid_window)
    rhs = kd.homology(w)
    return Case("keycircle", f"R={name}", _same(lhs, rhs, w),
                {"U1(Free_Lie^S1)": _table(lhs), "D1(R(x)S1)": _table(rhs)}, {"window": str(w)})


def case_eta(name: str, opts: Options) -> Case:
    w = opts.window or Window(-3, 0)
    R = _load(name, opts)
    d2 = koszul_dual_n(R, 2, Window(w.lo - 2, 0))
    lhs = hochschild_chains(d2.algebra, w).homology(w)
    ct, _ = circle_tensor_commutative(R, Window(0, -w.lo + 1))
    kd = koszul_dual_n(ct, 1, w)
    rhs = kd.homology(w)
    return Case("eta", f"R={name}", _same(lhs, rhs, w),
                {"HH(D2(R))": _table(lhs), "D1(HH(R))": _table(rhs)}, {"window": str(w)})


_CIRCLE_ROUTE = {1: "k_plus_k1", 2: "k_plus_k2"}


def case_circle_route(d: int, opts: Options) -> Case:
    w = opts.window or Window(-6, 0)
    L = free_lie(generators_complex([-d - 1]), None, Window(w.lo - 1, -1))
    U = universal_enveloping(circle_cotensor(L.dgla), w)
    lhs = homology_dims(U.complex(), w)
    R = _load(_CIRCLE_ROUTE[d], opts)
    d2 = koszul_dual_n(R, 2, Window(w.lo - 2, 0))
    rhs = hochschild_chains(d2.algebra, w).homology(w)
    return Case("circle-route", f"d={d}", _same(lhs, rhs, w),
                {"U1(L^S1)": _table(lhs), "HH(D2(k+k[d]))": _table(rhs)}, {"window": str(w)})


_PBW = {"k[-1]": [-1], "k[-2]": [-2], "k[-1]+k[-2]": [-1, -2]}


def case_pbw(key: str, opts: Options) -> Case:
    w = opts.window or Window(-6, 0)
    v = generators_complex(_PBW[key])
    L = free_lie(v, None, Window(w.lo - 1, -1))
    U = universal_enveloping(L.dgla, w)
    T = free_tensor_algebra(v, w)
    lhs, rhs = homology_dims(U.complex(), w), homology_dims(T.complex(), w)
    chains_ok = all(U.dims().get(n, 0) == T.dims().get(n, 0) for n in w)
    return Case("pbw", f"v={key}", chains_ok and _same(lhs, rhs, w),
                {"U1(Free_Lie(v))": _table({n: U.dims().get(n, 0) for n in w}),
                 "T(v)": _table({n: T.dims().get(n, 0) for n in w})}, {"window": str(w)},
                "" if chains_ok else "PBW basis size differs from T(v)")


def case_ce_free(d: int, opts: Options) -> Case:
    w = opts.window or Window(-1, 6)
    R = square_zero(complex_from_dims({d: 1}, prefix="m"))
    L = koszul_dual_infty(R, Window(-(w.hi + 2) * (d + 1), -1))
    ce = ce_cochains(L.dgla, opts.weight_bound, w)
    lhs = ce.homology(w)
    rhs = DimTable({n: (1 if n in (0, d) else 0) for n in w}, w)
    return Case("ce-free", f"d={d}", _same(lhs, rhs, w),
                {"Ch(D_inf(k+k[d]))": _table(lhs), "k+k[d]": _table(rhs)}, {"window": str(w)})


def _base_change_inputs(key: str, opts: Options):
    dual = _load("dual_numbers", opts)
    if key == "a=r=dual_numbers":
        return dual, dual, None
    if key == "a=dual_numbers(x)k[x]/x^2":
        a, f = base_extension(dual, truncated_polynomial(2, "x"))
        return a, dual, f
    if key == "a=k_plus_k1(x)k[x]/x^2":
        r = _load("k_plus_k1", opts)
        a, f = base_extension(r, truncated_polynomial(2, "x"))
        return a, r, f
    if key == "r=k":
        k = _load("k", opts)
        x3 = _load("x3", opts)
        return x3, k, {0: {x3.unit: 1}}
    raise KeyError(key)


_BASE_CHANGE = ["a=r=dual_numbers", "a=dual_numbers(x)k[x]/x^2", "a=k_plus_k1(x)k[x]/x^2", "r=k"]


def case_base_change(key: str, opts: Options) -> Case:
    w = opts.window or Window(0, 3)
    a, r, f = _base_change_inputs(key, opts)
    rep = base_change_report(a, r, f, w)
    return Case("base-change", key, rep.ok,
                {"C(a)(x)_C(r)k": _table(rep.derived), "C(a(x)_r k)": _table(rep.underived)},
                {"window": str(w)})


def _cocycle(key: str, opts: Options):
    if key.startswith("dual_numbers"):
        a = _load("dual_numbers", opts)
        e = a.index["e"]
        mu = Cochain(a, {(e, e): {a.unit: 1}}, -1, 2)
    else:
        a = _load("x3", opts)
        x = [a.index[l] for l in ("1", "x", "x^2")]
        table = {(x[i], x[j]): {x[i + j - 3]: 1} for i in (1, 2) for j in (1, 2) if i + j >= 3}
        mu = Cochain(a, table, -1, 2)
    if key.endswith("mu=0"):
        mu = zero_cochain(a, -1)
    return a, mu


_TANGENT = ["dual_numbers", "x3", "dual_numbers mu=0", "x3 mu=0"]


def case_tangent_square(key: str, opts: Options) -> Case:
    a, mu = _cocycle(key, opts)
    w = opts.window or Window(0, 3)
    rep = tangent_square_report(a, mu, w, opts.u_bound or 2)
    tables = {"upper": _table(rep.upper.dims), "lower": _table(rep.lower.dims),
              "upper t-rank": _table(rep.upper.t_ranks), "lower t-rank": _table(rep.lower.t_ranks),
              "upper cyclic": _table(rep.upper_cyclic), "lower cyclic": _table(rep.lower_cyclic)}
    return Case("tangent-square", key, rep.ok, tables, {"window": str(w), "u_bound": opts.u_bound or 2},
                "" if rep.axioms_ok else "deformed mixed complex fails its axioms")


def case_morita(key: str, opts: Options) -> Case:
    w = opts.window or Window(0, 3)
    lhs = hh_dims(_load("dual_numbers", opts), w)
    rhs = hh_dims(_load("mat2_dual", opts), w)
    return Case("morita", key, _same(lhs, rhs, w),
                {"HH(dual_numbers)": _table(lhs), "HH(M2(dual_numbers))": _table(rhs)}, {"window": str(w)})


def _cases(suite: str, opts: Options) -> list[tuple[Callable, Any]]:
    if suite == "mixed":
        return [(case_mixed, n) for n in _algebras(opts)]
    if suite == "calculus":
        return [(case_calculus, n) for n in _algebras(opts)]
    if suite == "koszul-free":
        return [(case_koszul_free, k) for k in _KOSZUL_FREE]
    if suite == "keycircle":
        return [(case_keycircle, n) for n in ([opts.R] if opts.R else ["dual_numbers", "k_plus_k1"])]
    if suite == "eta":
        return [(case_eta, n) for n in ([opts.R] if opts.R else ["dual_numbers"])]
    if suite == "circle-route":
        return [(case_circle_route, d) for d in (1, 2)]
    if suite == "pbw":
        return [(case_pbw, k) for k in _PBW]
    if suite == "ce-free":
        return [(case_ce_free, d) for d in (1, 2, 3)]
    if suite == "base-change":
        return [(case_base_change, k) for k in _BASE_CHANGE]
    if suite == "tangent-square":
        return [(case_tangent_square, k) for k in _TANGENT]
    if suite == "morita":
        return [(case_morita, "dual_numbers vs M2(dual_numbers)")]
    raise KeyError(f"unknown suite {suite!r}")


def _run_one(job) -> Case:
    fn, arg, opts = job
    t = time.perf_counter()
    c = fn(arg, opts)
    c.seconds = round(time.perf_counter() - t, 3)
    return c


def run_suite(suite: str, opts: Options | None = None, threads: int = 1) -> list[Case]:
    """All cases of a suite, in a fixed order regardless of ``threads``."""
    opts = opts or Options()
    jobs = [(fn, arg, opts) for fn, arg in _cases(suite, opts)]
    if threads <= 1 or len(jobs) <= 1:
        return [_run_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as ex:
        return list(ex.map(_run_one, jobs))
