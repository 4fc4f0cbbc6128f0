"""Command line front end: ``hochdual compute``, ``hochdual verify``, ``hochdual report``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input (the
message names the violated axiom), 3 a truncation could not be certified
(the message names the certified window), 4 report schema mismatch.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
import time
from pathlib import Path
from typing import Any

import click

from .bar import bar, koszul_dual_n
from .cochains import hochschild_cochains
from .core import (HomAlgError, NotDegreewiseFinite, TruncationInsufficient, Window, WindowUnderflow,
                   homology_dims)
from .dg import DgAlgebra
from .hochschild import circle_tensor_commutative, cyclic_variants, hochschild_chains
from .lie import CompletionRequired, ce_cochains, koszul_dual_infty, universal_enveloping
from .specio import SpecError, corpus_dir, dumps, load_corpus
from .verify import SUITES, Options, run_suite

SCHEMA = "hochdual.report/1"
KINDS = ["hh", "hc", "cochains", "bar", "koszul", "ce", "freelie", "env", "circle"]


class Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _window(text: str | None) -> Window | None:
    if text is None:
        return None
    try:
        return Window.parse(text)
    except Exception as e:
        raise click.BadParameter(f"window must be LO:HI, got {text!r}") from e


def _table(t) -> dict[str, int] | None:
    if t is None:
        return None
    dims = t.dims if hasattr(t, "dims") and not callable(t.dims) else t
    return {str(n): int(v) for n, v in sorted(dims.items())}


def _hash(payload: Any) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=1, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["case", "table", "degree", "dim", "verdict"])
        for r in report["results"]:
            for tname, tab in sorted(r["tables"].items()):
                for n, v in sorted(tab.items(), key=lambda kv: int(kv[0])):
                    wr.writerow([r["name"], tname, n, v, "PASS" if r["ok"] else "FAIL"])
        return buf.getvalue()
    lines = [f"# {' '.join(report['command'])}", f"# inputs {report['inputs_hash'][:16]}"]
    for r in report["results"]:
        lines.append(f"{'PASS' if r['ok'] else 'FAIL'} {r['suite']} {r['name']}")
        for tname, tab in sorted(r["tables"].items()):
            if tab is None:
                lines.append(f"  {tname}: not certified on this window")
                continue
            body = ", ".join(f"{n}:{v}" for n, v in sorted(tab.items(), key=lambda kv: int(kv[0])))
            lines.append(f"  {tname}: {{{body}}}")
        if r.get("detail") and not r["ok"]:
            lines.append(f"  {r['detail']}")
        if "seconds" in r:
            lines.append(f"  time {r['seconds']:.3f}s")
    lines.append(f"{report['verdict']}")
    if "wall_time" in report:
        lines.append(f"# wall time {report['wall_time']:.3f}s")
    return "\n".join(lines) + "\n"


def _run(fn):
    """Map library errors to exit codes."""
    try:
        return fn()
    except SpecError as e:
        detail = "; ".join(str(v) for v in e.violations[:5])
        raise Exit(2, f"invalid algebra spec: {e}" + (f" ({detail})" if detail else ""))
    except (TruncationInsufficient, WindowUnderflow, CompletionRequired, NotDegreewiseFinite) as e:
        cert = getattr(e, "certified", None)
        raise Exit(3, f"truncation not certified: {e}" + (f"; certified window {cert}" if cert else ""))
    except HomAlgError as e:
        raise Exit(2, f"input not suitable: {type(e).__name__}: {e}")


def _finish(text: str, code: int, err: str | None = None):
    click.echo(text, nl=False)
    if err:
        click.echo(err, err=True)
    sys.exit(code)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Hochschild chains, bar constructions, Koszul duals and free Lie algebras over Q."""


_common = [
    click.option("--window", "window", default=None, help="degree window LO:HI"),
    click.option("--weight-bound", type=int, default=None, help="bar / CE weight bound"),
    click.option("--word-bound", type=int, default=None, help="word or arity bound"),
    click.option("--u-bound", type=int, default=None, help="power series bound in u"),
    click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text"),
    click.option("--corpus", "corpus", default=None, help="directory of algebra specs"),
    click.option("--timings", is_flag=True, help="include wall-clock times"),
]


def common(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


# ---------------------------------------------------------------------------
# compute


def _auto_arity(a: DgAlgebra, w: Window) -> int:
    ideal = [a.degrees[i] for i in a.ideal]
    if not ideal:
        return 0
    m1 = min(ideal)
    if m1 + 1 <= 0:
        raise TruncationInsufficient("cochains of algebras with ideal in degrees <= -1 are not certified")
    top = max(a.degrees)
    # certified from top - (N + 1)(m1 + 1) + 2 <= w.lo - 1
    n = 0
    while top - (n + 1) * (m1 + 1) + 2 > w.lo - 1:
        n += 1
    return n


def _compute_tables(kind: str, a: DgAlgebra, w: Window | None, opts: dict) -> tuple[dict, dict]:
    """Tables and the truncation parameters actually used."""
    if kind in ("hh", "hc", "bar", "circle"):
        w = w or Window(0, 4)
    else:
        w = w or Window(-4, 0)
    used: dict[str, Any] = {"window": str(w)}
    if kind == "hh":
        hc = hochschild_chains(a, w)
        return {"HH": hc.homology(w)}, used
    if kind == "hc":
        N = opts["u_bound"] if opts["u_bound"] is not None else (w.hi // 2 + 1)
        used["u_bound"] = N
        hc = hochschild_chains(a, Window(max(w.lo - 2 * N - 2, min(w.lo, 0)), w.hi + 2 * N + 2))
        var = cyclic_variants(hc.mixed, N, w)
        return {"HC": var["cyclic"], "HC-": var["negative"], "HP": var["periodic"]}, used
    if kind == "cochains":
        N = opts["word_bound"] if opts["word_bound"] is not None else _auto_arity(a, w)
        used["arity_bound"] = N
        hc = hochschild_cochains(a, N)
        return {"HH^": hc.homology(w)}, used
    if kind == "bar":
        b = bar(a, opts["weight_bound"], w)
        used["weight_bound"] = b.weight_bound
        return {"Bar": b.homology(b.valid_window)}, used
    if kind == "koszul":
        n = opts["n"] or 1
        used["n"] = n
        kd = koszul_dual_n(a, n, w)
        return {f"D{n}": kd.homology(kd.valid_window)}, used
    if kind in ("ce", "freelie", "env"):
        L = koszul_dual_infty(a, Window(min(w.lo, -1) - 2, -1))
        if kind == "freelie":
            ww = Window(min(w.lo, -1), -1)
            return {"D_inf": {n: v for n, v in L.dims().items() if n in ww}}, used
        if kind == "env":
            U = universal_enveloping(L.dgla, w)
            return {"U1(D_inf)": homology_dims(U.complex(), w)}, used
        wc = Window(-w.hi, -w.lo) if w.hi <= 0 else w
        depth = -(wc.hi + 2) * max(1, max([-d for d in L.dgla.degrees] or [1]))
        L = koszul_dual_infty(a, Window(depth, -1))
        used["window"] = str(wc)
        ce = ce_cochains(L.dgla, opts["weight_bound"], wc)
        return {"Ch(D_inf)": ce.homology(wc)}, used
    if kind == "circle":
        ct, _ = circle_tensor_commutative(a, Window(0, w.hi + 1))
        return {"R(x)S1": homology_dims(ct.complex(), w)}, used
    raise click.BadParameter(f"unknown kind {kind!r}")


@main.command()
@click.argument("kind", type=click.Choice(KINDS))
@click.argument("spec")
@common
@click.option("--n", "n", type=click.IntRange(1, 2), default=1, help="Koszul dual level")
@click.option("--threads", type=int, default=1, help="worker processes (unused for compute)")
def compute(kind, spec, window, weight_bound, word_bound, u_bound, fmt, corpus, timings, n, threads):
    """Compute a homology table for the algebra SPEC (a corpus name or a JSON file)."""
    t0 = time.perf_counter()
    w = _window(window)
    opts = {"weight_bound": weight_bound, "word_bound": word_bound, "u_bound": u_bound,
            "n": n if kind == "koszul" else None}
    try:
        a = _run(lambda: load_corpus(spec, corpus))
        tables, used = _run(lambda: _compute_tables(kind, a, w, opts))
    except Exit as e:
        _finish("", e.code, str(e))
    command = ["compute", kind, spec] + [f"--{k.replace('_', '-')}={v}" for k, v in sorted(opts.items())
                                         if v is not None] + ([f"--window={window}"] if window else [])
    report = {
        "schema": SCHEMA,
        "command": command,
        "inputs_hash": _hash({"spec": dumps(a), "kind": kind, "flags": used}),
        "truncation": used,
        "results": [{"suite": "compute", "name": f"{kind} {a.name}", "ok": True,
                     "tables": {k: _table(v) for k, v in tables.items()}, "params": used, "detail": ""}],
        "verdict": "PASS",
    }
    if timings:
        report["wall_time"] = round(time.perf_counter() - t0, 3)
    _finish(_emit(report, fmt), 0)


# ---------------------------------------------------------------------------
# verify


def _corpus_hash(directory: str | None) -> str:
    base = Path(directory) if directory else corpus_dir()
    return _hash({p.name: p.read_text() for p in sorted(base.glob("*.json"))})


@main.command()
@click.argument("suite", type=click.Choice(SUITES + ["all"]))
@common
@click.option("--algebra", default="all", help="corpus algebra for mixed / calculus")
@click.option("--R", "R", default=None, help="base algebra for keycircle / eta")
@click.option("--threads", type=click.IntRange(1, 256), default=1, help="worker processes")
def verify(suite, window, weight_bound, word_bound, u_bound, fmt, corpus, timings, algebra, R, threads):
    """Run a verification suite; exit 1 if any case fails."""
    t0 = time.perf_counter()
    opts = Options(_window(window), weight_bound, word_bound, u_bound, algebra, R, corpus)
    suites = SUITES if suite == "all" else [suite]
    cases = []
    try:
        for s in suites:
            cases.extend(_run(lambda s=s: run_suite(s, opts, threads)))
    except Exit as e:
        _finish("", e.code, str(e))
    flags = {"window": window, "weight_bound": weight_bound, "word_bound": word_bound, "u_bound": u_bound,
             "algebra": algebra, "R": R}
    command = ["verify", suite] + [f"--{k.replace('_', '-')}={v}" for k, v in sorted(flags.items())
                                   if v is not None]
    ok = all(c.ok for c in cases)
    report = {
        "schema": SCHEMA,
        "command": command,
        "inputs_hash": _hash({"corpus": _corpus_hash(corpus), "suite": suite, "flags": flags}),
        "truncation": {k: v for k, v in flags.items() if k in ("window", "weight_bound", "word_bound", "u_bound")},
        "results": [c.to_json(timings) for c in cases],
        "verdict": "PASS" if ok else "FAIL",
    }
    if timings:
        report["wall_time"] = round(time.perf_counter() - t0, 3)
    _finish(_emit(report, fmt), 0 if ok else 1)


# ---------------------------------------------------------------------------
# report


_REQUIRED = {"schema", "command", "inputs_hash", "results", "verdict"}


def _check_report(d: Any, name: str) -> dict:
    if not isinstance(d, dict) or not _REQUIRED <= set(d) or d.get("schema") != SCHEMA:
        raise Exit(4, f"{name}: not a {SCHEMA} report")
    for r in d["results"]:
        if not isinstance(r, dict) or not {"suite", "name", "ok", "tables"} <= set(r):
            raise Exit(4, f"{name}: malformed result entry")
    return d


@main.command()
@click.argument("paths", nargs=-1)
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
def report(paths, fmt):
    """Merge JSON reports into one summary; exit 4 on schema mismatch or no input."""
    try:
        if not paths:
            raise Exit(4, "no reports given")
        reports = []
        for p in paths:
            try:
                d = json.loads(Path(p).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise Exit(4, f"{p}: {e}")
            reports.append(_check_report(d, p))
    except Exit as e:
        _finish("", e.code, str(e))
    results = [r for d in reports for r in d["results"]]
    ok = all(r["ok"] for r in results) and all(d["verdict"] == "PASS" for d in reports)
    merged = {
        "schema": SCHEMA,
        "command": ["report"] + [Path(p).name for p in paths],
        "inputs_hash": _hash([d["inputs_hash"] for d in reports]),
        "truncation": {},
        "results": results,
        "verdict": "PASS" if ok else "FAIL",
    }
    _finish(_emit(merged, fmt), 0 if ok else 1)


if __name__ == "__main__":
    main()
