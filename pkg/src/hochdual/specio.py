"""JSON algebra specs with exact rational coefficients, and the shipped corpus.

A spec names basis elements by label; coefficients are strings ``"p/q"``
(or integers written as ``"p"``) so round trips are bit-exact.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .core import Complex, GradedSpace, HomAlgError
from .dg import (DgAlgebra, dual_numbers, ground_field, matrix_algebra, square_zero,
                 truncated_polynomial, validate_dga)


class SpecError(HomAlgError):
    """Malformed spec or an algebra failing its axioms (``violations`` lists witnesses)."""

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


def _q(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SpecError(f"coefficient {text!r} must be a 'p/q' string")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise SpecError(f"bad coefficient {text!r}") from e


def _qstr(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _vec(items, index) -> dict:
    out: dict = {}
    for it in items:
        k = it["k"]
        if k not in index:
            raise SpecError(f"unknown basis label {k!r}")
        out[index[k]] = out.get(index[k], 0) + _q(it["coeff"])
    return {k: c for k, c in out.items() if c}


def from_dict(d: dict[str, Any], validate: bool = True) -> DgAlgebra:
    try:
        if d.get("field", "Q") != "Q":
            raise SpecError("only the field Q is supported")
        basis = [(b["label"], int(b["degree"])) for b in d["basis"]]
        labels = [l for l, _ in basis]
        if len(set(labels)) != len(labels):
            raise SpecError("duplicate basis labels")
        index = {l: i for i, l in enumerate(labels)}
        unit = d["unit"]
        if unit not in index:
            raise SpecError(f"unit {unit!r} is not a basis label")
        mult = {}
        for i, j, out in d.get("mult", []):
            if i not in index or j not in index:
                raise SpecError(f"unknown label in product ({i!r}, {j!r})")
            if (index[i], index[j]) in mult:
                raise SpecError(f"product ({i!r}, {j!r}) given twice")
            mult[(index[i], index[j])] = _vec(out, index)
        diff = {}
        for i, out in d.get("diff", []):
            if i not in index:
                raise SpecError(f"unknown label {i!r} in differential")
            diff[index[i]] = _vec(out, index)
        aug = d.get("aug")
        augmented = False
        if aug is not None:
            vals = {it["label"]: _q(it["coeff"]) for it in aug}
            for l, c in vals.items():
                if l not in index:
                    raise SpecError(f"unknown label {l!r} in augmentation")
                if c != (1 if l == unit else 0):
                    raise SpecError("augmentation must send the unit to 1 and other basis elements to 0")
            augmented = True
        a = DgAlgebra(basis, mult, index[unit], diff, aug=augmented,
                      commutative=bool(d.get("commutative", False)), name=d.get("name", ""))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, SpecError):
            raise
        raise SpecError(f"malformed spec: {e!r}") from e
    if validate:
        bad = validate_dga(a)
        if bad:
            raise SpecError(f"{a.name or 'algebra'} violates {bad[0].axiom}", bad)
    return a


def to_dict(a: DgAlgebra) -> dict[str, Any]:
    if a.trunc is not None:
        raise SpecError("truncated algebras have no finite spec")
    L = a.labels
    out: dict[str, Any] = {
        "name": a.name,
        "field": "Q",
        "basis": [{"label": l, "degree": d} for l, d in zip(L, a.degrees)],
        "unit": L[a.unit],
        "mult": [[L[i], L[j], [{"k": L[k], "coeff": _qstr(c)} for k, c in sorted(v.items())]]
                 for (i, j), v in sorted(a.mult.items())],
        "diff": [[L[i], [{"k": L[k], "coeff": _qstr(c)} for k, c in sorted(v.items())]]
                 for i, v in sorted(a.diff.items())],
        "commutative": a.commutative,
    }
    if a.augmented:
        out["aug"] = [{"label": L[a.unit], "coeff": "1/1"}]
    return out


def dumps(a: DgAlgebra) -> str:
    return json.dumps(to_dict(a), indent=1, sort_keys=True) + "\n"


def loads(text: str, validate: bool = True) -> DgAlgebra:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e}") from e
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    return from_dict(d, validate)


def load(path: str | Path, validate: bool = True) -> DgAlgebra:
    return loads(Path(path).read_text(), validate)


# ---------------------------------------------------------------------------
# corpus


def _named(a: DgAlgebra, name: str) -> DgAlgebra:
    a.name = name
    return a


def _module(comps: dict) -> Complex:
    return Complex(GradedSpace(comps))


def corpus_builders() -> dict:
    """Constructors of the shipped corpus, keyed by corpus name."""
    return {
        "k": lambda: ground_field("k"),
        "dual_numbers": dual_numbers,
        "x3": lambda: _named(truncated_polynomial(3), "x3"),
        "x4": lambda: _named(truncated_polynomial(4), "x4"),
        "sqz_k0_k1": lambda: square_zero(_module({0: ["m0"], 1: ["m1"]}), "sqz_k0_k1"),
        "sqz_2": lambda: square_zero(_module({0: ["m", "n"]}), "sqz_2"),
        "k_plus_k1": lambda: square_zero(_module({1: ["m"]}), "k_plus_k1"),
        "k_plus_k2": lambda: square_zero(_module({2: ["m"]}), "k_plus_k2"),
        "mat2_dual": lambda: matrix_algebra(dual_numbers(), 2, "mat2_dual"),
    }


CORPUS_NAMES = list(corpus_builders())


def corpus_dir() -> Path:
    return Path(str(resources.files("hochdual") / "corpus"))


def load_corpus(name: str, directory: str | Path | None = None) -> DgAlgebra:
    """A corpus algebra by name (or a path to a spec file)."""
    p = Path(name)
    if p.suffix == ".json" and p.exists():
        return load(p)
    base = Path(directory) if directory else corpus_dir()
    f = base / f"{name}.json"
    if not f.exists() and name.endswith(".json"):
        f = base / name
    if not f.exists():
        raise SpecError(f"no corpus entry {name!r} in {base}")
    return load(f)


def corpus(directory: str | Path | None = None) -> dict[str, DgAlgebra]:
    return {n: load_corpus(n, directory) for n in CORPUS_NAMES}


def write_corpus(directory: str | Path | None = None) -> list[Path]:
    base = Path(directory) if directory else corpus_dir()
    base.mkdir(parents=True, exist_ok=True)
    out = []
    for name, build in corpus_builders().items():
        f = base / f"{name}.json"
        f.write_text(dumps(build()))
        out.append(f)
    return out
