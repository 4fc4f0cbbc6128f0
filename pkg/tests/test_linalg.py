import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hochdual import linalg
from hochdual.linalg import Echelon, SpanSolver, SparseMatrix, rank, solve_in_span


def dense_rank(rows):
    """Gaussian elimination over Fractions on a dense matrix (oracle)."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=8))


@given(matrices)
@settings(max_examples=150, deadline=None)
def test_rank_matches_dense_oracle(rows):
    vecs = [{j: x for j, x in enumerate(r) if x} for r in rows]
    assert rank(vecs) == dense_rank(rows)


@pytest.mark.skipif(linalg._rank_ext is None, reason="compiled kernel not built")
@given(matrices)
@settings(max_examples=100, deadline=None)
def test_kernels_agree(rows):
    vecs = [{j: x for j, x in enumerate(r) if x} for r in rows]
    old = linalg.kernel_name()
    try:
        linalg.set_kernel("python")
        a = rank(vecs)
        linalg.set_kernel("compiled")
        b = rank(vecs)
    finally:
        linalg.set_kernel(old)
    assert a == b


@pytest.mark.skipif(linalg._rank_ext is None, reason="compiled kernel not built")
def test_compiled_overflow_falls_back():
    big = 2 ** 62
    vecs = [{0: big, 1: 3}, {0: 3, 1: big}, {0: 1, 1: 1}]
    assert rank(vecs) == 2


def test_rational_entries():
    assert rank([{0: Fraction(1, 2), 1: Fraction(1, 3)}, {0: 3, 1: 2}]) == 1


def test_matrix_ops():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert (a @ b) == SparseMatrix.identity(2)
    assert (a - a).is_zero()
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
    assert a.apply({0: 1, 1: 1}) == {0: 3, 1: 1}


def test_echelon_and_span():
    e = Echelon()
    assert e.add({0: 1, 1: 1})
    assert not e.add({0: 2, 1: 2})
    assert e.reduce({0: 1, 1: 1}) == {}
    assert solve_in_span([{0: 1}, {1: 1}], {0: 2, 1: 3}) == {0: 2, 1: 3}
    assert solve_in_span([{0: 1}], {1: 1}) is None


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=80, deadline=None)
def test_span_solver_recovers_coefficients(rows, coeffs):
    fam = [{j: x for j, x in enumerate(r) if x} for r in rows]
    if rank(fam) != len(fam) or not all(fam):
        return
    sol = SpanSolver([{("c", k): v for k, v in f.items()} for f in fam])
    target = {}
    for c, f in zip(coeffs, fam):
        for k, v in f.items():
            target[("c", k)] = target.get(("c", k), 0) + c * v
    target = {k: v for k, v in target.items() if v}
    got = sol.coords(target)
    assert {i: c for i, c in enumerate(coeffs[:len(fam)]) if c} == got


def test_span_solver_rejects_outside():
    sol = SpanSolver([{"a": 1}])
    with pytest.raises(ValueError):
        sol.coords({"b": 1})
