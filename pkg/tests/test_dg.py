import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hochdual.core import complex_from_dims
from hochdual.dg import (DgAlgebra, DgLieAlgebra, abelian_lie, dual_numbers, exterior,
                         matrix_algebra, polynomial, sl2, square_zero, tensor_dga,
                         truncated_polynomial, validate_dga, validate_dgla)


def test_corpus_is_valid(algebras):
    for name, a in algebras.items():
        assert validate_dga(a) == [], name


def test_broken_associativity_is_reported():
    # x*x = y and y*x = x, but x*y = 0
    a = DgAlgebra([("1", 0), ("x", 0), ("y", 0)], {(1, 1): {2: 1}, (2, 1): {1: 1}}, 0)
    axioms = {v.axiom for v in validate_dga(a)}
    assert "associativity" in axioms


def test_broken_leibniz_is_reported():
    # d x = 1 is forbidden; d y = x with y*y = y violates Leibniz
    a = DgAlgebra([("1", 0), ("x", 0), ("y", 1)], {(2, 2): {2: 1}}, 0, diff={2: {1: 1}})
    assert validate_dga(a)


def test_constructors():
    assert truncated_polynomial(4).dims() == {0: 4}
    assert polynomial(2, 6).dims() == {0: 1, 2: 1, 4: 1, 6: 1}
    assert exterior(1).dims() == {0: 1, 1: 1}
    m = matrix_algebra(dual_numbers(), 2)
    assert m.dim == 8 and validate_dga(m) == []
    assert not m.commutative
    t = tensor_dga(dual_numbers(), exterior(1))
    assert t.dims() == {0: 2, 1: 2} and validate_dga(t) == [] and t.commutative


def test_square_zero_valid():
    for dims in ({0: 1}, {1: 1}, {0: 1, 1: 1}, {0: 2}):
        a = square_zero(complex_from_dims(dims))
        assert validate_dga(a) == [] and a.augmented


def test_lie_validation():
    assert validate_dgla(sl2()) == []
    assert validate_dgla(abelian_lie({-2: 1, -3: 1})) == []
    bad = DgLieAlgebra([("x", 0), ("y", 0)], {(0, 1): {0: 1}}, name="bad")
    assert validate_dgla(bad)


@given(st.integers(2, 5), st.integers(2, 4))
@settings(max_examples=12, deadline=None)
def test_tensor_of_truncated_polynomials(p, q):
    a = tensor_dga(truncated_polynomial(p, "x"), truncated_polynomial(q, "y"))
    assert a.dim == p * q and validate_dga(a) == []
