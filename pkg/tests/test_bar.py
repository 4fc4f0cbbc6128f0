import pytest
from hypothesis import given, settings, strategies as st

from hochdual.bar import (NotAugmented, bar, bar_algebra, bar_iterated, free_tensor_algebra, koszul_dual_n)
from hochdual.core import TruncationInsufficient, Window, complex_from_dims, homology_dims
from hochdual.dg import (DgAlgebra, NotCommutative, NotConnective, dual_numbers, exterior, square_zero,
                         truncated_polynomial, validate_dga)
from hochdual.lie import generators_complex


def test_bar_dual_numbers_is_tor():
    # Tor^{k[e]}(k, k) is one-dimensional in every degree
    assert bar(dual_numbers(), w=Window(0, 5)).homology().values() == [1] * 6


def test_bar_truncated_cubic():
    assert bar(truncated_polynomial(3), w=Window(0, 4)).homology().values() == [1] * 5


def test_bar_square_zero_degree_one():
    # Bar(k + k[1]) = T(k[2]): one class in each even degree
    r = square_zero(complex_from_dims({1: 1}, prefix="m"))
    assert bar(r, w=Window(0, 6)).homology().dims == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1, 5: 0, 6: 1}


def test_weight_bound_clips_window():
    bc = bar(dual_numbers(), weight_bound=2, w=Window(0, 5))
    # weight <= 2 materializes degree <= 2, so homology is exact through degree 1
    assert bc.valid_window == Window(0, 1)
    with pytest.raises(TruncationInsufficient):
        bc.homology(Window(0, 5))


def test_bar_shuffle_algebra_is_cdga():
    ba = bar_algebra(dual_numbers(), 4)
    assert validate_dga(ba) == []
    assert ba.commutative


def test_bar_needs_augmentation_and_connectivity():
    a = dual_numbers()
    plain = DgAlgebra([(l, d) for l, d in zip(a.labels, a.degrees)], a.mult, a.unit, name="noaug")
    with pytest.raises(NotAugmented):
        bar(plain)
    with pytest.raises(NotConnective):
        bar(exterior(-1))


def test_iterated_bar_needs_commutative(algebras):
    with pytest.raises(NotCommutative):
        bar_iterated(algebras["mat2_dual"], 2)


def test_double_bar_dual_numbers():
    # Bar(k[e]) = Gamma(x_2) (x) Lambda(y_1) up to homotopy; Bar of that is k[x_2] (x) Lambda(y_3)
    assert bar_iterated(dual_numbers(), 2, w=Window(0, 5)).homology().dims == {
        0: 1, 1: 0, 2: 1, 3: 1, 4: 1, 5: 1}


def test_first_koszul_dual_dual_numbers():
    kd = koszul_dual_n(dual_numbers(), 1, Window(-4, 0))
    assert kd.homology().values() == [1] * 5
    assert validate_dga(kd.algebra) == []


def test_second_koszul_dual_is_dual_of_double_bar():
    d2 = koszul_dual_n(dual_numbers(), 2, Window(-4, 0))
    b2 = bar_iterated(dual_numbers(), 2, w=Window(0, 4)).homology()
    assert {-n: v for n, v in b2.dims.items()} == d2.homology().dims


@settings(max_examples=15, deadline=None)
@given(st.dictionaries(st.integers(0, 2), st.integers(1, 2), min_size=1, max_size=2))
def test_koszul_dual_of_square_zero_is_free(dims):
    w = Window(-5, 0)
    r = square_zero(complex_from_dims(dims, prefix="m"))
    kd = koszul_dual_n(r, 1, w)
    t = free_tensor_algebra(generators_complex({-n - 1: c for n, c in dims.items()}), w)
    lhs = kd.homology()
    assert lhs.dims == homology_dims(t.complex(), kd.valid_window).dims


def test_free_tensor_needs_negative_generators():
    with pytest.raises(TruncationInsufficient):
        free_tensor_algebra(generators_complex([0]), Window(-3, 0))
