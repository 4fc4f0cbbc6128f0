import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hochdual.calculus import words_up_to
from hochdual.core import (Complex, MixedComplex, TruncationInsufficient, Window, complex_from_dims,
                           homology_dims, is_quasi_iso_in_window)
from hochdual.dg import (dual_numbers, exterior, matrix_algebra, polynomial, square_zero, tensor_dga,
                         truncated_polynomial)
from hochdual.hochschild import (HochschildChains, WordOps, circle_tensor_commutative, classical_boundary,
                                 cyclic_variants, hh_dims, hochschild_chains, normalization_map,
                                 shuffle_product)
from hochdual.linalg import Echelon, rank


def tensor_words(a, n):
    return list(itertools.product(range(a.dim), repeat=n + 1))


def connes_cyclic_dims(a, top):
    """HC_n of an ungraded algebra from Connes' quotient A^{(x) n+1} / (1 - t) (oracle)."""
    def b(w):
        return classical_boundary(a, w, normalized=False)

    def t_rel(w):
        n = len(w) - 1
        rot = (w[-1],) + w[:-1]
        out = {w: 1}
        out[rot] = out.get(rot, 0) - (-1) ** n
        return {k: v for k, v in out.items() if v}

    rel = {}
    for n in range(0, top + 2):
        rel[n] = [t_rel(w) for w in tensor_words(a, n)]
    dims = {}
    quot = {n: len(tensor_words(a, n)) - rank(rel[n]) for n in rel}

    def induced_rank(n):
        if n == 0:
            return 0
        imgs = [b(w) for w in tensor_words(a, n)] + rel[n - 1]
        return rank(imgs) - rank(rel[n - 1])

    for n in range(0, top + 1):
        dims[n] = quot[n] - induced_rank(n) - induced_rank(n + 1)
    return dims


def test_hh_dual_numbers():
    assert hh_dims(dual_numbers(), Window(0, 4)).values() == [2, 1, 1, 1, 1]


@pytest.mark.parametrize("p", [3, 4])
def test_hh_truncated_polynomial(p):
    # char 0: HH_0 = p and HH_n = p - 1 for n >= 1
    assert hh_dims(truncated_polynomial(p), Window(0, 3)).values() == [p] + [p - 1] * 3


def test_hh_exterior_and_polynomial():
    # HH of k[y], |y| = 1 odd: free graded commutative on y and its suspension of degree 2
    assert hh_dims(exterior(1), Window(0, 4)).values() == [1, 1, 1, 1, 1]
    # polynomial on an even class of degree 2 truncated: certified through its truncation
    p = polynomial(2, 6)
    with pytest.raises(TruncationInsufficient):
        hh_dims(p, Window(0, 8))


def test_morita_invariance():
    assert hh_dims(matrix_algebra(dual_numbers(), 2), Window(0, 3)).values() == [2, 1, 1, 1]


def test_normalized_matches_classical_boundary(algebras):
    for name in ("dual_numbers", "x3", "x4", "sqz_2", "mat2_dual"):
        a = algebras[name]
        ops = WordOps(a)
        for w in words_up_to(a, 3):
            assert ops.b(w) == classical_boundary(a, w), (name, w)


def test_normalization_is_quasi_iso():
    a = truncated_polynomial(3)
    w = Window(0, 3)
    full = HochschildChains(a, range(-1, 7), normalized=False)
    norm = HochschildChains(a, range(-1, 7))
    f = normalization_map(full, norm)
    assert is_quasi_iso_in_window(f, full.complex, norm.complex, w)


def test_mixed_axioms_words(algebras):
    for name, a in algebras.items():
        ops = WordOps(a)
        for w in words_up_to(a, 3):
            bw = ops.b(w)
            acc = {}
            for k, c in bw.items():
                for k2, c2 in ops.b(k).items():
                    acc[k2] = acc.get(k2, 0) + c * c2
            assert not any(acc.values()), (name, w)
            acc = {}
            for k, c in ops.B(w).items():
                for k2, c2 in ops.b(k).items():
                    acc[k2] = acc.get(k2, 0) + c * c2
            for k, c in bw.items():
                for k2, c2 in ops.B(k).items():
                    acc[k2] = acc.get(k2, 0) + c * c2
            assert not any(acc.values()), (name, w)


@pytest.mark.parametrize("name", ["dual_numbers", "x3", "sqz_2"])
def test_cyclic_homology_matches_connes_quotient(algebras, name):
    a = algebras[name]
    w = Window(0, 3)
    hc = hochschild_chains(a, Window(0, 9))
    got = cyclic_variants(hc.mixed, 3, w)["cyclic"]
    oracle = connes_cyclic_dims(a, 3)
    assert got.values() == [oracle[n] for n in w]


def test_cyclic_of_ground_field():
    from hochdual.dg import ground_field
    hc = hochschild_chains(ground_field(), Window(0, 6))
    var = cyclic_variants(hc.mixed, 4, Window(-4, 4))
    assert var["cyclic"].nonzero() == {0: 1, 2: 1, 4: 1}
    assert var["negative"].nonzero() == {0: 1, -2: 1, -4: 1}
    assert var["periodic"].nonzero() == {-4: 1, -2: 1, 0: 1, 2: 1, 4: 1}


def test_negative_cyclic_needs_bounded_chains():
    hc = hochschild_chains(dual_numbers(), Window(0, 4))
    assert cyclic_variants(hc.mixed, 2, Window(0, 2))["negative"] is None


def test_graded_square_zero_and_dg():
    a = square_zero(complex_from_dims({1: 1}))
    # k + k[1] is free graded commutative on an odd class: HH = k[y] (x) Gamma(sy)
    assert hh_dims(a, Window(0, 4)).values() == [1, 1, 1, 1, 1]


def test_truncation_reports_certified_window():
    p = polynomial(2, 4)
    try:
        hochschild_chains(p, Window(0, 6))
    except TruncationInsufficient as e:
        assert e.certified is not None and e.certified.hi <= 4
    else:
        pytest.fail("expected TruncationInsufficient")


@given(st.lists(st.sampled_from([1]), min_size=1, max_size=4), st.sampled_from([1]))
@settings(max_examples=10, deadline=None)
def test_shuffle_is_commutative_on_dual_numbers(letters, base):
    a = dual_numbers()
    e = a.index["e"]
    u = (a.unit,) + tuple(e for _ in letters)
    v = (e,)
    uv, vu = shuffle_product(a, u, v), shuffle_product(a, v, u)
    deg_u = len(letters)
    sign = 1 if (deg_u * 0) % 2 == 0 else -1
    assert uv == {k: sign * c for k, c in vu.items()}


def test_circle_tensor_is_cdga_with_hh_homology():
    from hochdual.dg import validate_dga
    r = dual_numbers()
    ct, Bop = circle_tensor_commutative(r, Window(0, 3))
    assert validate_dga(ct) == []
    assert homology_dims(ct.complex(), Window(0, 2)).values() == [2, 1, 1]
