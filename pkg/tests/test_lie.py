import pytest
from hypothesis import given, settings, strategies as st

from hochdual.bar import free_tensor_algebra
from hochdual.core import TruncationInsufficient, Window, complex_from_dims, homology_dims
from hochdual.dg import dual_numbers, ground_field, sl2, square_zero, validate_dga, validate_dgla
from hochdual.hochschild import hochschild_chains
from hochdual.lie import (CompletionRequired, ce_chains, ce_cochains, circle_cotensor, end_lie, free_lie,
                          generators_complex, homotopy_fixed_endomorphisms, koszul_dual_infty, lyndon_words,
                          pbw_monomials, universal_enveloping, witt_dims)
from hochdual.linalg import rank


def bracket_span_dims(gdeg, bottom):
    """Dimension of the Lie words inside T(v), degree by degree, by brute force.

    Spans all left-normed brackets [x1, [x2, ... xn]] of generators with an
    independent commutator on tensors and takes ranks.
    """
    def mul(x, y):
        out = {}
        for u, a in x.items():
            for v, b in y.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return out

    def deg(word):
        return sum(gdeg[i] for i in word)

    def br(x, y, dx, dy):
        out = mul(x, y)
        for k, c in mul(y, x).items():
            out[k] = out.get(k, 0) - (-1) ** (dx * dy) * c
        return {k: c for k, c in out.items() if c}

    level = [({(i,): 1}, gdeg[i]) for i in range(len(gdeg))]
    by_deg = {}
    while level:
        for t, d in level:
            by_deg.setdefault(d, []).append(t)
        nxt = []
        for i in range(len(gdeg)):
            for t, d in level:
                if d + gdeg[i] >= bottom:
                    v = br({(i,): 1}, t, gdeg[i], d)
                    if v:
                        nxt.append((v, d + gdeg[i]))
        level = nxt
    return {d: rank(vs) for d, vs in by_deg.items()}


def test_lyndon_counts():
    # necklace count: 2 letters, length 4 -> 3 Lyndon words
    assert sum(1 for w in lyndon_words(2, 4) if len(w) == 4) == 3


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, -1), min_size=1, max_size=3))
def test_free_lie_dims_match_witt_and_brute_force(gens):
    bottom = -6
    L = free_lie(generators_complex(gens), None, Window(bottom + 1, -1))
    dims = {d: c for d, c in L.dims().items() if c}
    witt = {d: c for d, c in witt_dims(gens, bottom).items() if c}
    brute = {d: c for d, c in bracket_span_dims(gens, bottom).items() if c}
    assert dims == witt == brute


def test_free_lie_is_valid_dgla():
    L = free_lie(generators_complex([-1, -2]), None, Window(-5, -1))
    assert validate_dgla(L.dgla) == []
    assert "[x1,x1]" in L.dgla.labels


@pytest.mark.parametrize("gens", [[-1], [-2], [-1, -2]])
def test_pbw_enveloping_matches_tensor_algebra(gens):
    w = Window(-6, 0)
    v = generators_complex(gens)
    U = universal_enveloping(free_lie(v, None, Window(w.lo - 1, -1)).dgla, w)
    T = free_tensor_algebra(v, w)
    assert validate_dga(U) == []
    assert {n: U.dims().get(n, 0) for n in w} == {n: T.dims().get(n, 0) for n in w}
    assert homology_dims(U.complex(), w).dims == homology_dims(T.complex(), w).dims


def test_pbw_monomials_skip_repeated_odd():
    # one odd generator x in degree -1: monomials 1, x only (x*x is not a PBW monomial)
    assert pbw_monomials([-1], -4) == [(), (0,)]


def test_enveloping_needs_deep_enough_lie_algebra():
    L = free_lie(generators_complex([-1]), None, Window(-3, -1))
    with pytest.raises(TruncationInsufficient):
        universal_enveloping(L.dgla, Window(-6, 0))


def test_sl2_lie_homology():
    # H_*(sl2) = Lambda(c_3)
    assert homology_dims(ce_chains(sl2(), -1, 4), Window(0, 3)).dims == {0: 1, 1: 0, 2: 0, 3: 1}
    assert ce_cochains(sl2(), None, Window(-3, 0)).homology().dims == {-3: 1, -2: 0, -1: 0, 0: 1}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ce_of_koszul_dual_recovers_square_zero(d):
    w = Window(-1, 6)
    r = square_zero(complex_from_dims({d: 1}, prefix="m"))
    L = koszul_dual_infty(r, Window(-(w.hi + 2) * (d + 1), -1))
    h = ce_cochains(L.dgla, None, w).homology()
    assert h.dims == {n: (1 if n in (0, d) else 0) for n in w}


def test_ce_needs_completion_in_degree_zero_shift():
    L = free_lie(generators_complex([-1]), None, Window(-4, -1))
    with pytest.raises(CompletionRequired):
        ce_chains(L.dgla, -3, 0)


def test_circle_cotensor_doubles_with_shift():
    L = free_lie(generators_complex([-2]), None, Window(-7, -1))
    c = circle_cotensor(L.dgla)
    assert validate_dgla(c) == []
    ld, cd = L.dims(), c.dims()
    for n in range(-7, 0):
        assert cd.get(n, 0) == ld.get(n, 0) + ld.get(n + 1, 0)


def test_homotopy_fixed_points_of_ground_field():
    hc = hochschild_chains(ground_field(), Window(0, 2))
    hf = homotopy_fixed_endomorphisms(hc.mixed, 2, Window(-6, 0))
    assert hf.check_d_squared() == []
    assert hf.valid_window == Window(-4, 0)
    assert hf.homology().dims == {-4: 1, -3: 0, -2: 1, -1: 0, 0: 1}


def test_homotopy_fixed_dual_numbers_square_zero():
    hc = hochschild_chains(dual_numbers(), Window(0, 3))
    hf = homotopy_fixed_endomorphisms(hc.mixed, 2, Window(-4, 2))
    assert hf.check_d_squared() == []


def test_end_lie_is_valid():
    hc = hochschild_chains(dual_numbers(), Window(0, 1))
    assert validate_dgla(end_lie(hc.mixed)) == []
