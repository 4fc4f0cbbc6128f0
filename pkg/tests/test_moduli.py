import pytest

from hochdual.cochains import Cochain, NotCocycle, zero_cochain
from hochdual.core import TruncationInsufficient, Window, complex_from_dims
from hochdual.dg import (abelian_lie, dual_numbers, ground_field, square_zero, truncated_polynomial)
from hochdual.hochschild import hh_dims, hochschild_chains
from hochdual.lie import end_lie, free_lie, generators_complex
from hochdual.linalg import rank
from hochdual.moduli import (base_change_check, base_change_report, base_extension, cyclic_deformation_chains,
                             deformed_algebra_chains, equivariant_restriction, gerstenhaber_lie,
                             quotient_by_base_ideal, tangent_space, tangent_square_check,
                             tangent_square_report, t_map, t_module)


def dual_generator():
    a = dual_numbers()
    e = a.index["e"]
    return a, Cochain(a, {(e, e): {a.unit: 1}}, -1, 2)


def cubic_cocycle():
    a = truncated_polynomial(3)
    x = [a.index[l] for l in ("1", "x", "x^2")]
    table = {(x[i], x[j]): {x[i + j - 3]: 1} for i in (1, 2) for j in (1, 2) if i + j >= 3}
    return a, Cochain(a, table, -1, 2)


def relative_hh_of_eps_squared_t(top):
    """Normalized Hochschild homology of k[t][e]/(e^2 - t) over k[t]/t^2, by hand.

    Degree n chains are t^s e^a (x) e^(x)n with s, a in {0, 1}; products use
    e*e = t and t^2 = 0.  Returns dims over k per degree.
    """
    basis = {n: [(s, a) for s in (0, 1) for a in (0, 1)] for n in range(top + 2)}

    def mult(u, v):
        # (t^s e^a)(t^r e^b)
        (s, a), (r, b) = u, v
        s, e = s + r, a + b
        if e == 2:
            s, e = s + 1, 0
        return None if s > 1 else (s, e)

    def b(n, key):
        s, a = key
        out = {}
        word = [(s, a)] + [(0, 1)] * n
        for i in range(n):
            p = mult(word[i], word[i + 1])
            if p is None:
                continue
            new = word[:i] + [p] + word[i + 2:]
            # move t out of the slot, then drop words with a unit letter
            ts = sum(x[0] for x in new)
            if ts > 1 or any(x[1] == 0 for x in new[1:]):
                continue
            k = (ts, new[0][1])
            out[k] = out.get(k, 0) + (-1) ** i
        if n:
            p = mult(word[n], word[0])
            if p is not None:
                new = [p] + word[1:n]
                ts = sum(x[0] for x in new)
                if ts <= 1:
                    k = (ts, new[0][1])
                    out[k] = out.get(k, 0) + (-1) ** n
        return out

    def mat(n):
        return [{basis[n - 1].index(k): c for k, c in b(n, key).items() if c} for key in basis[n]]

    ranks = {n: (rank(mat(n)) if n else 0) for n in range(top + 2)}
    dims = {n: 4 - ranks[n] - ranks[n + 1] for n in range(top + 1)}
    return dims


def test_tangent_space_abelian():
    assert tangent_space(abelian_lie({-2: 1}), 1).dimension == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_tangent_space_of_end_k_vanishes(d):
    hc = hochschild_chains(ground_field(), Window(0, 2))
    assert tangent_space(end_lie(hc.mixed), d).dimension == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_tangent_space_of_free_lie_on_one_generator(d):
    L = free_lie(generators_complex([-d - 1]), None, Window(-d - 2, -1))
    assert tangent_space(L.dgla, d).dimension == 1


def test_tangent_space_gerstenhaber_dual_numbers():
    assert tangent_space(gerstenhaber_lie(dual_numbers(), 4), 1).dimension == 1


def test_tangent_space_window_check():
    with pytest.raises(TruncationInsufficient):
        tangent_space(abelian_lie({-2: 1}), 1, Window(-1, 0))


def test_trivial_deformation_is_free_rank_two():
    a = dual_numbers()
    w = Window(0, 3)
    fd = cyclic_deformation_chains(a, zero_cochain(a, -1), w)
    hh = hh_dims(a, w)
    assert equivariant_restriction(fd).dims == {n: 2 * hh[n] for n in w}
    tm = t_module(fd.deformed_chains, w)
    assert tm.t_ranks == {n: hh[n] for n in w}


def test_deformation_matches_hand_computed_relative_chains():
    a, mu = dual_generator()
    w = Window(0, 3)
    fd = cyclic_deformation_chains(a, mu, w)
    assert not any(fd.check().values())
    oracle = relative_hh_of_eps_squared_t(3)
    assert equivariant_restriction(fd).dims == oracle == {0: 4, 1: 1, 2: 1, 3: 1}
    # t acts on HH_0 = k[e]/(e^4) by e^2: rank 2; zero above
    assert t_module(fd.deformed_chains, w).t_ranks == {0: 2, 1: 0, 2: 0, 3: 0}


def test_t_action_is_square_zero():
    a, mu = dual_generator()
    fd = cyclic_deformation_chains(a, mu, Window(0, 2))
    m = fd.deformed_chains
    t = t_map(m)
    for n in m.space.degrees():
        for key in m.space.basis(n):
            assert t.apply(n, t.apply(n, {key: 1})) == {}


def test_non_cocycle_rejected():
    a = truncated_polynomial(3)
    x, x2 = a.index["x"], a.index["x^2"]
    with pytest.raises(NotCocycle):
        cyclic_deformation_chains(a, Cochain(a, {(x, x2): {a.unit: 1}}, -1, 2))


@pytest.mark.parametrize("build", [dual_generator, cubic_cocycle])
def test_tangent_square_nontrivial(build):
    a, mu = build()
    w = Window(0, 3) if a.dim == 2 else Window(0, 2)
    rep = tangent_square_report(a, mu, w)
    assert rep.axioms_ok and rep.ok
    assert rep.upper == rep.lower


@pytest.mark.parametrize("name", ["dual_numbers", "x3", "sqz_2"])
def test_tangent_square_trivial(algebras, name):
    a = algebras[name]
    assert tangent_square_check(a, zero_cochain(a, -1), Window(0, 2))


def test_upper_route_is_deformed_product():
    a, mu = dual_generator()
    m = deformed_algebra_chains(a, mu, Window(0, 3))
    assert not any(m.check_axioms().values())


def test_base_change_dual_numbers_over_itself():
    a = dual_numbers()
    rep = base_change_report(a, a, None, Window(0, 3))
    assert rep.ok and rep.derived.dims == {0: 1, 1: 0, 2: 0, 3: 0}


def test_base_change_extension_gives_dual_numbers():
    r = dual_numbers()
    a, f = base_extension(r, truncated_polynomial(2, "x"))
    rep = base_change_report(a, r, f, Window(0, 3))
    assert rep.ok
    assert rep.derived.dims == hh_dims(dual_numbers(), Window(0, 3)).dims


def test_base_change_graded_base():
    r = square_zero(complex_from_dims({1: 1}, prefix="m"))
    a, f = base_extension(r, truncated_polynomial(2, "x"))
    assert base_change_check(a, r, f, Window(0, 3))


def test_base_change_over_ground_field():
    k, a = ground_field(), truncated_polynomial(3)
    assert base_change_check(a, k, {0: {a.unit: 1}}, Window(0, 3))


def test_quotient_by_base_ideal():
    r = dual_numbers()
    a, f = base_extension(r, truncated_polynomial(3, "x"))
    q = quotient_by_base_ideal(a, r, f)
    assert q.dim == 3
