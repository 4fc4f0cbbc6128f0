import pytest

from hochdual.calculus import (CalculusAction, apply_op, calculus_identities, deformed_differential_check,
                               words_up_to)
from hochdual.cochains import Cochain, NotCocycle, delta, unit_cochain, zero_cochain
from hochdual.dg import dual_numbers, truncated_polynomial
from hochdual.hochschild import WordOps


def dual_generator():
    a = dual_numbers()
    e = a.index["e"]
    return a, Cochain(a, {(e, e): {a.unit: 1}}, -1, 2)


@pytest.mark.parametrize("name", ["k", "dual_numbers", "x3", "sqz_k0_k1", "sqz_2", "k_plus_k1", "k_plus_k2"])
def test_identity_suite_bound3(algebras, name):
    res = calculus_identities(algebras[name], 3)
    assert res and all(r.ok for r in res), [r.line() for r in res if not r.ok]


def test_identity_suite_names_every_identity():
    names = {r.name for r in calculus_identities(dual_numbers(), 2)}
    for key in ("cup associativity", "bracket Jacobi", "[B, L_f] = 0", "[L_f, L_g] = L_[f,g]",
                "[b, iota_f] = -iota_(delta f)"):
        assert key in names


def test_contraction_by_unit_is_identity():
    a = truncated_polynomial(3)
    ops = WordOps(a)
    for w in words_up_to(a, 3):
        assert ops.contraction(unit_cochain(a), w) == {w: 1}


def test_lie_derivative_of_zero():
    a = dual_numbers()
    act = CalculusAction(a)
    chain = {(a.unit, a.index["e"]): 1}
    assert not any(act.lie_derivative(zero_cochain(a, -1), chain).values())


def test_deformed_differential_dual_numbers():
    a, mu = dual_generator()
    assert delta(mu).is_zero()
    assert deformed_differential_check(a, mu, 4)


def test_deformed_differential_cubic():
    a = truncated_polynomial(3)
    x = [a.index[l] for l in ("1", "x", "x^2")]
    table = {(x[i], x[j]): {x[i + j - 3]: 1} for i in (1, 2) for j in (1, 2) if i + j >= 3}
    mu = Cochain(a, table, -1, 2)
    assert deformed_differential_check(a, mu, 3)


def test_non_cocycle_is_rejected():
    a = truncated_polynomial(3)
    x, x2 = a.index["x"], a.index["x^2"]
    mu = Cochain(a, {(x, x2): {a.unit: 1}}, -1, 2)
    assert not delta(mu).is_zero()
    with pytest.raises(NotCocycle):
        deformed_differential_check(a, mu)


def test_zero_deformation_is_trivial():
    a = dual_numbers()
    assert deformed_differential_check(a, zero_cochain(a, -1))


def test_apply_op_is_linear():
    a = dual_numbers()
    ops = WordOps(a)
    ws = words_up_to(a, 3)
    u, v = {ws[3]: 2, ws[5]: -1}, {ws[5]: 1, ws[6]: 3}
    s = {k: u.get(k, 0) + v.get(k, 0) for k in set(u) | set(v)}
    lhs = apply_op(ops.B, s)
    ru, rv = apply_op(ops.B, u), apply_op(ops.B, v)
    rhs = {k: ru.get(k, 0) + rv.get(k, 0) for k in set(ru) | set(rv)}
    assert {k: c for k, c in lhs.items() if c} == {k: c for k, c in rhs.items() if c}
