"""Tangent algebras, separable lifts, liftability and multi-valued operators."""

import pytest

from ffzeta.carlitz import THETA, TauMatSeries, mat_identity, tensor_exp_log, tensor_power_action
from ffzeta.errors import NotInvertible
from ffzeta.field import field_for
from ffzeta.lift import (
    LiftProblem,
    TangentElt,
    lift_residual,
    liftability_check,
    multivalued_operator,
    scalar_matrix,
    separable_lift,
    tangent_extend_K,
    tangent_invert,
    tangent_matrix,
    tangent_of_operator,
    vadic_separable_lift,
)
from ffzeta.poly import FqPoly
from ffzeta.ratfn import RatFn
from ffzeta.series import Place, ValSeries


def P(r, cs, var="T"):
    return FqPoly(field_for(r), cs, var)


def R(r, cs):
    return RatFn.from_poly(P(r, cs, THETA))


def test_tangent_of_operator_examples():
    r = 5
    x = tangent_of_operator(P(r, [0, 1]), 2)
    assert x.c == (R(r, [0, 1]), R(r, [1]))
    x = tangent_of_operator(P(r, [0, 0, 0, 1]), 2)
    assert x.c == (R(r, [0, 0, 0, 1]), R(r, [0, 0, 3]))
    x = tangent_of_operator(P(r, [3]), 3)
    assert x.nilpotent_part().is_zero()


def test_tangent_invert_examples():
    r = 3
    x = tangent_of_operator(P(r, [0, 1]), 2)
    th = R(r, [0, 1])
    assert tangent_invert(x).c == (th.inverse(), -(th * th).inverse())
    c = TangentElt.scalar(R(r, [1, 1]), 3, th.zero(), th.one())
    assert tangent_invert(c) == TangentElt.scalar(R(r, [1, 1]).inverse(), 3, th.zero(), th.one())
    one_eps = TangentElt([th.one(), th.one()], 3, th.zero(), th.one())
    assert one_eps * tangent_invert(one_eps) == 1
    with pytest.raises(NotInvertible):
        tangent_invert(TangentElt([th.zero(), th.one()], 2, th.zero(), th.one()))


def test_tangent_extend_K():
    r = 3
    T = P(r, [0, 1])
    inv = tangent_extend_K(RatFn(P(r, [1]), T), 2)
    th = R(r, [0, 1])
    assert inv.c == (th.inverse(), -(th * th).inverse())
    assert tangent_extend_K(RatFn.from_poly(T), 4) == tangent_of_operator(T, 4)
    x = RatFn(T + 1, T)
    a, b = tangent_extend_K(RatFn.from_poly(T + 1), 3), tangent_extend_K(RatFn(P(r, [1]), T), 3)
    assert tangent_extend_K(x, 3) == a * b


def test_tangent_extend_K_series_matches_ratfn():
    r = 5
    T = P(r, [0, 1])
    x = RatFn(T * T + 2, T * T * T + T + 1)
    place = Place.infinity(field_for(r))
    ts = tangent_extend_K(ValSeries.from_ratfn(x, place, 30), 4)
    tr = tangent_extend_K(x, 4)
    for i in range(4):
        want = ValSeries.from_ratfn(tr.c[i].with_var("T"), place, 30)
        assert (ts.c[i] - want).valuation() >= 25


def _example_problem():
    r = 5
    return LiftProblem([P(r, [0, 0, 0, 1]), P(r, [0, 1]), P(r, [1])], 2)


def test_separable_lift_closed_form():
    prob = _example_problem()
    X = separable_lift(prob)
    lam = prob.lam()
    th = prob.ext.scalar(P(5, [0, 1], THETA))
    assert X.c[0] == lam
    assert X.c[1] == (-lam - th * th * 3) / (lam * 2 + th)
    assert lift_residual(prob, X).is_zero()


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_separable_lift_residual_higher_order(t):
    prob = LiftProblem([P(5, [0, 0, 0, 1]), P(5, [0, 1]), P(5, [1])], t)
    assert lift_residual(prob, separable_lift(prob)).is_zero()


def test_separable_lift_trivial_and_geometric():
    r = 3
    for t in (2, 4):
        prob = LiftProblem([P(r, [0, 2]), P(r, [1])], t)  # u - T
        X = separable_lift(prob)
        assert X.c[1] == prob.ext.scalar(1) and all(x.is_zero() for x in X.c[2:])
    prob = LiftProblem([P(r, [0, 1]), P(r, [0]), P(r, [1])], 2)  # u^2 + T
    X = separable_lift(prob)
    assert lift_residual(prob, X).is_zero()
    assert X.c[1] == prob.lam().inverse()


def test_vadic_lift_matches_closed_form():
    r, M = 5, 12
    prob = _example_problem()
    exact = separable_lift(prob)
    v = P(r, [4, 1])  # T - 1
    place = Place.finite(v)
    X, ext = vadic_separable_lift(prob.coeffs, place, 2, M)
    for k in range(2):
        for i, coef in enumerate(exact.c[k].coeffs()):
            want = ValSeries.from_ratfn(coef.with_var("T"), place, M) if not coef.is_zero() else ValSeries.zero(place)
            got = X.c[k].coeff(i)
            assert (got - want).valuation() >= M - 2


def test_liftability():
    p = 2
    th = R(p, [0, 1])
    zero, one = th.zero(), th.one()
    target = TangentElt([th, one], 2, zero, one)
    assert liftability_check(target, 2, 1).status == "obstructed"
    th3 = R(3, [0, 1])
    assert liftability_check(TangentElt([th3], 2, th3.zero(), th3.one()), 3, 1).status == "scalar-only"
    target = TangentElt([th3, th3.zero(), th3.zero(), th3 * th3 * th3], 5, th3.zero(), th3.one())
    res = liftability_check(target, 3, 1)
    assert res.status == "liftable" and res.root_exact
    assert res.witness.c[1] == th3
    assert res.witness ** 3 == target.nilpotent_part()


def test_multivalued_operator_cases():
    r, N = 2, 6
    e, lg = tensor_exp_log(r, 1, N)
    for a in ([0, 1], [1, 0, 1], [0, 1, 0, 1]):
        op = P(r, a)
        M = tangent_matrix(op, 1)
        got = multivalued_operator(M, e, lg, N)
        want = tensor_power_action(1, op, kind=RatFn).truncate(N)
        assert got == want
    ident = mat_identity(1, e.zero, e.one)
    assert multivalued_operator(ident, e, lg, N) == TauMatSeries.identity(1, e.zero, e.one, N)
    e2, lg2 = tensor_exp_log(r, 2, 5)
    op = P(r, [1, 1, 1])
    got = multivalued_operator(tangent_matrix(op, 2), e2, lg2, 5)
    assert got == tensor_power_action(2, op, kind=RatFn).truncate(5)


def test_multivalued_operator_of_a_rational_scalar_is_not_polynomial():
    """e(c log tau) for c outside A has infinitely many nonzero terms."""
    r, N = 3, 4
    e, lg = tensor_exp_log(r, 1, N)
    c = R(r, [0, 1]).inverse()
    psi = multivalued_operator(scalar_matrix(c, 1, e.zero, e.one), e, lg, N)
    assert psi.coeffs[0][0][0] == c
    assert not any(psi.coeffs[k][0][0].is_zero() for k in range(1, N + 1))


def _random_problems(rng, count):
    """Separable minimal polynomials of degree <= 4 over F_r[T] with t <= 5."""
    out = []
    while len(out) < count:
        r = int(rng.choice([2, 3, 5]))
        deg = int(rng.integers(1, 5))
        cs = [P(r, list(rng.integers(0, r, int(rng.integers(1, 4))))) for _ in range(deg)] + [P(r, [1])]
        try:
            prob = LiftProblem(cs, int(rng.integers(2, 6)))
        except ValueError:
            continue  # inseparable
        out.append(prob)
    return out


def test_separable_lift_random_corpus(rng):
    from ffzeta.hyperderiv import extend_derivation

    for prob in _random_problems(rng, 24):
        X = separable_lift(prob)
        assert lift_residual(prob, X).is_zero()
        assert X.c[0] == prob.lam()
        assert X.c[1] == extend_derivation(prob.lam())


def test_separable_lift_is_unique_under_perturbation(rng):
    prob = LiftProblem([P(5, [0, 0, 0, 1]), P(5, [0, 1]), P(5, [1])], 5)
    X = separable_lift(prob)
    ext = prob.ext
    for _ in range(5):
        noise = [ext.element([RatFn.from_poly(P(5, list(rng.integers(0, 5, 3)), THETA)) for _ in range(2)]) for _ in range(4)]
        start = TangentElt([prob.lam(), *noise], 5, ext.scalar(0), ext.scalar(1))
        assert separable_lift(prob, start) == X


def test_lift_respects_sum_and_product_of_conjugates():
    """lambda and mu = -T - lambda: lambda + mu = -T and lambda mu = T^3."""
    r, t = 5, 4
    prob = LiftProblem([P(r, [0, 0, 0, 1]), P(r, [0, 1]), P(r, [1])], t)
    ext = prob.ext
    lam = prob.lam()
    mu = -lam - ext.scalar(P(r, [0, 1], THETA))
    X = separable_lift(prob)
    Y = separable_lift(prob, TangentElt([mu], t, ext.scalar(0), ext.scalar(1)))
    assert Y.c[0] == mu and lift_residual(prob, Y).is_zero()

    def embed(a):
        return tangent_of_operator(a, t).map(ext.scalar, ext.scalar(0), ext.scalar(1))

    assert X + Y == embed(P(r, [0, 4]))
    assert X * Y == embed(P(r, [0, 0, 0, 1]))


@pytest.mark.parametrize("r,cs", [(3, [[1], [0], [1]]), (2, [[1], [1], [1]]), (5, [[2], [0], [1]])])
def test_constants_lift_as_scalars(r, cs):
    prob = LiftProblem([P(r, c) for c in cs], 4)
    X = separable_lift(prob)
    assert all(x.is_zero() for x in X.c[1:])
