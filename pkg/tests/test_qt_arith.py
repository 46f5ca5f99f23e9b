from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linksym.linalg import SingularMatrixError, bareiss_solve, rational_inverse
from linksym.qt_arith import (
    A,
    ONE,
    ONE_MINUS_Q,
    Poly,
    Q,
    RatFunc,
    RationalQAT,
    T,
    ZERO,
    format_poly,
    parse_poly,
    poly_add,
    poly_mul,
    q_series,
    rat_normalize,
    ratfunc_eq,
    rqat_from_json,
    rqat_to_json,
)

exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(Poly)
rqats = st.tuples(polys, st.integers(0, 3)).map(lambda x: RationalQAT(*x))


def test_difference_of_squares():
    assert poly_mul(ONE + Q, ONE - Q) == ONE - Q * Q


def test_additive_identity():
    p = Q * T + 3 * A
    assert poly_add(p, ZERO) == p


def test_hand_expansion():
    assert (T + A) * (ONE + A) == T + A + A * T + A * A


def test_zero_coefficients_dropped():
    p = Poly({(1, 0, 0): 0, (0, 0, 1): 2})
    assert p.terms == {(0, 0, 1): 2}
    assert (Q - Q).terms == {}


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert all(c != 0 for c in (x * y).terms.values())


@settings(max_examples=60)
@given(polys, polys)
def test_divexact_inverts_multiplication(x, y):
    if y.is_zero():
        return
    assert (x * y).divexact(y) == x


def test_divexact_inexact_raises():
    with pytest.raises(ArithmeticError):
        (Q + T).divexact(ONE_MINUS_Q)


@pytest.mark.parametrize(
    "num, dpow, exp_num, exp_dpow",
    [
        (ONE - Q * Q, 1, ONE + Q, 0),
        (ONE, 0, ONE, 0),
        (Q * (ONE - Q), 2, Q, 1),
    ],
)
def test_rat_normalize_examples(num, dpow, exp_num, exp_dpow):
    x = rat_normalize(RationalQAT(num, dpow, normalize=False))
    assert (x.num, x.dpow) == (exp_num, exp_dpow)


@settings(max_examples=60)
@given(rqats)
def test_rat_normalize_idempotent_and_faithful(x):
    raw = RationalQAT(x.num * ONE_MINUS_Q, x.dpow + 1, normalize=False)
    y = rat_normalize(raw)
    assert rat_normalize(y).num == y.num and rat_normalize(y).dpow == y.dpow
    assert ratfunc_eq(y.to_ratfunc(), RatFunc(raw.num, ONE_MINUS_Q ** raw.dpow))


@settings(max_examples=60)
@given(rqats)
def test_multiplying_by_one_minus_q_drops_dpow(x):
    if x.dpow == 0 or x.num.is_zero():
        return
    assert (x * ONE_MINUS_Q).dpow == x.dpow - 1


def test_q_series_examples():
    assert q_series(RationalQAT(ONE, 1), 3) == ONE + Q + Q ** 2 + Q ** 3
    assert q_series(RationalQAT(ONE + A, 1), 1) == ((ONE + A) * (ONE + Q))
    p = ONE + Q ** 2 * T
    assert q_series(RationalQAT(p), 5) == p


@settings(max_examples=40)
@given(rqats, rqats, st.integers(0, 6))
def test_q_series_multiplicative(x, y, order):
    assert q_series(x * y, order) == (q_series(x, order) * q_series(y, order)).truncate_q(order)


def test_ratfunc_eq_examples():
    assert ratfunc_eq(RatFunc(ONE - Q * Q, ONE_MINUS_Q, reduce=False), RatFunc(ONE + Q))
    assert not ratfunc_eq(RatFunc(Q, T), RatFunc(T, Q))
    lhs = RatFunc(T * T - ONE, T ** 3 - ONE, reduce=False)
    rhs = RatFunc(T + ONE, T * T + T + ONE, reduce=False)
    assert ratfunc_eq(lhs, rhs)


def test_ratfunc_reduces_and_normalizes_sign():
    x = RatFunc(T * T - ONE, T ** 3 - ONE)
    assert x.num == T + ONE and x.den == T * T + T + ONE
    y = RatFunc(ONE, Q - ONE)
    assert y.den == ONE_MINUS_Q and y.num == -ONE


def test_ratfunc_field_ops():
    x = RatFunc(Q, ONE - T)
    y = RatFunc(T, ONE - Q)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * x.inverse() == RatFunc(ONE)
    assert RatFunc(ONE, ONE - Q) * Fraction(1, 2) == RatFunc(ONE, 2 * ONE - 2 * Q)


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFunc(ONE, ZERO)


def test_to_rational_qat():
    x = RatFunc(Q, ONE_MINUS_Q ** 2)
    assert x.to_rational_qat() == RationalQAT(Q, 2)
    with pytest.raises(ValueError):
        RatFunc(ONE, ONE - T).to_rational_qat()


def test_plain_emitter_graded_lex():
    assert format_poly(ONE + Q + T - Q * T) == "1 + q + t - q*t"
    assert format_poly(T ** 2 * 3 - A) == "-a + 3*t^2"
    assert format_poly(ZERO) == "0"


def test_latex_emitter():
    assert format_poly(ONE + Q + T - Q * T, latex=True) == "1 + q + t - qt"
    assert format_poly(2 * Q ** 2 * T, latex=True) == "2q^{2}t"


@settings(max_examples=60)
@given(polys)
def test_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@settings(max_examples=40)
@given(rqats)
def test_json_round_trip(x):
    assert rqat_from_json(rqat_to_json(x)) == x
    assert rqat_to_json(rqat_from_json(rqat_to_json(x))) == rqat_to_json(x)


def test_json_shape():
    obj = rqat_to_json(RationalQAT(ONE + A, 1))
    assert obj == {
        "terms": [{"q": 0, "a": 0, "t": 0, "c": "1"}, {"q": 0, "a": 1, "t": 0, "c": "1"}],
        "dpow": 1,
    }


def test_bareiss_against_fraction_solve():
    # integer matrix: compare with Gauss-Jordan over Fractions
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    det, y = bareiss_solve([[Poly.const(x) for x in row] for row in m],
                           [[Poly.const(int(i == j)) for j in range(3)] for i in range(3)])
    inv = rational_inverse(m)
    d = det.constant_term()
    assert d == 18
    for i in range(3):
        for j in range(3):
            assert Fraction(y[i][j].constant_term(), d) == inv[i][j]


def test_bareiss_polynomial_matrix():
    m = [[ONE, ONE + Q], [T, ONE]]
    det, y = bareiss_solve(m, [[ONE], [ZERO]])
    assert det == ONE - T - Q * T
    # check m @ (y / det) = (1, 0)
    assert m[0][0] * y[0][0] + m[0][1] * y[1][0] == det
    assert m[1][0] * y[0][0] + m[1][1] * y[1][0] == ZERO


def test_bareiss_singular():
    with pytest.raises(SingularMatrixError):
        bareiss_solve([[ONE, Q], [ONE, Q]], [[ONE], [ONE]])
