import pytest
from hypothesis import given, settings, strategies as st

from qeulerian.exactalg import (
    EXPONENTIAL,
    ORDINARY,
    Q_EXPONENTIAL,
    Poly,
    ZSeries,
    first_difference,
    poly_arith,
    poly_substitute,
    series_equal,
    series_mul,
    series_scale_z,
)
from qeulerian.qcalc import q_exp_series, q_factorial, q_int

P = Poly.parse
VARS = ["q", "t", "r", "u", "x_1", "x_2"]


def test_add_and_mul_examples():
    assert poly_arith("add", "q", "t") == P("q + t")
    assert poly_arith("mul", P("1 + q"), P("1 + q + q^2")) == P("1 + 2*q + 2*q^2 + q^3")
    assert poly_arith("mul", P("3*q*t + x_2"), 0) == 0
    assert poly_arith("sub", P("q"), P("q")).is_zero()


def test_substitute_examples():
    assert poly_substitute(P("1 + q*t"), {"q": 1}) == P("1 + t")
    assert poly_substitute(P("x_1*x_2"), {"x_1": 1, "x_2": "q"}) == P("q")


def test_canonical_printing():
    assert str(P("t*q + 1")) == "1 + q*t"
    assert str(Poly.const(0)) == "0"
    assert str(P("q^2*t + 2*q*t + 1 + q^2*t^2 + q^3*t")) == "1 + 2*q*t + q^2*t + q^3*t + q^2*t^2"
    assert str(P("-q + 1")) == "1 - q"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        P("q +* t")


def test_unknown_variable_rejected():
    with pytest.raises(ValueError):
        Poly.var("y")


def test_exact_div_and_truncate():
    assert P("2 + 4*q").exact_div(2) == P("1 + 2*q")
    with pytest.raises(ArithmeticError):
        P("1 + 2*q").exact_div(2)
    assert P("1 + q + q^2 + q^3*t").truncate("q", 2) == P("1 + q")


def test_degree_and_coefficients():
    p = P("1 + 3*q^2*t + t^3")
    assert p.degree() == 3
    assert p.degree("q") == 2
    assert p.coefficient({"q": 2, "t": 1}) == 3
    assert p.coefficients_in("t") == {0: P("1"), 1: P("3*q^2"), 3: P("1")}
    assert p.evaluate({"q": 2, "t": 1}) == 14


# -- properties ---------------------------------------------------------------


@st.composite
def polys(draw, max_terms=5):
    n = draw(st.integers(0, max_terms))
    total = Poly.const(0)
    for _ in range(n):
        exps = {v: draw(st.integers(0, 3)) for v in draw(st.sets(st.sampled_from(VARS), max_size=3))}
        total = total + Poly.monomial(exps, draw(st.integers(-9, 9)))
    return total


@settings(max_examples=1000, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a and a + 0 == a


@settings(max_examples=300, deadline=None)
@given(polys())
def test_parse_print_round_trip(a):
    assert P(str(a)) == a


@settings(max_examples=300, deadline=None)
@given(polys(), st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_composes(p, a, b):
    stepwise = p.substitute({"q": a}).substitute({"t": b})
    assert stepwise == p.substitute({"q": a, "t": b})


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), st.integers(-3, 3))
def test_substitution_is_a_ring_map(a, b, v):
    s = {"x_1": P(f"{v}*q + t")}
    assert (a * b).substitute(s) == a.substitute(s) * b.substitute(s)
    assert (a + b).substitute(s) == a.substitute(s) + b.substitute(s)


@settings(max_examples=200, deadline=None)
@given(polys(), st.dictionaries(st.sampled_from(VARS), st.integers(-4, 4)))
def test_evaluate_matches_full_substitution(p, values):
    full = {v: values.get(v, 1) for v in VARS}
    assert p.substitute(full) == p.evaluate(full)


# -- series ---------------------------------------------------------------


def test_series_examples():
    z = ZSeries([1, 1, 0], ORDINARY)
    w = ZSeries([1, -1, 0], ORDINARY)
    assert series_mul(z, w) == ZSeries([1, 0, -1], ORDINARY)
    tq = P("q*t")
    assert series_scale_z(ZSeries([1, 1, 1]), tq) == ZSeries([1, tq, tq * tq])
    assert series_scale_z(z, 1) == z
    assert series_equal(ZSeries([1, 1]), ZSeries([1, 1]), 1)
    assert not series_equal(ZSeries([1, 1]), ZSeries([1, 2]), 1)
    assert first_difference(ZSeries([1, 1]), ZSeries([1, 2]), 1) == 1


def test_series_equal_out_of_range():
    with pytest.raises(IndexError):
        series_equal(ZSeries([1]), ZSeries([1, 2]), 1)


def test_q_exponential_square():
    # exp_q(z)^2 numerators are sum_k [n choose k]_q; at z^2 that is 2 + [2]_q
    e = q_exp_series(3)
    sq = series_mul(e, e)
    assert sq[2] == P("3 + q")
    assert sq[1] == 2
    # the q -> 1 shadow is 2^n
    assert [sq[n].substitute({"q": 1}) for n in range(4)] == [1, 2, 4, 8]


def test_exponential_kind_is_binomial():
    e = ZSeries([1] * 5, EXPONENTIAL)
    assert [c.constant() for c in series_mul(e, e).coeffs] == [1, 2, 4, 8, 16]


def test_kinds_do_not_mix():
    with pytest.raises(ValueError):
        series_mul(ZSeries([1], ORDINARY), ZSeries([1], Q_EXPONENTIAL))


def _series(draw, kind):
    return ZSeries([draw(polys(3)) for _ in range(4)], kind)


@settings(max_examples=100, deadline=None)
@given(st.data(), st.sampled_from([ORDINARY, EXPONENTIAL, Q_EXPONENTIAL]))
def test_series_mul_ring_laws(data, kind):
    a, b, c = (_series(data.draw, kind) for _ in range(3))
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c)


def test_q_factorial_cleared_product():
    # numerator n of exp_q(z) * exp_q(zt) times [n]_q! is sum_k [n k]_q t^k
    prod = series_mul(q_exp_series(3), q_exp_series(3, "t"))
    assert prod[2] == P("1 + t^2") + q_int(2) * P("t")
    assert q_factorial(3) == P("1 + 2*q + 2*q^2 + q^3")
