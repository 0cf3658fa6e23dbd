import json
import math

import pytest

from qeulerian import genfun
from qeulerian.exactalg import Poly
from qeulerian.qcalc import q_factorial

P = Poly.parse


def test_maj_exc_examples():
    assert genfun.maj_exc_poly(0) == 1
    assert str(genfun.maj_exc_poly(2)) == "1 + q*t"
    assert genfun.maj_exc_poly(3) == P("1 + 2*q*t + q^2*t + q^3*t + q^2*t^2")


def test_fix_refined_examples():
    assert genfun.fix_refined_poly(2) == P("r^2 + q*t")
    assert genfun.fix_refined_poly(3) == P("r^3 + q*t*r + q^2*t*r + q^3*t*r + q*t + q^2*t^2")
    for n in range(6):
        assert genfun.fix_refined_poly(n).substitute({"r": 1}) == genfun.maj_exc_poly(n)


def test_thm_1_2_rhs_examples():
    assert genfun.thm_1_2_rhs(2) == P("r^2 + q*t")
    assert genfun.thm_1_2_rhs(3) == genfun.fix_refined_poly(3)


def test_unordered_tuple_reading_undercounts():
    ones = {"q": 1, "t": 1, "r": 1}
    assert genfun.thm_1_2_rhs(5).evaluate(ones) == 120
    assert genfun.thm_1_2_rhs(5, ordered=False).evaluate(ones) != 120


def test_aid_des_small():
    assert genfun.aid_des_poly(1) == 1
    assert genfun.aid_des_poly(3) == genfun.maj_exc_poly(3)
    with pytest.raises(ValueError):
        genfun.aid_des_poly(0)


@pytest.mark.parametrize("n", range(0, 8))
def test_t_equals_one_is_q_factorial(n):
    assert genfun.maj_exc_poly(n).substitute({"t": 1}) == q_factorial(n)


@pytest.mark.parametrize("N", [0, 1, 2, 6])
def test_thm_1_1_small_orders(N):
    report = genfun.verify_thm_1_1(N)
    assert report.passed and report.first_mismatch is None


def test_eulerian_egf():
    assert genfun.verify_eulerian_egf(7).passed
    assert genfun.eulerian_poly(4) == P("1 + 11*t + 11*t^2 + t^3")


def test_maj_and_inv_are_the_q_factorial():
    for n in range(7):
        assert genfun.maj_poly(n) == genfun.inv_poly(n) == q_factorial(n)


def test_unknown_statistic():
    with pytest.raises(ValueError):
        genfun.stat_poly("nope", 3)


def test_thread_count_does_not_change_results():
    for name in ("maj-exc", "fix-refined", "aid-des"):
        serial = genfun.stat_poly(name, 7, threads=1)
        assert genfun.stat_poly(name, 7, threads=2) == serial
        assert genfun.stat_poly(name, 7, threads=3) == serial


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("QEL_THREADS", "3")
    assert genfun.default_threads() == 3
    monkeypatch.setenv("QEL_THREADS", "junk")
    assert genfun.default_threads() == 1


def test_report_serializes():
    report = genfun.verify_thm_1_2(4)
    data = json.loads(json.dumps(report.to_dict()))
    assert data["pass"] is True
    assert data["details"]["n_factorial"] == math.factorial(4)
