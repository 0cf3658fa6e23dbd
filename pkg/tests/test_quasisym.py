import itertools
from collections import Counter

import pytest

from qeulerian import quasisym as qs
from qeulerian.exactalg import Poly
from qeulerian.permstat import cycle_type, excedance_set, partitions

P = Poly.parse


def _F_oracle(S, n, m):
    """Brute force over all index tuples in [m]^n."""
    total = Poly.const(0)
    for seq in itertools.product(range(1, m + 1), repeat=n):
        if any(seq[i] < seq[i + 1] for i in range(n - 1)):
            continue
        if any(seq[j - 1] == seq[j] for j in S):
            continue
        mono = Counter(seq)
        total = total + Poly.monomial({f"x_{i}": e for i, e in mono.items()})
    return total


def test_fundamental_examples():
    assert qs.fundamental_F(frozenset(), 2, 2) == P("x_1^2 + x_1*x_2 + x_2^2")
    assert qs.fundamental_F(frozenset({1}), 2, 2) == P("x_1*x_2")
    assert qs.fundamental_F(frozenset(), 0, 3) == 1


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (3, 3), (3, 4), (4, 3)])
def test_fundamental_against_oracle(n, m):
    for size in range(n):
        for S in itertools.combinations(range(1, n), size):
            assert qs.fundamental_F(frozenset(S), n, m) == _F_oracle(S, n, m)


def test_fundamental_rejects_bad_set():
    with pytest.raises(ValueError):
        qs.fundamental_F(frozenset({3}), 3, 3)


def test_Q_examples():
    h2 = qs.complete_h(2, 2)
    assert qs.Q_nj(2, 0, 2) == h2
    assert qs.Q_nj(2, 1, 2) == h2
    assert qs.tildeQ_nj(2, 1, 2) == h2
    assert qs.tildeQ_nj(2, 0, 2) == 0
    assert qs.Q_lambda_j((2,), 1, 2) == h2
    assert qs.tildeQ_nj(0, 0, 2) == 1


def test_Q_rejects_out_of_range_j():
    with pytest.raises(ValueError):
        qs.Q_nj(3, 3, 3)
    with pytest.raises(ValueError):
        qs.Q_nj(3, -1, 3)
    with pytest.raises(ValueError):
        qs.Q_lambda_j((1, 2), 0, 3)


@pytest.mark.parametrize("n", range(0, 6))
def test_Q_n0_is_h_n(n):
    assert qs.Q_nj(n, 0, max(n, 1)) == qs.complete_h(n, max(n, 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_squarefree_coefficient_counts_permutations(n):
    counts = Counter(
        (cycle_type(p), len(excedance_set(p))) for p in itertools.permutations(range(1, n + 1))
    )
    sq = {f"x_{i}": 1 for i in range(1, n + 1)}
    for lam in partitions(n):
        for j in range(n):
            assert qs.Q_lambda_j(lam, j, n).coefficient(sq) == counts[(lam, j)]


def test_Q_sums_over_cycle_types():
    for n in range(1, 6):
        for j in range(n):
            total = sum((qs.Q_lambda_j(lam, j, n) for lam in partitions(n)), Poly.const(0))
            assert total == qs.Q_nj(n, j, n)


@pytest.mark.parametrize("N", [0, 1, 2, 3, 4])
def test_thm_2_1_small(N):
    assert qs.verify_thm_2_1(N, max(N, 1)).passed


def test_thm_2_1_needs_enough_variables():
    with pytest.raises(ValueError):
        qs.verify_thm_2_1(4, 3)


@pytest.mark.parametrize("n", range(0, 6))
def test_cor_2_3_and_recurrence(n):
    assert qs.verify_cor_2_3(n, n).passed
    assert qs.verify_recurrence_9(n, n).passed


def test_recurrence_rhs_n2():
    # tildeQ_{2,1}: only k = 0, i = 0 contributes h_2
    assert qs.recurrence_9_rhs(2, 1, 2) == qs.complete_h(2, 2)


def test_symmetry_detector():
    assert qs.is_symmetric(P("x_1 + x_2"), 2)
    assert not qs.is_symmetric(P("x_1^2*x_2"), 2)


def test_principal_specialization_examples():
    assert qs.principal_specialization([((), 4)]).numerator == 1
    exd = frozenset({1, 4})
    assert qs.principal_specialization([(exd, 6)]).numerator == P("q^5")
    # q / ((1-q)(1-q^2)) mod q^4; pairs (4,1) and (3,2) both give q^3
    spec = qs.principal_specialization([((1,), 2)])
    assert spec.expand(4) == P("q + q^2 + 2*q^3")
    direct = qs.principal_specialization_truncated(qs.fundamental_F(frozenset({1}), 2, 4), 4)
    assert direct == P("q + q^2 + 2*q^3")


def test_specialization_recovers_maj_exc():
    for N in (0, 2, 3, 5):
        assert qs.verify_specialization_6(N).passed
