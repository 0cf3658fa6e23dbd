import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qeulerian import posetlab as pl
from qeulerian.qcalc import q_binomial


def _dense_rank(rows, ncols):
    """Gaussian elimination over Fractions on a dense copy."""
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


@settings(max_examples=300, deadline=None)
@given(
    st.lists(
        st.dictionaries(st.integers(0, 6), st.integers(-5, 5).filter(bool), max_size=5),
        max_size=8,
    )
)
def test_sparse_rank_matches_dense_oracle(rows):
    assert pl.sparse_rank(rows) == _dense_rank(rows, 7)


def test_sizes():
    assert len(pl.boolean_lattice(3)) == 8
    assert len(pl.subspace_lattice(3, 2)) == 16
    c = pl.chain(4)
    assert len(c) == 4
    assert sorted(c.rank(e) for e in c.elements) == [0, 1, 2, 3]


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)])
def test_subspace_counts_are_gaussian_binomials(n, q):
    P = pl.subspace_lattice(n, q)
    by_rank = {}
    for e in P.elements:
        by_rank[P.rank(e)] = by_rank.get(P.rank(e), 0) + 1
    expected = {k: q_binomial(n, k).evaluate({"q": q}) for k in range(n + 1)}
    assert by_rank == expected


def test_invalid_orders_rejected():
    def relation(pairs):
        return lambda a, b: (a, b) in pairs

    ranks = {"a": 0, "b": 1, "c": 2}.get
    with pytest.raises(ValueError, match="antisymmetric"):
        pl.Poset("ab", relation({("a", "b"), ("b", "a")}), ranks)
    with pytest.raises(ValueError, match="transitive"):
        pl.Poset("abc", relation({("a", "b"), ("b", "c")}), ranks)
    with pytest.raises(ValueError, match="rank"):
        pl.Poset("ab", relation({("b", "a")}), ranks)
    with pytest.raises(ValueError):
        pl.build_poset("bnq", 2, 5)


def test_rees_examples():
    R1 = pl.rees_product(pl.remove_bottom(pl.boolean_lattice(1)), pl.chain(1))
    assert list(R1.elements) == [(frozenset({1}), 1)]
    R2 = pl.rees_product(pl.remove_bottom(pl.boolean_lattice(2)), pl.chain(2))
    assert set(R2.elements) == {
        (frozenset({1}), 1), (frozenset({2}), 1), (frozenset({1, 2}), 1), (frozenset({1, 2}), 2),
    }


def test_ideal_examples():
    assert len(pl.rees_ideal(1, 1)) == 0
    lines = {(frozenset({1}), 1), (frozenset({2}), 1)}
    for j in (1, 2):
        I = pl.rees_ideal(2, j)
        assert set(I.elements) == lines
        assert not I.covers()


def test_betti_examples():
    empty = pl.rees_ideal(1, 1)
    assert pl.betti_numbers(empty)[-1] == 1
    assert pl.betti_numbers(pl.rees_ideal(2, 1))[0] == 1
    H = pl.betti_numbers(pl.rees_ideal(3, 2))
    assert (H[0], H[1]) == (0, 4)


def test_q_ideal_of_rank_two_is_the_set_of_lines():
    # below (V, j) in rank 1 sit all q + 1 lines of F_q^2, pairwise incomparable
    for q in (2, 3):
        I = pl.rees_ideal(2, 1, q)
        assert len(I) == q + 1 and not I.covers()
        assert pl.betti_numbers(I)[0] == q


@pytest.mark.parametrize("n,q", [(1, None), (2, None), (3, None), (4, None), (2, 2), (3, 2), (3, 3)])
def test_euler_characteristic_cross_check(n, q):
    for j in range(1, n + 1):
        I = pl.rees_ideal(n, j, q)
        H = pl.betti_numbers(I)
        assert H.euler_characteristic() == pl.reduced_euler_characteristic(I)
        assert all(b == 0 for d, b in H.betti.items() if d < n - 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_thm_3_3(n):
    assert pl.verify_thm_3_3_dims(n).passed


def test_reversed_q_formula_matches_homology():
    assert pl.ai_des_table(3, 2, reversed_=True) == [8, 22, 8]
    for n, q in ((2, 2), (3, 2), (2, 3), (3, 3)):
        report = pl.verify_eq_13_14_reversed(n, q)
        assert report.passed, report.first_mismatch


def test_eq13_rejects_unsupported_q():
    with pytest.raises(ValueError):
        pl.verify_eq_13_14(2, 4)


def test_json_dump():
    data = json.loads(json.dumps(pl.rees_ideal(3, 2).to_json()))
    assert set(data) == {"elements", "covers", "ranks"}
    assert len(data["elements"]) == len(data["ranks"])
    assert all(0 <= a < len(data["elements"]) and 0 <= b < len(data["elements"])
               for a, b in data["covers"])
