"""Fundamental quasisymmetric functions and the Q_{n,j} family in m variables.

Symmetric-function identities of degree at most N are checked in
``m >= N`` concrete variables ``x_1..x_m``, where they restrict faithfully.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import ORDINARY, Poly, ZSeries, first_difference, series_mul, series_scale_z
from .genfun import Report, maj_exc_poly, _mismatch
from .permstat import cycle_type, exd_set, excedance_set, is_partition_of, major_index
from .qcalc import q_factorial

__all__ = [
    "x",
    "fundamental_F",
    "complete_h",
    "H_series",
    "Specialization",
    "principal_specialization",
    "principal_specialization_truncated",
    "exd_profile",
    "Q_nj",
    "Q_lambda_j",
    "tildeQ_nj",
    "is_symmetric",
    "verify_thm_2_1",
    "verify_cor_2_3",
    "verify_recurrence_9",
    "verify_specialization_6",
]


def x(i: int) -> Poly:
    return Poly.var(f"x_{i}")


def _x_index(i: int) -> int:
    return 3 + i  # position of x_i in the exactalg variable order


@lru_cache(maxsize=None)
def fundamental_F(S: frozenset[int] | tuple[int, ...], n: int, m: int) -> Poly:
    """``F_{S,n}(x_1..x_m)``: sum over i_1 >= ... >= i_n with i_j > i_{j+1} for j in S."""
    S = frozenset(S)
    if n < 0 or m < 0:
        raise ValueError("need n >= 0 and m >= 0")
    if not S <= set(range(1, n)):
        raise ValueError(f"{sorted(S)} is not a subset of [{n - 1}]")
    counts: Counter = Counter()
    # a weakly decreasing run is a multiset; combinations over a descending pool
    for seq in itertools.combinations_with_replacement(range(m, 0, -1), n):
        if any(seq[j - 1] == seq[j] for j in S):
            continue
        mono = Counter(seq)
        counts[tuple(sorted((_x_index(i), e) for i, e in mono.items()))] += 1
    return Poly.from_counts(counts)


def complete_h(n: int, m: int) -> Poly:
    """Complete homogeneous ``h_n(x_1..x_m)``; ``h_0 = 1`` and ``h_n = 0`` for n < 0."""
    if n < 0:
        return Poly.const(0)
    return fundamental_F(frozenset(), n, m)


def H_series(N: int, m: int) -> ZSeries:
    """``H(z) = sum h_n z^n`` through ``z^N`` (ordinary coefficients)."""
    return ZSeries([complete_h(n, m) for n in range(N + 1)], ORDINARY)


def is_symmetric(f: Poly, m: int) -> bool:
    """Invariance under every adjacent swap ``x_i <-> x_{i+1}``, i < m."""
    for i in range(1, m):
        swap = {f"x_{i}": f"x_{i + 1}", f"x_{i + 1}": f"x_{i}"}
        if f.permute_variables(swap) != f:
            return False
    return True


# -- principal specialization x_i -> q^{i-1} --------------------------------


@dataclass(frozen=True)
class Specialization:
    """``numerator / ((1-q)(1-q^2)...(1-q^degree))``."""

    numerator: Poly
    degree: int

    def expand(self, order: int) -> Poly:
        """Power series in q modulo ``q^order``."""
        series = self.numerator.truncate("q", order)
        for k in range(1, self.degree + 1):
            # multiply by 1/(1 - q^k) = 1 + q^k + q^2k + ...
            geometric = Poly.const(0)
            for e in range(0, order, k):
                geometric = geometric + Poly.var("q", e)
            series = (series * geometric).truncate("q", order)
        return series


def principal_specialization(terms: Iterable[tuple[Iterable[int], int]]) -> Specialization:
    """Closed form of ``sum F_{S,n}(1, q, q^2, ...)`` over the given (S, n) terms."""
    numerator = Poly.const(0)
    degree = None
    for S, n in terms:
        if degree is None:
            degree = n
        elif n != degree:
            raise ValueError("mixed degrees in a principal specialization")
        numerator = numerator + Poly.var("q", sum(S))
    return Specialization(numerator, 0 if degree is None else degree)


def principal_specialization_truncated(f: Poly, m: int) -> Poly:
    """Substitute ``x_i = q^{i-1}`` for i <= m; agrees with the full series mod ``q^m``."""
    return f.substitute({f"x_{i}": Poly.var("q", i - 1) for i in range(1, m + 1)}).truncate(
        "q", m
    )


# -- the Q family -----------------------------------------------------------


@lru_cache(maxsize=None)
def exd_profile(n: int) -> dict:
    """Counts of (cycle type, exc, Exd) over S_n."""
    counts: Counter = Counter()
    for p in itertools.permutations(range(1, n + 1)):
        counts[(cycle_type(p), len(excedance_set(p)), exd_set(p))] += 1
    return dict(counts)


def _check_j(n: int, j: int) -> None:
    if j < 0 or j > max(n - 1, 0):
        raise ValueError(f"j={j} outside 0..{max(n - 1, 0)} for n={n}")


def _sum_F(n: int, m: int, selector) -> Poly:
    by_set: Counter = Counter()
    for (lam, exc, exd), c in exd_profile(n).items():
        if selector(lam, exc):
            by_set[exd] += c
    total = Poly.const(0)
    for S, c in sorted(by_set.items(), key=lambda kv: sorted(kv[0])):
        total = total + fundamental_F(S, n, m).scale(c)
    return total


def Q_nj(n: int, j: int, m: int) -> Poly:
    """Sum of ``F_{Exd(s),n}`` over s in S_n with j excedances."""
    _check_j(n, j)
    return _sum_F(n, m, lambda lam, exc: exc == j)


def Q_lambda_j(lam: Sequence[int], j: int, m: int) -> Poly:
    """As :func:`Q_nj`, restricted to cycle type ``lam``."""
    lam = tuple(lam)
    n = sum(lam)
    if not is_partition_of(lam, n):
        raise ValueError(f"{lam} is not a partition")
    _check_j(n, j)
    return _sum_F(n, m, lambda ct, exc: ct == lam and exc == j)


def tildeQ_nj(n: int, j: int, m: int) -> Poly:
    """As :func:`Q_nj`, restricted to derangements (``tildeQ_{0,0} = 1``)."""
    _check_j(n, j)
    return _sum_F(n, m, lambda lam, exc: exc == j and 1 not in lam)


def _tildeQ_or_zero(n: int, j: int, m: int) -> Poly:
    if n < 0 or j < 0 or j > max(n - 1, 0):
        return Poly.const(0)
    return tildeQ_nj(n, j, m)


def _Q_or_zero(n: int, j: int, m: int) -> Poly:
    if j < 0 or j > max(n - 1, 0):
        return Poly.const(0)
    return Q_nj(n, j, m)


def _t_poly(coeffs: Sequence[Poly]) -> Poly:
    out = Poly.const(0)
    for j, c in enumerate(coeffs):
        out = out + c * Poly.var("t", j)
    return out


# -- identity checks --------------------------------------------------------


def verify_thm_2_1(N: int, m: int) -> Report:
    """``(H(zt) - t H(z)) * sum Q_{n,j} t^j z^n = (1 - t) H(z)`` through ``z^N``."""
    if m < N:
        raise ValueError(f"need m >= N, got m={m}, N={N}")
    t = Poly.var("t")
    H = H_series(N, m)
    denominator = series_scale_z(H, t) - H * t
    Q = ZSeries(
        [_t_poly([Q_nj(n, j, m) for j in range(max(n, 1))]) for n in range(N + 1)],
        ORDINARY,
    )
    product = series_mul(denominator, Q)
    rhs = H * (1 - t)
    bad = first_difference(product, rhs, N)
    mismatch = None if bad is None else _mismatch(bad, product[bad], rhs[bad])
    return Report("thm2-1", N, bad is None, mismatch, {"m": m})


def verify_cor_2_3(n: int, m: int) -> Report:
    """``Q_{n,j} = sum_k h_k tildeQ_{n-k,j}`` for every j."""
    if m < n:
        raise ValueError(f"need m >= n, got m={m}, n={n}")
    for j in range(max(n, 1)):
        lhs = Q_nj(n, j, m)
        rhs = Poly.const(0)
        for k in range(n + 1):
            rhs = rhs + complete_h(k, m) * _tildeQ_or_zero(n - k, j, m)
        if lhs != rhs:
            return Report("cor2-3", n, False, {**_mismatch(n, lhs, rhs), "j": j}, {"m": m})
    return Report("cor2-3", n, True, None, {"m": m})


def recurrence_9_rhs(n: int, j: int, m: int) -> Poly:
    """``sum tildeQ_{k,i} h_{n-k}`` over 0 <= k <= n-2 and j+k-n < i < j."""
    total = Poly.const(0)
    for k in range(n - 1):
        for i in range(j + k - n + 1, j):
            total = total + _tildeQ_or_zero(k, i, m) * complete_h(n - k, m)
    return total


def verify_recurrence_9(n: int, m: int) -> Report:
    """The derangement recurrence for every j; n = 0 is the base case ``tildeQ_{0,0} = 1``."""
    if m < n:
        raise ValueError(f"need m >= n, got m={m}, n={n}")
    if n == 0:
        base = tildeQ_nj(0, 0, m)
        return Report("rec9", 0, base == 1, None if base == 1 else _mismatch(0, base, Poly.const(1)))
    for j in range(max(n, 1)):
        lhs = tildeQ_nj(n, j, m)
        rhs = recurrence_9_rhs(n, j, m)
        if lhs != rhs:
            return Report("rec9", n, False, {**_mismatch(n, lhs, rhs), "j": j}, {"m": m})
    return Report("rec9", n, True, None, {"m": m})


def verify_specialization_6(N: int, q_order: int = 6) -> Report:
    """Principal specialization of ``sum Q_{n,j} t^j z^n`` against (maj - exc, exc).

    For each n <= N: the closed-form numerators of ``Q_{n,j}(1, q, q^2, ...)``
    must equal ``sum q^{maj-exc}`` over exc = j; both sides then share the
    factor ``(1-q)^n / ((1-q)...(1-q^n)) = 1/[n]_q!`` coming from
    ``z -> z(1-q)``.  Substituting ``t -> tq`` must give ``A_n^{maj,exc}``.
    The closed form is also cross-checked against direct substitution
    ``x_i = q^{i-1}`` modulo ``q^q_order``.
    """
    q = Poly.var("q")
    for n in range(N + 1):
        lhs = Poly.const(0)
        target = Poly.const(0)
        m = max(q_order, 1)
        for j in range(max(n, 1)):
            terms = [
                (exd, n)
                for (lam, exc, exd), c in exd_profile(n).items()
                if exc == j
                for _ in range(c)
            ]
            closed = principal_specialization(terms) if terms else Specialization(Poly.const(0), n)
            lhs = lhs + closed.numerator * Poly.var("t", j)
            if n <= q_order:
                direct = principal_specialization_truncated(_Q_or_zero(n, j, m), m)
                if direct != closed.expand(m):
                    return Report(
                        "eq6", N, False,
                        {**_mismatch(n, direct, closed.expand(m)), "j": j, "mode": "truncated"},
                    )
        for p in itertools.permutations(range(1, n + 1)):
            exc = len(excedance_set(p))
            target = target + Poly.var("q", major_index(p) - exc) * Poly.var("t", exc)
        if lhs != target:
            return Report("eq6", N, False, _mismatch(n, lhs, target))
        shifted = lhs.substitute({"t": q * Poly.var("t")})
        if shifted != maj_exc_poly(n):
            return Report("eq6", N, False, {**_mismatch(n, shifted, maj_exc_poly(n)), "step": "t->tq"})
        # h_n(1, q, ...) (1-q)^n = 1/[n]_q!, the specialization taking H(z) to exp_q(z)
        h_spec = principal_specialization([((), n)]).expand(q_order)
        unit = (h_spec * (1 - q) ** n * q_factorial(n)).truncate("q", q_order)
        if unit != 1:
            return Report("eq6", N, False, {"n": n, "step": "h_n", "got": str(unit)})
    return Report("eq6", N, True, None, {"q_order": q_order})
