"""The (maj, exc) q-Eulerian polynomials and checks of their generating functions.

All identities are checked cross-multiplied, so no division of polynomials
or series is ever needed.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .exactalg import (
    EXPONENTIAL,
    Poly,
    ZSeries,
    first_difference,
    series_mul,
    series_scale_z,
)
from .permstat import (
    admissible_inversions,
    descent_set,
    excedance_set,
    fixed_points,
    inversions,
    perms_in_rank_range,
)
from .qcalc import q_exp_series, q_factorial, q_int, q_multinomial

__all__ = [
    "Report",
    "stat_poly",
    "maj_exc_poly",
    "eulerian_poly",
    "fix_refined_poly",
    "aid_des_poly",
    "maj_poly",
    "inv_poly",
    "thm_1_2_rhs",
    "verify_thm_1_1",
    "verify_eulerian_egf",
    "verify_thm_1_2",
    "verify_thm_4_1",
    "verify_reductions",
    "default_threads",
]

_Q, _T, _R = 0, 1, 2


@dataclass
class Report:
    """Outcome of one identity check, serializable to JSON."""

    theorem: str
    n_or_N: int
    passed: bool
    first_mismatch: dict | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"theorem": self.theorem, "n_or_N": self.n_or_N, "pass": self.passed}
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        if self.details:
            out["details"] = self.details
        return out

    def __bool__(self) -> bool:
        return self.passed


def _mismatch(n: int, lhs: Poly, rhs: Poly) -> dict:
    return {"n": n, "lhs": str(lhs), "rhs": str(rhs)}


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("QEL_THREADS", "1")))
    except ValueError:
        return 1


# -- monomial keys for S_n scans (module level so worker processes can pickle them)


def _key(*pairs: tuple[int, int]) -> tuple:
    return tuple(p for p in pairs if p[1])


def _maj_exc_key(p):
    maj = sum(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])
    return _key((_Q, maj), (_T, len(excedance_set(p))))


def _des_key(p):
    return _key((_T, len(descent_set(p))),)


def _exc_key(p):
    return _key((_T, len(excedance_set(p))),)


def _maj_key(p):
    return _key((_Q, sum(descent_set(p))),)


def _inv_key(p):
    return _key((_Q, inversions(p)),)


def _fix_key(p):
    maj = sum(descent_set(p))
    return _key((_Q, maj), (_T, len(excedance_set(p))), (_R, fixed_points(p)))


def _aid_des_key(p):
    des = len(descent_set(p))
    return _key((_Q, len(admissible_inversions(p)) + des), (_T, des))


_KEYS: dict[str, Callable] = {
    "maj-exc": _maj_exc_key,
    "des": _des_key,
    "exc": _exc_key,
    "maj": _maj_key,
    "inv": _inv_key,
    "fix-refined": _fix_key,
    "aid-des": _aid_des_key,
}


def _scan_chunk(args) -> Counter:
    name, n, start, stop = args
    keyfn = _KEYS[name]
    return Counter(keyfn(p) for p in perms_in_rank_range(n, start, stop))


def stat_poly(name: str, n: int, threads: int | None = None) -> Poly:
    """Sum of the named statistic monomial over S_n.

    With ``threads > 1`` the rank range of S_n is split across worker
    processes; the merged result does not depend on the split.
    """
    if name not in _KEYS:
        raise ValueError(f"unknown statistic {name!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    threads = default_threads() if threads is None else max(1, threads)
    total = math.factorial(n)
    if threads == 1 or total < 5000:
        return Poly.from_counts(_scan_chunk((name, n, 0, total)))
    pieces = threads * 4
    bounds = [total * i // pieces for i in range(pieces + 1)]
    jobs = [(name, n, bounds[i], bounds[i + 1]) for i in range(pieces)]
    merged: Counter = Counter()
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_scan_chunk, jobs):
            merged.update(part)
    return Poly.from_counts(merged)


def maj_exc_poly(n: int, threads: int | None = None) -> Poly:
    """``A_n^{maj,exc}(q, t)``; equals 1 at n = 0."""
    return stat_poly("maj-exc", n, threads)


def eulerian_poly(n: int, threads: int | None = None) -> Poly:
    """``A_n(t) = sum t^des``."""
    return stat_poly("des", n, threads)


def maj_poly(n: int) -> Poly:
    return stat_poly("maj", n)


def inv_poly(n: int) -> Poly:
    return stat_poly("inv", n)


def fix_refined_poly(n: int, threads: int | None = None) -> Poly:
    """``sum q^maj t^exc r^fix`` over S_n."""
    return stat_poly("fix-refined", n, threads)


def aid_des_poly(n: int, threads: int | None = None) -> Poly:
    """``sum q^aid t^des`` over S_n."""
    if n < 1:
        raise ValueError("aid_des_poly needs n >= 1")
    return stat_poly("aid-des", n, threads)


# -- the q-exponential generating function ---------------------------------


def verify_thm_1_1(N: int, threads: int | None = None) -> Report:
    """Check ``(exp_q(ztq) - tq exp_q(z)) * sum A_n z^n/[n]_q! = (1 - tq) exp_q(z)``."""
    if N < 0:
        raise ValueError("N must be >= 0")
    tq = Poly.parse("q*t")
    exp_z = q_exp_series(N)
    denominator = q_exp_series(N, tq) - exp_z * tq
    numerator = exp_z * (1 - tq)
    lhs = ZSeries([maj_exc_poly(n, threads) for n in range(N + 1)], exp_z.kind)
    product = series_mul(denominator, lhs)
    bad = first_difference(product, numerator, N)
    mismatch = None if bad is None else _mismatch(bad, product[bad], numerator[bad])
    return Report("thm1-1", N, bad is None, mismatch)


def verify_eulerian_egf(N: int) -> Report:
    """The q = 1 shadow: ``(e^{z(t-1)} - t) * sum A_n(t) z^n/n! = 1 - t``."""
    t = Poly.var("t")
    ones = ZSeries([1] * (N + 1), EXPONENTIAL)
    shifted = series_scale_z(ones, t - 1)
    denominator = shifted - ZSeries([t] + [0] * N, EXPONENTIAL)
    lhs = ZSeries([eulerian_poly(n) for n in range(N + 1)], EXPONENTIAL)
    product = series_mul(denominator, lhs)
    rhs = ZSeries([1 - t] + [0] * N, EXPONENTIAL)
    bad = first_difference(product, rhs, N)
    mismatch = None if bad is None else _mismatch(bad, product[bad], rhs[bad])
    return Report("eq1", N, bad is None, mismatch)


def _compositions_at_least_two(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for k in range(2, total - 2 * (parts - 1) + 1):
        for rest in _compositions_at_least_two(total - k, parts - 1):
            yield (k,) + rest


def thm_1_2_rhs(n: int, ordered: bool = True) -> Poly:
    """The fixed-point refined sum over tuples ``(k_0, k_1, ..., k_m)``.

    ``ordered=False`` keeps only weakly decreasing ``k_1 >= ... >= k_m``; that
    reading is wrong (it undercounts S_n at q = t = r = 1) and exists so the
    tests can show it.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    tq = Poly.parse("q*t")
    r = Poly.var("r")
    total = Poly.const(0)
    for m in range(n // 2 + 1):
        for k0 in range(n - 2 * m + 1):
            for ks in _compositions_at_least_two(n - k0, m):
                if not ordered and list(ks) != sorted(ks, reverse=True):
                    continue
                term = tq**m * q_multinomial(n, (k0,) + ks) * r**k0
                for k in ks:
                    term = term * q_int(k - 1, tq)
                total = total + term
    return total


def verify_thm_1_2(n: int, threads: int | None = None) -> Report:
    lhs = fix_refined_poly(n, threads)
    rhs = thm_1_2_rhs(n)
    at_one = rhs.evaluate({"q": 1, "t": 1, "r": 1}) if rhs else 0
    details = {"rhs_at_1": at_one, "n_factorial": math.factorial(n)}
    ok = lhs == rhs and at_one == math.factorial(n)
    return Report("thm1-2", n, ok, None if lhs == rhs else _mismatch(n, lhs, rhs), details)


def verify_thm_4_1(n: int, threads: int | None = None) -> Report:
    lhs = aid_des_poly(n, threads)
    rhs = maj_exc_poly(n, threads)
    return Report("thm4-1", n, lhs == rhs, None if lhs == rhs else _mismatch(n, lhs, rhs))


def verify_reductions(n: int) -> Report:
    """``A_n^{maj,exc}(1, t) = A_n(t)`` and ``A_n^{maj,exc}(q, 1) = [n]_q!``."""
    a = maj_exc_poly(n)
    at_q1 = a.substitute({"q": 1})
    at_t1 = a.substitute({"t": 1})
    euler = eulerian_poly(n)
    mismatch = None
    if at_q1 != euler:
        mismatch = _mismatch(n, at_q1, euler)
    elif at_t1 != q_factorial(n):
        mismatch = _mismatch(n, at_t1, q_factorial(n))
    return Report("reductions", n, mismatch is None, mismatch)
