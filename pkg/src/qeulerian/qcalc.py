"""q-integers, q-factorials, Gaussian binomials and truncated ``exp_q``.

Everything is division free: multinomials are products of Gaussian
binomials, and those come from the q-Pascal recurrence.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .exactalg import Poly, PolyLike, ZSeries, Q_EXPONENTIAL, _gaussian_binomial

__all__ = [
    "q_int",
    "q_factorial",
    "q_binomial",
    "q_multinomial",
    "q_exp_series",
]


def q_int(n: int, v: PolyLike | str = "q") -> Poly:
    """``[n]_v = 1 + v + ... + v^(n-1)``; ``v`` may be a name or any Poly (e.g. ``t*q``)."""
    if n < 0:
        raise ValueError(f"q_int needs n >= 0, got {n}")
    base = Poly.coerce(v)
    total = Poly.const(0)
    power = Poly.const(1)
    for _ in range(n):
        total = total + power
        power = power * base
    return total


@lru_cache(maxsize=None)
def q_factorial(n: int) -> Poly:
    """``[n]_q! = [n]_q [n-1]_q ... [1]_q`` with ``[0]_q! = 1``."""
    if n < 0:
        raise ValueError(f"q_factorial needs n >= 0, got {n}")
    if n == 0:
        return Poly.const(1)
    return q_factorial(n - 1) * q_int(n)


def q_binomial(n: int, k: int) -> Poly:
    """Gaussian binomial ``[n choose k]_q``; zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"q_binomial needs n >= 0, got {n}")
    return _gaussian_binomial(n, k)


def q_multinomial(n: int, parts: Sequence[int]) -> Poly:
    """``[n]_q! / ([k_0]_q! ... [k_m]_q!)`` as a product of Gaussian binomials."""
    if any(k < 0 for k in parts):
        raise ValueError(f"negative part in {list(parts)}")
    if sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not sum to {n}")
    result = Poly.const(1)
    remaining = n
    for k in parts:
        result = result * _gaussian_binomial(remaining, k)
        remaining -= k
    return result


def q_exp_series(order: int, arg_scale: PolyLike = 1) -> ZSeries:
    """``exp_q(s*z)`` through ``z^order``; numerators are ``s**n``."""
    if order < 0:
        raise ValueError(f"series order must be >= 0, got {order}")
    s = Poly.coerce(arg_scale)
    coeffs = [Poly.const(1)]
    for _ in range(order):
        coeffs.append(coeffs[-1] * s)
    return ZSeries(coeffs, Q_EXPONENTIAL)
