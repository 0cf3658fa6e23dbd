"""Exact sparse polynomials and truncated power series in ``z``.

Polynomials live over the named variables ``q, t, r, u, x_1, x_2, ...`` with
Python integers as coefficients, so there is no overflow at any size.

A :class:`ZSeries` is a truncated series ``sum a_n z^n / c_n`` where the
normalizer ``c_n`` is ``1`` (ordinary), ``n!`` (exponential) or ``[n]_q!``
(q-exponential).  Only the numerators ``a_n`` are stored, which keeps every
coefficient an integer polynomial; products use the matching binomial
convolution.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from typing import Iterable, Mapping, Union

__all__ = [
    "Poly",
    "ZSeries",
    "var_index",
    "var_name",
    "poly_arith",
    "poly_substitute",
    "series_mul",
    "series_scale_z",
    "series_equal",
    "ORDINARY",
    "EXPONENTIAL",
    "Q_EXPONENTIAL",
]

_FIXED_VARS = ("q", "t", "r", "u")
_X_RE = re.compile(r"x_(\d+)$")

Monomial = tuple  # tuple[tuple[int, int], ...], sorted by variable index


def var_index(name: str) -> int:
    """Position of a variable in the fixed order q < t < r < u < x_1 < x_2 < ..."""
    if name in _FIXED_VARS:
        return _FIXED_VARS.index(name)
    match = _X_RE.match(name)
    if match and int(match.group(1)) >= 1:
        return len(_FIXED_VARS) + int(match.group(1)) - 1
    raise ValueError(f"unknown variable name {name!r}")


def var_name(index: int) -> str:
    if index < len(_FIXED_VARS):
        return _FIXED_VARS[index]
    return f"x_{index - len(_FIXED_VARS) + 1}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _sort_key(m: Monomial):
    # graded, then larger powers of earlier variables first
    dense = dict(m)
    top = m[-1][0] + 1 if m else 0
    return (_mono_degree(m), tuple(-dense.get(i, 0) for i in range(top)) + (0,))


class Poly:
    """Immutable sparse polynomial with integer coefficients.

    >>> q, t = Poly.var("q"), Poly.var("t")
    >>> str((1 + q) * (1 + q * t))
    '1 + q + q*t + q^2*t'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.const(1)
        return cls._raw({((var_index(name), power),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: int = 1) -> "Poly":
        """Build ``coeff * prod(v**e)`` from a name -> exponent mapping."""
        pairs = []
        for name, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                pairs.append((var_index(name), e))
        return cls._raw({tuple(sorted(pairs)): coeff} if coeff else {})

    @classmethod
    def from_counts(cls, counts: Mapping[Monomial, int]) -> "Poly":
        return cls(dict(counts))

    @staticmethod
    def coerce(value: "PolyLike") -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, int):
            return Poly.const(value)
        if isinstance(value, str):
            return Poly.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Poly")

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> list[str]:
        seen = {v for mono in self._terms for v, _ in mono}
        return [var_name(v) for v in sorted(seen)]

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable. The zero polynomial has degree -1."""
        if not self._terms:
            return -1
        if name is None:
            return max(_mono_degree(m) for m in self._terms)
        idx = var_index(name)
        return max(dict(m).get(idx, 0) for m in self._terms)

    def coefficient(self, exponents: Mapping[str, int]) -> int:
        pairs = tuple(sorted((var_index(k), e) for k, e in exponents.items() if e))
        return self._terms.get(pairs, 0)

    def coefficients_in(self, name: str) -> dict[int, "Poly"]:
        """Split by powers of one variable: ``{e: coefficient Poly}``."""
        idx = var_index(name)
        out: dict[int, dict] = {}
        for mono, c in self._terms.items():
            e = 0
            rest = []
            for v, k in mono:
                if v == idx:
                    e = k
                else:
                    rest.append((v, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(d) for e, d in sorted(out.items())}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {_mono_degree(m) for m in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def constant(self) -> int:
        return self._terms.get((), 0)

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Evaluate to an integer; every present variable must be bound."""
        idx = {var_index(k): v for k, v in values.items()}
        total = 0
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                if v not in idx:
                    raise KeyError(f"unbound variable {var_name(v)}")
                term *= idx[v] ** e
            total += term
        return total

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "PolyLike") -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "PolyLike") -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "PolyLike") -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: "PolyLike") -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly._raw({})
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> "Poly":
        if not c:
            return Poly._raw({})
        return Poly._raw({m: c * v for m, v in self._terms.items()})

    def exact_div(self, c: int) -> "Poly":
        """Divide every coefficient by ``c``; raises if any division is inexact."""
        out = {}
        for m, v in self._terms.items():
            quo, rem = divmod(v, c)
            if rem:
                raise ArithmeticError(f"{v} not divisible by {c}")
            out[m] = quo
        return Poly._raw(out)

    def substitute(self, bindings: Mapping[str, "PolyLike"]) -> "Poly":
        """Replace variables by polynomials; unbound variables pass through."""
        if not bindings:
            return self
        binds = {var_index(k): Poly.coerce(v) for k, v in bindings.items()}
        powers: dict = {}

        def power(v: int, e: int) -> Poly:
            key = (v, e)
            if key not in powers:
                powers[key] = binds[v] ** e
            return powers[key]

        acc: dict = {}
        for mono, c in self._terms.items():
            kept = []
            factor = None
            for v, e in mono:
                if v in binds:
                    pe = power(v, e)
                    factor = pe if factor is None else factor * pe
                else:
                    kept.append((v, e))
            kept_mono = tuple(kept)
            if factor is None:
                acc[kept_mono] = acc.get(kept_mono, 0) + c
                continue
            for fm, fc in factor._terms.items():
                m = _mono_mul(kept_mono, fm)
                acc[m] = acc.get(m, 0) + c * fc
        return Poly._raw({m: c for m, c in acc.items() if c})

    def truncate(self, name: str, order: int) -> "Poly":
        """Drop every term whose degree in ``name`` is at least ``order``."""
        idx = var_index(name)
        return Poly._raw(
            {m: c for m, c in self._terms.items() if dict(m).get(idx, 0) < order}
        )

    def permute_variables(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables simultaneously (e.g. swap ``x_1`` and ``x_2``)."""
        idx = {var_index(a): var_index(b) for a, b in mapping.items()}
        out: dict = {}
        for mono, c in self._terms.items():
            m = {}
            for v, e in mono:
                w = idx.get(v, v)
                m[w] = m.get(w, 0) + e
            key = tuple(sorted(m.items()))
            out[key] = out.get(key, 0) + c
        return Poly._raw({m: c for m, c in out.items() if c})

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __reduce__(self):
        return (Poly, (self._terms,))

    # -- text form --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda mc: _sort_key(mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            factors = [
                var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in mono
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse the canonical text form, e.g. ``"1 + 2*q - q^2*t"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        chunks = re.findall(r"[+-][^+-]+", s)
        if "".join(chunks) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc: dict = {}
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            coeff = 1
            exps: dict[int, int] = {}
            for factor in chunk[1:].split("*"):
                if not factor:
                    raise ValueError(f"cannot parse polynomial {text!r}")
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                base, _, e = factor.partition("^")
                power = int(e) if e else 1
                v = var_index(base)
                exps[v] = exps.get(v, 0) + power
            mono = tuple(sorted((v, e) for v, e in exps.items() if e))
            acc[mono] = acc.get(mono, 0) + sign * coeff
        return cls(acc)


PolyLike = Union[Poly, int, str]


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly.const(value)
    return NotImplemented


def poly_arith(op: str, a: PolyLike, b: PolyLike) -> Poly:
    a, b = Poly.coerce(a), Poly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p: Poly, bindings: Mapping[str, PolyLike]) -> Poly:
    return p.substitute(bindings)


# ---------------------------------------------------------------------------
# truncated series in z

ORDINARY = "ordinary"
EXPONENTIAL = "exponential"
Q_EXPONENTIAL = "q-exponential"
_KINDS = (ORDINARY, EXPONENTIAL, Q_EXPONENTIAL)


@lru_cache(maxsize=None)
def _gaussian_binomial(n: int, k: int) -> Poly:
    # q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    if k < 0 or k > n:
        return Poly.const(0)
    if k == 0 or k == n:
        return Poly.const(1)
    return _gaussian_binomial(n - 1, k - 1) + Poly.var("q", k) * _gaussian_binomial(
        n - 1, k
    )


def _convolution_weight(kind: str, n: int, k: int) -> Poly | int:
    if kind == ORDINARY:
        return 1
    if kind == EXPONENTIAL:
        return math.comb(n, k)
    return _gaussian_binomial(n, k)


class ZSeries:
    """Truncated power series ``sum_{n<=N} a_n z^n / c_n`` with Poly numerators.

    ``kind`` selects the normalizer ``c_n``: ``1``, ``n!`` or ``[n]_q!``.
    """

    __slots__ = ("coeffs", "kind")

    def __init__(self, coeffs: Iterable[PolyLike], kind: str = ORDINARY):
        if kind not in _KINDS:
            raise ValueError(f"unknown series kind {kind!r}")
        coeffs = tuple(Poly.coerce(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the z^0 coefficient")
        self.coeffs = coeffs
        self.kind = kind

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Poly:
        return self.coeffs[n]

    def _check(self, other: "ZSeries") -> int:
        if self.kind != other.kind:
            raise ValueError(f"cannot combine {self.kind} and {other.kind} series")
        return min(self.order, other.order)

    def __add__(self, other: "ZSeries") -> "ZSeries":
        n = self._check(other)
        return ZSeries((self[i] + other[i] for i in range(n + 1)), self.kind)

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        n = self._check(other)
        return ZSeries((self[i] - other[i] for i in range(n + 1)), self.kind)

    def __mul__(self, other) -> "ZSeries":
        if isinstance(other, ZSeries):
            return series_mul(self, other)
        c = Poly.coerce(other)
        return ZSeries((c * a for a in self.coeffs), self.kind)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "ZSeries":
        return ZSeries(self.coeffs[: order + 1], self.kind)

    def map(self, fn) -> "ZSeries":
        return ZSeries((fn(c) for c in self.coeffs), self.kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.kind == other.kind and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.kind, self.coeffs))

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"ZSeries([{body}], kind={self.kind!r})"


def series_mul(a: ZSeries, b: ZSeries) -> ZSeries:
    """Product truncated at the smaller order, using the kind's convolution."""
    n_max = a._check(b)
    out = []
    for n in range(n_max + 1):
        acc = Poly.const(0)
        for k in range(n + 1):
            if not a[k] or not b[n - k]:
                continue
            term = a[k] * b[n - k]
            acc = acc + _convolution_weight(a.kind, n, k) * term
        out.append(acc)
    return ZSeries(out, a.kind)


def series_scale_z(a: ZSeries, s: PolyLike) -> ZSeries:
    """Substitute ``z -> s*z``: the n-th numerator is multiplied by ``s**n``."""
    s = Poly.coerce(s)
    out = []
    power = Poly.const(1)
    for c in a.coeffs:
        out.append(c * power)
        power = power * s
    return ZSeries(out, a.kind)


def series_equal(a: ZSeries, b: ZSeries, upto: int) -> bool:
    if a.kind != b.kind:
        raise ValueError(f"cannot compare {a.kind} and {b.kind} series")
    if upto < 0 or upto > a.order or upto > b.order:
        raise IndexError(f"order {upto} outside 0..{min(a.order, b.order)}")
    return all(a[i] == b[i] for i in range(upto + 1))


def first_difference(a: ZSeries, b: ZSeries, upto: int) -> int | None:
    """Index of the first differing coefficient through ``upto``, else None."""
    if not series_equal(a, b, upto):
        return next(i for i in range(upto + 1) if a[i] != b[i])
    return None
