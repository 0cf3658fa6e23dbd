"""Barred words: Lyndon factorization, necklaces, ornaments, banners.

Letters are compared in the interleaved order 1' < 1 < 2' < 2 < ...,
written ``"3'"`` for a barred 3.  This is *not* the block order used for
excedance-descent sets in :mod:`qeulerian.permstat`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, NamedTuple, Sequence

from .exactalg import Poly
from .genfun import Report, _mismatch
from .permstat import is_partition_of, partitions
from .qcalc import q_int
from .quasisym import Q_lambda_j, complete_h, tildeQ_nj

__all__ = [
    "Letter",
    "interleaved_key",
    "parse_word",
    "format_word",
    "lyndon_factorize",
    "is_lyndon",
    "lyndon_words",
    "is_necklace",
    "necklace_compare",
    "Necklace",
    "Ornament",
    "necklaces",
    "enumerate_ornaments",
    "ornament_weight_sum",
    "is_banner",
    "enumerate_banners",
    "banner_to_ornament",
    "lyndon_type",
    "MarkedSequence",
    "enumerate_marked_sequences",
    "word_weight",
    "verify_thm_2_2",
    "verify_prop_2_5",
    "verify_cor_2_4",
    "verify_thm_2_6_contract",
]


class Letter(NamedTuple):
    value: int
    barred: bool = False

    def __str__(self) -> str:
        return f"{self.value}'" if self.barred else str(self.value)


Word = tuple  # tuple[Letter, ...]


def interleaved_key(a: Letter) -> int:
    """1' -> 1, 1 -> 2, 2' -> 3, 2 -> 4, ..."""
    return 2 * a.value - 1 if a.barred else 2 * a.value


def _letter_from_key(k: int) -> Letter:
    return Letter((k + 1) // 2, k % 2 == 1)


def _keys(w: Sequence[Letter]) -> tuple[int, ...]:
    return tuple(interleaved_key(a) for a in w)


def parse_word(text: str) -> Word:
    """``"1' 3 1 1' 2 2"`` (spaces or commas, optional parentheses) -> letters."""
    body = text.strip().strip("()")
    out = []
    for tok in body.replace(",", " ").split():
        barred = tok.endswith("'")
        value = int(tok.rstrip("'"))
        if value < 1:
            raise ValueError(f"letters are positive integers, got {tok!r}")
        out.append(Letter(value, barred))
    return tuple(out)


def format_word(w: Sequence[Letter], circular: bool = False) -> str:
    body = " ".join(str(a) for a in w)
    return f"({body})" if circular else body


def word_weight(w: Iterable[Letter]) -> Poly:
    """Product of ``x_{|a|}`` over the letters."""
    counts = Counter(a.value for a in w)
    return Poly.monomial({f"x_{v}": e for v, e in counts.items()})


def _bars(w: Iterable[Letter]) -> int:
    return sum(1 for a in w if a.barred)


# -- Lyndon words ------------------------------------------------------------


def _duval(keys: Sequence[int]) -> list[tuple[int, int]]:
    """Duval's algorithm: (start, stop) spans of the Lyndon factorization."""
    n = len(keys)
    spans = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and keys[k] <= keys[j]:
            k = i if keys[k] < keys[j] else k + 1
            j += 1
        while i <= k:
            spans.append((i, i + j - k))
            i += j - k
    return spans


def lyndon_factorize(w: Sequence[Letter]) -> list[Word]:
    """Unique factorization into weakly decreasing Lyndon words (interleaved order)."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot factorize the empty word")
    return [w[a:b] for a, b in _duval(_keys(w))]


def lyndon_type(w: Sequence[Letter]) -> tuple[int, ...]:
    return tuple(sorted((len(f) for f in lyndon_factorize(w)), reverse=True))


def is_lyndon(w: Sequence[Letter]) -> bool:
    keys = _keys(w)
    return bool(keys) and all(keys < keys[i:] + keys[:i] for i in range(1, len(keys)))


def lyndon_words(length: int, alphabet_size: int) -> Iterator[tuple[int, ...]]:
    """Lyndon words of exactly ``length`` over keys 1..alphabet_size, in lex order (FKM)."""
    if length < 1 or alphabet_size < 1:
        return
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == length:
            yield tuple(w)
        # extend periodically, then strip maximal letters
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size:
            w.pop()


# -- necklaces and ornaments --------------------------------------------------


def _rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def is_primitive(w: Sequence[Letter]) -> bool:
    w = tuple(w)
    return all(w[i:] + w[:i] != w for i in range(1, len(w)))


def is_necklace(w: Sequence[Letter]) -> bool:
    """Primitive circular word obeying the bar rule, and not a lone barred letter."""
    w = tuple(w)
    if not w:
        return False
    if len(w) == 1 and w[0].barred:
        return False
    if not is_primitive(w):
        return False
    for i, a in enumerate(w):
        nxt = w[(i + 1) % len(w)]
        if a.value < nxt.value and not a.barred:
            return False
        if a.value > nxt.value and a.barred:
            return False
    return True


def _infinite_prefix(w: Word, length: int) -> tuple[int, ...]:
    keys = _keys(w)
    return tuple(keys[i % len(keys)] for i in range(length))


def necklace_compare(a: Sequence[Letter], b: Sequence[Letter]) -> int:
    """Compare smallest infinite readings; -1, 0 or 1."""
    a, b = _canonical_rotation(tuple(a)), _canonical_rotation(tuple(b))
    span = len(a) + len(b)
    pa, pb = _infinite_prefix(a, span), _infinite_prefix(b, span)
    return (pa > pb) - (pa < pb)


def _canonical_rotation(w: Word) -> Word:
    return min(_rotations(w), key=_keys)


@total_ordering
@dataclass(frozen=True)
class Necklace:
    """A necklace stored in its lexicographically least rotation."""

    letters: Word

    @classmethod
    def of(cls, letters: Sequence[Letter]) -> "Necklace":
        letters = tuple(letters)
        if not is_necklace(letters):
            raise ValueError(f"{format_word(letters, True)} is not a necklace")
        return cls(_canonical_rotation(letters))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def bars(self) -> int:
        return _bars(self.letters)

    @property
    def weight(self) -> Poly:
        return word_weight(self.letters)

    def __lt__(self, other: "Necklace") -> bool:
        return necklace_compare(self.letters, other.letters) < 0

    def __str__(self) -> str:
        return format_word(self.letters, circular=True)


@dataclass(frozen=True)
class Ornament:
    """Weakly decreasing sequence of necklaces."""

    necklaces: tuple[Necklace, ...]

    @classmethod
    def of(cls, necklaces: Iterable[Necklace]) -> "Ornament":
        return cls(tuple(sorted(necklaces, reverse=True)))

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.necklaces), reverse=True))

    @property
    def bars(self) -> int:
        return sum(c.bars for c in self.necklaces)

    @property
    def weight(self) -> Poly:
        return word_weight(a for c in self.necklaces for a in c.letters)

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.necklaces)


@lru_cache(maxsize=None)
def necklaces(length: int, m: int) -> tuple[Necklace, ...]:
    """All necklaces of a given length with letters at most m, ascending."""
    out = []
    for keys in lyndon_words(length, 2 * m):
        w = tuple(_letter_from_key(k) for k in keys)
        if is_necklace(w):
            out.append(Necklace(w))
    return tuple(sorted(out))


def enumerate_ornaments(lam: Sequence[int], j: int, m: int) -> Iterator[Ornament]:
    """Each ornament of type ``lam`` with ``j`` bars and letters at most ``m``, once."""
    lam = tuple(lam)
    if not is_partition_of(lam, sum(lam)):
        raise ValueError(f"{lam} is not a partition")
    multiplicity = Counter(lam)
    choices = []
    for size, count in sorted(multiplicity.items()):
        choices.append(list(itertools.combinations_with_replacement(necklaces(size, m), count)))
    for pick in itertools.product(*choices):
        chosen = [c for group in pick for c in group]
        if sum(c.bars for c in chosen) == j:
            yield Ornament.of(chosen)


def ornament_weight_sum(lam: Sequence[int], j: int, m: int) -> Poly:
    total: Counter = Counter()
    for R in enumerate_ornaments(lam, j, m):
        for mono, c in R.weight.items():
            total[mono] += c
    return Poly.from_counts(total)


# -- banners ----------------------------------------------------------------


def is_banner(w: Sequence[Letter]) -> bool:
    """Barred before a larger value; unbarred before a smaller one and at the end."""
    w = tuple(w)
    for i, a in enumerate(w):
        if i == len(w) - 1:
            if a.barred:
                return False
            continue
        nxt = w[i + 1]
        if a.value < nxt.value and not a.barred:
            return False
        if a.value > nxt.value and a.barred:
            return False
    return True


def _barrings(values: Sequence[int]) -> Iterator[Word]:
    options = []
    for i, v in enumerate(values):
        if i == len(values) - 1 or v > values[i + 1]:
            options.append((False,))
        elif v < values[i + 1]:
            options.append((True,))
        else:
            options.append((False, True))
    for bars in itertools.product(*options):
        yield tuple(Letter(v, b) for v, b in zip(values, bars))


def enumerate_banners(
    n: int,
    m: int,
    *,
    bars: int | None = None,
    no_singleton_factors: bool = False,
    lyndon_type_is: Sequence[int] | None = None,
) -> Iterator[Word]:
    """Banners of length n with letters at most m, filtered as requested."""
    want_type = tuple(lyndon_type_is) if lyndon_type_is is not None else None
    if n == 0:
        if bars in (None, 0) and want_type in (None, ()):
            yield ()
        return
    for values in itertools.product(range(1, m + 1), repeat=n):
        for w in _barrings(values):
            if bars is not None and _bars(w) != bars:
                continue
            if no_singleton_factors or want_type is not None:
                t = lyndon_type(w)
                if no_singleton_factors and 1 in t:
                    continue
                if want_type is not None and t != want_type:
                    continue
            yield w


def banner_to_ornament(b: Sequence[Letter]) -> Ornament:
    """Close each Lyndon factor of the banner into a circular word."""
    b = tuple(b)
    if not is_banner(b):
        raise ValueError(f"{format_word(b)} is not a banner")
    return Ornament.of(Necklace.of(f) for f in lyndon_factorize(b))


# -- marked sequences -----------------------------------------------------------


@dataclass(frozen=True)
class MarkedSequence:
    alpha: tuple[int, ...]
    j: int

    def __post_init__(self):
        if any(a < 1 for a in self.alpha) or list(self.alpha) != sorted(self.alpha):
            raise ValueError(f"{self.alpha} is not a weakly increasing positive sequence")
        if not 1 <= self.j <= len(self.alpha) - 1:
            raise ValueError(f"mark {self.j} outside 1..{len(self.alpha) - 1}")

    @property
    def weight(self) -> Poly:
        counts = Counter(self.alpha)
        return Poly.monomial({f"x_{v}": e for v, e in counts.items()})


def enumerate_marked_sequences(k: int, m: int) -> Iterator[MarkedSequence]:
    for alpha in itertools.combinations_with_replacement(range(1, m + 1), k):
        for j in range(1, k):
            yield MarkedSequence(alpha, j)


# -- identity checks ----------------------------------------------------------


def verify_thm_2_2(lam: Sequence[int], j: int, m: int) -> Report:
    """``Q_{lam,j}`` against the weight sum of ornaments of type ``lam`` with j bars."""
    lam = tuple(lam)
    lhs = Q_lambda_j(lam, j, m)
    rhs = ornament_weight_sum(lam, j, m)
    n = sum(lam)
    mismatch = None if lhs == rhs else {**_mismatch(n, lhs, rhs), "lambda": list(lam), "j": j}
    return Report("thm2-2", n, lhs == rhs, mismatch, {"lambda": list(lam), "j": j, "m": m})


def verify_prop_2_5(n: int, m: int) -> Report:
    """banner_to_ornament is a weight- and bar-preserving bijection, type by type."""
    images: dict[tuple, list[Ornament]] = {}
    for b in enumerate_banners(n, m):
        R = banner_to_ornament(b)
        if R.weight != word_weight(b) or R.bars != _bars(b) or R.type != lyndon_type(b):
            return Report("prop2-5", n, False, {"n": n, "banner": format_word(b)}, {"m": m})
        images.setdefault((R.type, R.bars), []).append(R)
    checked = 0
    for lam in partitions(n):
        for j in range(n + 1):
            got = images.get((lam, j), [])
            want = set(enumerate_ornaments(lam, j, m))
            if len(set(got)) != len(got):
                return Report("prop2-5", n, False, {"n": n, "lambda": list(lam), "j": j,
                                                     "reason": "not injective"}, {"m": m})
            if set(got) != want:
                return Report("prop2-5", n, False, {"n": n, "lambda": list(lam), "j": j,
                                                     "reason": "not surjective"}, {"m": m})
            checked += len(got)
    return Report("prop2-5", n, True, None, {"m": m, "pairs": checked})


def verify_cor_2_4(n: int, j: int, m: int) -> Report:
    """``tildeQ_{n,j}`` against banners of length n, j bars, no Lyndon factor of length 1."""
    lhs = tildeQ_nj(n, j, m)
    total: Counter = Counter()
    for b in enumerate_banners(n, m, bars=j, no_singleton_factors=True):
        for mono, c in word_weight(b).items():
            total[mono] += c
    rhs = Poly.from_counts(total)
    mismatch = None if lhs == rhs else {**_mismatch(n, lhs, rhs), "j": j}
    return Report("cor2-4", n, lhs == rhs, mismatch, {"j": j, "m": m})


@lru_cache(maxsize=None)
def _banner_gf(n: int, m: int) -> Poly:
    """``sum w(B) u^bars(B)`` over banners of length n without length-1 factors."""
    total: Counter = Counter()
    u = 3  # variable index of u
    for b in enumerate_banners(n, m, no_singleton_factors=True):
        k = _bars(b)
        for mono, c in word_weight(b).items():
            key = tuple(sorted(mono + ((u, k),))) if k else mono
            total[key] += c
    return Poly.from_counts(total)


def _marked_gf(k: int, m: int) -> Poly:
    total = Poly.const(0)
    for ms in enumerate_marked_sequences(k, m):
        total = total + ms.weight * Poly.var("u", ms.j)
    return total


def verify_thm_2_6_contract(n: int, m: int) -> Report:
    """Weight and bar bookkeeping implied by the banner decomposition.

    Both sides are generating functions with ``u`` marking bars:
    banners of length n on the left; on the right, a shorter banner times a
    marked sequence of the remaining length, bars adding to the mark.  The
    marked-sequence side is enumerated directly and also compared with its
    closed form ``h_k (u + ... + u^{k-1})``.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    lhs = _banner_gf(n, m)
    rhs = Poly.const(0)
    u = Poly.var("u")
    for k in range(2, n + 1):
        marked = _marked_gf(k, m)
        closed = complete_h(k, m) * (q_int(k, u) - 1)
        if marked != closed:
            return Report("thm2-6", n, False, {**_mismatch(k, marked, closed), "step": "marked"})
        rhs = rhs + _banner_gf(n - k, m) * marked
    mismatch = None if lhs == rhs else _mismatch(n, lhs, rhs)
    return Report("thm2-6", n, lhs == rhs, mismatch, {"m": m})
