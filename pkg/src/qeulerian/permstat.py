"""Permutations of ``[n]`` in one-line notation and their statistics.

Positions and values are 1-based, matching the usual combinatorial
conventions: ``Perm((3, 2, 5, 4, 1))`` has descents at positions 1, 3, 4.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "Perm",
    "StatRecord",
    "compute_stats",
    "iterate_perms",
    "perms_in_rank_range",
    "unrank",
    "descent_set",
    "excedance_set",
    "exd_set",
    "major_index",
    "inversions",
    "fixed_points",
    "admissible_inversions",
    "cycle_type",
    "is_partition_of",
    "partitions",
    "block_order_key",
    "barred_word",
]


@dataclass(frozen=True)
class Perm:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"{image} is not a permutation of [{len(image)}]")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """``"32541"`` or, for n > 9, ``"10,3,1,..."``."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(tok) for tok in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        if self.n > 9:
            return ",".join(map(str, self.image))
        return "".join(map(str, self.image))


# -- individual statistics on raw tuples ---------------------------------


def descent_set(w: Sequence) -> frozenset[int]:
    """Positions i with w_i > w_{i+1}; works for any totally ordered letters."""
    return frozenset(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def excedance_set(p: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(p, 1) if v > i)


def major_index(p: Sequence[int]) -> int:
    return sum(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def fixed_points(p: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(p, 1) if v == i)


def block_order_key(value: int, barred: bool, n: int) -> int:
    """Sort key for the order 1' < 2' < ... < n' < 1 < 2 < ... < n (Exd only)."""
    return value if barred else n + value


def barred_word(p: Sequence[int]) -> tuple[tuple[int, bool], ...]:
    """The word of ``p`` with each excedance value barred."""
    return tuple((v, v > i) for i, v in enumerate(p, 1))


def exd_set(p: Sequence[int]) -> frozenset[int]:
    """Descent set of the barred word, compared in the block order."""
    n = len(p)
    keys = [block_order_key(v, barred, n) for v, barred in barred_word(p)]
    return descent_set(keys)


def admissible_inversions(p: Sequence[int]) -> list[tuple[int, int]]:
    """Value pairs (p_i, p_j), i < j, p_i > p_j, with p_j < p_{j+1} or some p_k < p_j between."""
    n = len(p)
    found = []
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] <= p[j]:
                continue
            ascent_after = j + 1 < n and p[j] < p[j + 1]
            if ascent_after or any(p[k] < p[j] for k in range(i + 1, j)):
                found.append((p[i], p[j]))
    return found


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * (n + 1)
    lengths = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


_cycle_type_of = cycle_type


def is_partition_of(lam: Sequence[int], n: int) -> bool:
    return (
        all(isinstance(k, int) and k >= 1 for k in lam)
        and list(lam) == sorted(lam, reverse=True)
        and sum(lam) == n
    )


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, largest first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class StatRecord:
    des: int
    exc: int
    maj: int
    inv: int
    fix: int
    Des: frozenset[int]
    Exc: frozenset[int]
    Exd: frozenset[int]
    ai: int
    aid: int
    cycle_type: tuple[int, ...]


def compute_stats(p: Perm | Sequence[int]) -> StatRecord:
    image = p.image if isinstance(p, Perm) else tuple(p)
    Des = descent_set(image)
    Exc = excedance_set(image)
    ai = len(admissible_inversions(image))
    return StatRecord(
        des=len(Des),
        exc=len(Exc),
        maj=sum(Des),
        inv=inversions(image),
        fix=fixed_points(image),
        Des=Des,
        Exc=Exc,
        Exd=exd_set(image),
        ai=ai,
        aid=ai + len(Des),
        cycle_type=cycle_type(image),
    )


# -- enumeration ----------------------------------------------------------


def unrank(n: int, rank: int) -> tuple[int, ...]:
    """The permutation at position ``rank`` of the lexicographic listing of S_n."""
    if not 0 <= rank < math.factorial(n):
        raise IndexError(f"rank {rank} outside S_{n}")
    pool = list(range(1, n + 1))
    out = []
    for k in range(n, 0, -1):
        f = math.factorial(k - 1)
        idx, rank = divmod(rank, f)
        out.append(pool.pop(idx))
    return tuple(out)


def perms_in_rank_range(n: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    """Lexicographic ranks ``start <= r < stop`` of S_n, streamed."""
    stop = min(stop, math.factorial(n))
    if start >= stop:
        return
    first = unrank(n, start)
    it = _lex_successors(first)
    yield from itertools.islice(it, stop - start)


def _lex_successors(p: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    a = list(p)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] > a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] < a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def iterate_perms(
    n: int,
    *,
    derangements: bool = False,
    cycle_type: Sequence[int] | None = None,
    exc: int | None = None,
    des: int | None = None,
) -> Iterator[Perm]:
    """Yield the permutations of [n] passing every given filter, in lex order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lam = None
    if cycle_type is not None:
        lam = tuple(cycle_type)
        if not is_partition_of(lam, n):
            raise ValueError(f"{lam} is not a partition of {n}")
    for image in itertools.permutations(range(1, n + 1)):
        if derangements and any(v == i for i, v in enumerate(image, 1)):
            continue
        if lam is not None and _cycle_type_of(image) != lam:
            continue
        if exc is not None and len(excedance_set(image)) != exc:
            continue
        if des is not None and len(descent_set(image)) != des:
            continue
        yield Perm(image)
