"""Finite ranked posets, Rees products, order complexes and rational homology.

Ranks are computed by exact sparse elimination over the integers (each
row kept primitive by dividing out its content), so Betti numbers are
exact rational dimensions.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .genfun import Report
from .permstat import admissible_inversions, descent_set, excedance_set
from .exactalg import Q_EXPONENTIAL, Poly, ZSeries, first_difference, series_mul

__all__ = [
    "Poset",
    "boolean_lattice",
    "chain",
    "subspace_lattice",
    "build_poset",
    "remove_bottom",
    "rees_product",
    "open_ideal",
    "order_complex",
    "sparse_rank",
    "betti_numbers",
    "reduced_euler_characteristic",
    "rees_ideal",
    "verify_thm_3_3_dims",
    "verify_eq_13_14",
    "verify_eq_13_14_reversed",
    "ai_des_table",
    "Homology",
]


class Poset:
    """A finite ranked poset with its strict order stored as up-sets."""

    def __init__(
        self,
        elements: Sequence[Hashable],
        less: Callable[[Hashable, Hashable], bool],
        rank: Callable[[Hashable], int],
    ):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        self.ranks = tuple(rank(e) for e in self.elements)
        n = len(self.elements)
        self.above: tuple[frozenset[int], ...] = tuple(
            frozenset(b for b in range(n) if a != b and less(self.elements[a], self.elements[b]))
            for a in range(n)
        )
        self._check_order()

    def _check_order(self) -> None:
        for a, ups in enumerate(self.above):
            if a in ups:
                raise ValueError("order relation is not irreflexive")
            for b in ups:
                if a in self.above[b]:
                    raise ValueError("order relation is not antisymmetric")
                if not self.above[b] <= ups:
                    raise ValueError("order relation is not transitive")
                if self.ranks[b] <= self.ranks[a]:
                    raise ValueError("rank does not increase along the order")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    def less(self, a, b) -> bool:
        return self.index[b] in self.above[self.index[a]]

    def rank(self, e) -> int:
        return self.ranks[self.index[e]]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for a, ups in enumerate(self.above):
            for b in ups:
                if not any(b in self.above[c] for c in ups):
                    out.append((a, b))
        return sorted(out)

    def is_ranked(self) -> bool:
        """Every cover raises the rank by exactly one and minimal elements have rank 0."""
        if any(self.ranks[b] - self.ranks[a] != 1 for a, b in self.covers()):
            return False
        below = {b for ups in self.above for b in ups}
        return all(self.ranks[i] == 0 for i in range(len(self)) if i not in below)

    def induced(self, keep: Iterable[Hashable]) -> "Poset":
        wanted = set(keep)
        keep = [e for e in self.elements if e in wanted]
        sub = object.__new__(Poset)
        sub.elements = tuple(keep)
        sub.index = {e: i for i, e in enumerate(keep)}
        old = [self.index[e] for e in keep]
        sub.ranks = tuple(self.ranks[i] for i in old)
        remap = {o: i for i, o in enumerate(old)}
        sub.above = tuple(
            frozenset(remap[b] for b in self.above[o] if b in remap) for o in old
        )
        return sub

    def with_ranks(self, rank: Callable[[Hashable], int]) -> "Poset":
        out = self.induced(self.elements)
        out.ranks = tuple(rank(e) for e in out.elements)
        return out

    def to_json(self) -> dict:
        """``{elements, covers, ranks}`` with elements rendered as strings."""
        return {
            "elements": [_label(e) for e in self.elements],
            "covers": [[a, b] for a, b in self.covers()],
            "ranks": list(self.ranks),
        }


def _label(e) -> str:
    if isinstance(e, frozenset):
        return "{" + ",".join(map(str, sorted(e))) + "}"
    if isinstance(e, tuple):
        return "(" + ", ".join(_label(x) for x in e) + ")"
    return str(e)


# -- constructions --------------------------------------------------------------


def boolean_lattice(n: int) -> Poset:
    """Subsets of [n] under inclusion, ranked by size."""
    if n < 1:
        raise ValueError("need n >= 1")
    elements = [
        frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)
    ]
    return Poset(elements, lambda a, b: a < b, len)


def chain(n: int) -> Poset:
    """``1 < 2 < ... < n``; element j has rank j - 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Poset(range(1, n + 1), lambda a, b: a < b, lambda j: j - 1)


def _rref_subspaces(n: int, q: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every subspace of F_q^n as its reduced row echelon basis."""
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [
                (row, col)
                for row, p in enumerate(pivots)
                for col in range(p + 1, n)
                if col not in pivots
            ]
            for values in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for row, p in enumerate(pivots):
                    rows[row][p] = 1
                for (row, col), v in zip(free, values):
                    rows[row][col] = v
                out.append(tuple(tuple(r) for r in rows))
    return out


def _span(basis, q: int) -> frozenset[tuple[int, ...]]:
    n = len(basis[0]) if basis else 0
    vecs = set()
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        vecs.add(tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % q for i in range(n)))
    return frozenset(vecs)


def subspace_lattice(n: int, q: int) -> Poset:
    """Subspaces of F_q^n under inclusion, ranked by dimension (q prime, 2 or 3)."""
    if q not in (2, 3):
        raise ValueError(f"unsupported field size q={q}; use 2 or 3")
    if n < 1:
        raise ValueError("need n >= 1")
    bases = _rref_subspaces(n, q)
    spans = {b: _span(b, q) if b else frozenset({(0,) * n}) for b in bases}
    return Poset(bases, lambda a, b: spans[a] < spans[b], len)


def build_poset(kind: str, n: int, q: int | None = None) -> Poset:
    if kind == "boolean":
        return boolean_lattice(n)
    if kind == "chain":
        return chain(n)
    if kind == "subspace":
        if q is None:
            raise ValueError("subspace lattice needs q")
        return subspace_lattice(n, q)
    raise ValueError(f"unknown poset kind {kind!r}")


def remove_bottom(P: Poset) -> Poset:
    """Delete the unique minimum and lower every rank by one."""
    below = {b for ups in P.above for b in ups}
    minima = [P.elements[i] for i in range(len(P)) if i not in below]
    if len(minima) != 1:
        raise ValueError("poset has no unique minimum")
    bottom = minima[0]
    sub = P.induced(e for e in P.elements if e != bottom)
    sub.ranks = tuple(r - 1 for r in sub.ranks)
    return sub


def rees_product(P: Poset, Q: Poset) -> Poset:
    """Pairs (p, q) with rank(p) >= rank(q); rank differences bound the order."""
    if not P.is_ranked() or not Q.is_ranked():
        raise ValueError("Rees product needs ranked (pure) posets")
    elements = [(p, q) for p in P.elements for q in Q.elements if P.rank(p) >= Q.rank(q)]

    def leq(a, b) -> bool:
        (p1, q1), (p2, q2) = a, b
        return (
            (p1 == p2 or P.less(p1, p2))
            and (q1 == q2 or Q.less(q1, q2))
            and P.rank(p2) - P.rank(p1) >= Q.rank(q2) - Q.rank(q1)
        )

    return Poset(elements, lambda a, b: a != b and leq(a, b), lambda e: P.rank(e[0]))


def open_ideal(P: Poset, top: Hashable) -> Poset:
    """Induced subposet on the elements strictly below ``top``."""
    if top not in P:
        raise ValueError(f"{_label(top)} is not in the poset")
    t = P.index[top]
    return P.induced(P.elements[i] for i in range(len(P)) if t in P.above[i])


# -- order complex and homology ------------------------------------------------------


def order_complex(P: Poset) -> list[list[tuple[int, ...]]]:
    """Chains of P grouped by dimension; entry d lists chains of d + 1 elements."""
    faces: list[list[tuple[int, ...]]] = []

    def grow(chain_: tuple[int, ...]):
        d = len(chain_) - 1
        while len(faces) <= d:
            faces.append([])
        faces[d].append(chain_)
        for b in sorted(P.above[chain_[-1]]):
            grow(chain_ + (b,))

    for a in range(len(P)):
        grow((a,))
    return [sorted(level) for level in faces]


def sparse_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank over the rationals of a sparse integer matrix given as row dicts."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            pivot = pivots.get(col)
            if pivot is None:
                pivots[col] = row
                break
            a, b = pivot[col], row[col]
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new = {c: fa * v for c, v in row.items()}
            for c, v in pivot.items():
                s = new.get(c, 0) - fb * v
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            content = 0
            for v in new.values():
                content = math.gcd(content, v)
                if content == 1:
                    break
            row = {c: v // content for c, v in new.items()} if content > 1 else new
    return len(pivots)


def _boundary_rows(faces: list[list[tuple[int, ...]]], d: int) -> list[dict[int, int]]:
    """Rows of the boundary map from d-faces to (d-1)-faces (d = 0 maps to the empty face)."""
    if d == 0:
        return [{0: 1} for _ in faces[0]] if faces else []
    lower = {f: i for i, f in enumerate(faces[d - 1])}
    rows = []
    for face in faces[d]:
        row = {}
        for k in range(len(face)):
            row[lower[face[:k] + face[k + 1:]]] = -1 if k % 2 else 1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Homology:
    """Reduced Betti numbers keyed by dimension, from -1 to the top dimension."""

    betti: dict[int, int]
    face_counts: dict[int, int]

    @property
    def top_dimension(self) -> int:
        return max(self.betti)

    def __getitem__(self, d: int) -> int:
        return self.betti.get(d, 0)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())


def betti_numbers(P: Poset) -> Homology:
    """Reduced rational homology of the order complex of P."""
    faces = order_complex(P)
    top = len(faces) - 1
    counts = {-1: 1, **{d: len(level) for d, level in enumerate(faces)}}
    ranks = {d: sparse_rank(_boundary_rows(faces, d)) for d in range(top + 1)}
    ranks[top + 1] = 0
    betti = {}
    for d in range(-1, top + 1):
        kernel = counts[d] - ranks.get(d, 0)
        betti[d] = kernel - ranks[d + 1]
    return Homology(betti, counts)


def reduced_euler_characteristic(P: Poset) -> int:
    """From face counts alone: ``sum (-1)^d f_d`` including the empty face."""
    faces = order_complex(P)
    return -1 + sum((-1) ** d * len(level) for d, level in enumerate(faces))


# -- the Rees ideals I_{n,j} and I_{n,j}(q) --------------------------------------------


@lru_cache(maxsize=None)
def _rees_poset(n: int, q: int | None) -> Poset:
    base = boolean_lattice(n) if q is None else subspace_lattice(n, q)
    return rees_product(remove_bottom(base), chain(n))


def rees_ideal(n: int, j: int, q: int | None = None) -> Poset:
    """Elements below the maximal element (top, j) of (B_n minus bottom) * C_n."""
    if not 1 <= j <= n:
        raise ValueError(f"j must be in 1..{n}")
    R = _rees_poset(n, q)
    top = next(e for e in R.elements if e[1] == j and R.rank(e) == n - 1)
    return open_ideal(R, top)


def _exc_counts(n: int) -> Counter:
    return Counter(len(excedance_set(p)) for p in itertools.permutations(range(1, n + 1)))


def verify_thm_3_3_dims(n: int) -> Report:
    """Top Betti numbers of I_{n,j} against Eulerian numbers; lower homology vanishes."""
    from .quasisym import Q_nj

    if n < 1:
        raise ValueError("need n >= 1")
    counts = _exc_counts(n)
    squarefree = {f"x_{i}": 1 for i in range(1, n + 1)}
    dims = []
    for j in range(1, n + 1):
        H = betti_numbers(rees_ideal(n, j))
        top = H[n - 2]
        dims.append(top)
        expected = counts[j - 1]
        from_Q = Q_nj(n, j - 1, n).coefficient(squarefree)
        lower = {d: b for d, b in H.betti.items() if d < n - 2 and b}
        euler_ok = H.euler_characteristic() == sum(
            (-1) ** d * c for d, c in H.face_counts.items()
        )
        if top != expected or from_Q != expected or lower or not euler_ok:
            mismatch = {
                "n": n, "j": j, "betti": H.betti, "eulerian": expected,
                "Q_coefficient": from_Q, "euler_ok": euler_ok,
            }
            return Report("thm3-3", n, False, mismatch, {"dims": dims})
    return Report("thm3-3", n, True, None, {"dims": dims})


def ai_des_table(n: int, q_val: int, reversed_: bool = False) -> list[int]:
    """``sum q_val^ai`` over permutations with des = j - 1, for j = 1..n.

    ``reversed_=True`` uses the exponent ``C(n,2) - ai`` instead.
    """
    out = [0] * max(n, 1)
    top = n * (n - 1) // 2
    for p in itertools.permutations(range(1, n + 1)):
        ai = len(admissible_inversions(p))
        out[len(descent_set(p))] += q_val ** (top - ai if reversed_ else ai)
    return out


def _top_betti_table(n: int, q_val: int, expected_fn) -> tuple[dict, dict | None]:
    all_dims: dict[int, list[int]] = {}
    for k in range(1, n + 1):
        expected = expected_fn(k)
        dims = []
        for j in range(1, k + 1):
            H = betti_numbers(rees_ideal(k, j, q_val))
            lower = {d: b for d, b in H.betti.items() if d < k - 2 and b}
            dims.append(H[k - 2])
            if H[k - 2] != expected[j - 1] or lower:
                all_dims[k] = dims
                return all_dims, {"n": k, "j": j, "betti": H.betti, "expected": expected[j - 1]}
        all_dims[k] = dims
    return all_dims, None


def _eq14_mismatch(dims: dict, n: int, q_val: int, weighted: bool) -> dict | None:
    """Cross-multiplied q-EGF identity for the top Betti numbers, evaluated at q = q_val.

    ``weighted`` switches exp_q to ``sum q^C(k,2) z^k/[k]_q!``.
    """
    t = Poly.var("t")
    scale = [q_val ** (k * (k - 1) // 2) if weighted else 1 for k in range(n + 1)]
    numerators = [Poly.const(1)] + [
        sum((d * t ** (j - 1) for j, d in enumerate(dims[k], 1)), Poly.const(0))
        for k in range(1, n + 1)
    ]
    exp_z = ZSeries(scale, Q_EXPONENTIAL)
    exp_zt = ZSeries([c * t**k for k, c in enumerate(scale)], Q_EXPONENTIAL)
    product = series_mul(exp_zt - exp_z * t, ZSeries(numerators, Q_EXPONENTIAL))
    at_q = {"q": q_val}
    product = product.map(lambda c: c.substitute(at_q))
    rhs = (exp_z * (1 - t)).map(lambda c: c.substitute(at_q))
    bad = first_difference(product, rhs, n)
    if bad is None:
        return None
    return {"n": bad, "lhs": str(product[bad]), "rhs": str(rhs[bad]), "step": "eq14"}


def verify_eq_13_14(n: int, q_val: int) -> Report:
    """Top Betti numbers of I_{k,j}(q), k <= n, against ``sum q^ai`` over des = j - 1,
    then the q-exponential generating function of those numbers at q = q_val."""
    if q_val not in (2, 3):
        raise ValueError(f"unsupported q={q_val}; use 2 or 3")
    if n < 1:
        raise ValueError("need n >= 1")
    dims, mismatch = _top_betti_table(n, q_val, lambda k: ai_des_table(k, q_val))
    if mismatch is None:
        mismatch = _eq14_mismatch(dims, n, q_val, weighted=False)
    return Report("eq13", n, mismatch is None, mismatch, {"q": q_val, "dims": dims})


def verify_eq_13_14_reversed(n: int, q_val: int) -> Report:
    """The same homology against ``sum q^(C(k,2) - ai)``, with ``exp_q`` weighted by
    ``q^C(k,2)``: the form the computed Betti numbers actually satisfy."""
    if q_val not in (2, 3):
        raise ValueError(f"unsupported q={q_val}; use 2 or 3")
    if n < 1:
        raise ValueError("need n >= 1")
    dims, mismatch = _top_betti_table(
        n, q_val, lambda k: ai_des_table(k, q_val, reversed_=True)
    )
    if mismatch is None:
        mismatch = _eq14_mismatch(dims, n, q_val, weighted=True)
    return Report("eq13-reversed", n, mismatch is None, mismatch, {"q": q_val, "dims": dims})
