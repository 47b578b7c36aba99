"""G/G2 and the point-by-point decomposition of G2/G3 for an arrangement group.

G2/G3 is generated by the classes [g_i, g_j].  The pair (i, j) lives in the
summand of the unique point where lines i and j meet, and each point p only
imposes the relations  prod_{x in p} [g_x, g_y] = 1  for y in p.  We encode
[g_i, g_j] for i < j as +e_(i,j) and [g_j, g_i] as -e_(i,j).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .geometry import IncidenceLattice
from .intlinalg import IntMatrix, rank as int_rank, snf, solve_left


class TorsionError(ArithmeticError):
    """A summand of G2/G3 came out with torsion, which the encoding rules out."""


@dataclass(frozen=True)
class AbelianizationSpace:
    rank: int
    labels: tuple[str, ...]


def abelianization_space(lat: IncidenceLattice) -> AbelianizationSpace:
    return AbelianizationSpace(lat.n_lines, tuple(f"g{i}" for i in range(lat.n_lines)))


def pair_sign(i: int, j: int) -> tuple[tuple[int, int], int]:
    """Key and sign of [g_i, g_j] in the pair basis."""
    if i == j:
        raise ValueError("[g_i, g_i] is trivial and has no pair")
    return ((i, j), 1) if i < j else ((j, i), -1)


@dataclass(frozen=True)
class PointSummand:
    point_id: int
    lines: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    relation_matrix: IntMatrix
    rank: int
    basis_pairs: tuple[tuple[int, int], ...]
    projection: IntMatrix  # row k = coordinates of pairs[k] in the basis_pairs basis

    @property
    def multiplicity(self) -> int:
        return len(self.lines)

    def coordinates(self, pair_vector: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of an element given as a vector over `pairs`."""
        return self.projection.row_times(pair_vector)

    def pair_coordinates(self, i: int, j: int) -> tuple[int, ...]:
        key, sign = pair_sign(i, j)
        row = self.projection.entries[self.pairs.index(key)]
        return tuple(sign * x for x in row)


def relation_matrix(lines: Sequence[int]) -> tuple[tuple[tuple[int, int], ...], IntMatrix]:
    lines = sorted(lines)
    pairs = tuple(combinations(lines, 2))
    col = {pr: k for k, pr in enumerate(pairs)}
    rows = []
    for y in lines:
        row = [0] * len(pairs)
        for x in lines:
            if x != y:
                key, sign = pair_sign(x, y)
                row[col[key]] += sign
        rows.append(row)
    return pairs, IntMatrix.from_rows(rows, len(pairs))


def _canonical_basis(pairs, R: IntMatrix) -> tuple[tuple[int, ...], IntMatrix]:
    """Lexicographically first set of pairs whose images form a basis of Z^pairs / rowspan(R),
    with the projection onto that basis."""
    npairs = len(pairs)
    rR = int_rank(R)
    k = npairs - rR
    # greedy: keep a pair when it is independent of R and the pairs already kept
    chosen: list[int] = []
    rows = [list(r) for r in R.entries]
    for q in range(npairs):
        if len(chosen) == k:
            break
        e = [0] * npairs
        e[q] = 1
        if int_rank(rows + [e], npairs) == rR + len(chosen) + 1:
            chosen.append(q)
            rows.append(e)
    # the chosen pairs must be a Z-basis of the quotient, not just a Q-basis
    A = IntMatrix.from_rows([[int(q == c) for q in range(npairs)] for c in chosen] + list(R.entries), npairs)
    sf = snf(A)
    if sf.rank != npairs or any(d != 1 for d in sf.invariant_factors):
        raise TorsionError(f"greedy pair set {chosen} is not a basis of the quotient")
    proj = []
    for q in range(npairs):
        e = [int(q == c) for c in range(npairs)]
        x = solve_left(A, e)
        proj.append(x[:len(chosen)])
    return tuple(chosen), IntMatrix.from_rows(proj, len(chosen))


@lru_cache(maxsize=4096)
def _summand(pid: int, lines: tuple[int, ...]) -> PointSummand:
    pairs, R = relation_matrix(lines)
    if not pairs:
        return PointSummand(pid, lines, (), R, 0, (), IntMatrix(0, 0, ()))
    sf = snf(R)
    if any(d != 1 for d in sf.invariant_factors):
        raise TorsionError(f"point {pid}: invariant factors {sf.invariant_factors}")
    rk = len(pairs) - sf.rank
    chosen, proj = _canonical_basis(pairs, R)
    assert len(chosen) == rk
    return PointSummand(pid, lines, pairs, R, rk, tuple(pairs[c] for c in chosen), proj)


def point_summand(lat: IncidenceLattice, pid: int) -> PointSummand:
    return _summand(pid, lat.point(pid).lines)


def g2g3(lat: IncidenceLattice) -> list[PointSummand]:
    return [point_summand(lat, p.id) for p in lat.points]


def total_rank(summands: Sequence[PointSummand]) -> int:
    return sum(s.rank for s in summands)


def predicted_rank(lat: IncidenceLattice) -> int:
    """Closed form: sum over points of C(m - 1, 2)."""
    return sum(comb(p.multiplicity - 1, 2) for p in lat.points)


@dataclass(frozen=True)
class G2G3Element:
    """Per-point coordinates; points without an entry (and all simple points) are zero."""

    coords: Mapping[int, tuple[int, ...]]

    def __add__(self, other: "G2G3Element") -> "G2G3Element":
        keys = set(self.coords) | set(other.coords)
        out = {}
        for k in keys:
            a, b = self.coords.get(k), other.coords.get(k)
            out[k] = b if a is None else a if b is None else tuple(x + y for x, y in zip(a, b))
        return G2G3Element(out)

    def scale(self, c: int) -> "G2G3Element":
        return G2G3Element({k: tuple(c * x for x in v) for k, v in self.coords.items()})

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.coords.values())

    def __eq__(self, other):
        if not isinstance(other, G2G3Element):
            return NotImplemented
        return (self + (-other)).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((k, v) for k, v in self.coords.items() if any(v))))


ZERO = G2G3Element({})


def commutator_class(lat: IncidenceLattice, i: int, j: int) -> G2G3Element:
    """Class of [g_i, g_j] in G2/G3."""
    if i == j:
        return ZERO
    p = lat.meeting_point(i, j)
    if p is None:
        raise ValueError(f"lines {i} and {j} do not meet")
    s = point_summand(lat, p.id)
    if s.rank == 0:
        return ZERO
    return G2G3Element({p.id: s.pair_coordinates(i, j)})


def element_from_pairs(lat: IncidenceLattice, coeffs: Mapping[tuple[int, int], int]) -> G2G3Element:
    """Class of prod [g_i, g_j]^c over the given (i, j) -> c."""
    total = ZERO
    for (i, j), c in coeffs.items():
        if c:
            total = total + commutator_class(lat, i, j).scale(c)
    return total


def xi_projection(x: G2G3Element, r: int, lat: IncidenceLattice | None = None) -> tuple[int, ...]:
    """Component of x in the summand of point r."""
    if r in x.coords:
        return tuple(x.coords[r])
    if lat is not None:
        return (0,) * point_summand(lat, r).rank
    return ()


def basic_commutators(n: int, weight: int) -> list:
    """Hall's basic commutators of the given weight on generators 0..n-1, as nested tuples."""
    by_weight: dict[int, list] = {1: list(range(n))}
    order: list = list(range(n))  # all basic commutators of lower weight, in increasing order
    for w in range(2, weight + 1):
        new = []
        for wa in range(1, w):
            wb = w - wa
            for c in by_weight[wa]:
                for d in by_weight[wb]:
                    # [c, d] is basic when c > d and, if c = [s, t], d >= t
                    if order.index(c) <= order.index(d):
                        continue
                    if isinstance(c, tuple) and order.index(d) < order.index(c[1]):
                        continue
                    new.append((c, d))
        by_weight[w] = new
        order.extend(new)
    return by_weight.get(weight, [])


def free_group_lcs_oracle(n: int, weight: int = 2) -> int:
    """Rank of F_n / ... layer of the given weight, by counting basic commutators."""
    if n < 1:
        raise ValueError("n must be positive")
    if weight not in (2, 3):
        raise ValueError("only weights 2 and 3 are supported")
    return len(basic_commutators(n, weight))
