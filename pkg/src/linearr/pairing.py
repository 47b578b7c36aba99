"""The commutator pairing G/G2 x G/G2 -> G2/G3, stabilizer subgroups, and their theorem check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .geometry import IncidenceLattice
from .intlinalg import IntMatrix, ZSubgroup, kernel, subgroup_eq, subgroup_join, subgroup_meet
from .lcs import G2G3Element, g2g3


@dataclass(frozen=True)
class PairingForm:
    """f(u, v) = sum_{i<j} (u_i v_j - u_j v_i) [g_i, g_j], stored on a flat coordinate layout.

    `offsets` maps each point with a nonzero summand to the start of its block in
    the flat vector; `classes[(i, j)]` (i < j) is the flat image of [g_i, g_j].
    """

    n: int
    lattice: IncidenceLattice
    offsets: dict[int, int]
    ranks: dict[int, int]
    total_rank: int
    classes: dict[tuple[int, int], tuple[int, ...]]

    def class_of(self, i: int, j: int) -> tuple[int, ...]:
        if i == j:
            return (0,) * self.total_rank
        if i < j:
            return self.classes[(i, j)]
        return tuple(-x for x in self.classes[(j, i)])

    def evaluate(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        if len(u) != self.n or len(v) != self.n:
            raise ValueError(f"vectors must have length {self.n}")
        out = [0] * self.total_rank
        for (i, j), vec in self.classes.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                for k, x in enumerate(vec):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def as_element(self, flat: Sequence[int]) -> G2G3Element:
        return G2G3Element({pid: tuple(flat[o:o + self.ranks[pid]]) for pid, o in self.offsets.items()})

    def __call__(self, u, v) -> G2G3Element:
        return self.as_element(self.evaluate(u, v))

    def against(self, x: Sequence[int]) -> IntMatrix:
        """Matrix whose row i is f(e_i, x)."""
        rows = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            rows.append(self.evaluate(e, x))
        return IntMatrix.from_rows(rows, self.total_rank)


def pairing(lat: IncidenceLattice) -> PairingForm:
    if not lat.complete:
        raise ValueError("pairing requires an arrangement without parallel lines")
    summands = [s for s in g2g3(lat) if s.rank]
    offsets, ranks, pos = {}, {}, 0
    for s in summands:
        offsets[s.point_id], ranks[s.point_id] = pos, s.rank
        pos += s.rank
    by_id = {s.point_id: s for s in summands}
    classes = {}
    for i, j in combinations(range(lat.n_lines), 2):
        vec = [0] * pos
        pid = lat.pair_index[(i, j)]
        if pid in by_id:
            o = offsets[pid]
            vec[o:o + ranks[pid]] = by_id[pid].pair_coordinates(i, j)
        classes[(i, j)] = tuple(vec)
    return PairingForm(lat.n_lines, lat, offsets, ranks, pos, classes)


@dataclass(frozen=True)
class StabilizerResult:
    target: tuple[int, ...]
    subgroup: ZSubgroup


def stabilizer(form: PairingForm, x: Sequence[int]) -> StabilizerResult:
    """S(x) = {v : f(v, x) = 0}, the kernel of v -> f(v, x)."""
    x = tuple(int(t) for t in x)
    if len(x) != form.n:
        raise ValueError(f"target must have length {form.n}")
    if form.total_rank == 0:
        return StabilizerResult(x, ZSubgroup.full(form.n))
    # v @ A == 0 with A = against(x), i.e. A^T @ v == 0
    return StabilizerResult(x, kernel(form.against(x).T))


def unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def point_sum_vector(lat: IncidenceLattice, q: int) -> tuple[int, ...]:
    """Abelianized M_q: the indicator vector of the lines through q."""
    p = lat.point(q)
    return tuple(int(i in p.incident_lines) for i in range(lat.n_lines))


@dataclass(frozen=True)
class StabilizerCheck:
    point: int
    holds: bool
    lhs: ZSubgroup
    rhs: ZSubgroup


def check_stabilizer_theorem(lat: IncidenceLattice, q: int, form: PairingForm | None = None
                             ) -> StabilizerCheck:
    """Compare S(M_q) with < g_i (i through q), and the intersection of the S(g_i) >."""
    p = lat.point(q)
    if not p.multiple:
        raise ValueError(f"point {q} is not a multiple point")
    form = form or pairing(lat)
    n = lat.n_lines
    lhs = stabilizer(form, point_sum_vector(lat, q)).subgroup
    inter = None
    for i in p.lines:
        s = stabilizer(form, unit(n, i)).subgroup
        inter = s if inter is None else subgroup_meet(inter, s)
    gens = ZSubgroup.from_generators(n, [unit(n, i) for i in p.lines])
    rhs = subgroup_join(gens, inter)
    return StabilizerCheck(q, subgroup_eq(lhs, rhs), lhs, rhs)
