"""Intersection lattices computed by exact rational arithmetic, plus projective bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count
from math import comb
from typing import Iterable, Sequence

from .arrangement import ABSTRACT, Arrangement, ArrangementError, Line, validate

Point2 = tuple[Fraction, Fraction]


class ParallelLinesError(ArrangementError):
    pass


class UnknownIdError(LookupError):
    """A point id or line index that does not exist."""


PARALLEL = None


def intersect(l1: Line, l2: Line) -> Point2 | None:
    """Exact intersection point, or None (PARALLEL) when the lines are parallel."""
    if l1 == l2:
        raise ArrangementError(f"cannot intersect a line with itself: {l1}")
    det = l1.a * l2.b - l1.b * l2.a
    if det == 0:
        return PARALLEL
    x = (l1.c * l2.b - l1.b * l2.c) / det
    y = (l1.a * l2.c - l1.c * l2.a) / det
    return x, y


@dataclass(frozen=True)
class LatticePoint:
    id: int
    incident_lines: frozenset[int]
    coordinates: Point2 | None = None

    @property
    def multiplicity(self) -> int:
        return len(self.incident_lines)

    @property
    def multiple(self) -> bool:
        return self.multiplicity >= 3

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(sorted(self.incident_lines))


@dataclass(frozen=True)
class IncidenceLattice:
    """Intersection points of an arrangement with their incident lines.

    `lines` holds the Line objects when coordinates are known (entries may be
    None for the synthetic line at infinity); abstract lattices have none.
    """

    points: tuple[LatticePoint, ...]
    n_lines: int
    lines: tuple[Line | None, ...] | None = None
    labels: tuple[str, ...] = field(default=(), compare=False)
    pair_index: dict[tuple[int, int], int] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        index: dict[tuple[int, int], int] = {}
        for p in self.points:
            for pair in combinations(p.lines, 2):
                if pair in index:
                    raise ArrangementError(f"lines {pair} meet in two points {index[pair]} and {p.id}")
                index[pair] = p.id
        object.__setattr__(self, "pair_index", index)
        object.__setattr__(self, "_by_id", {p.id: p for p in self.points})

    def point(self, pid: int) -> LatticePoint:
        try:
            return self._by_id[pid]
        except KeyError:
            raise UnknownIdError(f"unknown point id {pid}") from None

    def meeting_point(self, i: int, j: int) -> LatticePoint | None:
        if i == j:
            raise ValueError("a line does not meet itself in a point")
        pid = self.pair_index.get((min(i, j), max(i, j)))
        return None if pid is None else self._by_id[pid]

    @property
    def multiple_points(self) -> tuple[LatticePoint, ...]:
        return tuple(p for p in self.points if p.multiple)

    def points_on(self, i: int) -> tuple[LatticePoint, ...]:
        return tuple(p for p in self.points if i in p.incident_lines)

    @property
    def complete(self) -> bool:
        """Every pair of lines meets (no parallels)."""
        return len(self.pair_index) == comb(self.n_lines, 2)

    def line_label(self, i: int) -> str:
        return self.labels[i] if i < len(self.labels) else f"L{i}"


def build_lattice(arr: Arrangement) -> IncidenceLattice:
    """Group all pairwise intersections into points by exact coordinate equality."""
    problems = validate(arr)
    if problems:
        kind = ParallelLinesError if all(p.startswith("parallel") for p in problems) else ArrangementError
        raise kind("; ".join(problems))
    labels = tuple(arr.line_label(i) for i in range(arr.n_lines))
    if arr.mode == ABSTRACT:
        return _abstract_lattice(arr, labels)
    groups: dict[Point2, set[int]] = {}
    for i, j in combinations(range(len(arr.lines)), 2):
        pt = intersect(arr.lines[i], arr.lines[j])
        if pt is PARALLEL:
            if arr.no_parallels:
                raise ParallelLinesError(f"lines {i} and {j} are parallel")
            continue
        # Fractions are kept in lowest terms, so equal points hash equal
        groups.setdefault(pt, set()).update((i, j))
    points = tuple(LatticePoint(k, frozenset(s), xy) for k, (xy, s) in enumerate(groups.items()))
    return IncidenceLattice(points, len(arr.lines), tuple(arr.lines), labels)


def _abstract_lattice(arr: Arrangement, labels) -> IncidenceLattice:
    pts = [LatticePoint(k, frozenset(p)) for k, p in enumerate(arr.abstract_points or ())]
    covered = {pair for p in pts for pair in combinations(p.lines, 2)}
    ids = count(len(pts))
    for pair in combinations(range(arr.n_lines), 2):
        if pair not in covered:
            pts.append(LatticePoint(next(ids), frozenset(pair)))
    return IncidenceLattice(tuple(pts), arr.n_lines, None, labels)


def parallel_classes(arr: Arrangement) -> list[list[int]]:
    """Partition of line indices by direction, ordered by smallest member."""
    if arr.mode == ABSTRACT:
        return [[i] for i in range(arr.n_lines)]
    classes: dict[tuple, list[int]] = {}
    for i, line in enumerate(arr.lines):
        classes.setdefault(line.direction_key, []).append(i)
    return sorted(classes.values())


@dataclass(frozen=True)
class ProjectiveClosure:
    """An affine lattice plus the line at infinity (index n_lines) and its points."""

    base: IncidenceLattice
    infinity_points: tuple[LatticePoint, ...]
    has_L_infinity: bool = True

    @property
    def infinity_index(self) -> int:
        return self.base.n_lines

    @property
    def lattice(self) -> IncidenceLattice:
        """The projective lattice on n_lines + 1 lines."""
        lines = None
        if self.base.lines is not None:
            lines = tuple(self.base.lines) + (None,)
        labels = tuple(self.base.line_label(i) for i in range(self.base.n_lines)) + ("L_inf",)
        return IncidenceLattice(self.base.points + self.infinity_points, self.base.n_lines + 1,
                                lines, labels)

    def affine(self) -> IncidenceLattice:
        return self.base


def projectivize(lat: IncidenceLattice, parallel_classes: Sequence[Iterable[int]] | None = None
                 ) -> ProjectiveClosure:
    """Adjoin L_inf with one point at infinity per parallel class."""
    n = lat.n_lines
    classes = [sorted(c) for c in parallel_classes] if parallel_classes is not None else [[i] for i in range(n)]
    flat = sorted(i for c in classes for i in c)
    if flat != list(range(n)):
        raise ArrangementError("parallel classes must partition the line indices")
    start = max((p.id for p in lat.points), default=-1) + 1
    inf_pts = tuple(LatticePoint(start + k, frozenset(c) | {n}) for k, c in enumerate(sorted(classes)))
    return ProjectiveClosure(lat, inf_pts, True)


def closure_of(arr: Arrangement) -> ProjectiveClosure:
    return projectivize(build_lattice(arr), parallel_classes(arr))


def delete_line(lat: IncidenceLattice, i: int) -> IncidenceLattice:
    """Remove line i and renumber the lines above it; point ids are kept."""
    if not 0 <= i < lat.n_lines:
        raise UnknownIdError(f"no line {i} (lattice has {lat.n_lines} lines)")

    def shift(j):
        return j - 1 if j > i else j

    pts = []
    for p in lat.points:
        rest = frozenset(shift(j) for j in p.incident_lines if j != i)
        if len(rest) >= 2:
            pts.append(LatticePoint(p.id, rest, p.coordinates))
    lines = None if lat.lines is None else lat.lines[:i] + lat.lines[i + 1:]
    labels = lat.labels[:i] + lat.labels[i + 1:] if lat.labels else ()
    return IncidenceLattice(tuple(pts), lat.n_lines - 1, lines, labels)


def delete_from_arrangement(arr: Arrangement, i: int) -> Arrangement:
    if not 0 <= i < arr.n_lines:
        raise UnknownIdError(f"no line {i}")
    if arr.mode == ABSTRACT:
        pts = []
        for p in arr.abstract_points or ():
            rest = frozenset(j - 1 if j > i else j for j in p if j != i)
            if len(rest) >= 3:
                pts.append(rest)
        labels = arr.labels[:i] + arr.labels[i + 1:]
        return Arrangement.abstract(arr.n_lines - 1, pts, labels)
    return Arrangement.from_lines(arr.lines[:i] + arr.lines[i + 1:], arr.no_parallels)


def is_generic_line(lat: IncidenceLattice, i: int) -> bool:
    """Line i meets every other line, and only in simple points."""
    on = lat.points_on(i)
    return len(on) == lat.n_lines - 1 and all(p.multiplicity == 2 for p in on)


# -- projective charts ------------------------------------------------------

Covector = tuple[Fraction, Fraction, Fraction]
L_INFINITY: Covector = (Fraction(0), Fraction(0), Fraction(1))


def projective_lines(arr: Arrangement) -> list[Covector]:
    """Homogeneous covectors of the projective closure: the lines then L_inf."""
    return [line.homogeneous() for line in arr.lines] + [L_INFINITY]


def _meets(l0: Covector, l1: Covector, l2: Covector) -> bool:
    """Whether three projective lines are concurrent."""
    (a, b, c), (d, e, f), (g, h, k) = l0, l1, l2
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g) == 0


def _proportional(u: Covector, v: Covector) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i, j in ((0, 1), (0, 2), (1, 2)))


def is_generic_covector(lines: Sequence[Covector], l0: Covector) -> bool:
    """l0 is a new line through no intersection point of `lines`."""
    if any(_proportional(l0, l) for l in lines):
        return False
    return not any(_meets(l0, l1, l2) for l1, l2 in combinations(lines, 2))


def find_generic_line(arr: Arrangement, bound: int = 6) -> Covector:
    """Deterministic search over small integer covectors for a line in general position
    with respect to the projective closure of `arr`."""
    lines = projective_lines(arr)
    rng = range(-bound, bound + 1)
    candidates = sorted(((a, b, c) for a in rng for b in rng for c in rng if (a, b) != (0, 0)),
                        key=lambda t: (sum(map(abs, t)), t))
    for a, b, c in candidates:
        l0 = (Fraction(a), Fraction(b), Fraction(c))
        if is_generic_covector(lines, l0):
            return l0
    raise ArrangementError(f"no generic line with coefficients bounded by {bound}")


def _inverse3(m: list[list[Fraction]]) -> list[list[Fraction]]:
    (a, b, c), (d, e, f), (g, h, k) = m
    det = a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ArrangementError("singular projective transformation")
    adj = [[e * k - f * h, c * h - b * k, b * f - c * e],
           [f * g - d * k, a * k - c * g, c * d - a * f],
           [d * h - e * g, b * g - a * h, a * e - b * d]]
    return [[x / det for x in row] for row in adj]


def affine_chart(lines: Sequence[Covector], at_infinity: Covector, labels: Sequence[str] | None = None
                 ) -> Arrangement:
    """Send the projective line `at_infinity` to infinity and return the remaining lines
    as an affine arrangement (lines proportional to `at_infinity` are dropped)."""
    l0 = tuple(Fraction(x) for x in at_infinity)
    basis = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    A = None
    for r1, r2 in ((0, 1), (0, 2), (1, 2)):
        cand = [basis[r1], basis[r2], list(l0)]
        try:
            Ainv = _inverse3(cand)
        except ArrangementError:
            continue
        A = cand
        break
    if A is None:
        raise ArrangementError("cannot complete the line at infinity to a frame")
    out, names = [], []
    for k, l in enumerate(lines):
        if _proportional(l, l0):
            continue
        a, b, c = (sum(l[i] * Ainv[i][j] for i in range(3)) for j in range(3))
        out.append(Line(a, b, -c))
        names.append(labels[k] if labels else f"L{k}")
    out = [Line(*ln.key, names[k]) for k, ln in enumerate(out)]
    return Arrangement.from_lines(out, no_parallels=False)
