"""Bundled arrangements with their recorded invariants.

Expected values were worked out by hand from the incidences listed next to each
entry; the test suite recomputes them on every run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .arrangement import Arrangement
from .geometry import affine_chart, find_generic_line, projective_lines


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    arrangement: Arrangement
    beta: int
    g2g3_rank: int
    direct_sum: bool | None  # None: has parallels, so only the projective checks apply
    summands: tuple[int, ...] = ()  # sorted free ranks m - 1 when direct_sum
    free_abelian_rank: int | None = None
    projective: bool = False
    notes: str = field(default="", compare=False)


def _pencil(k: int) -> Arrangement:
    # x = 0 and y = j x for j = 0..k-2, all through the origin
    return Arrangement.from_lines(["x = 0", "y = 0"] + [f"y = {j}x" for j in range(1, k - 1)])


_A3_AFFINE = Arrangement.from_lines(["x = 0", "y = 0", "y = x", "x = 1", "y = 1"], no_parallels=False)


def _a3_chart() -> Arrangement:
    lines = projective_lines(_A3_AFFINE)
    return affine_chart(lines, find_generic_line(_A3_AFFINE), [*(l.label for l in _A3_AFFINE.lines), "L_inf"])


def _build() -> dict[str, CatalogEntry]:
    e = {}

    def add(entry: CatalogEntry):
        e[entry.name] = entry

    add(CatalogEntry("generic3", Arrangement.from_lines(["y = 0", "x = 0", "x + y = 1"]),
                     beta=0, g2g3_rank=0, direct_sum=True, summands=(), free_abelian_rank=3,
                     notes="three lines in general position"))
    add(CatalogEntry("pencil3", _pencil(3), 0, 1, True, (2,), 1, notes="three concurrent lines"))
    add(CatalogEntry("nearpencil4", Arrangement.from_lines(["x = 0", "y = 0", "y = x", "x + y = 1"]),
                     0, 1, True, (2,), 2, notes="pencil3 plus a generic line"))
    add(CatalogEntry("twopencils5",
                     Arrangement.from_lines(["y = 0", "x = 0", "y = x", "x + y = 1", "y = 2x - 2"]),
                     0, 2, True, (2, 2), 1,
                     notes="triple points (0,0) and (1,0) joined along y = 0"))
    add(CatalogEntry("triangle6",
                     Arrangement.from_lines(["y = 0", "x = 0", "x + y = 1", "y = 2x", "y = -2x + 2", "y = x/2 + 1"]),
                     1, 3, False, notes="triple points (0,0), (1,0), (0,1) on the sides of a triangle"))
    add(CatalogEntry("neartriangle7",
                     Arrangement.from_lines(["y = 0", "x = 0", "x + y = 1", "y = 2x", "y = -2x + 2",
                                             "y = x/2 + 1", "y = 3x + 7"]),
                     1, 3, False, notes="triangle6 plus a generic line"))
    add(CatalogEntry("braid-a3", _a3_chart(), 3, 4, False,
                     notes="A3 braid arrangement (complete quadrilateral) in a generic affine chart"))
    add(CatalogEntry("two-triangles-abstract",
                     Arrangement.abstract(12, [[0, 2, 3], [0, 1, 4], [1, 2, 5],
                                               [6, 8, 9], [6, 7, 10], [7, 8, 11]]),
                     2, 6, False, notes="two disjoint triangles of triple points (abstract)"))
    add(CatalogEntry("square-abstract8",
                     Arrangement.abstract(8, [[3, 0, 4], [0, 1, 5], [1, 2, 6], [2, 3, 7]]),
                     1, 4, False, notes="four triple points around a quadrilateral (abstract)"))
    add(CatalogEntry("star-abstract8",
                     Arrangement.abstract(8, [[0, 1, 2, 3], [0, 4, 5], [1, 6, 7]]),
                     0, 5, True, (2, 2, 3), 1, notes="a quadruple point with two triple neighbours (abstract)"))
    add(CatalogEntry("pencil5", _pencil(5), 0, 6, True, (4,), 1, notes="five concurrent lines"))
    add(CatalogEntry("a3-projective", _A3_AFFINE, 3, 2, None, projective=True,
                     notes="A3 with two parallel pairs; its closure adds L_inf"))
    add(CatalogEntry("parallel-pair3", Arrangement.from_lines(["y = 0", "y = 1", "x = 0"], no_parallels=False),
                     0, 0, None, projective=True, notes="two parallel lines and a transversal"))
    return e


_CATALOG: dict[str, CatalogEntry] | None = None
_PENCIL = re.compile(r"^pencil-?(\d+)$")


def entries() -> dict[str, CatalogEntry]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return _CATALOG


def entry(name: str) -> CatalogEntry:
    cat = entries()
    if name in cat:
        return cat[name]
    m = _PENCIL.match(name)
    if m and int(m.group(1)) >= 2:
        k = int(m.group(1))
        return CatalogEntry(name, _pencil(k), 0, (k - 1) * (k - 2) // 2, True, (k - 1,), 1,
                            notes=f"{k} concurrent lines")
    raise KeyError(f"unknown catalog arrangement {name!r}; known: {', '.join(sorted(cat))}, pencil-<k>")


def load_catalog(name: str) -> Arrangement:
    return entry(name).arrangement
