"""Line arrangements in the affine plane, in coordinate or abstract (incidence-only) form."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

COORDINATE = "coordinate"
ABSTRACT = "abstract"


class ArrangementError(ValueError):
    """Malformed line or arrangement data."""


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, "p/q" / decimal string, or [num, den] pair."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ArrangementError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"not a rational: {x!r}") from exc
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
            isinstance(t, int) and not isinstance(t, bool) for t in x):
        if x[1] == 0:
            raise ArrangementError(f"zero denominator in {list(x)}")
        return Fraction(x[0], x[1])
    # floats are refused on purpose: they cannot represent most rationals
    raise ArrangementError(f"not an exact rational: {x!r}")


def normalize_coefficients(a, b, c) -> tuple[Fraction, Fraction, Fraction]:
    a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
    lead = a if a != 0 else b
    if lead == 0:
        raise ArrangementError("degenerate line: (a, b) == (0, 0)")
    return a / lead, b / lead, c / lead


@dataclass(frozen=True, eq=False)
class Line:
    """The locus a*x + b*y = c.  Equality compares normalized coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction
    label: str = ""

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ArrangementError("degenerate line: (a, b) == (0, 0)")

    @property
    def key(self) -> tuple[Fraction, Fraction, Fraction]:
        return normalize_coefficients(self.a, self.b, self.c)

    @property
    def direction_key(self) -> tuple[Fraction, Fraction]:
        a, b, _ = self.key
        return a, b

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains(self, x: Fraction, y: Fraction) -> bool:
        return self.a * x + self.b * y == self.c

    def parameter(self, x: Fraction, y: Fraction) -> Fraction:
        """Position of (x, y) along the line, measured along the direction (-b, a)."""
        a, b, _ = self.key
        return -b * x + a * y

    def homogeneous(self) -> tuple[Fraction, Fraction, Fraction]:
        """Covector (a, b, -c) so that the line is {(x:y:z) : a x + b y - c z = 0}."""
        a, b, c = self.key
        return a, b, -c

    def __str__(self):
        return format_line(self)


def normalize(line: Line) -> Line:
    a, b, c = line.key
    return Line(a, b, c, line.label)


def _fmt_coeff(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_line(line: Line) -> str:
    terms = []
    for coeff, var in ((line.a, "x"), (line.b, "y")):
        if coeff == 0:
            continue
        mag = abs(coeff)
        body = var if mag == 1 else f"{_fmt_coeff(mag)} {var}"
        if not terms:
            terms.append(body if coeff > 0 else f"-{body}")
        else:
            terms.append(("+ " if coeff > 0 else "- ") + body)
    return f"{' '.join(terms)} = {_fmt_coeff(line.c)}"


_NUM = r"\d+(?:\.\d+)?(?:/\d+)?"
_TERM = re.compile(rf"^(?P<num>{_NUM})?\s*\*?\s*(?P<var>[xy])?\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?$")


def _parse_side(text: str) -> tuple[Fraction, Fraction, Fraction]:
    """Parse a sum of terms like '2x', '-1/2 y', 'x/2', '3' into (x-coeff, y-coeff, const)."""
    text = text.strip()
    if not text:
        raise ArrangementError("empty side of equation")
    coeffs = {"x": Fraction(0), "y": Fraction(0), None: Fraction(0)}
    # split keeping signs; a leading sign is allowed
    pieces = re.findall(r"([+-]?)\s*([^+-]+)", text)
    if "".join(s + b for s, b in pieces).replace(" ", "") != text.replace(" ", ""):
        raise ArrangementError(f"cannot parse {text!r}")
    for sign, body in pieces:
        m = _TERM.match(body.strip())
        if not m or (m.group("num") is None and m.group("var") is None):
            raise ArrangementError(f"cannot parse term {body.strip()!r}")
        try:
            value = Fraction(m.group("num")) if m.group("num") else Fraction(1)
            if m.group("den"):
                value /= Fraction(m.group("den"))
        except ZeroDivisionError:
            raise ArrangementError(f"zero denominator in {body.strip()!r}") from None
        if sign == "-":
            value = -value
        coeffs[m.group("var")] += value
    return coeffs["x"], coeffs["y"], coeffs[None]


def parse_line(text: str, label: str = "") -> Line:
    """Parse an equation such as "x + y = 1", "y = -2x + 2" or "y = x/2 + 1"."""
    if text.count("=") != 1:
        raise ArrangementError(f"expected exactly one '=' in {text!r}")
    lhs, rhs = text.split("=")
    la, lb, lc = _parse_side(lhs)
    ra, rb, rc = _parse_side(rhs)
    # (la - ra) x + (lb - rb) y = rc - lc
    return Line(la - ra, lb - rb, rc - lc, label or text.strip())


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of lines; line i carries group generator i.

    Abstract arrangements list only the multiple points (sets of >= 3 line
    indices); every pair of lines not covered by a listed point meets in an
    implicit simple point.
    """

    lines: tuple[Line, ...] = ()
    mode: str = COORDINATE
    abstract_points: tuple[frozenset[int], ...] | None = None
    no_parallels: bool = True
    abstract_n: int = 0
    labels: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_lines(cls, lines: Iterable[Line | str | Sequence], no_parallels: bool = True) -> "Arrangement":
        out = []
        for i, item in enumerate(lines):
            if isinstance(item, Line):
                line = item
            elif isinstance(item, str):
                line = parse_line(item)
            else:
                line = Line(*item)
            line = normalize(line)
            if not line.label:
                line = Line(line.a, line.b, line.c, f"L{i}")
            out.append(line)
        return cls(tuple(out), COORDINATE, None, no_parallels, 0, tuple(l.label for l in out))

    @classmethod
    def abstract(cls, n_lines: int, multiple_points: Iterable[Iterable[int]],
                 labels: Sequence[str] | None = None) -> "Arrangement":
        pts = tuple(frozenset(int(i) for i in p) for p in multiple_points)
        labels = tuple(labels) if labels else tuple(f"L{i}" for i in range(n_lines))
        return cls((), ABSTRACT, pts, True, int(n_lines), labels)

    @property
    def n_lines(self) -> int:
        return self.abstract_n if self.mode == ABSTRACT else len(self.lines)

    def line_label(self, i: int) -> str:
        if self.labels and i < len(self.labels):
            return self.labels[i]
        return f"L{i}"


def validate(arr: Arrangement) -> list[str]:
    """All invariant violations of an arrangement, as readable messages (empty when valid)."""
    problems: list[str] = []
    if arr.mode == COORDINATE:
        for i, j in combinations(range(len(arr.lines)), 2):
            li, lj = arr.lines[i], arr.lines[j]
            if li == lj:
                problems.append(f"equal lines: {i} and {j} ({li})")
            elif arr.no_parallels and li.direction_key == lj.direction_key:
                problems.append(f"parallel pair: lines {i} and {j} ({li} | {lj})")
        return problems
    if arr.mode != ABSTRACT:
        return [f"unknown mode {arr.mode!r}"]
    n = arr.abstract_n
    if n < 0:
        problems.append(f"negative line count {n}")
    owner: dict[tuple[int, int], int] = {}
    for k, pt in enumerate(arr.abstract_points or ()):
        bad = sorted(i for i in pt if not 0 <= i < n)
        if bad:
            problems.append(f"point {k} references unknown lines {bad}")
        if len(pt) < 3:
            problems.append(f"point {k} has only {len(pt)} lines {sorted(pt)}; listed points must be multiple")
        for pair in combinations(sorted(pt), 2):
            if pair in owner:
                problems.append(f"pair {pair} in two points: {owner[pair]} and {k}")
            else:
                owner[pair] = k
    return problems
