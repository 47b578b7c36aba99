"""Words, group presentations of arrangement complements, and Tietze rewriting."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .geometry import IncidenceLattice, UnknownIdError
from .intlinalg import snf

Letter = tuple[int, int]  # (generator index, nonzero exponent)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "Word":
        return cls(((i, e),)) if e else cls()

    @classmethod
    def product(cls, words: Iterable["Word"]) -> "Word":
        out: tuple[Letter, ...] = ()
        for w in words:
            out += w.letters
        return cls(out)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def reduced(self) -> "Word":
        return free_reduce(self)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def occurrences(self, g: int) -> int:
        return sum(abs(e) for h, e in self.letters if h == g)

    def exponent_sums(self, n: int) -> list[int]:
        v = [0] * n
        for g, e in self.letters:
            v[g] += e
        return v

    def substitute(self, images: Mapping[int, "Word"]) -> "Word":
        out: list[Letter] = []
        for g, e in self.letters:
            if g in images:
                out.extend((images[g] ** e).letters)
            else:
                out.append((g, e))
        return Word(tuple(out))

    def relabel(self, mapping: Mapping[int, int]) -> "Word":
        return Word(tuple((mapping.get(g, g), e) for g, e in self.letters))


IDENTITY = Word()


def free_reduce(w: Word) -> Word:
    """Merge adjacent powers of the same generator and drop zero exponents."""
    stack: list[list[int]] = []
    for g, e in w.letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return Word(tuple((g, e) for g, e in stack))


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def conjugate(a: Word, x: Word) -> Word:
    """a^x = x^-1 a x."""
    return x.inverse() * a * x


def format_word(w: Word, labels: Sequence[str]) -> str:
    if not w.letters:
        return "1"
    return " ".join(labels[g] if e == 1 else f"{labels[g]}^{e}" for g, e in w.letters)


_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text: str, labels: Sequence[str]) -> Word:
    """Inverse of format_word: "g0 g1^-1 g2^3"; "1" or "" is the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return IDENTITY
    index = {name: i for i, name in enumerate(labels)}
    out = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m or m.group(1) not in index:
            raise ValueError(f"unknown letter {tok!r}")
        e = int(m.group(2)) if m.group(2) else 1
        if e == 0:
            raise ValueError(f"zero exponent in {tok!r}")
        out.append((index[m.group(1)], e))
    return Word(tuple(out))


# -- Tietze steps -----------------------------------------------------------

@dataclass(frozen=True)
class T1:
    """Add a relator that is a consequence of the others (caller-asserted)."""
    word: Word
    reason: str = "asserted consequence"


@dataclass(frozen=True)
class T2:
    """Remove a relator that is a consequence of the others (caller-asserted)."""
    index: int
    reason: str = "asserted redundant"


@dataclass(frozen=True)
class T3:
    """Add a generator z with defining relator w z^-1."""
    word: Word
    label: str


@dataclass(frozen=True)
class T4:
    """Eliminate generator z using a relator of the form w z^-1."""
    generator: int
    relator: int | None = None


@dataclass(frozen=True)
class Quotient:
    """Not a Tietze move: adjoin relators, passing to a quotient group."""
    words: tuple[Word, ...]
    reason: str = ""


Step = Union[T1, T2, T3, T4, Quotient]


class TietzeError(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    labels: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    redundant: frozenset[int] = frozenset()
    history: tuple[Step, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.labels)
        for r in self.relators:
            if any(not 0 <= g < n for g in r.generators()):
                raise ValueError(f"relator references a generator outside 0..{n - 1}")

    @property
    def n_generators(self) -> int:
        return len(self.labels)

    def __str__(self):
        return format_presentation(self)


def format_presentation(p: GroupPresentation) -> str:
    gens = " ".join(p.labels)
    rels = ", ".join(format_word(r, p.labels) for r in p.relators)
    return f"< {gens} | {rels} >"


def abelianization(p: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion invariant factors > 1) of the abelianized group."""
    n = p.n_generators
    rows = [r.exponent_sums(n) for r in p.relators]
    if not rows:
        return n, ()
    sf = snf(rows, n)
    return n - sf.rank, tuple(d for d in sf.invariant_factors if d > 1)


def _elimination_relator(p: GroupPresentation, z: int) -> tuple[int, Word] | None:
    """A relator containing z exactly once, as (index, w) with relator ~ w z^-1."""
    best = None
    for k, r in enumerate(p.relators):
        if r.occurrences(z) != 1:
            continue
        if best is not None and len(r) >= len(p.relators[best]):
            continue
        best = k
    if best is None:
        return None
    return best, _solve_for(p.relators[best], z)


def _solve_for(r: Word, z: int) -> Word:
    # r = u z^e v with z absent from u, v; r == 1 gives z^e = u^-1 v^-1
    k = next(i for i, (g, _) in enumerate(r.letters) if g == z)
    u, e, v = Word(r.letters[:k]), r.letters[k][1], Word(r.letters[k + 1:])
    w = u.inverse() * v.inverse()
    return free_reduce(w if e == 1 else w.inverse())


def tietze(p: GroupPresentation, step: Step) -> GroupPresentation:
    """Apply one step and return the new presentation with the step appended to its history."""
    n = p.n_generators
    hist = p.history + (step,)
    if isinstance(step, (T1, Quotient)):
        words = (step.word,) if isinstance(step, T1) else step.words
        for w in words:
            if any(not 0 <= g < n for g in w.generators()):
                raise TietzeError("added relator uses an unknown generator")
        return GroupPresentation(p.labels, p.relators + tuple(free_reduce(w) for w in words),
                                 p.redundant, hist)
    if isinstance(step, T2):
        k = step.index
        if not 0 <= k < len(p.relators):
            raise TietzeError(f"no relator {k}")
        rels = p.relators[:k] + p.relators[k + 1:]
        red = frozenset(i - (i > k) for i in p.redundant if i != k)
        return GroupPresentation(p.labels, rels, red, hist)
    if isinstance(step, T3):
        if step.label in p.labels:
            raise TietzeError(f"label {step.label!r} is not fresh")
        if any(not 0 <= g < n for g in step.word.generators()):
            raise TietzeError("defining word uses an unknown generator")
        rel = free_reduce(step.word * Word.gen(n, -1))
        return GroupPresentation(p.labels + (step.label,), p.relators + (rel,), p.redundant, hist)
    if isinstance(step, T4):
        z = step.generator
        if not 0 <= z < n:
            raise TietzeError(f"no generator {z}")
        if step.relator is None:
            found = _elimination_relator(p, z)
            if found is None:
                raise TietzeError(f"no relator of the form w {p.labels[z]}^-1 with {p.labels[z]} absent from w")
            k, w = found
        else:
            k = step.relator
            if not 0 <= k < len(p.relators):
                raise TietzeError(f"no relator {k}")
            if p.relators[k].occurrences(z) != 1:
                raise TietzeError(f"relator {k} does not define {p.labels[z]}")
            w = _solve_for(p.relators[k], z)
        shift = {g: g - 1 for g in range(z + 1, n)}
        rels = tuple(free_reduce(r.substitute({z: w})).relabel(shift)
                     for i, r in enumerate(p.relators) if i != k)
        red = frozenset(i - (i > k) for i in p.redundant if i != k)
        labels = p.labels[:z] + p.labels[z + 1:]
        return GroupPresentation(labels, rels, red, hist)
    raise TypeError(f"not a step: {step!r}")


def replay(start: GroupPresentation, steps: Iterable[Step]):
    """Yield (step, before, after) for each step applied from `start`."""
    cur = start
    for step in steps:
        nxt = tietze(cur, step)
        yield step, cur, nxt
        cur = nxt


def simplify(p: GroupPresentation, keep_last: bool = True) -> GroupPresentation:
    """Mechanically safe simplification: drop trivial and duplicate relators (T2) and
    eliminate generators that occur once in some relator (T4), until nothing changes."""
    while True:
        seen: set[Word] = set()
        drop = None
        for k, r in enumerate(p.relators):
            if not r.letters:
                drop = T2(k, "trivial relator")
                break
            if r in seen:
                drop = T2(k, "duplicate relator")
                break
            seen.add(r)
        if drop is not None:
            p = tietze(p, drop)
            continue
        move = None
        for k in sorted(range(len(p.relators)), key=lambda k: (len(p.relators[k]), k)):
            once = [g for g in p.relators[k].generators() if p.relators[k].occurrences(g) == 1]
            if once:
                move = T4(max(once) if keep_last else min(once), k)
                break
        if move is None:
            return p
        p = tietze(p, move)


# -- arrangement groups -----------------------------------------------------

class ConjugatorError(ValueError):
    pass


@dataclass(frozen=True)
class ConjugatorTable:
    """Conjugating words x for each incident (point id, line) pair; missing entries are trivial."""

    words: Mapping[tuple[int, int], Word] = field(default_factory=dict)

    def get(self, pid: int, line: int) -> Word:
        return self.words.get((pid, line), IDENTITY)

    def check(self, lat: IncidenceLattice):
        for (pid, line), w in self.words.items():
            try:
                p = lat.point(pid)
            except UnknownIdError:
                raise ConjugatorError(f"conjugator key ({pid}, {line}): no such point") from None
            if line not in p.incident_lines:
                raise ConjugatorError(f"conjugator key ({pid}, {line}): line {line} does not pass through point {pid}")
            if any(not 0 <= g < lat.n_lines for g in w.generators()):
                raise ConjugatorError(f"conjugator for ({pid}, {line}) uses an unknown generator")


def generator_labels(lat: IncidenceLattice) -> tuple[str, ...]:
    return tuple(f"g{i}" for i in range(lat.n_lines))


def point_word(lat: IncidenceLattice, pid: int, conj: ConjugatorTable | None = None) -> Word:
    """M_p: product of the (conjugated) generators of the lines through p, in line order."""
    conj = conj or ConjugatorTable()
    p = lat.point(pid)
    return Word.product(conjugate(Word.gen(i), conj.get(pid, i)) for i in p.lines)


def point_relators(lat: IncidenceLattice, pid: int, conj: ConjugatorTable | None = None) -> list[Word]:
    conj = conj or ConjugatorTable()
    M = point_word(lat, pid, conj)
    return [free_reduce(commutator(conjugate(Word.gen(i), conj.get(pid, i)), M))
            for i in lat.point(pid).lines]


def pi1_presentation(lat: IncidenceLattice, conj: ConjugatorTable | None = None) -> GroupPresentation:
    """One generator per line; each point of multiplicity m gives m commutator relators,
    the last of which follows from the others and is flagged redundant."""
    if not lat.complete:
        raise ValueError("presentation requires an arrangement without parallel lines")
    conj = conj or ConjugatorTable()
    conj.check(lat)
    rels: list[Word] = []
    redundant = set()
    for p in lat.points:
        block = point_relators(lat, p.id, conj)
        rels.extend(block)
        redundant.add(len(rels) - 1)
    return GroupPresentation(generator_labels(lat), tuple(rels), frozenset(redundant))


def central_element(lat: IncidenceLattice) -> Word:
    """Z = g0 g1 ... g_{n-1}, central in the fundamental group when there are no parallels."""
    return Word(tuple((i, 1) for i in range(lat.n_lines)))


def quotient_by(p: GroupPresentation, words: Sequence[Word], reason: str = "") -> GroupPresentation:
    return tietze(p, Quotient(tuple(words), reason))


def point_quotient(lat: IncidenceLattice, q: int) -> GroupPresentation:
    """G / N where N is the normal closure of the generators of lines missing q and of M_q.

    The result is simplified; for a multiple point of multiplicity m it is the free
    presentation on m - 1 of the generators through q.
    """
    point = lat.point(q)
    if not point.multiple:
        raise ValueError(f"point {q} is simple (multiplicity {point.multiplicity})")
    base = pi1_presentation(lat)
    killed = [Word.gen(i) for i in range(lat.n_lines) if i not in point.incident_lines]
    p = quotient_by(base, killed + [point_word(lat, q)], f"kill lines off point {q} and M")
    return simplify(p)
