"""Fan's graph on the multiple points, its first Betti number, and minimal cycles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .geometry import IncidenceLattice, LatticePoint, ProjectiveClosure


@dataclass(frozen=True)
class MultiplePointGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (point, point, carrier line)
    multiplicity: dict[int, int]
    lattice: IncidenceLattice

    @property
    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for u, v, line in self.edges:
            adj[u].append((v, line))
            adj[v].append((u, line))
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def carrier(self, u: int, v: int) -> int:
        for a, b, line in self.edges:
            if {a, b} == {u, v}:
                return line
        raise KeyError(f"no edge between {u} and {v}")


@dataclass(frozen=True)
class CycleWitness:
    """Multiple points p_1..p_r where p_k and p_{k+1} (cyclically) share connecting_lines[k]."""

    points: tuple[int, ...]
    connecting_lines: tuple[int, ...]

    def __len__(self):
        return len(self.points)


def _order_key(lat: IncidenceLattice, line: int, p: LatticePoint):
    ln = lat.lines[line] if lat.lines is not None else None
    if ln is not None and p.coordinates is not None:
        return (0, ln.parameter(*p.coordinates), p.id)
    # abstract points and points at infinity: fixed id order, after the affine ones
    return (1, 0, p.id)


def build_graph(source: ProjectiveClosure | IncidenceLattice) -> MultiplePointGraph:
    """Vertices are the multiple points; each line through k >= 2 of them contributes
    the k - 1 segments between consecutive ones."""
    lat = source.lattice if isinstance(source, ProjectiveClosure) else source
    multiple = lat.multiple_points
    edges = []
    for line in range(lat.n_lines):
        on = sorted((p for p in multiple if line in p.incident_lines),
                    key=lambda p: _order_key(lat, line, p))
        edges.extend((a.id, b.id, line) for a, b in zip(on, on[1:]))
    return MultiplePointGraph(tuple(sorted(p.id for p in multiple)), tuple(edges),
                              {p.id: p.multiplicity for p in multiple}, lat)


def components(g: MultiplePointGraph) -> int:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v, _ in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in g.vertices})


def beta(g: MultiplePointGraph) -> int:
    """First Betti number E - V + C."""
    return len(g.edges) - len(g.vertices) + components(g)


def girth(g: MultiplePointGraph) -> int | None:
    """Length of a shortest cycle, by BFS from every vertex."""
    adj = g.adjacency
    best = None
    for s in g.vertices:
        dist, parent = {s: 0}, {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, _ in adj[u]:
                if w not in dist:
                    dist[w], parent[w] = dist[u] + 1, u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def _first_cycle_of_length(g: MultiplePointGraph, length: int) -> list[int] | None:
    """Lexicographically smallest vertex sequence of a simple cycle with `length` edges."""
    adj = g.adjacency
    for s in g.vertices:
        path = [s]

        def dfs(u):
            if len(path) == length:
                return any(w == s for w, _ in adj[u])
            for w, _ in adj[u]:
                if w > s and w not in path:
                    path.append(w)
                    if dfs(w):
                        return True
                    path.pop()
            return False

        if dfs(s):
            return path
    return None


def _collapse(points: list[int], lines: list[int]) -> tuple[list[int], list[int]]:
    """Drop points where the incoming and outgoing carrier coincide (straight-through points)."""
    points, lines = list(points), list(lines)
    changed = True
    while changed and len(points) > 1:
        changed = False
        for k in range(len(points)):
            if lines[k - 1] == lines[k]:
                # lines[k - 1] == lines[k] now joins points[k - 1] to points[k + 1]
                del points[k]
                del lines[k]
                changed = True
                break
    return points, lines


def _is_cycle(lat: IncidenceLattice, points, lines) -> bool:
    r = len(points)
    if r < 3 or len(set(points)) != r:
        return False
    for k in range(r):
        p, q = lat.point(points[k]), lat.point(points[(k + 1) % r])
        if lines[k] not in p.incident_lines or lines[k] not in q.incident_lines:
            return False
        if lines[k] == lines[k - 1]:
            return False
    return True


def _chord(lat: IncidenceLattice, points, lines) -> tuple[int, int, int] | None:
    """A line through two witness points that is not the carrier joining them."""
    r = len(points)
    hits: dict[int, list[int]] = {}
    for k, pid in enumerate(points):
        for line in lat.point(pid).incident_lines:
            hits.setdefault(line, []).append(k)
    for line in sorted(hits):
        ks = hits[line]
        for i, j in combinations(ks, 2):
            adjacent = (j - i == 1 and lines[i] == line) or (i == 0 and j == r - 1 and lines[r - 1] == line)
            if not adjacent:
                return line, i, j
    return None


def minimize_cycle(lat: IncidenceLattice, points, lines) -> CycleWitness:
    """Shortcut chords until no witness point is joined to a non-neighbour in the witness."""
    points, lines = _collapse(points, lines)
    while True:
        chord = _chord(lat, points, lines)
        if chord is None:
            return CycleWitness(tuple(points), tuple(lines))
        line, i, j = chord
        r = len(points)
        a = _collapse(points[i:j + 1], lines[i:j] + [line])
        b = _collapse(points[j:] + points[:i + 1], lines[j:] + lines[:i] + [line])
        valid = [c for c in (a, b) if _is_cycle(lat, *c) and len(c[0]) < r]
        if not valid:
            raise RuntimeError(f"chord {line} could not be shortcut in cycle {points}")
        points, lines = min(valid, key=lambda c: (len(c[0]), c[0]))


def find_minimal_cycle(g: MultiplePointGraph) -> CycleWitness | None:
    """None for a forest; otherwise a chordless cycle derived from a shortest graph cycle."""
    length = girth(g)
    if length is None:
        return None
    path = _first_cycle_of_length(g, length)
    carriers = [g.carrier(path[k], path[(k + 1) % len(path)]) for k in range(len(path))]
    return minimize_cycle(g.lattice, path, carriers)


def is_valid_witness(g: MultiplePointGraph, w: CycleWitness) -> bool:
    multiple = set(g.vertices)
    return all(p in multiple for p in w.points) and _is_cycle(g.lattice, list(w.points), list(w.connecting_lines))


def is_chordless(lat: IncidenceLattice, w: CycleWitness) -> bool:
    return _chord(lat, list(w.points), list(w.connecting_lines)) is None


def to_dot(g: MultiplePointGraph) -> str:
    lat = g.lattice
    out = ["graph G {"]
    for v in g.vertices:
        out.append(f'  p{v} [label="p{v} (m={g.multiplicity[v]})"];')
    for u, v, line in g.edges:
        out.append(f'  p{u} -- p{v} [label="{lat.line_label(line)}"];')
    out.append("}")
    return "\n".join(out) + "\n"
