"""JSON input/output: arrangement files and report payloads.  Rationals are [num, den] pairs."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from . import __version__
from .arrangement import ABSTRACT, Arrangement, ArrangementError, Line, as_fraction, parse_line
from .classify import ClassificationOutcome, DecompositionReport
from .geometry import IncidenceLattice
from .graph import MultiplePointGraph, beta
from .intlinalg import ZSubgroup
from .lcs import PointSummand, total_rank
from .pairing import PairingForm, StabilizerCheck, StabilizerResult
from .presentation import ConjugatorTable, GroupPresentation, format_presentation, format_word, parse_word

TOOL = "linearr"


def rational(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def _parse_line_entry(item: Any, k: int) -> Line:
    if isinstance(item, str):
        return parse_line(item, f"L{k}")
    if isinstance(item, dict):
        line = _parse_line_entry(item.get("line", item.get("equation")), k)
        return Line(line.a, line.b, line.c, str(item.get("label", line.label)))
    if isinstance(item, list) and len(item) == 6:
        a, b, c = (as_fraction([item[2 * t], item[2 * t + 1]]) for t in range(3))
        return Line(a, b, c, f"L{k}")
    if isinstance(item, list) and len(item) == 3:
        return Line(*(as_fraction(t) for t in item), f"L{k}")
    raise ArrangementError(f"line {k}: cannot read {item!r}")


def arrangement_from_json(data: Any) -> Arrangement:
    if not isinstance(data, dict):
        raise ArrangementError("arrangement file must hold a JSON object")
    if "lines" in data:
        if not isinstance(data["lines"], list):
            raise ArrangementError("'lines' must be a list")
        lines = [_parse_line_entry(item, k) for k, item in enumerate(data["lines"])]
        return Arrangement.from_lines(lines, bool(data.get("no_parallels", True)))
    if "n_lines" in data:
        n = data["n_lines"]
        pts = data.get("multiple_points", [])
        if not isinstance(n, int) or isinstance(n, bool) or not isinstance(pts, list):
            raise ArrangementError("abstract arrangement needs integer 'n_lines' and a list 'multiple_points'")
        for p in pts:
            if not isinstance(p, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in p):
                raise ArrangementError(f"multiple point {p!r} must be a list of line indices")
        return Arrangement.abstract(n, pts, data.get("labels"))
    raise ArrangementError("arrangement file needs either 'lines' or 'n_lines'")


def arrangement_to_json(arr: Arrangement) -> dict:
    """Canonical form: normalized coefficient 6-tuples, or sorted abstract points."""
    if arr.mode == ABSTRACT:
        return {"n_lines": arr.n_lines,
                "multiple_points": [sorted(p) for p in arr.abstract_points or ()]}
    rows = []
    for line in arr.lines:
        a, b, c = line.key
        rows.append(rational(a) + rational(b) + rational(c))
    return {"lines": rows, "no_parallels": arr.no_parallels}


def conjugators_from_json(data: Any, n_lines: int) -> ConjugatorTable:
    labels = [f"g{i}" for i in range(n_lines)]
    words = {}
    for item in data or []:
        try:
            key = (int(item["point"]), int(item["line"]))
            words[key] = parse_word(str(item.get("word", "")), labels)
        except (KeyError, TypeError, ValueError) as exc:
            raise ArrangementError(f"bad conjugator entry {item!r}: {exc}") from exc
    return ConjugatorTable(words)


def input_hash(data: Any) -> str:
    blob = json.dumps(data, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def envelope(command: str, source: Any, result: dict) -> dict:
    return {"tool": TOOL, "version": __version__, "command": command,
            "input_sha256": input_hash(source), "result": result}


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- reports ----------------------------------------------------------------

def lattice_report(lat: IncidenceLattice) -> dict:
    pts = []
    for p in lat.points:
        pts.append({"id": p.id, "lines": list(p.lines), "multiplicity": p.multiplicity,
                    "multiple": p.multiple,
                    "coordinates": None if p.coordinates is None else [rational(t) for t in p.coordinates]})
    return {"n_lines": lat.n_lines, "labels": list(lat.labels), "points": pts,
            "n_multiple_points": len(lat.multiple_points)}


def graph_report(g: MultiplePointGraph) -> dict:
    return {"vertices": [{"id": v, "multiplicity": g.multiplicity[v]} for v in g.vertices],
            "edges": [{"points": [u, v], "line": line} for u, v, line in g.edges],
            "beta": beta(g)}


def presentation_report(p: GroupPresentation) -> dict:
    return {"generators": list(p.labels),
            "relators": [format_word(r, p.labels) for r in p.relators],
            "redundant": sorted(p.redundant),
            "text": format_presentation(p)}


def lcs_report(summands: list[PointSummand]) -> dict:
    return {"points": [{"id": s.point_id, "lines": list(s.lines), "multiplicity": s.multiplicity,
                        "rank": s.rank, "basis": [list(pr) for pr in s.basis_pairs]} for s in summands],
            "total_rank": total_rank(summands)}


def subgroup_report(s: ZSubgroup) -> dict:
    return {"ambient_rank": s.ambient_rank, "rank": s.rank, "hnf": s.basis.tolist()}


def pairing_report(form: PairingForm) -> dict:
    classes = []
    for (i, j), vec in sorted(form.classes.items()):
        if any(vec):
            el = form.as_element(vec)
            classes.append({"lines": [i, j], "point": form.lattice.pair_index[(i, j)],
                            "coordinates": {str(k): list(v) for k, v in el.coords.items() if any(v)}})
    return {"n": form.n, "total_rank": form.total_rank,
            "blocks": [{"point": pid, "offset": o, "rank": form.ranks[pid]} for pid, o in form.offsets.items()],
            "nonzero_classes": classes}


def stabilizer_report(res: StabilizerResult) -> dict:
    return {"target": list(res.target), "subgroup": subgroup_report(res.subgroup)}


def sm_report(chk: StabilizerCheck) -> dict:
    return {"point": chk.point, "holds": chk.holds, "lhs": subgroup_report(chk.lhs),
            "rhs": subgroup_report(chk.rhs)}


def outcome_report(out: ClassificationOutcome) -> dict:
    v = out.verdict
    if isinstance(v, DecompositionReport):
        return {"beta": out.beta, "verdict": "DirectSum",
                "summands": [{"point": pid, "free_rank": r} for pid, r in v.summands],
                "free_abelian_rank": v.free_abelian_rank, "total_lines": v.total_lines}
    H = v.quotient_presentation
    return {"beta": out.beta, "verdict": "Obstructed",
            "certificate": {"cycle": {"points": list(v.cycle.points),
                                      "connecting_lines": list(v.cycle.connecting_lines)},
                            "participating_lines": sorted(v.participating_lines),
                            "b": v.b, "rank_H_ab": v.rank_H_ab,
                            "quotient_generators": list(H.labels),
                            "quotient_relator_count": len(H.relators)}}
