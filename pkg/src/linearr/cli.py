"""Command-line front end.

Exit codes: 0 success (DirectSum for classify), 2 Obstructed, 1 parse or other
error, 3 validation failure, 4 unknown point or line id.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import catalog
from .arrangement import Arrangement, ArrangementError, validate
from .classify import DecompositionReport, classify
from .geometry import (IncidenceLattice, ParallelLinesError, UnknownIdError, affine_chart, build_lattice,
                       closure_of, delete_line, find_generic_line, is_generic_line, projective_lines)
from .graph import beta, build_graph, to_dot
from .lcs import g2g3
from .pairing import check_stabilizer_theorem, pairing, point_sum_vector, stabilizer
from .presentation import ConjugatorError, format_presentation, pi1_presentation, point_quotient
from . import serialize as ser

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTED, EXIT_INVALID, EXIT_UNKNOWN_ID = 0, 1, 2, 3, 4

COMMANDS = ("lattice", "graph", "beta", "presentation", "lcs", "pairing", "stabilizer",
            "check-sm", "quotient", "classify", "delete-line")
NEEDS_POINT = {"check-sm", "quotient"}


class ValidationFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str
    format: str = "json"
    output: str | None = None
    point: int | None = None
    line: int | None = None
    vector: list[int] | None = None
    no_parallels: bool = False
    abstract: bool = False
    generic_chart: bool = False
    jobs: int = 1


def _load(source: str) -> tuple[Arrangement, Any]:
    """Arrangement plus the raw JSON it came from (hashed into the report)."""
    if source.startswith("catalog:"):
        name = source.split(":", 1)[1]
        try:
            arr = catalog.load_catalog(name)
        except KeyError as exc:
            raise ArrangementError(str(exc.args[0])) from None
        return arr, ser.arrangement_to_json(arr)
    with open(source, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ArrangementError(f"malformed JSON in {source}: {exc}") from None
    return ser.arrangement_from_json(data), data


def _prepare(cfg: RunConfig, arr: Arrangement) -> Arrangement:
    if cfg.abstract and arr.mode != "abstract":
        raise ValidationFailure("--abstract given but the input is a coordinate arrangement")
    if cfg.no_parallels:
        arr = Arrangement(arr.lines, arr.mode, arr.abstract_points, True, arr.abstract_n, arr.labels)
    problems = validate(arr)
    if problems:
        raise ValidationFailure("; ".join(problems))
    if cfg.generic_chart and arr.mode != "abstract":
        l0 = find_generic_line(arr)
        labels = [arr.line_label(i) for i in range(arr.n_lines)] + ["L_inf"]
        arr = affine_chart(projective_lines(arr), l0, labels)
    return arr


def _affine(lat: IncidenceLattice, command: str) -> IncidenceLattice:
    if not lat.complete:
        raise ValidationFailure(f"{command} needs an arrangement without parallel lines "
                                "(use --generic-chart to move a generic line to infinity)")
    return lat


def _point(lat: IncidenceLattice, cfg: RunConfig) -> int:
    if cfg.point is None:
        raise ValidationFailure(f"{cfg.command} needs --point")
    lat.point(cfg.point)  # raises UnknownIdError
    return cfg.point


def execute(cfg: RunConfig) -> tuple[int, dict, str | None]:
    """Run one command; returns (exit code, result payload, optional text/dot rendering)."""
    arr, raw = _load(cfg.input)
    arr = _prepare(cfg, arr)
    try:
        lat = build_lattice(arr)
    except ParallelLinesError as exc:
        raise ValidationFailure(str(exc)) from None
    pc = closure_of(arr)
    cmd = cfg.command
    text = None
    code = EXIT_OK

    if cmd == "lattice":
        result = ser.lattice_report(lat)
        result["closure"] = ser.lattice_report(pc.lattice)
    elif cmd == "graph":
        g = build_graph(pc)
        result = ser.graph_report(g)
        text = to_dot(g)
    elif cmd == "beta":
        result = {"beta": beta(build_graph(pc))}
    elif cmd == "presentation":
        conj = ser.conjugators_from_json(raw.get("conjugators") if isinstance(raw, dict) else None, lat.n_lines)
        p = pi1_presentation(_affine(lat, cmd), conj)
        result = ser.presentation_report(p)
        text = format_presentation(p)
    elif cmd == "lcs":
        result = ser.lcs_report(g2g3(lat))
    elif cmd == "pairing":
        result = ser.pairing_report(pairing(_affine(lat, cmd)))
    elif cmd == "stabilizer":
        form = pairing(_affine(lat, cmd))
        if cfg.vector is not None:
            x = cfg.vector
        else:
            x = point_sum_vector(lat, _point(lat, cfg))
        if len(x) != lat.n_lines:
            raise ValidationFailure(f"--vector must have {lat.n_lines} entries")
        result = ser.stabilizer_report(stabilizer(form, x))
    elif cmd == "check-sm":
        q = _point(_affine(lat, cmd), cfg)
        if not lat.point(q).multiple:
            raise ValidationFailure(f"point {q} is not a multiple point")
        chk = check_stabilizer_theorem(lat, q)
        result = ser.sm_report(chk)
    elif cmd == "quotient":
        q = _point(_affine(lat, cmd), cfg)
        if not lat.point(q).multiple:
            raise ValidationFailure(f"point {q} is not a multiple point")
        p = point_quotient(lat, q)
        result = ser.presentation_report(p)
        text = format_presentation(p)
    elif cmd == "classify":
        _affine(lat, cmd)
        out = classify(pc)
        result = ser.outcome_report(out)
        code = EXIT_OK if isinstance(out.verdict, DecompositionReport) else EXIT_OBSTRUCTED
    elif cmd == "delete-line":
        if cfg.line is None:
            raise ValidationFailure("delete-line needs --line")
        if not 0 <= cfg.line < lat.n_lines:
            raise UnknownIdError(f"no line {cfg.line}")
        full = pc.lattice
        reduced = delete_line(lat, cfg.line)
        result = {"deleted": cfg.line, "generic": is_generic_line(full, cfg.line),
                  "lattice": ser.lattice_report(reduced),
                  "beta_before": beta(build_graph(full)),
                  "beta_after": beta(build_graph(delete_line(full, cfg.line)))}
    else:
        raise ValidationFailure(f"unknown command {cmd!r}")
    return code, ser.envelope(cmd, raw, result), text


def run(cfg: RunConfig) -> tuple[int, str, str | None]:
    """Exit code, stdout payload, and stderr message (structured JSON on failure)."""
    try:
        code, payload, text = execute(cfg)
    except ValidationFailure as exc:
        return EXIT_INVALID, "", ser.dumps({"error": "validation", "message": str(exc)})
    except ConjugatorError as exc:
        return EXIT_INVALID, "", ser.dumps({"error": "validation", "message": str(exc)})
    except UnknownIdError as exc:
        return EXIT_UNKNOWN_ID, "", ser.dumps({"error": "unknown-id", "message": str(exc.args[0])})
    except (ArrangementError, OSError) as exc:
        return EXIT_ERROR, "", ser.dumps({"error": "parse", "message": str(exc)})
    if cfg.format == "dot" and cfg.command != "graph":
        return EXIT_INVALID, "", ser.dumps({"error": "validation", "message": "dot output is only for graph"})
    if cfg.format == "json" or text is None:
        return code, ser.dumps(payload), None
    return code, text if text.endswith("\n") else text + "\n", None


def _run_file(cfg: RunConfig) -> tuple[str, int, str, str | None]:
    code, out, err = run(cfg)
    return cfg.input, code, out, err


def run_batch(cfg: RunConfig) -> tuple[int, str]:
    files = sorted(str(p) for p in Path(cfg.input).glob("*.json"))
    cfgs = [RunConfig(**{**cfg.__dict__, "input": f, "format": "json", "output": None}) for f in files]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_file, cfgs))
    else:
        results = [_run_file(c) for c in cfgs]
    items = []
    for path, code, out, err in results:
        items.append({"file": path, "exit_code": code,
                      "report": json.loads(out) if out else None,
                      "error": json.loads(err) if err else None})
    worst = max((r[1] for r in results), default=EXIT_OK)
    return worst, ser.dumps({"tool": ser.TOOL, "results": items})


def _vector(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linearr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="arrangement JSON file, a directory of them, or catalog:NAME")
        sp.add_argument("--format", choices=("json", "text", "dot"), default="json")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--no-parallels", action="store_true", help="assert that no two lines are parallel")
        sp.add_argument("--abstract", action="store_true", help="assert abstract (incidence-only) input")
        sp.add_argument("--generic-chart", action="store_true",
                        help="move a generic line to infinity first (for inputs with parallels)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for directory input")
        if name in NEEDS_POINT or name == "stabilizer":
            sp.add_argument("--point", type=int, help="point id from the lattice report")
        if name == "stabilizer":
            sp.add_argument("--vector", type=_vector, help="target vector, e.g. 1,0,0")
        if name == "delete-line":
            sp.add_argument("--line", type=int, required=True)
    sub.add_parser("catalog", help="list bundled arrangements")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        for name, e in sorted(catalog.entries().items()):
            print(f"{name:24s} {e.arrangement.n_lines:3d} lines  beta={e.beta}  {e.notes}")
        return EXIT_OK
    cfg = RunConfig(args.command, args.input, args.format, args.output,
                    getattr(args, "point", None), getattr(args, "line", None), getattr(args, "vector", None),
                    args.no_parallels, args.abstract, args.generic_chart, args.jobs)
    if Path(cfg.input).is_dir():
        code, out = run_batch(cfg)
        err = None
    else:
        code, out, err = run(cfg)
    if err:
        sys.stderr.write(err)
    if out:
        if cfg.output:
            Path(cfg.output).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
