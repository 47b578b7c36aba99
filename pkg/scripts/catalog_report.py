"""Print the invariants of every bundled arrangement as a table (or JSON with --json)."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from linearr import catalog
from linearr.classify import classify
from linearr.geometry import affine_chart, build_lattice, closure_of, find_generic_line, projective_lines
from linearr.graph import beta, build_graph
from linearr.lcs import g2g3, total_rank


@dataclass
class Row:
    name: str
    lines: int
    multiple_points: int
    beta: int
    g2g3_rank: int
    verdict: str
    detail: str
    ms: float


def report(name: str) -> Row:
    e = catalog.entry(name)
    a = e.arrangement
    t0 = time.perf_counter()
    pc = closure_of(a)
    b = beta(build_graph(pc))
    rank = total_rank(g2g3(build_lattice(a)))
    if e.projective:
        a = affine_chart(projective_lines(a), find_generic_line(a))
        pc = closure_of(a)
    out = classify(pc)
    if out.direct_sum:
        v = out.verdict
        detail = "F" + " + F".join(str(r) for _, r in sorted(v.summands, key=lambda s: s[1])) if v.summands else ""
        detail = f"{detail} + Z^{v.free_abelian_rank}".lstrip(" +")
    else:
        c = out.verdict
        detail = f"b={c.b} rank(H_ab)={c.rank_H_ab}"
    verdict = ("DirectSum" if out.direct_sum else "Obstructed") + (" (chart)" if e.projective else "")
    return Row(name, e.arrangement.n_lines, len(pc.base.multiple_points), b, rank, verdict, detail,
               round((time.perf_counter() - t0) * 1000, 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="catalog names (default: all)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [report(n) for n in (args.names or sorted(catalog.entries()))]
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    print(f"{'name':24s} {'n':>3s} {'mp':>3s} {'beta':>4s} {'G2/G3':>5s}  {'verdict':22s} {'detail':24s} {'ms':>7s}")
    for r in rows:
        print(f"{r.name:24s} {r.lines:3d} {r.multiple_points:3d} {r.beta:4d} {r.g2g3_rank:5d}  "
              f"{r.verdict:22s} {r.detail:24s} {r.ms:7.1f}")


if __name__ == "__main__":
    main()
