"""Survey the stabilizer equality S(M_q) = <g_i : i through q> + (meet of S(g_i)) on random lattices.

The equality is compared as exact HNF bases.  Any failure is reported together with
whether it disappears after saturating both sides, which separates an integral
discrepancy from a rational one.
"""

import argparse
import random
from dataclasses import dataclass
from itertools import combinations

from linearr.arrangement import Arrangement
from linearr.geometry import build_lattice
from linearr.intlinalg import ZSubgroup, kernel, snf
from linearr.pairing import check_stabilizer_theorem, pairing


@dataclass
class SurveyConfig:
    trials: int = 300
    max_lines: int = 10
    max_points: int = 6
    max_multiplicity: int = 5
    seed: int = 0


def random_lattice(rnd: random.Random, cfg: SurveyConfig):
    n = rnd.randint(3, cfg.max_lines)
    used, pts = set(), []
    for _ in range(rnd.randint(1, cfg.max_points)):
        pt = sorted(rnd.sample(range(n), rnd.randint(3, min(cfg.max_multiplicity, n))))
        pairs = set(combinations(pt, 2))
        if not pairs & used:
            used |= pairs
            pts.append(pt)
    return build_lattice(Arrangement.abstract(n, pts))


def saturation(s: ZSubgroup) -> ZSubgroup:
    # the saturation is the kernel of the kernel's orthogonal map
    if s.rank == 0:
        return s
    return kernel(kernel(s.basis).basis)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SurveyConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SurveyConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    rnd = random.Random(cfg.seed)
    points = failures = 0
    for t in range(cfg.trials):
        lat = random_lattice(rnd, cfg)
        form = pairing(lat)
        for q in lat.multiple_points:
            points += 1
            chk = check_stabilizer_theorem(lat, q.id, form)
            if not chk.holds:
                failures += 1
                rational = saturation(chk.lhs) == saturation(chk.rhs)
                index = snf(chk.rhs.basis).invariant_factors
                print(f"trial {t}: point {sorted(q.lines)} fails; equal after saturation: {rational}; "
                      f"rhs invariant factors {index}")
    print(f"{cfg.trials} lattices, {points} multiple points, {failures} failures")


if __name__ == "__main__":
    main()
