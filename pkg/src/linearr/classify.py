"""Decide whether the fundamental group of the complement splits into free factors plus a free abelian part.

beta = 0 yields the explicit decomposition (one free factor of rank m - 1 per
multiple point, plus a free abelian part).  beta > 0 yields a certificate: a
chordless cycle of multiple points and the quotient H of the group by the
lines off the cycle and the central element, whose abelianization has rank
b - 1 while a direct-sum splitting would force rank at least b.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import ProjectiveClosure
from .graph import CycleWitness, beta, build_graph, find_minimal_cycle, is_valid_witness
from .lcs import free_group_lcs_oracle, g2g3, total_rank
from .presentation import (GroupPresentation, Word, abelianization, central_element,
                           pi1_presentation, point_quotient, quotient_by, simplify)


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionReport:
    summands: tuple[tuple[int, int], ...]  # (point id, free rank m - 1)
    free_abelian_rank: int
    total_lines: int


@dataclass(frozen=True)
class ObstructionCertificate:
    cycle: CycleWitness
    participating_lines: frozenset[int]
    b: int
    quotient_presentation: GroupPresentation
    rank_H_ab: int

    @property
    def gap(self) -> int:
        return self.b - self.rank_H_ab


@dataclass(frozen=True)
class ClassificationOutcome:
    beta: int
    verdict: DecompositionReport | ObstructionCertificate

    @property
    def direct_sum(self) -> bool:
        return isinstance(self.verdict, DecompositionReport)


def _require_affine_no_parallels(pc: ProjectiveClosure):
    if not pc.base.complete:
        raise ValueError("classification needs an affine arrangement without parallel lines")


def build_certificate(pc: ProjectiveClosure, cycle: CycleWitness) -> ObstructionCertificate:
    _require_affine_no_parallels(pc)
    g = build_graph(pc)
    if not is_valid_witness(g, cycle):
        raise CertificateError(f"{cycle} is not a cycle of this arrangement's graph")
    lat = pc.lattice
    if any(pc.infinity_index in lat.point(p).incident_lines for p in cycle.points):
        raise CertificateError("cycle passes through a point at infinity")
    base = pc.base
    participating = frozenset(i for p in cycle.points for i in base.point(p).incident_lines)
    b = sum(base.point(p).multiplicity - 1 for p in cycle.points)
    killed = [Word.gen(i) for i in range(base.n_lines) if i not in participating]
    H = quotient_by(pi1_presentation(base), killed + [central_element(base)],
                    "kill lines off the cycle and the central element")
    H = simplify(H)
    free_rank, _torsion = abelianization(H)
    if free_rank > b - 1:
        raise CertificateError(f"rank of H^ab is {free_rank}, expected at most b - 1 = {b - 1}")
    return ObstructionCertificate(cycle, participating, b, H, free_rank)


def classify(pc: ProjectiveClosure) -> ClassificationOutcome:
    _require_affine_no_parallels(pc)
    g = build_graph(pc)
    b = beta(g)
    cycle = find_minimal_cycle(g)
    if (b == 0) != (cycle is None):
        raise RuntimeError(f"beta = {b} disagrees with cycle search ({cycle})")
    if cycle is not None:
        return ClassificationOutcome(b, build_certificate(pc, cycle))
    base = pc.base
    multiple = base.multiple_points
    ab_rank, _ = abelianization(pi1_presentation(base))
    summands = tuple((p.id, p.multiplicity - 1) for p in multiple)
    l = ab_rank - sum(r for _, r in summands)
    return ClassificationOutcome(0, DecompositionReport(summands, l, base.n_lines))


def fan_decomposition_consistency(pc: ProjectiveClosure) -> bool:
    """Check the predicted splitting against every invariant computable from the lattice."""
    _require_affine_no_parallels(pc)
    if beta(build_graph(pc)) != 0:
        raise ValueError("decomposition consistency only applies when beta = 0")
    base = pc.base
    outcome = classify(pc)
    report = outcome.verdict
    ab_rank, torsion = abelianization(pi1_presentation(base))
    if torsion or ab_rank != base.n_lines:
        return False
    if sum(r for _, r in report.summands) + report.free_abelian_rank != ab_rank:
        return False
    if report.free_abelian_rank < 0:
        return False
    # G2/G3 of the lattice versus the weight-2 layer of the predicted free factors
    predicted = sum(free_group_lcs_oracle(r, 2) for _, r in report.summands)
    if total_rank(g2g3(base)) != predicted:
        return False
    for pid, r in report.summands:
        quo = point_quotient(base, pid)
        if quo.n_generators != r or quo.relators or abelianization(quo) != (r, ()):
            return False
    return True

