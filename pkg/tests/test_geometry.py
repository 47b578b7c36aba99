from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from linearr.arrangement import Arrangement, Line
from linearr.geometry import (L_INFINITY, ParallelLinesError, UnknownIdError, affine_chart, build_lattice,
                              closure_of, delete_line, find_generic_line, intersect, is_generic_covector,
                              is_generic_line, parallel_classes, projective_lines, projectivize)

from conftest import GENERIC3, NEARPENCIL4, PENCIL3, TRIANGLE6, arr, lat_of, point_at

small = st.integers(-4, 4)


@st.composite
def line_sets(draw, min_size=2, max_size=6, parallels=False):
    """Distinct lines with small integer coefficients, pairwise non-parallel unless allowed."""
    out, dirs = [], set()
    for _ in range(draw(st.integers(min_size, max_size))):
        a, b, c = draw(small), draw(small), draw(small)
        if a == 0 and b == 0:
            continue
        line = Line(a, b, c)
        if line in out or (not parallels and line.direction_key in dirs):
            continue
        out.append(line)
        dirs.add(line.direction_key)
    assume(len(out) >= min_size)
    return Arrangement.from_lines(out, no_parallels=not parallels)


def multiplicity_profile(lat):
    return sorted(p.multiplicity for p in lat.multiple_points)


class TestIntersect:
    def test_examples(self):
        y0, x0 = Line(0, 1, 0), Line(1, 0, 0)
        assert intersect(y0, x0) == (0, 0)
        assert intersect(y0, Line(1, 1, 1)) == (1, 0)
        assert intersect(y0, Line(0, 1, 1)) is None

    def test_equal_lines_rejected(self):
        with pytest.raises(ValueError):
            intersect(Line(1, 1, 1), Line(2, 2, 2))

    @given(line_sets(2, 2))
    def test_point_lies_on_both(self, a):
        l1, l2 = a.lines
        x, y = intersect(l1, l2)
        assert l1.contains(x, y) and l2.contains(x, y)


class TestBuildLattice:
    def test_generic3(self):
        lat = lat_of(GENERIC3)
        assert len(lat.points) == 3 and all(p.multiplicity == 2 for p in lat.points)

    def test_pencil3(self):
        lat = lat_of(PENCIL3)
        assert len(lat.points) == 1
        assert lat.points[0].coordinates == (0, 0) and lat.points[0].multiplicity == 3

    def test_triangle6(self, triangle6):
        triples = {p.coordinates for p in triangle6.points if p.multiplicity == 3}
        assert triples == {(0, 0), (1, 0), (0, 1)}
        # 15 pairs, 3 of them used up by each triple point
        assert sum(1 for p in triangle6.points if p.multiplicity == 2) == 6

    def test_parallels_raise_under_flag(self):
        a = Arrangement.from_lines(["y = 0", "y = 1", "x = 0"], no_parallels=False)
        strict = Arrangement(a.lines, a.mode, None, True, 0, a.labels)
        with pytest.raises(ParallelLinesError):
            build_lattice(strict)
        assert not build_lattice(a).complete

    def test_unknown_point(self, triangle6):
        with pytest.raises(UnknownIdError):
            triangle6.point(99)

    def test_abstract(self):
        lat = build_lattice(Arrangement.abstract(5, [[0, 1, 2], [2, 3, 4]]))
        assert lat.complete and multiplicity_profile(lat) == [3, 3]
        assert len(lat.points) == 2 + (comb(5, 2) - 6)

    @given(line_sets())
    def test_pair_count_invariant(self, a):
        lat = build_lattice(a)
        assert sum(comb(p.multiplicity, 2) for p in lat.points) == comb(a.n_lines, 2)
        for i, j in combinations(range(a.n_lines), 2):
            p = lat.point(lat.pair_index[(i, j)])
            assert {i, j} <= p.incident_lines
            assert all(a.lines[k].contains(*p.coordinates) for k in p.incident_lines)


class TestProjectivize:
    def test_generic3(self):
        pc = projectivize(lat_of(GENERIC3))
        assert len(pc.infinity_points) == 3
        assert all(p.multiplicity == 2 for p in pc.infinity_points)

    def test_parallel_class(self):
        a = Arrangement.from_lines(["y = 0", "y = 1", "x = 0"], no_parallels=False)
        assert parallel_classes(a) == [[0, 1], [2]]
        pc = closure_of(a)
        big = [p for p in pc.infinity_points if p.multiple]
        assert len(big) == 1 and big[0].incident_lines == {0, 1, 3}
        assert pc.lattice.complete

    def test_pencil3_no_new_multiple_points(self):
        pc = closure_of(arr(PENCIL3))
        assert len(pc.lattice.multiple_points) == 1

    @given(line_sets(parallels=True))
    def test_each_line_one_infinity_point(self, a):
        pc = closure_of(a)
        for i in range(a.n_lines):
            assert sum(i in p.incident_lines for p in pc.infinity_points) == 1
        assert pc.lattice.complete
        assert sum(comb(p.multiplicity, 2) for p in pc.lattice.points) == comb(a.n_lines + 1, 2)


class TestDeleteLine:
    def test_pencil3(self):
        lat = delete_line(lat_of(PENCIL3), 2)
        assert len(lat.points) == 1 and lat.points[0].multiplicity == 2

    def test_triangle6(self, triangle6):
        out = delete_line(triangle6, 3)  # y = 2x
        assert out.point(point_at(triangle6, 0, 0).id).multiplicity == 2
        assert out.point(point_at(triangle6, 1, 0).id).multiplicity == 3
        assert out.point(point_at(triangle6, 0, 1).id).multiplicity == 3

    @pytest.mark.parametrize("i", range(3))
    def test_generic3(self, i):
        assert len(delete_line(lat_of(GENERIC3), i).points) == 1

    def test_invalid_index(self, pencil3):
        with pytest.raises(UnknownIdError):
            delete_line(pencil3, 3)

    def test_generic_line(self):
        lat = lat_of(NEARPENCIL4)
        assert is_generic_line(lat, 3) and not is_generic_line(lat, 0)


class TestCharts:
    @given(line_sets(parallels=True))
    def test_generic_line_is_generic(self, a):
        l0 = find_generic_line(a)
        assert is_generic_covector(projective_lines(a), l0)

    @given(line_sets(parallels=True))
    def test_chart_preserves_projective_lattice(self, a):
        """Moving a generic line to infinity and forgetting it gives back the same projective lattice."""
        pc = closure_of(a)
        chart = affine_chart(projective_lines(a), find_generic_line(a))
        assert chart.n_lines == a.n_lines + 1
        assert not any(p for p in parallel_classes(chart) if len(p) > 1)
        back = delete_line(closure_of(chart).lattice, chart.n_lines)  # drop the new L_inf
        assert multiplicity_profile(back) == multiplicity_profile(pc.lattice)
        assert Counter(p.incident_lines for p in back.multiple_points) == \
            Counter(p.incident_lines for p in pc.lattice.multiple_points)

    def test_chart_at_original_infinity_is_identity(self):
        a = arr(TRIANGLE6)
        again = affine_chart(projective_lines(a), L_INFINITY)
        assert again.lines == a.lines

    def test_homogeneous(self):
        assert Line(1, 1, 1).homogeneous() == (1, 1, -1)
        assert Fraction(0) == L_INFINITY[0]
