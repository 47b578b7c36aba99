"""Exact integer linear algebra: Hermite/Smith normal forms, kernels, subgroups of Z^n.

Everything runs on Python ints, so there is no overflow and no modular
shortcut.  Matrices are small (tens of rows), which is the regime this code
is written for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Row = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.T.entries
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row_times(self, v: Sequence[int]) -> Row:
        """Row vector product v @ self."""
        if len(v) != self.rows:
            raise ValueError("vector length does not match row count")
        out = [0] * self.cols
        for coeff, r in zip(v, self.entries):
            if coeff:
                for j, x in enumerate(r):
                    if x:
                        out[j] += coeff * x
        return tuple(out)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_lists(m: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> tuple[list[list[int]], int]:
    if isinstance(m, IntMatrix):
        return [list(r) for r in m.entries], m.cols
    rows = [list(map(int, r)) for r in m]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return rows, cols


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf(m: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Row Hermite normal form with zero rows dropped.

    Pivots are positive and the entries above each pivot lie in [0, pivot).
    The row span over Z is unchanged, so two matrices span the same lattice
    exactly when their HNFs are equal.
    """
    A, ncols = _as_lists(m, cols)
    nrows = len(A)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # fold every nonzero entry of column c (rows r..) into row r
        for i in range(r + 1, nrows):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, s, t = xgcd(a, b)
            u, v = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [s * x + t * y for x, y in zip(Ar, Ai)]
            A[i] = [u * y - v * x for x, y in zip(Ar, Ai)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    return IntMatrix.from_rows(A[:r], ncols)


def is_hnf(m: IntMatrix) -> bool:
    last = -1
    for i, row in enumerate(m.entries):
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None or piv <= last or row[piv] <= 0:
            return False
        for k in range(i):
            if not 0 <= m.entries[k][piv] < row[piv]:
                return False
        last = piv
    return True


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


def snf(m: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Smith normal form with transforms: U @ m @ V == D.

    U and V are unimodular, D is diagonal with nonnegative entries and each
    nonzero diagonal entry divides the next.
    """
    A, ncols = _as_lists(m, cols)
    nrows = len(A)
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(nrows, ncols)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            p = A[t][t]
            bad = next((i for i in range(t + 1, nrows)
                        for j in range(t + 1, ncols) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(IntMatrix.from_rows(U, nrows), IntMatrix.from_rows(A, ncols),
                     IntMatrix.from_rows(V, ncols))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    A = [list(r) for r in m.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def rank(m: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> int:
    return hnf(m, cols).rows


def kernel(m: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> "ZSubgroup":
    """The saturated lattice {v in Z^cols : m @ v == 0}."""
    A, ncols = _as_lists(m, cols)
    sf = snf(A, ncols)
    r = sf.rank
    basis = [tuple(sf.V[i, j] for i in range(ncols)) for j in range(r, ncols)]
    return ZSubgroup.from_generators(ncols, basis)


def solve_left(m: IntMatrix, v: Sequence[int]) -> Row | None:
    """An integer x with x @ m == v, or None if none exists."""
    if len(v) != m.cols:
        raise ValueError("right-hand side has the wrong length")
    sf = snf(m)
    # x @ U^-1 @ D == v @ V; solve for y = x @ U^-1 then x = y @ U
    w = sf.V.row_times(v)
    y = [0] * m.rows
    for k, d in enumerate(sf.diagonal):
        if d == 0:
            break
        if w[k] % d:
            return None
        y[k] = w[k] // d
    if any(w[k] for k in range(sf.rank, m.cols)):
        return None
    return sf.U.row_times(y)


@dataclass(frozen=True)
class ZSubgroup:
    """A subgroup of Z^n, stored by its row HNF basis (so == is subgroup equality)."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_rank:
            raise ValueError("basis width differs from ambient rank")

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]]) -> "ZSubgroup":
        gens = [tuple(g) for g in gens]
        if any(len(g) != n for g in gens):
            raise ValueError("generator length differs from ambient rank")
        return cls(n, hnf(gens, n))

    @classmethod
    def full(cls, n: int) -> "ZSubgroup":
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def trivial(cls, n: int) -> "ZSubgroup":
        return cls(n, IntMatrix(0, n, ()))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def contains(self, v: Sequence[int]) -> bool:
        # reduce v against the echelon rows
        v = list(v)
        for row in self.basis.entries:
            piv = next(j for j, x in enumerate(row) if x)
            q, rem = divmod(v[piv], row[piv])
            if rem:
                return False
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def is_saturated(self) -> bool:
        return all(d == 1 for d in snf(self.basis).invariant_factors)


def _check_ambient(a: ZSubgroup, b: ZSubgroup):
    if a.ambient_rank != b.ambient_rank:
        raise ValueError(f"ambient ranks differ: {a.ambient_rank} vs {b.ambient_rank}")


def subgroup_join(a: ZSubgroup, b: ZSubgroup) -> ZSubgroup:
    _check_ambient(a, b)
    return ZSubgroup.from_generators(a.ambient_rank, a.basis.entries + b.basis.entries)


def subgroup_meet(a: ZSubgroup, b: ZSubgroup) -> ZSubgroup:
    _check_ambient(a, b)
    n = a.ambient_rank
    if a.rank == 0 or b.rank == 0:
        return ZSubgroup.trivial(n)
    # x @ A == -y @ B  <=>  (x | y) lies in the left kernel of [A; B]
    stacked = IntMatrix.from_rows(a.basis.entries + b.basis.entries, n)
    left = kernel(stacked.T)
    gens = [a.basis.row_times(k[:a.rank]) for k in left.basis.entries]
    return ZSubgroup.from_generators(n, gens)


def subgroup_eq(a: ZSubgroup, b: ZSubgroup) -> bool:
    _check_ambient(a, b)
    return a.basis == b.basis
