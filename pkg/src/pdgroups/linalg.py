"""Exact integer linear algebra: Smith normal form, cokernels, homology.

Everything here works with Python integers, so there is no overflow and no
rounding.  Matrices are small (desk scale), so the algorithms are the plain
textbook ones with smallest-magnitude pivoting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class CompositionNonzero(ValueError):
    """Two consecutive boundary maps do not compose to zero."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape %dx%d" % (self.rows, self.cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        a, b = self.tolist(), other.tolist()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols) if a[i][k]) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def determinant(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


def as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a)


@dataclass(frozen=True)
class SnfResult:
    """``left @ A @ right == diagonal form`` with unimodular ``left``/``right``."""
    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    shape: tuple[int, int]

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diagonal, *self.shape)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True, order=True)
class AbelianGroupInvariants:
    """Z^rank + Z/t1 + ... + Z/tk with t1 | t2 | ... and every ti > 1."""
    rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = self.torsion
        if any(x <= 1 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion must be invariant factors > 1, each dividing the next: %r" % (t,))

    @classmethod
    def from_factors(cls, factors: Iterable[int], rank: int = 0) -> "AbelianGroupInvariants":
        """Canonicalise an arbitrary list of cyclic orders (0 means Z)."""
        factors = [abs(f) for f in factors]
        rank += sum(1 for f in factors if f == 0)
        return cls(rank, tuple(_invariant_factors([f for f in factors if f > 1])))

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_cyclic_of_order(self, q: int) -> bool:
        if q == 1:
            return self.is_trivial()
        return self.rank == 0 and self.torsion == (q,)

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + ["Z/%d" % t for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


def _invariant_factors(orders: list[int]) -> list[int]:
    # primary decomposition, then recombine largest powers
    from sympy import factorint

    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in factorint(n).items():
            by_prime.setdefault(p, []).append(p ** e)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    out = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            out[length - 1 - i] *= q
    return [x for x in out if x > 1]


def smith_normal_form(a) -> SnfResult:
    """Smith normal form with transforms.

    Pivots on the smallest nonzero magnitude in the remaining block, clears
    its row and column, and restores divisibility by folding offending rows
    into the pivot row.
    """
    A = as_matrix(a)
    m, n = A.rows, A.cols
    M = A.tolist()
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if k:
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]
            L[dst] = [x + k * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, k):
        if k:
            for row in M:
                row[dst] += k * row[src]
            for row in R:
                row[dst] += k * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/col t onto the diagonal
                cand = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
                cand += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            L[t] = [-x for x in L[t]]
        diag.append(M[t][t])
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    return SnfResult(tuple(diag), IntMatrix.from_rows(L, m), IntMatrix.from_rows(R, n), (m, n))


def _unit_pivot_reduce(A: IntMatrix) -> tuple[IntMatrix, list[int], int]:
    """Eliminate +-1 entries of a sparse relation matrix, keeping the cokernel.

    A unit entry a_ij lets generator i be solved from relation j; substituting
    it into the other relations is a column operation, after which row i and
    column j can be dropped.
    """
    cols = [dict() for _ in range(A.cols)]
    rows = [set() for _ in range(A.rows)]
    for i in range(A.rows):
        for j in range(A.cols):
            x = A[i, j]
            if x:
                cols[j][i] = x
                rows[i].add(j)
    alive_r, alive_c = set(range(A.rows)), set(range(A.cols))
    queue = [j for j in range(A.cols) if any(abs(x) == 1 for x in cols[j].values())]
    while queue:
        j = queue.pop()
        if j not in alive_c:
            continue
        piv = min((i for i, x in cols[j].items() if abs(x) == 1), default=None,
                  key=lambda i: len(rows[i]))
        if piv is None:
            continue
        u = cols[j][piv]
        for l in list(rows[piv]):
            if l == j:
                continue
            f = cols[l][piv] * u
            for k, x in cols[j].items():
                y = cols[l].get(k, 0) - f * x
                if y:
                    if k not in cols[l]:
                        rows[k].add(l)
                    cols[l][k] = y
                elif k in cols[l]:
                    del cols[l][k]
                    rows[k].discard(l)
            if any(abs(x) == 1 for x in cols[l].values()):
                queue.append(l)
        for k in cols[j]:
            rows[k].discard(j)
        alive_c.discard(j)
        alive_r.discard(piv)
        for l in list(rows[piv]):
            cols[l].pop(piv, None)
        rows[piv] = set()
        cols[j] = {}
    # split off generators that meet a single relation of their own, and free generators
    factors, free = [], 0
    for i in sorted(alive_r):
        live = [j for j in rows[i] if j in alive_c]
        if not live:
            free += 1
            alive_r.discard(i)
        elif len(live) == 1 and len(cols[live[0]]) == 1:
            factors.append(abs(cols[live[0]][i]))
            alive_r.discard(i)
            alive_c.discard(live[0])
    clist = sorted(j for j in alive_c if cols[j])
    rlist = sorted(alive_r)
    return IntMatrix.from_rows([[cols[j].get(i, 0) for j in clist] for i in rlist], len(clist)), factors, free


def cokernel_invariants(a) -> AbelianGroupInvariants:
    """Invariant factors of Z^rows / image(A)."""
    A = as_matrix(a)
    factors, free = [], 0
    if A.rows * A.cols > 400:
        A, factors, free = _unit_pivot_reduce(A)
    snf = smith_normal_form(A)
    nonzero = [d for d in snf.diagonal if d]
    return AbelianGroupInvariants.from_factors(nonzero + factors, free + A.rows - len(nonzero))


def rank(a) -> int:
    return smith_normal_form(a).rank


def kernel_basis(a) -> list[list[int]]:
    """Z-basis of {x : A x = 0}, as a list of column vectors."""
    A = as_matrix(a)
    snf = smith_normal_form(A)
    r = snf.rank
    R = snf.right.tolist()
    return [[R[i][j] for i in range(A.cols)] for j in range(r, A.cols)]


def complex_homology(boundaries: Sequence) -> list[AbelianGroupInvariants]:
    """Homology of ``C_k --d_k--> C_{k-1}`` for ``boundaries = [d_1, d_2, ...]``.

    ``d_k`` is a matrix with ``dim C_{k-1}`` rows and ``dim C_k`` columns.
    Returns ``[H_0, ..., H_top]`` where ``top = len(boundaries)``.
    """
    ds = [as_matrix(d) for d in boundaries]
    for k in range(len(ds) - 1):
        if ds[k].cols != ds[k + 1].rows:
            raise ValueError("d_%d and d_%d are not composable" % (k + 1, k + 2))
        if not (ds[k] @ ds[k + 1]).is_zero():
            raise CompositionNonzero("d_%d o d_%d != 0" % (k + 1, k + 2))
    if not ds:
        return []
    dims = [ds[0].rows] + [d.cols for d in ds]
    snfs = [smith_normal_form(d) for d in ds]
    out = []
    for k, dim in enumerate(dims):
        r_out = snfs[k - 1].rank if k > 0 else 0
        if k < len(ds):
            diag_in = [d for d in snfs[k].diagonal if d]
        else:
            diag_in = []
        free = dim - r_out - len(diag_in)
        out.append(AbelianGroupInvariants(free, tuple(d for d in diag_in if d > 1)))
    return out


class Lattice:
    """Incrementally maintained row-echelon (Hermite) basis of a sublattice of Z^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, list[int]] = {}  # pivot column -> row with positive pivot

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for col in sorted(self.rows):
            if v[col]:
                row = self.rows[col]
                q = v[col] // row[col]
                if q:
                    v = [x - q * y for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence[int]) -> bool:
        v = list(v)
        for col in range(self.n):
            if not v[col]:
                continue
            row = self.rows.get(col)
            if row is None or v[col] % row[col]:
                return False
            q = v[col] // row[col]
            v = [x - q * y for x, y in zip(v, row)]
        return True

    def _set_pivot(self, col: int, row: list[int]) -> None:
        if row[col] < 0:
            row = [-x for x in row]
        # reduce the new row against later pivots, then earlier rows against it
        for c in sorted(self.rows):
            if c > col and row[c]:
                q = row[c] // self.rows[c][c]
                if q:
                    row = [x - q * y for x, y in zip(row, self.rows[c])]
        self.rows[col] = row
        p = row[col]
        for c, other in self.rows.items():
            if c < col and (other[col] < 0 or other[col] >= p):
                q = other[col] // p
                self.rows[c] = [x - q * y for x, y in zip(other, row)]

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; return True if the lattice grew."""
        v = list(v)
        grew = False
        col = 0
        while col < self.n:
            if not v[col]:
                col += 1
                continue
            row = self.rows.get(col)
            if row is None:
                self._set_pivot(col, v)
                return True
            if v[col] % row[col] == 0:
                q = v[col] // row[col]
                v = [x - q * y for x, y in zip(v, row)]
                col += 1
                continue
            # gcd step replaces the pivot row; the old row is re-inserted
            a, b = row[col], v[col]
            g, x, y = _xgcd(a, b)
            new = [x * r + y * s for r, s in zip(row, v)]
            other = [(b // g) * r - (a // g) * s for r, s in zip(row, v)]
            self._set_pivot(col, new)
            grew = True
            v = other
            col += 1
        return grew


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def solve_integer(a, b: Sequence[int]) -> list[int] | None:
    """One integer solution x of A x = b, or None."""
    A = as_matrix(a)
    snf = smith_normal_form(A)
    Lb = [sum(l * x for l, x in zip(row, b)) for row in snf.left.tolist()]
    y = [0] * A.cols
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            if Lb[i]:
                return None
        elif Lb[i] % d:
            return None
        else:
            y[i] = Lb[i] // d
    for i in range(len(snf.diagonal), A.rows):
        if Lb[i]:
            return None
    R = snf.right.tolist()
    return [sum(R[i][j] * y[j] for j in range(A.cols)) for i in range(A.cols)]
