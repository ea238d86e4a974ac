"""Exact integer matrix algebra.

Smith and Hermite normal forms with unimodular transforms, integer kernels,
cokernels and lattice membership.  Everything runs over Python's native
arbitrary-precision integers; no floating point is ever involved, so invariant
factors come out exact no matter how badly intermediate entries grow.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Dense integer matrix, row-major and immutable.

    Matrices with zero rows or zero columns are legal values and behave
    consistently under products, stacking and the normal-form routines.
    """

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self._rows = tuple(
            entries[i * cols:(i + 1) * cols] for i in range(rows)
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls(rows, len(columns), [c[i] for i in range(rows) for c in columns])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def column(cls, entries: Sequence[int]) -> "IntMatrix":
        entries = list(entries)
        return cls(len(entries), 1, entries)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(n, n, [entries[i] if i == j else 0 for i in range(n) for j in range(n)])

    # -- accessors -------------------------------------------------------

    def __getitem__(self, key) -> int:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column_tuple(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list:
        return [self.column_tuple(j) for j in range(self.cols)]

    def to_rows(self) -> list:
        return [list(r) for r in self._rows]

    def diagonal_entries(self) -> tuple:
        return tuple(self._rows[i][i] for i in range(min(self.rows, self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [list(r[col_start:col_stop]) for r in self._rows[row_start:row_stop]],
            cols=col_stop - col_start,
        )

    # -- algebra ---------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self._rows[i][j] for j in range(self.cols) for i in range(self.rows)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-x for r in self._rows for x in r])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return IntMatrix(self.rows, self.cols,
                         [a + b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [k * x for r in self._rows for x in r])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = [[0] * other.cols for _ in range(self.rows)]
        orows = other._rows
        for i, arow in enumerate(self._rows):
            orow = out[i]
            for k, x in enumerate(arow):
                if x:
                    brow = orows[k]
                    for j, y in enumerate(brow):
                        if y:
                            orow[j] += x * y
        return IntMatrix.from_rows(out, cols=other.cols)

    def mul_vector(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(x * y for x, y in zip(r, v)) for r in self._rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix.from_rows(
            [list(a) + list(b) for a, b in zip(self._rows, other._rows)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix.from_rows(self.to_rows() + other.to_rows(), cols=self.cols)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if a[i][k]), -1)
                if piv < 0:
                    return 0
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._rows) == (other.rows, other.cols, other._rows)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix.from_rows({self.to_rows()!r}, cols={self.cols})"


# -- in-place row operations on (matrix, transform) pairs -----------------
#
# A row operation applied to A with U*M = A is mirrored on U.  Swaps, sign
# flips and integer row additions all have determinant +-1, so the
# accumulated transform stays unimodular by construction.

def _swap_rows(a, u, i, j):
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _negate_row(a, u, i):
    a[i] = [-x for x in a[i]]
    u[i] = [-x for x in u[i]]


def _addmul_row(a, u, dst, src, c):
    if c:
        arow, asrc = a[dst], a[src]
        for k in range(len(arow)):
            arow[k] += c * asrc[k]
        urow, usrc = u[dst], u[src]
        for k in range(len(urow)):
            urow[k] += c * usrc[k]


def _identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m: IntMatrix) -> tuple:
    """Return (U, D, V) with U*m*V = D in Smith normal form.

    D is diagonal with nonnegative entries satisfying d1 | d2 | ...; U and V
    are unimodular.  Total on all integer matrices, including empty and
    non-square ones.

    Implemented by alternating row and column Hermite reduction until the
    matrix is diagonal, then repairing the divisibility chain; one-shot pivot
    sweeps are avoided because their intermediate entries explode even on
    small dense inputs, while Hermite passes keep coefficient growth tame.
    """
    nr, nc = m.rows, m.cols
    a = m
    u = IntMatrix.identity(nr)
    v = IntMatrix.identity(nc)

    for _ in range(4 * (min(nr, nc) + 2) * 64):
        h, w = hermite_normal_form(a)
        u = w @ u
        a = h
        ht, wt = hermite_normal_form(a.transpose())
        v = v @ wt.transpose()
        a = ht.transpose()
        if not _is_diagonal(a):
            continue
        fix = _divisibility_defect(a)
        if fix is None:
            break
        # pull row j's entry into column i, then resume the reduction
        i, j = fix
        rows = a.to_rows()
        vrows = v.to_rows()
        for r in range(nr):
            rows[r][i] += rows[r][j]
        for r in range(nc):
            vrows[r][i] += vrows[r][j]
        a = IntMatrix.from_rows(rows, cols=nc)
        v = IntMatrix.from_rows(vrows, cols=nc)
    else:
        raise AssertionError("smith normal form reduction failed to converge")

    return u, a, v


def _is_diagonal(m: IntMatrix) -> bool:
    for i in range(m.rows):
        row = m.row(i)
        for j in range(m.cols):
            if i != j and row[j]:
                return False
    return True


def _divisibility_defect(d: IntMatrix):
    """First diagonal pair (i, j), i < j, with d_i not dividing d_j (zero
    diagonal entries sort after everything, so they never offend)."""
    diag = d.diagonal_entries()
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[j] and (diag[i] == 0 or diag[j] % diag[i]):
                return (i, j)
    return None


def hermite_normal_form(m: IntMatrix) -> tuple:
    """Return (H, U) with U unimodular and U*m = H in row Hermite form.

    H is the canonical echelon form: pivots positive, entries above each
    pivot reduced into [0, pivot), zero rows at the bottom.  Canonicality
    means hermite_normal_form(m) and hermite_normal_form(w @ m) agree in H
    for every unimodular w.
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    u = _identity_rows(nr)

    r = 0
    for j in range(nc):
        if r == nr:
            break
        # gcd-clear column j below row r
        have_pivot = False
        while True:
            piv = -1
            best = None
            for i in range(r, nr):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = i
            if piv < 0:
                break
            have_pivot = True
            _swap_rows(a, u, r, piv)
            clear = True
            for i in range(r + 1, nr):
                if a[i][j]:
                    q = a[i][j] // a[r][j]
                    _addmul_row(a, u, i, r, -q)
                    if a[i][j]:
                        clear = False
            if clear:
                break
        if not have_pivot:
            continue
        if a[r][j] < 0:
            _negate_row(a, u, r)
        for i in range(r):
            q = a[i][j] // a[r][j]
            _addmul_row(a, u, i, r, -q)
        r += 1

    return (IntMatrix.from_rows(a, cols=nc), IntMatrix.from_rows(u, cols=nr))


def rank(m: IntMatrix) -> int:
    """Rank over Q (equals the number of nonzero invariant factors)."""
    h, _ = hermite_normal_form(m)
    return sum(1 for row in h.to_rows() if any(row))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Z-basis of the integer kernel {x : m*x = 0}, as matrix columns.

    The kernel lattice of an integer matrix is saturated and the returned
    basis is primitive; it is normalized to column Hermite form, which also
    keeps its entries small.
    """
    _, d, v = smith_normal_form(m)
    r = sum(1 for x in d.diagonal_entries() if x)
    raw = v.submatrix(0, m.cols, r, m.cols)
    return column_hnf(raw) if raw.cols else raw


def cokernel(m: IntMatrix) -> "FgAbGroup":
    """Canonical form of Z^rows / (column lattice of m)."""
    from .fgab import from_presentation
    return from_presentation(m, m.rows)


def solve(m: IntMatrix, v: Sequence[int]) -> Optional[tuple]:
    """One integer solution x of m*x = v, or None when v is outside the
    column lattice."""
    if len(v) != m.rows:
        raise ValueError(
            f"dimension mismatch: vector of length {len(v)} against {m.rows} rows"
        )
    u, d, vt = smith_normal_form(m)
    return _solve_factored(u, d, vt, v)


def _solve_factored(u, d, vt, v):
    b = u.mul_vector(v)
    diag = d.diagonal_entries()
    r = sum(1 for x in diag if x)
    y = [0] * d.cols
    for i in range(d.rows):
        if i < r:
            if b[i] % diag[i]:
                return None
            y[i] = b[i] // diag[i]
        elif b[i]:
            return None
    return vt.mul_vector(y)


def solve_matrix(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer X with m @ X = b, or None if some column has no solution."""
    if b.rows != m.rows:
        raise ValueError("dimension mismatch in solve_matrix")
    u, d, vt = smith_normal_form(m)
    cols = []
    for j in range(b.cols):
        x = _solve_factored(u, d, vt, b.column_tuple(j))
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, rows=m.cols)


def lattice_contains(m: IntMatrix, v: Sequence[int]) -> tuple:
    """Decide v in columnspan_Z(m); returns (bool, witness-or-None) with
    m @ witness = v exactly whenever the answer is True."""
    x = solve(m, v)
    return (x is not None, x)


def column_hnf(m: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of m (zero columns dropped).

    Two matrices span the same column lattice iff their column_hnf values
    are equal, which is how lattice comparisons are decided everywhere
    downstream.
    """
    h, _ = hermite_normal_form(m.transpose())
    basis_rows = [list(r) for r in h.to_rows() if any(r)]
    return IntMatrix.from_rows(basis_rows, cols=m.rows).transpose()


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (raises otherwise)."""
    if m.rows != m.cols:
        raise ValueError("matrix is not square")
    h, u = hermite_normal_form(m)
    if h != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u


def format_matrix(m: IntMatrix) -> str:
    """Serialize in the plain text matrix format: 'R C' then R rows."""
    lines = [f"{m.rows} {m.cols}"]
    for r in m.to_rows():
        lines.append(" ".join(str(x) for x in r))
    return "\n".join(lines)
