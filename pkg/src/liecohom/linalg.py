"""Exact rational linear algebra with deterministic pivoting.

Everything here works over Q via ``fractions.Fraction``, so results are
exact and reproducible bit for bit.  Elimination always picks the first
nonzero entry in row-major scan order; no magnitude heuristics.  Matrices
are stored sparsely; elimination runs on dense rows below a size cutoff
and on dict-based sparse rows above it.
"""

from __future__ import annotations

from fractions import Fraction

Vector = tuple  # tuple of Fraction

DENSE_CUTOFF = 64  # below this (rows and cols) elimination uses dense rows

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries) -> Vector:
    """Build a vector (tuple of Fraction) from any iterable of rational-likes."""
    return tuple(Fraction(x) for x in entries)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * x for x in a)


def is_zero_vec(a: Vector) -> bool:
    return all(x == 0 for x in a)


class RationalMatrix:
    """Sparse matrix over Q.  Immutable after construction.

    ``entries`` maps (row, col) -> nonzero Fraction; zero entries are never
    stored and all indices are range-checked.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = int(rows)
        self.cols = int(cols)
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < self.rows and 0 <= j < self.cols):
                    raise ValueError(f"entry index ({i},{j}) out of bounds for {self.rows}x{self.cols}")
                v = Fraction(v)
                if v != 0:
                    clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def from_rows(cls, rows_data) -> "RationalMatrix":
        rows_data = [list(r) for r in rows_data]
        nrows = len(rows_data)
        ncols = len(rows_data[0]) if rows_data else 0
        ent = {}
        for i, row in enumerate(rows_data):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = Fraction(v)
                if v != 0:
                    ent[(i, j)] = v
        return cls(nrows, ncols, ent)

    @classmethod
    def from_cols(cls, cols_data, rows: int | None = None) -> "RationalMatrix":
        cols_data = [vec(c) for c in cols_data]
        if rows is None:
            if not cols_data:
                raise ValueError("from_cols with no columns needs explicit row count")
            rows = len(cols_data[0])
        ent = {}
        for j, col in enumerate(cols_data):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v != 0:
                    ent[(i, j)] = v
        return cls(rows, len(cols_data), ent)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), ZERO)

    def row(self, i: int) -> Vector:
        return tuple(self.entries.get((i, j), ZERO) for j in range(self.cols))

    def col(self, j: int) -> Vector:
        return tuple(self.entries.get((i, j), ZERO) for i in range(self.rows))

    def dense_rows(self) -> list:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product M @ v."""
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        out = [ZERO] * self.rows
        for (i, j), m in self.entries.items():
            x = v[j]
            if x != 0:
                out[i] += m * x
        return tuple(out)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row = {}
        for (i, k), v in other.entries.items():
            by_row.setdefault(i, []).append((k, v))
        ent = {}
        for (i, j), a in self.entries.items():
            for k, b in by_row.get(j, ()):
                key = (i, k)
                ent[key] = ent.get(key, ZERO) + a * b
        return RationalMatrix(self.rows, other.cols, ent)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        ent = dict(self.entries)
        for key, v in other.entries.items():
            ent[key] = ent.get(key, ZERO) + v
        return RationalMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        if c == 0:
            return RationalMatrix.zero(self.rows, self.cols)
        return RationalMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _dense_echelon(rows: list) -> tuple[list, list]:
    """In-place forward elimination to row echelon form.

    Returns (rows, pivot_cols).  Pivot search scans columns left to right
    and, within a column, rows top to bottom, taking the first nonzero
    entry (row-major first-nonzero rule).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f != 0:
                ratio = f / pv
                ri, rr = rows[i], rows[r]
                for j in range(c, ncols):
                    ri[j] -= ratio * rr[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def _sparse_echelon(rows: list, ncols: int) -> tuple[list, list]:
    """Echelon form for rows given as dicts {col: Fraction}.

    Same pivot rule as the dense path; returns (reduced_rows, pivot_cols)
    where reduced_rows[k] has its leading entry in pivot_cols[k].
    """
    remaining = [dict(r) for r in rows]
    echelon = []
    pivots = []
    for c in range(ncols):
        pr = None
        for i, row in enumerate(remaining):
            if row.get(c, ZERO) != 0:
                pr = i
                break
        if pr is None:
            continue
        piv_row = remaining.pop(pr)
        pv = piv_row[c]
        new_remaining = []
        for row in remaining:
            f = row.get(c, ZERO)
            if f != 0:
                ratio = f / pv
                for j, v in piv_row.items():
                    nv = row.get(j, ZERO) - ratio * v
                    if nv == 0:
                        row.pop(j, None)
                    else:
                        row[j] = nv
            if row:
                new_remaining.append(row)
        remaining = new_remaining
        echelon.append(piv_row)
        pivots.append(c)
        if not remaining:
            break
    return echelon, pivots


def _reduced_echelon(rows: list, ncols: int) -> tuple[list, list]:
    """Fully reduced row echelon form (pivots 1, cleared above), as dict rows."""
    echelon, pivots = _sparse_echelon(rows, ncols)
    for k in range(len(echelon) - 1, -1, -1):
        row = echelon[k]
        pv = row[pivots[k]]
        if pv != 1:
            echelon[k] = row = {j: v / pv for j, v in row.items()}
        for i in range(k):
            f = echelon[i].get(pivots[k], ZERO)
            if f != 0:
                tgt = echelon[i]
                for j, v in row.items():
                    nv = tgt.get(j, ZERO) - f * v
                    if nv == 0:
                        tgt.pop(j, None)
                    else:
                        tgt[j] = nv
    return echelon, pivots


def _matrix_sparse_rows(m: RationalMatrix) -> list:
    rows = [dict() for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    return rows


def _echelon_of(m: RationalMatrix) -> tuple[list, list]:
    """Echelon data of a matrix (dict rows + pivot columns), route by size."""
    if m.rows <= DENSE_CUTOFF and m.cols <= DENSE_CUTOFF:
        dense, pivots = _dense_echelon(m.dense_rows())
        rows = []
        for r in dense[: len(pivots)]:
            d = {j: v for j, v in enumerate(r) if v != 0}
            if d:
                rows.append(d)
        return rows, pivots
    return _sparse_echelon(_matrix_sparse_rows(m), m.cols)


def rank(m: RationalMatrix) -> int:
    """Exact rank over Q."""
    return len(_echelon_of(m)[1])


def kernel_basis(m: RationalMatrix) -> list:
    """Basis of ker(M), one vector per free column in increasing column order.

    The vector for free column c has a 1 in position c, zeros in the other
    free positions, and pivot coordinates from back substitution.
    """
    echelon, pivots = _reduced_echelon(_matrix_sparse_rows(m), m.cols)
    pivot_set = set(pivots)
    basis = []
    for c in range(m.cols):
        if c in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[c] = ONE
        for k, p in enumerate(pivots):
            # reduced form: row k reads x_p + sum over free cols = 0
            v[p] = -echelon[k].get(c, ZERO)
        basis.append(tuple(v))
    return basis


def image_basis(m: RationalMatrix) -> list:
    """Basis of the column space: the original columns at pivot positions."""
    _, pivots = _echelon_of(m)
    return [m.col(j) for j in pivots]


def kernel_basis_of_rows(rows: list, ncols: int) -> list:
    """kernel_basis for a system given directly as sparse dict rows."""
    echelon, pivots = _reduced_echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivot_set:
            continue
        v = [ZERO] * ncols
        v[c] = ONE
        for k, p in enumerate(pivots):
            v[p] = -echelon[k].get(c, ZERO)
        basis.append(tuple(v))
    return basis


def solve(m: RationalMatrix, b: Vector):
    """One solution of Mx = b with free variables set to zero, or None."""
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    rows = _matrix_sparse_rows(m)
    width = m.cols + 1
    for i, x in enumerate(b):
        if x != 0:
            rows[i][m.cols] = Fraction(x)
    echelon, pivots = _reduced_echelon(rows, width)
    x = [ZERO] * m.cols
    for k, p in enumerate(pivots):
        if p == m.cols:
            return None  # pivot in the rhs column: inconsistent
        x[p] = echelon[k].get(m.cols, ZERO)
    return tuple(x)


def solve_matrix(m: RationalMatrix, rhs: RationalMatrix):
    """Solve MX = B column by column (free vars zero); None if any column fails."""
    if rhs.rows != m.rows:
        raise ValueError("rhs row count mismatch")
    cols = []
    for j in range(rhs.cols):
        x = solve(m, rhs.col(j))
        if x is None:
            return None
        cols.append(x)
    return RationalMatrix.from_cols(cols, rows=m.cols)


def invert(m: RationalMatrix) -> RationalMatrix:
    """Inverse of a square invertible matrix (raises ValueError if singular)."""
    if m.rows != m.cols:
        raise ValueError("not square")
    inv = solve_matrix(m, RationalMatrix.identity(m.rows))
    if inv is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return inv


class Subspace:
    """A subspace of Q^n given by a list of independent basis vectors."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis):
        self.ambient_dim = int(ambient_dim)
        self.basis = tuple(vec(v) for v in basis)
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")
        if self.basis:
            m = RationalMatrix.from_cols(self.basis, rows=self.ambient_dim)
            if rank(m) != len(self.basis):
                raise ValueError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        if not self.basis:
            return is_zero_vec(v)
        m = RationalMatrix.from_cols(self.basis, rows=self.ambient_dim)
        return solve(m, vec(v)) is not None

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


class EchelonAccumulator:
    """Incremental independence test: feed vectors, remembers an echelon."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = []  # list of (pivot_col, dict-row with pivot scaled to 1)

    def reduce(self, v: Vector) -> dict:
        d = {j: Fraction(x) for j, x in enumerate(v) if x != 0}
        for p, row in self.rows:
            f = d.get(p, ZERO)
            if f != 0:
                for j, rv in row.items():
                    nv = d.get(j, ZERO) - f * rv
                    if nv == 0:
                        d.pop(j, None)
                    else:
                        d[j] = nv
        return d

    def add(self, v: Vector) -> bool:
        """Insert v; returns True if it was independent of what came before."""
        d = self.reduce(v)
        if not d:
            return False
        p = min(d)
        pv = d[p]
        if pv != 1:
            d = {j: x / pv for j, x in d.items()}
        self.rows.append((p, d))
        self.rows.sort(key=lambda t: t[0])
        return True


def complement_basis(s: Subspace) -> list:
    """Standard basis vectors completing s to the ambient space.

    Greedy: walk e_0, e_1, ... in increasing index order and keep each one
    that is independent of s plus the vectors kept so far.
    """
    acc = EchelonAccumulator(s.ambient_dim)
    for v in s.basis:
        acc.add(v)
    out = []
    for i in range(s.ambient_dim):
        e = unit_vec(s.ambient_dim, i)
        if acc.add(e):
            out.append(e)
    return out


def complement_indices(s: Subspace) -> list:
    """Indices i with e_i chosen by complement_basis."""
    acc = EchelonAccumulator(s.ambient_dim)
    for v in s.basis:
        acc.add(v)
    out = []
    for i in range(s.ambient_dim):
        if acc.add(unit_vec(s.ambient_dim, i)):
            out.append(i)
    return out
