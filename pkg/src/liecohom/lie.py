"""Lie algebras over Q by structure constants, subalgebras and quotients.

A LieAlgebra stores brackets of basis pairs [e_i, e_j] for i < j only;
antisymmetry is structural and the Jacobi identity is verified at
construction, so an algebra object can never be in an invalid state.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import (
    RationalMatrix,
    Subspace,
    Vector,
    complement_indices,
    invert,
    is_zero_vec,
    rank,
    solve,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)

ZERO = Fraction(0)


class ValidationReport:
    """Outcome of a structural check; failures carry context and residuals."""

    def __init__(self, name: str, failures=None):
        self.name = name
        self.failures = list(failures or [])

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, context, residual):
        self.failures.append((context, residual))

    def __repr__(self):
        verdict = "pass" if self.passed else f"FAIL ({len(self.failures)} violations)"
        return f"ValidationReport({self.name}: {verdict})"


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by structure constants.

    ``structure`` maps (i, j) with i < j to the coordinate vector of
    [e_i, e_j].  Missing pairs bracket to zero.
    """

    def __init__(self, dim: int, structure, basis_names=None, check: bool = True):
        self.dim = int(dim)
        if basis_names is None:
            basis_names = [f"X{i + 1}" for i in range(self.dim)]
        if len(basis_names) != self.dim:
            raise ValueError("basis_names length != dim")
        self.basis_names = tuple(str(n) for n in basis_names)
        table = {}
        for (i, j), v in structure.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"structure key ({i},{j}) must satisfy 0 <= i < j < dim")
            v = vec(v)
            if len(v) != self.dim:
                raise ValueError("structure constant vector has wrong length")
            if not is_zero_vec(v):
                table[(i, j)] = v
        self.structure = table
        self._norm_cache = {}
        if check:
            report = verify_jacobi(self)
            if not report.passed:
                raise ValueError(f"Jacobi identity fails at triples {[c for c, _ in report.failures]}")

    @classmethod
    def unchecked(cls, dim, structure, basis_names=None) -> "LieAlgebra":
        return cls(dim, structure, basis_names, check=False)

    def basis_bracket(self, i: int, j: int) -> Vector:
        """[e_i, e_j] as a coordinate vector."""
        if i == j:
            return zero_vec(self.dim)
        if i < j:
            return self.structure.get((i, j), zero_vec(self.dim))
        return vec_scale(-1, self.structure.get((j, i), zero_vec(self.dim)))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension of the structure constants."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("bracket: vector length != dim")
        out = zero_vec(self.dim)
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0 or i == j:
                    continue
                out = vec_add(out, vec_scale(a * b, self.basis_bracket(i, j)))
        return out

    def ad_matrix(self, y: Vector) -> RationalMatrix:
        """Matrix of x -> [y, x] in the algebra basis."""
        cols = [self.bracket(y, unit_vec(self.dim, j)) for j in range(self.dim)]
        return RationalMatrix.from_cols(cols, rows=self.dim)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.structure.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


def bracket(algebra: LieAlgebra, x: Vector, y: Vector) -> Vector:
    return algebra.bracket(x, y)


def verify_jacobi(algebra: LieAlgebra) -> ValidationReport:
    """Check [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0 for i<j<k."""
    report = ValidationReport("jacobi")
    n = algebra.dim
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(i + 1, n):
            ej = unit_vec(n, j)
            bij = algebra.basis_bracket(i, j)
            for k in range(j + 1, n):
                ek = unit_vec(n, k)
                res = algebra.bracket(bij, ek)
                res = vec_add(res, algebra.bracket(algebra.basis_bracket(j, k), ei))
                res = vec_add(res, algebra.bracket(algebra.basis_bracket(k, i), ej))
                if not is_zero_vec(res):
                    report.add((i, j, k), res)
    return report


class Subalgebra:
    """A bracket-closed subspace of a parent LieAlgebra."""

    def __init__(self, parent: LieAlgebra, basis):
        self.parent = parent
        self.space = Subspace(parent.dim, basis)
        for a in self.space.basis:
            for b in self.space.basis:
                w = parent.bracket(a, b)
                if not self.space.contains(w):
                    raise ValueError("subspace is not closed under the bracket")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self):
        return self.space.basis

    def coordinates(self, v: Vector) -> Vector:
        """Coordinates of v in the subalgebra basis (v must lie in it)."""
        if not self.basis:
            if is_zero_vec(v):
                return ()
            raise ValueError("vector not in the zero subalgebra")
        m = RationalMatrix.from_cols(self.basis, rows=self.parent.dim)
        x = solve(m, vec(v))
        if x is None:
            raise ValueError("vector not in the subalgebra")
        return x

    def intrinsic_algebra(self) -> LieAlgebra:
        """The subalgebra as a LieAlgebra in its own basis."""
        p = self.dim
        structure = {}
        for i in range(p):
            for j in range(i + 1, p):
                w = self.parent.bracket(self.basis[i], self.basis[j])
                structure[(i, j)] = self.coordinates(w)
        names = [f"Y{i + 1}" for i in range(p)]
        return LieAlgebra(p, structure, names)

    def __repr__(self):
        return f"Subalgebra(dim {self.dim} of {self.parent!r})"


def zero_subalgebra(algebra: LieAlgebra) -> Subalgebra:
    return Subalgebra(algebra, [])


def full_subalgebra(algebra: LieAlgebra) -> Subalgebra:
    return Subalgebra(algebra, [unit_vec(algebra.dim, i) for i in range(algebra.dim)])


class QuotientData:
    """Concrete realization of g/h: a complement choice and projection.

    ``project`` sends g-coordinates to complement coordinates;
    ``h_action[k]`` is the induced matrix of x -> class of [Y_k, x] on the
    complement coordinates, for the k-th subalgebra basis vector.
    """

    def __init__(self, algebra: LieAlgebra, sub: Subalgebra):
        if sub.parent != algebra:
            raise ValueError("subalgebra belongs to a different algebra")
        self.algebra = algebra
        self.sub = sub
        self.complement_idx = complement_indices(sub.space)
        self.dim = len(self.complement_idx)  # dim of g/h
        n = algebra.dim
        comp_vectors = [unit_vec(n, i) for i in self.complement_idx]
        cols = list(sub.basis) + comp_vectors
        basis_matrix = RationalMatrix.from_cols(cols, rows=n) if cols else RationalMatrix.identity(0)
        inv = invert(basis_matrix) if n else RationalMatrix.identity(0)
        # bottom q rows of the inverse = complement coordinates of the class
        proj_entries = {}
        p = sub.dim
        for (i, j), v in inv.entries.items():
            if i >= p:
                proj_entries[(i - p, j)] = v
        self.project = RationalMatrix(self.dim, n, proj_entries)
        self.h_action = []
        for y in sub.basis:
            cols = [self.project.apply(algebra.bracket(y, unit_vec(n, c))) for c in self.complement_idx]
            self.h_action.append(RationalMatrix.from_cols(cols, rows=self.dim))

    def lift(self, a: int) -> Vector:
        """Ambient standard basis vector representing complement coordinate a."""
        return unit_vec(self.algebra.dim, self.complement_idx[a])

    def project_vector(self, v: Vector) -> Vector:
        return self.project.apply(vec(v))


def quotient_data(algebra: LieAlgebra, sub: Subalgebra) -> QuotientData:
    return QuotientData(algebra, sub)


def _span_basis(vectors, ambient: int):
    """Deterministic basis of the span (first independent vectors kept)."""
    from .linalg import EchelonAccumulator

    acc = EchelonAccumulator(ambient)
    out = []
    for v in vectors:
        if acc.add(v):
            out.append(vec(v))
    return out


class ReductivityCertificate:
    def __init__(self, is_reductive, center_basis, derived_basis, killing_rank, notes=""):
        self.is_reductive = bool(is_reductive)
        self.center_basis = center_basis
        self.derived_basis = derived_basis
        self.killing_rank = killing_rank
        self.notes = notes

    def __repr__(self):
        return (
            f"ReductivityCertificate(reductive={self.is_reductive}, center={len(self.center_basis)}, "
            f"derived={len(self.derived_basis)}, killing_rank={self.killing_rank})"
        )


def is_reductive(sub: Subalgebra) -> ReductivityCertificate:
    """Check that h splits as center + derived with nondegenerate Killing form.

    Works intrinsically: h is reductive iff h = z(h) (+) [h,h] as vector
    spaces and the Killing form of [h,h] is nondegenerate.
    """
    h = sub.intrinsic_algebra()
    p = h.dim
    if p == 0:
        return ReductivityCertificate(True, [], [], 0, "zero subalgebra")
    # center: v with [e_j, v] = 0 for all j, i.e. the common ad-kernel
    from .linalg import kernel_basis_of_rows

    rows = []
    for j in range(p):
        adj = h.ad_matrix(unit_vec(p, j))
        for r in range(p):
            row = {c: adj.entry(r, c) for c in range(p) if adj.entry(r, c) != 0}
            if row:
                rows.append(row)
    center = kernel_basis_of_rows(rows, p)
    derived = _span_basis(
        [h.basis_bracket(i, j) for i in range(p) for j in range(i + 1, p)], p
    )
    zc = len(center)
    dc = len(derived)
    direct_sum = False
    if zc + dc == p:
        m = RationalMatrix.from_cols(list(center) + list(derived), rows=p) if (zc + dc) else None
        direct_sum = m is None or rank(m) == p
    killing_rank = 0
    killing_ok = True
    if dc:
        # Killing form of the derived algebra, computed in its own basis
        der = Subalgebra(h, derived).intrinsic_algebra()
        ads = [der.ad_matrix(unit_vec(dc, i)) for i in range(dc)]
        killing_entries = {}
        for i in range(dc):
            for j in range(dc):
                t = _trace(ads[i] @ ads[j])
                if t != 0:
                    killing_entries[(i, j)] = t
        killing = RationalMatrix(dc, dc, killing_entries)
        killing_rank = rank(killing)
        killing_ok = killing_rank == dc
    verdict = direct_sum and killing_ok
    return ReductivityCertificate(verdict, center, derived, killing_rank)


def _trace(m: RationalMatrix) -> Fraction:
    return sum((m.entry(i, i) for i in range(min(m.rows, m.cols))), ZERO)


def _poly_derivative(p: list) -> list:
    return [c * k for k, c in enumerate(p)][1:]


def _poly_gcd(a: list, b: list) -> list:
    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            trim(a)
            if not a:
                break
        a, b = b, a
        trim(b)
    return a


def _minimal_polynomial(m: RationalMatrix) -> list:
    """Coefficients (low degree first, monic) of the minimal polynomial."""
    n = m.rows
    powers = [RationalMatrix.identity(n)]
    while True:
        cur = len(powers)
        flat_cols = []
        for p in powers:
            flat_cols.append(tuple(p.entry(i, j) for i in range(n) for j in range(n)))
        stacked = RationalMatrix.from_cols(flat_cols, rows=n * n)
        if rank(stacked) < cur:
            # last power is dependent: solve for combination of earlier powers
            target = flat_cols[-1]
            prev = RationalMatrix.from_cols(flat_cols[:-1], rows=n * n)
            coeffs = solve(prev, target)
            poly = [-c for c in coeffs] + [Fraction(1)]
            return poly
        powers.append(powers[-1] @ m)


def ad_action_semisimple(sub: Subalgebra) -> bool:
    """Informational check: does ad h act semisimply on the parent algebra?

    Tests squarefreeness of the minimal polynomial of ad_Y on g for each
    basis Y of the center of h; the derived part acts semisimply
    automatically in characteristic zero when it is semisimple.
    """
    cert = is_reductive(sub)
    g = sub.parent
    coords_mat = (
        RationalMatrix.from_cols(sub.basis, rows=g.dim) if sub.dim else None
    )
    for z in cert.center_basis:
        ambient = coords_mat.apply(vec(z)) if coords_mat is not None else zero_vec(g.dim)
        ad = g.ad_matrix(ambient)
        minpoly = _minimal_polynomial(ad)
        gcd = _poly_gcd(minpoly, _poly_derivative(minpoly))
        if len(gcd) > 1:
            return False
    return True
