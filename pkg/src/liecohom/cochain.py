"""The inhomogeneous cochain complex computing relative cohomology.

Cochains of degree k are equivariant maps on the k-th exterior power of
the quotient of the algebra by the chosen subalgebra.  Ambient coordinates
index pairs (multi-index, coefficient coordinate) lexicographically; the
equivariant subspace is cut out by exact kernel computations, and the
coboundary matrices follow the alternating-sum formula with the module
action in the first sum and brackets inserted in the first slot of the
second, signs (-1)^(i+1) and (-1)^(i+j).
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import combinations

from .lie import LieAlgebra, QuotientData, Subalgebra, is_reductive, zero_subalgebra
from .linalg import (
    EchelonAccumulator,
    RationalMatrix,
    Vector,
    kernel_basis,
    kernel_basis_of_rows,
    rank,
    solve,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .modules import GModule

ZERO = Fraction(0)


class NonReductiveSubalgebraWarning(UserWarning):
    """The subalgebra fails the reductivity check; results are still exact."""


def exterior_basis(m: int, k: int) -> list:
    """All strictly increasing k-tuples over range(m), lexicographically."""
    if k < 0:
        return []
    return [tuple(c) for c in combinations(range(m), k)]


def insert_index(c: int, rest: tuple):
    """Sort (c, *rest) into a strictly increasing tuple.

    Returns (sign, tuple) or None when c collides with an entry of rest;
    rest must already be strictly increasing.
    """
    if c in rest:
        return None
    pos = 0
    while pos < len(rest) and rest[pos] < c:
        pos += 1
    sign = 1 if pos % 2 == 0 else -1
    return sign, rest[:pos] + (c,) + rest[pos:]


class CochainSpace:
    """Basis of the equivariant cochains in one degree.

    Ambient coordinates run over (multi-index, module coordinate) pairs in
    lexicographic order; ``basis`` spans the equivariant subspace inside
    that ambient space.
    """

    def __init__(self, degree: int, quotient_dim: int, module_dim: int, basis):
        self.degree = degree
        self.quotient_dim = quotient_dim
        self.module_dim = module_dim
        self.indices = exterior_basis(quotient_dim, degree)
        self.ambient_dim = len(self.indices) * module_dim
        self.basis = [vec(b) for b in basis]
        self._index_pos = {idx: a for a, idx in enumerate(self.indices)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinate(self, idx: tuple, e: int) -> int:
        return self._index_pos[idx] * self.module_dim + e

    def value(self, ambient: Vector, idx: tuple) -> Vector:
        """The module-valued entry of an ambient cochain at one multi-index."""
        base = self._index_pos[idx] * self.module_dim
        return tuple(ambient[base + e] for e in range(self.module_dim))

    def to_ambient(self, coords: Vector) -> Vector:
        """Expand coordinates in the equivariant basis to ambient coordinates."""
        out = zero_vec(self.ambient_dim)
        for c, b in zip(coords, self.basis, strict=True):
            if c != 0:
                out = vec_add(out, vec_scale(c, b))
        return out

    def from_ambient(self, ambient: Vector):
        """Coordinates in the equivariant basis, or None if not equivariant."""
        if not self.basis:
            return () if all(x == 0 for x in ambient) else None
        m = RationalMatrix.from_cols(self.basis, rows=self.ambient_dim)
        return solve(m, vec(ambient))

    def __repr__(self):
        return f"CochainSpace(degree={self.degree}, dim={self.dim}, ambient={self.ambient_dim})"


class CohomologyResult:
    """Per-degree outcome: dimensions and reduced representatives."""

    def __init__(self, degree, dim_cochains, cocycle_dim, coboundary_dim, representatives, note=""):
        self.degree = degree
        self.dim_cochains = dim_cochains
        self.cocycle_dim = cocycle_dim
        self.coboundary_dim = coboundary_dim
        self.betti = cocycle_dim - coboundary_dim
        self.representatives = representatives
        self.note = note

    def __repr__(self):
        return f"CohomologyResult(degree={self.degree}, betti={self.betti})"


class RelativeCochainComplex:
    """Cochain spaces and coboundary matrices for one (algebra, subalgebra, module).

    Spaces and matrices are computed lazily per degree and cached; the
    instance is immutable from the caller's point of view.
    """

    def __init__(self, algebra: LieAlgebra, sub: Subalgebra | None, module: GModule,
                 warn_nonreductive: bool = True):
        if sub is None:
            sub = zero_subalgebra(algebra)
        if module.algebra != algebra:
            raise ValueError("module is over a different algebra")
        self.algebra = algebra
        self.sub = sub
        self.module = module
        self.quotient = QuotientData(algebra, sub)
        if warn_nonreductive and sub.dim:
            cert = is_reductive(sub)
            if not cert.is_reductive:
                warnings.warn(
                    "subalgebra is not reductive; the cochain complex is still "
                    "well defined but resolution independence is not guaranteed",
                    NonReductiveSubalgebraWarning,
                    stacklevel=2,
                )
        self._spaces: dict[int, CochainSpace] = {}
        self._matrices: dict[int, RationalMatrix] = {}

    # -- equivariant spaces ------------------------------------------------

    def space(self, k: int) -> CochainSpace:
        if k < 0:
            raise ValueError("degree must be >= 0")
        if k not in self._spaces:
            self._spaces[k] = self._build_space(k)
        return self._spaces[k]

    def _build_space(self, k: int) -> CochainSpace:
        q = self.quotient.dim
        de = self.module.dim
        indices = exterior_basis(q, k)
        ambient = len(indices) * de
        if not self.sub.dim:
            basis = [self._unit_ambient(ambient, a) for a in range(ambient)]
            return CochainSpace(k, q, de, basis)
        rows = []
        pos = {idx: a for a, idx in enumerate(indices)}
        for y_idx, y in enumerate(self.sub.basis):
            rho_y = self.module.act_matrix(y)
            h_act = self.quotient.h_action[y_idx]
            for idx in indices:
                for r in range(de):
                    row = {}
                    # module action term: rho(Y) f(idx)
                    for e in range(de):
                        c = rho_y.entry(r, e)
                        if c != 0:
                            col = pos[idx] * de + e
                            row[col] = row.get(col, ZERO) + c
                    # subtracted slot replacements f(..., [Y, X_i]bar, ...);
                    # the replacement sits at the original slot, so sorting
                    # picks up an extra (-1)^slot relative to front insertion
                    for slot, a in enumerate(idx):
                        rest = idx[:slot] + idx[slot + 1 :]
                        slot_sign = 1 if slot % 2 == 0 else -1
                        for b in range(q):
                            c = h_act.entry(b, a)
                            if c == 0:
                                continue
                            ins = insert_index(b, rest)
                            if ins is None:
                                continue
                            sign, new_idx = ins
                            col = pos[new_idx] * de + r
                            row[col] = row.get(col, ZERO) - sign * slot_sign * c
                    row = {c: v for c, v in row.items() if v != 0}
                    if row:
                        rows.append(row)
        basis = kernel_basis_of_rows(rows, ambient)
        return CochainSpace(k, q, de, basis)

    @staticmethod
    def _unit_ambient(n: int, a: int) -> Vector:
        return tuple(Fraction(1) if i == a else ZERO for i in range(n))

    # -- coboundary --------------------------------------------------------

    def coboundary_ambient(self, k: int, ambient: Vector) -> Vector:
        """Apply the degree-k coboundary to an ambient cochain vector."""
        src = self.space(k)
        tgt_indices = exterior_basis(self.quotient.dim, k + 1)
        de = self.module.dim
        out = [ZERO] * (len(tgt_indices) * de)
        for t_pos, jdx in enumerate(tgt_indices):
            val = zero_vec(de)
            for a in range(k + 1):
                rest = jdx[:a] + jdx[a + 1 :]
                sign = 1 if a % 2 == 0 else -1  # (-1)^(i+1) with i = a+1
                lift = self.quotient.lift(jdx[a])
                f_rest = src.value(ambient, rest)
                val = vec_add(val, vec_scale(sign, self.module.act_vector(lift, f_rest)))
            for a in range(k + 1):
                for b in range(a + 1, k + 1):
                    rest = tuple(x for t, x in enumerate(jdx) if t not in (a, b))
                    sign = 1 if (a + b) % 2 == 0 else -1  # (-1)^(i+j) with i = a+1, j = b+1
                    w = self.algebra.bracket(self.quotient.lift(jdx[a]), self.quotient.lift(jdx[b]))
                    wbar = self.quotient.project_vector(w)
                    for c, coeff in enumerate(wbar):
                        if coeff == 0:
                            continue
                        ins = insert_index(c, rest)
                        if ins is None:
                            continue
                        s2, new_idx = ins
                        f_val = src.value(ambient, new_idx)
                        val = vec_add(val, vec_scale(sign * s2 * coeff, f_val))
            base = t_pos * de
            for e in range(de):
                out[base + e] = val[e]
        return tuple(out)

    def coboundary_matrix(self, k: int) -> RationalMatrix:
        """Matrix of d^k from space(k) to space(k+1), in their stored bases."""
        if k not in self._matrices:
            src = self.space(k)
            tgt = self.space(k + 1)
            cols = []
            for b in src.basis:
                img = self.coboundary_ambient(k, b)
                coords = tgt.from_ambient(img)
                if coords is None:
                    raise ValueError(
                        f"coboundary image at degree {k} leaves the equivariant space; "
                        "the subalgebra is not bracket-closed or there is an internal error"
                    )
                cols.append(coords)
            self._matrices[k] = RationalMatrix.from_cols(cols, rows=tgt.dim)
        return self._matrices[k]

    # -- cohomology ---------------------------------------------------------

    def result(self, k: int, note: str = "") -> CohomologyResult:
        d_k = self.coboundary_matrix(k) if k < self.quotient.dim else None
        cocycles = kernel_basis(d_k) if d_k is not None else [
            self._unit_ambient(self.space(k).dim, a) for a in range(self.space(k).dim)
        ]
        cocycle_dim = len(cocycles)
        if k == 0:
            coboundary_dim = 0
            image = []
        else:
            d_prev = self.coboundary_matrix(k - 1)
            coboundary_dim = rank(d_prev)
            image = [d_prev.col(j) for j in range(d_prev.cols)]
        reps = _reduce_mod_image(cocycles, image, self.space(k).dim)
        return CohomologyResult(k, self.space(k).dim, cocycle_dim, coboundary_dim, reps, note)


def _reduce_mod_image(cocycles, image_vectors, ncols: int):
    """Deterministic representatives: kernel vectors reduced modulo the image.

    The image vectors are echelonized first; each kernel vector is reduced
    against the accumulated echelon and kept (leading coefficient scaled to
    one) whenever something nonzero survives.
    """
    acc = EchelonAccumulator(ncols)
    for v in image_vectors:
        acc.add(v)
    reps = []
    for v in cocycles:
        reduced = acc.reduce(v)
        if not reduced:
            continue
        p = min(reduced)
        pv = reduced[p]
        rep = [ZERO] * ncols
        for j, x in reduced.items():
            rep[j] = x / pv
        reps.append(tuple(rep))
        acc.add(tuple(rep))
    return reps


def equivariant_cochain_space(algebra, sub, module, k,
                              warn_nonreductive: bool = True) -> CochainSpace:
    return RelativeCochainComplex(algebra, sub, module, warn_nonreductive).space(k)


def coboundary_matrix(algebra, sub, module, k) -> RationalMatrix:
    return RelativeCochainComplex(algebra, sub, module).coboundary_matrix(k)


def betti_numbers(algebra, sub, module, max_degree: int | None = None) -> list:
    """CohomologyResult per degree 0..max_degree (default: dim of the quotient)."""
    cx = RelativeCochainComplex(algebra, sub, module)
    top = cx.quotient.dim
    if max_degree is None:
        max_degree = top
    if max_degree > top:
        raise ValueError(f"max_degree {max_degree} exceeds quotient dimension {top}")
    return [cx.result(k) for k in range(max_degree + 1)]


def reduced_betti_numbers(algebra, sub, module, max_degree: int | None = None) -> list:
    """Identical to betti_numbers: over Q in finite dimension every image is closed."""
    note = "reduced = unreduced (finite-dimensional images are closed)"
    cx = RelativeCochainComplex(algebra, sub, module)
    top = cx.quotient.dim
    if max_degree is None:
        max_degree = top
    if max_degree > top:
        raise ValueError(f"max_degree {max_degree} exceeds quotient dimension {top}")
    return [cx.result(k, note=note) for k in range(max_degree + 1)]


def evaluate_coboundary(algebra, sub, module, k, ambient: Vector, vectors) -> Vector:
    """Evaluate d^k of an ambient cochain on arbitrary lift vectors in g.

    Used to test independence of the complement lifts: the value only
    depends on the classes of the vectors when the cochain is equivariant.
    """
    cx = RelativeCochainComplex(algebra, sub, module, warn_nonreductive=False)
    src = cx.space(k)
    if len(vectors) != k + 1:
        raise ValueError("need k+1 vectors")
    de = module.dim

    def eval_cochain(classes) -> Vector:
        # classes: list of quotient-coordinate vectors; expand multilinearly
        total = zero_vec(de)
        if len(classes) == 0:
            return src.value(ambient, ())

        def rec(i, chosen, coeff):
            nonlocal total
            if coeff == 0:
                return
            if i == len(classes):
                perm_sign, sorted_idx = _sort_sign(chosen)
                if perm_sign == 0:
                    return
                total = vec_add(total, vec_scale(coeff * perm_sign, src.value(ambient, sorted_idx)))
                return
            for c, x in enumerate(classes[i]):
                if x != 0:
                    rec(i + 1, chosen + (c,), coeff * x)

        rec(0, (), Fraction(1))
        return total

    result = zero_vec(de)
    for a in range(k + 1):
        rest = [vectors[t] for t in range(k + 1) if t != a]
        sign = 1 if a % 2 == 0 else -1
        value = eval_cochain([cx.quotient.project_vector(v) for v in rest])
        result = vec_add(result, vec_scale(sign, module.act_vector(vectors[a], value)))
    for a in range(k + 1):
        for b in range(a + 1, k + 1):
            rest = [vectors[t] for t in range(k + 1) if t not in (a, b)]
            sign = 1 if (a + b) % 2 == 0 else -1
            w = algebra.bracket(vectors[a], vectors[b])
            classes = [cx.quotient.project_vector(w)] + [cx.quotient.project_vector(v) for v in rest]
            result = vec_add(result, vec_scale(sign, eval_cochain(classes)))
    return result


def _sort_sign(idx: tuple):
    """Sign of sorting a tuple with distinct entries; 0 on repeats."""
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] == idx[j + 1]:
                return 0, ()
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def is_cocycle_deg1(algebra, sub, module, ambient: Vector) -> bool:
    """Degree-1 cocycle test: x.f(ybar) - y.f(xbar) - f([x,y]bar) = 0 on basis pairs."""
    cx = RelativeCochainComplex(algebra, sub, module, warn_nonreductive=False)
    space1 = cx.space(1)
    if space1.from_ambient(ambient) is None:
        raise ValueError("cochain is not equivariant")
    n = algebra.dim
    de = module.dim
    from .linalg import unit_vec

    def f_of(v) -> Vector:
        cls = cx.quotient.project_vector(v)
        out = zero_vec(de)
        for c, x in enumerate(cls):
            if x != 0:
                out = vec_add(out, vec_scale(x, space1.value(ambient, (c,))))
        return out

    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = unit_vec(n, i), unit_vec(n, j)
            res = module.act_vector(xi, f_of(xj))
            res = vec_add(res, vec_scale(-1, module.act_vector(xj, f_of(xi))))
            res = vec_add(res, vec_scale(-1, f_of(algebra.bracket(xi, xj))))
            if any(x != 0 for x in res):
                return False
    return True


def coboundary_witness_deg1(algebra, sub, module, ambient: Vector):
    """A vector xi in the invariant subspace with x.xi = f(xbar), if one exists."""
    cx = RelativeCochainComplex(algebra, sub, module, warn_nonreductive=False)
    space1 = cx.space(1)
    coords = space1.from_ambient(ambient)
    if coords is None:
        raise ValueError("cochain is not equivariant")
    d0 = cx.coboundary_matrix(0)
    x = solve(d0, coords)
    if x is None:
        return None
    space0 = cx.space(0)
    out = zero_vec(module.dim)
    for c, b in zip(x, space0.basis, strict=True):
        if c != 0:
            out = vec_add(out, vec_scale(c, b))
    return out
