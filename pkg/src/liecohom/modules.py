"""Coefficient modules: rational representations of a Lie algebra.

A GModule is a list of action matrices, one per algebra basis element,
satisfying the representation law rho([x,y]) = rho(x)rho(y) - rho(y)rho(x).
The law is verified at construction.
"""

from __future__ import annotations

from .lie import LieAlgebra, Subalgebra, ValidationReport
from .linalg import (
    RationalMatrix,
    Subspace,
    Vector,
    kernel_basis_of_rows,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)


class GModule:
    """Finite-dimensional module over a LieAlgebra, given by action matrices."""

    def __init__(self, algebra: LieAlgebra, action, check: bool = True):
        self.algebra = algebra
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        dims = {(m.rows, m.cols) for m in self.action}
        if len(dims) > 1:
            raise ValueError("action matrices must all have the same square size")
        if self.action:
            r, c = self.action[0].rows, self.action[0].cols
            if r != c:
                raise ValueError("action matrices must be square")
            self.dim = r
        else:
            self.dim = 0
        if check:
            report = verify_representation(algebra, self.action)
            if not report.passed:
                raise ValueError(
                    f"representation law fails at pairs {[c for c, _ in report.failures]}"
                )

    @classmethod
    def unchecked(cls, algebra, action) -> "GModule":
        return cls(algebra, action, check=False)

    def act_vector(self, x: Vector, xi: Vector) -> Vector:
        """Action of an algebra element (coordinate vector) on xi."""
        out = zero_vec(self.dim)
        for i, c in enumerate(x):
            if c != 0:
                out = vec_add(out, vec_scale(c, self.action[i].apply(xi)))
        return out

    def act_matrix(self, x: Vector) -> RationalMatrix:
        """Matrix of the action of an algebra element given in coordinates."""
        m = RationalMatrix.zero(self.dim, self.dim)
        for i, c in enumerate(x):
            if c != 0:
                m = m + self.action[i].scale(c)
        return m

    def __repr__(self):
        return f"GModule(dim={self.dim} over {self.algebra!r})"


def verify_representation(algebra: LieAlgebra, action) -> ValidationReport:
    """Report every basis pair violating rho([x,y]) = [rho(x), rho(y)]."""
    report = ValidationReport("representation-law")
    action = list(action)
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            w = algebra.basis_bracket(i, j)
            acc = RationalMatrix.zero(action[i].rows, action[i].cols)
            for k, c in enumerate(w):
                if c != 0:
                    acc = acc + action[k].scale(c)
            commutator = action[i] @ action[j] - action[j] @ action[i]
            residual = acc - commutator
            if not residual.is_zero():
                report.add((i, j), residual)
    return report


def trivial_module(algebra: LieAlgebra, d: int) -> GModule:
    """d-dimensional module with zero action (classical constant coefficients)."""
    if d < 1:
        raise ValueError("trivial module dimension must be >= 1")
    return GModule(algebra, [RationalMatrix.zero(d, d) for _ in range(algebra.dim)])


def adjoint_module(algebra: LieAlgebra) -> GModule:
    """The adjoint action y -> [x, y]; valid exactly when Jacobi holds."""
    n = algebra.dim
    return GModule(algebra, [algebra.ad_matrix(unit_vec(n, i)) for i in range(n)])


def invariants(module: GModule, sub: Subalgebra | None = None) -> Subspace:
    """Joint kernel of the action of a subalgebra (default: the whole algebra)."""
    if sub is None:
        mats = list(module.action)
    else:
        if sub.parent != module.algebra:
            raise ValueError("subalgebra belongs to a different algebra")
        mats = [module.act_matrix(y) for y in sub.basis]
    rows = []
    for m in mats:
        for i in range(m.rows):
            row = {j: m.entry(i, j) for j in range(m.cols) if m.entry(i, j) != 0}
            if row:
                rows.append(row)
    basis = kernel_basis_of_rows(rows, module.dim)
    return Subspace(module.dim, basis)


def restrict(module: GModule, sub: Subalgebra) -> GModule:
    """The module as a representation of the subalgebra's intrinsic algebra."""
    if sub.parent != module.algebra:
        raise ValueError("subalgebra belongs to a different algebra")
    h = sub.intrinsic_algebra()
    action = [module.act_matrix(y) for y in sub.basis]
    return GModule(h, action)


def conjugate_module(module: GModule, t: RationalMatrix) -> GModule:
    """Change of basis of E: action matrices become T rho T^{-1}."""
    from .linalg import invert

    tinv = invert(t)
    return GModule(module.algebra, [t @ m @ tinv for m in module.action])


def dual_module(module: GModule) -> GModule:
    """Contragredient module: rho*(x) = -rho(x)^T."""
    return GModule(module.algebra, [m.transpose().scale(-1) for m in module.action])


def direct_sum_module(a: GModule, b: GModule) -> GModule:
    """Block direct sum of two modules over the same algebra."""
    if a.algebra != b.algebra:
        raise ValueError("modules over different algebras")
    mats = []
    for ma, mb in zip(a.action, b.action):
        ent = dict(ma.entries)
        for (i, j), v in mb.entries.items():
            ent[(i + a.dim, j + a.dim)] = v
        mats.append(RationalMatrix(a.dim + b.dim, a.dim + b.dim, ent))
    return GModule(a.algebra, mats)
