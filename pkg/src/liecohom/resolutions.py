"""Truncated standard and twisted resolutions, their isomorphisms, and the
coinduction machinery.

Everything lives on a finite window: cochains are stored on PBW monomials
of degree at most a bound N, and every identity is asserted exactly on the
sub-window where both sides are evaluable.  The generator basis is always
complement-first (quotient representatives before subalgebra vectors), so
the class of a basis vector in the quotient is literally its first q
coordinates.

Flavors of degree-n cochains on (monomial, wedge index) points:

* standard: satisfies the invariance condition
  Y.f(u, xs) - f(Yu, xs) - sum_i f(u, ..., [Y,X_i]bar, ...) = 0,
  carries the action (X.f)(u, xs) = f(uX, xs);
* twisted: satisfies f(uY, xs) = sum_i f(u, ..., [Y,X_i]bar, ...),
  carries the action (X.f)(u, xs) = X.f(u, xs) - f(Xu, xs).

The two conversion maps use coproduct legs and the antipode and are
inverse to each other on the full window.  The third sum of the standard
coboundary carries the sign (-1)^(i+j); the unsigned variant is available
behind a flag purely as a regression guard, since with it the complex
property fails.
"""

from __future__ import annotations

from fractions import Fraction

from .cochain import RelativeCochainComplex, exterior_basis, insert_index
from .lie import LieAlgebra, QuotientData, Subalgebra, ValidationReport
from .linalg import (
    RationalMatrix,
    Vector,
    invert,
    kernel_basis_of_rows,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .modules import GModule
from .enveloping import (
    UGElement,
    act,
    antipode,
    coproduct,
    monomials_up_to,
    multiply,
    normalize_word,
    word_of,
)

ZERO = Fraction(0)
ONE = Fraction(1)

STANDARD = "standard"
TWISTED = "twisted"


class ResolutionContext:
    """Shared window data for the resolutions of one (algebra, subalgebra, module).

    The PBW basis is the complement of the subalgebra (standard vectors
    chosen greedily) followed by the subalgebra basis; algebra structure
    constants and module action are rewritten in that basis once.
    """

    def __init__(self, algebra: LieAlgebra, sub: Subalgebra | None, module: GModule, bound: int):
        from .lie import zero_subalgebra

        if sub is None:
            sub = zero_subalgebra(algebra)
        if module.algebra != algebra:
            raise ValueError("module is over a different algebra")
        self.base_algebra = algebra
        self.sub = sub
        self.base_module = module
        self.bound = int(bound)
        self.quotient = QuotientData(algebra, sub)
        self.q = self.quotient.dim
        self.p = sub.dim
        n = algebra.dim
        cols = [unit_vec(n, i) for i in self.quotient.complement_idx] + list(sub.basis)
        self.basis_matrix = RationalMatrix.from_cols(cols, rows=n) if n else RationalMatrix.identity(0)
        self.algebra = conjugate_algebra(algebra, self.basis_matrix)
        self.module = GModule(
            self.algebra,
            [module.act_matrix(c) for c in cols],
            check=False,
        )
        self.monomials = monomials_up_to(n, self.bound)
        self.unit_exp = (0,) * n
        # precedence putting subalgebra generators before complement ones,
        # used to evaluate coinduced elements at arbitrary monomials
        self.h_first_precedence = tuple(range(self.p, self.p + self.q)) + tuple(range(self.p))

    def monomials_of_degree_at_most(self, d: int) -> list:
        return [m for m in self.monomials if sum(m) <= d]

    def wedge(self, n: int) -> list:
        return exterior_basis(self.q, n)

    def generator(self, i: int) -> UGElement:
        return UGElement.generator(self.algebra, self.bound, i)

    def monomial(self, exp) -> UGElement:
        return UGElement.monomial(self.algebra, self.bound, exp)

    def quotient_class(self, k: int) -> Vector:
        """Class of the k-th PBW generator in complement coordinates."""
        full = zero_vec(self.q) if k >= self.q else unit_vec(self.q, k)
        return full

    def bracket_class(self, i: int, j: int) -> Vector:
        """Complement coordinates of the class of [g_i, g_j]."""
        return self.algebra.basis_bracket(i, j)[: self.q]

    def h_action_entry(self, j: int, b: int, a: int) -> Fraction:
        """Coefficient of the b-th complement class in [Y_j, X_a]bar."""
        return self.algebra.basis_bracket(self.q + j, a)[b]


def conjugate_algebra(algebra: LieAlgebra, basis_matrix: RationalMatrix) -> LieAlgebra:
    """Structure constants of the same algebra in a new basis (given as columns)."""
    n = algebra.dim
    if n == 0:
        return algebra
    inv = invert(basis_matrix)
    structure = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = algebra.bracket(basis_matrix.col(i), basis_matrix.col(j))
            structure[(i, j)] = inv.apply(w)
    return LieAlgebra(n, structure, [f"g{i + 1}" for i in range(n)], check=False)


class TruncatedCochain:
    """Degree-n cochain on the window, one module value per (monomial, index).

    ``domain_bound`` is the largest first-slot degree at which the cochain
    is defined; coboundaries and actions shrink it by one.  Values are
    stored sparsely (missing window points are zero).
    """

    __slots__ = ("ctx", "degree", "flavor", "domain_bound", "values")

    def __init__(self, ctx: ResolutionContext, degree: int, flavor: str, values=None,
                 domain_bound: int | None = None):
        if flavor not in (STANDARD, TWISTED):
            raise ValueError("flavor must be 'standard' or 'twisted'")
        self.ctx = ctx
        self.degree = degree
        self.flavor = flavor
        self.domain_bound = ctx.bound if domain_bound is None else int(domain_bound)
        clean = {}
        if values:
            for (exp, idx), v in values.items():
                v = vec(v)
                if len(v) != ctx.module.dim:
                    raise ValueError("value has wrong module dimension")
                if sum(exp) > self.domain_bound:
                    raise ValueError("monomial outside the stated domain")
                if any(x != 0 for x in v):
                    clean[(tuple(exp), tuple(idx))] = v
        self.values = clean

    def value(self, exp, idx) -> Vector:
        return self.values.get((tuple(exp), tuple(idx)), zero_vec(self.ctx.module.dim))

    def evaluate(self, u: UGElement, idx) -> Vector:
        """Value at an arbitrary element of the window (linear in u)."""
        if u.degree() > self.domain_bound:
            raise ValueError("element outside the evaluable window")
        out = zero_vec(self.ctx.module.dim)
        for exp, c in u.terms.items():
            out = vec_add(out, vec_scale(c, self.value(exp, idx)))
        return out

    def window_points(self, bound: int | None = None):
        b = self.domain_bound if bound is None else min(bound, self.domain_bound)
        for exp in self.ctx.monomials_of_degree_at_most(b):
            for idx in self.ctx.wedge(self.degree):
                yield exp, idx

    def restrict(self, new_bound: int) -> "TruncatedCochain":
        vals = {k: v for k, v in self.values.items() if sum(k[0]) <= new_bound}
        return TruncatedCochain(self.ctx, self.degree, self.flavor, vals, new_bound)

    def with_flavor(self, flavor: str) -> "TruncatedCochain":
        return TruncatedCochain(self.ctx, self.degree, flavor, self.values, self.domain_bound)

    def __add__(self, other: "TruncatedCochain") -> "TruncatedCochain":
        self._compatible(other)
        db = min(self.domain_bound, other.domain_bound)
        vals = {k: v for k, v in self.values.items() if sum(k[0]) <= db}
        for k, v in other.values.items():
            if sum(k[0]) <= db:
                vals[k] = vec_add(vals.get(k, zero_vec(self.ctx.module.dim)), v)
        return TruncatedCochain(self.ctx, self.degree, self.flavor, vals, db)

    def __sub__(self, other: "TruncatedCochain") -> "TruncatedCochain":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedCochain":
        c = Fraction(c)
        vals = {k: vec_scale(c, v) for k, v in self.values.items()}
        return TruncatedCochain(self.ctx, self.degree, self.flavor, vals, self.domain_bound)

    def equal_on_common_window(self, other: "TruncatedCochain") -> bool:
        self._compatible(other)
        db = min(self.domain_bound, other.domain_bound)
        for exp, idx in self.window_points(db):
            if self.value(exp, idx) != other.value(exp, idx):
                return False
        return True

    def is_zero_on_window(self) -> bool:
        return not self.values

    def _compatible(self, other: "TruncatedCochain"):
        if self.ctx is not other.ctx or self.degree != other.degree:
            raise ValueError("cochains from different windows or degrees")

    def __repr__(self):
        return (f"TruncatedCochain(degree={self.degree}, flavor={self.flavor}, "
                f"domain<= {self.domain_bound}, {len(self.values)} values)")


# -- augmentations -----------------------------------------------------------


def standard_augmentation(ctx: ResolutionContext, xi: Vector) -> TruncatedCochain:
    """Degree-0 standard cochain u -> u.xi."""
    vals = {}
    for exp in ctx.monomials:
        v = act(ctx.module, ctx.monomial(exp), vec(xi))
        vals[(exp, ())] = v
    return TruncatedCochain(ctx, 0, STANDARD, vals)


def twisted_augmentation(ctx: ResolutionContext, xi: Vector) -> TruncatedCochain:
    """Degree-0 twisted cochain: xi at the unit, zero on positive monomials."""
    return TruncatedCochain(ctx, 0, TWISTED, {(ctx.unit_exp, ()): vec(xi)})


# -- membership (the defining conditions of the two flavors) ----------------


def membership_report(f: TruncatedCochain) -> ValidationReport:
    """Exact check of the flavor's defining condition on the evaluable window."""
    ctx = f.ctx
    report = ValidationReport(f"{f.flavor}-membership")
    if ctx.p == 0:
        return report
    for j in range(ctx.p):
        y_gen = ctx.generator(ctx.q + j)
        rho_y = ctx.module.action[ctx.q + j]
        for exp in ctx.monomials_of_degree_at_most(f.domain_bound - 1):
            m = ctx.monomial(exp)
            for idx in ctx.wedge(f.degree):
                slot_sum = zero_vec(ctx.module.dim)
                for slot, a in enumerate(idx):
                    rest = idx[:slot] + idx[slot + 1 :]
                    slot_sign = 1 if slot % 2 == 0 else -1
                    for b in range(ctx.q):
                        c = ctx.h_action_entry(j, b, a)
                        if c == 0:
                            continue
                        ins = insert_index(b, rest)
                        if ins is None:
                            continue
                        sgn, new_idx = ins
                        slot_sum = vec_add(
                            slot_sum, vec_scale(c * sgn * slot_sign, f.value(exp, new_idx))
                        )
                if f.flavor == STANDARD:
                    lhs = rho_y.apply(f.value(exp, idx))
                    lhs = vec_add(lhs, vec_scale(-1, f.evaluate(multiply(y_gen, m), idx)))
                else:
                    lhs = f.evaluate(multiply(m, y_gen), idx)
                residual = vec_add(lhs, vec_scale(-1, slot_sum))
                if any(x != 0 for x in residual):
                    report.add((j, exp, idx), residual)
    return report


def _membership_rows(ctx: ResolutionContext, degree: int, flavor: str, coords: dict) -> list:
    """Linear constraint rows of the flavor condition over window coordinates."""
    rows = []
    de = ctx.module.dim
    if ctx.p == 0:
        return rows
    for j in range(ctx.p):
        y_gen = ctx.generator(ctx.q + j)
        rho_y = ctx.module.action[ctx.q + j]
        for exp in ctx.monomials_of_degree_at_most(ctx.bound - 1):
            m = ctx.monomial(exp)
            if flavor == STANDARD:
                shifted = multiply(y_gen, m)
            else:
                shifted = multiply(m, y_gen)
            for idx in ctx.wedge(degree):
                for r in range(de):
                    row = {}
                    if flavor == STANDARD:
                        for e in range(de):
                            c = rho_y.entry(r, e)
                            if c != 0:
                                col = coords[(exp, idx)] + e
                                row[col] = row.get(col, ZERO) + c
                        for sexp, sc in shifted.terms.items():
                            col = coords[(sexp, idx)] + r
                            row[col] = row.get(col, ZERO) - sc
                    else:
                        for sexp, sc in shifted.terms.items():
                            col = coords[(sexp, idx)] + r
                            row[col] = row.get(col, ZERO) + sc
                    for slot, a in enumerate(idx):
                        rest = idx[:slot] + idx[slot + 1 :]
                        slot_sign = 1 if slot % 2 == 0 else -1
                        for b in range(ctx.q):
                            c = ctx.h_action_entry(j, b, a)
                            if c == 0:
                                continue
                            ins = insert_index(b, rest)
                            if ins is None:
                                continue
                            sgn, new_idx = ins
                            col = coords[(exp, new_idx)] + r
                            row[col] = row.get(col, ZERO) - c * sgn * slot_sign
                    row = {c: v for c, v in row.items() if v != 0}
                    if row:
                        rows.append(row)
    return rows


def _window_coords(ctx: ResolutionContext, degree: int) -> dict:
    coords = {}
    pos = 0
    for exp in ctx.monomials:
        for idx in ctx.wedge(degree):
            coords[(exp, idx)] = pos
            pos += ctx.module.dim
    return coords


def _cochain_from_coords(ctx, degree, flavor, coords, vector) -> TruncatedCochain:
    de = ctx.module.dim
    vals = {}
    for (exp, idx), base in coords.items():
        v = tuple(vector[base + e] for e in range(de))
        if any(x != 0 for x in v):
            vals[(exp, idx)] = v
    return TruncatedCochain(ctx, degree, flavor, vals)


def membership_basis(ctx: ResolutionContext, degree: int, flavor: str) -> list:
    """Basis of the window cochains satisfying the flavor condition."""
    coords = _window_coords(ctx, degree)
    total = len(coords) * ctx.module.dim
    rows = _membership_rows(ctx, degree, flavor, coords)
    kernel = kernel_basis_of_rows(rows, total)
    return [_cochain_from_coords(ctx, degree, flavor, coords, v) for v in kernel]


def invariant_basis(ctx: ResolutionContext, degree: int, flavor: str) -> list:
    """Basis of the invariant cochains of the given flavor on the window.

    Standard flavor: kernel of (X.f)(u, xs) = f(uX, xs) together with the
    membership rows.  Twisted flavor: kernel of X.f(u, xs) - f(Xu, xs)
    with its membership rows.
    """
    coords = _window_coords(ctx, degree)
    total = len(coords) * ctx.module.dim
    rows = _membership_rows(ctx, degree, flavor, coords)
    de = ctx.module.dim
    n = ctx.algebra.dim
    for k in range(n):
        gen = ctx.generator(k)
        rho_k = ctx.module.action[k]
        for exp in ctx.monomials_of_degree_at_most(ctx.bound - 1):
            m = ctx.monomial(exp)
            if flavor == STANDARD:
                shifted = multiply(m, gen)
            else:
                shifted = multiply(gen, m)
            for idx in ctx.wedge(degree):
                for r in range(de):
                    row = {}
                    if flavor == STANDARD:
                        for sexp, sc in shifted.terms.items():
                            col = coords[(sexp, idx)] + r
                            row[col] = row.get(col, ZERO) + sc
                    else:
                        for e in range(de):
                            c = rho_k.entry(r, e)
                            if c != 0:
                                col = coords[(exp, idx)] + e
                                row[col] = row.get(col, ZERO) + c
                        for sexp, sc in shifted.terms.items():
                            col = coords[(sexp, idx)] + r
                            row[col] = row.get(col, ZERO) - sc
                    row = {c: v for c, v in row.items() if v != 0}
                    if row:
                        rows.append(row)
    kernel = kernel_basis_of_rows(rows, total)
    return [_cochain_from_coords(ctx, degree, flavor, coords, v) for v in kernel]


# -- coboundaries ------------------------------------------------------------


def coboundary(f: TruncatedCochain, signed_bracket_sum: bool = True) -> TruncatedCochain:
    """The degree-raising map of f's flavor; output domain shrinks by one.

    ``signed_bracket_sum=False`` reproduces the unsigned variant of the
    standard formula's bracket sum; it exists only so the regression guard
    can demonstrate that the complex property fails without the sign.
    """
    ctx = f.ctx
    n = f.degree
    new_bound = f.domain_bound - 1
    vals = {}
    for exp in ctx.monomials_of_degree_at_most(new_bound):
        m = ctx.monomial(exp)
        for jdx in ctx.wedge(n + 1):
            val = zero_vec(ctx.module.dim)
            for a in range(n + 1):
                rest = jdx[:a] + jdx[a + 1 :]
                gen = ctx.generator(jdx[a])
                if f.flavor == TWISTED:
                    sign = 1 if a % 2 == 0 else -1  # (-1)^(i+1), i = a+1
                    val = vec_add(val, vec_scale(sign, f.evaluate(multiply(m, gen), rest)))
                else:
                    sign = 1 if a % 2 == 0 else -1
                    rho = ctx.module.action[jdx[a]]
                    val = vec_add(val, vec_scale(sign, rho.apply(f.value(exp, rest))))
                    sign2 = -sign  # (-1)^i
                    val = vec_add(val, vec_scale(sign2, f.evaluate(multiply(gen, m), rest)))
            for a in range(n + 1):
                for b in range(a + 1, n + 1):
                    rest = tuple(x for t, x in enumerate(jdx) if t not in (a, b))
                    if signed_bracket_sum:
                        sign = 1 if (a + b) % 2 == 0 else -1  # (-1)^(i+j)
                    else:
                        sign = 1
                    wbar = ctx.bracket_class(jdx[a], jdx[b])
                    for c, coeff in enumerate(wbar):
                        if coeff == 0:
                            continue
                        ins = insert_index(c, rest)
                        if ins is None:
                            continue
                        s2, new_idx = ins
                        val = vec_add(val, vec_scale(sign * s2 * coeff, f.value(exp, new_idx)))
            if any(x != 0 for x in val):
                vals[(exp, jdx)] = val
    return TruncatedCochain(ctx, n + 1, f.flavor, vals, new_bound)


def flavor_action(f: TruncatedCochain, x: Vector) -> TruncatedCochain:
    """The module action of x in f's flavor; output domain shrinks by one.

    Standard: (x.f)(u, xs) = f(ux, xs).  Twisted: (x.f)(u, xs) =
    x.(f(u, xs)) - f(xu, xs).
    """
    ctx = f.ctx
    x_elem = UGElement.from_vector(ctx.algebra, ctx.bound, vec(x))
    rho_x = ctx.module.act_matrix(vec(x))
    new_bound = f.domain_bound - 1
    vals = {}
    for exp in ctx.monomials_of_degree_at_most(new_bound):
        m = ctx.monomial(exp)
        for idx in ctx.wedge(f.degree):
            if f.flavor == STANDARD:
                v = f.evaluate(multiply(m, x_elem), idx)
            else:
                v = rho_x.apply(f.value(exp, idx))
                v = vec_add(v, vec_scale(-1, f.evaluate(multiply(x_elem, m), idx)))
            if any(c != 0 for c in v):
                vals[(exp, idx)] = v
    return TruncatedCochain(ctx, f.degree, f.flavor, vals, new_bound)


# -- the two conversion maps (coproduct legs against the antipode) -----------


def twisted_to_standard(f: TruncatedCochain) -> TruncatedCochain:
    """Send a twisted cochain to the standard flavor, degree preserved.

    (Bf)(u, xs) = sum over coproduct legs of u.(1) acting on f(S(u.(2)), xs);
    both legs stay within the degree of u, so the full window survives.
    """
    if f.flavor != TWISTED:
        raise ValueError("expected a twisted cochain")
    return _leg_transform(f, STANDARD)


def standard_to_twisted(f: TruncatedCochain) -> TruncatedCochain:
    """Inverse of twisted_to_standard, given by the same formula."""
    if f.flavor != STANDARD:
        raise ValueError("expected a standard cochain")
    return _leg_transform(f, TWISTED)


def _leg_transform(f: TruncatedCochain, new_flavor: str) -> TruncatedCochain:
    ctx = f.ctx
    vals = {}
    for exp in ctx.monomials_of_degree_at_most(f.domain_bound):
        legs = coproduct(ctx.monomial(exp))
        for idx in ctx.wedge(f.degree):
            total = zero_vec(ctx.module.dim)
            for e1, e2, c in legs.legs():
                inner = f.evaluate(antipode(ctx.monomial(e2)), idx)
                if any(x != 0 for x in inner):
                    outer = act(ctx.module, ctx.monomial(e1), inner)
                    total = vec_add(total, vec_scale(c, outer))
            if any(x != 0 for x in total):
                vals[(exp, idx)] = total
    return TruncatedCochain(ctx, f.degree, new_flavor, vals, f.domain_bound)


# -- identification with the inhomogeneous complex ---------------------------


def invariant_to_inhomogeneous(f: TruncatedCochain) -> Vector:
    """Evaluate an invariant cochain at the unit monomial.

    Returns ambient coordinates for the inhomogeneous cochain space of the
    same degree (multi-index major, module coordinate minor).
    """
    ctx = f.ctx
    out = []
    for idx in ctx.wedge(f.degree):
        out.extend(f.value(ctx.unit_exp, idx))
    return tuple(out)


def inhomogeneous_to_invariant(ctx: ResolutionContext, degree: int, ambient: Vector,
                               flavor: str = STANDARD) -> TruncatedCochain:
    """Extend an equivariant cochain to an invariant window cochain.

    Standard flavor: f(u, xs) = eta(u) g(xs), supported at the unit.
    Twisted flavor: f(u, xs) = u.(g(xs)).
    """
    de = ctx.module.dim
    wedge = ctx.wedge(degree)
    if len(ambient) != len(wedge) * de:
        raise ValueError("ambient vector has wrong length")
    slices = {}
    for pos, idx in enumerate(wedge):
        slices[idx] = vec(ambient[pos * de : (pos + 1) * de])
    vals = {}
    if flavor == STANDARD:
        for idx, g in slices.items():
            if any(x != 0 for x in g):
                vals[(ctx.unit_exp, idx)] = g
    else:
        for exp in ctx.monomials:
            m = ctx.monomial(exp)
            for idx, g in slices.items():
                v = act(ctx.module, m, g)
                if any(x != 0 for x in v):
                    vals[(exp, idx)] = v
    return TruncatedCochain(ctx, degree, flavor, vals)


def inhomogeneous_complex(ctx: ResolutionContext) -> RelativeCochainComplex:
    """The matching inhomogeneous complex over the same quotient choice."""
    return RelativeCochainComplex(ctx.base_algebra, ctx.sub, ctx.base_module,
                                  warn_nonreductive=False)
