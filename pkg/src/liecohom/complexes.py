"""Finite cochain complexes, homology, and explicit contracting homotopies.

A FiniteComplex is a run of finite-dimensional spaces with composable maps
whose consecutive compositions vanish.  For exact complexes a contracting
homotopy is constructed by explicit splittings: project onto each kernel
along a deterministically chosen complement, invert the induced map on a
deterministically chosen set of independent rows, and compose.  The
construction is post-verified, so a returned homotopy always satisfies
the two defining identities exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .lie import ValidationReport
from .linalg import (
    RationalMatrix,
    Subspace,
    complement_indices,
    kernel_basis,
    rank,
    unit_vec,
)

ZERO = Fraction(0)


class NotExact(Exception):
    """The complex has nonzero homology at ``degree`` (position in spaces)."""

    def __init__(self, degree: int, dim: int):
        self.degree = degree
        self.dim = dim
        super().__init__(f"complex is not exact: homology of dimension {dim} at position {degree}")


class NotInjectiveAugmentation(Exception):
    """The first map of the complex has a nontrivial kernel."""


class FiniteComplex:
    """spaces[i] is a dimension; maps[i] sends spaces[i] to spaces[i+1].

    Consecutive compositions must vanish (checked at construction).  The
    first space conventionally holds the coefficient module and the first
    map its augmentation, but nothing in the machinery depends on that
    reading.
    """

    def __init__(self, spaces, maps, check: bool = True):
        self.spaces = tuple(int(d) for d in spaces)
        self.maps = tuple(maps)
        if len(self.maps) != max(len(self.spaces) - 1, 0):
            raise ValueError("need exactly one map between consecutive spaces")
        for i, m in enumerate(self.maps):
            if m.cols != self.spaces[i] or m.rows != self.spaces[i + 1]:
                raise ValueError(f"map {i} has shape {m.rows}x{m.cols}, expected "
                                 f"{self.spaces[i + 1]}x{self.spaces[i]}")
        if check:
            report = verify_complex(self)
            if not report.passed:
                raise ValueError(f"not a complex: composition fails at {[c for c, _ in report.failures]}")

    @classmethod
    def unchecked(cls, spaces, maps) -> "FiniteComplex":
        return cls(spaces, maps, check=False)

    def __len__(self):
        return len(self.spaces)

    def __repr__(self):
        return f"FiniteComplex(spaces={list(self.spaces)})"


def verify_complex(cx: FiniteComplex) -> ValidationReport:
    """Report every consecutive pair whose composition is nonzero."""
    report = ValidationReport("complex-composition")
    for i in range(len(cx.maps) - 1):
        comp = cx.maps[i + 1] @ cx.maps[i]
        if not comp.is_zero():
            report.add(i, comp)
    return report


def homology_dims(cx: FiniteComplex) -> list:
    """One dimension per space: ker(outgoing) / im(incoming)."""
    out = []
    for i, d in enumerate(cx.spaces):
        if i < len(cx.maps):
            ker = d - rank(cx.maps[i])
        else:
            ker = d
        if i > 0:
            ker -= rank(cx.maps[i - 1])
        out.append(ker)
    return out


class ContractingHomotopy:
    """Maps s[l]: spaces[l+1] -> spaces[l] certifying exactness."""

    def __init__(self, maps):
        self.maps = tuple(maps)

    def __repr__(self):
        return f"ContractingHomotopy({len(self.maps)} maps)"


def verify_homotopy(cx: FiniteComplex, homotopy: ContractingHomotopy) -> ValidationReport:
    """Check the homotopy identities exactly, reporting failing positions.

    Position 0: s0 . d0 = id on the first space.  Position i in the middle:
    s_i . d_i + d_{i-1} . s_{i-1} = id.  Last position: d_last . s_last = id.
    """
    report = ValidationReport("contracting-homotopy")
    s = homotopy.maps
    if len(s) != len(cx.maps):
        report.add("shape", f"expected {len(cx.maps)} homotopy maps, got {len(s)}")
        return report
    for l, m in enumerate(s):
        if m.rows != cx.spaces[l] or m.cols != cx.spaces[l + 1]:
            report.add(("shape", l), f"{m.rows}x{m.cols}")
    if not report.passed:
        return report
    n = len(cx.spaces)
    for i in range(n):
        acc = RationalMatrix.zero(cx.spaces[i], cx.spaces[i])
        if i < len(cx.maps):
            acc = acc + (s[i] @ cx.maps[i])
        if i > 0:
            acc = acc + (cx.maps[i - 1] @ s[i - 1])
        residual = acc - RationalMatrix.identity(cx.spaces[i])
        if not residual.is_zero():
            report.add(i, residual)
    return report


def _kernel_projection(m: RationalMatrix):
    """Split the domain of m along ker(m): returns (proj, comp_cols, comp_idx).

    proj projects ambient vectors onto ker(m) along the span of the chosen
    standard complement vectors; comp_cols holds those standard vectors as
    a matrix (the realization of domain/ker), comp_idx their indices.
    """
    n = m.cols
    ker = kernel_basis(m)
    comp_idx = complement_indices(Subspace(n, ker))
    cols = [k for k in ker] + [unit_vec(n, i) for i in comp_idx]
    if not cols:
        return RationalMatrix.zero(n, n), RationalMatrix.zero(n, 0), []
    basis = RationalMatrix.from_cols(cols, rows=n)
    from .linalg import invert

    inv = invert(basis)
    # kernel-part reconstruction: K @ (top rows of inv)
    kdim = len(ker)
    if kdim:
        kmat = RationalMatrix.from_cols(ker, rows=n)
        top = RationalMatrix(kdim, n, {(i, j): v for (i, j), v in inv.entries.items() if i < kdim})
        proj = kmat @ top
    else:
        proj = RationalMatrix.zero(n, n)
    comp_cols = (
        RationalMatrix.from_cols([unit_vec(n, i) for i in comp_idx], rows=n)
        if comp_idx
        else RationalMatrix.zero(n, 0)
    )
    return proj, comp_cols, comp_idx


def _left_inverse_on_image(m: RationalMatrix) -> RationalMatrix:
    """A deterministic left inverse of an injective matrix.

    Picks the first independent rows in increasing order, inverts that
    square block, and pads with zero columns elsewhere.
    """
    r = m.cols
    # independent rows of m = pivot columns of the transpose
    from .linalg import _echelon_of  # deterministic pivot scan

    _, piv = _echelon_of(m.transpose())
    rows_sel = piv  # indices of independent rows of m
    if len(rows_sel) != r:
        raise ValueError("matrix is not injective")
    block = RationalMatrix(
        r, r, {(k, j): m.entry(i, j) for k, i in enumerate(rows_sel) for j in range(r) if m.entry(i, j) != 0}
    )
    from .linalg import invert

    blockinv = invert(block)
    # compose with the row selector
    ent = {}
    for (i, j), v in blockinv.entries.items():
        ent[(i, rows_sel[j])] = v
    return RationalMatrix(r, m.rows, ent)


def build_contracting_homotopy(cx: FiniteComplex) -> ContractingHomotopy:
    """Construct the explicit homotopy for an exact finite complex.

    Raises NotInjectiveAugmentation if the first map has a kernel and
    NotExact at the first later position with nonzero homology.  The
    returned maps are post-verified against the homotopy identities.
    """
    dims = homology_dims(cx)
    if dims and dims[0] != 0:
        raise NotInjectiveAugmentation(f"first map has kernel of dimension {dims[0]}")
    for i, d in enumerate(dims):
        if d != 0:
            raise NotExact(i, d)

    nmaps = len(cx.maps)
    # per degree l (position of the map), split the domain along the kernel
    projections = []
    comp_cols = []
    for l in range(nmaps):
        proj, comp, _ = _kernel_projection(cx.maps[l])
        projections.append(proj)
        comp_cols.append(comp)
    # alpha at the top space: everything is in the kernel of the zero map out
    top_dim = cx.spaces[-1]

    s_maps = []
    for l in range(nmaps):
        # beta for position l: im(maps[l-1]... ) -> spaces[l]; here expressed
        # as a map defined on all of spaces[l+1] that is exact on the image
        dbar = cx.maps[l] @ comp_cols[l]  # spaces[l+1] x r, injective
        sigma = (
            _left_inverse_on_image(dbar)
            if dbar.cols
            else RationalMatrix.zero(0, cx.spaces[l + 1])
        )
        gbar = comp_cols[l] - (projections[l] @ comp_cols[l])
        beta = gbar @ sigma  # spaces[l+1] -> spaces[l]
        # alpha on spaces[l+1]: projection onto the kernel of the next map
        if l + 1 < nmaps:
            alpha_next = projections[l + 1]
        else:
            alpha_next = RationalMatrix.identity(top_dim)
        s_maps.append(beta @ alpha_next)

    homotopy = ContractingHomotopy(s_maps)
    check = verify_homotopy(cx, homotopy)
    if not check.passed:
        raise AssertionError(f"internal error: constructed homotopy fails at {[c for c, _ in check.failures]}")
    return homotopy


def compare_resolutions(c1: FiniteComplex, c2: FiniteComplex) -> dict:
    """Per-degree homology dimensions of both complexes and an equality verdict."""
    h1 = homology_dims(c1)
    h2 = homology_dims(c2)
    n = max(len(h1), len(h2))
    p1 = h1 + [0] * (n - len(h1))
    p2 = h2 + [0] * (n - len(h2))
    return {"homology_1": h1, "homology_2": h2, "equal": p1 == p2}


def complex_to_json(cx: FiniteComplex) -> dict:
    from .serialize import matrix_to_json

    return {"spaces": list(cx.spaces), "maps": [matrix_to_json(m) for m in cx.maps]}


def complex_from_json(data) -> FiniteComplex:
    from .serialize import matrix_from_json

    try:
        spaces = [int(d) for d in data["spaces"]]
        maps = [matrix_from_json(m) for m in data["maps"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad complex object: {exc}") from exc
    return FiniteComplex(spaces, maps)
