"""Truncated universal enveloping algebra with PBW normal form.

Elements are stored as rational combinations of normal monomials (exponent
tuples over the algebra basis) up to a fixed total degree bound.  Products
straighten out-of-order words via the defining relation xy - yx = [x,y];
each swap either fixes an inversion or strictly shortens the word, so
straightening terminates.  The coproduct, antipode and augmentation never
raise degrees, making them safe on every truncation window.  Products that
would leave the window raise TruncationOverflow; nothing is ever silently
truncated to zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .lie import LieAlgebra
from .linalg import Vector, vec_add, vec_scale, zero_vec

ZERO = Fraction(0)
ONE = Fraction(1)


class TruncationOverflow(Exception):
    """The result would have degree above the truncation bound."""


def monomials_up_to(dim: int, bound: int) -> list:
    """All exponent tuples with total degree <= bound, by (degree, lex)."""

    def gen(prefix, remaining, slots):
        if slots == 0:
            yield prefix
            return
        for e in range(remaining + 1):
            yield from gen(prefix + (e,), remaining - e, slots - 1)

    out = []
    for d in range(bound + 1):
        level = [m for m in gen((), d, dim) if sum(m) == d]
        level.sort()
        out.extend(level)
    return out


def word_of(exponents: tuple) -> tuple:
    """Expand an exponent tuple to the word of generator indices, ascending."""
    w = []
    for i, e in enumerate(exponents):
        w.extend([i] * e)
    return tuple(w)


def normalize_word(algebra: LieAlgebra, word: tuple, precedence: tuple | None = None) -> dict:
    """Straighten a word of basis indices into normal form.

    Returns {exponent tuple: coefficient}; the tuple denotes the product of
    generators in increasing ``precedence`` order (default: basis order).
    Results are memoized on the algebra.
    """
    if precedence is None:
        precedence = tuple(range(algebra.dim))
    cache = algebra._norm_cache.setdefault(precedence, {})

    def norm(w: tuple) -> dict:
        hit = cache.get(w)
        if hit is not None:
            return hit
        swap_at = None
        for t in range(len(w) - 1):
            if precedence[w[t]] > precedence[w[t + 1]]:
                swap_at = t
                break
        if swap_at is None:
            exp = [0] * algebra.dim
            for i in w:
                exp[i] += 1
            result = {tuple(exp): ONE}
            cache[w] = result
            return result
        t = swap_at
        a, b = w[t], w[t + 1]
        result = dict(norm(w[:t] + (b, a) + w[t + 2 :]))
        correction = algebra.basis_bracket(a, b)
        for k, c in enumerate(correction):
            if c != 0:
                for exp, coeff in norm(w[:t] + (k,) + w[t + 2 :]).items():
                    nv = result.get(exp, ZERO) + c * coeff
                    if nv == 0:
                        result.pop(exp, None)
                    else:
                        result[exp] = nv
        cache[w] = result
        return result

    return norm(tuple(word))


class UGElement:
    """Element of the enveloping algebra, truncated at PBW degree ``bound``."""

    __slots__ = ("algebra", "bound", "terms")

    def __init__(self, algebra: LieAlgebra, bound: int, terms=None):
        self.algebra = algebra
        self.bound = int(bound)
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != algebra.dim:
                    raise ValueError("exponent tuple length != algebra dim")
                if sum(exp) > self.bound:
                    raise TruncationOverflow(
                        f"monomial of degree {sum(exp)} above bound {self.bound}"
                    )
                clean[exp] = c
        self.terms = clean

    @classmethod
    def zero(cls, algebra, bound) -> "UGElement":
        return cls(algebra, bound, {})

    @classmethod
    def unit(cls, algebra, bound) -> "UGElement":
        return cls(algebra, bound, {(0,) * algebra.dim: ONE})

    @classmethod
    def generator(cls, algebra, bound, i: int) -> "UGElement":
        exp = [0] * algebra.dim
        exp[i] = 1
        return cls(algebra, bound, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, algebra, bound, exp, coeff=1) -> "UGElement":
        return cls(algebra, bound, {tuple(exp): Fraction(coeff)})

    @classmethod
    def from_vector(cls, algebra, bound, v: Vector) -> "UGElement":
        """Degree-one element with the given coordinates."""
        terms = {}
        for i, c in enumerate(v):
            if c != 0:
                exp = [0] * algebra.dim
                exp[i] = 1
                terms[tuple(exp)] = Fraction(c)
        return cls(algebra, bound, terms)

    def degree(self) -> int:
        """Maximal total degree of a stored monomial (0 for the zero element)."""
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "UGElement") -> "UGElement":
        self._compatible(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, ZERO) + c
        return UGElement(self.algebra, self.bound, terms)

    def __sub__(self, other: "UGElement") -> "UGElement":
        return self + other.scale(-1)

    def scale(self, c) -> "UGElement":
        c = Fraction(c)
        return UGElement(self.algebra, self.bound, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UGElement):
            return NotImplemented
        return (self.algebra, self.bound, self.terms) == (other.algebra, other.bound, other.terms)

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.terms.items()))))

    def _compatible(self, other: "UGElement"):
        if self.algebra != other.algebra or self.bound != other.bound:
            raise ValueError("elements live in different truncated algebras")

    def __repr__(self):
        return f"UGElement(bound={self.bound}, {len(self.terms)} terms)"


def multiply(u: UGElement, v: UGElement) -> UGElement:
    """Exact product; raises TruncationOverflow if it cannot be represented."""
    u._compatible(v)
    if u.is_zero() or v.is_zero():
        return UGElement.zero(u.algebra, u.bound)
    if u.degree() + v.degree() > u.bound:
        raise TruncationOverflow(
            f"product degree {u.degree()} + {v.degree()} exceeds bound {u.bound}"
        )
    terms = {}
    for e1, c1 in u.terms.items():
        w1 = word_of(e1)
        for e2, c2 in v.terms.items():
            for exp, c in normalize_word(u.algebra, w1 + word_of(e2)).items():
                nv = terms.get(exp, ZERO) + c1 * c2 * c
                if nv == 0:
                    terms.pop(exp, None)
                else:
                    terms[exp] = nv
    return UGElement(u.algebra, u.bound, terms)


def augmentation(u: UGElement) -> Fraction:
    """The coefficient of the empty monomial; an algebra morphism to Q."""
    return u.terms.get((0,) * u.algebra.dim, ZERO)


class TensorSquareElement:
    """Element of the truncated tensor square, terms (exp, exp) -> coefficient."""

    __slots__ = ("algebra", "bound", "terms")

    def __init__(self, algebra, bound, terms=None):
        self.algebra = algebra
        self.bound = int(bound)
        clean = {}
        if terms:
            for (e1, e2), c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if sum(e1) > bound or sum(e2) > bound:
                    raise TruncationOverflow("tensor leg above bound")
                clean[(tuple(e1), tuple(e2))] = c
        self.terms = clean

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return TensorSquareElement(self.algebra, self.bound, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return TensorSquareElement(self.algebra, self.bound, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return (self.algebra, self.bound, self.terms) == (other.algebra, other.bound, other.terms)

    def __hash__(self):
        return hash((self.bound, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def legs(self):
        """Iterate (left UGElement-monomial data) pairs: (e1, e2, coeff)."""
        for (e1, e2), c in self.terms.items():
            yield e1, e2, c

    def __repr__(self):
        return f"TensorSquareElement(bound={self.bound}, {len(self.terms)} terms)"


def tensor_multiply(a: TensorSquareElement, b: TensorSquareElement) -> TensorSquareElement:
    """Legwise product in the tensor square algebra."""
    terms = {}
    alg = a.algebra
    for (a1, a2), ca in a.terms.items():
        for (b1, b2), cb in b.terms.items():
            left = normalize_word(alg, word_of(a1) + word_of(b1))
            right = normalize_word(alg, word_of(a2) + word_of(b2))
            for e1, c1 in left.items():
                if sum(e1) > a.bound:
                    raise TruncationOverflow("tensor product leg exceeds bound")
                for e2, c2 in right.items():
                    if sum(e2) > a.bound:
                        raise TruncationOverflow("tensor product leg exceeds bound")
                    key = (e1, e2)
                    nv = terms.get(key, ZERO) + ca * cb * c1 * c2
                    if nv == 0:
                        terms.pop(key, None)
                    else:
                        terms[key] = nv
    return TensorSquareElement(alg, a.bound, terms)


def coproduct(u: UGElement) -> TensorSquareElement:
    """The coproduct with primitive generators, split monomial by monomial.

    On a normal monomial the generator coproducts multiply out to a binomial
    sum over exponent splits; both legs stay within the original degree.
    """
    terms = {}
    n = u.algebra.dim
    for exp, c in u.terms.items():
        splits = [()]
        for e in exp:
            splits = [s + (a,) for s in splits for a in range(e + 1)]
        for left in splits:
            right = tuple(e - a for e, a in zip(exp, left))
            weight = ONE
            for e, a in zip(exp, left):
                weight *= comb(e, a)
            key = (left, right)
            nv = terms.get(key, ZERO) + c * weight
            if nv == 0:
                terms.pop(key, None)
            else:
                terms[key] = nv
    return TensorSquareElement(u.algebra, u.bound, terms)


def antipode(u: UGElement) -> UGElement:
    """The anti-automorphism sending each generator to its negative."""
    terms = {}
    for exp, c in u.terms.items():
        w = word_of(exp)
        sign = ONE if len(w) % 2 == 0 else -ONE
        for e, coeff in normalize_word(u.algebra, tuple(reversed(w))).items():
            nv = terms.get(e, ZERO) + sign * c * coeff
            if nv == 0:
                terms.pop(e, None)
            else:
                terms[e] = nv
    return UGElement(u.algebra, u.bound, terms)


def act(module, u: UGElement, xi: Vector) -> Vector:
    """Extend the module action multiplicatively, leftmost generator outermost."""
    if module.algebra != u.algebra:
        raise ValueError("module and element live over different algebras")
    out = zero_vec(module.dim)
    for exp, c in u.terms.items():
        v = tuple(xi)
        for i in reversed(word_of(exp)):
            v = module.action[i].apply(v)
        out = vec_add(out, vec_scale(c, v))
    return out


def pbw_projection(u: UGElement, t: tuple, h_algebra: LieAlgebra) -> UGElement:
    """Extract the subalgebra factor of the monomials with complement part t.

    Assumes the basis is ordered complement-first; the first len(t)
    positions are complement exponents, the rest subalgebra exponents.
    """
    q = u.algebra.dim - h_algebra.dim
    if len(t) != q:
        raise ValueError(f"multi-exponent length {len(t)} != complement size {q}")
    t = tuple(int(x) for x in t)
    terms = {}
    for exp, c in u.terms.items():
        if exp[:q] == t:
            terms[exp[q:]] = terms.get(exp[q:], ZERO) + c
    return UGElement(h_algebra, u.bound, terms)


def complement_exponents(u: UGElement, q: int) -> list:
    """The distinct complement multi-exponents appearing in u, sorted."""
    return sorted({exp[:q] for exp in u.terms})


def inject_subalgebra_element(y: UGElement, algebra: LieAlgebra, bound: int, q: int) -> UGElement:
    """View an element of the truncated subalgebra as one of the big algebra."""
    terms = {}
    for exp, c in y.terms.items():
        terms[(0,) * q + exp] = c
    return UGElement(algebra, bound, terms)


# -- Hopf axiom checks (exact, used by tests and the verify command) --------


def check_counit(u: UGElement) -> bool:
    """(eta x id) and (id x eta) of the coproduct both give back u."""
    left = {}
    right = {}
    zero_exp = (0,) * u.algebra.dim
    for e1, e2, c in coproduct(u).legs():
        if e1 == zero_exp:
            left[e2] = left.get(e2, ZERO) + c
        if e2 == zero_exp:
            right[e1] = right.get(e1, ZERO) + c
    left = {k: v for k, v in left.items() if v != 0}
    right = {k: v for k, v in right.items() if v != 0}
    return left == u.terms and right == u.terms


def check_coassociativity(u: UGElement) -> bool:
    """Compare the two refinements of the coproduct into triple tensors."""
    first = {}
    for e1, e2, c in coproduct(u).legs():
        inner = coproduct(UGElement.monomial(u.algebra, u.bound, e1))
        for f1, f2, c2 in inner.legs():
            key = (f1, f2, e2)
            first[key] = first.get(key, ZERO) + c * c2
    second = {}
    for e1, e2, c in coproduct(u).legs():
        inner = coproduct(UGElement.monomial(u.algebra, u.bound, e2))
        for f1, f2, c2 in inner.legs():
            key = (e1, f1, f2)
            second[key] = second.get(key, ZERO) + c * c2
    first = {k: v for k, v in first.items() if v != 0}
    second = {k: v for k, v in second.items() if v != 0}
    return first == second


def check_antipode_identity(u: UGElement) -> bool:
    """m(S x id)Delta(u) = eta(u) 1 = m(id x S)Delta(u)."""
    target = UGElement.unit(u.algebra, u.bound).scale(augmentation(u))
    acc1 = UGElement.zero(u.algebra, u.bound)
    acc2 = UGElement.zero(u.algebra, u.bound)
    for e1, e2, c in coproduct(u).legs():
        m1 = UGElement.monomial(u.algebra, u.bound, e1)
        m2 = UGElement.monomial(u.algebra, u.bound, e2)
        acc1 = acc1 + multiply(antipode(m1), m2).scale(c)
        acc2 = acc2 + multiply(m1, antipode(m2)).scale(c)
    return acc1 == target and acc2 == target


def check_coproduct_multiplicative(u: UGElement, v: UGElement) -> bool:
    """Delta(uv) = Delta(u)Delta(v) whenever the product stays in the window."""
    return coproduct(multiply(u, v)) == tensor_multiply(coproduct(u), coproduct(v))


def check_antipode_involutive(u: UGElement) -> bool:
    return antipode(antipode(u)) == u


def check_pbw_decomposition(u: UGElement, h_algebra: LieAlgebra) -> bool:
    """u equals the sum of complement monomials times projected factors."""
    q = u.algebra.dim - h_algebra.dim
    acc = UGElement.zero(u.algebra, u.bound)
    for t in complement_exponents(u, q):
        xt = UGElement.monomial(u.algebra, u.bound, t + (0,) * h_algebra.dim)
        part = inject_subalgebra_element(pbw_projection(u, t, h_algebra), u.algebra, u.bound, q)
        acc = acc + multiply(xt, part)
    return acc == u


def check_act_multiplicative(module, u: UGElement, v: UGElement, xi: Vector) -> bool:
    """act(uv, xi) = act(u, act(v, xi)) within the window."""
    return act(module, multiply(u, v), xi) == act(module, u, act(module, v, xi))
