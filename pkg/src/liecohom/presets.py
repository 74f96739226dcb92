"""Built-in algebra, module and subalgebra presets.

Names accepted by the CLI and the loaders:

* algebras: ``abelian:n``, ``heisenberg3``, ``sl2``, ``so3``, ``filiform:n``
* modules:  ``trivial:d``, ``adjoint``, ``natural`` (sl2 and so3 only)
* subalgebras: ``zero``, ``full``, ``compact`` (sl2: span of E - F),
  or a comma-separated list of basis indices like ``0,2``
"""

from __future__ import annotations

from fractions import Fraction

from .lie import LieAlgebra, Subalgebra, full_subalgebra, zero_subalgebra
from .linalg import RationalMatrix, unit_vec
from .modules import GModule, adjoint_module, trivial_module


def _sparse(dim, **at):
    v = [Fraction(0)] * dim
    for k, x in at.items():
        v[int(k[1:])] = Fraction(x)
    return tuple(v)


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValueError("abelian:n needs n >= 1")
    return LieAlgebra(n, {}, [f"A{i + 1}" for i in range(n)])


def heisenberg3() -> LieAlgebra:
    # [X, Y] = Z
    return LieAlgebra(3, {(0, 1): _sparse(3, _2=1)}, ["X", "Y", "Z"])


def sl2() -> LieAlgebra:
    # [H, E] = 2E, [H, F] = -2F, [E, F] = H
    structure = {
        (0, 1): _sparse(3, _1=2),
        (0, 2): _sparse(3, _2=-2),
        (1, 2): _sparse(3, _0=1),
    }
    return LieAlgebra(3, structure, ["H", "E", "F"])


def so3() -> LieAlgebra:
    # [X, Y] = Z, [Y, Z] = X, [Z, X] = Y
    structure = {
        (0, 1): _sparse(3, _2=1),
        (1, 2): _sparse(3, _0=1),
        (0, 2): _sparse(3, _1=-1),
    }
    return LieAlgebra(3, structure, ["X", "Y", "Z"])


def filiform(n: int) -> LieAlgebra:
    """The model filiform nilpotent algebra: [X1, Xi] = X_{i+1}, 2 <= i < n."""
    if n < 3:
        raise ValueError("filiform:n needs n >= 3")
    structure = {}
    for i in range(1, n - 1):
        structure[(0, i)] = _sparse(n, **{f"_{i + 1}": 1})
    return LieAlgebra(n, structure, [f"X{i + 1}" for i in range(n)])


def algebra_preset(name: str) -> LieAlgebra:
    name = name.strip()
    if name.startswith("abelian:"):
        return abelian(int(name.split(":", 1)[1]))
    if name.startswith("filiform:"):
        return filiform(int(name.split(":", 1)[1]))
    table = {"heisenberg3": heisenberg3, "sl2": sl2, "so3": so3}
    if name in table:
        return table[name]()
    raise KeyError(f"unknown algebra preset {name!r}")


ALGEBRA_PRESET_NAMES = ("abelian:n", "heisenberg3", "sl2", "so3", "filiform:n")


def natural_module(algebra: LieAlgebra) -> GModule:
    """The defining representation, for the sl2 and so3 presets."""
    names = algebra.basis_names
    if names == ("H", "E", "F"):
        h = RationalMatrix.from_rows([[1, 0], [0, -1]])
        e = RationalMatrix.from_rows([[0, 1], [0, 0]])
        f = RationalMatrix.from_rows([[0, 0], [1, 0]])
        return GModule(algebra, [h, e, f])
    if names == ("X", "Y", "Z") and algebra.structure.get((1, 2)) is not None:
        # so3: the vector representation coincides with the adjoint one
        return adjoint_module(algebra)
    raise KeyError("natural module is only defined for the sl2 and so3 presets")


def module_preset(name: str, algebra: LieAlgebra) -> GModule:
    name = name.strip()
    if name.startswith("trivial:"):
        return trivial_module(algebra, int(name.split(":", 1)[1]))
    if name == "trivial":
        return trivial_module(algebra, 1)
    if name == "adjoint":
        return adjoint_module(algebra)
    if name == "natural":
        return natural_module(algebra)
    raise KeyError(f"unknown module preset {name!r}")


MODULE_PRESET_NAMES = ("trivial:d", "adjoint", "natural")


def subalgebra_preset(name: str, algebra: LieAlgebra) -> Subalgebra:
    name = name.strip()
    if name in ("zero", "0", ""):
        return zero_subalgebra(algebra)
    if name == "full":
        return full_subalgebra(algebra)
    if name == "compact":
        if algebra.basis_names != ("H", "E", "F"):
            raise KeyError("the 'compact' subalgebra preset is defined for sl2 only")
        span = [tuple(Fraction(c) for c in (0, 1, -1))]
        return Subalgebra(algebra, span)
    if all(part.strip().lstrip("-").isdigit() for part in name.split(",")):
        idx = [int(p) for p in name.split(",")]
        return Subalgebra(algebra, [unit_vec(algebra.dim, i) for i in idx])
    raise KeyError(f"unknown subalgebra preset {name!r}")
