"""Grothendieck group bookkeeping in the basis of simple modules.

Integer matrices act on column vectors: column ``j`` is the image of ``[S_j]``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra
from .complex import ComplexRep, _ensure_complex, cohomology_all
from .derived import derived_tensor
from .module import ModuleRep, injectives, projectives, radical_of, simples

IntMatrix = list[list[int]]


class NotInvertible(ValueError):
    pass


def class_of(m: ModuleRep) -> list[int]:
    """Composition multiplicities, read off the radical layers vertex by vertex."""
    verts = m.algebra.vertices
    out = [0] * len(verts)
    cur = m
    while cur.dim:
        rad, _ = radical_of(cur)
        for i, v in enumerate(verts):
            out[i] += cur.d(v) - rad.d(v)
        if rad.dim == cur.dim:
            raise ValueError("radical filtration does not descend")
        cur = rad
    return out


def class_of_complex(c) -> list[int]:
    c = _ensure_complex(c)
    out = [0] * len(c.algebra.vertices)
    for p, h in cohomology_all(c).items():
        sign = -1 if p % 2 else 1
        for i, x in enumerate(class_of(h)):
            out[i] += sign * x
    return out


def euler_dims(c: ComplexRep) -> list[int]:
    """Alternating sum of the term classes (equals class_of_complex)."""
    out = [0] * len(c.algebra.vertices)
    for p, m in c.terms.items():
        sign = -1 if p % 2 else 1
        for i, v in enumerate(c.algebra.vertices):
            out[i] += sign * m.d(v)
    return out


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(r) for r in zip(*a)] if a else []


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def neg(a: IntMatrix) -> IntMatrix:
    return [[-x for x in r] for r in a]


def _columns(cols: list[list[int]]) -> IntMatrix:
    return transpose(cols)


def int_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse over Z; raises if a is not unimodular."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise NotInvertible("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    inv = [r[n:] for r in m]
    if any(x.denominator != 1 for r in inv for x in r):
        raise NotInvertible("inverse is not integral")
    return [[int(x) for x in r] for r in inv]


def cartan_matrix(a: Algebra) -> IntMatrix:
    """Column i is [P_i] in the simple basis."""
    return _columns([class_of(p) for p in projectives(a)])


def injective_classes(a: Algebra) -> IntMatrix:
    return _columns([class_of(i) for i in injectives(a)])


def coxeter(a: Algebra) -> IntMatrix:
    """The map [P_i] -> -[I_i]; equals -C^T C^{-1}, checked exactly against the injectives."""
    C = cartan_matrix(a)
    c = neg(matmul(transpose(C), int_inverse(C)))
    if matmul(c, C) != neg(injective_classes(a)):
        raise ArithmeticError("Coxeter matrix does not send [P_i] to -[I_i]")
    return c


def matrix_order(m: IntMatrix, bound: int = 1000) -> int | None:
    n = len(m)
    I = identity(n)
    cur = m
    for k in range(1, bound + 1):
        if cur == I:
            return k
        cur = matmul(cur, m)
    return None


def chi0_of(t) -> IntMatrix:
    """Column j is the class of T (x)^L S_j."""
    from .morita import DPicElement, _require
    c = t.complex if isinstance(t, DPicElement) else _ensure_complex(t)
    if isinstance(t, DPicElement):
        _require(t)
    k = c.algebra.nfactors // 2
    a = c.algebra.restrict(range(k))
    return _columns([class_of_complex(derived_tensor(c, s, k)) for s in simples(a)])


def display(m: IntMatrix) -> IntMatrix:
    """Row i lists the image of the i-th basis vector (the layout used in the literature)."""
    return transpose(m)


def format_matrix(m: IntMatrix) -> str:
    if not m:
        return "[]"
    w = max(len(str(x)) for r in m for x in r)
    return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in m)
