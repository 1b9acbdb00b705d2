import pytest

from dmorita.algebra import path_algebra, QuiverSpec, triangular
from dmorita.complex import as_complex, shift
from dmorita.exactlin import QQ
from dmorita.ktheory import (
    NotInvertible, cartan_matrix, chi0_of, class_of, class_of_complex, coxeter, display,
    identity, injective_classes, int_inverse, matmul, matrix_order, neg,
)
from dmorita.module import interval_module, projectives, simples
from dmorita.morita import dual_complex_of, is_tilting, shift_element


def e(n, i):
    return [int(j == i) for j in range(n)]


def test_class_examples():
    a = triangular(4)
    for i, s in enumerate(simples(a)):
        assert class_of(s) == e(4, i)
    assert class_of(projectives(triangular(2))[1]) == [1, 1]
    for i in range(1, 5):
        for j in range(i, 5):
            assert class_of(interval_module(a, i, j)) == [int(i <= l + 1 <= j) for l in range(4)]


def test_complex_classes():
    a = triangular(3)
    p = projectives(a)[2]
    assert class_of_complex(as_complex(p)) == class_of(p)
    assert class_of_complex(shift(as_complex(p), 1)) == [-x for x in class_of(p)]
    from dmorita.complex import ComplexRep
    from dmorita.module import identity_hom
    exact = ComplexRep(a, {0: p, 1: p}, {0: identity_hom(p)})
    assert class_of_complex(exact) == [0, 0, 0]


def test_cartan_and_coxeter_t2():
    a = triangular(2)
    assert cartan_matrix(a) == [[1, 1], [0, 1]]
    c = coxeter(a)
    assert matmul(c, cartan_matrix(a)) == neg(injective_classes(a))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_coxeter_order(n):
    assert matrix_order(coxeter(triangular(n))) == n + 1


def test_int_inverse():
    m = [[2, 1], [1, 1]]
    assert matmul(m, int_inverse(m)) == identity(2)
    with pytest.raises(NotInvertible):
        int_inverse([[2, 0], [0, 1]])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_chi0(n):
    a = triangular(n)
    assert chi0_of(shift_element(a, 1)) == neg(identity(n))
    _, t = is_tilting(dual_complex_of(a))
    assert chi0_of(t) == neg(coxeter(a))


def test_chi0_display_t2():
    a = triangular(2)
    _, t = is_tilting(dual_complex_of(a))
    assert display(chi0_of(t)) == [[1, 1], [-1, 0]]


def test_coxeter_on_other_quiver():
    # A_3 with a non-linear orientation still has Coxeter order 4 (Dynkin type A_3)
    a = path_algebra(QuiverSpec(3, [(0, 1), (2, 1)], []), QQ)
    assert matrix_order(coxeter(a)) == 4
