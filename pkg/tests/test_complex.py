import pytest

from _gen import intertwines
from dmorita.algebra import opposite, triangular
from dmorita.complex import (
    ComplexMap, ComplexRep, NotAComplex, as_complex, cohomology, cohomology_all, cone, hom_total,
    is_acyclic, shift, tensor_total,
)
from dmorita.exactlin import QQ, parse_field
from dmorita.module import (
    direct_sum, hom_dim, hom_space, identity_hom, is_isomorphic, projectives, regular_bimodule,
    regular_module, simples, tensor_over,
)

F101 = parse_field("fp:101")


def iso(m, n):
    v = is_isomorphic(m, n)
    return v.status == "yes" and intertwines(v.witness)


def inclusion_complex(F=QQ, lo=0):
    """0 -> P_1 -> P_2 -> 0 with the inclusion, P_2 in degree lo + 1."""
    a = triangular(2, F)
    P = projectives(a)
    inc, = hom_space(P[0], P[1])
    return a, ComplexRep(a, {lo: P[0], lo + 1: P[1]}, {lo: inc})


def test_zero_differential_cohomology_is_terms():
    a = triangular(3)
    P = projectives(a)
    c = ComplexRep(a, {0: P[0], 1: P[2]})
    hs = cohomology_all(c)
    assert iso(hs[0], P[0]) and iso(hs[1], P[2])


@pytest.mark.parametrize("F", [QQ, F101])
def test_inclusion_has_simple_cokernel(F):
    a, c = inclusion_complex(F)
    hs = cohomology_all(c)
    assert list(hs) == [1]
    assert iso(hs[1], simples(a)[1])


def test_identity_complex_is_acyclic():
    a = triangular(2)
    m = projectives(a)[1]
    c = ComplexRep(a, {0: m, 1: m}, {0: identity_hom(m)})
    assert is_acyclic(c)


def test_bad_differential_rejected():
    a = triangular(2)
    m = projectives(a)[1]
    with pytest.raises(NotAComplex):
        ComplexRep(a, {0: m, 1: m, 2: m}, {0: identity_hom(m), 1: identity_hom(m)})


def test_shift_conventions():
    a, c = inclusion_complex()
    assert shift(c, 0).terms == c.terms
    back = shift(shift(c, 1), -1)
    assert back.degrees() == c.degrees()
    assert all(back.d(p).matrix == c.d(p).matrix for p in c.diffs)
    m = simples(a)[0]
    assert shift(as_complex(m), 1).degrees() == [-1]
    s = shift(c, 1)
    # differential sign flips under odd shifts
    assert s.d(-1).matrix == c.d(0).matrix.scale(QQ(-1))
    for p, h in cohomology_all(c).items():
        assert iso(cohomology(s, p - 1), h)


def test_cone_examples():
    a, c = inclusion_complex()
    ident = ComplexMap(c, c, {p: identity_hom(c.term(p)) for p in c.terms})
    assert ident.is_chain_map()
    assert is_acyclic(cone(ident))
    z = ComplexRep(a, {})
    cz = cone(ComplexMap(z, c, {}))
    assert cz.degrees() == c.degrees()
    assert all(iso(cohomology(cz, p), cohomology(c, p)) for p in c.degrees())
    # cone(P_1 -> P_2) as a map of modules in degree 0 has H^0 = S_2 only
    P = projectives(a)
    inc, = hom_space(P[0], P[1])
    f = ComplexMap(as_complex(P[0]), as_complex(P[1]), {0: inc})
    hs = cohomology_all(cone(f))
    assert list(hs) == [0] and iso(hs[0], simples(a)[1])


def test_cone_detects_non_quasi_iso():
    a, c = inclusion_complex()
    zero = ComplexMap(c, ComplexRep(a, {}), {})
    assert not is_acyclic(cone(zero))


def test_tensor_total_unit():
    a, c = inclusion_complex()
    t = tensor_total(as_complex(regular_bimodule(a)), c, 1)
    assert t.degrees() == c.degrees()
    for p in c.degrees():
        assert iso(cohomology(t, p), cohomology(c, p))


def test_tensor_total_with_module_is_degreewise():
    a = triangular(2)
    x = ComplexRep(opposite(a), {0: regular_module(opposite(a))})
    _, y = inclusion_complex()
    t = tensor_total(x, y, 1)
    for p in y.degrees():
        assert t.term(p).dim == tensor_over(x.term(0), y.term(p), 1).dim


def test_tensor_total_sign_makes_d_squared_zero():
    # identity complexes on both sides: every square of the bicomplex commutes
    # with nonzero composites, so only the Koszul sign makes d^2 vanish
    a = triangular(2)
    ao = opposite(a)
    r = regular_module(ao)
    x = ComplexRep(ao, {0: r, 1: r}, {0: identity_hom(r)})
    m = projectives(a)[1]
    y = ComplexRep(a, {0: m, 1: m}, {0: identity_hom(m)})
    t = tensor_total(x, y, 1)
    assert t.degrees() == [0, 1, 2] and t.check()
    assert is_acyclic(t)


def test_hom_total_unit_and_h0():
    a, c = inclusion_complex()
    h = hom_total(as_complex(regular_bimodule(a)), c, 1)
    for p in c.degrees():
        assert iso(cohomology(h, p), cohomology(c, p))
    P, S = projectives(a), simples(a)
    for m in P + S:
        for n in P + S:
            hc = hom_total(as_complex(m), as_complex(n), 1)
            assert cohomology(hc, 0).dim == hom_dim(m, n)


def test_ext1_s2_a():
    a, res = inclusion_complex(lo=-1)
    # res is 0 -> P_1 -> P_2 -> 0 in degrees -1, 0: a projective resolution of S_2
    reg = regular_module(a)
    h = hom_total(res, as_complex(reg), 1)
    hs = cohomology_all(h)
    assert {p: m.dim for p, m in hs.items()} == {1: 1}


def test_direct_sum_complex_terms():
    a, c = inclusion_complex()
    s, incs, projs = direct_sum([c.term(0), c.term(1)])
    assert s.dim == 3 and (projs[0] @ incs[0]).is_iso()
