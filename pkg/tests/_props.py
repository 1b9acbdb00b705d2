"""Seeded property checks shared by the hypothesis suites and the acceptance driver.

Each check returns None on success or a short failure description.
"""

from __future__ import annotations

import random

from _gen import euler_terms, intertwines, is_invertible_hom, random_complex, random_module
from dmorita.algebra import opposite, triangular
from dmorita.complex import (
    ComplexMap, ComplexRep, as_complex, cohomology, cohomology_all, cohomology_isomorphic, cone, is_acyclic,
    outer_tensor_total, shift, tensor_total,
)
from dmorita.derived import derived_tensor, minimal_replacement
from dmorita.exactlin import QQ, parse_field
from dmorita.ktheory import class_of_complex, euler_dims
from dmorita.module import (
    dual, dual_bimodule, is_isomorphic, recheck_no, regular_bimodule, tensor_over,
)

F101 = parse_field("fp:101")


def _setup(seed: int):
    rng = random.Random(seed)
    F = QQ if seed % 2 == 0 else F101
    n = rng.choice([2, 3])
    return rng, triangular(n, F)


def _verify_iso(m, n, seed) -> str | None:
    v = is_isomorphic(m, n, seed=seed)
    if v.status == "yes":
        if not (intertwines(v.witness) and is_invertible_hom(v.witness)):
            return "witness does not verify"
        return None
    return f"isomorphism verdict {v.status}: {v.reason}"


def check_complex(seed: int) -> str | None:
    """d^2 = 0 on a random complex and on its shift, cone and replacement; Euler additivity."""
    rng, a = _setup(seed)
    c = random_complex(a, rng, length=rng.randint(1, 4), lo=rng.randint(-2, 1))
    if not c.check():
        return "d^2 != 0 on the random complex"
    hs = cohomology_all(c)
    if euler_terms(c) != sum((-1) ** (p % 2) * h.dim for p, h in hs.items()):
        return "Euler characteristic of terms and cohomology differ"
    if euler_dims(c) != class_of_complex(c):
        return "K0 classes of terms and cohomology differ"
    k = rng.randint(-2, 2)
    s = shift(c, k)
    if not s.check():
        return "d^2 != 0 after shift"
    for p, h in hs.items():
        if cohomology(s, p - k).dim != h.dim:
            return "shift does not move cohomology"
    f = minimal_replacement(c)
    if not (f.source.check() and f.is_chain_map()):
        return "replacement is not a complex or not a chain map"
    cn = cone(f)
    if not cn.check() or not is_acyclic(cn):
        return "cone of the replacement map is not acyclic"
    # additivity on the cone triangle: chi(cone f) = chi(target) - chi(source)
    if euler_terms(cn) != euler_terms(c) - euler_terms(f.source):
        return "Euler characteristic not additive on the cone"
    # a map that is not a quasi-isomorphism has a non-acyclic cone
    if cohomology_all(c):
        zero = ComplexMap(c, ComplexRep(c.algebra, {}), {})
        z = cone(zero)
        if is_acyclic(z):
            return "cone of c -> 0 is acyclic although c is not"
    return None


def check_kunneth(seed: int) -> str | None:
    """Top-corner identity H^{i0+j0}(x (x) y) = H^{i0}x (x) H^{j0}y for x over B (x) A°, y over A."""
    rng, a = _setup(seed)
    F = a.field
    b = triangular(2, F)
    # redraw a few times to favour a nonzero top corner
    for _ in range(6):
        xb = random_complex(b, rng, length=rng.randint(1, 2))
        xa = random_complex(opposite(a), rng, length=rng.randint(1, 3))
        y = random_complex(a, rng, length=rng.randint(1, 3))
        if rng.random() < 0.5:
            xa = minimal_replacement(xa).source
            y = minimal_replacement(y).source
        x = outer_tensor_total(xb, xa)
        if x.is_zero() or y.is_zero():
            continue
        if tensor_over(cohomology(x, x.hi), cohomology(y, y.hi), 1).dim:
            break
    if x.is_zero() or y.is_zero():
        return None
    i0, j0 = x.hi, y.hi
    t = tensor_total(x, y, 1)
    if not t.check():
        return "d^2 != 0 on the total tensor complex"
    lhs = cohomology(t, i0 + j0)
    rhs = tensor_over(cohomology(x, i0), cohomology(y, j0), 1)
    if lhs.dim != rhs.dim:
        return f"top corner dims {lhs.dim} != {rhs.dim}"
    if lhs.dim:
        return _verify_iso(lhs, rhs, seed)
    return None


def check_side_independence(seed: int) -> str | None:
    """Resolving the left or the right argument gives the same cohomology in every degree."""
    rng, a = _setup(seed)
    F = a.field
    if rng.random() < 0.3:
        x = as_complex(dual_bimodule(a))
    else:
        x = outer_tensor_total(random_complex(triangular(2, F), rng, length=1),
                               random_complex(opposite(a), rng, length=rng.randint(1, 3)))
    y = random_complex(a, rng, length=rng.randint(1, 3))
    left = derived_tensor(x, y, 1, resolve="left")
    right = derived_tensor(x, y, 1, resolve="right")
    if not (left.check() and right.check()):
        return "d^2 != 0"
    cmp = cohomology_isomorphic(left, right, seed=seed)
    bad = {p: s for p, s in cmp.items() if s != "yes"}
    return f"degrees differ: {bad}" if bad else None


def check_unit_and_dual(seed: int) -> str | None:
    """A (x)_A m = m, m (x)_A A = m and D D m = m, each with a re-verified witness."""
    rng, a = _setup(seed)
    m = random_module(a, rng)
    r = random_module(opposite(a), rng)
    reg = regular_bimodule(a)
    for lhs, rhs in ((tensor_over(reg, m), m), (tensor_over(r, reg), r), (dual(dual(m)), m)):
        err = _verify_iso(lhs, rhs, seed)
        if err:
            return err
    return None


def check_iso_soundness(seed: int) -> str | None:
    """Every yes witness re-verifies; every no verdict is re-derived."""
    rng, a = _setup(seed)
    m, n = random_module(a, rng), random_module(a, rng)
    if rng.random() < 0.3:
        n = m
    v = is_isomorphic(m, n, seed=seed)
    if v.status == "yes" and not (intertwines(v.witness) and is_invertible_hom(v.witness)):
        return "yes witness fails"
    if v.status == "no" and not recheck_no(m, n, v):
        return "no verdict not re-derivable"
    if n is m and v.status != "yes":
        return "identical modules not recognized"
    return None


CHECKS = {
    "complex": check_complex,
    "kunneth": check_kunneth,
    "side": check_side_independence,
    "unit_dual": check_unit_and_dual,
    "iso": check_iso_soundness,
}
