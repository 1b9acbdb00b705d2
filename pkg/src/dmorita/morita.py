"""Tilting, derived Picard arithmetic, dualizing and rigid complexes."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, center, envelope
from .complex import (
    ComplexRep, _ensure_complex, as_complex, cohomology_all, cohomology_isomorphic,
    outer_tensor_total, permute_complex, restrict_complex, shift, tensor_total,
)
from .derived import (
    concentrated_iso, derived_hom, derived_tensor, injective_dimension, minimal_replacement,
)
from .module import (
    IsoVerdict, dual_bimodule, permute_factors, regular_bimodule,
)


class Uncertified(ValueError):
    pass


@dataclass
class Verdict:
    """Outcome of a verifier; ``status`` is pass, fail or cohomology-isomorphic."""

    status: str
    detail: str = ""
    witnesses: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.status in ("pass", "cohomology-isomorphic")


def _base(c: ComplexRep) -> Algebra:
    """A for a bimodule complex over A (x) A°."""
    k = c.algebra.nfactors // 2
    return c.algebra.restrict(range(k))


def regular_complex(a: Algebra) -> ComplexRep:
    return as_complex(regular_bimodule(a))


def dual_complex_of(a: Algebra) -> ComplexRep:
    return as_complex(dual_bimodule(a))


@dataclass
class DPicElement:
    complex: ComplexRep
    inverse: ComplexRep | None = None
    certified: bool = False
    label: str = ""
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def algebra(self) -> Algebra:
        return _base(self.complex)


def inverse_candidate(t) -> ComplexRep:
    """T^v = RHom_B(T, B) for T over B (x) A°; lands over A (x) B°."""
    t = _ensure_complex(t)
    k = t.algebra.nfactors // 2
    b = t.algebra.restrict(range(k))
    return derived_hom(t, regular_bimodule(b), over=k)


def is_tilting(t, seed: int = 0, trials: int = 8, label: str = "") -> tuple[Verdict, DPicElement | None]:
    """Two-sided inverse test: T^v (x)^L T = A and T (x)^L T^v = B, both in degree 0."""
    t = _ensure_complex(t)
    k = t.algebra.nfactors // 2
    a = t.algebra.restrict(range(k))
    tv = minimal_replacement(inverse_candidate(t)).source
    left = derived_tensor(tv, t, k)
    right = derived_tensor(t, tv, k)
    reg = regular_bimodule(a)
    v1 = concentrated_iso(left, reg, 0, seed=seed, trials=trials)
    v2 = concentrated_iso(right, reg, 0, seed=seed + 1, trials=trials)
    wit = {"inverse_then_T": v1, "T_then_inverse": v2}
    if v1.status == "yes" and v2.status == "yes":
        return Verdict("pass", witnesses=wit), DPicElement(t, tv, True, label, wit)
    bad = v1 if v1.status != "yes" else v2
    return Verdict("fail" if bad.status == "no" else "inconclusive", bad.reason, wit), None


def shift_element(a: Algebra, n: int) -> DPicElement:
    reg = regular_complex(a)
    return DPicElement(shift(reg, n), shift(reg, -n), True, f"s^{n}")


def _require(*ts: DPicElement):
    for t in ts:
        if not t.certified:
            raise Uncertified(f"{t.label or 'element'} is not certified tilting")


def _minimal(c: ComplexRep) -> ComplexRep:
    return minimal_replacement(c).source


def dpic_mul(t1: DPicElement, t2: DPicElement) -> DPicElement:
    _require(t1, t2)
    k = t1.complex.algebra.nfactors // 2
    prod = _minimal(tensor_total(_minimal(t1.complex), t2.complex, k))
    inv = None
    if t1.inverse is not None and t2.inverse is not None:
        inv = _minimal(tensor_total(_minimal(t2.inverse), t1.inverse, k))
    return DPicElement(prod, inv, True, f"{t1.label}*{t2.label}")


def dpic_inverse(t: DPicElement) -> DPicElement:
    _require(t)
    inv = t.inverse if t.inverse is not None else inverse_candidate(t.complex)
    return DPicElement(inv, t.complex, True, f"{t.label}^-1")


def dpic_pow(t: DPicElement, k: int) -> DPicElement:
    """t^k by repeated derived tensor; each step is replaced by a minimal model."""
    _require(t)
    if k < 0:
        return dpic_pow(dpic_inverse(t), -k)
    a = t.algebra
    if k == 0:
        return shift_element(a, 0)
    nf = a.nfactors
    base = _minimal(t.complex)
    acc = base
    for _ in range(k - 1):
        acc = _minimal(tensor_total(acc, t.complex, nf))
    inv = None
    if t.inverse is not None:
        ib = _minimal(t.inverse)
        inv = ib
        for _ in range(k - 1):
            inv = _minimal(tensor_total(inv, t.inverse, nf))
    return DPicElement(acc, inv, True, f"{t.label}^{k}")


def is_shift_of_identity(c: ComplexRep, n: int, seed: int = 0, trials: int = 8) -> IsoVerdict:
    """c = A[n] as bimodule complexes (concentrated certificate)."""
    return concentrated_iso(c, regular_bimodule(_base(c)), n, seed=seed, trials=trials)


def center_end_check(t: DPicElement) -> Verdict:
    """dim H^0 RHom_{A^e}(T, T) = dim Z(A) and no negative self-extensions."""
    c = t.complex
    nf = c.algebra.nfactors
    e = derived_hom(c, c, over=nf)
    hs = cohomology_all(e)
    zdim = len(center(t.algebra))
    end = hs[0].dim if 0 in hs else 0
    neg = sorted(p for p in hs if p < 0)
    wit = {"end_dim": end, "center_dim": zdim, "negative_degrees": neg}
    if end == zdim and not neg:
        return Verdict("pass", witnesses=wit)
    return Verdict("fail", f"End dim {end}, center dim {zdim}, negative degrees {neg}", wit)


# ---------------------------------------------------------------------------
# dualizing complexes


@dataclass
class DualizingCertificate:
    injdim_left: int | None
    injdim_right: int | None
    end_left: IsoVerdict
    end_right: IsoVerdict

    @property
    def ok(self) -> bool:
        return (self.injdim_left is not None and self.injdim_right is not None
                and self.end_left.status == "yes" and self.end_right.status == "yes")

    def __bool__(self):
        return self.ok


def _swap(c: ComplexRep) -> ComplexRep:
    k = c.algebra.nfactors // 2
    return permute_complex(c, list(range(k, 2 * k)) + list(range(k)))


def is_dualizing(r, seed: int = 0, trials: int = 8) -> DualizingCertificate:
    """Finite injective dimension on both sides and both derived End maps recover A."""
    from .derived import ResolutionDiverged
    r = _ensure_complex(r)
    k = r.algebra.nfactors // 2
    a = r.algebra.restrict(range(k))
    dims = []
    for keep in (range(k), range(k, 2 * k)):
        try:
            dims.append(injective_dimension(restrict_complex(r, list(keep))))
        except ResolutionDiverged:
            dims.append(None)
    reg = regular_bimodule(a)
    left = concentrated_iso(derived_hom(r, r, over=k), reg, 0, seed=seed, trials=trials)
    rs = _swap(r)
    reg_s = permute_factors(reg, list(range(k, 2 * k)) + list(range(k)))
    right = concentrated_iso(derived_hom(rs, rs, over=k), reg_s, 0, seed=seed + 1, trials=trials)
    return DualizingCertificate(dims[0], dims[1], left, right)


def twist_dualizing(r, t: DPicElement, seed: int = 0, trials: int = 8) -> tuple[ComplexRep, Verdict]:
    """R2 = R (x)^L T is dualizing and RHom_A(R, R2) recovers T degreewise."""
    _require(t)
    r = _ensure_complex(r)
    k = r.algebra.nfactors // 2
    r2 = derived_tensor(r, t.complex, k)
    cert = is_dualizing(r2, seed=seed, trials=trials)
    back = derived_hom(r, r2, over=k)
    cmp = cohomology_isomorphic(back, t.complex, seed=seed, trials=trials)
    wit = {"dualizing": cert, "recovered": cmp}
    if cert.ok and all(s == "yes" for s in cmp.values()):
        return r2, Verdict("pass", witnesses=wit)
    return r2, Verdict("fail", "twist did not recover T or is not dualizing", wit)


# ---------------------------------------------------------------------------
# rigidity and the Van den Bergh formula


def _compare(c: ComplexRep, target: ComplexRep, seed: int, trials: int) -> Verdict:
    ht = cohomology_all(target)
    if len(ht) == 1:
        (p, m), = ht.items()
        v = concentrated_iso(c, m, -p, seed=seed, trials=trials)
        st = {"yes": "pass", "no": "fail"}.get(v.status, "inconclusive")
        return Verdict(st, v.reason, {"degree": p, "iso": v})
    cmp = cohomology_isomorphic(c, target, seed=seed, trials=trials)
    if all(s == "yes" for s in cmp.values()):
        return Verdict("cohomology-isomorphic", witnesses={"degrees": cmp})
    return Verdict("fail", f"degreewise comparison {cmp}", {"degrees": cmp})


def rigidity_rhs(r) -> ComplexRep:
    """RHom_{A^e}(A, R (x) R) with A^e acting on the outside, inside action kept."""
    r = _ensure_complex(r)
    k = r.algebra.nfactors // 2
    rr = outer_tensor_total(r, r)  # factors: A, A°, A, A° (each of size k)
    a_l, a_r = list(range(0, k)), list(range(k, 2 * k))
    b_l, b_r = list(range(2 * k, 3 * k)), list(range(3 * k, 4 * k))
    rr = permute_complex(rr, a_l + b_r + b_l + a_r)
    a = r.algebra.restrict(range(k))
    return derived_hom(regular_bimodule(a), rr, over=2 * k)


def is_rigid(r, seed: int = 0, trials: int = 8) -> Verdict:
    r = _ensure_complex(r)
    return _compare(rigidity_rhs(r), r, seed, trials)


def vdb_sides(r) -> tuple[ComplexRep, ComplexRep]:
    """(RHom_A(R, A), RHom_{A^e}(A, A^e)) as bimodule complexes over A (x) A°."""
    r = _ensure_complex(r)
    k = r.algebra.nfactors // 2
    a = r.algebra.restrict(range(k))
    lhs = inverse_candidate(r)
    ae = regular_bimodule(envelope(a))  # over A, A°, A°, A
    rhs = derived_hom(regular_bimodule(a), ae, over=2 * k)  # over A°, A
    rhs = permute_complex(rhs, list(range(k, 2 * k)) + list(range(k)))
    return lhs, rhs


def vdb_formula_check(r, seed: int = 0, trials: int = 8) -> Verdict:
    lhs, rhs = vdb_sides(r)
    return _compare(lhs, rhs, seed, trials)
