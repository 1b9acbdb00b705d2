"""Projective replacements and derived functors for bounded complexes."""

from __future__ import annotations

from .algebra import Algebra
from .complex import (
    ComplexMap, ComplexRep, _ensure_complex, cohomology, cohomology_all, hom_total, tensor_total,
)
from .exactlin import Matrix
from .module import (
    IsoVerdict, ModuleHom, ModuleRep, direct_sum, dual, dual_bimodule, is_isomorphic, kernel,
    projective_cover, projective_sum, zero_module,
)


# step budget for projective replacements; the CLI sets it from --max-len.
# None means (length of the complex) + dim A + 2.
MAX_STEPS: int | None = None


class ResolutionDiverged(RuntimeError):
    """Raised when a projective replacement does not stop within the step budget."""

    def __init__(self, msg: str, partial: dict | None = None):
        super().__init__(msg)
        self.partial = partial or {}


def projective_replacement(c, max_steps: int | None = None) -> ComplexMap:
    """Quasi-isomorphism P -> c with P a bounded complex of standard projectives.

    Works downward from the top degree: K^p collects pairs (x, y) in
    P^{p+1} + C^p with d x = 0 and f x = d y, and P^p covers K^p.
    """
    c = _ensure_complex(c)
    alg = c.algebra
    if c.is_zero():
        return ComplexMap(c, c, {})
    lo, hi = c.lo, c.hi
    max_steps = max_steps or MAX_STEPS or (hi - lo) + alg.dim + 2
    P: dict[int, ModuleRep] = {}
    dP: dict[int, ModuleHom] = {}
    fP: dict[int, ModuleHom] = {}
    zero = zero_module(alg)
    p = hi
    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise ResolutionDiverged(f"no projective replacement within {max_steps} steps", dict(P))
        up = P.get(p + 1, projective_sum(alg, []))
        cp = c.term(p)
        s, incs, projs = direct_sum([up, cp])
        # (x, y) -> (d x, f x - d y) in P^{p+2} + C^{p+1}
        t, tincs, _ = direct_sum([P.get(p + 2, zero), c.term(p + 1)])
        parts = []
        if p + 1 in dP:
            parts.append(tincs[0] @ dP[p + 1] @ projs[0])
        if p + 1 in fP:
            parts.append(tincs[1] @ fP[p + 1] @ projs[0])
        dc = c.diffs.get(p)
        if dc is not None:
            parts.append(tincs[1] @ dc.scale(alg.field(-1)) @ projs[1])
        blocks = {}
        for h in parts:
            for v, b in h.blocks.items():
                blocks[v] = blocks[v] + b if v in blocks else b
        K, inc = kernel(ModuleHom(s, t, blocks))
        if not K.dim:
            if p < lo:
                break
            p -= 1
            continue
        cover, pi = projective_cover(K)
        lift = inc @ pi
        P[p] = cover
        if p + 1 in P:
            dP[p] = projs[0] @ lift
        if cp.dim:
            fP[p] = projs[1] @ lift
        p -= 1
    pc = ComplexRep(alg, P, dP)
    return ComplexMap(pc, c, fP)


def minimize(f: ComplexMap) -> ComplexMap:
    """Cancel split pieces P_v -> P_v (scalar differential entries) by Gaussian elimination."""
    pc, c = f.source, f.target
    alg = pc.algebra
    F = alg.field
    gens = {p: list(m.proj) for p, m in pc.terms.items()}
    # per degree, per vertex: dense differential and comparison blocks
    D = {p: {v: [list(r) for r in h.block(v).data] for v in h.blocks} for p, h in pc.diffs.items()}
    Fm = {p: {v: [list(r) for r in h.block(v).data] for v in h.blocks} for p, h in f.blocks.items()}
    while True:
        hit = _find_pair(alg, gens, D)
        if hit is None:
            break
        p, k, l, v, c0 = hit
        _eliminate(alg, F, gens, D, Fm, p, k, l, c0)
    terms = {p: projective_sum(alg, g) for p, g in gens.items() if g}
    diffs = {}
    for p, blocks in D.items():
        if p in terms and p + 1 in terms:
            src, tgt = terms[p], terms[p + 1]
            diffs[p] = ModuleHom(src, tgt, {v: _mat(b, tgt.d(v), src.d(v), F)
                                            for v, b in blocks.items() if v in src.dims and v in tgt.dims})
    mc = ComplexRep(alg, terms, diffs)
    fb = {}
    for p, blocks in Fm.items():
        if p in terms and p in c.terms:
            src, tgt = terms[p], c.terms[p]
            fb[p] = ModuleHom(src, tgt, {v: _mat(b, tgt.d(v), src.d(v), F)
                                         for v, b in blocks.items() if v in src.dims and v in tgt.dims})
    return ComplexMap(mc, c, fb)


def _mat(rows, r, cc, F) -> Matrix:
    if not rows:
        return Matrix.zeros(r, cc, F)
    return Matrix(r, cc, rows, F)


def _slots(alg: Algebra, gens: list) -> list[dict]:
    from .module import standard_projective
    out = [dict() for _ in gens]
    fill: dict = {}
    for k, g in enumerate(gens):
        sp = standard_projective(alg, g)
        for w in sp.support:
            n = sp.d(w)
            out[k][w] = (fill.get(w, 0), n)
            fill[w] = fill.get(w, 0) + n
    return out


def _find_pair(alg, gens, D):
    for p in sorted(D):
        if p + 1 not in gens:
            continue
        sk = _slots(alg, gens[p])
        sl = _slots(alg, gens[p + 1])
        for k, g in enumerate(gens[p]):
            for l, h in enumerate(gens[p + 1]):
                if g != h:
                    continue
                blk = D[p].get(g)
                if blk is None:
                    continue
                c0 = blk[sl[l][g][0]][sk[k][g][0]]
                if c0:
                    return p, k, l, g, c0
    return None


def _eliminate(alg, F, gens, D, Fm, p, k, l, c0):
    sk_all = _slots(alg, gens[p])
    sl_all = _slots(alg, gens[p + 1])
    sk, sl = sk_all[k], sl_all[l]
    cinv = F.inv(c0)
    newD = {}
    for w, blk in D[p].items():
        ks = range(sk[w][0], sk[w][0] + sk[w][1]) if w in sk else range(0)
        ls = range(sl[w][0], sl[w][0] + sl[w][1]) if w in sl else range(0)
        kset, lset = set(ks), set(ls)
        ncols = len(blk[0]) if blk else 0
        xcols = [j for j in range(ncols) if j not in kset]
        yrows = [i for i in range(len(blk)) if i not in lset]
        kl = list(ks)
        ll = list(ls)
        # beta: rows ll, cols xcols; gamma: rows yrows, cols kl
        out = []
        for i in yrows:
            row = [blk[i][j] for j in xcols]
            for t, kc in enumerate(kl):
                g = blk[i][kc]
                if not g:
                    continue
                coef = F.norm(g * cinv)
                brow = blk[ll[t]]
                for jj, j in enumerate(xcols):
                    b = brow[j]
                    if b:
                        row[jj] = F.norm(row[jj] - coef * b)
            out.append(row)
        newD[w] = out
    if p in Fm:
        newF = {}
        for w, blk in Fm[p].items():
            ks = range(sk[w][0], sk[w][0] + sk[w][1]) if w in sk else range(0)
            kl = list(ks)
            kset = set(kl)
            ll = list(range(sl[w][0], sl[w][0] + sl[w][1])) if w in sl else []
            ncols = len(blk[0]) if blk else 0
            xcols = [j for j in range(ncols) if j not in kset]
            dblk = D[p].get(w)
            out = []
            for row0 in blk:
                row = [row0[j] for j in xcols]
                for t, kc in enumerate(kl):
                    g = row0[kc]
                    if not g or dblk is None:
                        continue
                    coef = F.norm(g * cinv)
                    brow = dblk[ll[t]]
                    for jj, j in enumerate(xcols):
                        b = brow[j]
                        if b:
                            row[jj] = F.norm(row[jj] - coef * b)
                out.append(row)
            newF[w] = out
        Fm[p] = newF
    if p + 1 in Fm:
        for w, blk in Fm[p + 1].items():
            ls = set(range(sl[w][0], sl[w][0] + sl[w][1])) if w in sl else set()
            Fm[p + 1][w] = [[x for j, x in enumerate(r) if j not in ls] for r in blk]
    if p - 1 in D:
        for w, blk in D[p - 1].items():
            ks = set(range(sk[w][0], sk[w][0] + sk[w][1])) if w in sk else set()
            D[p - 1][w] = [r for i, r in enumerate(blk) if i not in ks]
    if p + 1 in D:
        for w, blk in D[p + 1].items():
            ls = set(range(sl[w][0], sl[w][0] + sl[w][1])) if w in sl else set()
            D[p + 1][w] = [[x for j, x in enumerate(r) if j not in ls] for r in blk]
    D[p] = newD
    del gens[p][k]
    del gens[p + 1][l]


def minimal_replacement(c, max_steps: int | None = None) -> ComplexMap:
    return minimize(projective_replacement(c, max_steps=max_steps))


def projective_resolution(m: ModuleRep, max_steps: int | None = None) -> ComplexRep:
    """Minimal projective resolution of a module, in degrees <= 0."""
    return minimal_replacement(m, max_steps=max_steps).source


def projective_dimension(c) -> int:
    """-lo of the minimal projective replacement (for modules: the usual pd)."""
    p = minimal_replacement(c).source
    return -p.lo if p.lo is not None else -1


def injective_dimension(c) -> int:
    """Projective dimension of the dual, which lives over the opposite algebra."""
    c = _ensure_complex(c)
    return projective_dimension(dual_complex(c))


def dual_complex(c: ComplexRep) -> ComplexRep:
    """D(c): degree p term D(c^{-p}), differential D(d^{-p-1})."""
    from .algebra import opposite
    terms = {-p: dual(m) for p, m in c.terms.items()}
    diffs = {}
    for p, h in c.diffs.items():
        src, tgt = terms[-p - 1], terms[-p]
        diffs[-p - 1] = ModuleHom(src, tgt, {v: b.T for v, b in h.blocks.items()})
    return ComplexRep(opposite(c.algebra), terms, diffs)


def global_dimension(alg: Algebra) -> int:
    from .module import simples
    return max(projective_dimension(s) for s in simples(alg))


# ---------------------------------------------------------------------------
# derived functors


def derived_tensor(x, y, k: int | None = None, resolve: str = "left") -> ComplexRep:
    """x (x)^L y using a minimal projective replacement of one argument."""
    x, y = _ensure_complex(x), _ensure_complex(y)
    if resolve == "left":
        return tensor_total(minimal_replacement(x).source, y, k)
    return tensor_total(x, minimal_replacement(y).source, k)


def derived_hom(x, y, over: int | None = None) -> ComplexRep:
    """RHom over the first ``over`` factors, via a projective replacement of x."""
    x = _ensure_complex(x)
    return hom_total(minimal_replacement(x).source, y, over)


def concentrated_iso(c: ComplexRep, m: ModuleRep, n: int = 0, seed: int = 0, trials: int = 8) -> IsoVerdict:
    """Is c quasi-isomorphic to m[n], i.e. H^{-n}(c) = m and every other H^p vanishes?"""
    hs = cohomology_all(c)
    stray = [p for p in hs if p != -n]
    if stray:
        return IsoVerdict("no", reason=f"cohomology in degrees {sorted(stray)}",
                          evidence={"degrees": sorted(hs)})
    h = hs.get(-n, zero_module(c.algebra))
    if h.algebra != m.algebra:
        return IsoVerdict("no", reason="algebra mismatch")
    return is_isomorphic(h, m, seed=seed, trials=trials)


def ar_translate(m: ModuleRep) -> ModuleRep:
    """tau m as H^{-1}(A* (x)^L m); agrees with D Tr m for hereditary algebras."""
    c = derived_tensor(dual_bimodule(m.algebra), m)
    return cohomology(c, -1)


def dtr(m: ModuleRep) -> ModuleRep:
    """D Tr m computed independently: kernel of nu(d) on a minimal presentation."""
    res = minimal_replacement(m).source
    d = res.diffs.get(-1)
    if d is None:
        return zero_module(m.algebra)
    nu = _nakayama_map(d)
    ker, _ = kernel(nu)
    return ker


def _nakayama_map(d: ModuleHom) -> ModuleHom:
    """nu(d) = A* (x)_A d for a map between projectives."""
    from .module import TensorProduct, dual_bimodule
    ds = dual_bimodule(d.source.algebra)
    a = TensorProduct(ds, d.source, d.source.algebra.nfactors)
    b = TensorProduct(ds, d.target, d.source.algebra.nfactors)
    return a.map(b, None, d)
