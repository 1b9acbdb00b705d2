"""Bounded cochain complexes of modules and their total constructions."""

from __future__ import annotations

from typing import Iterable

from .algebra import Algebra
from .exactlin import Matrix
from .module import (
    AlgebraMismatch, HomModule, ModuleHom, ModuleRep, Subspace, TensorProduct,
    direct_sum, is_isomorphic, permute_factors, permute_hom, quotient, restrict_factors,
    restrict_hom, submodule, zero_module, _infer_k,
)


class NotAComplex(ValueError):
    pass


class ComplexRep:
    """Complex with ``terms[p]`` and differentials ``diffs[p]: C^p -> C^{p+1}``.

    Degrees outside ``terms`` are zero.  Zero terms are dropped on construction,
    and d^2 = 0 is checked unless ``validate`` is off.
    """

    def __init__(self, algebra: Algebra, terms: dict, diffs: dict | None = None, name: str = "",
                 validate: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.terms = {p: m for p, m in terms.items() if m.dim}
        for m in self.terms.values():
            if m.algebra != algebra:
                raise AlgebraMismatch("complex terms over different algebras")
        self.diffs = {}
        for p, h in (diffs or {}).items():
            if p in self.terms and p + 1 in self.terms and not h.is_zero():
                self.diffs[p] = h
        self.name = name
        if validate:
            for p, h in self.diffs.items():
                nxt = self.diffs.get(p + 1)
                if nxt is not None and not (nxt @ h).is_zero():
                    raise NotAComplex(f"d^{p + 1} d^{p} != 0")

    def __repr__(self):
        ds = ", ".join(f"{p}:{self.terms[p].dim}" for p in sorted(self.terms))
        return f"ComplexRep({self.algebra.name}; {ds})"

    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        return max(self.terms) if self.terms else None

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def term(self, p: int) -> ModuleRep:
        m = self.terms.get(p)
        return m if m is not None else zero_module(self.algebra)

    def d(self, p: int) -> ModuleHom:
        h = self.diffs.get(p)
        if h is not None:
            return h
        return ModuleHom(self.term(p), self.term(p + 1), {})

    @property
    def total_dim(self) -> int:
        return sum(m.dim for m in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def check(self) -> bool:
        """Differentials are module maps and square to zero."""
        for p, h in self.diffs.items():
            if not h.is_intertwiner():
                return False
            nxt = self.diffs.get(p + 1)
            if nxt is not None and not (nxt @ h).is_zero():
                return False
        return True


def as_complex(m: ModuleRep, degree: int = 0) -> ComplexRep:
    return ComplexRep(m.algebra, {degree: m}, {}, name=m.name)


def _ensure_complex(x) -> ComplexRep:
    return x if isinstance(x, ComplexRep) else as_complex(x)


class ComplexMap:
    """Chain map given by one module map per degree."""

    def __init__(self, source: ComplexRep, target: ComplexRep, blocks: dict):
        self.source, self.target = source, target
        self.blocks = {p: h for p, h in blocks.items() if p in source.terms and p in target.terms}

    def at(self, p: int) -> ModuleHom:
        h = self.blocks.get(p)
        if h is not None:
            return h
        return ModuleHom(self.source.term(p), self.target.term(p), {})

    def is_chain_map(self) -> bool:
        degs = set(self.source.terms) | set(self.target.terms)
        for p in degs:
            lhs = self.target.d(p) @ self.at(p)
            rhs = self.at(p + 1) @ self.source.d(p)
            if (lhs - rhs).is_zero() is False:
                return False
        return True


# ---------------------------------------------------------------------------
# cohomology


def subquotient(m: ModuleRep, z: dict, b: dict) -> ModuleRep:
    """(Z / B) for per-vertex subspaces B <= Z <= m."""
    zm, _ = submodule(m, z, check=False)
    F = m.field
    inner = {}
    for v in zm.support:
        zs = z[v]
        inner[v] = Subspace(F, zm.d(v), [zs.coords(vec) for vec in (b[v].basis() if v in b else [])])
    q, _, _ = quotient(zm, inner)
    return q


def cohomology(c: ComplexRep, p: int) -> ModuleRep:
    m = c.term(p)
    if not m.dim:
        return m
    F = c.field
    dout = c.diffs.get(p)
    din = c.diffs.get(p - 1)
    z, b = {}, {}
    for v in m.support:
        if dout is not None and v in dout.target.dims:
            z[v] = Subspace(F, m.d(v), dout.block(v).echelon().kernel())
        else:
            z[v] = Subspace(F, m.d(v), [[F.one if i == j else F.zero for i in range(m.d(v))]
                                        for j in range(m.d(v))])
        if din is not None and v in din.source.dims:
            b[v] = Subspace(F, m.d(v), din.block(v).columns())
    return subquotient(m, z, b)


def cohomology_all(c: ComplexRep) -> dict:
    return {p: h for p in c.degrees() if (h := cohomology(c, p)).dim}


def is_acyclic(c: ComplexRep) -> bool:
    return not cohomology_all(c)


def cohomology_isomorphic(x: ComplexRep, y: ComplexRep, seed: int = 0, trials: int = 8) -> dict:
    """Degreewise comparison of cohomology; returns p -> verdict status."""
    hx, hy = cohomology_all(x), cohomology_all(y)
    out = {}
    for p in sorted(set(hx) | set(hy)):
        a = hx.get(p, zero_module(x.algebra))
        b = hy.get(p, zero_module(y.algebra))
        out[p] = is_isomorphic(a, b, seed=seed, trials=trials).status
    return out


# ---------------------------------------------------------------------------
# shift and cone


def shift(c: ComplexRep, n: int) -> ComplexRep:
    """c[n]: (c[n])^p = c^{n+p} with differential scaled by (-1)^n."""
    sign = -1 if n % 2 else 1
    terms = {p - n: m for p, m in c.terms.items()}
    diffs = {p - n: (h if sign == 1 else h.scale(c.field(-1))) for p, h in c.diffs.items()}
    return ComplexRep(c.algebra, terms, diffs, name=c.name)


def _assemble(src: ModuleRep, tgt: ModuleRep, parts: Iterable[ModuleHom]) -> ModuleHom:
    blocks = {}
    for h in parts:
        for v, b in h.blocks.items():
            blocks[v] = blocks[v] + b if v in blocks else b
    return ModuleHom(src, tgt, blocks)


def cone(f: ComplexMap) -> ComplexRep:
    """cone^p = X^{p+1} + Y^p with d = [[-dX, 0], [f, dY]]."""
    x, y = f.source, f.target
    alg = x.algebra
    lo = min([p - 1 for p in x.terms] + list(y.terms), default=0)
    hi = max([p - 1 for p in x.terms] + list(y.terms), default=-1)
    sums = {}
    for p in range(lo, hi + 1):
        sums[p] = direct_sum([x.term(p + 1), y.term(p)]) if (x.term(p + 1).dim or y.term(p).dim) else None
    terms, diffs = {}, {}
    minus = x.field(-1)
    for p in range(lo, hi + 1):
        if sums[p] is None:
            continue
        terms[p] = sums[p][0]
    for p in range(lo, hi):
        if sums[p] is None or sums[p + 1] is None:
            continue
        s, incs, projs = sums[p]
        t, tincs, tprojs = sums[p + 1]
        parts = [
            tincs[0] @ x.d(p + 1).scale(minus) @ projs[0],
            tincs[1] @ f.at(p + 1) @ projs[0],
            tincs[1] @ y.d(p) @ projs[1],
        ]
        diffs[p] = _assemble(s, t, parts)
    return ComplexRep(alg, terms, diffs)


# ---------------------------------------------------------------------------
# total tensor and Hom complexes


def tensor_total(x, y, k: int | None = None) -> ComplexRep:
    """Total complex of x (x) y: d(u (x) v) = du (x) v + (-1)^p u (x) dv."""
    x, y = _ensure_complex(x), _ensure_complex(y)
    if x.is_zero() or y.is_zero():
        return _empty_tensor(x, y, k)
    if k is None:
        k = _infer_k(next(iter(x.terms.values())), next(iter(y.terms.values())))
    tp = {(p, q): TensorProduct(x.terms[p], y.terms[q], k) for p in x.terms for q in y.terms}
    alg = next(iter(tp.values())).algebra
    bydeg: dict = {}
    for (p, q) in sorted(tp):
        if tp[(p, q)].module.dim:
            bydeg.setdefault(p + q, []).append((p, q))
    sums = {n: direct_sum([tp[pq].module for pq in pqs]) for n, pqs in bydeg.items()}
    minus = x.field(-1)
    diffs = {}
    for n, pqs in bydeg.items():
        if n + 1 not in bydeg:
            continue
        s, _, projs = sums[n]
        t, tincs, _ = sums[n + 1]
        tpos = {pq: i for i, pq in enumerate(bydeg[n + 1])}
        parts = []
        for i, (p, q) in enumerate(pqs):
            src = tp[(p, q)]
            j = tpos.get((p + 1, q))
            if j is not None and p in x.diffs:
                parts.append(tincs[j] @ src.map(tp[(p + 1, q)], x.diffs[p], None) @ projs[i])
            j = tpos.get((p, q + 1))
            if j is not None and q in y.diffs:
                h = src.map(tp[(p, q + 1)], None, y.diffs[q])
                if p % 2:
                    h = h.scale(minus)
                parts.append(tincs[j] @ h @ projs[i])
        diffs[n] = _assemble(s, t, parts)
    return ComplexRep(alg, {n: s[0] for n, s in sums.items()}, diffs)


def _empty_tensor(x: ComplexRep, y: ComplexRep, k) -> ComplexRep:
    ax, ay = x.algebra, y.algebra
    if k is None:
        k = _infer_k(zero_module(ax), zero_module(ay))
    return ComplexRep(Algebra(ax.factors[:ax.nfactors - k] + ay.factors[k:], ax.field), {}, {})


def hom_total(x, y, k: int | None = None) -> ComplexRep:
    """Total Hom complex: Hom^n = prod_p Hom(x^p, y^{p+n}), (df) = d_y f - (-1)^n f d_x."""
    x, y = _ensure_complex(x), _ensure_complex(y)
    if k is None:
        k = x.algebra.nfactors
    if x.is_zero() or y.is_zero():
        ax, ay = x.algebra, y.algebra
        return ComplexRep(Algebra(tuple((b, not o) for b, o in ax.factors[k:]) + ay.factors[k:], ax.field), {}, {})
    hm = {(p, q): HomModule(x.terms[p], y.terms[q], k) for p in x.terms for q in y.terms}
    alg = next(iter(hm.values())).algebra
    bydeg: dict = {}
    for (p, q) in sorted(hm):
        if hm[(p, q)].module.dim:
            bydeg.setdefault(q - p, []).append((p, q))
    sums = {n: direct_sum([hm[pq].module for pq in pqs]) for n, pqs in bydeg.items()}
    diffs = {}
    for n, pqs in bydeg.items():
        if n + 1 not in bydeg:
            continue
        s, _, projs = sums[n]
        t, tincs, _ = sums[n + 1]
        tpos = {pq: i for i, pq in enumerate(bydeg[n + 1])}
        sign = x.field(1 if n % 2 else -1)  # -(-1)^n
        parts = []
        for i, (p, q) in enumerate(pqs):
            src = hm[(p, q)]
            j = tpos.get((p, q + 1))
            if j is not None and q in y.diffs:
                parts.append(tincs[j] @ src.map(hm[(p, q + 1)], None, y.diffs[q]) @ projs[i])
            j = tpos.get((p - 1, q))
            if j is not None and (p - 1) in x.diffs:
                h = src.map(hm[(p - 1, q)], x.diffs[p - 1], None).scale(sign)
                parts.append(tincs[j] @ h @ projs[i])
        diffs[n] = _assemble(s, t, parts)
    return ComplexRep(alg, {n: s[0] for n, s in sums.items()}, diffs)


def permute_complex(c: ComplexRep, perm) -> ComplexRep:
    terms = {p: permute_factors(m, perm) for p, m in c.terms.items()}
    diffs = {p: permute_hom(h, perm, terms[p], terms[p + 1]) for p, h in c.diffs.items()}
    return ComplexRep(c.algebra.restrict(perm), terms, diffs, name=c.name)


def restrict_complex(c: ComplexRep, keep) -> ComplexRep:
    terms = {p: restrict_factors(m, keep) for p, m in c.terms.items()}
    diffs = {p: restrict_hom(h, keep, terms[p], terms[p + 1]) for p, h in c.diffs.items()}
    return ComplexRep(c.algebra.restrict(keep), terms, diffs, name=c.name)


def outer_tensor_total(x, y) -> ComplexRep:
    """x (x)_k y over the tensor algebra, with the Koszul sign on the y-differential."""
    from .algebra import tensor
    from .exactlin import kronecker
    from .module import outer_tensor
    x, y = _ensure_complex(x), _ensure_complex(y)
    alg = tensor(x.algebra, y.algebra)
    F = alg.field
    pieces = {(p, q): outer_tensor(x.terms[p], y.terms[q]) for p in x.terms for q in y.terms}
    bydeg: dict = {}
    for pq in sorted(pieces):
        bydeg.setdefault(pq[0] + pq[1], []).append(pq)
    sums = {n: direct_sum([pieces[pq] for pq in pqs]) for n, pqs in bydeg.items()}

    minus = F(-1)
    diffs = {}
    for n, pqs in bydeg.items():
        if n + 1 not in bydeg:
            continue
        s, _, projs = sums[n]
        t, tincs, _ = sums[n + 1]
        tpos = {pq: i for i, pq in enumerate(bydeg[n + 1])}
        parts = []
        for i, (p, q) in enumerate(pqs):
            src = pieces[(p, q)]
            mx, my = x.terms[p], y.terms[q]
            j = tpos.get((p + 1, q))
            if j is not None and p in x.diffs:
                dx = x.diffs[p]
                blocks = {}
                for u in mx.support:
                    for w in my.support:
                        if u in dx.blocks:
                            blocks[u + w] = kronecker(dx.blocks[u], Matrix.identity(my.d(w), F))
                parts.append(tincs[j] @ ModuleHom(src, pieces[(p + 1, q)], blocks) @ projs[i])
            j = tpos.get((p, q + 1))
            if j is not None and q in y.diffs:
                dy = y.diffs[q]
                blocks = {}
                for u in mx.support:
                    for w in my.support:
                        if w in dy.blocks:
                            b = kronecker(Matrix.identity(mx.d(u), F), dy.blocks[w])
                            blocks[u + w] = b.scale(minus) if p % 2 else b
                parts.append(tincs[j] @ ModuleHom(src, pieces[(p, q + 1)], blocks) @ projs[i])
        diffs[n] = _assemble(s, t, parts)
    return ComplexRep(alg, {n: s[0] for n, s in sums.items()}, diffs)
