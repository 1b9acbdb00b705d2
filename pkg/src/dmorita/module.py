"""Modules over tensor-of-factor algebras, stored as quiver representations.

A module assigns a vector space to each vertex tuple and a matrix to each
arrow in context ``(factor, arrow, source vertex)``.  The global basis orders
vertices as ``algebra.vertices`` and keeps each vertex block contiguous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

from .algebra import Algebra, PresentationError
from .exactlin import Echelon, FieldSpec, Matrix, block_diag, kronecker, rank

Vertex = tuple
ArrowCtx = tuple  # (factor, arrow, source vertex)


class AlgebraMismatch(ValueError):
    pass


def _zero(r: int, c: int, F: FieldSpec) -> Matrix:
    return Matrix.zeros(r, c, F)


def _unit(n: int, i: int, F: FieldSpec) -> list:
    v = [F.zero] * n
    v[i] = F.one
    return v


class ModuleRep:
    """Finite-dimensional left module over ``algebra``.

    ``proj`` is set on standard projectives ``(+)_k A e_{v_k}``; summand ``k``
    then occupies a contiguous slot inside every vertex block.
    """

    def __init__(self, algebra: Algebra, dims: dict, maps: dict, proj: tuple | None = None,
                 name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = {tuple(v): d for v, d in dims.items() if d}
        self.maps = {}
        for (f, a, v), m in maps.items():
            v = tuple(v)
            t = self.arrow_target(f, a, v)
            if v in self.dims and t in self.dims and not m.is_zero():
                if m.shape != (self.dims[t], self.dims[v]):
                    raise ValueError(f"arrow map {(f, a, v)} has shape {m.shape}")
                self.maps[(f, a, v)] = m
        self.proj = proj
        self.name = name

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"ModuleRep{label}(dim={self.dim}, {self.algebra.name})"

    # layout -------------------------------------------------------------
    @cached_property
    def support(self) -> list:
        return [v for v in self.algebra.vertices if v in self.dims]

    @cached_property
    def offsets(self) -> dict:
        out, o = {}, 0
        for v in self.support:
            out[v] = o
            o += self.dims[v]
        return out

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def d(self, v) -> int:
        return self.dims.get(v, 0)

    def arrow_target(self, f: int, a: int, v) -> Vertex:
        s, t = self.algebra.farrow(f, a)
        if v[f] != s:
            raise ValueError(f"arrow {(f, a)} does not start at {v}")
        return v[:f] + (t,) + v[f + 1:]

    def contexts(self) -> Iterable[tuple]:
        """All (f, a, v, t) with both endpoints in the support."""
        alg = self.algebra
        for f, a in alg.arrow_keys:
            s, t = alg.farrow(f, a)
            for v in self.support:
                if v[f] == s:
                    w = v[:f] + (t,) + v[f + 1:]
                    if w in self.dims:
                        yield f, a, v, w

    def amap(self, f: int, a: int, v) -> Matrix:
        m = self.maps.get((f, a, v))
        if m is not None:
            return m
        return _zero(self.d(self.arrow_target(f, a, v)), self.d(v), self.field)

    def dim_vector(self) -> list[int]:
        return [self.d(v) for v in self.algebra.vertices]

    # action of basis elements ------------------------------------------
    def apply_path(self, path: Sequence[int], v, vec: list):
        """Act by the factor-basis tuple ``path`` on ``vec`` sitting at vertex ``v``."""
        alg = self.algebra
        cur = tuple(v)
        for f, b in enumerate(path):
            s, _ = alg.fends(f, b)
            if cur[f] != s:
                return None, None
            for a in alg.fword(f, b):
                nxt = self.arrow_target(f, a, cur)
                if nxt not in self.dims:
                    return None, None
                m = self.maps.get((f, a, cur))
                if m is None:
                    return None, None
                vec = m.apply(vec)
                cur = nxt
        return cur, vec

    def action(self, i: int) -> Matrix:
        """Matrix of the flat algebra basis element ``i`` on the global basis."""
        F = self.field
        m = Matrix.zeros(self.dim, self.dim, F)
        path = self.algebra.split(i)
        src, _ = self.algebra.ends(i)
        if src not in self.dims:
            return m
        o = self.offsets[src]
        for j in range(self.d(src)):
            w, out = self.apply_path(path, src, _unit(self.d(src), j, F))
            if w is None:
                continue
            ow = self.offsets[w]
            for r, x in enumerate(out):
                if x:
                    m.data[ow + r][o + j] = x
        return m

    def global_vector(self, v, vec: Sequence) -> list:
        g = [self.field.zero] * self.dim
        o = self.offsets[v]
        g[o:o + len(vec)] = list(vec)
        return g

    def block_of(self, gvec: Sequence) -> dict:
        return {v: list(gvec[self.offsets[v]:self.offsets[v] + self.dims[v]]) for v in self.support}

    # projective bookkeeping -------------------------------------------
    def summand_slot(self, k: int, v) -> tuple[int, int]:
        """(start, length) of summand ``k``'s piece inside vertex block ``v``."""
        start = 0
        for j, g in enumerate(self.proj):
            n = standard_projective(self.algebra, g).d(v)
            if j == k:
                return start, n
            start += n
        raise IndexError(k)

    @cached_property
    def slots(self) -> list[dict]:
        out = [dict() for _ in self.proj]
        for v in self.support:
            start = 0
            for k, g in enumerate(self.proj):
                n = standard_projective(self.algebra, g).d(v)
                if n:
                    out[k][v] = (start, n)
                start += n
        return out


# ---------------------------------------------------------------------------
# homomorphisms


class ModuleHom:
    """Module map stored as one block ``target_v x source_v`` per vertex."""

    def __init__(self, source: ModuleRep, target: ModuleRep, blocks: dict):
        if source.algebra != target.algebra:
            raise AlgebraMismatch("homomorphism between modules over different algebras")
        self.source = source
        self.target = target
        F = source.field
        self.blocks = {}
        for v in source.support:
            if v in target.dims:
                b = blocks.get(v)
                self.blocks[v] = b if b is not None else _zero(target.d(v), source.d(v), F)

    def block(self, v) -> Matrix:
        b = self.blocks.get(v)
        if b is None:
            return _zero(self.target.d(v), self.source.d(v), self.source.field)
        return b

    @cached_property
    def matrix(self) -> Matrix:
        F = self.source.field
        m = Matrix.zeros(self.target.dim, self.source.dim, F)
        for v, b in self.blocks.items():
            ro, co = self.target.offsets[v], self.source.offsets[v]
            for i, row in enumerate(b.data):
                m.data[ro + i][co:co + b.cols] = row
        return m

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        """Composition ``self o other``."""
        return ModuleHom(other.source, self.target,
                         {v: self.block(v) @ other.block(v) for v in other.source.support
                          if v in self.target.dims})

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target,
                         {v: self.block(v) + other.block(v) for v in set(self.blocks) | set(other.blocks)})

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target,
                         {v: self.block(v) - other.block(v) for v in set(self.blocks) | set(other.blocks)})

    def scale(self, c) -> "ModuleHom":
        return ModuleHom(self.source, self.target, {v: b.scale(c) for v, b in self.blocks.items()})

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def apply(self, gvec: Sequence) -> list:
        return self.matrix.apply(gvec)

    def is_intertwiner(self) -> bool:
        for f, a, v, w in self.source.contexts():
            if self.block(w) @ self.source.amap(f, a, v) != self.target.amap(f, a, v) @ self.block(v):
                return False
        for f, a, v, w in self.target.contexts():
            if v in self.source.dims and w not in self.source.dims:
                if not (self.target.amap(f, a, v) @ self.block(v)).is_zero():
                    return False
            if w in self.source.dims and v not in self.source.dims:
                pass
        # arrows leaving the source support but landing in target support
        for f, a in self.source.algebra.arrow_keys:
            s, t = self.source.algebra.farrow(f, a)
            for v in self.source.support:
                if v[f] != s:
                    continue
                w = v[:f] + (t,) + v[f + 1:]
                if w not in self.source.dims and w in self.target.dims:
                    if not (self.target.amap(f, a, v) @ self.block(v)).is_zero():
                        return False
        return True

    def is_iso(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(rank(b) == b.rows for b in self.blocks.values())


def identity_hom(m: ModuleRep) -> ModuleHom:
    return ModuleHom(m, m, {v: Matrix.identity(m.d(v), m.field) for v in m.support})


def zero_hom(m: ModuleRep, n: ModuleRep) -> ModuleHom:
    return ModuleHom(m, n, {})


# ---------------------------------------------------------------------------
# subspaces, submodules, quotients


class Subspace:
    """Subspace of k^n kept in reduced echelon form; basis = normalized pivot rows."""

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.n = n
        self.ech = Echelon(field, n)
        for v in vectors:
            self.add(v)
        self._basis = None

    def add(self, v: Sequence) -> bool:
        self._basis = None
        return self.ech.add({i: x for i, x in enumerate(v) if x}) is not None

    def add_sparse(self, v: dict) -> bool:
        self._basis = None
        return self.ech.add(v) is not None

    @property
    def dim(self) -> int:
        return self.ech.rank

    @property
    def pivots(self) -> list[int]:
        return self.ech.pivots()

    def basis(self) -> list[list]:
        if self._basis is None:
            F = self.field
            out = []
            for c in self.pivots:
                row = self.ech.normalized_row(c)
                vec = [F.zero] * self.n
                for k, x in row.items():
                    vec[k] = x
                out.append(vec)
            self._basis = out
        return self._basis

    def coords(self, v: Sequence) -> list:
        """Coordinates of a vector known to lie in the subspace."""
        return [v[c] for c in self.pivots]

    def reduce(self, v: Sequence) -> list:
        """Representative of ``v`` modulo the subspace, zero on pivot columns."""
        F = self.field
        out = [F.zero] * self.n
        for k, x in self.ech.remainder({i: x for i, x in enumerate(v) if x}).items():
            out[k] = x
        return out

    def free(self) -> list[int]:
        return self.ech.free_columns()

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))


def _vertex_subspaces(m: ModuleRep, vectors: dict) -> dict:
    return {v: Subspace(m.field, m.d(v), vectors.get(v, ())) for v in m.support}


def submodule(m: ModuleRep, spaces: dict, check: bool = True) -> tuple[ModuleRep, ModuleHom]:
    """Submodule spanned per vertex by ``spaces[v]`` (Subspace or vectors).

    Returns the module and its inclusion.  Stability under arrows is verified
    when ``check`` is set.
    """
    F = m.field
    subs = {v: (s if isinstance(s, Subspace) else Subspace(F, m.d(v), s)) for v, s in spaces.items()}
    dims = {v: s.dim for v, s in subs.items()}
    maps = {}
    for f, a, v, w in m.contexts():
        sv, sw = subs.get(v), subs.get(w)
        if sv is None or not sv.dim:
            continue
        am = m.amap(f, a, v)
        cols = []
        for b in sv.basis():
            img = am.apply(b)
            if sw is None or not sw.dim:
                if check and any(img):
                    raise ValueError("subspace is not a submodule")
                cols.append([])
                continue
            if check and not sw.contains(img):
                raise ValueError("subspace is not a submodule")
            cols.append(sw.coords(img))
        if sw is not None and sw.dim:
            maps[(f, a, v)] = Matrix.from_columns(cols, sw.dim, F)
    sub = ModuleRep(m.algebra, dims, maps)
    inc = ModuleHom(sub, m, {v: Matrix.from_columns(subs[v].basis(), m.d(v), F)
                            for v in sub.support})
    return sub, inc


def quotient(m: ModuleRep, spaces: dict) -> tuple[ModuleRep, ModuleHom, dict]:
    """Quotient ``m / U``; returns (module, projection, subspaces used)."""
    F = m.field
    subs = {v: (spaces[v] if isinstance(spaces.get(v), Subspace) else Subspace(F, m.d(v), spaces.get(v, ())))
            for v in m.support}
    free = {v: subs[v].free() for v in m.support}
    dims = {v: len(free[v]) for v in m.support}
    maps = {}
    for f, a, v, w in m.contexts():
        if not dims[v] or not dims[w]:
            continue
        am = m.amap(f, a, v)
        cols = []
        for j in free[v]:
            img = subs[w].reduce(am.column(j))
            cols.append([img[c] for c in free[w]])
        maps[(f, a, v)] = Matrix.from_columns(cols, dims[w], F)
    q = ModuleRep(m.algebra, dims, maps)
    blocks = {}
    for v in q.support:
        rows = []
        fv = free[v]
        for j in range(m.d(v)):
            rows.append(subs[v].reduce(_unit(m.d(v), j, F)))
        blocks[v] = Matrix(len(fv), m.d(v), [[rows[j][c] for j in range(m.d(v))] for c in fv], F)
    proj = ModuleHom(m, q, blocks)
    return q, proj, subs


def kernel(h: ModuleHom) -> tuple[ModuleRep, ModuleHom]:
    spaces = {}
    for v in h.source.support:
        spaces[v] = h.block(v).echelon().kernel() if v in h.target.dims else \
            [_unit(h.source.d(v), j, h.source.field) for j in range(h.source.d(v))]
    return submodule(h.source, spaces, check=False)


def image(h: ModuleHom) -> tuple[ModuleRep, ModuleHom]:
    spaces = {v: h.block(v).columns() for v in h.source.support if v in h.target.dims}
    return submodule(h.target, spaces, check=False)


def cokernel(h: ModuleHom) -> tuple[ModuleRep, ModuleHom]:
    spaces = {v: h.block(v).columns() for v in h.source.support if v in h.target.dims}
    q, p, _ = quotient(h.target, spaces)
    return q, p


def induced_on_quotients(h: ModuleHom, qs: ModuleRep, subs_s: dict, qt: ModuleRep, subs_t: dict) -> ModuleHom:
    """Map between quotients built by :func:`quotient` induced by ``h``."""
    F = h.source.field
    blocks = {}
    for v in qs.support:
        if v not in qt.dims:
            continue
        fs, ft = subs_s[v].free(), subs_t[v].free()
        b = h.block(v)
        cols = []
        for j in fs:
            img = subs_t[v].reduce(b.column(j))
            cols.append([img[c] for c in ft])
        blocks[v] = Matrix.from_columns(cols, len(ft), F)
    return ModuleHom(qs, qt, blocks)


# ---------------------------------------------------------------------------
# constructions


def zero_module(alg: Algebra) -> ModuleRep:
    return ModuleRep(alg, {}, {})


def direct_sum(mods: Sequence[ModuleRep]) -> tuple[ModuleRep, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with inclusions and projections; blocks stack in argument order."""
    if not mods:
        raise ValueError("empty direct sum")
    alg = mods[0].algebra
    if any(m.algebra != alg for m in mods):
        raise AlgebraMismatch("direct sum over different algebras")
    F = alg.field
    dims = {}
    for m in mods:
        for v, d in m.dims.items():
            dims[v] = dims.get(v, 0) + d
    maps = {}
    for f, a in alg.arrow_keys:
        s, t = alg.farrow(f, a)
        for v in dims:
            if v[f] != s:
                continue
            w = v[:f] + (t,) + v[f + 1:]
            if w not in dims:
                continue
            maps[(f, a, v)] = block_diag([m.amap(f, a, v) for m in mods], F)
    proj = None
    if all(m.proj is not None for m in mods):
        proj = tuple(g for m in mods for g in m.proj)
    total = ModuleRep(alg, dims, maps, proj=proj)
    incs, projs = [], []
    start = {v: 0 for v in dims}
    for m in mods:
        ib, pb = {}, {}
        for v in m.support:
            n, s0 = m.d(v), start[v]
            I = Matrix.zeros(dims[v], n, F)
            for i in range(n):
                I.data[s0 + i][i] = F.one
            ib[v] = I
            pb[v] = I.T
            start[v] += n
        incs.append(ModuleHom(m, total, ib))
        projs.append(ModuleHom(total, m, pb))
    return total, incs, projs


def outer_tensor(m: ModuleRep, n: ModuleRep) -> ModuleRep:
    """m (x)_k n over the tensor algebra; basis pairs ordered row-major."""
    from .algebra import tensor
    alg = tensor(m.algebra, n.algebra)
    F = alg.field
    k = m.algebra.nfactors
    dims = {u + w: m.d(u) * n.d(w) for u in m.support for w in n.support}
    maps = {}
    for (f, a, u), mat in m.maps.items():
        for w in n.support:
            maps[(f, a, u + w)] = kronecker(mat, Matrix.identity(n.d(w), F))
    for (f, a, w), mat in n.maps.items():
        for u in m.support:
            maps[(f + k, a, u + w)] = kronecker(Matrix.identity(m.d(u), F), mat)
    proj = None
    if m.proj is not None and n.proj is not None and len(m.proj) == 1 and len(n.proj) == 1:
        proj = (m.proj[0] + n.proj[0],)
    return ModuleRep(alg, dims, maps, proj=proj)


def permute_factors(m: ModuleRep, perm: Sequence[int]) -> ModuleRep:
    """Module over the algebra whose factor ``i`` is old factor ``perm[i]``."""
    alg = m.algebra.restrict(perm)
    inv = {p: i for i, p in enumerate(perm)}

    def pv(v):
        return tuple(v[p] for p in perm)

    dims = {pv(v): d for v, d in m.dims.items()}
    maps = {(inv[f], a, pv(v)): mat for (f, a, v), mat in m.maps.items()}
    proj = tuple(pv(g) for g in m.proj) if m.proj is not None else None
    return ModuleRep(alg, dims, maps, proj=proj)


def restrict_factors(m: ModuleRep, keep: Sequence[int]) -> ModuleRep:
    """Forget the actions of the factors not in ``keep``."""
    alg = m.algebra.restrict(keep)
    F = m.field
    groups: dict = {}
    for v in m.support:
        groups.setdefault(tuple(v[f] for f in keep), []).append(v)
    dims = {u: sum(m.d(v) for v in vs) for u, vs in groups.items()}
    pos = {}
    for u, vs in groups.items():
        o = 0
        for v in vs:
            pos[v] = (u, o)
            o += m.d(v)
    maps = {}
    for j, f in enumerate(keep):
        for a in range(len(m.algebra.factors[f][0].arrows)):
            s, t = m.algebra.farrow(f, a)
            for u in dims:
                if u[j] != s:
                    continue
                ut = u[:j] + (t,) + u[j + 1:]
                if ut not in dims:
                    continue
                M = Matrix.zeros(dims[ut], dims[u], F)
                for v in groups[u]:
                    w = v[:f] + (t,) + v[f + 1:]
                    if w not in m.dims:
                        continue
                    mat = m.amap(f, a, v)
                    _, ro = pos[w]
                    _, co = pos[v]
                    for i, row in enumerate(mat.data):
                        M.data[ro + i][co:co + len(row)] = row
                maps[(j, a, u)] = M
    return ModuleRep(alg, dims, maps)


def permute_hom(h: ModuleHom, perm: Sequence[int], src: ModuleRep, tgt: ModuleRep) -> ModuleHom:
    """Relabel a module map along :func:`permute_factors`."""
    return ModuleHom(src, tgt, {tuple(v[p] for p in perm): b for v, b in h.blocks.items()})


def _group_positions(m: ModuleRep, keep: Sequence[int]) -> dict:
    pos, fill = {}, {}
    for v in m.support:
        u = tuple(v[f] for f in keep)
        pos[v] = (u, fill.get(u, 0))
        fill[u] = fill.get(u, 0) + m.d(v)
    return pos


def restrict_hom(h: ModuleHom, keep: Sequence[int], src: ModuleRep, tgt: ModuleRep) -> ModuleHom:
    """Module map between the restrictions built by :func:`restrict_factors`."""
    F = src.field
    ps, pt = _group_positions(h.source, keep), _group_positions(h.target, keep)
    blocks = {u: Matrix.zeros(tgt.d(u), src.d(u), F) for u in src.support if u in tgt.dims}
    for v, b in h.blocks.items():
        u, co = ps[v]
        _, ro = pt[v]
        B = blocks[u]
        for i, row in enumerate(b.data):
            B.data[ro + i][co:co + len(row)] = row
    return ModuleHom(src, tgt, blocks)


_STD_CACHE: dict = {}


def _factor_projective(alg: Algebra, f: int, x: int) -> ModuleRep:
    sub = alg.restrict([f])
    F = alg.field
    paths = alg.fpaths_from(f, x)
    by_vertex: dict = {}
    for b in paths:
        _, t = alg.fends(f, b)
        by_vertex.setdefault(t, []).append(b)
    index = {b: (t, i) for t, bs in by_vertex.items() for i, b in enumerate(bs)}
    dims = {(t,): len(bs) for t, bs in by_vertex.items()}
    maps = {}
    base = alg.factors[f][0]
    for a in range(len(base.arrows)):
        s, t = alg.farrow(f, a)
        if s not in by_vertex or t not in by_vertex:
            continue
        M = Matrix.zeros(len(by_vertex[t]), len(by_vertex[s]), F)
        ab = base.arrow_basis[a]
        for j, b in enumerate(by_vertex[s]):
            for c, val in alg.fmul(f, ab, b).items():
                tt, i = index[c]
                M.data[i][j] = F.norm(M.data[i][j] + val)
        maps[(0, a, (s,))] = M
    return ModuleRep(sub, dims, maps, proj=((x,),))


def standard_projective(alg: Algebra, v) -> ModuleRep:
    """A e_v with basis the paths starting at v (factorwise, row-major)."""
    key = (alg, tuple(v))
    got = _STD_CACHE.get(key)
    if got is not None:
        return got
    m = None
    for f, x in enumerate(v):
        p = _factor_projective(alg, f, x)
        m = p if m is None else outer_tensor(m, p)
    m = ModuleRep(alg, m.dims, {k: mat for k, mat in m.maps.items()}, proj=(tuple(v),),
                  name=f"P({alg.vertex_label(v)})")
    if len(_STD_CACHE) > 4096:
        _STD_CACHE.clear()
    _STD_CACHE[key] = m
    return m


def standard_paths(alg: Algebra, v) -> dict:
    """For A e_v: vertex -> list of factor-path tuples in basis order."""
    per = []
    for f, x in enumerate(v):
        by_vertex: dict = {}
        for b in alg.fpaths_from(f, x):
            by_vertex.setdefault(alg.fends(f, b)[1], []).append(b)
        per.append(by_vertex)
    out: dict = {}
    import itertools
    for w in itertools.product(*[sorted(bv) for bv in per]):
        lists = [per[f][w[f]] for f in range(len(w))]
        out[tuple(w)] = list(itertools.product(*lists))
    return out


def projective_sum(alg: Algebra, gens: Sequence) -> ModuleRep:
    if not gens:
        return ModuleRep(alg, {}, {}, proj=())
    m, _, _ = direct_sum([standard_projective(alg, g) for g in gens])
    return m


def regular_module(alg: Algebra) -> ModuleRep:
    m = projective_sum(alg, alg.vertices)
    m.name = "A"
    return m


def projectives(alg: Algebra) -> list[ModuleRep]:
    return [standard_projective(alg, v) for v in alg.vertices]


def simple(alg: Algebra, v) -> ModuleRep:
    return ModuleRep(alg, {tuple(v): 1}, {}, name=f"S({alg.vertex_label(v)})")


def simples(alg: Algebra) -> list[ModuleRep]:
    return [simple(alg, v) for v in alg.vertices]


def dual(m: ModuleRep) -> ModuleRep:
    """Hom_k(m, k) as a module over the opposite algebra (transposed actions)."""
    from .algebra import opposite
    alg = opposite(m.algebra)
    maps = {}
    for (f, a, v), mat in m.maps.items():
        w = m.arrow_target(f, a, v)
        maps[(f, a, w)] = mat.T
    name = f"D({m.name})" if m.name else ""
    return ModuleRep(alg, dict(m.dims), maps, name=name)


def dual_hom(h: ModuleHom, ds: ModuleRep | None = None, dt: ModuleRep | None = None) -> ModuleHom:
    """D(h): D(target) -> D(source)."""
    ds = ds or dual(h.source)
    dt = dt or dual(h.target)
    return ModuleHom(dt, ds, {v: b.T for v, b in h.blocks.items()})


def injectives(alg: Algebra) -> list[ModuleRep]:
    """I_v = D(e_v A), the dual of the right projective at v."""
    from .algebra import opposite
    op = opposite(alg)
    out = []
    for v in alg.vertices:
        d = dual(standard_projective(op, v))
        d.name = f"I({alg.vertex_label(v)})"
        out.append(d)
    return out


def regular_bimodule(alg: Algebra) -> ModuleRep:
    """A as a module over A (x) A°: left and right multiplication."""
    from .algebra import envelope
    k = alg.nfactors
    pieces = []
    for f in range(k):
        pieces.append(_factor_regular_bimodule(alg, f))
    m = pieces[0]
    for p in pieces[1:]:
        m = outer_tensor(m, p)
    perm = [2 * f for f in range(k)] + [2 * f + 1 for f in range(k)]
    m = permute_factors(m, perm)
    assert m.algebra == envelope(alg)
    m.name = "A"
    return m


def _factor_regular_bimodule(alg: Algebra, f: int) -> ModuleRep:
    from .algebra import envelope
    sub = alg.restrict([f])
    env = envelope(sub)
    F = alg.field
    base = alg.factors[f][0]
    by_vertex: dict = {}
    for b in range(base.dim):
        s, t = alg.fends(f, b)
        by_vertex.setdefault((t, s), []).append(b)
    index = {b: (v, i) for v, bs in by_vertex.items() for i, b in enumerate(bs)}
    dims = {v: len(bs) for v, bs in by_vertex.items()}
    maps = {}
    for a in range(len(base.arrows)):
        ab = base.arrow_basis[a]
        for side in (0, 1):
            s, t = env.farrow(side, a)
            for v, bs in by_vertex.items():
                if v[side] != s:
                    continue
                w = v[:side] + (t,) + v[side + 1:]
                if w not in dims:
                    continue
                M = Matrix.zeros(dims[w], dims[v], F)
                for j, b in enumerate(bs):
                    prod = alg.fmul(f, ab, b) if side == 0 else alg.fmul(f, b, ab)
                    for c, val in prod.items():
                        _, i = index[c]
                        M.data[i][j] = F.norm(M.data[i][j] + val)
                maps[(side, a, v)] = M
    return ModuleRep(env, dims, maps)


def dual_bimodule(alg: Algebra) -> ModuleRep:
    """A* = Hom_k(A, k) with (a f b)(x) = f(b x a), as an A-bimodule."""
    k = alg.nfactors
    d = dual(regular_bimodule(alg))
    perm = list(range(k, 2 * k)) + list(range(k))
    m = permute_factors(d, perm)
    m.name = "A*"
    return m


def interval_module(alg: Algebra, i: int, j: int) -> ModuleRep:
    """Column module I^i_j over triangular(n): rows i..j (1-based) carry k."""
    base, opp = alg.factors[0]
    n = base.n_vertices
    if alg.nfactors != 1 or opp or not base.name.startswith("T"):
        raise PresentationError("interval modules are defined over triangular algebras")
    if not (1 <= i <= j <= n):
        raise IndexError(f"need 1 <= i <= j <= {n}, got ({i}, {j})")
    F = alg.field
    dims = {(r,): 1 for r in range(i - 1, j)}
    maps = {}
    for a, (s, t) in enumerate(base.arrows):
        if (s,) in dims and (t,) in dims:
            maps[(0, a, (s,))] = Matrix.identity(1, F)
    return ModuleRep(alg, dims, maps, name=f"I^{i}_{j}")


# ---------------------------------------------------------------------------
# radical, top, projective cover


def radical_spaces(m: ModuleRep) -> dict:
    """rad(A) m per vertex: images of arrows (arrows generate the radical)."""
    spaces = {v: Subspace(m.field, m.d(v)) for v in m.support}
    for (f, a, v), mat in m.maps.items():
        w = m.arrow_target(f, a, v)
        for c in mat.columns():
            if any(c):
                spaces[w].add(c)
    return spaces


def radical_of(m: ModuleRep) -> tuple[ModuleRep, ModuleHom]:
    return submodule(m, radical_spaces(m), check=False)


def top(m: ModuleRep) -> tuple[ModuleRep, ModuleHom]:
    q, p, _ = quotient(m, radical_spaces(m))
    return q, p


def cover_generators(m: ModuleRep) -> list[tuple]:
    """(vertex, vector) pairs whose images span top(m), in vertex order."""
    rad = radical_spaces(m)
    out = []
    for v in m.support:
        for j in rad[v].free():
            out.append((v, _unit(m.d(v), j, m.field)))
    return out


def map_from_projective(m: ModuleRep, gens: Sequence[tuple], p: ModuleRep | None = None) -> ModuleHom:
    """Map (+) A e_{v_k} -> m sending the k-th generator to the given vector."""
    alg = m.algebra
    F = m.field
    if p is None:
        p = projective_sum(alg, [v for v, _ in gens])
    blocks = {w: Matrix.zeros(m.d(w), p.d(w), F) for w in p.support if w in m.dims}
    for k, (v, vec) in enumerate(gens):
        paths = standard_paths(alg, v)
        for w, plist in paths.items():
            if w not in blocks:
                continue
            start, _ = p.slots[k][w]
            B = blocks[w]
            for idx, path in enumerate(plist):
                tgt, out = m.apply_path(path, v, list(vec))
                if tgt is None:
                    continue
                for r, x in enumerate(out):
                    if x:
                        B.data[r][start + idx] = x
    return ModuleHom(p, m, blocks)


def projective_cover(m: ModuleRep) -> tuple[ModuleRep, ModuleHom]:
    gens = cover_generators(m)
    if not gens:
        z = projective_sum(m.algebra, [])
        return z, ModuleHom(z, m, {})
    pi = map_from_projective(m, gens)
    return pi.source, pi


# ---------------------------------------------------------------------------
# Hom spaces


class HomSystem:
    """Intertwiner space Hom(m|sel_m, n|sel_n) over the first ``k`` factors.

    With ``k = nfactors`` this is the ordinary Hom space.  Otherwise the
    residual parts ``u`` (of m) and ``w`` (of n) are fixed and the unknowns are
    one block per contracted vertex.
    """

    def __init__(self, m: ModuleRep, n: ModuleRep, k: int | None = None, u=(), w=()):
        self.m, self.n = m, n
        alg = m.algebra
        self.k = alg.nfactors if k is None else k
        self.u, self.w = tuple(u), tuple(w)
        F = m.field
        self.field = F
        lam_m = {v[:self.k] for v in m.support if v[self.k:] == self.u}
        lam_n = {v[:self.k] for v in n.support if v[self.k:] == self.w}
        self.lams = [lam for lam in sorted(lam_m & lam_n)]
        self.off = {}
        o = 0
        for lam in self.lams:
            self.off[lam] = o
            o += n.d(lam + self.w) * m.d(lam + self.u)
        self.nunknowns = o
        ech = Echelon(F, o)
        for f in range(self.k):
            for a in range(len(alg.factors[f][0].arrows)):
                s, t = alg.farrow(f, a)
                for lam in set(lam_m) | set(lam_n):
                    if lam[f] != s:
                        continue
                    lt = lam[:f] + (t,) + lam[f + 1:]
                    vs, vt = lam + self.u, lt + self.u
                    ws_, wt = lam + self.w, lt + self.w
                    dms, dmt = m.d(vs), m.d(vt)
                    dns, dnt = n.d(ws_), n.d(wt)
                    if not dms or not dnt:
                        continue
                    # N_a F_s - F_t M_a = 0   (rows: dnt x dms)
                    Na = n.maps.get((f, a, ws_)) if dns else None
                    Ma = m.maps.get((f, a, vs)) if dmt else None
                    os_ = self.off.get(lam)
                    ot = self.off.get(lt)
                    for r in range(dnt):
                        for c in range(dms):
                            row = {}
                            if Na is not None and os_ is not None:
                                nrow = Na.data[r]
                                for q in range(dns):
                                    x = nrow[q]
                                    if x:
                                        idx = os_ + q * dms + c
                                        row[idx] = x
                            if Ma is not None and ot is not None:
                                for q in range(dmt):
                                    x = Ma.data[q][c]
                                    if x:
                                        idx = ot + r * dmt + q
                                        row[idx] = F.norm(row.get(idx, F.zero) - x)
                            row = {i: x for i, x in row.items() if x}
                            if row:
                                ech.add(row)
        self.ech = ech
        self.free = ech.free_columns()
        self.basis_vectors = ech.kernel()

    @property
    def dim(self) -> int:
        return len(self.free)

    def blocks_of(self, vec: Sequence) -> dict:
        """lam -> Matrix (n block x m block)."""
        out = {}
        for lam in self.lams:
            o = self.off[lam]
            r, c = self.n.d(lam + self.w), self.m.d(lam + self.u)
            out[lam] = Matrix(r, c, [list(vec[o + i * c:o + (i + 1) * c]) for i in range(r)], self.field)
        return out

    def vector_of(self, blocks: dict) -> list:
        F = self.field
        vec = [F.zero] * self.nunknowns
        for lam in self.lams:
            b = blocks.get(lam)
            if b is None:
                continue
            o = self.off[lam]
            c = b.cols
            for i, row in enumerate(b.data):
                vec[o + i * c:o + (i + 1) * c] = row
        return vec

    def coords(self, vec: Sequence) -> list:
        return [vec[j] for j in self.free]

    def element(self, coeffs: Sequence) -> list:
        F = self.field
        vec = [F.zero] * self.nunknowns
        for c, b in zip(coeffs, self.basis_vectors):
            if c:
                for i, x in enumerate(b):
                    if x:
                        vec[i] = F.norm(vec[i] + c * x)
        return vec

    def as_hom(self, vec: Sequence) -> ModuleHom:
        """Full ModuleHom (only meaningful when k = nfactors)."""
        return ModuleHom(self.m, self.n, {lam: b for lam, b in self.blocks_of(vec).items()})


def hom_space(m: ModuleRep, n: ModuleRep) -> list[ModuleHom]:
    if m.algebra != n.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    hs = HomSystem(m, n)
    return [hs.as_hom(b) for b in hs.basis_vectors]


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    if m.algebra != n.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    return HomSystem(m, n).dim


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    witness: ModuleHom | None = None
    reason: str = ""
    evidence: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.status == "yes"


def _random_scalar(rng: random.Random, F: FieldSpec, bound: int = 16):
    if F.char == 0:
        return mpq(rng.randint(-bound, bound))
    return rng.randrange(F.char)


def is_isomorphic(m: ModuleRep, n: ModuleRep, seed: int = 0, trials: int = 8) -> IsoVerdict:
    """Randomized isomorphism test with checkable verdicts.

    "yes" carries an invertible intertwiner; "no" carries the failed necessary
    condition (dimension vectors or Hom/End dimensions).
    """
    if m.algebra != n.algebra:
        raise AlgebraMismatch("isomorphism test across algebras")
    if m.dim != n.dim:
        return IsoVerdict("no", reason=f"dimension {m.dim} != {n.dim}",
                          evidence={"dim": [m.dim, n.dim]})
    if m.dims != n.dims:
        return IsoVerdict("no", reason="dimension vectors differ",
                          evidence={"dim_vector": [m.dim_vector(), n.dim_vector()]})
    if m.dim == 0:
        return IsoVerdict("yes", witness=ModuleHom(m, n, {}))
    hs = HomSystem(m, n)
    dims = {"hom_mn": hs.dim}
    if hs.dim == 0:
        dims.update(end_m=hom_dim(m, m))
        return IsoVerdict("no", reason="Hom(m, n) = 0", evidence=dims)
    rng = random.Random(seed)
    F = m.field
    for _ in range(trials):
        vec = hs.element([_random_scalar(rng, F) for _ in range(hs.dim)])
        h = hs.as_hom(vec)
        if h.is_iso():
            return IsoVerdict("yes", witness=h)
    dims.update(hom_nm=hom_dim(n, m), end_m=hom_dim(m, m), end_n=hom_dim(n, n))
    if len(set(dims.values())) > 1:
        return IsoVerdict("no", reason="Hom/End dimensions differ", evidence=dims)
    return IsoVerdict("inconclusive", reason=f"no invertible element in {trials} trials", evidence=dims)


def recheck_no(m: ModuleRep, n: ModuleRep, verdict: IsoVerdict) -> bool:
    """Independently re-derive the necessary-condition failure behind a "no"."""
    ev = verdict.evidence
    if "dim" in ev:
        return m.dim != n.dim
    if "dim_vector" in ev:
        return m.dim_vector() != n.dim_vector()
    hom_mn = hom_dim(m, n)
    if hom_mn == 0:
        return m.dim > 0
    vals = {hom_mn, hom_dim(n, m), hom_dim(m, m), hom_dim(n, n)}
    return len(vals) > 1


def verify_module(m: ModuleRep, full: bool = False) -> bool:
    """Check the action-homomorphism identity (arrows x basis, or all pairs)."""
    alg = m.algebra
    acts = {}

    def act(i):
        if i not in acts:
            acts[i] = m.action(i)
        return acts[i]

    firsts = range(alg.dim) if full else alg.generator_indices()
    F = m.field
    for i in firsts:
        for j in range(alg.dim):
            lhs = act(i) @ act(j)
            rhs = Matrix.zeros(m.dim, m.dim, F)
            for k, c in alg.mul(i, j).items():
                rhs = rhs + act(k).scale(c)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# tensor products over a shared algebra

IDENT = object()  # marker for identity blocks in the blockwise helpers


def _col(mat, j: int, n: int, F: FieldSpec):
    if mat is IDENT:
        return {j: F.one}
    return {i: row[j] for i, row in enumerate(mat.data) if row[j]}


class TensorProduct:
    """x (x)_L y where x's last ``k`` factors are opposite to y's first ``k``.

    Each result vertex ``(b, c)`` carries ``W = (+)_a x_(b,a) (x) y_(a,c)``
    modulo the balancing relations; the quotient basis is the set of free
    columns of the relation echelon.
    """

    def __init__(self, x: ModuleRep, y: ModuleRep, k: int):
        from .algebra import Algebra
        ax, ay = x.algebra, y.algebra
        r = ax.nfactors - k
        if r < 0 or k > ay.nfactors:
            raise AlgebraMismatch("cannot contract that many factors")
        for f in range(k):
            bx, ox = ax.factors[r + f]
            by, oy = ay.factors[f]
            if bx != by or ox == oy:
                raise AlgebraMismatch("tensor factors are not opposite to each other")
        if ax.field != ay.field:
            raise AlgebraMismatch("modules over different fields")
        self.x, self.y, self.k, self.r = x, y, k, r
        F = self.field = ax.field
        self.algebra = Algebra(ax.factors[:r] + ay.factors[k:], ax.field)
        xs: dict = {}
        for v in x.support:
            xs.setdefault(v[:r], []).append(v[r:])
        ys: dict = {}
        for v in y.support:
            ys.setdefault(v[k:], set()).add(v[:k])
        self.layout: dict = {}
        self.decode: dict = {}
        self.ech: dict = {}
        self.free: dict = {}
        self.free_index: dict = {}
        for b, alist in xs.items():
            for c, aset in ys.items():
                blocks, o, dec = {}, 0, []
                for a in alist:
                    if a in aset:
                        dx, dy = x.d(b + a), y.d(a + c)
                        blocks[a] = (o, dx, dy)
                        dec.extend((a, i, j) for i in range(dx) for j in range(dy))
                        o += dx * dy
                if not o:
                    continue
                v = b + c
                self.layout[v] = blocks
                self.decode[v] = dec
                e = Echelon(F, o)
                self._relations(e, b, c, blocks, alist)
                self.ech[v] = e
                fr = e.free_columns()
                self.free[v] = fr
                self.free_index[v] = {col: n for n, col in enumerate(fr)}
        dims = {v: len(fr) for v, fr in self.free.items()}
        self.module = ModuleRep(self.algebra, dims, {})
        maps = {}
        for f, a in self.algebra.arrow_keys:
            s, t = self.algebra.farrow(f, a)
            for v in self.module.support:
                if v[f] != s:
                    continue
                w = v[:f] + (t,) + v[f + 1:]
                if w not in dims:
                    continue
                if f < r:
                    fa = (f, a)
                    mat = self.blockwise(self, v, w,
                                         lambda aa, fa=fa, v=v: x.maps.get((fa[0], fa[1], v[:r] + aa)),
                                         lambda aa: IDENT)
                else:
                    fa = (f - r + k, a)
                    mat = self.blockwise(self, v, w, lambda aa: IDENT,
                                         lambda aa, fa=fa, v=v: y.maps.get((fa[0], fa[1], aa + v[r:])))
                if not mat.is_zero():
                    maps[(f, a, v)] = mat
        self.module = ModuleRep(self.algebra, dims, maps)

    def _relations(self, e: Echelon, b, c, blocks, alist):
        x, y, k, r = self.x, self.y, self.k, self.r
        ay = y.algebra
        for f in range(k):
            for al in range(len(ay.factors[f][0].arrows)):
                s, t = ay.farrow(f, al)
                for a_t in alist:
                    if a_t[f] != t:
                        continue
                    a_s = a_t[:f] + (s,) + a_t[f + 1:]
                    dxt = x.d(b + a_t)
                    dys = y.d(a_s + c)
                    if not dxt or not dys:
                        continue
                    X = x.maps.get((r + f, al, b + a_t))  # x_(b,a_t) -> x_(b,a_s)
                    Y = y.maps.get((f, al, a_s + c))      # y_(a_s,c) -> y_(a_t,c)
                    bs = blocks.get(a_s)
                    bt = blocks.get(a_t)
                    for i in range(dxt):
                        xcol = _col(X, i, 0, self.field) if (X is not None and bs is not None) else {}
                        for j in range(dys):
                            row = {}
                            if xcol:
                                o_s, _, dys_ = bs
                                for ii, val in xcol.items():
                                    row[o_s + ii * dys_ + j] = val
                            if Y is not None and bt is not None:
                                o_t, _, dyt = bt
                                for jj in range(Y.rows):
                                    val = Y.data[jj][j]
                                    if val:
                                        idx = o_t + i * dyt + jj
                                        row[idx] = self.field.norm(row.get(idx, self.field.zero) - val)
                            row = {q: z for q, z in row.items() if z}
                            if row:
                                e.add(row)

    def project(self, v, vec: dict) -> list:
        """Quotient coordinates of a sparse W-vector at vertex ``v``."""
        F = self.field
        out = [F.zero] * len(self.free.get(v, ()))
        if not out:
            return out
        idx = self.free_index[v]
        for col, val in self.ech[v].remainder(vec).items():
            out[idx[col]] = val
        return out

    def representative(self, v, j: int) -> tuple:
        """(a, i, jj): the pure tensor behind quotient basis vector ``j``."""
        return self.decode[v][self.free[v][j]]

    def blockwise(self, tgt: "TensorProduct", v, w, left, right) -> Matrix:
        """Matrix of sum_a left(a) (x) right(a) from Q_v (self) to Q_w (tgt)."""
        F = self.field
        n_src = len(self.free.get(v, ()))
        n_tgt = len(tgt.free.get(w, ()))
        m = Matrix.zeros(n_tgt, n_src, F)
        if not n_src or not n_tgt:
            return m
        tblocks = tgt.layout[w]
        for j in range(n_src):
            a, i, jj = self.representative(v, j)
            tb = tblocks.get(a)
            if tb is None:
                continue
            L, R = left(a), right(a)
            if L is None or R is None:
                continue
            o, _, dy = tb
            lc = _col(L, i, 0, F)
            rc = _col(R, jj, 0, F)
            vec = {}
            for p, lv in lc.items():
                for q, rv in rc.items():
                    vec[o + p * dy + q] = F.norm(lv * rv)
            col = tgt.project(w, vec)
            for rr, val in enumerate(col):
                if val:
                    m.data[rr][j] = val
        return m

    def map(self, tgt: "TensorProduct", f: ModuleHom | None, g: ModuleHom | None) -> ModuleHom:
        """f (x) g from this product to ``tgt``; None stands for an identity."""
        r = self.r
        blocks = {}
        for v in self.module.support:
            if v not in tgt.module.dims:
                continue
            b, c = v[:r], v[r:]
            left = (lambda a: IDENT) if f is None else (lambda a, b=b: f.blocks.get(b + a))
            right = (lambda a: IDENT) if g is None else (lambda a, c=c: g.blocks.get(a + c))
            blocks[v] = self.blockwise(tgt, v, v, left, right)
        return ModuleHom(self.module, tgt.module, blocks)


def _infer_k(x: ModuleRep, y: ModuleRep) -> int:
    ny = y.algebra.nfactors
    for k in (ny, ny // 2):
        if 0 < k <= x.algebra.nfactors:
            r = x.algebra.nfactors - k
            if all(x.algebra.factors[r + f][0] == y.algebra.factors[f][0]
                   and x.algebra.factors[r + f][1] != y.algebra.factors[f][1] for f in range(k)):
                return k
    raise AlgebraMismatch("could not infer which factors to contract")


def tensor_over(x: ModuleRep, y: ModuleRep, k: int | None = None) -> ModuleRep:
    """x (x)_L y, contracting x's last ``k`` factors against y's first ``k``."""
    return TensorProduct(x, y, _infer_k(x, y) if k is None else k).module


# ---------------------------------------------------------------------------
# Hom modules


class HomModule:
    """Hom_L(x, y) over the first ``k`` factors of both, as a module.

    The result lives over opposite(x's remaining factors) (x) y's remaining
    factors; coordinates are the free columns of each piece's HomSystem.
    """

    def __init__(self, x: ModuleRep, y: ModuleRep, k: int):
        from .algebra import Algebra
        ax, ay = x.algebra, y.algebra
        if ax.factors[:k] != ay.factors[:k]:
            raise AlgebraMismatch("Hom over mismatched factors")
        self.x, self.y, self.k = x, y, k
        self.field = F = ax.field
        rx = ax.nfactors - k
        self.rx = rx
        self.algebra = Algebra(tuple((b, not o) for b, o in ax.factors[k:]) + ay.factors[k:], ax.field)
        us = sorted({v[k:] for v in x.support})
        ws = sorted({v[k:] for v in y.support})
        self.pieces: dict = {}
        for u in us:
            for w in ws:
                hs = HomSystem(x, y, k, u, w)
                if hs.dim:
                    self.pieces[u + w] = hs
        dims = {v: hs.dim for v, hs in self.pieces.items()}
        maps = {}
        alg = self.algebra
        for f, a in alg.arrow_keys:
            s, t = alg.farrow(f, a)
            for v, hs in self.pieces.items():
                if v[f] != s:
                    continue
                w_ = v[:f] + (t,) + v[f + 1:]
                tgt = self.pieces.get(w_)
                if tgt is None:
                    continue
                cols = []
                for vec in hs.basis_vectors:
                    bl = hs.blocks_of(vec)
                    out = {}
                    if f < rx:
                        # precompose with x's arrow running from target u to source u
                        u_t = w_[:rx]
                        for lam in tgt.lams:
                            G = bl.get(lam)
                            X = x.maps.get((k + f, a, lam + u_t))
                            if G is not None and X is not None:
                                out[lam] = G @ X
                    else:
                        ww = v[rx:]
                        for lam in tgt.lams:
                            G = bl.get(lam)
                            Y = y.maps.get((k + f - rx, a, lam + ww))
                            if G is not None and Y is not None:
                                out[lam] = Y @ G
                    cols.append(tgt.coords(tgt.vector_of(out)))
                mat = Matrix.from_columns(cols, tgt.dim, F)
                if not mat.is_zero():
                    maps[(f, a, v)] = mat
        self.module = ModuleRep(self.algebra, dims, maps)

    def map(self, tgt: "HomModule", phi: ModuleHom | None, psi: ModuleHom | None) -> ModuleHom:
        """g -> psi o g o phi with phi: tgt.x -> self.x and psi: self.y -> tgt.y."""
        rx = self.rx
        F = self.field
        blocks = {}
        for v, hs in self.pieces.items():
            th = tgt.pieces.get(v)
            if th is None:
                continue
            u, w = v[:rx], v[rx:]
            cols = []
            for vec in hs.basis_vectors:
                bl = hs.blocks_of(vec)
                out = {}
                for lam in th.lams:
                    G = bl.get(lam)
                    if G is None:
                        continue
                    if phi is not None:
                        P = phi.blocks.get(lam + u)
                        if P is None:
                            continue
                        G = G @ P
                    if psi is not None:
                        Q = psi.blocks.get(lam + w)
                        if Q is None:
                            continue
                        G = Q @ G
                    out[lam] = G
                cols.append(th.coords(th.vector_of(out)))
            blocks[v] = Matrix.from_columns(cols, th.dim, F)
        return ModuleHom(self.module, tgt.module, blocks)


def hom_module(x: ModuleRep, y: ModuleRep, k: int | None = None) -> ModuleRep:
    if k is None:
        # longest common leading block of factors
        fx, fy = x.algebra.factors, y.algebra.factors
        k = 0
        while k < min(len(fx), len(fy)) and fx[k] == fy[k]:
            k += 1
    return HomModule(x, y, k).module
