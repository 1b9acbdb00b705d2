"""Random modules and complexes for the property suites, plus brute-force oracles."""

from __future__ import annotations

import random

from gmpy2 import mpq

from dmorita.algebra import Algebra, opposite, triangular
from dmorita.complex import ComplexRep
from dmorita.exactlin import Matrix, kronecker, rank
from dmorita.module import (
    ModuleHom, ModuleRep, cokernel, hom_space, zero_hom,
)


def scalar(rng: random.Random, F, bound: int = 4):
    if F.char == 0:
        return mpq(rng.randint(-bound, bound))
    return rng.randrange(F.char)


def rand_matrix(rng, r, c, F, density=0.7):
    return Matrix(r, c, [[scalar(rng, F) if rng.random() < density else F.zero for _ in range(c)]
                         for _ in range(r)], F)


def random_module(alg: Algebra, rng: random.Random, maxdim: int = 2) -> ModuleRep:
    """Random representation of a hereditary (relation-free) single-factor algebra."""
    F = alg.field
    dims = {v: rng.randint(0, maxdim) for v in alg.vertices}
    dims = {v: d for v, d in dims.items() if d}
    maps = {}
    for f, a in alg.arrow_keys:
        s, t = alg.farrow(f, a)
        v, w = (s,), (t,)
        if v in dims and w in dims:
            maps[(f, a, v)] = rand_matrix(rng, dims[w], dims[v], F)
    return ModuleRep(alg, dims, maps)


def random_hom(m: ModuleRep, n: ModuleRep, rng: random.Random) -> ModuleHom:
    h = zero_hom(m, n)
    for b in hom_space(m, n):
        h = h + b.scale(scalar(rng, m.field))
    return h


def random_complex(alg: Algebra, rng: random.Random, length: int = 3, lo: int = 0,
                   maxdim: int = 2) -> ComplexRep:
    """d^p = (projection onto coker of h d^{p-1}) after a random h, so d^2 = 0 by construction."""
    terms = {lo: random_module(alg, rng, maxdim)}
    diffs = {}
    prev = None
    for p in range(lo, lo + length - 1):
        n = random_module(alg, rng, maxdim)
        h = random_hom(terms[p], n, rng)
        if prev is not None:
            q, pi = cokernel(h @ prev)
            h = pi @ h
            n = q
        terms[p + 1] = n
        diffs[p] = h
        prev = h
    return ComplexRep(alg, terms, diffs)


def algebras(F):
    return [triangular(n, F) for n in (2, 3)]


def op_of(a: Algebra) -> Algebra:
    return opposite(a)


# ---------------------------------------------------------------------------
# oracles that only look at global action matrices


def intertwines(h: ModuleHom) -> bool:
    """W S(b) = T(b) W for every algebra basis element, on the flat matrices."""
    W = h.matrix
    alg = h.source.algebra
    return all(W @ h.source.action(i) == h.target.action(i) @ W for i in range(alg.dim))


def is_invertible_hom(h: ModuleHom) -> bool:
    W = h.matrix
    return W.shape[0] == W.shape[1] and rank(W) == W.shape[0]


def brute_hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    """dim of {W : W S(b) = T(b) W} via Kronecker products on vec(W)."""
    F = m.field
    if m.dim == 0 or n.dim == 0:
        return 0
    rows = []
    In, Im = Matrix.identity(n.dim, F), Matrix.identity(m.dim, F)
    for i in range(m.algebra.dim):
        # vec(W S) = (S^T (x) I) vec W ; vec(T W) = (I (x) T) vec W
        blk = kronecker(m.action(i).T, In) - kronecker(Im, n.action(i))
        rows.extend(blk.data)
    big = Matrix(len(rows), m.dim * n.dim, rows, F)
    return m.dim * n.dim - rank(big)


def euler_terms(c: ComplexRep) -> int:
    return sum((-1) ** (p % 2) * m.dim for p, m in c.terms.items())
