"""Finite-dimensional split basic algebras.

Three kinds of presentation share one read-only protocol (``dim``, ``labels``,
``mul``, ``unit``, ``idempotents``, ``radical_basis``, ``field``):

``BaseAlgebra``
    an algebra with a monomial path basis: every basis element is a product of
    arrows between primitive idempotents.  Built by :func:`triangular`,
    :func:`path_algebra`, or recovered from raw constants.
``Algebra``
    a tensor product of factors ``(BaseAlgebra, opposite?)``.  Modules live
    over these; a bimodule over ``B``-``A`` is a module over ``B (x) A°``.
``RawAlgebra``
    bare structure constants, e.g. loaded from JSON.  Supports verification,
    centers, opposites and envelopes but no module theory until converted.
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .exactlin import QQ, Echelon, FieldSpec


class PresentationError(ValueError):
    """Raised for malformed algebra input (cyclic quivers, bad relations, ...)."""


Sparse = dict  # basis index -> scalar


# ---------------------------------------------------------------------------
# base algebras with a path basis


class BaseAlgebra:
    """Algebra with basis of paths, each lying in ``e_target A e_source``.

    ``words[b]`` lists arrow indices in the order they are applied, so the
    path ``b`` equals ``arrow[w[-1]] * ... * arrow[w[0]]``.  Products follow
    composition order: ``mul(p, q)`` is "first q, then p".
    """

    def __init__(
        self,
        name: str,
        field: FieldSpec,
        n_vertices: int,
        arrows: Sequence[tuple[int, int]],
        labels: Sequence[str],
        ends: Sequence[tuple[int, int]],
        words: Sequence[tuple[int, ...]],
        table: dict[tuple[int, int], Sparse],
        vertex_labels: Sequence[str] | None = None,
    ):
        self.name = name
        self.field = field
        self.n_vertices = n_vertices
        self.arrows = [tuple(a) for a in arrows]  # (source, target)
        self.labels = list(labels)
        self.ends = [tuple(e) for e in ends]  # (source, target)
        self.words = [tuple(w) for w in words]
        self._table = table
        self.vertex_labels = list(vertex_labels or [str(v + 1) for v in range(n_vertices)])
        self.idem = [None] * n_vertices
        self.arrow_basis = [None] * len(self.arrows)
        for b, w in enumerate(self.words):
            if not w:
                self.idem[self.ends[b][0]] = b
            elif len(w) == 1:
                self.arrow_basis[w[0]] = b
        if any(i is None for i in self.idem) or any(a is None for a in self.arrow_basis):
            raise PresentationError("path basis must contain every trivial path and arrow")
        self._paths_from: dict[int, list[int]] = {}
        for b, (s, _) in enumerate(self.ends):
            self._paths_from.setdefault(s, []).append(b)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> Sparse:
        return self._table.get((i, j), {})

    def paths_from(self, v: int) -> list[int]:
        return self._paths_from.get(v, [])

    @cached_property
    def key(self) -> tuple:
        table = tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))
        return (self.field.char, self.n_vertices, tuple(self.arrows), tuple(self.ends),
                tuple(self.words), table)

    def __eq__(self, other):
        return isinstance(other, BaseAlgebra) and (self is other or self.key == other.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"BaseAlgebra({self.name}, dim={self.dim}, {self.field})"


def triangular(n: int, field: FieldSpec = QQ) -> "Algebra":
    """Upper triangular n x n matrices; basis ``e_ij`` (i <= j) in lexicographic order.

    Vertex ``i`` (0-based) carries ``e_ii``; the arrow ``e_{i,i+1}`` runs from
    vertex ``i+1`` to vertex ``i`` so that ``A e_jj`` is the j-th column.
    """
    if n < 1:
        raise PresentationError("n must be >= 1")
    units = [(i, j) for i in range(n) for j in range(i, n)]
    index = {u: k for k, u in enumerate(units)}
    arrows = [(i + 1, i) for i in range(n - 1)]
    labels = [f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1},{j + 1}" for i, j in units]
    ends = [(j, i) for i, j in units]
    words = [tuple(range(j - 1, i - 1, -1)) for i, j in units]
    table = {}
    one = field.one
    for (i, j), a in index.items():
        for k in range(j, n):
            table[(a, index[(j, k)])] = {index[(i, k)]: one}
    base = BaseAlgebra(f"T{n}", field, n, arrows, labels, ends, words, table)
    return Algebra(((base, False),))


@dataclass
class QuiverSpec:
    """Quiver with optional relations.

    Relations are lists of ``(coefficient, path)`` where a path is a tuple of
    arrow indices in application order.
    """

    vertices: int
    arrows: list[tuple[int, int]]
    relations: list[list[tuple[object, tuple[int, ...]]]] = dc_field(default_factory=list)


def _enumerate_paths(q: QuiverSpec) -> list[tuple[int, int, tuple[int, ...]]]:
    ts = graphlib.TopologicalSorter({v: set() for v in range(q.vertices)})
    for s, t in q.arrows:
        if not (0 <= s < q.vertices and 0 <= t < q.vertices):
            raise PresentationError(f"arrow ({s},{t}) has an endpoint outside the quiver")
        ts.add(t, s)
    try:
        tuple(ts.static_order())
    except graphlib.CycleError as exc:
        raise PresentationError("quiver has an oriented cycle") from exc
    out = [(v, v, ()) for v in range(q.vertices)]
    frontier = [(s, t, (a,)) for a, (s, t) in enumerate(q.arrows)]
    while frontier:
        out.extend(frontier)
        nxt = []
        for s, t, w in frontier:
            for a, (s2, t2) in enumerate(q.arrows):
                if s2 == t:
                    nxt.append((s, t2, w + (a,)))
        frontier = nxt
    return out


def path_algebra(q: QuiverSpec, field: FieldSpec = QQ, name: str = "kQ") -> "Algebra":
    """Path algebra of an acyclic quiver modulo admissible relations."""
    paths = _enumerate_paths(q)
    pindex = {w if w else ("e", s): k for k, (s, t, w) in enumerate(paths)}

    def pkey(s, w):
        return w if w else ("e", s)

    def concat(p, r):  # p then r applied after
        sp, tp, wp = paths[p]
        sr, tr, wr = paths[r]
        if tp != sr:
            return None
        return pindex[pkey(sp, wp + wr)]

    # ideal generated by the relations, in path coordinates
    rel_rows = []
    for rel in q.relations:
        terms = [(field(c), tuple(w)) for c, w in rel]
        if any(len(w) < 2 for _, w in terms):
            raise PresentationError("relations must be combinations of paths of length >= 2")
        if any(w not in pindex for _, w in terms):
            raise PresentationError("relation mentions a sequence of arrows that is not a path")
        ends = {(paths[pindex[w]][0], paths[pindex[w]][1]) for _, w in terms}
        if len(ends) != 1:
            raise PresentationError("each relation must be a combination of parallel paths")
        (s0, t0), = ends
        for pre in range(len(paths)):
            if paths[pre][1] != s0:
                continue
            for post in range(len(paths)):
                if paths[post][0] != t0:
                    continue
                row = {}
                for c, w in terms:
                    x = concat(pre, pindex[w])
                    y = concat(x, post)
                    row[y] = field.norm(row.get(y, field.zero) + c)
                row = {k: v for k, v in row.items() if v}
                if row:
                    rel_rows.append(row)
    # columns ordered longest-first so pivots land on long paths
    order = sorted(range(len(paths)), key=lambda k: (-len(paths[k][2]), k))
    col_of = {k: c for c, k in enumerate(order)}
    ech = Echelon(field, len(paths))
    for row in rel_rows:
        ech.add({col_of[k]: v for k, v in row.items()})
    pivot_paths = {order[c] for c in ech.rows}
    basis_paths = [k for k in range(len(paths)) if k not in pivot_paths]
    bidx = {k: i for i, k in enumerate(basis_paths)}
    normal: dict[int, Sparse] = {}
    for k in range(len(paths)):
        if k in bidx:
            normal[k] = {bidx[k]: field.one}
        else:
            row = ech.normalized_row(col_of[k])
            normal[k] = {bidx[order[c]]: field.neg(v) for c, v in row.items() if c != col_of[k]}
    table = {}
    for i, p in enumerate(basis_paths):
        for j, r in enumerate(basis_paths):
            x = concat(r, p)  # r first, then p
            if x is not None and normal[x]:
                table[(i, j)] = normal[x]
    labels = []
    for k in basis_paths:
        s, t, w = paths[k]
        labels.append(f"e{s + 1}" if not w else "".join(f"a{a + 1}" for a in reversed(w)))
    base = BaseAlgebra(name, field, q.vertices, q.arrows, labels,
                       [(paths[k][0], paths[k][1]) for k in basis_paths],
                       [paths[k][2] for k in basis_paths], table)
    for a in range(len(q.arrows)):
        if (a,) not in {paths[k][2] for k in basis_paths}:
            raise PresentationError("relations kill an arrow (not admissible)")
    return Algebra(((base, False),))


def linear_quiver(n: int) -> QuiverSpec:
    """A_n with arrows i+1 -> i, matching the column model of :func:`triangular`."""
    return QuiverSpec(n, [(i + 1, i) for i in range(n - 1)])


# ---------------------------------------------------------------------------
# tensor products of factors


Factor = tuple  # (BaseAlgebra, opposite: bool)


class Algebra:
    """Tensor product of base algebras (each possibly opposite).

    Basis elements are tuples of factor basis indices, flattened in mixed radix
    with the first factor most significant; vertices are tuples of factor
    vertices in lexicographic order.
    """

    def __init__(self, factors: Iterable[Factor], field: FieldSpec | None = None):
        self.factors: tuple[Factor, ...] = tuple((b, bool(o)) for b, o in factors)
        fields = {b.field for b, _ in self.factors} | ({field} if field is not None else set())
        if len(fields) > 1:
            raise PresentationError("factors live over different fields")
        self.field = next(iter(fields)) if fields else QQ
        self._dims = [b.dim for b, _ in self.factors]

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Algebra) and self.factors == other.factors and self.field == other.field

    def __hash__(self):
        return hash((self.factors, self.field.char))

    def __repr__(self):
        names = " (x) ".join(b.name + ("°" if o else "") for b, o in self.factors)
        return f"Algebra({names or 'k'}, {self.field})"

    @property
    def name(self) -> str:
        return " (x) ".join(b.name + ("op" if o else "") for b, o in self.factors) or "k"

    @property
    def nfactors(self) -> int:
        return len(self.factors)

    # factor-level conventions -------------------------------------------
    def fends(self, f: int, b: int) -> tuple[int, int]:
        """(source, target) of factor basis element b in factor f."""
        base, opp = self.factors[f]
        s, t = base.ends[b]
        return (t, s) if opp else (s, t)

    def farrow(self, f: int, a: int) -> tuple[int, int]:
        base, opp = self.factors[f]
        s, t = base.arrows[a]
        return (t, s) if opp else (s, t)

    def fword(self, f: int, b: int) -> tuple[int, ...]:
        base, opp = self.factors[f]
        w = base.words[b]
        return tuple(reversed(w)) if opp else w

    def fmul(self, f: int, i: int, j: int) -> Sparse:
        base, opp = self.factors[f]
        return base.mul(j, i) if opp else base.mul(i, j)

    def fpaths_from(self, f: int, v: int) -> list[int]:
        base, opp = self.factors[f]
        if not opp:
            return base.paths_from(v)
        return [b for b in range(base.dim) if base.ends[b][1] == v]

    # flat structure -----------------------------------------------------
    @cached_property
    def dim(self) -> int:
        d = 1
        for x in self._dims:
            d *= x
        return d

    def split(self, i: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self._dims):
            i, r = divmod(i, d)
            out.append(r)
        return tuple(reversed(out))

    def join(self, t: Sequence[int]) -> int:
        i = 0
        for x, d in zip(t, self._dims):
            i = i * d + x
        return i

    @cached_property
    def labels(self) -> list[str]:
        names = []
        for f, (b, o) in enumerate(self.factors):
            names.append([lab + ("°" if o else "") for lab in b.labels])
        return ["(x)".join(p) if p else "1" for p in itertools.product(*names)]

    def mul(self, i: int, j: int) -> Sparse:
        ti, tj = self.split(i), self.split(j)
        acc = {(): self.field.one}
        for f in range(len(self.factors)):
            prod = self.fmul(f, ti[f], tj[f])
            if not prod:
                return {}
            acc = {k + (x,): self.field.norm(c * d) for k, c in acc.items() for x, d in prod.items()}
        return {self.join(k): c for k, c in acc.items() if c}

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(b.n_vertices) for b, _ in self.factors]))

    def idempotent_index(self, v: Sequence[int]) -> int:
        return self.join([b.idem[x] for (b, _), x in zip(self.factors, v)])

    @cached_property
    def idempotents(self) -> list[list]:
        return [self._unitvec(self.idempotent_index(v)) for v in self.vertices]

    @cached_property
    def unit(self) -> list:
        F = self.field
        u = [F.zero] * self.dim
        for v in self.vertices:
            u[self.idempotent_index(v)] = F.one
        return u

    @cached_property
    def radical_indices(self) -> list[int]:
        out = []
        for i in range(self.dim):
            t = self.split(i)
            if any(self.factors[f][0].words[x] for f, x in enumerate(t)):
                out.append(i)
        return out

    @cached_property
    def radical_basis(self) -> list[list]:
        return [self._unitvec(i) for i in self.radical_indices]

    def _unitvec(self, i: int) -> list:
        F = self.field
        v = [F.zero] * self.dim
        v[i] = F.one
        return v

    def ends(self, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(source vertex, target vertex) of a flat basis element."""
        t = self.split(i)
        st = [self.fends(f, x) for f, x in enumerate(t)]
        return tuple(s for s, _ in st), tuple(t_ for _, t_ in st)

    @cached_property
    def arrow_keys(self) -> list[tuple[int, int]]:
        """(factor, arrow) pairs; arrows of different factors commute."""
        return [(f, a) for f, (b, _) in enumerate(self.factors) for a in range(len(b.arrows))]

    def generator_indices(self) -> list[int]:
        """Flat indices of idempotents and arrows-in-context; they generate the algebra."""
        out = [self.idempotent_index(v) for v in self.vertices]
        for f, a in self.arrow_keys:
            base = self.factors[f][0]
            for v in self.vertices:
                s, _ = self.farrow(f, a)
                if v[f] != s:
                    continue
                t = [self.factors[g][0].idem[x] if g != f else base.arrow_basis[a]
                     for g, x in enumerate(v)]
                out.append(self.join(t))
        return out

    def restrict(self, keep: Sequence[int]) -> "Algebra":
        return Algebra(tuple(self.factors[f] for f in keep), self.field)

    def vertex_label(self, v: Sequence[int]) -> str:
        return ",".join(self.factors[f][0].vertex_labels[x] for f, x in enumerate(v))


def opposite(a):
    if isinstance(a, RawAlgebra):
        return a.opposite()
    return Algebra(tuple((b, not o) for b, o in a.factors), a.field)


def tensor(*algs: Algebra) -> Algebra:
    return Algebra(tuple(f for a in algs for f in a.factors), algs[0].field if algs else None)


def envelope(a):
    """A (x) A°; left modules over it are A-bimodules."""
    if isinstance(a, RawAlgebra):
        return a.envelope()
    return tensor(a, opposite(a))


def field_algebra(field: FieldSpec = QQ) -> Algebra:
    return triangular(1, field)


# ---------------------------------------------------------------------------
# raw structure constants


class RawAlgebra:
    """Algebra given by explicit structure constants ``c[i][j] = {k: value}``."""

    def __init__(self, field: FieldSpec, labels, table: dict[tuple[int, int], Sparse],
                 unit: list, idempotents: list[list], radical: list[list]):
        self.field = field
        self.labels = list(labels)
        self._table = {k: dict(v) for k, v in table.items() if v}
        self.unit = list(unit)
        self.idempotents = [list(e) for e in idempotents]
        self.radical_basis = [list(r) for r in radical]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def name(self) -> str:
        return f"raw{self.dim}"

    def mul(self, i: int, j: int) -> Sparse:
        return self._table.get((i, j), {})

    def opposite(self) -> "RawAlgebra":
        t = {(j, i): v for (i, j), v in self._table.items()}
        return RawAlgebra(self.field, [x + "°" for x in self.labels], t, self.unit,
                          self.idempotents, self.radical_basis)

    def envelope(self) -> "RawAlgebra":
        op = self.opposite()
        d = self.dim
        F = self.field
        t = {}
        for (i, j), vij in self._table.items():
            for (k, l), vkl in op._table.items():
                t[(i * d + k, j * d + l)] = {
                    a * d + b: F.norm(x * y) for a, x in vij.items() for b, y in vkl.items()}
        labels = [f"{x}(x){y}" for x in self.labels for y in op.labels]

        def kron(u, v):
            return [F.norm(a * b) for a in u for b in v]

        unit = kron(self.unit, op.unit)
        idem = [kron(e, f) for e in self.idempotents for f in op.idempotents]
        basis = [[F.one if k == i else F.zero for k in range(d)] for i in range(d)]
        rad = [kron(r, b) for r in self.radical_basis for b in basis]
        rad += [kron(b, r) for b in basis for r in op.radical_basis]
        return RawAlgebra(F, labels, t, unit, idem, _independent(rad, d * d, F))

    @classmethod
    def from_algebra(cls, a) -> "RawAlgebra":
        t = {(i, j): a.mul(i, j) for i in range(a.dim) for j in range(a.dim) if a.mul(i, j)}
        return cls(a.field, a.labels, t, a.unit, a.idempotents, a.radical_basis)

    def to_base(self) -> Algebra:
        """Recover a path-basis presentation, or raise PresentationError."""
        F, d = self.field, self.dim
        idem = []
        for e in self.idempotents:
            nz = [i for i, x in enumerate(e) if x]
            if len(nz) != 1 or e[nz[0]] != F.one:
                raise PresentationError("idempotents must be basis elements for module computations")
            idem.append(nz[0])
        vert = {b: v for v, b in enumerate(idem)}
        ends = []
        for b in range(d):
            st = [(s, t) for s, es in enumerate(idem) for t, et in enumerate(idem)
                  if self.mul(et, b) == {b: F.one} and self.mul(b, es) == {b: F.one}]
            if len(st) != 1:
                raise PresentationError(f"basis element {self.labels[b]} is not Peirce-homogeneous")
            ends.append(st[0])
        rad = [b for b in range(d) if b not in vert]
        rad_ech = Echelon(F, d)
        for r in self.radical_basis:
            rad_ech.add({i: x for i, x in enumerate(r) if x})
        if rad_ech.rank != len(rad) or any(not rad_ech.contains({b: F.one}) for b in rad):
            raise PresentationError("radical must be spanned by the non-idempotent basis elements")
        sq = set()
        for x in rad:
            for y in rad:
                sq.update(self.mul(x, y))
        arrow_elems = [b for b in rad if b not in sq]
        words = {vert_b: () for vert_b in idem}
        for k, b in enumerate(arrow_elems):
            words[b] = (k,)
        changed = True
        while changed:
            changed = False
            for b in rad:
                if b in words:
                    continue
                for k, x in enumerate(arrow_elems):
                    for y, wy in list(words.items()):
                        if wy and self.mul(x, y) == {b: F.one}:
                            words[b] = wy + (k,)
                            changed = True
                            break
                    if b in words:
                        break
        if len(words) != d:
            raise PresentationError("basis is not monomial in the arrows")
        arrows = [ends[b] for b in arrow_elems]
        base = BaseAlgebra("raw", F, len(idem), arrows, self.labels, ends,
                           [words[b] for b in range(d)], dict(self._table))
        return Algebra(((base, False),))


def _independent(vectors, dim, field):
    e = Echelon(field, dim)
    return [v for v in vectors if e.add({i: x for i, x in enumerate(v) if x}) is not None]


# ---------------------------------------------------------------------------
# generic checks


def _mul_vec(a, u: Sparse, v: Sparse) -> Sparse:
    F = a.field
    out = {}
    for i, x in u.items():
        for j, y in v.items():
            for k, c in a.mul(i, j).items():
                out[k] = F.norm(out.get(k, F.zero) + x * y * c)
    return {k: x for k, x in out.items() if x}


def _sp(vec) -> Sparse:
    return {i: x for i, x in enumerate(vec) if x}


def center(a) -> list[list]:
    """Basis of the center, as the kernel of the commutator system."""
    F, d = a.field, a.dim
    gens = a.generator_indices() if isinstance(a, Algebra) else range(d)
    rows = {}
    for i in gens:
        for j in range(d):
            for k, c in a.mul(j, i).items():
                rows.setdefault((i, k), {})
                rows[(i, k)][j] = F.norm(rows[(i, k)].get(j, F.zero) + c)
            for k, c in a.mul(i, j).items():
                rows.setdefault((i, k), {})
                rows[(i, k)][j] = F.norm(rows[(i, k)].get(j, F.zero) - c)
    e = Echelon(F, d)
    for r in rows.values():
        r = {k: v for k, v in r.items() if v}
        if r:
            e.add(r)
    return e.kernel()


@dataclass
class VerifyReport:
    ok: bool
    checked: list[str]
    failure: str | None = None

    def __bool__(self):
        return self.ok


def verify_presentation(a, max_assoc_dim: int = 80) -> VerifyReport:
    """Check associativity, unit, idempotents and the declared radical.

    Associativity is checked on every basis triple when ``dim <= max_assoc_dim``;
    tensor presentations of larger size are associative by construction and are
    checked on generator triples instead.
    """
    F, d = a.field, a.dim
    checked = []
    basis = [{i: F.one} for i in range(d)]

    def fail(msg):
        return VerifyReport(False, checked, msg)

    triples = range(d)
    if d > max_assoc_dim and isinstance(a, Algebra):
        triples = a.generator_indices()
    for i in triples:
        for j in range(d):
            ij = a.mul(i, j)
            for k in range(d):
                lhs = _mul_vec(a, ij, basis[k])
                rhs = _mul_vec(a, basis[i], a.mul(j, k))
                if lhs != rhs:
                    return fail(f"associativity fails on ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})")
    checked.append("associativity")
    u = _sp(a.unit)
    for i in range(d):
        if _mul_vec(a, u, basis[i]) != basis[i] or _mul_vec(a, basis[i], u) != basis[i]:
            return fail(f"unit does not act as identity on {a.labels[i]}")
    checked.append("unit")
    idem = [_sp(e) for e in a.idempotents]
    total = {}
    for x, e in enumerate(idem):
        for y, f in enumerate(idem):
            prod = _mul_vec(a, e, f)
            want = e if x == y else {}
            if prod != want:
                return fail(f"idempotents {x + 1},{y + 1} are not orthogonal idempotents")
        for k, c in e.items():
            total[k] = F.norm(total.get(k, F.zero) + c)
    if {k: v for k, v in total.items() if v} != u:
        return fail("idempotents do not sum to the unit")
    checked.append("idempotents")
    rad = [_sp(r) for r in a.radical_basis]
    ech = Echelon(F, d)
    for r in rad:
        ech.add(r)
    for r in rad:
        for i in range(d):
            for prod in (_mul_vec(a, basis[i], r), _mul_vec(a, r, basis[i])):
                if prod and not ech.contains(prod):
                    return fail(f"radical is not an ideal (product with {a.labels[i]})")
    checked.append("radical ideal")
    power = rad
    for _ in range(d + 1):
        if not power:
            break
        e2 = Echelon(F, d)
        nxt = []
        for p in power:
            for r in rad:
                prod = _mul_vec(a, p, r)
                if prod and e2.add(prod) is not None:
                    nxt.append(prod)
        power = nxt
    if power:
        return fail("radical is not nilpotent")
    checked.append("radical nilpotent")
    for e in idem:
        if ech.add(e) is None:
            return fail("idempotents are not independent modulo the radical")
    if ech.rank != d:
        return fail("algebra is not basic: A != rad A + span(idempotents)")
    checked.append("basic split")
    return VerifyReport(True, checked)


def structure_triples(a) -> list[tuple[int, int, int, object]]:
    out = []
    for i in range(a.dim):
        for j in range(a.dim):
            for k, c in sorted(a.mul(i, j).items()):
                out.append((i, j, k, c))
    return out
