"""JSON encodings for algebras, quivers, modules, complexes and witnesses.

Scalars are written as strings: ``"num/den"`` (or an integer) over Q and the
residue over F_p.
"""

from __future__ import annotations

import json
from typing import Any

from .algebra import Algebra, PresentationError, QuiverSpec, RawAlgebra, path_algebra, verify_presentation
from .exactlin import FieldSpec, Matrix, QQ, rank
from .module import ModuleHom, ModuleRep


def scalar_str(F: FieldSpec, x) -> str:
    return F.to_str(x)


def _vec(F: FieldSpec, v) -> list[str]:
    return [F.to_str(x) for x in v]


def _mat(m: Matrix) -> list[list[str]]:
    return [[m.field.to_str(x) for x in r] for r in m.data]


def matrix_from_json(rows, F: FieldSpec, shape: tuple[int, int] | None = None) -> Matrix:
    if not rows:
        r, c = shape or (0, 0)
        return Matrix.zeros(r, c, F)
    return Matrix.from_rows(rows, F)


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# algebras and quivers


def algebra_to_json(a) -> dict:
    raw = a if isinstance(a, RawAlgebra) else RawAlgebra.from_algebra(a)
    F = raw.field
    consts = []
    for i in range(raw.dim):
        for j in range(raw.dim):
            for k, x in sorted(raw.mul(i, j).items()):
                consts.append([i, j, k, F.to_str(x)])
    return {
        "dim": raw.dim,
        "field": {"char": F.char},
        "labels": list(raw.labels),
        "unit": _vec(F, raw.unit),
        "idempotents": [_vec(F, e) for e in raw.idempotents],
        "radical": [_vec(F, r) for r in raw.radical_basis],
        "constants": consts,
    }


def raw_algebra_from_json(d: dict) -> RawAlgebra:
    try:
        F = FieldSpec(int(d.get("field", {}).get("char", 0)))
        dim = int(d["dim"])
        labels = d.get("labels") or [f"b{i}" for i in range(dim)]
        table: dict = {}
        for i, j, k, x in d["constants"]:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise PresentationError(f"structure constant index out of range: {(i, j, k)}")
            v = F(x)
            if v:
                table.setdefault((i, j), {})[k] = v
        unit = [F(x) for x in d["unit"]]
        idem = [[F(x) for x in e] for e in d["idempotents"]]
        rad = [[F(x) for x in r] for r in d.get("radical", [])]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, PresentationError):
            raise
        raise PresentationError(f"malformed algebra JSON: {exc}") from exc
    for vec in [unit, *idem, *rad]:
        if len(vec) != dim:
            raise PresentationError("coordinate vector has the wrong length")
    return RawAlgebra(F, labels, table, unit, idem, rad)


def algebra_from_json(d: dict) -> Algebra:
    """Load, certify the presentation, and convert to a path-basis algebra."""
    raw = raw_algebra_from_json(d)
    rep = verify_presentation(raw)
    if not rep.ok:
        raise PresentationError(f"presentation check failed: {rep.failure}")
    return raw.to_base()


def quiver_from_json(d: dict, field: FieldSpec = QQ) -> Algebra:
    try:
        n = int(d["vertices"])
        arrows = [(int(s), int(t)) for s, t in d["arrows"]]
        rels = []
        for rel in d.get("relations", []) or []:
            rels.append([(field(c), tuple(int(a) for a in path)) for c, path in rel])
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed quiver JSON: {exc}") from exc
    return path_algebra(QuiverSpec(n, arrows, rels), field)


# ---------------------------------------------------------------------------
# modules and witnesses


def module_to_json(m: ModuleRep, algebra_id: str = "A", generators_only: bool = False) -> dict:
    """Action matrices on the global basis; ``basis_indices`` says which basis elements are listed."""
    alg = m.algebra
    idx = alg.generator_indices() if generators_only else list(range(alg.dim))
    out = {"algebra": algebra_id, "dim": m.dim, "action": [_mat(m.action(i)) for i in idx]}
    if generators_only:
        out["basis_indices"] = idx
    return out


def module_from_json(d: dict, alg: Algebra) -> ModuleRep:
    """Rebuild the vertex-graded form from full action matrices."""
    from .module import Subspace, verify_module
    F = alg.field
    n = int(d["dim"])
    idx = d.get("basis_indices", list(range(alg.dim)))
    acts = {i: matrix_from_json(mat, F, (n, n)) for i, mat in zip(idx, d["action"])}
    if len(acts) != alg.dim:
        raise PresentationError("module JSON must list the action of every basis element")
    bases = {}
    for v in alg.vertices:
        e = acts[alg.idempotent_index(v)]
        sp = Subspace(F, n, e.columns())
        if sp.dim:
            bases[v] = sp
    if sum(s.dim for s in bases.values()) != n:
        raise PresentationError("idempotent actions do not decompose the module")
    dims = {v: s.dim for v, s in bases.items()}
    maps = {}
    for f, a in alg.arrow_keys:
        s_, t_ = alg.farrow(f, a)
        base = alg.factors[f][0]
        for v, sp in bases.items():
            if v[f] != s_:
                continue
            w = v[:f] + (t_,) + v[f + 1:]
            if w not in bases:
                continue
            flat = alg.join([alg.factors[g][0].idem[x] if g != f else base.arrow_basis[a]
                             for g, x in enumerate(v)])
            act = acts[flat]
            cols = [bases[w].coords(act.apply(b)) for b in sp.basis()]
            maps[(f, a, v)] = Matrix.from_columns(cols, dims[w], F)
    m = ModuleRep(alg, dims, maps)
    # the rebuilt module must reproduce every listed action up to the basis change
    if not verify_module(m):
        raise PresentationError("module actions are not an algebra homomorphism")
    return m


def witness_to_json(h: ModuleHom) -> dict:
    return {
        "source": module_to_json(h.source, generators_only=True),
        "target": module_to_json(h.target, generators_only=True),
        "matrix": _mat(h.matrix),
    }


def recheck_witness(w: dict, F: FieldSpec) -> bool:
    """Invertible matrix intertwining every listed action: W S(b) = T(b) W."""
    src, tgt = w["source"], w["target"]
    n = int(src["dim"])
    if int(tgt["dim"]) != n:
        return False
    W = matrix_from_json(w["matrix"], F, (n, n))
    if W.shape != (n, n) or rank(W) != n:
        return False
    if src.get("basis_indices") != tgt.get("basis_indices"):
        return False
    for a, b in zip(src["action"], tgt["action"]):
        if W @ matrix_from_json(a, F, (n, n)) != matrix_from_json(b, F, (n, n)) @ W:
            return False
    return True


# ---------------------------------------------------------------------------
# complexes


def complex_to_json(c, algebra_id: str = "A") -> dict:
    degs = c.degrees()
    lo, hi = (degs[0], degs[-1]) if degs else (0, -1)
    mods = {}
    terms = []
    for p in range(lo, hi + 1):
        mid = f"C{p}"
        mods[mid] = module_to_json(c.term(p), algebra_id)
        terms.append(mid)
    diffs = [_mat(c.d(p).matrix) for p in range(lo, hi)]
    return {"lo": lo, "hi": hi, "terms": terms, "modules": mods, "differentials": diffs}


def complex_from_json(d: dict, alg: Algebra):
    from .complex import ComplexRep
    lo, hi = int(d["lo"]), int(d["hi"])
    terms = {p: module_from_json(d["modules"][mid], alg) for p, mid in zip(range(lo, hi + 1), d["terms"])}
    diffs = {}
    F = alg.field
    for p, rows in zip(range(lo, hi), d["differentials"]):
        src, tgt = terms[p], terms[p + 1]
        M = matrix_from_json(rows, F, (tgt.dim, src.dim))
        blocks = {}
        for v in src.support:
            if v in tgt.dims:
                r0, c0 = tgt.offsets[v], src.offsets[v]
                blocks[v] = M.submatrix(range(r0, r0 + tgt.d(v)), range(c0, c0 + src.d(v)))
        diffs[p] = ModuleHom(src, tgt, blocks)
    return ComplexRep(alg, terms, diffs)
