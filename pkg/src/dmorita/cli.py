"""Command-line driver: run the verification suites and emit reports.

Exit codes: 0 when every claim passes, 1 on a verification failure, 2 on an
input or presentation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable

from . import derived
from .algebra import Algebra, PresentationError, center, triangular, verify_presentation
from .complex import shift
from .exactlin import FieldSpec, parse_field
from .ktheory import (
    cartan_matrix, chi0_of, coxeter, display, format_matrix, identity, matrix_order, neg,
)
from .module import (
    IsoVerdict, dual_bimodule, interval_module, projectives, simples,
)
from .morita import (
    Verdict, center_end_check, dpic_mul, dpic_pow, dual_complex_of, is_dualizing, is_rigid,
    is_shift_of_identity, is_tilting, regular_complex, shift_element, twist_dualizing,
    vdb_formula_check,
)
from .derived import concentrated_iso, derived_tensor, global_dimension
from .serialize import algebra_from_json, dumps, quiver_from_json, recheck_witness, witness_to_json


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 2
    field: FieldSpec = dc_field(default_factory=lambda: parse_field("q"))
    seed: int = 0
    trials: int = 8
    max_len: int | None = None
    json: bool = False
    out: str | None = None
    witness: bool = True
    timing: bool = False
    algebra_file: str | None = None
    quiver_file: str | None = None
    report: str | None = None


@dataclass
class Claim:
    name: str
    paper_ref: str
    status: str
    witness: dict | None = None
    ms: float | None = None

    def to_json(self, with_witness: bool, timing: bool) -> dict:
        out = {"name": self.name, "paper_ref": self.paper_ref, "status": self.status,
               "ms": round(self.ms, 1) if timing and self.ms is not None else None}
        if with_witness and self.witness is not None:
            out["witness"] = self.witness
        return out


def _field_name(F: FieldSpec) -> str:
    return "q" if F.char == 0 else f"fp:{F.char}"


# ---------------------------------------------------------------------------
# algebra loading


def load_algebra(cfg: RunConfig) -> tuple[Algebra, str]:
    if cfg.algebra_file:
        d = _read_json(cfg.algebra_file)
        a = algebra_from_json(d)
        if a.field != cfg.field and cfg.field.char != a.field.char:
            cfg.field = a.field
        return a, Path(cfg.algebra_file).name
    if cfg.quiver_file:
        d = _read_json(cfg.quiver_file)
        return quiver_from_json(d, cfg.field), Path(cfg.quiver_file).name
    if cfg.n < 1:
        raise InputError("--n must be at least 1")
    return triangular(cfg.n, cfg.field), f"triangular({cfg.n})"


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _is_triangular(a: Algebra) -> bool:
    return a.nfactors == 1 and not a.factors[0][1] and a.factors[0][0].name.startswith("T")


# ---------------------------------------------------------------------------
# claim helpers


def _iso_witness(v: IsoVerdict) -> dict:
    if v.status == "yes" and v.witness is not None:
        return {"isomorphisms": [witness_to_json(v.witness)]}
    return {"reason": v.reason, "evidence": _plain(v.evidence)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, IsoVerdict):
        return _iso_witness(obj)
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def _verdict_witness(v: Verdict) -> dict:
    isos, data = [], {}
    for key, val in v.witnesses.items():
        if isinstance(val, IsoVerdict):
            if val.status == "yes" and val.witness is not None:
                isos.append(witness_to_json(val.witness))
            else:
                data[key] = _iso_witness(val)
        else:
            data[key] = _plain(val)
    out = {}
    if isos:
        out["isomorphisms"] = isos
    if data:
        out["data"] = data
    if v.detail:
        out["detail"] = v.detail
    return out


def _iso_status(v: IsoVerdict) -> str:
    return {"yes": "pass", "no": "fail"}.get(v.status, "inconclusive")


class Runner:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.claims: list[Claim] = []

    def run(self, name: str, ref: str, fn: Callable[[], tuple[str, dict | None]]):
        t0 = time.perf_counter()
        try:
            status, wit = fn()
        except derived.ResolutionDiverged as exc:
            status, wit = "fail", {"detail": str(exc)}
        ms = (time.perf_counter() - t0) * 1000
        self.claims.append(Claim(name, ref, status, wit, ms))

    def iso(self, name: str, ref: str, fn: Callable[[], IsoVerdict]):
        def body():
            v = fn()
            return _iso_status(v), _iso_witness(v)
        self.run(name, ref, body)


# ---------------------------------------------------------------------------
# suites


def suite_prop63(cfg: RunConfig, a: Algebra) -> list[Claim]:
    if len(a.vertices) != 2:
        raise InputError("this suite needs an algebra with two vertices")
    r = Runner(cfg)
    S, P = simples(a), projectives(a)
    ds = dual_bimodule(a)
    kw = {"seed": cfg.seed, "trials": cfg.trials}
    r.iso("A* (x)L S_1 = P_2", "A* tensor S_1 is P_2 (2x2 triangular)",
          lambda: concentrated_iso(derived_tensor(ds, S[0]), P[1], 0, **kw))
    r.iso("A* (x)L P_2 = S_2", "A* tensor P_2 is S_2 (2x2 triangular)",
          lambda: concentrated_iso(derived_tensor(ds, P[1]), S[1], 0, **kw))
    r.iso("A* (x)L S_2 = S_1[1]", "A* tensor S_2 is S_1[1] (2x2 triangular)",
          lambda: concentrated_iso(derived_tensor(ds, S[1]), S[0], 1, **kw))

    def t_cubed():
        v, t = is_tilting(dual_complex_of(a), label="t", **kw)
        if t is None:
            return "fail", _verdict_witness(v)
        w = is_shift_of_identity(dpic_pow(t, 3).complex, 1, **kw)
        return _iso_status(w), _iso_witness(w)
    r.run("t^3 = s", "triple derived tensor power of A* is A[1]", t_cubed)
    return r.claims


def suite_appendix(cfg: RunConfig, a: Algebra) -> list[Claim]:
    if not _is_triangular(a):
        raise InputError("the appendix suite is stated for triangular matrix algebras")
    n = len(a.vertices)
    if n < 2:
        raise InputError("the appendix suite needs n >= 2")
    r = Runner(cfg)
    ds = dual_bimodule(a)
    kw = {"seed": cfg.seed, "trials": cfg.trials}
    P = projectives(a)
    for i in range(1, n + 1):
        r.iso(f"F P_{i} = I^{i}_{n}", "F P_i is I^i_n",
              lambda i=i: concentrated_iso(derived_tensor(ds, P[i - 1]), interval_module(a, i, n), 0, **kw))
    for i in range(2, n + 1):
        for j in range(i, n + 1):
            r.iso(f"F I^{i}_{j} = I^{i - 1}_{j - 1}[1]", "F I^i_j is I^(i-1)_(j-1)[1]",
                  lambda i=i, j=j: concentrated_iso(derived_tensor(ds, interval_module(a, i, j)),
                                                    interval_module(a, i - 1, j - 1), 1, **kw))

    def power():
        v, t = is_tilting(dual_complex_of(a), label="t", **kw)
        if t is None:
            return "fail", _verdict_witness(v)
        w = is_shift_of_identity(dpic_pow(t, n + 1).complex, n - 1, **kw)
        return _iso_status(w), _iso_witness(w)
    r.run(f"t^{n + 1} = s^{n - 1}", "t^(n+1) = s^(n-1) in the derived Picard group", power)
    return r.claims


def _cert_witness(c) -> dict:
    isos = [witness_to_json(v.witness) for v in (c.end_left, c.end_right)
            if v.status == "yes" and v.witness is not None]
    return {"isomorphisms": isos,
            "data": {"injdim_left": c.injdim_left, "injdim_right": c.injdim_right,
                     "end_left": c.end_left.status, "end_right": c.end_right.status}}


def suite_dualizing(cfg: RunConfig, a: Algebra) -> list[Claim]:
    r = Runner(cfg)
    kw = {"seed": cfg.seed, "trials": cfg.trials}
    reg, ds = regular_complex(a), dual_complex_of(a)

    def dualizing(c):
        def body():
            cert = is_dualizing(c, **kw)
            return ("pass" if cert.ok else "fail"), _cert_witness(cert)
        return body
    r.run("A is dualizing", "regular bimodule of a Gorenstein algebra is dualizing", dualizing(reg))
    r.run("A* is dualizing", "A* is a dualizing complex", dualizing(ds))

    state = {}

    def tilting():
        v, t = is_tilting(ds, label="t", **kw)
        state["t"] = t
        return v.status, _verdict_witness(v)
    r.run("A* is tilting", "A* is tilting for Gorenstein A", tilting)

    def twist(rc, tname, expect=None):
        def body():
            t = state.get("t") if tname == "t" else shift_element(a, 1)
            if t is None:
                return "fail", {"detail": "no certified t"}
            r2, v = twist_dualizing(rc, t, **kw)
            wit = _verdict_witness(v)
            if v and expect is not None:
                cmp = expect(r2)
                wit.setdefault("data", {})["expected"] = cmp.status
                if cmp.status != "yes":
                    return "fail", wit
            return ("pass" if v else "fail"), wit
        return body
    r.run("A (x)L t is dualizing and recovers t", "twisting a dualizing complex by a tilting complex",
          twist(reg, "t", lambda r2: concentrated_iso(r2, dual_bimodule(a), 0, **kw)))
    r.run("A (x)L s is dualizing and recovers s", "twisting a dualizing complex by a tilting complex",
          twist(reg, "s"))
    r.run("A* (x)L t is dualizing and recovers t", "twisting a dualizing complex by a tilting complex",
          twist(ds, "t"))

    def center_check(label, make):
        def body():
            t = make()
            if t is None:
                return "fail", {"detail": "no certified element"}
            v = center_end_check(t)
            return v.status, _verdict_witness(v)
        r.run(f"End({label}) = Z(A)", "center and derived endomorphisms of a tilting complex", body)
    center_check("A", lambda: shift_element(a, 0))
    center_check("A[2]", lambda: shift_element(a, 2))
    center_check("A*", lambda: state.get("t"))
    center_check("t^2", lambda: dpic_mul(state["t"], state["t"]) if state.get("t") else None)
    return r.claims


def suite_rigid(cfg: RunConfig, a: Algebra) -> list[Claim]:
    r = Runner(cfg)
    kw = {"seed": cfg.seed, "trials": cfg.trials}
    ds = dual_complex_of(a)

    def rigid():
        v = is_rigid(ds, **kw)
        return ("pass" if v.status == "pass" else v.status), _verdict_witness(v)
    r.run("A* is rigid", "A* is a rigid dualizing complex", rigid)

    def control():
        v = is_rigid(shift(ds, 1), **kw)
        wit = _verdict_witness(v)
        return ("pass" if v.status == "fail" else "fail"), wit
    r.run("A*[1] is not rigid", "rigidity is sensitive to shifts (control)", control)

    def vdb():
        v = vdb_formula_check(ds, **kw)
        return ("pass" if v else v.status), _verdict_witness(v)
    r.run("RHom_A(R, A) = RHom_Ae(A, Ae)", "inverse of a rigid dualizing complex", vdb)
    return r.claims


def suite_k0(cfg: RunConfig, a: Algebra) -> list[Claim]:
    r = Runner(cfg)
    kw = {"seed": cfg.seed, "trials": cfg.trials}
    n = len(a.vertices)
    state = {}

    def cartan():
        C = cartan_matrix(a)
        c = coxeter(a)
        state["c"] = c
        order = matrix_order(c)
        ok = _is_triangular(a) and order == n + 1 or not _is_triangular(a) and order is not None
        return ("pass" if ok else "fail"), {"data": {"cartan": C, "coxeter": c, "order": order}}
    r.run("order(c) = n+1" if _is_triangular(a) else "order(c) finite",
          "order of the Coxeter transformation", cartan)

    def chi_s():
        x = chi0_of(shift_element(a, 1))
        return ("pass" if x == neg(identity(n)) else "fail"), {"data": {"chi0_s": display(x)}}
    r.run("chi0(s) = -1", "chi0 of the shift is -1", chi_s)

    def chi_t():
        v, t = is_tilting(dual_complex_of(a), label="t", **kw)
        if t is None:
            return "fail", _verdict_witness(v)
        x = chi0_of(t)
        state["chi_t"] = x
        c = state.get("c") or coxeter(a)
        return ("pass" if x == neg(c) else "fail"), {"data": {"chi0_t": display(x), "minus_c": display(neg(c))}}
    r.run("chi0(t) = -c", "chi0 of A* is minus the Coxeter transformation", chi_t)
    if n == 2 and _is_triangular(a):
        def shown():
            x = state.get("chi_t")
            ok = x is not None and display(x) == [[1, 1], [-1, 0]]
            return ("pass" if ok else "fail"), {"data": {"chi0_t_rows": display(x) if x else None}}
        r.run("chi0(t) = [[1,1],[-1,0]]", "chi0 of A* for 2x2 triangular matrices", shown)
    return r.claims


def algebra_info(cfg: RunConfig, a: Algebra, name: str) -> dict:
    rep = verify_presentation(a)
    info = {
        "algebra": name,
        "field": _field_name(a.field),
        "dim": a.dim,
        "labels": a.labels,
        "vertices": [a.vertex_label(v) for v in a.vertices],
        "radical_dim": len(a.radical_indices),
        "center_dim": len(center(a)),
        "presentation_ok": rep.ok,
    }
    if rep.ok:
        info["global_dimension"] = global_dimension(a)
        info["cartan"] = cartan_matrix(a)
    return info


SUITES = {
    "verify-prop63": suite_prop63,
    "verify-appendix": suite_appendix,
    "verify-dualizing": suite_dualizing,
    "verify-rigid": suite_rigid,
    "k0-report": suite_k0,
}


# ---------------------------------------------------------------------------
# recheck


def recheck_report(report: dict) -> tuple[bool, list[tuple[str, str]]]:
    """Re-validate every embedded isomorphism witness by matrix arithmetic alone."""
    F = parse_field(report.get("field", "q"))
    rows = []
    ok = True
    for claim in report.get("claims", []):
        wit = claim.get("witness") or {}
        isos = list(_collect_isos(wit))
        if not isos:
            rows.append((claim["name"], "no-witness"))
            continue
        good = all(recheck_witness(w, F) for w in isos)
        ok &= good
        rows.append((claim["name"], f"{'ok' if good else 'BAD'} ({len(isos)} witness{'es' if len(isos) != 1 else ''})"))
    return ok, rows


def _collect_isos(obj):
    if isinstance(obj, dict):
        for w in obj.get("isomorphisms", []):
            yield w
        for k, v in obj.items():
            if k != "isomorphisms":
                yield from _collect_isos(v)
    elif isinstance(obj, list):
        for x in obj:
            yield from _collect_isos(x)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmorita", description="Verify derived Morita statements exactly.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="size of the triangular algebra")
    common.add_argument("--field", default="q", help="q or fp:<p>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=8)
    common.add_argument("--max-len", type=int, default=None, dest="max_len")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--no-witness", action="store_true", dest="no_witness")
    common.add_argument("--timing", action="store_true", help="record wall time per claim")
    common.add_argument("--algebra", default=None, dest="algebra_file", help="algebra JSON file")
    common.add_argument("--quiver", default=None, dest="quiver_file", help="quiver JSON file")
    sub = p.add_subparsers(dest="command", required=True)
    for name in list(SUITES) + ["algebra-info"]:
        sub.add_parser(name, parents=[common])
    rc = sub.add_parser("recheck", parents=[common])
    rc.add_argument("report", help="JSON report produced with --json")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    try:
        F = parse_field(ns.field)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if ns.seed < 0 or ns.trials < 1:
        raise InputError("seed must be >= 0 and trials >= 1")
    return RunConfig(ns.command, ns.n, F, ns.seed, ns.trials, ns.max_len, ns.json, ns.out,
                     not ns.no_witness, ns.timing, ns.algebra_file, ns.quiver_file,
                     getattr(ns, "report", None))


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    if cfg.command == "recheck":
        report = _read_json(cfg.report)
        ok, rows = recheck_report(report)
        if cfg.json:
            _emit(cfg, dumps({"ok": ok, "claims": [{"name": n, "result": s} for n, s in rows]}))
        else:
            _emit(cfg, "".join(f"{s:<24} {n}\n" for n, s in rows) + ("all witnesses verified\n" if ok else "witness check FAILED\n"))
        return 0 if ok else 1
    old = derived.MAX_STEPS
    if cfg.max_len:
        derived.MAX_STEPS = cfg.max_len
    try:
        a, name = load_algebra(cfg)
        if cfg.command == "algebra-info":
            info = algebra_info(cfg, a, name)
            if cfg.json:
                _emit(cfg, dumps(info))
            else:
                _emit(cfg, "".join(f"{k}: {v}\n" for k, v in info.items()))
            return 0 if info["presentation_ok"] else 2
        rep = verify_presentation(a)
        if not rep.ok:
            raise PresentationError(f"presentation check failed: {rep.failure}")
        claims = SUITES[cfg.command](cfg, a)
    finally:
        derived.MAX_STEPS = old
    ok = all(c.status == "pass" for c in claims)
    if cfg.json:
        report = {"algebra": name, "field": _field_name(a.field), "seed": cfg.seed,
                  "claims": [c.to_json(cfg.witness, cfg.timing) for c in claims]}
        _emit(cfg, dumps(report))
    else:
        lines = [f"{name} over {_field_name(a.field)}, seed {cfg.seed}"]
        for c in claims:
            t = f"  {c.ms:.0f} ms" if cfg.timing and c.ms is not None else ""
            lines.append(f"  {c.status.upper():<14} {c.name}{t}")
            if cfg.command == "k0-report" and c.witness and "data" in c.witness:
                for k, v in c.witness["data"].items():
                    if isinstance(v, list) and v and isinstance(v[0], list):
                        lines.append(f"    {k}:")
                        lines.extend("      " + ln for ln in format_matrix(v).splitlines())
                    else:
                        lines.append(f"    {k}: {v}")
        lines.append("all claims pass" if ok else "verification FAILED")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except (InputError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
