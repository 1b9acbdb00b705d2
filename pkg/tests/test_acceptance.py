"""Acceptance criteria 1-7, each checked exactly and against its time budget.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line per criterion.
"""

import time

import pytest

from _props import CHECKS
from dmorita.algebra import triangular
from dmorita.cli import RunConfig, suite_appendix, suite_dualizing, suite_k0, suite_prop63, suite_rigid
from dmorita.exactlin import QQ, parse_field
from dmorita.ktheory import coxeter, matrix_order
from dmorita.morita import (
    center_end_check, dpic_mul, dual_complex_of, is_tilting, shift_element,
)

F101 = parse_field("fp:101")


def report(capsys, num: int, ok: bool, elapsed: float, budget: float, detail: str = ""):
    verdict = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"\n{verdict} criterion {num}: {elapsed:.2f}s (budget {budget:g}s) {detail}".rstrip())
    assert ok, detail
    assert elapsed < budget, f"over budget: {elapsed:.2f}s"


def failing(claims):
    return [f"{c.name}: {c.status}" for c in claims if c.status != "pass"]


def test_criterion_1_small_triangular(capsys):
    t0 = time.perf_counter()
    claims = suite_prop63(RunConfig("verify-prop63"), triangular(2, QQ))
    dt = time.perf_counter() - t0
    names = [c.name for c in claims]
    ok = not failing(claims) and len(claims) == 4 and "t^3 = s" in names
    report(capsys, 1, ok, dt, 5, "; ".join(failing(claims)))


def test_criterion_2_appendix(capsys):
    t0 = time.perf_counter()
    bad, count = [], 0
    for F in (QQ, F101):
        for n in range(2, 6):
            claims = suite_appendix(RunConfig("verify-appendix", n=n, field=F), triangular(n, F))
            # n projective claims, n(n-1)/2 interval claims, one power identity
            if len(claims) != n + n * (n - 1) // 2 + 1:
                bad.append(f"n={n}: {len(claims)} claims")
            count += len(claims)
            bad += [f"n={n} {F}: {x}" for x in failing(claims)]
    dt = time.perf_counter() - t0
    report(capsys, 2, not bad, dt, 600, f"{count} claims; " + "; ".join(bad))


def test_criterion_3_k_theory(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 6):
        claims = suite_k0(RunConfig("k0-report", n=n), triangular(n))
        names = {c.name for c in claims}
        if not {"chi0(s) = -1", "chi0(t) = -c", "order(c) = n+1"} <= names:
            bad.append(f"n={n}: missing claims")
        if n == 2 and "chi0(t) = [[1,1],[-1,0]]" not in names:
            bad.append("n=2 display missing")
        bad += [f"n={n}: {x}" for x in failing(claims)]
    orders = {n: matrix_order(coxeter(triangular(n))) for n in range(2, 7)}
    bad += [f"order(c) at n={n} is {o}" for n, o in orders.items() if o != n + 1]
    dt = time.perf_counter() - t0
    report(capsys, 3, not bad, dt, 10, "; ".join(bad))


def test_criterion_4_tilting_dualizing(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 5):
        a = triangular(n)
        v, t = is_tilting(dual_complex_of(a))
        if v.status != "pass" or t is None:
            bad.append(f"is_tilting(A*) n={n}: {v.status}")
        claims = suite_dualizing(RunConfig("verify-dualizing", n=n), a)
        names = {c.name for c in claims}
        if not {"A is dualizing", "A* is dualizing"} <= names:
            bad.append(f"n={n}: missing claims")
        bad += [f"n={n}: {x}" for x in failing(claims)]
    dt = time.perf_counter() - t0
    report(capsys, 4, not bad, dt, 120, "; ".join(bad))


def test_criterion_5_rigidity(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3):
        claims = suite_rigid(RunConfig("verify-rigid", n=n), triangular(n))
        if len(claims) != 3:
            bad.append(f"n={n}: {len(claims)} claims")
        bad += [f"n={n}: {x}" for x in failing(claims)]
    dt = time.perf_counter() - t0
    report(capsys, 5, not bad, dt, 300, "; ".join(bad))


def test_criterion_6_center(capsys):
    t0 = time.perf_counter()
    bad, count = [], 0
    for n in range(2, 5):
        a = triangular(n)
        _, t = is_tilting(dual_complex_of(a))
        if t is None:
            bad.append(f"n={n}: A* not certified")
            continue
        els = {"A": shift_element(a, 0), "A*": t, "t^2": dpic_mul(t, t)}
        els.update({f"A[{k}]": shift_element(a, k) for k in (-2, 1, 3)})
        for name, el in els.items():
            v = center_end_check(el)
            count += 1
            if v.status != "pass" or v.witnesses.get("end_dim") != 1:
                bad.append(f"n={n} {name}: {v.status} end_dim={v.witnesses.get('end_dim')}")
    dt = time.perf_counter() - t0
    report(capsys, 6, not bad, dt, 60, f"{count} elements; " + "; ".join(bad))


# minimum sample counts per property family
COUNTS = {"complex": 200, "kunneth": 50, "side": 50, "unit_dual": 50, "iso": 50}


def test_criterion_7_properties(capsys):
    assert set(COUNTS) == set(CHECKS)
    t0 = time.perf_counter()
    bad = []
    for key, count in COUNTS.items():
        for seed in range(count):
            err = CHECKS[key](10_000 + seed)
            if err is not None:
                bad.append(f"{key} seed {10_000 + seed}: {err}")
    dt = time.perf_counter() - t0
    total = sum(COUNTS.values())
    # no time budget is stated; allow a generous bound so a hang still fails
    report(capsys, 7, not bad, dt, 900, f"{total} instances; " + "; ".join(bad[:5]))


@pytest.mark.parametrize("n", [2, 3])
def test_cli_suites_are_deterministic(n):
    a = triangular(n)
    one = [(c.name, c.status, c.witness) for c in suite_appendix(RunConfig("verify-appendix", n=n), a)]
    two = [(c.name, c.status, c.witness) for c in suite_appendix(RunConfig("verify-appendix", n=n), a)]
    assert one == two
