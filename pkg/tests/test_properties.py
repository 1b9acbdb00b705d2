"""Property suites: random complexes, Kunneth top corner, side independence, unit/dual, iso soundness."""

from hypothesis import HealthCheck, given, settings, strategies as st

from _props import (
    check_complex, check_iso_soundness, check_kunneth, check_side_independence, check_unit_and_dual,
)

seeds = st.integers(0, 2**31 - 1)
cfg = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)


@settings(max_examples=200, **cfg)
@given(seeds)
def test_d_squared_and_euler(seed):
    assert check_complex(seed) is None


@settings(max_examples=60, **cfg)
@given(seeds)
def test_kunneth_top_corner(seed):
    assert check_kunneth(seed) is None


@settings(max_examples=60, **cfg)
@given(seeds)
def test_side_independence(seed):
    assert check_side_independence(seed) is None


@settings(max_examples=50, **cfg)
@given(seeds)
def test_unit_and_dual_witnesses(seed):
    assert check_unit_and_dual(seed) is None


@settings(max_examples=100, **cfg)
@given(seeds)
def test_iso_soundness(seed):
    assert check_iso_soundness(seed) is None
