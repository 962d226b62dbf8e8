import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from perfcodes.group import Ambient, conjugate_subgroup, sylow2
from perfcodes.perfect.invariance import invariance_suite, random_subgroup, random_two_subgroup
from perfcodes.perfect.oracle import oracle_double_coset
from perfcodes.perm import parse_cycles

from conftest import group


def verdict(H, G=None):
    return oracle_double_coset(H, Ambient(H.n) if G is None else G, certificate=False)[0].status


def test_fixed_examples():
    H = group(4, "(1 2)(3 4)")
    assert verdict(H) == verdict(conjugate_subgroup(H, parse_cycles("(2 3)", 4)))
    assert verdict(H).value == "NotPerfect"
    assert verdict(H) == verdict(H.extend(5))


def test_suite_report_shape():
    r = invariance_suite(5, samples=4, seed=7, normalizer_degrees=(5, 6))
    assert r["counts"] == {"conjugation": 4, "degree-extension": 4, "sylow-2": 4, "normalizer": 4}
    assert not r["mismatches"]
    assert all({"check", "left", "right", "generators"} <= set(rec) for rec in r["records"])


def test_suite_is_reproducible():
    a = invariance_suite(4, samples=3, seed=11)
    b = invariance_suite(4, samples=3, seed=11)
    assert a["records"] == b["records"]


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 2**32 - 1))
def test_random_subgroup_sylow(seed):
    H = random_subgroup(np.random.default_rng(seed), 5)
    assert verdict(H) == verdict(sylow2(H))


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 2**32 - 1))
def test_random_two_subgroup(seed):
    Q = random_two_subgroup(np.random.default_rng(seed), 6)
    assert Q.is_two_group() and Q.order > 1
