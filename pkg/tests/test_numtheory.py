import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfcodes.numtheory import (
    check_unit_group,
    decompose_unit,
    exists_power_neg_one,
    exists_power_neg_one_bruteforce,
    order_mod,
)


def naive_order(a, n):
    mod, x, k = 1 << n, a % (1 << n), 1
    while x != 1:
        x = x * a % mod
        k += 1
    return k


def test_order_examples():
    assert order_mod(5, 3) == 2
    assert order_mod(5, 5) == 8
    assert order_mod(1, 10) == 1


@pytest.mark.parametrize("n", range(3, 31))
def test_order_of_five(n):
    assert order_mod(5, n) == 1 << (n - 2)


@given(st.integers(0, 2**20).map(lambda v: 2 * v + 1), st.integers(1, 16))
def test_order_matches_naive(a, n):
    assert order_mod(a, n) == naive_order(a, n)


def test_order_errors():
    with pytest.raises(ValueError):
        order_mod(4, 5)
    with pytest.raises(ValueError):
        order_mod(3, 0)
    with pytest.raises(ValueError):
        order_mod(3, 100)


def test_power_neg_one_examples():
    assert not exists_power_neg_one(3, 2)
    assert not exists_power_neg_one(7, 3)
    assert not exists_power_neg_one(1, 5)


def test_power_neg_one_errors():
    with pytest.raises(ValueError):
        exists_power_neg_one(3, 1)
    with pytest.raises(ValueError):
        exists_power_neg_one(4, 3)
    with pytest.raises(ValueError):
        exists_power_neg_one(9, 3)


@pytest.mark.parametrize("l", range(2, 11))
def test_shortcut_matches_bruteforce(l):
    for k in range(1, 1 << l, 2):
        assert exists_power_neg_one(k, l) == exists_power_neg_one_bruteforce(k, l)


def test_bruteforce_sees_minus_one_above_range():
    # k = 2^(l+1) - 1 is itself -1; the range restriction is what excludes it
    assert exists_power_neg_one_bruteforce(15, 3)


def test_decompose_examples():
    d = decompose_unit(5, 4)
    assert (d.a, d.b) == (0, 1)
    d = decompose_unit(7, 4)
    assert (d.a, d.b) == (1, 2)
    d = decompose_unit(1, 6)
    assert (d.a, d.b) == (0, 0)


@pytest.mark.parametrize("n", range(3, 17))
def test_decompose_bijective(n):
    mod = 1 << n
    seen = set()
    for u in range(1, mod, 2):
        d = decompose_unit(u, n)
        assert 0 <= d.b < 1 << (n - 2) and d.a in (0, 1)
        assert d.value() == u
        seen.add((d.a, d.b))
    assert len(seen) == mod // 2


def test_decompose_errors():
    with pytest.raises(ValueError):
        decompose_unit(2, 5)
    with pytest.raises(ValueError):
        decompose_unit(3, 2)


def test_check_unit_group_sweep():
    r = check_unit_group(2)
    assert r["k_checked"] == 2 and not r["counterexamples"]
    r = check_unit_group(14)
    assert not r["counterexamples"] and not r["order_of_five_failures"]
    assert r["k_checked"] == sum(1 << (l - 1) for l in range(2, 15))
