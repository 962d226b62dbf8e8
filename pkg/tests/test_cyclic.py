import pytest

from perfcodes.group import Ambient, close
from perfcodes.perfect.cyclic import cyclic_fast_path, same_length_odd_count, sweep_cyclic, two_power_cycle_types
from perfcodes.perfect.oracle import oracle_double_coset
from perfcodes.perfect.types import Interpretation, Status
from perfcodes.perm import parse_cycles, representative_of_type

P = parse_cycles
SL, NS = Interpretation.SAME_LENGTH_ODD_COUNT, Interpretation.NOT_A_SQUARE


def test_odd_permutation_perfect_under_both():
    x = P("(1 2 3 4 5 6 7 8)", 8)
    for i in Interpretation:
        v = cyclic_fast_path(x, 8, i)
        assert v.status is Status.PERFECT
        assert "cyclic-odd-permutation" in v.provenance.detail


def test_disjoint_transpositions_not_perfect():
    x = P("(1 2)(3 4)", 4)
    for i in Interpretation:
        assert cyclic_fast_path(x, 4, i).status is Status.NOT_PERFECT


def test_readings_split_on_4_2():
    x = P("(1 2 3 4)(5 6)", 10)
    assert cyclic_fast_path(x, 10, SL).status is Status.NOT_PERFECT
    v = cyclic_fast_path(x, 10, NS)
    assert v.status is Status.PERFECT and NS.value in v.provenance.detail


def test_preconditions():
    with pytest.raises(ValueError):
        cyclic_fast_path(P("(1 2 3)", 3))
    with pytest.raises(ValueError):
        cyclic_fast_path(P("e", 3))
    with pytest.raises(ValueError):
        cyclic_fast_path(P("(1 2)", 3), n=4)


def test_same_length_odd_count():
    assert same_length_odd_count(P("(1 2)(3 4)(5 6)", 6))
    assert not same_length_odd_count(P("(1 2)(3 4)", 4))
    assert not same_length_odd_count(P("(1 2 3 4)(5 6)", 6))


def test_cycle_types():
    assert two_power_cycle_types(2) == [(2,)]
    assert set(two_power_cycle_types(4)) == {(2,), (2, 2), (4,)}
    assert (4, 2) in two_power_cycle_types(6)


def test_sweep_n2_and_n4():
    rows = sweep_cyclic(2)
    assert len(rows) == 1 and rows[0]["oracle"] == "Perfect"
    rows = {tuple(r["cycle_type"]): r for r in sweep_cyclic(4)}
    assert len(rows) == 3
    assert rows[(2,)]["oracle"] == "Perfect"
    assert rows[(2, 2)]["oracle"] == "NotPerfect"
    assert not any(r["discrepancy"] for r in rows.values())


def test_sweep_n6_flags_4_2():
    rows = {tuple(r["cycle_type"]): r for r in sweep_cyclic(6)}
    r = rows[(4, 2)]
    assert not r["readings_agree"]
    assert r["oracle"] == "Perfect"
    assert r["reading_matches_oracle"] == {SL.value: False, NS.value: True}


@pytest.mark.parametrize("n", range(2, 8))
def test_not_a_square_reading_matches_oracle(n):
    for r in sweep_cyclic(n):
        assert r["fast"][NS.value] == r["oracle"]
        if r["readings_agree"]:
            assert not r["discrepancy"]


def test_sweep_without_oracle():
    rows = sweep_cyclic(5, run_oracle=False)
    assert all(r["oracle"] is None for r in rows)


@pytest.mark.parametrize("half", [2, 4])
def test_even_transposition_counts(half):
    n = 2 * half
    x = representative_of_type((2,) * half, n)
    assert not oracle_double_coset(close([x], n), Ambient(n))[0].perfect
