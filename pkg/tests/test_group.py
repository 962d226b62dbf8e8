import itertools
import math

import numpy as np
import pytest

from perfcodes.config import ResourceCapExceeded
from perfcodes.group import (
    Ambient,
    all_subgroups,
    close,
    conjugate_subgroup,
    contains,
    double_coset_elements,
    double_cosets,
    find_isomorphism,
    index_in,
    is_abelian,
    is_cyclic,
    is_normal_in,
    left_cosets,
    normalizer_in,
    order,
    sylow2,
    trivial,
)
from perfcodes.perm import Permutation, all_permutations, compose, inverse, is_involution, parse_cycles

from conftest import group

P = parse_cycles
H1 = ("(1 4 7 6)(2 8 3 5)", "(2 5)(3 8)(4 6)")
H2 = ("(1 6)(2 4)(3 8)(5 7)", "(1 8 5 4)(2 7 3 6)")


@pytest.fixture(scope="module")
def lattices():
    return {4: all_subgroups(4), 5: all_subgroups(5)}


def naive_closure(gens, n):
    elems = {Permutation.identity(n)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def test_closure_examples():
    assert group(3, "(1 2)").order == 2
    assert group(3, "(1 2)", "(1 2 3)").order == 6
    assert group(8, *H1).order == 8
    assert order(group(4, "(1 2)", "(1 2 3 4)")) == 24
    assert trivial(5).order == 1


@pytest.mark.parametrize("gens", [("(1 2 3)", "(3 4 5)"), ("(1 2)(3 4)", "(1 3)"), ("(1 2 3 4 5 6)", "(1 2)")])
def test_closure_matches_naive(gens):
    H = group(6, *gens)
    assert set(H) == naive_closure([P(g, 6) for g in gens], 6)
    assert list(H.ranks) == sorted(H.ranks)


def test_contains_and_index():
    H = group(3, "(1 2)")
    assert contains(H, P("(1 2)", 3))
    assert not contains(H, P("(1 3)", 3))
    assert index_in(H, Ambient(3)) == 3


def test_closure_cap():
    with pytest.raises(ResourceCapExceeded):
        close([P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)], 6, cap=100)


def test_abelian_and_cyclic():
    klein = group(4, "(1 2)", "(3 4)")
    assert is_abelian(klein) and is_cyclic(klein) is None
    x = P("(1 2 3 4)(5 6)", 6)
    g = is_cyclic(group(6, "(1 2 3 4)(5 6)"))
    assert g is not None and close([g], 6) == close([x], 6)
    assert not is_abelian(group(8, *H1))


def test_sylow_examples():
    S4 = group(4, "(1 2)", "(1 2 3 4)")
    assert sylow2(S4).order == 8
    K = group(10, "(1 2 3 4)(5 6)", "(7 8 9)")
    assert sylow2(K) == group(10, "(1 2 3 4)(5 6)")
    assert sylow2(group(3, "(1 2 3)")).order == 1


def test_lattice_counts(lattices):
    assert len(lattices[4]) == 30
    assert len(lattices[5]) == 156
    assert len(set(lattices[5])) == 156


@pytest.mark.parametrize("n", [4, 5])
def test_sylow_over_lattice(lattices, n):
    for H in lattices[n]:
        Q = sylow2(H)
        assert Q.is_two_group()
        assert np.all(H.contains_rows(Q.elements))
        assert (H.order // Q.order) % 2 == 1


def test_lattice_members_are_groups(lattices):
    for H in lattices[4]:
        assert close(list(H), 4) == H


def test_normalizer_examples():
    C3 = group(3, "(1 2 3)")
    assert normalizer_in(C3, Ambient(3)).order == 6


@pytest.mark.parametrize("gens", [("(1 2)",), ("(1 2)(3 4)",), ("(1 2 3)",), ("(1 2 3 4)", "(1 3)")])
def test_normalizer_support_equals_scan(gens):
    H = group(6, *gens)
    G = Ambient(6)
    assert normalizer_in(H, G) == normalizer_in(H, G, method="scan")


def test_normalizer_h2_by_scan():
    H = group(8, *H2)
    N = normalizer_in(H, Ambient(8), method="scan")
    assert N == normalizer_in(H, Ambient(8))
    assert is_normal_in(H, N)
    # exhaustive scan over S_8 gives 64; the listed coset reps only need to lie inside
    assert N.order == 64
    for g in list(N)[::7]:
        assert conjugate_subgroup(H, g) == H
    for rep in ("(4 8)(6 7)", "(2 3)(6 7)", "(2 6)(3 7)(4 8)", "(2 7)(3 6)(4 8)", "(2 6 3 7)", "(2 7 3 6)"):
        assert P(rep, 8) in N


def test_cosets_s3():
    H = group(3, "(1 2)")
    assert len(list(left_cosets(H, Ambient(3)))) == 3
    dcs = sorted(double_cosets(H, Ambient(3)), key=lambda d: d.size)
    assert [d.size for d in dcs] == [2, 4]
    big = dcs[1]
    assert big.self_inverse and big.left_coset_count == 2 and big.has_involution
    assert P("(1 3)", 3) in big.elements(H)


@pytest.mark.parametrize("gens", [("(1 2)",), ("(1 2)(3 4)",), ("(1 2 3)",), ("(1 2)", "(3 4)")])
def test_double_cosets_partition_brute(gens):
    n = 4
    H = group(n, *gens)
    hs = list(H)
    seen = {}
    for x in all_permutations(n):
        key = frozenset(compose(compose(a, x), b) for a in hs for b in hs)
        seen.setdefault(key, x)
    dcs = list(double_cosets(H, Ambient(n)))
    assert len(dcs) == len(seen)
    assert sum(d.size for d in dcs) == math.factorial(n)
    for d in dcs:
        elems = frozenset(double_coset_elements(H, d.representative))
        assert elems in seen and len(elems) == d.size
        assert d.self_inverse == (frozenset(inverse(e) for e in elems) == elems)
        assert d.has_involution == any(is_involution(e) for e in elems)


def test_normality():
    A4 = group(4, "(1 2 3)", "(2 3 4)")
    assert is_normal_in(A4, Ambient(4))
    assert not is_normal_in(group(3, "(1 2)"), Ambient(3))
    assert conjugate_subgroup(group(3, "(1 2)"), P("(2 3)", 3)) == group(3, "(1 3)")


def test_d4_isomorphism():
    A, B = group(8, *H1), group(8, *H2)
    phi = find_isomorphism(A, B)
    assert phi is not None
    assert find_isomorphism(A, group(8, "(1 2 3 4 5 6 7 8)")) is None


def test_extend_degree():
    H = group(4, "(1 2)(3 4)")
    E = H.extend(6)
    assert E.n == 6 and E.order == 2
    assert P("(1 2)(3 4)", 6) in E


def test_lattice_is_conjugation_closed(lattices):
    subs = set(lattices[4])
    for H, g in itertools.product(lattices[4], [P("(1 2)", 4), P("(1 2 3 4)", 4)]):
        assert conjugate_subgroup(H, g) in subs
