import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfcodes.perm import (
    ParseError,
    Permutation,
    all_permutations,
    compose,
    conjugate,
    cycle_type,
    format_cycles,
    inverse,
    is_involution,
    is_square,
    order,
    parity,
    parse_cycles,
    power,
    rank,
    representative_of_type,
    square_root,
    square_roots,
    unrank,
)

P = parse_cycles


def perms(max_n=9):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(n)))).map(Permutation)


def perm_pairs(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.permutations(list(range(n))), st.permutations(list(range(n))))
    ).map(lambda t: (Permutation(t[0]), Permutation(t[1])))


# parsing and printing

def test_parse_transposition():
    assert P("(1 2)", 3).images == (2, 1, 3)


def test_parse_identity_forms():
    assert P("e", 4).is_identity()
    assert P("()", 4).is_identity()


def test_parse_d4_generator():
    p = P("(1 4 7 6)(2 8 3 5)", 8)
    assert p.images == (4, 8, 5, 7, 2, 1, 6, 3)


def test_parse_commas_and_spacing():
    assert P("(1,2)  (3   4)", 4) == P("(1 2)(3 4)", 4)


@pytest.mark.parametrize("text,n", [("(1 2", 3), ("(1 5)", 3), ("(1 2 1)", 3), ("(1 2)(2 3)", 3), ("(0 1)", 3), ("x", 3), ("(1  ,2)", 3)])
def test_parse_errors(text, n):
    with pytest.raises(ParseError):
        P(text, n)


def test_format_examples():
    assert format_cycles(Permutation([2, 1, 3], zero_based=False)) == "(1 2)"
    assert format_cycles(Permutation.identity(5)) == "e"
    assert format_cycles(P("(3 1 2)", 3)) == "(1 2 3)"


@given(perms())
def test_parse_format_roundtrip(p):
    assert P(format_cycles(p), p.degree) == p


# arithmetic

def test_compose_convention():
    assert compose(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 2 3)", 3)
    p = P("(1 3 2)", 3)
    assert compose(p, inverse(p)).is_identity()
    assert compose(Permutation.identity(3), p) == p


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(P("(1 2)", 2), P("(1 2)", 3))


def test_inverse_power_order():
    assert inverse(P("(1 2 3)", 3)) == P("(1 3 2)", 3)
    assert order(P("(1 2 3 4)(5 6)", 6)) == 4
    y = P("(1 2 6 5 7 3 4 8)", 8)
    assert power(y, 2) == P("(1 6 7 4)(2 5 3 8)", 8)
    assert power(y, 2) == inverse(P("(1 4 7 6)(2 8 3 5)", 8))


def test_negative_power():
    p = P("(1 2 3 4 5)", 5)
    assert power(p, -2) == inverse(power(p, 2))


def test_parity_examples():
    assert parity(P("(1 2 3 4)", 4)) == "odd"
    assert parity(P("(1 2 3 4)(5 6)", 6)) == "even"
    assert parity(Permutation.identity(3)) == "even"


def test_cycle_type_and_involution():
    assert cycle_type(P("(1 2 3 4)(5 6)", 8)) == {4: 1, 2: 1, 1: 2}
    assert is_involution(P("(2 5)(3 8)(4 6)", 8))
    assert not is_involution(Permutation.identity(4))


@given(perm_pairs())
def test_parity_is_homomorphism(pq):
    p, q = pq
    odd = lambda x: parity(x) == "odd"
    assert odd(compose(p, q)) == (odd(p) ^ odd(q))


@given(perms())
def test_order_is_smallest_exponent(p):
    o = order(p)
    assert power(p, o).is_identity()
    assert all(not power(p, k).is_identity() for k in range(1, o))
    assert compose(p, inverse(p)).is_identity()


@given(perms())
def test_cycle_type_sums_to_degree(p):
    assert sum(l * c for l, c in cycle_type(p).items()) == p.degree


# squares

def test_square_examples():
    assert is_square(P("(1 2)(3 4)", 4))
    assert not is_square(P("(1 2 3 4)(5 6)", 6))
    assert is_square(P("(1 2 3)", 3))
    assert square_root(P("(1 2)(3 4)", 4)) == P("(1 3 2 4)", 4)
    assert square_root(P("(1 2 3)", 3)) == P("(1 3 2)", 3)
    assert square_root(P("(1 2 3 4)(5 6)", 6)) is None


@pytest.mark.parametrize("n", range(1, 7))
def test_square_test_matches_bruteforce(n):
    squares = {compose(y, y) for y in all_permutations(n)}
    for p in all_permutations(n):
        assert is_square(p) == (p in squares)


@given(perms())
def test_square_root_sound(p):
    y = square_root(p)
    assert (y is not None) == is_square(p)
    if y is not None:
        assert compose(y, y) == p


@pytest.mark.parametrize("n", range(1, 7))
def test_square_roots_enumeration_complete(n):
    roots: dict[Permutation, set] = {}
    for y in all_permutations(n):
        roots.setdefault(compose(y, y), set()).add(y)
    for p in all_permutations(n):
        assert set(square_roots(p)) == roots.get(p, set())


def test_square_roots_limit():
    assert len(list(square_roots(Permutation.identity(6), limit=5))) == 5


# ranking

def test_rank_examples():
    assert rank(Permutation.identity(4)) == 0
    assert unrank(0, 5).is_identity()
    with pytest.raises(IndexError):
        unrank(math.factorial(4), 4)
    with pytest.raises(IndexError):
        unrank(-1, 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_rank_is_lexicographic_bijection(n):
    for i, img in enumerate(itertools.permutations(range(n))):
        p = Permutation(img)
        assert rank(p) == i
        assert unrank(i, n) == p


@settings(max_examples=200)
@given(st.integers(8, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, math.factorial(n) - 1))))
def test_rank_unrank_sampled(ni):
    n, i = ni
    assert rank(unrank(i, n)) == i


# conjugation

def test_conjugate_example():
    assert conjugate(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 3)", 3)


@pytest.mark.parametrize("n", range(1, 6))
def test_conjugation_preserves_type(n):
    ps = list(all_permutations(n))
    for p in ps:
        for g in ps:
            c = conjugate(p, g)
            assert cycle_type(c) == cycle_type(p) and order(c) == order(p)
            assert c == compose(compose(g, p), inverse(g))


def test_representative_of_type():
    assert representative_of_type((4, 2), 6) == P("(1 2 3 4)(5 6)", 6)
