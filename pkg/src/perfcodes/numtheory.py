"""Arithmetic in the unit group modulo 2^n.

Exponents are capped at 62 so every modulus fits a signed 64-bit word; the
computations themselves use Python integers and are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_EXPONENT = 62


def _check_exponent(n: int, low: int) -> None:
    if not low <= n <= MAX_EXPONENT:
        raise ValueError(f"exponent {n} outside [{low}, {MAX_EXPONENT}]")


def _check_odd(a: int) -> None:
    if a % 2 == 0:
        raise ValueError(f"{a} is even, not a unit modulo a power of two")


def order_mod(a: int, n: int) -> int:
    """Multiplicative order of odd ``a`` modulo ``2^n``.

    The unit group is a 2-group, so the order is the first ``2^j`` with
    ``a^(2^j) == 1``, found by repeated squaring.
    """
    _check_odd(a)
    _check_exponent(n, 1)
    mod = 1 << n
    x = a % mod
    order = 1
    while x != 1:
        x = x * x % mod
        order <<= 1
    return order


def exists_power_neg_one(k: int, l: int) -> bool:
    """Is some power of ``k`` congruent to -1 modulo ``2^(l+1)``?

    Defined for odd ``0 < k < 2^l`` and ``l >= 2``.  Powers repeat with period
    ``order_mod(k, l+1)`` so that many exponents settle the question.
    """
    if l < 2:
        raise ValueError("l must be at least 2")
    _check_exponent(l + 1, 3)
    _check_odd(k)
    if not 0 < k < 1 << l:
        raise ValueError(f"k={k} outside (0, 2^{l})")
    mod = 1 << (l + 1)
    o = order_mod(k, l + 1)
    # <k> is cyclic of 2-power order, so its only involution is k^(o/2)
    return o > 1 and pow(k, o // 2, mod) == mod - 1


def exists_power_neg_one_bruteforce(k: int, l: int) -> bool:
    """Same question, by walking every power of ``k``."""
    mod = 1 << (l + 1)
    x = 1
    for _ in range(order_mod(k, l + 1)):
        if x == mod - 1:
            return True
        x = x * k % mod
    return False


@dataclass(frozen=True)
class UnitDecomposition:
    """``u == (-1)^a * 5^b (mod 2^n)`` with ``a`` in {0, 1} and ``0 <= b < 2^(n-2)``."""

    n: int
    a: int
    b: int

    def value(self) -> int:
        mod = 1 << self.n
        return (-1) ** self.a * pow(5, self.b, mod) % mod


def decompose_unit(u: int, n: int) -> UnitDecomposition:
    """Write the odd residue ``u`` as a signed power of 5 modulo ``2^n`` (n >= 3)."""
    _check_odd(u)
    _check_exponent(n, 3)
    mod = 1 << n
    u %= mod
    # powers of 5 are exactly the units that are 1 mod 4
    a = 0 if u % 4 == 1 else 1
    target = u if a == 0 else (-u) % mod
    # recover b bit by bit: 5^(2^j) has order 2^(n-2-j)
    inv5 = pow(5, -1, mod)
    b = 0
    residual = target
    for j in range(n - 2):
        if pow(residual, 1 << (n - 3 - j), mod) != 1:
            b |= 1 << j
            residual = residual * pow(inv5, 1 << j, mod) % mod
    out = UnitDecomposition(n, a, b)
    if out.value() != u:
        raise ArithmeticError(f"decomposition of {u} mod 2^{n} failed")
    return out


def check_unit_group(l_max: int) -> dict:
    """Exhaustive sweep: no odd ``k < 2^l`` has a power at -1 mod ``2^(l+1)``, for l in [2, l_max];
    and 5 has order ``2^(n-2)`` modulo ``2^n`` for n in [3, l_max + 1]."""
    counterexamples = []
    checked = 0
    for l in range(2, l_max + 1):
        for k in range(1, 1 << l, 2):
            checked += 1
            if exists_power_neg_one(k, l):
                counterexamples.append({"k": k, "l": l})
    bad_orders = [n for n in range(3, l_max + 2) if order_mod(5, n) != 1 << (n - 2)]
    return {"l_max": l_max, "k_checked": checked, "counterexamples": counterexamples, "order_of_five_failures": bad_orders}
