"""Permutations of {1, ..., n}.

Points are 1-based in cycle notation and 0-based internally.  Composition is
right-to-left: ``compose(p, q)`` applies ``q`` first, so
``compose(p, q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter
from typing import Iterator, Sequence

MAX_DEGREE = int(os.environ.get("PERFCODES_MAX_DEGREE", "16"))


class ParseError(ValueError):
    """Malformed cycle notation, out-of-range point or repeated point."""


class Permutation:
    """An element of S_n stored as a tuple of 0-based images."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, zero_based: bool = True):
        img = tuple(int(v) for v in images)
        if not zero_based:
            img = tuple(v - 1 for v in img)
        n = len(img)
        if n < 1 or n > MAX_DEGREE:
            raise ValueError(f"degree {n} outside [1, {MAX_DEGREE}]")
        if sorted(img) != list(range(n)):
            raise ValueError(f"not a bijection: {images!r}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> Permutation:
        """Build from 0-based cycles; points not mentioned are fixed."""
        img = list(range(n))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def array_form(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._img

    @property
    def images(self) -> tuple[int, ...]:
        """1-based images: ``images[i-1]`` is the image of point ``i``."""
        return tuple(v + 1 for v in self._img)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self._img[point - 1] + 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        # lexicographic order on images is rank order
        return self._img < other._img

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        return power(self, k)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """0-based cycles, each starting at its smallest point, sorted by that point."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self._img[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self._img[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out


_CYCLE_RE = re.compile(r"\((\d+(?:(?:,|[ ]+)\d+)*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(1 4 7 6)(2 8 3 5)"``, ``"e"`` or ``"()"``."""
    s = text.strip()
    if s in ("e", "()"):
        return Permutation.identity(n)
    if not s:
        raise ParseError("empty permutation string")
    pos = 0
    cycles = []
    used: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise ParseError(f"syntax error at column {pos + 1} in {text!r}")
        pts = [int(tok) for tok in re.split(r",|[ ]+", m.group(1))]
        for p in pts:
            if p < 1 or p > n:
                raise ParseError(f"point {p} out of range 1..{n}")
            if p in used:
                raise ParseError(f"point {p} repeated in {text!r}")
            used.add(p)
        cycles.append([p - 1 for p in pts])
        pos = m.end()
    return Permutation.from_cycles(cycles, n)


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "e"
    return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cyc)


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p∘q``: apply ``q`` first, then ``p``."""
    _check_degree(p, q)
    a = p._img
    return Permutation([a[j] for j in q._img])


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p._img):
        out[v] = i
    return Permutation(out)


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = inverse(p), -k
    result = Permutation.identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in p.cycles(include_fixed=True)))


def parity(p: Permutation) -> str:
    """``"even"`` or ``"odd"``."""
    transpositions = sum(len(c) - 1 for c in p.cycles())
    return "odd" if transpositions % 2 else "even"


def is_odd(p: Permutation) -> bool:
    return parity(p) == "odd"


def cycle_type(p: Permutation) -> dict[int, int]:
    """Map cycle length -> number of cycles of that length, fixed points included."""
    return dict(sorted(Counter(len(c) for c in p.cycles(include_fixed=True)).items()))


def cycle_type_key(p: Permutation) -> tuple[int, ...]:
    """Non-trivial cycle lengths in descending order, e.g. ``(4, 2)``."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def is_involution(p: Permutation) -> bool:
    return not p.is_identity() and compose(p, p).is_identity()


def is_square(p: Permutation) -> bool:
    """True iff every even cycle length occurs an even number of times."""
    return all(cnt % 2 == 0 for length, cnt in cycle_type(p).items() if length % 2 == 0)


def _interleave(a: Sequence[int], b: Sequence[int], shift: int = 0) -> tuple[int, ...]:
    # one cycle whose square is the pair of cycles a, b
    m = len(a)
    out = []
    for i in range(m):
        out.append(a[i])
        out.append(b[(i + shift) % m])
    return tuple(out)


def square_root(p: Permutation) -> Permutation | None:
    """A deterministic ``y`` with ``y∘y == p``, or ``None`` when ``p`` is not a square.

    Odd cycles are rooted individually; equal-length even cycles are paired in
    ascending order of their smallest point and interleaved.
    """
    if not is_square(p):
        return None
    n = p.degree
    cycles_out: list[tuple[int, ...]] = []
    pending: dict[int, list[tuple[int, ...]]] = {}
    for c in p.cycles():
        m = len(c)
        if m % 2:
            half = (m + 1) // 2
            cycles_out.append(tuple(c[(i * half) % m] for i in range(m)))
        else:
            pending.setdefault(m, []).append(c)
    for group in pending.values():
        for a, b in zip(group[0::2], group[1::2]):
            cycles_out.append(_interleave(a, b))
    return Permutation.from_cycles(cycles_out, n)


def _pairings(items: list, allow_single: bool) -> Iterator[tuple[list, list]]:
    """Yield (singles, pairs) partitions of ``items``; singles only if ``allow_single``."""
    if not items:
        yield [], []
        return
    first, rest = items[0], items[1:]
    if allow_single:
        for singles, pairs in _pairings(rest, allow_single):
            yield [first] + singles, pairs
    for j in range(len(rest)):
        other = rest[j]
        for singles, pairs in _pairings(rest[:j] + rest[j + 1:], allow_single):
            yield singles, [(first, other)] + pairs


def square_roots(p: Permutation, limit: int | None = None) -> Iterator[Permutation]:
    """Enumerate every ``y`` with ``y∘y == p`` (at most ``limit`` of them)."""
    if not is_square(p):
        return
    n = p.degree
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in p.cycles(include_fixed=True):
        by_len.setdefault(len(c), []).append(c)

    # per cycle length: list of alternative cycle sets
    options: list[list[list[tuple[int, ...]]]] = []
    for m, group in sorted(by_len.items()):
        alts = []
        for singles, pairs in _pairings(group, allow_single=bool(m % 2)):
            base = []
            for c in singles:
                half = (m + 1) // 2
                base.append(tuple(c[(i * half) % m] for i in range(m)))
            shift_lists: list[list[tuple[int, ...]]] = [[]]
            for a, b in pairs:
                shift_lists = [s + [_interleave(a, b, k)] for s in shift_lists for k in range(m)]
            for extra in shift_lists:
                alts.append(base + extra)
        options.append(alts)

    count = 0

    def rec(i: int, acc: list[tuple[int, ...]]) -> Iterator[Permutation]:
        nonlocal count
        if limit is not None and count >= limit:
            return
        if i == len(options):
            count += 1
            yield Permutation.from_cycles(acc, n)
            return
        for alt in options[i]:
            yield from rec(i + 1, acc + alt)
            if limit is not None and count >= limit:
                return

    yield from rec(0, [])


def rank(p: Permutation) -> int:
    """Lehmer-code rank: position of ``p`` in the lexicographic order of image tuples."""
    img = p._img
    n = len(img)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if img[j] < img[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(i: int, n: int) -> Permutation:
    if not 0 <= i < math.factorial(n):
        raise IndexError(f"rank {i} out of range for degree {n}")
    pool = list(range(n))
    img = []
    for pos in range(n - 1, -1, -1):
        f = math.factorial(pos)
        d, i = divmod(i, f)
        img.append(pool.pop(d))
    return Permutation(img)


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """``g·p·g⁻¹``."""
    return compose(compose(g, p), inverse(g))


def commutes(p: Permutation, q: Permutation) -> bool:
    return compose(p, q) == compose(q, p)


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in rank order."""
    from itertools import permutations

    for img in permutations(range(n)):
        yield Permutation(img)


def representative_of_type(lengths: Sequence[int], n: int) -> Permutation:
    """Permutation with the given non-trivial cycle lengths on consecutive points."""
    if sum(lengths) > n:
        raise ValueError(f"cycle type {tuple(lengths)} does not fit in degree {n}")
    cycles = []
    start = 0
    for m in lengths:
        cycles.append(tuple(range(start, start + m)))
        start += m
    return Permutation.from_cycles(cycles, n)


def extend_degree(p: Permutation, n: int) -> Permutation:
    """The same permutation viewed in S_n (new points fixed)."""
    if n < p.degree:
        raise ValueError("cannot shrink degree")
    return Permutation(p._img + tuple(range(p.degree, n)))


__all__ = [
    "MAX_DEGREE",
    "ParseError",
    "Permutation",
    "all_permutations",
    "commutes",
    "compose",
    "conjugate",
    "cycle_type",
    "cycle_type_key",
    "extend_degree",
    "format_cycles",
    "inverse",
    "is_involution",
    "is_odd",
    "is_square",
    "order",
    "parity",
    "parse_cycles",
    "power",
    "rank",
    "representative_of_type",
    "square_root",
    "square_roots",
    "unrank",
]
