"""Finite subgroups of S_n: closure, cosets, double cosets, normalizers, Sylow 2-subgroups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from perfcodes import kernels
from perfcodes.config import ResourceCapExceeded, get_caps
from perfcodes.kernels import AmbientArrays
from perfcodes.perm import Permutation, compose, format_cycles, order as perm_order


def _rows(perms: Iterable[Permutation], n: int) -> np.ndarray:
    return np.array([p.array_form for p in perms], dtype=np.uint8).reshape(-1, n)


def _perm(row: np.ndarray) -> Permutation:
    return Permutation(row.tolist())


def compose_rows(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise ``p∘q`` for broadcastable image arrays."""
    p, q = np.broadcast_arrays(np.atleast_2d(p), np.atleast_2d(q))
    return np.take_along_axis(p, q.astype(np.intp), axis=1)


def power_rows(rows: np.ndarray, k: int) -> np.ndarray:
    n = rows.shape[1]
    result = np.broadcast_to(np.arange(n, dtype=np.uint8), rows.shape).copy()
    base = rows
    while k:
        if k & 1:
            result = compose_rows(result, base)
        base = compose_rows(base, base)
        k >>= 1
    return result


def _two_adic(m: int) -> int:
    v = 0
    while m % 2 == 0:
        m //= 2
        v += 1
    return v


class Subgroup:
    """A subgroup of S_n with every element enumerated, sorted by rank."""

    def __init__(self, generators: Sequence[Permutation], n: int, elements: np.ndarray, ranks: np.ndarray):
        self.n = n
        self.generators = tuple(generators)
        self.elements = elements
        self.ranks = ranks
        self.elements.setflags(write=False)
        self.ranks.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.ranks.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        return contains(self, p)

    def __iter__(self) -> Iterator[Permutation]:
        for row in self.elements:
            yield _perm(row)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and self.n == other.n and np.array_equal(self.ranks, other.ranks)

    def __hash__(self) -> int:
        return hash((self.n, self.ranks.tobytes()))

    def __repr__(self) -> str:
        gens = "; ".join(format_cycles(g) for g in self.generators) or "e"
        return f"Subgroup(<{gens}>, n={self.n}, order={self.order})"

    def canonical_generators(self) -> list[str]:
        return sorted({format_cycles(g) for g in self.generators if not g.is_identity()})

    def index_of(self, p: Permutation) -> int:
        """Position of ``p`` in ``elements`` (-1 if absent)."""
        r = kernels.rank_rows(np.array([p.array_form], dtype=np.uint8))[0]
        pos = int(np.searchsorted(self.ranks, r))
        if pos < self.ranks.size and self.ranks[pos] == r:
            return pos
        return -1

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        r = kernels.rank_rows(rows)
        pos = np.minimum(np.searchsorted(self.ranks, r), self.ranks.size - 1)
        return self.ranks[pos] == r

    def is_two_group(self) -> bool:
        return self.order & (self.order - 1) == 0

    def extend(self, n: int) -> Subgroup:
        """The same subgroup inside S_n for a larger ``n``."""
        from perfcodes.perm import extend_degree

        return close([extend_degree(g, n) for g in self.generators], n)

    @classmethod
    def from_elements(cls, rows: np.ndarray, generators: Sequence[Permutation] | None = None) -> Subgroup:
        """Wrap an element array known to be a group; a generating set is picked greedily."""
        n = rows.shape[1]
        ranks = kernels.rank_rows(rows)
        order_ = np.argsort(ranks, kind="stable")
        rows, ranks = np.ascontiguousarray(rows[order_]), ranks[order_]
        if generators is None:
            generators = []
            current = close([], n)
            for i in range(rows.shape[0]):
                if current.order == rows.shape[0]:
                    break
                if not current.contains_rows(rows[i:i + 1])[0]:
                    generators.append(_perm(rows[i]))
                    current = close(generators, n)
        return cls(generators, n, rows, ranks)


def close(generators: Sequence[Permutation], n: int | None = None, cap: int | None = None) -> Subgroup:
    """The subgroup generated by ``generators`` (breadth-first closure)."""
    generators = list(generators)
    if n is None:
        if not generators:
            raise ValueError("degree required for an empty generator list")
        n = generators[0].degree
    for g in generators:
        if g.degree != n:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {n}")
    cap = get_caps().subgroup_max_order if cap is None else cap
    gens = _rows(generators, n)
    identity = np.arange(n, dtype=np.uint8)[None, :]
    blocks = [identity]
    known = np.zeros(1, dtype=np.int64) + kernels.rank_rows(identity)
    frontier = identity
    total = 1
    while frontier.shape[0] and gens.shape[0]:
        cand = np.concatenate([frontier[:, g] for g in gens])
        r = kernels.rank_rows(cand)
        r, first = np.unique(r, return_index=True)
        fresh = ~np.isin(r, known, assume_unique=True)
        frontier = cand[first[fresh]]
        if frontier.shape[0] == 0:
            break
        total += frontier.shape[0]
        if total > cap:
            raise ResourceCapExceeded(f"subgroup order exceeds cap {cap}")
        blocks.append(frontier)
        known = np.union1d(known, r[fresh])
    elems = np.concatenate(blocks)
    ranks = kernels.rank_rows(elems)
    idx = np.argsort(ranks)
    return Subgroup(generators, n, np.ascontiguousarray(elems[idx]), ranks[idx])


def trivial(n: int) -> Subgroup:
    return close([], n)


def symmetric_generators(n: int) -> list[Permutation]:
    if n == 1:
        return []
    if n == 2:
        return [Permutation([1, 0])]
    return [Permutation.from_cycles([(0, 1)], n), Permutation.from_cycles([tuple(range(n))], n)]


class Ambient:
    """The group G in which perfect-code status is decided: S_n or a subgroup of it."""

    def __init__(self, n: int, subgroup: Subgroup | None = None, *, check_caps: bool = True):
        self.n = n
        self.subgroup = subgroup
        if subgroup is None and check_caps:
            limit = get_caps().ambient_limit()
            if n > limit:
                raise ResourceCapExceeded(f"full enumeration of S_{n} exceeds ambient cap n <= {limit}")
        if subgroup is not None:
            self.arrays = AmbientArrays.restricted(subgroup.elements, subgroup.ranks)
        else:
            self.arrays = AmbientArrays.symmetric(n)

    @classmethod
    def symmetric(cls, n: int) -> Ambient:
        return cls(n)

    @classmethod
    def of(cls, subgroup: Subgroup) -> Ambient:
        return cls(subgroup.n, subgroup)

    @property
    def full(self) -> bool:
        return self.subgroup is None

    @property
    def order(self) -> int:
        return math.factorial(self.n) if self.full else self.subgroup.order

    @property
    def generators(self) -> list[Permutation]:
        return symmetric_generators(self.n) if self.full else list(self.subgroup.generators)

    def element(self, idx: int) -> Permutation:
        if self.full:
            return _perm(kernels.unrank_range(idx, idx + 1, self.n)[0])
        return _perm(self.subgroup.elements[idx])

    def index(self, p: Permutation) -> int:
        return int(kernels.ambient_index(self.arrays, np.array([p.array_form], dtype=np.uint8))[0])

    def contains_subgroup(self, H: Subgroup) -> bool:
        if self.full:
            return H.n == self.n
        return H.n == self.n and bool(np.all(np.isin(H.ranks, self.subgroup.ranks)))

    def elements(self) -> np.ndarray:
        return kernels.ambient_elements(self.arrays)

    def __repr__(self) -> str:
        return f"Ambient(S_{self.n})" if self.full else f"Ambient({self.subgroup!r})"


def _require_inside(H: Subgroup, G: Ambient) -> None:
    if not G.contains_subgroup(H):
        raise ValueError(f"{H!r} is not contained in {G!r}")


def contains(H: Subgroup, p: Permutation) -> bool:
    if p.degree != H.n:
        raise ValueError("degree mismatch")
    return H.index_of(p) >= 0


def order(H: Subgroup) -> int:
    return H.order


def index_in(H: Subgroup, G: Ambient) -> int:
    _require_inside(H, G)
    return G.order // H.order


def is_abelian(H: Subgroup) -> bool:
    gens = [g for g in H.generators]
    return all(compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def is_cyclic(H: Subgroup) -> Permutation | None:
    """Smallest-rank element of order ``|H|``, or None."""
    m = H.order
    if m == 1:
        return Permutation.identity(H.n)
    if not is_abelian(H):
        return None
    ok = np.ones(m, dtype=bool)
    ident = np.arange(H.n)
    p = 2
    rest = m
    while rest > 1:
        if rest % p == 0:
            ok &= ~np.all(power_rows(H.elements, m // p) == ident, axis=1)
            while rest % p == 0:
                rest //= p
        p += 1
    hits = np.flatnonzero(ok)
    return _perm(H.elements[hits[0]]) if hits.size else None


def element_orders(H: Subgroup) -> list[int]:
    return [perm_order(g) for g in H]


def normalizer_mask(H: Subgroup, G: Ambient) -> np.ndarray:
    return kernels.normalizer_mask(G.arrays, _rows(H.generators, H.n), np.asarray(H.ranks))


def _normalizer_scan(H: Subgroup, G: Ambient) -> Subgroup:
    mask = normalizer_mask(H, G)
    rows = G.elements()[mask]
    if rows.shape[0] > get_caps().subgroup_max_order:
        raise ResourceCapExceeded("normalizer larger than subgroup cap")
    return Subgroup.from_elements(rows)


def normalizer_in(H: Subgroup, G: Ambient, *, method: str = "support") -> Subgroup:
    """``N_G(H)``.

    ``method="scan"`` tests every element of G.  ``method="support"`` (default,
    used only when G is the full S_n) scans Sym(supp H) instead and multiplies
    by Sym(fixed points), which is exact because a normalizing element must
    permute the common fixed points of H among themselves.
    """
    _require_inside(H, G)
    if method == "scan" or not G.full:
        return _normalizer_scan(H, G)
    n = H.n
    moved = sorted({i for row in H.elements for i in range(n) if row[i] != i})
    fixed = [i for i in range(n) if i not in set(moved)]
    if not moved:
        return close(symmetric_generators(n), n)
    k = len(moved)
    local = {p: j for j, p in enumerate(moved)}
    small_gens = [Permutation([local[g.array_form[p]] for p in moved]) for g in H.generators]
    small_H = close(small_gens, k)
    small_N = _normalizer_scan(small_H, Ambient(k))

    def lift(p: Permutation) -> Permutation:
        img = list(range(n))
        for j, src in enumerate(moved):
            img[src] = moved[p.array_form[j]]
        return Permutation(img)

    gens = [lift(g) for g in small_N.generators]
    if len(fixed) >= 2:
        gens.append(Permutation.from_cycles([(fixed[0], fixed[1])], n))
    if len(fixed) >= 3:
        gens.append(Permutation.from_cycles([tuple(fixed)], n))
    return close(gens, n)


def is_normal_in(H: Subgroup, G: Ambient | Subgroup) -> bool:
    gens = G.generators
    for g in gens:
        if g.degree != H.n:
            raise ValueError("degree mismatch")
    if not H.generators:
        return True
    rows = _rows(H.generators, H.n)
    for g in gens:
        ga = np.array(g.array_form, dtype=np.intp)
        conj = np.empty_like(rows)
        # g h g⁻¹ maps g(i) to g(h(i))
        conj[:, ga] = np.array(g.array_form, dtype=np.uint8)[rows]
        if not np.all(H.contains_rows(conj)):
            return False
    return True


def conjugate_subgroup(H: Subgroup, g: Permutation) -> Subgroup:
    """``g·H·g⁻¹``, regenerated from conjugated generators."""
    from perfcodes.perm import conjugate

    return close([conjugate(h, g) for h in H.generators], H.n)


def sylow2(H: Subgroup) -> Subgroup:
    """A Sylow 2-subgroup of H, grown one smallest-rank 2-element at a time."""
    n = H.n
    target = 1 << _two_adic(H.order)
    K = _two_adic(H.order)
    amb = Ambient.of(H)
    gens: list[Permutation] = []
    P = trivial(n)
    ident = np.arange(n)
    while P.order < target:
        mask = normalizer_mask(P, amb) if gens else np.ones(H.order, dtype=bool)
        mask &= ~P.contains_rows(H.elements)
        cand = np.flatnonzero(mask)
        lifted = power_rows(H.elements[cand], 1 << K)
        good = cand[P.contains_rows(lifted) if gens else np.all(lifted == ident, axis=1)]
        if good.size == 0:  # pragma: no cover - excluded by Sylow theory
            raise RuntimeError("no 2-element extends the current 2-subgroup")
        gens.append(_perm(H.elements[good[0]]))
        P = close(gens, n)
    return P


@dataclass(frozen=True)
class DoubleCoset:
    representative: Permutation
    size: int
    left_coset_count: int
    self_inverse: bool
    has_involution: bool

    def elements(self, H: Subgroup) -> list[Permutation]:
        return double_coset_elements(H, self.representative)


def double_coset_elements(H: Subgroup, x: Permutation) -> list[Permutation]:
    xa = np.array(x.array_form, dtype=np.intp)
    left = H.elements[:, xa]  # h∘x
    prods = np.concatenate([row[H.elements] for row in left])  # (h∘x)∘h2
    r, first = np.unique(kernels.rank_rows(prods), return_index=True)
    return [_perm(row) for row in prods[first]]


def left_cosets(H: Subgroup, G: Ambient) -> Iterator[Permutation]:
    """Smallest-rank representative of each left coset ``xH``, ascending."""
    _require_inside(H, G)
    labels = kernels.left_coset_labels(G.arrays, H.elements)
    for idx in np.unique(labels):
        yield G.element(int(idx))


def double_coset_table(H: Subgroup, G: Ambient):
    _require_inside(H, G)
    return kernels.double_coset_scan(G.arrays, H.elements)


def double_cosets(H: Subgroup, G: Ambient) -> Iterator[DoubleCoset]:
    """Partition G into double cosets ``HxH``, smallest-rank representatives ascending."""
    reps, sizes, selfinv, hasinv = double_coset_table(H, G)
    for r, s, si, hi in zip(reps, sizes, selfinv, hasinv):
        yield DoubleCoset(G.element(int(r)), int(s), int(s) // H.order, bool(si), bool(hi))


def all_subgroups(n: int) -> list[Subgroup]:
    """Every subgroup of S_n (n <= 6), by joining cyclic subgroups.

    Works on element masks over a precomputed multiplication table of S_n.
    """
    if n > 6:
        raise ResourceCapExceeded("subgroup lattice enumeration limited to n <= 6")
    elems = kernels.unrank_range(0, math.factorial(n), n)
    m = elems.shape[0]
    # table[i, j] = index of elems[i] ∘ elems[j]
    table = np.stack([kernels.rank_rows(elems[i][elems]) for i in range(m)])

    def closure(gens: list[int]) -> np.ndarray:
        mask = np.zeros(m, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
        g = np.array(gens, dtype=np.int64)
        while frontier.size:
            nxt = np.unique(table[frontier][:, g])
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    cyclic: dict[bytes, tuple[int, np.ndarray]] = {}
    for i in range(m):
        c = closure([i])
        cyclic.setdefault(np.packbits(c).tobytes(), (i, c))
    found: dict[bytes, tuple[list[int], np.ndarray]] = {}
    triv = closure([])
    found[np.packbits(triv).tobytes()] = ([], triv)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for gens, mask in frontier:
            for i, c in cyclic.values():
                if np.all(mask[c]):
                    continue
                J = closure(gens + [i])
                key = np.packbits(J).tobytes()
                if key not in found:
                    found[key] = (gens + [i], J)
                    nxt.append(found[key])
        frontier = nxt
    out = []
    for gens, mask in found.values():
        idx = np.flatnonzero(mask)
        out.append(Subgroup([_perm(elems[i]) for i in gens], n, np.ascontiguousarray(elems[idx]), idx.astype(np.int64)))
    return sorted(out, key=lambda S: (S.order, S.ranks.tolist()))


def find_isomorphism(H: Subgroup, K: Subgroup) -> dict[Permutation, Permutation] | None:
    """Images in K of H's generators defining an isomorphism H -> K, or None."""
    if H.order != K.order or sorted(element_orders(H)) != sorted(element_orders(K)):
        return None
    gens = [g for g in H.generators if not g.is_identity()]
    if not gens:
        return {}
    k_elems = list(K)
    k_orders = [perm_order(g) for g in k_elems]
    pools = [[z for z, o in zip(k_elems, k_orders) if o == perm_order(g)] for g in gens]
    for images in product(*pools):
        phi = _extend_hom(H, gens, list(images))
        if phi is not None and len(set(phi.values())) == H.order:
            return dict(zip(gens, images))
    return None


def _extend_hom(H: Subgroup, gens: list[Permutation], images: list[Permutation]):
    n = H.n
    e = Permutation.identity(n)
    phi = {e: Permutation.identity(images[0].degree)}
    queue = [e]
    while queue:
        a = queue.pop()
        fa = phi[a]
        for g, z in zip(gens, images):
            b = compose(a, g)
            fb = compose(fa, z)
            if b in phi:
                if phi[b] != fb:
                    return None
            else:
                phi[b] = fb
                queue.append(b)
    return phi
