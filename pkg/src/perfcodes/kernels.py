"""Hot loops over group elements.

Every public function here has two implementations: a numba kernel that
streams over ranks without materialising the ambient group, and a vectorised
numpy path (chunked) used when ``PERFCODES_NUMBA=0``.  Both return identical
arrays; the test-suite checks this on small degrees.

Permutations are rows of a ``uint8`` array holding 0-based images.  The
ambient group is either the full S_n (element index == Lehmer rank) or a
restricted subgroup given as a rank-sorted element array (element index ==
position in that array).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from perfcodes._accel import USE_NUMBA, njit

CHUNK = 1 << 17


def factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(i) for i in range(n + 1)], dtype=np.int64)


@dataclass(frozen=True)
class AmbientArrays:
    full: bool
    n: int
    size: int
    elems: np.ndarray  # (size, n) uint8 for restricted mode, (0, n) for full mode
    ranks: np.ndarray  # sorted int64 ranks for restricted mode, empty for full mode

    @classmethod
    def symmetric(cls, n: int) -> AmbientArrays:
        empty = np.zeros((0, n), dtype=np.uint8)
        return cls(True, n, math.factorial(n), empty, np.zeros(0, dtype=np.int64))

    @classmethod
    def restricted(cls, elems: np.ndarray, ranks: np.ndarray) -> AmbientArrays:
        return cls(False, elems.shape[1], elems.shape[0], elems, ranks)


# ----------------------------------------------------------------------------
# numba building blocks


@njit(cache=True)
def _nb_rank(p, n, fact):
    r = 0
    for i in range(n):
        c = 0
        pi = p[i]
        for j in range(i + 1, n):
            if p[j] < pi:
                c += 1
        r += c * fact[n - 1 - i]
    return r


@njit(cache=True)
def _nb_unrank(r, n, fact, out, pool):
    for i in range(n):
        pool[i] = i
    size = n
    for pos in range(n):
        f = fact[n - 1 - pos]
        d = r // f
        r -= d * f
        out[pos] = pool[d]
        for j in range(d, size - 1):
            pool[j] = pool[j + 1]
        size -= 1


@njit(cache=True)
def _nb_elem(full, idx, n, fact, elems, out, pool):
    if full:
        _nb_unrank(idx, n, fact, out, pool)
    else:
        for i in range(n):
            out[i] = elems[idx, i]


@njit(cache=True)
def _nb_index(full, p, n, fact, ranks):
    r = _nb_rank(p, n, fact)
    if full:
        return r
    lo = 0
    hi = ranks.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if ranks[mid] < r:
            lo = mid + 1
        else:
            hi = mid
    if lo < ranks.shape[0] and ranks[lo] == r:
        return lo
    return -1


@njit(cache=True)
def _nb_compose(p, q, out, n):
    for i in range(n):
        out[i] = p[q[i]]


@njit(cache=True)
def _nb_inverse(p, out, n):
    for i in range(n):
        out[p[i]] = i


@njit(cache=True)
def _nb_square_is_identity(p, n):
    for i in range(n):
        if p[p[i]] != i:
            return False
    return True


@njit(cache=True)
def _nb_is_identity(p, n):
    for i in range(n):
        if p[i] != i:
            return False
    return True


@njit(cache=True)
def _nb_rank_rows(arr, fact):
    m, n = arr.shape
    out = np.empty(m, dtype=np.int64)
    for k in range(m):
        out[k] = _nb_rank(arr[k], n, fact)
    return out


@njit(cache=True)
def _nb_unrank_range(start, stop, n, fact):
    out = np.empty((stop - start, n), dtype=np.uint8)
    pool = np.empty(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for k in range(stop - start):
        _nb_unrank(start + k, n, fact, buf, pool)
        for i in range(n):
            out[k, i] = buf[i]
    return out


@njit(cache=True)
def _nb_double_coset_scan(full, n, size, elems, ranks, H):
    fact = np.empty(n + 1, dtype=np.int64)
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    words = (size + 63) >> 6
    visited = np.zeros(words, dtype=np.uint64)
    hn = H.shape[0]
    cap = 1024
    reps = np.empty(cap, dtype=np.int64)
    sizes = np.empty(cap, dtype=np.int64)
    selfinv = np.empty(cap, dtype=np.bool_)
    hasinv = np.empty(cap, dtype=np.bool_)
    count = 0
    x = np.empty(n, dtype=np.int64)
    xi = np.empty(n, dtype=np.int64)
    t = np.empty(n, dtype=np.int64)
    p = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    one = np.uint64(1)
    for r in range(size):
        if (visited[r >> 6] >> np.uint64(r & 63)) & one:
            continue
        _nb_elem(full, r, n, fact, elems, x, pool)
        _nb_inverse(x, xi, n)
        inv_idx = _nb_index(full, xi, n, fact, ranks)
        found_inv = False
        has_inv = False
        cnt = 0
        for a in range(hn):
            for i in range(n):
                t[i] = H[a, x[i]]
            for b in range(hn):
                for i in range(n):
                    p[i] = t[H[b, i]]
                idx = _nb_index(full, p, n, fact, ranks)
                if idx < 0:
                    raise ValueError("product left the ambient group")
                if idx == inv_idx:
                    found_inv = True
                w = idx >> 6
                bit = one << np.uint64(idx & 63)
                if visited[w] & bit:
                    continue
                visited[w] |= bit
                cnt += 1
                if not has_inv and _nb_square_is_identity(p, n) and not _nb_is_identity(p, n):
                    has_inv = True
        if count == cap:
            cap *= 2
            reps2 = np.empty(cap, dtype=np.int64)
            sizes2 = np.empty(cap, dtype=np.int64)
            si2 = np.empty(cap, dtype=np.bool_)
            hi2 = np.empty(cap, dtype=np.bool_)
            reps2[:count] = reps[:count]
            sizes2[:count] = sizes[:count]
            si2[:count] = selfinv[:count]
            hi2[:count] = hasinv[:count]
            reps, sizes, selfinv, hasinv = reps2, sizes2, si2, hi2
        reps[count] = r
        sizes[count] = cnt
        selfinv[count] = found_inv
        hasinv[count] = has_inv
        count += 1
    return reps[:count].copy(), sizes[:count].copy(), selfinv[:count].copy(), hasinv[:count].copy()


@njit(cache=True)
def _nb_left_coset_labels(full, n, size, elems, ranks, H):
    fact = np.empty(n + 1, dtype=np.int64)
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    labels = np.full(size, -1, dtype=np.int64)
    hn = H.shape[0]
    x = np.empty(n, dtype=np.int64)
    p = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    for r in range(size):
        if labels[r] >= 0:
            continue
        _nb_elem(full, r, n, fact, elems, x, pool)
        for b in range(hn):
            for i in range(n):
                p[i] = x[H[b, i]]
            idx = _nb_index(full, p, n, fact, ranks)
            if idx < 0:
                raise ValueError("product left the ambient group")
            labels[idx] = r
    return labels


@njit(cache=True)
def _nb_inverse_and_square(full, n, size, elems, ranks):
    fact = np.empty(n + 1, dtype=np.int64)
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    inv = np.empty(size, dtype=np.int64)
    sq = np.empty(size, dtype=np.bool_)
    x = np.empty(n, dtype=np.int64)
    xi = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    for r in range(size):
        _nb_elem(full, r, n, fact, elems, x, pool)
        _nb_inverse(x, xi, n)
        inv[r] = _nb_index(full, xi, n, fact, ranks)
        sq[r] = _nb_square_is_identity(x, n)
    return inv, sq


@njit(cache=True)
def _nb_normalizer_mask(full, n, size, elems, ranks, gens, h_ranks):
    fact = np.empty(n + 1, dtype=np.int64)
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    mask = np.zeros(size, dtype=np.bool_)
    g = np.empty(n, dtype=np.int64)
    c = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    hr = h_ranks.shape[0]
    for r in range(size):
        _nb_elem(full, r, n, fact, elems, g, pool)
        ok = True
        for k in range(gens.shape[0]):
            # c = g gen g^-1 : c[g[i]] = g[gen[i]]
            for i in range(n):
                c[g[i]] = g[gens[k, i]]
            cr = _nb_rank(c, n, fact)
            lo = 0
            hi = hr
            while lo < hi:
                mid = (lo + hi) >> 1
                if h_ranks[mid] < cr:
                    lo = mid + 1
                else:
                    hi = mid
            if lo >= hr or h_ranks[lo] != cr:
                ok = False
                break
        mask[r] = ok
    return mask


# ----------------------------------------------------------------------------
# numpy building blocks


def _np_rank_rows(arr: np.ndarray) -> np.ndarray:
    m, n = arr.shape
    fact = factorials(n)
    a = arr.astype(np.int16)
    out = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (a[:, i + 1:] < a[:, i:i + 1]).sum(axis=1)
        out += smaller * fact[n - 1 - i]
    return out


def _np_unrank_range(start: int, stop: int, n: int) -> np.ndarray:
    fact = factorials(n)
    r = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((r.size, n), dtype=np.int64)
    for pos in range(n):
        f = fact[n - 1 - pos]
        digits[:, pos] = r // f
        r = r % f
    # Lehmer digits -> images: process right to left, bumping later entries
    out = digits.copy()
    for i in range(n - 2, -1, -1):
        tail = out[:, i + 1:]
        tail += tail >= out[:, i:i + 1]
    return out.astype(np.uint8)


def _np_elements(amb: AmbientArrays) -> np.ndarray:
    if amb.full:
        return unrank_range(0, amb.size, amb.n)
    return amb.elems


def _np_index(amb: AmbientArrays, rows: np.ndarray) -> np.ndarray:
    r = rank_rows(rows)
    if amb.full:
        return r
    pos = np.searchsorted(amb.ranks, r)
    pos_c = np.minimum(pos, amb.size - 1)
    if not np.all(amb.ranks[pos_c] == r):
        raise ValueError("product left the ambient group")
    return pos


def _np_left_coset_labels(amb: AmbientArrays, H: np.ndarray) -> np.ndarray:
    A = _np_elements(amb)
    labels = np.empty(amb.size, dtype=np.int64)
    for s in range(0, amb.size, CHUNK):
        blk = A[s:s + CHUNK]
        best = np.full(blk.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
        for h in H:
            np.minimum(best, _np_index(amb, blk[:, h]), out=best)
        labels[s:s + CHUNK] = best
    return labels


def _np_double_coset_scan(amb: AmbientArrays, H: np.ndarray):
    A = _np_elements(amb)
    left = _np_left_coset_labels(amb, H)
    dl = np.empty(amb.size, dtype=np.int64)
    for s in range(0, amb.size, CHUNK):
        blk = A[s:s + CHUNK]
        best = np.full(blk.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
        for h in H:
            np.minimum(best, left[_np_index(amb, h[blk])], out=best)
        dl[s:s + CHUNK] = best
    inv, sq = inverse_and_square(amb)
    identity_idx = int(_np_index(amb, np.arange(amb.n, dtype=np.uint8)[None, :])[0])
    invol = sq.copy()
    invol[identity_idx] = False
    reps = np.unique(dl)
    sizes = np.bincount(dl, minlength=amb.size)[reps]
    selfinv = dl[inv[reps]] == reps
    hasinv = np.bincount(dl, weights=invol.astype(np.float64), minlength=amb.size)[reps] > 0
    return reps, sizes.astype(np.int64), selfinv, hasinv


def _np_inverse_and_square(amb: AmbientArrays):
    A = _np_elements(amb)
    inv = np.empty(amb.size, dtype=np.int64)
    sq = np.empty(amb.size, dtype=bool)
    ident = np.arange(amb.n)
    for s in range(0, amb.size, CHUNK):
        blk = A[s:s + CHUNK]
        inv[s:s + CHUNK] = _np_index(amb, np.argsort(blk, axis=1).astype(np.uint8))
        sq[s:s + CHUNK] = np.all(np.take_along_axis(blk, blk.astype(np.intp), axis=1) == ident, axis=1)
    return inv, sq


def _np_normalizer_mask(amb: AmbientArrays, gens: np.ndarray, h_ranks: np.ndarray) -> np.ndarray:
    A = _np_elements(amb)
    mask = np.empty(amb.size, dtype=bool)
    for s in range(0, amb.size, CHUNK):
        blk = A[s:s + CHUNK].astype(np.intp)
        ok = np.ones(blk.shape[0], dtype=bool)
        rows = np.arange(blk.shape[0])[:, None]
        for gen in gens:
            conj = np.empty_like(blk)
            conj[rows, blk] = blk[:, gen]
            r = rank_rows(conj.astype(np.uint8))
            pos = np.minimum(np.searchsorted(h_ranks, r), h_ranks.size - 1)
            ok &= h_ranks[pos] == r
        mask[s:s + CHUNK] = ok
    return mask


# ----------------------------------------------------------------------------
# dispatch


def _as_u8(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.uint8)


def rank_rows(arr: np.ndarray) -> np.ndarray:
    """Lehmer ranks of the rows of an ``(m, n)`` image array."""
    arr = np.atleast_2d(arr)
    if USE_NUMBA:
        return _nb_rank_rows(_as_u8(arr), factorials(arr.shape[1]))
    return _np_rank_rows(arr)


def unrank_range(start: int, stop: int, n: int) -> np.ndarray:
    """Image rows for ranks ``start .. stop-1`` of S_n."""
    if USE_NUMBA:
        return _nb_unrank_range(start, stop, n, factorials(n))
    return _np_unrank_range(start, stop, n)


def double_coset_scan(amb: AmbientArrays, H: np.ndarray):
    """Partition the ambient group into double cosets ``HxH``.

    Returns ``(reps, sizes, self_inverse, has_involution)`` with one entry per
    double coset, ordered by the (smallest) element index of its representative.
    """
    H = _as_u8(H)
    if USE_NUMBA:
        return _nb_double_coset_scan(amb.full, amb.n, amb.size, _as_u8(amb.elems), amb.ranks, H)
    return _np_double_coset_scan(amb, H)


def left_coset_labels(amb: AmbientArrays, H: np.ndarray) -> np.ndarray:
    """For each element index, the smallest element index of its left coset ``xH``."""
    H = _as_u8(H)
    if USE_NUMBA:
        return _nb_left_coset_labels(amb.full, amb.n, amb.size, _as_u8(amb.elems), amb.ranks, H)
    return _np_left_coset_labels(amb, H)


def inverse_and_square(amb: AmbientArrays):
    """``(inverse index, x∘x == e mask)`` over the whole ambient group."""
    if USE_NUMBA:
        return _nb_inverse_and_square(amb.full, amb.n, amb.size, _as_u8(amb.elems), amb.ranks)
    return _np_inverse_and_square(amb)


def normalizer_mask(amb: AmbientArrays, gens: np.ndarray, h_ranks: np.ndarray) -> np.ndarray:
    """Mask of ambient elements ``g`` with ``g·gen·g⁻¹ ∈ H`` for every generator."""
    gens = _as_u8(gens).reshape(-1, amb.n)
    if gens.shape[0] == 0:
        return np.ones(amb.size, dtype=bool)
    if USE_NUMBA:
        return _nb_normalizer_mask(amb.full, amb.n, amb.size, _as_u8(amb.elems), amb.ranks, gens, h_ranks)
    return _np_normalizer_mask(amb, gens, h_ranks)


def ambient_elements(amb: AmbientArrays) -> np.ndarray:
    return _np_elements(amb)


def ambient_index(amb: AmbientArrays, rows: np.ndarray) -> np.ndarray:
    return _np_index(amb, np.atleast_2d(rows))


def unrank_range_many(ranks: np.ndarray, n: int) -> np.ndarray:
    """Image rows for an arbitrary array of ranks."""
    ranks = np.asarray(ranks, dtype=np.int64)
    if USE_NUMBA:
        return _nb_unrank_many(ranks, n, factorials(n))
    fact = factorials(n)
    r = ranks.copy()
    digits = np.empty((r.size, n), dtype=np.int64)
    for pos in range(n):
        f = fact[n - 1 - pos]
        digits[:, pos] = r // f
        r = r % f
    for i in range(n - 2, -1, -1):
        tail = digits[:, i + 1:]
        tail += tail >= digits[:, i:i + 1]
    return digits.astype(np.uint8)


@njit(cache=True)
def _nb_unrank_many(ranks, n, fact):
    out = np.empty((ranks.shape[0], n), dtype=np.uint8)
    pool = np.empty(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for k in range(ranks.shape[0]):
        _nb_unrank(ranks[k], n, fact, buf, pool)
        for i in range(n):
            out[k, i] = buf[i]
    return out


@njit(cache=True)
def _option(v, k, has_loop, indptr, indices, free):
    # k-th option of v: its loop first (if any), then free neighbours ascending
    if has_loop[v]:
        if k == 0:
            return v
        k -= 1
    for j in range(indptr[v], indptr[v + 1]):
        u = indices[j]
        if free[u]:
            if k == 0:
                return u
            k -= 1
    return -1


@njit(cache=True)
def _count_options(v, has_loop, indptr, indices, free):
    c = 1 if has_loop[v] else 0
    for j in range(indptr[v], indptr[v + 1]):
        if free[indices[j]]:
            c += 1
    return c


@njit(cache=True)
def _nb_match_components(verts, comp_ptr, has_loop, indptr, indices, budget):
    m = has_loop.shape[0]
    partner = np.full(m, -1, dtype=np.int64)
    free = np.zeros(m, dtype=np.bool_)
    frame_v = np.empty(m, dtype=np.int64)
    frame_k = np.empty(m, dtype=np.int64)
    frame_u = np.empty(m, dtype=np.int64)
    nodes = 0
    ncomp = comp_ptr.shape[0] - 1
    for c in range(ncomp):
        lo = comp_ptr[c]
        hi = comp_ptr[c + 1]
        any_loop = False
        for i in range(lo, hi):
            free[verts[i]] = True
            if has_loop[verts[i]]:
                any_loop = True
        remaining = hi - lo
        if not any_loop and remaining % 2 == 1:
            return partner, 0, nodes
        depth = 0
        next_k = 0
        while remaining > 0:
            nodes += 1
            if nodes > budget:
                return partner, -1, nodes
            # most constrained free vertex (ties -> smallest id)
            best = -1
            best_c = 1 << 30
            for i in range(lo, hi):
                v = verts[i]
                if free[v]:
                    cnt = _count_options(v, has_loop, indptr, indices, free)
                    if cnt < best_c:
                        best_c = cnt
                        best = v
                        if cnt == 0:
                            break
            k = next_k
            next_k = 0
            u = -1
            if best_c > k:
                u = _option(best, k, has_loop, indptr, indices, free)
            if u >= 0:
                frame_v[depth] = best
                frame_k[depth] = k
                frame_u[depth] = u
                depth += 1
                free[best] = False
                free[u] = False
                partner[best] = u
                partner[u] = best
                remaining -= 1 if u == best else 2
                continue
            # backtrack
            if depth == 0:
                return partner, 0, nodes
            depth -= 1
            v = frame_v[depth]
            u = frame_u[depth]
            free[v] = True
            free[u] = True
            partner[v] = -1
            partner[u] = -1
            remaining += 1 if u == v else 2
            next_k = frame_k[depth] + 1
            # the frame's vertex is re-selected: same free set, same choice rule
    return partner, 1, nodes


def match_components(verts, comp_ptr, has_loop, indptr, indices, budget):
    """Backtracking cover of every vertex by its loop or a matched neighbour.

    Components are given as ``verts[comp_ptr[c]:comp_ptr[c+1]]`` over a CSR
    adjacency.  Returns ``(partner, status, nodes)`` with status 1 (solved),
    0 (some component has no cover) or -1 (node budget exhausted).
    """
    # backtracking does not vectorise; without numba the same code runs interpreted
    return _nb_match_components(
        np.ascontiguousarray(verts, dtype=np.int64),
        np.ascontiguousarray(comp_ptr, dtype=np.int64),
        np.ascontiguousarray(has_loop, dtype=np.bool_),
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        int(budget),
    )
