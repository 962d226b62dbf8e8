"""Exhaustive deciders for perfect-code status and their certificates.

Two independent routes are kept apart on purpose:

* the double-coset criterion (a self-inverse double coset ``HxH`` other than
  H with an odd number of left cosets and no involution exists iff H is not a
  perfect code), and
* the transversal search (H is a perfect code iff it has an inverse-closed
  left transversal).

Either one re-checks the other in the test-suite.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from perfcodes import kernels
from perfcodes.config import SearchBudgetExceeded, VerificationError, get_caps, ResourceCapExceeded
from perfcodes.group import (
    Ambient,
    Subgroup,
    compose_rows,
    double_coset_elements,
    double_coset_table,
    is_normal_in,
    power_rows,
    _require_inside,
)
from perfcodes.perfect.types import (
    BadDoubleCoset,
    Certificate,
    Provenance,
    Status,
    Transversal,
    Verdict,
)
from perfcodes.perm import Permutation

log = logging.getLogger(__name__)

ORACLE = Provenance("OracleProven", ("double-coset",))


def _identity_index(G: Ambient) -> int:
    return G.index(Permutation.identity(G.n))


def bad_double_cosets(H: Subgroup, G: Ambient) -> np.ndarray:
    """Element indices of representatives of every bad double coset, ascending."""
    reps, sizes, selfinv, hasinv = double_coset_table(H, G)
    odd = (sizes // H.order) % 2 == 1
    bad = selfinv & ~hasinv & odd & (reps != _identity_index(G))
    return reps[bad]


def oracle_double_coset(H: Subgroup, G: Ambient, *, certificate: bool = True) -> tuple[Verdict, Certificate | None]:
    """Decide H in G by the double-coset criterion.

    With ``certificate=True`` the answer carries a re-verified certificate: the
    smallest-rank bad double coset representative, or a transversal from
    :func:`build_transversal`.
    """
    _require_inside(H, G)
    bad = bad_double_cosets(H, G)
    if bad.size:
        cert = BadDoubleCoset(G.element(int(bad[0])))
        verdict = Verdict(Status.NOT_PERFECT, ORACLE)
    else:
        verdict = Verdict(Status.PERFECT, ORACLE)
        if not certificate:
            return verdict, None
        cert = build_transversal(H, G)
        if cert is None:
            raise VerificationError("double-coset oracle says Perfect but no transversal exists")
    if certificate and not verify_certificate(H, G, cert):
        raise VerificationError(f"certificate {cert!r} failed re-verification")
    return verdict, cert if certificate else None


# ----------------------------------------------------------------------------
# transversal search


def build_transversal(H: Subgroup, G: Ambient, *, budget: int | None = None) -> Transversal | None:
    """An inverse-closed left transversal of H in G, or None if none exists.

    Left cosets form a graph: a coset has a loop when it contains an element
    with ``r∘r == e``; cosets C, C' are adjacent when some ``r ∈ C`` has
    ``r⁻¹ ∈ C'``.  A transversal is a choice, per coset, of its loop or a
    partner, i.e. a matching covering every loopless coset.  Components are
    solved independently by backtracking within a shared node budget.
    """
    _require_inside(H, G)
    if G.full and G.n > get_caps().transversal_limit():
        raise ResourceCapExceeded(f"transversal search over S_{G.n} exceeds cap")
    limit = get_caps().transversal_budget if budget is None else budget
    arr = G.arrays
    labels = kernels.left_coset_labels(arr, H.elements)
    inv, sq = kernels.inverse_and_square(arr)
    cosets = np.unique(labels)
    m = cosets.size
    cid = np.searchsorted(cosets, labels)

    # smallest element with r∘r == e in each coset (identity for H itself)
    loop_elem = np.full(m, -1, dtype=np.int64)
    sq_idx = np.flatnonzero(sq)
    sq_c = cid[sq_idx]
    first = np.unique(sq_c, return_index=True)
    loop_elem[first[0]] = sq_idx[first[1]]
    has_loop = loop_elem >= 0

    a_all = cid
    b_all = cid[inv]
    sel = np.flatnonzero(a_all < b_all)
    a, b = a_all[sel], b_all[sel]
    key = a * m + b
    order_ = np.lexsort((sel, key))
    key_sorted = key[order_]
    keep = np.ones(key_sorted.size, dtype=bool)
    keep[1:] = key_sorted[1:] != key_sorted[:-1]
    ea, eb, ex = a[order_][keep], b[order_][keep], sel[order_][keep]

    if ea.size:
        graph = coo_matrix((np.ones(ea.size), (ea, eb)), shape=(m, m))
        ncomp, comp = connected_components(graph, directed=False)
    else:
        ncomp, comp = m, np.arange(m)
    comp_size = np.bincount(comp, minlength=ncomp)

    partner = np.full(m, -1, dtype=np.int64)
    singles = comp_size[comp] == 1
    if np.any(singles & ~has_loop):
        return None
    partner[singles] = np.flatnonzero(singles)

    pair_edges = comp_size[comp[ea]] == 2
    u, v = ea[pair_edges], eb[pair_edges]
    both = has_loop[u] & has_loop[v]
    partner[u[both]], partner[v[both]] = u[both], v[both]
    partner[u[~both]], partner[v[~both]] = v[~both], u[~both]

    big = comp_size[comp] > 2
    if np.any(big):
        verts = np.flatnonzero(big)
        verts = verts[np.argsort(comp[verts], kind="stable")]
        comp_ptr = np.concatenate(([0], np.cumsum(np.unique(comp[verts], return_counts=True)[1])))
        be = big[ea]
        src = np.concatenate((ea[be], eb[be]))
        dst = np.concatenate((eb[be], ea[be]))
        o = np.lexsort((dst, src))
        src, dst = src[o], dst[o]
        indptr = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=m), out=indptr[1:])
        sol, status, _ = kernels.match_components(verts, comp_ptr, has_loop, indptr, dst, limit)
        if status < 0:
            raise SearchBudgetExceeded(f"transversal search exceeded {limit} nodes")
        if status == 0:
            return None
        partner[verts] = sol[verts]

    # assemble: loops contribute their involution/identity, edges contribute r and r⁻¹
    pick = []
    self_loop = partner == np.arange(m)
    pick.append(loop_elem[self_loop])
    edge_key = ea * m + eb
    matched_u = np.flatnonzero(~self_loop & (np.arange(m) < partner))
    if matched_u.size:
        want = matched_u * m + partner[matched_u]
        pos = np.searchsorted(edge_key, want)
        x = ex[pos]
        pick.append(x)
        pick.append(inv[x])
    idx = np.concatenate(pick)
    rows = G.elements()[idx] if not G.full else kernels.unrank_range_many(idx, G.n)
    return Transversal(kernels.rank_rows(rows), G.n)


# ----------------------------------------------------------------------------
# verification


def verify_certificate(H: Subgroup, G: Ambient, cert: Certificate) -> bool:
    """Re-check a certificate from scratch, without the coset kernels."""
    try:
        _require_inside(H, G)
    except ValueError:
        return False
    if isinstance(cert, Transversal):
        return _verify_transversal(H, G, cert)
    if isinstance(cert, BadDoubleCoset):
        return _verify_bad_double_coset(H, G, cert.representative)
    return False


def _in_ambient(G: Ambient, ranks: np.ndarray) -> bool:
    if G.full:
        return True
    return bool(np.all(np.isin(ranks, G.subgroup.ranks)))


def _verify_transversal(H: Subgroup, G: Ambient, T: Transversal) -> bool:
    if T.n != G.n or len(T) != G.order // H.order:
        return False
    ranks = T.ranks
    if np.unique(ranks).size != ranks.size or not _in_ambient(G, ranks):
        return False
    rows = kernels.unrank_range_many(ranks, T.n)
    inv_rows = np.argsort(rows, axis=1).astype(np.uint8)
    if not np.array_equal(np.sort(kernels.rank_rows(inv_rows)), ranks):
        return False
    # coset key of t: smallest rank in tH
    key = np.full(ranks.size, np.iinfo(np.int64).max, dtype=np.int64)
    for h in H.elements:
        np.minimum(key, kernels.rank_rows(rows[:, h]), out=key)
    return np.unique(key).size == ranks.size


def _verify_bad_double_coset(H: Subgroup, G: Ambient, x: Permutation) -> bool:
    if x.degree != G.n or H.index_of(x) >= 0:
        return False
    D = double_coset_elements(H, x)
    rows = np.array([p.array_form for p in D], dtype=np.uint8)
    ranks = np.sort(kernels.rank_rows(rows))
    if not _in_ambient(G, ranks):
        return False
    inv_ranks = np.sort(kernels.rank_rows(np.argsort(rows, axis=1).astype(np.uint8)))
    if not np.array_equal(ranks, inv_ranks):
        return False
    if ranks.size % H.order or (ranks.size // H.order) % 2 == 0:
        return False
    ident = np.arange(G.n)
    squares = compose_rows(rows, rows)
    return not np.any(np.all(squares == ident, axis=1))


# ----------------------------------------------------------------------------
# criteria for special cases


def normal_criterion(H: Subgroup, G: Ambient) -> Verdict:
    """For normal H: perfect iff every x with x² ∈ H has some h ∈ H with (xh)² = e."""
    if not is_normal_in(H, G):
        raise ValueError("normal_criterion requires H normal in G")
    ident = np.arange(G.n)
    A = G.elements()
    ok = True
    for s in range(0, A.shape[0], kernels.CHUNK):
        blk = A[s:s + kernels.CHUNK]
        cand = blk[H.contains_rows(compose_rows(blk, blk))]
        if cand.shape[0] == 0:
            continue
        fixed = np.zeros(cand.shape[0], dtype=bool)
        for h in H.elements:
            xh = cand[:, h]
            fixed |= np.all(compose_rows(xh, xh) == ident, axis=1)
            if fixed.all():
                break
        if not fixed.all():
            ok = False
            break
    return Verdict(Status.of(ok), Provenance("TheoremFastPath", ("normal-subgroup-criterion",)))


def witness_search_2elements(H: Subgroup, G: Ambient) -> BadDoubleCoset | None:
    """Smallest-rank 2-element x ∉ H with x² ∈ H, odd |H : H ∩ xHx⁻¹| and HxH involution-free.

    A None here does not by itself prove H perfect.
    """
    _require_inside(H, G)
    n = G.n
    ident = np.arange(n)
    k = max(1, n.bit_length() - 1)  # 2-elements of S_n have order <= 2^floor(log2 n)
    A = G.elements()
    rejected: set[int] = set()
    for s in range(0, A.shape[0], kernels.CHUNK):
        blk = A[s:s + kernels.CHUNK]
        sq = compose_rows(blk, blk)
        mask = ~H.contains_rows(blk) & H.contains_rows(sq) & ~np.all(sq == ident, axis=1)
        mask &= np.all(power_rows(blk, 1 << k) == ident, axis=1)
        for i in np.flatnonzero(mask):
            row = blk[i]
            r = int(kernels.rank_rows(row[None, :])[0])
            if r in rejected:
                continue
            x = Permutation(row.tolist())
            # |H ∩ xHx⁻¹|: conjugates x h x⁻¹ map x(i) -> x(h(i))
            conj = np.empty_like(H.elements)
            conj[:, row.astype(np.intp)] = row[H.elements]
            inter = int(H.contains_rows(conj).sum())
            if (H.order // inter) % 2 == 0:
                continue
            D = double_coset_elements(H, x)
            drows = np.array([p.array_form for p in D], dtype=np.uint8)
            if np.any(np.all(compose_rows(drows, drows) == ident, axis=1)):
                rejected.update(kernels.rank_rows(drows).tolist())
                continue
            cert = BadDoubleCoset(x)
            if _verify_bad_double_coset(H, G, x):
                return cert
    return None
