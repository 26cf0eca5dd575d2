"""Compiled inner loops over bit-packed adjacency rows.

Rows are ``uint64[n, W]`` with vertex ``v`` stored at word ``v >> 6``, bit
``v & 63``.  Every scan visits non-edges ``{a, b}`` in pair-index order and
only looks at common neighbours ``c < d`` with ``c > a``; that is exactly the
dedup rule ``pair_index({a,b}) < pair_index({c,d})`` so each induced square
is seen once, from its smaller diagonal.
"""

import numba as nb
import numpy as np

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@nb.njit(cache=True, inline="always")
def popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@nb.njit(cache=True, inline="always")
def _ctz(x):
    return popcount((x & (~x + _ONE)) - _ONE)


@nb.njit(cache=True, inline="always")
def has_edge(adj, u, v):
    return (adj[u, v >> 6] >> np.uint64(v & 63)) & _ONE != _ZERO


@nb.njit(cache=True, inline="always")
def pair_index(a, b, n):
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


@nb.njit(cache=True, inline="always")
def _common_above(adj, a, b, lo, buf):
    """Write sorted common neighbours of a and b that are > lo into buf."""
    k = 0
    W = adj.shape[1]
    w0 = (lo + 1) >> 6
    for w in range(w0, W):
        x = adj[a, w] & adj[b, w]
        if w == w0:
            sh = (lo + 1) & 63
            x = (x >> np.uint64(sh)) << np.uint64(sh)
        while x != _ZERO:
            buf[k] = (w << 6) + _ctz(x)
            k += 1
            x &= x - _ONE
    return k


@nb.njit(cache=True)
def bits_from_pair_mask(mask, n, W):
    """Adjacency rows from a per-pair edge mask given in pair-index order."""
    adj = np.zeros((n, W), dtype=np.uint64)
    idx = 0
    for a in range(n):
        for b in range(a + 1, n):
            if mask[idx]:
                adj[a, b >> 6] |= _ONE << np.uint64(b & 63)
                adj[b, a >> 6] |= _ONE << np.uint64(a & 63)
            idx += 1
    return adj


@nb.njit(cache=True, inline="always")
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@nb.njit(cache=True)
def decompose(adj, n):
    """Union-find over non-edges, one union per induced square.

    Returns ``(nonedge_pairs, labels, comp_sizes, num_squares)``.  Component
    ids are assigned in order of each component's smallest non-edge.
    """
    total = n * (n - 1) // 2
    parent = np.arange(total, dtype=np.int32)
    rank = np.ones(total, dtype=np.int32)  # subtree sizes; reused below
    buf = np.empty(max(n, 1), dtype=np.int64)
    nsq = 0
    n_non = 0
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            n_non += 1
            k = _common_above(adj, a, b, a, buf)
            if k < 2:
                continue
            rf = _find(parent, pair_index(a, b, n))
            for i in range(k):
                c = buf[i]
                for j in range(i + 1, k):
                    d = buf[j]
                    if has_edge(adj, c, d):
                        continue
                    nsq += 1
                    rg = _find(parent, pair_index(c, d, n))
                    if rf != rg:
                        if rank[rf] < rank[rg]:
                            rf, rg = rg, rf
                        parent[rg] = rf
                        rank[rf] += rank[rg]

    pairs = np.empty(n_non, dtype=np.int64)
    labels = np.empty(n_non, dtype=np.int64)
    comp_of_root = rank
    comp_of_root[:] = -1
    sizes = np.zeros(n_non, dtype=np.int64)
    ncomp = 0
    t = 0
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            f = pair_index(a, b, n)
            r = _find(parent, f)
            cid = comp_of_root[r]
            if cid < 0:
                cid = ncomp
                comp_of_root[r] = cid
                ncomp += 1
            pairs[t] = f
            labels[t] = cid
            sizes[cid] += 1
            t += 1
    return pairs, labels, sizes[:ncomp].copy(), nsq


@nb.njit(cache=True)
def count_squares(adj, n):
    buf = np.empty(max(n, 1), dtype=np.int64)
    nsq = 0
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            k = _common_above(adj, a, b, a, buf)
            for i in range(k):
                for j in range(i + 1, k):
                    if not has_edge(adj, buf[i], buf[j]):
                        nsq += 1
    return nsq


@nb.njit(cache=True)
def fill_squares(adj, n, out):
    """Write every square as a row ``(a, b, c, d)``; diagonals ab < cd."""
    buf = np.empty(max(n, 1), dtype=np.int64)
    t = 0
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            k = _common_above(adj, a, b, a, buf)
            for i in range(k):
                c = buf[i]
                for j in range(i + 1, k):
                    d = buf[j]
                    if not has_edge(adj, c, d):
                        out[t, 0] = a
                        out[t, 1] = b
                        out[t, 2] = c
                        out[t, 3] = d
                        t += 1
    return t


@nb.njit(cache=True, inline="always")
def _bonded(adj, a, b, c, d):
    for w in range(adj.shape[1]):
        x = (adj[a, w] & adj[b, w]) ^ (adj[c, w] & adj[d, w])
        if x == _ZERO:
            continue
        for v in (a, b, c, d):
            if (v >> 6) == w:
                x &= ~(_ONE << np.uint64(v & 63))
        if x != _ZERO:
            return True
    return False


@nb.njit(cache=True)
def nonbonded_scan(adj, n, out):
    """Count squares with no outside vertex on exactly one diagonal.

    Rows are written to ``out`` while it has room; the full count is
    returned either way.
    """
    buf = np.empty(max(n, 1), dtype=np.int64)
    total = 0
    nb_count = 0
    cap = out.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            k = _common_above(adj, a, b, a, buf)
            for i in range(k):
                c = buf[i]
                for j in range(i + 1, k):
                    d = buf[j]
                    if has_edge(adj, c, d):
                        continue
                    total += 1
                    if not _bonded(adj, a, b, c, d):
                        if nb_count < cap:
                            out[nb_count, 0] = a
                            out[nb_count, 1] = b
                            out[nb_count, 2] = c
                            out[nb_count, 3] = d
                        nb_count += 1
    return total, nb_count


@nb.njit(cache=True)
def t1_bit_rows(adj, n, rank, n_non):
    """T1 adjacency as bit rows indexed by non-edge ordinal."""
    WN = max(1, (n_non + 63) >> 6)
    rows = np.zeros((n_non, WN), dtype=np.uint64)
    buf = np.empty(max(n, 1), dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            if has_edge(adj, a, b):
                continue
            rf = rank[pair_index(a, b, n)]
            k = _common_above(adj, a, b, a, buf)
            for i in range(k):
                c = buf[i]
                for j in range(i + 1, k):
                    d = buf[j]
                    if has_edge(adj, c, d):
                        continue
                    rg = rank[pair_index(c, d, n)]
                    rows[rf, rg >> 6] |= _ONE << np.uint64(rg & 63)
                    rows[rg, rf >> 6] |= _ONE << np.uint64(rf & 63)
    return rows


@nb.njit(cache=True)
def rows_diameter_at_most_two(rows, n_non):
    for i in range(n_non):
        for j in range(i + 1, n_non):
            if (rows[i, j >> 6] >> np.uint64(j & 63)) & _ONE != _ZERO:
                continue
            ok = False
            for w in range(rows.shape[1]):
                if rows[i, w] & rows[j, w] != _ZERO:
                    ok = True
                    break
            if not ok:
                return False
    return True


@nb.njit(cache=True)
def bfs_diameter(indptr, indices, nv):
    """Exact diameter by BFS from every vertex; -1 when disconnected."""
    dist = np.empty(nv, dtype=np.int64)
    queue = np.empty(nv, dtype=np.int64)
    best = 0
    for s in range(nv):
        dist[:] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue[tail] = v
                    tail += 1
        if tail < nv:
            return -1
        if dist[queue[tail - 1]] > best:
            best = dist[queue[tail - 1]]
    return best
