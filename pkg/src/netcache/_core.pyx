# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; int64 twins of ``_core_py``.

The caller guarantees (see ``kernels.fits_compiled``) that every scaled
gain, every partial sum, and every encoded state key fits in int64, and
that C and S stay below 63 so bitmasks fit too. Iteration orders match
the pure-Python kernels exactly, so results are bit-identical.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc


def capdp(caps, sizes, gains, adj_masks):
    """Sparse capacity-vector DP; see ``_core_py.capdp``."""
    cdef int C = len(caps)
    cdef int S = len(sizes)
    cdef int U = len(adj_masks)
    if C > 62:
        raise ValueError("compiled kernel supports at most 62 caches")
    cdef int i, t, u, m, b, k, nmasks
    cdef int64_t size, g, key, nk, val, nv, useful, am, full
    cdef int64_t ccaps[64]
    cdef int64_t cstrides[64]
    cdef int64_t rem[64]
    cdef int bits[64]
    cdef bint ok

    for t in range(C):
        ccaps[t] = caps[t]
    cstrides[0] = 1
    for t in range(1, C):
        cstrides[t] = cstrides[t - 1] * (ccaps[t - 1] + 1)
    cdef int64_t start = 0
    for t in range(C):
        start += ccaps[t] * cstrides[t]

    cdef int64_t *camask = <int64_t *> malloc((U + 1) * sizeof(int64_t))
    cdef int64_t *cgains = <int64_t *> malloc((U + 1) * sizeof(int64_t))
    cdef int64_t *gmask = NULL
    if camask == NULL or cgains == NULL:
        free(camask)
        free(cgains)
        raise MemoryError()
    for u in range(U):
        camask[u] = adj_masks[u]

    table = {start: 0}
    seen = {start}
    back = []

    try:
        for i in range(S):
            size = sizes[i]
            gi = gains[i]
            # Restrict subsets to caches adjacent to a positive-gain
            # requester of content i (matches the pure kernel).
            useful = 0
            for u in range(U):
                g = gi[u]
                cgains[u] = g
                if g != 0:
                    useful |= camask[u]
            if useful == 0:
                back.append({})
                continue
            k = 0
            for t in range(C):
                if useful >> t & 1:
                    bits[k] = t
                    k += 1
            nmasks = 1 << k
            gmask = <int64_t *> malloc(nmasks * sizeof(int64_t))
            if gmask == NULL:
                raise MemoryError()
            for m in range(nmasks):
                gmask[m] = 0
            for u in range(U):
                g = cgains[u]
                if g != 0:
                    am = 0
                    for b in range(k):
                        if camask[u] >> bits[b] & 1:
                            am |= <int64_t> 1 << b
                    for m in range(1, nmasks):
                        if m & am:
                            gmask[m] += g
            new = dict(table)
            backi = {}
            for key_obj in sorted(table):
                key = key_obj
                val = table[key_obj]
                for t in range(C):
                    rem[t] = (key // cstrides[t]) % (ccaps[t] + 1)
                for m in range(1, nmasks):
                    nk = key
                    full = 0
                    ok = True
                    for b in range(k):
                        if m >> b & 1:
                            t = bits[b]
                            if rem[t] < size:
                                ok = False
                                break
                            nk -= size * cstrides[t]
                            full |= <int64_t> 1 << t
                    if not ok:
                        continue
                    nv = val + gmask[m]
                    cur = new.get(nk)
                    if cur is None or nv > <int64_t> cur:
                        new[nk] = nv
                        backi[nk] = (key, full)
            free(gmask)
            gmask = NULL
            table = new
            seen.update(new)
            back.append(backi)
    finally:
        free(gmask)
        free(camask)
        free(cgains)

    cdef int64_t best = -1
    cdef int64_t best_key = start
    for key_obj in sorted(table):
        val = table[key_obj]
        if val > best:
            best = val
            best_key = key_obj
    decisions = [0] * S
    cur_key = best_key
    for i in range(S - 1, -1, -1):
        bp = back[i].get(cur_key)
        if bp is not None:
            cur_key, decisions[i] = bp
    return best, decisions, len(seen)


def brute_force(subsets, adj_masks, gains):
    """Branch over per-cache content subsets; see ``_core_py.brute_force``."""
    cdef int C = len(subsets)
    cdef int U = len(adj_masks)
    cdef int S = len(gains[0]) if U else 0
    if C > 62 or S > 62:
        raise ValueError("compiled kernel supports at most 62 caches/contents")

    cdef int c, u, d, k, s, nsub = 0
    for c in range(C):
        nsub += len(subsets[c])

    cdef int64_t *garr = <int64_t *> malloc((U * S + 1) * sizeof(int64_t))
    cdef int64_t *adj = <int64_t *> malloc((U + 1) * sizeof(int64_t))
    cdef int64_t *flat = <int64_t *> malloc((nsub + 1) * sizeof(int64_t))
    cdef int64_t *offs = <int64_t *> malloc((C + 2) * sizeof(int64_t))
    cdef int64_t *reach = <int64_t *> malloc(((C + 1) * U + 1) * sizeof(int64_t))
    cdef int64_t *cov = <int64_t *> malloc((U + 1) * sizeof(int64_t))
    cdef int64_t *chosen = <int64_t *> malloc((C + 1) * sizeof(int64_t))
    cdef int64_t *bestall = <int64_t *> malloc((C + 1) * sizeof(int64_t))
    cdef int64_t *vals = <int64_t *> malloc((C + 2) * sizeof(int64_t))
    cdef int64_t *ptr = <int64_t *> malloc((C + 2) * sizeof(int64_t))
    cdef int64_t *mark = <int64_t *> malloc((C + 2) * sizeof(int64_t))
    cdef int64_t *undo_u = <int64_t *> malloc((U * C + 1) * sizeof(int64_t))
    cdef int64_t *undo_m = <int64_t *> malloc((U * C + 1) * sizeof(int64_t))
    cdef bint *fresh = <bint *> malloc((C + 2) * sizeof(bint))
    if (garr == NULL or adj == NULL or flat == NULL or offs == NULL
            or reach == NULL or cov == NULL or chosen == NULL
            or bestall == NULL or vals == NULL or ptr == NULL
            or mark == NULL or undo_u == NULL or undo_m == NULL
            or fresh == NULL):
        free(garr); free(adj); free(flat); free(offs); free(reach)
        free(cov); free(chosen); free(bestall); free(vals); free(ptr)
        free(mark); free(undo_u); free(undo_m); free(fresh)
        raise MemoryError()

    cdef int64_t m64, extra, bound, delta, new, utop, best, nodes
    try:
        for u in range(U):
            gu = gains[u]
            for s in range(S):
                garr[u * S + s] = gu[s]
            adj[u] = adj_masks[u]
            cov[u] = 0
        offs[0] = 0
        k = 0
        for c in range(C):
            for m_obj in subsets[c]:
                flat[k] = m_obj
                k += 1
            offs[c + 1] = k
        # reach[d*U + u]: contents coverable for user u by caches d..C-1
        for u in range(U):
            reach[C * U + u] = 0
        for d in range(C - 1, -1, -1):
            m64 = 0
            for k in range(<int> offs[d], <int> offs[d + 1]):
                m64 |= flat[k]
            for u in range(U):
                reach[d * U + u] = reach[(d + 1) * U + u]
                if adj[u] >> d & 1:
                    reach[d * U + u] |= m64

        best = -1
        nodes = 0
        utop = 0
        d = 0
        vals[0] = 0
        ptr[0] = offs[0]
        fresh[0] = True
        for c in range(C):
            bestall[c] = 0
            chosen[c] = 0
        nodes = 1  # root

        while d >= 0:
            if d == C:
                if vals[C] > best:
                    best = vals[C]
                    for c in range(C):
                        bestall[c] = chosen[c]
                d -= 1
                if d >= 0:
                    while utop > mark[d]:
                        utop -= 1
                        cov[<int> undo_u[utop]] ^= undo_m[utop]
                continue
            if fresh[d]:
                fresh[d] = False
                bound = vals[d]
                for u in range(U):
                    extra = reach[d * U + u] & ~cov[u]
                    while extra:
                        s = _lowbit(extra)
                        bound += garr[u * S + s]
                        extra &= extra - 1
                if bound <= best:
                    d -= 1
                    if d >= 0:
                        while utop > mark[d]:
                            utop -= 1
                            cov[<int> undo_u[utop]] ^= undo_m[utop]
                    continue
            if ptr[d] < offs[d + 1]:
                m64 = flat[<int> ptr[d]]
                ptr[d] += 1
                chosen[d] = m64
                mark[d] = utop
                delta = 0
                if m64:
                    for u in range(U):
                        if adj[u] >> d & 1:
                            new = m64 & ~cov[u]
                            if new:
                                extra = new
                                while extra:
                                    s = _lowbit(extra)
                                    delta += garr[u * S + s]
                                    extra &= extra - 1
                                cov[u] |= new
                                undo_u[utop] = u
                                undo_m[utop] = new
                                utop += 1
                vals[d + 1] = vals[d] + delta
                ptr[d + 1] = offs[d + 1]
                fresh[d + 1] = True
                d += 1
                nodes += 1
            else:
                d -= 1
                if d >= 0:
                    while utop > mark[d]:
                        utop -= 1
                        cov[<int> undo_u[utop]] ^= undo_m[utop]

        result = (int(best), [int(bestall[c]) for c in range(C)], int(nodes))
    finally:
        free(garr); free(adj); free(flat); free(offs); free(reach)
        free(cov); free(chosen); free(bestall); free(vals); free(ptr)
        free(mark); free(undo_u); free(undo_m); free(fresh)
    return result


cdef inline int _lowbit(int64_t x) noexcept:
    cdef int i = 0
    while not (x >> i & 1):
        i += 1
    return i
