"""Pure-Python hot kernels.

Both kernels operate on integer-scaled gains (the caller rescales all
w(u)*p(u,s) terms to a common denominator) so arithmetic is exact and the
compiled twin in ``_core.pyx`` can mirror them with int64 math. Iteration
orders are fixed so the two implementations produce identical results:
states in sorted-key order, cache/type subsets in increasing bitmask order
with bit t corresponding to the t-th lexicographically sorted cache.
"""

from __future__ import annotations


def capdp(caps, sizes, gains, adj_masks):
    """Sparse capacity-vector dynamic program.

    caps: remaining capacity per cache (length C).
    sizes: size per content, in processing order (length S).
    gains: gains[i][u] = scaled hit-rate gain of content i for user u.
    adj_masks: per user, bitmask of adjacent caches.

    Returns (best_value, decisions, states_explored) where decisions[i]
    is the cache-subset bitmask content i was stored into, and
    states_explored counts distinct capacity vectors ever reached.
    """
    C = len(caps)
    S = len(sizes)
    U = len(adj_masks)
    strides = [1] * C
    for t in range(1, C):
        strides[t] = strides[t - 1] * (caps[t - 1] + 1)
    start = sum(caps[t] * strides[t] for t in range(C))
    table = {start: 0}
    seen = {start}
    back = []  # per stage: target key -> (source key, subset mask)

    for i in range(S):
        size = sizes[i]
        gi = gains[i]
        # Only caches adjacent to a positive-gain requester of content i can
        # raise the objective by storing it; restrict subsets to those.
        # Under strict-improvement updates a superfluous copy never won
        # anyway (its useful submask precedes it with equal gain).
        useful = 0
        for u in range(U):
            if gi[u]:
                useful |= adj_masks[u]
        if not useful:
            back.append({})
            continue
        bits = [t for t in range(C) if useful >> t & 1]
        k = len(bits)
        nmasks = 1 << k
        # Gain of storing content i into each useful-cache subset: each
        # user is credited once iff the subset meets its neighborhood.
        gmask = [0] * nmasks
        for u in range(U):
            g = gi[u]
            if g:
                am = 0
                for b, t in enumerate(bits):
                    if adj_masks[u] >> t & 1:
                        am |= 1 << b
                for m in range(1, nmasks):
                    if m & am:
                        gmask[m] += g
        new = dict(table)  # the empty subset: keep state, gain 0
        backi = {}
        for key in sorted(table):
            val = table[key]
            rem = [(key // strides[t]) % (caps[t] + 1) for t in range(C)]
            for m in range(1, nmasks):
                nk = key
                mm = m
                full = 0
                ok = True
                while mm:
                    b = (mm & -mm).bit_length() - 1
                    t = bits[b]
                    if rem[t] < size:
                        ok = False
                        break
                    nk -= size * strides[t]
                    full |= 1 << t
                    mm &= mm - 1
                if not ok:
                    continue
                nv = val + gmask[m]
                cur = new.get(nk)
                if cur is None or nv > cur:
                    new[nk] = nv
                    backi[nk] = (key, full)
        table = new
        seen.update(new)
        back.append(backi)

    best_key = start
    best = -1
    for key in sorted(table):
        v = table[key]
        if v > best:
            best = v
            best_key = key
    decisions = [0] * S
    key = best_key
    for i in range(S - 1, -1, -1):
        bp = back[i].get(key)
        if bp is not None:
            key, decisions[i] = bp
    return best, decisions, len(seen)


def brute_force(subsets, adj_masks, gains):
    """Exhaustive branch over per-cache content subsets, capacity-pruned.

    subsets: per cache, the feasible content bitmasks in lexicographic
    order of the underlying sorted content tuples (mask 0 first).
    adj_masks: per user, bitmask of adjacent caches.
    gains: gains[u][s] = scaled gain of content s for user u.

    Returns (best_value, allocation_masks, nodes) where allocation_masks
    is the chosen content bitmask per cache. Strict-improvement updates
    plus the fixed enumeration order make the witness the lexicographically
    smallest optimal allocation.
    """
    C = len(subsets)
    U = len(adj_masks)
    S = len(gains[0]) if U else 0

    # Users adjacent to each cache, and the contents reachable from the
    # remaining caches (for the optimistic pruning bound).
    cache_users = [[u for u in range(U) if adj_masks[u] >> c & 1] for c in range(C)]
    all_mask = [0] * C
    for c in range(C):
        for m in subsets[c]:
            all_mask[c] |= m
    # reach[d][u]: contents coverable for user u by caches d..C-1
    reach = [[0] * U for _ in range(C + 1)]
    for d in range(C - 1, -1, -1):
        for u in range(U):
            r = reach[d + 1][u]
            if adj_masks[u] >> d & 1:
                r |= all_mask[d]
            reach[d][u] = r

    def gain_of(u, mask):
        total = 0
        gu = gains[u]
        while mask:
            s = (mask & -mask).bit_length() - 1
            total += gu[s]
            mask &= mask - 1
        return total

    best = -1
    best_alloc = None
    nodes = 0
    covered = [0] * U
    chosen = [0] * C

    def rec(d, val):
        nonlocal best, best_alloc, nodes
        nodes += 1
        if d == C:
            if val > best:
                best = val
                best_alloc = tuple(chosen)
            return
        bound = val
        for u in range(U):
            extra = reach[d][u] & ~covered[u]
            if extra:
                bound += gain_of(u, extra)
        if bound <= best:
            return
        for m in subsets[d]:
            chosen[d] = m
            delta = 0
            undo = []
            if m:
                for u in cache_users[d]:
                    new = m & ~covered[u]
                    if new:
                        delta += gain_of(u, new)
                        covered[u] |= new
                        undo.append((u, new))
            rec(d + 1, val + delta)
            for u, new in undo:
                covered[u] ^= new

    rec(0, 0)
    return best, list(best_alloc or [0] * C), nodes
