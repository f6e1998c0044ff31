"""Hot numeric kernels.

Graphs enter as CSR arrays (``indptr``, ``indices``, both int64). Vertex
subsets for the exact solvers are int64 bitmasks, so those kernels accept at
most :data:`MAX_MASK_N` vertices.

Every kernel is written in the subset of Python that numba compiles, so the
same source doubles as the pure-Python fallback (see :mod:`localdom._jit`).
"""
import numpy as np

from ._jit import njit

MAX_MASK_N = 62


# ---------------------------------------------------------------------------
# traversal


@njit
def bfs_limited(indptr, indices, n, src, maxd):
    """Distances from ``src``; -1 beyond ``maxd`` (``maxd < 0``: unlimited)."""
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x]
        if maxd >= 0 and dx >= maxd:
            continue
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            if dist[y] < 0:
                dist[y] = dx + 1
                queue[tail] = y
                tail += 1
    return dist


@njit
def bfs_within(indptr, indices, n, src, alive):
    """Distances from ``src`` inside the subgraph induced by ``alive``."""
    dist = np.full(n, -1, dtype=np.int64)
    if not alive[src]:
        return dist
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            if alive[y] and dist[y] < 0:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1
    return dist


@njit
def label_components(indptr, indices, n, alive):
    """Component labels of the subgraph induced by ``alive``.

    Labels are numbered by increasing minimum vertex; dead vertices get -1.
    """
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    count = 0
    for s in range(n):
        if not alive[s] or labels[s] >= 0:
            continue
        labels[s] = count
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if alive[y] and labels[y] < 0:
                    labels[y] = count
                    queue[tail] = y
                    tail += 1
        count += 1
    return labels, count


# ---------------------------------------------------------------------------
# local cuts


@njit
def is_local_1_cut(indptr, indices, n, v, r):
    dist = bfs_limited(indptr, indices, n, v, r)
    alive = dist >= 0
    alive[v] = False
    _, count = label_components(indptr, indices, n, alive)
    return count >= 2


@njit
def local_1_cut_all(indptr, indices, n, r):
    out = np.zeros(n, dtype=np.bool_)
    for v in range(n):
        out[v] = is_local_1_cut(indptr, indices, n, v, r)
    return out


CUT_MINIMAL = 1
CUT_INTERESTING = 2


@njit
def scan_2cuts(indptr, indices, n, v, r, first_interesting_only):
    """Classify every partner ``u`` with ``0 < dist(u, v) <= r``.

    Returns parallel arrays ``(partners, flags)``. Bit 1 of a flag marks
    ``{u, v}`` as a minimal ``r``-local 2-cut (at least two components of the
    ball union minus the cut see both ``u`` and ``v``); bit 2 marks ``v`` as
    interesting through ``u``. Only minimal cuts are reported.
    """
    dv = bfs_limited(indptr, indices, n, v, r)
    partners = np.empty(n, dtype=np.int64)
    flags = np.empty(n, dtype=np.int64)
    found = 0
    in_nv = np.zeros(n, dtype=np.bool_)
    in_nv[v] = True
    for p in range(indptr[v], indptr[v + 1]):
        in_nv[indices[p]] = True
    for u in range(n):
        if u == v or dv[u] < 0:
            continue
        du = bfs_limited(indptr, indices, n, u, r)
        alive = (dv >= 0) | (du >= 0)
        alive[u] = False
        alive[v] = False
        labels, k = label_components(indptr, indices, n, alive)
        if k < 2:
            continue
        sees_u = np.zeros(k, dtype=np.bool_)
        sees_v = np.zeros(k, dtype=np.bool_)
        for p in range(indptr[u], indptr[u + 1]):
            w = indices[p]
            if labels[w] >= 0:
                sees_u[labels[w]] = True
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if labels[w] >= 0:
                sees_v[labels[w]] = True
        full = 0
        for c in range(k):
            if sees_u[c] and sees_v[c]:
                full += 1
        if full < 2:
            continue
        flag = CUT_MINIMAL
        in_nu = np.zeros(n, dtype=np.bool_)
        in_nu[u] = True
        for p in range(indptr[u], indptr[u + 1]):
            in_nu[indices[p]] = True
        private = False
        for w in range(n):
            if in_nv[w] and not in_nu[w]:
                private = True
                break
        if private:
            far = np.zeros(k, dtype=np.bool_)
            for w in range(n):
                if labels[w] >= 0 and not in_nu[w]:
                    far[labels[w]] = True
            nfar = 0
            for c in range(k):
                if far[c]:
                    nfar += 1
            if nfar >= 2:
                flag |= CUT_INTERESTING
        partners[found] = u
        flags[found] = flag
        found += 1
        if first_interesting_only and flag & CUT_INTERESTING:
            break
    return partners[:found], flags[:found]


# ---------------------------------------------------------------------------
# bitmask helpers


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def lowest_bit(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


# ---------------------------------------------------------------------------
# exact domination


@njit
def min_dom_size(closed, n, targets, allowed, budget):
    """Minimum number of ``allowed`` vertices whose closed neighbourhoods
    cover ``targets``; returns ``budget + 1`` when that exceeds ``budget``.

    Branch and bound: branch on the target with the fewest candidate
    dominators, excluding siblings already tried; bound by the larger of a
    coverage bound and a greedy packing of targets with disjoint candidate
    sets.
    """
    best = budget + 1
    cap = (n + 2) * (n + 2)
    s_und = np.empty(cap, dtype=np.int64)
    s_all = np.empty(cap, dtype=np.int64)
    s_cost = np.empty(cap, dtype=np.int64)
    cand_buf = np.empty(n, dtype=np.int64)
    cov_buf = np.empty(n, dtype=np.int64)
    sp = 0
    s_und[0] = targets
    s_all[0] = allowed
    s_cost[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        und = s_und[sp]
        alw = s_all[sp]
        cost = s_cost[sp]
        if und == 0:
            if cost < best:
                best = cost
            continue
        if cost + 1 >= best:
            continue
        pick = -1
        pick_cnt = n + 1
        x = und
        feasible = True
        while x:
            t = lowest_bit(x)
            x &= x - 1
            c = popcount(closed[t] & alw)
            if c == 0:
                feasible = False
                break
            if c < pick_cnt:
                pick_cnt = c
                pick = t
        if not feasible:
            continue
        maxcov = 0
        x = alw
        while x:
            c = lowest_bit(x)
            x &= x - 1
            cv = popcount(closed[c] & und)
            if cv > maxcov:
                maxcov = cv
        nund = popcount(und)
        lb = (nund + maxcov - 1) // maxcov
        used = 0
        lb2 = 0
        x = und
        while x:
            t = lowest_bit(x)
            x &= x - 1
            d = closed[t] & alw
            if d & used == 0:
                lb2 += 1
                used |= d
        if lb2 > lb:
            lb = lb2
        if cost + lb >= best:
            continue
        # candidates ordered by coverage, best first
        m = 0
        x = closed[pick] & alw
        while x:
            c = lowest_bit(x)
            x &= x - 1
            cv = popcount(closed[c] & und)
            j = m
            while j > 0 and cov_buf[j - 1] < cv:
                cov_buf[j] = cov_buf[j - 1]
                cand_buf[j] = cand_buf[j - 1]
                j -= 1
            cov_buf[j] = cv
            cand_buf[j] = c
            m += 1
        excl = 0
        # children pushed in reverse so the best candidate is popped first;
        # child i may not use candidates 0..i-1
        for i in range(m - 1, -1, -1):
            excl = 0
            for j in range(i + 1):
                excl |= np.int64(1) << cand_buf[j]
            c = cand_buf[i]
            s_und[sp] = und & ~closed[c]
            s_all[sp] = alw & ~excl
            s_cost[sp] = cost + 1
            sp += 1
    return best


@njit
def lexmin_dom(closed, n, targets, allowed, k):
    """Lexicographically smallest ``k``-subset of ``allowed`` covering
    ``targets`` (``k`` must be the optimum); 0 mask when none exists."""
    chosen = 0
    und = targets
    pool = allowed
    for pos in range(k):
        rem = k - pos - 1
        took = False
        x = pool
        while x:
            c = lowest_bit(x)
            x &= x - 1
            und2 = und & ~closed[c]
            above = allowed & ~((np.int64(1) << (c + 1)) - 1)
            if rem == 0:
                ok = und2 == 0
            elif und2 == 0:
                ok = True
            else:
                ok = min_dom_size(closed, n, und2, above, rem) <= rem
            if ok:
                chosen |= np.int64(1) << c
                und = und2
                pool = above
                took = True
                break
        if not took:
            return np.int64(0)
        if und == 0:
            break
    return chosen


# ---------------------------------------------------------------------------
# exact vertex cover


@njit
def min_vc_size(adj, n, alive, budget):
    """Minimum vertex cover of the subgraph induced by ``alive``; returns
    ``budget + 1`` when it exceeds ``budget``."""
    best = budget + 1
    cap = 2 * n + 4
    s_alive = np.empty(cap, dtype=np.int64)
    s_cost = np.empty(cap, dtype=np.int64)
    s_alive[0] = alive
    s_cost[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        al = s_alive[sp]
        cost = s_cost[sp]
        v = -1
        vdeg = 0
        x = al
        while x:
            w = lowest_bit(x)
            x &= x - 1
            d = popcount(adj[w] & al)
            if d > vdeg:
                vdeg = d
                v = w
        if vdeg == 0:
            if cost < best:
                best = cost
            continue
        if cost + 1 >= best:
            continue
        # greedy maximal matching is a lower bound
        matched = 0
        rest = al
        x = al
        while x:
            w = lowest_bit(x)
            x &= x - 1
            if not (rest >> w) & 1:
                continue
            nb = adj[w] & rest
            if nb:
                z = lowest_bit(nb)
                rest &= ~((np.int64(1) << w) | (np.int64(1) << z))
                matched += 1
        if cost + matched >= best:
            continue
        vbit = np.int64(1) << v
        nbv = adj[v] & al
        s_alive[sp] = al & ~vbit & ~nbv
        s_cost[sp] = cost + vdeg
        sp += 1
        s_alive[sp] = al & ~vbit
        s_cost[sp] = cost + 1
        sp += 1
    return best


@njit
def lexmin_vc(adj, n, alive, k):
    """Lexicographically smallest vertex cover of size ``k`` (the optimum)."""
    chosen = 0
    last = -1
    for pos in range(k):
        took = False
        x = alive & ~((np.int64(1) << (last + 1)) - 1)
        while x:
            c = lowest_bit(x)
            x &= x - 1
            pick = chosen | (np.int64(1) << c)
            below = alive & ((np.int64(1) << c) - 1)
            skipped = below & ~chosen
            ok = True
            forced = 0
            y = skipped
            while y:
                e = lowest_bit(y)
                y &= y - 1
                if adj[e] & skipped:
                    ok = False
                    break
                forced |= adj[e] & alive
            if not ok:
                # skipping more vertices only grows the conflict
                return np.int64(0)
            forced &= ~pick
            rest = alive & ~pick & ~skipped & ~forced
            used = popcount(pick) + popcount(forced)
            if used <= k:
                ok = used + min_vc_size(adj, n, rest, k - used) <= k
            else:
                ok = False
            if ok:
                chosen = pick
                last = c
                took = True
                break
        if not took:
            return np.int64(0)
    return chosen


# ---------------------------------------------------------------------------
# K_{2,t} minor search over adjacency masks


@njit
def mask_components(adj, alive, out):
    """Write the components of ``alive`` into ``out``; return their count."""
    k = 0
    while alive:
        comp = alive & -alive
        frontier = comp
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[lowest_bit(low)] & alive & ~comp
            comp |= nb
            frontier |= nb
        out[k] = comp
        k += 1
        alive &= ~comp
    return k


@njit
def mask_touch(adj, s):
    out = 0
    while s:
        low = s & -s
        s ^= low
        out |= adj[lowest_bit(low)]
    return out


@njit
def _full_rest(adj, comp, tmask, buf):
    k = mask_components(adj, comp, buf)
    for i in range(k):
        if mask_touch(adj, buf[i]) & tmask == tmask:
            return buf[i]
    return 0


@njit
def second_hub(adj, n, comp, tmask):
    """Disjoint connected ``P, Q`` inside ``comp`` each adjacent to all of
    ``tmask``; returns ``(P, Q)`` or ``(0, 0)``.

    Connected sets ``P`` are grown without repetition (each set from its
    lowest vertex, later siblings banned) and abandoned once ``P`` touches
    ``tmask`` or ``comp - P`` has no component touching it.
    """
    buf = np.zeros(n, dtype=np.int64)
    sp = np.zeros(n + 1, dtype=np.int64)
    se = np.zeros(n + 1, dtype=np.int64)
    sb = np.zeros(n + 1, dtype=np.int64)
    verts = comp
    while verts:
        root = verts & -verts
        verts ^= root
        ri = lowest_bit(root)
        if mask_touch(adj, root) & tmask == tmask:
            q = _full_rest(adj, comp & ~root, tmask, buf)
            if q:
                return root, q
            continue
        if not _full_rest(adj, comp & ~root, tmask, buf):
            continue
        top = 0
        sp[0] = root
        sb[0] = (root << 1) - 1
        se[0] = adj[ri] & comp & ~sb[0]
        while top >= 0:
            ext = se[top]
            if not ext:
                top -= 1
                continue
            w = ext & -ext
            ext ^= w
            se[top] = ext
            banned = sb[top]
            sb[top] = banned | w
            p = sp[top] | w
            q = _full_rest(adj, comp & ~p, tmask, buf)
            if not q:
                continue
            if mask_touch(adj, p) & tmask == tmask:
                return p, q
            top += 1
            sp[top] = p
            sb[top] = banned
            se[top] = (ext | adj[lowest_bit(w)]) & comp & ~banned & ~p
    return 0, 0


@njit
def k2t_search(adj, n, t, cands):
    """Spokes ``T`` (``t`` of ``cands``) and hubs ``P, Q``; ``(T, P, Q)``
    with ``T`` empty when no K_{2,t} minor exists."""
    full_mask = (1 << n) - 1
    buf = np.zeros(n, dtype=np.int64)
    chosen = np.zeros(t, dtype=np.int64)
    tm = np.zeros(t + 1, dtype=np.int64)
    nxt = np.zeros(t + 1, dtype=np.int64)
    nc = cands.shape[0]
    level = 0
    while level >= 0:
        if nxt[level] > nc - (t - level):
            level -= 1
            continue
        i = nxt[level]
        nxt[level] += 1
        v = cands[i]
        tmask = tm[level] | (1 << v)
        chosen[level] = v
        k = mask_components(adj, full_mask & ~tmask, buf)
        nfull = 0
        union = 0
        first = 0
        second = 0
        for c in range(k):
            if mask_touch(adj, buf[c]) & tmask == tmask:
                if nfull == 0:
                    first = buf[c]
                elif nfull == 1:
                    second = buf[c]
                nfull += 1
                union |= buf[c]
        if nfull == 0:
            continue
        ok = True
        for j in range(level + 1):
            if popcount(adj[chosen[j]] & union) < 2:
                ok = False
                break
        if not ok:
            continue
        if level + 1 == t:
            if nfull >= 2:
                return chosen.copy(), first, second
            p, q = second_hub(adj, n, first, tmask)
            if p:
                return chosen.copy(), p, q
            continue
        tm[level + 1] = tmask
        nxt[level + 1] = i + 1
        level += 1
    return np.zeros(0, dtype=np.int64), 0, 0
