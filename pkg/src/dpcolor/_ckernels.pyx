# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels (H up to 64 vertices, cover search up to 24 edges).

Mirrors ``_purepy`` exactly; the selection happens in ``kernels``.
"""

from libc.stdint cimport uint64_t, uint32_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline bint _peel(const uint64_t* adj, const int* f, uint64_t mask) noexcept nogil:
    cdef uint64_t rem = mask, m, low
    cdef int x
    cdef bint progressed
    while rem:
        progressed = False
        m = rem
        while m:
            low = m & (~m + 1)
            x = __builtin_ctzll(m)
            m ^= low
            if __builtin_popcountll(adj[x] & rem) < f[x]:
                rem ^= low
                progressed = True
        if not progressed:
            return False
    return True


cdef int _load(object adj, object f, uint64_t* cadj, int* cf) except -1:
    cdef Py_ssize_t i, h = len(adj)
    for i in range(h):
        cadj[i] = <uint64_t>adj[i]
        cf[i] = <int>f[i]
    return 0


def strictly_degenerate(adj, f, mask):
    cdef uint64_t cadj[64]
    cdef int cf[64]
    _load(adj, f, cadj, cf)
    return bool(_peel(cadj, cf, <uint64_t>mask))


def find_transversal(fibers, adj, f):
    cdef uint64_t cadj[64]
    cdef int cf[64]
    _load(adj, f, cadj, cf)
    cdef int depth = len(fibers)
    if depth == 0:
        return []
    cdef int total = 0
    for fib in fibers:
        total += len(fib)
    cdef int* flat = <int*>malloc(sizeof(int) * (total + 1))
    cdef int* start = <int*>malloc(sizeof(int) * (depth + 1))
    cdef int* idx = <int*>malloc(sizeof(int) * depth)
    cdef int* choice = <int*>malloc(sizeof(int) * depth)
    cdef uint64_t* masks = <uint64_t*>malloc(sizeof(uint64_t) * (depth + 1))
    cdef int d, x, pos = 0
    cdef uint64_t m
    cdef bint ok = False
    try:
        for d in range(depth):
            start[d] = pos
            for x in fibers[d]:
                flat[pos] = x
                pos += 1
        start[depth] = pos
        masks[0] = 0
        idx[0] = 0
        d = 0
        with nogil:
            while d >= 0:
                if idx[d] < start[d + 1] - start[d]:
                    x = flat[start[d] + idx[d]]
                    idx[d] += 1
                    if cf[x] <= 0:
                        continue
                    m = masks[d] | ((<uint64_t>1) << x)
                    if _peel(cadj, cf, m):
                        choice[d] = x
                        masks[d + 1] = m
                        d += 1
                        if d == depth:
                            ok = True
                            break
                        idx[d] = 0
                else:
                    d -= 1
        if not ok:
            return None
        return [choice[d] for d in range(depth)]
    finally:
        free(flat)
        free(start)
        free(idx)
        free(choice)
        free(masks)


cdef struct Search:
    int n
    int k
    int m
    int N
    int nperm
    int start
    long long budget
    long long nodes
    int* eu
    int* ev
    int* perms        # nperm * k
    int* digits       # n * N
    unsigned char* table
    int* first_choices
    int nfirst
    int* assign
    int* ts           # (m + 1) * N survivor ids per level
    uint32_t* ms      # (m + 1) * N activated-edge masks per level
    int* counts       # k * k scratch
    int* order        # (m + 1) * nperm permutation order per level
    long long* score  # nperm scratch


cdef inline int _apply(Search* S, int level, int cnt, int e, int p) noexcept nogil:
    cdef int* src = S.ts + <long long>level * S.N
    cdef uint32_t* srcm = S.ms + <long long>level * S.N
    cdef int* dst = S.ts + <long long>(level + 1) * S.N
    cdef uint32_t* dstm = S.ms + <long long>(level + 1) * S.N
    cdef int* du = S.digits + <long long>S.eu[e] * S.N
    cdef int* dv = S.digits + <long long>S.ev[e] * S.N
    cdef int* perm = S.perms + p * S.k
    cdef uint32_t bit = (<uint32_t>1) << e
    cdef int i, T, out = 0
    cdef uint32_t M
    for i in range(cnt):
        T = src[i]
        M = srcm[i]
        if perm[du[T]] == dv[T]:
            M |= bit
            if not S.table[M]:
                continue
        dst[out] = T
        dstm[out] = M
        out += 1
    return out


cdef inline long long _edge_bound(Search* S, int* ts, int cnt, int e) noexcept nogil:
    cdef int k = S.k
    cdef int* du = S.digits + <long long>S.eu[e] * S.N
    cdef int* dv = S.digits + <long long>S.ev[e] * S.N
    cdef int i, j, T
    cdef long long rows = 0, cols = 0, best
    for i in range(k * k):
        S.counts[i] = 0
    for i in range(cnt):
        T = ts[i]
        S.counts[du[T] * k + dv[T]] += 1
    for i in range(k):
        best = 0
        for j in range(k):
            if S.counts[i * k + j] > best:
                best = S.counts[i * k + j]
        rows += best
    for j in range(k):
        best = 0
        for i in range(k):
            if S.counts[i * k + j] > best:
                best = S.counts[i * k + j]
        cols += best
    return rows if rows < cols else cols


cdef int _dfs(Search* S, int d, int cnt) noexcept nogil:
    S.nodes += 1
    if S.budget > 0 and S.nodes > S.budget:
        return 2
    cdef int e, i, j, p, r, tmp, nc, nchoices
    if cnt == 0:
        for e in range(d, S.m):
            S.assign[e] = 0
        return 1
    if d == S.m:
        return 0
    cdef int* ts = S.ts + <long long>d * S.N
    cdef long long bound = 0
    for e in range(d + 1, S.m):
        bound += _edge_bound(S, ts, cnt, e)
    # counts for the current edge last, so S.counts holds them for scoring
    bound += _edge_bound(S, ts, cnt, d)
    if bound < cnt:
        return 0
    cdef int* order = S.order + <long long>d * S.nperm
    if d == S.start and S.first_choices != NULL:
        nchoices = S.nfirst
        for i in range(nchoices):
            order[i] = S.first_choices[i]
    else:
        nchoices = S.nperm
        for i in range(nchoices):
            order[i] = i
    for i in range(nchoices):
        p = order[i]
        S.score[p] = 0
        for j in range(S.k):
            S.score[p] += S.counts[j * S.k + S.perms[p * S.k + j]]
    # stable insertion sort by descending score
    for i in range(1, nchoices):
        tmp = order[i]
        j = i - 1
        while j >= 0 and S.score[order[j]] < S.score[tmp]:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = tmp
    for i in range(nchoices):
        p = order[i]
        S.assign[d] = p
        nc = _apply(S, d, cnt, d, p)
        r = _dfs(S, d + 1, nc)
        if r:
            return r
    return 0


def dp_cover_search(int n, int k, edges, fixed, table, perms, first_choices, budget):
    cdef Search S
    cdef int m = len(edges)
    cdef int N = 1
    cdef int v, T, e, i, cnt, status, pw
    cdef const unsigned char[:] tview = table
    for v in range(n):
        N *= k
    S.n = n
    S.k = k
    S.m = m
    S.N = N
    S.nperm = len(perms)
    S.start = len(fixed)
    S.budget = budget or 0
    S.nodes = 0
    S.table = <unsigned char*>&tview[0]
    S.eu = <int*>malloc(sizeof(int) * (m + 1))
    S.ev = <int*>malloc(sizeof(int) * (m + 1))
    S.perms = <int*>malloc(sizeof(int) * S.nperm * k)
    S.digits = <int*>malloc(sizeof(int) * n * N)
    S.assign = <int*>malloc(sizeof(int) * (m + 1))
    S.ts = <int*>malloc(sizeof(int) * (m + 1) * N)
    S.ms = <uint32_t*>malloc(sizeof(uint32_t) * (m + 1) * N)
    S.counts = <int*>malloc(sizeof(int) * k * k)
    S.order = <int*>malloc(sizeof(int) * (m + 1) * S.nperm)
    S.score = <long long*>malloc(sizeof(long long) * S.nperm)
    S.first_choices = NULL
    S.nfirst = 0
    try:
        for e in range(m):
            S.eu[e] = edges[e][0]
            S.ev[e] = edges[e][1]
            S.assign[e] = 0
        for i in range(S.nperm):
            for v in range(k):
                S.perms[i * k + v] = perms[i][v]
        pw = 1
        for v in range(n):
            for T in range(N):
                S.digits[v * N + T] = (T // pw) % k
            pw *= k
        if first_choices is not None:
            S.nfirst = len(first_choices)
            S.first_choices = <int*>malloc(sizeof(int) * (S.nfirst + 1))
            for i in range(S.nfirst):
                S.first_choices[i] = first_choices[i]
        for T in range(N):
            S.ts[T] = T
            S.ms[T] = 0
        cnt = N
        # fixed edges shift the survivors down one level at a time
        for e in range(S.start):
            S.assign[e] = fixed[e]
            cnt = _apply(&S, e, cnt, e, fixed[e])
        with nogil:
            status = _dfs(&S, S.start, cnt)
        assignment = [S.assign[e] for e in range(m)] if status == 1 else None
        return status, assignment, S.nodes
    finally:
        free(S.eu)
        free(S.ev)
        free(S.perms)
        free(S.digits)
        free(S.assign)
        free(S.ts)
        free(S.ms)
        free(S.counts)
        free(S.order)
        free(S.score)
        if S.first_choices != NULL:
            free(S.first_choices)
