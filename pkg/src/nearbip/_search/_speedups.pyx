# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure backtracking kernel.

Same semantics, same visit order, same results; only faster.  Any
divergence from nearbip._search.pure is a bug (the test suite runs
both on identical inputs).
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy


cdef struct State:
    int n
    int k
    int* adj_off
    int* adj
    signed char* color
    int* order
    bint se
    signed char* on_c
    unsigned long long* attach
    # forest union-find with rollback
    int* par
    int* rank
    int* u_child
    int* u_parent
    signed char* u_bump
    int u_top
    # external-F union-find with attachment masks
    int* epar
    int* erank
    unsigned long long* eatt
    int* eu_child
    int* eu_parent
    signed char* eu_bump
    unsigned long long* eu_old
    int eu_top
    bint count_mode
    unsigned long long count
    signed char* solution
    bint found


cdef inline int find(State* s, int x) nogil:
    while s.par[x] != x:
        x = s.par[x]
    return x


cdef inline bint union_(State* s, int x, int y) nogil:
    cdef int rx = find(s, x)
    cdef int ry = find(s, y)
    cdef int t
    if rx == ry:
        return 0
    if s.rank[rx] < s.rank[ry]:
        t = rx
        rx = ry
        ry = t
    s.par[ry] = rx
    cdef signed char bump = 1 if s.rank[rx] == s.rank[ry] else 0
    if bump:
        s.rank[rx] += 1
    s.u_child[s.u_top] = ry
    s.u_parent[s.u_top] = rx
    s.u_bump[s.u_top] = bump
    s.u_top += 1
    return 1


cdef inline void rollback(State* s, int mark) nogil:
    cdef int ry, rx
    while s.u_top > mark:
        s.u_top -= 1
        ry = s.u_child[s.u_top]
        rx = s.u_parent[s.u_top]
        s.par[ry] = ry
        if s.u_bump[s.u_top]:
            s.rank[rx] -= 1


cdef inline int efind(State* s, int x) nogil:
    while s.epar[x] != x:
        x = s.epar[x]
    return x


cdef inline int eunion(State* s, int x, int y) nogil:
    cdef int rx = efind(s, x)
    cdef int ry = efind(s, y)
    cdef int t
    if rx == ry:
        return rx
    if s.erank[rx] < s.erank[ry]:
        t = rx
        rx = ry
        ry = t
    s.epar[ry] = rx
    cdef signed char bump = 1 if s.erank[rx] == s.erank[ry] else 0
    if bump:
        s.erank[rx] += 1
    s.eu_child[s.eu_top] = ry
    s.eu_parent[s.eu_top] = rx
    s.eu_bump[s.eu_top] = bump
    s.eu_old[s.eu_top] = s.eatt[rx]
    s.eu_top += 1
    s.eatt[rx] |= s.eatt[ry]
    return rx


cdef inline void erollback(State* s, int mark) nogil:
    cdef int ry, rx
    while s.eu_top > mark:
        s.eu_top -= 1
        ry = s.eu_child[s.eu_top]
        rx = s.eu_parent[s.eu_top]
        s.epar[ry] = ry
        if s.eu_bump[s.eu_top]:
            s.erank[rx] -= 1
        s.eatt[rx] = s.eu_old[s.eu_top]


cdef inline bint two_bits(unsigned long long m) nogil:
    return (m & (m - 1)) != 0


cdef bint place_f(State* s, int v, int* mark, int* emark) nogil:
    cdef int i, u, root
    mark[0] = s.u_top
    emark[0] = s.eu_top
    for i in range(s.adj_off[v], s.adj_off[v + 1]):
        u = s.adj[i]
        if s.color[u] == 1:
            if not union_(s, v, u):
                rollback(s, mark[0])
                return 0
    if s.se and not s.on_c[v]:
        s.epar[v] = v
        s.erank[v] = 0
        s.eatt[v] = s.attach[v]
        root = v
        for i in range(s.adj_off[v], s.adj_off[v + 1]):
            u = s.adj[i]
            if s.color[u] == 1 and not s.on_c[u]:
                root = eunion(s, root, u)
        if two_bits(s.eatt[efind(s, v)]):
            erollback(s, emark[0])
            rollback(s, mark[0])
            return 0
    s.color[v] = 1
    return 1


cdef bint rec(State* s, int depth):
    cdef int v, mark, emark, i, u
    cdef bint ok, done
    if depth == s.k:
        s.count += 1
        if not s.count_mode and not s.found:
            memcpy(s.solution, s.color, s.n)
            s.found = 1
        return not s.count_mode
    v = s.order[depth]
    if place_f(s, v, &mark, &emark):
        done = rec(s, depth + 1)
        s.color[v] = -1
        erollback(s, emark)
        rollback(s, mark)
        if done:
            return 1
    ok = 1
    for i in range(s.adj_off[v], s.adj_off[v + 1]):
        if s.color[s.adj[i]] == 0:
            ok = 0
            break
    if ok:
        s.color[v] = 0
        done = rec(s, depth + 1)
        s.color[v] = -1
        if done:
            return 1
    return 0


def run_search(n, adj, color, order, se, on_c, attach, count_mode):
    cdef State s
    cdef int m2 = 0
    cdef int i, j, v, u
    for v in range(n):
        m2 += len(adj[v])
    cdef int cap = 2 * m2 + n + 16

    s.n = n
    s.k = len(order)
    s.se = 1 if se else 0
    s.count_mode = 1 if count_mode else 0
    s.count = 0
    s.found = 0
    s.u_top = 0
    s.eu_top = 0

    s.adj_off = <int*> calloc(n + 1, sizeof(int))
    s.adj = <int*> calloc(m2 + 1, sizeof(int))
    s.color = <signed char*> calloc(n + 1, 1)
    s.order = <int*> calloc(s.k + 1, sizeof(int))
    s.on_c = <signed char*> calloc(n + 1, 1)
    s.attach = <unsigned long long*> calloc(n + 1, sizeof(unsigned long long))
    s.par = <int*> calloc(n + 1, sizeof(int))
    s.rank = <int*> calloc(n + 1, sizeof(int))
    s.u_child = <int*> calloc(cap, sizeof(int))
    s.u_parent = <int*> calloc(cap, sizeof(int))
    s.u_bump = <signed char*> calloc(cap, 1)
    s.epar = <int*> calloc(n + 1, sizeof(int))
    s.erank = <int*> calloc(n + 1, sizeof(int))
    s.eatt = <unsigned long long*> calloc(n + 1, sizeof(unsigned long long))
    s.eu_child = <int*> calloc(cap, sizeof(int))
    s.eu_parent = <int*> calloc(cap, sizeof(int))
    s.eu_bump = <signed char*> calloc(cap, 1)
    s.eu_old = <unsigned long long*> calloc(cap, sizeof(unsigned long long))
    s.solution = <signed char*> calloc(n + 1, 1)

    try:
        j = 0
        for v in range(n):
            s.adj_off[v] = j
            for u in adj[v]:
                s.adj[j] = u
                j += 1
        s.adj_off[n] = j
        for v in range(n):
            s.color[v] = color[v]
            s.on_c[v] = 1 if on_c[v] else 0
            s.attach[v] = attach[v]
            s.par[v] = v
            s.epar[v] = v
            s.eatt[v] = attach[v]
        for i in range(s.k):
            s.order[i] = order[i]

        # seed from preset colors, mirroring the pure kernel
        for v in range(n):
            if s.color[v] != 1:
                continue
            for i in range(s.adj_off[v], s.adj_off[v + 1]):
                u = s.adj[i]
                if u < v and s.color[u] == 1:
                    if not union_(&s, v, u):
                        return 0, None
        if s.se:
            for v in range(n):
                if s.color[v] != 1 or s.on_c[v]:
                    continue
                for i in range(s.adj_off[v], s.adj_off[v + 1]):
                    u = s.adj[i]
                    if u < v and s.color[u] == 1 and not s.on_c[u]:
                        eunion(&s, efind(&s, v), u)
            for v in range(n):
                if s.color[v] == 1 and not s.on_c[v]:
                    if two_bits(s.eatt[efind(&s, v)]):
                        return 0, None
        for v in range(n):
            if s.color[v] != 0:
                continue
            for i in range(s.adj_off[v], s.adj_off[v + 1]):
                u = s.adj[i]
                if u < v and s.color[u] == 0:
                    return 0, None

        rec(&s, 0)
        sol = None
        if s.found:
            sol = [s.solution[v] for v in range(n)]
        return s.count, sol
    finally:
        free(s.adj_off); free(s.adj); free(s.color); free(s.order)
        free(s.on_c); free(s.attach); free(s.par); free(s.rank)
        free(s.u_child); free(s.u_parent); free(s.u_bump)
        free(s.epar); free(s.erank); free(s.eatt)
        free(s.eu_child); free(s.eu_parent); free(s.eu_bump); free(s.eu_old)
        free(s.solution)
