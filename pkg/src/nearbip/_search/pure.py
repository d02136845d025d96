"""Pure-Python backtracking kernel.

Mirrors the compiled kernel exactly: same search order (given by the
caller), colors tried F then I, incremental union-find over F-F edges
for forest pruning, and a second union-find over F vertices outside the
tracked cycle whose components carry a bitmask of attachment positions
on the cycle.  A component with two attachments is a completed
violating path, so it is pruned the moment it forms; at a leaf the
invariant is therefore exact.

Color encoding: -1 unset, 0 = I, 1 = F.
"""

from __future__ import annotations

UNSET, CI, CF = -1, 0, 1


def run_search(n, adj, color, order, se, on_c, attach, count_mode, node_budget=None):
    """Backtracking over ``order``; returns (count, first_solution).

    adj: list of neighbour lists.  color: preset array, mutated during
    the search, restored before returning.  se: enable the external
    F-component pruning.  on_c[v]: vertex lies on the tracked cycle.
    attach[v]: bitmask of counting cycle attachments of v.
    count_mode: exhaust the tree instead of stopping at the first leaf.
    """
    # forest DSU (no path compression: unions are rolled back)
    par = list(range(n))
    rank = [0] * n
    undo = []

    def find(x):
        while par[x] != x:
            x = par[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if rank[rx] < rank[ry]:
            rx, ry = ry, rx
        par[ry] = rx
        bump = rank[rx] == rank[ry]
        if bump:
            rank[rx] += 1
        undo.append((ry, rx, bump))
        return True

    def rollback(mark):
        while len(undo) > mark:
            ry, rx, bump = undo.pop()
            par[ry] = ry
            if bump:
                rank[rx] -= 1

    # external-F DSU with per-root attachment masks
    epar = list(range(n))
    erank = [0] * n
    eatt = list(attach)
    eundo = []

    def efind(x):
        while epar[x] != x:
            x = epar[x]
        return x

    def eunion(x, y):
        rx, ry = efind(x), efind(y)
        if rx == ry:
            return rx
        if erank[rx] < erank[ry]:
            rx, ry = ry, rx
        epar[ry] = rx
        bump = erank[rx] == erank[ry]
        if bump:
            erank[rx] += 1
        eundo.append((ry, rx, bump, eatt[rx]))
        eatt[rx] |= eatt[ry]
        return rx

    def erollback(mark):
        while len(eundo) > mark:
            ry, rx, bump, old = eundo.pop()
            epar[ry] = ry
            if bump:
                erank[rx] -= 1
            eatt[rx] = old

    def popcount_ge2(mask):
        return (mask & (mask - 1)) != 0

    def place_f(v):
        """Assign F to v; returns (ok, forest_mark, ext_mark)."""
        mark, emark = len(undo), len(eundo)
        for u in adj[v]:
            if color[u] == CF:
                if not union(v, u):
                    rollback(mark)
                    return False, mark, emark
        if se and not on_c[v]:
            # fresh component for v: reset its slot, then merge
            epar[v] = v
            erank[v] = 0
            eatt[v] = attach[v]
            root = v
            for u in adj[v]:
                if color[u] == CF and not on_c[u]:
                    root = eunion(root, u)
            if popcount_ge2(eatt[efind(v)]):
                erollback(emark)
                rollback(mark)
                return False, mark, emark
        color[v] = CF
        return True, mark, emark

    # seed the structures from preset colors
    preset = [v for v in range(n) if color[v] == CF]
    for v in preset:
        for u in adj[v]:
            if u < v and color[u] == CF:
                if not union(v, u):
                    return 0, None
    if se:
        for v in preset:
            if on_c[v]:
                continue
            for u in adj[v]:
                if u < v and color[u] == CF and not on_c[u]:
                    eunion(efind(v), u)
        for v in preset:
            if not on_c[v] and popcount_ge2(eatt[efind(v)]):
                return 0, None
    for v in range(n):
        if color[v] == CI:
            for u in adj[v]:
                if u < v and color[u] == CI:
                    return 0, None

    k = len(order)
    count = 0
    solution = None
    budget = [node_budget if node_budget is not None else -1]

    def rec(depth):
        nonlocal count, solution
        if budget[0] == 0:
            raise SearchBudgetExceeded()
        if budget[0] > 0:
            budget[0] -= 1
        if depth == k:
            count += 1
            if not count_mode and solution is None:
                solution = list(color)
            return not count_mode
        v = order[depth]
        # F first
        ok, mark, emark = place_f(v)
        if ok:
            done = rec(depth + 1)
            color[v] = UNSET
            erollback(emark)
            rollback(mark)
            if done:
                return True
        # then I
        if all(color[u] != CI for u in adj[v]):
            color[v] = CI
            done = rec(depth + 1)
            color[v] = UNSET
            if done:
                return True
        return False

    rec(0)
    return count, solution


class SearchBudgetExceeded(Exception):
    pass
