"""Exhaustive ground truth by backtracking.

Finds, counts and verifies (super)extensions.  The search is
deterministic: free vertices are ordered by decreasing degree (ties by
id) and F is tried before I, so the first solution and all counts are
reproducible bit for bit.  An optional deterministic parallel mode
splits the subtree under the first free vertices across processes and
merges results in branch order, which leaves outputs unchanged.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import _search
from .coloring import (
    F,
    I,
    IFColoring,
    induces_forest,
    is_independent,
    is_superextension,
    valid_precolorings,
)
from .plane_graph import CycleRef, PlaneGraph

_CODE = {None: -1, I: 0, F: 1}
_COLOR = {-1: None, 0: I, 1: F}


@dataclass
class SolveRequest:
    graph: PlaneGraph
    fixed: IFColoring
    superextend_wrt: Optional[CycleRef] = None
    mode: str = "strict"

    def __post_init__(self):
        g = self.graph
        if len(self.fixed) != g.n:
            raise ValueError("fixed coloring has wrong length")
        if self.mode not in ("strict", "lenient"):
            raise ValueError(f"bad mode {self.mode!r}")
        if self.superextend_wrt is not None:
            missing = [
                v for v in self.superextend_wrt.verts if self.fixed[v] is None
            ]
            if missing:
                raise ValueError(
                    f"fixed must cover the cycle; missing {missing}"
                )
        _check_fixed_clean(g, self.fixed)


def _check_fixed_clean(g: PlaneGraph, fixed: IFColoring) -> None:
    cert = is_independent(g, fixed)
    if not cert:
        raise ValueError(f"fixed precoloring has I-I edge {cert.edge}")
    cert = induces_forest(g, fixed)
    if not cert:
        raise ValueError(f"fixed precoloring has F-cycle {cert.cycle}")


def _kernel_inputs(req: SolveRequest):
    g = req.graph
    color = [_CODE[req.fixed[v]] for v in range(g.n)]
    order = sorted(
        (v for v in range(g.n) if color[v] == -1),
        key=lambda v: (-g.degree(v), v),
    )
    se = req.superextend_wrt is not None
    on_c = [False] * g.n
    attach = [0] * g.n
    if se:
        cverts = req.superextend_wrt.verts
        pos = {v: i for i, v in enumerate(cverts)}
        for v in cverts:
            on_c[v] = True
        for v in range(g.n):
            if on_c[v]:
                continue
            mask = 0
            for w in g.adj[v]:
                if w in pos and (req.mode == "strict" or req.fixed[w] == F):
                    mask |= 1 << pos[w]
            attach[v] = mask
    adj = [sorted(g.adj[v]) for v in range(g.n)]
    return adj, color, order, se, on_c, attach


def _run(req: SolveRequest, count_mode: bool):
    adj, color, order, se, on_c, attach = _kernel_inputs(req)
    return _search.run_search(
        req.graph.n, adj, color, order, se, on_c, attach, count_mode
    )


def _split(req: SolveRequest, levels: int) -> list:
    """Sub-requests fixing the first free vertices, in branch order
    (F before I), identical to the sequential exploration order."""
    if levels == 0:
        return [req]
    adjless = sorted(
        (v for v in range(req.graph.n) if req.fixed[v] is None),
        key=lambda v: (-req.graph.degree(v), v),
    )
    if not adjless:
        return [req]
    v = adjless[0]
    subs = []
    for col in (F, I):
        fixed = req.fixed.copy()
        fixed[v] = col
        try:
            sub = SolveRequest(req.graph, fixed, req.superextend_wrt, req.mode)
        except ValueError:
            continue  # branch already violates a certificate: contributes nothing
        subs.extend(_split(sub, levels - 1))
    return subs


def _count_task(req: SolveRequest) -> int:
    return _run(req, count_mode=True)[0]


def _solve_task(req: SolveRequest):
    return _run(req, count_mode=False)[1]


def solve(req: SolveRequest, jobs: int = 1) -> Optional[IFColoring]:
    """First coloring (in deterministic search order) extending
    ``req.fixed`` and passing every requested certificate, or None."""
    if jobs > 1:
        levels = max(1, (jobs - 1).bit_length())
        subs = _split(req, levels)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_task, subs))
        raw = next((r for r in results if r is not None), None)
    else:
        raw = _run(req, count_mode=False)[1]
    if raw is None:
        return None
    phi = IFColoring([_COLOR[c] for c in raw])
    _self_check(req, phi)
    return phi


def count(req: SolveRequest, jobs: int = 1) -> int:
    """Exact number of total colorings satisfying the request."""
    if jobs > 1:
        levels = max(1, (jobs - 1).bit_length())
        subs = _split(req, levels)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(_count_task, subs))
    return _run(req, count_mode=True)[0]


def _self_check(req: SolveRequest, phi: IFColoring) -> None:
    g = req.graph
    assert is_independent(g, phi), "search produced an I-I edge"
    assert induces_forest(g, phi), "search produced an F-cycle"
    if req.superextend_wrt is not None:
        cert = is_superextension(g, req.superextend_wrt, phi, req.mode)
        assert cert, f"search violated superextension: {cert}"
    for v in range(g.n):
        if req.fixed[v] is not None:
            assert phi[v] == req.fixed[v], "search changed a fixed color"


def superextendable(g: PlaneGraph, c: CycleRef, mode: str = "strict"):
    """True iff every valid precoloring of C extends with the
    no-outside-F-path property.  Returns (ok, first failing
    precoloring or None)."""
    for pre in valid_precolorings(g, c):
        req = SolveRequest(g, pre, superextend_wrt=c, mode=mode)
        if solve(req) is None:
            return False, pre
    return True, None
