"""Constructive superextension by configuration reduction.

Given an in-class plane graph (no cycles of length 4, 6 or 8) and a
precolored cycle of length at most 12, this module extends the
precoloring to the whole graph by repeatedly locating a reducible
configuration, recursing on a strictly smaller graph, and lifting the
recursive coloring back through the reduction.  Every lift is
re-certified (independence, forest, superextension) before the
recursion returns; a failed certificate aborts the branch with the
label of the lift case that produced it.

The recursion never needs a search: if no configuration is found on an
in-class instance, that is recorded as an anomaly and the exhaustive
oracle finishes the job so batch runs still terminate with an answer.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from . import oracle
from .coloring import (
    F,
    I,
    IFColoring,
    f_path_between,
    f_path_to_set,
    induces_forest,
    is_independent,
    is_superextension,
    restrict,
    valid_precolorings,
)
from .plane_graph import (
    CycleRef,
    Disconnects,
    NotOnCommonFace,
    CreatesMultiEdge,
    PlaneGraph,
    build,
    canonical_cycle,
    carve_outer,
    cycle_ref,
    dart_face_map,
    delete_vertices,
    girth,
    has_forbidden_cycles,
    identify,
    interior,
    is_separating,
    short_cycles,
    _face_sides,
)


class OutOfClass(Exception):
    """Input violates the graph-class or cycle-length contract."""


class ClassViolated(Exception):
    """A surgery produced a forbidden cycle or an outer-cycle chord;
    impossible on in-class inputs, so it indicates bad input or a bug."""


class LiftFailed(Exception):
    """A lift branch produced a coloring that fails a certificate.

    Carries the branch label so the broken case is identifiable.
    """

    def __init__(self, label, detail=""):
        super().__init__(f"lift branch {label!r} failed {detail}")
        self.label = label


class InnerPrecoloringInvalid(Exception):
    pass


class AnomalyError(Exception):
    """Raised only when the oracle fallback also finds no extension."""


# -- configurations -----------------------------------------------------


@dataclass(frozen=True)
class LowDegreeInternal:
    v: int
    kind = "LowDegreeInternal"


@dataclass(frozen=True)
class OuterChord:
    edge: tuple
    kind = "OuterChord"


@dataclass(frozen=True)
class SeparatingSmallCycle:
    cycle: CycleRef
    kind = "SeparatingSmallCycle"


@dataclass(frozen=True)
class CommonInternalNeighbor:
    w: int
    c_pair: tuple
    kind = "CommonInternalNeighbor"


@dataclass(frozen=True)
class BadInternal5Face:
    verts: tuple  # v1..v5 on the face
    outside: tuple  # u1..u5, third neighbour of each vi
    kind = "BadInternal5Face"


@dataclass(frozen=True)
class Tetrad:
    path: tuple  # v1, v2, v3, v4
    x: int
    y: int
    v1p: int
    v4p: int
    kind = "Tetrad"


@dataclass
class TraceStep:
    kind: str
    sigma_before: int
    sigma_after: int
    case: str


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)

    def add(self, kind, before, after, case):
        assert after < before, "reduction must shrink sigma"
        self.steps.append(TraceStep(kind, before, after, case))

    def anomaly(self, message):
        self.anomalies.append(message)

    def to_text(self) -> str:
        lines = [
            f"step {k} kind={s.kind} sigma={s.sigma_before}->{s.sigma_after} case={s.case}"
            for k, s in enumerate(self.steps)
        ]
        for a in self.anomalies:
            lines.append(f"anomaly {a}")
        return "\n".join(lines) + ("\n" if lines else "")


# -- configuration finders ----------------------------------------------


def _is_cut_vertex(g: PlaneGraph, v: int) -> bool:
    if g.n <= 2:
        return False
    start = 0 if v != 0 else 1
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y != v and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) != g.n - 1


def find_low_degree_internal(g: PlaneGraph, c0: CycleRef) -> Optional[LowDegreeInternal]:
    cset = c0.vertex_set()
    cand = [v for v in range(g.n) if v not in cset and g.degree(v) <= 2]
    if not cand:
        return None
    # prefer a vertex whose removal keeps the graph connected
    cand.sort(key=lambda v: (_is_cut_vertex(g, v), v))
    return LowDegreeInternal(cand[0])


def find_outer_chord(g: PlaneGraph, c0: CycleRef) -> Optional[OuterChord]:
    verts = c0.verts
    cset = set(verts)
    k = len(verts)
    next_of = {verts[i]: verts[(i + 1) % k] for i in range(k)}
    prev_of = {verts[i]: verts[(i - 1) % k] for i in range(k)}
    best = None
    for u in verts:
        for v in g.adj[u]:
            if v in cset and v not in (next_of[u], prev_of[u]):
                e = (u, v) if u < v else (v, u)
                if best is None or e < best:
                    best = e
    return OuterChord(best) if best else None


def find_separating_cycle(g: PlaneGraph, lmax: int = 12) -> Optional[SeparatingSmallCycle]:
    for c in short_cycles(g, lmax):  # sorted by (length, verts)
        if is_separating(g, c):
            return SeparatingSmallCycle(c)
    return None


def find_common_internal_neighbor(g, c0: CycleRef) -> Optional[CommonInternalNeighbor]:
    cset = c0.vertex_set()
    for w in range(g.n):
        if w in cset:
            continue
        on_c = sorted(x for x in g.adj[w] if x in cset)
        for i, a in enumerate(on_c):
            for b in on_c[i + 1 :]:
                if b not in g.adj[a]:
                    return CommonInternalNeighbor(w, (a, b))
    return None


def find_bad_5face(g: PlaneGraph, c0: CycleRef) -> Optional[BadInternal5Face]:
    cset = c0.vertex_set()
    for idx, f in enumerate(g.faces):
        if idx == g.outer_face_idx or f.degree != 5:
            continue
        vs = f.boundary
        if len(set(vs)) != 5 or set(vs) & cset:
            continue
        if any(g.degree(v) != 3 for v in vs):
            continue
        # canonical orientation of the face cycle
        vs = canonical_cycle(vs)
        fset = set(vs)
        outside = tuple(next(u for u in g.rot[v] if u not in fset) for v in vs)
        return BadInternal5Face(vs, outside)
    return None


def find_tetrad(g: PlaneGraph, c0: CycleRef) -> Optional[Tetrad]:
    cset = c0.vertex_set()

    def third(v, a, b):
        return next(u for u in g.adj[v] if u not in (a, b))

    for f in g.faces:
        b = f.boundary
        k = len(b)
        for start in range(k):
            for step in (1, -1):
                quad = tuple(b[(start + step * i) % k] for i in range(4))
                v1, v2, v3, v4 = quad
                if len(set(quad)) != 4:
                    continue
                if any(v in cset or g.degree(v) != 3 for v in quad):
                    continue
                t12 = sorted(g.adj[v1] & g.adj[v2])
                t34 = sorted(g.adj[v3] & g.adj[v4])
                if not t12 or not t34:
                    continue
                v1p, v4p = t12[0], t34[0]
                if v1p == v4p:
                    continue
                x = third(v1, v2, v1p)
                y = third(v4, v3, v4p)
                if {x, y, v1p, v4p} & set(quad):
                    continue  # degenerate shape, not the target pattern
                return Tetrad(quad, x, y, v1p, v4p)
    return None


def common_neighbor_cycle_bound() -> int:
    """Least possible total length of the three cycles closed by an
    internal vertex seeing the outer cycle three times, given that
    cycle lengths 4, 6 and 8 are excluded: the shortest cycle is 3 or
    5, forcing the others to 9+9 or 7+7."""
    return min(3 + 9 + 9, 5 + 7 + 7)


def find_configuration(g: PlaneGraph, c0: CycleRef):
    """First configuration in priority order, or None.

    The common-internal-neighbor pattern is only reported for outer
    cycles of length at most 12; for longer outer cycles it is not an
    anomaly (the三-cycle length bound needs |C0| <= 12), so reporting
    it would mask real configurations further down the order.
    """
    cfg = find_low_degree_internal(g, c0)
    if cfg:
        return cfg
    cfg = find_outer_chord(g, c0)
    if cfg:
        return cfg
    cfg = find_separating_cycle(g)
    if cfg:
        return cfg
    if len(c0) <= 12:
        cfg = find_common_internal_neighbor(g, c0)
        if cfg:
            return cfg
    cfg = find_bad_5face(g, c0)
    if cfg:
        return cfg
    return find_tetrad(g, c0)


# -- certification helpers ----------------------------------------------


def _certify(g, c0: CycleRef, phi: IFColoring, label: str, mode: str = "lenient") -> None:
    cert = is_independent(g, phi)
    if not cert:
        raise LiftFailed(label, f"(I-I edge {cert.edge})")
    cert = induces_forest(g, phi)
    if not cert:
        raise LiftFailed(label, f"(F-cycle {cert.cycle})")
    cert = is_superextension(g, c0, phi, mode)
    if not cert:
        raise LiftFailed(label, f"(outside F-path {cert.path})")


def _is_valid_total(g, c0, phi, mode) -> bool:
    return bool(
        is_independent(g, phi)
        and induces_forest(g, phi)
        and is_superextension(g, c0, phi, mode)
    )


def _map_coloring(phi: IFColoring, vmap: dict, n_new: int) -> IFColoring:
    out = IFColoring.unset(n_new)
    for old, new in vmap.items():
        if phi[old] is not None:
            out[new] = phi[old]
    return out


def _map_cycle(g_new: PlaneGraph, c: CycleRef, vmap: dict) -> CycleRef:
    return cycle_ref(g_new, [vmap[v] for v in c.verts])


def _opp(color: str) -> str:
    return F if color == I else I


# -- the recursion ------------------------------------------------------


class _Session:
    """One superextension run: owns the trace, mode and fallback.

    The recursion's invariant is the ``lenient`` no-outside-F-path
    property: that is the property the lift rules provably preserve
    (an offending path through a relocated vertex always picks up an I
    vertex, which only the endpoint-color-agnostic reading tolerates).
    The strict reading is not even attainable in general: an internal
    vertex adjacent to two cycle vertices, one precolored I, is forced
    to F and closes a strict violation no extension can avoid.
    """

    def __init__(self, trace: ReductionTrace, mode: str = "lenient"):
        self.trace = trace
        self.mode = mode

    # .. entry normalisation ..........................................

    def entry(self, g: PlaneGraph, c: CycleRef, phi: IFColoring) -> IFColoring:
        intr, ext = interior(g, c)
        if intr and ext:
            return self._split_both_sides(g, c, phi, intr, ext)
        if len(c) == g.n:
            phi = phi.copy()
            _certify(g, c, phi, "base/all-on-cycle", self.mode)
            return phi
        h = carve_outer(g, c)
        # vertex ids unchanged by carve_outer
        out = self._loop(h, cycle_ref(h, c.verts), phi.copy())
        _certify(g, c, out, "entry/carve", self.mode)
        return out

    def _split_both_sides(self, g, c, phi, intr, ext) -> IFColoring:
        sigma = g.sigma()
        g_out, m_out = delete_vertices(g, intr)
        self.trace.add("SeparatingSmallCycle", sigma, g_out.sigma(), "entry-split/outside")
        phi_a = self.entry(g_out, _map_cycle(g_out, c, m_out), _map_coloring(phi, m_out, g_out.n))
        inv_out = {new: old for old, new in m_out.items()}

        dart = self._ext_side_dart(g, c)
        g_in, m_in = delete_vertices(g, ext, outer_dart=dart)
        phi_b = self.entry(g_in, _map_cycle(g_in, c, m_in), _map_coloring(phi, m_in, g_in.n))
        inv_in = {new: old for old, new in m_in.items()}

        out = IFColoring.unset(g.n)
        for new, old in inv_out.items():
            out[old] = phi_a[new]
        for new, old in inv_in.items():
            out[old] = phi_b[new]
        _certify(g, c, out, "entry-split/union", self.mode)
        return out

    @staticmethod
    def _ext_side_dart(g, c):
        outside = _face_sides(g, c)
        dfmap = dart_face_map(g)
        u, v = c.verts[0], c.verts[1]
        return (u, v) if outside[dfmap[(u, v)]] else (v, u)

    # .. main loop over configurations ................................

    def _loop(self, g: PlaneGraph, c0: CycleRef, phi0: IFColoring) -> IFColoring:
        if len(c0) == g.n:
            phi = phi0.copy()
            _certify(g, c0, phi, "base/all-on-cycle", self.mode)
            return phi
        cfg = find_configuration(g, c0)
        try:
            if cfg is None:
                self.trace.anomaly(
                    f"no configuration on n={g.n} m={g.m} with internal vertices"
                )
                return self._fallback(g, c0, phi0)
            if isinstance(cfg, LowDegreeInternal):
                return self._reduce_low_degree(g, c0, phi0, cfg)
            if isinstance(cfg, OuterChord):
                return self._reduce_outer_chord(g, c0, phi0, cfg)
            if isinstance(cfg, SeparatingSmallCycle):
                return self._reduce_separating(g, c0, phi0, cfg.cycle)
            if isinstance(cfg, CommonInternalNeighbor):
                self.trace.anomaly(
                    f"common internal neighbour {cfg.w} of {cfg.c_pair} "
                    f"(impossible for in-class graphs with outer cycle <= 12)"
                )
                return self._fallback(g, c0, phi0)
            if isinstance(cfg, BadInternal5Face):
                return self._reduce_5face(g, c0, phi0, cfg)
            if isinstance(cfg, Tetrad):
                return self._reduce_tetrad(g, c0, phi0, cfg)
            raise AssertionError(f"unknown configuration {cfg!r}")
        except (ClassViolated, LiftFailed) as e:
            self.trace.anomaly(f"{type(e).__name__}: {e}")
            return self._fallback(g, c0, phi0)

    def _fallback(self, g, c0, phi0) -> IFColoring:
        req = oracle.SolveRequest(g, phi0, superextend_wrt=c0, mode=self.mode)
        phi = oracle.solve(req)
        if phi is None:
            raise AnomalyError(
                f"oracle found no superextension on n={g.n}, m={g.m}: "
                f"either the input is out of class or this is a bug"
            )
        return phi

    # .. individual reductions ........................................

    def _reduce_low_degree(self, g, c0, phi0, cfg) -> IFColoring:
        v = cfg.v
        sigma = g.sigma()
        try:
            h, vmap = delete_vertices(g, {v})
        except Disconnects:
            return self._reduce_low_degree_split(g, c0, phi0, cfg)
        self.trace.add("LowDegreeInternal", sigma, h.sigma(), "delete")
        sub = self._loop(h, _map_cycle(h, c0, vmap), _map_coloring(phi0, vmap, h.n))
        phi = IFColoring.unset(g.n)
        for old, new in vmap.items():
            phi[old] = sub[new]
        label = self._color_low_degree(g, phi, v)
        _certify(g, c0, phi, label, self.mode)
        return phi

    @staticmethod
    def _color_low_degree(g, phi, v) -> str:
        if any(phi[u] == I for u in g.adj[v]):
            phi[v] = F
            return "lowdeg/nbr-I"
        phi[v] = I
        return "lowdeg/all-F"

    def _reduce_low_degree_split(self, g, c0, phi0, cfg) -> IFColoring:
        # v is a degree-<=2 cut vertex.  Keep v with the component
        # holding the outer cycle (it hangs there by one edge and its
        # own rule recolors it at the end); partition each hanging
        # component independently.  A hanging component only meets the
        # rest of the graph at v, so its coloring cannot create an
        # outside path between outer-cycle vertices.
        v = cfg.v
        sigma = g.sigma()
        comps = _components_without(g, v)
        cset = c0.vertex_set()
        main = next(comp for comp in comps if comp & cset)
        h, vmap = _induced(g, sorted(main | {v}), outer_hint=[g.outer, c0.verts])
        self.trace.add("LowDegreeInternal", sigma, h.sigma(), "split/main")
        sub = self._loop(h, _map_cycle(h, c0, vmap), _map_coloring(phi0, vmap, h.n))
        phi = IFColoring.unset(g.n)
        for old, new in vmap.items():
            phi[old] = sub[new]
        for comp in comps:
            if comp is main:
                continue
            k, kmap = _induced(g, sorted(comp))
            iset, _fset = near_bipartite_partition(k, _trace=self.trace)
            for old, new in kmap.items():
                phi[old] = I if new in iset else F
        # recolor v by its own rule now that every neighbour is colored
        phi[v] = None
        self._color_low_degree(g, phi, v)
        _certify(g, c0, phi, "lowdeg/split-union", self.mode)
        return phi

    def _reduce_outer_chord(self, g, c0, phi0, cfg) -> IFColoring:
        a, b = cfg.edge
        verts = list(c0.verts)
        ia, ib = verts.index(a), verts.index(b)
        if ia > ib:
            ia, ib = ib, ia
        arc1 = verts[ia : ib + 1]
        arc2 = verts[ib:] + verts[: ia + 1]
        for arc in (arc1, arc2):
            cyc = cycle_ref(g, arc)
            intr, _ = interior(g, cyc)
            if intr:
                return self._reduce_separating(g, c0, phi0, cyc, kind="OuterChord")
        raise ClassViolated(
            "outer chord with internal vertices but both chord cycles empty"
        )

    def _reduce_separating(self, g, c0, phi0, c: CycleRef, kind="SeparatingSmallCycle"):
        sigma = g.sigma()
        intr, ext = interior(g, c)
        g_out, m_out = delete_vertices(g, intr)
        self.trace.add(kind, sigma, g_out.sigma(), "outside-first")
        sub_out = self._loop(g_out, _map_cycle(g_out, c0, m_out), _map_coloring(phi0, m_out, g_out.n))
        phi = IFColoring.unset(g.n)
        for old, new in m_out.items():
            phi[old] = sub_out[new]

        chi = restrict(phi, c.verts)
        if not (is_independent(g, chi) and induces_forest(g, chi)):
            raise InnerPrecoloringInvalid(
                f"restriction of outside coloring to {c.verts} is invalid"
            )
        dart = self._ext_side_dart(g, c)
        g_in, m_in = delete_vertices(g, ext, outer_dart=dart)
        g_in2 = carve_outer(g_in, _map_cycle(g_in, c, m_in))
        sub_in = self._loop(g_in2, _map_cycle(g_in2, c, m_in), _map_coloring(chi, m_in, g_in2.n))
        for old, new in m_in.items():
            if phi[old] is None:
                phi[old] = sub_in[new]
        _certify(g, c0, phi, f"{kind}/union", self.mode)
        return phi

    # .. 5-face reduction ..............................................

    def _reduce_5face(self, g, c0, phi0, cfg: BadInternal5Face) -> IFColoring:
        v1, v2, v3, v4, v5 = cfg.verts
        u1, u2, u3, u4, u5 = cfg.outside
        sigma = g.sigma()
        try:
            h1, m1 = delete_vertices(g, {v1, v2, v4, v5})
        except Disconnects as e:
            raise ClassViolated(f"5-face surgery disconnects: {e}") from e
        try:
            h2, m2 = identify(h1, m1[u1], m1[v3])
        except (NotOnCommonFace, CreatesMultiEdge) as e:
            raise ClassViolated(f"5-face identification failed: {e}") from e
        vmap = {w: m2[m1[w]] for w in m1}
        c0_new = _map_cycle(h2, c0, vmap)
        _check_reduced_class(h2, c0_new)
        self.trace.add("BadInternal5Face", sigma, h2.sigma(), "identify")
        sub = self._loop(h2, c0_new, _map_coloring(phi0, vmap, h2.n))

        phi = IFColoring.unset(g.n)
        for old, new in vmap.items():
            phi[old] = sub[new]
        label = self._lift_5face(g, c0, phi, cfg)
        _certify(g, c0, phi, label, self.mode)
        return phi

    def _lift_5face(self, g, c0, phi, cfg) -> str:
        v1, v2, v3, v4, v5 = cfg.verts
        u1, u2, u3, u4, u5 = cfg.outside
        cset = c0.vertex_set()
        c = phi[u1]  # color of the identified vertex
        if c == I:
            phi[v3] = I
            phi[v1] = phi[v2] = phi[v4] = F
            if phi[u5] == F:
                phi[v5] = I
                return "5face:ident-I/u5-F"
            phi[v5] = F
            if phi[u2] == F and phi[u4] == F:
                phi[v3] = F
                phi[v2] = I
                phi[v4] = I
                return "5face:ident-I/u5-I/recolor-v3"
            return "5face:ident-I/u5-I"

        # identified vertex colored F
        phi[v3] = F
        if f_path_between(g, phi, u1, v3):
            raise LiftFailed("5face:ident-F", "(unexpected F-path u1..v3)")
        if phi[u4] == I:
            phi[v1] = phi[v4] = F
            phi[v2] = _opp(phi[u2])
            phi[v5] = _opp(phi[u5])
            if phi[u2] == I and phi[u5] == I:
                phi[v1] = I
                return "5face:ident-F/u4-I/recolor-v1"
            return "5face:ident-F/u4-I"

        trial = phi.copy()
        trial[v1] = trial[v4] = I
        trial[v2] = trial[v5] = F
        if _is_valid_total(g, c0, trial, self.mode):
            for v in (v1, v2, v4, v5):
                phi[v] = trial[v]
            return "5face:ident-F/u4-F/direct"
        if phi[u5] == I:
            phi[v2] = phi[v4] = I
            phi[v1] = phi[v5] = F
            return "5face:ident-F/u4-F/u5-I"

        if not all(phi[u] == F for u in (u1, u2, u3, u4, u5)):
            raise LiftFailed("5face:all-F", "(direct coloring failed with a non-F u)")
        p1 = f_path_to_set(g, phi, u1, cset)
        p3 = f_path_to_set(g, phi, u3, cset)
        if p1 and p3:
            raise LiftFailed("5face:all-F", "(both u1 and u3 reach the outer cycle)")
        if not p3:
            if not f_path_between(g, phi, u2, u3):
                phi[v2] = phi[v3] = phi[v5] = F
                phi[v1] = phi[v4] = I
                return "5face:all-F/u3-side/no-u2u3-path"
            phi[v1] = phi[v2] = phi[v4] = F
            phi[v3] = phi[v5] = I
            return "5face:all-F/u3-side/u2u3-path"
        # mirrored orientation: u1 cannot reach the outer cycle
        if not f_path_between(g, phi, u2, u1):
            phi[v1] = phi[v2] = phi[v4] = F
            phi[v3] = phi[v5] = I
            return "5face:all-F/u1-side/no-u2u1-path"
        phi[v2] = phi[v3] = phi[v5] = F
        phi[v1] = phi[v4] = I
        return "5face:all-F/u1-side/u2u1-path"

    # .. tetrad reduction ..............................................

    def _reduce_tetrad(self, g, c0, phi0, cfg: Tetrad) -> IFColoring:
        v1, v2, v3, v4 = cfg.path
        sigma = g.sigma()
        cset = c0.vertex_set()
        if cfg.y in cset and cfg.v1p in cset:
            raise ClassViolated("tetrad identification would merge two outer vertices")
        try:
            h1, m1 = delete_vertices(g, {v1, v2, v3, v4})
        except Disconnects as e:
            raise ClassViolated(f"tetrad surgery disconnects: {e}") from e
        try:
            h2, m2 = identify(h1, m1[cfg.y], m1[cfg.v1p])
        except (NotOnCommonFace, CreatesMultiEdge) as e:
            raise ClassViolated(f"tetrad identification failed: {e}") from e
        vmap = {w: m2[m1[w]] for w in m1}
        c0_new = _map_cycle(h2, c0, vmap)
        _check_reduced_class(h2, c0_new)
        self.trace.add("Tetrad", sigma, h2.sigma(), "identify")
        sub = self._loop(h2, c0_new, _map_coloring(phi0, vmap, h2.n))

        phi = IFColoring.unset(g.n)
        for old, new in vmap.items():
            phi[old] = sub[new]
        label = self._lift_tetrad(g, c0, phi, cfg)
        _certify(g, c0, phi, label, self.mode)
        return phi

    def _lift_tetrad(self, g, c0, phi, cfg) -> str:
        v1, v2, v3, v4 = cfg.path
        x, y, v1p, v4p = cfg.x, cfg.y, cfg.v1p, cfg.v4p
        cset = c0.vertex_set()
        c = phi[y]  # color of the identified vertex (= phi[v1p])
        if c == I:
            phi[v1] = phi[v2] = phi[v4] = F
            phi[v3] = _opp(phi[v4p])
            return "tetrad:ident-I"

        if f_path_between(g, phi, v1p, y):
            raise LiftFailed("tetrad:ident-F", "(unexpected F-path v1p..y)")
        if phi[v4p] == I:
            if phi[x] == I:
                phi[v1] = phi[v3] = phi[v4] = F
                phi[v2] = I
                return "tetrad:ident-F/v4p-I/x-I"
            phi[v1] = I
            phi[v2] = phi[v3] = phi[v4] = F
            return "tetrad:ident-F/v4p-I/x-F"
        if phi[x] == I:
            phi[v2] = phi[v4] = I
            phi[v1] = phi[v3] = F
            return "tetrad:ident-F/v4p-F/x-I"

        # x, y, v1p, v4p all F
        has_a = f_path_to_set(g, phi, v1p, cset) is not None
        has_b = f_path_to_set(g, phi, y, cset) is not None
        has_d = f_path_between(g, phi, v1p, v4p) is not None
        has_e = f_path_between(g, phi, y, v4p) is not None
        if has_a and has_b:
            raise LiftFailed("tetrad:all-F", "(both v1p and y reach the outer cycle)")
        if has_d and has_e:
            raise LiftFailed("tetrad:all-F", "(v1p and y both reach v4p)")
        if not has_a and not has_d:
            phi[v1] = phi[v4] = I
            phi[v2] = phi[v3] = F
            return "tetrad:all-F/free-v1p"
        if not has_b and not has_e:
            phi[v1] = phi[v3] = I
            phi[v2] = phi[v4] = F
            return "tetrad:all-F/free-y"
        if not has_a and not has_e:
            phi[v1] = phi[v3] = I
            phi[v2] = phi[v4] = F
            return "tetrad:all-F/case1"
        if not has_b and not has_d:
            phi[v1] = phi[v4] = I
            phi[v2] = phi[v3] = F
            return "tetrad:all-F/case2"
        raise LiftFailed("tetrad:all-F", "(no case applies)")


def _check_reduced_class(h: PlaneGraph, c0_new: CycleRef) -> None:
    if has_forbidden_cycles(h):
        raise ClassViolated("reduction created a cycle of length 4, 6 or 8")
    if find_outer_chord(h, c0_new):
        raise ClassViolated("reduction created a chord of the outer cycle")


def _components_without(g: PlaneGraph, v: int) -> list:
    seen = {v}
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def _induced(g: PlaneGraph, verts: list, outer_hint=None):
    """Induced subgraph on ``verts``.  The outer face is traced from
    the first surviving dart of the first walk in ``outer_hint`` that
    has one, else from the least dart (deterministic either way)."""
    from .plane_graph import _trace_from_dart

    keep = sorted(verts)
    kset = set(keep)
    vmap = {old: new for new, old in enumerate(keep)}
    rot_lists = [[vmap[u] for u in g.rot[old] if u in kset] for old in keep]
    dart = None
    for walk in outer_hint or []:
        k = len(walk)
        for i in range(k):
            a, b = walk[i], walk[(i + 1) % k]
            if a in kset and b in kset and b in g.adj[a]:
                dart = (vmap[a], vmap[b])
                break
        if dart:
            break
    if dart is None and any(rot_lists):
        u0 = next(i for i, r in enumerate(rot_lists) if r)
        dart = (u0, rot_lists[u0][0])
    outer = _trace_from_dart(rot_lists, *dart) if dart else ((0,) if keep else ())
    return build(len(keep), rot_lists, outer), vmap


# -- public entry points -------------------------------------------------


def _check_precoloring(g, c0: CycleRef, phi0: IFColoring) -> None:
    assigned = set(phi0.assigned())
    if assigned != c0.vertex_set():
        raise ValueError(
            f"precoloring must cover exactly the cycle vertices {sorted(c0.verts)}"
        )
    if not (is_independent(g, phi0) and induces_forest(g, phi0)):
        raise ValueError("precoloring is not a valid IF-coloring of the cycle subgraph")


def superextend(g: PlaneGraph, c0: CycleRef, phi0: IFColoring, mode: str = "lenient"):
    """Extend ``phi0`` to all of ``g`` with no F-path leaving and
    re-entering the cycle.  Returns (coloring, trace).

    The default mode is lenient (offending paths need F-colored
    endpoints): that is the property the reduction rules preserve, and
    the strict variant is unattainable on instances where an internal
    vertex adjacent to two cycle vertices is forced to F by an I
    endpoint.  In strict mode each step is certified strictly and
    attainable instances still go through (possibly via the fallback).

    Raises OutOfClass for graphs with 4/6/8-cycles or cycles longer
    than 12; AnomalyError if no extension exists at all.
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    if has_forbidden_cycles(g):
        raise OutOfClass("graph contains a cycle of length 4, 6 or 8")
    c0 = cycle_ref(g, c0.verts)
    if len(c0) > 12:
        raise OutOfClass(f"cycle has length {len(c0)} > 12")
    _check_precoloring(g, c0, phi0)
    trace = ReductionTrace()
    session = _Session(trace, mode)
    phi = session.entry(g, c0, phi0)
    cert = is_superextension(g, c0, phi, mode)
    assert cert, f"final certificate failed: {cert}"
    return phi, trace


def near_bipartite_partition(g: PlaneGraph, with_trace: bool = False, _trace=None):
    """Split V into (independent set, forest set).

    Forests are all-F.  Otherwise a shortest cycle is precolored with
    the first valid precoloring and superextended; graphs of girth
    above 12 fall back to the exhaustive search and flag it.
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    if has_forbidden_cycles(g):
        raise OutOfClass("graph contains a cycle of length 4, 6 or 8")
    trace = _trace if _trace is not None else ReductionTrace()
    gi = girth(g)
    if gi is None:
        iset, fset = set(), set(range(g.n))
    elif gi <= 12:
        c = short_cycles(g, gi)[0]
        phi0 = valid_precolorings(g, c)[0]
        session = _Session(trace)
        phi = session.entry(g, c, phi0)
        iset = {v for v in range(g.n) if phi[v] == I}
        fset = {v for v in range(g.n) if phi[v] == F}
    else:
        trace.anomaly(f"girth {gi} > 12: partition found by exhaustive search")
        phi = oracle.solve(oracle.SolveRequest(g, IFColoring.unset(g.n)))
        if phi is None:
            raise AnomalyError("no near-bipartite partition exists (out-of-class input?)")
        iset = {v for v in range(g.n) if phi[v] == I}
        fset = {v for v in range(g.n) if phi[v] == F}
    if with_trace:
        return iset, fset, trace
    return iset, fset
