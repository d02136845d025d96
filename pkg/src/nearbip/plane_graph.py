"""Combinatorial plane graphs given by rotation systems.

A graph is stored as a rotation system: for every vertex, the cyclic
clockwise order of its neighbours.  Faces are traced with the fixed
convention that the successor of the dart (u -> v) is (v -> w) where w
immediately *precedes* u in rot[v]; with clockwise rotations this walks
every face counterclockwise.  A designated outer face boundary is part
of the graph value because almost every notion used downstream
(internal vertex, truly internal face, inside/outside of a cycle) is
relative to it.

Graphs are immutable after ``build``; all surgeries return new values
plus a vertex map from old ids to new ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class PlaneGraphError(Exception):
    """Base class for structured plane-graph errors."""


class NotSymmetric(PlaneGraphError):
    pass


class NotSimple(PlaneGraphError):
    pass


class NotConnected(PlaneGraphError):
    pass


class NotGenusZero(PlaneGraphError):
    pass


class OuterNotAFace(PlaneGraphError):
    pass


class NotACycle(PlaneGraphError):
    pass


class Disconnects(PlaneGraphError):
    pass


class NotOnCommonFace(PlaneGraphError):
    pass


class CreatesMultiEdge(PlaneGraphError):
    pass


@dataclass(frozen=True)
class Face:
    """One traced face: closed boundary walk and its degree.

    ``boundary`` lists the tail vertex of each dart on the walk, so its
    length equals the number of edge sides (a bridge contributes two
    sides to the same face).
    """

    boundary: tuple

    @property
    def degree(self) -> int:
        return len(self.boundary)

    def vertex_set(self) -> frozenset:
        return frozenset(self.boundary)

    def edges(self) -> list:
        b = self.boundary
        k = len(b)
        return [_norm_edge(b[i], b[(i + 1) % k]) for i in range(k)]


@dataclass(frozen=True)
class CycleRef:
    """A cycle given by its vertex sequence, in canonical form."""

    verts: tuple

    def __len__(self) -> int:
        return len(self.verts)

    def edges(self) -> list:
        v = self.verts
        k = len(v)
        return [_norm_edge(v[i], v[(i + 1) % k]) for i in range(k)]

    def vertex_set(self) -> frozenset:
        return frozenset(self.verts)


def _norm_edge(u: int, v: int) -> tuple:
    return (u, v) if u < v else (v, u)


def canonical_cycle(verts: Sequence[int]) -> tuple:
    """Lexicographically least rotation over both directions, starting
    at the least vertex id."""
    vs = list(verts)
    k = len(vs)
    best = None
    for seq in (vs, vs[::-1]):
        for s in range(k):
            rot = tuple(seq[(s + i) % k] for i in range(k))
            if best is None or rot < best:
                best = rot
    return best


def canonical_walk(walk: Sequence[int]) -> tuple:
    # Same normal form as canonical_cycle but usable on closed walks
    # with repeated vertices.
    return canonical_cycle(walk)


def cycle_ref(g: "PlaneGraph", verts: Sequence[int]) -> CycleRef:
    """Validate that ``verts`` is a cycle of ``g`` and canonicalise it."""
    vs = list(verts)
    if len(vs) < 3:
        raise NotACycle(f"cycle needs length >= 3, got {len(vs)}")
    if len(set(vs)) != len(vs):
        raise NotACycle(f"repeated vertex in cycle {vs}")
    for i, u in enumerate(vs):
        v = vs[(i + 1) % len(vs)]
        if v not in g.adj[u]:
            raise NotACycle(f"consecutive pair {u},{v} not adjacent")
    return CycleRef(canonical_cycle(vs))


class PlaneGraph:
    """Validated plane graph; treat instances as immutable."""

    __slots__ = ("n", "rot", "outer", "adj", "faces", "outer_face_idx")

    def __init__(self, n, rot, outer, adj, faces, outer_face_idx):
        self.n = n
        self.rot = rot
        self.outer = outer
        self.adj = adj
        self.faces = faces
        self.outer_face_idx = outer_face_idx

    # -- basic queries ------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def sigma(self) -> int:
        return self.n + self.m

    def edges(self) -> list:
        out = []
        for u in range(self.n):
            for v in self.rot[u]:
                if u < v:
                    out.append((u, v))
        return out

    def outer_cycle(self) -> CycleRef:
        """The outer face boundary as a CycleRef; error if it repeats
        vertices (reduction entry points require a cycle)."""
        return cycle_ref(self, self.outer)

    def internal_faces(self) -> list:
        return [f for i, f in enumerate(self.faces) if i != self.outer_face_idx]

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m}, outer={self.outer})"


# -- face tracing -----------------------------------------------------


def _trace_faces(rot) -> list:
    """Trace all faces of a rotation system.

    Successor of dart (u, v) is (v, w) with w the predecessor of u in
    rot[v].  Returns faces as tuples of dart-tail vertices.
    """
    n = len(rot)
    pos = [dict() for _ in range(n)]
    for v in range(n):
        for i, u in enumerate(rot[v]):
            pos[v][u] = i
    seen = set()
    faces = []
    for u0 in range(n):
        for v0 in rot[u0]:
            if (u0, v0) in seen:
                continue
            walk = []
            u, v = u0, v0
            while (u, v) not in seen:
                seen.add((u, v))
                walk.append(u)
                i = pos[v][u]
                w = rot[v][(i - 1) % len(rot[v])]
                u, v = v, w
            faces.append(tuple(walk))
    return faces


def build(n: int, rot: Sequence[Sequence[int]], outer: Sequence[int]) -> PlaneGraph:
    """Validate a rotation system plus outer walk into a PlaneGraph.

    Raises NotSymmetric / NotSimple / NotConnected / NotGenusZero /
    OuterNotAFace naming the violated invariant.
    """
    if n <= 0:
        raise NotSimple("graph needs at least one vertex")
    if len(rot) != n:
        raise NotSimple(f"rotation table has {len(rot)} rows, expected {n}")
    rot = tuple(tuple(r) for r in rot)
    for v, r in enumerate(rot):
        for u in r:
            if not (0 <= u < n):
                raise NotSimple(f"neighbour id {u} out of range at vertex {v}")
        if v in r:
            raise NotSimple(f"self-loop at vertex {v}")
        if len(set(r)) != len(r):
            raise NotSimple(f"repeated neighbour in rot[{v}]")
    for v, r in enumerate(rot):
        for u in r:
            if v not in rot[u]:
                raise NotSymmetric(f"edge {v}->{u} has no back entry")

    # connectivity
    if n > 1:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in rot[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            missing = next(v for v in range(n) if v not in seen)
            raise NotConnected(f"vertex {missing} unreachable from 0")

    faces_raw = _trace_faces(rot)
    m = sum(len(r) for r in rot) // 2
    if m > 0 and n - m + len(faces_raw) != 2:
        raise NotGenusZero(
            f"V-E+F = {n}-{m}+{len(faces_raw)} = {n - m + len(faces_raw)}, expected 2"
        )

    outer = tuple(outer)
    if m == 0:
        # single vertex: no faces to match; keep one empty sentinel face
        if n != 1 or outer not in ((), (0,)):
            raise OuterNotAFace("edgeless graph must be a single vertex")
        faces = (Face(boundary=(0,) if outer else ()),)
        return PlaneGraph(n, rot, outer, (frozenset(),), faces, 0)

    key = canonical_walk(outer) if outer else None
    outer_idx = None
    for i, w in enumerate(faces_raw):
        if len(w) == len(outer) and canonical_walk(w) == key:
            outer_idx = i
            break
    if outer_idx is None:
        raise OuterNotAFace(f"outer walk {outer} matches no traced face")

    adj = tuple(frozenset(r) for r in rot)
    faces = tuple(Face(boundary=w) for w in faces_raw)
    return PlaneGraph(n, rot, outer, adj, faces, outer_idx)


# -- cycle enumeration ------------------------------------------------


def short_cycles(g: PlaneGraph, lmax: int) -> list:
    """All distinct cycles of length <= lmax, canonical, sorted.

    Bounded DFS from each start vertex, only extending with larger ids
    so every cycle is found exactly from its least vertex.
    """
    if lmax < 3:
        return []
    found = set()
    adj = g.adj
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(v):
            if len(path) >= 3 and s in adj[v]:
                found.add(canonical_cycle(path))
            if len(path) == lmax:
                return
            for w in sorted(adj[v]):
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.remove(w)

        extend(s)
    return [CycleRef(c) for c in sorted(found, key=lambda c: (len(c), c))]


def girth(g: PlaneGraph, lmax: int = None) -> Optional[int]:
    """Shortest cycle length, or None for forests.  For plane graphs
    the girth never exceeds the largest face degree, so scanning up to
    that bound is exhaustive."""
    if g.m < g.n:  # connected with m = n-1 is a tree
        return None
    bound = lmax or max(f.degree for f in g.faces)
    for L in range(3, bound + 1):
        if short_cycles(g, L):
            return L
    return None


def has_forbidden_cycles(g: PlaneGraph) -> bool:
    """True iff some cycle has length 4, 6, or 8."""
    return any(len(c) in (4, 6, 8) for c in short_cycles(g, 8))


# -- inside / outside of a cycle --------------------------------------


def _face_sides(g: PlaneGraph, c: CycleRef) -> list:
    """For each face: True if it lies outside ``c`` (dual-reachable from
    the outer face without crossing an edge of c)."""
    cedges = set(c.edges())
    edge_faces = {}
    for i, f in enumerate(g.faces):
        for e in f.edges():
            edge_faces.setdefault(e, []).append(i)
    outside = [False] * len(g.faces)
    outside[g.outer_face_idx] = True
    stack = [g.outer_face_idx]
    while stack:
        fi = stack.pop()
        for e in g.faces[fi].edges():
            if e in cedges:
                continue
            for fj in edge_faces[e]:
                if not outside[fj]:
                    outside[fj] = True
                    stack.append(fj)
    return outside


def interior(g: PlaneGraph, c: CycleRef) -> tuple:
    """Partition V minus C into (inside, outside) vertex sets."""
    c = cycle_ref(g, c.verts)  # re-validate against g
    outside_face = _face_sides(g, c)
    cset = c.vertex_set()
    ext = set()
    for i, f in enumerate(g.faces):
        if outside_face[i]:
            ext.update(f.boundary)
    ext -= cset
    intr = set(range(g.n)) - cset - ext
    return intr, ext


def is_separating(g: PlaneGraph, c: CycleRef) -> bool:
    intr, ext = interior(g, c)
    return bool(intr) and bool(ext)


# -- surgeries ---------------------------------------------------------


def _rebuild(rot_lists, outer) -> PlaneGraph:
    return build(len(rot_lists), rot_lists, outer)


def _first_surviving_outer_dart(g: PlaneGraph, removed: set):
    walk = g.faces[g.outer_face_idx].boundary
    k = len(walk)
    for i in range(k):
        u, v = walk[i], walk[(i + 1) % k]
        if u not in removed and v not in removed:
            return (u, v)
    return None


def _trace_from_dart(rot_lists, u, v) -> tuple:
    pos = [dict() for _ in rot_lists]
    for x, r in enumerate(rot_lists):
        for i, y in enumerate(r):
            pos[x][y] = i
    walk = []
    a, b = u, v
    while True:
        walk.append(a)
        i = pos[b][a]
        c = rot_lists[b][(i - 1) % len(rot_lists[b])]
        a, b = b, c
        if (a, b) == (u, v):
            break
    return tuple(walk)


def delete_vertices(
    g: PlaneGraph,
    s: Iterable[int],
    new_outer: Sequence[int] = None,
    outer_dart: tuple = None,
):
    """Induced subgraph on V minus S.  Returns (graph, vmap).

    The caller must keep the graph connected (Disconnects otherwise).
    The new outer face is, in order of preference: the walk traced from
    ``outer_dart`` (old vertex ids), the given ``new_outer`` walk, the
    old walk when untouched, else the face containing the first
    surviving dart of the old outer walk.
    """
    s = set(s)
    keep = [v for v in range(g.n) if v not in s]
    if not keep:
        raise Disconnects("cannot delete every vertex")
    vmap = {old: new for new, old in enumerate(keep)}
    rot_lists = [
        [vmap[u] for u in g.rot[old] if u not in s] for old in keep
    ]
    # connectivity check before face machinery for a cleaner error
    nn = len(keep)
    if nn > 1:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in rot_lists[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nn:
            raise Disconnects(f"deleting {sorted(s)} disconnects the graph")

    if outer_dart is not None:
        outer = _trace_from_dart(rot_lists, vmap[outer_dart[0]], vmap[outer_dart[1]])
    elif new_outer is not None:
        outer = tuple(vmap[v] for v in new_outer)
    elif not (s & set(g.outer)):
        outer = tuple(vmap[v] for v in g.outer)
    else:
        dart = _first_surviving_outer_dart(g, s)
        if dart is None:
            raise Disconnects("outer face entirely deleted; pass new_outer")
        outer = _trace_from_dart(rot_lists, vmap[dart[0]], vmap[dart[1]])
    return _rebuild(rot_lists, outer), vmap


def _corner_after(walk, target):
    """Index i such that walk[i] == target; returns predecessor and
    successor of target on the walk for its first corner."""
    k = len(walk)
    for i in range(k):
        if walk[i] == target:
            return walk[(i - 1) % k], walk[(i + 1) % k]
    return None


def identify(g: PlaneGraph, a: int, b: int):
    """Merge non-adjacent a and b sharing a face.  Returns (graph, vmap);
    both a and b map to the id inheriting a's position.

    The merged rotation splices rot[b] into rot[a] at the corners the
    shared face makes at each vertex, which keeps the embedding planar.
    """
    if a == b:
        raise NotOnCommonFace("cannot identify a vertex with itself")
    if b in g.adj[a]:
        raise NotOnCommonFace(f"{a} and {b} are adjacent")
    common = g.adj[a] & g.adj[b]
    if common:
        raise CreatesMultiEdge(f"common neighbours {sorted(common)}")

    shared = None
    for f in g.faces:
        bs = f.boundary
        if a in bs and b in bs:
            shared = f
            break
    if shared is None:
        raise NotOnCommonFace(f"{a} and {b} share no face")

    pa = _corner_after(shared.boundary, a)
    pb = _corner_after(shared.boundary, b)
    # the face's corner at a sits between neighbours succ and pred in
    # rot[a]; rotate rot[a] to start just after the corner
    xa, ya = pa  # walk: xa, a, ya
    xb, yb = pb

    rot_a = list(g.rot[a])
    rot_b = list(g.rot[b])
    ia = rot_a.index(xa)
    ib = rot_b.index(xb)
    spliced = rot_a[ia:] + rot_a[:ia] + rot_b[ib:] + rot_b[:ib]

    keep = [v for v in range(g.n) if v != b]
    vmap = {old: new for new, old in enumerate(keep)}
    vmap[b] = vmap[a]
    rot_lists = []
    for old in keep:
        if old == a:
            rot_lists.append([vmap[u] for u in spliced])
        else:
            rot_lists.append([vmap[u] for u in g.rot[old]])
    outer = tuple(vmap[v] for v in g.outer)
    try:
        return _rebuild(rot_lists, outer), vmap
    except OuterNotAFace:
        # the splice happened on the outer face, which split; keep the
        # piece holding the first surviving dart of the old walk
        k = len(outer)
        for i in range(k):
            u, v = outer[i], outer[(i + 1) % k]
            if v in rot_lists[u]:
                walk = _trace_from_dart(rot_lists, u, v)
                return _rebuild(rot_lists, walk), vmap
        raise


def with_outer(g: PlaneGraph, walk: Sequence[int]) -> PlaneGraph:
    """Re-designate the outer face.  The rotation system is unchanged;
    the walk must match some traced face."""
    return build(g.n, g.rot, tuple(walk))


def dart_face_map(g: PlaneGraph) -> dict:
    """Map every dart (u, v) to the index of the face it borders."""
    out = {}
    for i, f in enumerate(g.faces):
        b = f.boundary
        k = len(b)
        for j in range(k):
            out[(b[j], b[(j + 1) % k])] = i
    return out


def carve_outer(g: PlaneGraph, c: CycleRef) -> PlaneGraph:
    """Make cycle ``c`` the outer face boundary.

    Requires one side of c to be vertex-free.  Chords of c drawn on
    that side are deleted (they cannot lie on any path that leaves the
    cycle, so nothing downstream depends on them), after which the
    vertex-free side is a single face bounded exactly by c.  Vertex ids
    are unchanged.
    """
    intr, ext = interior(g, c)
    if intr and ext:
        raise NotACycle(f"cycle {c.verts} has vertices on both sides")
    want_outside = not ext  # empty side flag in _face_sides terms
    outside = _face_sides(g, c)
    cset = c.vertex_set()
    cedges = set(c.edges())
    dfmap = dart_face_map(g)
    chords = set()
    for u in c.verts:
        for v in g.adj[u]:
            if u < v and v in cset and (u, v) not in cedges:
                if outside[dfmap[(u, v)]] == want_outside:
                    chords.add((u, v))
    rot_lists = [
        [w for w in g.rot[v] if _norm_edge(v, w) not in chords]
        for v in range(g.n)
    ]
    # dart of a c-edge facing the empty side, in the chord-free rotation
    u, v = c.verts[0], c.verts[1]
    dart = (u, v) if outside[dfmap[(u, v)]] == want_outside else (v, u)
    walk = _trace_from_dart(rot_lists, *dart)
    return _rebuild(rot_lists, walk)


# -- text format --------------------------------------------------------

MAGIC = "pg 1"


def to_text(g: PlaneGraph) -> str:
    """Canonical text form: rotations rotated to start at the least
    neighbour, outer walk in canonical rotation."""
    lines = [MAGIC, str(g.n)]
    for v in range(g.n):
        r = list(g.rot[v])
        if r:
            i = r.index(min(r))
            r = r[i:] + r[:i]
        lines.append(" ".join([str(len(r))] + [str(u) for u in r]))
    ow = canonical_walk(g.outer) if g.outer else ()
    lines.append(" ".join(["outer", str(len(ow))] + [str(v) for v in ow]))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> PlaneGraph:
    toks = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            toks.extend(line.split())
    if toks[:2] != ["pg", "1"]:
        raise PlaneGraphError(f"bad magic {toks[:2]!r}, expected 'pg 1'")
    it = iter(toks[2:])

    def nxt():
        try:
            return next(it)
        except StopIteration:
            raise PlaneGraphError("truncated graph file") from None

    n = int(nxt())
    rot = []
    for _ in range(n):
        d = int(nxt())
        rot.append([int(nxt()) for _ in range(d)])
    if nxt() != "outer":
        raise PlaneGraphError("missing outer line")
    k = int(nxt())
    outer = [int(nxt()) for _ in range(k)]
    return build(n, rot, outer)


def write_file(g: PlaneGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(g))


def read_file(path) -> PlaneGraph:
    with open(path) as fh:
        return from_text(fh.read())
