"""Exact charge bookkeeping over vertices and faces.

Charges live on vertices, internal faces and the outer boundary, are
denominated in integer thirds (no floating point anywhere), start at
3*(degree - 4) per vertex and internal face and 3*|outer| + 12 on the
outer boundary, and always sum to zero by Euler's formula.  Four local
transfer rules move charge around; afterwards every internal face of
degree at least five forwards its nonnegative remainder to the outer
boundary.  On graphs free of reducible configurations the final
charges would all be nonnegative with the outer charge positive, which
is impossible at total zero; the audit makes that contradiction
checkable instance by instance.

Element keys: ("v", i) for vertices, ("f", j) for internal faces
(j indexes g.faces), ("C0",) for the outer boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .plane_graph import PlaneGraph, cycle_ref, has_forbidden_cycles, NotACycle

OUTER = ("C0",)


class OutOfClass(Exception):
    pass


@dataclass
class Classification:
    on_outer: frozenset  # vertices on the outer walk
    internal_faces: tuple  # face indices
    truly_internal_faces: frozenset
    bad3: frozenset  # internal 3-vertices on a 3-face
    special2: frozenset  # degree-2 outer vertices on an internal 5-face
    poor_pairs: frozenset  # (vertex, face index): 4-vertex poor to that face
    vertex_faces: dict  # vertex -> tuple of incident face indices

    def is_internal_vertex(self, v) -> bool:
        return v not in self.on_outer


def _face_adjacency(g: PlaneGraph) -> dict:
    """face index -> set of face indices sharing an edge with it."""
    edge_faces = {}
    for i, f in enumerate(g.faces):
        for e in f.edges():
            edge_faces.setdefault(e, set()).add(i)
    adj = {i: set() for i in range(len(g.faces))}
    for faces in edge_faces.values():
        for a in faces:
            for b in faces:
                if a != b:
                    adj[a].add(b)
    return adj


def classify(g: PlaneGraph) -> Classification:
    outer_set = frozenset(g.outer)
    internal = tuple(i for i in range(len(g.faces)) if i != g.outer_face_idx)
    truly = frozenset(
        i for i in internal if not (g.faces[i].vertex_set() & outer_set)
    )
    vertex_faces = {v: [] for v in range(g.n)}
    for i, f in enumerate(g.faces):
        for v in f.vertex_set():
            vertex_faces[v].append(i)
    vertex_faces = {v: tuple(fs) for v, fs in vertex_faces.items()}

    def internal_deg(i):
        return g.faces[i].degree

    bad3 = frozenset(
        v
        for v in range(g.n)
        if v not in outer_set
        and g.degree(v) == 3
        and any(internal_deg(i) == 3 for i in vertex_faces[v] if i != g.outer_face_idx)
    )
    special2 = frozenset(
        v
        for v in outer_set
        if g.degree(v) == 2
        and any(
            internal_deg(i) == 5 for i in vertex_faces[v] if i != g.outer_face_idx
        )
    )

    fadj = _face_adjacency(g)
    poor = set()
    for v in range(g.n):
        if v in outer_set or g.degree(v) != 4:
            continue
        vfaces = [i for i in vertex_faces[v]]
        tri = [i for i in vfaces if g.faces[i].degree == 3]
        five = [i for i in vfaces if g.faces[i].degree == 5]
        for f in vfaces:
            if (
                any(f not in fadj[t] and t != f for t in tri)
                or sum(1 for t in tri if f in fadj[t]) >= 2
                or any(f in fadj[q] for q in five)
            ):
                poor.add((v, f))
    return Classification(
        on_outer=outer_set,
        internal_faces=internal,
        truly_internal_faces=truly,
        bad3=bad3,
        special2=special2,
        poor_pairs=frozenset(poor),
        vertex_faces=vertex_faces,
    )


@dataclass
class ChargeLedger:
    charge: dict = field(default_factory=dict)  # element key -> thirds
    log: list = field(default_factory=list)  # (src, dst, thirds, rule)

    def transfer(self, src, dst, amount, rule):
        assert amount > 0
        self.charge[src] -= amount
        self.charge[dst] += amount
        self.log.append((src, dst, amount, rule))

    def total(self) -> int:
        return sum(self.charge.values())


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    """3*(d-4) per vertex and internal face, 3*|outer|+12 on the outer
    boundary; the grand total is exactly zero on any plane graph."""
    led = ChargeLedger()
    for v in range(g.n):
        led.charge[("v", v)] = 3 * (g.degree(v) - 4)
    for i, f in enumerate(g.faces):
        if i != g.outer_face_idx:
            led.charge[("f", i)] = 3 * (f.degree - 4)
    led.charge[OUTER] = 3 * len(g.outer) + 12
    return led


def run_rules(g: PlaneGraph, cls: Classification = None) -> ChargeLedger:
    """Apply the four transfer rules, then forward each big internal
    face's nonnegative remainder to the outer boundary.

    Rule amounts in thirds: triangles collect 1 from each vertex;
    internal 5-faces collect 1 from internal 4+-vertices and pay 1 to
    2-vertices and internal 3-vertices; internal 7+-faces pay 2 to
    2-vertices and bad 3-vertices and 1 to internal non-bad 3-vertices
    and to 4-vertices poor to them; outer 4+-vertices pay 1 to each
    incident internal 5-face; the outer boundary pays each of its
    vertices 5, 4 or 3 (special 2-vertex / other 2-vertex or 3-vertex
    on a triangle / the rest).
    """
    if cls is None:
        cls = classify(g)
    led = initial_charges(g)
    outer = cls.on_outer

    # R1: triangles collect from every incident vertex
    for i in cls.internal_faces:
        if g.faces[i].degree == 3:
            for v in sorted(g.faces[i].vertex_set()):
                led.transfer(("v", v), ("f", i), 1, "R1")

    # R2: 5-face and 7+-face clauses
    for i in cls.internal_faces:
        d = g.faces[i].degree
        verts = sorted(g.faces[i].vertex_set())
        if d == 5:
            for v in verts:
                if v not in outer and g.degree(v) >= 4:
                    led.transfer(("v", v), ("f", i), 1, "R2")
            for v in verts:
                if g.degree(v) == 2 or (v not in outer and g.degree(v) == 3):
                    led.transfer(("f", i), ("v", v), 1, "R2")
        elif d >= 7:
            for v in verts:
                if g.degree(v) == 2 or v in cls.bad3:
                    led.transfer(("f", i), ("v", v), 2, "R2")
                elif (v not in outer and g.degree(v) == 3) or (
                    (v, i) in cls.poor_pairs
                ):
                    led.transfer(("f", i), ("v", v), 1, "R2")

    # R3: outer 4+-vertices pay incident internal 5-faces
    for v in sorted(outer):
        if g.degree(v) >= 4:
            for i in cls.vertex_faces[v]:
                if i != g.outer_face_idx and g.faces[i].degree == 5:
                    led.transfer(("v", v), ("f", i), 1, "R3")

    # R4: the outer boundary pays each of its vertices once
    tri_faces = {
        i for i in cls.internal_faces if g.faces[i].degree == 3
    }
    for v in sorted(outer):
        if v in cls.special2:
            amt = 5
        elif g.degree(v) == 2 or (
            g.degree(v) == 3 and any(i in tri_faces for i in cls.vertex_faces[v])
        ):
            amt = 4
        else:
            amt = 3
        led.transfer(OUTER, ("v", v), amt, "R4")

    # surplus: big internal faces forward what they still hold
    for i in cls.internal_faces:
        if g.faces[i].degree >= 5:
            amt = led.charge[("f", i)]
            if amt > 0:
                led.transfer(("f", i), OUTER, amt, "surplus")
    return led


@dataclass
class AuditReport:
    ledger: ChargeLedger
    initial: dict
    conservation: bool
    vertices_nonnegative: bool
    faces_nonnegative: bool
    outer_positive: bool
    mu_star_outer: int
    negative_elements: list
    configuration: Optional[str]

    def all_bounds_hold(self) -> bool:
        return (
            self.vertices_nonnegative
            and self.faces_nonnegative
            and self.outer_positive
        )

    def to_text(self) -> str:
        led = self.ledger
        lines = []

        def fmt(key):
            return key[0] + (str(key[1]) if len(key) > 1 else "")

        for key in sorted(k for k in led.charge if k[0] == "v"):
            lines.append(f"{fmt(key)} init={self.initial[key]}/3 final={led.charge[key]}/3")
        for key in sorted(k for k in led.charge if k[0] == "f"):
            lines.append(f"{fmt(key)} init={self.initial[key]}/3 final={led.charge[key]}/3")
        lines.append(f"C0 init={self.initial[OUTER]}/3 final={led.charge[OUTER]}/3")
        for src, dst, amount, rule in led.log:
            lines.append(f"transfer {fmt(src)} -> {fmt(dst)} amount={amount}/3 rule={rule}")
        ok = lambda b: "OK" if b else "FAIL"
        lines.append(f"verdict vertices_nonnegative={ok(self.vertices_nonnegative)}")
        lines.append(f"verdict internal_faces_nonnegative={ok(self.faces_nonnegative)}")
        lines.append(
            f"verdict outer_positive={ok(self.outer_positive)} mu_star={self.mu_star_outer}/3"
        )
        if self.configuration is not None:
            lines.append(f"note configuration={self.configuration}")
        lines.append(
            f"verdict conservation={ok(self.conservation)} total={led.total()}/3"
        )
        return "\n".join(lines) + "\n"


def audit(g: PlaneGraph) -> AuditReport:
    """Run the full procedure and check every bound.

    A failed bound is expected exactly when the graph still contains a
    reducible configuration; the report then names the one the finder
    sees, tying the two diagnostics together.
    """
    if has_forbidden_cycles(g):
        raise OutOfClass("graph contains a cycle of length 4, 6 or 8")
    initial = initial_charges(g).charge
    led = run_rules(g)
    negative = [k for k, c in sorted(led.charge.items()) if k != OUTER and c < 0]
    vertices_ok = all(led.charge[k] >= 0 for k in led.charge if k[0] == "v")
    faces_ok = all(led.charge[k] >= 0 for k in led.charge if k[0] == "f")
    outer_ok = led.charge[OUTER] > 0
    conf = None
    if not (vertices_ok and faces_ok and outer_ok):
        conf = "outer walk is not a cycle"
        try:
            c0 = cycle_ref(g, g.outer)
            from .reducer import find_configuration

            found = find_configuration(g, c0)
            conf = repr(found) if found is not None else "none"
        except NotACycle:
            pass
    return AuditReport(
        ledger=led,
        initial=initial,
        conservation=led.total() == 0,
        vertices_nonnegative=vertices_ok,
        faces_nonnegative=faces_ok,
        outer_positive=outer_ok,
        mu_star_outer=led.charge[OUTER],
        negative_elements=negative,
        configuration=conf,
    )


@dataclass
class BadRunReport:
    runs: list  # (start index on the boundary walk, length)
    whole_face_bad: bool
    run4_triangle_checks: list  # (start, [bool, bool, bool]) for 4-runs
    has_run_of_5: bool


def consecutive_bad_pattern(g: PlaneGraph, face_idx: int, cls: Classification = None) -> BadRunReport:
    """Maximal runs of consecutive bad 3-vertices along a face walk.

    Runs of length five or more contradict the structure theory (they
    force the four-in-a-row reducible pattern); for runs of exactly
    four the three alternating edges around the run must each lie on a
    triangle, which is what the big-face charge argument consumes.
    """
    if cls is None:
        cls = classify(g)
    walk = g.faces[face_idx].boundary
    k = len(walk)
    flags = [walk[i] in cls.bad3 for i in range(k)]
    if all(flags):
        return BadRunReport([(0, k)], True, [], k >= 5)
    runs = []
    i = 0
    # rotate so position 0 is not in a run, making runs non-wrapping
    shift = next(j for j in range(k) if not flags[j])
    rot = [(j + shift) % k for j in range(k)]
    j = 0
    while j < k:
        if flags[rot[j]]:
            start = j
            while j < k and flags[rot[j]]:
                j += 1
            runs.append((rot[start], j - start))
        else:
            j += 1
    checks = []
    for start, length in runs:
        if length == 4:
            # edges flanking and interleaving the run: (w0 w1), (w2 w3), (w4 w5)
            w = [walk[(start - 1 + t) % k] for t in range(6)]
            on_tri = [
                bool(g.adj[w[a]] & g.adj[w[a + 1]])
                for a in (0, 2, 4)
            ]
            checks.append(((start, length), on_tri))
    return BadRunReport(
        runs=sorted(runs),
        whole_face_bad=False,
        run4_triangle_checks=checks,
        has_run_of_5=any(length >= 5 for _, length in runs),
    )
