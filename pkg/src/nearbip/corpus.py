"""Desk-scale graphs without 4/6/8-cycles: generators and curated instances.

Generators are deterministic per seed.  Curated instances are built in
code and shipped as text files under ``data/corpus``; the ones with
hand-checked charge numbers carry companion ``.expect`` files holding
their audit verdict blocks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .plane_graph import (
    PlaneGraph,
    build,
    girth,
    has_forbidden_cycles,
    short_cycles,
    to_text,
)


class PreconditionViolated(Exception):
    pass


@dataclass
class CorpusEntry:
    name: str
    graph: PlaneGraph
    provenance: str

    @property
    def stats(self):
        g = self.graph
        return {
            "n": g.n,
            "m": g.m,
            "girth": girth(g),
            "face_degrees": sorted(f.degree for f in g.faces),
        }


@dataclass
class ClassReport:
    simple_connected_plane: bool
    in_class: bool
    girth: Optional[int]
    cycle_lengths_le_12: list

    def to_text(self) -> str:
        verdict = "in-class" if self.in_class else "out-of-class"
        g = "inf" if self.girth is None else str(self.girth)
        lens = ",".join(str(x) for x in self.cycle_lengths_le_12) or "-"
        return f"{verdict} girth={g} cycles<=12: {lens}\n"


def verify_class(g: PlaneGraph) -> ClassReport:
    """Class membership report: validity is implied by construction of
    the PlaneGraph value; forbidden cycles and the short-cycle census
    are recomputed here."""
    lens = sorted(len(c) for c in short_cycles(g, 12))
    return ClassReport(
        simple_connected_plane=True,
        in_class=not has_forbidden_cycles(g),
        girth=girth(g),
        cycle_lengths_le_12=lens,
    )


# -- simple builders ----------------------------------------------------


def cycle_graph(n: int) -> PlaneGraph:
    return build(n, [((i - 1) % n, (i + 1) % n) for i in range(n)], tuple(range(n)))


def path_graph(n: int) -> PlaneGraph:
    rot = [[1]] + [[i - 1, i + 1] for i in range(1, n - 1)] + [[n - 2]]
    outer = tuple(range(n)) + tuple(range(n - 2, 0, -1))
    return build(n, rot, outer)


def star_graph(leaves: int) -> PlaneGraph:
    rot = [list(range(1, leaves + 1))] + [[0]] * leaves
    outer = []
    for i in range(1, leaves + 1):
        outer += [0, i]
    return build(leaves + 1, rot, tuple(outer))


def theta_graph(a: int, b: int, c: int) -> PlaneGraph:
    """Two poles joined by three internally disjoint paths of a, b, c
    edges; the three cycle lengths a+b, a+c, b+c must avoid 4, 6, 8."""
    for x, y in ((a, b), (a, c), (b, c)):
        if x + y in (4, 6, 8) or x + y < 3:
            raise PreconditionViolated(f"arm pair {x},{y} closes a bad cycle")
    n = 2 + (a - 1) + (b - 1) + (c - 1)
    rot = [[] for _ in range(n)]
    nid = 2
    arms = []
    for length in (a, b, c):
        inner = list(range(nid, nid + length - 1))
        nid += length - 1
        arms.append(inner)
        chain = [0] + inner + [1]
        for i in range(1, len(chain) - 1):
            rot[chain[i]] = [chain[i - 1], chain[i + 1]]
    rot[0] = [arms[0][0] if arms[0] else 1, arms[1][0] if arms[1] else 1,
              arms[2][0] if arms[2] else 1]
    rot[1] = [arms[0][-1] if arms[0] else 0, arms[2][-1] if arms[2] else 0,
              arms[1][-1] if arms[1] else 0]
    # outer face: arm a up, arm c back
    outer = [0] + arms[0] + [1] + arms[2][::-1]
    return build(n, rot, tuple(outer))


# -- generators ----------------------------------------------------------


def gen_subdivision(base: PlaneGraph, k: int, seed: int = 0) -> CorpusEntry:
    """Replace every edge of ``base`` by a path of k+1 edges.

    Every base cycle of length L becomes length (k+1)L, so the result
    avoids 4/6/8-cycles whenever no such product lands on them; k=2
    always works.  The subdivision is deterministic; the seed is
    recorded only as provenance.
    """
    for c in short_cycles(base, 8):
        if (k + 1) * len(c) in (4, 6, 8):
            raise PreconditionViolated(
                f"subdividing a {len(c)}-cycle by k={k} gives a forbidden cycle"
            )
    n = base.n
    nid = n
    mids = {}
    for u, v in base.edges():
        mids[(u, v)] = list(range(nid, nid + k))
        nid += k
    rot = [[] for _ in range(nid)]

    def chain(u, v):
        m = mids[(u, v) if u < v else (v, u)]
        return m if u < v else m[::-1]

    for v in range(n):
        for u in base.rot[v]:
            c = chain(v, u)
            rot[v].append(c[0] if c else u)
    for u, v in base.edges():
        path = [u] + mids[(u, v)] + [v]
        for i in range(1, len(path) - 1):
            rot[path[i]] = [path[i - 1], path[i + 1]]
    outer = []
    ow = base.outer
    for i in range(len(ow)):
        u, v = ow[i], ow[(i + 1) % len(ow)]
        outer.append(u)
        outer.extend(chain(u, v))
    g = build(nid, rot, tuple(outer))
    return CorpusEntry(f"subdiv-k{k}", g, f"gen_subdivision k={k} seed={seed}")


def gen_triangle_cactus(n_blocks: int, seed: int) -> CorpusEntry:
    """Random cactus of triangle blocks; some blocks are attached
    inside an existing triangle face, so separating triangles occur.

    Every cycle is one of the triangle blocks, so the result is always
    in class with girth 3.
    """
    if n_blocks < 1:
        raise PreconditionViolated("need at least one block")
    rng = random.Random(seed)
    rot = [[1, 2], [2, 0], [0, 1]]
    triangles = [(0, 1, 2)]
    for _ in range(n_blocks - 1):
        v = rng.randrange(len(rot))
        a, b = len(rot), len(rot) + 1
        rot.append([b, v])
        rot.append([v, a])
        inside = rng.random() < 0.4
        tri = next((t for t in triangles if v in t), None)
        if inside and tri is not None:
            # splice the new block into the corner of v's triangle face
            x = tri[(tri.index(v) + 1) % 3]
            i = rot[v].index(x)
            rot[v][i:i] = [a, b]
        else:
            rot[v].extend([a, b])
        triangles.append((v, a, b))
    n = len(rot)
    # outer face: trace from a dart of the first triangle that borders
    # the unbounded region (edge 0-1, side away from triangle 0,1,2)
    from .plane_graph import _trace_from_dart

    outer = _trace_from_dart([tuple(r) for r in rot], 1, 0)
    g = build(n, rot, outer)
    return CorpusEntry(
        f"cactus-{n_blocks}b-s{seed}", g, f"gen_triangle_cactus blocks={n_blocks} seed={seed}"
    )


# -- curated instances ----------------------------------------------------


def _pendant_triangle_c12() -> PlaneGraph:
    # outer 12-cycle, bridge from c0 to an internal triangle: the
    # triangle's bridge vertex is an internal 3-vertex on a 3-face
    rot = [None] * 15
    for i in range(12):
        rot[i] = [(i - 1) % 12, (i + 1) % 12]
    rot[0] = [1, 11, 12]
    rot[12] = [0, 13, 14]
    rot[13] = [14, 12]
    rot[14] = [12, 13]
    return build(15, rot, tuple(range(12)))


def _special2_c12() -> PlaneGraph:
    # outer 12-cycle; inner 5-face [c0,c1,c2,w2,w1]; pendants on c0, c2
    # make both 4-vertices, so the 5-face ends holding 2 thirds
    rot = [None] * 16
    for i in range(12):
        rot[i] = [(i - 1) % 12, (i + 1) % 12]
    rot[0] = (11, 1, 12, 14)
    rot[2] = (1, 3, 15, 13)
    rot[12] = (0, 13)
    rot[13] = (12, 2)
    rot[14] = (0,)
    rot[15] = (2,)
    return build(16, rot, tuple(range(12)))


def _two_ears_c12() -> PlaneGraph:
    # outer 12-cycle with ear triangles on (c0,c1) and (c6,c7): the big
    # inner face has degree 14 and is adjacent to both triangles
    rot = [None] * 14
    for i in range(12):
        rot[i] = [(i - 1) % 12, (i + 1) % 12]
    rot[0] = [11, 12, 1]
    rot[1] = [0, 12, 2]
    rot[6] = [5, 13, 7]
    rot[7] = [6, 13, 8]
    rot[12] = [0, 1]
    rot[13] = [6, 7]
    return build(14, rot, tuple(range(12)))


_L4_RING_ORDER = [5, 10, 11, 12, 6, 13, 14, 15, 7, 16, 17, 18, 8, 19, 20, 21, 9, 22, 23, 24]


def _five_face_ring() -> PlaneGraph:
    # pentagon of 3-vertices (0..4) with outside neighbours 5..9 on a
    # 20-ring; the ring is the outer face, the pentagon truly internal
    ring = _L4_RING_ORDER
    k = len(ring)
    rnext = {ring[i]: ring[(i + 1) % k] for i in range(k)}
    rprev = {ring[i]: ring[(i - 1) % k] for i in range(k)}
    rot = [None] * 25
    for i in range(5):
        rot[i] = ((i - 1) % 5, (i + 1) % 5, 5 + i)
    for i in range(5):
        u = 5 + i
        rot[u] = (rnext[u], rprev[u], i)
    for z in range(10, 25):
        rot[z] = (rprev[z], rnext[z])
    return build(25, rot, tuple(ring))


def _bridge_in(rot, a, pos_nbr, b):
    """Insert neighbour b into rot[a] right after pos_nbr."""
    r = list(rot[a])
    r.insert(r.index(pos_nbr) + 1, b)
    rot[a] = r


def _five_face_deep() -> PlaneGraph:
    # the ring gadget inside a 12-cycle (25..36), joined by two bridges
    # 10-25 and 18-31; the u-vertices become internal, so lift-case
    # probes of F-paths toward the outer cycle are meaningful
    g = _five_face_ring()
    rot = [list(r) for r in g.rot] + [None] * 12
    for j in range(12):
        c = 25 + j
        rot[c] = [25 + (j - 1) % 12, 25 + (j + 1) % 12]
    rot[25] = [36, 10, 26]
    rot[31] = [30, 18, 32]
    _bridge_in(rot, 10, 5, 25)   # between ring-prev(u0=5) and ring-next
    _bridge_in(rot, 18, 17, 31)
    return build(37, rot, tuple(range(25, 37)))


_TETRAD_RING_ORDER = (
    [6] + list(range(8, 14)) + [4] + list(range(14, 19)) + [5]
    + list(range(19, 25)) + [7] + list(range(25, 28))
)


def _tetrad_ring() -> PlaneGraph:
    # path of internal 3-vertices 0-1-2-3 with triangles (0,1,4) and
    # (2,3,5); attachments x=6, y=7; everything else on a 24-ring
    ringv = _TETRAD_RING_ORDER
    k = len(ringv)
    rnext = {ringv[i]: ringv[(i + 1) % k] for i in range(k)}
    rprev = {ringv[i]: ringv[(i - 1) % k] for i in range(k)}
    rot = [None] * 28
    rot[0] = (1, 4, 6)
    rot[1] = (0, 2, 4)
    rot[2] = (1, 3, 5)
    rot[3] = (2, 7, 5)
    rot[4] = (13, 0, 1, 14)
    rot[5] = (18, 2, 3, 19)
    rot[6] = (rprev[6], rnext[6], 0)
    rot[7] = (rprev[7], 3, rnext[7])
    for z in list(range(8, 14)) + list(range(14, 19)) + list(range(19, 25)) + list(range(25, 28)):
        rot[z] = (rprev[z], rnext[z])
    return build(28, rot, tuple(ringv))


def _tetrad_deep() -> PlaneGraph:
    # tetrad ring inside a 12-cycle (28..39) with bridges 11-28, 21-34
    g = _tetrad_ring()
    rot = [list(r) for r in g.rot] + [None] * 12
    for j in range(12):
        c = 28 + j
        rot[c] = [28 + (j - 1) % 12, 28 + (j + 1) % 12]
    rot[28] = [39, 11, 29]
    rot[34] = [33, 21, 35]
    _bridge_in(rot, 11, 10, 28)
    _bridge_in(rot, 21, 20, 34)
    return build(40, rot, tuple(range(28, 40)))


def curated() -> list:
    """Named instances used by the acceptance suite."""
    entries = [
        CorpusEntry("triangle", cycle_graph(3), "curated:triangle"),
        CorpusEntry("c5-bare", cycle_graph(5), "curated:c5-bare"),
        CorpusEntry("c7-bare", cycle_graph(7), "curated:c7-bare"),
        CorpusEntry("c9-bare", cycle_graph(9), "curated:c9-bare"),
        CorpusEntry("c10-bare", cycle_graph(10), "curated:c10-bare"),
        CorpusEntry("c11-bare", cycle_graph(11), "curated:c11-bare"),
        CorpusEntry("c12-bare", cycle_graph(12), "curated:c12-bare"),
        CorpusEntry("path-7", path_graph(7), "curated:path-7"),
        CorpusEntry("star-5", star_graph(5), "curated:star-5"),
        CorpusEntry("pendant-triangle", _pendant_triangle_c12(), "curated:pendant-triangle"),
        CorpusEntry("special2-exerciser", _special2_c12(), "curated:special2-exerciser"),
        CorpusEntry("f9-exerciser", _two_ears_c12(), "curated:f9-exerciser"),
        CorpusEntry("l4-exerciser", _five_face_ring(), "curated:l4-exerciser"),
        CorpusEntry("l4-deep", _five_face_deep(), "curated:l4-deep"),
        CorpusEntry("tetrad-exerciser", _tetrad_ring(), "curated:tetrad-exerciser"),
        CorpusEntry("tetrad-deep", _tetrad_deep(), "curated:tetrad-deep"),
    ]
    return entries


def generated() -> list:
    """The deterministic generated part of the corpus."""
    out = []
    for blocks, seed in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2),
                         (5, 1), (5, 2), (6, 1), (6, 2), (7, 1), (7, 2)]:
        out.append(gen_triangle_cactus(blocks, seed))
    k4 = build(4, [(1, 3, 2), (2, 3, 0), (0, 3, 1), (0, 1, 2)], (0, 1, 2))
    e = gen_subdivision(k4, 2, seed=0)
    out.append(CorpusEntry("subdiv-k4", e.graph, e.provenance))
    tri = cycle_graph(3)
    e = gen_subdivision(tri, 2, seed=0)
    out.append(CorpusEntry("subdiv-triangle", e.graph, e.provenance))
    return out


def full_corpus() -> list:
    """Curated plus generated entries, all verified in class."""
    entries = curated() + generated()
    for e in entries:
        if has_forbidden_cycles(e.graph):
            raise PreconditionViolated(f"corpus entry {e.name} is out of class")
    return entries


def sweep_corpus(max_n: int = 16) -> list:
    """The entries small enough for the exhaustive acceptance sweeps."""
    return [e for e in full_corpus() if e.graph.n <= max_n]


# -- registry for generation from the command line ------------------------

FAMILIES = {
    "cycle": lambda arg, seed: CorpusEntry(
        f"cycle-{arg}", cycle_graph(int(arg)), f"gen cycle n={arg}"
    ),
    "cactus": lambda arg, seed: gen_triangle_cactus(int(arg), seed),
    "theta": lambda arg, seed: CorpusEntry(
        f"theta-{arg}",
        theta_graph(*(int(x) for x in arg.split(","))),
        f"gen theta arms={arg}",
    ),
    "subdiv-k4": lambda arg, seed: generated()[-2],
    "subdiv-triangle": lambda arg, seed: generated()[-1],
}


def generate(family: str, arg: str, seed: int) -> CorpusEntry:
    if family not in FAMILIES:
        raise PreconditionViolated(
            f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}"
        )
    return FAMILIES[family](arg, seed)


def load_named(name: str) -> PlaneGraph:
    ref = resources.files("nearbip.data").joinpath(f"corpus/{name}.pg")
    from .plane_graph import from_text

    return from_text(ref.read_text())


def write_corpus_files(dest) -> list:
    """Write every corpus entry into ``dest`` as canonical .pg files."""
    import pathlib

    dest = pathlib.Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    written = []
    for e in full_corpus():
        p = dest / f"{e.name}.pg"
        p.write_text(f"# {e.provenance}\n" + to_text(e.graph))
        written.append(p)
    return written
