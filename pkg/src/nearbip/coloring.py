"""IF-colorings: independent-set / forest vertex partitions.

A coloring assigns I or F to each vertex (None = unset).  The I class
must be independent and the F class must induce a forest.  Relative to
a cycle C, a coloring *superextends* when no path joins two C-vertices
through one or more F-colored vertices outside C; ``strict`` mode
ignores the endpoint colors, ``lenient`` additionally requires both
endpoints to be F.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .plane_graph import PlaneGraph, CycleRef

I = "I"
F = "F"


class NotAnIFColoring(Exception):
    """Raised when an operation requires a valid total IF-coloring.

    Carries the failing certificate as ``certificate``.
    """

    def __init__(self, certificate):
        super().__init__(f"not a valid IF-coloring: {certificate}")
        self.certificate = certificate


class IFColoring:
    """Partial vertex coloring over {I, F, unset}."""

    __slots__ = ("colors",)

    def __init__(self, colors: Sequence[Optional[str]]):
        self.colors = list(colors)

    @classmethod
    def unset(cls, n: int) -> "IFColoring":
        return cls([None] * n)

    @classmethod
    def from_string(cls, s: str) -> "IFColoring":
        table = {"I": I, "F": F, ".": None}
        try:
            return cls([table[ch] for ch in s.strip()])
        except KeyError as e:
            raise ValueError(f"bad coloring character {e.args[0]!r}") from None

    def to_string(self) -> str:
        return "".join("." if c is None else c for c in self.colors)

    def __getitem__(self, v: int) -> Optional[str]:
        return self.colors[v]

    def __setitem__(self, v: int, c: Optional[str]) -> None:
        self.colors[v] = c

    def __len__(self) -> int:
        return len(self.colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, IFColoring) and self.colors == other.colors

    def copy(self) -> "IFColoring":
        return IFColoring(self.colors)

    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    def assigned(self) -> list:
        return [v for v, c in enumerate(self.colors) if c is not None]

    def __repr__(self):
        return f"IFColoring({self.to_string()!r})"


@dataclass(frozen=True)
class Certificate:
    """Checker verdict plus a re-verifiable witness when invalid.

    Exactly one witness field is set on an invalid certificate:
    ``edge`` for an I-I edge, ``cycle`` for an F-cycle, ``path`` for an
    offending F-path relative to a cycle.
    """

    valid: bool
    edge: Optional[tuple] = None
    cycle: Optional[tuple] = None
    path: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.valid


VALID = Certificate(valid=True)


def is_independent(g: PlaneGraph, phi: IFColoring) -> Certificate:
    """Valid iff no edge joins two I vertices."""
    for u in range(g.n):
        if phi[u] != I:
            continue
        for v in g.rot[u]:
            if u < v and phi[v] == I:
                return Certificate(valid=False, edge=(u, v))
    return VALID


def _f_cycle_witness(g: PlaneGraph, phi: IFColoring) -> tuple:
    # Depth-first walk of the F-subgraph; the first back edge to an
    # ancestor closes the witness cycle.  Uses an explicit iterator
    # stack so the parent chain really is the recursion path.
    fset = {v for v in range(g.n) if phi[v] == F}
    parent = {}
    for root in sorted(fset):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, iter(sorted(g.adj[root])))]
        on_path = {root}
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in fset or w == parent[v]:
                    continue
                if w in on_path:
                    chain = [v]
                    x = v
                    while x != w:
                        x = parent[x]
                        chain.append(x)
                    return tuple(chain)
                if w in parent:
                    continue  # finished in an earlier branch
                parent[w] = v
                stack.append((w, iter(sorted(g.adj[w]))))
                on_path.add(w)
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(v)
    raise AssertionError("no F-cycle found")  # caller checked one exists


def induces_forest(g: PlaneGraph, phi: IFColoring) -> Certificate:
    """Valid iff the F class induces an acyclic subgraph."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(g.n):
        if phi[u] != F:
            continue
        for v in g.rot[u]:
            if u < v and phi[v] == F:
                ru, rv = find(u), find(v)
                if ru == rv:
                    return Certificate(valid=False, cycle=_f_cycle_witness(g, phi))
                parent[ru] = rv
    return VALID


def f_path_between(g, phi, a, b, forbidden=()) -> Optional[list]:
    """A path from a to b with every vertex colored F, avoiding
    ``forbidden``; None if there is none."""
    if a == b:
        return None
    forbidden = set(forbidden)
    if phi[a] != F or phi[b] != F or a in forbidden or b in forbidden:
        return None
    prev = {a: None}
    queue = [a]
    while queue:
        nxt = []
        for v in queue:
            for w in sorted(g.adj[v]):
                if w in prev or w in forbidden or phi[w] != F:
                    continue
                prev[w] = v
                if w == b:
                    path = [w]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                nxt.append(w)
        queue = nxt
    return None


def f_path_to_set(g, phi, a, targets, forbidden=()) -> Optional[list]:
    """A path from a to the first reachable vertex of ``targets``, all
    vertices F, with every vertex before the target outside ``targets``
    and outside ``forbidden``.  For a in targets the trivial answer is
    [a] when a is F."""
    targets = set(targets)
    forbidden = set(forbidden)
    if phi[a] != F or a in forbidden:
        return None
    if a in targets:
        return [a]
    prev = {a: None}
    queue = [a]
    while queue:
        nxt = []
        for v in queue:
            for w in sorted(g.adj[v]):
                if w in prev or w in forbidden or phi[w] != F:
                    continue
                prev[w] = v
                if w in targets:
                    path = [w]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                nxt.append(w)
        queue = nxt
    return None


def _check_total_valid(g: PlaneGraph, phi: IFColoring) -> None:
    cert = is_independent(g, phi)
    if not cert:
        raise NotAnIFColoring(cert)
    cert = induces_forest(g, phi)
    if not cert:
        raise NotAnIFColoring(cert)


def is_superextension(g, c: CycleRef, phi: IFColoring, mode: str = "strict") -> Certificate:
    """Valid iff no path joins two C-vertices with at least one internal
    vertex, all internal vertices F and outside C.

    strict: endpoint colors are irrelevant (literal reading).
    lenient: only paths whose two C-endpoints are both F count.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be strict or lenient, not {mode!r}")
    _check_total_valid(g, phi)
    cset = c.vertex_set()

    # components of the F-subgraph outside C, with their C-attachments
    comp = {}
    for root in range(g.n):
        if root in comp or root in cset or phi[root] != F:
            continue
        members = [root]
        comp[root] = root
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w in cset or phi[w] != F or w in comp:
                    continue
                comp[w] = root
                members.append(w)
                stack.append(w)
        attach = set()
        for v in members:
            for w in g.adj[v]:
                if w in cset:
                    if mode == "strict" or phi[w] == F:
                        attach.add(w)
        if len(attach) >= 2:
            a, b = sorted(attach)[:2]
            # witness: a - (path inside the component) - b
            start = min(w for w in members if a in g.adj[w])
            goal = {w for w in members if b in g.adj[w]}
            prev = {start: None}
            queue = [start]
            mid = [start] if start in goal else None
            while queue and mid is None:
                nxt = []
                for v in queue:
                    for w in g.adj[v]:
                        if w in prev or comp.get(w) != root:
                            continue
                        prev[w] = v
                        if w in goal:
                            mid = [w]
                            while prev[mid[-1]] is not None:
                                mid.append(prev[mid[-1]])
                            mid.reverse()
                            break
                        nxt.append(w)
                    if mid is not None:
                        break
                queue = nxt
            return Certificate(valid=False, path=tuple([a] + mid + [b]))
    return VALID


def verify_witness_path(g, c: CycleRef, phi: IFColoring, path, mode="strict") -> bool:
    """Re-check an offending-path witness independently."""
    if len(path) < 3:
        return False
    a, b = path[0], path[-1]
    cset = c.vertex_set()
    if a not in cset or b not in cset or a == b:
        return False
    for u, v in zip(path, path[1:]):
        if v not in g.adj[u]:
            return False
    inner = path[1:-1]
    if any(x in cset or phi[x] != F for x in inner):
        return False
    if mode == "lenient" and (phi[a] != F or phi[b] != F):
        return False
    return True


def restrict(phi: IFColoring, verts) -> IFColoring:
    out = IFColoring.unset(len(phi))
    for v in verts:
        out[v] = phi[v]
    return out


def valid_precolorings(g: PlaneGraph, c: CycleRef) -> list:
    """All {I,F} assignments on V(C) valid over the induced subgraph
    G[V(C)] (chords included).  Deterministic order: by c.verts with F
    before I at each position."""
    verts = list(c.verts)
    k = len(verts)
    # edges inside the induced subgraph
    vset = set(verts)
    induced = [
        (u, v)
        for u in verts
        for v in g.adj[u]
        if u < v and v in vset
    ]
    out = []
    for bits in product((F, I), repeat=k):
        phi = IFColoring.unset(g.n)
        for v, col in zip(verts, bits):
            phi[v] = col
        ok = all(not (phi[u] == I and phi[v] == I) for u, v in induced)
        if ok:
            # forest check on the induced F-part
            parent = {v: v for v in verts}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in induced:
                if phi[u] == F and phi[v] == F:
                    ru, rv = find(u), find(v)
                    if ru == rv:
                        ok = False
                        break
                    parent[ru] = rv
        if ok:
            out.append(phi)
    return out
