"""Even-subgraph split of a colored map and its closed-trail decomposition.

A properly edge-colored map splits into two even subgraphs: the blue one
holds Blue and Green edges, the yellow one Yellow and Green edges, so
Green edges belong to both.  Each subgraph decomposes into closed trails
that never cross each other in the embedding: at every vertex the
incident subgraph darts are paired in rotation-adjacent couples (anchored
at the least dart), so trails through a shared vertex stay nested rather
than transversal.  Face colors are recovered from the two subgraphs by
parity walking of the dual.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import (EdgeColor, EdgeColoring, FaceColoring, KleinColor,
                       _check_edge_domain)
from .planar_map import MapError, RotationMap


class DsccError(MapError):
    pass


class ParityViolation(DsccError):
    """A vertex has odd degree inside a would-be even subgraph."""

    def __init__(self, vertex: int, message: str = ""):
        self.vertex = vertex
        super().__init__(message or f"odd subgraph degree at vertex {vertex}")


class CoverageGap(DsccError):
    """An edge belongs to neither subgraph."""


class Inconsistent(DsccError):
    """Two dual paths disagree while recovering face colors."""


@dataclass(frozen=True)
class EvenSubgraph:
    """An edge set with even degree at every vertex of its host map."""

    edges: frozenset[int]
    color_tag: EdgeColor

    def degree(self, m: RotationMap, v: int) -> int:
        return sum(1 for d in m.vertex_darts(v) if m.edge_id(d) in self.edges)


@dataclass(frozen=True)
class ClosedTrail:
    """A closed dart walk using each edge at most once.

    ``darts`` lists the traversal directions; the walk closes from the
    last dart's head back to the first dart's origin.  Vertices may
    repeat, edges may not.
    """

    darts: tuple[int, ...]

    def edge_ids(self, m: RotationMap) -> frozenset[int]:
        return frozenset(m.edge_id(d) for d in self.darts)

    def vertices(self, m: RotationMap) -> tuple[int, ...]:
        return tuple(m.origin(d) for d in self.darts)

    def is_simple_cycle(self, m: RotationMap) -> bool:
        verts = self.vertices(m)
        return len(set(verts)) == len(verts)


@dataclass(frozen=True)
class DsccDecomposition:
    blue_trails: tuple[ClosedTrail, ...]
    yellow_trails: tuple[ClosedTrail, ...]
    shared_vertices: frozenset[int]  # vertices where same-color trails touch


def check_even(m: RotationMap, edges: frozenset[int]) -> None:
    for v in range(m.vertex_count):
        deg = sum(1 for d in m.vertex_darts(v) if m.edge_id(d) in edges)
        if deg % 2:
            raise ParityViolation(v)


def split_subgraphs(m: RotationMap,
                    ec: EdgeColoring) -> tuple[EvenSubgraph, EvenSubgraph]:
    """Blue+Green and Yellow+Green edge sets, checked even at every vertex."""
    _check_edge_domain(m, ec)
    blue = frozenset(e for e in m.edges()
                     if ec[e] in (EdgeColor.BLUE, EdgeColor.GREEN))
    yellow = frozenset(e for e in m.edges()
                       if ec[e] in (EdgeColor.YELLOW, EdgeColor.GREEN))
    check_even(m, blue)
    check_even(m, yellow)
    return (EvenSubgraph(blue, EdgeColor.BLUE),
            EvenSubgraph(yellow, EdgeColor.YELLOW))


def _noncrossing_pairing(m: RotationMap, edges: frozenset[int]) -> dict[int, int]:
    """Pair the subgraph darts at each vertex into rotation-adjacent couples.

    The rotation at each vertex is rotated to start at its least incident
    subgraph dart and consecutive darts are coupled; a trail arriving on
    one dart of a couple leaves on the other.  Adjacent coupling is what
    keeps two trails through the same vertex from crossing.
    """
    partner: dict[int, int] = {}
    for v in range(m.vertex_count):
        incident = [d for d in m.vertex_darts(v) if m.edge_id(d) in edges]
        if not incident:
            continue
        if len(incident) % 2:
            raise ParityViolation(v)
        # vertex_darts already starts at the least dart of the vertex;
        # rotate to the least *subgraph* dart for a deterministic anchor
        k = incident.index(min(incident))
        incident = incident[k:] + incident[:k]
        for i in range(0, len(incident), 2):
            a, b = incident[i], incident[i + 1]
            partner[a] = b
            partner[b] = a
    return partner


def trail_decompose(sub: EvenSubgraph, m: RotationMap) -> list[ClosedTrail]:
    """Partition the subgraph's edges into non-crossing closed trails."""
    edges = sub.edges
    partner = _noncrossing_pairing(m, edges)
    used: set[int] = set()
    trails: list[ClosedTrail] = []
    for e in sorted(edges):
        if e in used:
            continue
        walk: list[int] = []
        d = e  # traverse edge e starting from its lower dart
        while True:
            eid = m.edge_id(d)
            if eid in used:
                raise DsccError(f"edge {eid} revisited during trail walk")
            walk.append(d)
            used.add(eid)
            d = partner[m.twin(d)]   # leave by the pairing at the head vertex
            if d == e:
                break
        trails.append(ClosedTrail(tuple(walk)))
    return trails


def decompose(m: RotationMap, ec: EdgeColoring) -> DsccDecomposition:
    """Split and decompose in one step, flagging same-color trail touches."""
    blue, yellow = split_subgraphs(m, ec)
    bt = trail_decompose(blue, m)
    yt = trail_decompose(yellow, m)
    shared: set[int] = set()
    for trails in (bt, yt):
        seen: dict[int, int] = {}
        for i, t in enumerate(trails):
            for v in set(t.vertices(m)):
                if v in seen and seen[v] != i:
                    shared.add(v)
                seen[v] = i
    return DsccDecomposition(tuple(bt), tuple(yt), frozenset(shared))


def dscc_to_face4(m: RotationMap, blue: EvenSubgraph,
                  yellow: EvenSubgraph) -> FaceColoring:
    """Face colors by crossing parity against the two even subgraphs.

    Walking the dual from the outer face (00), crossing a blue-only edge
    flips the first bit, a yellow-only edge the second, a shared edge
    both.  Path independence is checked, not assumed.
    """
    check_even(m, blue.edges)
    check_even(m, yellow.edges)
    deltas: dict[int, KleinColor] = {}
    for e in m.edges():
        b = e in blue.edges
        y = e in yellow.edges
        if not b and not y:
            raise CoverageGap(f"edge {e} lies in neither subgraph")
        deltas[e] = KleinColor((0b10 if b else 0) | (0b01 if y else 0))
    colors: dict[int, KleinColor] = {0: KleinColor.C00}
    stack = [0]
    while stack:
        f = stack.pop()
        for d in m.faces[f].darts:
            e = m.edge_id(d)
            g = m.face_of(m.twin(d))
            want = colors[f] ^ deltas[e]
            if g in colors:
                if colors[g] != want:
                    raise Inconsistent(f"dual paths disagree at face {g}")
            else:
                colors[g] = want
                stack.append(g)
    if len(colors) != m.face_count:
        raise Inconsistent("dual graph is disconnected")
    return FaceColoring(dict(sorted(colors.items())), outer_face=0)


# ---------------------------------------------------------------------------
# decomposition dump
# ---------------------------------------------------------------------------

def serialize_decomposition(m: RotationMap, dec: DsccDecomposition) -> str:
    """Dump trails as 1-based vertex sequences, one line per trail."""
    lines = []
    for tag, trails in (("blue", dec.blue_trails), ("yellow", dec.yellow_trails)):
        for t in trails:
            verts = " ".join(str(v + 1) for v in t.vertices(m))
            lines.append(f"{tag} trail: {verts}")
    return "\n".join(lines) + "\n"
