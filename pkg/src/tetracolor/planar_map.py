"""Combinatorial planar maps as rotation systems.

A map is stored dart-wise: every edge contributes two darts (half-edges),
``twin`` swaps the two darts of an edge, ``origin`` gives a dart's start
vertex, and ``next_at_vertex`` walks the darts around their origin in
clockwise order.  Faces are the orbits of ``d -> next(twin(d))`` and are
derived eagerly; with that convention a bounded face is walked with its
interior on the left.

Maps are immutable.  The two structural surgeries (edge deletion with
vertex suppression, face contraction) return new maps that carry a journal
of what was done, so every surgery can be undone exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union


class MapError(Exception):
    """Base class for structural errors on planar maps."""


class MalformedInput(MapError):
    """Map text does not conform to the map-file grammar."""


class NonReciprocal(MapError):
    """Vertex u lists v as a neighbor but v does not list u back."""


class DuplicateNeighbor(MapError):
    """Repeated neighbor in a rotation while parallel edges are disallowed."""


class BridgeDeletion(MapError):
    """Deleting the edge would disconnect the map."""


class NotCubic(MapError):
    """Operation requires a 3-regular map."""


class NonSimpleBoundary(MapError):
    """Face boundary repeats a vertex or edge, so it cannot be contracted."""


class UnknownFace(MapError):
    """Face id out of range."""


class DegenerateSurgery(MapError):
    """Surgery would leave a component without vertices."""


@dataclass(frozen=True)
class Dart:
    """One half of an edge, anchored at its origin vertex."""

    id: int
    twin: int
    origin: int
    next_at_vertex: int


@dataclass(frozen=True)
class Face:
    """A face boundary walk, as the cyclic dart sequence of its orbit."""

    id: int
    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    simple: bool
    planar: bool
    cubic: bool
    bridgeless: bool
    min_degree: int

    @property
    def all_ok(self) -> bool:
        return (self.connected and self.simple and self.planar
                and self.cubic and self.bridgeless)


@dataclass(frozen=True)
class SuppressionRecord:
    """Journal entry for delete_edge_suppress.

    ``edge_map`` sends every surviving parent edge id to the child edge id
    that carries it; the two spliced child edges each carry two parent
    edges.  ``parent`` is kept whole so the surgery can be undone.
    """

    parent: "RotationMap"
    deleted_edge: int
    suppressed_vertices: tuple[int, int]
    edge_map: dict[int, int]
    dart_map: dict[int, int]


@dataclass(frozen=True)
class ContractionRecord:
    """Journal entry for contract_face.

    ``boundary_vertices`` and ``boundary_darts`` follow the face walk.
    ``outer_darts`` lists, per walk position, the parent darts re-homed
    onto the hub vertex.  ``edge_map`` sends child edge ids back to the
    parent edges they came from.
    """

    parent: "RotationMap"
    face_id: int
    hub: int
    boundary_vertices: tuple[int, ...]
    boundary_darts: tuple[int, ...]
    outer_darts: tuple[tuple[int, ...], ...]
    edge_map: dict[int, int]
    dart_map: dict[int, int]


SurgeryRecord = Union[SuppressionRecord, ContractionRecord]


class RotationMap:
    """A planar map given by its rotation system.

    Construction validates the dart structure (twin is a fixed-point-free
    involution, the rotation is a single cycle per vertex) and derives
    faces.  Numbering is canonical: faces are ordered by their smallest
    dart id and each boundary walk starts at that dart.
    """

    __slots__ = ("_twin", "_origin", "_next", "_vertex_count", "_faces",
                 "_face_of", "_vertex_darts", "allow_parallel", "journal")

    def __init__(self, twin: Sequence[int], origin: Sequence[int],
                 next_at_vertex: Sequence[int], vertex_count: int,
                 allow_parallel: bool = False,
                 journal: tuple[SurgeryRecord, ...] = ()):
        n_darts = len(twin)
        if len(origin) != n_darts or len(next_at_vertex) != n_darts:
            raise MalformedInput("dart arrays disagree in length")
        if n_darts % 2:
            raise MalformedInput("odd number of darts")
        self._twin = tuple(twin)
        self._origin = tuple(origin)
        self._next = tuple(next_at_vertex)
        self._vertex_count = vertex_count
        self.allow_parallel = allow_parallel
        self.journal = journal
        self._check_structure()
        self._vertex_darts = self._collect_vertex_darts()
        self._faces, self._face_of = self._derive_faces()

    # -- basic accessors ---------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def dart_count(self) -> int:
        return len(self._twin)

    @property
    def edge_count(self) -> int:
        return len(self._twin) // 2

    @property
    def face_count(self) -> int:
        return len(self._faces)

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    def twin(self, d: int) -> int:
        return self._twin[d]

    def origin(self, d: int) -> int:
        return self._origin[d]

    def head(self, d: int) -> int:
        return self._origin[self._twin[d]]

    def next(self, d: int) -> int:
        return self._next[d]

    def dart(self, d: int) -> Dart:
        return Dart(d, self._twin[d], self._origin[d], self._next[d])

    @property
    def darts(self) -> tuple[Dart, ...]:
        return tuple(self.dart(d) for d in range(self.dart_count))

    def vertex_darts(self, v: int) -> tuple[int, ...]:
        """Darts leaving v, in clockwise rotation order from the least."""
        return self._vertex_darts[v]

    def degree(self, v: int) -> int:
        return len(self._vertex_darts[v])

    def face_of(self, d: int) -> int:
        return self._face_of[d]

    # -- edges -------------------------------------------------------------

    def edge_id(self, d: int) -> int:
        """Canonical edge id: the smaller dart of the pair."""
        t = self._twin[d]
        return d if d < t else t

    def edges(self) -> tuple[int, ...]:
        return tuple(d for d in range(self.dart_count) if d < self._twin[d])

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        return self._origin[e], self._origin[self._twin[e]]

    def find_edge(self, u: int, v: int) -> int:
        """Least edge id joining u and v."""
        best = None
        for d in self._vertex_darts[u]:
            if self.head(d) == v:
                e = self.edge_id(d)
                if best is None or e < best:
                    best = e
        if best is None:
            raise MapError(f"no edge between {u} and {v}")
        return best

    def is_loop(self, e: int) -> bool:
        return self._origin[e] == self._origin[self._twin[e]]

    def neighbor_lists(self) -> list[list[int]]:
        return [[self.head(d) for d in self._vertex_darts[v]]
                for v in range(self._vertex_count)]

    def mirrored(self) -> "RotationMap":
        """The reflected map: every vertex rotation reversed."""
        n = self.dart_count
        prev = [0] * n
        for d in range(n):
            prev[self._next[d]] = d
        return RotationMap(self._twin, self._origin, prev, self._vertex_count,
                           allow_parallel=self.allow_parallel)

    # -- structure checks and face derivation --------------------------------

    def _check_structure(self) -> None:
        n = self.dart_count
        seen_next = [False] * n
        for d in range(n):
            t = self._twin[d]
            if t == d or not 0 <= t < n or self._twin[t] != d:
                raise MalformedInput(f"twin is not a fixed-point-free involution at dart {d}")
            nx = self._next[d]
            if not 0 <= nx < n or self._origin[nx] != self._origin[d]:
                raise MalformedInput(f"rotation leaves vertex at dart {d}")
            if not 0 <= self._origin[d] < self._vertex_count:
                raise MalformedInput(f"dart {d} has origin out of range")
            if seen_next[nx]:
                raise MalformedInput("rotation is not a permutation")
            seen_next[nx] = True

    def _collect_vertex_darts(self) -> tuple[tuple[int, ...], ...]:
        first: list[Optional[int]] = [None] * self._vertex_count
        for d in range(self.dart_count):
            v = self._origin[d]
            if first[v] is None:
                first[v] = d
        out: list[tuple[int, ...]] = []
        covered = 0
        for v in range(self._vertex_count):
            d0 = first[v]
            if d0 is None:
                out.append(())
                continue
            darts = [d0]
            cur = self._next[d0]
            while cur != d0:
                darts.append(cur)
                cur = self._next[cur]
            covered += len(darts)
            out.append(tuple(darts))
        if covered != self.dart_count:
            raise MalformedInput("rotation at some vertex splits into several cycles")
        return tuple(out)

    def _derive_faces(self) -> tuple[tuple[Face, ...], tuple[int, ...]]:
        n = self.dart_count
        face_of = [-1] * n
        walks: list[tuple[int, ...]] = []
        for d0 in range(n):
            if face_of[d0] >= 0:
                continue
            walk = []
            cur = d0
            while face_of[cur] < 0:
                face_of[cur] = len(walks)
                walk.append(cur)
                cur = self._next[self._twin[cur]]
            walks.append(tuple(walk))
        faces = tuple(Face(i, w) for i, w in enumerate(walks))
        return faces, tuple(face_of)

    def __repr__(self) -> str:
        return (f"RotationMap(V={self._vertex_count}, E={self.edge_count}, "
                f"F={self.face_count})")


# ---------------------------------------------------------------------------
# construction from neighbor lists and the map-file format
# ---------------------------------------------------------------------------

def from_neighbor_lists(lists: Sequence[Sequence[int]],
                        allow_parallel: bool = False) -> RotationMap:
    """Build a map from 0-based clockwise neighbor lists.

    Parallel edges pair the k-th occurrence of v in u's rotation with the
    (count-1-k)-th occurrence of u in v's rotation, the pairing a plane
    bundle of parallel edges induces.  A loop at v appears twice in v's
    own list and is paired the same way within that list.
    """
    n = len(lists)
    origin: list[int] = []
    dart_ids: list[list[int]] = []
    k = 0
    for u, row in enumerate(lists):
        for v in row:
            if not 0 <= v < n:
                raise MalformedInput(f"neighbor {v} out of range at vertex {u}")
            origin.append(u)
        dart_ids.append(list(range(k, k + len(row))))
        k += len(row)

    if not allow_parallel:
        for u, row in enumerate(lists):
            if len(set(row)) != len(row):
                raise DuplicateNeighbor(f"vertex {u + 1} repeats a neighbor")
            if u in row:
                raise DuplicateNeighbor(f"vertex {u + 1} lists itself")

    slots: dict[tuple[int, int], list[int]] = {}
    for u, row in enumerate(lists):
        for i, v in enumerate(row):
            slots.setdefault((min(u, v), max(u, v)), []).append(dart_ids[u][i])

    twin = [-1] * len(origin)
    for (u, v), ds in slots.items():
        if u == v:
            if len(ds) % 2:
                raise NonReciprocal(f"loop at {u + 1} listed an odd number of times")
            m = len(ds)
            for i in range(m // 2):
                a, b = ds[i], ds[m - 1 - i]
                twin[a], twin[b] = b, a
        else:
            at_u = [d for d in ds if origin[d] == u]
            at_v = [d for d in ds if origin[d] == v]
            if len(at_u) != len(at_v):
                raise NonReciprocal(
                    f"vertices {u + 1} and {v + 1} disagree about their shared edges")
            m = len(at_u)
            for i in range(m):
                a, b = at_u[i], at_v[m - 1 - i]
                twin[a], twin[b] = b, a

    nxt = [-1] * len(origin)
    for u in range(n):
        ds = dart_ids[u]
        for i, d in enumerate(ds):
            nxt[d] = ds[(i + 1) % len(ds)]
    return RotationMap(twin, origin, nxt, n, allow_parallel=allow_parallel)


def parse_map(text: str, allow_parallel: bool = False) -> RotationMap:
    """Parse the line-oriented map-file format.

    First non-comment line is the vertex count n; the following n lines
    read ``i: a b c ...`` listing vertex i's neighbors in clockwise order,
    1-based.  ``#`` starts a comment, blank lines are skipped.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MalformedInput("empty map file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedInput(f"vertex count expected, got {lines[0]!r}") from None
    if n < 1:
        raise MalformedInput("vertex count must be positive")
    if len(lines) - 1 != n:
        raise MalformedInput(f"expected {n} vertex lines, found {len(lines) - 1}")
    rows: dict[int, list[int]] = {}
    for line in lines[1:]:
        if ":" not in line:
            raise MalformedInput(f"missing ':' in {line!r}")
        head, _, tail = line.partition(":")
        try:
            u = int(head)
            neigh = [int(tok) for tok in tail.split()]
        except ValueError:
            raise MalformedInput(f"bad integer in {line!r}") from None
        if not 1 <= u <= n:
            raise MalformedInput(f"vertex {u} out of range 1..{n}")
        if u in rows:
            raise MalformedInput(f"vertex {u} listed twice")
        for v in neigh:
            if not 1 <= v <= n:
                raise MalformedInput(f"neighbor {v} out of range at vertex {u}")
        rows[u] = neigh
    if len(rows) != n:
        raise MalformedInput("some vertex line is missing")
    lists = [[v - 1 for v in rows[u]] for u in range(1, n + 1)]
    for u in range(n):
        for v in set(lists[u]):
            if u != v and lists[u].count(v) != lists[v].count(u):
                raise NonReciprocal(f"vertex {u + 1} lists {v + 1} but not back")
    return from_neighbor_lists(lists, allow_parallel=allow_parallel)


def serialize_map(m: RotationMap) -> str:
    """Emit the map-file text: vertices ascending, single-space separated."""
    out = [str(m.vertex_count)]
    for v in range(m.vertex_count):
        neigh = " ".join(str(m.head(d) + 1) for d in m.vertex_darts(v))
        out.append(f"{v + 1}: {neigh}" if neigh else f"{v + 1}:")
    return "\n".join(out) + "\n"


def derive_faces(m: RotationMap) -> tuple[Face, ...]:
    """The face boundary walks of the rotation system."""
    return m.faces


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(m: RotationMap) -> ValidationReport:
    n = m.vertex_count
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for d in m.vertex_darts(v):
            w = m.head(d)
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    connected = count == n

    simple = True
    for v in range(n):
        heads = [m.head(d) for d in m.vertex_darts(v)]
        if v in heads or len(set(heads)) != len(heads):
            simple = False
            break

    planar = connected and (n - m.edge_count + m.face_count == 2)
    degrees = [m.degree(v) for v in range(n)]
    cubic = bool(degrees) and all(dg == 3 for dg in degrees)
    min_degree = min(degrees) if degrees else 0
    bridgeless = connected and not find_bridges(m)
    return ValidationReport(connected=connected, simple=simple, planar=planar,
                            cubic=cubic, bridgeless=bridgeless,
                            min_degree=min_degree)


def find_bridges(m: RotationMap) -> list[int]:
    """Bridge edge ids, by an iterative lowpoint search over darts."""
    n = m.vertex_count
    disc = [-1] * n
    low = [0] * n
    bridges: list[int] = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack: list[tuple[int, int, Iterator[int]]] = [
            (root, -1, iter(m.vertex_darts(root)))]
        while stack:
            v, in_dart, it = stack[-1]
            advanced = False
            for d in it:
                if in_dart >= 0 and d == m.twin(in_dart):
                    continue  # skip the arrival dart itself; parallels still count
                w = m.head(d)
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, d, iter(m.vertex_darts(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        bridges.append(m.edge_id(in_dart))
    return bridges


# ---------------------------------------------------------------------------
# surgeries
# ---------------------------------------------------------------------------

def _rotation_dicts(m: RotationMap) -> tuple[dict[int, int], dict[int, int], dict[int, int]]:
    twin = {d: m.twin(d) for d in range(m.dart_count)}
    origin = {d: m.origin(d) for d in range(m.dart_count)}
    nxt = {d: m.next(d) for d in range(m.dart_count)}
    return twin, origin, nxt


def _remove_from_rotation(nxt: dict[int, int], d: int) -> None:
    prev = d
    while nxt[prev] != d:
        prev = nxt[prev]
    if prev == d:
        raise DegenerateSurgery("removing the last dart at a vertex")
    nxt[prev] = nxt[d]
    del nxt[d]


def _compact(twin: dict[int, int], origin: dict[int, int],
             nxt: dict[int, int], vertex_alive: list[bool]
             ) -> tuple[list[int], list[int], list[int], int,
                        dict[int, int], dict[int, int]]:
    """Renumber live darts and vertices in increasing order."""
    live = sorted(twin)
    dmap = {d: i for i, d in enumerate(live)}
    vmap: dict[int, int] = {}
    for v, alive in enumerate(vertex_alive):
        if alive:
            vmap[v] = len(vmap)
    new_twin = [dmap[twin[d]] for d in live]
    new_origin = [vmap[origin[d]] for d in live]
    new_next = [dmap[nxt[d]] for d in live]
    return new_twin, new_origin, new_next, len(vmap), dmap, vmap


def delete_edge_suppress(m: RotationMap, edge: int) -> RotationMap:
    """Delete a non-bridge edge of a cubic map and suppress both endpoints.

    Each endpoint drops to degree 2 and is removed by splicing its two
    remaining edges into one.  The result is cubic again, may contain
    parallel edges, and carries a SuppressionRecord journal entry.
    """
    edge = m.edge_id(edge)
    if edge in find_bridges(m):
        raise BridgeDeletion(f"edge {m.edge_endpoints(edge)} is a bridge")
    if any(m.degree(v) != 3 for v in range(m.vertex_count)):
        raise NotCubic("delete_edge_suppress requires a cubic map")

    twin, origin, nxt = _rotation_dicts(m)
    d0, d1 = edge, m.twin(edge)
    u, v = origin[d0], origin[d1]
    if u == v:
        raise DegenerateSurgery("cannot delete a loop")
    _remove_from_rotation(nxt, d0)
    _remove_from_rotation(nxt, d1)
    for d in (d0, d1):
        del twin[d], origin[d]

    vertex_alive = [True] * m.vertex_count
    for w in (u, v):
        remaining = [d for d in twin if origin[d] == w]
        if len(remaining) != 2:
            raise DegenerateSurgery(f"vertex {w} lost its degree-2 shape")
        p, q = remaining
        tp, tq = twin[p], twin[q]
        if tp == q:
            raise DegenerateSurgery("suppression would leave a free loop")
        twin[tp], twin[tq] = tq, tp
        for d in (p, q):
            del twin[d], origin[d], nxt[d]
        vertex_alive[w] = False

    new_twin, new_origin, new_next, nverts, dmap, _ = _compact(
        twin, origin, nxt, vertex_alive)
    child = RotationMap(new_twin, new_origin, new_next, nverts,
                        allow_parallel=True)
    edge_map: dict[int, int] = {}
    for e in m.edges():
        if e == edge:
            continue
        if e in dmap:
            edge_map[e] = child.edge_id(dmap[e])
        else:
            edge_map[e] = child.edge_id(dmap[m.twin(e)])
    record = SuppressionRecord(parent=m, deleted_edge=edge,
                               suppressed_vertices=(u, v),
                               edge_map=edge_map, dart_map=dmap)
    child = RotationMap(new_twin, new_origin, new_next, nverts,
                        allow_parallel=True, journal=m.journal + (record,))
    assert child.vertex_count == m.vertex_count - 2
    assert child.edge_count == m.edge_count - 3
    assert child.vertex_count - child.edge_count + child.face_count == 2
    return child


def undo_suppress(child: RotationMap) -> RotationMap:
    """Parent map of the most recent delete_edge_suppress."""
    if not child.journal or not isinstance(child.journal[-1], SuppressionRecord):
        raise MapError("no suppression to undo")
    return child.journal[-1].parent


def contract_face(m: RotationMap, face_id: int) -> tuple[RotationMap, int]:
    """Contract a face with simple boundary to a single hub vertex.

    The boundary edges vanish, the boundary vertices merge into a hub
    whose rotation is inherited from the walk, and every other vertex
    keeps its rotation.  The hub is the last vertex id of the child map.
    Chords of the face become loops at the hub; parallel edges are
    permitted in the result.
    """
    if not 0 <= face_id < m.face_count:
        raise UnknownFace(f"face {face_id} out of range")
    walk = m.faces[face_id].darts
    bverts = tuple(m.origin(d) for d in walk)
    if len(set(bverts)) != len(bverts):
        raise NonSimpleBoundary(f"face {face_id} repeats a vertex")
    if len(set(m.edge_id(d) for d in walk)) != len(walk):
        raise NonSimpleBoundary(f"face {face_id} repeats an edge")

    twin, origin, nxt = _rotation_dicts(m)
    k = len(walk)
    boundary_darts = set(walk) | {m.twin(d) for d in walk}

    # outer darts per corner: clockwise arc from the departure dart of the
    # walk to the dart arriving back along the previous walk edge
    outer: list[list[int]] = []
    for i, d in enumerate(walk):
        arrive = m.twin(walk[i - 1])
        cur = m.next(d)
        arc = []
        while cur != arrive:
            arc.append(cur)
            cur = m.next(cur)
        outer.append(arc)

    # the walk runs counterclockwise around the face interior, so clockwise
    # order around the shrunk hub visits the corners in reverse walk order
    hub_rotation: list[int] = []
    for i in range(k):
        hub_rotation.extend(outer[(-i) % k])

    for d in boundary_darts:
        del twin[d], origin[d], nxt[d]
    hub_old = m.vertex_count
    for d in hub_rotation:
        origin[d] = hub_old
    for i, d in enumerate(hub_rotation):
        nxt[d] = hub_rotation[(i + 1) % len(hub_rotation)]

    vertex_alive = [True] * (m.vertex_count + 1)
    for bv in bverts:
        vertex_alive[bv] = False
    new_twin, new_origin, new_next, nverts, dmap, vmap = _compact(
        twin, origin, nxt, vertex_alive)
    hub = vmap[hub_old]
    child = RotationMap(new_twin, new_origin, new_next, nverts,
                        allow_parallel=True)
    edge_map = {}
    for e in m.edges():
        if e in dmap:
            edge_map[child.edge_id(dmap[e])] = e
    record = ContractionRecord(parent=m, face_id=face_id, hub=hub,
                               boundary_vertices=bverts,
                               boundary_darts=tuple(walk),
                               outer_darts=tuple(tuple(a) for a in outer),
                               edge_map=edge_map, dart_map=dmap)
    child = RotationMap(new_twin, new_origin, new_next, nverts,
                        allow_parallel=True, journal=m.journal + (record,))
    assert child.vertex_count == m.vertex_count - k + 1
    assert child.edge_count == m.edge_count - k
    return child, hub


def undo_contract(child: RotationMap) -> RotationMap:
    """Parent map of the most recent contract_face."""
    if not child.journal or not isinstance(child.journal[-1], ContractionRecord):
        raise MapError("no contraction to undo")
    return child.journal[-1].parent
