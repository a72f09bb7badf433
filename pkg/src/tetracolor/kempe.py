"""Kempe chains, local inversions, and the pentagon reduction pipeline.

The pipeline takes a cubic bridgeless planar map with a pentagonal face,
removes one pentagon edge, three-edge-colors the smaller map, contracts
the pentagon of the original map to a five-valent hub, and then tries to
reach a state whose three majority-colored hub edges are contiguous
(``tbci``), at which point the pentagon can be re-expanded with a proper
coloring.  Non-contiguous states are attacked with local inversions of
two-colored cycles; every state transition is recorded in a replayable
trace, and any situation the driving argument says cannot happen is
reported as an anomaly rather than papered over.

A chain here is a connected subgraph of two color classes.  Away from the
hub every vertex is properly 3-valent, so chains decompose into simple
cycles; through the hub a maximal chain can hold two cycles ("passages"),
and inversions always flip one whole cycle.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .coloring import (EDGE_ORDER, EdgeColor, EdgeColoring, find_tait_coloring,
                       verify_coloring)
from .planar_map import (ContractionRecord, MapError, RotationMap,
                         SuppressionRecord, contract_face,
                         delete_edge_suppress, serialize_map, validate)


class KempeError(MapError):
    pass


class SeedColorMismatch(KempeError):
    """The seed edge's color is not in the requested color pair."""


class PatternNotAllowed(KempeError):
    """Hub parity violated: some subgraph has odd degree at the hub."""


class PreconditionPattern(KempeError):
    """Topology classification asked for on an unsuitable hub pattern."""


class UnclassifiedTopology(KempeError):
    """Dart pairing at the hub fits none of the four expected shapes."""


class DegreeMismatch(KempeError):
    """Hub degree is not five."""


class MissingJournal(KempeError):
    """No contraction journal available to restore the pentagon."""


class NoPentagon(KempeError):
    """The requested face is not a pentagon."""


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KempeChain:
    """A connected edge set drawn from two color classes.

    ``find_chain`` returns maximal chains; the reduction also inverts
    single cycles of a chain, represented with ``maximal=False``.
    """

    host: RotationMap
    color_pair: frozenset[EdgeColor]
    edges: frozenset[int]
    maximal: bool = True

    @property
    def is_simple_cycle(self) -> bool:
        degs = self._degrees()
        return bool(degs) and all(d == 2 for d in degs.values())

    @property
    def branch_vertices(self) -> tuple[int, ...]:
        """Vertices the chain passes more than once (the hub, typically)."""
        return tuple(sorted(v for v, d in self._degrees().items() if d > 2))

    def _degrees(self) -> dict[int, int]:
        degs: dict[int, int] = {}
        for e in self.edges:
            for v in self.host.edge_endpoints(e):
                degs[v] = degs.get(v, 0) + 1
        return degs


def find_chain(m: RotationMap, ec: EdgeColoring, seed: int,
               pair: frozenset[EdgeColor]) -> KempeChain:
    """Maximal connected two-colored subgraph through the seed edge."""
    seed = m.edge_id(seed)
    if ec[seed] not in pair:
        raise SeedColorMismatch(f"seed edge {seed} is {ec[seed]}, not in {sorted(c.value for c in pair)}")
    seen = {seed}
    stack = [seed]
    while stack:
        e = stack.pop()
        for v in m.edge_endpoints(e):
            for d in m.vertex_darts(v):
                e2 = m.edge_id(d)
                if e2 not in seen and ec[e2] in pair:
                    seen.add(e2)
                    stack.append(e2)
    return KempeChain(m, pair, frozenset(seen))


def _pair_walk(m: RotationMap, ec: EdgeColoring, start_dart: int,
               pair: frozenset[EdgeColor], stop_vertex: int
               ) -> tuple[tuple[int, ...], int]:
    """Walk the two-colored subgraph from a hub dart until the hub returns.

    Continuation away from the hub is forced: a proper 3-valent vertex has
    exactly two incident edges of the pair.  Returns the dart sequence and
    the hub dart of the arrival edge.
    """
    walk = [start_dart]
    d = start_dart
    while True:
        w = m.head(d)
        if w == stop_vertex:
            return tuple(walk), m.twin(d)
        arrived = m.edge_id(d)
        nxt = None
        for d2 in m.vertex_darts(w):
            e2 = m.edge_id(d2)
            if e2 != arrived and ec[e2] in pair:
                if nxt is not None:
                    raise KempeError(f"vertex {w} is not properly 3-valent in the pair")
                nxt = d2
        if nxt is None:
            raise KempeError(f"walk dead-ends at vertex {w}")
        walk.append(nxt)
        d = nxt


def cycle_through(m: RotationMap, ec: EdgeColoring, hub: int, hub_dart: int,
                  pair: frozenset[EdgeColor]) -> KempeChain:
    """The unique two-colored simple cycle through one hub dart."""
    walk, _end = _pair_walk(m, ec, hub_dart, pair, hub)
    edges = frozenset(m.edge_id(d) for d in walk)
    return KempeChain(m, pair, edges, maximal=False)


def hub_pairing(m: RotationMap, ec: EdgeColoring, hub: int,
                pair: frozenset[EdgeColor]) -> dict[int, int]:
    """How the hub darts of the two-colored subgraph pair up via walks."""
    darts = [d for d in m.vertex_darts(hub) if ec[m.edge_id(d)] in pair]
    partner: dict[int, int] = {}
    for d in darts:
        if d in partner:
            continue
        if m.head(d) == hub:  # loop edge at the hub
            partner[d] = m.twin(d)
            partner[m.twin(d)] = d
            continue
        _, end = _pair_walk(m, ec, d, pair, hub)
        partner[d] = end
        partner[end] = d
    # consistency: the pairing must be a perfect matching on the hub darts
    if sorted(partner) != sorted(darts) or any(partner[partner[d]] != d for d in darts):
        raise KempeError("hub walk pairing is not an involution")
    return partner


def invert_chain(ec: EdgeColoring, chain: KempeChain) -> EdgeColoring:
    """Swap the chain's two colors on exactly its edges.

    Every vertex that the chain passes properly (two pair-colored incident
    edges, both on the chain) stays proper; inverting twice restores the
    input.
    """
    a, b = sorted(chain.color_pair, key=lambda c: c.value)
    swap = {a: b, b: a}
    assignment = dict(ec.assignment)
    for e in chain.edges:
        c = assignment[e]
        if c not in swap:
            raise KempeError(f"chain edge {e} is {c}, outside the pair")
        assignment[e] = swap[c]
    return EdgeColoring(assignment)


# ---------------------------------------------------------------------------
# hub patterns and topology classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexPattern:
    """Colors around the hub in clockwise rotation order.

    ``tbci`` is true when the three majority-colored darts are cyclically
    consecutive; the even-parity laws force every legal pattern into a
    3-1-1 color multiset, which pattern_at validates.
    """

    darts: tuple[int, ...]
    cyclic_colors: tuple[EdgeColor, ...]
    multiset: tuple[tuple[EdgeColor, int], ...]
    majority: EdgeColor
    tbci: bool

    @property
    def word(self) -> str:
        return "".join(c.value for c in self.cyclic_colors)


class TopologyClass(enum.Enum):
    T1 = "T1"
    T1P = "T1p"
    T2 = "T2"
    T2P = "T2p"


def pattern_at(m: RotationMap, ec: EdgeColoring, hub: int) -> VertexPattern:
    """Read and validate the color pattern at a five-valent hub."""
    darts = m.vertex_darts(hub)
    if len(darts) != 5:
        raise DegreeMismatch(f"hub degree is {len(darts)}, want 5")
    colors = tuple(ec[m.edge_id(d)] for d in darts)
    counts = {c: 0 for c in EDGE_ORDER}
    for c in colors:
        counts[c] += 1
    blue_green = counts[EdgeColor.BLUE] + counts[EdgeColor.GREEN]
    yellow_green = counts[EdgeColor.YELLOW] + counts[EdgeColor.GREEN]
    if blue_green % 2 or yellow_green % 2:
        raise PatternNotAllowed(
            f"hub parity violated: word {''.join(c.value for c in colors)}")
    majority = max(counts, key=lambda c: counts[c])
    # parity forces all three counts odd, hence 3-1-1
    assert sorted(counts.values()) == [1, 1, 3]
    maj_pos = [i for i, c in enumerate(colors) if c == majority]
    tbci = _contiguous(maj_pos, 5)
    multiset = tuple((c, counts[c]) for c in EDGE_ORDER)
    return VertexPattern(darts=darts, cyclic_colors=colors, multiset=multiset,
                         majority=majority, tbci=tbci)


def _contiguous(positions: list[int], n: int) -> bool:
    k = len(positions)
    pos = set(positions)
    return any(all((s + i) % n in pos for i in range(k)) for s in range(n))


def _lone_index(pattern: VertexPattern) -> int:
    """Index of the majority dart whose cyclic neighbors are non-majority."""
    colors = pattern.cyclic_colors
    n = len(colors)
    for i, c in enumerate(colors):
        if (c == pattern.majority
                and colors[(i - 1) % n] != pattern.majority
                and colors[(i + 1) % n] != pattern.majority):
            return i
    raise PreconditionPattern("no lone majority dart (pattern is tbci?)")


def classify_topology(m: RotationMap, ec: EdgeColoring, hub: int,
                      majority: EdgeColor) -> TopologyClass:
    """How the majority curve's two hub passages pair the four hub darts.

    The majority curve is the majority-plus-green subgraph; at the hub it
    holds the three majority darts and the green dart, and its two hub
    passages are vertex-disjoint away from the hub, so planarity admits
    only the two non-crossing pairings.  When the green dart pairs with
    the lone majority dart the state is topology 2: inverting that one
    passage cycle hands the majority all three slots around the former
    lone position, i.e. forces tbci.  When the green dart pairs with a
    member of the majority pair the state is topology 1, the resistant
    shape.  The primed labels are the mirror variants, read off from
    which side of the lone dart the green singleton sits; an interleaved
    pairing cannot be drawn in the plane and raises UnclassifiedTopology.
    """
    pattern = pattern_at(m, ec, hub)
    if pattern.tbci:
        raise PreconditionPattern("pattern is tbci; nothing to classify")
    if majority != pattern.majority:
        raise PreconditionPattern(
            f"majority {majority} does not match the pattern's {pattern.majority}")
    if majority == EdgeColor.GREEN:
        raise PreconditionPattern("green majority must be normalized away first")
    if any(m.head(d) == hub for d in pattern.darts):
        raise PreconditionPattern("loop at the hub")
    pair = frozenset((majority, EdgeColor.GREEN))
    curve_darts = [d for d in pattern.darts if ec[m.edge_id(d)] in pair]
    if len(curve_darts) != 4:
        raise PreconditionPattern(
            f"majority curve has {len(curve_darts)} hub darts, want 4")
    lone_i = _lone_index(pattern)
    lone = pattern.darts[lone_i]
    green = next(d for d in pattern.darts if ec[m.edge_id(d)] == EdgeColor.GREEN)
    mirrored = pattern.cyclic_colors[(lone_i + 1) % 5] != EdgeColor.GREEN
    partner = hub_pairing(m, ec, hub, pair)
    k = curve_darts.index(lone)
    p = curve_darts[k:] + curve_darts[:k]  # cyclic order from the lone dart
    if partner[p[0]] == p[2]:
        raise UnclassifiedTopology(
            "interleaved hub passages, impossible in a planar embedding")
    if partner[green] == lone:
        return TopologyClass.T2P if mirrored else TopologyClass.T2
    return TopologyClass.T1P if mirrored else TopologyClass.T1


# ---------------------------------------------------------------------------
# pentagon expansion
# ---------------------------------------------------------------------------

def expand_vertex(m: RotationMap, ec: EdgeColoring, hub: int
                  ) -> Optional[tuple[RotationMap, EdgeColoring]]:
    """Restore the contracted pentagon and extend the coloring onto it.

    Every edge that survived the contraction keeps its color; the five
    pentagon boundary edges are assigned by exhaustive search over proper
    local extensions.  Returns None when no extension exists, which is
    exactly the non-tbci situation.
    """
    if m.degree(hub) != 5:
        raise DegreeMismatch(f"hub degree is {m.degree(hub)}, want 5")
    if not m.journal or not isinstance(m.journal[-1], ContractionRecord):
        raise MissingJournal("map carries no contraction record")
    record: ContractionRecord = m.journal[-1]
    if record.hub != hub:
        raise MissingJournal(f"journal contraction is for hub {record.hub}, not {hub}")
    parent = record.parent

    colors: dict[int, EdgeColor] = {}
    for child_edge, parent_edge in record.edge_map.items():
        colors[parent_edge] = ec[child_edge]
    boundary = [parent.edge_id(d) for d in record.boundary_darts]
    bverts = record.boundary_vertices
    k = len(boundary)

    vert_edges = [[parent.edge_id(d) for d in parent.vertex_darts(v)]
                  for v in range(parent.vertex_count)]

    def consistent(v: int) -> bool:
        cs = [colors[e] for e in vert_edges[v] if e in colors]
        return len(cs) == len(set(cs))

    def assign(i: int) -> bool:
        if i == k:
            return all(consistent(v) for v in bverts)
        e = boundary[i]
        for c in EDGE_ORDER:
            colors[e] = c
            u, v = parent.edge_endpoints(e)
            partial_ok = True
            for w in (u, v):
                cs = [colors[x] for x in vert_edges[w] if x in colors]
                if len(cs) != len(set(cs)):
                    partial_ok = False
                    break
            if partial_ok and assign(i + 1):
                return True
            del colors[e]
        return False

    if not assign(0):
        return None
    full = EdgeColoring(dict(sorted(colors.items())))
    if verify_coloring(parent, full):
        return None  # extension claimed proper but is not; treat as absent
    return parent, full


# ---------------------------------------------------------------------------
# reduction trace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Contracted:
    face_id: int
    hub: int
    deleted_edge: tuple[int, int]
    kind: str = "contracted"


@dataclass(frozen=True)
class Normalized:
    permutation: tuple[tuple[str, str], ...]  # (from, to) color letters
    kind: str = "normalized"


@dataclass(frozen=True)
class Pattern:
    word: str
    tbci: bool
    majority: str
    kind: str = "pattern"


@dataclass(frozen=True)
class Topology:
    label: str
    kind: str = "topology"


@dataclass(frozen=True)
class Inverted:
    inversion: str          # "L1", "L2", or "auxiliary"
    pair: str               # e.g. "BY"
    seed_dart: int
    edges: tuple[int, ...]  # edge ids of the contracted map
    word_after: str
    kind: str = "inverted"


@dataclass(frozen=True)
class ExpandSuccess:
    coloring: str           # coloring-file text of the restored map
    kind: str = "expand-success"


@dataclass(frozen=True)
class Anomaly:
    anomaly: str
    state: dict
    kind: str = "anomaly"


TraceEvent = Union[Contracted, Normalized, Pattern, Topology, Inverted,
                   ExpandSuccess, Anomaly]

ANOMALY_TOPOLOGY_RECURRENCE = "topology-one-recurrence"
ANOMALY_BUDGET = "budget-exhausted"
ANOMALY_UNCLASSIFIED = "unclassified-topology"
ANOMALY_EXPAND_FAILURE = "expand-failure"
ANOMALY_CHAIN_INEFFECTIVE = "chain-inversion-ineffective"
ANOMALY_CHORDED_PENTAGON = "chorded-pentagon"
ANOMALY_NO_TAIT = "tait-coloring-unavailable"
ANOMALY_PATTERN = "pattern-not-allowed"


@dataclass(frozen=True)
class ReductionTrace:
    """Replayable record of one pentagon reduction attempt."""

    map_text: str
    pentagon: int
    deleted_edge: tuple[int, int]
    step_budget: int
    events: tuple[TraceEvent, ...]
    contracted_map: Optional[RotationMap] = field(default=None, compare=False)
    hub: Optional[int] = field(default=None, compare=False)
    initial_coloring: Optional[EdgeColoring] = field(default=None, compare=False)
    final_coloring: Optional[EdgeColoring] = field(default=None, compare=False)
    result: Optional[tuple[RotationMap, EdgeColoring]] = field(default=None, compare=False)

    @property
    def succeeded(self) -> bool:
        return any(isinstance(e, ExpandSuccess) for e in self.events)

    @property
    def anomaly(self) -> Optional[str]:
        for e in self.events:
            if isinstance(e, Anomaly):
                return e.anomaly
        return None

    @property
    def inversions(self) -> tuple[Inverted, ...]:
        return tuple(e for e in self.events if isinstance(e, Inverted))

    @property
    def topology_sequence(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.events if isinstance(e, Topology))

    def to_jsonl(self) -> str:
        header = {"kind": "header", "pentagon": self.pentagon,
                  "deleted_edge": list(self.deleted_edge),
                  "step_budget": self.step_budget,
                  "map": self.map_text}
        lines = [json.dumps(header, sort_keys=True)]
        for ev in self.events:
            rec = {"kind": ev.kind}
            for name, value in vars(ev).items():
                if name == "kind":
                    continue
                if isinstance(value, tuple):
                    value = list(value) if not (value and isinstance(value[0], tuple)) \
                        else [list(x) for x in value]
                rec[name] = value
            lines.append(json.dumps(rec, sort_keys=True))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the reduction procedure
# ---------------------------------------------------------------------------

_PAIR_BY = frozenset((EdgeColor.BLUE, EdgeColor.YELLOW))


def _word(m: RotationMap, ec: EdgeColoring, hub: int) -> str:
    return "".join(ec[m.edge_id(d)].value for d in m.vertex_darts(hub))


def _apply_permutation(ec: EdgeColoring,
                       perm: dict[EdgeColor, EdgeColor]) -> EdgeColoring:
    return EdgeColoring({e: perm.get(c, c) for e, c in ec.assignment.items()})


def _transfer_coloring(cmap: RotationMap, small: RotationMap,
                       ec_small: EdgeColoring) -> EdgeColoring:
    """Pull the smaller map's coloring onto the contracted map.

    The contraction journal maps contracted-map edges to original edges;
    the suppression journal on the smaller map sends each surviving
    original edge to the smaller-map edge that carries it.
    """
    contraction: ContractionRecord = cmap.journal[-1]
    suppression: SuppressionRecord = small.journal[-1]
    assignment: dict[int, EdgeColor] = {}
    for child_edge, parent_edge in contraction.edge_map.items():
        assignment[child_edge] = ec_small[suppression.edge_map[parent_edge]]
    return EdgeColoring(assignment)


def run_procedure(n_map: RotationMap, pentagon: int,
                  deleted_edge: Optional[int] = None,
                  step_budget: int = 64) -> ReductionTrace:
    """Run the full pentagon reduction on one map and record every step.

    One pentagon edge is deleted (least edge id by default) and the
    smaller cubic map is three-edge-colored; the pentagon of the original
    map is contracted to a five-valent hub carrying the transferred
    colors.  The loop then alternates pattern reading, topology
    classification, and cycle inversions until the pattern turns tbci and
    the pentagon re-expands, or an anomaly is hit:

    * a tbci pattern expands immediately;
    * an interleaved (T2/T2p) majority curve is fixed by inverting
      whichever hub passage cycle of the majority-green pair forces tbci;
    * a nested (T1/T1p) curve triggers the first blue-yellow cycle
      inversion through the lone majority dart (L1 when the result stays
      non-tbci), then through the non-green singleton dart (L2), after
      which a repeated T1/T1p classification is the disputed scenario and
      is reported as an anomaly, never silently retried.
    """
    report = validate(n_map)
    if not (report.connected and report.cubic and report.bridgeless and report.planar):
        raise NoPentagon("reduction needs a connected cubic bridgeless planar map")
    if not 0 <= pentagon < n_map.face_count or len(n_map.faces[pentagon]) != 5:
        raise NoPentagon(f"face {pentagon} is not a pentagon")
    walk = n_map.faces[pentagon].darts
    boundary_edges = sorted(n_map.edge_id(d) for d in walk)
    if deleted_edge is None:
        deleted_edge = boundary_edges[0]
    elif n_map.edge_id(deleted_edge) not in boundary_edges:
        raise NoPentagon(f"edge {deleted_edge} is not on face {pentagon}")
    deleted_edge = n_map.edge_id(deleted_edge)

    small = delete_edge_suppress(n_map, deleted_edge)
    cmap, hub = contract_face(n_map, pentagon)
    events: list[TraceEvent] = [
        Contracted(face_id=pentagon, hub=hub,
                   deleted_edge=tuple(x + 1 for x in n_map.edge_endpoints(deleted_edge)))]
    trace_args = dict(map_text=serialize_map(n_map), pentagon=pentagon,
                      deleted_edge=events[0].deleted_edge,
                      step_budget=step_budget, contracted_map=cmap, hub=hub)

    ec_small = find_tait_coloring(small)
    if ec_small is None:
        events.append(Anomaly(ANOMALY_NO_TAIT, {"smaller_map": serialize_map(small)}))
        return ReductionTrace(events=tuple(events), **trace_args)

    ec = _transfer_coloring(cmap, small, ec_small)
    initial = ec
    phase = 0          # counts non-tbci blue-yellow inversions (L1 then L2)
    last_kind: Optional[str] = None

    def snapshot() -> dict:
        return {"word": _word(cmap, ec, hub),
                "coloring": _serialize_ec(cmap, ec),
                "phase": phase}

    def finish() -> ReductionTrace:
        return ReductionTrace(events=tuple(events), initial_coloring=initial,
                              final_coloring=ec, **trace_args)

    for _ in range(step_budget):
        try:
            pattern = pattern_at(cmap, ec, hub)
        except PatternNotAllowed as exc:
            events.append(Anomaly(ANOMALY_PATTERN, {"error": str(exc), **snapshot()}))
            return finish()
        events.append(Pattern(word=pattern.word, tbci=pattern.tbci,
                              majority=pattern.majority.value))

        if pattern.tbci:
            result = expand_vertex(cmap, ec, hub)
            if result is None:
                events.append(Anomaly(ANOMALY_EXPAND_FAILURE, snapshot()))
                return finish()
            parent, full = result
            events.append(ExpandSuccess(coloring=_serialize_ec(parent, full)))
            return ReductionTrace(events=tuple(events), initial_coloring=initial,
                                  final_coloring=ec, result=(parent, full),
                                  **trace_args)

        if any(cmap.head(d) == hub for d in pattern.darts):
            events.append(Anomaly(ANOMALY_CHORDED_PENTAGON, snapshot()))
            return finish()

        if pattern.majority == EdgeColor.GREEN:
            # swap green with the singleton clockwise after the lone dart, the
            # global recoloring that makes the majority a plain curve color
            lone_i = _lone_index(pattern)
            cw_color = pattern.cyclic_colors[(lone_i + 1) % 5]
            perm = {EdgeColor.GREEN: cw_color, cw_color: EdgeColor.GREEN}
            ec = _apply_permutation(ec, perm)
            events.append(Normalized(permutation=tuple(sorted(
                (a.value, b.value) for a, b in perm.items()))))
            continue

        try:
            topo = classify_topology(cmap, ec, hub, pattern.majority)
        except UnclassifiedTopology as exc:
            events.append(Anomaly(ANOMALY_UNCLASSIFIED, {"error": str(exc), **snapshot()}))
            return finish()
        events.append(Topology(label=topo.value))

        if last_kind == "L2" and topo in (TopologyClass.T1, TopologyClass.T1P):
            events.append(Anomaly(ANOMALY_TOPOLOGY_RECURRENCE, snapshot()))
            return finish()

        if topo in (TopologyClass.T2, TopologyClass.T2P):
            # the passage cycle through the green dart also holds the lone
            # majority dart here; inverting it must force tbci
            pair = frozenset((pattern.majority, EdgeColor.GREEN))
            green_dart = next(d for d in pattern.darts
                              if ec[cmap.edge_id(d)] == EdgeColor.GREEN)
            cycle = cycle_through(cmap, ec, hub, green_dart, pair)
            candidate = invert_chain(ec, cycle)
            if not pattern_at(cmap, candidate, hub).tbci:
                events.append(Anomaly(ANOMALY_CHAIN_INEFFECTIVE, snapshot()))
                return finish()
            ec = candidate
            events.append(Inverted(inversion="auxiliary",
                                   pair=_pair_str(pair), seed_dart=green_dart,
                                   edges=tuple(sorted(cycle.edges)),
                                   word_after=_word(cmap, ec, hub)))
            last_kind = "auxiliary"
            continue

        # T1 / T1p: blue-yellow cycle through the lone dart first, then
        # through the non-green singleton dart
        lone_i = _lone_index(pattern)
        if phase == 0:
            seed = pattern.darts[lone_i]
        else:
            singles = [d for i, d in enumerate(pattern.darts)
                       if pattern.cyclic_colors[i] not in
                       (pattern.majority, EdgeColor.GREEN)]
            if len(singles) != 1:
                events.append(Anomaly(ANOMALY_PATTERN,
                                      {"error": "no unique non-green singleton",
                                       **snapshot()}))
                return finish()
            seed = singles[0]
        cycle = cycle_through(cmap, ec, hub, seed, _PAIR_BY)
        ec = invert_chain(ec, cycle)
        now_tbci = pattern_at(cmap, ec, hub).tbci
        if now_tbci:
            kind = "auxiliary"
        else:
            kind = "L1" if phase == 0 else "L2"
            phase += 1
        events.append(Inverted(inversion=kind, pair="BY", seed_dart=seed,
                               edges=tuple(sorted(cycle.edges)),
                               word_after=_word(cmap, ec, hub)))
        last_kind = kind

    events.append(Anomaly(ANOMALY_BUDGET, snapshot()))
    return finish()


def _pair_str(pair: frozenset[EdgeColor]) -> str:
    return "".join(c.value for c in sorted(pair, key=lambda c: c.value))


def _serialize_ec(m: RotationMap, ec: EdgeColoring) -> str:
    from .coloring import serialize_coloring
    return serialize_coloring(m, ec)


def replay_inversions(trace: ReductionTrace) -> bool:
    """Re-apply the recorded recolorings to the recorded start state.

    True iff the replayed coloring matches the trace's final coloring
    exactly; traces without a start state (no Tait coloring) replay
    vacuously.
    """
    if trace.initial_coloring is None or trace.contracted_map is None:
        return True
    ec = trace.initial_coloring
    m = trace.contracted_map
    for ev in trace.events:
        if isinstance(ev, Normalized):
            perm = {EdgeColor.parse(a): EdgeColor.parse(b)
                    for a, b in ev.permutation}
            ec = _apply_permutation(ec, perm)
        elif isinstance(ev, Inverted):
            pair = frozenset(EdgeColor.parse(ch) for ch in ev.pair)
            ec = invert_chain(ec, KempeChain(m, pair, frozenset(ev.edges),
                                             maximal=False))
    return ec == trace.final_coloring


def replay_trace(n_map: RotationMap, trace: ReductionTrace) -> bool:
    """Deterministically re-run the instance and compare event lists."""
    deleted = n_map.find_edge(trace.deleted_edge[0] - 1, trace.deleted_edge[1] - 1)
    again = run_procedure(n_map, trace.pentagon, deleted_edge=deleted,
                          step_budget=trace.step_budget)
    return again.events == trace.events
