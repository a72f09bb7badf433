"""Corpus generation, canonical deduplication, and claim-by-claim checks.

Exhaustive mode enumerates every connected simple bridgeless cubic planar
map of a given order up to embedded-map isomorphism (reflections
identified).  Growth happens inside the wider class of loopless
bridgeless cubic planar multigraph maps, seeded by the two-vertex triple
edge and closed under inserting a new edge across a face (two subdivision
points on one or two boundary edges); the simple members are emitted.
Random mode walks seeded insertion chains from K4 and stays simple.

Each claim checker sweeps a corpus, returns a report with replayable
witnesses for every violation, and never mutates corpus maps.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .coloring import EdgeColor, find_tait_coloring, verify_coloring
from .dscc import split_subgraphs, trail_decompose
from .kempe import (ANOMALY_NO_TAIT, Inverted, KempeChain, Normalized,
                    Pattern, ReductionTrace, Topology, _apply_permutation,
                    find_chain, hub_pairing, invert_chain,
                    replay_inversions, run_procedure)
from .planar_map import MapError, RotationMap, parse_map, serialize_map, validate


class HarnessError(MapError):
    pass


class OddOrder(HarnessError):
    """Cubic maps need an even vertex count of at least four."""


class UnknownClaim(HarnessError):
    pass


class UnsupportedFormat(HarnessError):
    pass


@dataclass(frozen=True)
class GenConfig:
    """Corpus request: exhaustive, or reproducible random of a given size."""

    vertex_count: int
    mode: str = "exhaustive"          # "exhaustive" | "random"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.vertex_count % 2 or self.vertex_count < 4:
            raise OddOrder(f"vertex count {self.vertex_count} must be even and >= 4")
        if self.mode not in ("exhaustive", "random"):
            raise HarnessError(f"unknown mode {self.mode!r}")
        if self.mode == "random" and self.count < 1:
            raise HarnessError("random mode needs a positive count")


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def _walk_code(m: RotationMap, start: int) -> tuple[int, ...]:
    """Rotation-walk encoding rooted at one dart.

    Vertices are labeled in discovery order; each vertex contributes its
    degree and the labels of its neighbors read clockwise from the dart
    by which the vertex was first entered (the root uses the start dart).
    Two rooted maps are orientation-preserving isomorphic iff their codes
    match.
    """
    label = {m.origin(start): 0}
    entry = [start]
    code: list[int] = []
    i = 0
    while i < len(entry):
        d0 = entry[i]
        i += 1
        rot = []
        d = d0
        while True:
            w = m.head(d)
            lw = label.get(w)
            if lw is None:
                lw = len(label)
                label[w] = lw
                entry.append(m.twin(d))
            rot.append(lw)
            d = m.next(d)
            if d == d0:
                break
        code.append(len(rot))
        code.extend(rot)
    return tuple(code)


def _min_code(m: RotationMap) -> tuple[int, ...]:
    # cheap mirror-comparable dart profile: face length on both sides
    profile = [(len(m.faces[m.face_of(d)]), len(m.faces[m.face_of(m.twin(d))]))
               for d in range(m.dart_count)]
    lo = min(profile)
    best: Optional[tuple[int, ...]] = None
    for d in range(m.dart_count):
        if profile[d] != lo:
            continue
        code = _walk_code(m, d)
        if best is None or code < best:
            best = code
    assert best is not None
    return best


def canonical_form(m: RotationMap) -> str:
    """Key equal across orientation-preserving relabelings and reflections."""
    code = min(_min_code(m), _min_code(m.mirrored()))
    return f"{m.vertex_count};{m.edge_count};" + ",".join(map(str, code))


# ---------------------------------------------------------------------------
# growth operation
# ---------------------------------------------------------------------------

def insert_edge_across_face(m: RotationMap, face_id: int,
                            pos_i: int, pos_j: int) -> RotationMap:
    """Subdivide the face's walk edges at positions i and j (i == j splits
    one edge twice) and join the two new vertices across the face."""
    walk = m.faces[face_id].darts
    L = len(walk)
    if not (0 <= pos_i < L and 0 <= pos_j < L):
        raise HarnessError("walk position out of range")
    twin = list(m._twin)
    origin = list(m._origin)
    nxt = list(m._next)
    nverts = m.vertex_count

    def subdivide(dart: int) -> tuple[int, int]:
        """Split edge of `dart` at a new vertex; returns (new vertex, the
        continuation dart leaving the new vertex along the old edge)."""
        nonlocal nverts
        t = twin[dart]
        x = nverts
        nverts += 1
        t2 = len(twin)      # x -> origin(dart)
        d2 = len(twin) + 1  # x -> old head
        twin.extend([dart, t])
        origin.extend([x, x])
        nxt.extend([d2, t2])
        twin[dart] = t2
        twin[t] = d2
        return x, d2

    a = walk[pos_i]
    x, a_cont = subdivide(a)
    if pos_i == pos_j:
        b = a_cont  # second split lands on the continuation half of the same edge
    else:
        b = walk[pos_j]
    y, b_cont = subdivide(b)

    g = len(twin)      # x -> y
    h = len(twin) + 1  # y -> x
    twin.extend([h, g])
    origin.extend([x, y])
    nxt.extend([0, 0])
    # place the chord inside the face: at x between the returning half and
    # the continuation, clockwise (t2_x, g, d2_x); same at y
    t2_x = twin[a]
    nxt[t2_x] = g
    nxt[g] = a_cont
    nxt[a_cont] = t2_x
    t2_y = twin[b]
    nxt[t2_y] = h
    nxt[h] = b_cont
    nxt[b_cont] = t2_y

    child = RotationMap(twin, origin, nxt, nverts, allow_parallel=True)
    assert child.vertex_count - child.edge_count + child.face_count == 2
    assert child.face_count == m.face_count + 1
    return child


_DIPOLE = parse_map("2\n1: 2 2 2\n2: 1 1 1\n", allow_parallel=True)

K4_TEXT = "4\n1: 2 4 3\n2: 3 4 1\n3: 1 4 2\n4: 1 2 3\n"


def _insertions(m: RotationMap) -> Iterator[RotationMap]:
    for f in m.faces:
        L = len(f)
        for i in range(L):
            for j in range(i, L):
                yield insert_edge_across_face(m, f.id, i, j)


@lru_cache(maxsize=None)
def _exhaustive_level(n: int) -> tuple[tuple[str, str], ...]:
    """All loopless bridgeless cubic planar maps of order n, as
    (canonical key, serialized text) pairs sorted by key."""
    if n == 2:
        return ((canonical_form(_DIPOLE), serialize_map(_DIPOLE)),)
    found: dict[str, str] = {}
    for _, text in _exhaustive_level(n - 2):
        parent = parse_map(text, allow_parallel=True)
        for child in _insertions(parent):
            key = canonical_form(child)
            if key not in found:
                found[key] = serialize_map(child)
    return tuple(sorted(found.items()))


def generate(config: GenConfig) -> Iterator[RotationMap]:
    """Stream corpus maps; every emitted map passes validate with all flags."""
    if config.mode == "exhaustive":
        for _, text in _exhaustive_level(config.vertex_count):
            m = parse_map(text, allow_parallel=True)
            if validate(m).simple:
                m = parse_map(text)  # reparse strictly; journal-free, simple
                assert validate(m).all_ok
                yield m
        return
    rng = random.Random(config.seed)
    emitted = 0
    while emitted < config.count:
        m = parse_map(K4_TEXT)
        while m.vertex_count < config.vertex_count:
            f = rng.randrange(m.face_count)
            L = len(m.faces[f])
            i = rng.randrange(L)
            j = rng.randrange(L)
            if i == j:
                continue  # stay simple: two distinct boundary edges
            m = insert_edge_across_face(m, f, min(i, j), max(i, j))
        m = parse_map(serialize_map(m))
        assert validate(m).all_ok
        yield m
        emitted += 1


def corpus(n_max: int, include_random: int = 0, seed: int = 0,
           n_min: int = 4) -> list[RotationMap]:
    """Exhaustive corpora for every even order n_min..n_max, concatenated."""
    maps: list[RotationMap] = []
    for n in range(n_min, n_max + 1, 2):
        maps.extend(generate(GenConfig(n)))
    if include_random:
        maps.extend(generate(GenConfig(n_max, mode="random",
                                       count=include_random, seed=seed)))
    return maps


def is_three_connected(m: RotationMap) -> bool:
    """For a bridgeless cubic map: no 2-edge-cut, i.e. removing any single
    edge leaves the rest bridge-free."""
    from .planar_map import find_bridges
    for e in m.edges():
        d0, d1 = e, m.twin(e)
        keep = [d for d in range(m.dart_count) if d not in (d0, d1)]
        dmap = {d: i for i, d in enumerate(keep)}
        twin = [dmap[m.twin(d)] for d in keep]
        origin = [m.origin(d) for d in keep]
        nxt = []
        for d in keep:
            cur = m.next(d)
            while cur in (d0, d1):
                cur = m.next(cur)
            nxt.append(dmap[cur])
        try:
            sub = RotationMap(twin, origin, nxt, m.vertex_count,
                              allow_parallel=True)
        except MapError:
            return False  # a vertex lost its whole rotation: degree-1 remnant
        if find_bridges(sub):
            return False
    return True


# ---------------------------------------------------------------------------
# claims
# ---------------------------------------------------------------------------

CLAIM_IDS = ("C1", "C2", "C3", "C4", "C5", "C6")

CLAIM_TITLES = {
    "C1": "every corpus map admits a proper 3-edge-coloring",
    "C2": "every contracted-hub pattern is a 3-1-1 multiset (parity law)",
    "C3": "hub edges on one simple trail cycle lie on one chain (walk pairing)",
    "C4": "every inversion preserves even parity and 3-valent properness",
    "C5": "no topology-1 recurrence after the second blue-yellow inversion",
    "C6": "the reduction always ends in a successful pentagon expansion",
}


@dataclass(frozen=True)
class InstanceRecord:
    """One checked instance, for per-instance report rows."""

    map_key: str
    detail: dict
    ok: bool


@dataclass
class ClaimReport:
    claim: str
    instances_checked: int
    violations: list[tuple[str, dict]]  # (map text, witness data)
    runtime: float
    config: dict
    instances: list[InstanceRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


_trace_memo: dict[tuple[str, int, int], ReductionTrace] = {}


def _traced(m: RotationMap, key: str, pentagon: int, edge: int) -> ReductionTrace:
    memo_key = (key, pentagon, edge)
    if memo_key not in _trace_memo:
        _trace_memo[memo_key] = run_procedure(m, pentagon, deleted_edge=edge)
    return _trace_memo[memo_key]


def reduction_instances(maps: Iterable[RotationMap], edge_policy: str = "all",
                        mirrors: bool = True
                        ) -> Iterator[tuple[RotationMap, str, int, int]]:
    """(map, canonical key, pentagon face, deleted edge) sweep stream.

    Mirrored copies are swept as well when requested: corpus dedup
    identifies reflections, but the reduction's outcome can depend on the
    orientation.
    """
    for base in maps:
        variants = [(base, "")]
        if mirrors:
            # reserialize so a witness replayed from its map text makes the
            # same deterministic choices (dart numbering fixes the solver)
            variants.append((parse_map(serialize_map(base.mirrored()),
                                       allow_parallel=True), "/mirror"))
        for m, tag in variants:
            key = canonical_form(m) + tag
            for f in m.faces:
                if len(f) != 5:
                    continue
                pentagon_edges = sorted({m.edge_id(d) for d in f.darts})
                if edge_policy == "first":
                    pentagon_edges = pentagon_edges[:1]
                for e in pentagon_edges:
                    yield m, key, f.id, e


def check_claim(claim: str, maps: Iterable[RotationMap],
                options: Optional[dict] = None) -> ClaimReport:
    """Run one claim checker over a corpus and aggregate witnesses."""
    if claim not in CLAIM_IDS:
        raise UnknownClaim(f"claim {claim!r}; known: {', '.join(CLAIM_IDS)}")
    options = dict(options or {})
    t0 = time.monotonic()
    checker = {
        "C1": _check_tait_colorable,
        "C2": _check_pattern_law,
        "C3": _check_chain_existence,
        "C4": _check_inversion_safety,
        "C5": _check_no_recurrence,
        "C6": _check_always_expands,
    }[claim]
    report = checker(list(maps), options)
    report.runtime = time.monotonic() - t0
    report.config = {"claim": claim, "title": CLAIM_TITLES[claim], **options}
    return report


def _check_tait_colorable(maps: list[RotationMap], options: dict) -> ClaimReport:
    violations = []
    instances = []
    for m in maps:
        key = canonical_form(m)
        ec = find_tait_coloring(m)
        ok = ec is not None and not verify_coloring(m, ec)
        instances.append(InstanceRecord(key, {"n": m.vertex_count}, ok))
        if not ok:
            violations.append((serialize_map(m), {"reason": "no Tait coloring found"}))
    return ClaimReport("C1", len(instances), violations, 0.0, {}, instances)


def _check_pattern_law(maps: list[RotationMap], options: dict) -> ClaimReport:
    violations = []
    instances = []
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=False):
        tr = _traced(m, key, pentagon, edge)
        detail = {"pentagon": pentagon, "edge": list(tr.deleted_edge),
                  "n": m.vertex_count}
        if tr.anomaly == ANOMALY_NO_TAIT:
            detail["skipped"] = "smaller map has no Tait coloring"
            instances.append(InstanceRecord(key, detail, True))
            continue
        words = [ev.word for ev in tr.events if isinstance(ev, Pattern)]
        bad = [w for w in words
               if sorted((w.count("B"), w.count("Y"), w.count("G"))) != [1, 1, 3]]
        ok = not bad and bool(words)
        detail["patterns"] = words
        instances.append(InstanceRecord(key, detail, ok))
        if not ok:
            violations.append((tr.map_text, {"pentagon": pentagon,
                                             "edge": list(tr.deleted_edge),
                                             "bad_patterns": bad}))
    return ClaimReport("C2", len(instances), violations, 0.0, {}, instances)


def _check_chain_existence(maps: list[RotationMap], options: dict) -> ClaimReport:
    """Trail cycles through the hub must agree with chain walk pairings."""
    violations = []
    instances = []
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=False):
        tr = _traced(m, key, pentagon, edge)
        if tr.initial_coloring is None or tr.contracted_map is None:
            instances.append(InstanceRecord(
                key, {"pentagon": pentagon, "skipped": "no coloring"}, True))
            continue
        cmap, hub, ec = tr.contracted_map, tr.hub, tr.initial_coloring
        if any(cmap.head(d) == hub for d in cmap.vertex_darts(hub)):
            instances.append(InstanceRecord(
                key, {"pentagon": pentagon, "skipped": "loop at hub"}, True))
            continue
        ok = True
        checked = 0
        for color in (EdgeColor.BLUE, EdgeColor.YELLOW):
            pair = frozenset((color, EdgeColor.GREEN))
            sub_edges = frozenset(e for e in cmap.edges() if ec[e] in pair)
            hub_darts = [d for d in cmap.vertex_darts(hub) if ec[cmap.edge_id(d)] in pair]
            if len(hub_darts) not in (0, 2, 4):
                ok = False
                break
            if not hub_darts:
                continue
            partner = hub_pairing(cmap, ec, hub, pair)
            from .dscc import EvenSubgraph
            trails = trail_decompose(EvenSubgraph(sub_edges, color), cmap)
            for t in trails:
                hub_t = [d for d in t.darts if cmap.origin(d) == hub]
                if len(hub_t) != 1 or not t.is_simple_cycle(cmap):
                    continue  # premise needs a simple cycle through the hub
                depart = hub_t[0]
                arrive = cmap.twin(t.darts[(t.darts.index(depart) - 1) % len(t.darts)])
                checked += 1
                chain = find_chain(cmap, ec, cmap.edge_id(depart), pair)
                if (partner[depart] != arrive
                        or cmap.edge_id(arrive) not in chain.edges):
                    ok = False
        instances.append(InstanceRecord(
            key, {"pentagon": pentagon, "cycles_checked": checked}, ok))
        if not ok:
            violations.append((tr.map_text, {"pentagon": pentagon,
                                             "edge": list(tr.deleted_edge)}))
    return ClaimReport("C3", len(instances), violations, 0.0, {}, instances)


def _check_inversion_safety(maps: list[RotationMap], options: dict) -> ClaimReport:
    """Replay every trace, validating parity and properness after each step.

    Sweeps both orientations so its trace universe matches the disputed-step
    sweep: every inversion any checker ever performs gets validated here.
    """
    violations = []
    instances = []
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=True):
        tr = _traced(m, key, pentagon, edge)
        if tr.initial_coloring is None:
            instances.append(InstanceRecord(
                key, {"pentagon": pentagon, "skipped": "no coloring"}, True))
            continue
        cmap, hub = tr.contracted_map, tr.hub
        ec = tr.initial_coloring
        ok = True
        steps = 0
        for ev in tr.events:
            if isinstance(ev, Normalized):
                ec = _apply_permutation(ec, {EdgeColor.parse(a): EdgeColor.parse(b)
                                             for a, b in ev.permutation})
            elif isinstance(ev, Inverted):
                pair = frozenset(EdgeColor.parse(ch) for ch in ev.pair)
                ec = invert_chain(ec, KempeChain(cmap, pair,
                                                 frozenset(ev.edges), maximal=False))
                steps += 1
            else:
                continue
            try:
                split_subgraphs(cmap, ec)
            except MapError:
                ok = False
                break
            bad_vertex = any(
                len({ec[cmap.edge_id(d)] for d in cmap.vertex_darts(v)}) != 3
                for v in range(cmap.vertex_count) if v != hub and cmap.degree(v) == 3)
            if bad_vertex:
                ok = False
                break
        ok = ok and replay_inversions(tr)
        instances.append(InstanceRecord(
            key, {"pentagon": pentagon, "inversions": steps}, ok))
        if not ok:
            violations.append((tr.map_text, {"pentagon": pentagon,
                                             "edge": list(tr.deleted_edge)}))
    return ClaimReport("C4", len(instances), violations, 0.0, {}, instances)


def _check_no_recurrence(maps: list[RotationMap], options: dict) -> ClaimReport:
    violations = []
    instances = []
    three_conn: dict[str, bool] = {}
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=True):
        tr = _traced(m, key, pentagon, edge)
        if key not in three_conn:
            three_conn[key] = is_three_connected(m)
        seq = []
        after_l2 = False
        recurrence = False
        for ev in tr.events:
            if isinstance(ev, Topology):
                seq.append(ev.label)
                if after_l2 and ev.label in ("T1", "T1p"):
                    recurrence = True
                after_l2 = False
            elif isinstance(ev, Inverted) and ev.inversion == "L2":
                after_l2 = True
        detail = {"pentagon": pentagon, "edge": list(tr.deleted_edge),
                  "topologies": seq, "anomaly": tr.anomaly,
                  "succeeded": tr.succeeded,
                  "three_connected": three_conn[key]}
        ok = not recurrence
        instances.append(InstanceRecord(key, detail, ok))
        if not ok:
            violations.append((tr.map_text, {**detail,
                                             "trace": tr.to_jsonl()}))
    return ClaimReport("C5", len(instances), violations, 0.0, {}, instances)


def _check_always_expands(maps: list[RotationMap], options: dict) -> ClaimReport:
    violations = []
    instances = []
    three_conn: dict[str, bool] = {}
    for m, key, pentagon, edge in reduction_instances(maps, mirrors=True):
        tr = _traced(m, key, pentagon, edge)
        if key not in three_conn:
            three_conn[key] = is_three_connected(m)
        detail = {"pentagon": pentagon, "edge": list(tr.deleted_edge),
                  "anomaly": tr.anomaly, "three_connected": three_conn[key]}
        if tr.succeeded:
            # no silent acceptance: re-verify the expanded coloring
            parent, full = tr.result
            ok = not verify_coloring(parent, full)
        else:
            ok = False
        if tr.anomaly == ANOMALY_NO_TAIT:
            # the premise (a colorable smaller map) fails; record, don't blame
            detail["skipped"] = "smaller map has no Tait coloring"
            ok = True
        instances.append(InstanceRecord(key, detail, ok))
        if not ok:
            violations.append((tr.map_text, {**detail, "trace": tr.to_jsonl()}))
    return ClaimReport("C6", len(instances), violations, 0.0, {}, instances)


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

def emit_report(report: ClaimReport, format: str = "text") -> str:
    if format == "jsonl":
        lines = [json.dumps({"kind": "summary", "claim": report.claim,
                             "instances_checked": report.instances_checked,
                             "violations": len(report.violations),
                             "runtime_s": round(report.runtime, 3),
                             "config": report.config}, sort_keys=True)]
        for text, witness in report.violations:
            lines.append(json.dumps({"kind": "violation", "witness": witness,
                                     "map": text}, sort_keys=True))
        return "\n".join(lines) + "\n"
    if format == "csv":
        lines = ["claim,map_key,ok,detail"]
        for rec in report.instances:
            detail = json.dumps(rec.detail).replace('"', "'")
            lines.append(f"{report.claim},{rec.map_key},{int(rec.ok)},\"{detail}\"")
        return "\n".join(lines) + "\n"
    if format == "text":
        verdict = ("no counterexample found at this scale" if report.ok
                   else f"{len(report.violations)} violation(s) found")
        lines = [f"claim {report.claim}: {CLAIM_TITLES[report.claim]}",
                 f"instances checked: {report.instances_checked}",
                 f"runtime: {report.runtime:.2f}s",
                 f"verdict: {verdict}"]
        for text, witness in report.violations:
            lines.append("violation: " + json.dumps(witness, sort_keys=True))
            lines.append(text.rstrip())
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"format {format!r}; use jsonl, csv, or text")
