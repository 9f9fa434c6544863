"""Detection of the seven structures that keep an instance from being well structured.

Kinds, in the priority order used by :func:`detect`::

    cut-node, parallel-edges, unit-cost-S2, zero-cost-S2, S34, R4, R8

Every cost-two cycle on three or four nodes contains a zero-edge at each
node it can (zero-edges form a matching), so triangles through one zero-edge
and 4-cycles alternating between zero- and unit-edges are the only
candidates for the three node-set kinds.  They are enumerated by growing
from zero-edges, which keeps the search near linear on sparse graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import MapInstance, connected_components, contract, cut_nodes, induced
from .oracle import DEFAULT_BUDGET, OracleBudget, opt_at_least

KINDS = ("cut-node", "parallel-edges", "unit-cost-S2", "zero-cost-S2", "S34", "R4", "R8")
PRIORITY = {k: i for i, k in enumerate(KINDS)}
NODE_SET_KINDS = ("S34", "R4", "R8")
WELL_STRUCTURED_MIN_NODES = 12


@dataclass(frozen=True)
class Obstruction:
    kind: str
    carrier: tuple[int, ...]
    nodes: tuple[int, ...] = ()          # node set that pre-processing contracts
    witness: dict = field(default_factory=dict, compare=False, hash=False)


@dataclass(frozen=True)
class Cycle:
    nodes: tuple[int, ...]     # in cyclic order
    edges: tuple[int, ...]     # edges[i] joins nodes[i] and nodes[i+1]

    @property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)


# ---------------------------------------------------------------------------
# separating pairs

_SCIPY_THRESHOLD = 300


def _separates_py(inst: MapInstance, a: int, b: int) -> bool:
    n, adj = inst.n, inst.adj
    start = next((x for x in range(n) if x != a and x != b), None)
    if start is None:
        return False
    seen = [False] * n
    seen[a] = seen[b] = seen[start] = True
    queue = deque([start])
    count = 1
    while queue:
        x = queue.popleft()
        for y, _ in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count < n - 2


def _separating_scipy(inst: MapInstance, pairs: list[tuple[int, int]]) -> list[bool]:
    import numpy as np
    import scipy.sparse as sp
    from scipy.sparse.csgraph import connected_components as cc

    n = inst.n
    rows = np.array([e.u for e in inst.edges] + [e.v for e in inst.edges], dtype=np.int64)
    cols = np.array([e.v for e in inst.edges] + [e.u for e in inst.edges], dtype=np.int64)
    base = sp.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    indptr, indices = base.indptr, base.indices
    owner = np.repeat(np.arange(n), np.diff(indptr))
    data = np.ones(len(indices), dtype=np.int8)
    out = []
    for a, b in pairs:
        mask = (indices == a) | (indices == b) | (owner == a) | (owner == b)
        g = sp.csr_matrix((data, np.where(mask, owner, indices), indptr), shape=(n, n))
        k, _ = cc(g, directed=False)
        out.append(k - 2 >= 2)
    return out


def separating_pairs(inst: MapInstance, pairs: Iterable[tuple[int, int]]) -> list[bool]:
    """For each node pair, whether deleting both leaves two or more components."""
    pairs = list(pairs)
    if inst.n > _SCIPY_THRESHOLD and pairs:
        return _separating_scipy(inst, pairs)
    return [_separates_py(inst, a, b) for a, b in pairs]


# ---------------------------------------------------------------------------
# cheap cycles

def cost_two_triangles(inst: MapInstance) -> list[Cycle]:
    by_id = inst.by_id
    out = {}
    for z in inst.edges:
        if z.cost != 0:
            continue
        a, b = z.u, z.v
        for c, g1 in inst.adj[b]:
            if c in (a, b) or by_id[g1].cost != 1:
                continue
            for d, g2 in inst.adj[c]:
                if d == a and by_id[g2].cost == 1:
                    key = frozenset((z.id, g1, g2))
                    out.setdefault(key, Cycle((a, b, c), (z.id, g1, g2)))
    return [out[k] for k in sorted(out, key=sorted)]


def alternating_four_cycles(inst: MapInstance) -> list[Cycle]:
    """All 4-cycles of cost two, i.e. zero, unit, zero, unit around the cycle."""
    by_id = inst.by_id
    mate = inst.zero_mate
    zid = {}
    for e in inst.edges:
        if e.cost == 0:
            zid[e.u] = zid[e.v] = e.id
    out = {}
    for z in inst.edges:
        if z.cost != 0:
            continue
        for a, b in ((z.u, z.v), (z.v, z.u)):
            for c, g1 in inst.adj[b]:
                if c in (a, b) or by_id[g1].cost != 1:
                    continue
                d = mate[c]
                if d == -1 or d in (a, b):
                    continue
                for y, g2 in inst.adj[d]:
                    if y == a and by_id[g2].cost == 1:
                        key = frozenset((z.id, g1, zid[c], g2))
                        out.setdefault(key, Cycle((a, b, c, d), (z.id, g1, zid[c], g2)))
    return [out[k] for k in sorted(out, key=sorted)]


# ---------------------------------------------------------------------------
# the seven kinds

def find_cut_nodes(inst: MapInstance) -> list[Obstruction]:
    return [Obstruction("cut-node", (v,)) for v in sorted(cut_nodes(inst))]


def find_parallel_pairs(inst: MapInstance) -> list[Obstruction]:
    groups: dict[tuple[int, int], list[int]] = {}
    for e in inst.edges:
        groups.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(e.id)
    out = []
    for key, ids in groups.items():
        ids.sort()
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                out.append(Obstruction("parallel-edges", (ids[i], ids[j]), key))
    out.sort(key=lambda o: o.carrier)
    return out


def _pieces_at(inst: MapInstance, S: Iterable[int]):
    """Contract ``S`` and return (contraction, [(component, piece, labels)])."""
    res = contract(inst, S)
    vhat = res.contracted_node
    comps = connected_components(res.quotient, removed=[vhat])
    pieces = []
    for comp in comps:
        piece, labels = induced(res.quotient, [vhat, *comp])
        pieces.append((comp, piece, labels))
    return res, pieces


def _big_enough(piece: MapInstance, budget: OracleBudget) -> bool:
    return opt_at_least(piece, 3, budget)


def find_zero_s2(inst: MapInstance) -> list[Obstruction]:
    zero = [e for e in inst.edges if e.cost == 0]
    flags = separating_pairs(inst, [(e.u, e.v) for e in zero])
    return [Obstruction("zero-cost-S2", (e.id,), (e.u, e.v), {"edge": e.id})
            for e, ok in zip(zero, flags) if ok]


def find_unit_s2(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> list[Obstruction]:
    mate = inst.zero_mate
    cand = [e for e in inst.edges
            if e.cost == 1 and mate[e.u] not in (-1, e.v) and mate[e.v] not in (-1, e.u)]
    flags = separating_pairs(inst, [(e.u, e.v) for e in cand])
    out = []
    for e, ok in zip(cand, flags):
        if not ok:
            continue
        res, pieces = _pieces_at(inst, (e.u, e.v))
        x, y = res.node_map[mate[e.u]], res.node_map[mate[e.v]]
        good = 0
        for comp, piece, _ in pieces:
            members = set(comp)
            # each zero-edge at the contracted node lies in the piece of its far end
            hits = (x in members) + (y in members)
            if hits == 0:
                continue
            if _big_enough(piece, budget):
                good += min(hits, 1)
        if good >= 2:
            out.append(Obstruction("unit-cost-S2", (e.id,), (e.u, e.v), {"edge": e.id}))
    return out


def _outside_zero(inst: MapInstance, S: frozenset[int]) -> bool:
    mate = inst.zero_mate
    return any(mate[x] != -1 and mate[x] not in S for x in S)


def find_s34(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> list[Obstruction]:
    by_set: dict[frozenset[int], list[Cycle]] = {}
    for cyc in cost_two_triangles(inst) + alternating_four_cycles(inst):
        by_set.setdefault(cyc.node_set, []).append(cyc)
    out = []
    for S in sorted(by_set, key=sorted):
        if len(S) >= inst.n or _outside_zero(inst, S):
            continue
        res, pieces = _pieces_at(inst, S)
        if len(pieces) < 2:
            continue
        if sum(1 for _, piece, _ in pieces if _big_enough(piece, budget)) < 2:
            continue
        cyc = min(by_set[S], key=lambda c: sorted(c.edges))
        out.append(Obstruction("S34", tuple(sorted(S)), tuple(sorted(S)), {"cycle": cyc}))
    return out


def find_r4(inst: MapInstance) -> list[Obstruction]:
    by_set: dict[frozenset[int], list[Cycle]] = {}
    for cyc in alternating_four_cycles(inst):
        by_set.setdefault(cyc.node_set, []).append(cyc)
    out = []
    for S in sorted(by_set, key=sorted):
        if len(S) >= inst.n:
            continue
        ok = False
        for cyc in by_set[S]:
            a, b, c, d = cyc.nodes
            for x, y in ((a, c), (b, d)):
                if not inst.has_edge(x, y) and inst.degree(x) == 2 and inst.degree(y) == 2:
                    ok = True
        if ok:
            cyc = min(by_set[S], key=lambda c: sorted(c.edges))
            out.append(Obstruction("R4", tuple(sorted(S)), tuple(sorted(S)), {"cycle": cyc}))
    return out


def _r8_side(inst: MapInstance, cyc: Cycle, a: int, other: frozenset[int]):
    """The unit edge of ``cyc - a`` and edges joining its ends to ``other``, or None."""
    by_id = inst.by_id
    rest = [eid for eid in cyc.edges if a not in (by_id[eid].u, by_id[eid].v)]
    units = [eid for eid in rest if by_id[eid].cost == 1]
    if len(units) != 1:
        return None
    e = by_id[units[0]]
    links = []
    for x in (e.u, e.v):
        ids = sorted(eid for y, eid in inst.adj[x] if y in other)
        if not ids:
            return None
        links.append(ids[0])
    return e.id, links[0], links[1]


def find_r8(inst: MapInstance) -> list[Obstruction]:
    cycles = alternating_four_cycles(inst)
    at_node: dict[int, list[int]] = {}
    for i, cyc in enumerate(cycles):
        for x in cyc.nodes:
            at_node.setdefault(x, []).append(i)
    found: dict[tuple[int, ...], Obstruction] = {}
    for i, c1 in enumerate(cycles):
        near = set()
        for x in c1.nodes:
            for y, _ in inst.adj[x]:
                if y not in c1.node_set:
                    near.update(at_node.get(y, ()))
        for j in sorted(near):
            c2 = cycles[j]
            if c2.node_set & c1.node_set:
                continue
            S = c1.node_set | c2.node_set
            key = tuple(sorted(S))
            if key in found or len(S) >= inst.n:
                continue
            att = [x for x in S if any(y not in S for y, _ in inst.adj[x])]
            if len(att) != 2:
                continue
            a1 = [x for x in att if x in c1.node_set]
            a2 = [x for x in att if x in c2.node_set]
            if len(a1) != 1 or len(a2) != 1:
                continue
            s1 = _r8_side(inst, c1, a1[0], c2.node_set)
            s2 = _r8_side(inst, c2, a2[0], c1.node_set)
            if s1 is None or s2 is None:
                continue
            found[key] = Obstruction("R8", key, key, {
                "c1": c1, "c2": c2, "a1": a1[0], "a2": a2[0],
                "e": s1[0], "f1": s1[1], "f2": s1[2]})
    return [found[k] for k in sorted(found)]


def find_all(inst: MapInstance, kind: str, budget: OracleBudget = DEFAULT_BUDGET) -> list[Obstruction]:
    if kind == "cut-node":
        return find_cut_nodes(inst)
    if kind == "parallel-edges":
        return find_parallel_pairs(inst)
    if kind == "unit-cost-S2":
        return find_unit_s2(inst, budget)
    if kind == "zero-cost-S2":
        return find_zero_s2(inst)
    if kind == "S34":
        return find_s34(inst, budget)
    if kind == "R4":
        return find_r4(inst)
    if kind == "R8":
        return find_r8(inst)
    raise ValueError(f"unknown obstruction kind {kind!r}")


def detect(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> Obstruction | None:
    """The highest-priority obstruction with the smallest carrier, or None.

    Parallel edges and the later kinds are only looked for once the instance
    has no cut node, since pre-processing splits at cut nodes first.
    """
    for kind in KINDS:
        found = find_all(inst, kind, budget)
        if found:
            return found[0]
    return None


def is_well_structured(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return inst.n >= WELL_STRUCTURED_MIN_NODES and detect(inst, budget) is None
