"""Minimum-cost 2-edge cover (D2) and its normalisation.

Reduction used by ``compute_d2``.  Every zero-edge can be put into the cover
for free, so only the unit edges are decided.  A cover ``F`` is the
complement of a set ``C`` of unit edges with ``deg_C(v) <= deg(v) - 2`` at
every node, and minimising ``cost(F)`` is maximising ``|C|``.  That
capacitated matching becomes an ordinary matching on a gadget graph:

* node ``v`` gets ``deg(v) - 2`` capacity copies;
* unit edge ``e = uv`` gets two gadget vertices ``p_e`` and ``q_e`` joined
  by an edge, with ``p_e`` adjacent to every copy of ``u`` and ``q_e`` to
  every copy of ``v``.

A maximum matching has size ``m1 + |C|`` where ``C`` is the set of edges
whose ``p_e`` and ``q_e`` are both matched to copies.  All gadget edges have
the same weight, so the blossom kernel only needs cardinality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .blossom import max_cardinality_matching
from .graph import EdgeSubgraph, MapInstance, block_decomposition
from .oracle import DEFAULT_BUDGET, OracleBudget, min_2edge_cover


class NormalizationError(RuntimeError):
    """No cost-neutral exchange could establish the pendant-block property."""


@dataclass(frozen=True)
class D2Result:
    cover: EdgeSubgraph
    normalized: bool
    backend: str

    @property
    def cost(self) -> int:
        return self.cover.cost


def _check_degrees(inst: MapInstance) -> None:
    low = [v for v in range(inst.n) if inst.degree(v) < 2]
    if low:
        raise ValueError(f"no 2-edge cover: node {low[0]} has degree {inst.degree(low[0])}")


def gadget(inst: MapInstance) -> tuple[int, list[list[int]], dict[int, tuple[int, int]], int]:
    """Build the matching gadget.

    Returns ``(vertex count, adjacency, {edge id: (p, q)}, first p/q index)``;
    copy vertices come first.
    """
    copies: list[list[int]] = []
    k = 0
    for v in range(inst.n):
        b = inst.degree(v) - 2
        copies.append(list(range(k, k + b)))
        k += b
    first_pq = k
    pq: dict[int, tuple[int, int]] = {}
    for e in inst.edges:
        if e.cost == 1:
            pq[e.id] = (k, k + 1)
            k += 2
    adj: list[list[int]] = [[] for _ in range(k)]
    for e in inst.edges:
        if e.cost != 1:
            continue
        p, q = pq[e.id]
        adj[p].append(q)
        adj[q].append(p)
        for c in copies[e.u]:
            adj[p].append(c)
            adj[c].append(p)
        for c in copies[e.v]:
            adj[q].append(c)
            adj[c].append(q)
    return k, adj, pq, first_pq


def _greedy_start(inst: MapInstance, k: int, pq: dict[int, tuple[int, int]]) -> list[int]:
    free = [inst.degree(v) - 2 for v in range(inst.n)]
    offset = [0] * inst.n
    acc = 0
    for v in range(inst.n):
        offset[v] = acc
        acc += inst.degree(v) - 2
    used = [0] * inst.n
    mate = [-1] * k
    for e in inst.edges:
        if e.cost != 1:
            continue
        p, q = pq[e.id]
        if used[e.u] < free[e.u] and used[e.v] < free[e.v] and e.u != e.v:
            cu = offset[e.u] + used[e.u]
            cv = offset[e.v] + used[e.v]
            used[e.u] += 1
            used[e.v] += 1
            mate[p], mate[cu] = cu, p
            mate[q], mate[cv] = cv, q
        else:
            mate[p], mate[q] = q, p
    return mate


def compute_d2(inst: MapInstance, backend: str = "matching",
               budget: OracleBudget = DEFAULT_BUDGET) -> D2Result:
    """A minimum-cost 2-edge cover (not yet normalised)."""
    _check_degrees(inst)
    if backend == "oracle":
        _, ids = min_2edge_cover(inst, budget)
        return D2Result(inst.sub(ids), False, "oracle")
    if backend != "matching":
        raise ValueError(f"unknown backend {backend!r}")
    k, adj, pq, first_pq = gadget(inst)
    mate = max_cardinality_matching(k, adj, _greedy_start(inst, k, pq))
    dropped = {eid for eid, (p, q) in pq.items()
               if -1 < mate[p] < first_pq and -1 < mate[q] < first_pq}
    cover = inst.sub(e.id for e in inst.edges if e.id not in dropped)
    return D2Result(cover, False, "matching")


def is_cover(inst: MapInstance, ids) -> bool:
    deg = [0] * inst.n
    for i in ids:
        e = inst.by_id[i]
        deg[e.u] += 1
        deg[e.v] += 1
    return all(d >= 2 for d in deg)


def star_violations(inst: MapInstance, ids) -> list[int]:
    """Blocks of the cover breaking the pendant clause of property (*).

    Returned as indices into ``block_decomposition(inst.sub(ids)).blocks``:
    pendant blocks (exactly one incident bridge) that are small while that
    bridge is a zero-edge.
    """
    sub = inst.sub(ids)
    bd = block_decomposition(sub)
    by_id = inst.by_id
    touching: dict[int, list[int]] = {}
    for eid in bd.bridges:
        e = by_id[eid]
        for x in (e.u, e.v):
            b = bd.block_of[x]
            if b >= 0:
                touching.setdefault(b, []).append(eid)
    bad = []
    for b, brs in sorted(touching.items()):
        if len(brs) == 1 and by_id[brs[0]].cost == 0 and bd.is_small(b):
            bad.append(b)
    return bad


def satisfies_star(inst: MapInstance, ids) -> bool:
    ids = set(ids)
    if any(e.cost == 0 and e.id not in ids for e in inst.edges):
        return False
    return not star_violations(inst, ids)


def _exchange(inst: MapInstance, ids: set[int], block: frozenset[int], anchor: int) -> set[int] | None:
    """Swap one unit edge of a bad pendant block for an edge leaving it."""
    before = len(star_violations(inst, ids))
    by_id = inst.by_id
    deg = {x: 0 for x in block}
    for i in ids:
        e = by_id[i]
        for x in (e.u, e.v):
            if x in deg:
                deg[x] += 1
    for a in sorted(block - {anchor}):
        outs = sorted(eid for y, eid in inst.adj[a] if y not in block and eid not in ids)
        inside = sorted(eid for y, eid in inst.adj[a]
                        if y in block and eid in ids and by_id[eid].cost == 1)
        for g in inside:
            y = by_id[g].other(a)
            if deg[y] < 3:
                continue
            for f in outs:
                trial = (ids - {g}) | {f}
                if is_cover(inst, trial) and len(star_violations(inst, trial)) < before:
                    return trial
    return None


def _oracle_fallback(inst: MapInstance, cost: int, max_units: int = 24) -> set[int] | None:
    zero = {e.id for e in inst.edges if e.cost == 0}
    units = [e.id for e in inst.edges if e.cost == 1]
    if len(units) > max_units:
        return None
    for chosen in itertools.combinations(units, cost):
        trial = zero | set(chosen)
        if is_cover(inst, trial) and not star_violations(inst, trial):
            return trial
    return None


def normalize_d2(inst: MapInstance, d2: D2Result) -> D2Result:
    """Make the cover contain every zero-edge and have no small pendant block on a zero-bridge.

    Cost is preserved for a minimum-cost input.
    """
    ids = set(d2.cover.edge_ids) | {e.id for e in inst.edges if e.cost == 0}
    for e in sorted(inst.edges, key=lambda e: e.id):
        if e.cost == 1 and e.id in ids and is_cover(inst, ids - {e.id}):
            ids.discard(e.id)
    while True:
        bad = star_violations(inst, ids)
        if not bad:
            break
        bd = block_decomposition(inst.sub(ids))
        b = bad[0]
        block = bd.blocks[b]
        anchor = next(x for x in sorted(block)
                      if any(eid in bd.bridges for _, eid in inst.adj[x] if eid in ids))
        trial = _exchange(inst, ids, block, anchor)
        if trial is None:
            trial = _oracle_fallback(inst, inst.cost(ids))
            if trial is None:
                raise NormalizationError(f"cannot repair pendant block {sorted(block)}")
        ids = trial
    return D2Result(inst.sub(ids), True, d2.backend)
