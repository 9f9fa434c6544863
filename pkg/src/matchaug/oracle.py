"""Exact solvers for small instances, used as ground truth.

* ``opt_2ecss``: minimum-cost spanning 2EC subgraph by branch and bound.
* ``min_2edge_cover``: minimum-cost 2-edge cover by branch and bound.
* ``*_enumerate``: plain exhaustive search over all edge subsets, kept
  independent of the branch and bound so the two can check each other.
* ``obstruction_check_by_definition``: literal evaluation of the obstruction
  definitions on one candidate carrier.  It deliberately shares nothing with
  :mod:`matchaug.obstructions` beyond the graph primitives.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Iterable

from .graph import (
    Edge,
    MapInstance,
    adjacency,
    connected_components,
    contract,
    induced,
    is_two_edge_connected,
    two_ec_v_blocks,
    _lowpoint,
)


class BudgetExceeded(RuntimeError):
    """The exact search was asked for more than its budget allows."""


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 16
    max_millis: int = 120_000
    node_visit_cap: int = 5_000_000


DEFAULT_BUDGET = OracleBudget()

KINDS = ("cut-node", "parallel-edges", "unit-cost-S2", "zero-cost-S2", "S34", "R4", "R8")


class _Search:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.visits = 0
        self.deadline = time.monotonic() + budget.max_millis / 1000.0

    def tick(self) -> None:
        self.visits += 1
        if self.visits > self.budget.node_visit_cap:
            raise BudgetExceeded(f"more than {self.budget.node_visit_cap} search nodes")
        if self.visits % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time cap of {self.budget.max_millis} ms reached")


def _check_size(inst: MapInstance, budget: OracleBudget) -> None:
    if inst.n > budget.max_nodes:
        raise BudgetExceeded(f"{inst.n} nodes exceeds oracle budget of {budget.max_nodes}")


def _reverse_delete(inst: MapInstance, keep_ok) -> set[int]:
    chosen = {e.id for e in inst.edges}
    for e in sorted(inst.edges, key=lambda e: (-e.cost, -e.id)):
        if e.cost == 0:
            continue
        chosen.discard(e.id)
        if not keep_ok(chosen):
            chosen.add(e.id)
    return chosen


def _is_2ec_ids(inst: MapInstance, ids: Iterable[int]) -> bool:
    return is_two_edge_connected(inst.sub(ids), spanning=True)


def opt_2ecss(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Minimum cost of a spanning 2EC subgraph, with a witness edge set.

    All zero-edges are taken (they are free); the search branches over unit
    edges.  The lower bound at a search node counts, for every 2EC class of the
    chosen edges, how many more edge ends the class still needs (two for an
    isolated class, one for a leaf of the bridge forest, at least the degree
    deficit of its nodes) and halves the total.
    """
    _check_size(inst, budget)
    if inst.n == 1:
        return 0, frozenset()
    if not _is_2ec_ids(inst, inst.edge_ids):
        raise ValueError("instance is not 2-edge-connected")
    n = inst.n
    zero = [e for e in inst.edges if e.cost == 0]
    units = [e for e in inst.edges if e.cost == 1]
    best_ids = _reverse_delete(inst, lambda s: _is_2ec_ids(inst, s))
    best = [inst.cost(best_ids), frozenset(best_ids)]
    search = _Search(budget)
    status = {e.id: None for e in units}   # None undecided, True in, False out

    def evaluate(chosen: list[Edge]) -> tuple[int, list[int]]:
        """Return (sum of needs, candidate edge ids for the neediest class)."""
        adj = adjacency(n, chosen)
        bridges, _ = _lowpoint(n, adj)
        cls = [-1] * n
        k = 0
        for s in range(n):
            if cls[s] != -1:
                continue
            cls[s] = k
            stack = [s]
            while stack:
                x = stack.pop()
                for y, eid in adj[x]:
                    if eid not in bridges and cls[y] == -1:
                        cls[y] = k
                        stack.append(y)
            k += 1
        fdeg = [0] * k
        deg = [len(adj[v]) for v in range(n)]
        for e in chosen:
            if e.id in bridges:
                fdeg[cls[e.u]] += 1
                fdeg[cls[e.v]] += 1
        deficit = [0] * k
        for v in range(n):
            deficit[cls[v]] += max(0, 2 - deg[v])
        total = 0
        boundary = [0] * k
        for c in range(k):
            b = 0 if k == 1 else max(0, 2 - fdeg[c])
            boundary[c] = b
            total += max(b, deficit[c])
        if total == 0:
            return 0, []
        best_cands: list[int] | None = None
        for c in range(k):
            if max(boundary[c], deficit[c]) == 0:
                continue
            cands = []
            for e in units:
                if status[e.id] is not None:
                    continue
                cu, cv = cls[e.u], cls[e.v]
                if boundary[c] > 0:
                    if (cu == c) != (cv == c):
                        cands.append(e.id)
                else:
                    if (cu == c and deg[e.u] < 2) or (cv == c and deg[e.v] < 2):
                        cands.append(e.id)
            if best_cands is None or len(cands) < len(best_cands):
                best_cands = cands
                if not cands:
                    break
        return total, best_cands or []

    by_id = inst.by_id

    def rec(cost: int) -> None:
        search.tick()
        chosen = zero + [e for e in units if status[e.id]]
        need, cands = evaluate(chosen)
        if need == 0:
            if cost < best[0]:
                best[0] = cost
                best[1] = frozenset(e.id for e in chosen)
            return
        if cost + (need + 1) // 2 >= best[0] or not cands:
            return
        allowed = zero + [e for e in units if status[e.id] is not False]
        if not is_two_edge_connected(MapInstance(n, tuple(allowed)), spanning=True):
            return
        excluded: list[int] = []
        for eid in cands:
            status[eid] = True
            rec(cost + by_id[eid].cost)
            status[eid] = False
            excluded.append(eid)
        for eid in excluded:
            status[eid] = None

    rec(0)
    return best[0], best[1]


def opt_2ecss_enumerate(inst: MapInstance, max_edges: int = 20) -> tuple[int, frozenset[int]]:
    """Exhaustive minimum over all edge subsets; for tiny instances only."""
    if inst.m > max_edges:
        raise BudgetExceeded(f"{inst.m} edges is too many for full enumeration")
    ids = [e.id for e in inst.edges]
    best: tuple[int, frozenset[int]] | None = None
    for mask in range(1 << len(ids)):
        chosen = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        c = inst.cost(chosen)
        if best is not None and c >= best[0]:
            continue
        if _is_2ec_ids(inst, chosen):
            best = (c, frozenset(chosen))
    if best is None:
        raise ValueError("instance is not 2-edge-connected")
    return best


def opt_at_least(inst: MapInstance, z: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Decide ``opt(inst) >= z``.

    Any 2EC spanning subgraph needs at least n/2 unit edges because the zero
    edges form a matching, so large instances answer without search.
    """
    if math.ceil(inst.n / 2) >= z:
        return True
    return opt_2ecss(inst, budget)[0] >= z


def _is_cover(inst: MapInstance, ids: Iterable[int]) -> bool:
    deg = [0] * inst.n
    by_id = inst.by_id
    for i in ids:
        e = by_id[i]
        deg[e.u] += 1
        deg[e.v] += 1
    return all(d >= 2 for d in deg)


def min_2edge_cover(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, frozenset[int]]:
    """Minimum-cost edge set meeting every node at least twice."""
    _check_size(inst, budget)
    if any(inst.degree(v) < 2 for v in range(inst.n)):
        raise ValueError("some node has degree below two")
    n = inst.n
    zero = [e for e in inst.edges if e.cost == 0]
    units = [e for e in inst.edges if e.cost == 1]
    best_ids = _reverse_delete(inst, lambda s: _is_cover(inst, s))
    best = [inst.cost(best_ids), frozenset(best_ids)]
    deficit = [2] * n
    for e in zero:
        deficit[e.u] -= 1
        deficit[e.v] -= 1
    status = {e.id: None for e in units}
    incident: list[list[Edge]] = [[] for _ in range(n)]
    for e in units:
        incident[e.u].append(e)
        incident[e.v].append(e)
    search = _Search(budget)

    def rec(cost: int) -> None:
        search.tick()
        need = sum(max(0, d) for d in deficit)
        if need == 0:
            if cost < best[0]:
                best[0] = cost
                best[1] = frozenset([e.id for e in zero] + [i for i, s in status.items() if s])
            return
        if cost + (need + 1) // 2 >= best[0]:
            return
        pick, pick_cands = -1, None
        for v in range(n):
            if deficit[v] <= 0:
                continue
            cands = [e for e in incident[v] if status[e.id] is None]
            if len(cands) < deficit[v]:
                return
            if pick_cands is None or len(cands) < len(pick_cands):
                pick, pick_cands = v, cands
        assert pick_cands is not None
        excluded = []
        for e in pick_cands:
            status[e.id] = True
            deficit[e.u] -= 1
            deficit[e.v] -= 1
            rec(cost + 1)
            deficit[e.u] += 1
            deficit[e.v] += 1
            status[e.id] = False
            excluded.append(e)
        for e in excluded:
            status[e.id] = None

    rec(0)
    return best[0], best[1]


def min_2edge_cover_enumerate(inst: MapInstance, max_edges: int = 20) -> tuple[int, frozenset[int]]:
    if inst.m > max_edges:
        raise BudgetExceeded(f"{inst.m} edges is too many for full enumeration")
    ids = [e.id for e in inst.edges]
    best: tuple[int, frozenset[int]] | None = None
    for mask in range(1 << len(ids)):
        chosen = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        c = inst.cost(chosen)
        if best is not None and c >= best[0]:
            continue
        if _is_cover(inst, chosen):
            best = (c, frozenset(chosen))
    if best is None:
        raise ValueError("some node has degree below two")
    return best


# ---------------------------------------------------------------------------
# literal obstruction checks

def _cycles_on(inst: MapInstance, nodes: tuple[int, ...]) -> list[list[Edge]]:
    """Every cycle through exactly ``nodes`` (as edge lists, one per edge choice)."""
    first, rest = nodes[0], nodes[1:]
    out = []
    for perm in itertools.permutations(rest):
        if len(perm) > 1 and perm[0] > perm[-1]:
            continue
        order = (first, *perm)
        options = [inst.edges_between(a, b) for a, b in zip(order, order[1:] + (first,))]
        for choice in itertools.product(*options):
            if len({e.id for e in choice}) == len(choice):
                out.append(list(choice))
    return out


def _blocks_at(inst: MapInstance, S: Iterable[int]):
    res = contract(inst, S)
    comps = connected_components(res.quotient, removed=[res.contracted_node])
    if len(comps) < 2:
        return res, []
    return res, two_ec_v_blocks(res.quotient, res.contracted_node)


def _is_2nc_induced(inst: MapInstance, S: tuple[int, ...]) -> bool:
    if len(S) < 3:
        return False
    sub, _ = induced(inst, S)
    if len(connected_components(sub)) != 1:
        return False
    return all(len(connected_components(sub, removed=[x])) == 1 for x in range(sub.n))


def _attachments(inst: MapInstance, S: set[int]) -> set[int]:
    return {x for x in S if any(y not in S for y, _ in inst.adj[x])}


def obstruction_check_by_definition(inst: MapInstance, kind: str, candidate,
                                    budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Literal test of whether ``candidate`` carries an obstruction of ``kind``.

    Candidates: a node for ``cut-node``; a pair of edge ids for
    ``parallel-edges``; one edge id for the two S2 kinds; a node set otherwise.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown obstruction kind {kind!r}")
    if kind == "cut-node":
        return len(connected_components(inst, removed=[candidate])) >= 2
    if kind == "parallel-edges":
        a, b = (inst.by_id[i] for i in candidate)
        return a.id != b.id and {a.u, a.v} == {b.u, b.v}
    if kind in ("zero-cost-S2", "unit-cost-S2"):
        e = inst.by_id[candidate]
        if e.cost != (0 if kind == "zero-cost-S2" else 1):
            return False
        if len(connected_components(inst, removed=[e.u, e.v])) < 2:
            return False
        if kind == "zero-cost-S2":
            return True
        res, blocks = _blocks_at(inst, (e.u, e.v))
        vhat = res.contracted_node
        good = 0
        for piece, labels in blocks:
            local = labels.index(vhat)
            has_zero = any(f.cost == 0 and local in (f.u, f.v) for f in piece.edges)
            if has_zero and opt_at_least(piece, 3, budget):
                good += 1
        return good >= 2
    S = tuple(sorted(set(candidate)))
    Sset = set(S)
    if kind == "S34":
        if len(S) not in (3, 4) or not _is_2nc_induced(inst, S):
            return False
        if not any(sum(e.cost for e in cyc) == 2 for cyc in _cycles_on(inst, S)):
            return False
        if len(connected_components(inst, removed=S)) < 2:
            return False
        if any(e.cost == 0 and ((e.u in Sset) != (e.v in Sset)) for e in inst.edges):
            return False
        _, blocks = _blocks_at(inst, S)
        return sum(1 for piece, _ in blocks if opt_at_least(piece, 3, budget)) >= 2
    if kind == "R4":
        if len(S) != 4 or len(S) == inst.n:
            return False
        if not any(sum(e.cost for e in cyc) == 2 for cyc in _cycles_on(inst, S)):
            return False
        for x, y in itertools.combinations(S, 2):
            if not inst.has_edge(x, y) and inst.degree(x) == 2 and inst.degree(y) == 2:
                return True
        return False
    # R8
    if len(S) != 8 or len(S) == inst.n:
        return False
    att = _attachments(inst, Sset)
    if len(att) != 2:
        return False
    for S1 in itertools.combinations(S, 4):
        S2 = tuple(x for x in S if x not in S1)
        a1 = [x for x in att if x in S1]
        a2 = [x for x in att if x in S2]
        if len(a1) != 1 or len(a2) != 1:
            continue
        cyc1 = [c for c in _cycles_on(inst, S1) if sum(e.cost for e in c) == 2]
        cyc2 = [c for c in _cycles_on(inst, S2) if sum(e.cost for e in c) == 2]
        for c1, c2 in itertools.product(cyc1, cyc2):
            if _r8_side_ok(inst, c1, a1[0], set(S2)) and _r8_side_ok(inst, c2, a2[0], set(S1)):
                return True
    return False


def _r8_side_ok(inst: MapInstance, cycle: list[Edge], a: int, other: set[int]) -> bool:
    rest = [e for e in cycle if a not in (e.u, e.v)]
    units = [e for e in rest if e.cost == 1]
    if len(units) != 1:
        return False
    f = units[0]
    return all(any(y in other for y, _ in inst.adj[x]) for x in (f.u, f.v))
