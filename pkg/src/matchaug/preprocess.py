"""Reduction of an arbitrary instance to well-structured or tiny pieces, and the way back.

``decompose`` keeps a worklist of sub-instances.  Any piece with at least
twelve nodes that still has an obstruction is replaced by its children
(the pieces at a cut node or at a contracted node, or a single quotient for
the R kinds).  Edge ids survive every transformation, so a child solution is
already a set of parent edge ids and undoing a step is a set union plus at
most a few edges recorded at decompose time.

Undo data is computed eagerly; nothing is searched again during
``recombine`` except the single repair edge of the two S2 kinds, and the
candidate order for that edge is frozen in the trace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .graph import (MapInstance, connected_components, contract, cut_nodes, find_bridges,
                    induced, is_two_edge_connected, two_ec_v_blocks)
from .errors import InvariantBreach
from .obstructions import Obstruction, WELL_STRUCTURED_MIN_NODES, detect
from .oracle import DEFAULT_BUDGET, OracleBudget, opt_2ecss


@dataclass(frozen=True)
class ApproxConfig:
    alpha: Fraction = Fraction(5, 3)

    def __post_init__(self):
        a = Fraction(self.alpha)
        if a < Fraction(5, 3):
            raise ValueError("alpha must be at least 5/3")
        object.__setattr__(self, "alpha", a)

    def bound(self, opt: int) -> Fraction:
        """``max(opt, alpha * opt - 2)``."""
        return max(Fraction(opt), self.alpha * opt - 2)

    def within(self, cost: int, opt: int) -> bool:
        return Fraction(cost) <= self.bound(opt)


DEFAULT_CONFIG = ApproxConfig()


@dataclass(frozen=True)
class Step:
    kind: str
    carrier: tuple[int, ...]
    parent: int
    children: tuple[int, ...]
    undo: Mapping = field(default_factory=dict)
    phi_before: int = 0
    phi_after: int = 0


@dataclass(frozen=True)
class DecompositionTrace:
    instances: tuple[MapInstance, ...]      # index 0 is the root
    steps: tuple[Step, ...]
    leaves: tuple[int, ...]

    @property
    def root(self) -> MapInstance:
        return self.instances[0]

    def to_text(self) -> str:
        """One line per step: ``kind carrier=... parent=... children=... phi=a->b``."""
        lines = []
        for s in self.steps:
            lines.append(f"{s.kind} carrier={','.join(map(str, s.carrier))} parent={s.parent} "
                         f"children={','.join(map(str, s.children))} phi={s.phi_before}->{s.phi_after}")
        lines.append(f"leaves {' '.join(str(i) for i in self.leaves)}")
        return "\n".join(lines) + "\n"


def phi(inst: MapInstance) -> int:
    return inst.m + len(cut_nodes(inst))


def _lift_nodes(labels: tuple[int, ...], node_map: tuple[int, ...], vhat: int,
                contracted: Iterable[int]) -> set[int]:
    """Parent nodes behind a piece of a contraction (``vhat`` expands to the contracted set)."""
    inverse: dict[int, int] = {}
    for x, y in enumerate(node_map):
        if y != vhat:
            inverse[y] = x
    out: set[int] = set()
    for q in labels:
        if q == vhat:
            out.update(contracted)
        else:
            out.add(inverse[q])
    return out


def _cost_two_cycle_through(inst: MapInstance, nodes: set[int], must: int) -> tuple[int, ...] | None:
    """Spanning cycle of ``inst[nodes]`` of cost two that uses edge ``must`` (3 or 4 nodes)."""
    order = sorted(nodes)
    first = order[0]
    for perm in itertools.permutations(order[1:]):
        if perm[0] > perm[-1]:
            continue
        cyc = (first, *perm)
        choice = []
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            choice.append(sorted((x.id for x in inst.edges_between(a, b)),
                                 key=lambda eid: (inst.by_id[eid].cost, eid)))
        for ids in itertools.product(*choice):
            if len(set(ids)) == len(ids) and must in ids and inst.cost(ids) == 2:
                return tuple(sorted(ids))
    return None


def _split_at(inst: MapInstance, S: tuple[int, ...]):
    """Contract ``S`` and split at the contracted node; returns (children, parent node sets)."""
    res = contract(inst, S)
    vhat = res.contracted_node
    comps = connected_components(res.quotient, removed=[vhat])
    kids, lifted = [], []
    for comp in comps:
        piece, labels = induced(res.quotient, [vhat, *comp])
        kids.append(piece)
        lifted.append(_lift_nodes(labels, res.node_map, vhat, S))
    return kids, lifted


def _apply(inst: MapInstance, ob: Obstruction) -> tuple[list[MapInstance], dict]:
    """Children and undo data for one reduction step."""
    kind = ob.kind
    if kind == "cut-node":
        kids = [piece for piece, _ in two_ec_v_blocks(inst, ob.carrier[0])]
        return kids, {"node": ob.carrier[0]}
    if kind == "parallel-edges":
        a, b = (inst.by_id[i] for i in ob.carrier)
        drop = b.id if b.cost == 1 else a.id
        if inst.by_id[drop].cost != 1:
            raise InvariantBreach("parallel pair without a unit-edge", inst)
        return [MapInstance(inst.n, tuple(x for x in inst.edges if x.id != drop))], {"dropped": drop}
    if kind in ("zero-cost-S2", "unit-cost-S2"):
        e = inst.by_id[ob.carrier[0]]
        kids, lifted = _split_at(inst, (e.u, e.v))
        repair = tuple(sorted(eid for x in (e.u, e.v) for _, eid in inst.adj[x] if eid != e.id))
        undo: dict = {"edge": e.id, "ends": (e.u, e.v), "repair_order": repair}
        if kind == "zero-cost-S2":
            cycles = {}
            for i, (kid, nodes) in enumerate(zip(kids, lifted)):
                if kid.n <= 3 and opt_2ecss(kid)[0] == 2:
                    cyc = _cost_two_cycle_through(inst, nodes, e.id)
                    if cyc is None:
                        raise InvariantBreach("no cost-two cycle through the zero-edge", inst)
                    cycles[i] = cyc
            undo["cost_two_cycles"] = cycles
        return kids, undo
    if kind == "S34":
        kids, _ = _split_at(inst, ob.nodes)
        cyc = ob.witness["cycle"]
        if inst.cost(cyc.edges) != 2:
            raise InvariantBreach("S34 witness cycle does not cost two", inst)
        return kids, {"cycle": tuple(sorted(cyc.edges))}
    if kind == "R4":
        res = contract(inst, ob.nodes)
        return [res.quotient], {"cycle": tuple(sorted(ob.witness["cycle"].edges))}
    if kind == "R8":
        w = ob.witness
        F = (set(w["c1"].edges) | set(w["c2"].edges) | {w["f1"], w["f2"]}) - {w["e"]}
        if inst.cost(F) > 5:
            raise InvariantBreach("R8 replacement set costs more than five", inst)
        res = contract(inst, ob.nodes)
        return [res.quotient], {"F": tuple(sorted(F))}
    raise ValueError(f"unknown obstruction kind {kind!r}")


def decompose(inst: MapInstance, budget: OracleBudget = DEFAULT_BUDGET,
              min_nodes: int = WELL_STRUCTURED_MIN_NODES) -> DecompositionTrace:
    """Split ``inst`` until every piece is small (< ``min_nodes`` nodes) or well structured."""
    if not is_two_edge_connected(inst):
        raise InvariantBreach("input is not 2-edge-connected", inst)
    instances = [inst]
    phis = [phi(inst)]
    steps: list[Step] = []
    leaves: list[int] = []
    pending = [0]
    limit = inst.m + inst.n
    while pending:
        i = pending.pop(0)
        g = instances[i]
        ob = None if g.n < min_nodes else detect(g, budget)
        if ob is None:
            leaves.append(i)
            continue
        if len(steps) >= limit:
            raise InvariantBreach("too many reduction steps", inst)
        kids, undo = _apply(g, ob)
        ids = []
        for kid in kids:
            if not is_two_edge_connected(kid):
                raise InvariantBreach(f"{ob.kind} step produced a piece that is not 2EC", g)
            instances.append(kid)
            phis.append(phi(kid))
            ids.append(len(instances) - 1)
        before = phis[i]
        after = sum(phis[j] for j in ids)
        if after >= before:
            raise InvariantBreach(f"potential did not drop on {ob.kind} ({before} -> {after})", g)
        steps.append(Step(ob.kind, ob.carrier, i, tuple(ids), undo, before, after))
        pending[:0] = ids
    return DecompositionTrace(tuple(instances), tuple(steps), tuple(leaves))


# ---------------------------------------------------------------------------
# undo operations; all return parent edge ids

def _require_2ecss(inst: MapInstance, ids: frozenset[int], what: str) -> frozenset[int]:
    if not is_two_edge_connected(inst.sub(ids)):
        raise InvariantBreach(f"{what} did not yield a 2-ECSS", inst)
    return ids


def undo_cut_node(parent: MapInstance, children: Iterable[Iterable[int]]) -> frozenset[int]:
    out = frozenset().union(*map(frozenset, children))
    return _require_2ecss(parent, out, "cut-node union")


def undo_parallel_edge(parent: MapInstance, child: Iterable[int], dropped: int) -> frozenset[int]:
    out = frozenset(child)
    if dropped in out:
        raise InvariantBreach("child solution uses the discarded edge", parent)
    return _require_2ecss(parent, out, "parallel-edge undo")


def _repair(parent: MapInstance, ids: set[int], e: int, order: tuple[int, ...]) -> set[int]:
    """Add the first edge of ``order`` that puts ``e`` on a cycle, if ``e`` is a bridge."""
    sub = parent.sub(ids)
    if e not in find_bridges(sub):
        return ids
    ed = parent.by_id[e]
    side = next(c for c in connected_components(parent.sub(ids - {e})) if ed.u in c)
    for f in order:
        fe = parent.by_id[f]
        if f not in ids and (fe.u in side) != (fe.v in side):
            return ids | {f}
    for fe in sorted(parent.edges, key=lambda x: x.id):
        if fe.id not in ids and (fe.u in side) != (fe.v in side):
            return ids | {fe.id}
    raise InvariantBreach("no repair edge across the S2 cut", parent)


def undo_zero_s2(parent: MapInstance, children: list[Iterable[int]], undo: Mapping) -> frozenset[int]:
    e = undo["edge"]
    cycles = undo.get("cost_two_cycles", {})
    if cycles:
        i = min(cycles)
        ids = set(cycles[i])
        for j, sol in enumerate(children):
            if j != i:
                ids |= set(sol)
        return _require_2ecss(parent, frozenset(ids), "zero-cost-S2 cycle substitution")
    ids = {e}.union(*map(set, children))
    return _require_2ecss(parent, frozenset(_repair(parent, ids, e, undo["repair_order"])),
                          "zero-cost-S2 undo")


def undo_unit_s2(parent: MapInstance, children: list[Iterable[int]], undo: Mapping) -> frozenset[int]:
    e = undo["edge"]
    ids = {e}.union(*map(set, children))
    return _require_2ecss(parent, frozenset(_repair(parent, ids, e, undo["repair_order"])),
                          "unit-cost-S2 undo")


def undo_s34(parent: MapInstance, children: list[Iterable[int]], cycle: Iterable[int]) -> frozenset[int]:
    ids = frozenset(cycle).union(*map(frozenset, children))
    return _require_2ecss(parent, ids, "S34 undo")


def undo_r4(parent: MapInstance, child: Iterable[int], cycle: Iterable[int]) -> frozenset[int]:
    return _require_2ecss(parent, frozenset(child) | frozenset(cycle), "R4 undo")


def undo_r8(parent: MapInstance, child: Iterable[int], F: Iterable[int]) -> frozenset[int]:
    return _require_2ecss(parent, frozenset(child) | frozenset(F), "R8 undo")


def undo_step(step: Step, parent: MapInstance, child_solutions: list[frozenset[int]]) -> frozenset[int]:
    k, u = step.kind, step.undo
    if k == "cut-node":
        return undo_cut_node(parent, child_solutions)
    if k == "parallel-edges":
        return undo_parallel_edge(parent, child_solutions[0], u["dropped"])
    if k == "zero-cost-S2":
        return undo_zero_s2(parent, child_solutions, u)
    if k == "unit-cost-S2":
        return undo_unit_s2(parent, child_solutions, u)
    if k == "S34":
        return undo_s34(parent, child_solutions, u["cycle"])
    if k == "R4":
        return undo_r4(parent, child_solutions[0], u["cycle"])
    if k == "R8":
        return undo_r8(parent, child_solutions[0], u["F"])
    raise ValueError(f"unknown step kind {k!r}")


def recombine(trace: DecompositionTrace, leaf_solutions: Mapping[int, Iterable[int]],
              check: Callable[[int, MapInstance, frozenset[int]], None] | None = None) -> frozenset[int]:
    """Replay the trace backwards; ``check(index, instance, solution)`` sees every intermediate."""
    sol: dict[int, frozenset[int]] = {}
    for i in trace.leaves:
        s = frozenset(leaf_solutions[i])
        _require_2ecss(trace.instances[i], s, f"leaf {i} solution")
        sol[i] = s
        if check:
            check(i, trace.instances[i], s)
    for step in reversed(trace.steps):
        parent = trace.instances[step.parent]
        s = undo_step(step, parent, [sol[c] for c in step.children])
        if not s <= set(parent.edge_ids):
            raise InvariantBreach("undo emitted an edge outside the parent", parent)
        sol[step.parent] = s
        if check:
            check(step.parent, parent, s)
    return sol[0]
