"""Turning a normalised 2-edge cover into a bridgeless one with pseudo-ears.

Every unit-edge of the starting cover carries 2/3 of credit.  Credits live
on components (c-credit), 2ec-blocks (b-credit) and black nodes (n-credit),
each keyed by node set (or node id) so that they survive re-decomposition.
All amounts are :class:`fractions.Fraction`; the ledger identity

    cost(H) + total credit == 5/3 * cost(D2)

holds exactly after initialisation and after every augmentation, because
credit released by an augmentation that is not spent on new edges is pooled
into the block that absorbs it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InvariantBreach
from .graph import BlockDecomposition, MapInstance, block_decomposition

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


@dataclass
class CreditState:
    c_credit: dict[frozenset[int], Fraction] = field(default_factory=dict)
    b_credit: dict[frozenset[int], Fraction] = field(default_factory=dict)
    n_credit: dict[int, Fraction] = field(default_factory=dict)
    unit_bridge_degree: dict[int, int] = field(default_factory=dict)
    budget: Fraction = Fraction(0)          # 5/3 * cost(D2)
    spent: int = 0                          # cost of edges bought with credit

    def total(self) -> Fraction:
        return (sum(self.c_credit.values(), Fraction(0)) + sum(self.b_credit.values(), Fraction(0))
                + sum(self.n_credit.values(), Fraction(0)))

    def violations(self, inst: MapInstance, H: Iterable[int],
                   bd: BlockDecomposition | None = None) -> list[str]:
        """Every way in which the credit invariant fails for ``H`` (empty when it holds)."""
        H = frozenset(H)
        bd = bd or block_decomposition(inst.sub(H))
        out: list[str] = []
        comps = {c for c in bd.components if len(c) > 1}
        if set(self.c_credit) != comps:
            out.append("c-credit keys differ from the components")
        blocks = set(bd.blocks)
        if set(self.b_credit) != blocks:
            out.append("b-credit keys differ from the 2ec-blocks")
        for comp in comps:
            if self.c_credit.get(comp, Fraction(0)) < 1:
                out.append(f"component {min(comp)} has c-credit below one")
        for b, nodes in enumerate(bd.blocks):
            have = self.b_credit.get(nodes, Fraction(0))
            if nodes in comps and bd.is_small(b):
                if have != THIRD:
                    out.append(f"small component {min(nodes)} has b-credit {have}, not 1/3")
            elif have < 1:
                out.append(f"block {min(nodes)} has b-credit {have} below one")
        deg1 = unit_bridge_degrees(inst, bd)
        black = {v for v in range(inst.n) if bd.block_of[v] < 0}
        if set(self.n_credit) != black:
            out.append("n-credit keys differ from the black nodes")
        for v in black:
            if self.n_credit.get(v) != THIRD * deg1[v]:
                out.append(f"black node {v} holds {self.n_credit.get(v)} for {deg1[v]} unit bridges")
        if Fraction(inst.cost(H)) + self.total() != self.budget:
            out.append(f"ledger off: cost {inst.cost(H)} + credit {self.total()} != {self.budget}")
        return out


def unit_bridge_degrees(inst: MapInstance, bd: BlockDecomposition) -> dict[int, int]:
    deg = {v: 0 for v in range(inst.n) if bd.block_of[v] < 0}
    for eid in bd.bridges:
        e = inst.by_id[eid]
        if e.cost == 1:
            for x in (e.u, e.v):
                if x in deg:
                    deg[x] += 1
    return deg


@dataclass(frozen=True)
class PseudoEar:
    R: frozenset[int]
    r: int
    u: int
    bridge: int
    Z: frozenset[int]
    z_case: str
    components: tuple[frozenset[int], ...]     # C_1 .. C_{k-1}
    edges: tuple[int, ...]                      # f_1 .. f_k
    head: int
    witness: tuple[int, ...]                    # Q as a node path r .. head

    @property
    def k(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class EarRecord:
    component: int
    block: int
    k: int
    z_case: str
    witness_case: str
    witness_credit: Fraction
    paid: int
    released: Fraction

    def line(self) -> str:
        return (f"ear component={self.component} block={self.block} k={self.k} z={self.z_case} "
                f"witness={self.witness_case}:{self.witness_credit} paid={self.paid} "
                f"released={self.released}")


def init_credits(inst: MapInstance, d2: Iterable[int]) -> tuple[frozenset[int], CreditState]:
    """Distribute 2/3 per unit-edge of the cover over components, blocks and black nodes."""
    H = frozenset(d2)
    bd = block_decomposition(inst.sub(H))
    st = CreditState(budget=Fraction(5, 3) * inst.cost(H))
    for b, nodes in enumerate(bd.blocks):
        st.b_credit[nodes] = TWO_THIRDS * bd.block_unit_edges[b]
    deg1 = unit_bridge_degrees(inst, bd)
    st.unit_bridge_degree = dict(deg1)
    st.n_credit = {v: Fraction(0) for v in deg1}
    for eid in bd.bridges:
        e = inst.by_id[eid]
        if e.cost != 1:
            continue
        for x in (e.u, e.v):
            b = bd.block_of[x]
            if b < 0:
                st.n_credit[x] += THIRD
            else:
                st.b_credit[bd.blocks[b]] += THIRD
    for comp in bd.components:
        if len(comp) < 2:
            raise InvariantBreach("the cover leaves a node uncovered", inst)
        blocks = sorted({bd.block_of[x] for x in comp if bd.block_of[x] >= 0},
                        key=lambda b: min(bd.blocks[b]))
        has_bridge = any(bd.block_of[x] < 0 for x in comp) or len(blocks) > 1
        if not has_bridge:
            _take(st, bd.blocks[blocks[0]], Fraction(1))
        else:
            large = [b for b in blocks if not bd.is_small(b)]
            if large:
                _take(st, bd.blocks[large[0]], Fraction(1))
            elif len(blocks) >= 3:
                for b in blocks[:3]:
                    _take(st, bd.blocks[b], THIRD)
            elif len(blocks) == 2:
                for b in blocks:
                    _take(st, bd.blocks[b], THIRD)
                rich = [b for b in blocks if st.b_credit[bd.blocks[b]] >= 1 + THIRD]
                if not rich:
                    raise InvariantBreach("two small pendant blocks without a unit bridge", inst)
                _take(st, bd.blocks[rich[0]], THIRD)
            else:
                raise InvariantBreach("component with a bridge but fewer than two blocks", inst)
        st.c_credit[comp] = Fraction(1)
    bad = st.violations(inst, H, bd)
    if bad:
        raise InvariantBreach("initial credits: " + "; ".join(bad), inst)
    return H, st


def _take(st: CreditState, block: frozenset[int], amount: Fraction) -> None:
    st.b_credit[block] -= amount


# ---------------------------------------------------------------------------
# pseudo-ears

def _choose_z(bd: BlockDecomposition, deg1: dict[int, int], H_adj, r: int, u: int) -> tuple[frozenset[int], str]:
    if bd.block_of[u] >= 0:
        return frozenset(), "a"
    if deg1[u] >= 2:
        return frozenset({u}), "b"
    nbrs = [y for y, _ in H_adj[u] if y != r]
    if len(nbrs) != 1:
        raise InvariantBreach(f"black node {u} with one unit bridge has degree {len(nbrs) + 1}")
    w = nbrs[0]
    if bd.block_of[w] >= 0 or deg1[w] >= 2:
        return frozenset({u}), "c1"
    return frozenset({u, w}), "c2"


def _witness_path(H_adj, r: int, head: int) -> tuple[int, ...]:
    prev = {r: -1}
    queue = deque([r])
    while queue:
        x = queue.popleft()
        if x == head:
            break
        for y, _ in sorted(H_adj[x]):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if head not in prev:
        raise InvariantBreach("head node is not reachable from r inside its component")
    path = [head]
    while path[-1] != r:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def find_pseudo_ear(inst: MapInstance, H: frozenset[int], bd: BlockDecomposition,
                    comp: int, R: int) -> PseudoEar:
    """Shortest pseudo-ear from block ``R`` of component ``comp`` avoiding the chosen set Z."""
    sub = inst.sub(H)
    H_adj = sub.adj
    Rn = bd.blocks[R]
    C0 = bd.components[comp]
    touching = [(x, eid) for x in sorted(Rn) for _, eid in H_adj[x] if eid in bd.bridges]
    if len(touching) != 1:
        raise InvariantBreach("chosen block is not pendant", inst)
    r, bridge = touching[0]
    u = inst.by_id[bridge].other(r)
    deg1 = unit_bridge_degrees(inst, bd)
    Z, zcase = _choose_z(bd, deg1, H_adj, r, u)

    comp_of = bd.comp_of
    members = {c: sorted(bd.components[c]) for c in range(len(bd.components))}
    # BFS over states: -1 for the start block, otherwise a component index
    start = -1
    parent: dict[int, tuple[int, int, int, int]] = {}   # comp -> (prev state, edge, exit node, entry node)
    queue = deque([start])
    found = None
    while queue and found is None:
        state = queue.popleft()
        nodes = sorted(Rn) if state == start else members[state]
        for x in nodes:
            for y, eid in sorted(inst.adj[x], key=lambda t: (t[0], t[1])):
                if eid in H or y in Z or y in Rn:
                    continue
                cy = comp_of[y]
                if cy == comp:
                    found = (state, eid, x, y)
                    break
                if cy in parent or cy == state:
                    continue
                parent[cy] = (state, eid, x, y)
                queue.append(cy)
            if found:
                break
    if found is None:
        raise InvariantBreach(f"no pseudo-ear from block at {min(Rn)} (Z case {zcase})", inst)
    state, last_edge, _, head = found
    edges = [last_edge]
    comps: list[frozenset[int]] = []
    while state != start:
        prev_state, eid, _, _ = parent[state]
        comps.append(bd.components[state])
        edges.append(eid)
        state = prev_state
    edges.reverse()
    comps.reverse()
    Q = _witness_path(H_adj, r, head)
    return PseudoEar(Rn, r, u, bridge, Z, zcase, tuple(comps), tuple(edges), head, Q)


def witness_credit(inst: MapInstance, H: frozenset[int], bd: BlockDecomposition,
                   credits: CreditState, Q: tuple[int, ...]) -> tuple[Fraction, str | None]:
    """Credit held by ``Q - r`` and which credit case of the witness path applies (None if none)."""
    r = Q[0]
    whites = [x for x in Q if bd.block_of[x] >= 0]
    sub_adj = inst.sub(H).adj
    bridges_on_q = 0
    for a, b in zip(Q, Q[1:]):
        if any(y == b and eid in bd.bridges for y, eid in sub_adj[a]):
            bridges_on_q += 1
    amount = Fraction(0)
    seen_blocks = {bd.block_of[r]}
    for x in Q[1:]:
        b = bd.block_of[x]
        if b < 0:
            amount += credits.n_credit[x]
        elif b not in seen_blocks:
            seen_blocks.add(b)
            amount += credits.b_credit[bd.blocks[b]]
    deg1 = unit_bridge_degrees(inst, bd)
    case = None
    if any(x != r for x in whites):
        case = "a"
    elif len(whites) == 1 and bridges_on_q >= 3:
        case = "b"
    elif len(whites) == 1 and bridges_on_q == 2 and any(
            bd.block_of[x] < 0 and deg1[x] >= 2 for x in Q):
        case = "c"
    return amount, case


def apply_pseudo_ear(inst: MapInstance, H: frozenset[int], bd: BlockDecomposition,
                     credits: CreditState, ear: PseudoEar) -> tuple[frozenset[int], BlockDecomposition, Fraction]:
    """Add the ear, move credits, and return (new H, its decomposition, released credit)."""
    for eid in ear.edges:
        if eid in H:
            raise InvariantBreach("ear edge already in the cover", inst)
        if inst.by_id[eid].cost != 1:
            raise InvariantBreach("ear uses a zero-edge outside the cover", inst)
    new_H = H | frozenset(ear.edges)
    nb = block_decomposition(inst.sub(new_H))
    r_new = nb.blocks[nb.block_of[ear.r]]
    old = credits
    released = Fraction(0)
    for comp in ear.components:
        released += old.c_credit[comp]
    absorbed_blocks = [nodes for nodes in bd.blocks if nodes != ear.R and nodes <= r_new]
    for nodes in absorbed_blocks:
        released += old.b_credit[nodes]
    absorbed_black = [v for v in r_new if bd.block_of[v] < 0]
    for v in absorbed_black:
        released += old.n_credit[v]
    if not ear.R <= r_new:
        raise InvariantBreach("the ear did not absorb its starting block", inst)

    st = CreditState(budget=old.budget, spent=old.spent + ear.k)
    c0 = bd.components[bd.comp_of[ear.r]]
    merged = frozenset(c0.union(*ear.components))
    for comp in nb.components:
        if len(comp) < 2:
            continue
        if comp == merged:
            st.c_credit[comp] = old.c_credit[c0]
        elif comp in old.c_credit:
            st.c_credit[comp] = old.c_credit[comp]
        else:
            raise InvariantBreach("a component changed outside the ear", inst)
    for nodes in nb.blocks:
        if nodes == r_new:
            st.b_credit[nodes] = old.b_credit[ear.R] + released - ear.k
        elif nodes in old.b_credit:
            st.b_credit[nodes] = old.b_credit[nodes]
        else:
            raise InvariantBreach("a block changed outside the ear", inst)
    deg1 = unit_bridge_degrees(inst, nb)
    st.unit_bridge_degree = dict(deg1)
    for v in deg1:
        if v not in old.n_credit:
            raise InvariantBreach(f"node {v} turned black", inst)
        st.n_credit[v] = old.n_credit[v]
    bad = st.violations(inst, new_H, nb)
    if bad:
        raise InvariantBreach("after pseudo-ear: " + "; ".join(bad), inst)
    credits.c_credit, credits.b_credit, credits.n_credit = st.c_credit, st.b_credit, st.n_credit
    credits.unit_bridge_degree, credits.spent = st.unit_bridge_degree, st.spent
    return new_H, nb, released


def bridge_cover(inst: MapInstance, d2: Iterable[int],
                 trace: list[EarRecord] | None = None) -> tuple[frozenset[int], CreditState]:
    """Pseudo-ear augmentations until the cover has no bridge."""
    H, credits = init_credits(inst, d2)
    bd = block_decomposition(inst.sub(H))
    limit = len(H)
    rounds = 0
    while bd.bridges:
        rounds += 1
        if rounds > limit:
            raise InvariantBreach("bridge covering did not terminate in |E(D2)| rounds", inst)
        with_bridge = set()
        for eid in bd.bridges:
            with_bridge.add(bd.comp_of[inst.by_id[eid].u])
        comp = min(with_bridge, key=lambda c: min(bd.components[c]))
        adj = inst.sub(H).adj
        pendant = []
        for b, nodes in enumerate(bd.blocks):
            if bd.comp_of[min(nodes)] != comp:
                continue
            count = sum(1 for x in nodes for _, eid in adj[x] if eid in bd.bridges)
            if count == 1:
                pendant.append(b)
        R = min(pendant, key=lambda b: min(bd.blocks[b]))
        ear = find_pseudo_ear(inst, H, bd, comp, R)
        amount, case = witness_credit(inst, H, bd, credits, ear.witness)
        if case is None or amount < 1:
            raise InvariantBreach(f"witness path {ear.witness} carries only {amount} credit", inst)
        H, bd, released = apply_pseudo_ear(inst, H, bd, credits, ear)
        if trace is not None:
            trace.append(EarRecord(min(bd.components[bd.comp_of[ear.r]]), min(ear.R), ear.k,
                                   ear.z_case, case, amount, ear.k, released))
    return H, credits
