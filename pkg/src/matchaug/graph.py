"""Multigraph with 0/1 edge costs and the structural queries the solver needs.

Nodes are ``0..n-1``.  Every edge carries a stable integer id; derived
instances (induced pieces, contractions) keep the ids of the edges they
inherit, so an edge set found on a piece is directly an edge set of the
parent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class ValidationError(ValueError):
    """Raised when an instance violates a structural requirement."""

    def __init__(self, failures: Sequence[str]):
        super().__init__("; ".join(failures))
        self.failures = list(failures)


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    cost: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True, eq=False)
class MapInstance:
    n: int
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, triples: Iterable[tuple[int, int, int]]) -> "MapInstance":
        """Build an instance with ids ``0..m-1`` in input order."""
        return cls(n, tuple(Edge(i, u, v, c) for i, (u, v, c) in enumerate(triples)))

    @cached_property
    def by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def adj(self) -> list[list[tuple[int, int]]]:
        """``adj[v]`` lists ``(neighbour, edge id)`` pairs, one per incident edge."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            out[e.u].append((e.v, e.id))
            out[e.v].append((e.u, e.id))
        return out

    @cached_property
    def zero_mate(self) -> list[int]:
        """Partner of each node along its zero-edge, or -1."""
        mate = [-1] * self.n
        for e in self.edges:
            if e.cost == 0:
                mate[e.u] = e.v
                mate[e.v] = e.u
        return mate

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(self.by_id)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def cost(self, ids: Iterable[int]) -> int:
        by_id = self.by_id
        return sum(by_id[i].cost for i in ids)

    def sub(self, ids: Iterable[int]) -> "EdgeSubgraph":
        return EdgeSubgraph(self, frozenset(ids))

    def full(self) -> "EdgeSubgraph":
        return EdgeSubgraph(self, self.edge_ids)

    def has_edge(self, a: int, b: int) -> bool:
        return any(w == b for w, _ in self.adj[a])

    def edges_between(self, a: int, b: int) -> list[Edge]:
        by_id = self.by_id
        return [by_id[i] for w, i in self.adj[a] if w == b]


@dataclass(frozen=True, eq=False)
class EdgeSubgraph:
    """A spanning subgraph of ``parent`` given by a set of edge ids."""

    parent: MapInstance
    edge_ids: frozenset[int]
    cost: int = field(init=False)

    def __post_init__(self) -> None:
        by_id = self.parent.by_id
        missing = [i for i in self.edge_ids if i not in by_id]
        if missing:
            raise KeyError(f"edge ids {sorted(missing)[:5]} not in parent")
        object.__setattr__(self, "cost", sum(by_id[i].cost for i in self.edge_ids))

    @property
    def n(self) -> int:
        return self.parent.n

    def edges(self) -> list[Edge]:
        by_id = self.parent.by_id
        return [by_id[i] for i in sorted(self.edge_ids)]

    @cached_property
    def adj(self) -> list[list[tuple[int, int]]]:
        return adjacency(self.parent.n, self.edges())


@dataclass(frozen=True)
class BlockDecomposition:
    bridges: frozenset[int]
    components: tuple[frozenset[int], ...]
    comp_of: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[frozenset[int], ...]
    block_of: tuple[int, ...]          # -1 for black nodes
    cut_nodes: frozenset[int]
    block_unit_edges: tuple[int, ...]

    def is_white(self, v: int) -> bool:
        return self.block_of[v] >= 0

    def is_small(self, b: int) -> bool:
        return self.block_unit_edges[b] <= 2

    def node_color(self, v: int) -> str:
        return "white" if self.block_of[v] >= 0 else "black"

    def block_size_class(self, b: int) -> str:
        return "small" if self.is_small(b) else "large"


@dataclass(frozen=True)
class ContractionResult:
    quotient: MapInstance
    node_map: tuple[int, ...]
    contracted_node: int


def adjacency(n: int, edges: Iterable[Edge]) -> list[list[tuple[int, int]]]:
    out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e in edges:
        out[e.u].append((e.v, e.id))
        out[e.v].append((e.u, e.id))
    return out


def _adj_of(g: MapInstance | EdgeSubgraph) -> tuple[int, list[list[tuple[int, int]]]]:
    return g.n, g.adj


def validate_instance(inst: MapInstance, require_2ec: bool = False,
                      require_simple: bool = False) -> list[str]:
    """Return the list of named structural failures (empty when valid)."""
    failures: list[str] = []
    if inst.n < 2:
        failures.append(f"node count {inst.n} < 2")
    seen_ids: set[int] = set()
    zero_at: dict[int, int] = {}
    pairs: set[tuple[int, int]] = set()
    for e in inst.edges:
        if e.id in seen_ids:
            failures.append(f"duplicate edge id {e.id}")
        seen_ids.add(e.id)
        if not (0 <= e.u < inst.n and 0 <= e.v < inst.n):
            failures.append(f"edge {e.id} endpoint out of range")
            continue
        if e.u == e.v:
            failures.append(f"loop at node {e.u} (edge {e.id})")
        if e.cost not in (0, 1):
            failures.append(f"edge {e.id} has cost {e.cost} outside {{0,1}}")
        if e.cost == 0:
            for x in (e.u, e.v):
                if x in zero_at:
                    failures.append(f"matching violated at node {x}")
                zero_at[x] = e.id
        key = (min(e.u, e.v), max(e.u, e.v))
        if require_simple and key in pairs:
            failures.append(f"parallel edge {e.id} between {key[0]} and {key[1]}")
        pairs.add(key)
    if failures:
        return failures
    if require_2ec and not is_two_edge_connected(inst.full(), spanning=True):
        failures.append("graph is not 2-edge-connected")
    return failures


def check_instance(inst: MapInstance, require_2ec: bool = False) -> MapInstance:
    failures = validate_instance(inst, require_2ec=require_2ec)
    if failures:
        raise ValidationError(failures)
    return inst


def connected_components(g: MapInstance | EdgeSubgraph,
                         removed: Iterable[int] = ()) -> list[list[int]]:
    """Components of ``g`` minus the ``removed`` nodes, each sorted, in order of least node."""
    n, adj = _adj_of(g)
    seen = [False] * n
    for x in removed:
        seen[x] = True
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comp.sort()
        comps.append(comp)
    return comps


def _lowpoint(n: int, adj: list[list[tuple[int, int]]],
              skip: int = -1) -> tuple[set[int], set[int]]:
    """Bridges and articulation points by one iterative DFS.

    Parallel edges are told apart by id, so a doubled edge is never a bridge.
    Node ``skip`` (if any) is treated as deleted.
    """
    disc = [-1] * n
    low = [0] * n
    if skip >= 0:
        disc[skip] = -2
    bridges: set[int] = set()
    cuts: set[int] = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            for w, eid in it:
                if eid == pe or disc[w] == -2:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, eid, iter(adj[w])))
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        bridges.add(pe)
                    if p == root:
                        root_children += 1
                    elif low[v] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return bridges, cuts


def find_bridges(g: MapInstance | EdgeSubgraph) -> frozenset[int]:
    n, adj = _adj_of(g)
    return frozenset(_lowpoint(n, adj)[0])


def cut_nodes(g: MapInstance | EdgeSubgraph, skip: int = -1) -> frozenset[int]:
    n, adj = _adj_of(g)
    return frozenset(_lowpoint(n, adj, skip)[1])


def block_decomposition(g: MapInstance | EdgeSubgraph) -> BlockDecomposition:
    n, adj = _adj_of(g)
    bridges, cuts = _lowpoint(n, adj)
    edges = g.edges() if isinstance(g, EdgeSubgraph) else list(g.edges)
    comps = connected_components(g)
    comp_of = [0] * n
    for i, c in enumerate(comps):
        for x in c:
            comp_of[x] = i
    block_of = [-1] * n
    blocks: list[frozenset[int]] = []
    for s in range(n):
        if block_of[s] != -1:
            continue
        has_nonbridge = any(eid not in bridges for _, eid in adj[s])
        if not has_nonbridge:
            continue
        b = len(blocks)
        block_of[s] = b
        members = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, eid in adj[x]:
                if eid not in bridges and block_of[y] == -1:
                    block_of[y] = b
                    members.append(y)
                    queue.append(y)
        blocks.append(frozenset(members))
    block_edges: list[set[int]] = [set() for _ in blocks]
    units = [0] * len(blocks)
    for e in edges:
        if e.id in bridges:
            continue
        b = block_of[e.u]
        block_edges[b].add(e.id)
        units[b] += e.cost
    return BlockDecomposition(
        bridges=frozenset(bridges),
        components=tuple(frozenset(c) for c in comps),
        comp_of=tuple(comp_of),
        blocks=tuple(blocks),
        block_edges=tuple(frozenset(s) for s in block_edges),
        block_of=tuple(block_of),
        cut_nodes=frozenset(cuts),
        block_unit_edges=tuple(units),
    )


def is_connected(g: MapInstance | EdgeSubgraph) -> bool:
    return len(connected_components(g)) == 1


def is_two_edge_connected(g: MapInstance | EdgeSubgraph, spanning: bool = True) -> bool:
    """2EC test.  With ``spanning=False`` isolated nodes are ignored."""
    n, adj = _adj_of(g)
    comps = connected_components(g)
    if not spanning:
        comps = [c for c in comps if len(c) > 1 or adj[c[0]]]
    if len(comps) != 1 or len(comps[0]) < 2:
        return False
    return not _lowpoint(n, adj)[0]


def two_edge_disjoint_paths_exist(g: MapInstance | EdgeSubgraph, v: int, w: int) -> bool:
    """True iff the unit-capacity max flow between ``v`` and ``w`` is at least two."""
    if v == w:
        raise ValueError("v and w must differ")
    n, adj = _adj_of(g)
    flow: dict[int, int] = {}       # edge id -> +1 if used u->v direction of traversal tail
    ends: dict[int, tuple[int, int]] = {}
    for x in range(n):
        for y, eid in adj[x]:
            ends.setdefault(eid, (x, y))

    def residual(x: int, y: int, eid: int) -> bool:
        f = flow.get(eid, 0)
        a, _ = ends[eid]
        direction = 1 if x == a else -1
        return f != direction

    for _ in range(2):
        prev: dict[int, tuple[int, int]] = {v: (-1, -1)}
        queue = deque([v])
        while queue and w not in prev:
            x = queue.popleft()
            for y, eid in adj[x]:
                if y not in prev and residual(x, y, eid):
                    prev[y] = (x, eid)
                    queue.append(y)
        if w not in prev:
            return False
        y = w
        while y != v:
            x, eid = prev[y]
            a, _ = ends[eid]
            flow[eid] = flow.get(eid, 0) + (1 if x == a else -1)
            y = x
    return True


def induced(inst: MapInstance, nodes: Iterable[int]) -> tuple[MapInstance, tuple[int, ...]]:
    """Induced sub-instance on ``nodes`` (relabelled in increasing order).

    Returns the instance and the tuple of original node labels.
    """
    keep = sorted(set(nodes))
    index = {x: i for i, x in enumerate(keep)}
    edges = tuple(Edge(e.id, index[e.u], index[e.v], e.cost) for e in inst.edges
                  if e.u in index and e.v in index)
    return MapInstance(len(keep), edges), tuple(keep)


def contract(inst: MapInstance, S: Iterable[int]) -> ContractionResult:
    """Shrink node set ``S`` into one node, dropping the edges inside ``S``.

    Outside nodes keep their relative order; the new node is the last one.
    """
    s = set(S)
    if not s or len(s) >= inst.n:
        raise ValueError("contracted set must be a nonempty proper subset")
    if len(s) > 1:
        sub, _ = induced(inst, s)
        if not is_connected(sub):
            raise ValueError("contracted set does not induce a connected subgraph")
    node_map = [0] * inst.n
    k = 0
    for x in range(inst.n):
        if x not in s:
            node_map[x] = k
            k += 1
    vhat = k
    for x in s:
        node_map[x] = vhat
    edges = []
    for e in inst.edges:
        a, b = node_map[e.u], node_map[e.v]
        if a == b:
            continue
        edges.append(Edge(e.id, a, b, e.cost))
    return ContractionResult(MapInstance(k + 1, tuple(edges)), tuple(node_map), vhat)


def two_ec_v_blocks(inst: MapInstance, v: int) -> list[tuple[MapInstance, tuple[int, ...]]]:
    """The pieces induced on ``{v}`` plus each component of ``inst - v``."""
    comps = connected_components(inst, removed=[v])
    if len(comps) < 2:
        raise ValueError(f"node {v} is not a cut node")
    return [induced(inst, [v, *c]) for c in comps]


def cycle_edges_ok(inst: MapInstance, ids: Iterable[int]) -> bool:
    """True iff ``ids`` forms one simple cycle (through at least two nodes)."""
    ids = list(ids)
    if len(ids) < 2:
        return False
    sub = inst.sub(ids)
    nodes = {x for e in sub.edges() for x in (e.u, e.v)}
    if any(len(sub.adj[x]) != 2 for x in nodes):
        return False
    return len([c for c in connected_components(sub) if len(c) > 1]) == 1
