"""Merging the 2ec-blocks of a bridgeless 2-edge cover into one 2-ECSS.

Three phases, each a loop of merges:

1. a small block with a *good* swappable pair is closed into a cycle of
   blocks through two different neighbours;
2. with only bad pairs left, the auxiliary digraph (small blocks red, large
   blocks green, one arc per bad pair) yields either a red-to-green arc or a
   red path of three blocks, and those are merged;
3. once every block is large, blocks are merged along shortest cycles of the
   block multigraph.

Each merge keeps the ledger ``cost(H) + sum(credit) == budget`` exactly and
gives the new block everything left over, which must be at least 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .bridge_cover import CreditState
from .errors import InvariantBreach
from .graph import MapInstance, block_decomposition, is_two_edge_connected, two_edge_disjoint_paths_exist

SMALL_CREDIT = Fraction(4, 3)


@dataclass(frozen=True)
class SwappablePair:
    block: int                       # block key: its least node
    nodes: tuple[int, int]
    form: str                        # "edge" or "diagonal"
    quality: str                     # "good" or "bad"
    target: int | None               # for bad pairs, the key of the block holding all outside neighbours
    add: tuple[int, ...] = ()        # the diagonal edge, if any
    discard: tuple[int, ...] = ()    # unit-edges of the block that the merge removes


@dataclass(frozen=True)
class AuxDigraph:
    red: tuple[int, ...]
    green: tuple[int, ...]
    arcs: tuple[tuple[int, int, SwappablePair], ...]

    def out_arcs(self, a: int) -> list[tuple[int, int, SwappablePair]]:
        return [arc for arc in self.arcs if arc[0] == a]


@dataclass(frozen=True)
class MergeRecord:
    kind: str
    blocks: tuple[int, ...]
    added: tuple[int, ...]
    discarded: tuple[int, ...]
    credit_in: Fraction
    credit_out: Fraction

    def line(self) -> str:
        return (f"merge {self.kind} blocks={','.join(map(str, self.blocks))} "
                f"added={','.join(map(str, self.added))} discarded={','.join(map(str, self.discarded))} "
                f"credit={self.credit_in}->{self.credit_out}")


class Gluing:
    """Mutable gluing state over a fixed instance."""

    def __init__(self, inst: MapInstance, H: Iterable[int], credit: dict[frozenset[int], Fraction],
                 budget: Fraction, check: bool = True):
        self.inst = inst
        self.H = set(H)
        self.budget = budget
        self.check = check
        self.trace: list[MergeRecord] = []
        self._pair_quality: dict[tuple[int, tuple[int, int], str], str] = {}
        bd = block_decomposition(inst.sub(self.H))
        if bd.bridges:
            raise InvariantBreach("gluing needs a bridgeless cover", inst)
        self.label = [-1] * inst.n
        self.members: dict[int, list[int]] = {}
        self.units: dict[int, int] = {}
        self.credit: dict[int, Fraction] = {}
        for b, nodes in enumerate(bd.blocks):
            key = min(nodes)
            for x in nodes:
                self.label[x] = key
            self.members[key] = sorted(nodes)
            self.units[key] = bd.block_unit_edges[b]
            self.credit[key] = credit[nodes]
        if any(x < 0 for x in self.label):
            raise InvariantBreach("the cover leaves a node uncovered", inst)
        self._check_state()

    # -- bookkeeping -------------------------------------------------------

    def blocks(self) -> list[int]:
        return sorted(self.members)

    def is_small(self, key: int) -> bool:
        return self.units[key] <= 2

    def total_credit(self) -> Fraction:
        return sum(self.credit.values(), Fraction(0))

    def cost(self) -> int:
        return self.inst.cost(self.H)

    def _check_state(self) -> None:
        if not self.check:
            return
        inst = self.inst
        if Fraction(self.cost()) + self.total_credit() != self.budget:
            raise InvariantBreach("gluing ledger does not balance", inst)
        seen = set()
        for eid in self.H:
            e = inst.by_id[eid]
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                raise InvariantBreach("current graph has parallel edges", inst)
            seen.add(key)
        sub = inst.sub(self.H)
        if any(len(sub.adj[v]) < 2 for v in range(inst.n)):
            raise InvariantBreach("current graph has a node of degree below two", inst)
        bd = block_decomposition(sub)
        if bd.bridges:
            raise InvariantBreach("current graph has a bridge", inst)
        if {min(b) for b in bd.blocks} != set(self.members):
            raise InvariantBreach("block labels drifted from the current graph", inst)
        for key, c in self.credit.items():
            if self.is_small(key) and c != SMALL_CREDIT:
                raise InvariantBreach(f"small block {key} holds {c}, not 4/3", inst)
            if not self.is_small(key) and c < 2:
                raise InvariantBreach(f"large block {key} holds {c} < 2", inst)

    def _neighbour_blocks(self, x: int, exclude: int) -> dict[int, int]:
        """Blocks adjacent to node ``x`` (other than ``exclude``) with the least joining edge id."""
        out: dict[int, int] = {}
        for y, eid in self.inst.adj[x]:
            b = self.label[y]
            if b != exclude and (b not in out or eid < out[b]):
                out[b] = eid
        return out

    def _attachment(self, x: int, key: int) -> bool:
        return any(self.label[y] != key for y, _ in self.inst.adj[x])

    # -- swappable pairs ---------------------------------------------------

    def swappable_pairs(self, key: int) -> list[SwappablePair]:
        if not self.is_small(key):
            raise ValueError("swappable pairs are defined for small blocks only")
        inst = self.inst
        nodes = self.members[key]
        inner = [inst.by_id[eid] for x in nodes for _, eid in inst.adj[x]
                 if eid in self.H and inst.by_id[eid].u == x]
        inner = [e for e in inner if self.label[e.v] == key]
        adjacent = {(min(e.u, e.v), max(e.u, e.v)) for e in inner}
        out: list[SwappablePair] = []
        for e in sorted(inner, key=lambda e: (min(e.u, e.v), max(e.u, e.v))):
            if e.cost == 1 and self._attachment(e.u, key) and self._attachment(e.v, key):
                out.append(self._classify(key, (min(e.u, e.v), max(e.u, e.v)), "edge", (), (e.id,)))
        if len(nodes) == 4:
            for i in range(4):
                for j in range(i + 1, 4):
                    u, w = nodes[i], nodes[j]
                    if (u, w) in adjacent:
                        continue
                    v1, v2 = [x for x in nodes if x not in (u, w)]
                    diag = sorted(e.id for e in inst.edges_between(v1, v2) if e.id not in self.H)
                    if not diag or not (self._attachment(u, key) and self._attachment(w, key)):
                        continue
                    units = tuple(sorted(e.id for e in inner if e.cost == 1))
                    out.append(self._classify(key, (u, w), "diagonal", (diag[0],), units))
        return out

    def _classify(self, key: int, uw: tuple[int, int], form: str,
                  add: tuple[int, ...], discard: tuple[int, ...]) -> SwappablePair:
        nu = self._neighbour_blocks(uw[0], key)
        nw = self._neighbour_blocks(uw[1], key)
        good = any(bu != bw for bu in nu for bw in nw)
        target = None
        if not good:
            both = set(nu) | set(nw)
            target = min(both) if len(both) == 1 else None
        quality = "good" if good else "bad"
        tag = (key, uw, form)
        if self.check and self._pair_quality.get(tag) == "bad" and good:
            raise InvariantBreach(f"pair {uw} of block {key} turned from bad to good", self.inst)
        self._pair_quality[tag] = quality
        return SwappablePair(key, uw, form, quality, target, add, discard)

    # -- merging primitives --------------------------------------------------

    def _merge(self, kind: str, keys: list[int], added: list[int], discard: list[int],
               pivots: list[tuple[int, int]]) -> int:
        """Add ``added``, then discard ``discard`` one by one (each checked by two paths)."""
        inst = self.inst
        keys = sorted(set(keys))
        credit_in = sum((self.credit[k] for k in keys), Fraction(0))
        for eid in added:
            if eid in self.H:
                raise InvariantBreach("merge adds an edge already present", inst)
            if inst.by_id[eid].cost != 1:
                raise InvariantBreach("merge adds a zero-edge", inst)
        self.H.update(added)
        for eid in discard:
            e = inst.by_id[eid]
            if e.cost != 1:
                raise InvariantBreach("merge would discard a zero-edge", inst)
            self.H.discard(eid)
            if self.check and not two_edge_disjoint_paths_exist(inst.sub(self.H), e.u, e.v):
                raise InvariantBreach(f"discarding edge {eid} breaks 2-edge-connectivity", inst)
        new_key = min(keys)
        nodes = sorted(x for k in keys for x in self.members[k])
        units = sum(self.units[k] for k in keys) + len(added) - len(discard)
        for k in keys:
            del self.members[k]
            del self.units[k]
            del self.credit[k]
        for x in nodes:
            self.label[x] = new_key
        self.members[new_key] = nodes
        self.units[new_key] = units
        net = len(added) - len(discard)
        self.credit[new_key] = credit_in - net
        if self.credit[new_key] < 2:
            raise InvariantBreach(f"{kind} merge leaves {self.credit[new_key]} credit", inst)
        if self.check:
            node_set = set(nodes)
            block_ids = [eid for eid in self.H if inst.by_id[eid].u in node_set]
            if not is_two_edge_connected(inst.sub(block_ids), spanning=False):
                raise InvariantBreach("merged block is not 2-edge-connected", inst)
        self.trace.append(MergeRecord(kind, tuple(keys), tuple(added), tuple(discard),
                                      credit_in, self.credit[new_key]))
        self._check_state()
        return new_key

    def _block_path(self, sources: dict[int, int], targets: set[int], avoid: int) -> list[int] | None:
        """Edge ids of a shortest block path from any source block to a target block, avoiding ``avoid``."""
        inst = self.inst
        prev: dict[int, tuple[int, int]] = {b: (-1, -1) for b in sources}
        queue = deque(sorted(sources))
        while queue:
            b = queue.popleft()
            if b in targets:
                path = []
                while prev[b][0] != -1:
                    pb, eid = prev[b]
                    path.append(eid)
                    b = pb
                return list(reversed(path))
            for x in self.members[b]:
                for y, eid in sorted(inst.adj[x], key=lambda t: t[1]):
                    c = self.label[y]
                    if c == b or c == avoid or c in prev:
                        continue
                    prev[c] = (b, eid)
                    queue.append(c)
        return None

    # -- the three merge kinds ----------------------------------------------

    def merge_via_good_pair(self, pair: SwappablePair) -> int:
        key = pair.block
        u, w = pair.nodes
        nu = self._neighbour_blocks(u, key)
        nw = self._neighbour_blocks(w, key)
        best = None
        for bu in sorted(nu):
            targets = {bw for bw in nw if bw != bu}
            if not targets:
                continue
            path = self._block_path({bu: nu[bu]}, targets, key)
            if path is None:
                continue
            end = bu
            for eid in path:
                e = self.inst.by_id[eid]
                end = self.label[e.v] if self.label[e.u] == end else self.label[e.u]
            cand = (len(path), bu, end, path)
            if best is None or cand[:3] < best[:3]:
                best = cand
        if best is None:
            raise InvariantBreach(f"no block path between the neighbours of pair {pair.nodes}", self.inst)
        _, bu, bw, path = best
        added = [nu[bu], *path, nw[bw], *pair.add]
        keys = [key, bu, bw] + [self.label[self.inst.by_id[eid].u] for eid in path] \
            + [self.label[self.inst.by_id[eid].v] for eid in path]
        return self._merge("good-pair", keys, added, list(pair.discard), [])

    def _hop(self, pair: SwappablePair, target: int) -> tuple[list[int], list[int]]:
        u, w = pair.nodes
        eu = self._neighbour_blocks(u, pair.block).get(target)
        ew = self._neighbour_blocks(w, pair.block).get(target)
        if eu is None or ew is None:
            raise InvariantBreach(f"pair {pair.nodes} has no edges into block {target}", self.inst)
        return [eu, ew, *pair.add], list(pair.discard)

    def merge_red_green(self, pair: SwappablePair, green: int) -> int:
        added, discard = self._hop(pair, green)
        return self._merge("red-green", [pair.block, green], added, discard, [])

    def merge_red_chain(self, p1: SwappablePair, a2: int, p2: SwappablePair, a3: int) -> int:
        add1, dis1 = self._hop(p1, a2)
        add2, dis2 = self._hop(p2, a3)
        return self._merge("red-chain", [p1.block, a2, a3], add1 + add2, dis1 + dis2, [])

    def shortest_cycle_through(self, key: int) -> list[int]:
        """Edge ids of a shortest cycle of the block multigraph through block ``key``."""
        inst = self.inst
        dist: dict[int, int] = {key: 0}
        branch: dict[int, int] = {}
        prev: dict[int, tuple[int, int]] = {}
        queue: deque[int] = deque()
        for x in self.members[key]:
            for y, eid in sorted(inst.adj[x], key=lambda t: t[1]):
                c = self.label[y]
                if c == key:
                    continue
                if c in dist:
                    return [prev[c][1], eid]          # two parallel block edges
                dist[c] = 1
                branch[c] = c
                prev[c] = (key, eid)
                queue.append(c)
        best: tuple[int, int, int, int] | None = None
        while queue:
            b = queue.popleft()
            if best is not None and 2 * dist[b] + 1 > best[0]:
                break
            for x in self.members[b]:
                for y, eid in sorted(inst.adj[x], key=lambda t: t[1]):
                    c = self.label[y]
                    if c == b or c == key:
                        continue
                    if c not in dist:
                        dist[c] = dist[b] + 1
                        branch[c] = branch[b]
                        prev[c] = (b, eid)
                        queue.append(c)
                    elif branch[c] != branch[b] and prev[c][1] != eid:
                        length = dist[b] + dist[c] + 1
                        if best is None or length < best[0]:
                            best = (length, b, c, eid)
        if best is None:
            raise InvariantBreach(f"block {key} lies on no cycle of the block graph", inst)
        _, b, c, eid = best

        def walk(x: int) -> list[int]:
            out = []
            while x != key:
                px, pe = prev[x]
                out.append(pe)
                x = px
            return out
        return list(reversed(walk(b))) + [eid] + walk(c)

    def merge_large_cycle(self, key: int) -> int:
        cycle = self.shortest_cycle_through(key)
        keys = [key]
        for eid in cycle:
            e = self.inst.by_id[eid]
            keys += [self.label[e.u], self.label[e.v]]
        return self._merge("large-cycle", keys, cycle, [], [])

    # -- auxiliary digraph ---------------------------------------------------

    def build_daux(self) -> AuxDigraph:
        red = tuple(k for k in self.blocks() if self.is_small(k))
        green = tuple(k for k in self.blocks() if not self.is_small(k))
        arcs = []
        for a in red:
            pairs = self.swappable_pairs(a)
            if not pairs:
                raise InvariantBreach(f"small block {a} has no swappable pair", self.inst)
            for p in pairs:
                if p.quality != "bad":
                    raise InvariantBreach("auxiliary digraph built while a good pair exists", self.inst)
                if p.target is None:
                    raise InvariantBreach(f"bad pair {p.nodes} of block {a} has no single target", self.inst)
                arcs.append((a, p.target, p))
        d = AuxDigraph(red, green, tuple(arcs))
        out_deg = {a: len({t for s, t, _ in arcs if s == a}) for a in red}
        for a, b, _ in arcs:
            if b in out_deg and out_deg[a] == 1 and out_deg[b] == 1 and \
                    any(s == b and t == a for s, t, _ in arcs):
                raise InvariantBreach(f"red blocks {a} and {b} only point at each other", self.inst)
        return d

    # -- driver --------------------------------------------------------------

    def run(self) -> frozenset[int]:
        # step 1: one sweep suffices since a bad pair never turns good
        for key in self.blocks():
            if key not in self.members or not self.is_small(key):
                continue
            pairs = self.swappable_pairs(key)
            if not pairs:
                raise InvariantBreach(f"small block {key} has no swappable pair", self.inst)
            good = [p for p in pairs if p.quality == "good"]
            if good:
                self.merge_via_good_pair(good[0])
        # step 2
        while any(self.is_small(k) for k in self.members):
            d = self.build_daux()
            rg = [(a, b, p) for a, b, p in d.arcs if b in set(d.green)]
            if rg:
                a, b, p = min(rg, key=lambda t: (t[0], t[2].nodes, t[1]))
                self.merge_red_green(p, b)
                continue
            red = set(d.red)
            chain = None
            for a1, a2, p1 in d.arcs:
                for s, a3, p2 in d.arcs:
                    if s == a2 and a3 in red and a3 != a1:
                        chain = (p1, a2, p2, a3)
                        break
                if chain:
                    break
            if chain is None:
                raise InvariantBreach("auxiliary digraph offers no valid merge", self.inst)
            self.merge_red_chain(*chain)
        # step 3
        while len(self.members) > 1:
            self.merge_large_cycle(self.blocks()[0])
        return frozenset(self.H)


def glue_credits_from(credits: CreditState) -> dict[frozenset[int], Fraction]:
    """Per-block credit after bridge covering (every component is then a single block)."""
    out = {}
    for nodes, b in credits.b_credit.items():
        out[nodes] = b + credits.c_credit[nodes]
    return out


def glue(inst: MapInstance, H: Iterable[int], credits: CreditState, check: bool = True,
         trace: list[MergeRecord] | None = None) -> frozenset[int]:
    """Merge the blocks of a bridgeless cover into a single 2-ECSS."""
    g = Gluing(inst, H, glue_credits_from(credits), credits.budget, check=check)
    out = g.run()
    if trace is not None:
        trace.extend(g.trace)
    final = g.total_credit()
    if Fraction(inst.cost(out)) + final != credits.budget or final < 2:
        raise InvariantBreach(f"gluing ended with {final} credit", inst)
    return out
