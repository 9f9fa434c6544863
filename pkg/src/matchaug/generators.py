"""Fixture graphs and seeded instance generators.

Fixture nodes are numbered from 0; docstrings give the names used in the
drawings they mirror.
"""

from __future__ import annotations

import random
from typing import Iterable

from .graph import MapInstance, connected_components, find_bridges


def _build(n: int, triples: Iterable[tuple[int, int, int]]) -> MapInstance:
    return MapInstance.from_edges(n, list(triples))


def _named(names: list[str], triples: Iterable[tuple[str, str, int]]) -> tuple[MapInstance, dict[str, int]]:
    index = {x: i for i, x in enumerate(names)}
    inst = _build(len(names), [(index[a], index[b], c) for a, b, c in triples])
    return inst, index


def fix_c4() -> MapInstance:
    """4-cycle 1-2-3-4-1 with zero-edges 12 and 34 (nodes shifted to 0..3)."""
    return _build(4, [(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 0, 1)])


def bowtie() -> MapInstance:
    """Two unit triangles sharing node 0."""
    return _build(5, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (3, 4, 1), (4, 0, 1)])


def bowtie_bridge() -> MapInstance:
    """Two unit triangles joined by the edge 2-3 (edge id 6)."""
    return _build(6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1), (2, 3, 1)])


def alternating_cycle(k: int, offset: int = 0, first_zero: bool = True) -> list[tuple[int, int, int]]:
    """Edges of a k-cycle on ``offset..offset+k-1`` alternating zero and unit costs."""
    out = []
    for i in range(k):
        c = 0 if (i % 2 == 0) == first_zero else 1
        if k % 2 == 1 and i == k - 1:
            c = 1
        out.append((offset + i, offset + (i + 1) % k, c))
    return out


def tight_s3(ell: int) -> MapInstance:
    """Root 6-cycle of unit edges with ``ell`` attached gadgets.

    Root nodes v1..v6 are 0..5.  Gadget j is a 6-cycle u1..u6 with zero-edges
    u1u2, u3u4, u5u6 and unit edges u2u3, u4u5, u6u1, joined to the root by
    the unit edges v1u1, v3u3, v5u5.
    """
    edges = [(i, (i + 1) % 6, 1) for i in range(6)]
    n = 6
    for _ in range(ell):
        edges += alternating_cycle(6, n)
        edges += [(0, n, 1), (2, n + 2, 1), (4, n + 4, 1)]
        n += 6
    return _build(n, edges)


def g1() -> MapInstance:
    """Twelve-node instance holding one S34 (the second block).

    Nodes u_i, v_i, w_i, x_i of block i sit at 4(i-1) + 0..3.
    """
    names = [f"{c}{i}" for i in (1, 2, 3) for c in "uvwx"]
    triples = []
    for i in (1, 2, 3):
        triples += [(f"u{i}", f"v{i}", 1), (f"v{i}", f"w{i}", 0),
                    (f"w{i}", f"x{i}", 1), (f"x{i}", f"u{i}", 0)]
    triples += [("v1", "x1", 1), ("u1", "u2", 1), ("w1", "w2", 1), ("u2", "x3", 1),
                ("v2", "x3", 1), ("w2", "v3", 1), ("u3", "w3", 1)]
    return _named(names, triples)[0]


def _root_b0(triples: list, names: list[str]) -> None:
    names += [f"w{i}" for i in range(1, 7)]
    for i in range(1, 7):
        triples.append((f"w{i}", f"w{i % 6 + 1}", 0 if i % 2 == 1 else 1))


def g2(k: int) -> MapInstance:
    """Root 6-cycle of cost three plus ``k`` copies of the S34 gadget J."""
    names: list[str] = []
    triples: list = []
    _root_b0(triples, names)
    for j in range(1, k + 1):
        v = {i: f"j{j}v{i}" for i in range(1, 9)}
        names += list(v.values())
        triples += [(v[1], v[4], 0), (v[2], v[3], 0), (v[5], v[8], 0), (v[6], v[7], 0),
                    (v[1], v[2], 1), (v[1], v[7], 1), (v[2], v[5], 1), (v[3], v[4], 1),
                    (v[3], v[8], 1), (v[5], v[6], 1), (v[7], v[8], 1),
                    (v[1], "w1", 1), (v[3], "w4", 1)]
    return _named(names, triples)[0]


def g3(k: int) -> MapInstance:
    """Root 6-cycle of cost three plus ``k`` copies of the R8 gadget L."""
    names: list[str] = []
    triples: list = []
    _root_b0(triples, names)
    for j in range(1, k + 1):
        v = {i: f"l{j}v{i}" for i in range(1, 9)}
        names += list(v.values())
        triples += [(v[1], v[4], 0), (v[2], v[3], 0), (v[5], v[8], 0), (v[6], v[7], 0),
                    (v[1], v[2], 1), (v[1], v[5], 1), (v[2], v[8], 1), (v[3], v[4], 1),
                    (v[4], v[6], 1), (v[5], v[6], 1), (v[7], v[8], 1),
                    (v[4], "w1", 1), (v[8], "w4", 1)]
    return _named(names, triples)[0]


def _pentagon(prefix: str) -> tuple[list[str], list]:
    names = [f"{prefix}{i}" for i in range(5)]
    triples = [(names[0], names[1], 0), (names[1], names[2], 1), (names[2], names[3], 0),
               (names[3], names[4], 1), (names[4], names[0], 1)]
    return names, triples


def scene_zero_s2() -> tuple[MapInstance, dict[str, int]]:
    """Zero-edge uv whose deletion separates two pentagon blocks, each wired to both u and v."""
    n1, t1 = _pentagon("a")
    n2, t2 = _pentagon("b")
    names = ["u", "v"] + n1 + n2
    triples = [("u", "v", 0)] + t1 + t2 + [
        ("u", "a1", 1), ("v", "a4", 1), ("u", "b1", 1), ("v", "b4", 1)]
    return _named(names, triples)


def scene_unit_s2() -> tuple[MapInstance, dict[str, int]]:
    """Unit edge uv separating three blocks; u has zero-edge ux into B1, v has zero-edge vy into B2."""
    n1, t1 = _pentagon("a")
    n2, t2 = _pentagon("b")
    n3, t3 = _pentagon("c")
    # x = a4 and y = b4 have no zero-edge inside their pentagon
    names = ["u", "v"] + n1 + n2 + n3
    triples = [("u", "v", 1)] + t1 + t2 + t3 + [
        ("u", "a4", 0), ("v", "a1", 1),
        ("v", "b4", 0), ("u", "b1", 1),
        ("u", "c1", 1), ("v", "c3", 1)]
    return _named(names, triples)


def scene_s34() -> tuple[MapInstance, dict[str, int]]:
    """S34 on v1..v4 (zero v2v3, v4v1; unit v1v2, v3v4, chord v2v4) between two pentagon blocks."""
    n1, t1 = _pentagon("a")
    n2, t2 = _pentagon("b")
    names = ["v1", "v2", "v3", "v4"] + n1 + n2
    triples = [("v1", "v2", 1), ("v2", "v3", 0), ("v3", "v4", 1), ("v4", "v1", 0),
               ("v2", "v4", 1)] + t1 + t2 + [
        ("a1", "v1", 1), ("a4", "v3", 1),
        ("b1", "v1", 1), ("b3", "v3", 1), ("b4", "v2", 1)]
    return _named(names, triples)


def _b0_hexagon(triples: list, names: list[str]) -> None:
    names += [f"w{i}" for i in range(1, 7)]
    for i in range(1, 7):
        triples.append((f"w{i}", f"w{i % 6 + 1}", 0 if i % 2 == 1 else 1))


def scene_r8(variant: str = "left") -> tuple[MapInstance, dict[str, int]]:
    """The two R8 drawings, with the outside block B0 made a cost-three hexagon."""
    names = ["u1", "u2", "u3", "u4", "v1", "v2", "v3", "v4"]
    triples = [("u1", "u2", 1), ("u2", "u3", 0), ("u3", "u4", 1), ("u4", "u1", 0),
               ("v1", "v2", 1), ("v2", "v3", 0), ("v3", "v4", 1), ("v4", "v1", 0)]
    if variant == "left":
        triples += [("u3", "v1", 1), ("v4", "u2", 1), ("u4", "v3", 1)]
    elif variant == "right":
        triples += [("u1", "u3", 1), ("u3", "v3", 1), ("v4", "u3", 1), ("u4", "v3", 1), ("u2", "v1", 1)]
    else:
        raise ValueError(variant)
    _b0_hexagon(triples, names)
    triples += [("u2", "w1", 1), ("v1", "w4", 1)]
    return _named(names, triples)


def r4_toy() -> tuple[MapInstance, dict[str, int]]:
    """A cost-two 4-cycle a,b,c,d whose antipodal nodes b, d have degree two, hung off a hexagon."""
    names = ["a", "b", "c", "d"]
    triples = [("a", "b", 0), ("b", "c", 1), ("c", "d", 0), ("d", "a", 1)]
    _b0_hexagon(triples, names)
    triples += [("a", "w1", 1), ("c", "w4", 1)]
    return _named(names, triples)


def r8_nine() -> MapInstance:
    """Smallest R8 carrier: two cost-two 4-cycles joined by three edges, plus one outside node.

    Nodes u1..u4 are 0..3, v1..v4 are 4..7 and the outside node 8 touches u2 and v1.
    """
    u1, u2, u3, u4, v1, v2, v3, v4, x = range(9)
    return _build(9, [(u1, u2, 1), (u2, u3, 0), (u3, u4, 1), (u4, u1, 0),
                      (v1, v2, 1), (v2, v3, 0), (v3, v4, 1), (v4, v1, 0),
                      (u3, v1, 1), (v4, u2, 1), (u4, v3, 1), (x, u2, 1), (x, v1, 1)])


def scene_pseudo_ear() -> tuple[MapInstance, frozenset[int], dict[str, int]]:
    """Bridge-covering scene: (G, H, names).

    C0 is a 4-cycle R (r = v3) with a bridge path r, p1, p2, v5 to a 5-cycle;
    C1 is two triangles on u3; C2 is two triangles joined by the path
    w1, q1, q2, q3, w4.  Path nodes carry no zero-edges.
    """
    names = (["u1", "u2", "u3", "u4", "u5", "v1", "v2", "v3", "v4", "p1", "p2",
              "v5", "v6", "v7", "v8", "v9", "w1", "w2", "w3", "w4", "w5", "w6", "q1", "q2", "q3"])
    h = [("u1", "u2", 1), ("u2", "u3", 1), ("u3", "u1", 0), ("u3", "u4", 1), ("u4", "u5", 0),
         ("u5", "u3", 1),
         ("v1", "v2", 0), ("v2", "v3", 1), ("v3", "v4", 0), ("v4", "v1", 1),
         ("v3", "p1", 1), ("p1", "p2", 1), ("p2", "v5", 1),
         ("v5", "v6", 0), ("v6", "v7", 1), ("v7", "v8", 0), ("v8", "v9", 1), ("v9", "v5", 1),
         ("w1", "w2", 0), ("w2", "w3", 1), ("w3", "w1", 1),
         ("w4", "w5", 0), ("w5", "w6", 1), ("w6", "w4", 1),
         ("w1", "q1", 1), ("q1", "q2", 1), ("q2", "q3", 1), ("q3", "w4", 1)]
    extra = [("u3", "v2", 1), ("u5", "w1", 1), ("p2", "q2", 1), ("u2", "v1", 1),
             ("u4", "w2", 1), ("w3", "w4", 1), ("w6", "w1", 1), ("w6", "v6", 1)]
    inst, index = _named(names, h + extra)
    return inst, frozenset(range(len(h))), index


def scene_swappable() -> tuple[MapInstance, frozenset[int], dict[str, int]]:
    """Triangle B1 (u1, u, v) with swappable edge uv; 4-cycle B2 (x, x2, y, x4) with diagonal x2x4."""
    names = ["u1", "u", "v", "x", "x2", "y", "x4"] + [f"b{i}" for i in range(6)]
    h = [("u1", "u", 1), ("u", "v", 1), ("v", "u1", 0),
         ("x", "x2", 0), ("x2", "y", 1), ("y", "x4", 0), ("x4", "x", 1)]
    h += [(f"b{i}", f"b{(i + 1) % 6}", 0 if i % 2 == 0 else 1) for i in range(6)]
    extra = [("u", "b0", 1), ("v", "b3", 1), ("x", "b1", 1), ("y", "b4", 1), ("x2", "x4", 1)]
    inst, index = _named(names, h + extra)
    return inst, frozenset(range(len(h))), index


def scene_good_bad() -> tuple[MapInstance, frozenset[int], dict[str, int]]:
    """Triangle B1 (u, v, w): uv is good, vw is bad; B2 4-cycle, B3 hexagon."""
    names = ["u", "v", "w", "w1", "w2", "w3", "w4", "w5", "w6", "z1", "x", "z2", "y"]
    h = [("u", "v", 1), ("v", "w", 1), ("w", "u", 0),
         ("w1", "w2", 1), ("w2", "w3", 0), ("w3", "w4", 1), ("w4", "w5", 1), ("w5", "w6", 0),
         ("w6", "w1", 1),
         ("z1", "x", 0), ("x", "z2", 1), ("z2", "y", 0), ("y", "z1", 1)]
    extra = [("v", "w6", 1), ("w", "w5", 1), ("y", "u", 1), ("x", "w4", 1), ("z1", "z2", 1)]
    inst, index = _named(names, h + extra)
    return inst, frozenset(range(len(h))), index


def scene_red_cycle() -> tuple[MapInstance, frozenset[int], dict[str, int]]:
    """Three small 4-cycles B3, B2, B1 whose bad swappable edges form a directed 3-cycle."""
    names = ([f"u{i}" for i in range(1, 5)] + [f"v{i}" for i in range(1, 5)]
             + [f"x{i}" for i in range(1, 5)] + [f"w{i}" for i in range(1, 7)])
    h = [("u1", "u2", 1), ("u2", "u3", 0), ("u3", "u4", 1), ("u4", "u1", 0),
         ("v1", "v2", 0), ("v2", "v3", 1), ("v3", "v4", 0), ("v4", "v1", 1),
         ("x1", "x2", 0), ("x2", "x3", 1), ("x3", "x4", 0), ("x4", "x1", 1),
         ("w1", "w2", 1), ("w2", "w3", 0), ("w3", "w4", 1), ("w4", "w5", 1), ("w5", "w6", 0),
         ("w6", "w1", 1)]
    extra = [("u4", "x3", 1), ("u3", "x3", 1), ("u2", "w2", 1), ("x3", "w5", 1),
             ("x1", "v2", 1), ("x4", "v2", 1), ("v1", "u2", 1), ("v4", "u2", 1)]
    inst, index = _named(names, h + extra)
    return inst, frozenset(range(len(h))), index


def scene_gluing() -> tuple[MapInstance, frozenset[int], dict[str, int]]:
    """Large blocks B1 (pentagon), B2 (unit 4-cycle), B3 (hexagon) and small triangle B4 (u, v, a1)."""
    names = ([f"x{i}" for i in range(1, 6)] + [f"w{i}" for i in range(1, 7)]
             + ["z1", "x", "z2", "y", "u", "v", "a1"])
    h = [("x1", "x2", 1), ("x2", "x3", 0), ("x3", "x4", 1), ("x4", "x5", 1), ("x5", "x1", 1),
         ("w1", "w2", 1), ("w2", "w3", 0), ("w3", "w4", 1), ("w4", "w5", 1), ("w5", "w6", 0),
         ("w6", "w1", 1),
         ("z1", "x", 1), ("x", "z2", 1), ("z2", "y", 1), ("y", "z1", 1),
         ("u", "v", 1), ("v", "a1", 0), ("a1", "u", 1)]
    extra = [("x4", "w6", 1), ("x5", "w5", 1), ("y", "x1", 1), ("x", "w4", 1),
             ("w6", "u", 1), ("w3", "v", 1)]
    inst, index = _named(names, h + extra)
    return inst, frozenset(range(len(h))), index


# ---------------------------------------------------------------------------
# random instances

def gen_random(n: int, p: float, seed: int, zero_frac: float = 0.8,
               simple: bool = True) -> MapInstance:
    """Random 2EC MAP instance.

    A random matching supplies the zero-edges (each candidate pair kept with
    probability ``zero_frac``), unit edges appear independently with
    probability ``p``, and random unit edges are then added until the graph
    is 2-edge-connected.
    """
    if n < 3 and simple:
        raise ValueError("a simple 2EC graph needs at least three nodes")
    rng = random.Random(seed)
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges: list[tuple[int, int, int]] = []
    pairs: set[tuple[int, int]] = set()
    for i in range(0, n - 1, 2):
        if rng.random() < zero_frac:
            a, b = sorted((nodes[i], nodes[i + 1]))
            edges.append((a, b, 0))
            pairs.add((a, b))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in pairs and rng.random() < p:
                edges.append((a, b, 1))
                pairs.add((a, b))
    while True:
        inst = MapInstance.from_edges(n, edges)
        bridges = find_bridges(inst)
        comps = connected_components(inst.sub(inst.edge_ids - bridges))
        if len(comps) == 1:
            return inst
        # every bridge-free class with fewer than two links to the rest gets a random new edge out
        where = [0] * n
        for i, comp in enumerate(comps):
            for x in comp:
                where[x] = i
        links = [0] * len(comps)
        for eid in bridges:
            e = inst.by_id[eid]
            links[where[e.u]] += 1
            links[where[e.v]] += 1
        for i, comp in enumerate(comps):
            if links[i] >= 2:
                continue
            for _ in range(20):
                a = rng.choice(sorted(comp))
                b = rng.randrange(n)
                key = (min(a, b), max(a, b))
                if where[b] != i and not (simple and key in pairs):
                    edges.append((key[0], key[1], 1))
                    pairs.add(key)
                    break


def gen_sparse(n: int, seed: int, min_degree: int = 3, zero_frac: float = 1.0) -> MapInstance:
    """Random simple instance with a near-perfect zero matching and min degree ``min_degree``.

    Unit edges are added between random low-degree nodes until every degree
    reaches ``min_degree``; such graphs are 3-connected with high probability,
    which makes them good well-structured candidates.
    """
    rng = random.Random(seed)
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges: list[tuple[int, int, int]] = []
    pairs: set[tuple[int, int]] = set()
    deg = [0] * n
    for i in range(0, n - 1, 2):
        if rng.random() < zero_frac:
            a, b = sorted((nodes[i], nodes[i + 1]))
            edges.append((a, b, 0))
            pairs.add((a, b))
            deg[a] += 1
            deg[b] += 1
    # a random Hamiltonian cycle keeps the graph 2EC from the start
    order = list(range(n))
    rng.shuffle(order)
    for i in range(n):
        a, b = sorted((order[i], order[(i + 1) % n]))
        if (a, b) not in pairs:
            edges.append((a, b, 1))
            pairs.add((a, b))
            deg[a] += 1
            deg[b] += 1
    low = [v for v in range(n) if deg[v] < min_degree]
    tries = 0
    while low and tries < 50 * n:
        tries += 1
        a = rng.choice(low)
        b = rng.randrange(n)
        key = (min(a, b), max(a, b))
        if a == b or key in pairs:
            continue
        edges.append((key[0], key[1], 1))
        pairs.add(key)
        deg[a] += 1
        deg[b] += 1
        low = [v for v in low if deg[v] < min_degree]
    return MapInstance.from_edges(n, edges)


def gen_well_structured(n: int, seed: int, max_tries: int = 500, min_degree: int = 3,
                        zero_frac: float = 1.0) -> MapInstance:
    """First well-structured instance among seeded ``gen_sparse`` draws."""
    from .obstructions import is_well_structured

    for t in range(max_tries):
        inst = gen_sparse(n, seed * 7919 + t, min_degree=min_degree, zero_frac=zero_frac)
        if is_well_structured(inst):
            return inst
    raise RuntimeError(f"no well-structured instance found for n={n}, seed={seed}")


def _random_block(rng: random.Random, k: int) -> list[tuple[int, int, int]]:
    """A small random 2EC block on ``0..k-1``: alternating cycle plus a few chords."""
    edges = alternating_cycle(k, 0, first_zero=rng.random() < 0.5)
    for _ in range(rng.randint(0, 2)):
        a, b = sorted(rng.sample(range(k), 2))
        if abs(a - b) not in (1, k - 1):
            edges.append((a, b, 1))
    return edges


class _Composer:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.n = 0
        self.edges: list[tuple[int, int, int]] = []
        self.mate: dict[int, int] = {}

    def block(self, k: int) -> list[int]:
        base = self.n
        for a, b, c in _random_block(self.rng, k):
            self.add(base + a, base + b, c)
        self.n += k
        return list(range(base, base + k))

    def nodes(self, k: int) -> list[int]:
        base = self.n
        self.n += k
        return list(range(base, base + k))

    def add(self, a: int, b: int, c: int) -> None:
        if c == 0:
            assert a not in self.mate and b not in self.mate
            self.mate[a] = b
            self.mate[b] = a
        self.edges.append((a, b, c))

    def build(self) -> MapInstance:
        perm = list(range(self.n))
        self.rng.shuffle(perm)
        edges = [(perm[a], perm[b], c) for a, b, c in self.edges]
        self.rng.shuffle(edges)
        return MapInstance.from_edges(self.n, edges)


def gen_planted(kind: str, seed: int, block_size: tuple[int, int] = (4, 6)) -> MapInstance:
    """Random instance with one planted structure of the given kind around random blocks."""
    rng = random.Random(seed)
    c = _Composer(rng)
    lo, hi = block_size

    def blk() -> list[int]:
        return c.block(rng.randint(lo, hi))

    if kind == "cut-node":
        b1, b2 = blk(), blk()
        x = c.nodes(1)[0]
        for b in (b1, b2):
            p, q = rng.sample(b, 2)
            c.add(x, p, 1)
            c.add(x, q, 1)
    elif kind == "parallel-edges":
        b1 = blk()
        b2 = blk()
        p1, q1 = rng.sample(b1, 2)
        p2, q2 = rng.sample(b2, 2)
        c.add(p1, p2, 1)
        c.add(q1, q2, 1)
        c.add(q1, q2, 1)
    elif kind in ("zero-cost-S2", "unit-cost-S2"):
        u, v = c.nodes(2)
        blocks = [blk(), blk()] + ([blk()] if rng.random() < 0.5 else [])
        if kind == "zero-cost-S2":
            c.add(u, v, 0)
            for b in blocks:
                c.add(u, rng.choice(b), 1)
                c.add(v, rng.choice(b), 1)
        else:
            c.add(u, v, 1)
            # a fresh node hung on each side block by two unit edges takes the zero-edge
            for x, b in ((u, blocks[0]), (v, blocks[1])):
                f = c.nodes(1)[0]
                p, q = rng.sample(b, 2)
                c.add(f, p, 1)
                c.add(f, q, 1)
                c.add(x, f, 0)
                b.append(f)
            c.add(v, rng.choice(blocks[0]), 1)
            c.add(u, rng.choice(blocks[1]), 1)
            for b in blocks[2:]:
                c.add(u, rng.choice(b), 1)
                c.add(v, rng.choice(b), 1)
    elif kind == "S34":
        k = rng.choice((3, 4))
        s = c.nodes(k)
        if k == 3:
            c.add(s[0], s[1], 0)
            c.add(s[1], s[2], 1)
            c.add(s[2], s[0], 1)
        else:
            c.add(s[0], s[1], 0)
            c.add(s[1], s[2], 1)
            c.add(s[2], s[3], 0)
            c.add(s[3], s[0], 1)
        for b in (blk(), blk()):
            p, q = rng.sample(s, 2)
            c.add(p, rng.choice(b), 1)
            c.add(q, rng.choice(b), 1)
    elif kind == "R4":
        s = c.nodes(4)
        c.add(s[0], s[1], 0)
        c.add(s[1], s[2], 1)
        c.add(s[2], s[3], 0)
        c.add(s[3], s[0], 1)
        b = c.block(rng.randint(max(lo, 6), max(hi, 8)))
        c.add(s[0], b[0], 1)
        c.add(s[2], rng.choice(b[2:]), 1)
    elif kind == "R8":
        s = c.nodes(8)
        u1, u2, u3, u4, v1, v2, v3, v4 = s
        for a, b2, cost in [(u1, u2, 1), (u2, u3, 0), (u3, u4, 1), (u4, u1, 0),
                            (v1, v2, 1), (v2, v3, 0), (v3, v4, 1), (v4, v1, 0),
                            (u3, v1, 1), (v4, u2, 1), (u4, v3, 1)]:
            c.add(a, b2, cost)
        b = c.block(rng.randint(max(lo, 4), max(hi, 6)))
        c.add(u2, b[0], 1)
        c.add(v1, rng.choice(b[1:]), 1)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return c.build()


FAMILIES = {
    "c4": lambda k: fix_c4(),
    "tight": tight_s3,
    "g1": lambda k: g1(),
    "g2": g2,
    "g3": g3,
}

# names used by the command line and by external harnesses
gen_tight_s3 = tight_s3
gen_g1 = g1
gen_g2 = g2
gen_g3 = g3
