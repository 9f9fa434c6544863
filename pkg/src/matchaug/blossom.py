"""Maximum-cardinality matching in general graphs (Edmonds' blossom method).

The search grows one alternating tree at a time from a free vertex and
shrinks odd cycles by redirecting ``base`` pointers.  Per-search state is
reset only on the vertices the search touched, and a tree whose search fails
is discarded for good (no later augmenting path can enter it), so the total
work stays close to linear per augmentation.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence


def max_cardinality_matching(n: int, adj: Sequence[Sequence[int]],
                             mate: list[int] | None = None) -> list[int]:
    """Return ``mate`` with ``mate[v]`` the partner of ``v`` or -1.

    ``mate`` may hold a valid starting matching; it is extended in place.
    """
    if mate is None:
        mate = [-1] * n
    else:
        for v, w in enumerate(mate):
            if w != -1 and mate[w] != v:
                raise ValueError(f"starting matching is inconsistent at vertex {v}")
    # cheap greedy pass first
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1 and w != v:
                    mate[v] = w
                    mate[w] = v
                    break

    base = list(range(n))
    parent = [-1] * n
    outer = [False] * n
    in_blossom = [False] * n
    dead = [False] * n

    def lca(a: int, b: int) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, marked: list[int]) -> None:
        while base[v] != b:
            for x in (base[v], base[mate[v]]):
                if not in_blossom[x]:
                    in_blossom[x] = True
                    marked.append(x)
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def search(root: int) -> tuple[int, list[int]]:
        touched = [root]
        outer[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if dead[to] or base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    marked: list[int] = []
                    mark_path(v, cur, to, marked)
                    mark_path(to, cur, v, marked)
                    for x in touched:
                        if in_blossom[base[x]]:
                            base[x] = cur
                            if not outer[x]:
                                outer[x] = True
                                queue.append(x)
                    for x in marked:
                        in_blossom[x] = False
                elif parent[to] == -1:
                    parent[to] = v
                    touched.append(to)
                    if mate[to] == -1:
                        return to, touched
                    m = mate[to]
                    touched.append(m)
                    outer[m] = True
                    queue.append(m)
        return -1, touched

    for root in range(n):
        if mate[root] != -1 or dead[root]:
            continue
        end, touched = search(root)
        if end == -1:
            for x in touched:
                dead[x] = True
        else:
            v = end
            while v != -1:
                pv = parent[v]
                nxt = mate[pv]
                mate[v] = pv
                mate[pv] = v
                v = nxt
        for x in touched:
            base[x] = x
            parent[x] = -1
            outer[x] = False
    return mate
