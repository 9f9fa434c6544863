"""Exhaustive detector-vs-definition comparison shared by the test modules."""

from __future__ import annotations

import itertools

from matchaug.obstructions import KINDS, find_all
from matchaug.oracle import obstruction_check_by_definition


def candidates(inst, kind):
    nodes = range(inst.n)
    if kind == "cut-node":
        return [(v,) for v in nodes]
    if kind == "parallel-edges":
        return list(itertools.combinations(sorted(inst.by_id), 2))
    if kind in ("zero-cost-S2", "unit-cost-S2"):
        return [(i,) for i in sorted(inst.by_id)]
    if kind == "S34":
        return [S for k in (3, 4) for S in itertools.combinations(nodes, k)]
    if kind == "R4":
        return list(itertools.combinations(nodes, 4))
    return list(itertools.combinations(nodes, 8))


def _arg(kind, cand):
    if kind in ("cut-node", "zero-cost-S2", "unit-cost-S2"):
        return cand[0]
    return cand


def disagreements(inst):
    """List of (kind, carrier, detector_says, definition_says) mismatches."""
    out = []
    for kind in KINDS:
        found = {tuple(ob.carrier) for ob in find_all(inst, kind)}
        for cand in candidates(inst, kind):
            lit = obstruction_check_by_definition(inst, kind, _arg(kind, cand))
            if lit != (tuple(cand) in found):
                out.append((kind, cand, tuple(cand) in found, lit))
    return out
