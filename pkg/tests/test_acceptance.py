"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary so they survive output capture.
"""

from __future__ import annotations

import functools
import time
from fractions import Fraction

import networkx as nx

from conftest import ACCEPTANCE_LINES
from equivalence import disagreements
from matchaug import generators as G
from matchaug.blossom import max_cardinality_matching
from matchaug.bridge_cover import bridge_cover, init_credits
from matchaug.d2 import compute_d2, gadget, normalize_d2
from matchaug.gluing import glue
from matchaug.graph import is_two_edge_connected
from matchaug.obstructions import KINDS, find_all
from matchaug.oracle import OracleBudget, min_2edge_cover, opt_2ecss, opt_at_least
from matchaug.pipeline import ratio_report, solve, verify
from matchaug.preprocess import decompose

WIDE = OracleBudget(max_nodes=40)

SWEEP_SIZE = 500
SWEEP_LIMIT_S = 600.0
TIGHT_LIMIT_S = 5.0
FAMILY_LIMIT_S = 60.0
CREDIT_RUNS = 200
PLANTED_RUNS = 200
BIG_N = 2000
BIG_LIMIT_S = 30.0


def report(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def sweep_instances():
    """500 seeded 2EC instances with n <= 14: 400 random plus 100 well structured."""
    out = []
    for s in range(400):
        n = 4 + s % 11
        out.append(G.gen_random(n, 0.2 + (s % 4) * 0.1, 1000 + s, zero_frac=0.6 + (s % 5) * 0.1))
    for s in range(100):
        out.append(G.gen_well_structured(12 + s % 3, 5000 + s, min_degree=2 + s % 2, zero_frac=0.7))
    return out


@functools.lru_cache(maxsize=1)
def sweep():
    start = time.perf_counter()
    rows = []
    for inst in sweep_instances():
        rep = solve(inst, budget=WIDE, compute_opt=False)
        opt = opt_2ecss(inst, WIDE)[0]
        rows.append((inst, rep, opt))
    return rows, time.perf_counter() - start


def test_criterion_1_guarantee_sweep():
    rows, elapsed = sweep()
    bad = []
    glued = 0
    for inst, rep, opt in rows:
        bound = max(Fraction(opt), Fraction(5 * opt - 6, 3))
        if not verify(inst, rep.solution).ok or Fraction(rep.cost) > bound:
            bad.append((inst.n, rep.cost, opt))
        glued += "glue" in rep.leaf_methods.values()
    ok = len(rows) >= SWEEP_SIZE and not bad and elapsed < SWEEP_LIMIT_S
    report(1, ok, f"{len(rows)} instances (n<=14, {glued} through gluing), {len(bad)} violations, "
                  f"{elapsed:.1f}s < {SWEEP_LIMIT_S:.0f}s")
    assert ok, bad[:5]


def test_criterion_2_lower_bound():
    rows, _ = sweep()
    above = mismatch = 0
    for inst, _, opt in rows:
        d2 = compute_d2(inst).cost
        above += d2 > opt
        mismatch += d2 != min_2edge_cover(inst, WIDE)[0]
    ok = above == 0 and mismatch == 0
    report(2, ok, f"cost(D2) > opt on {above} of {len(rows)}; matching vs oracle cover mismatches {mismatch}")
    assert ok


def test_criterion_3_tight_family():
    start = time.perf_counter()
    inst = G.tight_s3(1)
    d2 = compute_d2(inst).cost
    cover = min_2edge_cover(inst, WIDE)[0]
    opt_ok = opt_at_least(inst, 11, WIDE)
    rep = solve(inst, budget=WIDE)
    elapsed = time.perf_counter() - start
    ok = inst.n == 12 and d2 == 9 == cover and opt_ok and rep.bound_ok and elapsed < TIGHT_LIMIT_S
    report(3, ok, f"n={inst.n} cost(D2)={d2} (oracle {cover}), opt>=11 {opt_ok}, alg={rep.cost} "
                  f"bound_ok={rep.bound_ok}, {elapsed:.2f}s < {TIGHT_LIMIT_S:.0f}s")
    assert ok


def test_criterion_4_appendix_families():
    parts = []
    ok = True
    for name, build in (("g2", G.g2), ("g3", G.g3)):
        start = time.perf_counter()
        inst = build(1)
        cover = min_2edge_cover(inst, WIDE)[0]
        d2 = compute_d2(inst).cost
        opt10 = opt_at_least(inst, 10, WIDE)
        elapsed = time.perf_counter() - start
        (row,) = ratio_report(name, [1], WIDE)
        good = d2 <= 7 and cover == d2 and opt10 and elapsed < FAMILY_LIMIT_S and row.opt_over_d2 >= Fraction(10, 7)
        ok &= good
        parts.append(f"{name}(1) d2={d2} opt>=10 {opt10} opt/d2={row.opt_over_d2} {elapsed:.2f}s")
    report(4, ok, "; ".join(parts))
    assert ok


def test_criterion_5_credit_invariants():
    runs = ears = merges = 0
    bad = []
    for s in range(CREDIT_RUNS):
        inst = G.gen_well_structured(12 + s % 9, 9000 + s, min_degree=2 + s % 2, zero_frac=0.7)
        d2 = normalize_d2(inst, compute_d2(inst))
        _, start = init_credits(inst, d2.cover.edge_ids)
        ear_log, merge_log = [], []
        # every iteration boundary runs the full invariant check inside both stages
        H, credits = bridge_cover(inst, d2.cover.edge_ids, ear_log)
        out = glue(inst, H, credits, check=True, trace=merge_log)
        paid_ears = sum(r.paid for r in ear_log)
        paid_merges = sum(len(r.added) - len(r.discarded) for r in merge_log)
        released = sum(r.credit_in - r.credit_out for r in merge_log)
        final_credit = credits.budget - inst.cost(out)
        balanced = (inst.cost(H) == d2.cost + paid_ears
                    and inst.cost(out) == inst.cost(H) + paid_merges
                    and released == paid_merges
                    and start.total() - paid_ears - paid_merges == final_credit
                    and final_credit >= 2)
        if not balanced:
            bad.append(s)
        runs += 1
        ears += len(ear_log)
        merges += len(merge_log)
    ok = runs == CREDIT_RUNS and not bad
    report(5, ok, f"{runs} well-structured instances, {ears} pseudo-ears, {merges} merges, "
                  f"ledger off on {len(bad)}")
    assert ok, bad[:5]


def test_criterion_6_detector_equivalence():
    insts = [G.fix_c4(), G.bowtie(), G.bowtie_bridge(), G.r8_nine()]
    insts += [G.gen_random(4 + s % 6, 0.35, 7000 + s, simple=s % 3 != 0) for s in range(300)]
    found = {k: 0 for k in KINDS}
    diff = []
    for inst in insts:
        assert inst.n <= 9
        diff.extend(disagreements(inst))
        for k in KINDS:
            found[k] += bool(find_all(inst, k))
    ok = not diff
    report(6, ok, f"{len(insts)} instances n<=9, {len(diff)} disagreements; "
                  + ", ".join(f"{k}:{v}" for k, v in found.items()))
    assert ok, diff[:5]


def test_criterion_7_decomposition_soundness():
    bad = []
    steps = 0
    for s in range(PLANTED_RUNS):
        inst = G.gen_planted(KINDS[s % 7], s, block_size=(6, 9))
        trace = decompose(inst, WIDE)
        seen: set[int] = set()
        for i in trace.leaves:
            ids = {e.id for e in trace.instances[i].edges}
            if ids & seen:
                bad.append((s, "leaves overlap"))
            seen |= ids
        for st in trace.steps:
            if st.phi_after >= st.phi_before:
                bad.append((s, "phi"))
        steps += len(trace.steps)
        rep = solve(inst, budget=WIDE)
        if not (rep.verdict.ok and rep.bound_ok):
            bad.append((s, "bound"))
    a1 = solve(G.g1(), budget=WIDE)
    a1_ok = [st.kind for st in a1.decomposition.steps] == ["S34"] and a1.merges == [] and a1.bound_ok
    ok = not bad and a1_ok
    report(7, ok, f"{PLANTED_RUNS} planted instances, {steps} reduction steps, {len(bad)} failures; "
                  f"g1 via S34 without gluing: {a1_ok}")
    assert ok, bad[:5]


def test_criterion_8_performance():
    inst = G.gen_well_structured(BIG_N, 1)
    start = time.perf_counter()
    rep = solve(inst)
    elapsed = time.perf_counter() - start
    exact = 0
    checked = 0
    for s in range(100):
        small = G.gen_random(4 + s % 9, 0.35, 300 + s, zero_frac=0.6)
        k, adj, _, _ = gadget(small)
        mate = max_cardinality_matching(k, adj)
        g = nx.Graph()
        g.add_nodes_from(range(k))
        g.add_edges_from((a, b) for a in range(k) for b in adj[a] if a < b)
        exact += sum(1 for v in mate if v != -1) // 2 == len(nx.max_weight_matching(g, maxcardinality=True))
        checked += 1
    ok = rep.verdict.ok and elapsed < BIG_LIMIT_S and exact == checked and is_two_edge_connected(inst.sub(rep.solution))
    report(8, ok, f"n={inst.n} solve {elapsed:.2f}s < {BIG_LIMIT_S:.0f}s; blossom exact on {exact}/{checked} "
                  f"gadgets (n<=12)")
    assert ok


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
