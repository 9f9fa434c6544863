import hashlib
import json
from fractions import Fraction

import pytest

from matchaug import generators as G
from matchaug.graph import ValidationError
from matchaug.oracle import OracleBudget
from matchaug.pipeline import (UNKNOWN, format_instance, format_solution, parse_instance, parse_solution,
                               ratio_report, render_ratio, solve, solve_many, verify)

WIDE = OracleBudget(max_nodes=30)

# sha256 of format_instance(gen_random(8, 0.5, 42)), fixed at build time
RANDOM_8_42 = "f14b1fa99310512c5acfd7ab0e53fe731a349fe6ffc2b0d19c930a0794dc9c80"


def test_round_trip():
    inst = G.g2(1)
    again = parse_instance(format_instance(inst, comment="g2"))
    assert again.edges == inst.edges


def test_generator_is_deterministic():
    text = format_instance(G.gen_random(8, 0.5, 42))
    assert text == format_instance(G.gen_random(8, 0.5, 42))
    assert hashlib.sha256(text.encode()).hexdigest() == RANDOM_8_42


@pytest.mark.parametrize("text,needle", [
    ("", "empty"),
    ("3 2\n1 2 1\n", "announces"),
    ("3 1\n1 4 1\n", "out of"),
    ("2 1\n1 2 x\n", "integers"),
])
def test_parse_errors(text, needle):
    with pytest.raises(ValueError, match=needle):
        parse_instance(text)


def test_parse_rejects_matching_violation():
    with pytest.raises(ValidationError):
        parse_instance("3 3\n1 2 0\n2 3 0\n3 1 1\n")


def test_comments_are_ignored():
    inst = parse_instance("# c4\n4 4 # header\n1 2 0\n2 3 1\n3 4 0\n4 1 1\n")
    assert inst.m == 4 and inst.by_id[1].cost == 1


def test_verify_verdicts():
    inst = G.tight_s3(1)
    rep = solve(inst, budget=WIDE)
    assert verify(inst, rep.solution).ok
    fewer = sorted(rep.solution)[1:]
    v = verify(inst, fewer)
    assert not v.ok and ("bridge introduced" in str(v) or "disconnected" in str(v))
    assert "not a subgraph" in str(verify(inst, [999]))
    assert "cost mismatch" in str(verify(inst, rep.solution, claimed_cost=3))


def test_solution_file_round_trip():
    inst = G.g1()
    rep = solve(inst, budget=WIDE)
    assert set(parse_solution(format_solution(inst, rep.solution))) == set(rep.solution)


def test_tight_report():
    rep = solve(G.tight_s3(1), "t1", WIDE)
    assert (rep.cost, rep.d2_cost, rep.opt, rep.bound_ok) == (11, 9, 11, True)
    assert rep.bound == Fraction(49, 3)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["bound_ok"] is True and data["opt"] == 11
    assert "merge large-cycle" in rep.to_text(trace=True)


def test_g1_routes_through_s34():
    rep = solve(G.g1(), budget=WIDE)
    assert [s.kind for s in rep.decomposition.steps] == ["S34"]
    assert rep.merges == [] and rep.bound_ok


def test_opt_unknown_when_over_budget():
    rep = solve(G.tight_s3(3), budget=OracleBudget(max_nodes=12))
    assert rep.opt == UNKNOWN and rep.bound_ok is None
    assert "bound_ok unknown (budget)" in rep.to_text()


def test_batch_keeps_order():
    items = [(str(s), G.gen_random(8, 0.4, s)) for s in range(6)]
    serial = solve_many(items)
    parallel = solve_many(items, jobs=2)
    assert [r.instance_id for r in parallel] == [str(s) for s in range(6)]
    assert [r.solution for r in serial] == [r.solution for r in parallel]


def test_render_ratio():
    assert render_ratio(Fraction(10, 7)) == "10/7 (≈ 1.429)"


def test_ratio_rows():
    (row,) = ratio_report("g2", [1])
    assert row.opt_over_d2 >= Fraction(10, 7)
    (row,) = ratio_report("tight-s3", [1])
    assert row.opt_over_d2 >= Fraction(11, 9)
    rows = ratio_report("tight-s3", [3], budget=OracleBudget(max_nodes=12))
    assert rows[0].opt is None and "bound only" in rows[0].line()
    for row in ratio_report("random", range(6, 13), seed=5):
        assert row.alg_over_opt <= Fraction(5, 3)
