"""End-to-end solving, instance files, verification and ratio tables."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import generators
from .bridge_cover import EarRecord, bridge_cover
from .d2 import compute_d2, normalize_d2
from .errors import InvariantBreach
from .gluing import MergeRecord, glue
from .graph import MapInstance, check_instance, connected_components, find_bridges
from .obstructions import WELL_STRUCTURED_MIN_NODES
from .oracle import BudgetExceeded, OracleBudget, opt_2ecss
from .preprocess import DEFAULT_CONFIG, ApproxConfig, DecompositionTrace, decompose, recombine

UNKNOWN = "unknown (budget)"


# ---------------------------------------------------------------------------
# text formats

def parse_instance(text: str) -> MapInstance:
    """Parse ``n m`` followed by ``m`` lines ``u v c`` (1-based nodes, ``#`` comments).

    Edge ids follow line order starting at 0.  Raises ``ValueError`` on
    malformed input and ``ValidationError`` when the edges break the MAP rules.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers, got {raw!r}") from None
    if not rows:
        raise ValueError("empty instance")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ValueError(f"line {lineno}: header must be 'n m'")
    n, m = head
    if len(rows) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(rows) - 1}")
    triples = []
    for lineno, vals in rows[1:]:
        if len(vals) != 3:
            raise ValueError(f"line {lineno}: edge lines are 'u v c'")
        u, v, c = vals
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"line {lineno}: node id out of 1..{n}")
        triples.append((u - 1, v - 1, c))
    return check_instance(MapInstance.from_edges(n, triples))


def format_instance(inst: MapInstance, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{inst.n} {inst.m}")
    lines.extend(f"{e.u + 1} {e.v + 1} {e.cost}" for e in sorted(inst.edges, key=lambda e: e.id))
    return "\n".join(lines) + "\n"


def read_instance(path: str | Path) -> MapInstance:
    return parse_instance(Path(path).read_text())


def format_solution(inst: MapInstance, ids: Iterable[int]) -> str:
    """One 1-based edge line number per line, preceded by a cost comment."""
    ids = sorted(ids)
    return f"# cost {inst.cost(ids)}\n" + "".join(f"{i + 1}\n" for i in ids)


def parse_solution(text: str) -> list[int]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        out.extend(int(tok) - 1 for tok in line.split())
    return out


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple[str, ...]

    def __str__(self) -> str:
        return "pass" if self.ok else "fail: " + "; ".join(self.failures)


def verify(inst: MapInstance, solution: Iterable[int], claimed_cost: int | None = None) -> Verdict:
    """Check that ``solution`` is a spanning 2-ECSS of ``inst`` with the claimed cost."""
    ids = list(solution)
    failures = []
    foreign = sorted(set(i for i in ids if i not in inst.by_id))
    if foreign:
        failures.append(f"not a subgraph (edge ids {foreign[:5]})")
        return Verdict(False, tuple(failures))
    if len(set(ids)) != len(ids):
        failures.append("repeated edge ids")
    sub = inst.sub(ids)
    comps = connected_components(sub)
    if len(comps) > 1:
        failures.append(f"disconnected ({len(comps)} components)")
    elif find_bridges(sub):
        failures.append("bridge introduced")
    if inst.n < 2:
        failures.append("not spanning")
    if claimed_cost is not None and claimed_cost != sub.cost:
        failures.append(f"cost mismatch (claimed {claimed_cost}, actual {sub.cost})")
    return Verdict(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# solving

@dataclass
class SolveReport:
    instance_id: str
    solution: frozenset[int]
    cost: int
    d2_cost: int
    opt: int | str
    bound_ok: bool | None
    bound: Fraction | None
    verdict: Verdict
    decomposition: DecompositionTrace | None = None
    ears: list[EarRecord] = field(default_factory=list)
    merges: list[MergeRecord] = field(default_factory=list)
    leaf_methods: dict[int, str] = field(default_factory=dict)

    def to_text(self, trace: bool = False) -> str:
        lines = [f"instance {self.instance_id}",
                 f"cost {self.cost}",
                 f"d2_cost {self.d2_cost}",
                 f"opt {self.opt}",
                 f"bound {self.bound if self.bound is not None else UNKNOWN}",
                 f"bound_ok {self._bound_text()}",
                 f"verify {self.verdict}",
                 f"solution {' '.join(str(i + 1) for i in sorted(self.solution))}"]
        if trace:
            if self.decomposition is not None:
                lines.extend("decompose " + ln for ln in self.decomposition.to_text().splitlines())
            lines.extend(f"leaf {i} {how}" for i, how in sorted(self.leaf_methods.items()))
            lines.extend(r.line() for r in self.ears)
            lines.extend(r.line() for r in self.merges)
        return "\n".join(lines) + "\n"

    def _bound_text(self) -> str:
        return UNKNOWN if self.bound_ok is None else str(self.bound_ok).lower()

    def to_json(self) -> dict:
        """Structured form; see the README for the schema."""
        return {
            "instance": self.instance_id,
            "cost": self.cost,
            "d2_cost": self.d2_cost,
            "opt": self.opt,
            "bound": None if self.bound is None else str(self.bound),
            "bound_ok": self.bound_ok,
            "verify": {"ok": self.verdict.ok, "failures": list(self.verdict.failures)},
            "solution": [i + 1 for i in sorted(self.solution)],
            "steps": [] if self.decomposition is None else
                     [{"kind": s.kind, "phi": [s.phi_before, s.phi_after]} for s in self.decomposition.steps],
            "leaves": {str(i): how for i, how in sorted(self.leaf_methods.items())},
            "ears": [r.line() for r in self.ears],
            "merges": [r.line() for r in self.merges],
        }


def solve_leaf(leaf: MapInstance, budget: OracleBudget = OracleBudget(),
               ears: list | None = None, merges: list | None = None,
               min_nodes: int = WELL_STRUCTURED_MIN_NODES) -> tuple[frozenset[int], str]:
    """Exact search below ``min_nodes`` nodes, otherwise D2, bridge covering and gluing."""
    if leaf.n < min_nodes:
        small = OracleBudget(max_nodes=max(budget.max_nodes, min_nodes),
                             max_millis=budget.max_millis, node_visit_cap=budget.node_visit_cap)
        _, ids = opt_2ecss(leaf, small)
        return frozenset(ids), "oracle"
    d2 = normalize_d2(leaf, compute_d2(leaf))
    H, credits = bridge_cover(leaf, d2.cover.edge_ids, ears)
    return glue(leaf, H, credits, trace=merges), "glue"


def solve(inst: MapInstance, instance_id: str = "-", budget: OracleBudget = OracleBudget(),
          config: ApproxConfig = DEFAULT_CONFIG, compute_opt: bool = True) -> SolveReport:
    """Run the whole algorithm on a validated 2EC instance.

    ``opt`` is filled in by the exact oracle when the instance fits ``budget``.
    Broken guarantees raise ``InvariantBreach`` carrying the sub-instance.
    """
    check_instance(inst, require_2ec=True)
    trace = decompose(inst, budget)
    ears: list[EarRecord] = []
    merges: list[MergeRecord] = []
    leaf_sol = {}
    methods = {}
    for i in trace.leaves:
        leaf = trace.instances[i]
        try:
            leaf_sol[i], methods[i] = solve_leaf(leaf, budget, ears, merges)
        except InvariantBreach as exc:
            if exc.instance is None:
                exc.instance = leaf
            raise
    solution = recombine(trace, leaf_sol)
    verdict = verify(inst, solution)
    if not verdict.ok:
        raise InvariantBreach(f"final solution fails verification: {verdict}", inst)
    d2_cost = compute_d2(inst).cost
    opt: int | str = UNKNOWN
    if compute_opt and inst.n <= budget.max_nodes:
        try:
            opt, _ = opt_2ecss(inst, budget)
        except BudgetExceeded:
            opt = UNKNOWN
    cost = inst.cost(solution)
    if isinstance(opt, int):
        bound = config.bound(opt)
        bound_ok = Fraction(cost) <= bound
    else:
        bound, bound_ok = None, None
    return SolveReport(instance_id, solution, cost, d2_cost, opt, bound_ok, bound, verdict,
                       trace, ears, merges, methods)


def _solve_job(args):
    inst, name, budget = args
    return solve(inst, name, budget)


def solve_many(items: Sequence[tuple[str, MapInstance]], budget: OracleBudget = OracleBudget(),
               jobs: int = 1) -> list[SolveReport]:
    """Solve a batch; results come back in input order whatever ``jobs`` is."""
    work = [(inst, name, budget) for name, inst in items]
    if jobs <= 1 or len(work) <= 1:
        return [_solve_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_solve_job, work))


# ---------------------------------------------------------------------------
# ratio tables

FAMILY_BUILDERS = {
    "tight-s3": lambda p, seed: generators.tight_s3(p),
    "g2": lambda p, seed: generators.g2(p),
    "g3": lambda p, seed: generators.g3(p),
    "random": lambda p, seed: generators.gen_random(p, 0.3, seed),
}

# published bounds used when the oracle is out of budget: (opt lower bound, d2 upper bound)
FAMILY_BOUNDS = {
    "tight-s3": lambda p: (6 + 5 * p, 6 + 3 * p),
    "g2": lambda p: (7 * p + 3, 4 * p + 3),
    "g3": lambda p: (7 * p + 3, 4 * p + 3),
}


def render_ratio(r: Fraction | None) -> str:
    if r is None:
        return "-"
    return f"{r.numerator}/{r.denominator} (≈ {float(r):.3f})"


@dataclass(frozen=True)
class RatioRow:
    family: str
    param: int
    n: int
    d2_cost: int
    opt: int | None
    opt_bound: int | None
    alg_cost: int

    @property
    def opt_over_d2(self) -> Fraction | None:
        base = self.opt if self.opt is not None else self.opt_bound
        return None if base is None else Fraction(base, self.d2_cost)

    @property
    def alg_over_opt(self) -> Fraction | None:
        return None if self.opt is None else Fraction(self.alg_cost, self.opt)

    def line(self) -> str:
        opt = f"opt={self.opt}" if self.opt is not None else \
            (f"opt>={self.opt_bound} (bound only)" if self.opt_bound is not None else f"opt {UNKNOWN}")
        return (f"{self.family} param={self.param} n={self.n} d2={self.d2_cost} {opt} "
                f"alg={self.alg_cost} opt/d2={render_ratio(self.opt_over_d2)} "
                f"alg/opt={render_ratio(self.alg_over_opt)}")


def ratio_report(family: str, params: Iterable[int], budget: OracleBudget = OracleBudget(max_nodes=30),
                 seed: int = 0) -> list[RatioRow]:
    if family not in FAMILY_BUILDERS:
        raise ValueError(f"family must be one of {sorted(FAMILY_BUILDERS)}")
    rows = []
    for p in params:
        inst = FAMILY_BUILDERS[family](p, seed)
        rep = solve(inst, f"{family}:{p}", budget)
        opt = rep.opt if isinstance(rep.opt, int) else None
        bound = FAMILY_BOUNDS[family](p)[0] if family in FAMILY_BOUNDS else None
        rows.append(RatioRow(family, p, inst.n, rep.d2_cost, opt, None if opt is not None else bound,
                             rep.cost))
    return rows


def dump_json(reports: Sequence[SolveReport], path: str | Path) -> None:
    Path(path).write_text(json.dumps([r.to_json() for r in reports], indent=2) + "\n")
