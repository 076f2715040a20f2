"""Structural validators for certificates and the equivalence harness.

Every checker returns a :class:`VerificationReport` listing named checks
with pass/fail flags and measured parameters; reports never abort on the
first failure, so the output stays diagnostic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, NamedTuple, Sequence

from .instances import (
    BayesNet,
    CnfFormula,
    Graph,
    LogicProgram,
    TreeDecomposition,
    apply_assignment,
    delete_vertices,
    is_forest,
    underlying_graph,
    undirected_dependency_graph,
)
from .solvers import (
    OracleCapExceeded,
    SubSolverKind,
    SubSolverOutcome,
    brute_sat,
    subsolver_run,
)

DEFAULT_BACKDOOR_CHECK_CAP = 16


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: tuple[Check, ...]
    params: Mapping[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def format(self) -> str:
        lines = [f"subject: {self.subject}"]
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"  [{status}] {check.name}: {check.detail}")
        if self.params:
            pairs = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            lines.append(f"  params: {pairs}")
        lines.append(f"  overall: {'VALID' if self.passed else 'INVALID'}")
        return "\n".join(lines)


def check_tree_decomposition(g: Graph, td: TreeDecomposition) -> VerificationReport:
    """The four decomposition conditions against a graph, reported
    separately, plus the definitional requirement that bags only mention
    declared vertices.  The measured width is reported as a parameter."""
    checks = []

    stray = set()
    for bag in td.bags.values():
        stray |= set(bag) - set(g.vertices)
    checks.append(
        Check(
            "bag_vertices_declared",
            not stray,
            "all bag members are graph vertices" if not stray else f"undeclared: {sorted(map(repr, stray))}",
        )
    )

    covered = set()
    for bag in td.bags.values():
        covered |= bag
    missing = set(g.vertices) - covered
    checks.append(
        Check(
            "vertex_coverage",
            not missing,
            "every vertex appears in a bag" if not missing else f"missing: {sorted(map(repr, missing))}",
        )
    )

    uncovered = [
        e for e in g.edges if not any(e <= bag for bag in td.bags.values())
    ]
    checks.append(
        Check(
            "edge_coverage",
            not uncovered,
            "every edge lies inside a bag"
            if not uncovered
            else f"{len(uncovered)} uncovered, e.g. {sorted(map(repr, uncovered[0]))}",
        )
    )

    adj = td.bag_adjacency()
    broken = []
    for v in g.vertices:
        holders = {node for node in td.nodes if v in td.bags[node]}
        if not holders:
            continue
        start = min(holders)
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in adj[node]:
                if nxt in holders and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if seen != holders:
            broken.append(v)
    checks.append(
        Check(
            "bag_connectivity",
            not broken,
            "bags of each vertex induce a subtree"
            if not broken
            else f"disconnected for: {sorted(map(repr, broken))}",
        )
    )

    width = td.width
    oversized = [n for n in td.nodes if len(td.bags[n]) - 1 > width]
    checks.append(
        Check(
            "width_bound",
            not oversized,
            f"max bag size {width + 1} = width + 1",
        )
    )

    return VerificationReport(
        "tree-decomposition",
        tuple(checks),
        {"width": width, "nodes": len(td.nodes), "vertices": len(g.vertices)},
    )


def check_backdoor(
    formula: CnfFormula,
    backdoor: Iterable[int],
    kind: SubSolverKind,
    *,
    cap: int = DEFAULT_BACKDOOR_CHECK_CAP,
) -> VerificationReport:
    """Strong-backdoor check: every one of the 2^|B| restrictions must be
    determined (not rejected) by the sub-solver."""
    bd = sorted(set(backdoor))
    for v in bd:
        if not (1 <= v <= formula.num_vars):
            raise ValueError(f"backdoor mentions unknown variable x{v}")
    if len(bd) > cap:
        raise OracleCapExceeded(f"backdoor of size {len(bd)} exceeds the check cap of {cap}")
    rejected = 0
    first = ""
    for bits in itertools.product((False, True), repeat=len(bd)):
        tau = dict(zip(bd, bits))
        if subsolver_run(kind, apply_assignment(formula, tau)) is SubSolverOutcome.REJECTED:
            rejected += 1
            if not first:
                first = str(tau)
    detail = (
        f"all {2 ** len(bd)} restrictions determined by the {kind.value} sub-solver"
        if not rejected
        else f"{rejected} restrictions rejected, first at {first}"
    )
    return VerificationReport(
        f"{kind.value}-backdoor",
        (Check("all_restrictions_determined", rejected == 0, detail),),
        {"backdoor_size": len(bd), "restrictions": 2 ** len(bd)},
    )


def check_loop_cutset(net: BayesNet, cutset: Iterable[int]) -> VerificationReport:
    """A loop cutset must leave the underlying undirected simple graph a
    forest once deleted (for simple graphs, a forest is exactly the
    at-most-one-path condition)."""
    cut = frozenset(cutset)
    if any(not (1 <= s <= net.num_nodes) for s in cut):
        raise ValueError("cutset mentions undeclared nodes")
    ok = is_forest(delete_vertices(underlying_graph(net), cut))
    return VerificationReport(
        "loop-cutset",
        (
            Check(
                "deletion_leaves_forest",
                ok,
                "remaining underlying graph is a forest" if ok else "a cycle survives deletion",
            ),
        ),
        {"cutset_size": len(cut), "nodes": net.num_nodes},
    )


def check_feedback_set(prog: LogicProgram, atoms: Iterable[int]) -> VerificationReport:
    """A feedback set must meet every cycle of the undirected dependency
    graph: deleting its atoms leaves the graph acyclic."""
    chosen = frozenset(atoms)
    if not chosen <= prog.atoms:
        raise ValueError("feedback set mentions undeclared atoms")
    ok = is_forest(delete_vertices(undirected_dependency_graph(prog), chosen))
    return VerificationReport(
        "feedback-set",
        (
            Check(
                "deletion_breaks_all_cycles",
                ok,
                "dependency graph is acyclic after deletion" if ok else "a cycle survives deletion",
            ),
        ),
        {"feedback_size": len(chosen), "atoms": prog.num_atoms},
    )


def check_or_equivalence(
    output: Any,
    inputs: Sequence[Any],
    oracle: Callable[[Any], bool],
    *,
    subject: str = "or-composition",
    params: Mapping[str, int] | None = None,
) -> VerificationReport:
    """OR semantics of a composition: the output must be a yes-instance iff
    at least one input is, with both sides decided by the same oracle."""
    input_answers = [bool(oracle(x)) for x in inputs]
    output_answer = bool(oracle(output))
    ok = output_answer == any(input_answers)
    detail = f"output={output_answer}, inputs={input_answers}"
    merged = {"inputs": len(inputs)}
    if params:
        merged.update(params)
    return VerificationReport(
        subject, (Check("or_equivalence", ok, detail),), merged
    )


def check_ppt(
    source: CnfFormula,
    produced: Any,
    oracle: Callable[[Any], bool],
    bound: Callable[[int], int],
    *,
    subject: str = "parameter-transformation",
) -> VerificationReport:
    """A parameter-preserving reduction must keep the decision and keep the
    produced parameter within the stated bound of the source parameter."""
    source_answer = brute_sat(source).satisfiable
    produced_answer = bool(oracle(produced.instance))
    limit = bound(source.num_vars)
    checks = (
        Check(
            "decision_equivalence",
            produced_answer == source_answer,
            f"source={source_answer}, produced={produced_answer}",
        ),
        Check(
            "parameter_bound",
            produced.param_value <= limit,
            f"parameter {produced.param_value} <= bound {limit}",
        ),
    )
    return VerificationReport(
        subject,
        checks,
        {
            "source_vars": source.num_vars,
            "param_value": produced.param_value,
            "bound": limit,
        },
    )
