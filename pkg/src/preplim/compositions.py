"""OR-composition algorithms.

Both operations combine t same-parameter instances into one instance that
is satisfiable iff at least one input is, while the parameter grows only
polynomially in the shared input parameter: width w becomes w + 1 for
constraint networks, a backdoor of size k becomes one of size
k + ceil(log2 t) for 3CNF formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .instances import (
    Clause,
    CnfFormula,
    Constraint,
    ConstraintNetwork,
    Literal,
    TreeDecomposition,
    constraint_graph,
)
from .solvers import SubSolverKind, backdoor_solve
from .verify import check_backdoor

#: allowed rows of the ternary selector constraints over (b_{i-1}, b_i, a_i):
#: the b-chain is non-decreasing and the selector is 0 exactly at the step.
SELECTOR_RELATION = frozenset({(0, 0, 1), (0, 1, 0), (1, 1, 1)})


@dataclass(frozen=True)
class CspCompositionOutput:
    network: ConstraintNetwork
    decomposition: TreeDecomposition
    width: int
    selector_vars: tuple[int, ...]
    chain_vars: tuple[int, ...]


class CompositionCase(Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    PASS_THROUGH = "pass-through"


@dataclass(frozen=True)
class BackdoorCompositionOutput:
    formula: CnfFormula
    backdoor: frozenset[int]
    case_taken: CompositionCase


def _validated_input_decomposition(
    net: ConstraintNetwork, td: TreeDecomposition, index: int
) -> TreeDecomposition:
    """Check an input decomposition; variables missing from every bag are
    tolerated only when isolated, and get placed into the root bag."""
    placed = set()
    for bag in td.bags.values():
        placed |= bag
    missing = set(net.variables) - placed
    if missing:
        root = min(td.nodes)
        bags = dict(td.bags)
        bags[root] = bags[root] | frozenset(missing)
        td = TreeDecomposition(td.nodes, td.tree_edges, bags)
    g = constraint_graph(net)
    for bag in td.bags.values():
        if not bag <= g.vertices:
            raise ValueError(f"input {index}: decomposition bag mentions unknown variables")
    for edge in g.edges:
        if not any(edge <= bag for bag in td.bags.values()):
            raise ValueError(f"input {index}: invalid decomposition (edge uncovered)")
    adjacency = td.bag_adjacency()
    for v in net.variables:
        holders = {node for node in td.nodes if v in td.bags[node]}
        start = min(holders)
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in adjacency[node]:
                if nxt in holders and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if seen != holders:
            raise ValueError(f"input {index}: invalid decomposition (bags of {v} disconnected)")
    for con in net.constraints:
        if not any(set(con.scope) <= bag for bag in td.bags.values()):
            raise ValueError(f"input {index}: constraint scope not covered by any bag")
    return td


def compose_csp(
    inputs: Sequence[tuple[ConstraintNetwork, TreeDecomposition]]
) -> CspCompositionOutput:
    """OR-composition of Boolean constraint networks with equal-width
    decompositions.

    The inputs are renamed apart; every constraint scope is extended by a
    fresh selector variable a_i whose relation either keeps the original
    rows (a_i = 0) or accepts the all-ones row (a_i = 1); ternary
    constraints over a chain b_0..b_t force exactly one selector to 0; and
    the ends of the chain are pinned to 0 and 1.  The combined
    decomposition adds a_i to every bag of the i-th input and hangs it off
    a path of {b_{i-1}, b_i, a_i} bags, so the width grows by exactly one.
    """
    if not inputs:
        raise ValueError("composition needs at least one input")
    t = len(inputs)
    prepared = []
    widths = set()
    for idx, (net, td) in enumerate(inputs, start=1):
        if net.universe != frozenset((0, 1)):
            raise ValueError(f"input {idx}: universe must be {{0, 1}}")
        td = _validated_input_decomposition(net, td, idx)
        widths.add(td.width)
        prepared.append((net, td))
    if len(widths) != 1:
        raise ValueError(f"inputs must share one width, got {sorted(widths)}")
    width = widths.pop()
    if width < 1:
        raise ValueError(
            "input width must be at least 1: the selector-path bags have three "
            "variables, so a width of w+1 is unreachable from w = 0"
        )

    var_offsets = []
    total_vars = 0
    for net, _ in prepared:
        var_offsets.append(total_vars)
        total_vars += net.num_vars
    selector = [total_vars + i for i in range(1, t + 1)]
    chain = [total_vars + t + 1 + j for j in range(t + 1)]
    num_vars = total_vars + 2 * t + 1

    constraints: list[Constraint] = []
    for i, (net, _) in enumerate(prepared):
        off = var_offsets[i]
        a_i = selector[i]
        for con in net.constraints:
            scope = tuple(v + off for v in con.scope) + (a_i,)
            rows = {row + (0,) for row in con.relation}
            rows.add((1,) * len(scope))
            constraints.append(Constraint(scope, frozenset(rows)))
    for i in range(t):
        constraints.append(
            Constraint((chain[i], chain[i + 1], selector[i]), SELECTOR_RELATION)
        )
    constraints.append(Constraint((chain[0],), frozenset({(0,)})))
    constraints.append(Constraint((chain[t],), frozenset({(1,)})))

    network = ConstraintNetwork(num_vars, frozenset((0, 1)), tuple(constraints))

    bags: dict[int, frozenset[int]] = {}
    edges: set[frozenset[int]] = set()
    node_offset = 0
    attach_points = []
    for i, (net, td) in enumerate(prepared):
        off = var_offsets[i]
        a_i = selector[i]
        mapping = {node: node_offset + rank for rank, node in enumerate(sorted(td.nodes), start=1)}
        for node in sorted(td.nodes):
            bags[mapping[node]] = frozenset(v + off for v in td.bags[node]) | {a_i}
        for edge in td.tree_edges:
            u, v = tuple(edge)
            edges.add(frozenset((mapping[u], mapping[v])))
        attach_points.append(mapping[min(td.nodes)])
        node_offset += len(td.nodes)
    path_nodes = [node_offset + i for i in range(1, t + 1)]
    for i in range(t):
        bags[path_nodes[i]] = frozenset({chain[i], chain[i + 1], selector[i]})
        edges.add(frozenset((path_nodes[i], attach_points[i])))
        if i + 1 < t:
            edges.add(frozenset((path_nodes[i], path_nodes[i + 1])))
    decomposition = TreeDecomposition(frozenset(bags.keys()), frozenset(edges), bags)

    return CspCompositionOutput(
        network=network,
        decomposition=decomposition,
        width=decomposition.width,
        selector_vars=tuple(selector),
        chain_vars=tuple(chain),
    )


def _selector_literal(index: int, position: int) -> int:
    """Literal over y_position in the position-th slot of the index-th
    selector clause: bit (position-1) of (index-1) decides the sign, 0
    meaning positive.  The clauses C_1..C_{2^s} enumerate every sign
    pattern, and the assignment falsifying C_i is exactly the binary
    encoding of i-1."""
    bit = (index - 1) >> (position - 1) & 1
    return position if bit == 0 else -position


def _filler_clauses(index: int, s: int, fresh_var) -> list[list[int]]:
    """Clauses forced to the i-th selector clause: C_i itself when s <= 3,
    otherwise the chain splitting over fresh z-variables whose links are
    (l1 | l2 | -z2), (l_j | z_{j-1} | -z_j) ..., (l_{s-1} | l_s | z_{s-2})."""
    lits = [_selector_literal(index, j) for j in range(1, s + 1)]
    if s <= 3:
        return [lits]
    z = {j: fresh_var() for j in range(2, s - 1)}
    out = [[lits[0], lits[1], -z[2]]]
    for j in range(3, s - 1):
        out.append([lits[j - 1], z[j - 1], -z[j]])
    out.append([lits[s - 2], lits[s - 1], z[s - 2]])
    return out


def compose_3sat_backdoor(
    inputs: Sequence[tuple[CnfFormula, frozenset[int]]], kind: SubSolverKind
) -> BackdoorCompositionOutput:
    """OR-composition of 3CNF formulas carrying equal-size strong backdoors.

    A single input passes through.  With more inputs than backdoor
    assignments (t > 2^k) each input is decided outright through its
    backdoor and a satisfiable input (or the first input) is returned
    verbatim.  Otherwise the inputs are renamed to share one backdoor,
    every non-backdoor variable is split into an implication chain
    x_0 -> .. -> x_s (positive occurrences become x_0, negative ones
    -x_s), each chain link j picks up the j-th literal of a selector
    clause over fresh variables y_1..y_s, and the unused selector clauses
    are added as fillers.  An assignment to Y then breaks every chain of
    all but one input, whose original formula survives the restriction.

    The output backdoor is Y plus the shared input backdoor, of size
    exactly k + ceil(log2 t).
    """
    if not inputs:
        raise ValueError("composition needs at least one input")
    sizes = {len(bd) for _, bd in inputs}
    if len(sizes) != 1:
        raise ValueError(f"backdoors must share one size, got {sorted(sizes)}")
    k = sizes.pop()
    for idx, (formula, bd) in enumerate(inputs, start=1):
        if not formula.is_3cnf:
            raise ValueError(f"input {idx}: formula is not 3CNF")
        report = check_backdoor(formula, bd, kind)
        if not report.passed:
            raise ValueError(
                f"input {idx}: the set is not a strong {kind.value}-backdoor"
            )
    t = len(inputs)

    if t == 1:
        formula, bd = inputs[0]
        return BackdoorCompositionOutput(formula, frozenset(bd), CompositionCase.PASS_THROUGH)

    if t > 2 ** k:
        for formula, bd in inputs:
            if backdoor_solve(formula, bd, kind).satisfiable:
                return BackdoorCompositionOutput(
                    formula, frozenset(bd), CompositionCase.CASE1
                )
        formula, bd = inputs[0]
        return BackdoorCompositionOutput(formula, frozenset(bd), CompositionCase.CASE1)

    s = (t - 1).bit_length()
    # output variable layout: y_1..y_s, then the shared backdoor, then one
    # (s+1)-link chain per non-backdoor variable per input, then z-fillers.
    shared = {}
    next_var = s + k
    clauses: list[list[int]] = []

    def fresh():
        nonlocal next_var
        next_var += 1
        return next_var

    for i, (formula, bd) in enumerate(inputs, start=1):
        backdoor_order = sorted(bd)
        rename = {v: s + 1 + rank for rank, v in enumerate(backdoor_order)}
        chain_base = {}
        for x in sorted(set(range(1, formula.num_vars + 1)) - set(bd)):
            base = next_var
            chain_base[x] = base
            next_var += s + 1
        shared[i] = (formula, rename, chain_base)

    for i, (formula, bd) in enumerate(inputs, start=1):
        _, rename, chain_base = shared[i]
        for cl in formula.clauses:
            out = []
            for lit in cl:
                if lit.var in rename:
                    v = rename[lit.var]
                    out.append(v if lit.positive else -v)
                elif lit.positive:
                    out.append(chain_base[lit.var] + 1)  # x_0
                else:
                    out.append(-(chain_base[lit.var] + s + 1))  # -x_s
            clauses.append(out)
        for x in sorted(chain_base):
            base = chain_base[x]
            for j in range(1, s + 1):
                clauses.append([-(base + j), base + j + 1, _selector_literal(i, j)])

    for i in range(t + 1, 2 ** s + 1):
        clauses.extend(_filler_clauses(i, s, fresh))

    formula = CnfFormula(
        next_var,
        tuple(
            Clause(tuple(Literal.from_int(x) for x in lits)) for lits in clauses
        ),
    )
    backdoor = frozenset(range(1, s + k + 1))
    return BackdoorCompositionOutput(formula, backdoor, CompositionCase.CASE2)
