"""Decision procedures for the five problem families.

Two kinds live side by side: exhaustive oracles (``brute_sat``,
``csp_brute``, ``global_consistency``, ``bn_positive_brute``,
``stable_model_brute``) that decide by complete enumeration, and the
fixed-parameter algorithms they cross-check (``backdoor_solve``,
``csp_treewidth_dp``, ``bn_positive_cutset``).

The oracles refuse inputs past a configurable cap so sweeps stay
bounded; the caps are configuration, not semantics.  Exhaustive oracles
report the lexicographically least witness (variable index order, with
False < True and domain values ascending); the structured solvers return
deterministic witnesses that need not be globally least.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping

from . import _accel
from .instances import (
    BayesNet,
    CnfFormula,
    Constraint,
    ConstraintNetwork,
    GlobalConstraintInstance,
    GlobalKind,
    Graph,
    LogicProgram,
    TreeDecomposition,
    apply_assignment,
    constraint_graph,
    delete_vertices,
    gf_reduct,
    is_forest,
    moral_graph,
    underlying_graph,
)

DEFAULT_SAT_VAR_CAP = 24
DEFAULT_CSP_STATE_CAP = 2 ** 20
DEFAULT_GLOBAL_STATE_CAP = 2 ** 60
DEFAULT_BN_NODE_CAP = 16
DEFAULT_ATOM_CAP = 16


class OracleCapExceeded(RuntimeError):
    """An exhaustive oracle was asked to search past its configured cap."""


class BackdoorInvalid(ValueError):
    """Some restriction of the formula is rejected by the sub-solver, so
    the supplied set is not a strong backdoor."""


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Any = None

    @classmethod
    def sat(cls, witness=None) -> "SatResult":
        return cls(True, witness)

    @classmethod
    def unsat(cls) -> "SatResult":
        return cls(False, None)


class SubSolverOutcome(Enum):
    REJECTED = "rejected"
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"


class SubSolverKind(Enum):
    """The two polynomial clause classes with tractable-backdoor detection:
    Horn (at most one positive literal per clause) and 2CNF (at most two
    literals per clause)."""

    HORN = "horn"
    TWOCNF = "2cnf"


# ---------------------------------------------------------------------------
# SAT


def brute_sat(formula: CnfFormula, *, cap: int = DEFAULT_SAT_VAR_CAP) -> SatResult:
    """Exhaustive SAT oracle; lexicographically least witness."""
    n = formula.num_vars
    if n > cap:
        raise OracleCapExceeded(f"{n} variables exceeds the oracle cap of {cap}")
    pos_masks, neg_masks = [], []
    for cl in formula.clauses:
        pos = neg = 0
        for lit in cl:
            bit = 1 << (n - lit.var)
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        pos_masks.append(pos)
        neg_masks.append(neg)
    mask = _accel.sat_lexmin(n, pos_masks, neg_masks)
    if mask < 0:
        return SatResult.unsat()
    witness = {i: bool((mask >> (n - i)) & 1) for i in range(1, n + 1)}
    return SatResult.sat(witness)


def _is_horn(formula: CnfFormula) -> bool:
    return all(sum(1 for lit in cl if lit.positive) <= 1 for cl in formula.clauses)


def _is_2cnf(formula: CnfFormula) -> bool:
    return all(len(cl) <= 2 for cl in formula.clauses)


def _horn_decide(formula: CnfFormula):
    """Unit propagation to fixpoint; a derived empty clause means
    unsatisfiable, otherwise every unassigned variable goes false."""
    clauses = [set(lit.to_int() for lit in cl) for cl in formula.clauses]
    assigned: dict[int, bool] = {}
    while True:
        if any(not c for c in clauses):
            return SubSolverOutcome.UNSATISFIABLE, None
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        lit = next(iter(unit))
        assigned[abs(lit)] = lit > 0
        clauses = [c - {-lit} for c in clauses if lit not in c]
    witness = {v: assigned.get(v, False) for v in range(1, formula.num_vars + 1)}
    return SubSolverOutcome.SATISFIABLE, witness


def _tarjan_scc(nodes, adj):
    """Iterative Tarjan; components are numbered in emission order, which
    is reverse-topological on the condensation (sinks first)."""
    index: dict[Any, int] = {}
    low: dict[Any, int] = {}
    on_stack: set = set()
    stack: list = []
    comp: dict[Any, int] = {}
    next_index = 0
    next_comp = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, pointer = work[-1]
            if pointer == 0:
                index[node] = low[node] = next_index
                next_index += 1
                stack.append(node)
                on_stack.add(node)
            succs = adj.get(node, ())
            descended = False
            for i in range(pointer, len(succs)):
                succ = succs[i]
                if succ not in index:
                    work[-1] = (node, i + 1)
                    work.append((succ, 0))
                    descended = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if descended:
                continue
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp[member] = next_comp
                    if member == node:
                        break
                next_comp += 1
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return comp


def _twocnf_decide(formula: CnfFormula):
    """Implication-graph strong components; x and not-x sharing a component
    means unsatisfiable, otherwise the reverse-topological rule gives a
    model."""
    n = formula.num_vars
    if any(len(cl) == 0 for cl in formula.clauses):
        return SubSolverOutcome.UNSATISFIABLE, None
    adj: dict[int, list[int]] = {}

    def imp(a, b):
        adj.setdefault(a, []).append(b)

    for cl in formula.clauses:
        lits = [lit.to_int() for lit in cl.literals]
        if len(lits) == 1:
            imp(-lits[0], lits[0])
        else:
            a, b = lits
            imp(-a, b)
            imp(-b, a)
    nodes = [lit for v in range(1, n + 1) for lit in (-v, v)]
    comp = _tarjan_scc(nodes, adj)
    witness = {}
    for v in range(1, n + 1):
        if comp[v] == comp[-v]:
            return SubSolverOutcome.UNSATISFIABLE, None
        witness[v] = comp[v] < comp[-v]
    return SubSolverOutcome.SATISFIABLE, witness


def _subsolver_decide(kind: SubSolverKind, formula: CnfFormula):
    if kind is SubSolverKind.HORN:
        if not _is_horn(formula):
            return SubSolverOutcome.REJECTED, None
        return _horn_decide(formula)
    if not _is_2cnf(formula):
        return SubSolverOutcome.REJECTED, None
    return _twocnf_decide(formula)


def subsolver_run(kind: SubSolverKind, formula: CnfFormula) -> SubSolverOutcome:
    """Trichotomy: reject formulas outside the class, decide the rest
    correctly (unit propagation for Horn, strong components for 2CNF;
    both run in polynomial time and are self-reducible)."""
    outcome, _ = _subsolver_decide(kind, formula)
    return outcome


def backdoor_solve(
    formula: CnfFormula, backdoor: Iterable[int], kind: SubSolverKind
) -> SatResult:
    """Decide SAT through a strong backdoor: run the sub-solver on all
    2^|B| restrictions.  Raises BackdoorInvalid if any restriction is
    rejected (every restriction is always evaluated, so an invalid
    backdoor is reported even when a satisfiable restriction exists)."""
    bd = sorted(set(backdoor))
    for v in bd:
        if not (1 <= v <= formula.num_vars):
            raise ValueError(f"backdoor mentions unknown variable x{v}")
    best = None
    for bits in itertools.product((False, True), repeat=len(bd)):
        tau = dict(zip(bd, bits))
        outcome, wit = _subsolver_decide(kind, apply_assignment(formula, tau))
        if outcome is SubSolverOutcome.REJECTED:
            raise BackdoorInvalid(
                f"restriction {tau} is not decided by the {kind.value} sub-solver"
            )
        if outcome is SubSolverOutcome.SATISFIABLE and best is None:
            combined = dict(wit)
            combined.update(tau)
            best = combined
    if best is None:
        return SatResult.unsat()
    return SatResult.sat(best)


# ---------------------------------------------------------------------------
# Constraint networks


def csp_brute(net: ConstraintNetwork, *, cap: int = DEFAULT_CSP_STATE_CAP) -> SatResult:
    """Exhaustive CSP oracle: complete backtracking over the assignment
    space in variable order, values ascending; the first solution found is
    the lexicographically least."""
    n = net.num_vars
    values = sorted(net.universe)
    states = len(values) ** n if n else 1
    if states > cap:
        raise OracleCapExceeded(f"{states} assignments exceed the oracle cap of {cap}")
    if n and not values:
        return SatResult.unsat()

    if (
        _accel.BACKEND == "compiled"
        and net.universe == frozenset((0, 1))
        and n <= 63
        and all(len(con.scope) <= 6 for con in net.constraints)
    ):
        scope_bits = []
        allowed = []
        for con in net.constraints:
            scope_bits.append([n - v for v in con.scope])
            ok = 0
            for row in con.relation:
                code = 0
                for value in row:
                    code = (code << 1) | value
                ok |= 1 << code
            allowed.append(ok)
        mask = _accel.csp01_lexmin(n, scope_bits, allowed)
        if mask < 0:
            return SatResult.unsat()
        return SatResult.sat({i: (mask >> (n - i)) & 1 for i in range(1, n + 1)})

    by_last: list[list[Constraint]] = [[] for _ in range(n + 1)]
    for con in net.constraints:
        by_last[max(con.scope)].append(con)
    env: dict[int, int] = {}

    def extend(i: int) -> bool:
        if i > n:
            return True
        for value in values:
            env[i] = value
            if all(
                tuple(env[v] for v in con.scope) in con.relation for con in by_last[i]
            ) and extend(i + 1):
                return True
        env.pop(i, None)
        return False

    if extend(1):
        return SatResult.sat({v: env[v] for v in range(1, n + 1)})
    return SatResult.unsat()


def _validate_for_dp(net: ConstraintNetwork, td: TreeDecomposition) -> None:
    declared = set(net.variables)
    covered: set[int] = set()
    for node in sorted(td.nodes):
        bag = td.bags[node]
        if not bag <= declared:
            raise ValueError(
                f"bag {node} mentions undeclared variables {sorted(set(bag) - declared)}"
            )
        covered |= bag
    if covered != declared:
        raise ValueError(
            f"decomposition misses variables {sorted(declared - covered)}"
        )
    adj = td.bag_adjacency()
    for v in sorted(declared):
        holders = {node for node in td.nodes if v in td.bags[node]}
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
            raise ValueError(f"bags containing variable {v} are not connected")
    for con in net.constraints:
        scope = set(con.scope)
        if not any(scope <= td.bags[node] for node in td.nodes):
            raise ValueError(f"constraint scope {con.scope} is not covered by any bag")


def csp_treewidth_dp(net: ConstraintNetwork, td: TreeDecomposition) -> SatResult:
    """Bottom-up join/project dynamic programming over bag assignments.

    Bag tables keep the assignments that satisfy every constraint whose
    scope fits the bag and that extend some assignment of each child on
    the shared variables; the network is satisfiable iff the root table
    is non-empty.  A witness is rebuilt top-down by picking the first
    agreeing row of each table.
    """
    _validate_for_dp(net, td)
    n = net.num_vars
    values = sorted(net.universe)
    if n and not values:
        return SatResult.unsat()

    allowed: dict[int, list[int]] = {v: list(values) for v in net.variables}
    for con in net.constraints:
        if len(con.scope) == 1:
            var = con.scope[0]
            keep = {row[0] for row in con.relation}
            allowed[var] = [val for val in allowed[var] if val in keep]

    root = min(td.nodes)
    adj = td.bag_adjacency()
    parent: dict[int, int | None] = {root: None}
    order = [root]
    for node in order:
        for nxt in adj[node]:
            if nxt not in parent:
                parent[nxt] = node
                order.append(nxt)
    postorder = list(reversed(order))

    cons_by_node = {
        node: [con for con in net.constraints if set(con.scope) <= td.bags[node]]
        for node in td.nodes
    }
    children = {node: [c for c in adj[node] if parent.get(c) == node] for node in td.nodes}
    sep_vars: dict[int, list[int]] = {}
    tables: dict[int, list[tuple[int, ...]]] = {}
    projections: dict[int, set[tuple[int, ...]]] = {}
    bag_vars = {node: sorted(td.bags[node]) for node in td.nodes}

    for node in postorder:
        bvars = bag_vars[node]
        kids = children[node]
        rows: list[tuple[int, ...]] = []
        local_cons = cons_by_node[node]
        for combo in itertools.product(*(allowed[v] for v in bvars)):
            env = dict(zip(bvars, combo))
            if any(
                tuple(env[v] for v in con.scope) not in con.relation for con in local_cons
            ):
                continue
            if any(
                tuple(env[v] for v in sep_vars[kid]) not in projections[kid]
                for kid in kids
            ):
                continue
            rows.append(combo)
        if not rows:
            return SatResult.unsat()
        tables[node] = rows
        up = parent[node]
        if up is not None:
            sep = sorted(td.bags[node] & td.bags[up])
            sep_vars[node] = sep
            positions = [bvars.index(v) for v in sep]
            projections[node] = {tuple(row[i] for i in positions) for row in rows}

    witness: dict[int, int] = dict(zip(bag_vars[root], tables[root][0]))
    stack = [root]
    while stack:
        node = stack.pop()
        for kid in sorted(children[node]):
            bvars = bag_vars[kid]
            sep = sep_vars[kid]
            for row in tables[kid]:
                env = dict(zip(bvars, row))
                if all(env[v] == witness[v] for v in sep):
                    witness.update(env)
                    break
            stack.append(kid)
    return SatResult.sat({v: witness[v] for v in sorted(witness)})


# ---------------------------------------------------------------------------
# Global constraints


def global_consistency(
    inst: GlobalConstraintInstance, *, cap: int = DEFAULT_GLOBAL_STATE_CAP
) -> SatResult:
    """Exhaustive search for a legal instantiation.

    Complete backtracking with sound pruning per kind: NValue prunes when
    the distinct-value count can no longer hit the target, Disjoint
    assigns X freely then filters Y, Uses assigns Y first then forces
    every X value to be covered.  The witness is the first instantiation
    in the search order (X before Y, except Y before X for Uses).
    """
    states = 1
    for name in inst.all_vars:
        states *= len(inst.domains[name])
    if states > cap:
        raise OracleCapExceeded(f"{states} instantiations exceed the oracle cap of {cap}")

    if inst.kind is GlobalKind.NVALUE:
        order = list(inst.x_vars)
    elif inst.kind is GlobalKind.DISJOINT:
        order = list(inst.x_vars) + list(inst.y_vars)
    else:
        order = list(inst.y_vars) + list(inst.x_vars)
    domains = {name: sorted(inst.domains[name]) for name in order}
    x_set = set(inst.x_vars)
    env: dict[str, int] = {}
    counts: dict[int, int] = {}
    first_stage = len(inst.x_vars) if inst.kind is not GlobalKind.USES else len(inst.y_vars)

    def nvalue_extend(i: int) -> bool:
        if i == len(order):
            return len(counts) == inst.n_value
        remaining = len(order) - i
        for value in domains[order[i]]:
            fresh = value not in counts
            distinct = len(counts) + (1 if fresh else 0)
            if distinct > inst.n_value or distinct + remaining - 1 < inst.n_value:
                continue
            env[order[i]] = value
            counts[value] = counts.get(value, 0) + 1
            if nvalue_extend(i + 1):
                return True
            counts[value] -= 1
            if not counts[value]:
                del counts[value]
            del env[order[i]]
        return False

    def two_stage_extend(i: int) -> bool:
        if i == len(order):
            return True
        name = order[i]
        for value in domains[name]:
            if i >= first_stage:
                used = {env[v] for v in order[:first_stage]}
                if inst.kind is GlobalKind.DISJOINT and value in used:
                    continue
                if inst.kind is GlobalKind.USES and value not in used:
                    continue
            env[name] = value
            if two_stage_extend(i + 1):
                return True
            del env[name]
        return False

    found = nvalue_extend(0) if inst.kind is GlobalKind.NVALUE else two_stage_extend(0)
    if not found:
        return SatResult.unsat()
    return SatResult.sat({name: env[name] for name in inst.all_vars})


def global_domain_consistent(
    inst: GlobalConstraintInstance, *, cap: int = DEFAULT_GLOBAL_STATE_CAP
) -> dict[str, frozenset[int]]:
    """Domain consistency by its reduction to a quadratic number of
    consistency checks: value d of variable x is supported iff the
    instance with dom(x) pinned to {d} is consistent."""
    supports: dict[str, frozenset[int]] = {}
    for name in inst.all_vars:
        good = []
        for value in sorted(inst.domains[name]):
            pinned_domains = dict(inst.domains)
            pinned_domains[name] = frozenset((value,))
            pinned = GlobalConstraintInstance(
                inst.kind, inst.x_vars, inst.y_vars, pinned_domains, inst.n_value
            )
            if global_consistency(pinned, cap=cap).satisfiable:
                good.append(value)
        supports[name] = frozenset(good)
    return supports


# ---------------------------------------------------------------------------
# Bayesian networks


def _positivity_bitsets(net: BayesNet):
    parent_bits = []
    true_ok = []
    false_ok = []
    for v in net.nodes:
        parents = net.parents[v]
        parent_bits.append([p - 1 for p in parents])
        t_ok = f_ok = 0
        for key, prob in net.tables[v].items():
            code = 0
            for bit in key:
                code = (code << 1) | int(bit)
            if prob > 0:
                t_ok |= 1 << code
            if prob < 1:
                f_ok |= 1 << code
        true_ok.append(t_ok)
        false_ok.append(f_ok)
    return parent_bits, true_ok, false_ok


def bn_positive_brute(net: BayesNet, query: int, *, cap: int = DEFAULT_BN_NODE_CAP) -> bool:
    """Exhaustive positivity oracle: some complete instantiation sets the
    query true and every conditional-table factor in the joint product is
    a positive rational."""
    if not (1 <= query <= net.num_nodes):
        raise ValueError(f"query node {query} is not declared")
    if net.num_nodes > cap:
        raise OracleCapExceeded(f"{net.num_nodes} nodes exceed the oracle cap of {cap}")
    parent_bits, true_ok, false_ok = _positivity_bitsets(net)
    return _accel.bn_positive(net.num_nodes, query - 1, parent_bits, true_ok, false_ok)


def _positivity_constraints(net: BayesNet) -> list[Constraint]:
    """One constraint per family: the (parents..., child) tuples whose
    conditional-table factor is positive."""
    cons = []
    for v in net.nodes:
        scope = tuple(net.parents[v]) + (v,)
        rows = set()
        for key, prob in net.tables[v].items():
            prefix = tuple(int(b) for b in key)
            if prob > 0:
                rows.add(prefix + (1,))
            if prob < 1:
                rows.add(prefix + (0,))
        cons.append(Constraint(scope, frozenset(rows)))
    return cons


def _family_bag_decomposition(net: BayesNet, cutset: frozenset[int]) -> TreeDecomposition:
    """One bag per node holding its family plus the whole cutset; tree
    edges mirror the cutset-deleted forest, cutset bags hang off one of
    their surviving parents, components are chained deterministically."""
    nodes = set(net.nodes)
    bags = {
        v: frozenset({v}) | frozenset(net.parents[v]) | cutset for v in sorted(nodes)
    }
    edges: set[frozenset[int]] = set()
    for v in sorted(nodes):
        if v in cutset:
            continue
        for p in net.parents[v]:
            if p not in cutset:
                edges.add(frozenset((p, v)))
    for s in sorted(cutset):
        outside = sorted(p for p in net.parents[s] if p not in cutset)
        if outside:
            edges.add(frozenset((s, outside[0])))
    # chain the remaining components together
    comp: dict[int, int] = {v: v for v in nodes}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for e in edges:
        u, v = tuple(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            comp[ru] = rv
    reps = sorted({find(v) for v in nodes})
    for a, b in zip(reps, reps[1:]):
        edges.add(frozenset((a, b)))
    return TreeDecomposition(frozenset(nodes), frozenset(edges), bags)


def _elimination_decomposition(g: Graph) -> TreeDecomposition:
    """Greedy min-fill elimination ordering; the standard fallback when the
    family-bag construction does not satisfy the connectivity condition."""
    neighbors: dict[int, set[int]] = {v: set() for v in g.vertices}
    for e in g.edges:
        u, v = tuple(e)
        neighbors[u].add(v)
        neighbors[v].add(u)
    remaining = set(g.vertices)
    order: list[int] = []
    bags: dict[int, frozenset[int]] = {}
    while remaining:
        best = None
        best_fill = None
        for v in sorted(remaining):
            nbrs = [w for w in neighbors[v] if w in remaining]
            fill = sum(
                1
                for a, b in itertools.combinations(nbrs, 2)
                if b not in neighbors[a]
            )
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        nbrs = [w for w in neighbors[best] if w in remaining]
        bags[best] = frozenset({best} | set(nbrs))
        for a, b in itertools.combinations(nbrs, 2):
            neighbors[a].add(b)
            neighbors[b].add(a)
        remaining.discard(best)
        order.append(best)
    position = {v: i for i, v in enumerate(order)}
    edges: set[frozenset[int]] = set()
    for i, v in enumerate(order[:-1]):
        later = [w for w in bags[v] if position[w] > i]
        target = min(later, key=lambda w: position[w]) if later else order[i + 1]
        edges.add(frozenset((v, target)))
    return TreeDecomposition(frozenset(order), frozenset(edges), bags)


def bn_positive_cutset(net: BayesNet, query: int, cutset: Iterable[int]) -> bool:
    """Positivity by loop-cutset conditioning: for each of the 2^|S|
    cutset instantiations, solve a positivity network (family constraints
    plus pins for the cutset and the query) with the tree-decomposition
    dynamic program, and report whether any instantiation succeeds.

    Equals ``bn_positive_brute`` on every valid input; raises ValueError
    when deleting the cutset does not leave the underlying graph a
    forest.
    """
    cut = frozenset(cutset)
    if not (1 <= query <= net.num_nodes):
        raise ValueError(f"query node {query} is not declared")
    if any(not (1 <= s <= net.num_nodes) for s in cut):
        raise ValueError("cutset mentions undeclared nodes")
    if not is_forest(delete_vertices(underlying_graph(net), cut)):
        raise ValueError("the given set is not a loop cutset")

    base = _positivity_constraints(net)
    skeleton = ConstraintNetwork(net.num_nodes, frozenset((0, 1)), tuple(base))
    td = _family_bag_decomposition(net, cut)
    try:
        _validate_for_dp(skeleton, td)
    except ValueError:
        td = _elimination_decomposition(moral_graph(net))
        _validate_for_dp(skeleton, td)

    members = sorted(cut)
    for bits in itertools.product((0, 1), repeat=len(members)):
        pins = [Constraint((s,), frozenset({(b,)})) for s, b in zip(members, bits)]
        pins.append(Constraint((query,), frozenset({(1,)})))
        pinned = ConstraintNetwork(
            net.num_nodes, frozenset((0, 1)), tuple(base) + tuple(pins)
        )
        if csp_treewidth_dp(pinned, td).satisfiable:
            return True
    return False


# ---------------------------------------------------------------------------
# Logic programs


def least_model(prog: LogicProgram) -> frozenset[int]:
    """Least fixpoint of the immediate-consequence step of a positive
    program (the smallest atom set closed under all rules)."""
    for rule in prog.rules:
        if rule.neg_body:
            raise ValueError("least_model requires a positive program")
    derived: set[int] = set()
    changed = True
    while changed:
        changed = False
        for rule in prog.rules:
            if rule.head not in derived and rule.pos_body <= derived:
                derived.add(rule.head)
                changed = True
    return frozenset(derived)


def stable_model_brute(prog: LogicProgram, *, cap: int = DEFAULT_ATOM_CAP) -> SatResult:
    """Exhaustive stable-model oracle: a candidate set is stable iff it
    equals the least model of its reduct.  Reports the least stable model
    under the sorted-atom-tuple order."""
    n = prog.num_atoms
    if n > cap:
        raise OracleCapExceeded(f"{n} atoms exceed the oracle cap of {cap}")
    heads = [1 << (r.head - 1) for r in prog.rules]
    pos = [sum(1 << (a - 1) for a in r.pos_body) for r in prog.rules]
    neg = [sum(1 << (a - 1) for a in r.neg_body) for r in prog.rules]
    mask = _accel.stable_lexmin(n, heads, pos, neg)
    if mask < 0:
        return SatResult.unsat()
    model = frozenset(i for i in range(1, n + 1) if (mask >> (i - 1)) & 1)
    return SatResult.sat(model)
