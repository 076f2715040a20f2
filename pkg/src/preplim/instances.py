"""Immutable data model for the five problem families.

CNF formulas, constraint networks with tree decompositions, global
constraints (NValue / Disjoint / Uses), Boolean Bayesian networks, and
normal logic programs, together with the derived structures everything
else consumes: formula restriction, constraint graph, moral graph,
undirected dependency graph, and the reduct of a program.

All types are values: construction validates the invariants, instances
are never mutated afterwards, and every operation here is a pure
function.  Variable / atom / node identifiers are dense positive
integers ``1..n`` within each owning instance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence


# ---------------------------------------------------------------------------
# CNF formulas


@dataclass(frozen=True)
class Literal:
    """A signed propositional variable."""

    var: int
    positive: bool = True

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise ValueError(f"literal variable must be a positive integer, got {self.var!r}")

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    def negate(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"-x{self.var}"


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals; no variable may occur twice."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        seen = set()
        for lit in self.literals:
            if lit.var in seen:
                raise ValueError(f"variable x{lit.var} occurs twice in one clause")
            seen.add(lit.var)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(lit.var for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " | ".join(str(lit) for lit in self.literals) + ")"


def clause(*lits: int) -> Clause:
    """Build a clause from signed integers, e.g. ``clause(1, -2)``."""
    return Clause(tuple(Literal.from_int(x) for x in lits))


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula over variables ``1..num_vars``.

    Clauses form a sequence, so duplicates are representable (the
    3CNF deduplication pass removes them).  ``is_3cnf`` holds when every
    clause has at most three literals.
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for cl in self.clauses:
            for lit in cl:
                if lit.var > self.num_vars:
                    raise ValueError(
                        f"clause {cl} mentions x{lit.var} but the formula has "
                        f"{self.num_vars} variables"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def is_3cnf(self) -> bool:
        return all(len(cl) <= 3 for cl in self.clauses)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(range(1, self.num_vars + 1))

    def __str__(self) -> str:
        return " & ".join(str(cl) for cl in self.clauses) or "<empty>"


def cnf(num_vars: int, clause_lists: Iterable[Iterable[int]] = ()) -> CnfFormula:
    """Build a formula from lists of signed integers."""
    return CnfFormula(num_vars, tuple(clause(*lits) for lits in clause_lists))


def apply_assignment(formula: CnfFormula, assignment: Mapping[int, bool]) -> CnfFormula:
    """Restrict ``formula`` by a partial assignment.

    Satisfied clauses are removed and false literals are removed from the
    remaining clauses; the result may contain an empty clause.  The
    variable count is preserved, so restrictions by disjoint assignments
    commute.
    """
    for var in assignment:
        if not (1 <= var <= formula.num_vars):
            raise ValueError(f"assignment mentions unknown variable x{var}")
    out = []
    for cl in formula.clauses:
        satisfied = False
        remaining = []
        for lit in cl:
            value = assignment.get(lit.var)
            if value is None:
                remaining.append(lit)
            elif value == lit.positive:
                satisfied = True
                break
        if not satisfied:
            out.append(Clause(tuple(remaining)))
    return CnfFormula(formula.num_vars, tuple(out))


# ---------------------------------------------------------------------------
# Graphs


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    Edges are stored as 2-element frozensets so vertex labels only need
    to be hashable (the dependency graph mixes atom ids with connector
    labels).  Self-loops are rejected.
    """

    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for edge in self.edges:
            if not isinstance(edge, frozenset) or len(edge) != 2:
                raise ValueError(f"edge {edge!r} is not an unordered pair of two distinct vertices")
            if not edge <= self.vertices:
                raise ValueError(f"edge {set(edge)!r} has an undeclared endpoint")

    def has_edge(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v) -> set:
        out = set()
        for edge in self.edges:
            if v in edge:
                out |= edge - {v}
        return out


def graph(vertices: Iterable, edges: Iterable[tuple]) -> Graph:
    """Build a graph from vertex and (u, v) pair iterables."""
    return Graph(frozenset(vertices), frozenset(frozenset(e) for e in edges))


def is_forest(g: Graph) -> bool:
    """Union-find cycle test: a graph is a forest iff no edge closes a cycle."""
    parent: dict[Any, Any] = {v: v for v in g.vertices}

    def find(x):
        while parent[x] is not x and parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in g.edges:
        u, v = tuple(edge)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def delete_vertices(g: Graph, removed: Iterable) -> Graph:
    removed = set(removed)
    return Graph(
        g.vertices - removed,
        frozenset(e for e in g.edges if not (e & removed)),
    )


# ---------------------------------------------------------------------------
# Constraint networks and tree decompositions


@dataclass(frozen=True)
class Constraint:
    """A scoped relation: the scope lists distinct variables, the relation
    holds the allowed value tuples (arity = scope length)."""

    scope: tuple[int, ...]
    relation: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if not self.scope:
            raise ValueError("constraint scope must mention at least one variable")
        if len(set(self.scope)) != len(self.scope):
            raise ValueError(f"constraint scope {self.scope} repeats a variable")
        for row in self.relation:
            if len(row) != len(self.scope):
                raise ValueError(
                    f"relation tuple {row} has arity {len(row)}, scope has {len(self.scope)}"
                )


@dataclass(frozen=True)
class ConstraintNetwork:
    """Variables ``1..num_vars`` over a finite universe, plus constraints."""

    num_vars: int
    universe: frozenset[int]
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for con in self.constraints:
            for v in con.scope:
                if not (1 <= v <= self.num_vars):
                    raise ValueError(f"constraint scope mentions undeclared variable {v}")
            for row in con.relation:
                for value in row:
                    if value not in self.universe:
                        raise ValueError(f"relation value {value} is outside the universe")

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_vars + 1))


def network(
    num_vars: int,
    universe: Iterable[int],
    constraints: Iterable[tuple[Sequence[int], Iterable[Sequence[int]]]] = (),
) -> ConstraintNetwork:
    """Build a network from (scope, rows) pairs, e.g. ``network(2, (0, 1), [((1, 2), [(0, 1), (1, 0)])])``."""
    cons = tuple(
        Constraint(tuple(scope), frozenset(tuple(row) for row in rows))
        for scope, rows in constraints
    )
    return ConstraintNetwork(num_vars, frozenset(universe), cons)


def constraint_graph(net: ConstraintNetwork) -> Graph:
    """Vertices are all declared variables (isolated ones included); two
    variables are adjacent iff they share a constraint scope."""
    edges = set()
    for con in net.constraints:
        for u, v in itertools.combinations(con.scope, 2):
            edges.add(frozenset((u, v)))
    return Graph(frozenset(net.variables), frozenset(edges))


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree of bags; ``width`` is the measured max bag size minus one.

    The node set is non-empty, ``tree_edges`` must form a tree, and
    ``bags`` is keyed by exactly the node set.
    """

    nodes: frozenset[int]
    tree_edges: frozenset[frozenset[int]]
    bags: Mapping[int, frozenset[int]]

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("a tree decomposition needs at least one node")
        if set(self.bags.keys()) != set(self.nodes):
            raise ValueError("bags must be keyed by exactly the node set")
        for edge in self.tree_edges:
            if not isinstance(edge, frozenset) or len(edge) != 2 or not edge <= self.nodes:
                raise ValueError(f"tree edge {edge!r} is not a pair of declared nodes")
        if len(self.tree_edges) != len(self.nodes) - 1:
            raise ValueError("tree edges do not form a tree (wrong edge count)")
        # connectivity
        seen = set()
        stack = [min(self.nodes)]
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for edge in self.tree_edges:
            u, v = tuple(edge)
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(adj[n])
        if seen != set(self.nodes):
            raise ValueError("tree edges do not form a tree (disconnected)")

    @property
    def width(self) -> int:
        return max(len(bag) for bag in self.bags.values()) - 1

    def bag_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for edge in self.tree_edges:
            u, v = tuple(edge)
            adj[u].append(v)
            adj[v].append(u)
        for n in adj:
            adj[n].sort()
        return adj


def decomposition(
    bags: Mapping[int, Iterable[int]], tree_edges: Iterable[tuple[int, int]] = ()
) -> TreeDecomposition:
    """Build a decomposition from a bag map and (u, v) tree-edge pairs."""
    return TreeDecomposition(
        frozenset(bags.keys()),
        frozenset(frozenset(e) for e in tree_edges),
        {n: frozenset(vs) for n, vs in bags.items()},
    )


# ---------------------------------------------------------------------------
# Global constraints


class GlobalKind(Enum):
    NVALUE = "nvalue"
    DISJOINT = "disjoint"
    USES = "uses"


@dataclass(frozen=True)
class GlobalConstraintInstance:
    """One global constraint with per-variable domains of signed integers.

    NValue requires a legal instantiation to use exactly ``n_value``
    distinct values over ``x_vars`` (``y_vars`` empty); Disjoint forbids
    any shared value between an X and a Y variable; Uses requires every
    X value to occur among the Y values.
    """

    kind: GlobalKind
    x_vars: tuple[str, ...]
    y_vars: tuple[str, ...]
    domains: Mapping[str, frozenset[int]]
    n_value: int | None = None

    def __post_init__(self):
        if set(self.x_vars) & set(self.y_vars):
            raise ValueError("X and Y variables must be disjoint")
        if len(set(self.x_vars)) != len(self.x_vars) or len(set(self.y_vars)) != len(self.y_vars):
            raise ValueError("variable lists must not repeat names")
        declared = set(self.x_vars) | set(self.y_vars)
        if set(self.domains.keys()) != declared:
            raise ValueError("domains must cover exactly the declared variables")
        for name, dom in self.domains.items():
            if not dom:
                raise ValueError(f"domain of {name} is empty")
        if self.kind is GlobalKind.NVALUE:
            if self.y_vars:
                raise ValueError("NValue takes no Y variables")
            if self.n_value is None or self.n_value < 1:
                raise ValueError("NValue needs a target count N >= 1")
        elif self.n_value is not None:
            raise ValueError(f"{self.kind.value} takes no target count")

    @property
    def all_vars(self) -> tuple[str, ...]:
        return self.x_vars + self.y_vars


# ---------------------------------------------------------------------------
# Boolean Bayesian networks


@dataclass(frozen=True)
class BayesNet:
    """A Boolean Bayesian network with exact-rational tables.

    ``tables[v]`` maps every instantiation of ``parents[v]`` (a tuple of
    booleans in parent order) to the probability that ``v`` is true.
    Probabilities are ``Fraction`` so positivity is exact.
    """

    num_nodes: int
    parents: Mapping[int, tuple[int, ...]]
    tables: Mapping[int, Mapping[tuple[bool, ...], Fraction]]

    def __post_init__(self):
        nodes = set(range(1, self.num_nodes + 1))
        if set(self.parents.keys()) != nodes or set(self.tables.keys()) != nodes:
            raise ValueError("parents and tables must cover exactly the declared nodes")
        for v, ps in self.parents.items():
            if len(set(ps)) != len(ps):
                raise ValueError(f"node {v} repeats a parent")
            for p in ps:
                if p not in nodes:
                    raise ValueError(f"node {v} has undeclared parent {p}")
            rows = self.tables[v]
            expected = set(itertools.product((False, True), repeat=len(ps)))
            if set(rows.keys()) != expected:
                raise ValueError(
                    f"table of node {v} must cover all {len(expected)} parent instantiations"
                )
            for key, prob in rows.items():
                if not isinstance(prob, Fraction):
                    raise ValueError(f"table entry {key} of node {v} is not an exact rational")
                if not (0 <= prob <= 1):
                    raise ValueError(f"table entry {key} of node {v} is outside [0, 1]")
        # parent relation must be acyclic
        state: dict[int, int] = {}

        def visit(v):
            stack = [(v, iter(self.parents[v]))]
            state[v] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for p in it:
                    if state.get(p, 0) == 1:
                        raise ValueError("parent relation contains a cycle")
                    if state.get(p, 0) == 0:
                        state[p] = 1
                        stack.append((p, iter(self.parents[p])))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack.pop()

        for v in nodes:
            if state.get(v, 0) == 0:
                visit(v)

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_nodes + 1))


@dataclass(frozen=True)
class BnQuery:
    """A positivity query: is Pr(query = true) > 0 in the network?"""

    net: BayesNet
    query: int

    def __post_init__(self):
        if not (1 <= self.query <= self.net.num_nodes):
            raise ValueError(f"query node {self.query} is not declared")


def underlying_graph(net: BayesNet) -> Graph:
    """The simple undirected graph beneath the arcs (arc directions dropped)."""
    edges = set()
    for v in net.nodes:
        for p in net.parents[v]:
            edges.add(frozenset((p, v)))
    return Graph(frozenset(net.nodes), frozenset(edges))


def moral_graph(net: BayesNet) -> Graph:
    """Parent-child edges plus marriages between co-parents of a child."""
    edges = set()
    for v in net.nodes:
        ps = net.parents[v]
        for p in ps:
            edges.add(frozenset((p, v)))
        for a, b in itertools.combinations(ps, 2):
            edges.add(frozenset((a, b)))
    return Graph(frozenset(net.nodes), frozenset(edges))


# ---------------------------------------------------------------------------
# Normal logic programs


@dataclass(frozen=True)
class Rule:
    """``head <- pos_body, not neg_body`` with a single head atom."""

    head: int
    pos_body: frozenset[int] = frozenset()
    neg_body: frozenset[int] = frozenset()


@dataclass(frozen=True)
class LogicProgram:
    """A normal logic program over atoms ``1..num_atoms``."""

    num_atoms: int
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        if self.num_atoms < 0:
            raise ValueError("num_atoms must be non-negative")
        for rule in self.rules:
            for atom in {rule.head} | rule.pos_body | rule.neg_body:
                if not (1 <= atom <= self.num_atoms):
                    raise ValueError(f"rule mentions undeclared atom {atom}")

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(range(1, self.num_atoms + 1))


def program(num_atoms: int, rules: Iterable[tuple[int, Iterable[int], Iterable[int]]]) -> LogicProgram:
    """Build a program from (head, pos_body, neg_body) triples."""
    return LogicProgram(
        num_atoms,
        tuple(Rule(h, frozenset(pos), frozenset(neg)) for h, pos, neg in rules),
    )


def gf_reduct(prog: LogicProgram, interpretation: Iterable[int]) -> LogicProgram:
    """Reduct of a program under a set of atoms: rules whose negative body
    meets the set are removed, all remaining negative literals dropped."""
    chosen = frozenset(interpretation)
    if not chosen <= prog.atoms:
        raise ValueError("interpretation mentions undeclared atoms")
    kept = tuple(
        Rule(r.head, r.pos_body, frozenset())
        for r in prog.rules
        if not (r.neg_body & chosen)
    )
    return LogicProgram(prog.num_atoms, kept)


def negation_connector(rule_index: int, atom: int) -> str:
    """Deterministic label of the degree-<=2 connector vertex introduced for
    a negated body atom; one per (rule, atom) pair."""
    return f"u{rule_index}.{atom}"


def undirected_dependency_graph(prog: LogicProgram) -> Graph:
    """Atoms plus one connector per (rule, negated atom) pair.

    A positive body atom contributes a direct edge to the head; a negated
    one contributes the two-edge path head - connector - atom.  For a rule
    negating its own head the path degenerates to a single edge.
    """
    vertices: set = set(prog.atoms)
    edges = set()
    for idx, rule in enumerate(prog.rules, start=1):
        for atom in rule.pos_body:
            if atom != rule.head:
                edges.add(frozenset((rule.head, atom)))
        for atom in rule.neg_body:
            u = negation_connector(idx, atom)
            vertices.add(u)
            edges.add(frozenset((rule.head, u)))
            edges.add(frozenset((u, atom)))
    return Graph(frozenset(vertices), frozenset(edges))
