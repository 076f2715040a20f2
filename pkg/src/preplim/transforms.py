"""Parameter-preserving reductions out of SAT, plus the 3CNF kernel.

Each reduction emits the target instance together with the certificate
that carries its parameter (a backdoor, a value-domain report, a loop
cutset, or a feedback set); the certificate size is the claimed
parameter value and always passes the matching structural verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .instances import (
    BayesNet,
    BnQuery,
    Clause,
    CnfFormula,
    GlobalConstraintInstance,
    GlobalKind,
    LogicProgram,
    Rule,
)


@dataclass(frozen=True)
class PptOutput:
    """A produced instance plus its parameter certificate; the parameter
    value is by definition the measured size of the certificate."""

    instance: Any
    certificate: frozenset
    param_value: int

    def __post_init__(self):
        if self.param_value != len(self.certificate):
            raise ValueError("param_value must equal the certificate size")


def trivial_backdoor(formula: CnfFormula) -> PptOutput:
    """The full variable set is a strong backdoor for every sub-solver:
    each total restriction only leaves empty clauses, which any sub-solver
    decides."""
    cert = frozenset(range(1, formula.num_vars + 1))
    return PptOutput(formula, cert, formula.num_vars)


def encode_global(formula: CnfFormula, kind: GlobalKind) -> PptOutput:
    """Encode SAT into one global constraint.

    Variable x_i ranges over {-i, i} and clause variable C_j over the
    signed indices of its literals.  NValue takes all of them as X with
    target n, so the clause variables must reuse variable values;
    Disjoint reads x_i = i as "literal i is false", so clause variables
    must avoid falsified literals; Uses reads x_i = i as "x_i true", so
    clause variables must pick a true literal.  Each is consistent iff
    the formula is satisfiable.

    The certificate is the parameter-bearing value set: dom(X) for
    NValue (size 2n), dom(X) & dom(Y) for Disjoint (size <= 2n), dom(Y)
    for Uses (size 2n).
    """
    n = formula.num_vars
    if n < 1:
        raise ValueError("the encoding needs at least one variable")
    for cl in formula.clauses:
        if len(cl) == 0:
            raise ValueError("the encoding does not accept empty clauses")

    var_names = tuple(f"x{i}" for i in range(1, n + 1))
    clause_names = tuple(f"C{j}" for j in range(1, formula.num_clauses + 1))
    domains: dict[str, frozenset[int]] = {
        f"x{i}": frozenset((-i, i)) for i in range(1, n + 1)
    }
    for j, cl in enumerate(formula.clauses, start=1):
        domains[f"C{j}"] = frozenset(
            lit.var if lit.positive else -lit.var for lit in cl
        )

    if kind is GlobalKind.NVALUE:
        inst = GlobalConstraintInstance(
            kind, var_names + clause_names, (), domains, n_value=n
        )
        cert = frozenset().union(*(domains[v] for v in inst.x_vars))
    elif kind is GlobalKind.DISJOINT:
        inst = GlobalConstraintInstance(kind, var_names, clause_names, domains)
        dom_x = frozenset().union(*(domains[v] for v in var_names))
        dom_y = frozenset().union(*(domains[v] for v in clause_names)) if clause_names else frozenset()
        cert = dom_x & dom_y
    elif kind is GlobalKind.USES:
        inst = GlobalConstraintInstance(kind, clause_names, var_names, domains)
        cert = frozenset().union(*(domains[v] for v in var_names))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return PptOutput(inst, cert, len(cert))


def _literal_table(positive: bool) -> dict[tuple[bool, ...], Fraction]:
    return {
        (False,): Fraction(0) if positive else Fraction(1),
        (True,): Fraction(1) if positive else Fraction(0),
    }


def sat_to_bn(formula: CnfFormula) -> PptOutput:
    """Encode SAT as a positivity query on a Boolean network.

    Input nodes u_1..u_n get prior 1/2.  A clause of r literals becomes a
    chain of max(1, r-1) nodes computing the running disjunction: the
    first chain node reads the first two literal inputs, each later node
    reads the previous chain node and the next literal input, and literal
    polarity is folded into the child's deterministic table.  A
    conjunction chain d_1..d_m ands the clause values together and the
    query node is d_m.  The certificate is the input-node set, a loop
    cutset of size n.
    """
    n = formula.num_vars
    if formula.num_clauses < 1:
        raise ValueError("the encoding needs at least one clause (no query node otherwise)")
    for cl in formula.clauses:
        if len(cl) == 0:
            raise ValueError("the encoding does not accept empty clauses")

    parents: dict[int, tuple[int, ...]] = {}
    tables: dict[int, dict[tuple[bool, ...], Fraction]] = {}
    for u in range(1, n + 1):
        parents[u] = ()
        tables[u] = {(): Fraction(1, 2)}
    next_node = n

    def add_node(node_parents: tuple[int, ...], rows) -> int:
        nonlocal next_node
        next_node += 1
        parents[next_node] = node_parents
        tables[next_node] = rows
        return next_node

    clause_tips = []
    for cl in formula.clauses:
        lits = list(cl.literals)
        if len(lits) == 1:
            tip = add_node((lits[0].var,), _literal_table(lits[0].positive))
        else:
            first, second = lits[0], lits[1]
            rows = {
                (a, b): Fraction(1) if (a == first.positive or b == second.positive) else Fraction(0)
                for a in (False, True)
                for b in (False, True)
            }
            tip = add_node((first.var, second.var), rows)
            for lit in lits[2:]:
                rows = {
                    (prev, a): Fraction(1) if (prev or a == lit.positive) else Fraction(0)
                    for prev in (False, True)
                    for a in (False, True)
                }
                tip = add_node((tip, lit.var), rows)
        clause_tips.append(tip)

    conj = add_node(
        (clause_tips[0],),
        {(False,): Fraction(0), (True,): Fraction(1)},
    )
    for tip in clause_tips[1:]:
        rows = {
            (a, b): Fraction(1) if (a and b) else Fraction(0)
            for a in (False, True)
            for b in (False, True)
        }
        conj = add_node((conj, tip), rows)

    net = BayesNet(next_node, parents, tables)
    cert = frozenset(range(1, n + 1))
    return PptOutput(BnQuery(net, conj), cert, n)


def sme_atom_names(num_vars: int, num_clauses: int) -> tuple[str, ...]:
    """Readable atom names for the stable-model encoding, in id order:
    x1..xn, xh1..xhn, c1..cm, s, f."""
    return (
        tuple(f"x{i}" for i in range(1, num_vars + 1))
        + tuple(f"xh{i}" for i in range(1, num_vars + 1))
        + tuple(f"c{j}" for j in range(1, num_clauses + 1))
        + ("s", "f")
    )


def sat_to_sme(formula: CnfFormula) -> PptOutput:
    """Encode SAT as stable-model existence.

    Per variable x the atom pair x, x-hat with the choice rules
    (x-hat <- not x) and (x <- not x-hat); per clause an atom c derivable
    from each satisfied literal (x for positive, x-hat for negative); one
    rule deriving s from all clause atoms together; and the constraint
    rule (f <- not f, not s) that kills any candidate without s.  The
    program has a stable model iff the formula is satisfiable.

    The certificate is the atom set {x, x-hat}, a feedback set of size
    exactly 2n: every dependency cycle runs through a choice pair.
    """
    n = formula.num_vars
    m = formula.num_clauses
    for cl in formula.clauses:
        if len(cl) == 0:
            raise ValueError("the encoding does not accept empty clauses")

    def x(i):
        return i

    def xh(i):
        return n + i

    def c(j):
        return 2 * n + j

    s_atom = 2 * n + m + 1
    f_atom = 2 * n + m + 2

    rules: list[Rule] = []
    for i in range(1, n + 1):
        rules.append(Rule(xh(i), frozenset(), frozenset({x(i)})))
        rules.append(Rule(x(i), frozenset(), frozenset({xh(i)})))
    for j, cl in enumerate(formula.clauses, start=1):
        for lit in cl:
            body = x(lit.var) if lit.positive else xh(lit.var)
            rules.append(Rule(c(j), frozenset({body}), frozenset()))
    rules.append(Rule(s_atom, frozenset(c(j) for j in range(1, m + 1)), frozenset()))
    rules.append(Rule(f_atom, frozenset(), frozenset({f_atom, s_atom})))

    prog = LogicProgram(f_atom, tuple(rules))
    cert = frozenset(range(1, 2 * n + 1))
    return PptOutput(prog, cert, 2 * n)


def distinct_clause_bound(num_vars: int) -> int:
    """Exact count of distinct non-empty clauses with at most three
    literals over n variables (no variable twice per clause)."""
    n = num_vars
    total = 0
    for size in (1, 2, 3):
        if n >= size:
            combos = 1
            for i in range(size):
                combos = combos * (n - i) // (i + 1)
            total += combos * (2 ** size)
    return total


def kernel_3sat_vars(formula: CnfFormula) -> CnfFormula:
    """Deduplicate a 3CNF formula: clauses equal up to literal order are
    collapsed to their first occurrence, which bounds the clause count by
    the number of distinct <=3-literal clauses over n variables."""
    if not formula.is_3cnf:
        raise ValueError("deduplication expects a 3CNF formula")
    seen = set()
    kept = []
    for cl in formula.clauses:
        key = frozenset(lit.to_int() for lit in cl)
        if key in seen:
            continue
        seen.add(key)
        kept.append(cl)
    return CnfFormula(formula.num_vars, tuple(kept))
