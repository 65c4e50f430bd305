"""Brute-force semantic evaluation for tests and acceptance suites.

Everything here realizes the interpretation of terms at finite scale:
explicit models, exhaustive satisfiability search, propositional
tautology/implication checks, and finite-model validity for equational
lemmas.  It is deliberately independent of the checker modules (it imports
only the term core) and is allowed to be exponential.

Verdict caveats, by construction of the budgets:

* ``brute_unsat`` enumerates Int variables over a finite box and
  uninterpreted domains up to a cap, so an ``unsat`` verdict means "no
  model within the budgeted space".  The result's ``complete`` flag is
  True only when that space provably covers all models (no Int variables,
  and every uninterpreted domain swept up to the distinct-subterm bound).
  ``sat`` verdicts always come with a checkable witness.
* ``euf_lemma_valid`` checks validity in all interpretations up to a domain
  size, which refutes invalid lemmas but cannot certify validity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import IncompleteModelError, ResourceError
from .terms import (
    BOOL, INT, BOOL_STRUCTURE, BitVecSort, Clause, FunSym, Kind, Sort,
    TermId, TermStore, UninterpretedSort,
)

# A value is bool (Bool), int (Int or an uninterpreted domain element),
# or a tuple of bools LSB-first (bit-vectors).
Value = object

UNSAT = "unsat"
SAT = "sat"
EXHAUSTED = "exhausted"

DEFAULT_INT_BOX = (-10, 10)
DEFAULT_MAX_DOMAIN = 4
DEFAULT_BUDGET = 2_000_000


@dataclass
class Model:
    """A finite interpretation of the free symbols of some terms."""

    bool_vals: dict[TermId, bool] = field(default_factory=dict)
    int_vals: dict[TermId, int] = field(default_factory=dict)
    bv_vals: dict[TermId, tuple[bool, ...]] = field(default_factory=dict)
    elem_vals: dict[TermId, int] = field(default_factory=dict)
    # FunSym -> (explicit entries keyed by argument-value tuple, default)
    fun_tables: dict[FunSym, tuple[dict[tuple, Value], Value | None]] = field(default_factory=dict)
    domains: dict[UninterpretedSort, int] = field(default_factory=dict)

    def var_value(self, store: TermStore, t: TermId) -> Value:
        name, sort = store.node(t).extra
        for table in (self.bool_vals, self.int_vals, self.bv_vals, self.elem_vals):
            if t in table:
                return table[t]
        raise IncompleteModelError(name)

    def set_var(self, store: TermStore, t: TermId, value: Value) -> None:
        sort = store.sort_of(t)
        if sort == BOOL:
            self.bool_vals[t] = value
        elif sort == INT:
            self.int_vals[t] = value
        elif isinstance(sort, BitVecSort):
            self.bv_vals[t] = tuple(value)
        else:
            self.elem_vals[t] = value


def bits_to_int(bits: tuple[bool, ...]) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


def int_to_bits(value: int, width: int) -> tuple[bool, ...]:
    return tuple(bool((value >> i) & 1) for i in range(width))


def _eval(store: TermStore, t: TermId, lookup_var, lookup_fun, memo: dict) -> Value:
    if t in memo:
        return memo[t]
    node = store.node(t)
    k = node.kind
    if k is Kind.VAR:
        v = lookup_var(t)
    elif k is Kind.INT_CONST:
        v = node.extra
    elif k is Kind.BV_CONST:
        v = node.extra
    elif k is Kind.TRUE:
        v = True
    elif k is Kind.FALSE:
        v = False
    else:
        args = [_eval(store, a, lookup_var, lookup_fun, memo) for a in node.args]
        if k is Kind.APPLY:
            v = lookup_fun(node.extra, tuple(args))
        elif k is Kind.EQ:
            v = args[0] == args[1]
        elif k is Kind.LE:
            v = args[0] <= args[1]
        elif k is Kind.LT:
            v = args[0] < args[1]
        elif k is Kind.NOT:
            v = not args[0]
        elif k is Kind.AND:
            v = all(args)
        elif k is Kind.OR:
            v = any(args)
        elif k is Kind.IMPLIES:
            v = (not args[0]) or args[1]
        elif k is Kind.XOR:
            v = args[0] != args[1]
        elif k is Kind.IFF:
            v = args[0] == args[1]
        elif k is Kind.ITE:
            v = args[1] if args[0] else args[2]
        elif k is Kind.ADD:
            v = sum(args)
        elif k is Kind.SUB:
            v = args[0] - args[1]
        elif k is Kind.NEG:
            v = -args[0]
        elif k is Kind.MUL:
            v = args[0] * args[1]
        elif k is Kind.BV_NOT:
            v = tuple(not b for b in args[0])
        elif k is Kind.BV_AND:
            v = tuple(a and b for a, b in zip(args[0], args[1]))
        elif k is Kind.BV_OR:
            v = tuple(a or b for a, b in zip(args[0], args[1]))
        elif k is Kind.BV_XOR:
            v = tuple(a != b for a, b in zip(args[0], args[1]))
        elif k is Kind.BV_ADD:
            w = len(args[0])
            v = int_to_bits(bits_to_int(args[0]) + bits_to_int(args[1]), w)
        elif k is Kind.BV_ULT:
            v = bits_to_int(args[0]) < bits_to_int(args[1])
        else:  # pragma: no cover - exhaustive over Kind
            raise AssertionError(k)
    memo[t] = v
    return v


def eval_term(store: TermStore, model: Model, t: TermId, memo: dict | None = None) -> Value:
    """Evaluate a term under a model; standard semantics per node kind.

    Bit-vector addition is modular at its width, bvult is the unsigned
    order.  Raises IncompleteModelError when the model misses a symbol.
    """

    def lookup_fun(fn: FunSym, args: tuple) -> Value:
        if fn not in model.fun_tables:
            raise IncompleteModelError(fn.name)
        entries, default = model.fun_tables[fn]
        if args in entries:
            return entries[args]
        if default is None:
            raise IncompleteModelError(f"{fn.name}{args}")
        return default

    return _eval(store, t, lambda u: model.var_value(store, u), lookup_fun,
                 {} if memo is None else memo)


def eval_clause(store: TermStore, model: Model, clause: Clause, memo: dict | None = None) -> bool:
    """True iff some literal evaluates to its polarity; empty clause is false."""
    if memo is None:
        memo = {}
    for code in clause.enc:
        if bool(eval_term(store, model, code >> 1, memo)) == ((code & 1) == 0):
            return True
    return False


# ---------------------------------------------------------------------------
# Propositional skeleton checks (theory atoms treated as free)
# ---------------------------------------------------------------------------

def abstract_atoms(store: TermStore, roots) -> tuple[TermId, ...]:
    """Bool-sorted subterms that the propositional rules cannot decompose.

    Walks the Boolean structure from each root; any Bool term whose head is
    not a connective (variables, applications, equalities, comparisons)
    counts as one opaque atom.
    """
    seen: set[TermId] = set()
    atoms: set[TermId] = set()

    def walk(t: TermId):
        if t in seen:
            return
        seen.add(t)
        node = store.node(t)
        if node.kind in (Kind.TRUE, Kind.FALSE):
            return
        if node.kind in BOOL_STRUCTURE:
            if node.kind is Kind.ITE and store.sort_of(t) != BOOL:
                atoms.add(t)
                return
            for a in node.args:
                walk(a)
        else:
            atoms.add(t)

    for r in roots:
        walk(r)
    return tuple(sorted(atoms))


def _eval_skeleton(store: TermStore, t: TermId, assign: dict[TermId, bool], memo: dict) -> bool:
    if t in assign:
        return assign[t]
    if t in memo:
        return memo[t]
    node = store.node(t)
    k = node.kind
    if k is Kind.TRUE:
        v = True
    elif k is Kind.FALSE:
        v = False
    elif k is Kind.NOT:
        v = not _eval_skeleton(store, node.args[0], assign, memo)
    elif k is Kind.AND:
        v = all(_eval_skeleton(store, a, assign, memo) for a in node.args)
    elif k is Kind.OR:
        v = any(_eval_skeleton(store, a, assign, memo) for a in node.args)
    elif k is Kind.IMPLIES:
        v = (not _eval_skeleton(store, node.args[0], assign, memo)) \
            or _eval_skeleton(store, node.args[1], assign, memo)
    elif k is Kind.XOR:
        v = _eval_skeleton(store, node.args[0], assign, memo) \
            != _eval_skeleton(store, node.args[1], assign, memo)
    elif k is Kind.IFF:
        v = _eval_skeleton(store, node.args[0], assign, memo) \
            == _eval_skeleton(store, node.args[1], assign, memo)
    elif k is Kind.ITE:
        v = _eval_skeleton(store, node.args[1], assign, memo) \
            if _eval_skeleton(store, node.args[0], assign, memo) \
            else _eval_skeleton(store, node.args[2], assign, memo)
    else:
        raise IncompleteModelError(store.to_sexpr(t))
    memo[t] = v
    return v


def _skeleton_clause(store: TermStore, clause: Clause, assign: dict, memo: dict) -> bool:
    return any(
        _eval_skeleton(store, code >> 1, assign, memo) == ((code & 1) == 0)
        for code in clause.enc)


def is_tautology(store: TermStore, clause: Clause, max_atoms: int = 20) -> bool:
    """Truth-table check over the clause's abstract atoms; exhaustive."""
    atoms = abstract_atoms(store, clause.atoms())
    if len(atoms) > max_atoms:
        raise ResourceError(f"{len(atoms)} atoms exceed the {max_atoms}-atom budget")
    for values in itertools.product((False, True), repeat=len(atoms)):
        assign = dict(zip(atoms, values))
        if not _skeleton_clause(store, clause, assign, {}):
            return False
    return True


def propositionally_implies(store: TermStore, premises, conclusion: Clause,
                            max_atoms: int = 20) -> bool:
    """Every atom assignment satisfying all premises satisfies the conclusion."""
    roots = list(conclusion.atoms())
    for p in premises:
        roots.extend(p.atoms())
    atoms = abstract_atoms(store, roots)
    if len(atoms) > max_atoms:
        raise ResourceError(f"{len(atoms)} atoms exceed the {max_atoms}-atom budget")
    for values in itertools.product((False, True), repeat=len(atoms)):
        assign = dict(zip(atoms, values))
        memo: dict = {}
        if all(_skeleton_clause(store, p, assign, memo) for p in premises) \
                and not _skeleton_clause(store, conclusion, assign, memo):
            return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive model search
# ---------------------------------------------------------------------------

class _NeedValue(Exception):
    def __init__(self, key, choices):
        self.key = key
        self.choices = choices


@dataclass(frozen=True)
class OracleResult:
    status: str                  # "unsat" | "sat" | "exhausted"
    witness: Model | None = None
    complete: bool = True


def _collect_symbols(store: TermStore, clauses):
    bool_vars: set[TermId] = set()
    int_vars: set[TermId] = set()
    bv_vars: set[TermId] = set()
    elem_vars: dict[UninterpretedSort, set[TermId]] = {}
    funs: set[FunSym] = set()
    u_terms: dict[UninterpretedSort, set[TermId]] = {}
    seen: set[TermId] = set()

    def walk(t: TermId):
        if t in seen:
            return
        seen.add(t)
        node = store.node(t)
        sort = node.sort
        if isinstance(sort, UninterpretedSort):
            u_terms.setdefault(sort, set()).add(t)
        if node.kind is Kind.VAR:
            if sort == BOOL:
                bool_vars.add(t)
            elif sort == INT:
                int_vars.add(t)
            elif isinstance(sort, BitVecSort):
                bv_vars.add(t)
            else:
                elem_vars.setdefault(sort, set()).add(t)
        elif node.kind is Kind.APPLY:
            funs.add(node.extra)
        for a in node.args:
            walk(a)

    for clause in clauses:
        for atom in clause.atoms():
            walk(atom)
    return bool_vars, int_vars, bv_vars, elem_vars, funs, u_terms


def _sort_values(sort: Sort, int_box: tuple[int, int], domains: dict) -> list:
    if sort == BOOL:
        return [False, True]
    if sort == INT:
        lo, hi = int_box
        return list(range(lo, hi + 1))
    if isinstance(sort, BitVecSort):
        return [int_to_bits(v, sort.width) for v in range(1 << sort.width)]
    return list(range(domains[sort]))


def _search_completions(evaluate, tables: dict, counter: list, budget: int):
    """Depth-first resolution of missing function entries.

    ``evaluate`` must be a pure function of ``tables``; yields one result per
    complete extension.  ``counter`` counts evaluations against the budget.
    """
    try:
        result = evaluate(tables)
    except _NeedValue as nv:
        for v in nv.choices:
            tables[nv.key] = v
            yield from _search_completions(evaluate, tables, counter, budget)
        del tables[nv.key]
        return
    counter[0] += 1
    if counter[0] > budget:
        raise ResourceError("oracle evaluation budget exceeded")
    yield result, dict(tables)


def brute_unsat(store: TermStore, clauses, int_box: tuple[int, int] = DEFAULT_INT_BOX,
                max_domain: int = DEFAULT_MAX_DOMAIN,
                budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Exhaustively search for a model of the clause set.

    Returns sat with a witness model, unsat when every budgeted assignment
    was visited without finding one, or exhausted when the budget would be
    exceeded.  Uninterpreted functions are enumerated lazily over the
    argument tuples actually reached, which keeps UF/LIA combinations
    tractable at desk scale.
    """
    clauses = list(clauses)
    bool_vars, int_vars, bv_vars, elem_vars, funs, u_terms = _collect_symbols(store, clauses)

    u_sorts = sorted(set(elem_vars) | set(u_terms), key=lambda s: s.name)
    # A quantifier-free set is satisfiable iff it has a model no larger than
    # its distinct term count per sort, so sweeping up to that bound is a
    # complete search for those sorts.
    needed = {s: max(1, len(u_terms.get(s, ()))) for s in u_sorts}
    sweeps = {s: min(needed[s], max_domain) for s in u_sorts}
    complete = all(sweeps[s] >= needed[s] for s in u_sorts) and not int_vars

    var_order = sorted(bool_vars) + sorted(int_vars) + sorted(bv_vars) \
        + [v for s in u_sorts for v in sorted(elem_vars.get(s, ()))]

    counter = [0]
    domain_choices = [range(1, sweeps[s] + 1) for s in u_sorts]
    for sizes in itertools.product(*domain_choices):
        domains = dict(zip(u_sorts, sizes))
        value_lists = [_sort_values(store.sort_of(v), int_box, domains) for v in var_order]
        est = 1
        for vl in value_lists:
            est *= len(vl)
            if est > budget:
                return OracleResult(EXHAUSTED)
        for values in itertools.product(*value_lists):
            assign = dict(zip(var_order, values))

            def evaluate(tables, _assign=assign, _domains=domains):
                memo: dict = {}

                def lookup_fun(fn: FunSym, args: tuple):
                    key = (fn, args)
                    if key not in tables:
                        raise _NeedValue(key, _sort_values(fn.ret_sort, int_box, _domains))
                    return tables[key]

                return all(
                    any(bool(_eval(store, code >> 1, _assign.__getitem__, lookup_fun, memo))
                        == ((code & 1) == 0) for code in clause.enc)
                    for clause in clauses)

            try:
                for ok, tables in _search_completions(evaluate, {}, counter, budget):
                    if ok:
                        witness = Model(domains=dict(domains))
                        for v, val in assign.items():
                            witness.set_var(store, v, val)
                        grouped: dict[FunSym, dict] = {fn: {} for fn in funs}
                        for (fn, fargs), val in tables.items():
                            grouped.setdefault(fn, {})[fargs] = val
                        for fn, entries in grouped.items():
                            default = _sort_values(fn.ret_sort, int_box, domains)[0]
                            witness.fun_tables[fn] = (entries, default)
                        return OracleResult(SAT, witness=witness)
            except ResourceError:
                return OracleResult(EXHAUSTED)
    return OracleResult(UNSAT, complete=complete)


# ---------------------------------------------------------------------------
# Finite-model validity for equational lemmas
# ---------------------------------------------------------------------------

def euf_lemma_valid(store: TermStore, lemma: Clause, max_domain: int = 3,
                    budget: int = DEFAULT_BUDGET) -> bool:
    """Validity of an equality lemma in all interpretations up to a size.

    Every sort in the lemma (Int included) is treated as an abstract finite
    domain; integer constants become free constants of that domain.  True
    means no falsifying interpretation with domains of size 1..max_domain
    exists, which is sound for refuting bad lemmas but cannot certify
    validity.  Raises ResourceError past the evaluation budget.
    """
    carriers: set[TermId] = set()
    funs: set[FunSym] = set()
    seen: set[TermId] = set()

    def walk(t: TermId):
        if t in seen:
            return
        seen.add(t)
        node = store.node(t)
        if node.kind in (Kind.VAR, Kind.INT_CONST):
            carriers.add(t)
        elif node.kind is Kind.APPLY:
            funs.add(node.extra)
        for a in node.args:
            walk(a)

    for atom in lemma.atoms():
        if store.kind(atom) is not Kind.EQ:
            raise ResourceError(f"lemma atom {store.to_sexpr(atom)} is not an equality")
        walk(atom)

    order = sorted(carriers)
    counter = [0]
    for d in range(1, max_domain + 1):
        values = list(range(d))
        for assignment in itertools.product(values, repeat=len(order)):
            assign = dict(zip(order, assignment))

            def evaluate(tables, _assign=assign, _values=values):
                memo: dict = {}

                def ev(t: TermId):
                    # Variables and integer constants are both abstract
                    # domain elements here; only applications compute.
                    if t in _assign:
                        return _assign[t]
                    if t in memo:
                        return memo[t]
                    node = store.node(t)
                    if node.kind is not Kind.APPLY:
                        raise ResourceError(
                            f"unsupported term in equality lemma: {store.to_sexpr(t)}")
                    key = (node.extra, tuple(ev(a) for a in node.args))
                    if key not in tables:
                        raise _NeedValue(key, _values)
                    memo[t] = tables[key]
                    return memo[t]

                for code in lemma.enc:
                    l, r = store.args(code >> 1)
                    if (ev(l) == ev(r)) == ((code & 1) == 0):
                        return True
                return False

            for ok, _tables in _search_completions(evaluate, {}, counter, budget):
                if not ok:
                    return False
    return True
