"""Propositional small checkers: resolution chains and CNF-conversion lemmas.

Both checkers are total.  When no valid inference exists they return the
trivially true clause instead of failing, so a corrupted step can never
contribute anything stronger than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

from .steps import RuleKind
from .terms import (
    BOOL, Clause, Kind, TRIVIALLY_TRUE, TermId, TermStore, mk_clause, neg, pos,
)


def resolve_pair(c1: Clause, c2: Clause) -> Clause:
    """Resolve two clauses on their smallest shared opposite-polarity atom.

    Removes one positive pivot occurrence from the side that has it and one
    negative occurrence from the other, then merges; a premise carrying both
    polarities of the pivot keeps its second occurrence, so tautological
    inputs stay tautological rather than collapsing unsoundly.  Returns the
    trivially true clause when no pivot exists.  With several candidate
    pivots the smallest atom wins, which keeps replay deterministic.
    """
    s1 = set(c1.enc)
    pivot = None
    # Encoded literals are sorted, so the first complement hit has the
    # smallest atom.
    for code in c2.enc:
        if (code ^ 1) in s1:
            pivot = code >> 1
            break
    if pivot is None:
        return TRIVIALLY_TRUE
    p_pos, p_neg = 2 * pivot, 2 * pivot + 1
    s2 = set(c2.enc)
    if p_pos in s1 and p_neg in s2:
        merged = (s1 - {p_pos}) | (s2 - {p_neg})
    else:
        merged = (s1 - {p_neg}) | (s2 - {p_pos})
    return Clause(tuple(sorted(merged)))


def resolve_chain(premises) -> Clause:
    """Left-fold of resolve_pair; a single premise returns itself."""
    premises = list(premises)
    if not premises:
        return TRIVIALLY_TRUE
    acc = premises[0]
    for c in premises[1:]:
        acc = resolve_pair(acc, c)
    return acc


@dataclass(frozen=True, slots=True)
class CnfPayload:
    """Target term of a Tseitin lemma plus the projection index used by
    and_pos/or_neg (and the direction selector of not_not)."""

    target: TermId
    index: int = 0


# rule -> (head kind, whether the index selects an argument)
_CNF_HEADS = {
    RuleKind.AND_POS: (Kind.AND, True),
    RuleKind.AND_NEG: (Kind.AND, False),
    RuleKind.OR_POS: (Kind.OR, False),
    RuleKind.OR_NEG: (Kind.OR, True),
    RuleKind.IMP_POS: (Kind.IMPLIES, False),
    RuleKind.IMP_NEG1: (Kind.IMPLIES, False),
    RuleKind.IMP_NEG2: (Kind.IMPLIES, False),
    RuleKind.XOR_POS1: (Kind.XOR, False),
    RuleKind.XOR_POS2: (Kind.XOR, False),
    RuleKind.XOR_NEG1: (Kind.XOR, False),
    RuleKind.XOR_NEG2: (Kind.XOR, False),
    RuleKind.ITE_POS1: (Kind.ITE, False),
    RuleKind.ITE_POS2: (Kind.ITE, False),
    RuleKind.ITE_NEG1: (Kind.ITE, False),
    RuleKind.ITE_NEG2: (Kind.ITE, False),
    RuleKind.IFF_POS1: (Kind.IFF, False),
    RuleKind.IFF_POS2: (Kind.IFF, False),
    RuleKind.IFF_NEG1: (Kind.IFF, False),
    RuleKind.IFF_NEG2: (Kind.IFF, False),
    RuleKind.NOT_NOT: (Kind.NOT, False),
}


def cnf_lemma(store: TermStore, rule: RuleKind, payload: CnfPayload) -> Clause:
    """Emit the Tseitin lemma clause for one connective occurrence.

    Every clause this returns is a propositional tautology linking the
    target term t to its immediate arguments.  Head/kind mismatches and
    out-of-range indices yield the trivially true clause.
    """
    info = _CNF_HEADS.get(rule)
    if info is None:
        return TRIVIALLY_TRUE
    head, indexed = info
    t = payload.target
    if not (0 <= t < len(store)) or store.kind(t) is not head:
        return TRIVIALLY_TRUE
    if store.sort_of(t) != BOOL:
        return TRIVIALLY_TRUE
    args = store.args(t)
    i = payload.index
    if indexed and not (0 <= i < len(args)):
        return TRIVIALLY_TRUE

    if rule is RuleKind.AND_POS:
        lits = [neg(t), pos(args[i])]
    elif rule is RuleKind.AND_NEG:
        lits = [pos(t)] + [neg(a) for a in args]
    elif rule is RuleKind.OR_POS:
        lits = [neg(t)] + [pos(a) for a in args]
    elif rule is RuleKind.OR_NEG:
        lits = [pos(t), neg(args[i])]
    elif rule is RuleKind.IMP_POS:
        a, b = args
        lits = [neg(t), neg(a), pos(b)]
    elif rule is RuleKind.IMP_NEG1:
        lits = [pos(t), pos(args[0])]
    elif rule is RuleKind.IMP_NEG2:
        lits = [pos(t), neg(args[1])]
    elif rule is RuleKind.XOR_POS1:
        a, b = args
        lits = [neg(t), pos(a), pos(b)]
    elif rule is RuleKind.XOR_POS2:
        a, b = args
        lits = [neg(t), neg(a), neg(b)]
    elif rule is RuleKind.XOR_NEG1:
        a, b = args
        lits = [pos(t), pos(a), neg(b)]
    elif rule is RuleKind.XOR_NEG2:
        a, b = args
        lits = [pos(t), neg(a), pos(b)]
    elif rule is RuleKind.IFF_POS1:
        a, b = args
        lits = [neg(t), neg(a), pos(b)]
    elif rule is RuleKind.IFF_POS2:
        a, b = args
        lits = [neg(t), pos(a), neg(b)]
    elif rule is RuleKind.IFF_NEG1:
        a, b = args
        lits = [pos(t), pos(a), pos(b)]
    elif rule is RuleKind.IFF_NEG2:
        a, b = args
        lits = [pos(t), neg(a), neg(b)]
    elif rule is RuleKind.ITE_POS1:
        c, a, b = args
        lits = [neg(t), pos(c), pos(b)]
    elif rule is RuleKind.ITE_POS2:
        c, a, b = args
        lits = [neg(t), neg(c), pos(a)]
    elif rule is RuleKind.ITE_NEG1:
        c, a, b = args
        lits = [pos(t), pos(c), neg(b)]
    elif rule is RuleKind.ITE_NEG2:
        c, a, b = args
        lits = [pos(t), neg(c), neg(a)]
    elif rule is RuleKind.NOT_NOT:
        # index 0 links t=not(a) downward ([-t, -a]); index 1 upward ([t, a]).
        if i == 0:
            lits = [neg(t), neg(args[0])]
        elif i == 1:
            lits = [pos(t), pos(args[0])]
        else:
            return TRIVIALLY_TRUE
    else:  # pragma: no cover - table and branches agree
        return TRIVIALLY_TRUE
    return mk_clause(store, lits)
