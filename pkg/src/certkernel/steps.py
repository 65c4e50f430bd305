"""Certificate data model: rules, steps, and the linear certificate.

A certificate is a forward-reference-free sequence of steps.  Input clauses
occupy clause ids 0..k-1; the steps then define ids k, k+1, ... in order,
each one produced by exactly one small checker.  The final ``qed`` id names
the step intended to conclude the empty clause; the replay loop itself
accepts any derived empty clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .terms import Clause


class RuleKind(Enum):
    INPUT = "input"
    RES = "res"
    AND_POS = "and_pos"
    AND_NEG = "and_neg"
    OR_POS = "or_pos"
    OR_NEG = "or_neg"
    IMP_POS = "imp_pos"
    IMP_NEG1 = "imp_neg1"
    IMP_NEG2 = "imp_neg2"
    XOR_POS1 = "xor_pos1"
    XOR_POS2 = "xor_pos2"
    XOR_NEG1 = "xor_neg1"
    XOR_NEG2 = "xor_neg2"
    ITE_POS1 = "ite_pos1"
    ITE_POS2 = "ite_pos2"
    ITE_NEG1 = "ite_neg1"
    ITE_NEG2 = "ite_neg2"
    IFF_POS1 = "iff_pos1"
    IFF_POS2 = "iff_pos2"
    IFF_NEG1 = "iff_neg1"
    IFF_NEG2 = "iff_neg2"
    NOT_NOT = "not_not"
    EUF = "euf"
    LIA = "lia"
    BB_VAR = "bb_var"
    BB_CONST = "bb_const"
    BB_NOT = "bb_not"
    BB_AND = "bb_and"
    BB_OR = "bb_or"
    BB_XOR = "bb_xor"
    BB_ADD = "bb_add"
    BB_EQ = "bb_eq"
    BB_ULT = "bb_ult"
    ASSUME = "assume"


CNF_RULES = frozenset({
    RuleKind.AND_POS, RuleKind.AND_NEG, RuleKind.OR_POS, RuleKind.OR_NEG,
    RuleKind.IMP_POS, RuleKind.IMP_NEG1, RuleKind.IMP_NEG2,
    RuleKind.XOR_POS1, RuleKind.XOR_POS2, RuleKind.XOR_NEG1, RuleKind.XOR_NEG2,
    RuleKind.ITE_POS1, RuleKind.ITE_POS2, RuleKind.ITE_NEG1, RuleKind.ITE_NEG2,
    RuleKind.IFF_POS1, RuleKind.IFF_POS2, RuleKind.IFF_NEG1, RuleKind.IFF_NEG2,
    RuleKind.NOT_NOT,
})

BB_RULES = frozenset({
    RuleKind.BB_VAR, RuleKind.BB_CONST, RuleKind.BB_NOT, RuleKind.BB_AND,
    RuleKind.BB_OR, RuleKind.BB_XOR, RuleKind.BB_ADD, RuleKind.BB_EQ,
    RuleKind.BB_ULT,
})

RULE_BY_NAME = {r.value: r for r in RuleKind}


@dataclass(frozen=True, slots=True)
class Step:
    """One certificate line: the clause slot it defines, its rule, the
    premise clause ids (all strictly smaller), and a rule-specific payload."""

    id: int
    rule: RuleKind
    premises: tuple[int, ...]
    payload: object = None


@dataclass(frozen=True, slots=True)
class AssumePayload:
    """A clause taken on trust; checking downgrades the verdict to Trusted."""

    clause: Clause


@dataclass(frozen=True, slots=True)
class Certificate:
    """Linear refutation: steps in id order, goal = derive the empty clause."""

    steps: tuple[Step, ...]
    qed: int | None = None
