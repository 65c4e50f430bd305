"""Small checker for linear integer arithmetic lemmas.

A lemma is certified by refutation: negate each of its literals, normalize
the negations into integer rows (using a > b  <=>  a >= b + 1), then form a
non-negative combination of the rows.  The lemma is accepted exactly when
the combination collapses to an unsatisfiable ground fact such as 0 >= 1.
An optional tightening pass divides rows by the gcd of their coefficients
and rounds the constant up, which is what certifies divisibility conflicts
like not(2x = 1).

All arithmetic is arbitrary precision; there is no overflow path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import RejectError
from .terms import Clause, INT, Kind, Literal, TRIVIALLY_TRUE, TermId, TermStore


class LinRel(Enum):
    GE = ">="
    EQ = "="


@dataclass(frozen=True, slots=True)
class LinAtom:
    """Canonical row: sum(coeffs[x] * x) REL constant, zero coeffs omitted."""

    coeffs: tuple[tuple[TermId, int], ...]
    constant: int
    relation: LinRel

    def coeff_dict(self) -> dict[TermId, int]:
        return dict(self.coeffs)


@dataclass(frozen=True, slots=True)
class LiaPayload:
    """Farkas certificate: for each combination entry, the lemma literal
    index whose negation supplies the row and an integer multiplier.
    Multipliers must be non-negative except on equality rows, where the sign
    selects the row's direction.  ``tighten`` turns on gcd tightening."""

    lemma: Clause
    combination: tuple[tuple[int, int], ...]
    tighten: bool = False


def _const_value(store: TermStore, t: TermId):
    """Integer value of a constant expression, or None."""
    node = store.node(t)
    if node.kind is Kind.INT_CONST:
        return node.extra
    if node.kind is Kind.NEG:
        v = _const_value(store, node.args[0])
        return None if v is None else -v
    if node.kind is Kind.ADD:
        total = 0
        for a in node.args:
            v = _const_value(store, a)
            if v is None:
                return None
            total += v
        return total
    if node.kind is Kind.SUB:
        l = _const_value(store, node.args[0])
        r = _const_value(store, node.args[1])
        return None if l is None or r is None else l - r
    if node.kind is Kind.MUL:
        l = _const_value(store, node.args[0])
        r = _const_value(store, node.args[1])
        return None if l is None or r is None else l * r
    return None


def _linearize(store: TermStore, t: TermId, mult: int, coeffs: dict[TermId, int]) -> int:
    """Accumulate mult * t into coeffs; returns the constant contribution.

    Any Int term that is not an arithmetic node (variables, applications,
    if-then-else) acts as an opaque variable with coefficient 1.
    """
    node = store.node(t)
    k = node.kind
    if k is Kind.INT_CONST:
        return mult * node.extra
    if k is Kind.ADD:
        return sum(_linearize(store, a, mult, coeffs) for a in node.args)
    if k is Kind.SUB:
        return _linearize(store, node.args[0], mult, coeffs) \
            + _linearize(store, node.args[1], -mult, coeffs)
    if k is Kind.NEG:
        return _linearize(store, node.args[0], -mult, coeffs)
    if k is Kind.MUL:
        a, b = node.args
        ca = _const_value(store, a)
        if ca is not None:
            return _linearize(store, b, mult * ca, coeffs)
        cb = _const_value(store, b)
        if cb is not None:
            return _linearize(store, a, mult * cb, coeffs)
        raise RejectError(f"nonlinear product: {store.to_sexpr(t)}")
    coeffs[t] = coeffs.get(t, 0) + mult
    return 0


def _mk_row(coeffs: dict[TermId, int], constant: int, relation: LinRel) -> LinAtom:
    kept = tuple(sorted((v, c) for v, c in coeffs.items() if c != 0))
    return LinAtom(kept, constant, relation)


def normalize_lia_literal(store: TermStore, lit: Literal) -> LinAtom:
    """Normal form of one signed linear comparison.

    Strict and negated comparisons are eliminated with integrality
    (a > b becomes a >= b + 1).  Raises RejectError for nonlinear atoms and
    for integer disequalities, which require a case split upstream.
    """
    atom = lit.atom
    kind = store.kind(atom)
    if kind not in (Kind.LE, Kind.LT, Kind.EQ):
        raise RejectError(f"not a linear comparison: {store.to_sexpr(atom)}")
    l, r = store.args(atom)
    if store.sort_of(l) != INT:
        raise RejectError(f"not an integer comparison: {store.to_sexpr(atom)}")

    coeffs: dict[TermId, int] = {}
    if kind is Kind.LE:
        if lit.positive:
            # l <= r  ==>  r - l >= 0
            k = _linearize(store, r, 1, coeffs) + _linearize(store, l, -1, coeffs)
            return _mk_row(coeffs, -k, LinRel.GE)
        # not(l <= r)  ==>  l - r >= 1
        k = _linearize(store, l, 1, coeffs) + _linearize(store, r, -1, coeffs)
        return _mk_row(coeffs, 1 - k, LinRel.GE)
    if kind is Kind.LT:
        if lit.positive:
            # l < r  ==>  r - l >= 1
            k = _linearize(store, r, 1, coeffs) + _linearize(store, l, -1, coeffs)
            return _mk_row(coeffs, 1 - k, LinRel.GE)
        # not(l < r)  ==>  l - r >= 0
        k = _linearize(store, l, 1, coeffs) + _linearize(store, r, -1, coeffs)
        return _mk_row(coeffs, -k, LinRel.GE)
    # equality
    if not lit.positive:
        raise RejectError("integer disequality requires a case split")
    k = _linearize(store, l, 1, coeffs) + _linearize(store, r, -1, coeffs)
    return _mk_row(coeffs, -k, LinRel.EQ)


def _tighten(coeffs: dict[TermId, int], constant: int) -> tuple[dict[TermId, int], int]:
    """Divide a >= row by the gcd of its coefficients, ceiling the constant."""
    values = [c for c in coeffs.values() if c != 0]
    if not values:
        return coeffs, constant
    g = 0
    for c in values:
        g = math.gcd(g, abs(c))
    if g <= 1:
        return coeffs, constant
    return {v: c // g for v, c in coeffs.items()}, -((-constant) // g)


def check_lia(store: TermStore, payload: LiaPayload) -> Clause:
    """Validate a Farkas certificate; return the lemma on success.

    Each combination entry scales one hypothesis row: negated lemma literal
    of that index, normalized, with negative multipliers allowed only to
    flip equality rows.  When tightening is on, every contributed >= row and
    the final sum are gcd-tightened.  Accepts only a ground contradiction
    (0 >= k with k >= 1, or 0 = k with k != 0).
    """
    lemma = payload.lemma
    lits = lemma.lits
    try:
        rows = [normalize_lia_literal(store, lit.negate()) for lit in lits]
    except RejectError:
        return TRIVIALLY_TRUE

    if not payload.combination:
        return TRIVIALLY_TRUE
    total: dict[TermId, int] = {}
    total_const = 0
    relation = LinRel.EQ
    for idx, mult in payload.combination:
        if not (0 <= idx < len(rows)):
            return TRIVIALLY_TRUE
        if mult == 0:
            continue
        row = rows[idx]
        coeffs = row.coeff_dict()
        constant = row.constant
        if mult < 0:
            if row.relation is not LinRel.EQ:
                return TRIVIALLY_TRUE
            coeffs = {v: -c for v, c in coeffs.items()}
            constant = -constant
            mult = -mult
        # Every contribution is used as a >= row (an equality supplies the
        # direction chosen by the multiplier's sign).
        if payload.tighten:
            coeffs, constant = _tighten(coeffs, constant)
        for v, c in coeffs.items():
            total[v] = total.get(v, 0) + mult * c
        total_const += mult * constant
        relation = LinRel.GE

    if payload.tighten:
        total, total_const = _tighten(total, total_const)
    if any(c != 0 for c in total.values()):
        return TRIVIALLY_TRUE
    if relation is LinRel.GE and total_const >= 1:
        return lemma
    if relation is LinRel.EQ and total_const != 0:
        return lemma
    return TRIVIALLY_TRUE
