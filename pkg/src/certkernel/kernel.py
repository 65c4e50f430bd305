"""The main checker: replays a linear certificate against a clause store.

Input clauses seed slots 0..k-1; each step is dispatched to its small
checker and whatever clause that checker returns is stored at the step's
slot, rejected material included (rejections come back as the trivially
true clause and can never strengthen the derivation).  The run succeeds
when some stored clause is empty: Valid if no assume step was replayed,
Trusted otherwise, with the assumed clauses reported verbatim.  Structural
violations — bad ids, forward references, payload/rule mismatches — stop
the run as Invalid at the offending step, as does a rejected step whose
payload declared a specific conclusion.

A run is strictly sequential; distinct runs share nothing mutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import bitblast, euf, lia, resolution
from .bitblast import BitBlastState, BvPayload
from .euf import EufPayload
from .lia import LiaPayload
from .resolution import CnfPayload
from .steps import AssumePayload, BB_RULES, CNF_RULES, Certificate, RuleKind
from .terms import Clause, TRIVIALLY_TRUE, TermStore


class Verdict(Enum):
    VALID = "VALID"
    INVALID = "INVALID"
    TRUSTED = "TRUSTED"


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    reason: str | None = None
    step_id: int | None = None
    assumptions: tuple[Clause, ...] = ()
    stats: tuple[tuple[str, int], ...] = ()
    clause_count: int = 0
    max_clause_width: int = 0

    def rule_count(self, rule: RuleKind) -> int:
        return dict(self.stats).get(rule.value, 0)


@dataclass
class CheckContext:
    """Mutable state of one replay: the term store plus bit-blast maps."""

    store: TermStore
    bitblast: BitBlastState = field(default_factory=BitBlastState)


_PAYLOAD_TYPES: dict[RuleKind, type] = {RuleKind.RES: type(None)}
_PAYLOAD_TYPES.update({r: CnfPayload for r in CNF_RULES})
_PAYLOAD_TYPES.update({r: BvPayload for r in BB_RULES})
_PAYLOAD_TYPES[RuleKind.EUF] = EufPayload
_PAYLOAD_TYPES[RuleKind.LIA] = LiaPayload
_PAYLOAD_TYPES[RuleKind.ASSUME] = AssumePayload

_BITWISE_RULES = frozenset({
    RuleKind.BB_NOT, RuleKind.BB_AND, RuleKind.BB_OR, RuleKind.BB_XOR,
})


def dispatch(ctx: CheckContext, rule: RuleKind, premises: list[Clause],
             payload: object) -> Clause:
    """Route one step to its small checker and return its conclusion.

    Total given a payload of the matching type: small checkers signal
    rejection by returning the trivially true clause.
    """
    if rule is RuleKind.RES:
        return resolution.resolve_chain(premises)
    if rule in CNF_RULES:
        return resolution.cnf_lemma(ctx.store, rule, payload)
    if rule is RuleKind.EUF:
        return euf.check_euf(ctx.store, payload)
    if rule is RuleKind.LIA:
        return lia.check_lia(ctx.store, payload)
    if rule is RuleKind.BB_VAR:
        return bitblast.bb_var(ctx.store, ctx.bitblast, payload)
    if rule is RuleKind.BB_CONST:
        return bitblast.bb_const(ctx.store, ctx.bitblast, payload)
    if rule in _BITWISE_RULES:
        return bitblast.bb_bitwise(ctx.store, ctx.bitblast, payload)
    if rule is RuleKind.BB_ADD:
        return bitblast.bb_add(ctx.store, ctx.bitblast, payload)
    if rule is RuleKind.BB_EQ:
        return bitblast.bb_eq(ctx.store, ctx.bitblast, payload)
    if rule is RuleKind.BB_ULT:
        return bitblast.bb_ult(ctx.store, ctx.bitblast, payload)
    if rule is RuleKind.ASSUME:
        return payload.clause
    raise AssertionError(f"no small checker for rule {rule}")


def _clause_vars(store: TermStore, clause: Clause):
    out: set[int] = set()
    for atom in clause.atoms():
        out |= store.vars_of(atom)
    return out


def check(store: TermStore, input_clauses, cert: Certificate) -> CheckResult:
    """Replay a certificate over the input clauses and decide the verdict.

    Deterministic: identical inputs produce identical results.  Replay stops
    at the first stored empty clause.
    """
    clauses: list[Clause] = list(input_clauses)
    n_inputs = len(clauses)
    ctx = CheckContext(store)
    counts: dict[RuleKind, int] = {RuleKind.INPUT: n_inputs}
    assumptions: list[Clause] = []
    max_width = max((len(c) for c in clauses), default=0)
    # Variables become "used" for aux-freshness purposes the moment a clause
    # mentioning them is stored; the scan is deferred until a bit-blasting
    # step actually consults the registry.
    scanned = 0

    def result(verdict, reason=None, step_id=None) -> CheckResult:
        stats = tuple((r.value, counts[r]) for r in RuleKind if counts.get(r))
        return CheckResult(
            verdict, reason=reason, step_id=step_id,
            assumptions=tuple(assumptions), stats=stats,
            clause_count=len(clauses), max_clause_width=max_width)

    def finish():
        if assumptions:
            return result(Verdict.TRUSTED)
        return result(Verdict.VALID)

    if any(c.is_empty() for c in clauses):
        return finish()

    for step in cert.steps:
        if step.id != len(clauses):
            return result(Verdict.INVALID,
                          f"step id {step.id}, expected {len(clauses)}", step.id)
        if any(not (0 <= p < step.id) for p in step.premises):
            return result(Verdict.INVALID, "bad premise reference", step.id)
        expected_type = _PAYLOAD_TYPES.get(step.rule)
        if expected_type is None or not isinstance(step.payload, expected_type):
            return result(Verdict.INVALID,
                          f"payload does not match rule {step.rule.value}", step.id)

        if step.rule in BB_RULES:
            while scanned < len(clauses):
                ctx.bitblast.note_used(_clause_vars(store, clauses[scanned]))
                scanned += 1

        premises = [clauses[p] for p in step.premises]
        conclusion = dispatch(ctx, step.rule, premises, step.payload)

        declared = None
        if step.rule in (RuleKind.EUF, RuleKind.LIA):
            declared = step.payload.lemma
        if declared is not None and conclusion == TRIVIALLY_TRUE and declared != TRIVIALLY_TRUE:
            return result(Verdict.INVALID,
                          f"{step.rule.value} checker rejected the step", step.id)

        if step.rule is RuleKind.ASSUME:
            assumptions.append(conclusion)
        clauses.append(conclusion)
        counts[step.rule] = counts.get(step.rule, 0) + 1
        width = len(conclusion)
        if width > max_width:
            max_width = width
        if not conclusion.enc:
            return finish()

    return result(Verdict.INVALID, "empty clause not derived")


def stats_report(store: TermStore, result: CheckResult) -> str:
    """Human-readable run report: verdict, rule histogram, store shape."""
    from .terms import clause_to_sexpr

    lines = [f"verdict: {result.verdict.value}"]
    if result.reason:
        where = f" (step {result.step_id})" if result.step_id is not None else ""
        lines.append(f"reason: {result.reason}{where}")
    lines.append(f"clauses stored: {result.clause_count}")
    lines.append(f"max clause width: {result.max_clause_width}")
    lines.append("rule counts:")
    for name, count in result.stats:
        lines.append(f"  {name} {count}")
    if result.assumptions:
        lines.append("assumptions:")
        for clause in result.assumptions:
            lines.append(f"  {clause_to_sexpr(store, clause)}")
    return "\n".join(lines) + "\n"
