"""Untrusted preprocessor: linearization, compaction, trust extraction."""

import random

import pytest

import gens
from naive_linear import naive_linearize
from certkernel import (
    BOOL, AssumePayload, Certificate, NLet, NRef, NStep, RuleKind, Step,
    TermStore, UnboundNameError, Verdict, check, compact, extract_trust,
    linearize, mk_clause, neg, parse_nested_proof, parse_smt2, pos,
)


def _conflict_store():
    store = TermStore()
    p = store.var("p", BOOL)
    inputs = [mk_clause(store, [pos(p)]), mk_clause(store, [neg(p)])]
    return store, inputs


def test_linearize_leaf_only_tree():
    store, inputs = _conflict_store()
    tree = NStep(RuleKind.RES, (
        NStep(RuleKind.RES, (0,)),
        NStep(RuleKind.RES, (1,)),
    ))
    cert = linearize(tree, 2)
    assert [s.id for s in cert.steps] == [2, 3, 4]
    assert cert.qed == 4
    assert check(store, inputs, cert).verdict is Verdict.VALID


def test_linearize_memoizes_shared_lemma():
    store, inputs = _conflict_store()
    tree = NLet("L", NStep(RuleKind.RES, (0,)),
                NStep(RuleKind.RES, ("L", NStep(RuleKind.RES, ("L", 1)))))
    cert = linearize(tree, 2)
    # L's single step appears once and is referenced twice
    assert len(cert.steps) == 3
    uses = [p for s in cert.steps for p in s.premises if p == cert.steps[0].id]
    assert len(uses) == 2
    naive = naive_linearize(tree, 2)
    assert len(naive.steps) == 4  # the duplicating reference emits L twice
    assert check(store, inputs, cert).verdict \
        == check(store, inputs, naive).verdict


def test_linearize_errors():
    with pytest.raises(UnboundNameError):
        linearize(NRef("nope"), 1)
    with pytest.raises(UnboundNameError):
        linearize(NStep(RuleKind.RES, ("ghost",)), 1)
    with pytest.raises(UnboundNameError):
        linearize(NStep(RuleKind.RES, (7,)), 1)
    shadow = NLet("L", NStep(RuleKind.RES, (0,)),
                  NLet("L", NStep(RuleKind.RES, (0,)), NRef("L")))
    with pytest.raises(UnboundNameError):
        linearize(shadow, 1)


def test_linearize_output_is_structurally_sound():
    rng = random.Random(23)
    for _ in range(100):
        store, inputs, tree = gens.gen_nested_tree(rng)
        cert = linearize(tree, len(inputs))
        for pos_, step in enumerate(cert.steps):
            assert step.id == len(inputs) + pos_
            assert all(0 <= p < step.id for p in step.premises)


def test_differential_against_naive_linearizer():
    rng = random.Random(24)
    for _ in range(300):
        store, inputs, tree = gens.gen_nested_tree(rng)
        memoized = linearize(tree, len(inputs))
        duplicated = naive_linearize(tree, len(inputs))
        assert check(store, inputs, memoized).verdict \
            == check(store, inputs, duplicated).verdict


def test_compact_drops_dead_steps_and_preserves_verdicts():
    store, inputs = _conflict_store()
    cert = Certificate((
        Step(2, RuleKind.RES, (0, 0)),    # dead
        Step(3, RuleKind.RES, (0, 1)),
        Step(4, RuleKind.RES, (2, 2)),    # dead
    ), qed=3)
    small = compact(cert, 2)
    assert len(small.steps) == 1
    assert small.steps[0].id == 2 and small.qed == 2
    assert check(store, inputs, cert).verdict \
        == check(store, inputs, small).verdict is Verdict.VALID
    # compacting an already compact certificate changes nothing
    assert compact(small, 2) == small


def test_compact_differential_random():
    rng = random.Random(25)
    for _ in range(300):
        store, inputs, cert = gens.gen_random_certificate(rng)
        r1 = check(store, inputs, cert)
        r2 = check(store, inputs, compact(cert, len(inputs)))
        assert r1.verdict == r2.verdict


def test_extract_trust():
    store, inputs = _conflict_store()
    assert extract_trust(Certificate(())).assumed == ()
    assumed = mk_clause(store, [pos(store.var("q", BOOL))])
    cert = Certificate((
        Step(2, RuleKind.ASSUME, (), AssumePayload(assumed)),
        Step(3, RuleKind.RES, (0, 1)),
    ), qed=3)
    report = extract_trust(cert)
    assert report.assumed == (assumed,)
    assert report.origins == ("step 2",)


def test_extract_trust_count_matches():
    rng = random.Random(26)
    store, inputs = _conflict_store()
    for _ in range(50):
        n = rng.randint(0, 5)
        steps = []
        for i in range(n):
            steps.append(Step(2 + i, RuleKind.ASSUME, (),
                              AssumePayload(inputs[0])))
        cert = Certificate(tuple(steps))
        assert len(extract_trust(cert).assumed) == n


def test_nested_proof_concrete_syntax():
    prob = parse_smt2("""
        (declare-const p Bool)
        (assert p)
        (assert (not p))
    """)
    text = """
    (let ((L (step not_not () {(not p) 0})))
      (step res ((ref L) 1 0) {}))
    """
    tree = parse_nested_proof(text, prob)
    cert = linearize(tree, len(prob.input_clauses))
    assert check(prob.store, prob.input_clauses, cert).verdict is Verdict.VALID
    # bare names in premise lists work like (ref ...)
    text2 = """
    (let ((L (step not_not () {(not p) 0})))
      (step res (L 1 0) {}))
    """
    cert2 = linearize(parse_nested_proof(text2, prob), len(prob.input_clauses))
    assert check(prob.store, prob.input_clauses, cert2).verdict is Verdict.VALID


def test_fault_injection_buggy_preprocessors_never_validate_sat():
    """A broken transformation may only lose verdicts, never invent them."""
    rng = random.Random(27)

    def swap_premises(cert):
        steps = tuple(Step(s.id, s.rule, tuple(reversed(s.premises)), s.payload)
                      for s in cert.steps)
        return Certificate(steps, cert.qed)

    def drop_middle(cert):
        if len(cert.steps) < 2:
            return cert
        kept = cert.steps[: len(cert.steps) // 2] + cert.steps[len(cert.steps) // 2 + 1:]
        return Certificate(kept, cert.qed)

    for _ in range(200):
        store, orig_inputs, tree = gens.gen_nested_tree(rng)
        # same clause count, same store, but a satisfiable input set
        a = store.var("p0", BOOL)
        b = store.var("p1", BOOL)
        sat = mk_clause(store, [pos(a), pos(b)])
        sat_inputs = [sat] * len(orig_inputs)
        cert = linearize(tree, len(sat_inputs))
        for bug in (swap_premises, drop_middle, lambda c: c):
            r = check(store, sat_inputs, bug(cert))
            assert r.verdict is not Verdict.VALID
