"""Bit-blasting checkers: maps, link clauses, word/bit agreement."""

import itertools
import random

from certkernel import (
    BOOL, BitBlastState, BitVecSort, BvPayload, Kind, Model, TRIVIALLY_TRUE,
    TermStore, eval_term, mk_clause, pos,
)
from certkernel.bitblast import bb_add, bb_bitwise, bb_const, bb_eq, bb_ult, bb_var
from certkernel.oracle import int_to_bits


def _setup(width, names="xy"):
    store = TermStore()
    state = BitBlastState()
    out = [store, state]
    for name in names:
        v = store.var(name, BitVecSort(width))
        aux = tuple(store.var(f"{name}{i}", BOOL) for i in range(width))
        assert bb_var(store, state, BvPayload(v, aux)) == TRIVIALLY_TRUE
        assert state.bits[v] == aux
        out.append(v)
    return out


def _bit_model(store, state, word_vals):
    """Model assigning bit variables from word values, carries from their
    ripple definitions (the definition-respecting extension)."""
    model = Model()
    for var, value in word_vals.items():
        for i, bit in enumerate(state.bits[var]):
            model.bool_vals[bit] = bool((value >> i) & 1)
    return model


def _eval_bits(store, model, bits):
    memo = {}
    return sum(1 << i for i, b in enumerate(bits)
               if eval_term(store, model, b, memo))


def test_bb_var_rejections():
    store, state, x, y = _setup(2)
    # remap
    aux2 = tuple(store.var(f"z{i}", BOOL) for i in range(2))
    assert bb_var(store, state, BvPayload(x, aux2)) == TRIVIALLY_TRUE
    assert state.bits[x] != aux2
    # width mismatch
    w = store.var("w", BitVecSort(2))
    aux3 = tuple(store.var(f"w{i}", BOOL) for i in range(3))
    bb_var(store, state, BvPayload(w, aux3))
    assert w not in state.bits
    # non-fresh aux (reuses x's bits)
    bb_var(store, state, BvPayload(w, state.bits[x]))
    assert w not in state.bits


def test_bb_const_lsb_first():
    store = TermStore()
    state = BitBlastState()
    c = store.bv_const_of_int(5, 3)  # #b101
    bb_const(store, state, BvPayload(c))
    assert state.bits[c] == (store.true_id, store.false_id, store.true_id)
    c0 = store.bv_const_of_int(0, 2)
    bb_const(store, state, BvPayload(c0))
    assert state.bits[c0] == (store.false_id, store.false_id)
    # remap rejected: entries are immutable once set
    before = state.bits[c]
    bb_const(store, state, BvPayload(c))
    assert state.bits[c] is before


def test_bb_bitwise_shapes():
    store, state, x, y = _setup(2)
    t = store.bv_and(x, y)
    bb_bitwise(store, state, BvPayload(t))
    x0, x1 = state.bits[x]
    y0, y1 = state.bits[y]
    assert state.bits[t] == (store.and_([x0, y0]), store.and_([x1, y1]))
    tn = store.bv_not(x)
    bb_bitwise(store, state, BvPayload(tn))
    assert state.bits[tn] == (store.not_(x0), store.not_(x1))
    # unmapped operand
    z = store.var("z", BitVecSort(2))
    tz = store.bv_or(z, x)
    bb_bitwise(store, state, BvPayload(tz))
    assert tz not in state.bits


def test_bitwise_agrees_with_word_semantics_exhaustively():
    for op_kind, word_op in (
        (Kind.BV_AND, lambda a, b: a & b),
        (Kind.BV_OR, lambda a, b: a | b),
        (Kind.BV_XOR, lambda a, b: a ^ b),
    ):
        store, state, x, y = _setup(2)
        t = store.intern(op_kind, (x, y))
        bb_bitwise(store, state, BvPayload(t))
        for xv, yv in itertools.product(range(4), repeat=2):
            model = _bit_model(store, state, {x: xv, y: yv})
            assert _eval_bits(store, model, state.bits[t]) == word_op(xv, yv)
    store, state, x, y = _setup(2)
    t = store.bv_not(x)
    bb_bitwise(store, state, BvPayload(t))
    for xv in range(4):
        model = _bit_model(store, state, {x: xv})
        assert _eval_bits(store, model, state.bits[t]) == (~xv) & 3


def _install_add(store, state, x, y, width, tag="c"):
    t = store.bv_add(x, y)
    carries = tuple(store.var(f"{tag}{i}", BOOL) for i in range(width))
    link = bb_add(store, state, BvPayload(t, carries))
    assert link != TRIVIALLY_TRUE and len(link) == 1
    return t, carries, link


def _extend_with_carries(store, model, state, x, y, carries):
    memo = {}
    xv = [bool(eval_term(store, model, b, memo)) for b in state.bits[x]]
    yv = [bool(eval_term(store, model, b, memo)) for b in state.bits[y]]
    c = False
    for i, var in enumerate(carries):
        model.bool_vals[var] = c
        c = (xv[i] and yv[i]) or ((xv[i] != yv[i]) and c)
    return model


def test_bb_add_matches_modular_addition():
    for width in (1, 2, 4):
        store, state, x, y = _setup(width)
        t, carries, link = _install_add(store, state, x, y, width)
        for xv, yv in itertools.product(range(1 << width), repeat=2):
            model = _bit_model(store, state, {x: xv, y: yv})
            _extend_with_carries(store, model, state, x, y, carries)
            # the carry-definition link clause holds in the extension
            assert eval_term(store, model, link.enc[0] >> 1) is True
            assert _eval_bits(store, model, state.bits[t]) \
                == (xv + yv) % (1 << width)


def test_bb_add_additive_identity():
    store = TermStore()
    state = BitBlastState()
    x = store.var("x", BitVecSort(2))
    aux = tuple(store.var(f"x{i}", BOOL) for i in range(2))
    bb_var(store, state, BvPayload(x, aux))
    zero = store.bv_const_of_int(0, 2)
    bb_const(store, state, BvPayload(zero))
    t, carries, link = _install_add(store, state, x, zero, 2)
    for xv in range(4):
        model = _bit_model(store, state, {x: xv})
        _extend_with_carries(store, model, state, x, zero, carries)
        assert _eval_bits(store, model, state.bits[t]) == xv


def test_bb_add_rejects_stale_aux():
    store, state, x, y = _setup(2)
    t = store.bv_add(x, y)
    # reusing x's bit names is not fresh
    assert bb_add(store, state, BvPayload(t, state.bits[x])) == TRIVIALLY_TRUE
    assert t not in state.bits


def test_bb_eq_link_shape_and_validity():
    store, state, x, y = _setup(1)
    atom = store.eq(x, y)
    link = bb_eq(store, state, BvPayload(atom))
    x0 = state.bits[x][0]
    y0 = state.bits[y][0]
    assert link == mk_clause(store, [pos(store.iff(atom, store.iff(x0, y0)))])
    # same term on both sides folds to iff(atom, x0 <-> x0)
    refl = store.eq(x, x)
    link2 = bb_eq(store, state, BvPayload(refl))
    assert link2 != TRIVIALLY_TRUE


def test_bb_eq_random_links_valid_under_bv_semantics():
    rng = random.Random(9)
    store, state, x, y = _setup(3)
    atom = store.eq(x, y)
    link = bb_eq(store, state, BvPayload(atom))
    link_term = link.enc[0] >> 1
    for xv, yv in itertools.product(range(8), repeat=2):
        model = _bit_model(store, state, {x: xv, y: yv})
        model.bv_vals[x] = int_to_bits(xv, 3)
        model.bv_vals[y] = int_to_bits(yv, 3)
        assert eval_term(store, model, link_term) is True


def test_bb_ult_width1_shape():
    store, state, x, y = _setup(1)
    atom = store.bv_ult(x, y)
    link = bb_ult(store, state, BvPayload(atom))
    x0 = state.bits[x][0]
    y0 = state.bits[y][0]
    expected = store.iff(atom, store.and_([store.not_(x0), y0]))
    assert link == mk_clause(store, [pos(expected)])


def test_bb_ult_agrees_with_unsigned_order():
    store, state, x, y = _setup(2)
    atom = store.bv_ult(x, y)
    link = bb_ult(store, state, BvPayload(atom))
    # extract the comparison formula and evaluate it over all operand pairs
    link_term = link.enc[0] >> 1
    formula = store.args(link_term)[1]
    for xv, yv in itertools.product(range(4), repeat=2):
        model = _bit_model(store, state, {x: xv, y: yv})
        assert eval_term(store, model, formula) == (xv < yv)
    # irreflexivity: x < x evaluates false for every x
    refl = store.bv_ult(x, x)
    link2 = bb_ult(store, state, BvPayload(refl))
    formula2 = store.args(link2.enc[0] >> 1)[1]
    for xv in range(4):
        model = _bit_model(store, state, {x: xv})
        assert eval_term(store, model, formula2) is False


def test_aux_freshness_registry_under_fuzz():
    rng = random.Random(31)
    for _ in range(100):
        store = TermStore()
        state = BitBlastState()
        width = rng.choice((1, 2, 3))
        claimed = set()
        for name in "xyz":
            v = store.var(name, BitVecSort(width))
            aux = tuple(store.var(f"{name}{i}", BOOL) for i in range(width))
            if rng.random() < 0.4 and claimed:
                aux = (rng.choice(sorted(claimed)),) + aux[1:]
            before = dict(state.bits)
            bb_var(store, state, BvPayload(v, aux))
            if any(a in claimed for a in aux) or len(set(aux)) != len(aux):
                assert v not in state.bits, "non-fresh aux accepted"
            if v in state.bits:
                claimed.update(aux)
            else:
                assert state.bits == before, "rejection must not mutate"
