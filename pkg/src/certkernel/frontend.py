"""Trusted parsers: DIMACS, an SMT-LIB 2 subset, and the certificate format.

These are the only components whose correctness the checking pipeline takes
on trust, so they stay deliberately small: tokenize, read s-expressions,
intern terms against the problem's store.  All three parsers are total over
byte streams — they return a value or raise a structured error carrying a
1-based line and column, never crash.  UTF-8 text, LF or CRLF.

Certificate concrete syntax, one step per line::

    <id> <rule> (<premise ids>) {<payload>}
    qed <id>

with payload terms written in SMT-LIB syntax.  Clause payloads list their
literals directly; ``(not <atom>)`` marks a negative literal.  Lines
starting with ``;`` are comments.  The payload shapes per rule family:

    res                  {}
    and_pos etc.         {<target term> [<index>]}
    euf                  {(lemma <lit>*) (just <eqstep>*)}
    lia                  {(lemma <lit>*) (farkas (<hyp> <coeff>)*) [tighten]}
    bb_var, bb_add       {<target term> (aux <name>*)}
    other bb rules       {<target term>}
    assume               {<lit>*}

Names introduced under ``(aux ...)`` become Bool variables on sight; their
freshness is the kernel's business, not the parser's.  Names starting with
``$`` are reserved for the predicate encoding (an uninterpreted predicate
``p : S -> Bool`` is parsed as a function into the sort ``$bool`` compared
to the constant ``$tt``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ForwardReferenceError, ParseError, SortError, UnsupportedError
from .euf import EqRule, EqStep, EufPayload
from .lia import LiaPayload
from .bitblast import BvPayload
from .resolution import CnfPayload
from .steps import (
    AssumePayload, BB_RULES, CNF_RULES, Certificate, RULE_BY_NAME, RuleKind, Step,
)
from .terms import (
    BOOL, Clause, FunSym, INT, Kind, Literal, Sort, TermId, TermStore,
    BitVecSort, UninterpretedSort, clause_to_sexpr, mk_clause, neg, pos,
)

LOGICS = ("SAT", "QF_UF", "QF_LIA", "QF_BV", "QF_UFLIA")

_SYMBOL_CHARS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "~!@$%^&*_-+=<>.?/")
_NUMERAL = re.compile(r"^[0-9]+$")
_SIGNED = re.compile(r"^-?[0-9]+$")
_BV_LIT = re.compile(r"^#b[01]+$")


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    line: int
    col: int


@dataclass(slots=True)
class SList:
    items: list
    bracket: str
    line: int
    col: int


SExpr = object  # Token | SList


def tokenize(text: str, first_line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    line, col, i = first_line, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "(){}":
            tokens.append(Token(ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and (text[i] in _SYMBOL_CHARS or text[i] == "#"):
                i += 1
                col += 1
            if i == start:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token(text[start:i], line, start_col))
    return tokens


def _read_seq(tokens: list[Token], i: int, close: str | None):
    items: list = []
    while i < len(tokens):
        t = tokens[i]
        if t.text in (")", "}"):
            if close != t.text:
                raise ParseError(f"unbalanced {t.text!r}", t.line, t.col)
            return items, i + 1
        if t.text == "(":
            sub, i = _read_seq(tokens, i + 1, ")")
            items.append(SList(sub, "(", t.line, t.col))
        elif t.text == "{":
            sub, i = _read_seq(tokens, i + 1, "}")
            items.append(SList(sub, "{", t.line, t.col))
        else:
            items.append(t)
            i += 1
    if close is not None:
        last = tokens[-1] if tokens else Token("", 1, 1)
        raise ParseError(f"missing closing {close!r}", last.line, last.col)
    return items, i


def read_sexprs(tokens: list[Token]) -> list:
    items, _ = _read_seq(tokens, 0, None)
    return items


def _pos_of(sx) -> tuple[int, int]:
    return (sx.line, sx.col)


# ---------------------------------------------------------------------------
# Problems
# ---------------------------------------------------------------------------

@dataclass
class Problem:
    """A parsed input problem sharing one term store with its certificate.

    Assertions enter as unit clauses; clausification is certificate-visible.
    DIMACS inputs are already clausal and skip the assertion layer.
    """

    store: TermStore
    logic: str | None = None
    decls: dict[str, object] = field(default_factory=dict)  # name -> ("var", id) | ("fun"|"pred", FunSym)
    sorts: dict[str, UninterpretedSort] = field(default_factory=dict)
    assertions: list[TermId] = field(default_factory=list)
    input_clauses: list[Clause] = field(default_factory=list)
    dimacs_vars: tuple[TermId, ...] = ()


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

_UNSUPPORTED_HEADS = frozenset({
    "forall", "exists", "define-fun", "define-sort", "distinct", "div", "mod",
    "abs", "select", "store", "concat", "extract", "bvmul", "bvudiv", "bvurem",
    "bvshl", "bvlshr", "bvsub", "bvneg", "bvule", "bvugt", "bvuge", "bvslt",
    "str.len", "!",
})


def _parse_sort(problem: Problem, sx) -> Sort:
    if isinstance(sx, Token):
        if sx.text == "Bool":
            return BOOL
        if sx.text == "Int":
            return INT
        if sx.text in problem.sorts:
            return problem.sorts[sx.text]
        raise ParseError(f"unknown sort {sx.text}", *_pos_of(sx))
    items = sx.items
    if len(items) == 3 and isinstance(items[0], Token) and items[0].text == "_" \
            and isinstance(items[1], Token) and items[1].text == "BitVec" \
            and isinstance(items[2], Token) and _NUMERAL.match(items[2].text):
        width = int(items[2].text)
        if width < 1:
            raise ParseError("bit-vector width must be >= 1", *_pos_of(sx))
        return BitVecSort(width)
    raise ParseError("unknown sort", *_pos_of(sx))


def parse_term(problem: Problem, sx, env: dict[str, TermId] | None = None) -> TermId:
    """Intern one SMT-LIB term s-expression against the problem's store."""
    store = problem.store
    if isinstance(sx, Token):
        text = sx.text
        if _NUMERAL.match(text):
            return store.int_const(int(text))
        if text.startswith("#"):
            if not _BV_LIT.match(text):
                raise ParseError(f"malformed bit-vector literal {text}", *_pos_of(sx))
            return store.bv_const([c == "1" for c in reversed(text[2:])])
        if text == "true":
            return store.true_id
        if text == "false":
            return store.false_id
        if env and text in env:
            return env[text]
        decl = problem.decls.get(text)
        if decl is not None and decl[0] == "var":
            return decl[1]
        if decl is not None:
            raise ParseError(f"{text} is a function and needs arguments", *_pos_of(sx))
        raise ParseError(f"unknown symbol {text}", *_pos_of(sx))

    items = sx.items
    if not items or not isinstance(items[0], Token):
        raise ParseError("malformed term", *_pos_of(sx))
    head = items[0].text
    rest = items[1:]

    def sub(i: int) -> TermId:
        return parse_term(problem, rest[i], env)

    def allsub() -> list[TermId]:
        return [parse_term(problem, a, env) for a in rest]

    def arity(n: int):
        if len(rest) != n:
            raise ParseError(f"{head} takes {n} arguments, got {len(rest)}", *_pos_of(sx))

    try:
        if head == "let":
            if len(rest) != 2 or not isinstance(rest[0], SList):
                raise ParseError("malformed let", *_pos_of(sx))
            new_env = dict(env) if env else {}
            for binding in rest[0].items:
                if not (isinstance(binding, SList) and len(binding.items) == 2
                        and isinstance(binding.items[0], Token)):
                    raise ParseError("malformed let binding", *_pos_of(rest[0]))
                # Parallel let: right-hand sides see the outer environment.
                new_env[binding.items[0].text] = parse_term(problem, binding.items[1], env)
            return parse_term(problem, rest[1], new_env)
        if head == "not":
            arity(1)
            return store.not_(sub(0))
        if head == "and":
            if not rest:
                raise ParseError("and needs arguments", *_pos_of(sx))
            return store.and_(allsub())
        if head == "or":
            if not rest:
                raise ParseError("or needs arguments", *_pos_of(sx))
            return store.or_(allsub())
        if head == "=>":
            if len(rest) < 2:
                raise ParseError("=> needs at least 2 arguments", *_pos_of(sx))
            args = allsub()
            out = args[-1]
            for a in reversed(args[:-1]):
                out = store.implies(a, out)
            return out
        if head == "xor":
            if len(rest) < 2:
                raise ParseError("xor needs at least 2 arguments", *_pos_of(sx))
            args = allsub()
            out = args[0]
            for a in args[1:]:
                out = store.xor(out, a)
            return out
        if head == "ite":
            arity(3)
            return store.ite(sub(0), sub(1), sub(2))
        if head == "=":
            if len(rest) != 2:
                raise UnsupportedError("chained = is not supported", *_pos_of(sx))
            l, r = sub(0), sub(1)
            if store.sort_of(l) == BOOL:
                return store.iff(l, r)
            return store.eq(l, r)
        if head == "<=":
            arity(2)
            return store.le(sub(0), sub(1))
        if head == "<":
            arity(2)
            return store.lt(sub(0), sub(1))
        if head == ">=":
            arity(2)
            return store.le(sub(1), sub(0))
        if head == ">":
            arity(2)
            return store.lt(sub(1), sub(0))
        if head == "+":
            if len(rest) < 2:
                raise ParseError("+ needs at least 2 arguments", *_pos_of(sx))
            return store.add(allsub())
        if head == "-":
            if len(rest) == 1:
                # Fold a negated numeral into a negative constant so that
                # printing and parsing are exact inverses.
                if isinstance(rest[0], Token) and _NUMERAL.match(rest[0].text):
                    return store.int_const(-int(rest[0].text))
                return store.neg(sub(0))
            if not rest:
                raise ParseError("- needs arguments", *_pos_of(sx))
            args = allsub()
            out = args[0]
            for a in args[1:]:
                out = store.sub(out, a)
            return out
        if head == "*":
            arity(2)
            l, r = sub(0), sub(1)
            if store.kind(l) is not Kind.INT_CONST and store.kind(r) is not Kind.INT_CONST:
                raise UnsupportedError("nonlinear multiplication", *_pos_of(sx))
            return store.mul(l, r)
        if head == "bvnot":
            arity(1)
            return store.bv_not(sub(0))
        if head == "bvand":
            arity(2)
            return store.bv_and(sub(0), sub(1))
        if head == "bvor":
            arity(2)
            return store.bv_or(sub(0), sub(1))
        if head == "bvxor":
            arity(2)
            return store.bv_xor(sub(0), sub(1))
        if head == "bvadd":
            arity(2)
            return store.bv_add(sub(0), sub(1))
        if head == "bvult":
            arity(2)
            return store.bv_ult(sub(0), sub(1))
        if head in _UNSUPPORTED_HEADS:
            raise UnsupportedError(f"unsupported construct: {head}", *_pos_of(sx))
        decl = problem.decls.get(head)
        if decl is None:
            raise ParseError(f"unknown function {head}", *_pos_of(sx))
        tag, fn = decl
        if tag == "var":
            raise ParseError(f"{head} is not a function", *_pos_of(sx))
        args = allsub()
        applied = store.apply(fn, tuple(args))
        if tag == "pred":
            return store.eq(applied, problem.decls["$tt"][1])
        return applied
    except SortError as e:
        raise ParseError(str(e), *_pos_of(sx)) from e


# ---------------------------------------------------------------------------
# SMT-LIB problems
# ---------------------------------------------------------------------------

def _declare(problem: Problem, name_tok: Token, arg_sorts: tuple[Sort, ...], ret: Sort):
    name = name_tok.text
    if name.startswith("$"):
        raise ParseError("names starting with $ are reserved", *_pos_of(name_tok))
    if name in problem.decls or name in problem.sorts:
        raise ParseError(f"{name} is already declared", *_pos_of(name_tok))
    store = problem.store
    if not arg_sorts:
        problem.decls[name] = ("var", store.var(name, ret))
        return
    if ret == BOOL:
        # Uninterpreted predicate: encode as a function into the reserved
        # sort $bool compared against the constant $tt.
        if "$bool" not in problem.sorts:
            psort = UninterpretedSort("$bool")
            problem.sorts["$bool"] = psort
            problem.decls["$tt"] = ("var", store.var("$tt", psort))
        problem.decls[name] = ("pred", FunSym(name, arg_sorts, problem.sorts["$bool"]))
        return
    problem.decls[name] = ("fun", FunSym(name, arg_sorts, ret))


def parse_smt2(text: str) -> Problem:
    """Parse an SMT-LIB 2 problem in the supported quantifier-free subset.

    Commands: set-logic, declare-sort (arity 0), declare-fun, declare-const,
    assert, check-sat, exit.  Raises UnsupportedError for anything outside
    the fragment and ParseError for malformed input.
    """
    problem = Problem(store=TermStore())
    for cmd in read_sexprs(tokenize(text)):
        if not isinstance(cmd, SList) or not cmd.items or not isinstance(cmd.items[0], Token):
            raise ParseError("expected a command", *_pos_of(cmd))
        head = cmd.items[0].text
        rest = cmd.items[1:]
        if head == "set-logic":
            if len(rest) != 1 or not isinstance(rest[0], Token):
                raise ParseError("malformed set-logic", *_pos_of(cmd))
            if rest[0].text not in LOGICS:
                raise UnsupportedError(f"unsupported logic {rest[0].text}", *_pos_of(rest[0]))
            problem.logic = rest[0].text
        elif head == "declare-sort":
            if len(rest) != 2 or not isinstance(rest[0], Token) or not isinstance(rest[1], Token):
                raise ParseError("malformed declare-sort", *_pos_of(cmd))
            if rest[1].text != "0":
                raise UnsupportedError("only arity-0 sorts are supported", *_pos_of(rest[1]))
            name = rest[0].text
            if name.startswith("$"):
                raise ParseError("names starting with $ are reserved", *_pos_of(rest[0]))
            if name in problem.sorts or name in ("Bool", "Int"):
                raise ParseError(f"sort {name} is already declared", *_pos_of(rest[0]))
            problem.sorts[name] = UninterpretedSort(name)
        elif head == "declare-fun":
            if len(rest) != 3 or not isinstance(rest[0], Token) or not isinstance(rest[1], SList):
                raise ParseError("malformed declare-fun", *_pos_of(cmd))
            arg_sorts = tuple(_parse_sort(problem, s) for s in rest[1].items)
            _declare(problem, rest[0], arg_sorts, _parse_sort(problem, rest[2]))
        elif head == "declare-const":
            if len(rest) != 2 or not isinstance(rest[0], Token):
                raise ParseError("malformed declare-const", *_pos_of(cmd))
            _declare(problem, rest[0], (), _parse_sort(problem, rest[1]))
        elif head == "assert":
            if len(rest) != 1:
                raise ParseError("malformed assert", *_pos_of(cmd))
            t = parse_term(problem, rest[0])
            if problem.store.sort_of(t) != BOOL:
                raise ParseError("asserted term is not Bool", *_pos_of(rest[0]))
            problem.assertions.append(t)
            problem.input_clauses.append(mk_clause(problem.store, [pos(t)]))
        elif head in ("check-sat", "exit"):
            pass
        else:
            raise UnsupportedError(f"unsupported command {head}", *_pos_of(cmd))
    return problem


# ---------------------------------------------------------------------------
# DIMACS
# ---------------------------------------------------------------------------

def parse_dimacs(text: str) -> Problem:
    """Parse DIMACS CNF: ``p cnf V C`` header, 0-terminated clauses,
    ``c`` comment lines.  Literal range and clause count are enforced."""
    problem = Problem(store=TermStore(), logic="SAT")
    store = problem.store

    header: tuple[int, int] | None = None
    lits: list[Literal] = []
    n_vars = 0
    var_ids: list[TermId] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if header is None:
            fields = stripped.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf" \
                    or not _NUMERAL.match(fields[2]) or not _NUMERAL.match(fields[3]):
                raise ParseError(f"malformed header: {stripped!r}", lineno, 1)
            header = (int(fields[2]), int(fields[3]))
            n_vars = header[0]
            var_ids = [store.var(f"v{i}", BOOL) for i in range(1, n_vars + 1)]
            continue
        col = 1
        for fieldtext in raw.split():
            col = raw.index(fieldtext, col - 1) + 1
            if not _SIGNED.match(fieldtext):
                raise ParseError(f"expected a literal, got {fieldtext!r}", lineno, col)
            value = int(fieldtext)
            if value == 0:
                problem.input_clauses.append(mk_clause(store, lits))
                lits = []
                continue
            v = abs(value)
            if not 1 <= v <= n_vars:
                raise ParseError(f"literal {value} out of range 1..{n_vars}", lineno, col)
            atom = var_ids[v - 1]
            lits.append(pos(atom) if value > 0 else neg(atom))

    if header is None:
        raise ParseError("missing DIMACS header", 1, 1)
    if lits:
        raise ParseError("last clause is missing its terminating 0",
                         len(text.splitlines()) or 1, 1)
    if len(problem.input_clauses) != header[1]:
        raise ParseError(
            f"header promises {header[1]} clauses, found {len(problem.input_clauses)}",
            len(text.splitlines()) or 1, 1)
    problem.dimacs_vars = tuple(var_ids)
    return problem


def print_dimacs(problem: Problem) -> str:
    """Canonical DIMACS text; an exact inverse of parse_dimacs on its output."""
    numbers = {tid: i + 1 for i, tid in enumerate(problem.dimacs_vars)}
    lines = [f"p cnf {len(problem.dimacs_vars)} {len(problem.input_clauses)}"]
    for clause in problem.input_clauses:
        row = [numbers[lit.atom] if lit.positive else -numbers[lit.atom]
               for lit in clause.lits]
        lines.append(" ".join(str(x) for x in row + [0]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def parse_literal(problem: Problem, sx) -> Literal:
    """``(not <atom>)`` is a negative literal; anything else is positive."""
    if isinstance(sx, SList) and len(sx.items) == 2 \
            and isinstance(sx.items[0], Token) and sx.items[0].text == "not":
        return neg(parse_term(problem, sx.items[1]))
    return pos(parse_term(problem, sx))


def _parse_clause(problem: Problem, items, line: int, col: int) -> Clause:
    try:
        return mk_clause(problem.store, [parse_literal(problem, sx) for sx in items])
    except SortError as e:
        raise ParseError(str(e), line, col) from e


def _parse_int(sx) -> int:
    if not isinstance(sx, Token) or not _SIGNED.match(sx.text):
        raise ParseError("expected an integer", *_pos_of(sx))
    return int(sx.text)


def _tagged(items, line: int, col: int) -> dict[str, SList]:
    """Split payload items into named sublists plus bare flag tokens."""
    out: dict[str, object] = {}
    for sx in items:
        if isinstance(sx, Token):
            out[sx.text] = True
            continue
        if not sx.items or not isinstance(sx.items[0], Token):
            raise ParseError("malformed payload group", *_pos_of(sx))
        out[sx.items[0].text] = sx
    return out


def _parse_eqstep(problem: Problem, sx) -> EqStep:
    if not isinstance(sx, SList) or not sx.items or not isinstance(sx.items[0], Token):
        raise ParseError("malformed justification step", *_pos_of(sx))
    head = sx.items[0].text
    rest = sx.items[1:]
    if head == "refl":
        if len(rest) != 1:
            raise ParseError("refl takes one term", *_pos_of(sx))
        return EqStep(EqRule.REFL, term=parse_term(problem, rest[0]))
    if head == "sym":
        if len(rest) != 1:
            raise ParseError("sym takes one index", *_pos_of(sx))
        return EqStep(EqRule.SYM, refs=(_parse_int(rest[0]),))
    if head == "trans":
        if len(rest) != 2:
            raise ParseError("trans takes two indices", *_pos_of(sx))
        return EqStep(EqRule.TRANS, refs=(_parse_int(rest[0]), _parse_int(rest[1])))
    if head == "cong":
        if not rest or not isinstance(rest[0], Token):
            raise ParseError("cong takes a function name and indices", *_pos_of(sx))
        decl = problem.decls.get(rest[0].text)
        if decl is None or decl[0] == "var":
            raise ParseError(f"unknown function {rest[0].text}", *_pos_of(rest[0]))
        return EqStep(EqRule.CONG, fun=decl[1],
                      refs=tuple(_parse_int(r) for r in rest[1:]))
    if head == "hyp":
        if len(rest) != 1:
            raise ParseError("hyp takes one literal index", *_pos_of(sx))
        return EqStep(EqRule.HYP, hyp=_parse_int(rest[0]))
    raise ParseError(f"unknown justification rule {head}", *_pos_of(sx))


def _parse_aux(problem: Problem, sx) -> tuple[TermId, ...]:
    if not isinstance(sx, SList):
        raise ParseError("expected (aux ...)", *_pos_of(sx))
    out = []
    for tok in sx.items[1:]:
        if not isinstance(tok, Token):
            raise ParseError("aux entries must be names", *_pos_of(tok))
        # Aux names become Bool variables on sight and stay visible to later
        # payload lines; whether they are fresh is decided during replay.
        tid = problem.store.var(tok.text, BOOL)
        existing = problem.decls.setdefault(tok.text, ("var", tid))
        if existing != ("var", tid):
            raise ParseError(f"aux name {tok.text} clashes with a declaration",
                             *_pos_of(tok))
        out.append(tid)
    return tuple(out)


def parse_payload(problem: Problem, rule: RuleKind, items: list, line: int, col: int):
    """Build the rule-specific payload object from the brace contents."""
    if rule is RuleKind.RES:
        if items:
            raise ParseError("res takes no payload", line, col)
        return None
    if rule in CNF_RULES:
        if not items or len(items) > 2:
            raise ParseError(f"{rule.value} payload is a term and an optional index",
                             line, col)
        index = _parse_int(items[1]) if len(items) == 2 else 0
        return CnfPayload(parse_term(problem, items[0]), index)
    if rule is RuleKind.EUF:
        groups = _tagged(items, line, col)
        lemma_grp = groups.get("lemma")
        just_grp = groups.get("just")
        if not isinstance(lemma_grp, SList) or not isinstance(just_grp, SList):
            raise ParseError("euf payload needs (lemma ...) and (just ...)", line, col)
        lemma = _parse_clause(problem, lemma_grp.items[1:], line, col)
        just = tuple(_parse_eqstep(problem, sx) for sx in just_grp.items[1:])
        return EufPayload(lemma, just)
    if rule is RuleKind.LIA:
        groups = _tagged(items, line, col)
        lemma_grp = groups.get("lemma")
        farkas_grp = groups.get("farkas")
        if not isinstance(lemma_grp, SList) or not isinstance(farkas_grp, SList):
            raise ParseError("lia payload needs (lemma ...) and (farkas ...)", line, col)
        lemma = _parse_clause(problem, lemma_grp.items[1:], line, col)
        combo = []
        for entry in farkas_grp.items[1:]:
            if not isinstance(entry, SList) or len(entry.items) != 2:
                raise ParseError("farkas entries are (index coeff) pairs", *_pos_of(entry))
            combo.append((_parse_int(entry.items[0]), _parse_int(entry.items[1])))
        return LiaPayload(lemma, tuple(combo), tighten="tighten" in groups)
    if rule in BB_RULES:
        if not items:
            raise ParseError(f"{rule.value} payload needs a target term", line, col)
        target = parse_term(problem, items[0])
        aux: tuple[TermId, ...] = ()
        if len(items) == 2:
            aux = _parse_aux(problem, items[1])
        elif len(items) > 2:
            raise ParseError("too many payload groups", line, col)
        return BvPayload(target, aux)
    if rule is RuleKind.ASSUME:
        return AssumePayload(_parse_clause(problem, items, line, col))
    raise ParseError(f"rule {rule.value} cannot appear in a certificate", line, col)


def parse_certificate(text: str, problem: Problem) -> Certificate:
    """Parse the line-based certificate format against a parsed problem."""
    steps: list[Step] = []
    qed: int | None = None
    next_id = len(problem.input_clauses)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(";"):
            continue
        if qed is not None:
            raise ParseError("content after qed", lineno, 1)
        items = read_sexprs(tokenize(raw, first_line=lineno))
        if items and isinstance(items[0], Token) and items[0].text == "qed":
            if len(items) != 2:
                raise ParseError("qed takes one step id", lineno, 1)
            qed = _parse_int(items[1])
            if qed >= next_id or qed < 0:
                raise ForwardReferenceError(f"qed names unknown id {qed}", lineno, 1)
            continue
        if len(items) != 4 or not isinstance(items[0], Token) or not isinstance(items[1], Token) \
                or not isinstance(items[2], SList) or items[2].bracket != "(" \
                or not isinstance(items[3], SList) or items[3].bracket != "{":
            raise ParseError("expected: <id> <rule> (<premises>) {<payload>}", lineno, 1)
        step_id = _parse_int(items[0])
        if step_id != next_id:
            raise ParseError(f"step id {step_id}, expected {next_id}", lineno, 1)
        rule = RULE_BY_NAME.get(items[1].text)
        if rule is None or rule is RuleKind.INPUT:
            raise ParseError(f"unknown rule {items[1].text}", *_pos_of(items[1]))
        premises = tuple(_parse_int(p) for p in items[2].items)
        for p in premises:
            if p >= step_id or p < 0:
                raise ForwardReferenceError(
                    f"premise {p} is not before step {step_id}", lineno, 1)
        payload = parse_payload(problem, rule, items[3].items, lineno, 1)
        steps.append(Step(step_id, rule, premises, payload))
        next_id += 1

    if qed is None:
        raise ParseError("missing qed line", len(text.splitlines()) or 1, 1)
    return Certificate(tuple(steps), qed)


# ---------------------------------------------------------------------------
# Certificate printing
# ---------------------------------------------------------------------------

_INDEXED_CNF = frozenset({RuleKind.AND_POS, RuleKind.OR_NEG, RuleKind.NOT_NOT})


def _group(tag: str, body: str) -> str:
    return f"({tag} {body})" if body else f"({tag})"


def _render_payload(store: TermStore, rule: RuleKind, payload) -> str:
    if rule is RuleKind.RES:
        return ""
    if rule in CNF_RULES:
        body = store.to_sexpr(payload.target)
        if rule in _INDEXED_CNF:
            body += f" {payload.index}"
        return body
    if rule is RuleKind.EUF:
        rendered = []
        for s in payload.justification:
            if s.rule is EqRule.REFL:
                rendered.append(f"(refl {store.to_sexpr(s.term)})")
            elif s.rule is EqRule.SYM:
                rendered.append(f"(sym {s.refs[0]})")
            elif s.rule is EqRule.TRANS:
                rendered.append(f"(trans {s.refs[0]} {s.refs[1]})")
            elif s.rule is EqRule.CONG:
                rendered.append(_group("cong", " ".join(
                    [s.fun.name] + [str(r) for r in s.refs])))
            else:
                rendered.append(f"(hyp {s.hyp})")
        return " ".join([
            _group("lemma", clause_to_sexpr(store, payload.lemma)),
            _group("just", " ".join(rendered)),
        ])
    if rule is RuleKind.LIA:
        parts = [
            _group("lemma", clause_to_sexpr(store, payload.lemma)),
            _group("farkas", " ".join(f"({i} {c})" for i, c in payload.combination)),
        ]
        if payload.tighten:
            parts.append("tighten")
        return " ".join(parts)
    if rule in BB_RULES:
        body = store.to_sexpr(payload.target)
        if payload.aux:
            names = " ".join(store.node(v).extra[0] for v in payload.aux)
            body += f" (aux {names})"
        return body
    if rule is RuleKind.ASSUME:
        return clause_to_sexpr(store, payload.clause)
    raise ValueError(f"cannot render rule {rule}")


def print_certificate(store: TermStore, cert: Certificate) -> str:
    """Canonical certificate text; parse_certificate inverts it exactly."""
    lines = []
    for step in cert.steps:
        prem = " ".join(str(p) for p in step.premises)
        payload = _render_payload(store, step.rule, step.payload)
        lines.append(f"{step.id} {step.rule.value} ({prem}) {{{payload}}}")
    if cert.qed is not None:
        lines.append(f"qed {cert.qed}")
    return "\n".join(lines) + "\n"
