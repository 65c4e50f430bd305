"""Hash-consed multi-sorted terms and canonical clauses.

This module is the shared vocabulary of every checker: a deep embedding of
quantifier-free formulas over Bool, Int, bit-vectors and uninterpreted
sorts, plus the SAT-style literal/clause layer on top of it.  Everything
here is purely syntactic; no operation evaluates semantics.

Terms live in a per-problem append-only ``TermStore``.  Structurally equal
nodes always receive the same ``TermId``, so id equality *is* structural
equality.  ``TrueT`` and ``FalseT`` are interned first in every store and
therefore always have ids 0 and 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import SortError

TermId = int


# ---------------------------------------------------------------------------
# Sorts
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class BoolSort:
    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True, slots=True)
class IntSort:
    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True, slots=True)
class BitVecSort:
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise SortError(f"bit-vector width must be >= 1, got {self.width}")

    def __str__(self) -> str:
        return f"(_ BitVec {self.width})"


@dataclass(frozen=True, slots=True)
class UninterpretedSort:
    name: str

    def __str__(self) -> str:
        return self.name


Sort = Union[BoolSort, IntSort, BitVecSort, UninterpretedSort]

BOOL = BoolSort()
INT = IntSort()


@dataclass(frozen=True, slots=True)
class FunSym:
    """An uninterpreted function symbol with a fixed signature."""

    name: str
    arg_sorts: tuple[Sort, ...]
    ret_sort: Sort

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)


# ---------------------------------------------------------------------------
# Term nodes
# ---------------------------------------------------------------------------

class Kind(Enum):
    VAR = "var"
    INT_CONST = "int"
    BV_CONST = "bvconst"
    APPLY = "apply"
    EQ = "="
    LE = "<="
    LT = "<"
    TRUE = "true"
    FALSE = "false"
    NOT = "not"
    AND = "and"
    OR = "or"
    IMPLIES = "=>"
    XOR = "xor"
    IFF = "iff"
    ITE = "ite"
    ADD = "+"
    SUB = "-"
    NEG = "neg"
    MUL = "*"
    BV_NOT = "bvnot"
    BV_AND = "bvand"
    BV_OR = "bvor"
    BV_XOR = "bvxor"
    BV_ADD = "bvadd"
    BV_ULT = "bvult"


# Kinds whose Bool structure the propositional rules can decompose; any other
# Bool-sorted node acts as an opaque atom for truth-table purposes.
BOOL_STRUCTURE = frozenset({
    Kind.TRUE, Kind.FALSE, Kind.NOT, Kind.AND, Kind.OR,
    Kind.IMPLIES, Kind.XOR, Kind.IFF, Kind.ITE,
})

# Integer-arithmetic constructors; anything else of sort Int is treated as an
# opaque variable by the linear normalizer.
ARITH_KINDS = frozenset({Kind.ADD, Kind.SUB, Kind.NEG, Kind.MUL, Kind.INT_CONST})


class Node(NamedTuple):
    kind: Kind
    sort: Sort
    args: tuple[TermId, ...]
    # Per-kind payload: variable name (str), integer value (int),
    # bit tuple LSB-first (tuple[bool, ...]), or FunSym.  None otherwise.
    extra: object


_BINARY_BOOL = {Kind.IMPLIES, Kind.XOR, Kind.IFF}
_BV_BINOPS = {Kind.BV_AND, Kind.BV_OR, Kind.BV_XOR, Kind.BV_ADD}


class TermStore:
    """Append-only hash-consing store for one problem."""

    def __init__(self):
        self._nodes: list[Node] = []
        self._index: dict[tuple, TermId] = {}
        self._vars_cache: dict[TermId, frozenset[TermId]] = {}
        self.true_id = self.intern(Kind.TRUE)
        self.false_id = self.intern(Kind.FALSE)

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, t: TermId) -> Node:
        return self._nodes[t]

    def kind(self, t: TermId) -> Kind:
        return self._nodes[t].kind

    def args(self, t: TermId) -> tuple[TermId, ...]:
        return self._nodes[t].args

    def sort_of(self, t: TermId) -> Sort:
        """Sort of a term; total on valid ids."""
        return self._nodes[t].sort

    # -- interning ----------------------------------------------------------

    def intern(self, kind: Kind, args: Sequence[TermId] = (), extra: object = None) -> TermId:
        """Intern a node, sort-checking it first.  Idempotent.

        Raises SortError when the children do not have the sorts the kind
        demands (bit-vector children must share one width).
        """
        args = tuple(args)
        for a in args:
            if not (0 <= a < len(self._nodes)):
                raise SortError(f"invalid child id {a} for {kind.value}")
        sort = self._compute_sort(kind, args, extra)
        key = (kind, args, extra)
        hit = self._index.get(key)
        if hit is not None:
            return hit
        tid = len(self._nodes)
        self._nodes.append(Node(kind, sort, args, extra))
        self._index[key] = tid
        return tid

    def _compute_sort(self, kind: Kind, args: tuple[TermId, ...], extra: object) -> Sort:
        sorts = tuple(self._nodes[a].sort for a in args)

        def demand(n: int):
            if len(args) != n:
                raise SortError(f"{kind.value} takes {n} arguments, got {len(args)}")

        if kind is Kind.VAR:
            demand(0)
            name, sort = extra
            if not isinstance(name, str):
                raise SortError("variable name must be a string")
            return sort
        if kind is Kind.INT_CONST:
            demand(0)
            if not isinstance(extra, int):
                raise SortError("integer constant payload must be int")
            return INT
        if kind is Kind.BV_CONST:
            demand(0)
            bits = extra
            if not isinstance(bits, tuple) or not bits or not all(isinstance(b, bool) for b in bits):
                raise SortError("bit-vector constant payload must be a non-empty bool tuple")
            return BitVecSort(len(bits))
        if kind is Kind.APPLY:
            fn = extra
            if not isinstance(fn, FunSym):
                raise SortError("apply payload must be a FunSym")
            if sorts != fn.arg_sorts:
                raise SortError(
                    f"{fn.name} expects {[str(s) for s in fn.arg_sorts]}, "
                    f"got {[str(s) for s in sorts]}")
            return fn.ret_sort
        if kind is Kind.EQ:
            demand(2)
            if sorts[0] != sorts[1]:
                raise SortError(f"= over distinct sorts {sorts[0]} / {sorts[1]}")
            if sorts[0] == BOOL:
                raise SortError("= over Bool is represented as iff")
            return BOOL
        if kind in (Kind.LE, Kind.LT):
            demand(2)
            if sorts != (INT, INT):
                raise SortError(f"{kind.value} needs Int operands, got {[str(s) for s in sorts]}")
            return BOOL
        if kind in (Kind.TRUE, Kind.FALSE):
            demand(0)
            return BOOL
        if kind is Kind.NOT:
            demand(1)
            if sorts[0] != BOOL:
                raise SortError(f"not needs a Bool operand, got {sorts[0]}")
            return BOOL
        if kind in (Kind.AND, Kind.OR):
            if not args:
                raise SortError(f"{kind.value} needs at least one argument")
            if any(s != BOOL for s in sorts):
                raise SortError(f"{kind.value} needs Bool operands")
            return BOOL
        if kind in _BINARY_BOOL:
            demand(2)
            if sorts != (BOOL, BOOL):
                raise SortError(f"{kind.value} needs Bool operands")
            return BOOL
        if kind is Kind.ITE:
            demand(3)
            if sorts[0] != BOOL:
                raise SortError("ite condition must be Bool")
            if sorts[1] != sorts[2]:
                raise SortError(f"ite branches disagree: {sorts[1]} / {sorts[2]}")
            return sorts[1]
        if kind is Kind.ADD:
            if len(args) < 2:
                raise SortError("+ needs at least two arguments")
            if any(s != INT for s in sorts):
                raise SortError("+ needs Int operands")
            return INT
        if kind is Kind.SUB:
            demand(2)
            if sorts != (INT, INT):
                raise SortError("- needs Int operands")
            return INT
        if kind is Kind.NEG:
            demand(1)
            if sorts[0] != INT:
                raise SortError("unary - needs an Int operand")
            return INT
        if kind is Kind.MUL:
            demand(2)
            if sorts != (INT, INT):
                raise SortError("* needs Int operands")
            return INT
        if kind is Kind.BV_NOT:
            demand(1)
            if not isinstance(sorts[0], BitVecSort):
                raise SortError("bvnot needs a bit-vector operand")
            return sorts[0]
        if kind in _BV_BINOPS:
            demand(2)
            if not isinstance(sorts[0], BitVecSort) or sorts[0] != sorts[1]:
                raise SortError(f"{kind.value} needs two bit-vectors of one width, "
                                f"got {sorts[0]} / {sorts[1] if len(sorts) > 1 else '?'}")
            return sorts[0]
        if kind is Kind.BV_ULT:
            demand(2)
            if not isinstance(sorts[0], BitVecSort) or sorts[0] != sorts[1]:
                raise SortError("bvult needs two bit-vectors of one width")
            return BOOL
        raise SortError(f"unknown kind {kind}")

    # -- constructors -------------------------------------------------------

    def var(self, name: str, sort: Sort) -> TermId:
        return self.intern(Kind.VAR, (), (name, sort))

    def int_const(self, value: int) -> TermId:
        return self.intern(Kind.INT_CONST, (), value)

    def bv_const(self, bits: Sequence[bool]) -> TermId:
        """Bit-vector constant from bits given LSB first."""
        return self.intern(Kind.BV_CONST, (), tuple(bool(b) for b in bits))

    def bv_const_of_int(self, value: int, width: int) -> TermId:
        return self.bv_const([bool((value >> i) & 1) for i in range(width)])

    def apply(self, fn: FunSym, args: Sequence[TermId]) -> TermId:
        return self.intern(Kind.APPLY, args, fn)

    def eq(self, l: TermId, r: TermId) -> TermId:
        return self.intern(Kind.EQ, (l, r))

    def le(self, l: TermId, r: TermId) -> TermId:
        return self.intern(Kind.LE, (l, r))

    def lt(self, l: TermId, r: TermId) -> TermId:
        return self.intern(Kind.LT, (l, r))

    def not_(self, a: TermId) -> TermId:
        return self.intern(Kind.NOT, (a,))

    def and_(self, args: Sequence[TermId]) -> TermId:
        return self.intern(Kind.AND, args)

    def or_(self, args: Sequence[TermId]) -> TermId:
        return self.intern(Kind.OR, args)

    def implies(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.IMPLIES, (a, b))

    def xor(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.XOR, (a, b))

    def iff(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.IFF, (a, b))

    def ite(self, c: TermId, t: TermId, e: TermId) -> TermId:
        return self.intern(Kind.ITE, (c, t, e))

    def add(self, args: Sequence[TermId]) -> TermId:
        return self.intern(Kind.ADD, args)

    def sub(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.SUB, (a, b))

    def neg(self, a: TermId) -> TermId:
        return self.intern(Kind.NEG, (a,))

    def mul(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.MUL, (a, b))

    def bv_not(self, a: TermId) -> TermId:
        return self.intern(Kind.BV_NOT, (a,))

    def bv_and(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.BV_AND, (a, b))

    def bv_or(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.BV_OR, (a, b))

    def bv_xor(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.BV_XOR, (a, b))

    def bv_add(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.BV_ADD, (a, b))

    def bv_ult(self, a: TermId, b: TermId) -> TermId:
        return self.intern(Kind.BV_ULT, (a, b))

    # -- queries ------------------------------------------------------------

    def width_of(self, t: TermId) -> int:
        sort = self.sort_of(t)
        if not isinstance(sort, BitVecSort):
            raise SortError(f"term {t} is not bit-vector sorted")
        return sort.width

    def vars_of(self, t: TermId) -> frozenset[TermId]:
        """Ids of all VAR nodes reachable from t (cached per store)."""
        hit = self._vars_cache.get(t)
        if hit is not None:
            return hit
        node = self._nodes[t]
        if node.kind is Kind.VAR:
            out = frozenset((t,))
        else:
            acc: set[TermId] = set()
            for a in node.args:
                acc |= self.vars_of(a)
            out = frozenset(acc)
        self._vars_cache[t] = out
        return out

    def subterms(self, t: TermId) -> Iterable[TermId]:
        """All distinct subterm ids of t, children before parents."""
        seen: set[TermId] = set()
        order: list[TermId] = []

        def walk(u: TermId):
            if u in seen:
                return
            seen.add(u)
            for a in self._nodes[u].args:
                walk(a)
            order.append(u)

        walk(t)
        return order

    # -- printing ------------------------------------------------------------

    def to_sexpr(self, t: TermId) -> str:
        """SMT-LIB style concrete syntax; parseable back by the frontend."""
        node = self._nodes[t]
        k = node.kind
        if k is Kind.EQ:
            # Encoded uninterpreted predicates print as their application:
            # (= (p x) $tt) is exactly what the frontend parses (p x) into,
            # and $-names are reserved for that encoding.
            lhs, rhs = (self._nodes[a] for a in node.args)
            if rhs.kind is Kind.VAR and rhs.extra[0] == "$tt" and lhs.kind is Kind.APPLY:
                return self.to_sexpr(node.args[0])
        if k is Kind.VAR:
            return node.extra[0]
        if k is Kind.INT_CONST:
            v = node.extra
            return str(v) if v >= 0 else f"(- {-v})"
        if k is Kind.BV_CONST:
            bits = node.extra
            return "#b" + "".join("1" if b else "0" for b in reversed(bits))
        if k is Kind.APPLY:
            inner = " ".join(self.to_sexpr(a) for a in node.args)
            return f"({node.extra.name} {inner})"
        if k is Kind.TRUE:
            return "true"
        if k is Kind.FALSE:
            return "false"
        if k is Kind.IFF:
            head = "="
        elif k is Kind.NEG:
            head = "-"
        else:
            head = k.value
        inner = " ".join(self.to_sexpr(a) for a in node.args)
        return f"({head} {inner})"


# ---------------------------------------------------------------------------
# Literals and clauses
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Literal:
    """A polarity-signed Bool-sorted atom.

    The wire encoding is 2*atom for a positive literal and 2*atom + 1 for a
    negative one; decode inverts it bit-exactly.
    """

    atom: TermId
    positive: bool

    def encode(self) -> int:
        return 2 * self.atom + (0 if self.positive else 1)

    @staticmethod
    def decode(code: int) -> "Literal":
        return Literal(code >> 1, (code & 1) == 0)

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)


def pos(atom: TermId) -> Literal:
    return Literal(atom, True)


def neg(atom: TermId) -> Literal:
    return Literal(atom, False)


@dataclass(frozen=True, slots=True)
class Clause:
    """Canonical disjunction: encoded literals, strictly increasing.

    The empty clause denotes falsity.  The canonical trivially true clause
    is the singleton positive TrueT literal, i.e. ``Clause((0,))`` given that
    TrueT always interns at id 0.
    """

    enc: tuple[int, ...]

    @property
    def lits(self) -> tuple[Literal, ...]:
        return tuple(Literal.decode(c) for c in self.enc)

    def __len__(self) -> int:
        return len(self.enc)

    def is_empty(self) -> bool:
        return not self.enc

    def atoms(self) -> tuple[TermId, ...]:
        return tuple(c >> 1 for c in self.enc)


EMPTY_CLAUSE = Clause(())

# pos(TrueT) encodes to 0 because TrueT interns at id 0 in every store.
TRIVIALLY_TRUE = Clause((0,))


def mk_clause(store: TermStore, lits: Iterable[Literal]) -> Clause:
    """Canonicalize literals into a clause: sort by encoding, deduplicate.

    Raises SortError when some atom is not Bool-sorted.
    """
    codes = []
    for lit in lits:
        if store.sort_of(lit.atom) != BOOL:
            raise SortError(
                f"clause literal atom {lit.atom} has sort "
                f"{store.sort_of(lit.atom)}, expected Bool")
        codes.append(lit.encode())
    return Clause(tuple(sorted(set(codes))))


def clause_to_sexpr(store: TermStore, clause: Clause) -> str:
    """Literal-per-element notation: ``(not <atom>)`` marks negative literals."""
    parts = []
    for code in clause.enc:
        atom = store.to_sexpr(code >> 1)
        parts.append(atom if (code & 1) == 0 else f"(not {atom})")
    return " ".join(parts)
