"""Core abstract syntax: kinds, types, expressions, constraints and printing.

Everything here is an immutable value. Nodes carry a source span that is
excluded from equality and hashing, so structural comparison of two trees
ignores where they were written.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


# ---------------------------------------------------------------------------
# Source positions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    """1-based line/column range inside an input file."""

    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"

    def show_range(self) -> str:
        return f"{self.line}:{self.col}-{self.end_line}:{self.end_col}"


NO_SPAN = Span(0, 0, 0, 0)


# ---------------------------------------------------------------------------
# Multiplicities and kinds
# ---------------------------------------------------------------------------


class Mult(Enum):
    """Usage discipline of a value: any number of uses, or exactly one."""

    UN = "*"
    LIN = "1"


@dataclass(frozen=True)
class MVar:
    """Multiplicity variable, written 'm<id>."""

    id: int


Multiplicity = "Mult | MVar"


class Base(Enum):
    """Base of a kind: session protocol or ordinary functional value."""

    SESSION = "S"
    FUNCTIONAL = "T"


@dataclass(frozen=True)
class MultKind:
    """A kind built from a multiplicity and a base.

    The multiplicity slot may hold a multiplicity variable; the kind is
    fully concrete only when it does not.
    """

    mult: Mult | MVar
    base: Base


@dataclass(frozen=True)
class KindVar:
    """Kind variable, written 'k<id>."""

    id: int


Kind = "MultKind | KindVar"

SU = MultKind(Mult.UN, Base.SESSION)
SL = MultKind(Mult.LIN, Base.SESSION)
TU = MultKind(Mult.UN, Base.FUNCTIONAL)
TL = MultKind(Mult.LIN, Base.FUNCTIONAL)

ALL_CONCRETE_KINDS = (SU, SL, TU, TL)


def is_concrete_kind(k: object) -> bool:
    return isinstance(k, MultKind) and isinstance(k.mult, Mult)


# ---------------------------------------------------------------------------
# Fresh variable supply
# ---------------------------------------------------------------------------


class FreshSupply:
    """Monotone counters for kind and multiplicity variables.

    Variables are allocated in tree pre-order during parsing and constraint
    generation, which makes ids deterministic for a given input.
    """

    def __init__(self, next_kvar: int = 0, next_mvar: int = 0) -> None:
        self.next_kvar = next_kvar
        self.next_mvar = next_mvar

    def fresh_kvar(self) -> KindVar:
        v = KindVar(self.next_kvar)
        self.next_kvar += 1
        return v

    def fresh_mvar(self) -> MVar:
        v = MVar(self.next_mvar)
        self.next_mvar += 1
        return v


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


class Polarity(Enum):
    OUT = "!"
    IN = "?"


class View(Enum):
    INTERNAL = "+"
    EXTERNAL = "&"


def _check_labels(entries: tuple, what: str) -> None:
    if not entries:
        raise ValueError(f"{what} must have at least one entry")
    labels = [e[0] for e in entries]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate label in {what}: {labels}")


@dataclass(frozen=True)
class Skip:
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class End:
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Msg:
    polarity: Polarity
    payload: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Choice:
    view: View
    branches: tuple[tuple[str, "Type"], ...]
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.branches, "choice")

    def branch(self, label: str) -> "Type | None":
        return next((t for l, t in self.branches if l == label), None)


@dataclass(frozen=True)
class Semi:
    head: "Type"
    tail: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Unit:
    mult: Mult
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Arrow:
    mult: Mult
    dom: "Type"
    cod: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Record:
    fields: tuple[tuple[str, "Type"], ...]
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.fields, "record")

    def field_type(self, label: str) -> "Type | None":
        return next((t for l, t in self.fields if l == label), None)


@dataclass(frozen=True)
class Variant:
    fields: tuple[tuple[str, "Type"], ...]
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.fields, "variant")

    def field_type(self, label: str) -> "Type | None":
        return next((t for l, t in self.fields if l == label), None)


@dataclass(frozen=True)
class Forall:
    var: str
    kind: "Kind"
    body: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Rec:
    var: str
    kind: "Kind"
    body: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class TVar:
    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class BaseType:
    """Opaque built-in type (Int, Bool, Char): kind *T, no structure."""

    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class TypeName:
    """Unexpanded reference to a `type` abbreviation; gone after expansion."""

    name: str
    span: Span = field(default=NO_SPAN, compare=False)


Type = (
    "Skip | End | Msg | Choice | Semi | Unit | Arrow | Record | Variant | "
    "Forall | Rec | TVar | BaseType | TypeName"
)

SESSION_HEADS = (Skip, End, Msg, Choice, Semi, Rec, TVar)


def pair_type(a: "Type", b: "Type", span: Span = NO_SPAN) -> Record:
    """`(a, b)` is sugar for a two-field record with labels fst/snd."""
    return Record((("fst", a), ("snd", b)), span)


def is_pair_record(t: object) -> bool:
    return (
        isinstance(t, Record)
        and len(t.fields) == 2
        and t.fields[0][0] == "fst"
        and t.fields[1][0] == "snd"
    )


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

BUILTIN_NAMES = ("send", "receive", "close", "fork")


@dataclass(frozen=True)
class UnitLit:
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Const:
    name: str
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Abs:
    mult: Mult
    param: str
    param_type: "Type"
    body: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class TAbs:
    var: str
    kind: "Kind"
    body: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class App:
    fun: "Expr"
    arg: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class TApp:
    fun: "Expr"
    type_arg: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class RecordLit:
    fields: tuple[tuple[str, "Expr"], ...]
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.fields, "record literal")


@dataclass(frozen=True)
class LetRecord:
    binders: tuple[tuple[str, str], ...]  # label -> bound variable
    scrutinee: "Expr"
    body: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.binders, "record pattern")


@dataclass(frozen=True)
class Inject:
    label: str
    variant_type: "Type"
    payload: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class LetUnit:
    scrutinee: "Expr"
    body: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Case:
    scrutinee: "Expr"
    branches: tuple[tuple[str, str, "Expr"], ...]  # label, binder, body
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.branches, "case")


@dataclass(frozen=True)
class Match:
    scrutinee: "Expr"
    branches: tuple[tuple[str, str, "Expr"], ...]
    span: Span = field(default=NO_SPAN, compare=False)

    def __post_init__(self) -> None:
        _check_labels(self.branches, "match")


@dataclass(frozen=True)
class New:
    channel_type: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class Select:
    label: str
    scrutinee: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


Expr = (
    "UnitLit | IntLit | Var | Const | Abs | TAbs | App | TApp | RecordLit | "
    "LetRecord | Inject | LetUnit | Case | Match | New | Select"
)


def is_value(e: object) -> bool:
    """Syntactic values: the only expressions allowed under a type abstraction."""
    if isinstance(e, (Abs, TAbs, UnitLit, IntLit, Var, Const)):
        return True
    if isinstance(e, RecordLit):
        return all(is_value(x) for _, x in e.fields)
    if isinstance(e, Inject):
        return is_value(e.payload)
    return False


def pair_expr(a: "Expr", b: "Expr", span: Span = NO_SPAN) -> RecordLit:
    return RecordLit((("fst", a), ("snd", b)), span)


# ---------------------------------------------------------------------------
# Declarations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeAbbrev:
    name: str
    kind: "Kind"
    body: "Type"
    span: Span = field(default=NO_SPAN, compare=False)


@dataclass(frozen=True)
class ValueDecl:
    name: str
    signature: "Type"
    body: "Expr"
    span: Span = field(default=NO_SPAN, compare=False)


Decl = "TypeAbbrev | ValueDecl"


@dataclass(frozen=True)
class Program:
    decls: tuple["Decl", ...]

    def decl(self, name: str) -> "Decl | None":
        return next((d for d in self.decls if d.name == name), None)


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Origin:
    """Where and why a constraint was emitted."""

    rule: str
    span: Span

    def __str__(self) -> str:
        return f"{self.rule}@{self.span}"


@dataclass(frozen=True)
class Sub:
    """Constraint `lhs` must be a subkind of `rhs`."""

    lhs: "Kind"
    rhs: "Kind"
    origin: Origin = field(default=Origin("?", NO_SPAN), compare=False)


@dataclass(frozen=True)
class MultEq:
    """Constraint: `var` equals the least upper bound of the args' multiplicities."""

    var: MVar
    args: tuple["Kind", ...]
    origin: Origin = field(default=Origin("?", NO_SPAN), compare=False)

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("multiplicity equation needs at least one argument")


Constraint = "Sub | MultEq"


class ConstraintBag:
    """Ordered constraint accumulator, deduplicated on emission.

    Duplicates are judged structurally (origins excluded); the first
    occurrence and its origin win.
    """

    def __init__(self) -> None:
        self._items: list = []
        self._seen: set = set()

    def add(self, c: "Constraint") -> None:
        if c not in self._seen:
            self._seen.add(c)
            self._items.append(c)

    def extend(self, cs) -> None:
        for c in cs:
            self.add(c)

    @property
    def items(self) -> tuple:
        return tuple(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)


# ---------------------------------------------------------------------------
# Free type variables / alpha equality
# ---------------------------------------------------------------------------


def free_type_vars(t: "Type") -> list[str]:
    """Free type variables of `t` in first-occurrence order."""
    seen: list[str] = []

    def go(t, bound: frozenset) -> None:
        if isinstance(t, TVar):
            if t.name not in bound and t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, Msg):
            go(t.payload, bound)
        elif isinstance(t, (Choice, Record, Variant)):
            for _, u in _entries(t):
                go(u, bound)
        elif isinstance(t, Semi):
            go(t.head, bound)
            go(t.tail, bound)
        elif isinstance(t, Arrow):
            go(t.dom, bound)
            go(t.cod, bound)
        elif isinstance(t, (Forall, Rec)):
            go(t.body, bound | {t.var})

    go(t, frozenset())
    return seen


def _entries(t) -> tuple:
    return t.branches if isinstance(t, Choice) else t.fields


def types_equal(a: "Type", b: "Type") -> bool:
    """Structural equality up to renaming of bound type variables.

    Kind annotations must match exactly (variable ids included); spans are
    ignored throughout.
    """
    return _alpha_eq(a, b, {}, {}, 0)


def _alpha_eq(a, b, env_a: dict, env_b: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, TVar):
        la, lb = env_a.get(a.name, a.name), env_b.get(b.name, b.name)
        return la == lb
    if isinstance(a, (Skip, End)):
        return True
    if isinstance(a, (BaseType, TypeName)):
        return a.name == b.name
    if isinstance(a, Unit):
        return a.mult == b.mult
    if isinstance(a, Msg):
        return a.polarity == b.polarity and _alpha_eq(a.payload, b.payload, env_a, env_b, depth)
    if isinstance(a, Semi):
        return _alpha_eq(a.head, b.head, env_a, env_b, depth) and _alpha_eq(
            a.tail, b.tail, env_a, env_b, depth
        )
    if isinstance(a, Arrow):
        return (
            a.mult == b.mult
            and _alpha_eq(a.dom, b.dom, env_a, env_b, depth)
            and _alpha_eq(a.cod, b.cod, env_a, env_b, depth)
        )
    if isinstance(a, (Choice, Record, Variant)):
        ea, eb = _entries(a), _entries(b)
        if isinstance(a, Choice) and a.view != b.view:
            return False
        if len(ea) != len(eb):
            return False
        return all(
            la == lb and _alpha_eq(ta, tb, env_a, env_b, depth)
            for (la, ta), (lb, tb) in zip(ea, eb)
        )
    if isinstance(a, (Forall, Rec)):
        if a.kind != b.kind:
            return False
        mark = depth
        return _alpha_eq(
            a.body,
            b.body,
            {**env_a, a.var: mark},
            {**env_b, b.var: mark},
            depth + 1,
        )
    raise AssertionError(f"unhandled type node {type(a).__name__}")


# ---------------------------------------------------------------------------
# Node counting (used by the linear-size checks)
# ---------------------------------------------------------------------------


def type_size(t: "Type") -> int:
    if isinstance(t, (Skip, End, TVar, BaseType, TypeName, Unit)):
        return 1
    if isinstance(t, Msg):
        return 1 + type_size(t.payload)
    if isinstance(t, Semi):
        return 1 + type_size(t.head) + type_size(t.tail)
    if isinstance(t, Arrow):
        return 1 + type_size(t.dom) + type_size(t.cod)
    if isinstance(t, (Choice, Record, Variant)):
        return 1 + sum(1 + type_size(u) for _, u in _entries(t))
    if isinstance(t, (Forall, Rec)):
        return 1 + type_size(t.body)
    raise AssertionError(f"unhandled type node {type(t).__name__}")


def expr_size(e: "Expr") -> int:
    if isinstance(e, (UnitLit, IntLit, Var, Const)):
        return 1
    if isinstance(e, Abs):
        return 1 + type_size(e.param_type) + expr_size(e.body)
    if isinstance(e, TAbs):
        return 1 + expr_size(e.body)
    if isinstance(e, App):
        return 1 + expr_size(e.fun) + expr_size(e.arg)
    if isinstance(e, TApp):
        return 1 + expr_size(e.fun) + type_size(e.type_arg)
    if isinstance(e, RecordLit):
        return 1 + sum(1 + expr_size(x) for _, x in e.fields)
    if isinstance(e, LetRecord):
        return 1 + len(e.binders) + expr_size(e.scrutinee) + expr_size(e.body)
    if isinstance(e, Inject):
        return 1 + type_size(e.variant_type) + expr_size(e.payload)
    if isinstance(e, LetUnit):
        return 1 + expr_size(e.scrutinee) + expr_size(e.body)
    if isinstance(e, (Case, Match)):
        return (
            1
            + expr_size(e.scrutinee)
            + sum(1 + expr_size(body) for _, _, body in e.branches)
        )
    if isinstance(e, New):
        return 1 + type_size(e.channel_type)
    if isinstance(e, Select):
        return 1 + expr_size(e.scrutinee)
    raise AssertionError(f"unhandled expr node {type(e).__name__}")


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def pretty_mult(m: "Mult | MVar") -> str:
    if isinstance(m, MVar):
        return f"'m{m.id}"
    return m.value


def pretty_kind(k: "Kind") -> str:
    if isinstance(k, KindVar):
        return f"'k{k.id}"
    if isinstance(k.mult, MVar):
        return f"'m{k.mult.id} {k.base.value}"
    return f"{k.mult.value}{k.base.value}"


def pretty_constraint(c: "Constraint") -> str:
    if isinstance(c, Sub):
        return f"{pretty_kind(c.lhs)} <: {pretty_kind(c.rhs)}"
    args = ", ".join(f"mult({pretty_kind(k)})" for k in c.args)
    return f"'m{c.var.id} = lub({args})"


# Precedence levels for type printing; higher binds tighter.
_ARROW, _SEMI, _PREFIX, _ATOM = 0, 1, 2, 3


def pretty_type(t: "Type") -> str:
    return _ptype(t, _ARROW)


def _binder_kind(k: "Kind") -> str:
    # Omitted annotations are fresh kind variables; print them back as omitted.
    return "" if isinstance(k, KindVar) else f":{pretty_kind(k)}"


def _ptype(t, level: int) -> str:
    if isinstance(t, (Forall, Rec)):
        kw = "forall" if isinstance(t, Forall) else "rec"
        s = f"{kw} {t.var}{_binder_kind(t.kind)} . {_ptype(t.body, _ARROW)}"
        return f"({s})" if level > _ARROW else s
    if isinstance(t, Arrow):
        arrow = "->" if t.mult is Mult.UN else "1->"
        s = f"{_ptype(t.dom, _SEMI)} {arrow} {_ptype(t.cod, _ARROW)}"
        return f"({s})" if level > _ARROW else s
    if isinstance(t, Semi):
        s = f"{_ptype(t.head, _PREFIX)};{_ptype(t.tail, _SEMI)}"
        return f"({s})" if level > _SEMI else s
    if isinstance(t, Msg):
        s = f"{t.polarity.value}{_ptype(t.payload, _ATOM)}"
        return f"({s})" if level > _PREFIX else s
    if isinstance(t, Skip):
        return "Skip"
    if isinstance(t, End):
        return "End"
    if isinstance(t, Unit):
        return "()" if t.mult is Mult.UN else "1()"
    if isinstance(t, (TVar, BaseType, TypeName)):
        return t.name
    if isinstance(t, Choice):
        inner = ", ".join(f"{l}: {_ptype(u, _ARROW)}" for l, u in t.branches)
        return f"{t.view.value}{{{inner}}}"
    if isinstance(t, Record):
        if is_pair_record(t):
            a, b = t.fields[0][1], t.fields[1][1]
            return f"({_ptype(a, _ARROW)}, {_ptype(b, _ARROW)})"
        inner = ", ".join(f"{l}: {_ptype(u, _ARROW)}" for l, u in t.fields)
        return f"{{{inner}}}"
    if isinstance(t, Variant):
        inner = ", ".join(f"{l}: {_ptype(u, _ARROW)}" for l, u in t.fields)
        return f"<{inner}>"
    raise AssertionError(f"unhandled type node {type(t).__name__}")


# Expression printing: _EXPR is the open level, _APPX the application chain,
# _ATOMX operands of applications.
_EXPR, _APPX, _ATOMX = 0, 1, 2


def pretty_expr(e: "Expr") -> str:
    return _pexpr(e, _EXPR)


def _pexpr(e, level: int) -> str:
    if isinstance(e, Abs):
        arrow = "->" if e.mult is Mult.UN else "1->"
        s = f"\\{e.param}:{_ptype(e.param_type, _SEMI)} {arrow} {_pexpr(e.body, _EXPR)}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, TAbs):
        s = f"/\\{e.var}{_binder_kind(e.kind)} => {_pexpr(e.body, _EXPR)}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, LetRecord):
        if len(e.binders) == 2 and e.binders[0][0] == "fst" and e.binders[1][0] == "snd":
            pat = f"({e.binders[0][1]}, {e.binders[1][1]})"
        else:
            pat = "{" + ", ".join(f"{l} = {x}" for l, x in e.binders) + "}"
        s = f"let {pat} = {_pexpr(e.scrutinee, _EXPR)} in {_pexpr(e.body, _EXPR)}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, LetUnit):
        s = f"let () = {_pexpr(e.scrutinee, _EXPR)} in {_pexpr(e.body, _EXPR)}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, Case):
        brs = ", ".join(f"{l} {x} -> {_pexpr(b, _EXPR)}" for l, x, b in e.branches)
        s = f"case {_pexpr(e.scrutinee, _APPX)} of {{{brs}}}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, Match):
        brs = ", ".join(f"{l} {x} -> {_pexpr(b, _EXPR)}" for l, x, b in e.branches)
        s = f"match {_pexpr(e.scrutinee, _APPX)} with {{{brs}}}"
        return f"({s})" if level > _EXPR else s
    if isinstance(e, App):
        s = f"{_pexpr(e.fun, _APPX)} {_pexpr(e.arg, _ATOMX)}"
        return f"({s})" if level > _APPX else s
    if isinstance(e, TApp):
        s = f"{_pexpr(e.fun, _APPX)} [{pretty_type(e.type_arg)}]"
        return f"({s})" if level > _APPX else s
    if isinstance(e, Select):
        s = f"select {e.label} {_pexpr(e.scrutinee, _ATOMX)}"
        return f"({s})" if level > _APPX else s
    if isinstance(e, New):
        s = f"new {_ptype(e.channel_type, _SEMI)}"
        return f"({s})" if level > _APPX else s
    if isinstance(e, UnitLit):
        return "()"
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, RecordLit):
        if len(e.fields) == 2 and e.fields[0][0] == "fst" and e.fields[1][0] == "snd":
            return f"({_pexpr(e.fields[0][1], _EXPR)}, {_pexpr(e.fields[1][1], _EXPR)})"
        inner = ", ".join(f"{l} = {_pexpr(x, _EXPR)}" for l, x in e.fields)
        return f"{{{inner}}}"
    if isinstance(e, Inject):
        return f"({e.label} {_pexpr(e.payload, _ATOMX)} : {pretty_type(e.variant_type)})"
    raise AssertionError(f"unhandled expr node {type(e).__name__}")


def pretty_decl(d: "Decl") -> str:
    if isinstance(d, TypeAbbrev):
        ann = "" if isinstance(d.kind, KindVar) else f" : {pretty_kind(d.kind)}"
        return f"type {d.name}{ann} = {pretty_type(d.body)}"
    sig = f"{d.name} : {pretty_type(d.signature)}"
    body = f"{d.name} = {pretty_expr(d.body)}"
    return f"{sig}\n{body}"


def pretty_program(p: "Program") -> str:
    return "\n".join(pretty_decl(d) for d in p.decls) + "\n"
