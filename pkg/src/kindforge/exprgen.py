"""Type synthesis over Church-style expressions.

Each expression synthesizes its type while emitting kind constraints and a
usage context recording which term variables it consumed and at what kind.
Unused binders and variables used on both sides of an application are forced
to unrestricted kinds (the weaken/merge emitters below).
"""
from __future__ import annotations

from .errors import (
    InternalError,
    MissingLabel,
    NotAChoice,
    NotAForall,
    NotAFunction,
    NotARecord,
    NotASessionType,
    NotAValue,
    NotAVariant,
    TypeMismatch,
    UnboundVariable,
)
from .kindgen import gen_type
from .syntax import (
    Abs,
    App,
    Arrow,
    Base,
    Case,
    Choice,
    Const,
    End,
    Expr,
    Forall,
    FreshSupply,
    Inject,
    IntLit,
    Kind,
    KindVar,
    LetRecord,
    LetUnit,
    Match,
    Msg,
    Mult,
    MultKind,
    New,
    Origin,
    Polarity,
    Rec,
    Record,
    RecordLit,
    SL,
    Select,
    Semi,
    Skip,
    Span,
    Sub,
    TAbs,
    TApp,
    TL,
    TU,
    TVar,
    Type,
    BaseType,
    UnitLit,
    Unit,
    Var,
    Variant,
    View,
    ConstraintBag,
    free_type_vars,
    is_value,
    pair_type,
    pretty_type,
)

UsageCtx = "dict[str, Kind]"
TypeCtx = "dict[str, Type]"
BuiltinTable = "dict[str, Type]"


# ---------------------------------------------------------------------------
# Usage plumbing
# ---------------------------------------------------------------------------


def weaken(name: str, kind: Kind, usage: dict, origin: Origin) -> tuple:
    """No constraint if `name` was used; otherwise its kind must be unrestricted."""
    if name in usage:
        return ()
    return (Sub(kind, TU, origin),)


def merge(usage1: dict, usage2: dict, origin: Origin) -> tuple:
    """Variables consumed by both sides must be unrestricted (kind from the first)."""
    return tuple(Sub(k, TU, origin) for x, k in usage1.items() if x in usage2)


def usage_union(usage1: dict, usage2: dict) -> dict:
    out = dict(usage1)
    for x, k in usage2.items():
        out.setdefault(x, k)
    return out


def usage_minus(usage: dict, *names: str) -> dict:
    return {x: k for x, k in usage.items() if x not in names}


# ---------------------------------------------------------------------------
# Type matching
# ---------------------------------------------------------------------------


def match_types(a: Type, b: Type, bag: ConstraintBag, origin: Origin) -> bool:
    """Structural equality up to bound-variable renaming and kind slots.

    Binder kind slots match when syntactically equal; when either side is a
    kind variable, a pair of mutual subkind constraints is emitted instead,
    forcing the two slots to coincide at the solution. Distinct concrete
    kinds do not match.
    """

    def kinds(ka, kb) -> bool:
        if ka == kb:
            return True
        if isinstance(ka, KindVar) or isinstance(kb, KindVar):
            bag.add(Sub(ka, kb, origin))
            bag.add(Sub(kb, ka, origin))
            return True
        return False

    def go(a, b, env_a, env_b, depth) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, TVar):
            return env_a.get(a.name, a.name) == env_b.get(b.name, b.name)
        if isinstance(a, (Skip, End)):
            return True
        if isinstance(a, BaseType):
            return a.name == b.name
        if isinstance(a, Unit):
            return a.mult == b.mult
        if isinstance(a, Msg):
            return a.polarity == b.polarity and go(a.payload, b.payload, env_a, env_b, depth)
        if isinstance(a, Semi):
            return go(a.head, b.head, env_a, env_b, depth) and go(a.tail, b.tail, env_a, env_b, depth)
        if isinstance(a, Arrow):
            return (
                a.mult == b.mult
                and go(a.dom, b.dom, env_a, env_b, depth)
                and go(a.cod, b.cod, env_a, env_b, depth)
            )
        if isinstance(a, (Choice, Record, Variant)):
            ea = a.branches if isinstance(a, Choice) else a.fields
            eb = b.branches if isinstance(b, Choice) else b.fields
            if isinstance(a, Choice) and a.view != b.view:
                return False
            if len(ea) != len(eb):
                return False
            return all(
                la == lb and go(ta, tb, env_a, env_b, depth)
                for (la, ta), (lb, tb) in zip(ea, eb)
            )
        if isinstance(a, (Forall, Rec)):
            if not kinds(a.kind, b.kind):
                return False
            return go(
                a.body, b.body,
                {**env_a, a.var: depth}, {**env_b, b.var: depth},
                depth + 1,
            )
        raise InternalError(f"unhandled type node {type(a).__name__} in matching")

    return go(a, b, {}, {}, 0)


# ---------------------------------------------------------------------------
# Duality and substitution
# ---------------------------------------------------------------------------

_FLIP_POL = {Polarity.OUT: Polarity.IN, Polarity.IN: Polarity.OUT}
_FLIP_VIEW = {View.INTERNAL: View.EXTERNAL, View.EXTERNAL: View.INTERNAL}


def dual(t: Type) -> Type:
    """The communication partner's view of a session type."""
    if isinstance(t, (Skip, End, TVar)):
        return t
    if isinstance(t, Msg):
        return Msg(_FLIP_POL[t.polarity], t.payload, t.span)
    if isinstance(t, Choice):
        return Choice(_FLIP_VIEW[t.view], tuple((l, dual(u)) for l, u in t.branches), t.span)
    if isinstance(t, Semi):
        return Semi(dual(t.head), dual(t.tail), t.span)
    if isinstance(t, Rec):
        return Rec(t.var, t.kind, dual(t.body), t.span)
    raise NotASessionType(f"{pretty_type(t)} is not a session type", t.span)


def substitute(t: Type, name: str, replacement: Type) -> Type:
    """Capture-avoiding substitution of `replacement` for the type variable `name`."""
    repl_free = set(free_type_vars(replacement))

    def go(t):
        if isinstance(t, TVar):
            return replacement if t.name == name else t
        if isinstance(t, Msg):
            return Msg(t.polarity, go(t.payload), t.span)
        if isinstance(t, Choice):
            return Choice(t.view, tuple((l, go(u)) for l, u in t.branches), t.span)
        if isinstance(t, Record):
            return Record(tuple((l, go(u)) for l, u in t.fields), t.span)
        if isinstance(t, Variant):
            return Variant(tuple((l, go(u)) for l, u in t.fields), t.span)
        if isinstance(t, Semi):
            return Semi(go(t.head), go(t.tail), t.span)
        if isinstance(t, Arrow):
            return Arrow(t.mult, go(t.dom), go(t.cod), t.span)
        if isinstance(t, (Forall, Rec)):
            node = type(t)
            if t.var == name:
                return t
            if t.var in repl_free and name in free_type_vars(t.body):
                fresh = t.var
                avoid = repl_free | set(free_type_vars(t.body))
                while fresh in avoid:
                    fresh += "'"
                renamed = substitute(t.body, t.var, TVar(fresh))
                return node(fresh, t.kind, go(renamed), t.span)
            return node(t.var, t.kind, go(t.body), t.span)
        return t

    return go(t)


# ---------------------------------------------------------------------------
# Builtin constant schemes
# ---------------------------------------------------------------------------


def default_builtins() -> dict:
    """Closed, fully annotated type schemes for the channel primitives."""
    a, b = TVar("a"), TVar("b")
    un, lin = Mult.UN, Mult.LIN
    send = Forall(
        "a", TL,
        Forall("b", SL, Arrow(un, a, Arrow(lin, Semi(Msg(Polarity.OUT, a), b), b))),
    )
    receive = Forall(
        "a", TL,
        Forall("b", SL, Arrow(un, Semi(Msg(Polarity.IN, a), b), pair_type(a, b))),
    )
    close = Arrow(un, End(), Unit(un))
    fork = Arrow(un, Arrow(lin, Unit(un), Unit(un)), Unit(un))
    return {"send": send, "receive": receive, "close": close, "fork": fork}


# ---------------------------------------------------------------------------
# Expression walk
# ---------------------------------------------------------------------------


def gen_expr(
    delta: dict,
    gamma: dict,
    e: Expr,
    builtins: dict,
    globals_: dict,
    supply: FreshSupply,
    bag: ConstraintBag,
):
    """Synthesize the type and usage context of `e`, emitting constraints."""

    def go(delta, gamma, e):
        if isinstance(e, UnitLit):
            return Unit(Mult.UN, e.span), {}
        if isinstance(e, IntLit):
            return BaseType("Int", e.span), {}
        if isinstance(e, (Var, Const)):
            if isinstance(e, Var) and e.name in gamma:
                t = gamma[e.name]
                k = gen_type(delta, t, supply, bag)
                return t, {e.name: k}
            table = globals_ if isinstance(e, Var) else builtins
            if e.name in table:
                t = table[e.name]
                gen_type(delta, t, supply, bag)
                return t, {}
            raise UnboundVariable(f"unbound variable {e.name}", e.span)
        if isinstance(e, Abs):
            k1 = gen_type(delta, e.param_type, supply, bag)
            t2, usage = go(delta, {**gamma, e.param: e.param_type}, e.body)
            if isinstance(e.body, Abs):
                # An unrestricted inner closure must not capture a linear binder.
                bag.add(Sub(k1, MultKind(e.body.mult, Base.FUNCTIONAL), Origin("closure", e.span)))
            bag.extend(weaken(e.param, k1, usage, Origin("weaken", e.span)))
            return Arrow(e.mult, e.param_type, t2, e.span), usage_minus(usage, e.param)
        if isinstance(e, App):
            t_fun, u1 = go(delta, gamma, e.fun)
            if not isinstance(t_fun, Arrow):
                raise NotAFunction(f"{pretty_type(t_fun)} is not a function type", e.fun.span)
            t_arg, u2 = go(delta, gamma, e.arg)
            if not match_types(t_arg, t_fun.dom, bag, Origin("app", e.span)):
                raise TypeMismatch(pretty_type(t_fun.dom), pretty_type(t_arg), e.arg.span)
            gen_type(delta, t_fun, supply, bag)
            bag.extend(merge(u1, u2, Origin("merge", e.span)))
            return t_fun.cod, usage_union(u1, u2)
        if isinstance(e, TAbs):
            if not is_value(e.body):
                raise NotAValue("type abstraction over a non-value expression", e.span)
            inner = {**delta, e.var: e.kind}
            t, usage = go(inner, gamma, e.body)
            gen_type(inner, t, supply, bag)
            return Forall(e.var, e.kind, t, e.span), usage
        if isinstance(e, TApp):
            t_fun, usage = go(delta, gamma, e.fun)
            if not isinstance(t_fun, Forall):
                raise NotAForall(f"{pretty_type(t_fun)} is not a polymorphic type", e.fun.span)
            k_arg = gen_type(delta, e.type_arg, supply, bag)
            bag.add(Sub(k_arg, t_fun.kind, Origin("tapp+sub", e.span)))
            return substitute(t_fun.body, t_fun.var, e.type_arg), usage
        if isinstance(e, LetRecord):
            t1, u1 = go(delta, gamma, e.scrutinee)
            if not isinstance(t1, Record):
                raise NotARecord(f"{pretty_type(t1)} is not a record type", e.scrutinee.span)
            pattern_labels = {l for l, _ in e.binders}
            record_labels = {l for l, _ in t1.fields}
            if pattern_labels != record_labels:
                raise MissingLabel(
                    f"pattern labels {sorted(pattern_labels)} do not match record labels"
                    f" {sorted(record_labels)}",
                    e.span,
                )
            bound = {x: t1.field_type(l) for l, x in e.binders}
            t, u2 = go(delta, {**gamma, **bound}, e.body)
            gen_type(delta, t, supply, bag)
            field_kinds = [(l, x, gen_type(delta, t1.field_type(l), supply, bag)) for l, x in e.binders]
            bag.extend(merge(u1, u2, Origin("merge", e.span)))
            for l, x, k in field_kinds:
                bag.extend(weaken(x, k, u2, Origin("weaken", e.span)))
            return t, usage_minus(usage_union(u1, u2), *(x for _, x in e.binders))
        if isinstance(e, RecordLit):
            parts = []
            for l, sub in e.fields:
                t_l, u_l = go(delta, gamma, sub)
                gen_type(delta, t_l, supply, bag)
                parts.append((l, t_l, u_l))
            origin = Origin("merge", e.span)
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    bag.extend(merge(parts[i][2], parts[j][2], origin))
            usage = {}
            for _, _, u in parts:
                usage = usage_union(usage, u)
            return Record(tuple((l, t) for l, t, _ in parts), e.span), usage
        if isinstance(e, Inject):
            if not isinstance(e.variant_type, Variant):
                raise NotAVariant(
                    f"injection ascription {pretty_type(e.variant_type)} is not a variant",
                    e.span,
                )
            t_k = e.variant_type.field_type(e.label)
            if t_k is None:
                raise MissingLabel(f"label {e.label} is not part of the ascribed variant", e.span)
            t_p, usage = go(delta, gamma, e.payload)
            if not match_types(t_p, t_k, bag, Origin("inject", e.span)):
                raise TypeMismatch(pretty_type(t_k), pretty_type(t_p), e.payload.span)
            for _, t_l in e.variant_type.fields:
                gen_type(delta, t_l, supply, bag)
            return e.variant_type, usage
        if isinstance(e, (Case, Match)):
            return _branching(delta, gamma, e, go)
        if isinstance(e, LetUnit):
            t1, u1 = go(delta, gamma, e.scrutinee)
            if not isinstance(t1, Unit):
                raise TypeMismatch("()", pretty_type(t1), e.scrutinee.span)
            t, u2 = go(delta, gamma, e.body)
            gen_type(delta, t, supply, bag)
            bag.extend(merge(u1, u2, Origin("merge", e.span)))
            return t, usage_union(u1, u2)
        if isinstance(e, New):
            gen_type({}, e.channel_type, supply, bag)
            return pair_type(e.channel_type, dual(e.channel_type), e.span), {}
        if isinstance(e, Select):
            t_s, usage = go(delta, gamma, e.scrutinee)
            if not (isinstance(t_s, Choice) and t_s.view is View.INTERNAL):
                raise NotAChoice(
                    f"{pretty_type(t_s)} is not an internal choice", e.scrutinee.span
                )
            t_k = t_s.branch(e.label)
            if t_k is None:
                raise MissingLabel(f"label {e.label} is not offered by the choice", e.span)
            for _, t_l in t_s.branches:
                gen_type(delta, t_l, supply, bag)
            return t_k, usage
        raise InternalError(f"unhandled expression node {type(e).__name__}")

    def _branching(delta, gamma, e, go):
        is_case = isinstance(e, Case)
        rule = "case" if is_case else "match"
        t_s, u1 = go(delta, gamma, e.scrutinee)
        if is_case:
            if not isinstance(t_s, Variant):
                raise NotAVariant(f"{pretty_type(t_s)} is not a variant type", e.scrutinee.span)
            entries = dict(t_s.fields)
        else:
            if not (isinstance(t_s, Choice) and t_s.view is View.EXTERNAL):
                raise NotAChoice(
                    f"{pretty_type(t_s)} is not an external choice", e.scrutinee.span
                )
            entries = dict(t_s.branches)
        branch_labels = {l for l, _, _ in e.branches}
        if branch_labels != set(entries):
            raise MissingLabel(
                f"branch labels {sorted(branch_labels)} do not match"
                f" {sorted(entries)}",
                e.span,
            )
        result = None
        usage = u1
        for label, binder, body in e.branches:
            t_l = entries[label]
            t_b, u_b = go(delta, {**gamma, binder: t_l}, body)
            if result is None:
                result = t_b
            elif not match_types(t_b, result, bag, Origin(rule, body.span)):
                raise TypeMismatch(pretty_type(result), pretty_type(t_b), body.span)
            k_l = gen_type(delta, t_l, supply, bag)
            bag.extend(weaken(binder, k_l, u_b, Origin(rule, body.span)))
            usage = usage_union(usage, usage_minus(u_b, binder))
        return result, usage

    return go(dict(delta), dict(gamma), e)


def generate_expr(
    delta: dict,
    gamma: dict,
    e: Expr,
    builtins: dict | None = None,
    globals_: dict | None = None,
    supply: FreshSupply | None = None,
):
    """Public entry: returns (type, constraints, usage context)."""
    bag = ConstraintBag()
    t, usage = gen_expr(
        delta,
        gamma,
        e,
        default_builtins() if builtins is None else builtins,
        globals_ or {},
        supply or FreshSupply(),
        bag,
    )
    return t, bag.items, usage
