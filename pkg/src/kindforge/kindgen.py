"""Constraint generation from types.

Walking a type yields its kind together with subkinding constraints and
multiplicity equations. Fresh multiplicity variables are allocated in
pre-order, at the node that needs them, so runs are reproducible.
"""
from __future__ import annotations

from .errors import InternalError, UnboundTypeVariable
from .syntax import (
    Arrow,
    Base,
    BaseType,
    Choice,
    ConstraintBag,
    End,
    Forall,
    FreshSupply,
    Kind,
    Msg,
    MultEq,
    MultKind,
    Origin,
    Rec,
    Record,
    SL,
    SU,
    Semi,
    Skip,
    Sub,
    TU,
    TVar,
    Type,
    TypeName,
    Unit,
    Variant,
)

KindCtx = "dict[str, Kind]"


def gen_type(delta: dict, t: Type, supply: FreshSupply, bag: ConstraintBag) -> Kind:
    """Kind `t` under `delta`, emitting constraints into `bag`."""
    if isinstance(t, Unit):
        return MultKind(t.mult, Base.FUNCTIONAL)
    if isinstance(t, TVar):
        if t.name not in delta:
            raise UnboundTypeVariable(f"unbound type variable {t.name}", t.span)
        return delta[t.name]
    if isinstance(t, BaseType):
        return TU
    if isinstance(t, Skip):
        return SU
    if isinstance(t, End):
        return SL
    if isinstance(t, Msg):
        gen_type(delta, t.payload, supply, bag)
        return SL
    if isinstance(t, Choice):
        kinds = [(gen_type(delta, u, supply, bag), u) for _, u in t.branches]
        for k, u in kinds:
            bag.add(Sub(k, SL, Origin("choice", u.span)))
        return SL
    if isinstance(t, Semi):
        phi = supply.fresh_mvar()
        k1 = gen_type(delta, t.head, supply, bag)
        k2 = gen_type(delta, t.tail, supply, bag)
        origin = Origin("seq", t.span)
        bag.add(Sub(k1, SL, origin))
        bag.add(Sub(k2, SL, origin))
        bag.add(MultEq(phi, (k1, k2), origin))
        return MultKind(phi, Base.SESSION)
    if isinstance(t, Rec):
        k_body = gen_type({**delta, t.var: t.kind}, t.body, supply, bag)
        bag.add(Sub(k_body, t.kind, Origin("rec", t.span)))
        return k_body
    if isinstance(t, Arrow):
        gen_type(delta, t.dom, supply, bag)
        gen_type(delta, t.cod, supply, bag)
        return MultKind(t.mult, Base.FUNCTIONAL)
    if isinstance(t, (Record, Variant)):
        rule = "record" if isinstance(t, Record) else "variant"
        phi = supply.fresh_mvar()
        kinds = [gen_type(delta, u, supply, bag) for _, u in t.fields]
        origin = Origin(rule, t.span)
        result = MultKind(phi, Base.FUNCTIONAL)
        bag.add(MultEq(phi, tuple(kinds), origin))
        for k in kinds:
            bag.add(Sub(k, result, origin))
        return result
    if isinstance(t, Forall):
        phi = supply.fresh_mvar()
        k_body = gen_type({**delta, t.var: t.kind}, t.body, supply, bag)
        bag.add(MultEq(phi, (k_body,), Origin("forall", t.span)))
        return MultKind(phi, Base.FUNCTIONAL)
    if isinstance(t, TypeName):
        raise InternalError(f"unexpanded abbreviation {t.name} reached kinding", t.span)
    raise InternalError(f"unhandled type node {type(t).__name__}")


def generate_type(delta: dict, t: Type, supply: FreshSupply | None = None):
    """Public entry: returns the kind of `t` and the emitted constraints."""
    bag = ConstraintBag()
    k = gen_type(dict(delta), t, supply or FreshSupply(), bag)
    return k, bag.items
