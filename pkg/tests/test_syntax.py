"""AST construction invariants, printing, and print/parse round trips."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kindforge.parser import parse_expr, parse_kind, parse_type
from kindforge.syntax import (
    Abs,
    App,
    Arrow,
    Base,
    BaseType,
    Case,
    Choice,
    End,
    Forall,
    FreshSupply,
    IntLit,
    KindVar,
    LetRecord,
    Msg,
    Mult,
    MultEq,
    MultKind,
    MVar,
    New,
    Polarity,
    Rec,
    Record,
    RecordLit,
    SL,
    SU,
    Select,
    Semi,
    Skip,
    TL,
    TU,
    TVar,
    UnitLit,
    Unit,
    Var,
    Variant,
    View,
    expr_size,
    free_type_vars,
    pretty_expr,
    pretty_kind,
    pretty_type,
    type_size,
    types_equal,
)


def test_fresh_supply_counts_up():
    s = FreshSupply()
    assert s.fresh_kvar() == KindVar(0)
    assert s.fresh_kvar() == KindVar(1)
    assert s.fresh_mvar() == MVar(0)
    s2 = FreshSupply(next_kvar=7)
    assert s2.fresh_kvar() == KindVar(7)
    a, b = s2.fresh_kvar(), s2.fresh_kvar()
    assert (a.id, b.id) == (8, 9)


def test_pretty_kind_forms():
    assert pretty_kind(TU) == "*T"
    assert pretty_kind(SL) == "1S"
    assert pretty_kind(KindVar(2)) == "'k2"
    assert pretty_kind(MultKind(MVar(0), Base.FUNCTIONAL)) == "'m0 T"


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        Record((("x", Skip()), ("x", End())))
    with pytest.raises(ValueError):
        Variant((("l", Skip()), ("l", Skip())))
    with pytest.raises(ValueError):
        RecordLit((("a", UnitLit()), ("a", UnitLit())))
    with pytest.raises(ValueError):
        Case(Var("v"), (("l", "x", Var("x")), ("l", "y", Var("y"))))


def test_empty_label_maps_rejected():
    with pytest.raises(ValueError):
        Record(())
    with pytest.raises(ValueError):
        MultEq(MVar(0), ())


def test_spans_ignored_by_equality():
    a = parse_type("!Int;a")
    b = parse_type("  !Int;a")
    assert a == b


def test_types_equal_alpha():
    assert types_equal(parse_type("forall a:1T . a -> a"), parse_type("forall b:1T . b -> b"))
    assert not types_equal(parse_type("forall a:1T . a -> a"), parse_type("forall b:*T . b -> b"))
    assert types_equal(parse_type("rec x:1S . !Int;x"), parse_type("rec y:1S . !Int;y"))
    assert not types_equal(parse_type("!Int"), parse_type("?Int"))


def test_free_type_vars_in_order():
    t = parse_type("(b -> c) -> (a -> b) -> a -> c")
    assert free_type_vars(t) == ["b", "c", "a"]
    assert free_type_vars(parse_type("forall a:1T . a -> b")) == ["b"]


# ---------------------------------------------------------------------------
# Round trips on generated trees
# ---------------------------------------------------------------------------

_LABELS = ("a", "b", "fst", "snd", "go", "stop")
_VARS = ("x", "y", "z")

concrete_kind = st.sampled_from((SU, SL, TU, TL))
mult = st.sampled_from((Mult.UN, Mult.LIN))


def _entries(label_pool, inner):
    return st.lists(
        st.tuples(st.sampled_from(label_pool), inner), min_size=1, max_size=3,
        unique_by=lambda e: e[0],
    ).map(tuple)


def type_trees(depth: int = 3):
    base = st.one_of(
        st.just(Skip()),
        st.just(End()),
        st.builds(Unit, mult),
        st.builds(TVar, st.sampled_from(_VARS)),
        st.builds(BaseType, st.sampled_from(("Int", "Bool", "Char"))),
    )
    if depth == 0:
        return base
    sub = type_trees(depth - 1)
    return st.one_of(
        base,
        st.builds(Msg, st.sampled_from((Polarity.OUT, Polarity.IN)), sub),
        st.builds(Semi, sub, sub),
        st.builds(Arrow, mult, sub, sub),
        st.builds(Choice, st.sampled_from((View.INTERNAL, View.EXTERNAL)), _entries(_LABELS, sub)),
        st.builds(Record, _entries(_LABELS, sub)),
        st.builds(Variant, _entries(_LABELS, sub)),
        st.builds(Forall, st.sampled_from(_VARS), concrete_kind, sub),
        st.builds(Rec, st.sampled_from(_VARS), concrete_kind, sub),
    )


@settings(max_examples=300, deadline=None)
@given(type_trees())
def test_type_print_parse_round_trip(t):
    printed = pretty_type(t)
    assert parse_type(printed) == t


def expr_trees(depth: int = 3):
    base = st.one_of(
        st.just(UnitLit()),
        st.builds(IntLit, st.integers(min_value=0, max_value=99)),
        st.builds(Var, st.sampled_from(_VARS)),
    )
    if depth == 0:
        return base
    sub = expr_trees(depth - 1)
    types = type_trees(1)
    return st.one_of(
        base,
        st.builds(Abs, mult, st.sampled_from(_VARS), type_trees(0), sub),
        st.builds(App, sub, sub),
        st.builds(RecordLit, _entries(_LABELS, sub)),
        st.builds(
            LetRecord,
            _entries(_LABELS, st.sampled_from(_VARS)),
            sub,
            sub,
        ),
        st.builds(Case, sub, st.lists(
            st.tuples(st.sampled_from(_LABELS), st.sampled_from(_VARS), sub),
            min_size=1, max_size=2, unique_by=lambda b: b[0],
        ).map(tuple)),
        st.builds(New, types),
        st.builds(Select, st.sampled_from(_LABELS), sub),
    )


@settings(max_examples=300, deadline=None)
@given(expr_trees())
def test_expr_print_parse_round_trip(e):
    printed = pretty_expr(e)
    assert parse_expr(printed) == e


def test_round_trip_with_omitted_binder_kinds():
    # Omitted annotations print back as omitted; re-parsing allocates the
    # same pre-order variable ids.
    for src in (
        "forall a . a -> a",
        "rec s . !Int;s",
        r"/\a => /\b => \p:(a, b) -> let (x, y) = p in x",
    ):
        try:
            node = parse_type(src)
            printed = pretty_type(node)
            assert parse_type(printed) == node
        except Exception:
            node = parse_expr(src)
            printed = pretty_expr(node)
            assert parse_expr(printed) == node


def test_sizes():
    assert type_size(parse_type("!Int;a")) == 4  # msg, int, semi, var
    assert expr_size(parse_expr("f x")) == 3
