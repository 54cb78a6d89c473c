"""Constraint generation from types, pinned against hand derivations."""
from __future__ import annotations

import pytest

from kindforge.errors import UnboundTypeVariable
from kindforge.kindgen import generate_type
from kindforge.parser import parse_type
from kindforge.syntax import (
    Base,
    FreshSupply,
    KindVar,
    Mult,
    MultEq,
    MultKind,
    MVar,
    SL,
    SU,
    Sub,
    TU,
    pretty_constraint,
    type_size,
)


def kinds_of(constraints):
    return [pretty_constraint(c) for c in constraints]


def test_skip_axiom():
    k, cs = generate_type({}, parse_type("Skip"))
    assert k == SU and cs == ()


def test_end_and_unit():
    assert generate_type({}, parse_type("End"))[0] == SL
    assert generate_type({}, parse_type("()"))[0] == TU
    assert generate_type({}, parse_type("1()"))[0] == MultKind(Mult.LIN, Base.FUNCTIONAL)


def test_var_reads_context():
    k, cs = generate_type({"a": SL}, parse_type("a"))
    assert k == SL and cs == ()


def test_unbound_variable():
    with pytest.raises(UnboundTypeVariable):
        generate_type({}, parse_type("a"))


def test_message_keeps_payload_constraints():
    k, cs = generate_type({}, parse_type("!Int"))
    assert k == SL and cs == ()


def test_choice_branches_below_linear_session():
    k, cs = generate_type({"a": KindVar(0)}, parse_type("+{l: a, r: Skip}"))
    assert k == SL
    assert kinds_of(cs) == ["'k0 <: 1S", "*S <: 1S"]


def test_arrow_kind_from_annotation():
    k, cs = generate_type({}, parse_type("() 1-> ()"))
    assert k == MultKind(Mult.LIN, Base.FUNCTIONAL) and cs == ()


def test_fst_type_constraints():
    # forall a . forall b . (a, b) -> a with variables chi0/chi1: the two
    # quantifier equations, the pair equation and its two bound constraints.
    supply = FreshSupply(next_kvar=2)
    t = parse_type("forall a . forall b . (a, b) -> a", FreshSupply())
    k, cs = generate_type({}, t, supply)
    assert k == MultKind(MVar(0), Base.FUNCTIONAL)
    # Renaming: the outer/inner quantifier equations and the pair equation
    # ('m0/'m1/'m2 in allocation order; the inner quantifier's body is the
    # unrestricted arrow, hence mult(*T)).
    assert kinds_of(cs) == [
        "'m2 = lub(mult('k0), mult('k1))",
        "'k0 <: 'm2 T",
        "'k1 <: 'm2 T",
        "'m1 = lub(mult(*T))",
        "'m0 = lub(mult('m1 T))",
    ]


def test_recursive_session_constraints():
    # rec a:1S . !Int;a — duplicates collapse, solving forces the
    # sequencing multiplicity to lin.
    k, cs = generate_type({}, parse_type("rec a:1S . !Int;a"))
    assert k == MultKind(MVar(0), Base.SESSION)
    assert kinds_of(cs) == [
        "1S <: 1S",
        "'m0 = lub(mult(1S), mult(1S))",
        "'m0 S <: 1S",
    ]
    from kindforge.solver import solve

    sol = solve(cs)
    assert sol.mult_vars[0] is Mult.LIN


def test_determinism():
    t = parse_type("forall a . {x: a, y: (a, a)}", FreshSupply())
    one = generate_type({}, t, FreshSupply())
    two = generate_type({}, t, FreshSupply())
    assert one == two


def test_constraint_count_linear():
    for src in (
        "forall a . forall b . (a, b) -> a",
        "rec s:1S . !Int;s",
        "+{l: !Int;End, r: ?Bool;End}",
        "{a: Int, b: (Int, Int), c: () -> ()}",
    ):
        t = parse_type(src, FreshSupply())
        _, cs = generate_type({}, t, FreshSupply())
        assert len(cs) <= 2 * type_size(t)
