"""Exhaustive checks of the four-point kind lattice."""
from __future__ import annotations

import itertools

import pytest

from kindforge.errors import UnresolvedVariable
from kindforge.lattice import glb, lub, mult_leq, mult_lub, mult_of, subkind
from kindforge.solver import Solution
from kindforge.syntax import (
    ALL_CONCRETE_KINDS,
    Base,
    KindVar,
    Mult,
    MultKind,
    MVar,
    SL,
    SU,
    TL,
    TU,
)

KINDS = ALL_CONCRETE_KINDS
MULTS = (Mult.UN, Mult.LIN)


def test_order_extremes():
    assert subkind(SU, TL)  # bottom below top
    for k in KINDS:
        assert subkind(SU, k)
        assert subkind(k, TL)


def test_middle_points_incomparable():
    assert not subkind(TU, SL)
    assert not subkind(SL, TU)


def test_partial_order_axioms():
    for k in KINDS:
        assert subkind(k, k)
    for a, b in itertools.product(KINDS, repeat=2):
        if subkind(a, b) and subkind(b, a):
            assert a == b
    for a, b, c in itertools.product(KINDS, repeat=3):
        if subkind(a, b) and subkind(b, c):
            assert subkind(a, c)


def test_meet_join_are_bounds():
    for a, b in itertools.product(KINDS, repeat=2):
        m = glb(a, b)
        assert subkind(m, a) and subkind(m, b)
        for c in KINDS:
            if subkind(c, a) and subkind(c, b):
                assert subkind(c, m)
        j = lub(a, b)
        assert subkind(a, j) and subkind(b, j)
        for c in KINDS:
            if subkind(a, c) and subkind(b, c):
                assert subkind(j, c)


def test_lattice_algebra():
    for a, b in itertools.product(KINDS, repeat=2):
        assert glb(a, b) == glb(b, a)
        assert lub(a, b) == lub(b, a)
        # absorption
        assert lub(a, glb(a, b)) == a
        assert glb(a, lub(a, b)) == a
    for a in KINDS:
        assert glb(a, a) == a
        assert lub(a, a) == a
    for a, b, c in itertools.product(KINDS, repeat=3):
        assert glb(glb(a, b), c) == glb(a, glb(b, c))
        assert lub(lub(a, b), c) == lub(a, lub(b, c))


def test_order_agrees_with_meet_and_join():
    for a, b in itertools.product(KINDS, repeat=2):
        assert subkind(a, b) == (glb(a, b) == a)
        assert subkind(a, b) == (lub(a, b) == b)


def test_distributivity():
    for a, b, c in itertools.product(KINDS, repeat=3):
        assert glb(a, lub(b, c)) == lub(glb(a, b), glb(a, c))
        assert lub(a, glb(b, c)) == glb(lub(a, b), lub(a, c))


def test_glb_examples():
    assert glb(TL, TU) == TU
    assert glb(TU, SL) == SU
    assert lub(TU, SL) == TL
    for k in KINDS:
        assert lub(SU, k) == k
        assert lub(TL, k) == TL


def test_mult_lub():
    assert mult_lub([Mult.UN, Mult.LIN]) is Mult.LIN
    assert mult_lub([Mult.UN, Mult.UN]) is Mult.UN
    assert mult_lub([Mult.LIN]) is Mult.LIN
    with pytest.raises(ValueError):
        mult_lub([])


def test_mult_of_projection():
    assert mult_of(SL) is Mult.LIN
    assert mult_of(TU) is Mult.UN
    sol = Solution({0: TU}, {0: Mult.LIN})
    assert mult_of(KindVar(0), sol) is Mult.UN
    assert mult_of(MultKind(MVar(0), Base.FUNCTIONAL), sol) is Mult.LIN
    with pytest.raises(UnresolvedVariable):
        mult_of(KindVar(0))
    with pytest.raises(UnresolvedVariable):
        mult_of(MultKind(MVar(3), Base.SESSION))


def test_mult_of_monotone():
    for a, b in itertools.product(KINDS, repeat=2):
        if subkind(a, b):
            assert mult_leq(mult_of(a), mult_of(b))
