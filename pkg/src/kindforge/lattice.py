"""The four-point kind lattice and multiplicity order.

Kinds are ordered pointwise as the product of two two-point orders:
un below lin and session below functional. Hence *S is the bottom,
1T the top, and *T / 1S the incomparable middle points.
"""
from __future__ import annotations

from .errors import UnresolvedVariable
from .syntax import Base, Kind, KindVar, Mult, MultKind, MVar

_MULT_RANK = {Mult.UN: 0, Mult.LIN: 1}
_BASE_RANK = {Base.SESSION: 0, Base.FUNCTIONAL: 1}


def mult_leq(a: Mult, b: Mult) -> bool:
    return _MULT_RANK[a] <= _MULT_RANK[b]


def subkind(k1: MultKind, k2: MultKind) -> bool:
    """Pointwise order on fully concrete kinds."""
    assert isinstance(k1.mult, Mult) and isinstance(k2.mult, Mult)
    return (
        _MULT_RANK[k1.mult] <= _MULT_RANK[k2.mult]
        and _BASE_RANK[k1.base] <= _BASE_RANK[k2.base]
    )


def glb(k1: MultKind, k2: MultKind) -> MultKind:
    """Pointwise meet of concrete kinds."""
    m = k1.mult if _MULT_RANK[k1.mult] <= _MULT_RANK[k2.mult] else k2.mult
    b = k1.base if _BASE_RANK[k1.base] <= _BASE_RANK[k2.base] else k2.base
    return MultKind(m, b)


def lub(k1: MultKind, k2: MultKind) -> MultKind:
    """Pointwise join of concrete kinds."""
    m = k1.mult if _MULT_RANK[k1.mult] >= _MULT_RANK[k2.mult] else k2.mult
    b = k1.base if _BASE_RANK[k1.base] >= _BASE_RANK[k2.base] else k2.base
    return MultKind(m, b)


def mult_lub(ms) -> Mult:
    """Join of a non-empty sequence of concrete multiplicities."""
    ms = list(ms)
    if not ms:
        raise ValueError("join of an empty multiplicity sequence")
    return Mult.LIN if any(m is Mult.LIN for m in ms) else Mult.UN


def mult_of(k: Kind, solution=None) -> Mult:
    """Project the multiplicity of a kind, consulting `solution` for variables."""
    if isinstance(k, KindVar):
        if solution is None:
            raise UnresolvedVariable(f"kind variable 'k{k.id} has no assignment")
        return mult_of(solution.kind_vars[k.id])
    if isinstance(k.mult, MVar):
        if solution is None:
            raise UnresolvedVariable(f"multiplicity variable 'm{k.mult.id} has no assignment")
        return solution.mult_vars[k.mult.id]
    return k.mult
