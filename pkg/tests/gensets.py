"""Random constraint sets shaped like the generators' output.

Sets are built from the shapes the type/expression walks actually emit:
plain subkind constraints over {variable, concrete} operands, sequencing
bundles, record bundles (bound constraints paired with their multiplicity
equation) and quantifier equations. Half the sets are satisfiable by
construction: constraints are generated to hold under a randomly drawn
target assignment.
"""
from __future__ import annotations

import random

from kindforge.lattice import mult_lub, mult_of, subkind
from kindforge.syntax import (
    ALL_CONCRETE_KINDS,
    Base,
    KindVar,
    MultEq,
    MultKind,
    MVar,
    NO_SPAN,
    Origin,
    SL,
    Sub,
)

_ORIGIN = Origin("generated", NO_SPAN)


def random_constraint_set(rng: random.Random, force_sat: bool):
    """One rule-shaped constraint set within the brute-force oracle bounds."""
    n_kvars = rng.randint(0, 5)
    kvars = [KindVar(i) for i in range(n_kvars)]
    target = {v.id: rng.choice(ALL_CONCRETE_KINDS) for v in kvars}

    def operand():
        if kvars and rng.random() < 0.6:
            return rng.choice(kvars)
        return rng.choice(ALL_CONCRETE_KINDS)

    def value(k):
        return target[k.id] if isinstance(k, KindVar) else k

    out = []
    next_mvar = 0
    for _ in range(rng.randint(1, 8)):
        if next_mvar >= 5:
            break
        shape = rng.choice(("sub", "sub", "seq", "record", "quantifier"))
        if shape == "sub":
            for _ in range(40):
                lhs, rhs = operand(), operand()
                if not force_sat or subkind(value(lhs), value(rhs)):
                    out.append(Sub(lhs, rhs, _ORIGIN))
                    break
        elif shape == "seq":
            args = (operand(), operand())
            if force_sat and not all(subkind(value(a), SL) for a in args):
                continue
            phi = MVar(next_mvar)
            next_mvar += 1
            out.append(Sub(args[0], SL, _ORIGIN))
            out.append(Sub(args[1], SL, _ORIGIN))
            out.append(MultEq(phi, args, _ORIGIN))
        elif shape == "record":
            n = rng.randint(1, 3)
            args = tuple(operand() for _ in range(n))
            phi = MVar(next_mvar)
            next_mvar += 1
            result = MultKind(phi, Base.FUNCTIONAL)
            bundle = [MultEq(phi, args, _ORIGIN)]
            bundle.extend(Sub(a, result, _ORIGIN) for a in args)
            if force_sat:
                joined = MultKind(
                    mult_lub(mult_of(value(a)) for a in args), Base.FUNCTIONAL
                )
                if not all(subkind(value(a), joined) for a in args):
                    next_mvar -= 1
                    continue
            out.extend(bundle)
        else:
            phi = MVar(next_mvar)
            next_mvar += 1
            out.append(MultEq(phi, (operand(),), _ORIGIN))
    return out
