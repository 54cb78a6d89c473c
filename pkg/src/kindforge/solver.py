"""Fixpoint constraint solving over the finite kind lattice.

All kind variables start at the lattice top (1T) and all multiplicity
variables at lin; iterating the constraints only ever moves assignments
downward, so the loop reaches the greatest fixpoint. Checked constraints
that fail abort with the offending constraint's provenance.

`brute_force_solve` is the independent testing oracle: it enumerates every
total assignment and returns the pointwise-greatest satisfying one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    IterationBoundExceeded,
    SolveError,
    TooLarge,
    UnresolvedVariable,
)
from .lattice import glb, lub, mult_lub, mult_of, subkind
from .syntax import (
    Constraint,
    Kind,
    KindVar,
    Mult,
    MultEq,
    MultKind,
    MVar,
    SU,
    Sub,
    TL,
    ALL_CONCRETE_KINDS,
    pretty_constraint,
    pretty_kind,
    pretty_mult,
)


@dataclass
class Solution:
    """Total assignment for every variable of a constraint set."""

    kind_vars: dict[int, MultKind] = field(default_factory=dict)
    mult_vars: dict[int, Mult] = field(default_factory=dict)

    def copy(self) -> "Solution":
        return Solution(dict(self.kind_vars), dict(self.mult_vars))

    def merge(self, other: "Solution") -> None:
        self.kind_vars.update(other.kind_vars)
        self.mult_vars.update(other.mult_vars)


@dataclass
class SolverConfig:
    optimize: bool = True
    max_iterations: int | None = None  # default 3x the variable count
    trace: bool = False


@dataclass
class SolveStats:
    iterations: int = 0
    updates: int = 0
    trace: list[str] = field(default_factory=list)


def collect_vars(constraints) -> tuple[list[int], list[int]]:
    """Kind/multiplicity variable ids mentioned, in first-appearance order."""
    kvars: dict[int, None] = {}
    mvars: dict[int, None] = {}

    def kind(k: Kind) -> None:
        if isinstance(k, KindVar):
            kvars.setdefault(k.id)
        elif isinstance(k.mult, MVar):
            mvars.setdefault(k.mult.id)

    for c in constraints:
        if isinstance(c, Sub):
            kind(c.lhs)
            kind(c.rhs)
        else:
            mvars.setdefault(c.var.id)
            for k in c.args:
                kind(k)
    return list(kvars), list(mvars)


def resolve(k: Kind, solution: Solution) -> MultKind:
    """Substitute the solution into a kind, yielding a fully concrete one."""
    if isinstance(k, KindVar):
        if k.id not in solution.kind_vars:
            raise UnresolvedVariable(f"kind variable 'k{k.id} missing from the solution")
        return solution.kind_vars[k.id]
    if isinstance(k.mult, MVar):
        if k.mult.id not in solution.mult_vars:
            raise UnresolvedVariable(
                f"multiplicity variable 'm{k.mult.id} missing from the solution"
            )
        return MultKind(solution.mult_vars[k.mult.id], k.base)
    return k


def _is_ground(k: Kind) -> bool:
    return isinstance(k, MultKind) and isinstance(k.mult, Mult)


def solve_with_stats(
    constraints,
    config: SolverConfig | None = None,
    initial: Solution | None = None,
) -> tuple[Solution, SolveStats]:
    config = config or SolverConfig()
    constraints = list(constraints)
    kvars, mvars = collect_vars(constraints)

    sigma = Solution({i: TL for i in kvars}, {i: Mult.LIN for i in mvars})
    if initial is not None:
        sigma.kind_vars.update({i: initial.kind_vars[i] for i in kvars if i in initial.kind_vars})
        sigma.mult_vars.update({i: initial.mult_vars[i] for i in mvars if i in initial.mult_vars})

    max_iter = config.max_iterations
    if max_iter is None:
        max_iter = max(3 * (len(kvars) + len(mvars)), 4)

    stats = SolveStats()
    remaining = constraints
    while True:
        stats.iterations += 1
        if stats.iterations > max_iter:
            raise IterationBoundExceeded(
                f"no fixpoint after {max_iter} iterations over {len(constraints)} constraints"
            )
        changed = False
        keep = []
        for c in remaining:
            if isinstance(c, Sub):
                if isinstance(c.lhs, KindVar):
                    # Update: meet the variable with the resolved right side.
                    rhs = resolve(c.rhs, sigma)
                    old = sigma.kind_vars[c.lhs.id]
                    new = glb(old, rhs)
                    if new != old:
                        assert subkind(new, old), "assignments must only move down"
                        sigma.kind_vars[c.lhs.id] = new
                        changed = True
                        stats.updates += 1
                        if config.trace:
                            stats.trace.append(_trace_line(stats.iterations, f"'k{c.lhs.id}", pretty_kind(old), pretty_kind(new), c))
                    if config.optimize and (_is_ground(c.rhs) or sigma.kind_vars[c.lhs.id] == SU):
                        continue  # can never update again
                    keep.append(c)
                elif isinstance(c.rhs, KindVar):
                    # Check against the variable's current assignment.
                    lhs = resolve(c.lhs, sigma)
                    bound = sigma.kind_vars[c.rhs.id]
                    if not subkind(lhs, bound):
                        raise SolveError(c, lhs, bound, c.origin)
                    if config.optimize and lhs == SU:
                        continue  # bottom is below everything, forever satisfied
                    keep.append(c)
                else:
                    lhs, rhs = resolve(c.lhs, sigma), resolve(c.rhs, sigma)
                    if not subkind(lhs, rhs):
                        raise SolveError(c, lhs, rhs, c.origin)
                    # Satisfied with no variable ends: drop it.
            else:
                computed = mult_lub(mult_of(resolve(k, sigma)) for k in c.args)
                old = sigma.mult_vars[c.var.id]
                assert not (computed is Mult.LIN and old is Mult.UN), (
                    "multiplicity equations only tighten"
                )
                if computed is Mult.UN and old is Mult.LIN:
                    sigma.mult_vars[c.var.id] = Mult.UN
                    changed = True
                    stats.updates += 1
                    if config.trace:
                        stats.trace.append(_trace_line(stats.iterations, f"'m{c.var.id}", pretty_mult(old), pretty_mult(Mult.UN), c))
                if sigma.mult_vars[c.var.id] is Mult.UN:
                    continue  # cannot tighten further
                keep.append(c)
        remaining = keep
        if not changed:
            break
    return sigma, stats


def _trace_line(iteration: int, var: str, old: str, new: str, c: Constraint) -> str:
    return f"iter {iteration}: {var} {old} -> {new} (by {pretty_constraint(c)} @ {c.origin})"


def solve(
    constraints,
    config: SolverConfig | None = None,
    initial: Solution | None = None,
) -> Solution:
    """Greatest solution of the constraint set, or SolveError."""
    solution, _ = solve_with_stats(constraints, config, initial)
    return solution


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

_ORACLE_LIMIT = 6


def satisfies(constraints, solution: Solution) -> bool:
    for c in constraints:
        if isinstance(c, Sub):
            if not subkind(resolve(c.lhs, solution), resolve(c.rhs, solution)):
                return False
        else:
            computed = mult_lub(mult_of(resolve(k, solution)) for k in c.args)
            if solution.mult_vars[c.var.id] is not computed:
                return False
    return True


def brute_force_solve(constraints) -> Solution | None:
    """Pointwise-greatest satisfying assignment by full enumeration, or None.

    Stays independent of `solve`: satisfaction is evaluated directly from the
    constraint meanings and the maximum is taken over all assignments.
    """
    constraints = list(constraints)
    kvars, mvars = collect_vars(constraints)
    if len(kvars) > _ORACLE_LIMIT or len(mvars) > _ORACLE_LIMIT:
        raise TooLarge(
            f"brute force limited to {_ORACLE_LIMIT}+{_ORACLE_LIMIT} variables,"
            f" got {len(kvars)}+{len(mvars)}"
        )
    best: Solution | None = None
    for kv in itertools.product(ALL_CONCRETE_KINDS, repeat=len(kvars)):
        for mv in itertools.product((Mult.UN, Mult.LIN), repeat=len(mvars)):
            candidate = Solution(dict(zip(kvars, kv)), dict(zip(mvars, mv)))
            if not satisfies(constraints, candidate):
                continue
            if best is None:
                best = candidate
            else:
                best = Solution(
                    {i: lub(best.kind_vars[i], candidate.kind_vars[i]) for i in kvars},
                    {
                        i: (Mult.LIN if Mult.LIN in (best.mult_vars[i], candidate.mult_vars[i]) else Mult.UN)
                        for i in mvars
                    },
                )
    if best is not None:
        # Satisfying assignments are closed under join (the lattice is
        # distributive), so the accumulated maximum must itself satisfy.
        assert satisfies(constraints, best)
    return best
