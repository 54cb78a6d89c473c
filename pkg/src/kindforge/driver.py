"""End-to-end inference: parse, generate, solve, annotate, report.

`infer_source` validates a program as written, then re-infers it with all
written kind annotations replaced by fresh variables to judge how general
each annotation could have been. Annotation verdicts:

  exact          the written kind is the most general one
  more-general   the annotation could be relaxed (written below inferred)
  inferred-fresh the slot had no annotation; the inferred kind fills it

Declarations are solved independently; value declarations must mirror their
signatures structurally (one type abstraction per prenex quantifier, checked
by name), and previously inferred declarations are available to later ones
as constants at their solved kinds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import InternalError, KindforgeError, TypeMismatch
from .exprgen import default_builtins, gen_expr, match_types
from .kindgen import gen_type
from .lattice import subkind
from .parser import expand_program, parse_source
from .solver import Solution, SolverConfig, solve_with_stats
from .syntax import (
    Abs,
    App,
    Arrow,
    Case,
    Choice,
    ConstraintBag,
    Expr,
    Forall,
    FreshSupply,
    Inject,
    Kind,
    KindVar,
    LetRecord,
    LetUnit,
    Match,
    Msg,
    MultKind,
    New,
    Origin,
    Program,
    Rec,
    Record,
    RecordLit,
    Select,
    Semi,
    Span,
    Sub,
    TAbs,
    TApp,
    TL,
    Type,
    TypeAbbrev,
    ValueDecl,
    Variant,
    expr_size,
    is_concrete_kind,
    pretty_kind,
    pretty_program,
    pretty_type,
    type_size,
)

CATEGORIES = ("type-abbreviation", "universal", "recursive", "type-abstraction")
VERDICTS = ("exact", "more-general", "inferred-fresh")


# ---------------------------------------------------------------------------
# Annotation stripping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Slot:
    """One kind-annotation site and the variable standing in for it."""

    category: str
    span: Span
    written: MultKind | None  # None when the source omitted the annotation
    kvar_id: int


class _Stripper:
    def __init__(self, supply: FreshSupply) -> None:
        self.supply = supply
        self.slots: list[Slot] = []

    def slot(self, category: str, span: Span, kind: Kind) -> Kind:
        if isinstance(kind, KindVar):
            self.slots.append(Slot(category, span, None, kind.id))
            return kind
        fresh = self.supply.fresh_kvar()
        self.slots.append(Slot(category, span, kind, fresh.id))
        return fresh

    def strip_type(self, t: Type) -> Type:
        go = self.strip_type
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
        if isinstance(t, Forall):
            return Forall(t.var, self.slot("universal", t.span, t.kind), go(t.body), t.span)
        if isinstance(t, Rec):
            return Rec(t.var, self.slot("recursive", t.span, t.kind), go(t.body), t.span)
        return t

    def strip_expr(self, e: Expr) -> Expr:
        go, go_t = self.strip_expr, self.strip_type
        if isinstance(e, Abs):
            return Abs(e.mult, e.param, go_t(e.param_type), go(e.body), e.span)
        if isinstance(e, TAbs):
            return TAbs(e.var, self.slot("type-abstraction", e.span, e.kind), go(e.body), e.span)
        if isinstance(e, App):
            return App(go(e.fun), go(e.arg), e.span)
        if isinstance(e, TApp):
            return TApp(go(e.fun), go_t(e.type_arg), e.span)
        if isinstance(e, RecordLit):
            return RecordLit(tuple((l, go(x)) for l, x in e.fields), e.span)
        if isinstance(e, LetRecord):
            return LetRecord(e.binders, go(e.scrutinee), go(e.body), e.span)
        if isinstance(e, Inject):
            return Inject(e.label, go_t(e.variant_type), go(e.payload), e.span)
        if isinstance(e, LetUnit):
            return LetUnit(go(e.scrutinee), go(e.body), e.span)
        if isinstance(e, Case):
            return Case(go(e.scrutinee), tuple((l, x, go(b)) for l, x, b in e.branches), e.span)
        if isinstance(e, Match):
            return Match(go(e.scrutinee), tuple((l, x, go(b)) for l, x, b in e.branches), e.span)
        if isinstance(e, New):
            return New(go_t(e.channel_type), e.span)
        if isinstance(e, Select):
            return Select(e.label, go(e.scrutinee), e.span)
        return e

    def strip_value_decl(self, d: ValueDecl) -> ValueDecl:
        sig = self.strip_type(d.signature)
        quants = _prenex(sig)
        body = self._strip_body(d.body, quants, 0)
        return ValueDecl(d.name, sig, body, d.span)

    def _strip_body(self, e: Expr, quants, i: int) -> Expr:
        # Type abstractions mirroring the signature's quantifiers share the
        # signature's annotation slot; they are not separate sites. Written
        # kinds are rewired to the signature's stand-in variable; omitted
        # ones are already ignored by the peel and stay untouched.
        if isinstance(e, TAbs) and i < len(quants) and quants[i][0] == e.var:
            kind = e.kind if isinstance(e.kind, KindVar) else quants[i][1]
            return TAbs(e.var, kind, self._strip_body(e.body, quants, i + 1), e.span)
        return self.strip_expr(e)


def _prenex(t: Type) -> list:
    out = []
    while isinstance(t, Forall):
        out.append((t.var, t.kind))
        t = t.body
    return out


def strip_annotations(program: Program, supply: FreshSupply | None = None):
    """Replace written kind annotations by fresh variables.

    Returns the stripped program and the slot records (category, span,
    remembered kind, stand-in variable), in source order.
    """
    stripper = _Stripper(supply or FreshSupply())
    decls = []
    for d in program.decls:
        if isinstance(d, TypeAbbrev):
            kind = stripper.slot("type-abbreviation", d.span, d.kind)
            decls.append(TypeAbbrev(d.name, kind, stripper.strip_type(d.body), d.span))
        else:
            decls.append(stripper.strip_value_decl(d))
    return Program(tuple(decls)), stripper.slots


# ---------------------------------------------------------------------------
# Per-declaration generation and solving
# ---------------------------------------------------------------------------


@dataclass
class PipelineOutcome:
    program: Program
    solution: Solution
    dumps: list  # (decl name, constraint tuple) in declaration order
    traces: list[str]


def _peel(decl: ValueDecl):
    """Split the signature's prenex quantifiers against the body's spine."""
    delta: dict[str, Kind] = {}
    sig, body = decl.signature, decl.body
    peeled = 0
    while isinstance(sig, Forall) and isinstance(body, TAbs):
        if sig.var != body.var:
            raise TypeMismatch(
                f"type abstraction over {sig.var}",
                f"type abstraction over {body.var}",
                body.span,
            )
        if not isinstance(body.kind, KindVar):
            if isinstance(sig.kind, KindVar):
                raise TypeMismatch(
                    "an unannotated type abstraction (the signature quantifier has no annotation)",
                    pretty_kind(body.kind),
                    body.span,
                )
            if body.kind != sig.kind:
                raise TypeMismatch(pretty_kind(sig.kind), pretty_kind(body.kind), body.span)
        delta[sig.var] = sig.kind
        sig, body = sig.body, body.body
        peeled += 1
    return delta, sig, body, peeled


def run_pipeline(program: Program, supply: FreshSupply, config: SolverConfig) -> PipelineOutcome:
    """Generate and solve constraints declaration by declaration."""
    builtins = default_builtins()
    globals_: dict[str, Type] = {}
    merged = Solution()
    dumps: list = []
    traces: list[str] = []
    for d in program.decls:
        bag = ConstraintBag()
        if isinstance(d, TypeAbbrev):
            k = gen_type({}, d.body, supply, bag)
            # Self-referential abbreviations expand to a recursive type whose
            # binder shares this slot, making this constraint a duplicate.
            bag.add(Sub(k, d.kind, Origin("abbrev", d.span)))
        else:
            delta, sig, body, _ = _peel(d)
            t_syn, usage = gen_expr(delta, {}, body, builtins, globals_, supply, bag)
            if usage:
                raise InternalError(f"dangling usage context {sorted(usage)} in {d.name}", d.span)
            if not match_types(t_syn, sig, bag, Origin("signature", d.span)):
                raise TypeMismatch(pretty_type(sig), pretty_type(t_syn), d.span)
        solution, stats = solve_with_stats(bag.items, config)
        merged.merge(solution)
        dumps.append((d.name, bag.items))
        traces.extend(stats.trace)
        if isinstance(d, ValueDecl):
            globals_[d.name] = _resolve_type_kinds(d.signature, merged)
    return PipelineOutcome(program, merged, dumps, traces)


# ---------------------------------------------------------------------------
# Annotation write-back
# ---------------------------------------------------------------------------


def _resolve_slot(k: Kind, solution: Solution) -> Kind:
    if isinstance(k, KindVar):
        return solution.kind_vars.get(k.id, TL)
    return k


def _resolve_type_kinds(t: Type, solution: Solution) -> Type:
    go = lambda u: _resolve_type_kinds(u, solution)  # noqa: E731
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
    if isinstance(t, Forall):
        return Forall(t.var, _resolve_slot(t.kind, solution), go(t.body), t.span)
    if isinstance(t, Rec):
        return Rec(t.var, _resolve_slot(t.kind, solution), go(t.body), t.span)
    return t


def _resolve_expr_kinds(e: Expr, solution: Solution) -> Expr:
    go = lambda x: _resolve_expr_kinds(x, solution)  # noqa: E731
    go_t = lambda t: _resolve_type_kinds(t, solution)  # noqa: E731
    if isinstance(e, Abs):
        return Abs(e.mult, e.param, go_t(e.param_type), go(e.body), e.span)
    if isinstance(e, TAbs):
        return TAbs(e.var, _resolve_slot(e.kind, solution), go(e.body), e.span)
    if isinstance(e, App):
        return App(go(e.fun), go(e.arg), e.span)
    if isinstance(e, TApp):
        return TApp(go(e.fun), go_t(e.type_arg), e.span)
    if isinstance(e, RecordLit):
        return RecordLit(tuple((l, go(x)) for l, x in e.fields), e.span)
    if isinstance(e, LetRecord):
        return LetRecord(e.binders, go(e.scrutinee), go(e.body), e.span)
    if isinstance(e, Inject):
        return Inject(e.label, go_t(e.variant_type), go(e.payload), e.span)
    if isinstance(e, LetUnit):
        return LetUnit(go(e.scrutinee), go(e.body), e.span)
    if isinstance(e, Case):
        return Case(go(e.scrutinee), tuple((l, x, go(b)) for l, x, b in e.branches), e.span)
    if isinstance(e, Match):
        return Match(go(e.scrutinee), tuple((l, x, go(b)) for l, x, b in e.branches), e.span)
    if isinstance(e, New):
        return New(go_t(e.channel_type), e.span)
    if isinstance(e, Select):
        return Select(e.label, go(e.scrutinee), e.span)
    return e


def _annotate_value_decl(d: ValueDecl, solution: Solution) -> ValueDecl:
    sig = _resolve_type_kinds(d.signature, solution)
    quants = _prenex(sig)

    def go(e: Expr, i: int) -> Expr:
        if isinstance(e, TAbs) and i < len(quants) and quants[i][0] == e.var:
            return TAbs(e.var, quants[i][1], go(e.body, i + 1), e.span)
        return _resolve_expr_kinds(e, solution)

    return ValueDecl(d.name, sig, go(d.body, 0), d.span)


def annotate_program(program: Program, solution: Solution) -> Program:
    decls = []
    for d in program.decls:
        if isinstance(d, TypeAbbrev):
            decls.append(
                TypeAbbrev(
                    d.name,
                    _resolve_slot(d.kind, solution),
                    _resolve_type_kinds(d.body, solution),
                    d.span,
                )
            )
        else:
            decls.append(_annotate_value_decl(d, solution))
    return Program(tuple(decls))


# ---------------------------------------------------------------------------
# Whole-file inference
# ---------------------------------------------------------------------------


@dataclass
class AnnotationEntry:
    span: Span
    category: str
    written: MultKind | None
    inferred: MultKind
    verdict: str


@dataclass
class InferenceResult:
    annotated: Program
    solution: Solution
    annotations: list[AnnotationEntry]
    dumps: list
    traces: list[str]

    def emit(self) -> str:
        return pretty_program(self.annotated)


def infer_source(src: str, optimize: bool = True, explain: bool = False) -> InferenceResult:
    """Run the whole pipeline on program text. Raises KindforgeError."""
    supply = FreshSupply()
    raw = parse_source(src, supply)
    stripped, slots = strip_annotations(raw, supply)

    config = SolverConfig(optimize=optimize, trace=explain)
    as_written = run_pipeline(expand_program(raw), supply, config)

    if any(s.written is not None for s in slots):
        try:
            general = run_pipeline(
                expand_program(stripped), supply, SolverConfig(optimize=optimize)
            )
        except KindforgeError as err:
            raise InternalError(f"re-inference of the stripped program failed: {err}") from err
        general_solution = general.solution
    else:
        general_solution = as_written.solution

    annotations = []
    for s in slots:
        if s.written is None:
            inferred = as_written.solution.kind_vars.get(s.kvar_id, TL)
            verdict = "inferred-fresh"
        else:
            inferred = general_solution.kind_vars.get(s.kvar_id, TL)
            if inferred == s.written:
                verdict = "exact"
            elif subkind(s.written, inferred):
                verdict = "more-general"
            else:
                raise InternalError(
                    f"generality direction violated at {s.span}:"
                    f" written {pretty_kind(s.written)}, inferred {pretty_kind(inferred)}"
                )
        annotations.append(AnnotationEntry(s.span, s.category, s.written, inferred, verdict))

    annotated = annotate_program(as_written.program, as_written.solution)
    return InferenceResult(annotated, as_written.solution, annotations, as_written.dumps, as_written.traces)


def infer_file(path, optimize: bool = True, explain: bool = False) -> InferenceResult:
    return infer_source(Path(path).read_text(encoding="utf-8"), optimize, explain)


def program_size(program: Program) -> int:
    """Node count over an expanded program (types and expressions)."""
    total = 0
    for d in program.decls:
        if isinstance(d, TypeAbbrev):
            total += 1 + type_size(d.body)
        else:
            total += 1 + type_size(d.signature) + expr_size(d.body)
    return total


# ---------------------------------------------------------------------------
# Corpus harness
# ---------------------------------------------------------------------------


@dataclass
class FileReport:
    path: str
    ok: bool
    error: str | None
    annotations: list[AnnotationEntry] = field(default_factory=list)


@dataclass
class RunSummary:
    counts: dict = field(default_factory=dict)  # (category, verdict) -> int
    files_ok: int = 0
    files_failed: int = 0

    def add(self, entry: AnnotationEntry) -> None:
        key = (entry.category, entry.verdict)
        self.counts[key] = self.counts.get(key, 0) + 1

    def category_total(self, category: str) -> int:
        return sum(n for (c, _), n in self.counts.items() if c == category)

    def verdict_total(self, verdict: str) -> int:
        return sum(n for (_, v), n in self.counts.items() if v == verdict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def run_corpus(directory, optimize: bool = True):
    """Infer every `.fstk` file under `directory`; collect a category/verdict summary."""
    directory = Path(directory)
    summary = RunSummary()
    reports: list[FileReport] = []
    for path in sorted(directory.glob("*.fstk")):
        try:
            result = infer_file(path, optimize=optimize)
        except KindforgeError as err:
            summary.files_failed += 1
            reports.append(FileReport(str(path), False, str(err)))
            continue
        summary.files_ok += 1
        for entry in result.annotations:
            summary.add(entry)
        reports.append(FileReport(str(path), True, None, result.annotations))
    return summary, reports


def bundled_corpus_dir() -> Path:
    """Directory holding the corpus programs shipped with the package."""
    return Path(__file__).resolve().parent / "corpus"
