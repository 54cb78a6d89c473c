"""Concrete syntax for kinds, types, expressions and programs.

Declarations start at column 1; continuation lines must be indented (a token
at column 1 hard-terminates the enclosing declaration). `--` comments run to
the end of the line. The full grammar ships in docs/grammar.ebnf.

Omitted kind annotations on `forall`/`rec`/type-abstraction binders receive
fresh kind variables. Value signatures are prenex-generalized: every free
lowercase type identifier is quantified at the front, in source order, with
a fresh kind variable. `type` abbreviations that mention their own name
expand to recursive types; all abbreviation uses are expanded before
constraint generation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CyclicAbbreviation, DuplicateName, ParseError, UnknownTypeName
from .syntax import (
    Abs,
    App,
    Arrow,
    Base,
    BaseType,
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
    MVar,
    New,
    Polarity,
    Program,
    Rec,
    Record,
    RecordLit,
    Select,
    Semi,
    Skip,
    Span,
    TAbs,
    TApp,
    TVar,
    TypeAbbrev,
    TypeName,
    Type,
    UnitLit,
    Unit,
    ValueDecl,
    Var,
    Variant,
    View,
    free_type_vars,
)

KEYWORDS = {
    "type", "forall", "rec", "let", "in", "case", "of", "match", "with",
    "new", "select", "send", "receive", "close", "fork",
}
BUILTIN_KEYWORDS = {"send", "receive", "close", "fork"}
RESERVED_TYPE_NAMES = {"Skip", "End", "Int", "Bool", "Char", "S", "T"}
BASE_TYPE_NAMES = {"Int", "Bool", "Char"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.line, self.col + max(len(self.text), 1))


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(src)

    def push(kind: str, text: str) -> None:
        toks.append(Token(kind, text, line, col))

    while i < n:
        c = src[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        start_col = col

        def grab(text: str, kind: str) -> bool:
            nonlocal i, col
            if src.startswith(text, i):
                toks.append(Token(kind, text, line, start_col))
                i += len(text)
                col += len(text)
                return True
            return False

        if c == "'":
            j = i + 1
            if j < n and src[j] in "km":
                k = j + 1
                while k < n and src[k].isdigit():
                    k += 1
                if k > j + 1:
                    text = src[i:k]
                    push("kvar" if src[j] == "k" else "mvar", text)
                    col += k - i
                    i = k
                    continue
            raise ParseError(Span(line, col, line, col + 1), "'k<n> or 'm<n>", repr(c))
        if c == "*":
            if grab("*S", "kind") or grab("*T", "kind") or grab("*->", "arrow"):
                continue
            raise ParseError(Span(line, col, line, col + 1), "*S, *T or *->", repr(c))
        if c == "1":
            if grab("1->", "linarrow") or grab("1()", "linunit"):
                continue
            if (src.startswith("1S", i) or src.startswith("1T", i)) and not (
                i + 2 < n and _is_ident_char(src[i + 2])
            ):
                push("kind", src[i : i + 2])
                i += 2
                col += 2
                continue
            # fall through to the integer case
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            push("int", src[i:j])
            col += j - i
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and _is_ident_char(src[j]):
                j += 1
            text = src[i:j]
            if text in KEYWORDS:
                push(text, text)
            elif text[0].isupper():
                push("upper", text)
            else:
                push("ident", text)
            col += j - i
            i = j
            continue
        if grab("/\\", "tyabs"):
            continue
        if grab("->", "arrow") or grab("=>", "fatarrow"):
            continue
        for sym, kind in (
            ("(", "lparen"), (")", "rparen"), ("{", "lbrace"), ("}", "rbrace"),
            ("<", "lt"), (">", "gt"), ("[", "lbrack"), ("]", "rbrack"),
            (",", "comma"), (":", "colon"), (";", "semi"), ("=", "eq"),
            (".", "dot"), ("!", "bang"), ("?", "quest"), ("+", "plus"),
            ("&", "amp"), ("\\", "lambda"),
        ):
            if grab(sym, kind):
                break
        else:
            raise ParseError(Span(line, col, line, col + 1), "a token", repr(c))
    toks.append(Token("eof", "", line, col))
    return toks


def _with_breaks(toks: list[Token]) -> list[Token]:
    out: list[Token] = []
    for t in toks:
        if t.col == 1 and t.kind != "eof":
            out.append(Token("break", "", t.line, t.col))
        out.append(t)
    return out


_TOKEN_SHOW = {
    "eof": "end of input",
    "break": "start of line (declarations start at column 1)",
}


class _Parser:
    def __init__(self, tokens: list[Token], supply: FreshSupply) -> None:
        self.toks = tokens
        self.pos = 0
        self.supply = supply

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def advance(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(t.span, what or repr(kind), self._show(t))
        return self.advance()

    def _show(self, t: Token) -> str:
        return _TOKEN_SHOW.get(t.kind, repr(t.text))

    def fail(self, expected: str) -> ParseError:
        t = self.peek()
        return ParseError(t.span, expected, self._show(t))

    def skip_breaks(self) -> None:
        while self.at("break"):
            self.advance()

    def _span_from(self, start: Token) -> Span:
        prev = self.toks[max(self.pos - 1, 0)]
        return Span(start.line, start.col, prev.line, prev.col + len(prev.text))

    # -- kinds ---------------------------------------------------------------

    def parse_kind(self) -> Kind:
        t = self.peek()
        if t.kind == "kind":
            self.advance()
            mult = Mult.UN if t.text[0] == "*" else Mult.LIN
            base = Base.SESSION if t.text[1] == "S" else Base.FUNCTIONAL
            return MultKind(mult, base)
        if t.kind == "kvar":
            self.advance()
            return KindVar(int(t.text[2:]))
        if t.kind == "mvar":
            self.advance()
            b = self.expect("upper", "S or T")
            if b.text not in ("S", "T"):
                raise ParseError(b.span, "S or T", repr(b.text))
            base = Base.SESSION if b.text == "S" else Base.FUNCTIONAL
            return MultKind(MVar(int(t.text[2:])), base)
        raise self.fail("a kind (*S, 1S, *T, 1T)")

    def _opt_binder_kind(self) -> Kind:
        if self.at("colon"):
            self.advance()
            return self.parse_kind()
        return self.supply.fresh_kvar()

    # -- types -----------------------------------------------------------------

    def parse_type(self) -> Type:
        start = self.peek()
        if self.at("forall", "rec"):
            kw = self.advance()
            name = self.expect("ident", "a type variable").text
            kind = self._opt_binder_kind()
            self.expect("dot", "'.'")
            body = self.parse_type()
            node = Forall if kw.kind == "forall" else Rec
            return node(name, kind, body, self._span_from(start))
        t = self.parse_semi_type()
        if self.at("arrow", "linarrow"):
            mult = Mult.UN if self.advance().kind == "arrow" else Mult.LIN
            cod = self.parse_type()
            return Arrow(mult, t, cod, self._span_from(start))
        return t

    def parse_semi_type(self) -> Type:
        start = self.peek()
        t = self.parse_prefix_type()
        if self.at("semi"):
            self.advance()
            tail = self.parse_semi_type()
            return Semi(t, tail, self._span_from(start))
        return t

    def parse_prefix_type(self) -> Type:
        start = self.peek()
        if self.at("bang", "quest"):
            pol = Polarity.OUT if self.advance().kind == "bang" else Polarity.IN
            payload = self.parse_atom_type()
            return Msg(pol, payload, self._span_from(start))
        return self.parse_atom_type()

    def parse_atom_type(self) -> Type:
        start = self.peek()
        if self.at("lparen"):
            self.advance()
            if self.at("rparen"):
                self.advance()
                return Unit(Mult.UN, self._span_from(start))
            t = self.parse_type()
            if self.at("comma"):
                self.advance()
                u = self.parse_type()
                self.expect("rparen", "')'")
                sp = self._span_from(start)
                return Record((("fst", t), ("snd", u)), sp)
            self.expect("rparen", "')'")
            return t
        if self.at("linunit"):
            self.advance()
            return Unit(Mult.LIN, self._span_from(start))
        if self.at("plus", "amp"):
            view = View.INTERNAL if self.advance().kind == "plus" else View.EXTERNAL
            self.expect("lbrace", "'{'")
            entries = self._labeled_types()
            self.expect("rbrace", "'}'")
            return Choice(view, entries, self._span_from(start))
        if self.at("lbrace"):
            self.advance()
            entries = self._labeled_types()
            self.expect("rbrace", "'}'")
            return Record(entries, self._span_from(start))
        if self.at("lt"):
            self.advance()
            entries = self._labeled_types()
            self.expect("gt", "'>'")
            return Variant(entries, self._span_from(start))
        if self.at("upper"):
            t = self.advance()
            sp = self._span_from(start)
            if t.text == "Skip":
                return Skip(sp)
            if t.text == "End":
                return End(sp)
            if t.text in BASE_TYPE_NAMES:
                return BaseType(t.text, sp)
            return TypeName(t.text, sp)
        if self.at("ident"):
            t = self.advance()
            return TVar(t.text, self._span_from(start))
        raise self.fail("a type")

    def _labeled_types(self) -> tuple:
        entries = []
        while True:
            label = self._parse_label()
            self.expect("colon", "':'")
            entries.append((label, self.parse_type()))
            if not self.at("comma"):
                break
            self.advance()
        labels = [l for l, _ in entries]
        if len(set(labels)) != len(labels):
            raise ParseError(self.peek().span, "pairwise distinct labels", str(labels))
        return tuple(entries)

    def _parse_label(self) -> str:
        if self.at("ident", "upper"):
            return self.advance().text
        raise self.fail("a label")

    # -- expressions -------------------------------------------------------------

    def parse_expr(self) -> Expr:
        start = self.peek()
        if self.at("lambda"):
            self.advance()
            param = self.expect("ident", "a parameter name").text
            self.expect("colon", "':' (parameter type annotation)")
            ptype = self.parse_semi_type()
            if not self.at("arrow", "linarrow"):
                raise self.fail("'->' or '1->'")
            mult = Mult.UN if self.advance().kind == "arrow" else Mult.LIN
            body = self.parse_expr()
            return Abs(mult, param, ptype, body, self._span_from(start))
        if self.at("tyabs"):
            self.advance()
            var = self.expect("ident", "a type variable").text
            kind = self._opt_binder_kind()
            self.expect("fatarrow", "'=>'")
            body = self.parse_expr()
            return TAbs(var, kind, body, self._span_from(start))
        if self.at("let"):
            return self._parse_let(start)
        if self.at("case", "match"):
            kw = self.advance()
            scrut = self.parse_expr()
            self.expect("of" if kw.kind == "case" else "with", f"'{'of' if kw.kind == 'case' else 'with'}'")
            self.expect("lbrace", "'{'")
            branches = self._parse_branches()
            self.expect("rbrace", "'}'")
            node = Case if kw.kind == "case" else Match
            return node(scrut, branches, self._span_from(start))
        return self.parse_app_chain()

    def _parse_let(self, start: Token) -> Expr:
        self.advance()  # let
        if self.at("lparen"):
            self.advance()
            if self.at("rparen"):
                self.advance()
                binders = None  # unit pattern
            else:
                x = self.expect("ident", "a variable").text
                self.expect("comma", "','")
                y = self.expect("ident", "a variable").text
                self.expect("rparen", "')'")
                binders = (("fst", x), ("snd", y))
        elif self.at("lbrace"):
            self.advance()
            entries = []
            while True:
                label = self._parse_label()
                self.expect("eq", "'='")
                entries.append((label, self.expect("ident", "a variable").text))
                if not self.at("comma"):
                    break
                self.advance()
            self.expect("rbrace", "'}'")
            binders = tuple(entries)
        else:
            raise self.fail("'()', '(x, y)' or '{label = x, ...}'")
        self.expect("eq", "'='")
        scrut = self.parse_expr()
        self.expect("in", "'in'")
        body = self.parse_expr()
        sp = self._span_from(start)
        if binders is None:
            return LetUnit(scrut, body, sp)
        return LetRecord(binders, scrut, body, sp)

    def _parse_branches(self) -> tuple:
        branches = []
        while True:
            label = self._parse_label()
            binder = self.expect("ident", "a binder").text
            self.expect("arrow", "'->'")
            branches.append((label, binder, self.parse_expr()))
            if not self.at("comma"):
                break
            self.advance()
        return tuple(branches)

    _OPERAND_START = (
        "lparen", "lbrace", "int", "ident",
        "new", "select", "send", "receive", "close", "fork",
    )

    def parse_app_chain(self) -> Expr:
        start = self.peek()
        e = self.parse_operand()
        while True:
            if self.at("lbrack"):
                self.advance()
                t = self.parse_type()
                self.expect("rbrack", "']'")
                e = TApp(e, t, self._span_from(start))
            elif self.at(*self._OPERAND_START):
                arg = self.parse_operand()
                e = App(e, arg, self._span_from(start))
            else:
                return e

    def parse_operand(self) -> Expr:
        start = self.peek()
        if self.at("lparen"):
            self.advance()
            if self.at("rparen"):
                self.advance()
                return UnitLit(self._span_from(start))
            if self.at("upper"):
                label = self.advance().text
                payload = self.parse_operand()
                self.expect("colon", "':' (injections require a variant ascription)")
                vt = self.parse_type()
                self.expect("rparen", "')'")
                return Inject(label, vt, payload, self._span_from(start))
            e = self.parse_expr()
            if self.at("comma"):
                self.advance()
                e2 = self.parse_expr()
                self.expect("rparen", "')'")
                sp = self._span_from(start)
                return RecordLit((("fst", e), ("snd", e2)), sp)
            if self.at("colon"):
                self.advance()
                vt = self.parse_type()
                self.expect("rparen", "')'")
                if isinstance(e, App) and isinstance(e.fun, Var):
                    return Inject(e.fun.name, vt, e.arg, self._span_from(start))
                raise ParseError(
                    self.peek().span, "an injection of the form (label expr : type)",
                    "a more complex expression",
                )
            self.expect("rparen", "')'")
            return e
        if self.at("lbrace"):
            self.advance()
            entries = []
            while True:
                label = self._parse_label()
                self.expect("eq", "'='")
                entries.append((label, self.parse_expr()))
                if not self.at("comma"):
                    break
                self.advance()
            self.expect("rbrace", "'}'")
            labels = [l for l, _ in entries]
            if len(set(labels)) != len(labels):
                raise ParseError(self.peek().span, "pairwise distinct labels", str(labels))
            return RecordLit(tuple(entries), self._span_from(start))
        if self.at("int"):
            t = self.advance()
            return IntLit(int(t.text), self._span_from(start))
        if self.at("ident"):
            t = self.advance()
            return Var(t.text, self._span_from(start))
        if self.at("send", "receive", "close", "fork"):
            t = self.advance()
            return Const(t.text, self._span_from(start))
        if self.at("new"):
            self.advance()
            t = self.parse_semi_type()
            return New(t, self._span_from(start))
        if self.at("select"):
            self.advance()
            label = self._parse_label()
            scrut = self.parse_operand()
            return Select(label, scrut, self._span_from(start))
        raise self.fail("an expression")

    # -- declarations -------------------------------------------------------------

    def parse_program(self) -> Program:
        decls = []
        type_names: set[str] = set()
        value_names: set[str] = set()
        self.skip_breaks()
        while not self.at("eof"):
            d = self._parse_decl()
            if isinstance(d, TypeAbbrev):
                if d.name in type_names:
                    raise DuplicateName(f"type {d.name} is declared twice", d.span)
                type_names.add(d.name)
            else:
                if d.name in value_names:
                    raise DuplicateName(f"{d.name} is declared twice", d.span)
                value_names.add(d.name)
            decls.append(d)
            self.skip_breaks()
        return Program(tuple(decls))

    def _parse_decl(self):
        start = self.peek()
        if start.kind == "ident" and start.text == "data" and self.peek(1).kind == "upper":
            raise ParseError(
                start.span,
                "a declaration (datatypes are not supported; encode them with a"
                " variant carried by a `type` abbreviation)",
                "'data'",
            )
        if self.at("type"):
            self.advance()
            name_tok = self.expect("upper", "a type name")
            if name_tok.text in RESERVED_TYPE_NAMES:
                raise DuplicateName(f"{name_tok.text} is a reserved type name", name_tok.span)
            kind = self._opt_binder_kind()
            self.expect("eq", "'='")
            body = self.parse_type()
            return TypeAbbrev(name_tok.text, kind, body, self._span_from(start))
        name_tok = self.expect("ident", "a declaration")
        self.expect("colon", "':' (a signature)")
        signature = self._generalize(self.parse_type())
        self.skip_breaks()
        body_name = self.expect("ident", f"the body of {name_tok.text}")
        if body_name.text != name_tok.text:
            raise ParseError(
                body_name.span, f"a body for {name_tok.text}", repr(body_name.text)
            )
        self.expect("eq", "'='")
        body = self.parse_expr()
        return ValueDecl(name_tok.text, signature, body, self._span_from(start))

    def _generalize(self, t: Type) -> Type:
        free = free_type_vars(t)
        kinds = [self.supply.fresh_kvar() for _ in free]
        for name, kind in reversed(list(zip(free, kinds))):
            t = Forall(name, kind, t, t.span)
        return t


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def parse_kind(src: str) -> Kind:
    p = _Parser(tokenize(src), FreshSupply())
    k = p.parse_kind()
    p.expect("eof", "end of input")
    return k


def parse_type(src: str, supply: FreshSupply | None = None) -> Type:
    p = _Parser(tokenize(src), supply or FreshSupply())
    t = p.parse_type()
    p.expect("eof", "end of input")
    return t


def parse_expr(src: str, supply: FreshSupply | None = None) -> Expr:
    p = _Parser(tokenize(src), supply or FreshSupply())
    e = p.parse_expr()
    p.expect("eof", "end of input")
    return e


def parse_source(src: str, supply: FreshSupply | None = None) -> Program:
    """Parse a program without expanding type abbreviations."""
    p = _Parser(_with_breaks(tokenize(src)), supply or FreshSupply())
    return p.parse_program()


def parse_program(src: str, supply: FreshSupply | None = None) -> Program:
    """Parse a program and expand all abbreviation uses."""
    return expand_program(parse_source(src, supply))


# ---------------------------------------------------------------------------
# Abbreviation expansion
# ---------------------------------------------------------------------------


def _type_names_in(t: Type) -> set[str]:
    names: set[str] = set()

    def go(t) -> None:
        if isinstance(t, TypeName):
            names.add(t.name)
        elif isinstance(t, Msg):
            go(t.payload)
        elif isinstance(t, (Choice, Record, Variant)):
            for _, u in (t.branches if isinstance(t, Choice) else t.fields):
                go(u)
        elif isinstance(t, Semi):
            go(t.head)
            go(t.tail)
        elif isinstance(t, Arrow):
            go(t.dom)
            go(t.cod)
        elif isinstance(t, (Forall, Rec)):
            go(t.body)

    go(t)
    return names


def _replace_type_name(t: Type, name: str, replacement: Type) -> Type:
    def go(t):
        if isinstance(t, TypeName):
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
        if isinstance(t, Forall):
            return Forall(t.var, t.kind, go(t.body), t.span)
        if isinstance(t, Rec):
            return Rec(t.var, t.kind, go(t.body), t.span)
        return t

    return go(t)


def _rec_var_for(name: str, body: Type) -> str:
    used = set(free_type_vars(body))
    candidate = name[0].lower() + name[1:]
    while candidate in used:
        candidate += "'"
    return candidate


class _Expander:
    def __init__(self, program: Program) -> None:
        self.abbrevs = {d.name: d for d in program.decls if isinstance(d, TypeAbbrev)}
        self.memo: dict[str, Type] = {}
        self.in_progress: set[str] = set()

    def expansion(self, name: str, span: Span) -> Type:
        if name in self.memo:
            return self.memo[name]
        if name not in self.abbrevs:
            raise UnknownTypeName(f"unknown type name {name}", span)
        if name in self.in_progress:
            raise CyclicAbbreviation(
                f"type {name} is part of a mutual abbreviation cycle", span
            )
        self.in_progress.add(name)
        decl = self.abbrevs[name]
        body = decl.body
        if name in _type_names_in(body):
            var = _rec_var_for(name, body)
            body = Rec(var, decl.kind, _replace_type_name(body, name, TVar(var, decl.span)), decl.span)
        result = self.expand_type(body)
        self.in_progress.discard(name)
        self.memo[name] = result
        return result

    def expand_type(self, t: Type) -> Type:
        if isinstance(t, TypeName):
            return self.expansion(t.name, t.span)
        if isinstance(t, Msg):
            return Msg(t.polarity, self.expand_type(t.payload), t.span)
        if isinstance(t, Choice):
            return Choice(t.view, tuple((l, self.expand_type(u)) for l, u in t.branches), t.span)
        if isinstance(t, Record):
            return Record(tuple((l, self.expand_type(u)) for l, u in t.fields), t.span)
        if isinstance(t, Variant):
            return Variant(tuple((l, self.expand_type(u)) for l, u in t.fields), t.span)
        if isinstance(t, Semi):
            return Semi(self.expand_type(t.head), self.expand_type(t.tail), t.span)
        if isinstance(t, Arrow):
            return Arrow(t.mult, self.expand_type(t.dom), self.expand_type(t.cod), t.span)
        if isinstance(t, Forall):
            return Forall(t.var, t.kind, self.expand_type(t.body), t.span)
        if isinstance(t, Rec):
            return Rec(t.var, t.kind, self.expand_type(t.body), t.span)
        return t

    def expand_expr(self, e: Expr) -> Expr:
        go_t, go = self.expand_type, self.expand_expr
        if isinstance(e, Abs):
            return Abs(e.mult, e.param, go_t(e.param_type), go(e.body), e.span)
        if isinstance(e, TAbs):
            return TAbs(e.var, e.kind, go(e.body), e.span)
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


def expand_program(program: Program) -> Program:
    """Resolve every abbreviation use; self-references become recursive types."""
    ex = _Expander(program)
    decls = []
    for d in program.decls:
        if isinstance(d, TypeAbbrev):
            decls.append(TypeAbbrev(d.name, d.kind, ex.expansion(d.name, d.span), d.span))
        else:
            decls.append(ValueDecl(d.name, ex.expand_type(d.signature), ex.expand_expr(d.body), d.span))
    return Program(tuple(decls))
