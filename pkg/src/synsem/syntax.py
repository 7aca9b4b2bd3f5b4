"""Concrete syntax: sorts, terms, ``.sig`` signature files and ``.rep`` representation files.

Terms are s-expressions with de Bruijn indices, ``(var 1)`` being the
innermost variable::

    (app[nat,bool] M N)    sort arguments in brackets, inferred when omitted
    (nats 3)               natural-number parameter
    (abs (var 1))          binders are implicit in the arity

Two printers are provided: ``canonical`` (parseable, fully annotated) and
``paper`` (``Abs``/``@`` notation with 1-based indices, for display).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence

from .rewrite import RewriteRule, RuleError, RuleSet
from .sorts import Sort, SortError, SortExpr, SortSignature, SortTranslation, SortVar, format_sort, validate_sort
from .templates import (
    ElaborationError,
    Meta,
    MetaDecl,
    NatVar,
    RawCon,
    RawMeta,
    RawSubst,
    RawTerm,
    RawVar,
    Subst1,
    elaborate,
)
from .terms import ArgSpec, Arity, Con, Term, TermError, TermSignature, Var
from .translation import NatTemplate, Representation, TranslationError, hole_decls

__all__ = [
    "ParseError",
    "tokenize",
    "parse_sort",
    "parse_context",
    "parse_term",
    "parse_template",
    "print_term",
    "print_template",
    "parse_signature",
    "print_signature",
    "parse_representation",
    "print_representation",
    "load_signature",
    "load_representation",
]


class ParseError(Exception):
    """A positioned diagnostic."""

    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = ""):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        where = f"{line}:{col}: " if line else ""
        if source:
            where = f"{source}:{where}"
        super().__init__(f"{where}{message}")


# -- lexer ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # 'atom', 'punct' or 'eof'
    text: str
    line: int
    col: int

    @property
    def pos(self) -> tuple[int, int]:
        return (self.line, self.col)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<punct>\|-|=>|->|[()\[\]{},;:=])
  | (?P<atom>[^\s()\[\]{},;:=\#]+)
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("punct", "atom"):
            tokens.append(Token(kind, m.group(), line, i - line_start + 1))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, source: str = ""):
        self.toks = tokenize(text)
        self.i = 0
        self.source = source

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.source)

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def eat(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def maybe(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def atom(self, what: str = "a name") -> Token:
        if self.tok.kind != "atom":
            found = self.tok.text or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def int_atom(self, what: str) -> int:
        t = self.atom(what)
        if not t.text.isdigit():
            raise self.error(f"expected {what}, found {t.text!r}", t)
        return int(t.text)

    def expect_eof(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # sorts ----------------------------------------------------------------

    def sort(self, sig: Optional[SortSignature], degree: int = 0) -> SortExpr:
        start = self.tok
        if self.maybe("("):
            head = self.atom("a sort constructor").text
            args = []
            while not self.at(")"):
                if self.tok.kind == "eof":
                    raise self.error("unbalanced parenthesis", start)
                args.append(self.sort(sig, degree))
            self.eat(")")
            s: SortExpr = Sort(head, tuple(args))
        else:
            t = self.atom("a sort")
            s = SortVar(int(t.text)) if t.text.isdigit() else Sort(t.text)
        if sig is not None:
            try:
                validate_sort(sig, s, degree)
            except SortError as e:
                raise self.error(str(e), start) from None
        return s

    def sort_list(self, sig, degree, close: str) -> list[SortExpr]:
        out = []
        if self.at(close):
            return out
        out.append(self.sort(sig, degree))
        while self.maybe(","):
            out.append(self.sort(sig, degree))
        return out

    # terms and templates -----------------------------------------------------

    def raw(self, sig: TermSignature, scope: "_Scope"):
        start = self.tok
        if self.at("("):
            self.i += 1
            head = self.atom("a constructor")
            if head.text == "var":
                n = self.int_atom("a variable index")
                if n < 1:
                    raise self.error("variable indices start at 1", head)
                self.eat(")")
                return RawVar(n - 1, start.pos)
            if head.text == "subst1" and scope.templates:
                body = self.raw(sig, scope)
                arg = self.raw(sig, scope)
                self.eat(")")
                return RawSubst(body, arg, start.pos)
            if head.text not in sig.arities:
                raise self.error(f"unknown constructor {head.text!r}", head)
            a = sig.arities[head.text]
            sorts = None
            if self.maybe("["):
                sorts = self.sort_list(sig.sorts, scope.degree, "]")
                self.eat("]")
            nat = None
            if a.nat_param:
                nat = self.nat(scope)
            children = []
            while not self.at(")"):
                if self.tok.kind == "eof":
                    raise self.error("unbalanced parenthesis", start)
                children.append(self.raw(sig, scope))
            self.eat(")")
            return RawCon(head.text, sorts, children, nat, start.pos)
        t = self.atom("a term")
        name = t.text
        if name in scope.metas:
            node = RawMeta(name, t.pos)
            if self.at("["):
                if not scope.templates:
                    raise self.error("substitution outside a template", t)
                self.i += 1
                arg = self.raw(sig, scope)
                self.eat("]")
                return RawSubst(node, arg, t.pos)
            return node
        if name in scope.lets:
            term, sort = scope.lets[name]
            return RawTerm(term, sort, t.pos)
        a = sig.arities.get(name)
        if a is not None and not a.args and not a.nat_param:
            sorts = None
            if self.maybe("["):
                sorts = self.sort_list(sig.sorts, scope.degree, "]")
                self.eat("]")
            return RawCon(name, sorts, [], None, t.pos)
        if name.startswith("$"):
            raise self.error(f"unknown hole {name!r}", t)
        if scope.templates:
            raise self.error(f"{name!r} is neither a declared metavariable nor a constant", t)
        raise self.error(f"unknown constructor {name!r}", t)

    def nat(self, scope: "_Scope"):
        t = self.atom("a natural number")
        if t.text.isdigit():
            return int(t.text)
        if scope.nat_var:
            if t.text == scope.nat_var:
                return NatVar(0)
            m = re.fullmatch(re.escape(scope.nat_var) + r"\+(\d+)", t.text)
            if m:
                return NatVar(int(m.group(1)))
        raise self.error(f"expected a natural number, found {t.text!r}", t)


@dataclass
class _Scope:
    metas: Mapping[str, MetaDecl]
    lets: Mapping[str, tuple]
    degree: int = 0
    nat_var: Optional[str] = None
    templates: bool = False


def _elab(p: _Parser, sig, raw, **kw):
    try:
        return elaborate(sig, raw, **kw)
    except ElaborationError as e:
        line, col = e.pos or (0, 0)
        raise ParseError(e.message, line, col, p.source) from None


# -- public term API -------------------------------------------------------------------

def parse_sort(sig: SortSignature, text: str, degree: int = 0) -> SortExpr:
    p = _Parser(text)
    s = p.sort(sig, degree)
    p.expect_eof()
    return s


def parse_context(sig: SortSignature, text: str) -> tuple[Sort, ...]:
    """Comma-separated sorts, innermost variable first; empty text is the empty context."""
    p = _Parser(text)
    if p.tok.kind == "eof":
        return ()
    out = [p.sort(sig)]
    while p.maybe(","):
        out.append(p.sort(sig))
    p.expect_eof()
    return tuple(out)


def parse_term(sig: TermSignature, ctx: Sequence[Sort], text: str, *,
               expected: Optional[Sort] = None, lets: Optional[Mapping[str, tuple]] = None,
               degree: int = 0) -> Term:
    p = _Parser(text)
    raw = p.raw(sig, _Scope({}, lets or {}, degree))
    p.expect_eof()
    term, _ = _elab(p, sig, raw, ctx=tuple(ctx), degree=degree, expected=expected)
    return term


def parse_template(sig: TermSignature, text: str, *, metas: Mapping[str, MetaDecl],
                   degree: int = 0, expected: Optional[SortExpr] = None,
                   lets: Optional[Mapping[str, tuple]] = None, nat_var: Optional[str] = None,
                   lhs: bool = False):
    p = _Parser(text)
    raw = p.raw(sig, _Scope(metas, lets or {}, degree, nat_var, True))
    p.expect_eof()
    return _elab(p, sig, raw, degree=degree, metas=metas, lhs=lhs,
                 nat_var=nat_var is not None, expected=expected)


# -- printers ---------------------------------------------------------------------------

def _sort_args(sorts) -> str:
    return "[" + ",".join(format_sort(s) for s in sorts) + "]" if sorts else ""


def print_template(t, nat_var: str = "k") -> str:
    """Canonical s-expression; also handles templates."""
    if type(t) is Var:
        return f"(var {t.index + 1})"
    if type(t) is Meta:
        return t.name
    if type(t) is Subst1:
        if type(t.body) is Meta:
            return f"{t.body.name}[{print_template(t.arg, nat_var)}]"
        return f"(subst1 {print_template(t.body, nat_var)} {print_template(t.arg, nat_var)})"
    parts = [t.name + _sort_args(t.sorts)]
    if t.nat is not None:
        n = t.nat
        if isinstance(n, NatVar):
            parts.append(nat_var if n.offset == 0 else f"{nat_var}+{n.offset}")
        else:
            parts.append(str(n))
    parts.extend(print_template(c, nat_var) for c in t.children)
    return "(" + " ".join(parts) + ")"


def _sugared(t, top: bool = True) -> str:
    if type(t) is Var:
        return str(t.index + 1)
    if type(t) is Meta:
        return t.name
    if type(t) is Subst1:
        return f"{_sugared_arg(t.body)}[*:= {_sugared(t.arg)}]"
    if t.name == "app" and len(t.children) == 2:
        f, x = t.children
        right = _sugared(x)
        if type(x) is Con and x.name == "app" and len(x.children) == 2:
            right = f"({right})"
        return f"{_sugared(f)} @ {right}"
    if t.name == "abs" and len(t.children) == 1:
        return f"Abs {_sugared_arg(t.children[0])}"
    head = t.name if t.nat is None else f"{t.name} {t.nat}"
    if not t.children:
        return head
    return " ".join([head, *(_sugared_arg(c) for c in t.children)])


def _sugared_arg(t) -> str:
    s = _sugared(t)
    if type(t) in (Var, Meta) or (type(t) is Con and not t.children and t.nat is None):
        return s
    return f"({s})"


def print_term(t: Term, style: str = "canonical") -> str:
    """Render a term as ``canonical`` s-expressions or in the sugared ``paper`` style.

    The sugared notation writes application as left-associative ``@`` and
    abstraction as ``Abs``; an application in argument position is
    parenthesized, an abstraction is not.
    """
    if style == "canonical":
        return print_template(t)
    if style == "paper":
        return _sugared(t)
    raise ValueError(f"unknown style {style!r}")


# -- signature files -----------------------------------------------------------------------

def _sort_section(p: _Parser) -> SortSignature:
    ctors: dict[str, int] = {}
    p.eat("{")
    while not p.maybe("}"):
        if p.tok.kind == "eof":
            raise p.error("unbalanced braces: missing '}'")
        name = p.atom("a sort name")
        p.eat(":")
        n = p.int_atom("an arity")
        p.eat(";")
        if name.text in ctors:
            raise p.error(f"duplicate sort constructor {name.text!r}", name)
        ctors[name.text] = n
    return SortSignature(ctors)


def _header(p: _Parser) -> tuple[Token, int, Optional[str]]:
    name = p.atom("a name")
    degree = 0
    if p.maybe("["):
        degree = p.int_atom("a degree")
        p.eat("]")
    nat = None
    if p.maybe("("):
        nat = p.atom("a natural-number variable").text
        p.eat(")")
    return name, degree, nat


def _binders(p: _Parser, sorts: SortSignature, degree: int) -> tuple[SortExpr, ...]:
    if not p.maybe("{"):
        return ()
    out = p.sort_list(sorts, degree, "}")
    p.eat("}")
    return tuple(out)


def _term_section(p: _Parser, sorts: SortSignature) -> list[Arity]:
    arities: list[Arity] = []
    seen = set()
    p.eat("{")
    while not p.maybe("}"):
        if p.tok.kind == "eof":
            raise p.error("unbalanced braces: missing '}'")
        name, degree, nat = _header(p)
        if name.text in seen:
            raise p.error(f"duplicate arity {name.text!r}", name)
        seen.add(name.text)
        p.eat(":")
        args = []
        if not p.at("->"):
            while True:
                b = _binders(p, sorts, degree)
                args.append(ArgSpec(b, p.sort(sorts, degree)))
                if not p.maybe(","):
                    break
        p.eat("->")
        out = p.sort(sorts, degree)
        p.eat(";")
        arities.append(Arity(name.text, degree, tuple(args), out, nat is not None))
    return arities


def _rule(p: _Parser, sig: TermSignature, lets) -> RewriteRule:
    name, degree, nat = _header(p)
    p.eat(":")
    metas: dict[str, MetaDecl] = {}
    if not p.at("|-"):
        while True:
            m = p.atom("a metavariable")
            if m.text in metas:
                raise p.error(f"duplicate metavariable {m.text!r}", m)
            b = _binders(p, sig.sorts, degree)
            p.eat(":")
            metas[m.text] = MetaDecl(b, p.sort(sig.sorts, degree))
            if not p.maybe(","):
                break
    p.eat("|-")
    scope = _Scope(metas, lets, degree, nat, True)
    lhs_tok = p.tok
    raw_l = p.raw(sig, scope)
    p.eat("=>")
    raw_r = p.raw(sig, scope)
    p.eat(";")
    if not isinstance(raw_l, RawCon):
        raise p.error("the left-hand side must start with a constructor", lhs_tok)
    lhs, s = _elab(p, sig, raw_l, degree=degree, metas=metas, lhs=True, nat_var=nat is not None)
    rhs, _ = _elab(p, sig, raw_r, degree=degree, metas=metas, nat_var=nat is not None, expected=s)
    return RewriteRule(name.text, degree, metas, lhs, rhs, s, nat)


def parse_signature(text: str, name: str = "", source: str = "") -> RuleSet:
    """Load a 2-signature: ``sorts { ... } terms { ... } rules { ... }``."""
    p = _Parser(text, source)
    sorts = None
    arities: list[Arity] = []
    rule_start = None
    while p.tok.kind != "eof":
        kw = p.atom("'sorts', 'terms' or 'rules'")
        if kw.text == "sorts":
            if sorts is not None:
                raise p.error("duplicate sorts section", kw)
            sorts = _sort_section(p)
        elif kw.text == "terms":
            if sorts is None:
                raise p.error("terms section before sorts section", kw)
            arities += _term_section(p, sorts)
        elif kw.text == "rules":
            rule_start = p.i
            _skip_block(p)
        else:
            raise p.error(f"unknown section {kw.text!r}", kw)
    if sorts is None:
        raise ParseError("missing sorts section", 1, 1, source)
    try:
        sig = TermSignature(sorts, arities)
    except (TermError, SortError) as e:
        raise ParseError(str(e), 1, 1, source) from None
    rules: list[RewriteRule] = []
    if rule_start is not None:
        p.i = rule_start
        p.eat("{")
        while not p.maybe("}"):
            rules.append(_rule(p, sig, {}))
    try:
        return RuleSet(sig, rules, name)
    except RuleError as e:
        raise ParseError(str(e), 1, 1, source) from None


def _skip_block(p: _Parser) -> None:
    start = p.eat("{")
    depth = 1
    while depth:
        if p.tok.kind == "eof":
            raise p.error("unbalanced braces: missing '}'", start)
        if p.at("{"):
            depth += 1
        elif p.at("}"):
            depth -= 1
        p.i += 1


def _binder_text(bs) -> str:
    return "{" + ", ".join(format_sort(b) for b in bs) + "}" if bs else ""


def _head_text(name: str, degree: int, nat: Optional[str]) -> str:
    return name + (f"[{degree}]" if degree else "") + (f"({nat})" if nat else "")


def print_signature(rs: RuleSet) -> str:
    sig = rs.signature
    lines = ["sorts {"]
    lines += [f"  {n} : {k};" for n, k in sig.sorts.constructors.items()]
    lines += ["}", "", "terms {"]
    for a in sig.arities.values():
        args = ", ".join(_binder_text(x.binders) + format_sort(x.sort) for x in a.args)
        arrow = f"{args} -> " if args else "-> "
        lines.append(f"  {_head_text(a.name, a.degree, 'n' if a.nat_param else None)} : "
                     f"{arrow}{format_sort(a.out)};")
    lines.append("}")
    if rs.rules:
        lines += ["", "rules {"]
        for r in rs.rules:
            decls = ", ".join(f"{m}{_binder_text(d.binders)}:{format_sort(d.sort)}" for m, d in r.metas.items())
            nv = r.nat_var or "k"
            lhs, rhs = print_template(r.lhs, nv), print_template(r.rhs, nv)
            head = _head_text(r.name, r.degree, r.nat_var)
            lines.append(f"  {head} : {decls + ' ' if decls else ''}|- {lhs} => {rhs};")
        lines.append("}")
    return "\n".join(lines) + "\n"


# -- representation files --------------------------------------------------------------------

Resolver = Callable[[str], RuleSet]


def parse_representation(text: str, resolve: Resolver, name: str = "", source: str = "",
                         overrides: Optional[Mapping[str, str]] = None):
    """Load ``represent SRC in TGT { ... }``.

    Returns a :class:`Representation`, or a bare :class:`SortTranslation`
    when the block has sort clauses only.  ``overrides`` replaces term
    clauses by template text (parsed in the block's scope).
    """
    p = _Parser(text, source)
    kw = p.atom("'represent'")
    if kw.text != "represent":
        raise p.error("expected 'represent'", kw)
    src_tok = p.atom("a source language")
    if p.atom("'in'").text != "in":
        raise p.error("expected 'in'", p.toks[p.i - 1])
    tgt_tok = p.atom("a target language")
    partial = False
    if p.tok.kind == "atom" and p.tok.text == "partial":
        partial = True
        p.i += 1
    try:
        src = resolve(src_tok.text)
    except (KeyError, FileNotFoundError) as e:
        raise p.error(f"cannot resolve language {src_tok.text!r}: {e}", src_tok) from None
    try:
        tgt = resolve(tgt_tok.text)
    except (KeyError, FileNotFoundError) as e:
        raise p.error(f"cannot resolve language {tgt_tok.text!r}: {e}", tgt_tok) from None
    ssig, tsig = src.signature, tgt.signature
    p.eat("{")
    clauses: dict[str, SortExpr] = {}
    term_pos: dict[str, int] = {}
    lets: dict[str, tuple] = {}
    schemas: dict[str, tuple] = {}
    while not p.maybe("}"):
        if p.tok.kind == "eof":
            raise p.error("unbalanced braces: missing '}'")
        kw = p.atom("'let', 'sort' or 'term'")
        if kw.text == "sort":
            c = p.atom("a sort constructor")
            if c.text not in ssig.sorts:
                raise p.error(f"unknown source sort constructor {c.text!r}", c)
            p.eat("->")
            clauses[c.text] = p.sort(tsig.sorts, ssig.sorts.constructors[c.text])
            p.eat(";")
        elif kw.text == "term":
            a = p.atom("an arity")
            if a.text not in ssig.arities:
                raise p.error(f"unknown source arity {a.text!r}", a)
            if a.text in term_pos:
                raise p.error(f"duplicate clause for {a.text!r}", a)
            p.eat("->")
            term_pos[a.text] = p.i
            _skip_clause(p)
        elif kw.text == "let":
            nm, degree, _ = _header(p)
            annot = None
            if p.maybe(":"):
                annot = p.sort(tsig.sorts, degree)
            p.eat("=")
            raw = p.raw(tsig, _Scope({}, lets, degree, None, True))
            p.eat(";")
            term, s = _elab(p, tsig, raw, degree=degree, expected=annot)
            (schemas if degree else lets)[nm.text] = (term, s)
        else:
            raise p.error(f"unexpected {kw.text!r}", kw)
    p.expect_eof()
    missing = [c for c in ssig.sorts.constructors if c not in clauses]
    if missing:
        raise ParseError(f"no sort clause for {', '.join(missing)}", kw.line if kw else 1, 1, source)
    g = SortTranslation(ssig.sorts, tsig.sorts, clauses)
    if not term_pos and not overrides:
        return g
    terms = {}
    for arity, pos in term_pos.items():
        p.i = pos
        terms[arity] = _term_clause(p, ssig.arities[arity], g, tsig, lets)
        p.eat(";")
    for arity, body in (overrides or {}).items():
        if arity not in ssig.arities:
            raise ParseError(f"override for unknown arity {arity!r}", 0, 0, "--fix-via")
        q = _Parser(body + ";", "--fix-via")
        terms[arity] = _term_clause(q, ssig.arities[arity], g, tsig, lets)
        q.eat(";")
        q.expect_eof()
    unrepresented = [a for a in ssig.arities if a not in terms]
    if unrepresented and not partial:
        raise ParseError(f"no term clause for {', '.join(unrepresented)} (mark the block 'partial')",
                         1, 1, source)
    try:
        rep = Representation(src, tgt, g, terms, name, {**lets, **schemas})
    except TranslationError as e:
        raise ParseError(str(e), 1, 1, source) from None
    return rep


def _skip_clause(p: _Parser) -> None:
    depth = 0
    while not (depth == 0 and p.at(";")):
        if p.tok.kind == "eof":
            raise p.error("missing ';'")
        if p.at("(") or p.at("["):
            depth += 1
        elif p.at(")") or p.at("]"):
            depth -= 1
        p.i += 1
    p.i += 1


def _term_clause(p: _Parser, a: Arity, g: SortTranslation, tsig: TermSignature, lets):
    from .sorts import fold_sorts

    holes = hole_decls(g, a)
    out = fold_sorts(g, a.out)
    if a.nat_param:
        if p.atom("'zero'").text != "zero":
            raise p.error("a natural-number arity needs 'zero <template> succ <template>'", p.toks[p.i - 1])
        raw0 = p.raw(tsig, _Scope(holes, lets, a.degree, None, True))
        zero, _ = _elab(p, tsig, raw0, degree=a.degree, metas=holes, expected=out)
        if p.atom("'succ'").text != "succ":
            raise p.error("expected 'succ'", p.toks[p.i - 1])
        succ_holes = {**holes, "$prev": MetaDecl((), out)}
        raw1 = p.raw(tsig, _Scope(succ_holes, lets, a.degree, None, True))
        succ, _ = _elab(p, tsig, raw1, degree=a.degree, metas=succ_holes, expected=out)
        return NatTemplate(zero, succ)
    raw = p.raw(tsig, _Scope(holes, lets, a.degree, None, True))
    tpl, _ = _elab(p, tsig, raw, degree=a.degree, metas=holes, expected=out)
    return tpl


def print_representation(rep, source: str, target: str) -> str:
    """Render a representation (or a bare sort translation) as a ``.rep`` block."""
    g = rep if isinstance(rep, SortTranslation) else rep.sorts
    partial = not isinstance(rep, SortTranslation) and rep.missing
    lines = [f"represent {source} in {target}{' partial' if partial else ''} {{"]
    lines += [f"  sort {c} -> {format_sort(e)};" for c, e in g.clauses.items()]
    if not isinstance(rep, SortTranslation):
        for a, tpl in rep.terms.items():
            if isinstance(tpl, NatTemplate):
                body = f"zero {print_template(tpl.zero)} succ {print_template(tpl.succ)}"
            else:
                body = print_template(tpl)
            lines.append(f"  term {a} -> {body};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- files ----------------------------------------------------------------------------------

def load_signature(path: str | Path) -> RuleSet:
    path = Path(path)
    return parse_signature(path.read_text(encoding="utf-8"), path.stem, str(path))


def load_representation(path: str | Path, resolve: Optional[Resolver] = None,
                        overrides: Optional[Mapping[str, str]] = None):
    """Load a ``.rep`` file; language names resolve to sibling ``.sig`` files, then builtins."""
    path = Path(path)

    def default(name: str) -> RuleSet:
        sibling = path.parent / f"{name}.sig"
        if sibling.exists():
            return load_signature(sibling)
        from .stdlib import builtin

        entry = builtin(name)
        if not isinstance(entry, RuleSet):
            raise KeyError(f"{name!r} is not a language")
        return entry

    return parse_representation(path.read_text(encoding="utf-8"), resolve or default,
                                path.stem, str(path), overrides)
