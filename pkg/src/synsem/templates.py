"""Second-order templates and sort inference.

A template is a term that may also contain metavariable holes (:class:`Meta`),
single-variable substitutions (:class:`Subst1`), sort metavariables in its
sort arguments and a symbolic natural parameter (:class:`NatVar`).  Rewrite
rules and representation clauses are both templates.

Surface syntax lets sort arguments be omitted; :func:`elaborate` recovers them
by first-order unification and sort-checks the result in one pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .sorts import Sort, SortError, SortExpr, SortVar, format_sort, instantiate_sort_expr, validate_sort
from .terms import Con, TermSignature, UnknownArity, Var, extend, subst1, weaken

__all__ = [
    "Meta",
    "Subst1",
    "NatVar",
    "MetaDecl",
    "ElaborationError",
    "RawVar",
    "RawCon",
    "RawMeta",
    "RawSubst",
    "RawTerm",
    "elaborate",
    "check_template",
    "instantiate_template",
    "template_metas",
]


class Meta:
    """Metavariable hole; its value lives under the binders of its declaration."""

    __slots__ = ("name", "fv", "_hash")

    def __init__(self, name: str):
        self.name = name
        self.fv = 0
        self._hash = hash(("meta", name))

    def __eq__(self, other):
        return type(other) is Meta and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Meta({self.name!r})"


class Subst1:
    __slots__ = ("body", "arg", "fv", "_hash")

    def __init__(self, body, arg):
        self.body = body
        self.arg = arg
        self.fv = 0
        self._hash = hash(("subst1", body, arg))

    def __eq__(self, other):
        return type(other) is Subst1 and other.body == self.body and other.arg == self.arg

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subst1({self.body!r}, {self.arg!r})"


@dataclass(frozen=True)
class NatVar:
    """The rule's natural-number variable plus a constant offset (``k`` or ``k+1``)."""

    offset: int = 0

    def __str__(self):
        return "k" if self.offset == 0 else f"k+{self.offset}"


@dataclass(frozen=True)
class MetaDecl:
    binders: tuple[SortExpr, ...]
    sort: SortExpr


class ElaborationError(Exception):
    def __init__(self, message: str, pos: Optional[tuple[int, int]] = None):
        self.message = message
        self.pos = pos
        super().__init__(f"{pos[0]}:{pos[1]}: {message}" if pos else message)


# -- raw (surface) trees --------------------------------------------------------

@dataclass(eq=False)
class RawVar:
    index: int  # 0-based
    pos: Optional[tuple[int, int]] = None


@dataclass(eq=False)
class RawCon:
    name: str
    sorts: Optional[list[SortExpr]]
    children: list
    nat: object = None
    pos: Optional[tuple[int, int]] = None
    resolved: list = field(default_factory=list)


@dataclass(eq=False)
class RawMeta:
    name: str
    pos: Optional[tuple[int, int]] = None


@dataclass(eq=False)
class RawSubst:
    body: object
    arg: object
    pos: Optional[tuple[int, int]] = None


@dataclass(eq=False)
class RawTerm:
    """An already elaborated term spliced into a template (a named constant)."""

    term: object
    sort: SortExpr
    pos: Optional[tuple[int, int]] = None


# -- unification ----------------------------------------------------------------

@dataclass(frozen=True)
class _UVar:
    id: int

    def __str__(self):
        return f"?{self.id}"


class _Unifier:
    def __init__(self):
        self.subst: dict[int, SortExpr] = {}
        self._ids = itertools.count()

    def fresh(self) -> _UVar:
        return _UVar(next(self._ids))

    def walk(self, s):
        while isinstance(s, _UVar) and s.id in self.subst:
            s = self.subst[s.id]
        return s

    def zonk(self, s):
        s = self.walk(s)
        if isinstance(s, Sort) and s.args:
            return Sort(s.head, tuple(self.zonk(a) for a in s.args))
        return s

    def _occurs(self, v: _UVar, s) -> bool:
        s = self.walk(s)
        if s == v:
            return True
        return isinstance(s, Sort) and any(self._occurs(v, a) for a in s.args)

    def unify(self, a, b) -> bool:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return True
        if isinstance(a, _UVar):
            if self._occurs(a, b):
                return False
            self.subst[a.id] = b
            return True
        if isinstance(b, _UVar):
            return self.unify(b, a)
        if isinstance(a, Sort) and isinstance(b, Sort):
            return (a.head == b.head and len(a.args) == len(b.args)
                    and all(self.unify(x, y) for x, y in zip(a.args, b.args)))
        return False

    def show(self, s) -> str:
        s = self.zonk(s)
        return _show(s)


def _show(s) -> str:
    if isinstance(s, _UVar):
        return "_"
    if isinstance(s, Sort) and s.args:
        return "(" + " ".join([s.head, *(_show(a) for a in s.args)]) + ")"
    return format_sort(s)


def _has_uvar(s) -> bool:
    if isinstance(s, _UVar):
        return True
    return isinstance(s, Sort) and any(_has_uvar(a) for a in s.args)


# -- elaboration ------------------------------------------------------------------

class _Elaborator:
    def __init__(self, sig: TermSignature, ctx, degree, metas, lhs, nat_var):
        self.sig = sig
        self.ctx = tuple(ctx)
        self.degree = degree
        self.metas = metas or {}
        self.lhs = lhs
        self.nat_var = nat_var
        self.u = _Unifier()
        self.seen: dict[str, int] = {}

    def infer(self, raw, prefix: list):
        if isinstance(raw, RawVar):
            env = extend(self.ctx, prefix)
            if not 0 <= raw.index < len(env):
                raise ElaborationError(
                    f"variable {raw.index + 1} out of range for a context of length {len(env)}", raw.pos)
            return env[raw.index]
        if isinstance(raw, RawTerm):
            return raw.sort
        if isinstance(raw, RawMeta):
            return self._meta(raw, prefix)
        if isinstance(raw, RawSubst):
            if self.lhs:
                raise ElaborationError("substitution is not allowed on a left-hand side", raw.pos)
            s = self.infer(raw.arg, prefix)
            return self.infer(raw.body, prefix + [s])
        if isinstance(raw, RawCon):
            return self._con(raw, prefix)
        raise ElaborationError(f"unexpected node {raw!r}")

    def _meta(self, raw: RawMeta, prefix: list):
        decl = self.metas.get(raw.name)
        if decl is None:
            raise ElaborationError(f"undeclared metavariable {raw.name!r}", raw.pos)
        self.seen[raw.name] = self.seen.get(raw.name, 0) + 1
        b = len(decl.binders)
        if self.lhs and len(prefix) != b:
            raise ElaborationError(
                f"metavariable {raw.name!r} declared with {b} binder(s) occurs under {len(prefix)}", raw.pos)
        if len(prefix) < b:
            raise ElaborationError(
                f"metavariable {raw.name!r} needs {b} enclosing binder(s), found {len(prefix)}", raw.pos)
        for want, have in zip(decl.binders, prefix):
            if not self.u.unify(want, have):
                raise ElaborationError(
                    f"metavariable {raw.name!r}: binder of sort {format_sort(want)} expected, "
                    f"found {self.u.show(have)}", raw.pos)
        return decl.sort

    def _con(self, raw: RawCon, prefix: list):
        try:
            a = self.sig.arity(raw.name)
        except UnknownArity:
            raise ElaborationError(f"unknown constructor {raw.name!r}", raw.pos) from None
        if raw.sorts is None:
            sorts = [self.u.fresh() for _ in range(a.degree)]
        else:
            if len(raw.sorts) != a.degree:
                raise ElaborationError(
                    f"{raw.name!r} takes {a.degree} sort argument(s), got {len(raw.sorts)}", raw.pos)
            for s in raw.sorts:
                try:
                    validate_sort(self.sig.sorts, s, self.degree)
                except SortError as e:
                    raise ElaborationError(str(e), raw.pos) from None
            sorts = list(raw.sorts)
        raw.resolved = sorts
        if a.nat_param:
            if raw.nat is None:
                raise ElaborationError(f"{raw.name!r} needs a natural-number parameter", raw.pos)
            if isinstance(raw.nat, NatVar):
                if not self.nat_var:
                    raise ElaborationError("natural-number variable used but not declared", raw.pos)
                if raw.nat.offset not in (0, 1):
                    raise ElaborationError("natural-number patterns are limited to k and k+1", raw.pos)
            elif not (isinstance(raw.nat, int) and raw.nat >= 0):
                raise ElaborationError(f"bad natural-number parameter {raw.nat!r}", raw.pos)
        elif raw.nat is not None:
            raise ElaborationError(f"{raw.name!r} takes no natural-number parameter", raw.pos)
        if len(raw.children) != len(a.args):
            raise ElaborationError(
                f"{raw.name!r} takes {len(a.args)} argument(s), got {len(raw.children)}", raw.pos)
        for child, spec in zip(raw.children, a.args):
            binders = [_inst(b, sorts) for b in spec.binders]
            got = self.infer(child, prefix + binders)
            want = _inst(spec.sort, sorts)
            if not self.u.unify(got, want):
                raise ElaborationError(
                    f"argument of {raw.name!r} has sort {self.u.show(got)}, expected {self.u.show(want)}",
                    getattr(child, "pos", None) or raw.pos)
        return _inst(a.out, sorts)

    def build(self, raw):
        if isinstance(raw, RawVar):
            return Var(raw.index)
        if isinstance(raw, RawTerm):
            return raw.term
        if isinstance(raw, RawMeta):
            return Meta(raw.name)
        if isinstance(raw, RawSubst):
            return Subst1(self.build(raw.body), self.build(raw.arg))
        a = self.sig.arity(raw.name)
        sorts = []
        for s in raw.resolved:
            z = self.u.zonk(s)
            if _has_uvar(z):
                raise ElaborationError(f"cannot infer the sort arguments of {raw.name!r}; "
                                       f"write them explicitly as {raw.name}[...]", raw.pos)
            sorts.append(z)
        return Con(raw.name, tuple(sorts), tuple(self.build(c) for c in raw.children),
                   raw.nat, a.binder_counts)


def _inst(e, sorts):
    # like instantiate_sort_expr, but tolerant of unification variables
    if isinstance(e, SortVar):
        return sorts[e.index - 1]
    if isinstance(e, Sort) and e.args:
        return Sort(e.head, tuple(_inst(a, sorts) for a in e.args))
    return e


def elaborate(sig: TermSignature, raw, *, ctx: Sequence[SortExpr] = (), degree: int = 0,
              metas: Optional[Mapping[str, MetaDecl]] = None, lhs: bool = False,
              nat_var: bool = False, expected: Optional[SortExpr] = None):
    """Infer omitted sort arguments and sort-check ``raw``.

    Returns ``(node, sort)``.  With ``lhs=True`` metavariables must occur
    exactly under their declared binders, each exactly once, and
    substitutions are rejected.
    """
    el = _Elaborator(sig, ctx, degree, metas, lhs, nat_var)
    got = el.infer(raw, [])
    if expected is not None and not el.u.unify(got, expected):
        raise ElaborationError(f"has sort {el.u.show(got)}, expected {format_sort(expected)}",
                               getattr(raw, "pos", None))
    if lhs:
        for name in el.metas:
            n = el.seen.get(name, 0)
            if n != 1:
                raise ElaborationError(f"metavariable {name!r} occurs {n} times on the left-hand side",
                                       getattr(raw, "pos", None))
    node = el.build(raw)
    sort = el.u.zonk(got)
    if _has_uvar(sort):
        raise ElaborationError("cannot infer the sort of this term", getattr(raw, "pos", None))
    return node, sort


# -- instantiation ------------------------------------------------------------------

def instantiate_template(tpl, *, sorts: Sequence[SortExpr] = (), nat: Optional[int] = None,
                         metas: Optional[Mapping[str, tuple]] = None, on_con=None):
    """Fill a template.

    ``metas`` maps a metavariable name to ``(value, binder_count)`` where the
    value is a term over the outer context extended by that many binders.
    Values are weakened past any extra binders at the occurrence.
    ``on_con(con, children)`` may intercept constructor nodes (used by the
    fold into another language); it receives the instantiated sort arguments
    and children and returns a term.
    """
    metas = metas or {}

    def go(t, depth):
        if type(t) is Var:
            return t
        if type(t) is Meta:
            value, b = metas[t.name]
            return weaken(value, depth - b) if depth > b else value
        if type(t) is Subst1:
            return subst1(go(t.body, depth + 1), go(t.arg, depth))
        n = t.nat
        if isinstance(n, NatVar):
            n = nat + n.offset
        ss = tuple(instantiate_sort_expr(s, sorts) if sorts else s for s in t.sorts)
        children = tuple(go(c, depth + b) for c, b in zip(t.children, t.binders))
        if on_con is not None:
            return on_con(t.name, ss, children, n, depth)
        return Con(t.name, ss, children, n, t.binders)

    return go(tpl, 0)


def template_metas(tpl) -> list[str]:
    out: list[str] = []

    def go(t):
        if type(t) is Meta:
            out.append(t.name)
        elif type(t) is Subst1:
            go(t.body)
            go(t.arg)
        elif type(t) is Con:
            for c in t.children:
                go(c)

    go(tpl)
    return out


def check_template(sig: TermSignature, tpl, *, ctx: Sequence[SortExpr] = (), degree: int = 0,
                   metas: Optional[Mapping[str, MetaDecl]] = None, lhs: bool = False) -> SortExpr:
    """Sort of an already elaborated template; raises :class:`ElaborationError`.

    Unlike :func:`elaborate` no inference happens: every sort argument must
    be present.  Used to re-validate rules and clauses built in code.
    """
    metas = metas or {}

    def go(t, prefix):
        if type(t) is Var:
            env = extend(ctx, prefix)
            if not 0 <= t.index < len(env):
                raise ElaborationError(f"variable {t.index + 1} escapes its context")
            return env[t.index]
        if type(t) is Meta:
            decl = metas.get(t.name)
            if decl is None:
                raise ElaborationError(f"undeclared metavariable {t.name!r}")
            b = len(decl.binders)
            if len(prefix) < b or (lhs and len(prefix) != b) or list(prefix[:b]) != list(decl.binders):
                raise ElaborationError(f"metavariable {t.name!r} occurs under the wrong binders")
            return decl.sort
        if type(t) is Subst1:
            if lhs:
                raise ElaborationError("substitution is not allowed on a left-hand side")
            s = go(t.arg, prefix)
            return go(t.body, prefix + [s])
        a = sig.arity(t.name)
        if len(t.sorts) != a.degree or len(t.children) != len(a.args) or t.binders != a.binder_counts:
            raise ElaborationError(f"malformed {t.name!r} node")
        if a.nat_param != (t.nat is not None):
            raise ElaborationError(f"natural-number parameter mismatch at {t.name!r}")
        for s in t.sorts:
            try:
                validate_sort(sig.sorts, s, degree)
            except SortError as e:
                raise ElaborationError(str(e)) from None
        for child, spec in zip(t.children, a.args):
            binders = [instantiate_sort_expr(b, t.sorts) for b in spec.binders]
            got = go(child, prefix + binders)
            want = instantiate_sort_expr(spec.sort, t.sorts)
            if got != want:
                raise ElaborationError(
                    f"argument of {t.name!r} has sort {format_sort(got)}, expected {format_sort(want)}")
        return instantiate_sort_expr(a.out, t.sorts)

    return go(tpl, [])
