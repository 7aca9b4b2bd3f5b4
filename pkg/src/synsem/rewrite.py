"""Rewrite rules over templates, one-step reduction and bounded reachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .sorts import Sort, SortExpr, format_sort, instantiate_sort_expr, match_sort, sort_vars
from .templates import (
    ElaborationError,
    Meta,
    MetaDecl,
    NatVar,
    Subst1,
    check_template,
    instantiate_template,
    template_metas,
)
from .terms import Con, Term, TermError, TermSignature, Var, extend, sort_of

__all__ = [
    "RuleError",
    "RewriteRule",
    "RuleSet",
    "Match",
    "Step",
    "Reach",
    "Normal",
    "FuelExhausted",
    "match_rule",
    "successors",
    "reduces_to",
    "normalize",
    "format_position",
    "format_step",
]


class RuleError(Exception):
    pass


@dataclass(frozen=True)
class RewriteRule:
    """A directed rule ``lhs => rhs`` over declared metavariables.

    Templates are stored elaborated, with every sort argument explicit; the
    loader in :mod:`synsem.syntax` runs the sort check.  ``nat_var`` names the
    natural-number variable of rule families such as ``succ_red``.
    """

    name: str
    degree: int
    metas: Mapping[str, MetaDecl]
    lhs: Con
    rhs: object
    sort: SortExpr
    nat_var: Optional[str] = None

    def __hash__(self):
        return hash((self.name, self.degree, self.lhs, self.rhs))

    @property
    def meta_order(self) -> list[str]:
        return list(self.metas)


@dataclass(frozen=True)
class Match:
    sorts: tuple[SortExpr, ...]
    nat: Optional[int]
    terms: Mapping[str, Term]

    def meta_values(self, rule: RewriteRule) -> dict[str, tuple[Term, int]]:
        return {m: (self.terms[m], len(rule.metas[m].binders)) for m in rule.metas}


class RuleSet:
    def __init__(self, signature: TermSignature, rules: Sequence[RewriteRule] = (), name: str = ""):
        self.signature = signature
        self.rules = tuple(rules)
        self.name = name
        seen = set()
        for r in self.rules:
            if r.name in seen:
                raise RuleError(f"duplicate rule name {r.name!r}")
            seen.add(r.name)
            check_rule(signature, r)
        # sort metavariables not pinned by the left-hand side's sort arguments
        self._loose = {r.name: _loose_sort_vars(r) for r in self.rules}
        self._by_head: dict[str, list[RewriteRule]] = {}
        for r in self.rules:
            self._by_head.setdefault(r.lhs.name, []).append(r)

    def __repr__(self):
        return f"RuleSet({self.name or '?'}: {[r.name for r in self.rules]})"

    def __eq__(self, other):
        return (isinstance(other, RuleSet) and self.signature == other.signature
                and self.rules == other.rules)

    def __hash__(self):
        return hash((self.signature, self.rules))

    def rule(self, name: str) -> RewriteRule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_rules(self, rules: Sequence[RewriteRule]) -> RuleSet:
        return RuleSet(self.signature, rules, self.name)


def check_rule(sig: TermSignature, r: RewriteRule) -> None:
    """Re-check the structural invariants of an elaborated rule."""
    if not isinstance(r.lhs, Con):
        raise RuleError(f"rule {r.name!r}: left-hand side must be a constructor")
    occ = template_metas(r.lhs)
    for m in r.metas:
        if occ.count(m) != 1:
            raise RuleError(f"rule {r.name!r}: metavariable {m!r} must occur exactly once on the left")
    for m in template_metas(r.rhs):
        if m not in r.metas:
            raise RuleError(f"rule {r.name!r}: undeclared metavariable {m!r} on the right")
    if _has_subst(r.lhs):
        raise RuleError(f"rule {r.name!r}: substitution on the left-hand side")
    try:
        left = check_template(sig, r.lhs, degree=r.degree, metas=r.metas, lhs=True)
        right = check_template(sig, r.rhs, degree=r.degree, metas=r.metas)
    except (ElaborationError, TermError) as e:
        raise RuleError(f"rule {r.name!r}: {e}") from None
    if not (left == right == r.sort):
        raise RuleError(f"rule {r.name!r}: sides have sorts {format_sort(left)} and {format_sort(right)}")


def _has_subst(t) -> bool:
    if type(t) is Subst1:
        return True
    if type(t) is Con:
        return any(_has_subst(c) for c in t.children)
    return False


def _loose_sort_vars(r: RewriteRule) -> set[int]:
    pinned: set[int] = set()

    def go(t):
        if type(t) is Con:
            for s in t.sorts:
                pinned.update(sort_vars(s))
            for c in t.children:
                go(c)

    go(r.lhs)
    return set(range(1, r.degree + 1)) - pinned


# -- matching -----------------------------------------------------------------------

def _match(p, t, sorts: dict, terms: dict, nat: list, where=None) -> bool:
    """Structural match; ``where`` = (sig, ctx, ctxs) also records each metavariable's context."""
    tp = type(p)
    if tp is Meta:
        terms[p.name] = t
        if where is not None:
            where[2][p.name] = where[1]
        return True
    if tp is Var:
        return type(t) is Var and t.index == p.index
    if type(t) is not Con or t.name != p.name or len(t.children) != len(p.children):
        return False
    pn = p.nat
    if pn is not None:
        if isinstance(pn, NatVar):
            k = t.nat - pn.offset
            if k < 0 or (nat[0] is not None and nat[0] != k):
                return False
            nat[0] = k
        elif pn != t.nat:
            return False
    for ps, ts in zip(p.sorts, t.sorts):
        if not match_sort(ps, ts, sorts):
            return False
    if where is None:
        return all(_match(pc, tc, sorts, terms, nat) for pc, tc in zip(p.children, t.children))
    sig, ctx, ctxs = where
    a = sig.arity(t.name)
    for pc, tc, spec in zip(p.children, t.children, a.args):
        cctx = extend(ctx, [instantiate_sort_expr(b, t.sorts) for b in spec.binders]) if spec.binders else ctx
        if not _match(pc, tc, sorts, terms, nat, (sig, cctx, ctxs)):
            return False
    return True


def match_rule(rule: RewriteRule, sig: TermSignature, ctx: Sequence[Sort], t: Term,
               _loose: Optional[set] = None) -> Optional[Match]:
    """Return the unique assignment making the rule's left side equal to ``t``."""
    sorts: dict[int, SortExpr] = {}
    terms: dict[str, Term] = {}
    nat = [None]
    loose = _loose if _loose is not None else _loose_sort_vars(rule)
    if not loose:
        if not _match(rule.lhs, t, sorts, terms, nat):
            return None
    else:
        # sort metavariables that only occur in declarations are pinned by the
        # sorts of the matched subterms
        ctxs: dict[str, tuple] = {}
        if not _match(rule.lhs, t, sorts, terms, nat, (sig, tuple(ctx), ctxs)):
            return None
        for name, decl in rule.metas.items():
            at = ctxs[name]
            b = len(decl.binders)
            for want, have in zip(decl.binders, reversed(at[:b])):
                if not match_sort(want, have, sorts):
                    return None
            if not match_sort(decl.sort, sort_of(sig, at, terms[name]), sorts):
                return None
        if any(i not in sorts for i in range(1, rule.degree + 1)):
            return None
    ordered = tuple(sorts[i] for i in range(1, rule.degree + 1))
    return Match(ordered, nat[0], terms)


def apply_rule(rule: RewriteRule, m: Match) -> Term:
    return instantiate_template(rule.rhs, sorts=m.sorts, nat=m.nat, metas=m.meta_values(rule))


# -- one-step reduction ----------------------------------------------------------------

def _successors(rs: RuleSet, ctx: tuple, t: Term, pos: tuple) -> Iterator[tuple]:
    if type(t) is not Con:
        return
    sig = rs.signature
    for r in rs._by_head.get(t.name, ()):
        m = match_rule(r, sig, ctx, t, rs._loose[r.name])
        if m is not None:
            yield pos, r.name, apply_rule(r, m)
    if not t.children:
        return
    a = sig.arities.get(t.name)
    for i, c in enumerate(t.children):
        if type(c) is not Con:
            continue
        if t.binders[i] and a is not None:
            binders = [instantiate_sort_expr(b, t.sorts) for b in a.args[i].binders]
            cctx = extend(ctx, binders)
        else:
            cctx = ctx
        for p, name, c2 in _successors(rs, cctx, c, pos + (i,)):
            yield p, name, t.replace_child(i, c2)


def successors(rs: RuleSet, ctx: Sequence[Sort], t: Term) -> list[tuple[tuple[int, ...], str, Term]]:
    """All single rule applications, outermost-leftmost first."""
    return list(_successors(rs, tuple(ctx), t, ()))


@dataclass(frozen=True)
class Step:
    rule: str
    position: tuple[int, ...]
    before: Term
    after: Term


@dataclass
class Reach:
    """Outcome of a bounded reachability search.

    ``found`` is False both when the target is unreachable and when fuel ran
    out first; ``exhausted`` tells the two apart.
    """

    found: bool
    path: list[Step] = field(default_factory=list)
    expansions: int = 0
    exhausted: bool = False

    def __bool__(self):
        return self.found


def reduces_to(rs: RuleSet, ctx: Sequence[Sort], s: Term, t: Term, fuel: int = 64) -> Reach:
    """Breadth-first search from ``s`` for ``t`` expanding at most ``fuel`` terms."""
    ctx = tuple(ctx)
    if s == t:
        return Reach(True, [], 0)
    parent: dict[Term, Optional[tuple]] = {s: None}
    queue = deque([s])
    expansions = 0
    while queue:
        if expansions >= fuel:
            return Reach(False, [], expansions, exhausted=True)
        u = queue.popleft()
        expansions += 1
        for pos, name, v in _successors(rs, ctx, u, ()):
            if v in parent:
                continue
            parent[v] = (u, pos, name)
            if v == t:
                return Reach(True, _path(parent, v), expansions)
            queue.append(v)
    return Reach(False, [], expansions, exhausted=False)


def _path(parent: dict, v: Term) -> list[Step]:
    steps: list[Step] = []
    while parent[v] is not None:
        u, pos, name = parent[v]
        steps.append(Step(name, pos, u, v))
        v = u
    steps.reverse()
    return steps


@dataclass
class Normal:
    term: Term
    steps: list[Step] = field(default_factory=list)


@dataclass
class FuelExhausted:
    term: Term
    steps: list[Step] = field(default_factory=list)


def normalize(rs: RuleSet, ctx: Sequence[Sort], t: Term, fuel: int = 64) -> Normal | FuelExhausted:
    """Reduce at the outermost-leftmost redex until normal or ``fuel`` steps were taken."""
    ctx = tuple(ctx)
    steps: list[Step] = []
    while True:
        nxt = next(_successors(rs, ctx, t, ()), None)
        if nxt is None:
            return Normal(t, steps)
        if len(steps) >= fuel:
            return FuelExhausted(t, steps)
        pos, name, t2 = nxt
        steps.append(Step(name, pos, t, t2))
        t = t2


def format_position(pos: Sequence[int]) -> str:
    return ".".join(str(i) for i in pos) if pos else "root"


def format_step(step: Step, show: Callable[[Term], str]) -> str:
    return f"{step.rule} @ {format_position(step.position)} : {show(step.before)} ==> {show(step.after)}"
