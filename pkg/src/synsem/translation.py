"""Representations of one language in another and the fold they induce.

A :class:`Representation` gives a sort translation plus, for every source
arity, a target template whose holes ``$1 .. $k`` stand for the translated
arguments.  :func:`translate` is the unique structurally recursive map it
determines; the ``check_*`` functions test the laws that make it a morphism
of languages with reduction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .rewrite import Reach, RewriteRule, RuleSet, reduces_to, successors
from .sorts import Sort, SortExpr, SortTranslation, SortVar, fold_sorts, format_sort
from .templates import ElaborationError, Meta, MetaDecl, check_template, instantiate_template
from .terms import (
    ArgSpec,
    Arity,
    Con,
    Enumerator,
    Term,
    TermError,
    Var,
    bind,
    sort_of,
    sort_universe,
)

__all__ = [
    "TranslationError",
    "Unrepresented",
    "SortClash",
    "NatTemplate",
    "Representation",
    "Failure",
    "Report",
    "Satisfaction",
    "retype_context",
    "translate",
    "translate_template",
    "check_monad_morphism",
    "check_satisfies",
    "check_all_rules",
    "check_faithful",
    "default_contexts",
    "identity_representation",
]


class TranslationError(Exception):
    pass


class Unrepresented(TranslationError):
    def __init__(self, arity: str):
        super().__init__(f"no template for arity {arity!r}")
        self.arity = arity


class SortClash(TranslationError):
    pass


@dataclass(frozen=True)
class NatTemplate:
    """Primitive recursion on the natural parameter: ``succ`` mentions ``$prev``."""

    zero: object
    succ: object


def hole_decls(rep_sorts: SortTranslation, a: Arity) -> dict[str, MetaDecl]:
    return {f"${i + 1}": MetaDecl(tuple(fold_sorts(rep_sorts, b) for b in spec.binders),
                                  fold_sorts(rep_sorts, spec.sort))
            for i, spec in enumerate(a.args)}


@dataclass
class Representation:
    source: RuleSet
    target: RuleSet
    sorts: SortTranslation
    terms: Mapping[str, object]
    name: str = ""
    lets: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        src, tgt = self.source.signature, self.target.signature
        if self.sorts.source != src.sorts or self.sorts.target != tgt.sorts:
            raise TranslationError("sort translation does not connect the two signatures")
        for name, tpl in self.terms.items():
            if name not in src.arities:
                raise TranslationError(f"template for unknown arity {name!r}")
            self._check_clause(name, tpl)

    def _check_clause(self, name: str, tpl) -> None:
        a = self.source.signature.arities[name]
        holes = hole_decls(self.sorts, a)
        out = fold_sorts(self.sorts, a.out)
        cases = [(tpl, holes)]
        if a.nat_param:
            if not isinstance(tpl, NatTemplate):
                raise TranslationError(f"arity {name!r} needs a zero/succ template pair")
            cases = [(tpl.zero, holes), (tpl.succ, {**holes, "$prev": MetaDecl((), out)})]
        elif isinstance(tpl, NatTemplate):
            raise TranslationError(f"arity {name!r} has no natural parameter")
        for t, decls in cases:
            try:
                got = check_template(self.target.signature, t, degree=a.degree, metas=decls)
            except (ElaborationError, TermError) as e:
                raise TranslationError(f"template for {name!r}: {e}") from None
            if got != out:
                raise TranslationError(f"template for {name!r} has sort {format_sort(got)}, "
                                       f"expected {format_sort(out)}")

    @property
    def missing(self) -> list[str]:
        return [a for a in self.source.signature.arities if a not in self.terms]

    def with_template(self, arity: str, tpl) -> Representation:
        terms = dict(self.terms)
        terms[arity] = tpl
        return Representation(self.source, self.target, self.sorts, terms, self.name, self.lets)

    def with_target(self, target: RuleSet) -> Representation:
        return Representation(self.source, target, self.sorts, self.terms, self.name, self.lets)

    def apply(self, name: str, sorts: Sequence[SortExpr], children: Sequence[Term], nat=None) -> Term:
        """The target term for one constructor, given its already translated children."""
        tpl = self.terms.get(name)
        if tpl is None:
            raise Unrepresented(name)
        a = self.source.signature.arities[name]
        folded = tuple(fold_sorts(self.sorts, s) for s in sorts)
        holes = {f"${i + 1}": (c, len(spec.binders)) for i, (c, spec) in enumerate(zip(children, a.args))}
        if not isinstance(tpl, NatTemplate):
            return instantiate_template(tpl, sorts=folded, metas=holes)
        value = instantiate_template(tpl.zero, sorts=folded, metas=holes)
        for _ in range(nat):
            value = instantiate_template(tpl.succ, sorts=folded, metas={**holes, "$prev": (value, 0)})
        return value


def retype_context(g: SortTranslation, ctx: Sequence[SortExpr]) -> tuple:
    return tuple(fold_sorts(g, s) for s in ctx)


def translate_template(rep: Representation, tpl, metas: Optional[Mapping[str, tuple]] = None,
                       nat: Optional[int] = None) -> Term:
    """Fold a source template whose metavariables are already target terms."""
    return instantiate_template(
        tpl, nat=nat, metas=metas,
        on_con=lambda name, sorts, children, n, depth: rep.apply(name, sorts, children, n))


def translate(rep: Representation, ctx: Sequence[Sort], t: Term,
              memo: Optional[dict] = None) -> Term:
    """Image of ``t`` under the fold; lives in ``retype_context(rep.sorts, ctx)``.

    The image of a subterm does not depend on where it sits, so a ``memo``
    dict may be shared across calls with the same representation.
    """
    if memo is None:
        return translate_template(rep, t)
    return _translate_memo(rep, t, memo)


def _translate_memo(rep: Representation, t: Term, memo: dict) -> Term:
    if type(t) is Var:
        return t
    hit = memo.get(t)
    if hit is None:
        children = [_translate_memo(rep, c, memo) for c in t.children]
        hit = memo[t] = rep.apply(t.name, t.sorts, children, t.nat)
    return hit


# -- reports --------------------------------------------------------------------------

@dataclass
class Failure:
    ctx: tuple
    term: Term
    detail: str
    other: Optional[Term] = None


@dataclass
class Report:
    law: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    fuel: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


@dataclass
class Satisfaction:
    """Verdict for one rule; ``results`` holds one entry per natural instance."""

    rule: str
    results: list[tuple[Optional[int], Reach, Term, Term]] = field(default_factory=list)
    fuel: int = 0

    @property
    def passed(self) -> bool:
        return all(r.found for _, r, _, _ in self.results)

    def __bool__(self):
        return self.passed

    @property
    def witness_lengths(self) -> list[int]:
        return [len(r.path) for _, r, _, _ in self.results if r.found]


# -- law checkers ------------------------------------------------------------------------

def default_contexts(sig_sorts, ctx_len: int) -> list[tuple]:
    """All contexts of length <= ctx_len over the 0-ary sorts."""
    atoms = sig_sorts.atoms()
    out: list[tuple] = []
    for n in range(ctx_len + 1):
        out.extend(itertools.product(atoms, repeat=n))
    return out


def _terms(en: Enumerator, ctx: tuple, max_nodes: int, sorts: Iterable[Sort]) -> Iterator[tuple[Sort, Term]]:
    for s in sorts:
        for t in en.upto(ctx, s, max_nodes):
            yield s, t


def substitutions(en: Enumerator, src: tuple, dst: tuple, max_nodes: int) -> Iterator[tuple[Term, ...]]:
    """Every sort-preserving substitution from ``src`` into ``dst`` built from small terms."""
    pools = [tuple(en.upto(dst, s, max_nodes)) for s in src]
    return itertools.product(*pools)


def check_monad_morphism(rep: Representation, max_nodes: int = 4, ctx_len: int = 2, *,
                         sub_nodes: int = 1, sort_bound: int = 3,
                         contexts: Optional[Sequence[tuple]] = None) -> Report:
    """translate(bind(t, s)) == bind(translate(t), translate . s) on enumerated instances."""
    src = rep.source.signature
    en = Enumerator(src, max_nodes, sort_bound)
    universe = sort_universe(src.sorts, sort_bound)
    contexts = list(contexts) if contexts is not None else default_contexts(src.sorts, ctx_len)
    report = Report("monad-morphism")
    memo: dict = {}
    pools = {(ctx, dst): [(sigma, [translate(rep, dst, s, memo) for s in sigma])
                          for sigma in substitutions(en, ctx, dst, sub_nodes)]
             for ctx in contexts for dst in contexts}
    for ctx in contexts:
        for _, t in _terms(en, ctx, max_nodes, universe):
            image = translate(rep, ctx, t, memo)
            for dst in contexts:
                for sigma, images in pools[ctx, dst]:
                    report.checked += 1
                    left = translate(rep, dst, bind(t, sigma), memo)
                    right = bind(image, images)
                    if left != right:
                        report.failures.append(Failure(ctx, t, f"substitution {sigma!r}", left))
    return report


def _generic_instance(rep: Representation, rule: RewriteRule):
    """Target context and metavariable values for the rule's generic instance.

    First-order metavariables become fresh context variables.  A
    metavariable with binders becomes a fresh constructor applied to its bound
    variables, so the instance stays generic in how the body uses them.
    """
    g = rep.sorts
    plain = [m for m, d in rule.metas.items() if not d.binders]
    ctx = tuple(fold_sorts(g, rule.metas[m].sort) for m in reversed(plain))
    values: dict[str, tuple] = {}
    extra: list[Arity] = []
    for j, m in enumerate(plain):
        values[m] = (Var(len(plain) - 1 - j), 0)
    params = tuple(SortVar(i) for i in range(1, rule.degree + 1))
    for m, d in rule.metas.items():
        if not d.binders:
            continue
        b = len(d.binders)
        hole = f"?{m}"
        extra.append(Arity(hole, rule.degree,
                           tuple(ArgSpec((), fold_sorts(g, s)) for s in d.binders),
                           fold_sorts(g, d.sort)))
        values[m] = (Con(hole, params, tuple(Var(b - 1 - i) for i in range(b))), b)
    return ctx, values, extra


def check_satisfies(rep: Representation, rule: RewriteRule | str, fuel: int = 64,
                    nat_range: Iterable[int] = range(4)) -> Satisfaction:
    """Does the generic target image of the rule's left side reduce to that of its right side?"""
    if isinstance(rule, str):
        rule = rep.source.rule(rule)
    ctx, values, extra = _generic_instance(rep, rule)
    target = rep.target
    sig = target.signature.extended(extra) if extra else target.signature
    checked = RuleSet(sig, target.rules, target.name) if extra else target
    expected = fold_sorts(rep.sorts, rule.sort)
    out = Satisfaction(rule.name, fuel=fuel)
    for k in (list(nat_range) if rule.nat_var else [None]):
        lhs = translate_template(rep, rule.lhs, values, k)
        rhs = translate_template(rep, rule.rhs, values, k)
        for side, t in (("left", lhs), ("right", rhs)):
            try:
                got = sort_of(sig, ctx, t, degree=rule.degree)
            except TermError as e:
                raise SortClash(f"rule {rule.name!r}: {side} image is ill-sorted: {e}") from None
            if got != expected:
                raise SortClash(f"rule {rule.name!r}: {side} image has sort {format_sort(got)}, "
                                f"expected {format_sort(expected)}")
        out.results.append((k, reduces_to(checked, ctx, lhs, rhs, fuel), lhs, rhs))
    return out


def check_all_rules(rep: Representation, fuel: int = 64, nat_range: Iterable[int] = range(4)) -> list[Satisfaction]:
    nat_range = list(nat_range)
    results = [check_satisfies(rep, r, fuel, nat_range) for r in rep.source.rules]
    return sorted(results, key=lambda s: s.rule)


def check_faithful(rep: Representation, max_nodes: int = 4, ctx_len: int = 2, fuel: int = 64, *,
                   sort_bound: int = 3, contexts: Optional[Sequence[tuple]] = None) -> Report:
    """Every one-step source reduction maps to a bounded target reduction sequence."""
    src = rep.source.signature
    en = Enumerator(src, max_nodes, sort_bound)
    universe = sort_universe(src.sorts, sort_bound)
    contexts = list(contexts) if contexts is not None else default_contexts(src.sorts, ctx_len)
    report = Report("faithfulness", fuel=fuel)
    memo: dict = {}
    for ctx in contexts:
        tctx = retype_context(rep.sorts, ctx)
        for _, t in _terms(en, ctx, max_nodes, universe):
            steps = successors(rep.source, ctx, t)
            if not steps:
                continue
            image = translate(rep, ctx, t, memo)
            for pos, name, t2 in steps:
                report.checked += 1
                reach = reduces_to(rep.target, tctx, image, translate(rep, ctx, t2, memo), fuel)
                if not reach:
                    why = "fuel exhausted" if reach.exhausted else "unreachable"
                    report.failures.append(Failure(ctx, t, f"{name} at {pos}: {why}", t2))
    return report


def identity_representation(rs: RuleSet) -> Representation:
    """Each arity represented by itself applied to its holes."""
    sig = rs.signature
    terms = {}
    for name, a in sig.arities.items():
        params = tuple(SortVar(i) for i in range(1, a.degree + 1))
        body = Con(name, params, tuple(Meta(f"${i + 1}") for i in range(len(a.args))),
                   None, a.binder_counts)
        if a.nat_param:
            raise TranslationError("identity representation of a natural-parameter arity is not supported")
        terms[name] = body
    return Representation(rs, rs, SortTranslation.identity(sig.sorts), terms, "id")

