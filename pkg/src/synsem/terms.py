"""Intrinsically sorted de Bruijn terms over a binding term signature.

Contexts are tuples of sorts with position 0 the innermost variable.  A
constructor node records, per child, how many variables that child binds, so
renaming and substitution need no signature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

from .sorts import (
    Sort,
    SortError,
    SortExpr,
    SortSignature,
    instantiate_sort_expr,
    match_sort,
    validate_sort,
)

__all__ = [
    "TermError",
    "IllSorted",
    "UnknownArity",
    "BadIndex",
    "Var",
    "Con",
    "Term",
    "ArgSpec",
    "Arity",
    "TermSignature",
    "Context",
    "extend",
    "sort_of",
    "rename",
    "bind",
    "shift",
    "subst1",
    "weaken",
    "size",
    "sort_universe",
    "Enumerator",
    "enumerate_terms",
]


class TermError(Exception):
    pass


class IllSorted(TermError):
    def __init__(self, position: tuple[int, ...], expected, got, detail: str = ""):
        where = ".".join(map(str, position)) or "root"
        msg = f"ill-sorted at {where}: expected {expected}, got {got}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.position = position
        self.expected = expected
        self.got = got


class UnknownArity(TermError):
    def __init__(self, name: str):
        super().__init__(f"unknown term constructor {name!r}")
        self.name = name


class BadIndex(TermError):
    def __init__(self, index: int, ctx_len: int, position: tuple[int, ...] = ()):
        super().__init__(f"variable index {index} out of range for a context of length {ctx_len}")
        self.index = index
        self.ctx_len = ctx_len
        self.position = position


class Var:
    __slots__ = ("index", "fv", "_hash")

    def __init__(self, index: int):
        self.index = index
        self.fv = index + 1
        self._hash = hash(("var", index))

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.index == self.index)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.index})"


class Con:
    """Constructor node.

    ``binders[i]`` is the number of variables bound in ``children[i]``; it is
    fixed by the arity and kept here so substitution is signature-free.
    """

    __slots__ = ("name", "sorts", "children", "nat", "binders", "fv", "_hash")

    def __init__(self, name: str, sorts: tuple = (), children: tuple = (),
                 nat=None, binders: tuple[int, ...] | None = None):
        children = tuple(children)
        if binders is None:
            binders = (0,) * len(children)
        self.name = name
        self.sorts = tuple(sorts)
        self.children = children
        self.nat = nat
        self.binders = tuple(binders)
        fv = 0
        for c, b in zip(children, self.binders):
            k = c.fv - b
            if k > fv:
                fv = k
        self.fv = fv
        self._hash = hash((name, self.sorts, children, nat))

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Con and self._hash == other._hash and self.name == other.name
                and self.nat == other.nat and self.sorts == other.sorts
                and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = [repr(self.name)]
        if self.sorts:
            parts.append("sorts=" + repr(self.sorts))
        if self.children:
            parts.append("children=" + repr(self.children))
        if self.nat is not None:
            parts.append(f"nat={self.nat!r}")
        return f"Con({', '.join(parts)})"

    def replace_child(self, i: int, child) -> Con:
        children = self.children[:i] + (child,) + self.children[i + 1:]
        return Con(self.name, self.sorts, children, self.nat, self.binders)


Term = Union[Var, Con]
Context = tuple  # tuple[Sort, ...], index 0 innermost


def extend(ctx: Sequence, binders: Sequence) -> tuple:
    """Extend ``ctx`` by binders listed outermost-first (the last one becomes index 0)."""
    return tuple(reversed(binders)) + tuple(ctx)


@dataclass(frozen=True)
class ArgSpec:
    binders: tuple[SortExpr, ...]
    sort: SortExpr


@dataclass(frozen=True)
class Arity:
    name: str
    degree: int
    args: tuple[ArgSpec, ...]
    out: SortExpr
    nat_param: bool = False

    @property
    def binder_counts(self) -> tuple[int, ...]:
        return tuple(len(a.binders) for a in self.args)


class TermSignature:
    def __init__(self, sorts: SortSignature, arities: Sequence[Arity] | Mapping[str, Arity]):
        if isinstance(arities, Mapping):
            arities = list(arities.values())
        self.sorts = sorts
        self.arities: dict[str, Arity] = {}
        for a in arities:
            if not a.name:
                raise TermError("empty arity name")
            if a.name in self.arities:
                raise TermError(f"duplicate arity {a.name!r}")
            for e in (a.out, *(x.sort for x in a.args), *(b for x in a.args for b in x.binders)):
                validate_sort(sorts, e, a.degree)
            self.arities[a.name] = a

    def __eq__(self, other):
        return (isinstance(other, TermSignature) and self.sorts == other.sorts
                and self.arities == other.arities)

    def __hash__(self):
        return hash((self.sorts, tuple(self.arities.items())))

    def __repr__(self):
        return f"TermSignature({list(self.sorts.constructors)}, {list(self.arities)})"

    def arity(self, name: str) -> Arity:
        try:
            return self.arities[name]
        except KeyError:
            raise UnknownArity(name) from None

    def con(self, name: str, *children: Term, sorts: Sequence[Sort] = (), nat: int | None = None) -> Con:
        """Build a constructor node, filling in the binder counts from the arity."""
        a = self.arity(name)
        return Con(name, tuple(sorts), children, nat, a.binder_counts)

    def extended(self, extra: Sequence[Arity]) -> TermSignature:
        return TermSignature(self.sorts, [*self.arities.values(), *extra])


def size(t) -> int:
    if isinstance(t, Con):
        return 1 + sum(size(c) for c in t.children)
    return 1


def sort_of(sig: TermSignature, ctx: Sequence[Sort], t: Term, *, degree: int = 0,
            _pos: tuple[int, ...] = ()) -> Sort:
    """Sort of ``t`` in ``ctx``; raises :class:`TermError` if ill-sorted.

    ``degree`` > 0 admits sort metavariables up to that index as opaque sorts.
    """
    if isinstance(t, Var):
        if not 0 <= t.index < len(ctx):
            raise BadIndex(t.index, len(ctx), _pos)
        return ctx[t.index]
    if not isinstance(t, Con):
        raise TermError(f"not a term: {t!r}")
    a = sig.arity(t.name)
    if len(t.sorts) != a.degree:
        raise IllSorted(_pos, f"{a.degree} sort argument(s)", f"{len(t.sorts)}", t.name)
    for s in t.sorts:
        try:
            validate_sort(sig.sorts, s, degree)
        except SortError as e:
            raise IllSorted(_pos, "a sort", s, str(e)) from None
    if a.nat_param != (t.nat is not None):
        raise IllSorted(_pos, "a natural parameter" if a.nat_param else "no natural parameter",
                        t.nat, t.name)
    if a.nat_param and (not isinstance(t.nat, int) or t.nat < 0):
        raise IllSorted(_pos, "a natural number", t.nat, t.name)
    if len(t.children) != len(a.args):
        raise IllSorted(_pos, f"{len(a.args)} argument(s)", len(t.children), t.name)
    if t.binders != a.binder_counts:
        raise IllSorted(_pos, f"binder shape {a.binder_counts}", t.binders, t.name)
    for i, (spec, child) in enumerate(zip(a.args, t.children)):
        binders = [instantiate_sort_expr(b, t.sorts) for b in spec.binders]
        expected = instantiate_sort_expr(spec.sort, t.sorts)
        got = sort_of(sig, extend(ctx, binders), child, degree=degree, _pos=_pos + (i,))
        if got != expected:
            raise IllSorted(_pos + (i,), expected, got)
    return instantiate_sort_expr(a.out, t.sorts)


# -- renaming and substitution ----------------------------------------------

def _rename(t, f: Callable[[int], int], depth: int):
    if t.fv <= depth:
        return t
    if type(t) is Var:
        return Var(f(t.index - depth) + depth)
    return Con(t.name, t.sorts,
               tuple(_rename(c, f, depth + b) for c, b in zip(t.children, t.binders)),
               t.nat, t.binders)


def rename(t: Term, rho: Sequence[int] | Callable[[int], int]) -> Term:
    """Apply the variable renaming ``rho`` to the free variables of ``t``."""
    f = rho if callable(rho) else rho.__getitem__
    return _rename(t, f, 0)


def weaken(t: Term, by: int, cutoff: int = 0) -> Term:
    """Shift free variables at or above ``cutoff`` up by ``by``."""
    if by == 0:
        return t
    return _rename(t, lambda i: i + by, cutoff)


def _bind(t, sigma: Callable[[int], Term], depth: int):
    if t.fv <= depth:
        return t
    if type(t) is Var:
        return weaken(sigma(t.index - depth), depth)
    return Con(t.name, t.sorts,
               tuple(_bind(c, sigma, depth + b) for c, b in zip(t.children, t.binders)),
               t.nat, t.binders)


def bind(t: Term, sigma: Sequence[Term] | Callable[[int], Term]) -> Term:
    """Simultaneous capture-avoiding substitution of ``sigma(i)`` for ``Var(i)``."""
    f = sigma if callable(sigma) else sigma.__getitem__
    return _bind(t, f, 0)


def shift(sigma: Sequence[Term], binders: Sequence) -> tuple[Term, ...]:
    """Lift a substitution under ``len(binders)`` fresh variables."""
    k = len(binders)
    return tuple(Var(i) for i in range(k)) + tuple(weaken(s, k) for s in sigma)


def subst1(t: Term, u: Term) -> Term:
    """Substitute ``u`` for the innermost variable of ``t`` and lower the rest."""
    return _bind(t, lambda i: u if i == 0 else Var(i - 1), 0)


# -- enumeration --------------------------------------------------------------

def sort_universe(sig: SortSignature, max_size: int) -> tuple[Sort, ...]:
    """All sorts with at most ``max_size`` constructor nodes, smallest first."""
    by_size: dict[int, list[Sort]] = {}
    for n in range(1, max_size + 1):
        found: list[Sort] = []
        for name, k in sig.constructors.items():
            if k == 0:
                if n == 1:
                    found.append(Sort(name))
                continue
            for parts in _compositions(n - 1, k):
                for args in itertools.product(*(by_size.get(p, []) for p in parts)):
                    found.append(Sort(name, tuple(args)))
        by_size[n] = found
    return tuple(s for n in range(1, max_size + 1) for s in by_size[n])


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write n as a sum of k positive parts, lexicographic."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


class Enumerator:
    """Deterministic exhaustive generator of well-sorted terms by node count.

    Sort parameters that are not fixed by the requested sort range over
    ``sort_universe(sig.sorts, sort_bound)``; natural parameters range over
    ``0..nat_max``.
    """

    def __init__(self, sig: TermSignature, nat_max: int, sort_bound: int = 3):
        self.sig = sig
        self.nat_max = nat_max
        self.universe = sort_universe(sig.sorts, sort_bound)
        self._cache: dict = {}

    def exact(self, ctx: tuple, sort: Sort, n: int) -> tuple[Term, ...]:
        key = (ctx, sort, n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out: list[Term] = []
        if n == 1:
            out.extend(Var(i) for i, s in enumerate(ctx) if s == sort)
        for a in self.sig.arities.values():
            k = len(a.args)
            if (k == 0) != (n == 1):
                continue
            for sorts in self._sort_params(a, sort):
                nats = range(self.nat_max + 1) if a.nat_param else (None,)
                child_ctx = [extend(ctx, [instantiate_sort_expr(b, sorts) for b in spec.binders])
                             for spec in a.args]
                child_sorts = [instantiate_sort_expr(spec.sort, sorts) for spec in a.args]
                for m in nats:
                    if k == 0:
                        out.append(Con(a.name, sorts, (), m, ()))
                        continue
                    for parts in _compositions(n - 1, k):
                        pools = [self.exact(c, s, p) for c, s, p in zip(child_ctx, child_sorts, parts)]
                        for children in itertools.product(*pools):
                            out.append(Con(a.name, sorts, children, m, a.binder_counts))
        result = tuple(out)
        self._cache[key] = result
        return result

    def _sort_params(self, a: Arity, sort: Sort) -> Iterator[tuple[Sort, ...]]:
        env: dict[int, SortExpr] = {}
        if not match_sort(a.out, sort, env):
            return
        free = [i for i in range(1, a.degree + 1) if i not in env]
        for choice in itertools.product(self.universe, repeat=len(free)):
            full = dict(env)
            full.update(zip(free, choice))
            yield tuple(full[i] for i in range(1, a.degree + 1))

    def upto(self, ctx: Sequence[Sort], sort: Sort, max_nodes: int) -> Iterator[Term]:
        ctx = tuple(ctx)
        for n in range(1, max_nodes + 1):
            yield from self.exact(ctx, sort, n)


def enumerate_terms(sig: TermSignature, ctx: Sequence[Sort], sort: Sort, max_nodes: int,
                    sort_bound: int = 3) -> Iterator[Term]:
    """All well-sorted terms of ``sort`` in ``ctx`` with at most ``max_nodes`` nodes."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    return Enumerator(sig, max_nodes, sort_bound).upto(ctx, sort, max_nodes)

