"""Sort signatures, sort trees and sort expressions.

A sort is a finite tree of constructors drawn from a :class:`SortSignature`.
A sort *expression* of degree ``n`` may additionally contain metavariables
``SortVar(1) .. SortVar(n)``; a plain sort is a sort expression of degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

__all__ = [
    "SortError",
    "UnknownConstructor",
    "ArityMismatch",
    "DegreeMismatch",
    "Sort",
    "SortVar",
    "SortExpr",
    "SortSignature",
    "SortTranslation",
    "validate_sort",
    "instantiate_sort_expr",
    "fold_sorts",
    "sort_vars",
    "match_sort",
    "format_sort",
]


class SortError(Exception):
    pass


class UnknownConstructor(SortError):
    def __init__(self, name: str):
        super().__init__(f"unknown sort constructor {name!r}")
        self.name = name


class ArityMismatch(SortError):
    def __init__(self, name: str, expected: int, got: int):
        super().__init__(f"sort constructor {name!r} expects {expected} argument(s), got {got}")
        self.name = name
        self.expected = expected
        self.got = got


class DegreeMismatch(SortError):
    pass


@dataclass(frozen=True)
class Sort:
    head: str
    args: tuple[SortExpr, ...] = ()

    def __str__(self) -> str:
        return format_sort(self)


@dataclass(frozen=True)
class SortVar:
    """Sort metavariable, 1-based."""

    index: int

    def __str__(self) -> str:
        return str(self.index)


SortExpr = Union[Sort, SortVar]


def format_sort(s: SortExpr) -> str:
    if isinstance(s, SortVar):
        return str(s.index)
    if not s.args:
        return s.head
    return "(" + " ".join([s.head, *(format_sort(a) for a in s.args)]) + ")"


@dataclass(frozen=True)
class SortSignature:
    constructors: Mapping[str, int]

    def __post_init__(self):
        for name, arity in self.constructors.items():
            if not isinstance(name, str) or not name:
                raise SortError(f"bad sort constructor name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise SortError(f"bad arity {arity!r} for sort constructor {name!r}")
        # freeze a private copy so later mutation of the caller's dict is harmless
        object.__setattr__(self, "constructors", dict(self.constructors))

    def __hash__(self):
        return hash(tuple(self.constructors.items()))

    def __contains__(self, name: str) -> bool:
        return name in self.constructors

    def atoms(self) -> list[Sort]:
        return [Sort(n) for n, k in self.constructors.items() if k == 0]


def validate_sort(sig: SortSignature, s: SortExpr, degree: int = 0) -> None:
    """Raise if ``s`` does not respect the declared arities.

    Metavariables are accepted only up to ``degree``.
    """
    if isinstance(s, SortVar):
        if not 1 <= s.index <= degree:
            raise DegreeMismatch(f"sort metavariable {s.index} out of range for degree {degree}")
        return
    if s.head not in sig.constructors:
        raise UnknownConstructor(s.head)
    expected = sig.constructors[s.head]
    if len(s.args) != expected:
        raise ArityMismatch(s.head, expected, len(s.args))
    for a in s.args:
        validate_sort(sig, a, degree)


def instantiate_sort_expr(e: SortExpr, args: Sequence[SortExpr], degree: int | None = None) -> SortExpr:
    """Replace metavariable ``i`` by ``args[i-1]``."""
    if degree is not None and len(args) != degree:
        raise DegreeMismatch(f"expression of degree {degree} applied to {len(args)} sort(s)")
    if not args:
        if isinstance(e, SortVar):
            raise DegreeMismatch(f"metavariable {e.index} in a degree-0 expression")
        return e
    return _inst(e, args)


def _inst(e: SortExpr, args: Sequence[SortExpr]) -> SortExpr:
    if isinstance(e, SortVar):
        if e.index > len(args):
            raise DegreeMismatch(f"metavariable {e.index} but only {len(args)} argument(s)")
        return args[e.index - 1]
    if not e.args:
        return e
    return Sort(e.head, tuple(_inst(a, args) for a in e.args))


def sort_vars(e: SortExpr) -> set[int]:
    if isinstance(e, SortVar):
        return {e.index}
    out: set[int] = set()
    for a in e.args:
        out |= sort_vars(a)
    return out


def match_sort(pattern: SortExpr, s: SortExpr, env: dict[int, SortExpr]) -> bool:
    """One-way matching of a sort expression against a sort; extends ``env`` in place."""
    if isinstance(pattern, SortVar):
        bound = env.get(pattern.index)
        if bound is None:
            env[pattern.index] = s
            return True
        return bound == s
    if not isinstance(s, Sort) or s.head != pattern.head or len(s.args) != len(pattern.args):
        return False
    return all(match_sort(p, a, env) for p, a in zip(pattern.args, s.args))


@dataclass(frozen=True)
class SortTranslation:
    """A representation of one sort signature in the sort trees of another.

    ``clauses[c]`` is a sort expression of degree ``arity(c)`` over ``target``.
    """

    source: SortSignature
    target: SortSignature
    clauses: Mapping[str, SortExpr] = field(default_factory=dict)

    def __post_init__(self):
        missing = [c for c in self.source.constructors if c not in self.clauses]
        if missing:
            raise SortError(f"sort translation has no clause for {', '.join(missing)}")
        extra = [c for c in self.clauses if c not in self.source.constructors]
        if extra:
            raise SortError(f"sort translation has clauses for unknown constructor(s) {', '.join(extra)}")
        for c, body in self.clauses.items():
            validate_sort(self.target, body, self.source.constructors[c])
        object.__setattr__(self, "clauses", dict(self.clauses))
        images = set(self.clauses.values())
        const = images.pop() if len(images) == 1 else None
        if const is not None and sort_vars(const):
            const = None
        object.__setattr__(self, "_constant", const)

    @property
    def constant(self) -> Optional[Sort]:
        """The single image sort, when every clause is the same closed sort."""
        return self._constant

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.clauses.items())))

    def __call__(self, s: SortExpr) -> SortExpr:
        return fold_sorts(self, s)

    @classmethod
    def identity(cls, sig: SortSignature) -> SortTranslation:
        return cls(sig, sig, {c: Sort(c, tuple(SortVar(i + 1) for i in range(k)))
                              for c, k in sig.constructors.items()})


def fold_sorts(tr: SortTranslation, s: SortExpr) -> SortExpr:
    """Structural fold of ``s`` along ``tr``.

    Metavariables are left in place, so folding a sort expression of degree n
    gives the translated expression of degree n.  The exception is a constant
    translation, where every sort, whatever it is, has the same image.
    """
    if isinstance(s, SortVar):
        return s if tr._constant is None else tr._constant
    clause = tr.clauses[s.head]
    folded = [fold_sorts(tr, a) for a in s.args]
    return instantiate_sort_expr(clause, folded, len(s.args))
