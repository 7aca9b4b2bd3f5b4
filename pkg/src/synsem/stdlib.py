"""Builtin languages and translations, loaded from the ``langs`` directory."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .rewrite import RuleSet
from .syntax import parse_representation, parse_signature
from .terms import Term

__all__ = ["UnknownBuiltin", "BUILTINS", "builtin", "builtin_text", "ulc_constants", "CONSTANT_NAMES"]

SIGNATURES = ("ulc", "stlc", "pcf", "pcf_figure", "cpc", "ipc")
REPRESENTATIONS = ("pcf2ulc", "cpc2ipc-sorts", "cpc2ipc")
BUILTINS = SIGNATURES + REPRESENTATIONS

# let-bound constants of pcf2ulc
CONSTANT_NAMES = ("True", "False", "Succ", "Pred", "IsZero", "Cond", "Omega", "Theta", "Y")


class UnknownBuiltin(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown builtin {self.name!r} (known: {', '.join(BUILTINS)})"


def builtin_text(name: str) -> str:
    if name in SIGNATURES:
        fname = f"{name}.sig"
    elif name in REPRESENTATIONS:
        fname = f"{name}.rep"
    else:
        raise UnknownBuiltin(name)
    return resources.files("synsem").joinpath("langs").joinpath(fname).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def builtin(name: str):
    """A builtin :class:`RuleSet`, :class:`Representation` or :class:`SortTranslation`."""
    text = builtin_text(name)
    if name in SIGNATURES:
        return parse_signature(text, name, f"<builtin {name}>")
    return parse_representation(text, _language, name, f"<builtin {name}>")


def _language(name: str) -> RuleSet:
    if name not in SIGNATURES:
        raise UnknownBuiltin(name)
    return builtin(name)


def ulc_constants() -> dict[str, Term]:
    """The closed lambda terms used by the PCF compiler, by name."""
    rep = builtin("pcf2ulc")
    return {n: rep.lets[n][0] for n in CONSTANT_NAMES}
