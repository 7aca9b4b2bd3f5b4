import pytest

from synsem import RuleSet, SortTranslation, UnknownBuiltin, builtin, format_sort
from synsem.stdlib import BUILTINS, CONSTANT_NAMES, ulc_constants
from synsem.translation import Representation


@pytest.mark.parametrize("name", BUILTINS)
def test_every_builtin_loads(name):
    assert isinstance(builtin(name), (RuleSet, Representation, SortTranslation))


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        builtin("lisp")


def test_ulc_shape():
    ulc = builtin("ulc")
    a = ulc.signature.arities
    assert list(a) == ["app", "abs"]
    assert a["app"].binder_counts == (0, 0) and a["abs"].binder_counts == (1,)
    assert [r.name for r in ulc.rules] == ["beta"]


def test_pcf_arities():
    a = builtin("pcf").signature.arities
    assert list(a) == ["app", "abs", "rec", "tttt", "ffff", "nats", "Succ", "Pred", "Zero",
                       "CondN", "CondB", "bottom"]
    assert (a["app"].degree, a["abs"].degree, a["rec"].degree, a["bottom"].degree) == (2, 2, 1, 1)
    assert a["nats"].nat_param and not a["Succ"].nat_param


def test_pcf_rules_by_name():
    assert [r.name for r in builtin("pcf").rules] == [
        "app_abs", "condN_t", "condN_f", "condB_t", "condB_f", "succ_red", "zero_t",
        "zero_f", "pred_Succ", "pred_z", "rec_a"]


def test_figure_variant_differs_only_in_two_rules():
    a, b = builtin("pcf"), builtin("pcf_figure")
    assert a.signature == b.signature
    diff = {r.name for r in a.rules if r != b.rule(r.name)}
    assert diff == {"zero_f", "pred_Succ"}


def test_constants_are_closed_ulc_terms():
    k = ulc_constants()
    assert tuple(k) == CONSTANT_NAMES
    assert all(t.fv == 0 for t in k.values())


def test_goedel_gentzen_clauses():
    g = builtin("cpc2ipc-sorts")
    shown = {c: format_sort(e) for c, e in g.clauses.items()}
    assert shown == {
        "p": "(imp (imp p bot) bot)",
        "q": "(imp (imp q bot) bot)",
        "r": "(imp (imp r bot) bot)",
        "top": "(imp (imp top bot) bot)",
        "bot": "(imp (imp bot bot) bot)",
        "and": "(and 1 2)",
        "or": "(imp (and (imp 1 bot) (imp 2 bot)) bot)",
        "imp": "(imp 1 2)",
    }
    assert builtin("cpc2ipc").sorts == g
