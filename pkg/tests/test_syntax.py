import pytest
from hypothesis import given, settings, strategies as st

from synsem import ParseError, Sort, builtin, parse_signature, parse_term, print_signature, print_term
from synsem.stdlib import SIGNATURES, _language, builtin_text, ulc_constants
from synsem.syntax import parse_context, parse_representation, print_representation, tokenize
from synsem.terms import Enumerator, sort_universe
from synsem.translation import default_contexts

ULC_TEXT = ("sorts { * : 0; } terms { app : *, * -> *; abs : {*} * -> *; } "
            "rules { beta : M{*}:*, N:* |- (app (abs M) N) => M[N]; }")


def test_ulc_file_matches_builtin():
    assert parse_signature(ULC_TEXT, "ulc") == builtin("ulc")


def test_unbalanced_braces():
    with pytest.raises(ParseError) as e:
        parse_signature(ULC_TEXT[:-1])
    assert "'}'" in str(e.value) and e.value.line >= 1


@pytest.mark.parametrize("name", SIGNATURES)
def test_print_parse_print_fixpoint(name):
    once = print_signature(builtin(name))
    twice = print_signature(parse_signature(once, name))
    assert once == twice
    assert parse_signature(once, name) == builtin(name)


def test_comments_and_positions():
    toks = tokenize("# comment\n  (app x)")
    assert [(t.text, t.line, t.col) for t in toks[:2]] == [("(", 2, 3), ("app", 2, 4)]


@pytest.mark.parametrize("text,where", [
    ("(app (abs (var 1)) (nope))", (1, 21)),
    ("(app (abs (var 1))\n   (var 3))", (2, 4)),
    ("(app[*,*] (var 1) (var 1))", (1, 1)),
    ("(app (var 1)", (1, 1)),
    ("(abs (var 0))", (1, 7)),
])
def test_term_diagnostics_are_positioned(text, where):
    with pytest.raises(ParseError) as e:
        parse_term(builtin("ulc").signature, (Sort("*"),), text)
    assert (e.value.line, e.value.col) == where


def test_sort_argument_count():
    pcf = builtin("pcf").signature
    with pytest.raises(ParseError):
        parse_term(pcf, (), "(bottom[nat,nat])")
    assert parse_term(pcf, (), "(bottom[nat])") == pcf.con("bottom", sorts=(Sort("nat"),))


def test_sort_inference():
    pcf = builtin("pcf").signature
    explicit = parse_term(pcf, (), "(app[nat,nat] (abs[nat,nat] (var 1)) (nats 0))")
    assert parse_term(pcf, (), "(app (abs (var 1)) (nats 0))") == explicit
    with pytest.raises(ParseError, match="cannot infer"):
        parse_term(pcf, (), "bottom")


def test_context_syntax():
    sig = builtin("pcf").signature.sorts
    assert parse_context(sig, "nat, (arr nat bool)") == (Sort("nat"), Sort("arr", (Sort("nat"), Sort("bool"))))
    assert parse_context(sig, "") == ()


def test_paper_style():
    k = ulc_constants()
    assert print_term(k["True"], "paper") == "Abs (Abs 2)"
    two = builtin("pcf2ulc").apply("nats", (), (), 2)
    assert print_term(two, "paper") == "Abs (Abs (2 @ (Abs (Abs (2 @ (Abs (Abs 1) @ 2 @ 1))) @ 2 @ 1)))"


def test_canonical_style():
    pcf = builtin("pcf").signature
    t = parse_term(pcf, (), "(app (abs (var 1)) (nats 3))")
    assert print_term(t) == "(app[nat,nat] (abs[nat,nat] (var 1)) (nats 3))"
    assert print_term(pcf.con("tttt")) == "(tttt)"


@pytest.mark.parametrize("name", SIGNATURES)
def test_roundtrip_enumerated(name):
    sig = builtin(name).signature
    en = Enumerator(sig, 2, sort_bound=2)
    n = 0
    for ctx in default_contexts(sig.sorts, 1):
        for s in sort_universe(sig.sorts, 2):
            for t in en.upto(ctx, s, 4):
                n += 1
                assert parse_term(sig, ctx, print_term(t)) == t
    assert n > 0


@pytest.mark.parametrize("name", ["pcf2ulc", "cpc2ipc", "cpc2ipc-sorts"])
def test_representation_roundtrip(name):
    rep = builtin(name)
    src, tgt = ("pcf", "ulc") if name == "pcf2ulc" else ("cpc", "ipc")
    text = print_representation(rep, src, tgt)
    again = parse_representation(text, _language, name)
    assert print_representation(again, src, tgt) == text


def test_representation_diagnostics():
    text = builtin_text("pcf2ulc").replace("term abs -> (abs $1);", "term abs -> (abs $3);")
    with pytest.raises(ParseError) as e:
        parse_representation(text, _language)
    assert "$3" in str(e.value) and e.value.line > 1


def test_missing_clause_needs_partial():
    text = builtin_text("cpc2ipc").replace(" partial", "")
    with pytest.raises(ParseError, match="orE"):
        parse_representation(text, _language)


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="()[]{},;:=#|->*abcsortm \n01", max_size=60))
def test_garbage_never_crashes(text):
    try:
        parse_signature(text)
    except ParseError as e:
        assert e.line >= 0
