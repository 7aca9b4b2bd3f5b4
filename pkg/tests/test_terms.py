import pytest
from hypothesis import given, settings, strategies as st

from synsem import BadIndex, Con, IllSorted, Sort, UnknownArity, Var, bind, builtin, rename, shift, sort_of, subst1
from synsem.terms import Enumerator, enumerate_terms, extend, size, weaken

from conftest import BOOL, NAT, STAR, arr
from oracles import db_tuple, ulc_bind_oracle, ulc_count

ULC = builtin("ulc").signature
PCF = builtin("pcf").signature


def app(f, a):
    return ULC.con("app", f, a)


def lam(b):
    return ULC.con("abs", b)


OMEGA_HALF = lam(app(Var(0), Var(0)))
OMEGA = app(OMEGA_HALF, OMEGA_HALF)


def test_extend_order():
    # binders are written outermost-first; the last one is index 0
    assert extend((NAT,), [BOOL, STAR]) == (STAR, BOOL, NAT)


def test_sort_of_pcf_abs():
    t = PCF.con("abs", Var(0), sorts=(BOOL, BOOL))
    assert sort_of(PCF, (), t) == arr(BOOL, BOOL)


def test_sort_of_var():
    assert sort_of(ULC, (STAR,), Var(0)) == STAR


def test_sort_of_ill_sorted_application():
    t = PCF.con("app", PCF.con("tttt"), PCF.con("nats", nat=0), sorts=(NAT, BOOL))
    with pytest.raises(IllSorted) as e:
        sort_of(PCF, (), t)
    assert e.value.position == (0,)


def test_sort_of_errors():
    with pytest.raises(BadIndex):
        sort_of(ULC, (STAR,), Var(1))
    with pytest.raises(UnknownArity):
        sort_of(ULC, (), Con("nope"))


def test_rename_identity_and_swap():
    t = lam(app(Var(0), Var(2)))
    assert rename(t, [0, 1]) == t
    assert rename(Var(0), [1, 0]) == Var(1)


def test_rename_lifts_under_binder():
    t = lam(app(Var(0), Var(1)))
    assert rename(t, [1]) == lam(app(Var(0), Var(2)))
    assert rename(t, [1]) == bind(t, [Var(1)])


def test_bind_unit_laws():
    sigma = [OMEGA, Var(0)]
    assert bind(Var(0), sigma) == OMEGA
    t = lam(app(Var(1), Var(2)))
    assert bind(t, [Var(0), Var(1)]) == t


def test_bind_closed_value_under_binder():
    t = lam(app(Var(1), Var(0)))
    assert bind(t, [OMEGA]) == lam(app(OMEGA, Var(0)))
    assert db_tuple(bind(t, [OMEGA])) == ulc_bind_oracle(t, 1, [OMEGA], 0)


def test_bind_open_value_is_weakened():
    t = lam(app(Var(1), Var(0)))
    assert bind(t, [Var(0)]) == lam(app(Var(1), Var(0)))
    u = lam(Var(1))
    assert bind(lam(Var(1)), [u]) == lam(lam(Var(2)))


def test_shift():
    sigma = [OMEGA, Var(3)]
    s = shift(sigma, [STAR])
    assert s[0] == Var(0)
    assert s[1] == rename(OMEGA, lambda i: i + 1) == OMEGA
    assert s[2] == Var(4)
    ident = [Var(0), Var(1)]
    assert list(shift(ident, [STAR, STAR])) == [Var(i) for i in range(4)]


def test_subst1():
    u = lam(Var(0))
    assert subst1(Var(0), u) == u
    assert subst1(Var(1), u) == Var(0)
    assert subst1(app(Var(0), Var(0)), OMEGA_HALF) == OMEGA


def test_weaken_cutoff():
    assert weaken(lam(app(Var(0), Var(1))), 2) == lam(app(Var(0), Var(3)))
    assert weaken(Var(0), 1, cutoff=1) == Var(0)


def test_enumerate_single_var():
    assert list(enumerate_terms(ULC, (STAR,), STAR, 1)) == [Var(0)]


def test_enumerate_closed_ulc_count():
    terms = list(enumerate_terms(ULC, (), STAR, 3))
    assert len(terms) == sum(ulc_count(n, 0) for n in range(1, 4)) == 3


@pytest.mark.parametrize("n,free", [(n, f) for n in range(1, 7) for f in range(3)])
def test_enumeration_counts_match_oracle(n, free):
    en = Enumerator(ULC, 0)
    terms = en.exact((STAR,) * free, STAR, n)
    assert len(terms) == ulc_count(n, free)
    assert len(set(terms)) == len(terms)
    assert all(size(t) == n for t in terms)


def test_enumerate_pcf_bool_constants():
    got = list(enumerate_terms(PCF, (), BOOL, 1))
    assert got == [PCF.con("tttt"), PCF.con("ffff"), PCF.con("bottom", sorts=(BOOL,))]


def test_enumerate_nat_parameter_range():
    got = list(enumerate_terms(PCF, (), NAT, 2))
    nats = [t.nat for t in got if t.name == "nats"]
    assert nats == [0, 1, 2]


def test_enumeration_is_deterministic():
    a = list(enumerate_terms(PCF, (NAT,), NAT, 4))
    b = list(enumerate_terms(PCF, (NAT,), NAT, 4))
    assert a == b and len(a) > 50


def test_enumerated_terms_are_well_sorted():
    for ctx in [(), (NAT,), (BOOL, NAT)]:
        for s in [NAT, BOOL, arr(NAT, BOOL)]:
            for t in enumerate_terms(PCF, ctx, s, 4):
                assert sort_of(PCF, ctx, t) == s


# random ULC terms against the named-variable oracle

shapes = st.recursive(
    st.integers(0, 7),
    lambda sub: st.one_of(st.tuples(st.just("app"), sub, sub), st.tuples(st.just("lam"), sub)),
    max_leaves=10)


def build(shape, scope: int):
    """Shape to term; leaves pick a variable in scope (or the identity when closed)."""
    if isinstance(shape, int):
        return Var(shape % scope) if scope else lam(Var(0))
    if shape[0] == "app":
        return app(build(shape[1], scope), build(shape[2], scope))
    return lam(build(shape[1], scope + 1))


def ulc_terms(free: int):
    return shapes.map(lambda sh: build(sh, free))


@st.composite
def bind_case(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 3))
    t = draw(ulc_terms(n))
    sigma = [draw(ulc_terms(m)) for _ in range(n)]
    return t, n, sigma, m


@settings(max_examples=300, deadline=None)
@given(bind_case())
def test_bind_matches_named_oracle(case):
    t, n, sigma, m = case
    assert db_tuple(bind(t, sigma)) == ulc_bind_oracle(t, n, sigma, m)


@settings(max_examples=200, deadline=None)
@given(bind_case(), st.data())
def test_bind_associative(case, data):
    t, n, sigma, m = case
    tau = [data.draw(ulc_terms(2)) for _ in range(m)]
    assert bind(bind(t, sigma), tau) == bind(t, [bind(s, tau) for s in sigma])


@settings(max_examples=200, deadline=None)
@given(ulc_terms(3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_rename_is_bind_with_variables(t, rho):
    assert rename(t, rho) == bind(t, [Var(i) for i in rho])
