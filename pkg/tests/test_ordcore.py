import pytest
from hypothesis import given, strategies as st

from conftest import tower_ordinals
from ordcoh.ordcore import (
    MAX_DEPTH, OMEGA, ONE, ZERO, Ordinal, OrdinalInterval, OrdinalSyntaxError, add, as_ordinal,
    classify, compare, format_ordinal, fund_seq, interval_is_infinite, ladder_index, left_subtract,
    nat, omega_power, parse, predecessor,
)

W = OMEGA


def terms_of(text):
    return [(format_ordinal(e), c) for e, c in parse(text).terms]


# -- notation ------------------------------------------------------------------


def test_parse_polynomial():
    assert terms_of("w^2*3+w+5") == [("2", 3), ("1", 1), ("0", 5)]


def test_parse_zero_has_no_terms():
    assert parse("0").terms == ()
    assert parse("0") is ZERO


def test_parse_merges_equal_tower_terms():
    assert terms_of("w^(w)+w^(w)") == [("w", 2)]


def test_parse_absorbs_smaller_terms():
    assert parse("3+w") is W
    assert parse("w + w^2") is omega_power(2)


def test_whitespace_is_ignored():
    assert parse(" w ^ 2 * 3 + 1 ") is parse("w^2*3+1")


@pytest.mark.parametrize("bad", ["", "w^", "3+", "w*", "x", "w^(2", "2)", "w**2", "+"])
def test_syntax_errors(bad):
    with pytest.raises(OrdinalSyntaxError):
        parse(bad)


def test_depth_cap():
    deep = "w^(" * (MAX_DEPTH + 1) + "1" + ")" * (MAX_DEPTH + 1)
    with pytest.raises((OrdinalSyntaxError, ValueError)):
        parse(deep)


@pytest.mark.parametrize("text", ["0", "7", "w", "w+1", "w^2*3+w+5", "w^(w)", "w^(w+1)*2+w^3+7",
                                  "w^(w^(w))"])
def test_format_is_canonical(text):
    assert format_ordinal(parse(text)) == text


@given(tower_ordinals())
def test_format_parse_round_trip(a):
    assert parse(format_ordinal(a)) is a


# -- order ---------------------------------------------------------------------


def test_compare_examples():
    assert compare(W, parse("w*2")) == -1
    assert compare(nat(5), W) == -1
    assert compare(parse("w^(w)"), parse("w^3*9+w")) == 1


def from_vector(vec):
    """The ordinal w^3*c3 + w^2*c2 + w*c1 + c0."""
    text = "+".join(f"w^{3 - i}*{c}" if i < 3 else str(c) for i, c in enumerate(vec) if c) or "0"
    return parse(text)


@st.composite
def with_vector(draw):
    vec = tuple(draw(st.integers(0, 5)) for _ in range(4))
    return from_vector(vec), vec


@given(with_vector(), with_vector())
def test_compare_matches_lexicographic_vectors(x, y):
    (a, va), (b, vb) = x, y
    assert compare(a, b) == (va > vb) - (va < vb)
    assert (a is b) == (va == vb)


@given(tower_ordinals(), tower_ordinals(), tower_ordinals())
def test_compare_is_a_total_order(a, b, c):
    assert compare(a, b) == -compare(b, a)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


# -- addition --------------------------------------------------------------------


def test_add_examples():
    assert add(nat(5), W) is W
    assert format_ordinal(add(W, nat(5))) == "w+5"
    assert add(parse("w^2+w"), parse("w^2")) is parse("w^2*2")


@given(with_vector(), with_vector())
def test_add_matches_vector_rule(x, y):
    # a + b keeps a's coefficients above b's leading exponent, then adds at it
    (a, va), (b, vb) = x, y
    lead = next((i for i, c in enumerate(vb) if c), None)
    if lead is None:
        want = va
    else:
        want = va[:lead] + (va[lead] + vb[lead],) + vb[lead + 1:]
    assert add(a, b) is from_vector(want)


@given(tower_ordinals(), tower_ordinals(), tower_ordinals())
def test_add_is_associative(a, b, c):
    assert add(add(a, b), c) is add(a, add(b, c))


@given(tower_ordinals(), tower_ordinals())
def test_add_is_monotone_in_right_argument(a, b):
    assert compare(a, add(a, b)) <= 0
    if not b.is_zero:
        assert compare(a, add(a, b)) < 0


@given(tower_ordinals(), tower_ordinals())
def test_left_subtract_inverts_add(a, b):
    lo, hi = (a, b) if compare(a, b) <= 0 else (b, a)
    assert add(lo, left_subtract(hi, lo)) is hi


# -- classification and fundamental sequences --------------------------------------


def test_classify_examples():
    kind, pred = classify(parse("w+3"))
    assert kind == "successor" and pred is parse("w+2")
    assert classify(parse("w^2"))[0] == "limit"
    assert classify(ZERO) == ("zero", None)


def test_predecessor_of_limit_fails():
    with pytest.raises(ValueError):
        predecessor(W)


def test_fund_seq_examples():
    assert fund_seq(W, 3) is nat(3)
    assert fund_seq(parse("w^2"), 2) is parse("w*2")
    assert fund_seq(parse("w*2"), 2) is parse("w+2")
    assert fund_seq(parse("w^(w)"), 3) is parse("w^3")


def test_fund_seq_needs_a_limit():
    with pytest.raises(ValueError):
        fund_seq(parse("w+1"), 0)


def limits():
    return tower_ordinals().filter(lambda a: a.is_limit)


@given(limits(), st.integers(0, 12))
def test_fund_seq_is_increasing_and_bounded(b, n):
    x, y = fund_seq(b, n), fund_seq(b, n + 1)
    assert compare(x, y) < 0
    assert compare(y, b) < 0


@given(limits(), tower_ordinals())
def test_ladder_index_matches_search(b, a):
    if compare(a, b) >= 0:
        return
    n = 0
    while compare(fund_seq(b, n), a) < 0:
        n += 1
    assert ladder_index(b, a) == n


@given(limits(), tower_ordinals())
def test_fundamental_sequences_are_cofinal(b, a):
    if compare(a, b) < 0:
        assert compare(fund_seq(b, ladder_index(b, a)), a) >= 0


# -- intervals -------------------------------------------------------------------


def test_intervals():
    iv = OrdinalInterval(nat(5), W)
    assert iv.is_infinite and nat(7) in iv and W not in iv
    assert not OrdinalInterval(W, parse("w+3")).is_infinite
    assert interval_is_infinite(parse("w+3"), parse("w*2"))
    with pytest.raises(ValueError):
        OrdinalInterval(W, nat(1))


def test_interning_and_conversion():
    assert Ordinal(((ONE, 1),)) is W
    assert as_ordinal(3) is nat(3)
    assert as_ordinal("w") is W
    with pytest.raises(ValueError):
        nat(-1)
