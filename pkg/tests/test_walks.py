import pytest
from hypothesis import given, strategies as st

from conftest import ordinal_pairs, small_ordinals
from ordcoh import walks
from ordcoh.csystem import CANONICAL, FULL, CSystem
from ordcoh.ordcore import OMEGA, compare, fund_seq, nat, parse, predecessor
from ordcoh.sampling import ord_key, probe_points

W = OMEGA


def oracle_steps(alpha, beta):
    """Step loop straight from the canonical definition of the ladders."""
    steps, cur = [beta], beta
    while cur is not alpha:
        if cur.is_successor:
            cur = predecessor(cur)
        else:
            k = 0
            while compare(fund_seq(cur, k), alpha) < 0:
                k += 1
            cur = fund_seq(cur, k)
        steps.append(cur)
    return steps


def oracle_weight(xi, alpha):
    """otp(C_xi ∩ alpha) by enumeration."""
    if xi.is_successor:
        return int(compare(predecessor(xi), alpha) < 0)
    k = 0
    while compare(fund_seq(xi, k), alpha) < 0:
        k += 1
    return k


def test_trace_examples():
    assert walks.trace(CANONICAL, nat(2), W).as_strings() == ["w", "2"]
    assert walks.trace(CANONICAL, nat(3), parse("w*2")).as_strings() == ["w*2", "w", "3"]
    assert walks.trace(CANONICAL, W, W).as_strings() == ["w"]


def test_rho_examples():
    assert walks.rho(2, CANONICAL, nat(2), W) == 2
    assert walks.rho(1, CANONICAL, nat(2), W) == 2
    assert walks.rho(3, CANONICAL, nat(2), W) == 0


def test_max_l_examples():
    assert walks.max_l(CANONICAL, nat(3), parse("w*2")) is nat(2)
    assert walks.max_l(CANONICAL, nat(1), W) is nat(0)


def test_argument_order_errors():
    with pytest.raises(ValueError):
        walks.trace(CANONICAL, W, nat(3))
    with pytest.raises(ValueError):
        walks.max_l(CANONICAL, W, W)
    with pytest.raises(ValueError):
        walks.rho(4, CANONICAL, nat(1), W)


@given(ordinal_pairs())
def test_trace_matches_oracle(pair):
    a, b = pair
    assert list(walks.trace(CANONICAL, a, b)) == oracle_steps(a, b)


@given(ordinal_pairs())
def test_rho_values_match_oracle(pair):
    a, b = pair
    steps = oracle_steps(a, b)
    assert walks.rho2(CANONICAL, a, b) == len(steps)
    assert walks.rho1(CANONICAL, a, b) == max([0] + [oracle_weight(x, a) for x in steps[:-1]])
    assert walks.rho3(CANONICAL, a, b) == 0  # canonical ladders are never whole


@given(ordinal_pairs())
def test_full_system_walks_in_one_step(pair):
    a, b = pair
    if a is b:
        return
    assert walks.rho2(FULL, a, b) == 2
    assert walks.rho3(FULL, a, b) == int(a.is_limit)
    if a.is_successor:
        assert walks.max_l(FULL, a, b) is predecessor(a)


@given(small_ordinals(), small_ordinals(), small_ordinals())
def test_traces_concatenate_below_max_l(a, b, c):
    a, b, c = sorted([a, b, c], key=ord_key)
    if not (compare(a, b) < 0 and compare(b, c) < 0):
        return
    if compare(walks.max_l(CANONICAL, b, c), a) < 0:
        joined = list(walks.trace(CANONICAL, b, c)) + list(walks.trace(CANONICAL, a, b))[1:]
        assert list(walks.trace(CANONICAL, a, c)) == joined


def test_trace_fuel():
    with pytest.raises(walks.FuelExhaustedError):
        walks.trace(CANONICAL, parse("w^2*2+w*3+7"), parse("w^3"), fuel=2)


# -- coherence profiles -------------------------------------------------------------


def test_profile_examples():
    p2 = walks.coherence_profile(2, CANONICAL, W, parse("w*2"), 10 ** 4)
    assert p2.outcome == walks.PiecewiseDiff(((nat(0), W, 1),))
    p1 = walks.coherence_profile(1, CANONICAL, W, parse("w*2"), 10 ** 4)
    assert p1.outcome == walks.FiniteDiff(())
    with pytest.raises(ValueError):
        walks.coherence_profile(2, CANONICAL, W, W)
    with pytest.raises(ValueError):
        walks.coherence_profile(2, FULL, nat(1), W)


def test_profile_fuel_is_reported_not_raised():
    prof = walks.coherence_profile(2, CANONICAL, parse("w^2*2+w+1"), parse("w^3*3"), fuel=3)
    assert isinstance(prof.outcome, walks.FuelExhausted)
    assert not prof.closed


def test_rho1_profile_rejects_whole_ladders():
    C = CSystem("table", {"w*2": "full"})
    with pytest.raises(ValueError):
        walks.coherence_profile(1, C, W, parse("w*2"))


@given(ordinal_pairs(), st.integers(0, 1000))
def test_rho2_profile_matches_probes(pair, seed):
    b, c = pair
    if b.is_zero or b is c:
        return
    out = walks.coherence_profile(2, CANONICAL, b, c).outcome
    assert isinstance(out, walks.PiecewiseDiff)
    for x in probe_points(b, 40, seed, [lo for lo, _, _ in out.pieces]):
        assert out.value_at(x) == walks.rho2(CANONICAL, x, c) - walks.rho2(CANONICAL, x, b)


@given(ordinal_pairs(), st.integers(0, 1000))
def test_rho1_profile_is_the_difference_set(pair, seed):
    b, c = pair
    if b.is_zero or b is c:
        return
    out = walks.coherence_profile(1, CANONICAL, b, c).outcome
    assert isinstance(out, walks.FiniteDiff)
    diff = set(out.points)
    for x in probe_points(b, 40, seed, out.points):
        assert (walks.rho1(CANONICAL, x, b) != walks.rho1(CANONICAL, x, c)) == (x in diff)


def test_table_system_profile_agrees_with_probes():
    C = CSystem("table", {"w*2": ["w", "w+5"], "w^2": ["3", "w*2"]})
    b, c = parse("w*2"), parse("w^2")
    out = walks.coherence_profile(2, C, b, c).outcome
    for x in probe_points(b, 60, 1, [lo for lo, _, _ in out.pieces]):
        assert out.value_at(x) == walks.rho2(C, x, c) - walks.rho2(C, x, b)


def test_infinite_nonzero_piece():
    out = walks.coherence_profile(2, CANONICAL, W, parse("w*2")).outcome
    wit = walks.infinite_nonzero_piece(out)
    assert wit is not None and wit.value == 1
