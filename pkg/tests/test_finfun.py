import json
import random

import pytest
from hypothesis import given, strategies as st

from ordcoh.csystem import CANONICAL, CSystem
from ordcoh.families import random_piecewise
from ordcoh.finfun import (
    Embed, LazySum, OrdinalFunction, Piecewise, Unsupported, compare_functions, constant,
    finite_support, piecewise, rho_function, transform, window, zero_function,
)
from ordcoh.groupsalg import FgAbelianGroup
from ordcoh.ordcore import OMEGA, OrdinalInterval, compare, nat, omega_power, parse, predecessor
from ordcoh.sampling import probe_points, random_below

Z = FgAbelianGroup(1)
Z6 = FgAbelianGroup(1, (6,))
W = OMEGA


def rand_fun(seed, group=Z, pieces=4, bound=omega_power(3)):
    rng = random.Random(seed)
    dom = random_below(bound, rng, cmax=3)
    return random_piecewise(dom, group, rng, pieces=pieces)


def rand_finsupp(seed, group=Z, bound=omega_power(3)):
    rng = random.Random(seed)
    dom = random_below(bound, rng, cmax=3)
    if dom.is_zero:
        return zero_function(dom, group)
    pts = {random_below(dom, rng, cmax=3): (rng.randint(-3, 3),) + (rng.randint(0, 5),) * (group.ngens - 1)
           for _ in range(rng.randint(0, 4))}
    return finite_support(dom, group, pts)


# -- evaluation ------------------------------------------------------------------


def test_eval_examples():
    assert piecewise(parse("w*2"), Z, [(W, 1), (parse("w*2"), 0)])(W) == (0,)
    assert finite_support(W, Z, {3: 1})(nat(5)) == (0,)
    assert rho_function(2, CANONICAL, W)(nat(2)) == (2,)


def test_eval_outside_domain():
    with pytest.raises(ValueError):
        constant(W, Z, 1)(W)


def test_constructor_validation():
    with pytest.raises(ValueError):
        piecewise(W, Z, [(nat(3), 1)])
    with pytest.raises(ValueError):
        piecewise(W, Z, [(nat(3), 1), (nat(2), 0), (W, 1)])
    with pytest.raises(ValueError):
        finite_support(W, Z, {W: 1})
    with pytest.raises(ValueError):
        rho_function(2, CANONICAL, W, parse("w+1"))


# -- algebra ----------------------------------------------------------------------


def test_sum_with_negation_is_zero():
    f = constant(W, Z, 1)
    assert compare_functions("exact", f + (-f), zero_function(W, Z)).holds


def test_restrict_example():
    f = piecewise(parse("w^2"), Z, [(W, 1), (parse("w^2"), 2)])
    assert f.restrict(W).body == Piecewise(((W, (1,)),))


def test_lazy_rho_difference():
    f = rho_function(2, CANONICAL, parse("w*2"), W) - rho_function(2, CANONICAL, W)
    assert isinstance(f.body, LazySum)
    assert f(nat(3)) == (1,)
    assert f.closed_form().pieces == ((W, (1,)),)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_sum_is_pointwise(s1, s2):
    f = rand_fun(s1)
    g = rand_fun(s2, bound=parse("w^3*2"))
    if compare(g.domain, f.domain) < 0:
        f, g = g, f
    g = g.restrict(f.domain)
    h = f + g
    for x in probe_points(f.domain, 30, s1, f.breakpoints() + g.breakpoints()):
        assert h(x) == Z.add(f(x), g(x))


@given(st.integers(0, 10 ** 6), st.integers(-4, 4))
def test_scale_is_pointwise(seed, k):
    f = rand_fun(seed, Z6)
    h = f.scale(k)
    for x in probe_points(f.domain, 30, seed, f.breakpoints()):
        assert h(x) == Z6.scale(k, f(x))


@given(st.integers(0, 10 ** 6))
def test_json_round_trip(seed):
    for f in (rand_fun(seed, Z6), rand_finsupp(seed, Z6),
              rho_function(1 + seed % 3, CANONICAL, parse("w^2+w"), patch={3: 2})):
        again = OrdinalFunction.from_json(json.loads(json.dumps(f.to_json())))
        assert again == f


def test_table_embed():
    e = Embed(table=((2, (1,)),))
    f = rho_function(2, CANONICAL, W, embed=e)
    assert f(nat(0)) == (1,) and f(nat(7)) == (1,)
    g = rho_function(2, CANONICAL, W, embed=Embed(table=((1, (1,)),)))
    assert all(g(nat(i)) == (0,) for i in range(10))
    with pytest.raises(ValueError):
        Embed.from_json(Z, {"table": {"0": 1}})


# -- comparison -------------------------------------------------------------------


def test_modfinite_infinite_interval_witness():
    f = piecewise(W, Z, [(nat(5), 0), (W, 1)])
    v = compare_functions("modFinite", f, zero_function(W, Z))
    assert v.status == "no"
    assert v.witness == OrdinalInterval(nat(5), W)


def test_finite_noise_is_invisible_mod_finite():
    f = rand_fun(3)
    g = f + finite_support(f.domain, Z, {nat(3): 1}) if compare(nat(3), f.domain) < 0 else f
    assert compare_functions("modFinite", f, g).holds


def test_rho_difference_is_locally_constant():
    f = rho_function(2, CANONICAL, parse("w*2"), W)
    g = rho_function(2, CANONICAL, W)
    assert compare_functions("modLocallyConstant", f, g).holds
    assert compare_functions("modFinite", f, g).status == "no"


def test_rho1_of_different_tops_mod_finite():
    f = rho_function(1, CANONICAL, parse("w^3"), parse("w^2*2+3"))
    g = rho_function(1, CANONICAL, parse("w^2*2+3"))
    assert compare_functions("modFinite", f, g).holds
    v = compare_functions("exact", f, g)
    assert v.status == "no" and v.witness is parse("w^2")


def test_mod_bounded_needs_integer_group():
    f = constant(W, FgAbelianGroup(0, (2,)), 1)
    with pytest.raises(Unsupported):
        compare_functions("modBounded", f, f)
    assert compare_functions("modBounded", constant(W, Z, 7), zero_function(W, Z)).holds


def test_unknown_mode():
    with pytest.raises(ValueError):
        compare_functions("nearly", constant(W, Z, 1), constant(W, Z, 1))


def test_rho3_vanishes_without_whole_ladders():
    f = rho_function(3, CANONICAL, parse("w^2"))
    assert compare_functions("exact", f, zero_function(f.domain, Z)).holds
    C = CSystem("table", {"w*2": "full"})
    g = rho_function(3, C, parse("w*2"))
    assert g(W) == (1,) and g(nat(3)) == (0,)


@given(st.integers(0, 10 ** 6))
def test_exact_comparison_against_probes(seed):
    f, g = rand_fun(seed), rand_fun(seed + 1)
    dom = f.domain if compare(f.domain, g.domain) <= 0 else g.domain
    f, g = f.restrict(dom), g.restrict(dom)
    v = compare_functions("exact", f, g)
    probes = probe_points(dom, 60, seed, f.breakpoints() + g.breakpoints())
    if v.holds:
        assert all(f(x) == g(x) for x in probes)
    else:
        assert v.status == "no" and f(v.witness) != g(v.witness)


# -- transforms ---------------------------------------------------------------------


def test_del_examples():
    assert transform("del", constant(W, Z, 1)) == finite_support(W, Z, {0: 1})
    assert transform("del_inv", finite_support(W, Z, {0: 1})) == constant(W, Z, 1)


@given(st.integers(0, 10 ** 6))
def test_del_inv_after_del_is_identity(seed):
    f = rand_fun(seed, Z6)
    assert compare_functions("exact", transform("del_inv", transform("del", f)), f).holds


@given(st.integers(0, 10 ** 6))
def test_del_is_the_jump_function(seed):
    f = rand_fun(seed)
    d = transform("del", f)
    for x in probe_points(f.domain, 30, seed, f.breakpoints()):
        if x.is_zero:
            want = f(x)
        elif x.is_successor:
            want = (f(x)[0] - f(predecessor(x))[0],)
        else:
            continue
        assert d(x) == Z.element(want)


@given(st.integers(0, 10 ** 6))
def test_shift_round_trip_on_finite_support(seed):
    f = rand_finsupp(seed, bound=parse("w^3"))
    if not (f.domain.is_limit or f.domain.is_finite):
        return
    back = transform("shift_r_inv", transform("shift_r", f))
    assert compare_functions("exact", back, f).holds


def test_shift_needs_finite_support():
    with pytest.raises(Unsupported):
        transform("shift_r", rho_function(2, CANONICAL, parse("w^2")))
    with pytest.raises(ValueError):
        transform("sideways", constant(W, Z, 1))


def test_window():
    f = constant(parse("w*2"), Z, 4)
    g = window(f, nat(3), W)
    assert g(nat(2)) == (0,) and g(nat(3)) == (4,) and g(W) == (0,)
