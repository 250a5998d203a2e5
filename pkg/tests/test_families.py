import random

import pytest
from hypothesis import given, strategies as st

from ordcoh.acceptance import coherent_family
from ordcoh.csystem import CANONICAL
from ordcoh.families import (
    ClubRule, IncoherentError, IndexedFamily, d_operator, dagger_holds, even_strategy_move,
    extend_exact, extend_trivialization, is_coherent, is_trivialization, odd_move, play_game,
    random_family, rho_family, start_game, stretch, trivialize_with_top, tree_report, verify_cocycle,
    zero_family,
)
from ordcoh.finfun import Unsupported, compare_functions, constant, finite_support, piecewise, zero_function
from ordcoh.groupsalg import FgAbelianGroup
from ordcoh.ordcore import OMEGA, OrdinalInterval, nat, omega_power, parse
from ordcoh.sampling import random_below, sort_ordinals

Z = FgAbelianGroup(1)
Z2 = FgAbelianGroup(0, (2,))
W = OMEGA
W2 = parse("w*2")


def rand_indices(rng, k, bound=omega_power(3)):
    pts = set()
    while len(pts) < k:
        x = random_below(bound, rng, cmax=3)
        if not x.is_zero:
            pts.add(x)
    return sort_ordinals(pts)


def all_zero(fam, mode="exact"):
    return all(compare_functions(mode, f, zero_function(f.domain, fam.group)).holds
               for f in fam.entries.values())


# -- construction and d -------------------------------------------------------------


def test_entry_domains_are_checked():
    with pytest.raises(ValueError):
        IndexedFamily(1, [W], Z, {(W,): constant(W2, Z, 1)})
    with pytest.raises(ValueError):
        IndexedFamily(1, [W, W2], Z, {(W,): constant(W, Z, 1)})


def test_d_of_one_family():
    fam = IndexedFamily(1, [W, W2], Z, {(W,): constant(W, Z, 1), (W2,): constant(W2, Z, 3)})
    d = d_operator(fam)
    assert d.tuples() == [(W, W2)]
    # (dF)(a, b) = F(b)|a - F(a)
    assert d[(W, W2)](nat(4)) == (2,)


def test_d_of_zero_family_is_restriction():
    z = IndexedFamily(0, [W, W2], Z, {(): constant(W2, Z, 5)}, W2)
    d = d_operator(z)
    assert d[(W,)] == constant(W, Z, 5)


@given(st.integers(0, 10 ** 6), st.integers(0, 3))
def test_dd_is_zero(seed, n):
    rng = random.Random(seed)
    fam = random_family(n, rand_indices(rng, n + 2), Z, rng)
    assert all_zero(d_operator(d_operator(fam)))


@given(st.integers(0, 10 ** 6))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    fam = random_family(2, rand_indices(rng, 4), Z2, rng)
    assert IndexedFamily.from_json(fam.to_json()).to_json() == fam.to_json()


# -- coherence ------------------------------------------------------------------------


def test_coherence_witness_is_located():
    fam = IndexedFamily(1, [W, W2], Z, {
        (W,): zero_function(W, Z),
        (W2,): piecewise(W2, Z, [(nat(5), 0), (W2, 1)]),
    })
    v = is_coherent(fam)
    assert v.status == "no"
    assert v.witness == (W, W2)
    assert v.detail.witness == OrdinalInterval(nat(5), W)


def test_finite_noise_keeps_coherence():
    fam = IndexedFamily(1, [W, W2], Z, {
        (W,): finite_support(W, Z, {3: 1}),
        (W2,): finite_support(W2, Z, {W: 4}),
    })
    assert is_coherent(fam).holds
    assert is_coherent(fam, "exact").status == "no"


# -- trivialization --------------------------------------------------------------------


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, 3]))
def test_trivialize_with_top(seed, n):
    rng = random.Random(seed)
    fam = coherent_family(n, rand_indices(rng, n + 2), Z, rng)
    psi = trivialize_with_top(fam)
    assert psi.n == n - 1
    assert is_trivialization(psi, fam).holds


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_trivialization_is_exact_for_exact_families(seed, n):
    rng = random.Random(seed)
    fam = d_operator(random_family(n - 1, rand_indices(rng, n + 2), Z, rng))
    assert is_trivialization(trivialize_with_top(fam, "exact"), fam, "exact").holds


def test_incoherent_family_has_no_trivialization():
    fam = IndexedFamily(1, [W, W2], Z, {
        (W,): zero_function(W, Z), (W2,): piecewise(W2, Z, [(nat(5), 0), (W2, 1)]),
    })
    with pytest.raises(IncoherentError) as exc:
        trivialize_with_top(fam)
    assert exc.value.verdict.witness == (W, W2)


def test_doubled_trivialization_is_rejected():
    rng = random.Random(7)
    fam = d_operator(random_family(1, rand_indices(rng, 4), Z, rng, pieces=4))
    psi = trivialize_with_top(fam)
    assert is_trivialization(psi, fam).holds
    if not all_zero(fam, "modFinite"):
        assert is_trivialization(psi.scale(2), fam).status == "no"


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2, 3]))
def test_extend_trivialization_keeps_the_lower_part(seed, n):
    rng = random.Random(seed)
    idx = rand_indices(rng, n + 3)
    fam = coherent_family(n, idx, Z, rng)
    xi = idx[-2]
    low = idx[:-2]
    psi_low = trivialize_with_top(fam.restrict_to(low))
    out = extend_trivialization(fam, psi_low, xi)
    assert is_trivialization(out, fam).holds
    if n > 1:
        assert all(out[t] is psi_low[t] for t in psi_low.tuples())
    else:
        top = low[-1]
        assert compare_functions("exact", out.function.restrict(top), psi_low.function).holds


def test_extend_exact_needs_order_two():
    with pytest.raises(ValueError):
        extend_exact(zero_family(1, [W], Z), [], {})


# -- stretching ------------------------------------------------------------------------


def test_stretch_along_a_ladder():
    lam = omega_power(2)
    rule = ClubRule.ladder(lam, table=[(W, lam)])
    fam = IndexedFamily(1, [nat(3), W], Z, {
        (nat(3),): finite_support(nat(3), Z, {1: 1}),
        (W,): finite_support(W, Z, {1: 1, 4: 2}),
    })
    out = stretch(fam, rule, parse("w^2+1"))
    assert out.indices == (parse("w*3"), lam)
    assert out[(lam,)](parse("w*4")) == (2,)
    assert out[(lam,)](parse("w*4+1")) == (0,)
    assert is_coherent(out).holds == is_coherent(fam).holds


def test_stretch_rejects_bad_rules():
    fam = IndexedFamily(1, [W], Z, {(W,): finite_support(W, Z, {2: 1})})
    with pytest.raises(ValueError):
        stretch(fam, ClubRule(table=((W, W),)))
    with pytest.raises(ValueError):
        stretch(fam, ClubRule.ladder(omega_power(2), table=[(W, omega_power(2))]), parse("w*5"))
    with pytest.raises(Unsupported):
        stretch(IndexedFamily(1, [W], Z, {(W,): constant(W, Z, 1)}), ClubRule.ladder(W2))
    assert stretch(fam, ClubRule.ident()) is fam


@given(st.integers(0, 10 ** 6))
def test_stretch_commutes_with_d(seed):
    rng = random.Random(seed)
    idx = sorted({rng.randint(1, 9) for _ in range(3)})
    fam = IndexedFamily(1, [nat(i) for i in idx], Z, {
        (nat(i),): finite_support(nat(i), Z, {rng.randrange(i): rng.randint(1, 3)}) for i in idx
    })
    rule = ClubRule.ladder(omega_power(2))
    a = stretch(d_operator(fam), rule)
    b = d_operator(stretch(fam, rule))
    assert all(compare_functions("exact", a[t], b[t]).holds for t in a.tuples())


# -- rho families ------------------------------------------------------------------------


def test_rho2_family_example():
    fam = rho_family(2, CANONICAL, [W, W2])
    d = d_operator(fam)
    assert d[(W, W2)](nat(3)) == (1,)
    assert is_coherent(fam).status == "no"
    assert is_coherent(fam, "modBounded").holds
    assert verify_cocycle(fam).holds


def test_full_ladder_gives_constant():
    from ordcoh.csystem import CSystem
    fam = rho_family(2, CSystem("table", {"w*2": "full"}), [W2])
    f = fam[(W2,)]
    assert all(f(x) == (2,) for x in [nat(0), nat(5), W, parse("w+9")])


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
def test_rho_families_are_coherent(seed, kind):
    rng = random.Random(seed)
    fam = rho_family(kind, CANONICAL, rand_indices(rng, 3))
    assert verify_cocycle(fam).holds
    assert is_coherent(fam, "modFinite" if kind == 1 else "modBounded").holds


# -- the game ------------------------------------------------------------------------------


def test_game_first_moves():
    # the zero start is Even's stage 0
    h = start_game(2, Z)
    assert h.tops == [W] and h.stage == 1
    assert dagger_holds(h).holds
    with pytest.raises(ValueError):
        even_strategy_move(h)
    odd_move(h, random.Random(0))
    assert h.tops == [W, W2] and h.ev() == [W]
    with pytest.raises(ValueError):
        odd_move(h, random.Random(0))
    even_strategy_move(h)
    assert h.ev() == [W, parse("w*3")]
    assert dagger_holds(h).holds


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_even_keeps_dagger(seed, n):
    h, log = play_game(n, 8, seed)
    assert len(log) == 8
    for _, dag, inc in log:
        assert inc.holds
        assert dag is None or dag.holds
    assert is_coherent(h.current, "exact").holds


def test_even_refuses_when_dagger_fails():
    h = start_game(2, Z)
    rng = random.Random(1)
    for _ in range(2):
        odd_move(h, rng)
        even_strategy_move(h)
    odd_move(h, rng)
    assert h.ev() == [W, parse("w*3"), parse("w*5")]
    assert dagger_holds(h).holds
    # break exactness on the even-stage pair (w, w*3)
    bad = dict(h.current.entries)
    t = (W, parse("w*3"))
    bad[t] = bad[t] + finite_support(W, Z, {0: 1})
    h.conditions[-1] = IndexedFamily(2, h.current.indices, Z, bad)
    assert dagger_holds(h).witness == (W, parse("w*3"), parse("w*5"))
    with pytest.raises(IncoherentError):
        even_strategy_move(h)


def test_game_needs_order_two():
    with pytest.raises(ValueError):
        even_strategy_move(start_game(1, Z))


# -- trees ------------------------------------------------------------------------------------


def test_tree_report_counts_restrictions():
    fam = IndexedFamily(1, [W, W2], Z, {
        (W,): constant(W, Z, 1),
        (W2,): piecewise(W2, Z, [(W, 2), (W2, 0)]),
    })
    levels = tree_report(fam, [nat(0), nat(1), W])
    assert [(lv.level, lv.nodes) for lv in levels] == [(W, 2), (W2, 1)]
    agree = IndexedFamily(1, [W, W2], Z, {(W,): constant(W, Z, 1), (W2,): constant(W2, Z, 1)})
    assert tree_report(agree, [nat(0)])[0].nodes == 1
    with pytest.raises(ValueError):
        tree_report(d_operator(fam), [])
