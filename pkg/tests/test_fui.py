import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from posassoc.analysis import abc_scan, pa_check
from posassoc.cube import IncreasingEvent
from posassoc.errors import MonotoneCompletionFailed, NotFkg, ParseError, TooManyUnderlying
from posassoc.fui import (
    FuiRealization,
    SplitMix64,
    ThresholdTable,
    build_thresholds,
    chain_parameters,
    discretize,
    footnote2_fixture,
    pushforward,
    random_fui,
)
from posassoc.measures import ProductMeasure, TableMeasure, check_fkg, fixed_point_measure

from conftest import oracle_product_weights, pt, up

HALF = F(1, 2)


def random_fkg_tables(count, seed, full_support=True):
    """Rejection sampling against the lattice condition."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([1, 2, 3])
        lo = 1 if full_support else 0
        raw = [rng.randint(lo, 6) for _ in range(1 << n)]
        if not any(raw):
            continue
        m = TableMeasure(n, tuple(F(v, sum(raw)) for v in raw))
        if check_fkg(m) is None:
            out.append(m)
    return out


# --- thresholds ------------------------------------------------------------------


def test_thresholds_uniform():
    t = build_thresholds(ProductMeasure.uniform(2).to_table())
    assert t.alpha == ((HALF,), (HALF, HALF))
    assert t.positive == ((True,), (True, True))


def test_thresholds_correlated_pair():
    t = build_thresholds(TableMeasure(2, (HALF, 0, 0, HALF)))
    assert t.alpha == ((HALF,), (F(1), F(0)))


def test_thresholds_reject_mu3():
    with pytest.raises(NotFkg) as info:
        build_thresholds(fixed_point_measure(3))
    assert (info.value.violation.a, info.value.violation.b) == (pt("100"), pt("010"))


def test_completion_fills_zero_histories_monotonically():
    m = TableMeasure(3, (HALF, 0, 0, 0, 0, 0, 0, HALF))
    t = build_thresholds(m)
    assert t.positive[2] == (True, False, False, True)
    assert t.alpha[2] == (F(1), F(0), F(0), F(0))
    assert t.is_monotone()
    assert pushforward(discretize(t)) == m


def test_completion_with_no_positive_history_above():
    # X_1 is always 0; history X_1 = 1 has nothing above it
    m = TableMeasure(2, (F(1, 3), 0, F(2, 3), 0))
    t = build_thresholds(m)
    assert t.alpha[1] == (F(1, 3), F(0))
    assert pushforward(discretize(t)) == m


def test_non_monotone_table_detected():
    bad = ThresholdTable(2, ((HALF,), (F(1, 4), F(3, 4))), ((True,), (True, True)))
    assert not bad.is_monotone()


def test_monotone_completion_error_is_raised_for_non_monotone_positive_thresholds(monkeypatch):
    # lattice-condition measures never get here; bypass the check to reach the guard
    import posassoc.fui as fui

    monkeypatch.setattr(fui, "check_fkg", lambda m: None)
    with pytest.raises(MonotoneCompletionFailed):
        fui.build_thresholds(TableMeasure(2, (0, HALF, HALF, 0)))


# --- chains and discretization ---------------------------------------------------------


def test_chain_single_threshold():
    assert chain_parameters([HALF]) == [HALF]


def test_chain_two_thresholds():
    q = chain_parameters([F(3, 4), F(1, 4)])
    assert q == [F(1, 4), F(2, 3)]
    # P(Y1 or Y2) = 1 - (3/4)(1/3)
    assert 1 - (1 - q[0]) * (1 - q[1]) == F(3, 4)


@settings(max_examples=100)
@given(st.lists(st.fractions(0, 1, max_denominator=30), min_size=1, max_size=6, unique=True))
def test_chain_telescopes(levels):
    levels = sorted((a for a in levels if 0 < a < 1), reverse=True)
    q = chain_parameters(levels)
    none_yet = F(1)
    for a, qj in zip(levels, q):
        none_yet *= 1 - qj
        assert 1 - none_yet == 1 - a


def test_deterministic_coordinate_has_no_bernoullis():
    t = ThresholdTable(2, ((HALF,), (F(1), F(0))), ((True,), (True, True)))
    r = discretize(t)
    assert r.m == 1 and r.q == (HALF,)
    assert r.f[0] == r.f[1]


def test_discretize_structure_functions_are_up_sets():
    for m in random_fkg_tables(20, seed=3, full_support=False):
        r = discretize(build_thresholds(m))
        for fi in r.f:
            assert isinstance(fi, IncreasingEvent) and fi.is_up_closed()


def test_too_many_underlying():
    # 21 distinct interior thresholds on one coordinate
    row = tuple(F(k, 23) for k in range(1, 22))
    alpha = ((HALF,),) + tuple(((HALF,) * (1 << i)) for i in range(1, 5)) + (row + (HALF,) * 11,)
    t = ThresholdTable(6, alpha, tuple(tuple(True for _ in r) for r in alpha))
    with pytest.raises(TooManyUnderlying):
        discretize(t)


# --- pushforward -----------------------------------------------------------------------


def test_footnote2_pushforward():
    got = pushforward(footnote2_fixture(HALF, HALF, HALF))
    e = F(1, 8)
    assert got.w == (HALF, e, e, 0, e, 0, 0, e)


def test_footnote2_all_ones_is_point_mass():
    got = pushforward(footnote2_fixture(1, 1, 1))
    assert got.w[pt("111")] == 1


def test_footnote2_fails_lattice_condition():
    v = check_fkg(pushforward(footnote2_fixture(HALF, HALF, HALF)))
    assert (v.a, v.b) == (pt("100"), pt("010"))


@settings(max_examples=60)
@given(st.tuples(*[st.fractions(0, 1, max_denominator=20).filter(lambda x: x < 1)] * 3))
def test_footnote2_weight_two_strings_vanish(q):
    w = pushforward(footnote2_fixture(*q)).w
    assert all(w[pt(s)] == 0 for s in ("110", "101", "011"))


def test_identity_realization_gives_product():
    p = (F(1, 3), F(3, 7), F(4, 5))
    f = tuple(up(3, s) for s in ("100", "010", "001"))
    got = pushforward(FuiRealization(3, p, f))
    assert list(got.w) == oracle_product_weights(p)
    assert got == ProductMeasure(3, p).to_table()


def test_pushforward_brute_force():
    r = random_fui(3, 4, seed=5)
    w = [F(0)] * 8
    for y in range(16):
        weight = F(1)
        for j, qj in enumerate(r.q):
            weight *= qj if y >> j & 1 else 1 - qj
        x = sum(1 << i for i, fi in enumerate(r.f) if fi.bits >> y & 1)
        w[x] += weight
    assert list(pushforward(r).w) == w


def test_pushforward_large_denominators():
    q = (F(1, 2**40 + 1), F(3, 2**35 + 7), F(1, 3))
    r = footnote2_fixture(*q)
    w = pushforward(r).w
    assert w[pt("111")] == q[0] * q[1] * q[2]
    assert sum(w) == 1


def test_round_trip_fkg_tables():
    for m in random_fkg_tables(50, seed=1):
        assert pushforward(discretize(build_thresholds(m))) == m


def test_round_trip_with_zero_atoms():
    for m in random_fkg_tables(50, seed=2, full_support=False):
        assert pushforward(discretize(build_thresholds(m))) == m


def test_round_trip_product_measures():
    for p in product((F(1, 5), HALF, F(5, 6)), repeat=3):
        m = ProductMeasure(3, p).to_table()
        assert pushforward(discretize(build_thresholds(m))) == m


# --- random instances ----------------------------------------------------------------------


def test_splitmix64_reference_stream():
    g = SplitMix64(1234567)
    assert [g.next() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_random_fui_is_deterministic():
    assert random_fui(3, 3, 42) == random_fui(3, 3, 42)
    assert random_fui(3, 3, 42) != random_fui(3, 3, 43)


def test_random_fui_seed_42_golden():
    r = random_fui(3, 3, 42)
    assert r.to_json() == GOLDEN_SEED_42


def test_random_fui_parameters():
    for seed in range(30):
        r = random_fui(2, 5, seed)
        assert all(0 < q < 1 and q.denominator <= 16 for q in r.q)
        assert all(not fi.is_empty() for fi in r.f)


@pytest.mark.parametrize("seed", range(20))
def test_random_fui_is_pa_and_has_no_abc_witness(seed):
    r = random_fui(3, 1 + seed % 4, seed)
    m = pushforward(r)
    assert pa_check(m).passed
    assert abc_scan(m).witnesses == []


# --- serialization -----------------------------------------------------------------------


def test_realization_json_round_trip():
    r = footnote2_fixture(HALF, F(1, 3), 1)
    obj = r.to_json()
    assert obj == {
        "m": 3,
        "q": ["1/2", "1/3", "1/1"],
        "f": [{"n": 3, "min": [[1, 2]]}, {"n": 3, "min": [[1, 3]]}, {"n": 3, "min": [[2, 3]]}],
    }
    assert FuiRealization.from_json(obj) == r


@pytest.mark.parametrize("bad", [{"m": 1, "q": ["1/2"]}, {"m": 2, "q": ["1/2"], "f": []}, {"m": 1, "q": ["2"], "f": []}])
def test_realization_json_rejects(bad):
    with pytest.raises(ParseError):
        FuiRealization.from_json(bad)


# cross-checked against a standalone SplitMix64 stream for seed 42
GOLDEN_SEED_42 = {
    "m": 3,
    "q": ["2/5", "1/5", "5/6"],
    "f": [{"n": 3, "min": [[3]]}, {"n": 3, "min": [[2, 3]]}, {"n": 3, "min": [[2], [3]]}],
}
