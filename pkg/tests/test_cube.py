import pytest
from hypothesis import given, strategies as st

from posassoc.cube import (
    Antichain,
    CoordSet,
    Event,
    IncreasingEvent,
    affecting_coordinates,
    event_from_json,
    event_to_json,
    from_antichain,
    intersect,
    minimal_elements,
    union,
    up_closure,
    z_set,
)
from posassoc.errors import DimensionMismatch, DimensionOutOfRange, NotAntichain, NotIncreasing, ParseError

from conftest import ev, oracle_up_closure, oracle_up_sets, pt, subset, up


def events(n):
    return st.integers(0, (1 << (1 << n)) - 1).map(lambda b: Event(n, b))


# --- up_closure -------------------------------------------------------------


def test_up_closure_single_generator():
    assert up_closure(ev(3, "101")) == IncreasingEvent.generated_by(3, [[1, 3]])
    assert set(up_closure(ev(3, "101"))) == {pt("101"), pt("111")}


def test_up_closure_empty():
    assert up_closure(Event(2, 0)).bits == 0


def test_up_closure_two_generators_matches_enumeration():
    got = set(up_closure(ev(3, "100", "010")))
    assert got == oracle_up_closure(3, [pt("100"), pt("010")])
    assert len(got) == 6


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_up_closure_exhaustive(n):
    for bits in range(1 << (1 << n)):
        e = Event(n, bits)
        closed = up_closure(e)
        assert set(closed) == oracle_up_closure(n, list(e))
        assert up_closure(closed) == closed


@pytest.mark.parametrize("n", [4, 5])
@given(data=st.data())
def test_up_closure_idempotent_random(n, data):
    e = data.draw(events(n))
    once = up_closure(e)
    assert up_closure(once) == once
    assert e.bits & ~once.bits == 0


def test_increasing_event_constructor_rejects_non_up_sets():
    with pytest.raises(NotIncreasing):
        IncreasingEvent(2, 1 << pt("10"))
    IncreasingEvent(2, (1 << pt("10")) | (1 << pt("11")))


def test_dimension_cap():
    with pytest.raises(DimensionOutOfRange):
        Event(21, 0)


# --- antichains --------------------------------------------------------------


def test_from_antichain_examples():
    assert from_antichain(Antichain(3, (pt("100"), pt("010")))) == up(3, "100", "010")
    assert from_antichain(Antichain(3, (0,))).is_full()
    got = from_antichain(Antichain(3, (pt("110"), pt("101"))))
    assert set(got) == {pt("110"), pt("101"), pt("111")}


def test_antichain_rejects_comparable():
    with pytest.raises(NotAntichain):
        Antichain(3, (pt("100"), pt("110")))


def test_antichain_canonical_order():
    a = Antichain(3, (pt("011"), pt("100")))
    assert a.sets == (pt("100"), pt("011"))
    assert a.as_coordinate_lists() == [[1], [2, 3]]


def test_minimal_elements_examples():
    assert minimal_elements(IncreasingEvent.full(3)).sets == (0,)
    assert minimal_elements(up(3, "100", "010")).as_coordinate_lists() == [[1], [2]]
    assert len(minimal_elements(IncreasingEvent.empty(3))) == 0


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_round_trip_all_up_sets(n):
    for bits in oracle_up_sets(n) if n <= 3 else _up_sets_4():
        A = IncreasingEvent(n, bits)
        mins = minimal_elements(A)
        members = set(A)
        assert set(mins) == {x for x in members if not any(y != x and subset(y, x) for y in members)}
        assert from_antichain(mins) == A


def _up_sets_4():
    from posassoc.enumeration import EnumConfig, increasing_masks

    return [int(b) for b in increasing_masks(EnumConfig(4, True, True))]


# --- Z sets ------------------------------------------------------------------


def test_z_set_examples():
    assert z_set(IncreasingEvent.full(3)) == CoordSet(0)
    assert z_set(up(3, "010")).coords() == [2]
    assert z_set(up(3, "110", "101")).coords() == [1, 2, 3]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_z_set_equals_affecting_coordinates(n):
    for bits in (oracle_up_sets(n) if n <= 3 else _up_sets_4()):
        A = IncreasingEvent(n, bits)
        # direct definition: some S outside A with S + {i} inside
        direct = 0
        for i in range(n):
            if any(not A.bits >> s & 1 and A.bits >> (s | 1 << i) & 1 for s in range(1 << n)):
                direct |= 1 << i
        assert z_set(A).mask == direct == affecting_coordinates(A).mask
        assert (z_set(A).mask == 0) == (bits == 0 or A.is_full())


# --- intersection / union ------------------------------------------------------


def test_intersect_examples():
    B = up(3, "011", "100")
    assert intersect(IncreasingEvent.full(3), B) == B
    assert set(intersect(up(2, "10"), up(2, "01"))) == {pt("11")}
    assert intersect(up(3, "110", "101"), up(3, "011")) == up(3, "111")


def test_union_examples():
    B = up(2, "01")
    assert union(IncreasingEvent.empty(2), B) == B
    assert set(union(up(2, "10"), up(2, "01"))) == {pt("10"), pt("01"), pt("11")}
    assert union(up(3, "100"), up(3, "111")) == up(3, "100")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(up(2, "10"), up(3, "100"))
    with pytest.raises(DimensionMismatch):
        union(up(2, "10"), up(3, "100"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_min_of_intersection_from_pairwise_unions(n):
    sets = oracle_up_sets(n)
    for a in sets:
        for b in sets:
            D, E = IncreasingEvent(n, a), IncreasingEvent(n, b)
            unions = {d | e for d in minimal_elements(D) for e in minimal_elements(E)}
            minimal = {u for u in unions if not any(v != u and subset(v, u) for v in unions)}
            assert set(minimal_elements(intersect(D, E))) == minimal
            assert z_set(intersect(D, E)).issubset(z_set(D) | z_set(E))


def test_min_of_intersection_exhaustive_n4():
    sets = _up_sets_4()
    mins = {a: list(minimal_elements(IncreasingEvent(4, a))) for a in sets}
    for a in sets:
        for b in sets:
            unions = {d | e for d in mins[a] for e in mins[b]}
            minimal = sorted(u for u in unions if not any(v != u and v & u == v for v in unions))
            assert sorted(minimal_elements(IncreasingEvent._trusted(4, a & b))) == minimal


# --- serialization ------------------------------------------------------------


def test_event_json():
    A = up(3, "100", "010")
    assert event_to_json(A) == {"n": 3, "min": [[1], [2]]}
    assert event_from_json({"n": 3, "min": [[1], [2]]}) == A
    assert event_from_json({"n": 3, "min": []}).is_empty()
    assert event_from_json({"n": 3, "min": [[]]}).is_full()


@pytest.mark.parametrize("bad", [{"n": 3}, {"n": 3, "min": [[4]]}, {"n": "3", "min": []}, {"n": 2, "min": [[1], [1, 2]]}])
def test_event_json_rejects(bad):
    with pytest.raises((ParseError, NotAntichain)):
        event_from_json(bad)
