import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from princlat.congruence import one_congruence, principal_congruence, zero_congruence
from princlat.errors import NotACongruence, NotALattice
from princlat.lattice import (
    as_lattice,
    c2_times_c3,
    chain,
    is_01_sublattice,
    lattice_from_covers,
    lattice_iso,
    length,
    m3,
    prime_intervals,
    quotient,
    sublattice,
)
from princlat.order import validate_poset

from conftest import random_lattices


def test_b2_is_a_lattice():
    lat = lattice_from_covers(["0", "p", "q", "1"],
                              [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    assert lat.join_of("p", "q") == "1" and lat.meet_of("p", "q") == "0"


def test_two_maximal_elements_fail():
    with pytest.raises(NotALattice) as err:
        lattice_from_covers(["0", "a", "b"], [("0", "a"), ("0", "b")])
    assert {err.value.x, err.value.y} == {"a", "b"}


def test_ambiguous_join_reports_witnesses():
    # a, b below both c and d: the join of (a, b) has two minimal candidates
    with pytest.raises(NotALattice) as err:
        lattice_from_covers(
            ["0", "a", "b", "c", "d", "1"],
            [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"),
             ("a", "d"), ("b", "d"), ("c", "1"), ("d", "1")])
    assert set(err.value.witnesses) == {"c", "d"}


def test_m3_shape():
    lat = m3()
    assert lat.n == 5
    assert length(lat) == 2
    assert len(prime_intervals(lat)) == 6
    assert lat.join_of("x", "y") == "i" and lat.meet_of("x", "y") == "o"


def test_chain_lengths():
    assert length(chain(4)) == 3
    assert len(prime_intervals(chain(6))) == 5


def test_c2_times_c3():
    lat = c2_times_c3()
    assert lat.n == 6 and len(prime_intervals(lat)) == 7 and length(lat) == 3


def test_is_01_sublattice():
    lat = m3()
    assert is_01_sublattice(lat, ["o", "i"])
    assert is_01_sublattice(lat, ["o", "x", "i"])
    assert not is_01_sublattice(lat, ["x", "y"])          # misses the bounds
    assert is_01_sublattice(lat, ["o", "x", "y", "i"])


def test_quotient_by_zero_and_one():
    lat = lattice_from_covers(["0", "p", "q", "1"],
                              [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    q0 = quotient(lat, zero_congruence(lat))
    assert lattice_iso(q0, lat) is not None
    q1 = quotient(lat, one_congruence(lat))
    assert q1.n == 1


def test_quotient_rejects_non_congruence():
    lat = m3()
    # collapsing one atom pair of the diamond is not a congruence
    labels = [0, 1, 1, 3, 4]
    bad = type(zero_congruence(lat))(lat, tuple(labels))
    with pytest.raises(NotACongruence):
        quotient(lat, bad)


def test_lattice_iso_basics():
    lat = m3()
    assert lattice_iso(lat, lat) is not None
    assert lattice_iso(lat, chain(5)) is None


def test_sublattice_induced():
    lat = c2_times_c3()
    sub = sublattice(lat, ["00", "01", "10", "11"])
    assert sub.n == 4 and length(sub) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_absorption_on_random_lattices(seed):
    for lat in random_lattices(seed, 1, max_size=9):
        for x in range(lat.n):
            for y in range(lat.n):
                assert lat.meet[x, lat.join[x, y]] == x
                assert lat.join[x, lat.meet[x, y]] == x


def test_quotient_length_shrinks():
    lat = lattice_from_covers(
        ["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")])
    theta = principal_congruence(lat, "a", "b")
    assert length(quotient(lat, theta)) <= length(lat)
