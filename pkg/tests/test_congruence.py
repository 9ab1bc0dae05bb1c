import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from princlat.congruence import (
    CongruenceRelation,
    all_congruences,
    congruence_leq,
    is_congruence,
    is_I_congruence,
    join_congruences,
    one_congruence,
    princ_order,
    principal_congruence,
    valuation,
    zero_congruence,
)
from princlat.lattice import as_lattice, chain, lattice_from_covers, m3
from princlat.order import validate_poset

from conftest import random_lattices


# ---------------------------------------------------------------- oracles

def partitions(items):
    """All set partitions, by recursive block insertion."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def congruences_by_brute_force(lat):
    """Every partition that passes the substitution property; exponential."""
    out = set()
    for part in partitions(range(lat.n)):
        labels = [0] * lat.n
        for bid, block in enumerate(part):
            for x in block:
                labels[x] = bid
        ok, _ = is_congruence(lat, labels)
        if ok:
            canon = _canon(labels)
            out.add(canon)
    return out


def _canon(labels):
    seen = {}
    out = []
    for l in labels:
        if l not in seen:
            seen[l] = len(seen)
        out.append(seen[l])
    return tuple(out)


def intersect_labels(a, b):
    pair = list(zip(a, b))
    return _canon([pair.index(p) for p in pair])


# ------------------------------------------------------- principal closure

def test_con_xx_is_zero():
    lat = m3()
    assert principal_congruence(lat, "x", "x").is_zero()


def test_m3_is_simple():
    lat = m3()
    for x, y in itertools.combinations(lat.elements, 2):
        assert principal_congruence(lat, x, y).is_one()
    assert len(all_congruences(lat)) == 2


def test_three_chain_has_four_congruences():
    lat = chain(3)
    con = all_congruences(lat)
    assert len(con) == 4
    assert con.zero.is_zero() and con.one.is_one()


def test_brute_force_matches_join_closure_small():
    cases = [
        chain(4),
        m3(),
        lattice_from_covers(["0", "p", "q", "1"],
                            [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]),
        lattice_from_covers(["0", "a", "b", "c", "1"],
                            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]),
    ]
    for lat in cases:
        expected = congruences_by_brute_force(lat)
        got = {t.labels for t in all_congruences(lat).congruences}
        assert got == expected


def test_principal_equals_intersection_of_containing():
    for lat in [chain(5), m3()] + random_lattices(7, 6, max_size=8):
        con = all_congruences(lat)
        for x in range(lat.n):
            for y in range(lat.n):
                theta = principal_congruence(lat, lat.elements[x], lat.elements[y])
                containing = [
                    t.labels for t in con.congruences if t.labels[x] == t.labels[y]
                ]
                acc = containing[0]
                for other in containing[1:]:
                    acc = intersect_labels(acc, other)
                assert theta.labels == acc


def test_join_congruences_is_least_upper_bound():
    lat = chain(4)
    con = all_congruences(lat)
    for a in con.congruences:
        for b in con.congruences:
            j = join_congruences(a, b)
            assert congruence_leq(a, j) and congruence_leq(b, j)
            for c in con.congruences:
                if congruence_leq(a, c) and congruence_leq(b, c):
                    assert congruence_leq(j, c)


# --------------------------------------------------------------- Princ

def test_princ_of_three_chain_is_all_of_con():
    lat = chain(3)
    po = princ_order(lat)
    con = all_congruences(lat)
    assert {t.labels for t in po.congruences} == {t.labels for t in con.congruences}


def test_princ_of_m3():
    po = princ_order(m3())
    assert len(po) == 2


def test_princ_witnesses_generate():
    lat = lattice_from_covers(["0", "p", "q", "1"],
                              [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    po = princ_order(lat)
    for theta, (x, y) in zip(po.congruences, po.witnesses):
        assert principal_congruence(lat, x, y) == theta


# ------------------------------------------------------------ I-congruences

def test_is_I_congruence_basics():
    lat = chain(4)
    assert not is_I_congruence(lat, zero_congruence(lat))
    assert not is_I_congruence(lat, one_congruence(lat))
    mid = principal_congruence(lat, "c1", "c2")
    assert is_I_congruence(lat, mid)


# --------------------------------------------------------------- valuation

def test_valuation_zero_and_principals():
    lat = chain(4)
    con = all_congruences(lat)
    v = valuation(lat, con)
    po = {t.labels for t in princ_order(lat).congruences}
    for theta, val in zip(con.congruences, v.values):
        if theta.is_zero():
            assert val == 0
        elif theta.labels in po:
            assert val == 1
        else:
            assert val >= 2
    assert {t.labels for t, val in zip(con.congruences, v.values) if val <= 1} == po


def test_valuation_subadditive():
    for lat in random_lattices(13, 5, max_size=8):
        con = all_congruences(lat)
        v = valuation(lat, con)
        index = {t.labels: i for i, t in enumerate(con.congruences)}
        for a in con.congruences:
            for b in con.congruences:
                j = join_congruences(a, b)
                assert (v.values[index[j.labels]]
                        <= v.values[index[a.labels]] + v.values[index[b.labels]])


def interior_strict_orders(k):
    """All strict orders on k labeled points, by orientation assignment."""
    pairs = list(itertools.combinations(range(k), 2))
    for assign in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = np.zeros((k, k), dtype=bool)
        for (i, j), a in zip(pairs, assign):
            if a == 1:
                rel[i, j] = True
            elif a == 2:
                rel[j, i] = True
        ok = True
        for m in range(k):
            reach = rel[m]
            for t in range(k):
                if reach[t] and not np.all(~rel[t] | reach):
                    ok = False
                    break
            if not ok:
                break
        closed = rel.copy()
        for _ in range(k):
            closed = closed | (closed @ closed)
        if not np.array_equal(closed, rel):
            continue
        yield rel


def find_valuation_two_witness(max_interior=5):
    """Search small bounded lattices for a congruence that needs two
    principal congruences; returns the first hit."""
    for k in range(2, max_interior + 1):
        names = [f"x{i}" for i in range(k)]
        for rel in interior_strict_orders(k):
            covers = [(names[i], names[j]) for i in range(k) for j in range(k) if rel[i, j]]
            covers += [("0", x) for x in names] + [(x, "1") for x in names]
            try:
                lat = as_lattice(validate_poset(["0"] + names + ["1"], covers))
            except Exception:
                continue
            con = all_congruences(lat)
            if len(con) < 3:
                continue
            v = valuation(lat, con)
            for theta, val in zip(con.congruences, v.values):
                if val == 2:
                    return lat, theta
    return None


def test_a_small_lattice_needs_two_principal_congruences():
    hit = find_valuation_two_witness()
    assert hit is not None
    lat, theta = hit
    assert lat.n <= 7
    po = {t.labels for t in princ_order(lat).congruences}
    assert theta.labels not in po


# ----------------------------------------------------------- property mix

@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_all_congruences_pass_substitution(seed):
    for lat in random_lattices(seed, 1, max_size=9):
        for theta in all_congruences(lat).congruences:
            ok, witness = is_congruence(lat, theta.labels)
            assert ok, witness


def test_con_order_is_bounded_lattice_under_refinement():
    for lat in random_lattices(3, 4, max_size=8):
        con = all_congruences(lat)
        assert con.zero.is_zero() and con.one.is_one()
        # refinement order has all joins: closure guarantees membership
        for a in con.congruences:
            for b in con.congruences:
                assert join_congruences(a, b).labels in {t.labels for t in con.congruences}
