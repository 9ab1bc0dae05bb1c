"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s``.

Two sub-checks are implemented faithfully but are expected to fail, and
are isolated in their own test functions so the failure is visible and
the remaining checks stay meaningful:

* the gadget's prime-interval count: the criterion pins 12, but no
  11-element lattice with 12 prime intervals satisfies the rest of the
  gadget battery (exhaustively verified; see scripts/derive_gadget.py
  and the repository notes).  The unique gadget satisfying the battery
  has 15 prime intervals.
* the global length bound: the criterion pins length(K) <= 5, but any
  assembly whose gadgets satisfy the battery produces length 6 as soon
  as the interior order contains a three-element chain, because two
  overlapping gadgets stack across the shared anchor pair.
"""

import io
import itertools
import json
import time
from contextlib import redirect_stderr, redirect_stdout

import pytest

from princlat.cli import main as cli_main
from princlat.congruence import (
    all_congruences,
    congruence_leq,
    is_congruence,
    is_I_congruence,
    join_congruences,
    princ_order,
    principal_congruence,
    valuation,
    base,
)
from princlat.construction import (
    _index_s_roles,
    assemble_K,
    beta_H,
    load_templates,
)
from princlat.fuzzing import random_bounded_poset, run_fuzz
from princlat.lattice import (
    c2_times_c3,
    chain,
    is_01_sublattice,
    lattice_iso,
    length,
    m3,
    prime_intervals,
    quotient,
    sublattice,
)
from princlat.order import (
    down_sets,
    is_down_set,
    order_iso,
    principal_down_set,
    validate_poset,
    Poset,
    _freeze,
)

from conftest import random_lattices
from test_congruence import (
    congruences_by_brute_force,
    find_valuation_two_witness,
    intersect_labels,
)

FUZZ_SEED = 20260201
FUZZ_SAMPLES = 200
FUZZ_MAX_SIZE = 8


def report(criterion, name, ok):
    print(f"ACCEPTANCE {criterion} ({name}): {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="module")
def corpus(templates):
    """The fuzz corpus with one full assembly per sample, computed once."""
    _index_s_roles(templates)
    out = []
    for i in range(FUZZ_SAMPLES):
        P = random_bounded_poset(FUZZ_SEED, i, FUZZ_MAX_SIZE)
        result = assemble_K(P, templates)
        con = all_congruences(result.lattice)
        downs = down_sets(P.poset, nonempty_only=True)
        out.append((P, result, con, downs))
    return out


def _princ_as_poset(po):
    return Poset(tuple(f"pc{i}" for i in range(len(po.congruences))),
                 _freeze(po.leq.copy()))


def test_criterion_1_theorem_at_desk_scale(templates):
    t0 = time.perf_counter()
    outcomes = run_fuzz(FUZZ_MAX_SIZE, FUZZ_SAMPLES, FUZZ_SEED, jobs=1)
    elapsed = time.perf_counter() - t0
    failures = [o for o in outcomes if not o.passed]
    ok = not failures and elapsed < 300
    report(1, "theorem at desk scale", ok)
    assert not failures, failures[:3]
    assert elapsed < 300, f"fuzz took {elapsed:.0f}s"


def test_criterion_2_congruence_count(corpus):
    ok = True
    for P, result, con, downs in corpus:
        if len(con) != len(downs):
            ok = False
            break
    report(2, "congruence/down-set count", ok)
    for P, result, con, downs in corpus:
        assert len(con) == len(downs), P.poset.cover_names()


def test_criterion_3_gadget_suite(templates):
    t = templates["S"]
    lat = t.lattice
    r = {role: ph for ph, role in t.role_map.items()}
    tp = principal_congruence(lat, r["a_p"], r["b_p"])
    tq = principal_congruence(lat, r["a_q"], r["b_q"])
    icons = [x for x in all_congruences(lat).congruences if is_I_congruence(lat, x)]
    ok = (
        len(icons) == 2
        and congruence_leq(tp, tq) and tp != tq
        and {x.labels for x in icons} == {tp.labels, tq.labels}
        and lattice_iso(quotient(lat, tq), c2_times_c3()) is not None
        and principal_congruence(lat, r["d"], r["e"]) == tp
    )
    report(3, "gadget congruence suite", ok)
    assert len(icons) == 2
    assert congruence_leq(tp, tq) and tp != tq
    assert lattice_iso(quotient(lat, tq), c2_times_c3()) is not None
    assert principal_congruence(lat, r["d"], r["e"]) == tp


@pytest.mark.spec_defect
def test_criterion_3_prime_interval_count(templates):
    """Faithful to the stated criterion; unattainable as written.

    Exhaustive search shows no 11-element lattice with 12 prime
    intervals admits the required congruence structure; the unique
    lattice that does has 15.  This test is expected to fail.
    """
    count = len(prime_intervals(templates["S"].lattice))
    report(3, "gadget prime-interval count = 12", count == 12)
    assert count == 12, f"gadget has {count} prime intervals"


def test_criterion_4_degenerate_cases(templates):
    ok = True
    for els, covers in ((["0"], []), (["0", "1"], [("0", "1")])):
        from princlat.order import to_bounded

        P = to_bounded(validate_poset(els, covers))
        result = assemble_K(P, templates)
        assert result.lattice.n == len(els)
        po = princ_order(result.lattice)
        iso = order_iso(P.poset, _princ_as_poset(po))
        ok = ok and iso is not None
        assert iso is not None
    report(4, "degenerate cases", ok)


def test_criterion_5_structural_lemmas(corpus, templates):
    for P, result, con, downs in corpus:
        if not P.interior:
            continue
        lat = result.lattice
        a0 = result.anchor[P.zero][0]
        a1 = result.anchor[P.one][0]
        # every interior element lies in a five-element diamond over the bounds
        for x in lat.elements:
            if x in (lat.bottom, lat.top):
                continue
            five = {x, a0, a1, lat.bottom, lat.top}
            if x in (a0, a1):
                five = {result.anchor[P.interior[0]][0], a0, a1, lat.bottom, lat.top}
            assert is_01_sublattice(lat, five)
            assert lattice_iso(sublattice(lat, five), m3()) is not None
        # every congruence is a bound or isolating
        for theta in con.congruences:
            assert theta.is_zero() or theta.is_one() or is_I_congruence(lat, theta)
        # bases of isolating congruences are down sets
        interior = P.poset.restrict(sorted(P.poset.index(x) for x in P.interior))
        for theta in con.congruences:
            if is_I_congruence(lat, theta):
                assert is_down_set(interior, base(result, theta))
        # the down-set congruence passes the full check with short chain blocks
        for ds in down_sets(interior):
            theta = beta_H(result, ds.members)
            ok, witness = is_congruence(lat, theta.labels)
            assert ok, witness
            for block in theta.blocks():
                assert len(block) <= 3
                idx = [lat.index(b) for b in block]
                for a, b in itertools.combinations(idx, 2):
                    assert lat.leq[a, b] or lat.leq[b, a]
    report(5, "structural lemmas on fuzzed assemblies", True)


@pytest.mark.spec_defect
def test_criterion_5_length_bound(corpus):
    """Faithful to the stated criterion; unattainable as written.

    length(K) <= 5 with equality whenever the interior has a comparable
    pair.  The gadget battery forces length 6 whenever the interior
    contains a three-element chain, so this fails on such samples.
    """
    bad = []
    for P, result, con, downs in corpus:
        ln = length(result.lattice)
        comps = P.comparabilities()
        if ln > 5 or (comps and ln != 5):
            bad.append((P.poset.cover_names(), ln))
    report(5, "length bound <= 5", not bad)
    assert not bad, f"{len(bad)} samples violate the stated bound, first: {bad[0]}"


def test_criterion_6_oracle_equivalence(templates, poset_zoo):
    t0 = time.perf_counter()
    lats = [chain(3), chain(5), m3(), c2_times_c3(), templates["S"].lattice]
    for P in poset_zoo.values():
        result = assemble_K(P, templates)
        if result.lattice.n <= 10:
            lats.append(result.lattice)
    lats += random_lattices(2026, 50, max_size=10)
    for lat in lats:
        con = all_congruences(lat)
        for x in range(lat.n):
            for y in range(lat.n):
                theta = principal_congruence(lat, lat.elements[x], lat.elements[y])
                containing = [c.labels for c in con.congruences
                              if c.labels[x] == c.labels[y]]
                acc = containing[0]
                for other in containing[1:]:
                    acc = intersect_labels(acc, other)
                assert theta.labels == acc, (lat.elements[x], lat.elements[y])
    elapsed = time.perf_counter() - t0
    report(6, "principal = intersection oracle", elapsed < 60)
    assert elapsed < 60, f"oracle battery took {elapsed:.0f}s"


def test_criterion_7_valuation(templates, poset_zoo):
    lats = [chain(4), m3(), c2_times_c3()] + random_lattices(11, 8, max_size=8)
    lats.append(assemble_K(poset_zoo["B2"], templates).lattice)
    for lat in lats:
        con = all_congruences(lat)
        v = valuation(lat, con)
        index = {t.labels: i for i, t in enumerate(con.congruences)}
        assert v.values[index[con.zero.labels]] == 0
        for a in con.congruences:
            for b in con.congruences:
                j = join_congruences(a, b)
                assert v.values[index[j.labels]] <= (
                    v.values[index[a.labels]] + v.values[index[b.labels]])
        po = {t.labels for t in princ_order(lat).congruences}
        assert {t.labels for t, val in zip(con.congruences, v.values) if val <= 1} == po
    hit = find_valuation_two_witness()
    assert hit is not None and hit[0].n <= 7
    report(7, "valuation properties and v=2 witness", True)


def _run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(argv)
    return code, out.getvalue()


def test_criterion_8_determinism(tmp_path):
    poset = tmp_path / "p.json"
    poset.write_text(json.dumps({
        "name": "mix", "elements": ["0", "a", "b", "c", "1"],
        "covers": [["0", "a"], ["a", "b"], ["0", "c"], ["b", "1"], ["c", "1"]]}))
    runs = {}
    for tag, argv, outfile in [
        ("build", ["build", "--poset", str(poset), "--out", str(tmp_path / "K.json")], "K.json"),
        ("verify", ["verify", "--poset", str(poset)], None),
        ("fuzz", ["fuzz", "--max-size", "6", "--samples", "10", "--seed", "5"], None),
        ("con", None, None),     # filled in below, needs K.json to exist
        ("princ", None, None),
        ("valuation", None, None),
        ("export-dot", ["export-dot", "--lattice", str(tmp_path / "K.json"),
                        "--out", str(tmp_path / "K.dot")], "K.dot"),
    ]:
        if tag in ("con", "princ", "valuation"):
            argv = [tag, "--lattice", str(tmp_path / "K.json")]
            if tag == "princ":
                argv += ["--out", str(tmp_path / "princ.json")]
                outfile = "princ.json"
        first = _run_cli(argv)
        blob1 = (tmp_path / outfile).read_bytes() if outfile else b""
        second = _run_cli(argv)
        blob2 = (tmp_path / outfile).read_bytes() if outfile else b""
        runs[tag] = (first == second) and (blob1 == blob2)
    ok = all(runs.values())
    report(8, "byte-stable outputs", ok)
    assert ok, runs
