"""Congruences of finite lattices.

A congruence is stored as a canonical label vector: ``labels[i]`` is the
block id of element ``i``, with blocks numbered by first occurrence.  The
closure engine is a worklist algorithm: merging two blocks enqueues the
merged pair, and processing a pair enforces the substitution property
against all elements at once via the dense join/meet tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import NotICongruence, ValuationDiverged
from .lattice import FiniteLattice

if TYPE_CHECKING:  # pragma: no cover
    from .construction import ConstructionResult


@dataclass(frozen=True, eq=False)
class CongruenceRelation:
    """A partition of a lattice's elements with the substitution property."""

    lattice: FiniteLattice
    labels: tuple[int, ...]

    def blocks(self) -> list[tuple[str, ...]]:
        """Blocks as sorted name tuples, ordered by least element name."""
        by_label: dict[int, list[str]] = {}
        for i, l in enumerate(self.labels):
            by_label.setdefault(l, []).append(self.lattice.elements[i])
        return sorted((tuple(sorted(b)) for b in by_label.values()), key=lambda b: b[0])

    def block_of(self, name: str) -> tuple[str, ...]:
        l = self.labels[self.lattice.index(name)]
        return tuple(sorted(
            e for i, e in enumerate(self.lattice.elements) if self.labels[i] == l
        ))

    def collapses(self, x: str, y: str) -> bool:
        return self.labels[self.lattice.index(x)] == self.labels[self.lattice.index(y)]

    @property
    def n_blocks(self) -> int:
        return len(set(self.labels))

    def is_zero(self) -> bool:
        return self.n_blocks == self.lattice.n

    def is_one(self) -> bool:
        return self.n_blocks == 1

    def __eq__(self, other):
        return (
            isinstance(other, CongruenceRelation)
            and self.lattice == other.lattice
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"CongruenceRelation({self.n_blocks} blocks on {self.lattice.n} elements)"


@dataclass(frozen=True)
class ConOrder:
    """Every congruence of a lattice, with the refinement order."""

    lattice: FiniteLattice
    congruences: tuple[CongruenceRelation, ...]
    leq: np.ndarray

    @property
    def zero(self) -> CongruenceRelation:
        return self.congruences[int(np.nonzero(self.leq.all(axis=1))[0][0])]

    @property
    def one(self) -> CongruenceRelation:
        return self.congruences[int(np.nonzero(self.leq.all(axis=0))[0][0])]

    def __len__(self):
        return len(self.congruences)


@dataclass(frozen=True)
class PrincOrder:
    """The principal congruences, each with one witnessing generator pair."""

    lattice: FiniteLattice
    congruences: tuple[CongruenceRelation, ...]
    witnesses: tuple[tuple[str, str], ...]
    leq: np.ndarray

    def __len__(self):
        return len(self.congruences)


@dataclass(frozen=True)
class Valuation:
    """v(theta) = least number of principal congruences joining to theta."""

    con_order: ConOrder
    values: tuple[int, ...]

    def of(self, theta: CongruenceRelation) -> int:
        for c, v in zip(self.con_order.congruences, self.values):
            if c.labels == theta.labels:
                return v
        raise KeyError("congruence not in this lattice's ConOrder")


def _canonical(labels: np.ndarray) -> tuple[int, ...]:
    """Renumber labels by first occurrence."""
    out = np.empty(len(labels), dtype=int)
    mapping: dict[int, int] = {}
    for i, l in enumerate(labels.tolist()):
        if l not in mapping:
            mapping[l] = len(mapping)
        out[i] = mapping[l]
    return tuple(out.tolist())


def _sp_closure(lat: FiniteLattice, labels: np.ndarray, seeds: list[tuple[int, int]]) -> np.ndarray:
    """Close a partition under the substitution property.

    ``seeds`` are pairs already merged into ``labels`` whose consequences
    still need propagating.  Each merge enqueues one pair; processing a
    pair compares whole join/meet table rows, so the total work is a few
    vector operations per merge.
    """
    join, meet = lat.join, lat.meet
    queue = list(seeds)
    while queue:
        a, b = queue.pop()
        for table in (join, meet):
            la = labels[table[a]]
            lb = labels[table[b]]
            diff = np.nonzero(la != lb)[0]
            for z in diff:
                u, v = int(table[a, z]), int(table[b, z])
                lu, lv = int(labels[u]), int(labels[v])
                if lu == lv:
                    continue
                keep, drop = (lu, lv) if lu < lv else (lv, lu)
                labels[labels == drop] = keep
                queue.append((u, v))
    return labels


def principal_congruence(lat: FiniteLattice, x: str, y: str) -> CongruenceRelation:
    """The smallest congruence collapsing x and y, by worklist closure."""
    xi, yi = lat.index(x), lat.index(y)
    labels = np.arange(lat.n)
    if xi != yi:
        keep, drop = min(xi, yi), max(xi, yi)
        labels[labels == drop] = keep
        labels = _sp_closure(lat, labels, [(xi, yi)])
    return CongruenceRelation(lat, _canonical(labels))


def join_congruences(a: CongruenceRelation, b: CongruenceRelation) -> CongruenceRelation:
    """Smallest congruence above both: merge partitions, then re-close."""
    lat = a.lattice
    labels = np.asarray(a.labels).copy()
    seeds = []
    reps: dict[int, int] = {}
    for i, l in enumerate(b.labels):
        if l in reps:
            j = reps[l]
            li, lj = int(labels[i]), int(labels[j])
            if li != lj:
                keep, drop = (li, lj) if li < lj else (lj, li)
                labels[labels == drop] = keep
                seeds.append((i, j))
        else:
            reps[l] = i
    if seeds:
        labels = _sp_closure(lat, labels, seeds)
    return CongruenceRelation(lat, _canonical(labels))


def is_congruence(lat: FiniteLattice, labels) -> tuple[bool, tuple[str, str, str] | None]:
    """Exhaustive substitution-property check of a partition.

    Returns (ok, witness); the witness is a triple (x, y, z) with x = y
    mod the partition but x v z /= y v z (or the meet analogue).
    """
    lab = np.asarray(labels)
    reps: dict[int, int] = {}
    for i in range(lat.n):
        l = int(lab[i])
        if l not in reps:
            reps[l] = i
            continue
        r = reps[l]
        for table in (lat.join, lat.meet):
            bad = np.nonzero(lab[table[i]] != lab[table[r]])[0]
            if bad.size:
                z = int(bad[0])
                return False, (lat.elements[i], lat.elements[r], lat.elements[z])
    return True, None


def zero_congruence(lat: FiniteLattice) -> CongruenceRelation:
    return CongruenceRelation(lat, tuple(range(lat.n)))


def one_congruence(lat: FiniteLattice) -> CongruenceRelation:
    return CongruenceRelation(lat, (0,) * lat.n)


def congruence_leq(a: CongruenceRelation, b: CongruenceRelation) -> bool:
    """Refinement: every a-block lies inside a b-block."""
    la, lb = a.labels, b.labels
    rep: dict[int, int] = {}
    for i in range(len(la)):
        l = la[i]
        if l in rep:
            if lb[i] != lb[rep[l]]:
                return False
        else:
            rep[l] = i
    return True


def cover_principals(lat: FiniteLattice) -> dict[tuple[int, int], CongruenceRelation]:
    """Principal congruences of all prime intervals (deduplicated keys kept)."""
    out = {}
    for i, j in lat.poset.covers():
        out[(i, j)] = principal_congruence(lat, lat.elements[i], lat.elements[j])
    return out


def all_congruences(lat: FiniteLattice) -> ConOrder:
    """Every congruence, as the join-closure of the prime-interval principals.

    For a finite lattice every congruence is a join of principal ones, and
    every principal congruence is a join of prime-interval principals, so
    closing the latter under binary joins yields all of Con.
    """
    gens: dict[tuple[int, ...], CongruenceRelation] = {}
    for theta in cover_principals(lat).values():
        gens[theta.labels] = theta
    zero = zero_congruence(lat)
    known: dict[tuple[int, ...], CongruenceRelation] = {zero.labels: zero}
    known.update(gens)
    frontier = list(gens.values())
    while frontier:
        new = []
        for theta in frontier:
            for g in gens.values():
                j = join_congruences(theta, g)
                if j.labels not in known:
                    known[j.labels] = j
                    new.append(j)
        frontier = new
    cons = sorted(known.values(), key=lambda c: (-c.n_blocks, c.labels))
    k = len(cons)
    leq = np.zeros((k, k), dtype=bool)
    for x in range(k):
        for y in range(k):
            leq[x, y] = congruence_leq(cons[x], cons[y])
    leq.setflags(write=False)
    return ConOrder(lat, tuple(cons), leq)


def principal_congruences_with_witnesses(
    lat: FiniteLattice,
) -> tuple[dict[tuple[int, ...], CongruenceRelation], dict[tuple[int, ...], tuple[str, str]]]:
    """con(x, y) for every comparable pair, with first-seen witnesses.

    con(x, y) is computed as the join of prime-interval principals along a
    maximal chain from x to y, which agrees with the direct closure and
    reuses the memoised cover congruences.
    """
    covers = lat.poset.covers()
    up_cover: dict[int, list[int]] = {}
    for i, j in covers:
        up_cover.setdefault(i, []).append(j)
    base = cover_principals(lat)
    zero = zero_congruence(lat)
    found: dict[tuple[int, ...], CongruenceRelation] = {zero.labels: zero}
    witness: dict[tuple[int, ...], tuple[str, str]] = {zero.labels: (lat.bottom, lat.bottom)}
    join_memo: dict[tuple[tuple[int, ...], tuple[int, int]], CongruenceRelation] = {}

    def chain_join(x: int, y: int) -> CongruenceRelation:
        theta = zero
        cur = x
        while cur != y:
            nxt = next(j for j in sorted(up_cover.get(cur, ())) if lat.leq[j, y])
            step = base[(cur, nxt)]
            key = (theta.labels, (cur, nxt))
            if key in join_memo:
                theta = join_memo[key]
            else:
                theta = join_congruences(theta, step)
                join_memo[key] = theta
            cur = nxt
        return theta

    strict = lat.leq & ~np.eye(lat.n, dtype=bool)
    for x in range(lat.n):
        for y in np.nonzero(strict[x])[0]:
            theta = chain_join(x, int(y))
            if theta.labels not in found:
                found[theta.labels] = theta
                witness[theta.labels] = (lat.elements[x], lat.elements[int(y)])
    return found, witness


def princ_order(lat: FiniteLattice) -> PrincOrder:
    """Deduplicated principal congruences ordered by refinement."""
    found, witness = principal_congruences_with_witnesses(lat)
    cons = sorted(found.values(), key=lambda c: (-c.n_blocks, c.labels))
    k = len(cons)
    leq = np.zeros((k, k), dtype=bool)
    for x in range(k):
        for y in range(k):
            leq[x, y] = congruence_leq(cons[x], cons[y])
    leq.setflags(write=False)
    return PrincOrder(lat, tuple(cons), tuple(witness[c.labels] for c in cons), leq)


def is_I_congruence(lat: FiniteLattice, theta: CongruenceRelation) -> bool:
    """Nonzero, with singleton blocks at the bottom and the top."""
    if theta.is_zero():
        return False
    lab = theta.labels
    for bound in (lat.bottom, lat.top):
        b = lab[lat.index(bound)]
        if sum(1 for l in lab if l == b) != 1:
            return False
    return True


def base(result: "ConstructionResult", beta: CongruenceRelation) -> tuple[str, ...]:
    """Interior elements whose anchor pair is collapsed by beta.

    Defined for I-congruences of an assembled lattice; the result is
    guaranteed downward closed in the source order.
    """
    if not is_I_congruence(result.lattice, beta):
        raise NotICongruence("base is defined for I-congruences only")
    out = []
    for p in result.source.interior:
        a, b = result.anchor[p]
        if beta.collapses(a, b):
            out.append(p)
    return tuple(sorted(out))


def valuation(lat: FiniteLattice, con: ConOrder | None = None) -> Valuation:
    """Breadth-first join layering: v = first layer containing a congruence.

    Layer 0 holds zero; layer k holds joins of k principal congruences.
    The layering must stabilise within |L|^2 rounds; exceeding the cap is
    an engine-bug tripwire, not a recoverable condition.
    """
    if con is None:
        con = all_congruences(lat)
    principals, _ = principal_congruences_with_witnesses(lat)
    index = {c.labels: i for i, c in enumerate(con.congruences)}
    values: dict[int, int] = {}
    zero = zero_congruence(lat)
    values[index[zero.labels]] = 0
    frontier = []
    for labels in principals:
        i = index[labels]
        if i not in values:
            values[i] = 1
            frontier.append(con.congruences[i])
    cap = lat.n * lat.n
    layer = 1
    while len(values) < len(con.congruences):
        layer += 1
        if layer > cap:
            raise ValuationDiverged(f"valuation layering exceeded {cap} rounds")
        new = []
        for theta in frontier:
            for labels in principals:
                j = join_congruences(theta, con.congruences[index[labels]])
                ji = index[j.labels]
                if ji not in values:
                    values[ji] = layer
                    new.append(j)
        if not new and len(values) < len(con.congruences):
            raise ValuationDiverged("join layering stalled before covering Con")
        frontier = new
    return Valuation(con, tuple(values[i] for i in range(len(con.congruences))))
