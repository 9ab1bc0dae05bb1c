"""Finite lattices: join/meet tables and the machinery built on them.

A lattice is a poset whose join and meet tables were computed (and the
unique-bound condition verified) by :func:`as_lattice`.  Tables are dense
index arrays; every downstream closure relies on O(1) lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotACongruence, NotALattice
from .order import Poset, _freeze, order_iso, validate_poset


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A finite lattice over a poset, with dense join/meet index tables."""

    poset: Poset
    join: np.ndarray
    meet: np.ndarray
    bottom: str
    top: str

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    def index(self, name: str) -> int:
        return self.poset.index(name)

    def join_of(self, x: str, y: str) -> str:
        return self.elements[self.join[self.index(x), self.index(y)]]

    def meet_of(self, x: str, y: str) -> str:
        return self.elements[self.meet[self.index(x), self.index(y)]]

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        return f"FiniteLattice({self.n} elements)"


@dataclass(frozen=True)
class IntervalEdge:
    """A prime interval: lower is covered by upper."""

    lower: str
    upper: str


def _bound_table(leq: np.ndarray, upper: bool):
    """Least upper (or greatest lower) bound table; None on failure."""
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    table = np.full((n, n), -1, dtype=np.int32)
    for x in range(n):
        for y in range(x, n):
            if leq[x, y]:
                b = y if upper else x
            elif leq[y, x]:
                b = x if upper else y
            else:
                cand = np.nonzero(leq[x] & leq[y])[0] if upper else np.nonzero(leq[:, x] & leq[:, y])[0]
                if cand.size == 0:
                    return None, (x, y, ())
                sub = strict[np.ix_(cand, cand)]
                extremal = cand[~(sub.any(axis=0) if upper else sub.any(axis=1))]
                if extremal.size != 1:
                    return None, (x, y, tuple(int(e) for e in extremal))
                b = int(extremal[0])
            table[x, y] = table[y, x] = b
    return table, None


def as_lattice(p: Poset) -> FiniteLattice:
    """Compute join and meet tables, or raise NotALattice with a witness."""
    join, bad = _bound_table(p.leq, upper=True)
    if join is None:
        x, y, ws = bad
        raise NotALattice(p.elements[x], p.elements[y], [p.elements[w] for w in ws], "join")
    meet, bad = _bound_table(p.leq, upper=False)
    if meet is None:
        x, y, ws = bad
        raise NotALattice(p.elements[x], p.elements[y], [p.elements[w] for w in ws], "meet")
    bottom = p.elements[int(np.nonzero(p.leq.all(axis=1))[0][0])]
    top = p.elements[int(np.nonzero(p.leq.all(axis=0))[0][0])]
    return FiniteLattice(p, _freeze(join), _freeze(meet), bottom, top)


def lattice_from_covers(elements, covers, name: str = "") -> FiniteLattice:
    return as_lattice(validate_poset(elements, covers, name))


def length(lat: FiniteLattice) -> int:
    """Edge count of a longest chain."""
    return int(lat.poset.heights().max())


def prime_intervals(lat: FiniteLattice) -> list[IntervalEdge]:
    """All cover pairs, ordered by element position."""
    els = lat.elements
    return [IntervalEdge(els[i], els[j]) for i, j in lat.poset.covers()]


def is_01_sublattice(lat: FiniteLattice, subset) -> bool:
    """True iff subset contains the bounds and is closed under join and meet."""
    idx = sorted(lat.index(s) for s in subset)
    present = np.zeros(lat.n, dtype=bool)
    present[idx] = True
    if not (present[lat.index(lat.bottom)] and present[lat.index(lat.top)]):
        return False
    sub = np.ix_(idx, idx)
    return bool(present[lat.join[sub]].all() and present[lat.meet[sub]].all())


def sublattice(lat: FiniteLattice, subset) -> FiniteLattice:
    """The induced lattice on a join/meet-closed subset."""
    idx = sorted(lat.index(s) for s in subset)
    present = np.zeros(lat.n, dtype=bool)
    present[idx] = True
    sub = np.ix_(idx, idx)
    if not (present[lat.join[sub]].all() and present[lat.meet[sub]].all()):
        raise NotALattice(lat.elements[idx[0]], lat.elements[idx[-1]], [], "closure")
    return as_lattice(lat.poset.restrict(idx))


def quotient(lat: FiniteLattice, theta) -> FiniteLattice:
    """The lattice on the blocks of a congruence, with the induced order.

    Block names are the sorted member names joined by ``|``; blocks are
    ordered by their least element position.
    """
    from .congruence import is_congruence  # local import to avoid a cycle

    ok, witness = is_congruence(lat, theta.labels)
    if not ok:
        raise NotACongruence("quotient by a non-congruence", witness)
    labels = np.asarray(theta.labels)
    reps = []
    seen = {}
    for i in range(lat.n):
        if labels[i] not in seen:
            seen[labels[i]] = len(reps)
            reps.append(i)
    k = len(reps)
    names = []
    for r in reps:
        members = sorted(lat.elements[j] for j in range(lat.n) if labels[j] == labels[r])
        names.append("|".join(members))
    leq = np.zeros((k, k), dtype=bool)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            # [x] <= [y] in the quotient iff x v y lies in [y]
            leq[a, b] = labels[lat.join[ra, rb]] == labels[rb]
    return as_lattice(Poset(tuple(names), _freeze(leq)))


def lattice_iso(a: FiniteLattice, b: FiniteLattice) -> dict[str, str] | None:
    """A join-and-meet-preserving bijection, when one exists.

    A bijective order isomorphism between lattices preserves both
    operations, so this reduces to the order search plus a table check.
    """
    mapping = order_iso(a.poset, b.poset)
    if mapping is None:
        return None
    amap = [b.index(mapping[a.elements[i]]) for i in range(a.n)]
    for x in range(a.n):
        for y in range(a.n):
            if amap[a.join[x, y]] != b.join[amap[x], amap[y]]:
                return None
            if amap[a.meet[x, y]] != b.meet[amap[x], amap[y]]:
                return None
    return mapping


def chain(k: int, prefix: str = "c") -> FiniteLattice:
    """The k-element chain c0 < c1 < ... ."""
    names = [f"{prefix}{i}" for i in range(k)]
    covers = [(names[i], names[i + 1]) for i in range(k - 1)]
    return lattice_from_covers(names, covers)


def m3() -> FiniteLattice:
    """The diamond: three incomparable atoms between bounds; simple."""
    return lattice_from_covers(
        ["o", "x", "y", "z", "i"],
        [("o", "x"), ("o", "y"), ("o", "z"), ("x", "i"), ("y", "i"), ("z", "i")],
    )


def c2_times_c3() -> FiniteLattice:
    """The 2x3 grid lattice."""
    els = [f"{a}{b}" for a in range(2) for b in range(3)]
    covers = []
    for a in range(2):
        for b in range(3):
            if b + 1 < 3:
                covers.append((f"{a}{b}", f"{a}{b+1}"))
            if a + 1 < 2:
                covers.append((f"{a}{b}", f"{a+1}{b}"))
    return lattice_from_covers(els, covers)
