"""Finite partially ordered sets.

Posets are immutable: a tuple of element names plus a read-only boolean
matrix of the reflexive-transitive order relation.  All indexing is
positional; element names are opaque strings used only at the I/O
boundary.  Input is always a cover (Hasse) list whose closure is
computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateElement,
    NoOne,
    NoZero,
    UnknownElement,
)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset.  ``leq[i, j]`` iff ``elements[i] <= elements[j]``."""

    elements: tuple[str, ...]
    leq: np.ndarray

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def le(self, x: str, y: str) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def covers(self) -> list[tuple[int, int]]:
        """Transitive reduction as index pairs, sorted."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        red = strict & ~(strict @ strict)
        return sorted(zip(*np.nonzero(red)))

    def cover_names(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers()]

    def heights(self) -> np.ndarray:
        """Length of a longest chain ending at each element."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        h = np.zeros(self.n, dtype=int)
        for i in np.argsort(strict.sum(axis=0)):  # topological: by downset size
            below = np.nonzero(strict[:, i])[0]
            if below.size:
                h[i] = h[below].max() + 1
        return h

    def restrict(self, idx: list[int]) -> "Poset":
        """Induced subposet on the given element positions."""
        idx = list(idx)
        sub = self.leq[np.ix_(idx, idx)].copy()
        return Poset(tuple(self.elements[i] for i in idx), _freeze(sub))

    def dual(self) -> "Poset":
        return Poset(self.elements, _freeze(self.leq.T.copy()))

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and np.array_equal(self.leq, other.leq)
        )

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.covers())} covers)"


@dataclass(frozen=True, eq=False)
class BoundedPoset:
    """A poset with verified bounds, its interior, and its isolated elements.

    ``interior`` is the element set minus the bounds; ``isolated`` holds the
    interior elements that are incomparable to every other interior element.
    """

    poset: Poset
    zero: str
    one: str
    interior: tuple[str, ...]
    isolated: tuple[str, ...]

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    def comparabilities(self) -> list[tuple[str, str]]:
        """All strict pairs p < q with both p, q interior, sorted."""
        p = self.poset
        inner = [p.index(x) for x in self.interior]
        out = []
        for i in inner:
            for j in inner:
                if i != j and p.leq[i, j]:
                    out.append((p.elements[i], p.elements[j]))
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, BoundedPoset) and self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)


@dataclass(frozen=True)
class DownSet:
    """A downward-closed subset of a poset, kept as a sorted name tuple."""

    members: tuple[str, ...]

    def __contains__(self, name: str) -> bool:
        return name in self.members

    def __len__(self) -> int:
        return len(self.members)


def validate_poset(elements, covers, name: str = "") -> Poset:
    """Build a poset from a cover list via reflexive-transitive closure.

    Rejects duplicate or undeclared elements and cover lists whose closure
    would create a cycle (antisymmetry violation).
    """
    elements = tuple(elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateElement(f"duplicate element {e!r}")
        seen.add(e)
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rel = np.eye(n, dtype=bool)
    for lo, hi in covers:
        if lo not in pos:
            raise UnknownElement(f"cover references undeclared element {lo!r}")
        if hi not in pos:
            raise UnknownElement(f"cover references undeclared element {hi!r}")
        rel[pos[lo], pos[hi]] = True
    closure = _transitive_closure(rel)
    cyc = closure & closure.T & ~np.eye(n, dtype=bool)
    if cyc.any():
        i, j = map(int, np.argwhere(cyc)[0])
        raise CycleDetected(f"cycle through {elements[i]!r} and {elements[j]!r}")
    return Poset(elements, _freeze(closure))


def _transitive_closure(rel: np.ndarray) -> np.ndarray:
    closure = rel.copy()
    while True:
        step = closure | (closure @ closure)
        if np.array_equal(step, closure):
            return closure
        closure = step


def to_bounded(p: Poset) -> BoundedPoset:
    """Identify unique bounds and compute the interior and isolated sets."""
    is_zero = p.leq.all(axis=1)
    is_one = p.leq.all(axis=0)
    if is_zero.sum() != 1:
        raise NoZero("poset has no unique minimum")
    if is_one.sum() != 1:
        raise NoOne("poset has no unique maximum")
    zi = int(np.nonzero(is_zero)[0][0])
    oi = int(np.nonzero(is_one)[0][0])
    inner = [i for i in range(p.n) if i not in (zi, oi)]
    interior = tuple(p.elements[i] for i in inner)
    isolated = []
    for i in inner:
        comparable = [
            j for j in inner if j != i and (p.leq[i, j] or p.leq[j, i])
        ]
        if not comparable:
            isolated.append(p.elements[i])
    return BoundedPoset(p, p.elements[zi], p.elements[oi], interior, tuple(isolated))


def down_sets(p: Poset, nonempty_only: bool = False) -> list[DownSet]:
    """All down sets of ``p``, deterministically ordered.

    Enumeration backtracks over a linear extension: an element may enter
    only once everything strictly below it is in, so each down set is
    produced exactly once.  Output is ordered by (size, member indices).
    """
    strict = p.leq & ~np.eye(p.n, dtype=bool)
    order = sorted(range(p.n), key=lambda i: (int(strict[:, i].sum()), i))
    below = {i: set(np.nonzero(strict[:, i])[0].tolist()) for i in range(p.n)}
    found: list[frozenset[int]] = []

    def walk(k: int, current: set[int]):
        if k == len(order):
            found.append(frozenset(current))
            return
        x = order[k]
        walk(k + 1, current)
        if below[x] <= current:
            current.add(x)
            walk(k + 1, current)
            current.remove(x)

    walk(0, set())
    found.sort(key=lambda s: (len(s), sorted(s)))
    out = [DownSet(tuple(sorted((p.elements[i] for i in s)))) for s in found]
    if nonempty_only:
        out = [d for d in out if d.members]
    return out


def principal_down_set(p: Poset, x: str) -> DownSet:
    """The down set of everything below (and including) ``x``."""
    i = p.index(x)
    members = [p.elements[j] for j in range(p.n) if p.leq[j, i]]
    return DownSet(tuple(sorted(members)))


def is_down_set(p: Poset, members) -> bool:
    idx = [p.index(m) for m in members]
    mask = np.zeros(p.n, dtype=bool)
    mask[idx] = True
    # closed downward: anything below a member is a member
    return bool((~(p.leq[:, mask].any(axis=1)) | mask).all())


def containment_order(family: list[DownSet]) -> Poset:
    """The family of down sets as a poset under containment.

    Element names are comma-joined member lists (deterministic given the
    family order); an empty down set is named ``{}``.
    """
    names = tuple(",".join(d.members) if d.members else "{}" for d in family)
    n = len(family)
    leq = np.zeros((n, n), dtype=bool)
    sets = [set(d.members) for d in family]
    for i in range(n):
        for j in range(n):
            leq[i, j] = sets[i] <= sets[j]
    return Poset(names, _freeze(leq))


def order_iso(p: Poset, q: Poset) -> dict[str, str] | None:
    """An order-preserving and order-reflecting bijection, if one exists.

    Backtracking over elements in index order, with invariant pruning on
    (downset size, upset size, height, depth).  Deterministic: the first
    witness in lexicographic assignment order is returned.
    """
    if p.n != q.n:
        return None

    def profile(r: Poset):
        h = r.heights()
        d = r.dual().heights()
        down = r.leq.sum(axis=0)
        up = r.leq.sum(axis=1)
        return [(int(down[i]), int(up[i]), int(h[i]), int(d[i])) for i in range(r.n)]

    pp, qq = profile(p), profile(q)
    if sorted(pp) != sorted(qq):
        return None
    candidates = [[j for j in range(q.n) if qq[j] == pp[i]] for i in range(p.n)]
    assign: list[int | None] = [None] * p.n
    used = [False] * q.n

    def backtrack(i: int) -> bool:
        if i == p.n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                jk = assign[k]
                if (p.leq[k, i] != q.leq[jk, j]) or (p.leq[i, k] != q.leq[j, jk]):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if backtrack(i + 1):
                    return True
                assign[i] = None
                used[j] = False
        return False

    if not backtrack(0):
        return None
    return {p.elements[i]: q.elements[assign[i]] for i in range(p.n)}
