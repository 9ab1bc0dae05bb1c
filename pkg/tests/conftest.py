import random

import pytest

from princlat.construction import load_templates
from princlat.lattice import as_lattice
from princlat.order import to_bounded, validate_poset


@pytest.fixture(scope="session")
def templates():
    return load_templates()


def bounded(elements, covers):
    return to_bounded(validate_poset(elements, covers))


@pytest.fixture(scope="session")
def poset_zoo():
    """The hand-checkable posets used across the suite."""
    return {
        "1-chain": bounded(["0"], []),
        "2-chain": bounded(["0", "1"], [("0", "1")]),
        "3-chain": bounded(["0", "m", "1"], [("0", "m"), ("m", "1")]),
        "4-chain": bounded(["0", "p", "q", "1"], [("0", "p"), ("p", "q"), ("q", "1")]),
        "5-chain": bounded(["0", "p", "q", "r", "1"],
                           [("0", "p"), ("p", "q"), ("q", "r"), ("r", "1")]),
        "B2": bounded(["0", "p", "q", "1"],
                      [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]),
        "V": bounded(["0", "p", "q", "r", "1"],
                     [("0", "p"), ("p", "q"), ("p", "r"), ("q", "1"), ("r", "1")]),
        "hat": bounded(["0", "p", "q", "r", "1"],
                       [("0", "p"), ("0", "q"), ("p", "r"), ("q", "r"), ("r", "1")]),
    }


def random_lattice(rng, max_size=10):
    """A random small lattice, or None if the sampled poset is not one."""
    k = rng.randrange(1, max_size - 1)
    names = [f"x{i}" for i in range(k)]
    order = list(names)
    rng.shuffle(order)
    covers = []
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.4:
                covers.append((order[i], order[j]))
    covers += [("bot", x) for x in names]
    covers += [(x, "top") for x in names]
    els = ["bot"] + names + ["top"]
    try:
        return as_lattice(validate_poset(els, covers))
    except Exception:
        return None


def random_lattices(seed, count, max_size=10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lat = random_lattice(rng, max_size)
        if lat is not None:
            out.append(lat)
    return out
