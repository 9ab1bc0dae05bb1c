"""Seeded random bounded posets and the randomized verification harness.

Each sample derives its own RNG from (seed, index), so samples are fully
independent, a fixed seed reproduces the run byte for byte, and workers
can generate samples without sharing state.  Timings go to stderr so
that stdout stays byte-stable across runs.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .construction import load_templates, verify_theorem
from .io import poset_to_doc
from .order import BoundedPoset, Poset, to_bounded, validate_poset

_MIX = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def sample_seed(seed: int, index: int) -> int:
    return (seed * _MIX + index + 1) & _MASK


def random_bounded_poset(seed: int, index: int, max_size: int) -> BoundedPoset:
    """A random bounded poset with at most max_size elements.

    Interior covers are a random DAG: edge probability 1/2 over a random
    linear order of the interior, with the bounds adjoined afterwards.
    """
    rng = random.Random(sample_seed(seed, index))
    n = rng.randrange(1, max_size + 1)
    if n == 1:
        return to_bounded(validate_poset(["0"], []))
    if n == 2:
        return to_bounded(validate_poset(["0", "1"], [("0", "1")]))
    k = n - 2
    names = [f"p{i + 1}" for i in range(k)]
    order = list(names)
    rng.shuffle(order)
    covers = []
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.5:
                covers.append((order[i], order[j]))
    covers += [("0", x) for x in names]
    covers += [(x, "1") for x in names]
    return to_bounded(validate_poset(["0"] + names + ["1"], covers))


@dataclass(frozen=True)
class FuzzOutcome:
    index: int
    size: int
    comparabilities: int
    k_size: int
    k_length: int
    passed: bool
    failed_stage: str
    poset_doc: dict
    elapsed: float


def run_sample(args) -> FuzzOutcome:
    seed, index, max_size, template_dir = args
    templates = load_templates(template_dir)
    P = random_bounded_poset(seed, index, max_size)
    t0 = time.perf_counter()
    report = verify_theorem(P, templates, name=f"sample{index}")
    elapsed = time.perf_counter() - t0
    failed = ""
    for name, ok, detail in report.stages:
        if not ok:
            failed = f"{name}: {detail}"
            break
    return FuzzOutcome(
        index, len(P.elements), len(P.comparabilities()),
        report.k_size, report.k_length, report.passed, failed,
        poset_to_doc(P.poset, name=f"sample{index}"), elapsed,
    )


def run_fuzz(max_size: int, samples: int, seed: int, jobs: int = 1,
             template_dir=None) -> list[FuzzOutcome]:
    """Verify `samples` random posets; results ordered by sample index."""
    load_templates(template_dir)  # fail fast on a bad template directory
    work = [(seed, i, max_size, template_dir) for i in range(samples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_sample, work))
    else:
        outcomes = [run_sample(w) for w in work]
    return sorted(outcomes, key=lambda o: o.index)
