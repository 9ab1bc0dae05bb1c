#!/usr/bin/env python3
"""Regenerate the gadget template data files.

The comparability gadget S was pinned down by exhaustive search (see
derive_gadget.py): it is the unique lattice on the eleven placeholders,
with at most 16 cover edges, satisfying the full congruence battery.
The three double-gadget lattices are the transitive-closure glueings of
two S copies over the shared bound pair, and are recomputed here rather
than transcribed by hand.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from princlat.order import validate_poset

S_COVERS = [
    ("o", "ap"), ("o", "c"),
    ("ap", "bp"), ("ap", "f"),
    ("c", "d"), ("c", "aq"),
    ("d", "e"), ("d", "f"),
    ("e", "bq"), ("e", "g"),
    ("f", "g"), ("bp", "g"),
    ("aq", "bq"),
    ("bq", "i"), ("g", "i"),
]

S_ROLES = {
    "o": "o", "i": "i",
    "ap": "a_p", "bp": "b_p", "aq": "a_q", "bq": "b_q",
    "c": "c", "d": "d", "e": "e", "f": "f", "g": "g",
}

# second-copy renamings for the three gadget overlaps
GLUE = {
    # chain shape: copy2's lower pair is copy1's upper pair
    "SC": (
        {"c": "c1", "d": "d1", "e": "e1", "f": "f1", "g": "g1"},
        {"ap": "aq", "bp": "bq", "aq": "aq2", "bq": "bq2",
         "c": "c2", "d": "d2", "e": "e2", "f": "f2", "g": "g2"},
        {"aq2": "a_q'", "bq2": "b_q'"},
    ),
    # V shape: both copies share the lower pair
    "SV": (
        {"c": "c1", "d": "d1", "e": "e1", "f": "f1", "g": "g1"},
        {"aq": "aq2", "bq": "bq2",
         "c": "c2", "d": "d2", "e": "e2", "f": "f2", "g": "g2"},
        {"aq2": "a_q'", "bq2": "b_q'"},
    ),
    # hat shape: both copies share the upper pair
    "SH": (
        {"ap": "ap1", "bp": "bp1", "c": "c1", "d": "d1", "e": "e1", "f": "f1", "g": "g1"},
        {"ap": "ap2", "bp": "bp2",
         "c": "c2", "d": "d2", "e": "e2", "f": "f2", "g": "g2"},
        {"ap1": "a_p", "bp1": "b_p", "ap2": "a_p'", "bp2": "b_p'"},
    ),
}


def rename(covers, mapping):
    return [[mapping.get(a, a), mapping.get(b, b)] for a, b in covers]


def poset_doc(name, elements, covers):
    return {"name": name, "elements": list(elements), "covers": [list(c) for c in covers]}


def main():
    outdir = Path(__file__).resolve().parent.parent / "src" / "princlat" / "templates"
    outdir.mkdir(parents=True, exist_ok=True)

    def dump(stem, doc, roles):
        (outdir / f"{stem}.json").write_text(json.dumps(doc, indent=1) + "\n")
        (outdir / f"{stem}.roles.json").write_text(json.dumps(roles, indent=1) + "\n")

    els = sorted({x for e in S_COVERS for x in e})
    dump("S", poset_doc("S", els, sorted(S_COVERS)), S_ROLES)

    for name, (m1, m2, role_over) in GLUE.items():
        c1 = rename(S_COVERS, m1)
        c2 = rename(S_COVERS, m2)
        els = sorted({x for e in c1 + c2 for x in e})
        covers = sorted({(a, b) for a, b in (tuple(x) for x in c1 + c2)})
        # store the transitive reduction of the glued order
        p = validate_poset(els, covers)
        doc = poset_doc(name, els, p.cover_names())
        roles = {}
        for ph in els:
            if ph in role_over:
                roles[ph] = role_over[ph]
            elif ph in S_ROLES:
                roles[ph] = S_ROLES[ph]
            elif ph.endswith("1"):
                roles[ph] = S_ROLES[ph[:-1]]
            elif ph.endswith("2"):
                roles[ph] = S_ROLES[ph[:-1]] + "'"
            else:
                raise AssertionError(ph)
        dump(name, doc, roles)

    dump("Cp", poset_doc("Cp", ["o", "a", "b", "i"], [["o", "a"], ["a", "b"], ["b", "i"]]),
         {"o": "o", "a": "a_p", "b": "b_p", "i": "i"})
    dump("frame", poset_doc("frame", ["o", "a", "i"], [["o", "a"], ["a", "i"]]),
         {"o": "o", "a": "a_p", "i": "i"})
    print(f"wrote templates to {outdir}")


if __name__ == "__main__":
    main()
