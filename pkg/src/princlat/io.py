"""Reading and writing the shared poset/lattice JSON format.

Every file is UTF-8 JSON of the form
``{"name": str, "elements": [str...], "covers": [[lo, hi]...]}``
where covers are Hasse edges lower -> upper.  Join/meet tables are never
serialized; lattices are reconstructed from the order on load.  An
assembled lattice file additionally carries an ``anchors`` section
mapping each source element to its representing pair.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput
from .lattice import FiniteLattice, as_lattice
from .order import Poset, validate_poset


def poset_to_doc(p: Poset, name: str = "") -> dict:
    return {
        "name": name,
        "elements": list(p.elements),
        "covers": [[a, b] for a, b in p.cover_names()],
    }


def doc_to_poset(doc: dict) -> Poset:
    if not isinstance(doc, dict):
        raise InvalidInput("poset document must be a JSON object")
    for key in ("elements", "covers"):
        if key not in doc:
            raise InvalidInput(f"poset document missing {key!r}")
    covers = [tuple(c) for c in doc["covers"]]
    if any(len(c) != 2 for c in covers):
        raise InvalidInput("covers must be [lower, upper] pairs")
    return validate_poset(doc["elements"], covers)


def load_poset(path) -> Poset:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read poset file {path}: {exc}") from exc
    return doc_to_poset(doc)


def load_lattice(path) -> FiniteLattice:
    return as_lattice(load_poset(path))


def dump_json(doc: dict, path) -> None:
    Path(path).write_text(
        json.dumps(doc, indent=1, sort_keys=False) + "\n", encoding="utf-8"
    )


def lattice_to_doc(lat: FiniteLattice, name: str = "", anchors: dict | None = None) -> dict:
    doc = poset_to_doc(lat.poset, name)
    if anchors is not None:
        doc["anchors"] = {p: [a, b] for p, (a, b) in sorted(anchors.items())}
    return doc


def congruence_blocks_doc(theta) -> list[list[str]]:
    """Serialized form: blocks as sorted name lists, sorted by least element."""
    return [list(b) for b in theta.blocks()]
