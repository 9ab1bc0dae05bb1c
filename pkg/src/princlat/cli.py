"""Command-line surface.

Exit codes: 0 success, 1 verification/counterexample failure, 2 input or
configuration error.  All stdout output is byte-stable for fixed inputs
and seed; timings are reported on stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .congruence import all_congruences, princ_order, valuation
from .construction import assemble_K, load_templates, verify_theorem
from .dotexport import poset_to_dot
from .errors import InputError, PrinclatError, TemplateInvalid
from .fuzzing import run_fuzz
from .io import (
    congruence_blocks_doc,
    dump_json,
    lattice_to_doc,
    load_lattice,
    load_poset,
    poset_to_doc,
)
from .lattice import length, prime_intervals
from .order import Poset, to_bounded, _freeze


@dataclass(frozen=True)
class RunConfig:
    command: str
    poset_path: str = ""
    lattice_path: str = ""
    out_path: str = ""
    template_dir: str | None = None
    max_size: int = 1
    samples: int = 1
    seed: int = 0
    parallelism: int = 1


def _template_dir(explicit: str | None) -> str | None:
    return explicit or os.environ.get("PRINC_TEMPLATES") or None


def cmd_build(cfg: RunConfig) -> int:
    templates = load_templates(_template_dir(cfg.template_dir))
    P = to_bounded(load_poset(cfg.poset_path))
    result = assemble_K(P, templates)
    lat = result.lattice
    doc = lattice_to_doc(lat, name=f"K({cfg.poset_path})", anchors=result.anchor)
    dump_json(doc, cfg.out_path)
    kinds: dict[str, int] = {}
    for g in sorted({g for gs in result.membership.values() for g in gs}):
        kinds[g.split("@")[0]] = kinds.get(g.split("@")[0], 0) + 1
    counts = " ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
    print(f"|K|={lat.n} length={length(lat)} gadgets: {counts}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    templates = load_templates(_template_dir(cfg.template_dir))
    P = to_bounded(load_poset(cfg.poset_path))
    report = verify_theorem(P, templates, name=cfg.poset_path)
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def cmd_fuzz(cfg: RunConfig) -> int:
    outcomes = run_fuzz(cfg.max_size, cfg.samples, cfg.seed,
                        jobs=cfg.parallelism, template_dir=_template_dir(cfg.template_dir))
    print(f"fuzz max-size={cfg.max_size} samples={cfg.samples} seed={cfg.seed}")
    print("index |P| comps |K| length status")
    bad = None
    for o in outcomes:
        status = "pass" if o.passed else f"FAIL {o.failed_stage}"
        print(f"{o.index:5d} {o.size:3d} {o.comparabilities:5d} {o.k_size:3d} {o.k_length:6d} {status}")
        if bad is None and not o.passed:
            bad = o
    npass = sum(1 for o in outcomes if o.passed)
    total_t = sum(o.elapsed for o in outcomes)
    print(f"RESULT pass={npass} fail={len(outcomes) - npass}", flush=True)
    print(f"total verification time {total_t:.2f}s", file=sys.stderr)
    if bad is not None:
        print("counterexample poset:")
        print(json.dumps(bad.poset_doc, indent=1))
        return 1
    return 0


def cmd_con(cfg: RunConfig) -> int:
    lat = load_lattice(cfg.lattice_path)
    con = all_congruences(lat)
    doc = {
        "count": len(con),
        "congruences": [congruence_blocks_doc(t) for t in con.congruences],
    }
    print(json.dumps(doc, indent=1))
    return 0


def cmd_princ(cfg: RunConfig) -> int:
    lat = load_lattice(cfg.lattice_path)
    po = princ_order(lat)
    order_poset = _order_doc(po)
    doc = {
        "count": len(po),
        "principal": [
            {"witness": list(w), "blocks": congruence_blocks_doc(t)}
            for t, w in zip(po.congruences, po.witnesses)
        ],
        "order": order_poset,
    }
    print(json.dumps(doc, indent=1))
    if cfg.out_path:
        dump_json(order_poset, cfg.out_path)
    return 0


def _order_doc(po) -> dict:
    import numpy as np

    k = len(po.congruences)
    names = tuple(f"pc{i}" for i in range(k))
    p = Poset(names, _freeze(po.leq.copy()))
    return poset_to_doc(p, name="princ-order")


def cmd_valuation(cfg: RunConfig) -> int:
    lat = load_lattice(cfg.lattice_path)
    con = all_congruences(lat)
    v = valuation(lat, con)
    doc = {
        "values": [
            {"blocks": congruence_blocks_doc(t), "v": val}
            for t, val in zip(con.congruences, v.values)
        ]
    }
    print(json.dumps(doc, indent=1))
    return 0


def cmd_export_dot(cfg: RunConfig) -> int:
    lat = load_lattice(cfg.lattice_path)
    dot = poset_to_dot(lat.poset)
    with open(cfg.out_path, "w", encoding="utf-8") as fh:
        fh.write(dot)
    print(f"wrote {cfg.out_path}: {lat.n} nodes, {len(prime_intervals(lat))} edges")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="princlat",
        description="Finite-lattice congruence engine and bounded-order realization",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="assemble the realizing lattice for a poset")
    b.add_argument("--poset", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--templates")

    v = sub.add_parser("verify", help="run every structural check for a poset")
    v.add_argument("--poset", required=True)
    v.add_argument("--templates")

    f = sub.add_parser("fuzz", help="verify many seeded random posets")
    f.add_argument("--max-size", type=int, required=True)
    f.add_argument("--samples", type=int, required=True)
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--jobs", type=int, default=1)
    f.add_argument("--templates")

    for name in ("con", "princ", "valuation"):
        c = sub.add_parser(name, help=f"print {name} data for a lattice file")
        c.add_argument("--lattice", required=True)
        if name == "princ":
            c.add_argument("--out", help="also write the principal order as a poset file")

    d = sub.add_parser("export-dot", help="emit a ranked Hasse diagram")
    d.add_argument("--lattice", required=True)
    d.add_argument("--out", required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=ns.command,
        poset_path=getattr(ns, "poset", "") or "",
        lattice_path=getattr(ns, "lattice", "") or "",
        out_path=getattr(ns, "out", "") or "",
        template_dir=getattr(ns, "templates", None),
        max_size=getattr(ns, "max_size", 1),
        samples=getattr(ns, "samples", 1),
        seed=getattr(ns, "seed", 0),
        parallelism=getattr(ns, "jobs", 1),
    )
    if cfg.command == "fuzz":
        if cfg.max_size < 1 or cfg.samples < 1 or cfg.parallelism < 1:
            raise InputError("--max-size, --samples and --jobs must be >= 1")
        if not 0 <= cfg.seed < 2 ** 64:
            raise InputError("--seed must fit in 64 bits")
    return cfg


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "fuzz": cmd_fuzz,
    "con": cmd_con,
    "princ": cmd_princ,
    "valuation": cmd_valuation,
    "export-dot": cmd_export_dot,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TemplateInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PrinclatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
