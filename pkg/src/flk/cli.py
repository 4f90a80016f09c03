"""Command-line entry point ``flk``.

Subcommands: build, betti, verma, simples, restrict, cocycle-check, verify.

The verify config is an INI file.  A ``[suite]`` section may set ``checks``
(comma-separated ids such as ``AC-07``, or ``all``), ``output`` (report path),
``cache`` (directory for algebra dumps, like FLK_CACHE_DIR) and ``seed``.  Any
other section is named after a check id and overrides that check's parameters;
values are JSON literals (``5``, ``[1, 2]``) or bare strings.
"""
from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from pathlib import Path

from .algebras import (build_dividedpower_kernel_A1, build_small_quantum, build_tower_algebra,
                       default_field)
from .errors import ConfigInvalid, FlkError
from .persist import dump_algebra, import_path
from .rootdata import build_root_datum, restricted_weights
from .scalars import _is_prime, make_field
from .suite import DEFAULTS, check_ids, run_suite

REPORT_FORMAT = "flk-report 1"
_FIELD_KEYS = ("p", "field_p", "kernel_p")


# ---------------------------------------------------------------------------
# config

def _value(text):
    try:
        return json.loads(text)
    except ValueError:
        return text.strip()


def _validate(cid, params):
    ell = params.get("ell")
    if ell is not None and (not isinstance(ell, int) or ell < 3 or ell % 2 == 0):
        raise ConfigInvalid(f"[{cid}] ell must be an odd integer >= 3, got {ell!r}")
    ell = ell if ell is not None else DEFAULTS[cid].get("ell")
    for key in _FIELD_KEYS:
        if key not in params:
            continue
        p = params[key]
        if not isinstance(p, int) or p % 2 == 0 or not _is_prime(p):
            raise ConfigInvalid(f"[{cid}] {key} must be an odd prime, got {p!r}")
        if ell and math.gcd(p, ell) != 1:
            raise ConfigInvalid(f"[{cid}] {key}={p} is not coprime to ell={ell}")


def load_config(path):
    """Parse a suite config into (check ids, per-check overrides, options)."""
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from None
    known = set(check_ids())
    opts = dict(cp["suite"]) if cp.has_section("suite") else {}
    unknown_opts = set(opts) - {"checks", "output", "cache", "seed"}
    if unknown_opts:
        raise ConfigInvalid(f"unknown [suite] keys: {sorted(unknown_opts)}")
    wanted = opts.get("checks", "all").strip()
    ids = check_ids() if wanted == "all" else [c.strip() for c in wanted.split(",") if c.strip()]
    bad = [c for c in ids if c not in known]
    if bad:
        raise ConfigInvalid(f"unknown check ids: {bad}")
    overrides = {}
    for section in cp.sections():
        if section == "suite":
            continue
        if section not in known:
            raise ConfigInvalid(f"unknown section [{section}]")
        params = {k: _value(v) for k, v in cp[section].items()}
        extra = set(params) - set(DEFAULTS[section])
        if extra:
            raise ConfigInvalid(f"[{section}] unknown keys: {sorted(extra)}")
        _validate(section, params)
        overrides[section] = params
    try:
        seed = int(opts.get("seed", 0))
    except ValueError:
        raise ConfigInvalid("seed must be an integer") from None
    return ids, overrides, {"output": opts.get("output"), "cache": opts.get("cache"), "seed": seed}


def run_verify(ids=None, overrides=None, seed=0, timings=False):
    """Run the suite; returns (report dict, all passed)."""
    records = run_suite(ids, overrides, timings)
    failed = [r["id"] for r in records if r["status"] != "pass"]
    report = {"format": REPORT_FORMAT, "seed": seed, "checks": records,
              "passed": len(records) - len(failed), "failed": failed}
    return report, not failed


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


# ---------------------------------------------------------------------------
# algebra construction from flags

def _root(typ):
    typ = typ.upper()
    return build_root_datum(typ[0], int(typ[1:]))


def _parse_ints(text):
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _algebra(args):
    if getattr(args, "load", None):
        return import_path(args.load)
    part = args.part
    if part in ("u", "b", "g"):
        if args.r:
            raise ConfigInvalid("parts u, b, g need --r 0; use U_r, B_r, G_r for kernels")
        return build_small_quantum(_root(args.type), default_field(args.ell, args.p), part)
    if part in ("U_r", "B_r", "G_r"):
        if _root(args.type).rank != 1 or args.type.upper()[0] != "A":
            raise ConfigInvalid("divided-power kernels are available for A1 only")
        return build_dividedpower_kernel_A1(args.p or 0, args.r, args.ell, part)
    if part == "tower":
        kill = set(_parse_ints(args.kill)) if args.kill else set()
        return build_tower_algebra(_root(args.type), args.ell, args.p or 0, args.r, kill)
    raise ConfigInvalid(f"unknown part {part!r}")


def _common(sp, part_default="u"):
    sp.add_argument("--type", default="A1", help="root system, e.g. A1, A2, B2")
    sp.add_argument("--ell", type=int, default=5)
    sp.add_argument("--p", type=int, default=None, help="characteristic (default: smallest suitable)")
    sp.add_argument("--r", type=int, default=0)
    sp.add_argument("--part", default=part_default, help="u, b, g, U_r, B_r, G_r or tower")
    sp.add_argument("--kill", default="", help="tower only: truncated generators, e.g. 1,2")
    sp.add_argument("--load", default=None, help="read the algebra from a dump instead")


# ---------------------------------------------------------------------------
# subcommands

def cmd_build(args):
    A = _algebra(args)
    data = dump_algebra(A)
    if args.out:
        Path(args.out).write_bytes(data)
    if args.dump_json:
        body = json.loads(data.split(b"\n", 1)[1])
        sys.stdout.write(_dumps(body))
    else:
        sys.stdout.write(_dumps({"algebra": A.recipe, "dim": A.dim, "bytes": len(data),
                                 "out": args.out}))
    return 0


def cmd_betti(args):
    from .cohomology import minimal_resolution, torus_invariant_betti
    A = _algebra(args)
    res = minimal_resolution(A, args.degree)
    out = {"algebra": A.recipe, "betti": res.betti}
    if args.invariant:
        out["invariant_betti"] = torus_invariant_betti(res, args.invariant)
    sys.stdout.write(_dumps(out))
    return 0


def _rep_algebra(args):
    if args.part not in ("g", "G_r"):
        raise ConfigInvalid("verma modules need part g or G_r")
    return _algebra(args)


def _modulus(A):
    return getattr(A, "M", None) or A.ell


def cmd_verma(args):
    from .reps import baby_verma, simple_head
    A = _rep_algebra(args)
    lam = tuple(_parse_ints(args.weight))
    Z = baby_verma(A, lam)
    L, ch = simple_head(Z)
    sys.stdout.write(_dumps({"weight": list(lam), "verma_dim": Z.dim, "simple_dim": L.dim,
                             "simple_character": ch.to_text()}))
    return 0


def cmd_simples(args):
    from .reps import baby_verma, simple_head
    A = _rep_algebra(args)
    rows = []
    for lam in restricted_weights(A.R, A.p if args.part == "G_r" else 0, args.r, A.ell):
        rows.append({"weight": list(lam), "dim": simple_head(baby_verma(A, lam))[0].dim})
    sys.stdout.write(_dumps({"algebra": A.recipe, "simples": rows}))
    return 0


def cmd_restrict(args):
    from .cohomology import restriction_on_cohomology, simple_root_embedding
    F = default_field(args.ell, args.p)
    big = build_small_quantum(_root(args.type), F, "u")
    small = build_small_quantum(_root("A1"), F, "u")
    emb = simple_root_embedding(small, big, args.root)
    rep = restriction_on_cohomology(small, big, emb, args.degree, modulus=args.ell)
    for entry in rep:
        entry.pop("matrix", None)
    sys.stdout.write(_dumps({"root": args.root, "degrees": rep}))
    return 0


def cmd_cocycle(args):
    from .cohomology import cobar_f2_check
    A = _algebra(args)
    ok = cobar_f2_check(A, args.gen, mutate=args.mutate)
    sys.stdout.write(_dumps({"algebra": A.recipe, "generator": args.gen, "mutated": args.mutate,
                             "cocycle": ok}))
    return 0


def cmd_verify(args):
    ids, overrides, opts = (load_config(args.config) if args.config
                            else (check_ids(), {}, {"output": None, "cache": None, "seed": 0}))
    if args.checks:
        ids = [c.strip() for c in args.checks.split(",")]
        bad = [c for c in ids if c not in check_ids()]
        if bad:
            raise ConfigInvalid(f"unknown check ids: {bad}")
    if opts["cache"]:
        os.environ["FLK_CACHE_DIR"] = opts["cache"]
    report, ok = run_verify(ids, overrides, opts["seed"], args.timings)
    text = _dumps(report)
    out = args.out or opts["output"]
    if out:
        Path(out).write_text(text)
    for rec in report["checks"]:
        sys.stderr.write(f"{rec['status'].upper():4}  {rec['id']}\n")
    if not out:
        sys.stdout.write(text)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="flk", description="Small quantum groups, kernels and their cohomology.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct an algebra and write a dump")
    _common(sp)
    sp.add_argument("--out", default=None)
    sp.add_argument("--dump-json", action="store_true", help="print the dump body as JSON")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("betti", help="Betti numbers of the trivial module")
    _common(sp)
    sp.add_argument("--degree", type=int, default=6)
    sp.add_argument("--invariant", type=int, default=0, help="also count weight-invariant classes mod this")
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("verma", help="baby Verma module and its simple head")
    _common(sp, "g")
    sp.add_argument("--weight", required=True, help="comma-separated fundamental coordinates")
    sp.set_defaults(func=cmd_verma)

    sp = sub.add_parser("simples", help="dimensions of all simple modules")
    _common(sp, "g")
    sp.set_defaults(func=cmd_simples)

    sp = sub.add_parser("restrict", help="restriction of cohomology along a simple root")
    sp.add_argument("--type", default="A2")
    sp.add_argument("--ell", type=int, default=5)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--root", type=int, default=1)
    sp.add_argument("--degree", type=int, default=2)
    sp.set_defaults(func=cmd_restrict)

    sp = sub.add_parser("cocycle-check", help="check that the degree-2 cochain is a cocycle")
    _common(sp, "U_r")
    sp.add_argument("--gen", default="F")
    sp.add_argument("--mutate", action="store_true")
    sp.set_defaults(func=cmd_cocycle)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--config", default=None)
    sp.add_argument("--checks", default=None, help="comma-separated check ids")
    sp.add_argument("--out", default=None)
    sp.add_argument("--timings", action="store_true", help="add wall times (reports stop being byte-stable)")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        sys.stderr.write(f"flk: invalid configuration: {exc}\n")
        return 2
    except FlkError as exc:
        sys.stderr.write(f"flk: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
