"""Versioned on-disk format for algebras and resolutions.

A dump is one header line ``FLK-ALG 1`` (or ``FLK-RES 1``) followed by
canonical JSON (sorted keys, no whitespace), so equal objects give equal bytes.
Small algebras carry their full structure-constant table; larger or
infinite-dimensional ones carry the products computed so far plus the recipe
needed to rebuild them.
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from .algebras import (associated_graded, build_dividedpower_kernel_A1, build_small_quantum,
                       mirrored, tensor_product, TowerAlgebra)
from .errors import BadParameters, FieldMismatch, VersionMismatch
from .rootdata import build_root_datum
from .scalars import make_field

__all__ = ["dump_algebra", "load_algebra", "dump_resolution", "load_resolution",
           "algebra_from_recipe", "export", "import_path", "cached_algebra", "FORMAT_VERSION"]

FORMAT_VERSION = 1
TABLE_DIM = 150          # full tables up to dim^2 = 22500 products
_CHECK_PRODUCTS = 64


def _canon(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(y) for y in x)
    return x


def _enc_scalar(F, raw):
    return [str(c) if isinstance(c, Fraction) else int(c) for c in F.coeffs(raw)]


def _dec_scalar(F, cs):
    return F.from_coeffs([Fraction(c) if isinstance(c, str) else c for c in cs])


def _field_json(F):
    return {"p": F.p, "ell": F.ell, "m": [str(c) if isinstance(c, Fraction) else int(c) for c in F.m]}


def _field_from(d):
    try:
        if d["p"] == 0:
            return make_field(0, d["ell"])
        return make_field(d["p"], d["ell"], [int(c) for c in d["m"]])
    except BadParameters as exc:
        raise FieldMismatch(f"stored field {d} is not valid: {exc}") from None


def algebra_from_recipe(recipe, field):
    kind = recipe["algebra"]
    if kind == "tower":
        R = build_root_datum(recipe["type"][0], int(recipe["type"][1:]))
        T = TowerAlgebra(R, recipe["ell"], recipe["p"], recipe["r"], set(recipe["kill"]),
                         field=field, sign=-1)
        return mirrored(T) if recipe.get("mirror") else T
    if kind == "small_quantum":
        R = build_root_datum(recipe["type"][0], int(recipe["type"][1:]))
        return build_small_quantum(R, field, recipe["part"])
    if kind == "kernel_A1":
        return build_dividedpower_kernel_A1(recipe["p"], recipe["r"], recipe["ell"],
                                            recipe["part"], field=field)
    if kind == "associated_graded":
        return associated_graded(algebra_from_recipe(recipe["of"], field), check=False)
    if kind == "tensor":
        return tensor_product(algebra_from_recipe(recipe["left"], field),
                              algebra_from_recipe(recipe["right"], field))
    raise BadParameters(f"unknown algebra recipe {kind!r}")


def _split(data, magic):
    head, _, body = data.partition(b"\n")
    parts = head.decode("ascii", "replace").split()
    if len(parts) != 2 or parts[0] != magic:
        raise VersionMismatch(f"not a {magic} dump")
    if parts[1] != str(FORMAT_VERSION):
        raise VersionMismatch(f"format version {parts[1]}, this build reads {FORMAT_VERSION}")
    return json.loads(body.decode("ascii"))


# ---------------------------------------------------------------------------
# algebras

def dump_algebra(A, full_table=None):
    """Serialize A; the table is complete when dim <= TABLE_DIM unless overridden."""
    F = A.field
    if full_table is None:
        full_table = A.dim is not None and A.dim <= TABLE_DIM
    if full_table:
        labels = list(A.labels)
        pairs = [(x, y) for x in labels for y in labels]
    else:
        labels = None
        pairs = list(A._cache)
    products = []
    for x, y in pairs:
        out = A.mul(x, y)
        terms = sorted((_canon(_jsonable(k)), _jsonable(k), _enc_scalar(F, v)) for k, v in out.items())
        products.append([_jsonable(x), _jsonable(y), [[t[1], t[2]] for t in terms]])
    products.sort(key=lambda e: _canon(e[:2]))
    body = {
        "recipe": A.recipe,
        "field": _field_json(F),
        "dim": A.dim,
        "mode": "table" if full_table else "lazy",
        "products": products,
        "generators": {name: [[_jsonable(k), _enc_scalar(F, v)] for k, v in sorted(
            elem.items(), key=lambda kv: _canon(_jsonable(kv[0])))]
            for name, elem in sorted(A.generators.items())},
    }
    if labels is not None:
        body["labels"] = [_jsonable(l) for l in labels]
        try:
            body["weights"] = [_jsonable(A.weight(l)) for l in labels]
        except NotImplementedError:
            body["weights"] = None
        body["filtration"] = [A.filtration(l) for l in labels]
    return f"FLK-ALG {FORMAT_VERSION}\n".encode("ascii") + _canon(body).encode("ascii")


def load_algebra(data, field=None):
    """Rebuild an algebra from a dump and preload its product cache.

    Raises FieldMismatch when ``field`` differs from the stored field or when
    recomputed products disagree with the stored ones.
    """
    body = _split(data, "FLK-ALG")
    stored = _field_from(body["field"])
    if field is not None and field != stored:
        raise FieldMismatch(f"dump is over {stored}, caller expects {field}")
    A = algebra_from_recipe(body["recipe"], stored)
    if "labels" in body and [_jsonable(l) for l in A.labels] != body["labels"]:
        raise FieldMismatch("basis labels differ from the rebuilt algebra")
    F = stored
    loaded = {}
    for x, y, terms in body["products"]:
        loaded[(_tuplify(x), _tuplify(y))] = {_tuplify(k): _dec_scalar(F, c) for k, c in terms}
    # spot-check against fresh products, preferring entries with nontrivial scalars
    trivial = {F.one, F.neg(F.one)}
    keys = sorted(loaded, key=lambda k: (all(v in trivial for v in loaded[k].values()), _canon(_jsonable(k))))
    for key in keys[:_CHECK_PRODUCTS]:
        if A._mul(*key) != loaded[key]:
            raise FieldMismatch(f"stored product {key} disagrees with the rebuilt algebra")
    A._cache.update(loaded)
    return A


# ---------------------------------------------------------------------------
# resolutions

def dump_resolution(res):
    F = res.F
    body = {
        "recipe": res.A.recipe,
        "field": _field_json(F),
        "n_max": res.n_max,
        "box": res.box,
        "gens": [[list(g) for g in gs] for gs in res.gens],
        "gen_weights": [[None if w is None else list(w) for w in ws] for ws in res.gen_weights],
        "d": [None] + [[[[j, _jsonable(lab), _enc_scalar(F, c)] for (j, lab), c in sorted(
            vec.items(), key=lambda kv: (kv[0][0], _canon(_jsonable(kv[0][1]))))]
            for vec in res.d[n]] for n in range(1, len(res.d))],
    }
    return f"FLK-RES {FORMAT_VERSION}\n".encode("ascii") + _canon(body).encode("ascii")


def load_resolution(data, field=None):
    from .cohomology import Resolution
    body = _split(data, "FLK-RES")
    stored = _field_from(body["field"])
    if field is not None and field != stored:
        raise FieldMismatch(f"dump is over {stored}, caller expects {field}")
    A = algebra_from_recipe(body["recipe"], stored)
    d = [None] + [[{(j, _tuplify(lab)): _dec_scalar(stored, c) for j, lab, c in vec} for vec in dn]
                  for dn in body["d"][1:]]
    res = Resolution.from_data(A, body["n_max"], body["box"],
                               [[tuple(g) for g in gs] for gs in body["gens"]],
                               [[None if w is None else tuple(w) for w in ws] for ws in body["gen_weights"]],
                               d)
    if not res.check()[0]:
        raise FieldMismatch("stored differentials do not compose to zero over the stored field")
    return res


# ---------------------------------------------------------------------------
# files and the cache directory

def export(obj, path):
    from .cohomology import Resolution
    data = dump_resolution(obj) if isinstance(obj, Resolution) else dump_algebra(obj)
    Path(path).write_bytes(data)
    return data


def import_path(path, field=None):
    data = Path(path).read_bytes()
    if data.startswith(b"FLK-RES"):
        return load_resolution(data, field)
    return load_algebra(data, field)


def cache_dir():
    d = os.environ.get("FLK_CACHE_DIR")
    return Path(d) if d else None


def cached_algebra(recipe, field, build):
    """Load an algebra dump from FLK_CACHE_DIR if present, else build and store it."""
    root = cache_dir()
    if root is None:
        return build()
    key = hashlib.sha256(_canon({"recipe": recipe, "field": _field_json(field)}).encode()).hexdigest()[:20]
    path = root / f"alg-{key}.flk"
    if path.exists():
        return load_algebra(path.read_bytes(), field)
    A = build()
    root.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dump_algebra(A))
    return A
