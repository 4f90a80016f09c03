import json

import pytest

from flk.algebras import build_dividedpower_kernel_A1, build_small_quantum, build_tower_algebra
from flk.cohomology import minimal_resolution
from flk.errors import FieldMismatch, VersionMismatch
from flk.persist import (cached_algebra, dump_algebra, dump_resolution, export, import_path,
                         load_algebra, load_resolution)
from flk.rootdata import build_root_datum
from flk.scalars import factor_cyclotomic_mod_p, make_field

F11 = make_field(11, 5)


def _swap_m(data, F, other):
    head, body = data.split(b"\n", 1)
    obj = json.loads(body)
    assert obj["field"]["m"] == list(F.m)
    obj["field"]["m"] = list(other)
    return head + b"\n" + json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


@pytest.mark.parametrize("make", [
    lambda: build_small_quantum(build_root_datum("A", 1), F11, "b"),
    lambda: build_dividedpower_kernel_A1(3, 1, 5, "U_r"),
    lambda: build_small_quantum(build_root_datum("A", 1), make_field(0, 5), "u"),
])
def test_table_round_trip(make):
    A = make()
    data = dump_algebra(A)
    B = load_algebra(data)
    assert dump_algebra(B) == data
    for x in list(A.labels)[:10]:
        for y in A.labels:
            assert A.mul(x, y) == B.mul(x, y)


def test_lazy_round_trip_keeps_cached_products():
    T = build_tower_algebra(build_root_datum("A", 2), 5, 0, 0, {1}, field=F11)
    minimal_resolution(T, 3)
    data = dump_algebra(T)
    body = json.loads(data.split(b"\n", 1)[1])
    assert body["mode"] == "lazy" and len(body["products"]) == len(T._cache)
    assert dump_algebra(load_algebra(data)) == data


def test_altered_field_is_refused():
    A = build_small_quantum(build_root_datum("A", 1), F11, "g")
    data = dump_algebra(A)
    other = [m for m in factor_cyclotomic_mod_p(5, 11) if tuple(m) != tuple(F11.m)][0]
    with pytest.raises(FieldMismatch):
        load_algebra(_swap_m(data, F11, other))
    with pytest.raises(FieldMismatch):
        load_algebra(data, field=make_field(11, 5, other))


def test_version_is_checked():
    with pytest.raises(VersionMismatch):
        load_algebra(b"FLK-ALG 2\n{}")
    with pytest.raises(VersionMismatch):
        load_algebra(b"something else\n{}")


def test_resolution_round_trip(tmp_path, u_A2):
    res = minimal_resolution(u_A2, 4)
    path = tmp_path / "res.flk"
    data = export(res, path)
    back = import_path(path)
    assert back.betti == res.betti
    assert dump_resolution(back) == data
    assert load_resolution(data).gens == res.gens


def test_cache_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("FLK_CACHE_DIR", str(tmp_path))
    recipe = {"algebra": "kernel_A1", "p": 3, "r": 1, "ell": 5, "part": "U_r"}
    F = make_field(3, 5)
    built = []

    def build():
        built.append(1)
        return build_dividedpower_kernel_A1(3, 1, 5, "U_r", field=F)

    a = cached_algebra(recipe, F, build)
    b = cached_algebra(recipe, F, build)
    assert built == [1]
    assert dump_algebra(a) == dump_algebra(b)
    assert len(list(tmp_path.iterdir())) == 1
