import itertools

import pytest
from hypothesis import given, strategies as st

from flk.errors import NotLongestWord, NotReduced, UnsupportedType
from flk.rootdata import (build_root_datum, convex_positive_roots, restricted_weights,
                          verify_length_bound)

TYPES = [("A", 1), ("A", 2), ("B", 2), ("A", 3)]


@pytest.mark.parametrize("series,rank,order,N,h", [
    ("A", 1, 2, 1, 2), ("A", 2, 6, 3, 3), ("B", 2, 8, 4, 4), ("A", 3, 24, 6, 4)])
def test_weyl_group_sizes(series, rank, order, N, h):
    R = build_root_datum(series, rank)
    assert len(R.weyl) == order
    assert R.N == N
    assert R.coxeter_number == h
    assert R.longest["length"] == N


@pytest.mark.parametrize("series,rank", TYPES)
def test_rho_pairs_to_one_with_simple_coroots(series, rank):
    R = build_root_datum(series, rank)
    for a in R.simple_roots:
        assert R.pair_coroot(R.rho, a) == 1


@pytest.mark.parametrize("series,rank", TYPES)
def test_convex_order(series, rank):
    R = build_root_datum(series, rank)
    roots = convex_positive_roots(R)
    assert sorted(roots) == sorted(R.positive_roots)
    pos = {g: i for i, g in enumerate(roots)}
    # a root that is a sum of two others sits between them
    for a, b in itertools.combinations(roots, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in pos:
            lo, hi = sorted((pos[a], pos[b]))
            assert lo < pos[s] < hi


@pytest.mark.parametrize("series,rank", TYPES)
def test_every_reduced_w0_word_gives_all_roots(series, rank):
    R = build_root_datum(series, rank)
    found = 0
    for word in itertools.product(range(1, rank + 1), repeat=R.N):
        try:
            roots = convex_positive_roots(R, word)
        except (NotReduced, NotLongestWord):
            continue
        found += 1
        assert sorted(roots) == sorted(R.positive_roots)
    assert found >= 1


def test_bad_words():
    R = build_root_datum("A", 2)
    with pytest.raises(NotReduced):
        convex_positive_roots(R, (1, 1, 2))
    with pytest.raises(NotLongestWord):
        convex_positive_roots(R, (1, 2))
    with pytest.raises(UnsupportedType):
        build_root_datum("G", 2)


@given(st.sampled_from(TYPES), st.data())
def test_weyl_action_preserves_form(t, data):
    R = build_root_datum(*t)
    w = data.draw(st.sampled_from(R.weyl))
    a = data.draw(st.sampled_from(R.positive_roots))
    b = data.draw(st.sampled_from(R.positive_roots))
    assert R.root_pairing(R.act_root(w, a), R.act_root(w, b)) == R.root_pairing(a, b)


def test_restricted_weight_count():
    assert len(restricted_weights(build_root_datum("A", 1), 3, 1, 5)) == 15
    assert len(restricted_weights(build_root_datum("A", 2), 0, 0, 5)) == 25


def _length_bound_oracle(R, s):
    # independent route: lengths from reflections, differences via inversion sets
    out = []
    for w in R.weyl:
        inv = [a for a in R.positive_roots if any(x < 0 for x in R.act_root(w, a))]
        assert len(inv) == w["length"]
        # rho - w^{-1} rho is the sum of the inversion set of w
        diff = [sum(a[i] for a in inv) for i in range(R.rank)]
        out.append((diff, w["length"]))
    nu = R.highest_root
    return all(L >= R.rank + s - 1 for d, L in out if all(x >= s * n for x, n in zip(d, nu)))


@pytest.mark.parametrize("series,rank", TYPES)
@pytest.mark.parametrize("s", [1, 2])
def test_length_bound(series, rank, s):
    R = build_root_datum(series, rank)
    rep = verify_length_bound(R, s)
    assert rep["holds"] and rep["checked"] == len(R.weyl)
    assert _length_bound_oracle(R, s) is True
