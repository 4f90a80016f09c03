import sympy
from hypothesis import given, strategies as st

from flk.linalg import Echelon, _NpEchelon, _PyEchelon, complement, nullspace, rank, rref, solve
from flk.scalars import make_field

F11 = make_field(11, 5)
F81 = make_field(3, 5)


def matrices(p, max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(lambda n: st.lists(
        st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=1, max_size=max_rows))


def _matvec(F, M, x):
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, x):
            acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


@given(matrices(11))
def test_rank_matches_sympy(M):
    gf = sympy.polys.matrices.DomainMatrix.from_list_sympy(
        len(M), len(M[0]), M).convert_to(sympy.GF(11)).rank()
    assert rank(F11, M) == gf


@given(matrices(11))
def test_numpy_and_python_echelons_agree(M):
    n = len(M[0])
    a = _NpEchelon(F11, n)
    b = object.__new__(_PyEchelon)
    b.__init__(F11, n)
    fa = a.add_many([list(r) for r in M])
    fb = b.add_many([list(r) for r in M])
    assert list(fa) == list(fb)
    assert a.pivots == b.pivots


@given(matrices(11))
def test_nullspace(M):
    n = len(M[0])
    basis = nullspace(F11, M, n)
    assert len(basis) + rank(F11, M) == n
    for x in basis:
        assert all(F11.is_zero(v) for v in _matvec(F11, M, x))


@given(st.lists(st.lists(st.integers(0, 2), min_size=16, max_size=16), min_size=1, max_size=4))
def test_extension_field_nullspace(raw):
    # rows of F_81 elements given by coefficient lists
    M = [[F81.from_coeffs(raw_row[4 * j:4 * j + 4]) for j in range(4)] for raw_row in raw]
    basis = nullspace(F81, M, 4)
    assert len(basis) + rank(F81, M) == 4
    for x in basis:
        assert all(F81.is_zero(v) for v in _matvec(F81, M, x))


@given(matrices(11), st.data())
def test_solve_roundtrip(M, data):
    x = data.draw(st.lists(st.integers(0, 10), min_size=len(M[0]), max_size=len(M[0])))
    b = _matvec(F11, M, x)
    y = solve(F11, M, b)
    assert y is not None
    assert _matvec(F11, M, [int(v) for v in y]) == b


def test_rref_and_complement():
    rows, piv = rref(F11, [[2, 4, 6], [1, 2, 3], [0, 1, 1]])
    assert piv == [0, 1]
    assert rows[0][0] == 1 and rows[1][1] == 1
    assert complement(F11, [[1, 0, 0]], [[2, 0, 0], [0, 1, 0], [1, 1, 0]], 3) == [1]


def test_express_tracks_combinations():
    E = Echelon(F11, 3, track=True)
    E.add_many([[1, 0, 0], [1, 1, 0]])
    c = E.express([3, 2, 0])
    assert c is not None
    assert [int(x) for x in c] == [1, 2]
    assert E.express([0, 0, 1]) is None
