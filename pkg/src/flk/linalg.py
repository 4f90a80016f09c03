"""Exact linear algebra over a coefficient field.

Vectors are sequences of raw field elements (see ``FieldCtx``).  Prime fields
use vectorised int64 elimination; extension fields and Q(xi) fall back to
plain Python loops over the field's raw operations.
"""
from __future__ import annotations

import numpy as np

__all__ = ["Echelon", "rank", "rref", "nullspace", "solve", "complement", "is_prime_field"]


def is_prime_field(F):
    return F.mode == "finite" and F.degree == 1


class Echelon:
    """Echelon form of a growing set of vectors, optionally tracking how each
    stored row is combined from the vectors that were added."""

    def __new__(cls, F, ncols, track=False):
        if cls is Echelon:
            cls = _NpEchelon if is_prime_field(F) else _PyEchelon
        return object.__new__(cls)

    def add(self, v):
        return self.add_many([v])[0]

    def reduce(self, v):
        rem, combo = self.reduce_many([v])
        return rem[0], (combo[0] if combo is not None else None)

    def express(self, v):
        """Coefficients c with v = sum c_i * added_i, or None if v is not in the span."""
        rem, combo = self.reduce(v)
        if any(not self._is_zero(x) for x in rem):
            return None
        return combo

    def contains(self, v):
        rem, _ = self.reduce(v)
        return all(self._is_zero(x) for x in rem)

    @property
    def rank(self):
        return len(self.pivots)


class _NpEchelon(Echelon):
    def __init__(self, F, ncols, track=False):
        self.F = F
        self.p = F.p
        self.ncols = ncols
        self.track = track
        self._rows = np.zeros((8, ncols), dtype=np.int64)
        self.pivots = []
        self.n_in = 0
        self.T = np.zeros((0, 0), dtype=np.int64)

    @property
    def rows(self):
        return self._rows[:len(self.pivots)]

    def _push_row(self, row):
        k = len(self.pivots)
        if k == self._rows.shape[0]:
            buf = np.zeros((2 * k, self.ncols), dtype=np.int64)
            buf[:k] = self._rows
            self._rows = buf
        self._rows[k] = row

    def _is_zero(self, x):
        return x == 0

    def _as_array(self, vs):
        if isinstance(vs, np.ndarray):
            a = vs.astype(np.int64) % self.p
            return a.reshape(-1, self.ncols)
        if len(vs) == 0:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.array(vs, dtype=np.int64).reshape(-1, self.ncols) % self.p

    def _reduce_arr(self, V, W=None):
        p = self.p
        rows = self.rows
        for i, c in enumerate(self.pivots):
            f = V[:, c]
            nz = np.flatnonzero(f)
            if nz.size == 0:
                continue
            fz = f[nz].copy()
            V[nz] = (V[nz] - np.outer(fz, rows[i])) % p
            if W is not None:
                W[nz] = (W[nz] - np.outer(fz, self.T[i])) % p
        return V, W

    def _grow_T(self, extra):
        n_old = self.n_in
        self.n_in += extra
        if self.track:
            T = np.zeros((self.T.shape[0], self.n_in), dtype=np.int64)
            T[:, :n_old] = self.T
            self.T = T

    def add_many(self, vs):
        V = self._as_array(vs).copy()
        k = V.shape[0]
        n_old = self.n_in
        self._grow_T(k)
        W = None
        if self.track:
            W = np.zeros((k, self.n_in), dtype=np.int64)
            for i in range(k):
                W[i, n_old + i] = 1
        V, W = self._reduce_arr(V, W)
        p = self.p
        out = []
        for i in range(k):
            nz = np.flatnonzero(V[i])
            if nz.size == 0:
                out.append(False)
                continue
            c = int(nz[0])
            inv = pow(int(V[i, c]), p - 2, p)
            row = V[i] * inv % p
            self._push_row(row)
            self.pivots.append(c)
            if self.track:
                trow = W[i] * inv % p
                self.T = np.vstack([self.T, trow])
            nz = np.flatnonzero(V[i + 1:, c]) + i + 1
            if nz.size:
                f = V[nz, c].copy()
                V[nz] = (V[nz] - np.outer(f, row)) % p
                if self.track:
                    W[nz] = (W[nz] - np.outer(f, trow)) % p
            out.append(True)
        return out

    def reduce_many(self, vs):
        V = self._as_array(vs).copy()
        W = np.zeros((V.shape[0], self.n_in), dtype=np.int64) if self.track else None
        V, W = self._reduce_arr(V, W)
        combos = None
        if self.track:
            # v = rem + sum (-W)_i added_i
            combos = [list(map(int, (-w) % self.p)) for w in W]
        return [list(map(int, v)) for v in V], combos

    def reduce_array(self, V):
        """Reduce a 2D int array of row vectors; returns the remainder array."""
        V = np.asarray(V, dtype=np.int64) % self.p
        return self._reduce_arr(V.copy())[0]


class _PyEchelon(Echelon):
    def __init__(self, F, ncols, track=False):
        self.F = F
        self.ncols = ncols
        self.track = track
        self.rows = []
        self.T = []
        self.pivots = []
        self.n_in = 0

    def _is_zero(self, x):
        return self.F.is_zero(x)

    def _axpy(self, v, f, row):
        # v - f * row
        F = self.F
        return [F.sub(a, F.mul(f, b)) if not F.is_zero(b) else a for a, b in zip(v, row)]

    def _reduce_one(self, v, w):
        F = self.F
        for i, c in enumerate(self.pivots):
            f = v[c]
            if F.is_zero(f):
                continue
            v = self._axpy(v, f, self.rows[i])
            if w is not None:
                w = self._axpy(w, f, self.T[i] + [F.zero] * (len(w) - len(self.T[i])))
        return v, w

    def add_many(self, vs):
        F = self.F
        out = []
        for v in vs:
            v = list(v)
            self.n_in += 1
            w = None
            if self.track:
                w = [F.zero] * self.n_in
                w[-1] = F.one
            v, w = self._reduce_one(v, w)
            c = next((j for j, x in enumerate(v) if not F.is_zero(x)), None)
            if c is None:
                out.append(False)
                continue
            inv = F.inv(v[c])
            self.rows.append([F.mul(inv, x) for x in v])
            if self.track:
                self.T.append([F.mul(inv, x) for x in w])
            self.pivots.append(c)
            out.append(True)
        return out

    def reduce_many(self, vs):
        F = self.F
        rems, combos = [], [] if self.track else None
        for v in vs:
            w = [F.zero] * self.n_in if self.track else None
            v, w = self._reduce_one(list(v), w)
            rems.append(v)
            if self.track:
                combos.append([F.neg(x) for x in w])
        return rems, combos


def rref(F, M, ncols=None):
    """Reduced row echelon form: (rows, pivot columns)."""
    M = list(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    E = Echelon(F, ncols)
    E.add_many(M)
    order = sorted(range(len(E.pivots)), key=lambda i: E.pivots[i])
    if isinstance(E, _NpEchelon):
        R = E.rows.copy()
        p = F.p
        for i in reversed(range(len(E.pivots))):
            c = E.pivots[i]
            for j in range(len(E.pivots)):
                if j != i and R[j, c]:
                    R[j] = (R[j] - R[j, c] * R[i]) % p
        rows = [list(map(int, R[i])) for i in order]
    else:
        R = [list(r) for r in E.rows]
        for i in reversed(range(len(E.pivots))):
            c = E.pivots[i]
            for j in range(len(E.pivots)):
                if j != i and not F.is_zero(R[j][c]):
                    R[j] = [F.sub(a, F.mul(R[j][c], b)) for a, b in zip(R[j], R[i])]
        rows = [R[i] for i in order]
    return rows, [E.pivots[i] for i in order]


def rank(F, M, ncols=None):
    M = list(M)
    if not M:
        return 0
    E = Echelon(F, ncols if ncols is not None else len(M[0]))
    E.add_many(M)
    return E.rank


def nullspace(F, M, ncols):
    """Basis of {x : M x = 0} for M given as a list of rows of length ncols."""
    rows, piv = rref(F, M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        x = [F.zero] * ncols
        x[fc] = F.one
        for r, pc in zip(rows, piv):
            if not F.is_zero(r[fc]):
                x[pc] = F.neg(r[fc])
        basis.append(x)
    return basis


def solve(F, M, b):
    """Some x with M x = b, or None."""
    ncols = len(M[0]) if M else 0
    cols = [[M[i][j] for i in range(len(M))] for j in range(ncols)]
    E = Echelon(F, len(M), track=True)
    E.add_many(cols)
    return E.express(b)


def complement(F, base, cand, ncols):
    """Indices of vectors in ``cand`` extending span(base) to span(base + cand)."""
    E = Echelon(F, ncols)
    if base:
        E.add_many(base)
    flags = E.add_many(cand) if cand else []
    return [i for i, f in enumerate(flags) if f]
