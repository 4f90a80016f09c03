"""Root systems of types A1, A2, A3, B2 and their Weyl groups.

Roots are integer vectors in the simple-root basis, weights are integer vectors
in the fundamental-weight basis.  Reduced words are tuples of 1-based simple
reflection indices, so ``(1, 2, 1)`` means s1 s2 s1.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from .errors import NotLongestWord, NotReduced, UnsupportedType

__all__ = ["RootDatum", "build_root_datum", "convex_positive_roots",
           "restricted_weights", "verify_length_bound"]

_CARTAN = {
    ("A", 1): [[2]],
    ("A", 2): [[2, -1], [-1, 2]],
    ("A", 3): [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    # Bourbaki labelling: alpha_1 long, alpha_2 short
    ("B", 2): [[2, -1], [-2, 2]],
}
_DEFAULT_W0 = {("A", 1): (1,), ("A", 2): (1, 2, 1), ("A", 3): (1, 2, 1, 3, 2, 1),
               ("B", 2): (1, 2, 1, 2)}


def _mat_inv_fraction(C):
    n = len(C)
    A = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


class RootDatum:
    """Cartan data, positive roots, Weyl group and the special weights/roots."""

    def __init__(self, series, rank):
        key = (series.upper(), rank)
        if key not in _CARTAN:
            raise UnsupportedType(f"type {series}{rank} is not supported")
        self.series, self.rank = key
        n = rank
        self.cartan = [row[:] for row in _CARTAN[key]]
        C = self.cartan
        # d_i = (alpha_i, alpha_i)/2 with short roots of squared length 2
        if self.series == "B":
            self.d = (2, 1)
        else:
            self.d = (1,) * n
        d = self.d
        # (alpha_i, alpha_j) = d_i * a_ij
        self.form = [[d[i] * C[i][j] for j in range(n)] for i in range(n)]
        assert all(self.form[i][j] == self.form[j][i] for i in range(n) for j in range(n))
        self.cartan_inv = _mat_inv_fraction(C)
        self.simple_roots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        self.positive_roots = self._close_roots()
        self.N = len(self.positive_roots)
        self._build_weyl()
        self.rho = (1,) * n
        self.highest_root = max(self.positive_roots, key=sum)
        short = [a for a in self.positive_roots if self.root_norm(a) == 2]
        self.highest_short_root = max(short, key=sum)
        self.coxeter_number = self.pair_coroot(self.rho, self.highest_short_root) + 1
        self.w0_word = _DEFAULT_W0[key]

    # -- pairings ---------------------------------------------------------
    def root_pairing(self, a, b):
        """(a, b) for vectors in the simple-root basis."""
        n = self.rank
        return sum(a[i] * self.form[i][j] * b[j] for i in range(n) for j in range(n))

    def root_norm(self, a):
        return self.root_pairing(a, a)

    def root_to_weight(self, a):
        """Fundamental-weight coordinates (<a, alpha_i^vee>)_i of a root-lattice vector."""
        C = self.cartan
        return tuple(sum(C[i][j] * a[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_root(self, lam):
        """Simple-root coordinates (rational) of a weight."""
        Ci = self.cartan_inv
        return tuple(sum(Ci[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_pairing(self, lam, mu):
        """(lam, mu) for weights in fundamental coordinates."""
        a = self.weight_to_root(lam)
        # (a, mu) with a in root coords: sum_i a_i (alpha_i, mu) = sum_i a_i d_i mu_i
        return sum(a[i] * self.d[i] * mu[i] for i in range(self.rank))

    def pair_coroot(self, lam, alpha):
        """<lam, alpha^vee> for a weight lam and a root alpha (simple-root coords)."""
        num = sum(alpha[i] * self.d[i] * lam[i] for i in range(self.rank))
        da = self.root_norm(alpha) // 2
        val = Fraction(num, da)
        assert val.denominator == 1
        return int(val)

    def dominance_leq(self, lam, mu):
        """lam <= mu in the dominance order."""
        diff = self.weight_to_root(tuple(m - l for l, m in zip(lam, mu)))
        return all(x.denominator == 1 and x >= 0 for x in diff)

    # -- roots and Weyl group -------------------------------------------
    def reflect_root(self, i, a):
        c = self.root_to_weight(a)[i]
        return tuple(a[j] - c * (j == i) for j in range(self.rank))

    def reflect_weight(self, i, lam):
        col = [self.cartan[k][i] for k in range(self.rank)]
        return tuple(lam[k] - lam[i] * col[k] for k in range(self.rank))

    def _close_roots(self):
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            new = []
            for a in frontier:
                for i in range(self.rank):
                    b = self.reflect_root(i, a)
                    if b not in seen:
                        seen.add(b)
                        new.append(b)
            frontier = new
        pos = [a for a in seen if all(x >= 0 for x in a)]
        assert 2 * len(pos) == len(seen)
        return sorted(pos, key=lambda a: (sum(a), tuple(-x for x in a)))

    def _simple_matrices(self):
        n = self.rank
        root_m, wt_m = [], []
        for i in range(n):
            R = np.array([self.reflect_root(i, e) for e in self.simple_roots], dtype=np.int64).T
            W = np.array([self.reflect_weight(i, e) for e in self.simple_roots], dtype=np.int64).T
            root_m.append(R)
            wt_m.append(W)
        return root_m, wt_m

    def _build_weyl(self):
        root_m, wt_m = self._simple_matrices()
        n = self.rank
        ident = np.eye(n, dtype=np.int64)
        elements = [((), ident, ident)]
        index = {ident.tobytes(): 0}
        level = [0]
        while level:
            nxt = []
            for k in level:
                word, R, W = elements[k]
                for i in range(n):
                    R2 = R @ root_m[i]
                    key = R2.tobytes()
                    if key in index:
                        continue
                    index[key] = len(elements)
                    elements.append((word + (i + 1,), R2, W @ wt_m[i]))
                    nxt.append(index[key])
            level = nxt
        self.weyl = [{"word": w, "length": len(w), "root_matrix": R, "weight_matrix": W}
                     for w, R, W in elements]
        self._weyl_index = index
        self.longest = max(self.weyl, key=lambda e: e["length"])

    def act_weight(self, w, lam):
        return tuple(int(x) for x in w["weight_matrix"] @ np.array(lam, dtype=np.int64))

    def act_root(self, w, a):
        return tuple(int(x) for x in w["root_matrix"] @ np.array(a, dtype=np.int64))

    def dot_action(self, w, lam):
        shifted = tuple(l + r for l, r in zip(lam, self.rho))
        return tuple(x - r for x, r in zip(self.act_weight(w, shifted), self.rho))

    def word_matrix(self, word):
        root_m, _ = self._simple_matrices()
        M = np.eye(self.rank, dtype=np.int64)
        for i in word:
            M = M @ root_m[i - 1]
        return M

    def element_of_word(self, word):
        return self.weyl[self._weyl_index[self.word_matrix(word).tobytes()]]

    def to_dict(self):
        return {"series": self.series, "rank": self.rank, "cartan": self.cartan,
                "w0_word": list(self.w0_word)}

    def __repr__(self):
        return f"RootDatum({self.series}{self.rank})"


_DATUM_CACHE = {}


def build_root_datum(series, rank):
    key = (str(series).upper(), int(rank))
    if key not in _DATUM_CACHE:
        _DATUM_CACHE[key] = RootDatum(*key)
    return _DATUM_CACHE[key]


def convex_positive_roots(R, word=None):
    """Positive roots gamma_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) along a reduced
    word for the longest Weyl element."""
    word = tuple(R.w0_word if word is None else word)
    if any(not (1 <= i <= R.rank) for i in word):
        raise NotReduced(f"word {word} uses an index outside 1..{R.rank}")
    roots = []
    for k, i in enumerate(word):
        a = R.simple_roots[i - 1]
        for j in reversed(word[:k]):
            a = R.reflect_root(j - 1, a)
        if not all(x >= 0 for x in a) or a in roots:
            raise NotReduced(f"word {word} is not reduced")
        roots.append(a)
    if len(word) != R.N or not np.array_equal(R.word_matrix(word), R.longest["root_matrix"]):
        raise NotLongestWord(f"word {word} does not represent the longest element")
    return roots


def restricted_weights(R, p, r, ell):
    """Weights with 0 <= <mu, alpha^vee> < p^r * ell for every simple root."""
    if r and not p:
        raise ValueError("r >= 1 needs p > 0")
    bound = (p ** r if r else 1) * ell
    return [tuple(w) for w in product(range(bound), repeat=R.rank)]


def verify_length_bound(R, s):
    """Check that rho - w(rho) >= s * nu forces length(w) >= rank + s - 1."""
    nu = R.highest_root
    witnesses, violations = [], []
    for w in R.weyl:
        diff = tuple(a - b for a, b in zip(R.rho, R.act_weight(w, R.rho)))
        diff = R.weight_to_root(diff)
        if all(x >= s * n for x, n in zip(diff, nu)):
            entry = {"word": list(w["word"]), "length": w["length"]}
            witnesses.append(entry)
            if w["length"] < R.rank + s - 1:
                violations.append(entry)
    return {"type": f"{R.series}{R.rank}", "s": s, "bound": R.rank + s - 1,
            "checked": len(R.weyl), "witnesses": witnesses, "violations": violations,
            "holds": not violations}
