"""PBW rewriting for the negative part of a quantized enveloping algebra.

Root vectors are iterated q-commutators of the simple generators along a
convex order.  Their straightening rules are solved over Q(q) inside the
quantum shuffle algebra, which realizes U^- faithfully, and are then
specialized to a coefficient ring.  On top of the rewriting engine sit the
commutators [E_i, F^a] and the product of triangular elements F^a K^k E^b.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import PoleAtRootOfUnity
from .rootdata import convex_positive_roots
from .scalars import GenericScalar, Laurent, quantum_binomial

__all__ = ["GenericRing", "PBWData", "pbw_data", "NegativePart", "TriangularEngine"]


class GenericRing:
    """Coefficient ring Q(q) with the same raw interface as ``FieldCtx``."""

    mode = "generic"
    zero = GenericScalar(0)
    one = GenericScalar(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a.is_zero()

    def from_int(self, n):
        return GenericScalar(n)

    def qpow(self, e):
        return GenericScalar(Laurent.mono(e))

    def spec(self, s):
        return s if isinstance(s, GenericScalar) else GenericScalar(s)


def _qpow(ring, e):
    if hasattr(ring, "qpow"):
        return ring.qpow(e)
    return ring.zeta(e)


def _acc(out, key, c, ring):
    if ring.is_zero(c):
        return
    old = out.get(key)
    if old is None:
        out[key] = c
    else:
        s = ring.add(old, c)
        if ring.is_zero(s):
            del out[key]
        else:
            out[key] = s


# ---------------------------------------------------------------------------
# quantum shuffle algebra over Z[q, q^-1]

class _Shuffle:
    def __init__(self, form, sign):
        self.form = form
        self.sign = sign
        self._memo = {}

    def words(self, u, v):
        key = (u, v)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not u:
            res = {v: Laurent.mono(0)}
        elif not v:
            res = {u: Laurent.mono(0)}
        else:
            res = {}
            a, b = u[0], v[0]
            for w, c in self.words(u[1:], v).items():
                k = (a,) + w
                res[k] = res[k] + c if k in res else c
            e = -self.sign * sum(self.form[b][x] for x in u)
            for w, c in self.words(u, v[1:]).items():
                k = (b,) + w
                c = Laurent(c.low + e, c.co)
                res[k] = res[k] + c if k in res else c
            res = {k: c for k, c in res.items() if not c.is_zero()}
        self._memo[key] = res
        return res

    def mul(self, x, y):
        out = {}
        for u, cu in x.items():
            for v, cv in y.items():
                for w, c in self.words(u, v).items():
                    t = cu * cv * c
                    out[w] = out[w] + t if w in out else t
        return {w: c for w, c in out.items() if not c.is_zero()}


def _lin(*pairs):
    """Linear combination of dict-vectors with GenericScalar/Laurent coefficients."""
    out = {}
    for coef, vec in pairs:
        for w, c in vec.items():
            t = coef * c
            out[w] = out[w] + t if w in out else t
    return {w: c for w, c in out.items() if not (c.is_zero() if hasattr(c, "is_zero") else c == 0)}


def _to_gs(vec):
    return {w: (c if isinstance(c, GenericScalar) else GenericScalar(c)) for w, c in vec.items()}


def _solve_generic(cols, target):
    """Coefficients x with sum x_i cols_i = target over Q(q), or None."""
    keys = sorted(set().union(target, *cols))
    m, n = len(keys), len(cols)
    rows = [[GenericScalar(0)] * (n + 1) for _ in range(m)]
    for j, col in enumerate(cols):
        for i, k in enumerate(keys):
            if k in col:
                rows[i][j] = GenericScalar(col[k]) if not isinstance(col[k], GenericScalar) else col[k]
    for i, k in enumerate(keys):
        if k in target:
            rows[i][n] = target[k] if isinstance(target[k], GenericScalar) else GenericScalar(target[k])
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = GenericScalar(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(not rows[i][n].is_zero() for i in range(r, m)):
        return None
    x = [GenericScalar(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    return x


def _frac_rank(vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = Fraction(rows[i][c]) / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _eval_laurent(c, x):
    return sum(Fraction(v) * x ** e for e, v in c.terms())


# ---------------------------------------------------------------------------

class PBWData:
    """Generic (Q(q)) PBW data: root vectors, their free-algebra expansions and
    straightening rules F_j F_i = q^{-(g_i, g_j)} F_i F_j + (terms strictly between)."""

    def __init__(self, R, word=None):
        self.R = R
        self.word = tuple(R.w0_word if word is None else word)
        self.roots = convex_positive_roots(R, self.word)
        self.N = len(self.roots)
        n = R.rank
        self.simple_pos = [self.roots.index(R.simple_roots[i]) for i in range(n)]
        self.pair = [[R.root_pairing(a, b) for b in self.roots] for a in self.roots]
        self._choose_definitions()
        for sign in (1, -1):
            for signs in product((1, -1), repeat=len(self.nonsimple)):
                if self._try(sign, dict(zip(self.nonsimple, signs))):
                    self.shuffle_sign = sign
                    self.commutator_signs = dict(zip(self.nonsimple, signs))
                    self._check_serre()
                    return
        raise AssertionError("no q-commutator convention gives convex straightening rules")

    def _choose_definitions(self):
        R, roots = self.R, self.roots
        self.defs = {}
        order = sorted(range(self.N), key=lambda k: sum(roots[k]))
        self.nonsimple = []
        for k in order:
            if sum(roots[k]) == 1:
                continue
            best = None
            for i in range(k):
                for j in range(k + 1, self.N):
                    if tuple(a + b for a, b in zip(roots[i], roots[j])) == roots[k]:
                        if best is None or (j - i) < (best[1] - best[0]):
                            best = (i, j)
            assert best is not None, f"no decomposition for root {roots[k]}"
            self.defs[k] = best
            self.nonsimple.append(k)
        self._order = order

    def _try(self, sign, signs):
        R = self.R
        sh = _Shuffle(R.form, sign)
        img = {}
        free = {}
        for k in self._order:
            if k not in self.defs:
                i = self.roots[k].index(1)
                img[k] = {(i,): Laurent.mono(0)}
                free[k] = {(i,): GenericScalar(1)}
            else:
                i, j = self.defs[k]
                e = signs[k] * self.pair[i][j]
                qe = Laurent.mono(e)
                img[k] = _lin((1, sh.mul(img[i], img[j])), (-qe, sh.mul(img[j], img[i])))
                fij = {u + v: a * b for u, a in free[i].items() for v, b in free[j].items()}
                fji = {v + u: b * a for u, a in free[i].items() for v, b in free[j].items()}
                qg = GenericScalar(qe)
                tot = dict(fij)
                for w, c in fji.items():
                    tot[w] = tot.get(w, GenericScalar(0)) - qg * c
                free[k] = {w: c for w, c in tot.items() if not c.is_zero()}
        self._sh, self._img, self.free_root = sh, img, free
        self._mono_img_memo = {}
        rules = {}
        for i in range(self.N):
            for j in range(i + 1, self.N):
                target_w = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
                lhs = sh.mul(img[j], img[i])
                lead = Laurent.mono(-self.pair[i][j])
                rest = _lin((1, lhs), (-lead, sh.mul(img[i], img[j])))
                cands = self._between_monomials(i, j, target_w)
                if not rest:
                    sol = [GenericScalar(0)] * len(cands)
                else:
                    if not cands:
                        return False
                    sol = _solve_generic([self.monomial_image(m) for m in cands], rest)
                    if sol is None:
                        return False
                lead_mono = tuple(int(t in (i, j)) for t in range(self.N))
                rule = [(lead_mono, GenericScalar(lead))]
                rule += [(m, c) for m, c in zip(cands, sol) if not c.is_zero()]
                rules[(j, i)] = rule
        self.rules = rules
        return True

    def _between_monomials(self, i, j, weight):
        idx = list(range(i + 1, j))
        out = []

        def rec(pos, rem, cur):
            if all(x == 0 for x in rem):
                out.append(tuple(cur))
                return
            if pos == len(idx):
                return
            k = idx[pos]
            g = self.roots[k]
            c = 0
            r = list(rem)
            while all(x >= 0 for x in r):
                cur[k] = c
                rec(pos + 1, tuple(r), cur)
                r = [x - y for x, y in zip(r, g)]
                c += 1
            cur[k] = 0

        rec(0, weight, [0] * self.N)
        return out

    def monomial_image(self, a):
        hit = self._mono_img_memo.get(a)
        if hit is not None:
            return hit
        out = {(): Laurent.mono(0)}
        for k, e in enumerate(a):
            for _ in range(e):
                out = self._sh.mul(out, self._img[k])
        self._mono_img_memo[a] = out
        return out

    def _check_serre(self):
        R = self.R
        n = R.rank
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = 1 - R.cartan[i][j]
                total = {}
                for s in range(m + 1):
                    c = quantum_binomial(m, s, R.d[i]).num
                    if s % 2:
                        c = -c
                    w = {(): Laurent.mono(0)}
                    for letter in [i] * (m - s) + [j] + [i] * s:
                        w = self._sh.mul(w, {(letter,): Laurent.mono(0)})
                    total = _lin((1, total), (c, w))
                assert not total, f"quantum Serre relation fails for ({i},{j})"

    def check_pbw_independence(self, max_height=4, q_value=Fraction(2)):
        """Rank check at a rational q: PBW monomials of bounded height are independent."""
        by_weight = {}
        bound = max_height
        ranges = [range(0, bound + 1)] * self.N
        for a in product(*ranges):
            w = tuple(sum(a[k] * self.roots[k][t] for k in range(self.N))
                      for t in range(self.R.rank))
            if 0 < sum(w) <= max_height:
                by_weight.setdefault(w, []).append(a)
        for w, monos in by_weight.items():
            imgs = [self.monomial_image(m) for m in monos]
            keys = sorted(set().union(*imgs))
            vecs = [[_eval_laurent(img.get(k, Laurent()), q_value) for k in keys] for img in imgs]
            if _frac_rank(vecs) != len(monos):
                return False
        return True

    def free_expansion(self, a):
        """Monomial F^a written in the free algebra on simple letters."""
        out = {(): GenericScalar(1)}
        for k, e in enumerate(a):
            for _ in range(e):
                nxt = {}
                for u, cu in out.items():
                    for v, cv in self.free_root[k].items():
                        w = u + v
                        nxt[w] = nxt.get(w, GenericScalar(0)) + cu * cv
                out = {w: c for w, c in nxt.items() if not c.is_zero()}
        return out


_PBW_CACHE = {}


def pbw_data(R, word=None):
    key = (R.series, R.rank, tuple(R.w0_word if word is None else word))
    if key not in _PBW_CACHE:
        _PBW_CACHE[key] = PBWData(R, word)
    return _PBW_CACHE[key]


# ---------------------------------------------------------------------------

class NegativePart:
    """Normal-form multiplication of PBW monomials F^a over a coefficient ring.

    ``cap`` truncates exponents: monomials with some exponent >= cap are zero,
    as happens for plain powers of root vectors at an ell-th root of unity.
    """

    def __init__(self, data, ring, cap=None):
        self.data = data
        self.ring = ring
        self.cap = cap
        self.N = data.N
        self.zero_mono = (0,) * self.N
        self.rules = {}
        for key, rule in data.rules.items():
            spec = []
            for m, c in rule:
                try:
                    v = ring.spec(c)
                except PoleAtRootOfUnity:
                    raise
                if not ring.is_zero(v):
                    spec.append((m, v))
            self.rules[key] = spec
        self._rmul = {}
        self._mul = {}

    def letters(self, a):
        for k, e in enumerate(a):
            for _ in range(e):
                yield k

    def rmul(self, a, k):
        key = (a, k)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        j = max((t for t in range(self.N) if a[t]), default=None)
        if j is None or j <= k:
            b = a[:k] + (a[k] + 1,) + a[k + 1:]
            res = {} if (self.cap is not None and b[k] >= self.cap) else {b: ring.one}
        else:
            a1 = a[:j] + (a[j] - 1,) + a[j + 1:]
            res = {}
            for mono, c in self.rules[(j, k)]:
                cur = {a1: ring.one}
                for letter in self.letters(mono):
                    cur = self.rmul_elem(cur, letter)
                for m, v in cur.items():
                    _acc(res, m, ring.mul(c, v), ring)
        self._rmul[key] = res
        return res

    def rmul_elem(self, x, k):
        ring = self.ring
        out = {}
        for m, c in x.items():
            for m2, c2 in self.rmul(m, k).items():
                _acc(out, m2, ring.mul(c, c2), ring)
        return out

    def mul(self, a, b):
        key = (a, b)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        cur = {a: self.ring.one}
        for k in self.letters(b):
            cur = self.rmul_elem(cur, k)
            if not cur:
                break
        self._mul[key] = cur
        return cur

    def mul_elem(self, x, y):
        ring = self.ring
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                c = ring.mul(ca, cb)
                for m, v in self.mul(a, b).items():
                    _acc(out, m, ring.mul(c, v), ring)
        return out

    def word_to_normal(self, word):
        """Normal form of F_{i_1} ... F_{i_k} for simple letters (0-based)."""
        cur = {self.zero_mono: self.ring.one}
        for i in word:
            cur = self.rmul_elem(cur, self.data.simple_pos[i])
        return cur

    def weight(self, a):
        """Root-lattice degree sum_k a_k gamma_k (the monomial has weight minus this)."""
        R = self.data.R
        return tuple(sum(a[k] * self.data.roots[k][t] for k in range(self.N)) for t in range(R.rank))


class TriangularEngine:
    """Products of triangular elements F^a K^kappa E^b.

    K^kappa stands for prod_i K_i^{kappa_i} with K_i = K_{alpha_i}; with
    ``torus_order`` set, exponents are reduced modulo it.  The E-part uses the
    same rewriting as the F-part, transported along the automorphism swapping
    E_i and F_i.
    """

    def __init__(self, data, ring, cap=None, torus_order=None):
        self.data = data
        self.ring = ring
        self.neg = NegativePart(data, ring, cap)
        self.R = data.R
        self.n = self.R.rank
        self.torus_order = torus_order
        R = self.R
        self.simple_form = R.form
        self._P = {}
        self._Q = {}
        self._eb_words = {}
        self._base = []
        for i in range(self.n):
            di = R.d[i]
            c = GenericScalar(1) / (GenericScalar(Laurent.mono(di)) - GenericScalar(Laurent.mono(-di)))
            self._base.append(ring.spec(c))
        self._ef = {}

    # -- helpers -----------------------------------------------------------
    def kred(self, kappa):
        if self.torus_order is None:
            return tuple(kappa)
        return tuple(x % self.torus_order for x in kappa)

    def pair_root_simple(self, beta, i):
        """(beta, alpha_i) for beta in simple-root coordinates."""
        return sum(beta[t] * self.simple_form[t][i] for t in range(self.n))

    def pair_roots(self, a, b):
        return sum(a[s] * self.simple_form[s][t] * b[t] for s in range(self.n) for t in range(self.n))

    def q(self, e):
        return _qpow(self.ring, e)

    # -- commutators [E_i, F^a] = P K_i - Q K_i^{-1} -------------------------
    def _root_PQ(self, i, k, which):
        d = self.data
        ring = self.ring
        neg = self.neg
        cache = self._P if which == "P" else self._Q
        key = ("root", i, k)
        if key in cache:
            return cache[key]
        if k not in d.defs:
            res = {neg.zero_mono: self._base[i]} if d.simple_pos[i] == k else {}
        else:
            u, v = d.defs[k]
            e = d.commutator_signs[k] * d.pair[u][v]
            sgn = -1 if which == "P" else 1
            res = {}

            def prod_rule(x, y):
                # X(F_x F_y) = q^{sgn (alpha_i, g_y)} X(F_x) F_y + F_x X(F_y)
                ex = sgn * self.pair_root_simple(d.roots[y], i)
                px = self._root_PQ(i, x, which)
                py = self._root_PQ(i, y, which)
                ey = self._unit(y)
                ex_mono = self._unit(x)
                t1 = neg.mul_elem(px, ey)
                t2 = neg.mul_elem(ex_mono, py)
                out = {}
                for m, c in t1.items():
                    _acc(out, m, ring.mul(self.q(ex), c), ring)
                for m, c in t2.items():
                    _acc(out, m, c, ring)
                return out

            for m, c in prod_rule(u, v).items():
                _acc(res, m, c, ring)
            qe = self.q(e)
            for m, c in prod_rule(v, u).items():
                _acc(res, m, ring.neg(ring.mul(qe, c)), ring)
        cache[key] = res
        return res

    def _unit(self, k):
        m = [0] * self.data.N
        m[k] = 1
        return {tuple(m): self.ring.one}

    def comm(self, i, a, which):
        """P (which='P') or Q (which='Q') part of [E_i, F^a]."""
        cache = self._P if which == "P" else self._Q
        key = (i, a)
        if key in cache:
            return cache[key]
        ring, neg = self.ring, self.neg
        k = max((t for t in range(self.data.N) if a[t]), default=None)
        if k is None:
            res = {}
        else:
            x = a[:k] + (a[k] - 1,) + a[k + 1:]
            sgn = -1 if which == "P" else 1
            e = sgn * self.pair_root_simple(self.data.roots[k], i)
            px = self.comm(i, x, which)
            res = {}
            for m, c in neg.mul_elem(px, self._unit(k)).items():
                _acc(res, m, ring.mul(self.q(e), c), ring)
            for m, c in neg.mul_elem({x: ring.one}, self._root_PQ(i, k, which)).items():
                _acc(res, m, c, ring)
        cache[key] = res
        return res

    # -- E-part words -----------------------------------------------------
    def e_words(self, b):
        """E^b as a combination of words in simple E letters, coefficients in the ring."""
        hit = self._eb_words.get(b)
        if hit is None:
            ring = self.ring
            hit = [(w, ring.spec(c)) for w, c in self.data.free_expansion(b).items()]
            hit = [(w, c) for w, c in hit if not ring.is_zero(c)]
            self._eb_words[b] = hit
        return hit

    def apply_E(self, i, terms):
        """Left-multiply a combination of (F-mono, kappa, E-word) by E_i."""
        ring = self.ring
        out = {}
        ei = tuple(int(t == i) for t in range(self.n))
        for (x, kappa, w), c in terms.items():
            # E_i X = X E_i + P K_i - Q K_i^{-1}; E_i K^kappa = q^{-(kappa, alpha_i)} K^kappa E_i
            e = -self.pair_root_simple(kappa, i)
            _acc(out, (x, kappa, (i,) + w), ring.mul(c, self.q(e)), ring)
            kp = self.kred(tuple(a + b for a, b in zip(kappa, ei)))
            km = self.kred(tuple(a - b for a, b in zip(kappa, ei)))
            for m, v in self.comm(i, x, "P").items():
                _acc(out, (m, kp, w), ring.mul(c, v), ring)
            for m, v in self.comm(i, x, "Q").items():
                _acc(out, (m, km, w), ring.neg(ring.mul(c, v)), ring)
        return out

    def _ef_root(self, k, c):
        """E_{gamma_k} F^c as a combination of (F-mono, kappa, E-mono)."""
        key = ("root", k, c)
        hit = self._ef.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        zero_k = (0,) * self.n
        words = {}
        unit = tuple(int(t == k) for t in range(self.data.N))
        for w, coef in self.e_words(unit):
            terms = {(c, zero_k, ()): coef}
            for i in reversed(w):
                terms = self.apply_E(i, terms)
            for key2, v in terms.items():
                _acc(words, key2, v, ring)
        out = {}
        for (X, kappa, w), coef in words.items():
            for em, ec in self.neg.word_to_normal(w).items():
                _acc(out, (X, kappa, em), ring.mul(coef, ec), ring)
        self._ef[key] = out
        return out

    def ef(self, b, c):
        """E^b F^c as a combination of (F-mono, kappa, E-mono)."""
        key = (b, c)
        hit = self._ef.get(key)
        if hit is not None:
            return hit
        ring, neg = self.ring, self.neg
        zero_k = (0,) * self.n
        k = next((t for t in range(self.data.N) if b[t]), None)
        if k is None:
            out = {(c, zero_k, neg.zero_mono): ring.one}
        else:
            rest = b[:k] + (b[k] - 1,) + b[k + 1:]
            out = {}
            for (X, kappa, Y), coef in self.ef(rest, c).items():
                for (X2, kappa2, Y2), c2 in self._ef_root(k, X).items():
                    # X2 K^kappa2 Y2 K^kappa Y = q^{-(kappa, |Y2|)} X2 K^{kappa2+kappa} Y2 Y
                    e = -self.pair_roots(kappa, neg.weight(Y2))
                    scal = ring.mul(ring.mul(coef, c2), self.q(e))
                    kap = self.kred(tuple(s + t for s, t in zip(kappa, kappa2)))
                    for ym, yc in neg.mul(Y2, Y).items():
                        _acc(out, (X2, kap, ym), ring.mul(scal, yc), ring)
        self._ef[key] = out
        return out

    def mul(self, x, y):
        """(F^a K^mu E^b)(F^c K^nu E^d) as a dict of triangular labels."""
        a, mu, b = x
        c, nu, d = y
        ring, neg = self.ring, self.neg
        out = {}
        for (X, kappa, Y), coef in self.ef(b, c).items():
            # F^a K^mu X K^kappa Y K^nu E^d
            e1 = -self.pair_roots(mu, neg.weight(X))
            e2 = -self.pair_roots(nu, neg.weight(Y))
            scal = ring.mul(coef, self.q(e1 + e2))
            kap = self.kred(tuple(s + t + u for s, t, u in zip(mu, kappa, nu)))
            fpart = neg.mul(a, X)
            epart = neg.mul(Y, d)
            for fm, fc in fpart.items():
                for em, ec in epart.items():
                    _acc(out, (fm, kap, em), ring.mul(scal, ring.mul(fc, ec)), ring)
        return out

    def _word_weight(self, w):
        out = [0] * self.n
        for i in w:
            out[i] += 1
        return tuple(out)
