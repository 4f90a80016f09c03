"""Cohomology with trivial coefficients via graded minimal free resolutions.

A resolution P_n -> ... -> P_0 -> k over a connected graded algebra A is built
one grade at a time: at grade g the new generators of P_n complete the image
of the existing ones to the kernel of d_{n-1}.  Generators carry their grade
and weight; the class dual to a generator has the opposite weight.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .algebras import KernelA1, TowerAlgebra, build_tower_algebra
from .errors import (BasisMismatch, CutoffUnstable, DegreeOutOfRange, NotASubalgebraMap,
                     NotLocal, TooShort, WeightsMissing)
from .linalg import Echelon, complement, nullspace
from .pbw import _acc

__all__ = ["Resolution", "CohomClass", "minimal_resolution", "tower_betti",
           "torus_invariant_betti", "yoneda_product", "restriction_on_cohomology",
           "cobar_f2_check", "spectral_bound_check", "growth_rate", "first_betti",
           "expected_tower_betti", "simple_root_embedding", "series_coefficients"]


def _add_grade(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_grade(a, b):
    out = tuple(x - y for x, y in zip(a, b))
    return None if min(out, default=0) < 0 else out


class CohomClass:
    """Element of H^n(A, k) in the basis dual to the generators of P_n."""

    def __init__(self, degree, coords, weight=None):
        self.degree = degree
        self.coords = {k: v for k, v in coords.items()}
        self.weight = weight

    def is_zero(self, F):
        return all(F.is_zero(v) for v in self.coords.values())

    def __repr__(self):
        return f"CohomClass(deg={self.degree}, {self.coords}, weight={self.weight})"


class Resolution:
    """Minimal free resolution of the trivial module over a connected graded algebra."""

    def __init__(self, A, n_max, box=None, build=True):
        if not A.graded:
            raise NotLocal(f"{A.kind} has no connected grading")
        self.A = A
        self.F = A.field
        self.n_max = n_max
        self.box = box
        zero = A.grade(A.unit)
        self.rank_k = len(zero)
        self.zero = zero
        self.gens = [[]]              # grades of generators per degree
        self._pair_map = [{}]
        self.gen_weights = [[self._zero_weight()]]
        self.d = [None]               # d[n][j] = element of P_{n-1}
        self._blocks = {}
        self._solvers = {}
        self._img = {}
        if A.unbounded:
            self._a_grades = A.nonzero_grades(self._box_vector())
        else:
            self._a_grades = A.nonzero_grades()
        self._a_grades_all = [zero] + [h for h in self._a_grades if h != zero]
        self._register(0, zero)
        if build:
            self._build()

    @classmethod
    def from_data(cls, A, n_max, box, gens, gen_weights, d):
        """Reassemble a stored resolution without recomputing it."""
        res = cls(A, n_max, box, build=False)
        for n in range(1, len(gens)):
            res.gens.append([])
            res._pair_map.append({})
            for g in gens[n]:
                res._register(n, tuple(g))
        res.gen_weights = [list(w) for w in gen_weights]
        res.d = [None] + [list(dn) for dn in d[1:]]
        return res

    def _zero_weight(self):
        try:
            return tuple(0 for _ in self.A.weight(self.A.unit))
        except NotImplementedError:
            return None

    def _box_vector(self):
        b = [0] * self.rank_k
        for i in self.A.unbounded:
            b[i] = self.box
        return b

    def in_box(self, g):
        if self.box is None:
            return True
        return all(g[i] <= self.box for i in self.A.unbounded)

    # --- blocks ---
    def block(self, n, g):
        """Basis of P_n in grade g: list of (generator, label) and its index."""
        key = (n, g)
        hit = self._blocks.get(key)
        if hit is None:
            basis = [(j, lab) for j, h in self._pairs(n, g) for lab in self.A.basis_of_grade(h)]
            hit = (basis, {b: i for i, b in enumerate(basis)})
            self._blocks[key] = hit
        return hit

    def _pairs(self, n, g):
        """(generator j, grade g - grade(g_j)) for generators of P_n below g."""
        return self._pair_map[n].get(g, ())

    def _register(self, n, g):
        """Record a new generator of P_n with grade g."""
        j = len(self.gens[n])
        self.gens[n].append(g)
        pm = self._pair_map[n]
        for h in self._a_grades_all:
            t = _add_grade(g, h)
            if self.in_box(t):
                pm.setdefault(t, []).append((j, h))

    def left_mul(self, lab, elem):
        """lab * elem for elem a sparse element of a free module."""
        F, A = self.F, self.A
        out = {}
        for (j, lab2), c in elem.items():
            for lab3, v in A.mul(lab, lab2).items():
                _acc(out, (j, lab3), F.mul(c, v), F)
        return out

    def image(self, n, j, lab):
        """d_n(lab * g_j) as an element of P_{n-1}."""
        key = (n, j, lab)
        hit = self._img.get(key)
        if hit is None:
            hit = self.left_mul(lab, self.d[n][j])
            self._img[key] = hit
        return hit

    def _dense(self, elem, index):
        F = self.F
        v = [F.zero] * len(index)
        for k, c in elem.items():
            v[index[k]] = c
        return v

    # --- construction ---
    def _build(self):
        A, F = self.A, self.F
        for n in range(1, self.n_max + 1):
            cands = set(self._pair_map[n - 1])
            if n == 1:
                cands.discard(self.zero)
            order = sorted(cands, key=lambda g: (sum(g), g))
            self.gens.append([])
            self._pair_map.append({})
            self.gen_weights.append([])
            self.d.append([])
            for g in order:
                self._step(n, g)

    def _kernel(self, n, g):
        """Kernel of d_{n-1} on P_{n-1} in grade g, as sparse elements."""
        F = self.F
        src, _ = self.block(n - 1, g)
        if not src:
            return []
        if n == 1:
            # d_0 is the augmentation; every positive grade lies in its kernel
            return [{b: F.one} for b in src]
        tgt, tidx = self.block(n - 2, g)
        cols = [self._dense(self.image(n - 1, j, lab), tidx) for (j, lab) in src]
        rows = [[cols[c][r] for c in range(len(src))] for r in range(len(tgt))]
        out = []
        for x in nullspace(F, rows, len(src)):
            out.append({src[i]: c for i, c in enumerate(x) if not F.is_zero(c)})
        return out

    def _step(self, n, g):
        F, A = self.F, self.A
        kernel = self._kernel(n, g)
        if not kernel:
            return
        _, idx = self.block(n - 1, g)
        images = [self._dense(self.image(n, i, lab), idx)
                  for i, h in self._pairs(n, g) for lab in A.basis_of_grade(h)]
        kv = [self._dense(k, idx) for k in kernel]
        new = complement(F, images, kv, len(idx))
        for t in new:
            vec = kernel[t]
            self._register(n, g)
            self.d[n].append(vec)
            self.gen_weights[n].append(self._weight_of(n - 1, vec))

    def _weight_of(self, m, vec):
        if self.gen_weights[m][0] is None:
            return None
        (j, lab) = next(iter(vec))
        return _add_grade(self.gen_weights[m][j], self.A.weight(lab))

    # --- queries ---
    @property
    def betti(self):
        return [len(g) for g in self.gens]

    def class_weights(self, n):
        if any(w is None for w in self.gen_weights[n]):
            raise WeightsMissing("algebra carries no weights")
        return [tuple(-x for x in w) for w in self.gen_weights[n]]

    def basis_class(self, n, j):
        w = self.gen_weights[n][j]
        return CohomClass(n, {j: self.F.one}, None if w is None else tuple(-x for x in w))

    def check(self):
        """(d o d == 0, minimality) over all stored differentials."""
        F, A = self.F, self.A
        dd_ok = True
        for n in range(2, len(self.d)):
            for vec in self.d[n]:
                total = {}
                for (j, lab), c in vec.items():
                    for k, v in self.image(n - 1, j, lab).items():
                        _acc(total, k, F.mul(c, v), F)
                if total:
                    dd_ok = False
        minimal = all(F.is_zero(A.augmentation(lab))
                      for n in range(2, len(self.d)) for vec in self.d[n] for (_, lab) in vec)
        return dd_ok, minimal

    def solve(self, n, g, target):
        """Some x in P_n (grade g) with d_n x = target."""
        F = self.F
        key = (n, g)
        hit = self._solvers.get(key)
        src, _ = self.block(n, g)
        tgt, tidx = self.block(n - 1, g)
        if hit is None:
            E = Echelon(F, len(tgt), track=True)
            if src:
                E.add_many([self._dense(self.image(n, j, lab), tidx) for (j, lab) in src])
            hit = E
            self._solvers[key] = hit
        if not target:
            return {}
        combo = hit.express(self._dense(target, tidx))
        if combo is None:
            raise ArithmeticError("target is not a boundary")
        return {src[i]: c for i, c in enumerate(combo) if not F.is_zero(c)}


def minimal_resolution(A, n_max, internal_cutoff=None, max_cutoff=None):
    """Minimal resolution of k to homological degree n_max.

    Graded-infinite algebras are resolved inside a box that bounds the
    unbounded grade coordinates; the box grows until two consecutive
    cutoffs give the same Betti numbers."""
    if not A.graded:
        raise NotLocal(f"{A.kind} is not connected graded")
    if not A.unbounded:
        return Resolution(A, n_max)
    c = internal_cutoff if internal_cutoff is not None else 2
    top = max_cutoff if max_cutoff is not None else c + 6
    prev = Resolution(A, n_max, box=c)
    while c < top:
        c += 1
        cur = Resolution(A, n_max, box=c)
        if cur.betti == prev.betti:
            cur.cutoff_history = (c - 1, c)
            return cur
        prev = cur
    raise CutoffUnstable(f"Betti numbers still changing at cutoff {c}")


def series_coefficients(m, j, n_max):
    """Coefficients of (1+t)^m / (1-t^2)^j up to t^n_max."""
    num = [math.comb(m, k) for k in range(m + 1)]
    den = [0] * (n_max + 1)
    for k in range(0, n_max // 2 + 1):
        den[2 * k] = math.comb(k + j - 1, k) if j else int(k == 0)
    out = []
    for n in range(n_max + 1):
        out.append(sum(num[k] * den[n - k] for k in range(min(m, n) + 1)))
    return out


def expected_tower_betti(R, r, j, n_max):
    return series_coefficients((r + 1) * R.N, j, n_max)


def tower_betti(R, ell, p, r, j, n_max, field=None):
    """Betti numbers of the tower algebra with the first j generators truncated."""
    m = (r + 1) * R.N
    if not 0 <= j <= m:
        raise ValueError(f"j must lie in 0..{m}")
    T = build_tower_algebra(R, ell, p, r, set(range(1, j + 1)), field=field)
    return minimal_resolution(T, n_max).betti


def torus_invariant_betti(res, modulus, cross_check=True):
    """Number of classes in each degree whose weight is divisible by ``modulus``
    on every simple coroot."""
    A = res.A
    out = []
    for n in range(len(res.gens)):
        ws = res.class_weights(n)
        count = sum(1 for w in ws if all(x % modulus == 0 for x in w))
        if cross_check and hasattr(A, "R") and modulus == res.F.ell:
            F, d = res.F, A.R.d
            eig = sum(1 for w in ws
                      if all(F.zeta(d[i] * w[i]) == F.one for i in range(len(w))))
            if eig != count:
                raise AssertionError("lattice and eigenvalue invariance disagree")
        out.append(count)
    return out


def first_betti(A):
    """dim A+/A+^2 computed directly from the structure constants."""
    F = A.field
    plus = [l for l in A.labels if l != A.unit]
    idx = {l: i for i, l in enumerate(plus)}
    E = Echelon(F, len(plus))
    for x in plus:
        for y in plus:
            prod = A.mul(x, y)
            if prod:
                v = [F.zero] * len(plus)
                for k, c in prod.items():
                    v[idx[k]] = c
                E.add(v)
    return len(plus) - E.rank


# ---------------------------------------------------------------------------
# products

def _lift_class(res, q, t, upto):
    """Chain map f_i: P_{q+i} -> P_i lifting the class dual to generator t of P_q."""
    F, A = res.F, res.A
    if q + upto > res.n_max:
        raise DegreeOutOfRange(f"need degree {q + upto} but the resolution stops at {res.n_max}")
    Gt = res.gens[q][t]
    unit = A.unit
    maps = [{j: ({(0, unit): F.one} if j == t else {}) for j in range(len(res.gens[q]))}]
    for i in range(1, upto + 1):
        prev = maps[-1]
        cur = {}
        for h, gh in enumerate(res.gens[q + i]):
            g = _sub_grade(gh, Gt)
            if g is None:
                cur[h] = {}
                continue
            target = {}
            for (j, lab), c in res.d[q + i][h].items():
                for k, v in res.left_mul(lab, prev[j]).items():
                    _acc(target, k, F.mul(c, v), F)
            cur[h] = res.solve(i, g, target)
        maps.append(cur)
    return maps


def _compose(res, p, s, fmap):
    """Class a_s (dual to generator s of P_p) composed with f_p."""
    F, A = res.F, res.A
    out = {}
    for h, elem in fmap.items():
        c = F.zero
        for (j, lab), v in elem.items():
            if j == s:
                c = F.add(c, F.mul(v, A.augmentation(lab)))
        if not F.is_zero(c):
            out[h] = c
    return out


def yoneda_product(res, a, b):
    """Yoneda composite a * b: a composed with the lift of b."""
    F = res.F
    p, q = a.degree, b.degree
    if p + q > res.n_max:
        raise DegreeOutOfRange(f"degree {p + q} exceeds {res.n_max}")
    cache = res.__dict__.setdefault("_lifts", {})
    out = {}
    for t, cb in b.coords.items():
        if F.is_zero(cb):
            continue
        key = (q, t, p)
        if key not in cache:
            cache[key] = _lift_class(res, q, t, p)[p]
        fmap = cache[key]
        for s, ca in a.coords.items():
            if F.is_zero(ca):
                continue
            c = F.mul(ca, cb)
            for h, v in _compose(res, p, s, fmap).items():
                _acc(out, h, F.mul(c, v), F)
    weight = None
    if a.weight is not None and b.weight is not None:
        weight = _add_grade(a.weight, b.weight)
    return CohomClass(p + q, out, weight)


# ---------------------------------------------------------------------------
# restriction

def simple_root_embedding(small, big, root):
    """Label map u(A1) -> u(big) sending F^a to F_{alpha_root}^a."""
    pos = big.data.simple_pos[root - 1]
    N = big.N

    def emb(label):
        out = [0] * N
        out[pos] = label[0]
        return tuple(out)
    return emb


def _check_embedding(small, big, emb):
    F = small.field
    if emb(small.unit) != big.unit:
        raise NotASubalgebraMap("unit is not preserved")
    for x in small.labels:
        for y in small.labels:
            want = {emb(k): v for k, v in small.mul(x, y).items()}
            got = big.mul(emb(x), emb(y))
            if want != got:
                raise NotASubalgebraMap(f"products of {x}, {y} are not preserved")
    del F


def _grade_map(small, big, emb):
    """Linear map on grades induced by the embedding, fixed on unit grades."""
    k = len(small.grade(small.unit))
    images = []
    for i in range(k):
        e = tuple(int(t == i) for t in range(k))
        lab = small.basis_of_grade(e)
        if not lab:
            raise NotASubalgebraMap("no degree-one basis element to fix the grade map")
        images.append(big.grade(emb(lab[0])))

    def gmap(g):
        out = [0] * len(images[0])
        for c, im in zip(g, images):
            for t in range(len(out)):
                out[t] += c * im[t]
        return tuple(out)
    return gmap


def restriction_on_cohomology(small, big, embedding, n_max, modulus=None,
                              small_res=None, big_res=None):
    """Matrices of H^n(big, k) -> H^n(small, k) induced by an embedding of
    based algebras (basis to basis).  With ``modulus`` the report also gives
    the map on torus-invariant classes and the weights of surviving classes."""
    _check_embedding(small, big, embedding)
    F = big.field
    Q = small_res or minimal_resolution(small, n_max)
    P = big_res or minimal_resolution(big, n_max)
    gmap = _grade_map(small, big, embedding)
    psi = [{0: {(0, big.unit): F.one}}]
    report = []
    for n in range(0, n_max + 1):
        if n > 0:
            cur = {}
            for h, gh in enumerate(Q.gens[n]):
                target = {}
                for (j, lab), c in Q.d[n][h].items():
                    for k, v in P.left_mul(embedding(lab), psi[n - 1][j]).items():
                        _acc(target, k, F.mul(c, v), F)
                cur[h] = P.solve(n, gmap(gh), target)
            psi.append(cur)
        # matrix rows: small classes, columns: big classes
        M = [[F.zero] * len(P.gens[n]) for _ in Q.gens[n]]
        for h, elem in psi[n].items():
            for (t, lab), v in elem.items():
                M[h][t] = F.add(M[h][t], F.mul(v, big.augmentation(lab)))
        entry = {"degree": n, "matrix": M, "rank": _rank(F, M, len(P.gens[n]))}
        if modulus is not None:
            bw, sw = P.class_weights(n), Q.class_weights(n)
            bi = [t for t, w in enumerate(bw) if all(x % modulus == 0 for x in w)]
            si = [h for h, w in enumerate(sw) if all(x % modulus == 0 for x in w)]
            sub = [[M[h][t] for t in bi] for h in si]
            survivors, dead = [], []
            for col, t in enumerate(bi):
                w = big.R.weight_to_root(bw[t])
                w = tuple(int(x) for x in w)
                if any(not F.is_zero(sub[r][col]) for r in range(len(si))):
                    survivors.append(w)
                else:
                    dead.append(w)
            entry.update({"invariant_rank": _rank(F, sub, len(bi)), "survivors": survivors,
                          "killed": dead})
        report.append(entry)
    return report


def _rank(F, M, ncols):
    if not M or ncols == 0:
        return 0
    E = Echelon(F, ncols)
    E.add_many(M)
    return E.rank


# ---------------------------------------------------------------------------
# the degree-two cobar cocycle

def _monomial_scales(A, gen):
    """For a truncated generator u: the labels b_a and scalars c_a with u^a = c_a b_a,
    together with the truncation height."""
    F = A.field
    if isinstance(A, KernelA1) and A.part == "U_r":
        if gen == "F":
            step, eps = 1, A.ell
        else:
            n = int(gen[2:-1])
            if n not in [A.p ** i * A.ell for i in range(A.r)]:
                raise BasisMismatch(f"{gen} is not a generator")
            step = n
            eps = A.p
        u = {step: F.one}
    elif isinstance(A, TowerAlgebra) and not A.unbounded:
        if gen not in A.generators:
            raise BasisMismatch(f"{gen} is not a generator")
        u = A.generators[gen]
        k = next(iter(u)).index(1)
        eps = A.caps[k]
    else:
        raise BasisMismatch("cocycle check needs U_r of type A1 or a fully truncated tower")
    scales = {}
    power = A.unit_elem()
    for a in range(1, eps):
        power = A.mul_elem(power, u)
        if len(power) != 1:
            raise BasisMismatch("powers of the generator are not basis multiples")
        (lab, c), = power.items()
        scales[a] = (lab, c)
    if A.mul_elem(power, u):
        raise BasisMismatch("generator power does not vanish at the truncation height")
    return scales, eps


def cobar_f2_check(A, gen, mutate=False):
    """Build f2 in Hom(A+ (x) A+, k): f2(u^a, u^b) = 1 when a, b >= 1 and a + b equals the
    truncation height, 0 on other basis pairs, and test (delta f2)(x,y,z) =
    f2(xy, z) - f2(x, yz) = 0 on all basis triples of A+."""
    F = A.field
    scales, eps = _monomial_scales(A, gen)
    f2 = {}
    for a in range(1, eps):
        for b in range(1, eps):
            if a + b == eps:
                (la, ca), (lb, cb) = scales[a], scales[b]
                f2[(la, lb)] = F.inv(F.mul(ca, cb))
    if mutate:
        # value 1 on the pair (u, u^2), which does not sum to the truncation height
        key = (scales[1][0], scales[2][0])
        f2[key] = F.add(f2.get(key, F.zero), F.one)
    plus = [l for l in A.labels if l != A.unit]

    def f(x_elem, y_elem):
        c = F.zero
        for x, cx in x_elem.items():
            for y, cy in y_elem.items():
                v = f2.get((x, y))
                if v is not None:
                    c = F.add(c, F.mul(v, F.mul(cx, cy)))
        return c

    failures = 0
    for x in plus:
        for y in plus:
            xy = A.mul(x, y)
            for z in plus:
                val = F.sub(f(xy, {z: F.one}), f({x: F.one}, A.mul(y, z)))
                if not F.is_zero(val):
                    failures += 1
    return failures == 0


# ---------------------------------------------------------------------------

def spectral_bound_check(A, n_max, graded=None):
    """Compare dim H^n(A) with dim H^n(gr A) for n <= n_max."""
    from .algebras import associated_graded
    G = graded if graded is not None else associated_graded(A)
    bA = minimal_resolution(A, n_max).betti
    bG = minimal_resolution(G, n_max).betti
    return {"betti": bA, "graded_betti": bG, "b1": first_betti(A), "graded_b1": first_betti(G),
            "holds": all(x <= y for x, y in zip(bA, bG))}


def growth_rate(betti, start=4, margin=0.25):
    """Least integer c >= 0 whose power law n^(c-1) dominates the data: the
    least-squares slope of log b_n against log n over the nonzero terms with
    n >= start must not exceed c - 1 + margin."""
    if len(betti) < 8:
        raise TooShort("need at least 8 terms")
    pts = [(math.log(n), math.log(b)) for n, b in enumerate(betti) if n >= start and b > 0]
    if not pts:
        # eventually zero: bounded by any negative power
        return {"rate": 0, "slope": None, "points": 0, "betti": list(betti), "margin": margin}
    if len(pts) < 2:
        raise TooShort("fewer than two nonzero terms in the fitting range")
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    slope = sum((x - mx) * (y - my) for x, y in pts) / sxx
    c = max(0, math.ceil(slope + 1 - margin))
    return {"rate": c, "slope": slope, "points": len(pts), "betti": list(betti), "margin": margin}
