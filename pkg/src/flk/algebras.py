"""Finite-dimensional and graded algebras given by an explicit basis.

Every algebra exposes the same interface (``BasedAlgebra``): a coefficient
field, basis labels, a product returning sparse coordinates, augmentation,
weights in fundamental-weight coordinates and, where available, a connected
grading, filtration degrees and Hopf data on generators.
"""
from __future__ import annotations

import itertools
import random
from collections.abc import Sequence

from .errors import BadParameters, ClosureViolation, HopfDataMissing, NotFiltered, UnsupportedType
from .linalg import Echelon
from .pbw import GenericRing, TriangularEngine, _acc, pbw_data
from .rootdata import build_root_datum
from .scalars import gauss_binomial_in, make_field

__all__ = ["BasedAlgebra", "build_tower_algebra", "build_small_quantum",
           "build_dividedpower_kernel_A1", "associated_graded", "adjoint_stability_check",
           "tensor_product", "mirrored", "default_field", "small_quantum_in_kernel",
           "borel_in_small_quantum", "elem_add", "elem_scale"]


def default_field(ell, p=None):
    """A field containing a primitive ell-th root of unity; by default the
    smallest prime field that has one."""
    if p:
        return make_field(p, ell)
    cand = ell + 1
    while True:
        if cand % ell == 1 and all(cand % f for f in range(2, int(cand ** 0.5) + 1)):
            return make_field(cand, ell)
        cand += ell


def elem_add(F, x, y, c=None):
    """x + c*y for sparse elements (dicts label -> raw)."""
    out = dict(x)
    for k, v in y.items():
        _acc(out, k, v if c is None else F.mul(c, v), F)
    return out


def elem_scale(F, x, c):
    return {k: F.mul(c, v) for k, v in x.items() if not F.is_zero(F.mul(c, v))}


class ProductLabels(Sequence):
    """Lazy list of labels built from a product of ranges by a label function."""

    def __init__(self, sizes, build, split):
        self.sizes = list(sizes)
        self.build = build
        self.split = split
        n = 1
        for s in self.sizes:
            n *= s
        self._len = n

    def __len__(self):
        return self._len

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self._len))]
        if i < 0:
            i += self._len
        if not 0 <= i < self._len:
            raise IndexError(i)
        digits = []
        for s in reversed(self.sizes):
            digits.append(i % s)
            i //= s
        return self.build(tuple(reversed(digits)))

    def __iter__(self):
        for digits in itertools.product(*[range(s) for s in self.sizes]):
            yield self.build(digits)

    def index(self, label):
        digits = self.split(label)
        i = 0
        for d, s in zip(digits, self.sizes):
            if not 0 <= d < s:
                raise ValueError(f"{label} is not a basis label")
            i = i * s + d
        return i

    def __contains__(self, label):
        try:
            self.index(label)
            return True
        except (ValueError, TypeError):
            return False


class BasedAlgebra:
    """Base class: subclasses implement ``_mul`` and the per-label data."""

    kind = "abstract"
    graded = False        # connected grading by N^k available
    unbounded = ()        # grade coordinates without an upper bound
    table_limit = 4000

    def __init__(self, field, recipe):
        self.field = field
        self.recipe = recipe
        self._cache = {}
        self.hopf = None
        self.generators = {}
        self.degree_of = None

    # --- basis ---
    @property
    def dim(self):
        return None if self.unbounded else len(self.labels)

    def index(self, label):
        idx = getattr(self, "_index", None)
        if idx is None and not isinstance(self.labels, ProductLabels):
            self._index = idx = {l: i for i, l in enumerate(self.labels)}
        if idx is None:
            return self.labels.index(label)
        return idx[label]

    # --- products ---
    def mul(self, x, y):
        key = (x, y)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._mul(x, y)
            self._cache[key] = hit
        return hit

    def mul_elem(self, x, y):
        F = self.field
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                c = F.mul(ca, cb)
                for k, v in self.mul(a, b).items():
                    _acc(out, k, F.mul(c, v), F)
        return out

    def unit_elem(self):
        return {self.unit: self.field.one}

    def basis_elem(self, label):
        return {label: self.field.one}

    # --- grading ---
    def grade(self, label):
        raise NotImplementedError

    def basis_of_grade(self, g):
        raise NotImplementedError

    def weight(self, label):
        raise NotImplementedError

    def augmentation(self, label):
        raise NotImplementedError

    def filtration(self, label):
        return None if self.degree_of is None else self.degree_of(label)

    def nonzero_grades(self):
        """All grades of a finite graded algebra, sorted by total degree."""
        gs = {self.grade(l) for l in self.labels}
        return sorted(gs, key=lambda g: (sum(g), g))

    def check_associativity(self, samples=None, seed=0):
        """Count associativity failures on all triples or on random ones."""
        F = self.field
        labels = self.labels
        if samples is None:
            triples = itertools.product(labels, repeat=3)
        else:
            rng = random.Random(seed)
            n = len(labels)
            triples = ((labels[rng.randrange(n)], labels[rng.randrange(n)], labels[rng.randrange(n)])
                       for _ in range(samples))
        bad = 0
        for x, y, z in triples:
            left = self.mul_elem(self.mul(x, y), {z: F.one})
            right = self.mul_elem({x: F.one}, self.mul(y, z))
            if left != right:
                bad += 1
        return bad

    def describe(self):
        return dict(self.recipe)

    def __repr__(self):
        return f"<{self.kind} {self.recipe}>"


# ---------------------------------------------------------------------------
# twisted polynomial tower

class TowerAlgebra(BasedAlgebra):
    """Skew polynomial algebra on X_gamma (gamma positive, convex order) and
    central X_{p^i ell gamma}, with the chosen generators truncated."""

    kind = "tower"
    graded = True

    def __init__(self, R, ell, p, r, kill, field=None, word=None, sign=-1):
        if r and not p:
            raise BadParameters("r >= 1 needs p > 0")
        F = field if field is not None else default_field(ell, p or None)
        if p and F.p != p:
            raise BadParameters("field characteristic differs from p")
        super().__init__(F, {"algebra": "tower", "type": f"{R.series}{R.rank}", "ell": ell,
                             "p": p, "r": r, "kill": sorted(kill), "sign": sign})
        from .rootdata import convex_positive_roots
        self.R = R
        roots = convex_positive_roots(R, word)
        N = len(roots)
        m = (r + 1) * N
        kill = set(kill)
        if not kill <= set(range(1, m + 1)):
            raise BadParameters(f"kill must be a subset of 1..{m}")
        self.ell, self.p, self.r, self.m, self.N = ell, p, r, m, N
        self.roots = roots
        gens = [tuple(g) for g in roots]
        scales = [1] * N
        for i in range(r):
            for g in roots:
                gens.append(tuple(g))
                scales.append(p ** i * ell)
        self.gen_roots = gens
        self.gen_scales = scales
        self.caps = [None] * m
        for k in kill:
            self.caps[k - 1] = ell if k <= N else p
        self.unbounded = tuple(i for i in range(m) if self.caps[i] is None)
        self.kill = kill
        self.sign = sign
        self.pair = [[R.root_pairing(a, b) for b in roots] for a in roots]
        self.unit = (0,) * m
        if not self.unbounded:
            self.labels = ProductLabels(self.caps, lambda d: d, lambda l: l)
        else:
            self.labels = None
        self._gen_weights = [R.root_to_weight(tuple(sign * s * x for x in g))
                             for g, s in zip(gens, scales)]
        self.generators = {self.gen_name(i): {tuple(int(j == i) for j in range(m)): F.one}
                           for i in range(m)}
        self.degree_of = lambda l: sum(l)

    def gen_name(self, i):
        if i < self.N:
            return f"X{i + 1}"
        j, k = divmod(i - self.N, self.N)
        return f"X{k + 1}[{self.p ** j * self.ell}]"

    def in_range(self, a):
        return all(c is None or x < c for x, c in zip(a, self.caps))

    def _mul(self, a, b):
        c = tuple(x + y for x, y in zip(a, b))
        if not self.in_range(c):
            return {}
        N = self.N
        e = 0
        for i in range(N):
            if b[i]:
                for j in range(i + 1, N):
                    if a[j]:
                        e -= a[j] * b[i] * self.pair[i][j]
        return {c: self.field.zeta(e)}

    def grade(self, label):
        return tuple(label)

    def basis_of_grade(self, g):
        return [tuple(g)] if self.in_range(g) and all(x >= 0 for x in g) else []

    def weight(self, label):
        out = [0] * self.R.rank
        for k, e in enumerate(label):
            if e:
                w = self._gen_weights[k]
                for t in range(self.R.rank):
                    out[t] += e * w[t]
        return tuple(out)

    def augmentation(self, label):
        return self.field.one if not any(label) else self.field.zero

    def nonzero_grades(self, box=None):
        ranges = []
        for i, c in enumerate(self.caps):
            if c is None:
                if box is None:
                    raise BadParameters("graded-infinite algebra needs a cutoff box")
                ranges.append(range(box[i] + 1))
            else:
                ranges.append(range(c))
        gs = [tuple(g) for g in itertools.product(*ranges)]
        return sorted(gs, key=lambda g: (sum(g), g))

    def graded_dim(self, total):
        """Number of basis monomials of total degree ``total``."""
        count = 0
        ranges = [range(min(total, c - 1) + 1) if c else range(total + 1) for c in self.caps]
        for g in itertools.product(*ranges):
            if sum(g) == total:
                count += 1
        return count


def build_tower_algebra(R, ell, p, r, kill, field=None, word=None):
    """Twisted polynomial algebra; ``kill`` lists 1-based generator indices
    whose powers are truncated (X^ell = 0 or X^p = 0)."""
    if ell < 3 or ell % 2 == 0:
        raise BadParameters("ell must be odd and >= 3")
    return TowerAlgebra(R, ell, p, r, kill, field=field, word=word)


def mirrored(T):
    """The same tower with all generator weights negated."""
    M = TowerAlgebra(T.R, T.ell, T.p, T.r, T.kill, field=T.field, sign=-T.sign)
    M.recipe["mirror"] = True
    return M


# ---------------------------------------------------------------------------
# small quantum groups

def _filtration_degree(theta, N, r_exp, s_exp, heights):
    deg = 0
    for k in range(N):                 # r_N + theta r_{N-1} + ... + theta^{N-1} r_1
        deg += theta ** (N - 1 - k) * r_exp[k]
    for k in range(N):                 # theta^N s_1 + ... + theta^{2N-1} s_N
        deg += theta ** (N + k) * s_exp[k]
    ht = sum((r_exp[k] + s_exp[k]) * heights[k] for k in range(N))
    return deg + theta ** (2 * N) * ht


class SmallQuantum(BasedAlgebra):
    """u(u), u(b) or u(g) at an ell-th root of unity, in the PBW basis
    F^a K^mu E^b with exponents below ell."""

    kind = "small_quantum"

    def __init__(self, R, F, part, word=None):
        if (R.series, R.rank) not in {("A", 1), ("A", 2), ("B", 2)}:
            raise UnsupportedType(f"small quantum groups are built for A1, A2, B2, not {R}")
        if part not in ("u", "b", "g"):
            raise BadParameters("part must be u, b or g")
        ell = F.ell
        super().__init__(F, {"algebra": "small_quantum", "type": f"{R.series}{R.rank}",
                             "ell": ell, "p": F.p, "part": part, "m": list(F.m)})
        self.R, self.part, self.ell = R, part, ell
        self.data = pbw_data(R, word)
        self.N, self.n = self.data.N, R.rank
        self.engine = TriangularEngine(self.data, F, cap=ell, torus_order=ell)
        self.neg = self.engine.neg
        N, n = self.N, self.n
        zN, zn = (0,) * N, (0,) * n
        if part == "u":
            self.labels = ProductLabels([ell] * N, lambda d: d, lambda l: l)
            self.unit = zN
            self.graded = True
        elif part == "b":
            self.labels = ProductLabels([ell] * (N + n), lambda d: (d[:N], d[N:]),
                                        lambda l: l[0] + l[1])
            self.unit = (zN, zn)
        else:
            self.labels = ProductLabels([ell] * (2 * N + n),
                                        lambda d: (d[:N], d[N:N + n], d[N + n:]),
                                        lambda l: l[0] + l[1] + l[2])
            self.unit = (zN, zn, zN)
        self.heights = [sum(g) for g in self.data.roots]
        self.theta = 2 * ell
        self.degree_of = self._degree
        self._build_generators()

    # label conversions
    def tri(self, label):
        if self.part == "u":
            return (label, (0,) * self.n, (0,) * self.N)
        if self.part == "b":
            return (label[0], label[1], (0,) * self.N)
        return label

    def untri(self, t):
        if self.part == "u":
            return t[0]
        if self.part == "b":
            return (t[0], t[1])
        return t

    @property
    def dim(self):
        return self.ell ** {"u": self.N, "b": self.N + self.n, "g": 2 * self.N + self.n}[self.part]

    def _mul(self, x, y):
        return {self.untri(k): v for k, v in self.engine.mul(self.tri(x), self.tri(y)).items()}

    def grade(self, label):
        if self.part != "u":
            return None
        return self.neg.weight(label)

    def basis_of_grade(self, g):
        if self.part != "u":
            raise NotImplementedError
        if not hasattr(self, "_by_grade"):
            by = {}
            for l in self.labels:
                by.setdefault(self.neg.weight(l), []).append(l)
            self._by_grade = by
        return self._by_grade.get(tuple(g), [])

    def nonzero_grades(self):
        self.basis_of_grade((0,) * self.n)
        return sorted(self._by_grade, key=lambda g: (sum(g), g))

    def weight(self, label):
        a, _, b = self.tri(label)
        wa, wb = self.neg.weight(a), self.neg.weight(b)
        return self.R.root_to_weight(tuple(y - x for x, y in zip(wa, wb)))

    def augmentation(self, label):
        a, _, b = self.tri(label)
        F = self.field
        return F.one if not any(a) and not any(b) else F.zero

    def _degree(self, label):
        a, _, b = self.tri(label)
        return _filtration_degree(self.theta, self.N, a, b, self.heights)

    def _unit_mono(self, k):
        return tuple(int(t == k) for t in range(self.N))

    def _build_generators(self):
        F, n, N = self.field, self.n, self.N
        zN, zn = (0,) * N, (0,) * n
        gens = {}
        for i in range(n):
            f = self._unit_mono(self.data.simple_pos[i])
            gens[f"F{i + 1}"] = {self.untri((f, zn, zN)): F.one}
            if self.part in ("b", "g"):
                ki = tuple(int(t == i) for t in range(n))
                kinv = tuple((-int(t == i)) % self.ell for t in range(n))
                gens[f"K{i + 1}"] = {self.untri((zN, ki, zN)): F.one}
                gens[f"K{i + 1}^-1"] = {self.untri((zN, kinv, zN)): F.one}
            if self.part == "g":
                gens[f"E{i + 1}"] = {(zN, zn, f): F.one}
        self.generators = gens
        if self.part == "u":
            return
        hopf = {}
        one = self.unit_elem()
        neg1 = F.neg(F.one)
        for i in range(n):
            Fi, Ki, Kinv = gens[f"F{i + 1}"], gens[f"K{i + 1}"], gens[f"K{i + 1}^-1"]
            sF = elem_scale(F, self.mul_elem(Fi, Ki), neg1)
            hopf[f"K{i + 1}"] = {"element": Ki, "coproduct": [(Ki, Ki, Kinv)], "antipode": Kinv}
            hopf[f"K{i + 1}^-1"] = {"element": Kinv, "coproduct": [(Kinv, Kinv, Ki)],
                                    "antipode": Ki}
            hopf[f"F{i + 1}"] = {"element": Fi, "coproduct": [(Fi, Kinv, Ki), (one, Fi, sF)],
                                 "antipode": sF}
            if self.part == "g":
                Ei = gens[f"E{i + 1}"]
                sE = elem_scale(F, self.mul_elem(Kinv, Ei), neg1)
                hopf[f"E{i + 1}"] = {"element": Ei, "coproduct": [(Ei, one, one), (Ki, Ei, sE)],
                                     "antipode": sE}
        self.hopf = hopf

    def check_generation(self):
        """Rank of the subalgebra generated by the simple F_i (should be ell^N)."""
        F = self.field
        if self.part != "u":
            raise BadParameters("generation check is for the u part")
        labels = list(self.labels)
        idx = {l: i for i, l in enumerate(labels)}
        E = Echelon(F, len(labels))
        frontier = [self.unit_elem()]

        def vec(x):
            v = [F.zero] * len(labels)
            for k, c in x.items():
                v[idx[k]] = c
            return v

        E.add(vec(frontier[0]))
        gens = [self.generators[f"F{i + 1}"] for i in range(self.n)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul_elem(x, g)
                    if y and E.add(vec(y)):
                        nxt.append(y)
            frontier = nxt
        return E.rank

    def omega(self, label):
        """Image of a g-basis element under the automorphism E_i <-> F_i, K -> K^-1,
        expanded back into the triangular basis."""
        if self.part != "g":
            raise BadParameters("omega is defined on the g part")
        a, mu, b = label
        zN, zn = (0,) * self.N, (0,) * self.n
        F = self.field
        ea = {(zN, zn, a): F.one}
        kmu = {(zN, tuple((-x) % self.ell for x in mu), zN): F.one}
        fb = {(b, zn, zN): F.one}
        return self.mul_elem(self.mul_elem(ea, kmu), fb)


def build_small_quantum(R, F, part, word=None):
    return SmallQuantum(R, F, part, word)


def borel_in_small_quantum(G):
    """Spanning set (the basis) of u(b) inside u(g), as sparse elements."""
    F = G.field
    zN = (0,) * G.N
    out = []
    for a in itertools.product(range(G.ell), repeat=G.N):
        for mu in itertools.product(range(G.ell), repeat=G.n):
            out.append({(a, mu, zN): F.one})
    return out


# ---------------------------------------------------------------------------
# type A1 divided-power kernels

class KernelA1(BasedAlgebra):
    """Divided-power kernel of type A1 at an ell-th root of unity in char p.

    Basis F^(a) e_mu E^(b) with a, b < p^r ell; e_mu (mu mod p^r ell) are the
    weight idempotents spanning the toral part, so F^(a) e_mu E^(b) acts on a
    vector of weight nu as zero unless nu + 2b = mu.
    """

    kind = "kernel_A1"

    def __init__(self, p, r, ell, part, field=None):
        if part not in ("U_r", "B_r", "G_r"):
            raise BadParameters("part must be U_r, B_r or G_r")
        if r and not p:
            raise BadParameters("r >= 1 needs p > 0")
        F = field if field is not None else (make_field(p, ell) if p else make_field(0, ell))
        super().__init__(F, {"algebra": "kernel_A1", "p": p, "r": r, "ell": ell, "part": part,
                             "m": list(F.m)})
        self.R = build_root_datum("A", 1)
        self.p, self.r, self.ell, self.part = p, r, ell, part
        self.M = M = (p ** r if r else 1) * ell
        self.N, self.n = 1, 1
        if part == "U_r":
            self.labels = list(range(M))
            self.unit = 0
            self.graded = True
        elif part == "B_r":
            self.labels = [(a, mu) for a in range(M) for mu in range(M)]
            self.unit = None
        else:
            self.labels = ProductLabels([M, M, M], lambda d: d, lambda l: l)
            self.unit = None
        self.theta = 2 * M
        self.degree_of = self._degree
        self._build_generators()

    def binom(self, m, t):
        return gauss_binomial_in(self.field, m, t)

    def _fprod(self, a, c):
        """Coefficient of F^(a+c) in F^(a) F^(c); checks closure on overflow."""
        coef = self.binom(a + c, a)
        if a + c >= self.M:
            if not self.field.is_zero(coef):
                raise ClosureViolation(f"F^({a}) F^({c}) leaves the span (coefficient nonzero)")
            return None
        return coef

    def _mul(self, x, y):
        F, M = self.field, self.M
        if self.part == "U_r":
            c = self._fprod(x, y)
            return {} if c is None or F.is_zero(c) else {x + y: c}
        if self.part == "B_r":
            (a, mu), (c, nu) = x, y
            if (mu + 2 * c - nu) % M:
                return {}
            co = self._fprod(a, c)
            return {} if co is None or F.is_zero(co) else {(a + c, nu): co}
        (a, mu, b), (c, nu, d) = x, y
        if (mu - nu - 2 * b + 2 * c) % M:
            return {}
        out = {}
        for t in range(min(b, c) + 1):
            k1 = self.binom(nu + b - c, t)
            if F.is_zero(k1):
                continue
            c2 = self._fprod(a, c - t)
            if c2 is None or F.is_zero(c2):
                continue
            # E^(b-t) E^(d) uses the same binomial as the F side
            c3 = self._fprod(b - t, d)
            if c3 is None or F.is_zero(c3):
                continue
            key = (a + c - t, (nu + 2 * b - 2 * t) % M, b - t + d)
            _acc(out, key, F.mul(k1, F.mul(c2, c3)), F)
        return out

    def grade(self, label):
        return (label,) if self.part == "U_r" else None

    def basis_of_grade(self, g):
        return [g[0]] if self.part == "U_r" and 0 <= g[0] < self.M else []

    def nonzero_grades(self):
        return [(a,) for a in range(self.M)]

    def weight(self, label):
        if self.part == "U_r":
            return (-2 * label,)
        if self.part == "B_r":
            return (-2 * label[0],)
        return (2 * (label[2] - label[0]),)

    def augmentation(self, label):
        F = self.field
        if self.part == "U_r":
            return F.one if label == 0 else F.zero
        if self.part == "B_r":
            return F.one if label == (0, 0) else F.zero
        return F.one if label == (0, 0, 0) else F.zero

    def _degree(self, label):
        if self.part == "U_r":
            a, b = label, 0
        elif self.part == "B_r":
            a, b = label[0], 0
        else:
            a, b = label[0], label[2]
        return _filtration_degree(self.theta, 1, (a,), (b,), (1,))

    def unit_elem(self):
        F = self.field
        if self.part == "U_r":
            return {0: F.one}
        if self.part == "B_r":
            return {(0, mu): F.one for mu in range(self.M)}
        return {(0, mu, 0): F.one for mu in range(self.M)}

    # named elements -------------------------------------------------------
    def f_power(self, n):
        F = self.field
        if self.part == "U_r":
            return {n: F.one}
        if self.part == "B_r":
            return {(n, mu): F.one for mu in range(self.M)}
        return {(n, mu, 0): F.one for mu in range(self.M)}

    def e_power(self, n):
        if self.part != "G_r":
            raise BadParameters("E is only in G_r")
        return {(0, mu, n): self.field.one for mu in range(self.M)}

    def k_power(self, j):
        F = self.field
        if self.part == "U_r":
            raise BadParameters("K is not in U_r")
        if self.part == "B_r":
            return {(0, mu): F.zeta(j * mu) for mu in range(self.M)}
        return {(0, mu, 0): F.zeta(j * mu) for mu in range(self.M)}

    def idempotent(self, mu):
        F = self.field
        if self.part == "B_r":
            return {(0, mu % self.M): F.one}
        return {(0, mu % self.M, 0): F.one}

    def _build_generators(self):
        F = self.field
        powers = [1] + [self.p ** i * self.ell for i in range(self.r)]
        gens = {}
        for n in powers:
            gens["F" if n == 1 else f"F({n})"] = self.f_power(n)
        if self.part == "G_r":
            for n in powers:
                gens["E" if n == 1 else f"E({n})"] = self.e_power(n)
        if self.part != "U_r":
            gens["K"] = self.k_power(1)
            gens["K^-1"] = self.k_power(-1)
        self.generators = gens
        if self.part == "U_r":
            return
        hopf = {}
        q = F.zeta
        for j in (1, -1):
            K, Kinv = self.k_power(j), self.k_power(-j)
            hopf["K" if j == 1 else "K^-1"] = {"element": K, "coproduct": [(K, K, Kinv)],
                                                "antipode": Kinv}
        for n in powers:
            name = "F" if n == 1 else f"F({n})"
            cop = []
            for k in range(n + 1):
                left = elem_scale(F, self.f_power(k), q(-k * (n - k)))
                right = self.mul_elem(self.k_power(-k), self.f_power(n - k))
                # S(K^-k F^(n-k)) = S(F^(n-k)) K^k
                s_right = self.mul_elem(self.antipode_f(n - k), self.k_power(k))
                cop.append((left, right, s_right))
            hopf[name] = {"element": self.f_power(n), "coproduct": cop,
                          "antipode": self.antipode_f(n)}
            if self.part == "G_r":
                name = "E" if n == 1 else f"E({n})"
                cop = []
                for i in range(n + 1):
                    left = elem_scale(F, self.mul_elem(self.e_power(n - i), self.k_power(i)),
                                      q(i * (n - i)))
                    cop.append((left, self.e_power(i), self.antipode_e(i)))
                hopf[name] = {"element": self.e_power(n), "coproduct": cop,
                              "antipode": self.antipode_e(n)}
        self.hopf = hopf

    def antipode_f(self, n):
        """S(F^(n)) = (-1)^n q^(-n(n-1)) F^(n) K^n."""
        F = self.field
        sign = F.one if n % 2 == 0 else F.neg(F.one)
        return elem_scale(F, self.mul_elem(self.f_power(n), self.k_power(n)),
                          F.mul(sign, F.zeta(-n * (n - 1))))

    def antipode_e(self, n):
        """S(E^(n)) = (-1)^n q^(n(n-1)) K^-n E^(n)."""
        F = self.field
        sign = F.one if n % 2 == 0 else F.neg(F.one)
        return elem_scale(F, self.mul_elem(self.k_power(-n), self.e_power(n)),
                          F.mul(sign, F.zeta(n * (n - 1))))

    def check_closure(self):
        """Evaluate every product F^(a) F^(b); returns the number of overflow pairs
        (all of which must have vanishing coefficient)."""
        overflow = 0
        for a in range(self.M):
            for b in range(self.M):
                if a + b >= self.M:
                    overflow += 1
                self._fprod(a, b)
        return overflow

    def check_periodicity(self):
        """Gaussian binomials [m choose t] at zeta depend on m mod p^r ell only."""
        F, M = self.field, self.M
        for t in range(M):
            for m in range(-M, M):
                if self.binom(m, t) != self.binom(m + M, t):
                    return False
        return True


def build_dividedpower_kernel_A1(p, r, ell, part, field=None):
    return KernelA1(p, r, ell, part, field=field)


def small_quantum_in_kernel(K):
    """Spanning set of u (generated by E, F, K) inside the A1 kernel G_r."""
    if K.part != "G_r":
        raise BadParameters("needs the G_r part")
    F = K.field
    out = []
    for a in range(K.ell):
        for b in range(K.ell):
            for d in range(K.ell):
                out.append({(a, mu, b): F.zeta(d * mu) for mu in range(K.M)})
    return out


# ---------------------------------------------------------------------------
# associated graded, tensor products

class GradedOf(BasedAlgebra):
    """Associated graded algebra of a filtered algebra (same basis)."""

    kind = "associated_graded"

    def __init__(self, A):
        super().__init__(A.field, {"algebra": "associated_graded", "of": A.recipe})
        self.base = A
        self.labels = A.labels
        self.unit = A.unit
        self.graded = A.graded
        self.unbounded = A.unbounded
        self.degree_of = A.degree_of
        self.generators = A.generators
        for name in ("grade", "basis_of_grade", "weight", "augmentation", "nonzero_grades",
                     "unit_elem", "tri"):
            if hasattr(A, name):
                setattr(self, name, getattr(A, name))
        for attr in ("R", "N", "n", "ell", "data", "M"):
            if hasattr(A, attr):
                setattr(self, attr, getattr(A, attr))

    @property
    def dim(self):
        return self.base.dim

    def _mul(self, x, y):
        top = self.degree_of(x) + self.degree_of(y)
        out = {}
        for k, v in self.base.mul(x, y).items():
            d = self.degree_of(k)
            if d > top:
                raise NotFiltered(f"product of {x} and {y} has a term of degree {d} > {top}")
            if d == top:
                out[k] = v
        return out


def associated_graded(A, check=True):
    if A.degree_of is None:
        raise NotFiltered("algebra carries no filtration degrees")
    G = GradedOf(A)
    if check and A.dim is not None and A.dim <= A.table_limit:
        for x in A.labels:
            for y in A.labels:
                G.mul(x, y)
    return G


class TensorAlgebra(BasedAlgebra):
    """A (x) B with commuting factors; grades and weights add up."""

    kind = "tensor"
    graded = True

    def __init__(self, A, B):
        if A.field != B.field:
            raise BadParameters("tensor factors must share the field")
        super().__init__(A.field, {"algebra": "tensor", "left": A.recipe, "right": B.recipe})
        self.A, self.B = A, B
        self.unit = (A.unit, B.unit)
        ka = len(A.grade(A.unit))
        self._ka = ka
        self.unbounded = tuple(A.unbounded) + tuple(ka + i for i in B.unbounded)
        if not self.unbounded:
            self.labels = [(x, y) for x in A.labels for y in B.labels]
        else:
            self.labels = None

    def _mul(self, x, y):
        F = self.field
        out = {}
        for a, ca in self.A.mul(x[0], y[0]).items():
            for b, cb in self.B.mul(x[1], y[1]).items():
                out[(a, b)] = F.mul(ca, cb)
        return out

    def grade(self, label):
        return tuple(self.A.grade(label[0])) + tuple(self.B.grade(label[1]))

    def basis_of_grade(self, g):
        ga, gb = tuple(g[:self._ka]), tuple(g[self._ka:])
        return [(x, y) for x in self.A.basis_of_grade(ga) for y in self.B.basis_of_grade(gb)]

    def nonzero_grades(self, box=None):
        if box is None:
            ga, gb = self.A.nonzero_grades(), self.B.nonzero_grades()
        else:
            ga = self.A.nonzero_grades(box[:self._ka]) if self.A.unbounded else self.A.nonzero_grades()
            gb = self.B.nonzero_grades(box[self._ka:]) if self.B.unbounded else self.B.nonzero_grades()
        gs = [tuple(a) + tuple(b) for a in ga for b in gb]
        return sorted(gs, key=lambda g: (sum(g), g))

    def weight(self, label):
        return tuple(x + y for x, y in zip(self.A.weight(label[0]), self.B.weight(label[1])))

    def augmentation(self, label):
        F = self.field
        return F.mul(self.A.augmentation(label[0]), self.B.augmentation(label[1]))


def tensor_product(A, B):
    return TensorAlgebra(A, B)


# ---------------------------------------------------------------------------

def adjoint_stability_check(sub, amb, generators):
    """Check that Ad(h)(y) = sum h1 y S(h2) stays in span(sub) for the listed
    Hopf generators h of ``amb``.

    ``sub`` is either a BasedAlgebra whose labels are labels of ``amb`` or a
    list of sparse elements of ``amb`` spanning the subspace.
    """
    if not amb.hopf:
        raise HopfDataMissing("ambient algebra has no Hopf data")
    F = amb.field
    if isinstance(sub, BasedAlgebra):
        vectors = [{l: F.one} for l in sub.labels]
    else:
        vectors = [dict(v) for v in sub]
    if all(len(v) == 1 for v in vectors):
        return _adjoint_check_monomial(vectors, amb, generators)
    support = {}

    def coords(x):
        for k in x:
            if k not in support:
                support[k] = len(support)
        return x

    for v in vectors:
        coords(v)
    images = {h: [coords(_adjoint(amb, h, y)) for y in vectors] for h in generators}
    dim = len(support)
    E = Echelon(F, dim)

    def dense(x):
        v = [F.zero] * dim
        for k, c in x.items():
            v[support[k]] = c
        return v

    E.add_many([dense(v) for v in vectors])
    report = {"sub_rank": E.rank, "generators": {}, "stable": True}
    for h, imgs in images.items():
        rems, _ = E.reduce_many([dense(x) for x in imgs])
        fails = sum(1 for r in rems if any(not F.is_zero(c) for c in r))
        report["generators"][h] = {"checked": len(imgs), "outside": fails}
        if fails:
            report["stable"] = False
    return report


def _adjoint(amb, h, y):
    if h not in amb.hopf:
        raise HopfDataMissing(f"no Hopf data for generator {h}")
    F = amb.field
    total = {}
    for h1, _, s2 in amb.hopf[h]["coproduct"]:
        total = elem_add(F, total, amb.mul_elem(amb.mul_elem(h1, y), s2))
    return total


def _adjoint_check_monomial(vectors, amb, generators):
    # span of basis elements: membership is a support test
    allowed = {next(iter(v)) for v in vectors}
    report = {"sub_rank": len(allowed), "generators": {}, "stable": True}
    for h in generators:
        fails = 0
        for y in vectors:
            if any(k not in allowed for k in _adjoint(amb, h, y)):
                fails += 1
        report["generators"][h] = {"checked": len(vectors), "outside": fails}
        if fails:
            report["stable"] = False
    return report
