"""Modules over the based algebras: baby Vermas, simple heads, characters,
first extension groups and a brute-force submodule oracle.

A module stores, for each named algebra generator, its action as sparse
columns: ``cols[j]`` is the image of basis vector j as a dict index -> raw.
"""
from __future__ import annotations

import itertools
from collections import Counter

from .algebras import KernelA1, SmallQuantum, TowerAlgebra
from .errors import BadParameters, BudgetExceeded, FieldTooLarge, UnsupportedAlgebra
from .linalg import Echelon, nullspace
from .pbw import _acc

__all__ = ["FLModule", "VermaModule", "Character", "baby_verma", "contravariant_gram",
           "radical", "simple_head", "character", "ext1", "hom_dim", "brute_submodules",
           "trivial_module", "borel_character", "restrict", "label_action",
           "maximal_submodules", "quotient"]


class Character(Counter):
    """Formal character: weight (tuple) -> multiplicity."""

    @property
    def dim(self):
        return sum(self.values())

    def dual(self):
        return Character({tuple(-x for x in w): m for w, m in self.items()})

    def shift(self, mu):
        return Character({tuple(a + b for a, b in zip(w, mu)): m for w, m in self.items()})

    def to_text(self):
        return " ".join(f"{','.join(map(str, w))}:{m}" for w, m in sorted(self.items()))


class FLModule:
    """Finite-dimensional weight module given by generator actions."""

    def __init__(self, algebra, weights, gens, modulus=None, name="module"):
        self.algebra = algebra
        self.field = algebra.field
        self.weights = [tuple(w) for w in weights]
        self.dim = len(self.weights)
        self.gens = gens
        self.modulus = modulus
        self.name = name
        self._label_cache = {}

    # --- action ---
    def apply(self, cols, vec):
        F = self.field
        out = {}
        for j, c in vec.items():
            for i, v in cols[j].items():
                _acc(out, i, F.mul(c, v), F)
        return out

    def act(self, name, vec):
        return self.apply(self.gens[name], vec)

    def matrix(self, cols):
        F = self.field
        M = [[F.zero] * self.dim for _ in range(self.dim)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                M[i][j] = v
        return M

    def label_cols(self, label):
        """Action of an algebra basis element; derived from generator actions."""
        if label not in self._label_cache:
            self._label_cache.update(label_action(self))
        return self._label_cache[label]

    def elem_cols(self, x):
        F = self.field
        cols = [dict() for _ in range(self.dim)]
        for label, c in x.items():
            for j, col in enumerate(self.label_cols(label)):
                for i, v in col.items():
                    _acc(cols[j], i, F.mul(c, v), F)
        return cols

    def act_elem_on(self, x, j):
        """Image of basis vector j under an algebra element."""
        return self.apply(self.elem_cols(x), {j: self.field.one})

    def check_relations(self, pairs):
        """rho(x) rho(y) == rho(xy) for the given pairs of basis labels."""
        A = self.algebra
        bad = 0
        for x, y in pairs:
            lhs = [self.apply(self.label_cols(x), col) for col in self.label_cols(y)]
            rhs = self.elem_cols(A.mul(x, y))
            if [dict(sorted(c.items())) for c in lhs] != [dict(sorted(c.items())) for c in rhs]:
                bad += 1
        return bad

    def check_weights(self):
        """Each generator maps weight nu vectors to weight nu + wt(generator)."""
        A = self.algebra
        for name, cols in self.gens.items():
            elem = A.generators[name]
            gw = A.weight(next(iter(elem)))
            for j, col in enumerate(cols):
                want = tuple(a + b for a, b in zip(self.weights[j], gw))
                for i in col:
                    w = self.weights[i]
                    if self.modulus:
                        ok = all((a - b) % self.modulus == 0 for a, b in zip(w, want))
                    else:
                        ok = w == want
                    if not ok:
                        return False
        return True

    def __repr__(self):
        return f"<FLModule {self.name} dim={self.dim}>"


def label_action(M):
    """Action matrices of every basis element of M.algebra, obtained by writing
    each basis element as a combination of generator words."""
    A, F = M.algebra, M.field
    labels = list(A.labels)
    if len(labels) > 5000:
        raise BudgetExceeded("algebra too large for word expansion")
    idx = {l: i for i, l in enumerate(labels)}

    def vec(x):
        v = [F.zero] * len(labels)
        for k, c in x.items():
            v[idx[k]] = c
        return v

    ident = [{j: F.one} for j in range(M.dim)]
    E = Echelon(F, len(labels), track=True)
    words = [(A.unit_elem(), ident)]
    E.add(vec(A.unit_elem()))
    frontier = list(words)
    names = [n for n in M.gens if n in A.generators]
    while frontier and E.rank < len(labels):
        nxt = []
        for x, cols in frontier:
            for n in names:
                y = A.mul_elem(A.generators[n], x)
                if not y:
                    continue
                v = vec(y)
                if not E.contains(v):
                    E.add(v)
                    item = (y, [M.apply(M.gens[n], c) for c in cols])
                    words.append(item)
                    nxt.append(item)
        frontier = nxt
    if E.rank < len(labels):
        raise BadParameters("generators do not span the algebra")
    out = {}
    for l in labels:
        combo = E.express(vec({l: F.one}))
        cols = [dict() for _ in range(M.dim)]
        for c, (_, wc) in zip(combo, words):
            if F.is_zero(c):
                continue
            for j, col in enumerate(wc):
                for i, v in col.items():
                    _acc(cols[j], i, F.mul(c, v), F)
        out[l] = cols
    return out


class VermaModule(FLModule):
    """Baby Verma module with basis F-monomial * highest weight vector."""

    def __init__(self, A, lam):
        self.lam = tuple(lam)
        F = A.field
        if isinstance(A, SmallQuantum):
            if A.part != "g":
                raise UnsupportedAlgebra("baby Vermas need the full small quantum group")
            self.monos = list(itertools.product(range(A.ell), repeat=A.N))
            R = A.R
            weights = []
            for c in self.monos:
                w = R.root_to_weight(A.neg.weight(c))
                weights.append(tuple(l - x for l, x in zip(self.lam, w)))
            modulus = A.ell
            self._zn, self._zN = (0,) * A.n, (0,) * A.N
        elif isinstance(A, KernelA1):
            if A.part != "G_r":
                raise UnsupportedAlgebra("baby Vermas need the G_r part")
            if len(self.lam) != 1:
                raise BadParameters("type A1 weights have one coordinate")
            self.monos = [(c,) for c in range(A.M)]
            weights = [(self.lam[0] - 2 * c[0],) for c in self.monos]
            modulus = A.M
        else:
            raise UnsupportedAlgebra(f"no baby Verma construction for {A.kind}")
        self.A = A
        self.index = {c: i for i, c in enumerate(self.monos)}
        super().__init__(A, weights, {}, modulus=modulus, name=f"Z({','.join(map(str, lam))})")
        self.gens = {n: self.elem_cols(x) for n, x in A.generators.items()}

    def _lift(self, c):
        A = self.A
        if isinstance(A, SmallQuantum):
            return (c, self._zn, self._zN)
        return (c[0], self.lam[0] % A.M, 0)

    def _evaluate(self, term):
        """(index, scalar) for a triangular label applied to the highest weight
        vector, or None when it kills it."""
        A, F = self.A, self.field
        if isinstance(A, SmallQuantum):
            x, kappa, y = term
            if any(y):
                return None
            R = A.R
            e = sum(kappa[i] * R.d[i] * self.lam[i] for i in range(A.n))
            return self.index[x], F.zeta(e)
        x, m, y = term
        if y or (m - self.lam[0]) % A.M:
            return None
        return self.index[(x,)], F.one

    def label_cols(self, label):
        hit = self._label_cache.get(label)
        if hit is not None:
            return hit
        A, F = self.A, self.field
        cols = []
        for c in self.monos:
            col = {}
            for term, s in A.mul(label, self._lift(c)).items():
                ev = self._evaluate(term)
                if ev is not None:
                    _acc(col, ev[0], F.mul(s, ev[1]), F)
            cols.append(col)
        self._label_cache[label] = cols
        return cols

    def act_elem_on(self, x, j):
        A, F = self.A, self.field
        out = {}
        for label, c in x.items():
            for term, s in A.mul(label, self._lift(self.monos[j])).items():
                ev = self._evaluate(term)
                if ev is not None:
                    _acc(out, ev[0], F.mul(c, F.mul(s, ev[1])), F)
        return out

    def raising_monomials(self):
        """E-monomials paired with F-monomials by the contravariant form, as
        (key, algebra element); key matches ``depth`` of module vectors."""
        A, F = self.A, self.field
        if isinstance(A, SmallQuantum):
            return [(A.neg.weight(b), {(self._zN, self._zn, b): F.one}) for b in self.monos]
        return [((b[0],), A.e_power(b[0])) for b in self.monos]

    def depth(self, i):
        A = self.A
        if isinstance(A, SmallQuantum):
            return A.neg.weight(self.monos[i])
        return self.monos[i]


def baby_verma(A, lam):
    return VermaModule(A, lam)


def trivial_module(A):
    F = A.field
    gens = {}
    for n, x in A.generators.items():
        c = F.zero
        for k, v in x.items():
            c = F.add(c, F.mul(v, A.augmentation(k)))
        gens[n] = [{0: c}] if not F.is_zero(c) else [{}]
    return FLModule(A, [(0,) * _rank(A)], gens, modulus=_modulus(A), name="k")


def _rank(A):
    return A.R.rank if hasattr(A, "R") else 1


def _modulus(A):
    if isinstance(A, SmallQuantum):
        return A.ell
    if isinstance(A, KernelA1):
        return A.M
    return None


def borel_character(A, lam):
    """One-dimensional module of u(b) (or of the B_r part) of weight lam."""
    F = A.field
    gens = {}
    for n, x in A.generators.items():
        c = F.zero
        for k, v in x.items():
            if isinstance(A, SmallQuantum):
                a, mu, _ = A.tri(k)
                if any(a):
                    continue
                e = sum(mu[i] * A.R.d[i] * lam[i] for i in range(A.n))
                c = F.add(c, F.mul(v, F.zeta(e)))
            elif isinstance(A, KernelA1):
                a, mu = k[0], k[1]
                if a == 0 and (mu - lam[0]) % A.M == 0:
                    c = F.add(c, v)
            else:
                raise UnsupportedAlgebra(f"no Borel characters for {A.kind}")
        gens[n] = [{0: c}] if not F.is_zero(c) else [{}]
    return FLModule(A, [tuple(lam)], gens, modulus=_modulus(A), name=f"k({lam})")


def restrict(M, B):
    """Restriction of M to a subalgebra B whose generator names M knows."""
    missing = [n for n in B.generators if n not in M.gens]
    if missing:
        raise BadParameters(f"module has no action for {missing}")
    return FLModule(B, M.weights, {n: M.gens[n] for n in B.generators},
                    modulus=M.modulus, name=f"{M.name}|")


def character(M, dualize=False):
    ch = Character(Counter(M.weights))
    return ch.dual() if dualize else ch


# ---------------------------------------------------------------------------
# contravariant form and simple heads

def _blocks(Z):
    by = {}
    for i in range(Z.dim):
        by.setdefault(Z.depth(i), []).append(i)
    return by


def contravariant_gram(Z):
    """Gram blocks <F^a v, F^b v> = coefficient of v in E^a F^b v, one block per
    weight space (rows: raising monomials, columns: module basis indices)."""
    F = Z.field
    blocks = _blocks(Z)
    raising = {}
    for key, elem in Z.raising_monomials():
        raising.setdefault(key, []).append(elem)
    out = {}
    for key, idx in blocks.items():
        rows = []
        for elem in raising.get(key, []):
            row = []
            for j in idx:
                row.append(Z.act_elem_on(elem, j).get(0, F.zero))
            rows.append(row)
        out[Z.weights[idx[0]]] = (idx, rows)
    return out


def radical(Z):
    """Radical of the contravariant form as a list of sparse vectors; it is
    checked to be a submodule."""
    F = Z.field
    vecs = []
    for _, (idx, rows) in contravariant_gram(Z).items():
        for x in nullspace(F, rows, len(idx)):
            v = {idx[t]: c for t, c in enumerate(x) if not F.is_zero(c)}
            vecs.append(v)
    _assert_submodule(Z, vecs)
    return vecs


def _dense(F, n, v):
    out = [F.zero] * n
    for i, c in v.items():
        out[i] = c
    return out


def _assert_submodule(M, vecs):
    F = M.field
    E = Echelon(F, M.dim)
    if vecs:
        E.add_many([_dense(F, M.dim, v) for v in vecs])
    for name, cols in M.gens.items():
        for v in vecs:
            if not E.contains(_dense(F, M.dim, M.apply(cols, v))):
                raise AssertionError(f"radical is not stable under {name}")


def quotient(M, vecs, name=None):
    """M / span(vecs) with basis given by the non-pivot coordinates."""
    F = M.field
    E = Echelon(F, M.dim)
    if vecs:
        E.add_many([_dense(F, M.dim, v) for v in vecs])
    piv = set(E.pivots)
    keep = [i for i in range(M.dim) if i not in piv]
    pos = {i: t for t, i in enumerate(keep)}

    def project(v):
        rem, _ = E.reduce(_dense(F, M.dim, v))
        return {pos[i]: c for i, c in enumerate(rem) if not F.is_zero(c)}

    gens = {n: [project(cols[i]) for i in keep] for n, cols in M.gens.items()}
    return FLModule(M.algebra, [M.weights[i] for i in keep], gens, modulus=M.modulus,
                    name=name or f"{M.name}/rad")


def simple_head(Z):
    """Quotient of a baby Verma by the radical of its contravariant form."""
    L = quotient(Z, radical(Z), name=f"L({','.join(map(str, Z.lam))})")
    return L, character(L)


# ---------------------------------------------------------------------------
# Hom and Ext^1

def hom_dim(X, Y, names=None):
    """dim Hom_A(X, Y) for modules given by generator actions."""
    F = X.field
    names = names or [n for n in X.gens if n in Y.gens]
    nx, ny = X.dim, Y.dim
    if nx == 0 or ny == 0:
        return 0
    # unknown phi[i][j] (Y-index i, X-index j) at column i*nx + j
    rows = []
    for n in names:
        gx, gy = X.gens[n], Y.gens[n]
        # (rho_Y phi - phi rho_X)[i][j] = 0
        for i in range(ny):
            for j in range(nx):
                row = {}
                for k in range(ny):
                    c = gy[k].get(i)
                    if c is not None:
                        _acc(row, k * nx + j, c, F)
                for k, c in gx[j].items():
                    _acc(row, i * nx + k, F.neg(c), F)
                if row:
                    rows.append(_dense(F, nx * ny, row))
    if not rows:
        return nx * ny
    E = Echelon(F, nx * ny)
    E.add_many(rows)
    return nx * ny - E.rank


def ext1(M, N, budget=400000):
    """dim Ext^1_A(M, N), from the syzygy sequence 0 -> W -> A (x) M -> M -> 0:
    dim Ext^1 = dim Hom(W, N) - dim M * dim N + dim Hom(M, N)."""
    A, F = M.algebra, M.field
    if A.dim is None:
        raise UnsupportedAlgebra("ext1 needs a finite-dimensional algebra")
    if A.dim * M.dim * N.dim > budget:
        raise BudgetExceeded(f"dim A * dim M * dim N = {A.dim * M.dim * N.dim} exceeds {budget}")
    labels = list(A.labels)
    lidx = {l: i for i, l in enumerate(labels)}
    d, m = len(labels), M.dim
    n0 = d * m
    # multiplication map A (x) M -> M; coordinates (k, i) -> k * m + i
    act = {l: M.label_cols(l) for l in labels}
    rows = []
    for t in range(m):
        row = [F.zero] * n0
        for k, l in enumerate(labels):
            for i in range(m):
                c = act[l][i].get(t)
                if c is not None:
                    row[k * m + i] = c
        rows.append(row)
    W = nullspace(F, rows, n0)
    E = Echelon(F, n0, track=True)
    E.add_many(W)
    names = [n for n in M.gens if n in A.generators]
    gens = {}
    for n in names:
        g = A.generators[n]
        cols = []
        for w in W:
            img = {}
            for pos, c in enumerate(w):
                if F.is_zero(c):
                    continue
                k, i = divmod(pos, m)
                for l2, v in A.mul_elem(g, {labels[k]: F.one}).items():
                    _acc(img, lidx[l2] * m + i, F.mul(c, v), F)
            combo = E.express(_dense(F, n0, img))
            if combo is None:
                raise AssertionError("syzygy is not a submodule")
            cols.append({t: c for t, c in enumerate(combo) if not F.is_zero(c)})
        gens[n] = cols
    Wmod = FLModule(A, [(0,)] * len(W), gens, name="syzygy")
    return hom_dim(Wmod, N, names) - m * N.dim + hom_dim(M, N, names)


# ---------------------------------------------------------------------------
# brute-force submodule lattice

def _span_closure(M, vecs):
    F = M.field
    E = Echelon(F, M.dim)
    frontier = []
    for v in vecs:
        if E.add(_dense(F, M.dim, v)):
            frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            for cols in M.gens.values():
                w = M.apply(cols, v)
                if w and E.add(_dense(F, M.dim, w)):
                    nxt.append(w)
        frontier = nxt
    return E


def _key(F, E):
    from .linalg import rref
    if E.rank == 0:
        return ()
    rows, _ = rref(F, [list(r) for r in E.rows], E.ncols)
    return tuple(tuple(r) for r in rows)


def brute_submodules(M, max_dim=16):
    """All submodules of a weight module, as a set of reduced row echelon keys.

    Submodules are sums of cyclic submodules generated by torus eigenvectors,
    so every eigenvector (up to scalar) is tried and the results are closed
    under sums."""
    F = M.field
    if M.dim == 0:
        return {()}
    if M.dim > max_dim:
        raise BudgetExceeded(f"brute force is limited to dimension {max_dim}")
    if F.size is None or F.size > 10 ** 4:
        raise FieldTooLarge(f"field of size {F.size} is too large to enumerate")
    elements = list(F.elements())
    groups = {}
    for i, w in enumerate(M.weights):
        key = tuple(x % M.modulus for x in w) if M.modulus else w
        groups.setdefault(key, []).append(i)
    cyclic = {}
    for idx in groups.values():
        for lead in range(len(idx)):
            for tail in itertools.product(elements, repeat=len(idx) - lead - 1):
                v = {idx[lead]: F.one}
                for t, c in zip(idx[lead + 1:], tail):
                    if not F.is_zero(c):
                        v[t] = c
                E = _span_closure(M, [v])
                cyclic[_key(F, E)] = E
    lattice = {(): None}
    lattice.update(cyclic)
    changed = True
    while changed:
        changed = False
        keys = list(lattice)
        for a in keys:
            for b in cyclic:
                if a == () or b == ():
                    continue
                vecs = [dict((i, c) for i, c in enumerate(r) if not F.is_zero(c)) for r in list(a) + list(b)]
                E = _span_closure(M, vecs)
                k = _key(F, E)
                if k not in lattice:
                    lattice[k] = E
                    changed = True
    return set(lattice)


def maximal_submodules(M, lattice=None):
    lattice = lattice if lattice is not None else brute_submodules(M)
    proper = [k for k in lattice if len(k) < M.dim]
    return [k for k in proper
            if not any(len(o) > len(k) and _contains(M.field, o, k) for o in proper)]


def _contains(F, big, small):
    n = len(big[0])
    E = Echelon(F, n)
    E.add_many([list(r) for r in big])
    return all(E.contains(list(r)) for r in small)
