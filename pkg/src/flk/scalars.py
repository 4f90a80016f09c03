"""Exact coefficient arithmetic.

Laurent polynomials in q over Q, reduced fractions of them (``GenericScalar``),
quantum integers and binomials, and the coefficient fields F_p(zeta) and Q(xi)
obtained by sending q to a primitive ell-th root of unity.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import BadParameters, NonIntegral, PoleAtRootOfUnity

__all__ = [
    "Laurent", "GenericScalar", "q", "quantum_integer", "quantum_factorial",
    "quantum_binomial", "make_field", "specialize", "FieldCtx", "FieldElement",
    "cyclotomic_poly", "multiplicative_order", "euler_phi", "cyclotomic_power_check",
    "gauss_binomial_in",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q (ascending coefficient lists)

def _trim(co):
    co = list(co)
    while co and co[-1] == 0:
        co.pop()
    return co


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    """Polynomial long division over Q; b nonzero."""
    a = list(a)
    b = _trim(b)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        if lead != 1:
            c = Fraction(c) / lead
            c = _norm(c)
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _trim(quo), _trim(a[:db])


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = Fraction(a[-1])
    return [_norm(Fraction(x) / lead) for x in a]


# ---------------------------------------------------------------------------

class Laurent:
    """Laurent polynomial in q with rational coefficients, stored densely."""

    __slots__ = ("low", "co")

    def __init__(self, low=0, co=()):
        co = [_norm(c) for c in co]
        start = 0
        while start < len(co) and co[start] == 0:
            start += 1
        co = _trim(co[start:])
        self.low = low + start if co else 0
        self.co = tuple(co)

    @classmethod
    def mono(cls, exp, c=1):
        return cls(exp, (c,))

    @classmethod
    def from_dict(cls, d):
        d = {e: c for e, c in d.items() if c != 0}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        return cls(lo, [d.get(e, 0) for e in range(lo, hi + 1)])

    def terms(self):
        return [(self.low + i, c) for i, c in enumerate(self.co) if c != 0]

    def is_zero(self):
        return not self.co

    @property
    def high(self):
        return self.low + len(self.co) - 1

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent(0, (other,))
        if not self.co:
            return other
        if not other.co:
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.co):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.co):
            out[other.low - lo + i] += c
        return Laurent(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.low, [-c for c in self.co])

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent(0, (other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            if other == 0:
                return Laurent()
            return Laurent(self.low, [c * other for c in self.co])
        return Laurent(self.low + other.low, _pmul(self.co, other.co))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Laurent(0, (1,))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent(0, (other,))
        return self.low == other.low and self.co == other.co

    def __hash__(self):
        return hash((self.low, self.co))

    def subs_power(self, d):
        """Substitute q -> q^d."""
        if d == 1 or not self.co:
            return self
        return Laurent.from_dict({d * e: c for e, c in self.terms()})

    def bar(self):
        """Substitute q -> q^{-1}."""
        return Laurent.from_dict({-e: c for e, c in self.terms()})

    def to_json(self):
        return {str(e): str(Fraction(c)) for e, c in self.terms()}

    @classmethod
    def from_json(cls, d):
        return cls.from_dict({int(e): _norm(Fraction(c)) for e, c in d.items()})

    def __repr__(self):
        if not self.co:
            return "0"
        parts = []
        for e, c in self.terms():
            parts.append(f"{c}*q^{e}" if e else f"{c}")
        return " + ".join(parts)


class GenericScalar:
    """Reduced fraction num/den of Laurent polynomials in q over Q.

    Canonical form: den is a monic polynomial with nonzero constant term and
    gcd(num, den) = 1 in Q[q, q^-1].  Equality is then syntactic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Laurent):
            num = Laurent(0, (num,))
        if den is None:
            self.num, self.den = num, _ONE_L
            return
        if not isinstance(den, Laurent):
            den = Laurent(0, (den,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        self.num, self.den = _reduce(num, den)

    # construction helpers
    @classmethod
    def const(cls, c):
        return cls(Laurent(0, (c,)))

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        return self.den == _ONE_L

    def __add__(self, other):
        other = _as_gs(other)
        if self.den == other.den:
            return GenericScalar(self.num + other.num, self.den) if self.den != _ONE_L \
                else GenericScalar(self.num + other.num)
        return GenericScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return GenericScalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-_as_gs(other))

    def __rsub__(self, other):
        return _as_gs(other) - self

    def __mul__(self, other):
        other = _as_gs(other)
        if self.den == _ONE_L and other.den == _ONE_L:
            return GenericScalar(self.num * other.num)
        return GenericScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gs(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return GenericScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_gs(other) / self

    def __pow__(self, n):
        if n < 0:
            return GenericScalar(1) / (self ** (-n))
        out = GenericScalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_gs(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs_power(self, d):
        return GenericScalar(self.num.subs_power(d), self.den.subs_power(d))

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(Laurent.from_json(d["num"]), Laurent.from_json(d["den"]))

    def __repr__(self):
        if self.den == _ONE_L:
            return f"GenericScalar({self.num!r})"
        return f"GenericScalar(({self.num!r}) / ({self.den!r}))"


_ONE_L = Laurent(0, (1,))


def _as_gs(x):
    if isinstance(x, GenericScalar):
        return x
    return GenericScalar(x)


def _reduce(num, den):
    if num.is_zero():
        return Laurent(), _ONE_L
    shift = num.low - den.low
    n = list(num.co)
    d = list(den.co)
    if len(d) > 1:
        quo, rem = _pdivmod(n, d)
        if not rem:
            n, d = quo, [1]
        else:
            g = _pgcd(n, d)
            if len(g) > 1:
                n, _ = _pdivmod(n, g)
                d, _ = _pdivmod(d, g)
    lead = d[-1]
    if lead != 1:
        lead = Fraction(lead)
        n = [Fraction(c) / lead for c in n]
        d = [Fraction(c) / lead for c in d]
    return Laurent(shift, n), Laurent(0, d)


q = GenericScalar(Laurent.mono(1))


def _qint_laurent(a, d=1):
    if a == 0:
        return Laurent()
    sign = 1
    if a < 0:
        a, sign = -a, -1
    # [a]_d = sum_{i=0}^{a-1} q^{d(a-1-2i)}
    return Laurent.from_dict({d * (a - 1 - 2 * i): sign for i in range(a)})


def quantum_integer(a, d=1):
    """[a] evaluated in the variable q^d."""
    return GenericScalar(_qint_laurent(a, d))


@lru_cache(maxsize=None)
def _qfact_laurent(n):
    out = _ONE_L
    for i in range(1, n + 1):
        out = out * _qint_laurent(i)
    return out


def quantum_factorial(n, d=1):
    return GenericScalar(_qfact_laurent(n).subs_power(d))


@lru_cache(maxsize=None)
def _qbinom_laurent(n, k):
    top = _ONE_L
    for i in range(n - k + 1, n + 1):
        top = top * _qint_laurent(i)
    bot = _qfact_laurent(k)
    quo, rem = _pdivmod(list(top.co), list(bot.co))
    if rem:
        raise NonIntegral(f"[{n} choose {k}] left a remainder")
    return Laurent(top.low - bot.low, quo)


def quantum_binomial(n, k, d=1):
    """Gaussian binomial [n choose k] in q^d; asserted to be a Laurent polynomial."""
    if n < 0 or k < 0:
        raise ValueError("quantum_binomial needs n, k >= 0")
    if k > n:
        return GenericScalar(0)
    k = min(k, n - k)
    val = GenericScalar(_qbinom_laurent(n, k).subs_power(d))
    if not val.is_laurent():
        raise NonIntegral(f"[{n} choose {k}] has a denominator")
    return val


# ---------------------------------------------------------------------------
# integer and mod-p polynomial utilities

def euler_phi(n):
    out, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


def multiplicative_order(a, n):
    if gcd(a, n) != 1:
        raise ValueError("not a unit")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients of the n-th cyclotomic polynomial, ascending."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _pdivmod(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(int(c) for c in num)


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _mtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _mmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mtrim(out)


def _mdivmod(a, b, p):
    a = [x % p for x in a]
    b = _mtrim([x % p for x in b])
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    if len(a) - 1 < db:
        return [], _mtrim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c == 0:
            continue
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _mtrim(quo), _mtrim(a[:db])


def _mgcd(a, b, p):
    a, b = _mtrim([x % p for x in a]), _mtrim([x % p for x in b])
    while b:
        _, r = _mdivmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _mpowmod(a, e, f, p):
    out = [1]
    base = _mdivmod(a, f, p)[1]
    while e:
        if e & 1:
            out = _mdivmod(_mmul(out, base, p), f, p)[1]
        base = _mdivmod(_mmul(base, base, p), f, p)[1]
        e >>= 1
    return out


def _equal_degree_factors(f, d, p, rng):
    f = _mtrim(f)
    if len(f) - 1 == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(len(f) - 1)]
        a = _mtrim(a)
        if len(a) < 2:
            continue
        g = _mgcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        b = _mpowmod(a, (p ** d - 1) // 2, f, p)
        b = _mtrim([(b[0] - 1) % p if b else p - 1] + b[1:]) if b else [p - 1]
        g = _mgcd(b, f, p)
        if 1 < len(g) < len(f):
            break
    h, rem = _mdivmod(f, g, p)
    assert not rem
    return _equal_degree_factors(g, d, p, rng) + _equal_degree_factors(h, d, p, rng)


def factor_cyclotomic_mod_p(ell, p):
    """All monic irreducible factors of Phi_ell over F_p, sorted."""
    d = multiplicative_order(p, ell)
    f = [c % p for c in cyclotomic_poly(ell)]
    facs = _equal_degree_factors(f, d, p, random.Random(ell * 1000003 + p))
    # ordering by the negated coefficients makes a linear factor x - z sort by z
    return sorted((tuple(x) for x in facs), key=lambda m: tuple((-c) % p for c in m))


def cyclotomic_power_check(p, ell, r):
    """Whether Phi_{p^r ell} == Phi_ell^{phi(p^r)} modulo p."""
    lhs = [c % p for c in cyclotomic_poly(p ** r * ell)]
    rhs = [1]
    for _ in range(euler_phi(p ** r)):
        rhs = _mmul(rhs, [c % p for c in cyclotomic_poly(ell)], p)
    return _mtrim(lhs) == _mtrim(rhs)


# ---------------------------------------------------------------------------
# coefficient fields

class FieldCtx:
    """Coefficient field k with a chosen primitive ell-th root of unity zeta.

    Elements are handled in a raw representation (ints for finite fields,
    tuples of Fractions in characteristic zero); ``FieldElement`` wraps them.
    """

    mode = None
    p = 0
    ell = 0
    m = ()
    degree = 1
    size = None

    # raw API, implemented by subclasses:
    # zero, one, add, sub, neg, mul, inv, from_int, zeta, coeffs, from_coeffs

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def from_fraction(self, c):
        c = Fraction(c)
        if self.p and c.denominator % self.p == 0:
            raise PoleAtRootOfUnity(f"rational {c} has denominator divisible by {self.p}")
        return self.div(self.from_int(c.numerator), self.from_int(c.denominator))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def eval_laurent(self, lp):
        out = self.zero
        for e, c in lp.terms():
            out = self.add(out, self.mul(self.from_fraction(c), self.zeta(e)))
        return out

    def spec(self, s):
        """Raw specialization of a GenericScalar (or int / Laurent) at zeta."""
        if isinstance(s, int):
            return self.from_int(s)
        if isinstance(s, Fraction):
            return self.from_fraction(s)
        if isinstance(s, Laurent):
            return self.eval_laurent(s)
        key = (s.num, s.den)
        hit = self._spec_cache.get(key)
        if hit is not None:
            return hit
        num = self.eval_laurent(s.num)
        den = self.eval_laurent(s.den)
        if self.is_zero(den):
            raise PoleAtRootOfUnity(f"denominator of {s!r} vanishes at zeta")
        val = self.div(num, den)
        self._spec_cache[key] = val
        return val

    def element(self, raw):
        return FieldElement(self, raw)

    def key(self):
        return {"p": self.p, "ell": self.ell, "m": list(self.m)}

    to_json = key

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key() == other.key()

    def __hash__(self):
        return hash((self.p, self.ell, tuple(self.m)))

    def check_cyclotomic_power(self, r):
        if not self.p:
            raise BadParameters("the power check needs a finite field")
        return cyclotomic_power_check(self.p, self.ell, r)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, ell={self.ell}, m={list(self.m)})"


class _PrimeField(FieldCtx):
    mode = "finite"

    def __init__(self, p, ell, m):
        self.p, self.ell, self.m = p, ell, tuple(m)
        self.degree = 1
        self.size = p
        self.zero, self.one = 0, 1
        self.z0 = (-m[0]) % p
        self._zpow = [pow(self.z0, k, p) for k in range(ell)]
        self._spec_cache = {}

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def zeta(self, k):
        return self._zpow[k % self.ell]

    def coeffs(self, a):
        return [a]

    def from_coeffs(self, cs):
        return cs[0] % self.p if cs else 0

    def elements(self):
        return range(self.p)


class _ExtField(FieldCtx):
    """F_p[x]/(m) with Zech-logarithm tables; raw elements are base-p encodings."""

    mode = "finite"

    def __init__(self, p, ell, m):
        self.p, self.ell, self.m = p, ell, tuple(m)
        d = len(m) - 1
        self.degree = d
        self.size = qq = p ** d
        self.zero, self.one = 0, 1
        self._spec_cache = {}
        n = qq - 1
        gen = self._find_generator()
        exp = [0] * n
        log = [-1] * qq
        cur = [1]
        for i in range(n):
            code = self._encode(cur)
            exp[i] = code
            log[code] = i
            cur = _mdivmod(_mmul(cur, gen, p), list(m), p)[1]
        assert len(set(exp)) == n
        self._exp = exp + exp
        self._log = log
        zech = [-1] * n
        for k in range(n):
            cs = self._decode(exp[k])
            cs[0] = (cs[0] + 1) % p
            code = self._encode(cs)
            zech[k] = log[code] if code else -1
        self._zech = zech
        self._n = n
        self._half = n // 2
        lz = log[self._encode([0, 1])]
        self._zpow = [self._exp[(k * lz) % n] for k in range(ell)]

    def _encode(self, cs):
        code, base = 0, 1
        for c in cs:
            code += (c % self.p) * base
            base *= self.p
        return code

    def _decode(self, code):
        out = []
        for _ in range(self.degree):
            out.append(code % self.p)
            code //= self.p
        return out

    def _find_generator(self):
        p, m, n = self.p, list(self.m), self.p ** (len(self.m) - 1) - 1
        primes = _prime_factors(n)
        for code in range(2, self.p ** (len(m) - 1)):
            cand = _mtrim(self._decode_static(code, p, len(m) - 1))
            if all(_mpowmod(cand, n // r, m, p) != [1] for r in primes):
                return cand
        raise AssertionError("no generator found")

    @staticmethod
    def _decode_static(code, p, d):
        out = []
        for _ in range(d):
            out.append(code % p)
            code //= p
        return out

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._n]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._n - self._log[a]) % self._n]

    def from_int(self, n):
        return n % self.p

    def zeta(self, k):
        return self._zpow[k % self.ell]

    def coeffs(self, a):
        return self._decode(a)

    def from_coeffs(self, cs):
        cs = list(cs) + [0] * (self.degree - len(cs))
        return self._encode(cs[: self.degree])

    def elements(self):
        return range(self.size)


class _CycloField(FieldCtx):
    """Q(xi) = Q[x]/Phi_ell; raw elements are tuples of Fractions."""

    mode = "char0"

    def __init__(self, ell):
        self.p, self.ell = 0, ell
        self.m = cyclotomic_poly(ell)
        n = len(self.m) - 1
        self.degree = n
        self.size = None
        self.zero = tuple([0] * n)
        self.one = tuple([1] + [0] * (n - 1))
        self._spec_cache = {}
        red = []
        for k in range(2 * n - 1):
            _, r = _pdivmod([0] * k + [1], list(self.m))
            red.append(tuple(r) + (0,) * (n - len(r)))
        self._red = red
        self._zpow = [self._vec_reduce([0] * k + [1]) for k in range(ell)]

    def _vec_reduce(self, v):
        n = self.degree
        out = [0] * n
        for k, c in enumerate(v):
            if c == 0:
                continue
            if k < n:
                out[k] += c
            else:
                for i, rc in enumerate(self._red[k]):
                    if rc:
                        out[i] += c * rc
        return tuple(_norm(c) for c in out)

    def add(self, a, b):
        return tuple(_norm(x + y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(_norm(x - y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return self._vec_reduce(_pmul(list(a), list(b)) or [0])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid over Q[x]
        r0, r1 = list(self.m), _trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_padd(s0, [-c for c in _pmul(quo, s1)]))
        c = Fraction(r1[0])
        return self._vec_reduce([Fraction(x) / c for x in s1])

    def from_int(self, n):
        return tuple([n] + [0] * (self.degree - 1))

    def from_fraction(self, c):
        return tuple([_norm(Fraction(c))] + [0] * (self.degree - 1))

    def zeta(self, k):
        return self._zpow[k % self.ell]

    def coeffs(self, a):
        return list(a)

    def from_coeffs(self, cs):
        cs = [_norm(Fraction(c)) for c in cs] + [0] * (self.degree - len(cs))
        return tuple(cs[: self.degree])


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


_FIELD_CACHE = {}


def make_field(p, ell, m=None):
    """Coefficient field with a primitive ell-th root of unity.

    p = 0 gives Q(xi); otherwise F_p(zeta) with zeta the residue of x modulo an
    irreducible factor m of Phi_ell over F_p.  The default factor is the
    first in the order of negated coefficients (for a linear factor x - z this
    is the smallest root z); pass ``m`` (ascending coefficients) to pick
    another.
    """
    if ell < 3 or ell % 2 == 0:
        raise BadParameters(f"ell must be odd and at least 3, got {ell}")
    if p != 0:
        if p % 2 == 0 or not _is_prime(p):
            raise BadParameters(f"p must be an odd prime or 0, got {p}")
        if gcd(p, ell) != 1:
            raise BadParameters(f"gcd(p, ell) must be 1, got p={p}, ell={ell}")
    key = (p, ell, tuple(m) if m is not None else None)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if p == 0:
        F = _CycloField(ell)
        if m is not None and tuple(m) != F.m:
            raise BadParameters("in characteristic zero m must be Phi_ell")
    else:
        facs = factor_cyclotomic_mod_p(ell, p)
        if m is None:
            m = facs[0]
        m = tuple(int(c) % p for c in m)
        if m not in facs:
            raise BadParameters(f"{list(m)} is not an irreducible factor of Phi_{ell} mod {p}")
        F = _PrimeField(p, ell, m) if len(m) == 2 else _ExtField(p, ell, m)
    _FIELD_CACHE[key] = F
    return F


def field_from_json(d):
    return make_field(int(d["p"]), int(d["ell"]), [int(c) if not isinstance(c, str) else c
                                                  for c in d["m"]] if int(d["p"]) else None)


class FieldElement:
    """An element of a coefficient field, with arithmetic operators."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx, raw):
        self.ctx, self.raw = ctx, raw

    def _wrap(self, other):
        if isinstance(other, FieldElement):
            return other.raw
        return self.ctx.from_fraction(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.raw, self._wrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.raw, self._wrap(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._wrap(other), self.raw))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.raw, self._wrap(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.raw))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.raw))

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.raw, self._wrap(other)))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.pow(self.raw, e))

    def is_zero(self):
        return self.ctx.is_zero(self.raw)

    def coeffs(self):
        return self.ctx.coeffs(self.raw)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.raw == other.raw
        try:
            return self.raw == self.ctx.from_fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        return f"FieldElement({self.coeffs()})"


def specialize(s, F):
    """Evaluate a GenericScalar at q = zeta in the field F."""
    return FieldElement(F, F.spec(_as_gs(s)))


def gauss_binomial_in(F, m, t):
    """Raw value of the Gaussian binomial [m choose t] at zeta, any integer m."""
    cache = F.__dict__.setdefault("_gb_cache", {})
    key = (m, t)
    if key in cache:
        return cache[key]
    if t < 0:
        val = F.zero
    elif m >= 0:
        val = F.spec(quantum_binomial(m, t)) if t <= m else F.zero
    else:
        val = F.spec(quantum_binomial(t - m - 1, t))
        if t % 2:
            val = F.neg(val)
    cache[key] = val
    return val
