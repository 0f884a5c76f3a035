"""Exact arithmetic over prime fields.

Everything here works with plain Python integers reduced mod p.  A
polynomial over F_p is a dense little-endian coefficient tuple (entry i is
the coefficient of x^i) with no trailing zeros; the zero polynomial has an
empty tuple and ``degree == -1``, which stands in for "degree minus
infinity".  2x2 matrices are flat tuples (a, b, c, d) read row by row.

Factorization into irreducibles uses distinct-degree splitting followed by
Cantor--Zassenhaus equal-degree splitting.  The equal-degree step draws its
probe polynomials from a fixed-seed linear congruential generator, so the
whole factorization pipeline is deterministic.
"""

from __future__ import annotations

import functools
import itertools
from math import gcd

import numpy as np

# Fixed seed for the equal-degree splitting probes (and nothing else).
_EDF_SEED = 0xC0FFEE
_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MOD = 1 << 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, -1, p)


@functools.lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest primitive root mod p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p == 2:
        return 1
    q = p - 1
    prime_factors = []
    d, rest = 2, q
    while d * d <= rest:
        if rest % d == 0:
            prime_factors.append(d)
            while rest % d == 0:
                rest //= d
        d += 1
    if rest > 1:
        prime_factors.append(rest)
    for g in range(2, p):
        if all(pow(g, q // f, p) != 1 for f in prime_factors):
            return g
    raise AssertionError("no primitive root found")  # unreachable for prime p


def sqrt_mod(a: int, p: int):
    """A square root of a mod p, or None.  Returns the smaller of the two roots."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    for r in range(1, p):
        if r * r % p == a:
            return min(r, p - r)
    return None


@functools.lru_cache(maxsize=None)
def _factorial_table(p: int):
    table = [1] * p
    for i in range(1, p):
        table[i] = table[i - 1] * i % p
    return tuple(table)


def binom_mod_p(n: int, r: int, p: int) -> int:
    """C(n, r) mod p via factorial tables, with a Lucas step for n >= p."""
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if r > n:
        return 0
    if not is_prime(p):
        raise ValueError("p must be prime")
    fact = _factorial_table(p)
    result = 1
    while n or r:
        ni, ri = n % p, r % p
        if ri > ni:
            return 0
        result = result * fact[ni] % p
        result = result * inv_mod(fact[ri] * fact[ni - ri] % p, p) % p
        n //= p
        r //= p
    return result


# ---------------------------------------------------------------------------
# Dense polynomials over F_p
# ---------------------------------------------------------------------------

def _trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


class Poly:
    """Dense polynomial over F_p, immutable."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        self.p = p
        self.coeffs = _trim([c % p for c in coeffs])

    @classmethod
    def zero(cls, p):
        return cls(p, ())

    @classmethod
    def one(cls, p):
        return cls(p, (1,))

    @classmethod
    def x(cls, p):
        return cls(p, (0, 1))

    @classmethod
    def constant(cls, p, c):
        return cls(p, (c,))

    @classmethod
    def from_roots(cls, p, roots):
        f = cls.one(p)
        for r in roots:
            f = f * cls(p, (-r, 1))
        return f

    @property
    def degree(self) -> int:
        """Degree; -1 encodes the zero polynomial (minus infinity)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(%d, 0)" % self.p
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append("%d*x" % c if c != 1 else "x")
                else:
                    terms.append("%d*x^%d" % (c, i) if c != 1 else "x^%d" % i)
        return "Poly(%d, %s)" % (self.p, " + ".join(reversed(terms)))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return Poly(self.p, out)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __neg__(self):
        return Poly(self.p, [(-c) % self.p for c in self.coeffs])

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return Poly.constant(self.p, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.p
            return Poly(self.p, [a * c % self.p for a in self.coeffs])
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.p)
        p = self.p
        # numpy convolution for large products; bound keeps int64 exact
        if len(a) >= 32 and len(b) >= 32 and min(len(a), len(b)) * (p - 1) ** 2 < 2**62:
            out = np.convolve(np.array(a, dtype=np.int64),
                              np.array(b, dtype=np.int64)) % p
            return Poly(p, out.tolist())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(p, [c % p for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.p, (0,) * k + self.coeffs)

    def divmod(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = inv_mod(other.coeffs[-1], p)
        quo = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - d - 1, -1, -1):
            c = rem[i + d] * lead_inv % p
            if c:
                quo[i] = c
                for j, bc in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - c * bc) % p
        return Poly(p, quo), Poly(p, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        """Return (unit, monic polynomial) with self == unit * monic."""
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        lead = self.coeffs[-1]
        if lead == 1:
            return 1, self
        return lead, self * inv_mod(lead, self.p)

    def derivative(self):
        return Poly(self.p, [i * c % self.p
                             for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: int) -> int:
        p = self.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def evaluate_in(self, field, x):
        """Evaluate at an element of an ExtField."""
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), field.embed(c))
        return acc

    def valuation_at(self, a: int) -> int:
        """Largest k with (x - a)^k dividing self (self nonzero)."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        lin = Poly(self.p, (-a, 1))
        k, f = 0, self
        while True:
            q, r = f.divmod(lin)
            if not r.is_zero():
                return k
            k, f = k + 1, q

    def compose_pth_root(self):
        """For f with f' == 0, the g with g(x)^p == f(x).

        In characteristic p such an f is a polynomial in x^p and its
        coefficients are already p-th powers (Frobenius fixes F_p).
        """
        if any(c and i % self.p for i, c in enumerate(self.coeffs)):
            raise ValueError("polynomial is not a p-th power")
        return Poly(self.p, self.coeffs[::self.p])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm.  Rejects gcd(0, 0)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()[1]


def powmod(base: Poly, n: int, modulus: Poly) -> Poly:
    result = Poly.one(base.p)
    base = base % modulus
    while n:
        if n & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        n >>= 1
    return result


class _Lcg:
    def __init__(self, seed):
        self.state = seed % _LCG_MOD

    def next_below(self, bound):
        self.state = (self.state * _LCG_MULT + _LCG_INC) % _LCG_MOD
        return (self.state >> 16) % bound


def _frobenius_power(d: int, modulus: Poly) -> Poly:
    """x^(p^d) mod modulus, by iterating the p-th power map."""
    xp = Poly.x(modulus.p)
    for _ in range(d):
        xp = powmod(xp, modulus.p, modulus)
    return xp


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(p^n) == x mod f and gcd conditions at maximal subfields."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    p = f.p
    f = f.monic()[1]
    x = Poly.x(p)
    if (_frobenius_power(n, f) - x) % f != Poly.zero(p):
        return False
    prime_divs = set()
    d, rest = 2, n
    while d * d <= rest:
        if rest % d == 0:
            prime_divs.add(d)
            while rest % d == 0:
                rest //= d
        d += 1
    if rest > 1:
        prime_divs.add(rest)
    for q in prime_divs:
        h = _frobenius_power(n // q, f) - x
        if h.is_zero() or poly_gcd(h, f).degree > 0:
            return False
    return True


def _equal_degree_split(f: Poly, d: int, rng: _Lcg):
    """Split a monic squarefree product of degree-d irreducibles (p odd)."""
    p = f.p
    if f.degree == d:
        return [f]
    exponent = (p ** d - 1) // 2
    while True:
        probe = Poly(p, [rng.next_below(p) for _ in range(2 * d)] + [1])
        h = powmod(probe, exponent, f) - Poly.one(p)
        if h.is_zero():
            continue
        g = poly_gcd(h, f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + \
                _equal_degree_split(f // g, d, rng)


def _factor_squarefree_monic(f: Poly, rng: _Lcg):
    """Irreducible factors of a monic squarefree polynomial."""
    factors = []
    x = Poly.x(f.p)
    d = 1
    frob = x
    while f.degree > 0:
        if 2 * d > f.degree:
            factors.append(f)
            break
        frob = powmod(frob, f.p, f)
        g = poly_gcd(frob - x, f) if not (frob - x).is_zero() else f
        if g.degree > 0:
            factors.extend(_equal_degree_split(g, d, rng))
            f = f // g
            frob = frob % f
        d += 1
    return factors


def factor(f: Poly):
    """Factor f as unit * product of monic irreducible powers.

    Returns ``(unit, [(factor, multiplicity), ...])`` with factors pairwise
    distinct, sorted by degree and then lexicographically on the little-endian
    coefficient tuple.  Deterministic: the equal-degree splitting runs on a
    fixed seed.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit, f = f.monic()
    counts = {}
    _factor_monic_into(f, 1, counts)
    items = sorted(counts.items(), key=lambda kv: (kv[0].degree, kv[0].coeffs))
    return unit, items


def _factor_monic_into(f: Poly, mult: int, counts):
    if f.degree == 0:
        return
    deriv = f.derivative()
    if deriv.is_zero():
        _factor_monic_into(f.compose_pth_root(), mult * f.p, counts)
        return
    s = poly_gcd(f, deriv)
    squarefree = f // s
    rng = _Lcg(_EDF_SEED + f.degree)
    for g in _factor_squarefree_monic(squarefree, rng):
        k = 0
        while True:
            q, r = f.divmod(g)
            if not r.is_zero():
                break
            f, k = q, k + 1
        counts[g] = counts.get(g, 0) + mult * k
    if f.degree > 0:
        _factor_monic_into(f, mult, counts)


def rational_roots(f: Poly):
    """Roots in F_p with multiplicity, sorted by root value."""
    _, items = factor(f)
    out = []
    for g, k in items:
        if g.degree == 1:
            out.append(((-g.coeffs[0]) % f.p * inv_mod(g.coeffs[1], f.p) % f.p, k))
    return sorted(out)


# ---------------------------------------------------------------------------
# Extension fields F_{p^k}
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def minimal_irreducible(p: int, k: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    "Smallest" compares the little-endian coefficient tuple of the non-leading
    part, first entry most significant, so the choice is reproducible.
    """
    if k == 1:
        return Poly.x(p)
    for tail in itertools.product(range(p), repeat=k):
        f = Poly(p, tail + (1,))
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible of degree %d over F_%d" % (k, p))


class ExtField:
    """F_{p^k} modeled as F_p[y] / (minimal_irreducible(p, k)).

    Elements are little-endian coefficient tuples of length k.  All methods
    are pure; instances carry no mutable state.
    """

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.modulus = minimal_irreducible(p, k)
        self.order = p ** k
        self.zero = (0,) * k
        self.one = ((1,) + (0,) * (k - 1)) if k > 0 else ()

    def __repr__(self):
        return "ExtField(%d, %d)" % (self.p, self.k)

    def __eq__(self, other):
        return isinstance(other, ExtField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("ExtField", self.p, self.k))

    def embed(self, a: int):
        return (a % self.p,) + (0,) * (self.k - 1)

    def element(self, coeffs):
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            raise ValueError("element has too many coefficients")
        return tuple(c) + (0,) * (self.k - len(c))

    def encode(self, e) -> int:
        """Integer encoding sum(e_i * p^i); used for deterministic ordering."""
        acc = 0
        for c in reversed(e):
            acc = acc * self.p + c
        return acc

    def decode(self, n: int):
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def is_zero(self, e) -> bool:
        return all(c == 0 for c in e)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = Poly(self.p, a) * Poly(self.p, b)
        rem = prod % self.modulus
        return self.element(rem.coeffs)

    def scalar_mul(self, c: int, a):
        return tuple(x * c % self.p for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.order - 2)

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a):
        return self.pow(a, self.p)

    def inv_frobenius(self, a):
        """The p-th root (Frobenius is bijective on a finite field)."""
        return self.pow(a, self.p ** (self.k - 1))


# -- minimal polynomial arithmetic over an ExtField, for root extraction ----

def _etrim(field, f):
    i = len(f)
    while i > 0 and field.is_zero(f[i - 1]):
        i -= 1
    return f[:i]


def _emul(field, f, g):
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not field.is_zero(a):
            for j, b in enumerate(g):
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return _etrim(field, out)


def _emod(field, f, g):
    f = list(f)
    d = len(g) - 1
    inv_lead = field.inv(g[-1])
    for i in range(len(f) - d - 1, -1, -1):
        c = field.mul(f[i + d], inv_lead)
        if not field.is_zero(c):
            for j, bc in enumerate(g):
                f[i + j] = field.sub(f[i + j], field.mul(c, bc))
    return _etrim(field, f)


def _egcd(field, f, g):
    f, g = _etrim(field, list(f)), _etrim(field, list(g))
    while g:
        f, g = g, _emod(field, f, g)
    if f:
        inv_lead = field.inv(f[-1])
        f = [field.mul(c, inv_lead) for c in f]
    return f


def _epowmod(field, base, n, modulus):
    result = [field.one]
    base = _emod(field, base, modulus)
    while n:
        if n & 1:
            result = _emod(field, _emul(field, result, base), modulus)
        base = _emod(field, _emul(field, base, base), modulus)
        n >>= 1
    return result


def roots_in_extension(f: Poly, field: ExtField):
    """All roots in the given extension of an irreducible f of degree field.k.

    Finds one root by deterministic equal-degree splitting over the
    extension, then takes its Frobenius orbit.  Roots are sorted by their
    integer encoding.
    """
    if f.degree != field.k:
        raise ValueError("field degree must match the factor degree")
    g = [field.embed(c) for c in f.coeffs]
    rng = _Lcg(_EDF_SEED ^ field.order)
    exponent = (field.order - 1) // 2
    while len(g) > 2:
        probe = [field.decode(rng.next_below(field.order)), field.one]
        h = _epowmod(field, probe, exponent, g)
        h = _etrim(field, [field.sub(c, field.one) if i == 0 else c
                           for i, c in enumerate(h)] or [field.neg(field.one)])
        if not h:
            continue
        cand = _egcd(field, h, g)
        if 0 < len(cand) - 1 < len(g) - 1:
            g = cand
    root = field.neg(g[0])  # monic linear factor y + g0
    orbit = [root]
    nxt = field.frobenius(root)
    while nxt != root:
        orbit.append(nxt)
        nxt = field.frobenius(nxt)
    return sorted(orbit, key=field.encode)


# ---------------------------------------------------------------------------
# 2x2 matrices over F_p
# ---------------------------------------------------------------------------

MAT_IDENTITY = (1, 0, 0, 1)

# BFS group closure refuses larger primes unless explicitly overridden;
# |GL_2(p)| grows like p^4 and the closure is meant for desk-scale p.
CLOSURE_PRIME_LIMIT = 101


def mat_mul(p: int, A, B):
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p,
            (c * e + d * g) % p, (c * f + d * h) % p)


def mat_det(p: int, A) -> int:
    return (A[0] * A[3] - A[1] * A[2]) % p


def mat_trace(p: int, A) -> int:
    return (A[0] + A[3]) % p


def mat_scalar(p: int, c: int):
    c %= p
    return (c, 0, 0, c)


def mat_scale(p: int, c: int, A):
    return tuple(c * x % p for x in A)


def mat_inv(p: int, A):
    det = mat_det(p, A)
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    di = inv_mod(det, p)
    a, b, c, d = A
    return (d * di % p, (-b) * di % p, (-c) * di % p, a * di % p)


def mat_pow(p: int, A, n: int):
    if n < 0:
        return mat_pow(p, mat_inv(p, A), -n)
    result, base = MAT_IDENTITY, A
    while n:
        if n & 1:
            result = mat_mul(p, result, base)
        base = mat_mul(p, base, base)
        n >>= 1
    return result


def mat_order(p: int, A, cap: int = None) -> int:
    """Multiplicative order; cap defaults to |GL_2(p)| = (p^2-1)(p^2-p)."""
    if cap is None:
        cap = (p * p - 1) * (p * p - p)
    m, k = A, 1
    while m != MAT_IDENTITY:
        m = mat_mul(p, m, A)
        k += 1
        if k > cap:
            raise ValueError("matrix has no order up to the cap (singular?)")
    return k


def vec_mat(p: int, v, A):
    """Row vector times matrix."""
    a, b, c, d = A
    return ((v[0] * a + v[1] * c) % p, (v[0] * b + v[1] * d) % p)


def group_closure_packed(p: int, generators, allow_large: bool = False):
    """Packed-index form of :func:`group_closure`: a sorted int64 array of
    indices ((a p + b) p + c) p + d."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p > CLOSURE_PRIME_LIMIT and not allow_large:
        raise ValueError(
            "group closure refuses p > %d (override to proceed)" % CLOSURE_PRIME_LIMIT)
    gens = [tuple(x % p for x in g) for g in generators]
    for g in gens:
        if mat_det(p, g) == 0:
            raise ValueError("singular generator %r" % (g,))
    if not gens:
        gens = [MAT_IDENTITY]

    seen = np.zeros(p ** 4, dtype=bool)
    frontier = np.array([((1 * p + 0) * p + 0) * p + 1], dtype=np.int64)
    seen[frontier] = True
    while frontier.size:
        rest, d = np.divmod(frontier, p)
        rest, c = np.divmod(rest, p)
        a, b = np.divmod(rest, p)
        batches = []
        for ge, gf, gg, gh in gens:
            na = (ge * a + gf * c) % p
            nb = (ge * b + gf * d) % p
            nc = (gg * a + gh * c) % p
            nd = (gg * b + gh * d) % p
            batches.append(((na * p + nb) * p + nc) * p + nd)
        cand = np.unique(np.concatenate(batches))
        new = cand[~seen[cand]]
        seen[new] = True
        frontier = new
    return np.nonzero(seen)[0]


def unpack_matrices(p: int, packed):
    rest, d = np.divmod(packed, p)
    rest, c = np.divmod(rest, p)
    a, b = np.divmod(rest, p)
    return list(map(tuple, np.stack([a, b, c, d], axis=1).tolist()))


def group_closure(p: int, generators, allow_large: bool = False):
    """The subgroup of GL_2(p) generated by the given invertible matrices.

    Layered BFS over left-multiplication by the generators, vectorized on
    packed matrix indices.  Returns the full element list sorted by packed
    index, so iteration order is deterministic.
    """
    return unpack_matrices(p, group_closure_packed(p, generators, allow_large))
