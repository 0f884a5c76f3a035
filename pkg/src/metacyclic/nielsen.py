"""Generating 4-tuples in the metacyclic group and the pure braid action.

The group N of order p*m is realized as affine maps x -> u x + v of the
line over F_p, with u restricted to the order-m subgroup generated by zeta.
An element is stored as the pair (v, u); the product rule is

    (v1, u1) * (v2, u2) = (v1 + u1 v2, u1 u2).

A generating tuple with product one and prescribed classes can be conjugated
so its first entry is (0, zeta^{a_1}); what remains is the vector
(v_1, v_2) in F_p^2 of the second and third entries, and the tuple is valid
exactly when that vector is nonzero.  The pure braid generators act on
tuples by conjugation patterns and hence linearly on the vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .algebra import inv_mod
from .base import ConsistencyError, PrimeContext, TypeVector

IDENTITY = (0, 1)


def elt_mul(p, g, h):
    return ((g[0] + g[1] * h[0]) % p, g[1] * h[1] % p)


def elt_inv(p, g):
    ui = inv_mod(g[1], p)
    return ((-ui * g[0]) % p, ui)


def elt_conj(p, g, h):
    """g conjugated by h: h^-1 g h."""
    v, u = g
    w, t = h
    return (inv_mod(t, p) * (v + (u - 1) * w) % p, u)


def elt_fixed_point(p, g):
    """The unique fixed point of x -> u x + v when u != 1."""
    v, u = g
    if u % p == 1:
        raise ValueError("translations have no fixed point")
    return v * inv_mod(1 - u, p) % p


def tuple_product(p, t):
    acc = IDENTITY
    for g in t:
        acc = elt_mul(p, acc, g)
    return acc


def tuple_generates(p, t) -> bool:
    """True when the entries generate the full affine group.

    With all u_i != 1 and the u_i generating the order-m subgroup, the only
    proper subgroups containing the entries are point stabilizers, so the
    test reduces to the entries not sharing a fixed point.
    """
    points = {elt_fixed_point(p, g) for g in t}
    return len(points) > 1


def class_exponents(ctx: PrimeContext, tv: TypeVector):
    return tuple(ctx.zeta_power(ai) for ai in tv.a)


def tuple_from_wvector(ctx: PrimeContext, tv: TypeVector, w):
    """The normalized tuple attached to a nonzero vector (v1, v2)."""
    v1, v2 = w[0] % ctx.p, w[1] % ctx.p
    if v1 == 0 and v2 == 0:
        raise ValueError("the zero vector corresponds to no generating tuple")
    z1, z2, z3, z4 = class_exponents(ctx, tv)
    p = ctx.p
    v3 = (-inv_mod(z2 * z3, p) * v1 - inv_mod(z3, p) * v2) % p
    t = ((0, z1), (v1, z2), (v2, z3), (v3, z4))
    if tuple_product(p, t) != IDENTITY:
        raise ConsistencyError("normalized tuple fails the product-one relation")
    return t


def wvector_from_tuple(ctx: PrimeContext, tv: TypeVector, t):
    """Normalize a tuple by the unique translation conjugation killing the
    first coordinate, and read off the vector (v1, v2)."""
    p = ctx.p
    z = class_exponents(ctx, tv)
    for g, zi in zip(t, z):
        if g[1] != zi:
            raise ValueError("tuple entry lies in the wrong class")
    v0, u0 = t[0]
    w = v0 * inv_mod(1 - u0, p) % p  # solves v0 + (u0 - 1) w == 0
    conjugator = (w, 1)
    normalized = tuple(elt_conj(p, g, conjugator) for g in t)
    if normalized[0][0] != 0:
        raise ConsistencyError("normalization failed to kill the first coordinate")
    return (normalized[1][0], normalized[2][0])


def enumerate_estar(ctx: PrimeContext, tv: TypeVector):
    """All p^2 - 1 normalized tuples, as vectors, in lexicographic order.

    Every tuple is checked against the product-one relation and both
    generation criteria (nonzero vector versus no-common-fixed-point); a
    disagreement would be an internal inconsistency.
    """
    p = ctx.p
    out = []
    for v1 in range(p):
        for v2 in range(p):
            if v1 == 0 and v2 == 0:
                continue
            t = tuple_from_wvector(ctx, tv, (v1, v2))
            if not tuple_generates(p, t):
                raise ConsistencyError(
                    "nonzero vector (%d, %d) fails to generate" % (v1, v2))
            out.append((v1, v2))
    return out


# -- braid moves -------------------------------------------------------------

def braid_q(p, t, i):
    """Elementary braid move on positions i, i+1 (1-indexed)."""
    t = list(t)
    x, y = t[i - 1], t[i]
    t[i - 1] = y
    t[i] = elt_mul(p, elt_mul(p, elt_inv(p, y), x), y)
    return tuple(t)


def braid_q_inv(p, t, i):
    t = list(t)
    x, y = t[i - 1], t[i]
    t[i - 1] = elt_mul(p, elt_mul(p, x, y), elt_inv(p, x))
    t[i] = x
    return tuple(t)


def braid_act_word(p, t, i):
    """Pure braid generator b_i as a word in the elementary moves:
    b1 = Q3 Q2 Q1^2 Q2^-1 Q3^-1,  b2 = Q3 Q2^2 Q3^-1,  b3 = Q3^2."""
    if i == 1:
        t = braid_q(p, t, 3)
        t = braid_q(p, t, 2)
        t = braid_q(p, t, 1)
        t = braid_q(p, t, 1)
        t = braid_q_inv(p, t, 2)
        t = braid_q_inv(p, t, 3)
    elif i == 2:
        t = braid_q(p, t, 3)
        t = braid_q(p, t, 2)
        t = braid_q(p, t, 2)
        t = braid_q_inv(p, t, 3)
    elif i == 3:
        t = braid_q(p, t, 3)
        t = braid_q(p, t, 3)
    else:
        raise ValueError("pure braid index must be 1, 2 or 3")
    return t


def braid_act(p, t, i):
    """Closed-form conjugation pattern of the pure braid generator b_i."""
    g1, g2, g3, g4 = t

    def conj(g, h):
        return elt_conj(p, g, h)

    if i == 1:
        comm = elt_mul(p, elt_mul(p, elt_inv(p, g1), elt_inv(p, g4)),
                       elt_mul(p, g1, g4))
        return (conj(g1, g4), conj(g2, comm), conj(g3, comm),
                conj(g4, elt_mul(p, g1, g4)))
    if i == 2:
        comm = elt_mul(p, elt_mul(p, elt_inv(p, g2), elt_inv(p, g4)),
                       elt_mul(p, g2, g4))
        return (g1, conj(g2, g4), conj(g3, comm),
                conj(g4, elt_mul(p, g2, g4)))
    if i == 3:
        return (g1, g2, conj(g3, g4), conj(g4, elt_mul(p, g3, g4)))
    raise ValueError("pure braid index must be 1, 2 or 3")


def braid_act_wvector(ctx: PrimeContext, tv: TypeVector, w, i):
    """The braid action transported to vectors (it is linear there)."""
    t = tuple_from_wvector(ctx, tv, w)
    return wvector_from_tuple(ctx, tv, braid_act(ctx.p, t, i))


# -- cusps and the ramification signature ------------------------------------

def psi_orbit(ctx: PrimeContext, w):
    """Orbit of a vector under the scalar action of zeta (conjugation by the
    order-m generator acts on vectors as multiplication by zeta)."""
    p = ctx.p
    orbit = []
    cur = w
    for _ in range(ctx.m):
        orbit.append(cur)
        cur = (cur[0] * ctx.zeta % p, cur[1] * ctx.zeta % p)
    if cur != w:
        raise ConsistencyError("scalar orbit does not close after m steps")
    return orbit


def nielsen_classes(ctx: PrimeContext, tv: TypeVector):
    """Canonical representatives of tuples up to uniform conjugation.

    The scalar orbits must all be free of size m, so the class count is
    (p^2 - 1)/m exactly.
    """
    vectors = enumerate_estar(ctx, tv)
    seen = set()
    reps = []
    for w in vectors:
        if w in seen:
            continue
        orbit = psi_orbit(ctx, w)
        if len(set(orbit)) != ctx.m:
            raise ConsistencyError("scalar action is not free on nonzero vectors")
        seen.update(orbit)
        reps.append(min(orbit))
    expected = (ctx.p ** 2 - 1) // ctx.m
    if len(reps) != expected:
        raise ConsistencyError("class count differs from (p^2 - 1)/m")
    return sorted(reps)


def _canonical_class(ctx, w):
    return min(psi_orbit(ctx, w))


def signature_closed_form(tv: TypeVector, p: int):
    """Ramification orders (d1, d2, d3) of the three fixed branch points:
    d_i = p when a_i + a_4 == 0 mod m, else m / gcd(a_i + a_4, m)."""
    m = tv.m
    out = []
    for i in range(3):
        s = (tv.a[i] + tv.a[3]) % m
        out.append(p if s == 0 else m // gcd(s, m))
    return tuple(out)


@dataclass(frozen=True)
class CuspReport:
    orbit_sizes: tuple     # three tuples, one per braid generator
    signature: tuple       # (d1, d2, d3)


def cusps_and_signature(ctx: PrimeContext, tv: TypeVector) -> CuspReport:
    """Orbit decomposition of the classes under each pure braid generator.

    The cusps over branch point i correspond to the orbits of b_i; the
    ramification order of the Galois closure over that point is the lcm of
    the orbit sizes, which must match the closed form (and be attained by
    some single orbit).
    """
    classes = nielsen_classes(ctx, tv)
    expected = signature_closed_form(tv, ctx.p)
    all_sizes = []
    for i in (1, 2, 3):
        images = {}
        for c in classes:
            images[c] = _canonical_class(ctx, braid_act_wvector(ctx, tv, c, i))
        sizes = []
        visited = set()
        for c in classes:
            if c in visited:
                continue
            size = 0
            cur = c
            while cur not in visited:
                visited.add(cur)
                cur = images[cur]
                size += 1
            if cur != c:
                raise ConsistencyError("braid action is not a bijection on classes")
            sizes.append(size)
        if sum(sizes) != len(classes):
            raise ConsistencyError("orbit sizes do not partition the classes")
        entry = lcm(*sizes)
        if entry != expected[i - 1] or max(sizes) != entry:
            raise ConsistencyError(
                "cusp orbits over point %d disagree with the closed form" % i)
        all_sizes.append(tuple(sorted(sizes, reverse=True)))
    return CuspReport(orbit_sizes=tuple(all_sizes), signature=expected)
