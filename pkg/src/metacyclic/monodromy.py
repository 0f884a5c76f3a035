"""Braid matrices, the monodromy group, and conjugacy-class labels.

The pure braid action on normalized tuples is linear on the vectors
(v1, v2); vectors are rows and the action is v -> v @ B_i.  The three
matrices generate a subgroup of GL_2(p) whose isomorphism type controls
whether the covering tower is connected with full linear Galois group, or
degenerates to a small prime-to-p group.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .algebra import (MAT_IDENTITY, group_closure_packed, inv_mod, mat_det,
                      mat_mul, mat_pow, mat_scale, mat_trace, sqrt_mod,
                      unpack_matrices)
from .base import ConsistencyError, PrimeContext, TypeVector
from .nielsen import braid_act_wvector, signature_closed_form


def sl2_order(p: int) -> int:
    return p * (p * p - 1)


def multiplicative_order(p: int, x: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def braid_matrices(ctx: PrimeContext, tv: TypeVector):
    """The matrices of the three pure braid generators on vectors.

    Cross-checked two ways: determinants against the products of class
    exponents, and every row against the matrix derived directly from the
    tuple action on the standard basis vectors.
    """
    p = ctx.p
    z1, z2, z3, z4 = (ctx.zeta_power(ai) for ai in tv.a)
    b1 = (z2 % p, (z3 - 1) % p,
          z2 * (z2 - 1) % p, (1 - z2 + z2 * z3) % p)
    b2 = (z1 * (1 - z2 + z2 * z3) % p,
          inv_mod(z2, p) * (z3 - 1) % p * ((z1 - 1) + z1 * z2 * (z3 - 1)) % p,
          z1 * z2 * (1 - z2) % p,
          (1 - z1 + z1 * z2 + z1 * z3 - z1 * z2 * z3) % p)
    b3 = (1, z1 * (1 - z3) % p, 0, z1 * z2 % p)
    mats = (b1, b2, b3)
    expected_dets = (z2 * z3 % p, z1 * z3 % p, z1 * z2 % p)
    for mat, det in zip(mats, expected_dets):
        if mat_det(p, mat) != det:
            raise ConsistencyError("braid matrix determinant mismatch")
    for i, mat in enumerate(mats, start=1):
        derived = derived_braid_matrix(ctx, tv, i)
        if derived != mat:
            raise ConsistencyError("braid matrix %d disagrees with the tuple action" % i)
    if z4 != inv_mod(z1 * z2 * z3 % p, p):
        raise ConsistencyError("class exponents do not multiply to one")
    return mats


def derived_braid_matrix(ctx: PrimeContext, tv: TypeVector, i: int):
    """Matrix of b_i read off from the tuple action on (1,0) and (0,1)."""
    row1 = braid_act_wvector(ctx, tv, (1, 0), i)
    row2 = braid_act_wvector(ctx, tv, (0, 1), i)
    return (row1[0], row1[1], row2[0], row2[1])


@dataclass(frozen=True)
class GammaReport:
    generators: tuple
    order: int
    det_subgroup_order: int
    contains_sl2: bool
    classification: str   # ContainsSL2 | Dihedral | SmallExceptional
    galois_group: str     # SL2 | PSL2 | PGL2 | NotApplicable
    projective_order: int


def _projective_classes(p, elements):
    reps = set()
    for g in elements:
        first = next(x for x in g if x)
        reps.add(mat_scale(p, inv_mod(first, p), g))
    return reps


def _is_dihedral_projectively(p, elements) -> bool:
    """Dihedral (or cyclic of order <= 2) test on the image mod scalars:
    an even-order group at least half of whose elements square to a scalar
    is dihedral, and no subgroup isomorphic to A4, S4 or A5 qualifies."""
    classes = _projective_classes(p, elements)
    n = len(classes)
    if n <= 2:
        return True
    if n % 2:
        return False
    involutions = 0
    for g in classes:
        sq = mat_mul(p, g, g)
        if sq[1] == 0 and sq[2] == 0 and sq[0] == sq[3]:
            involutions += 1
    return involutions >= n // 2 + 1


def _matches_dihedral_shape(tv: TypeVector) -> bool:
    """Some permutation of the type reads (a, a, m/2 - a, m/2 - a) mod m."""
    if tv.m % 2:
        return False
    half = tv.m // 2
    import itertools
    for perm in itertools.permutations(range(4)):
        a = [tv.a[i] for i in perm]
        if a[0] == a[1] and a[2] == a[3] and (a[0] + a[2]) % tv.m == half:
            return True
    return False


def det_subgroup_exponent(tv: TypeVector) -> int:
    """gcd(m, a1+a2, a1+a3, a2+a3); the determinant image is generated by
    zeta to this exponent."""
    a = tv.a
    return gcd(tv.m, a[0] + a[1], a[0] + a[2], a[1] + a[2])


@functools.lru_cache(maxsize=None)
def classify_gamma(ctx: PrimeContext, tv: TypeVector,
                   allow_large: bool = False) -> GammaReport:
    """Close the braid matrices into the full monodromy group and classify.

    Requires p > 5.  The determinant image is computed both from the closure
    and from the exponent formula; disagreement is an internal error.  When
    the group does not contain SL_2(p) its order must be prime to p and its
    projective image must be dihedral or one of the three small exceptional
    groups (orders 12, 24, 60).
    """
    ctx.require_large_prime()
    p, m = ctx.p, ctx.m
    mats = braid_matrices(ctx, tv)
    packed = group_closure_packed(p, mats, allow_large=allow_large)
    order = int(packed.size)

    rest, dd = np.divmod(packed, p)
    rest, cc = np.divmod(rest, p)
    aa, bb = np.divmod(rest, p)
    dets = {int(x) for x in np.unique((aa * dd - bb * cc) % p)}
    g_exp = det_subgroup_exponent(tv)
    expected_dets = {pow(ctx.zeta, g_exp * k, p) for k in range(m // g_exp)}
    if dets != expected_dets:
        raise ConsistencyError("determinant image disagrees with the exponent formula")
    det_order = len(dets)

    scalars = np.arange(1, p, dtype=np.int64)
    scalar_packed = scalars * p ** 3 + scalars
    scalar_count = int(np.isin(scalar_packed, packed, assume_unique=True).sum())
    proj_order = order // scalar_count

    contains_sl2 = (order == sl2_order(p) * det_order)
    if contains_sl2:
        if order % p:
            raise ConsistencyError("group containing SL2 must have order divisible by p")
        classification = "ContainsSL2"
        galois = _galois_label(ctx, tv)
    else:
        if order % p == 0:
            raise ConsistencyError(
                "p divides the order of a group not containing SL2")
        elements = unpack_matrices(p, packed)
        if _is_dihedral_projectively(p, elements):
            classification = "Dihedral"
        else:
            classification = "SmallExceptional"
            if proj_order not in (12, 24, 60):
                raise ConsistencyError("unrecognized exceptional projective image")
        galois = "NotApplicable"
        _assert_exceptional_condition(ctx, tv)

    return GammaReport(generators=mats, order=order,
                       det_subgroup_order=det_order,
                       contains_sl2=contains_sl2,
                       classification=classification,
                       galois_group=galois,
                       projective_order=proj_order)


def _assert_exceptional_condition(ctx: PrimeContext, tv: TypeVector):
    """Necessary condition on degenerate types: either the dihedral shape, or
    every product zeta^(a_i + a_j) has multiplicative order in {2, 3, 4, 5}."""
    if _matches_dihedral_shape(tv):
        return
    for i in range(4):
        for j in range(i + 1, 4):
            zz = ctx.zeta_power(tv.a[i] + tv.a[j])
            if zz == 1 or multiplicative_order(ctx.p, zz) > 5:
                raise ConsistencyError(
                    "degenerate monodromy violates the order condition")


def _galois_label(ctx: PrimeContext, tv: TypeVector) -> str:
    if ctx.m % 2 == 1:
        return "SL2"
    return "PSL2" if det_subgroup_exponent(tv) % 2 == 0 else "PGL2"


def galois_group(ctx: PrimeContext, tv: TypeVector, report: GammaReport = None) -> str:
    """Galois group of the closed covering tower: SL2 for odd m, else PSL2
    exactly when the determinant image lies in the squares of the scalar
    subgroup.  Degenerate (exceptional) types are rejected."""
    if report is None:
        report = classify_gamma(ctx, tv)
    if not report.contains_sl2:
        raise ValueError("degenerate type has no linear Galois label "
                         "(good reduction holds regardless)")
    label = _galois_label(ctx, tv)
    # cross-check the subgroup test against the closure determinants
    if ctx.m % 2 == 0:
        det_in_squares = det_subgroup_exponent(tv) % 2 == 0
        if det_in_squares != (label == "PSL2"):
            raise ConsistencyError("determinant parity check failed")
    return label


# -- conjugacy-class labels ---------------------------------------------------

@dataclass(frozen=True)
class ClassLabel:
    kind: str    # "pA", "pB", or "C(k)"
    trace: int


def _unipotent_label(p: int, u) -> str:
    """pA/pB for a unipotent u != I with trace 2.

    Conjugating inside SL_2(p) to [[1, t], [0, 1]], the square class of t is
    the invariant; the representative [[1, 1], [0, 1]] sits in pA.
    """
    n = ((u[0] - 1) % p, u[1] % p, u[2] % p, (u[3] - 1) % p)
    if all(x == 0 for x in n):
        raise ValueError("identity matrix carries no unipotent label")
    # image of n is spanned by a nonzero column
    e = (n[0], n[2]) if (n[0] or n[2]) else (n[1], n[3])
    if e[0]:
        f = (0, inv_mod(e[0], p))
    else:
        f = ((-inv_mod(e[1], p)) % p, 0)
    # u f = f + t e
    uf = ((u[0] * f[0] + u[1] * f[1]) % p, (u[2] * f[0] + u[3] * f[1]) % p)
    diff = ((uf[0] - f[0]) % p, (uf[1] - f[1]) % p)
    t = diff[0] * inv_mod(e[0], p) % p if e[0] else diff[1] * inv_mod(e[1], p) % p
    if t == 0:
        raise ConsistencyError("unipotent normalization degenerated")
    return "pA" if pow(t, (p - 1) // 2, p) == 1 else "pB"


def _torsion_label(ctx: PrimeContext, trace: int) -> str:
    """C(k) with trace == xi^k + xi^-k and 0 < k < (p-1)/2."""
    p = ctx.p
    for k in range(1, (p - 1) // 2):
        if (pow(ctx.xi, k, p) + pow(ctx.xi, p - 1 - k, p)) % p == trace % p:
            return "C(%d)" % k
    raise ConsistencyError("trace %d matches no prime-to-p class label" % trace)


def class_vector(ctx: PrimeContext, tv: TypeVector):
    """Class labels of the three local monodromies of the closed tower.

    Each braid matrix is scaled into SL_2(p) by the canonical scalar
    gamma = xi^(-alpha s / 2), s the sum of the two complementary type
    entries; the scaled matrix must have order p (then labeled pA/pB by its
    unipotent square class) or the signature order d_i (then labeled C(k)
    through its trace).  Intended for types whose tower is branched at
    orders (p, p, d) or (d, d, d); degenerate types are rejected.
    """
    report = classify_gamma(ctx, tv)
    if not report.contains_sl2:
        raise ValueError("class labels are defined for non-degenerate types")
    p = ctx.p
    mats = braid_matrices(ctx, tv)
    sig = signature_closed_form(tv, ctx.p)
    sums = (tv.a[1] + tv.a[2], tv.a[0] + tv.a[2], tv.a[0] + tv.a[1])
    labels = []
    for i in range(3):
        mat, d_i, s = mats[i], sig[i], sums[i]
        if (ctx.alpha * s) % 2:
            gamma = sqrt_mod(inv_mod(pow(ctx.zeta, s % ctx.m, p), p), p)
            if gamma is None:
                raise ValueError("slot %d cannot be scaled into SL2 over F_p" % (i + 1))
        else:
            gamma = pow(ctx.xi, (-ctx.alpha * s // 2) % (p - 1), p)
        scaled = mat_scale(p, gamma, mat)
        if mat_det(p, scaled) != 1:
            raise ConsistencyError("scaling failed to land in SL2")
        if d_i == p:
            if mat_trace(p, scaled) == p - 2:
                scaled = mat_scale(p, p - 1, scaled)
            if mat_trace(p, scaled) != 2 or scaled == MAT_IDENTITY:
                raise ConsistencyError("order-p slot is not unipotent")
            if mat_pow(p, scaled, p) != MAT_IDENTITY:
                raise ConsistencyError("order-p slot has wrong order")
            labels.append(ClassLabel(kind=_unipotent_label(p, scaled),
                                     trace=mat_trace(p, scaled)))
        else:
            if _matrix_order_is(p, scaled, d_i):
                pass
            elif _matrix_order_is(p, mat_scale(p, p - 1, scaled), d_i):
                scaled = mat_scale(p, p - 1, scaled)
            else:
                raise ConsistencyError("no scaling of slot %d has order %d"
                                       % (i + 1, d_i))
            tr = mat_trace(p, scaled)
            labels.append(ClassLabel(kind=_torsion_label(ctx, tr), trace=tr))
    return labels


def _matrix_order_is(p, mat, n) -> bool:
    if mat_pow(p, mat, n) != MAT_IDENTITY:
        return False
    return all(mat_pow(p, mat, n // q) != MAT_IDENTITY
               for q in _prime_divisors(n))


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def order5_class_traces(ctx: PrimeContext):
    """Reference traces (trace_A, trace_B) of the two order-5 classes of
    SL_2(p) for m = 5 contexts.

    The labels need a fixed primitive 5th root; we take zeta5 = zeta^2 (a
    deterministic choice of the labeling root, recorded here once), so
    trace_A = zeta5 + zeta5^4 and trace_B = zeta5^2 + zeta5^3.
    """
    if ctx.m != 5:
        raise ValueError("order-5 class traces need m = 5")
    p = ctx.p
    zeta5 = pow(ctx.zeta, 2, p)
    trace_a = (zeta5 + pow(zeta5, 4, p)) % p
    trace_b = (pow(zeta5, 2, p) + pow(zeta5, 3, p)) % p
    return trace_a, trace_b
