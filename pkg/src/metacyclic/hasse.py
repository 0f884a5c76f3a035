"""The Hasse invariant of a mixed four-point type and its zero structure.

For a mixed type (sum of the a_i equal to 2m) the distinguished eigenspace
of differentials is one-dimensional and the Cartier operator acts on it
through a single polynomial Phi in the moving branch point lam.  This module
computes Phi by its closed binomial formula, checks the hypergeometric
differential equation it satisfies, locates its boundary zeros at 0 and 1,
factors the interior part (all interior zeros are simple), and verifies the
ratio identity tying Phi to the Phi of the dual type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ExtField, Poly, binom_mod_p, factor, roots_in_extension
from .base import ConsistencyError, PrimeContext, TypeVector


def _require_mixed(tv: TypeVector):
    if tv.total != 2 * tv.m:
        raise ValueError("operation requires a mixed type (sum a_i == 2m)")


def hasse_invariant(ctx: PrimeContext, tv: TypeVector) -> Poly:
    """Closed formula: (-1)^(alpha a3) * sum_{i+j = alpha a3}
    C(alpha a2*, i) C(alpha a4*, j) lam^j  with a_i* = m - a_i.

    Stored un-normalized, sign included; the degree is
    min(alpha a4*, alpha a3) exactly.
    """
    _require_mixed(tv)
    p, m, alpha = ctx.p, ctx.m, ctx.alpha
    a = tv.a
    a2s, a4s = m - a[1], m - a[3]
    top = alpha * a[2]
    sign = 1 if (alpha * a[2]) % 2 == 0 else p - 1
    coeffs = []
    for j in range(top + 1):
        i = top - j
        coeffs.append(sign * binom_mod_p(alpha * a2s, i, p)
                      * binom_mod_p(alpha * a4s, j, p) % p)
    phi = Poly(p, coeffs)
    if phi.degree != min(alpha * a4s, top):
        raise ConsistencyError("Hasse invariant has unexpected degree")
    return phi


def ode_parameters(ctx: PrimeContext, tv: TypeVector):
    """Residues (A, B, C) of the hypergeometric equation satisfied by the
    Hasse invariant: A = -alpha a3, B = alpha (a4 - m), C = -alpha (a2 + a3),
    all mod p."""
    _require_mixed(tv)
    p, alpha = ctx.p, ctx.alpha
    a = tv.a
    return ((-alpha * a[2]) % p,
            (alpha * (a[3] - tv.m)) % p,
            (-alpha * (a[1] + a[2])) % p)


def verify_ode(phi: Poly, params) -> bool:
    """True iff lam(1-lam) u'' + [C - (A+B+1) lam] u' - A B u vanishes
    identically mod p for u = phi."""
    p = phi.p
    big_a, big_b, big_c = (v % p for v in params)
    u1 = phi.derivative()
    u2 = u1.derivative()
    lam = Poly.x(p)
    residual = (lam * (Poly.one(p) - lam) * u2
                + (Poly.constant(p, big_c) - (big_a + big_b + 1) * lam) * u1
                - big_a * big_b * phi)
    return residual.is_zero()


def boundary_zero_orders(ctx: PrimeContext, tv: TypeVector):
    """Zero orders of the Hasse invariant at lam = 0 and lam = 1.

    Predicted as max(alpha(a2+a3-m), 0) and max(alpha(a1+a3-m), 0); the
    prediction is checked against the actual valuations and a mismatch is an
    internal-consistency failure.
    """
    _require_mixed(tv)
    alpha = ctx.alpha
    a = tv.a
    pred0 = max(alpha * (a[1] + a[2] - tv.m), 0)
    pred1 = max(alpha * (a[0] + a[2] - tv.m), 0)
    phi = hasse_invariant(ctx, tv)
    if phi.valuation_at(0) != pred0 or phi.valuation_at(1) != pred1:
        raise ConsistencyError("boundary zero orders disagree with the polynomial")
    return pred0, pred1


def dual_ratio_check(ctx: PrimeContext, tv: TypeVector):
    """Exponents (e0, e1) and unit u with
    Phi = u * Phi_dual * lam^e0 * (lam-1)^e1  as polynomials (negative
    exponents clear to the left-hand side).  Positive exponents mean the
    boundary zero sits in Phi itself.

    Returns (e0, e1, ok, unit); ok=False marks an identity failure.
    """
    _require_mixed(tv)
    p, alpha = ctx.p, ctx.alpha
    a = tv.a
    e0 = alpha * (a[1] + a[2] - tv.m)
    e1 = alpha * (a[0] + a[2] - tv.m)
    phi = hasse_invariant(ctx, tv)
    phi_dual = hasse_invariant(ctx, tv.dual())
    lhs = phi
    rhs = phi_dual
    lam = Poly.x(p)
    lam1 = Poly(p, (-1, 1))
    if e0 > 0:
        rhs = rhs * lam ** e0
    elif e0 < 0:
        lhs = lhs * lam ** (-e0)
    if e1 > 0:
        rhs = rhs * lam1 ** e1
    elif e1 < 0:
        lhs = lhs * lam1 ** (-e1)
    unit_l, monic_l = lhs.monic()
    unit_r, monic_r = rhs.monic()
    unit = unit_l * pow(unit_r, -1, p) % p
    ok = monic_l == monic_r
    return e0, e1, ok, unit


@dataclass(frozen=True)
class HasseReport:
    """Everything the zero structure of one Hasse invariant yields."""

    phi: Poly
    phi_dual: Poly
    ode_params: tuple
    zero_order_at_0: int
    zero_order_at_1: int
    supersingular_factors: tuple   # ((monic irreducible Poly, 1), ...)
    count: int
    ratio_exponents: tuple         # (e0, e1)
    ratio_unit: int
    interior_unit: int             # Phi == interior_unit * lam^z0 (lam-1)^z1 * prod(factors)


def supersingular_set(ctx: PrimeContext, tv: TypeVector) -> HasseReport:
    """Factor the interior part of the Hasse invariant into distinct
    irreducibles and tie the count to the closed formula.

    Interior zeros (away from 0 and 1) are simple; a repeated interior
    factor is an internal-consistency failure, as is a count differing from
    min(alpha a4*, alpha a3) - ord_0 - ord_1.  The count is always >= 1.
    """
    _require_mixed(tv)
    p, m, alpha = ctx.p, ctx.m, ctx.alpha
    a = tv.a
    phi = hasse_invariant(ctx, tv)
    ord0, ord1 = boundary_zero_orders(ctx, tv)
    interior = phi
    if ord0:
        interior = interior // Poly.x(p) ** ord0
    if ord1:
        interior = interior // Poly(p, (-1, 1)) ** ord1
    unit, items = factor(interior)
    for g, k in items:
        if k != 1:
            raise ConsistencyError("repeated interior zero of the Hasse invariant")
    expected = min(alpha * (m - a[3]), alpha * a[2]) - ord0 - ord1
    total = sum(g.degree for g, _ in items)
    if total != expected:
        raise ConsistencyError("supersingular count disagrees with the closed formula")
    if expected < 1:
        raise ConsistencyError("supersingular count must be positive")
    e0, e1, ok, runit = dual_ratio_check(ctx, tv)
    if not ok:
        raise ConsistencyError("dual ratio identity failed")
    return HasseReport(
        phi=phi,
        phi_dual=hasse_invariant(ctx, tv.dual()),
        ode_params=ode_parameters(ctx, tv),
        zero_order_at_0=ord0,
        zero_order_at_1=ord1,
        supersingular_factors=tuple(items),
        count=expected,
        ratio_exponents=(e0, e1),
        ratio_unit=runit,
        interior_unit=unit,
    )


def supersingular_roots(ctx: PrimeContext, tv: TypeVector):
    """Roots of each interior factor, listed in F_{p^deg} with the
    deterministic modulus choice.  Returns a list of
    (factor, extension degree, (root tuples...)) entries."""
    report = supersingular_set(ctx, tv)
    out = []
    for g, _ in report.supersingular_factors:
        if g.degree == 1:
            root = (-g.coeffs[0]) % ctx.p
            out.append((g, 1, ((root,),)))
        else:
            field = ExtField(ctx.p, g.degree)
            out.append((g, g.degree, tuple(roots_in_extension(g, field))))
    return out
