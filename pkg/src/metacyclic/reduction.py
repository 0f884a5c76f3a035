"""Good/bad reduction of the covering tower and the explicit deformation datum.

The verdict is a pure function of the type: the tower degenerates exactly
for mixed types (entries summing to 2m).  In the bad case the inseparable
part of the degeneration is encoded by a tame cyclic cover of the line given
by an explicit equation

    theta^n = unit * x^b1 * (x-1)^b2 * prod_S S(x)^c,

built out of the Hasse invariants of the type and its dual, together with a
logarithmic differential fixed by the Cartier operator and one "tail" per
residual branch point or interior zero of the Hasse invariant.  Every tail
carries a ramification invariant sigma = h/n_b solved from the congruence
h * (n'/n_b) == beta mod n'; new tails always produce (p+1)/(p-1) and the
weighted fractional parts of the sigmas sum to exactly n'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import Poly, inv_mod, sqrt_mod
from .base import ConsistencyError, PrimeContext, TypeVector, UnresolvableTypeError
from .hasse import HasseReport, boundary_zero_orders, supersingular_set
from .monodromy import classify_gamma, galois_group


@dataclass(frozen=True)
class ReductionCase:
    label: str            # Multiplicative | Mixed | Etale
    good_reduction: bool


def reduction_case(tv: TypeVector) -> ReductionCase:
    """Case trichotomy by sum(a)/m; only the mixed case degenerates."""
    k = tv.total // tv.m
    label = {1: "Multiplicative", 2: "Mixed", 3: "Etale"}[k]
    return ReductionCase(label=label, good_reduction=(label != "Mixed"))


@dataclass(frozen=True)
class Tail:
    kind: str          # "primitive" | "new"
    location: str      # "x1" | "x2" | "x3" (branch points 0, 1, infinity)
                       # or the monic irreducible carrying the interior zeros
    beta: int
    n_b: int
    h_b: int
    sigma: Fraction
    multiplicity: int  # extension degree for new tails, 1 for primitive


@dataclass(frozen=True)
class NormalForm:
    b1: int
    b2: int
    c: int
    lambda_factor: Poly       # monic product of the interior factors
    unit: int                 # theta^n = unit * x^b1 (x-1)^b2 lambda_factor^c
    unit_is_square: bool = False
    # unit_is_square: the F_p-rational unit does not exist; ``unit`` then
    # holds its square and the equation needs the quadratic constant twist.


@dataclass(frozen=True)
class DeformationDatum:
    case_label: str          # a | b | c | d
    permutation: tuple       # 0-indexed positions; type_used.a[i] == a[perm[i]]
    moved_fourth: bool       # permutation moved the variable branch point
    type_used: TypeVector
    galois: str
    d: int
    j: int                   # 0 where the case formula has no j parameter
    n: int
    n_prime: int
    exponents: tuple         # (e1, e2): theta^n (cases a, b, d) or theta^(2n)
                             # (case c) equals Phi^e1 * Phi_dual^e2
    sqrt_taken: bool
    normal_form: NormalForm
    tails: tuple
    omega_unit: int          # 0 marks the constant-twist obstruction
    omega_twist: bool        # fixed differential needs the quadratic twist
    vanishing_ok: bool
    hasse: HasseReport


def _find_permutation(tv: TypeVector):
    """First permutation (lexicographic order over all 24) with
    d = gcd(m, a1+a3, a2+a3) != m.  For m = 2 the requirement is vacuous."""
    m = tv.m
    if m == 2:
        perm = (0, 1, 2, 3)
        a = tv.a
        return perm, gcd(m, a[0] + a[2], a[1] + a[2])
    for perm in itertools.permutations(range(4)):
        a = tuple(tv.a[i] for i in perm)
        d = gcd(m, a[0] + a[2], a[1] + a[2])
        if d != m:
            return perm, d
    raise UnresolvableTypeError(
        "no branch permutation achieves d != m for %r" % (tv,))


def _case_split(ctx: PrimeContext, tv: TypeVector, galois: str, d: int):
    """Case label, exponent pair (e1, e2), cover degree n, and the j
    parameter of the equation theta^n = Phi^e1 Phi_dual^e2 (square root of
    the right-hand side still to be taken in case c).

    In case d the pair is (1, 1): the product Phi * Phi_dual is the Kummer
    class cutting out the datum cover.  Pairs of the shape (1+j, 1-j) differ
    from it by the class of a monomial to the power j*(p-1)/2, which is a
    quadratic twist for odd multipliers and degenerates the equation
    entirely when j is odd; both the Cartier fixed point and the
    vanishing-cycle sum single out (1, 1).
    """
    m, p = ctx.m, ctx.p
    if m == 2:
        return "a", (1, 0), (p - 1) // 2, 0
    if m % 2 == 1:
        if galois != "SL2":
            raise ConsistencyError("odd m must give Galois group SL2")
        if (m // d) % 2 == 0:
            raise ConsistencyError("m/d must be odd for odd m")
        j = (m // d - 1) // 2
        return "b", (1 + j, -j), p - 1, j
    if galois == "PSL2":
        if d % 2:
            raise ConsistencyError("PSL2 forces an even d")
        return "c", (1 + m // d, 1 - m // d), (p - 1) // 2, m // d
    if galois != "PGL2":
        raise ConsistencyError("unexpected Galois label %r" % galois)
    if d % 2 == 0:
        return "c", (1 + m // d, 1 - m // d), (p - 1) // 2, m // d
    return "d", (1, 1), p - 1, m // (2 * d)


def _solve_tail(p: int, n_prime: int, beta: int, kind: str,
                location: str, multiplicity: int) -> Tail:
    """Unique h with h * (n'/n_b) == beta mod n' in the window of the kind:
    (0, n_b) for primitive tails, (n_b, 2 n_b) for new tails."""
    beta %= n_prime
    if beta == 0:
        raise ConsistencyError("tail at %s has trivial branching" % location)
    e = gcd(beta, n_prime)
    n_b = n_prime // e
    h0 = (beta // e) % n_b
    if h0 == 0:
        raise ConsistencyError("tail congruence at %s has no admissible solution"
                               % location)
    if kind == "primitive":
        h = h0
        sigma = Fraction(h, n_b)
        if not 0 < sigma < 1:
            raise ConsistencyError("primitive tail invariant out of range")
    else:
        h = h0 + n_b
        sigma = Fraction(h, n_b)
        if sigma != Fraction(p + 1, p - 1):
            raise ConsistencyError(
                "new tail invariant %s differs from (p+1)/(p-1)" % sigma)
    return Tail(kind=kind, location=location, beta=beta, n_b=n_b, h_b=h,
                sigma=sigma, multiplicity=multiplicity)


def compute_tails(ctx: PrimeContext, tv: TypeVector, n: int, n_prime: int,
                  form: NormalForm):
    """Tails of the degenerate fiber: one primitive tail at each fixed branch
    point with a_i + a_4 != 0 mod m, one new tail per interior factor.

    The branching data beta are the exponents of the reduced cover equation
    mod n'; a fixed branch point whose type pair sums to 0 mod m must come
    out unbranched (it carries the wild part, not a tail).
    """
    p, m = ctx.p, ctx.m
    deg_total = form.b1 + form.b2 + form.c * form.lambda_factor.degree
    betas = (form.b1 % n_prime, form.b2 % n_prime, (-deg_total) % n_prime)
    tails = []
    for i in range(3):
        wild = (tv.a[i] + tv.a[3]) % m == 0
        if wild:
            if betas[i] != 0:
                raise ConsistencyError(
                    "wild branch point x%d is tamely branched in the datum" % (i + 1))
            continue
        if betas[i] == 0:
            raise ConsistencyError(
                "tame branch point x%d lost its branching in the datum" % (i + 1))
        tails.append(_solve_tail(p, n_prime, betas[i], "primitive",
                                 "x%d" % (i + 1), 1))
    from .algebra import factor as poly_factor
    _, items = poly_factor(form.lambda_factor)
    for g, k in items:
        if k != 1:
            raise ConsistencyError("interior factor with multiplicity")
        tails.append(_solve_tail(p, n_prime, form.c % n_prime, "new",
                                 "root of %r" % (list(g.coeffs),), g.degree))
    if n % n_prime:
        raise ConsistencyError("n' must divide n")
    return tuple(tails)


def _vanishing_cycle_sum_ok(tails, n_prime: int) -> bool:
    total = Fraction(0)
    for t in tails:
        nu = t.sigma.__floor__()
        if t.kind == "primitive" and nu != 0:
            return False
        if t.kind == "new" and nu != 1:
            return False
        total += t.multiplicity * n_prime * (t.sigma - nu)
    return total == n_prime


def vanishing_cycle_check(datum: DeformationDatum) -> bool:
    """Global consistency: floor(sigma) is 0 on primitive and 1 on new tails,
    and the weighted fractional parts sum to exactly n'."""
    return _vanishing_cycle_sum_ok(datum.tails, datum.n_prime)


def _cover_polynomial(p: int, form: NormalForm) -> Poly:
    f = Poly.constant(p, form.unit).shift(form.b1)
    f = f * Poly(p, (-1, 1)) ** form.b2
    return f * form.lambda_factor ** form.c


def reduced_form(form: NormalForm, n_prime: int) -> NormalForm:
    """The cover equation pushed down to the degree-n' quotient: exponents
    reduce mod n', the unit and the interior factor are untouched."""
    return NormalForm(b1=form.b1 % n_prime, b2=form.b2 % n_prime,
                      c=form.c % n_prime, lambda_factor=form.lambda_factor,
                      unit=form.unit, unit_is_square=form.unit_is_square)


def _cartier_coefficient(ctx: PrimeContext, n_prime: int, form: NormalForm) -> int:
    """The constant c with C(theta dx/(x(x-1))) = c^(1/p) theta dx/(x(x-1))
    on theta^n' = F, F the cover polynomial of the form.

    Writing the differential as a p-th power times
    F^(p-q) x^(p-1) (x-1)^(p-1) dx with q = (p-1)/n', the image is read off
    from the coefficients of x^(ps+p-1); it must be a constant multiple of F
    or the form does not carry the datum line at all.
    """
    p = ctx.p
    q = (p - 1) // n_prime
    if q * n_prime != p - 1:
        raise ValueError("cover degree must divide p - 1")
    big_f = _cover_polynomial(p, form)
    expanded = big_f ** (p - q) * Poly(p, (-1, 1)) ** (p - 1)
    expanded = expanded.shift(p - 1)
    coeffs = expanded.coeffs
    extracted = [coeffs[i] for i in range(p - 1, len(coeffs), p)]
    w = Poly(p, extracted)
    if w.degree != big_f.degree:
        raise ConsistencyError("Cartier image is not proportional to the cover")
    c = w.coeffs[-1] * inv_mod(big_f.coeffs[-1], p) % p
    if w != big_f * c:
        raise ConsistencyError("Cartier image is not proportional to the cover")
    return c


def verify_omega_fixed(ctx: PrimeContext, n_prime: int, form: NormalForm):
    """Cartier-fix the logarithmic differential u * theta dx/(x(x-1)) on the
    datum curve (exponents already reduced mod n').

    Returns (omega_unit, form).  When the eigen-coefficient is 1 every
    u in F_p^x works and omega_unit = 1.  A coefficient c != 1 can sometimes
    be repaired by moving to the constant twist with unit s*U, s^2 = c
    (q = 2 covers only); when c is a non-square no F_p-rational fixed
    differential exists, omega_unit = 0 is returned and the twist is left to
    the quadratic constant-field extension.
    """
    p = ctx.p
    if form.unit_is_square:
        return 0, form
    q = (p - 1) // n_prime
    c = _cartier_coefficient(ctx, n_prime, form)
    if c == 1:
        return 1, form
    if q == 1:
        # unit rescalings are genuine twists of degree-(p-1) covers; a
        # non-trivial coefficient cannot be repaired and would contradict
        # the torsor theory
        raise ConsistencyError("Cartier coefficient %d on a full-degree cover" % c)
    s = sqrt_mod(c, p)
    if s is None:
        return 0, form
    twisted = NormalForm(b1=form.b1, b2=form.b2, c=form.c,
                         lambda_factor=form.lambda_factor,
                         unit=form.unit * s % p,
                         unit_is_square=form.unit_is_square)
    if _cartier_coefficient(ctx, n_prime, twisted) != 1:
        raise ConsistencyError("constant twist failed to fix the differential")
    return 1, twisted


def deformation_datum(ctx: PrimeContext, tv: TypeVector) -> DeformationDatum:
    """Full degeneration report for a mixed, non-degenerate type with p > 5.

    The branch indices are permuted (lexicographically first success) so
    that d = gcd(m, a1+a3, a2+a3) differs from m; everything downstream is
    reported for the permuted type.  Permutations moving the fourth (the
    variable) branch point change its parameter by a Moebius map and are
    flagged.
    """
    ctx.require_large_prime()
    if reduction_case(tv).label != "Mixed":
        raise ValueError("deformation data exist only for mixed types")
    report = classify_gamma(ctx, tv)
    if not report.contains_sl2:
        raise ValueError("degenerate (exceptional) type: the tower has good "
                         "reduction and no deformation datum")
    galois = galois_group(ctx, tv, report)

    perm, d = _find_permutation(tv)
    tperm = tv.permuted(perm)
    case_label, (e1, e2), n, j = _case_split(ctx, tperm, galois, d)

    hrep = supersingular_set(ctx, tperm)
    hrep_dual = supersingular_set(ctx, tperm.dual())
    if hrep.supersingular_factors != hrep_dual.supersingular_factors:
        raise ConsistencyError("interior zeros of the dual pair disagree")

    z0, z1 = hrep.zero_order_at_0, hrep.zero_order_at_1
    z0d, z1d = boundary_zero_orders(ctx, tperm.dual())
    exp0 = e1 * z0 + e2 * z0d
    exp1 = e1 * z1 + e2 * z1d
    c_full = e1 + e2
    u_a, u_d = hrep.interior_unit, hrep_dual.interior_unit
    p = ctx.p

    def unit_power(u, e):
        return pow(u if e >= 0 else inv_mod(u, p), abs(e), p)

    unit_full = unit_power(u_a, e1) * unit_power(u_d, e2) % p

    # The equation must present a connected cover: whenever every exponent
    # of the Kummer class is even, pass to the connected component (halve
    # the class).  Case c always halves; case d halves exactly when the
    # boundary exponents come out even.
    sqrt_taken = case_label == "c" or (
        case_label == "d" and exp0 % 2 == 0 and exp1 % 2 == 0)
    unit_is_square = False
    if sqrt_taken:
        if exp0 % 2 or exp1 % 2 or c_full % 2:
            raise ConsistencyError("square extraction hit an odd exponent")
        exp0, exp1, c_full = exp0 // 2, exp1 // 2, c_full // 2
        n = (p - 1) // 2
        root = sqrt_mod(unit_full, p)
        if root is None:
            unit, unit_is_square = unit_full, True
        else:
            unit = root
    else:
        unit = unit_full

    b1, b2 = exp0 % n, exp1 % n
    if not 0 < c_full < n:
        raise ConsistencyError("interior exponent out of range")
    if gcd(gcd(n, b1), gcd(b2, c_full)) != 1:
        raise ConsistencyError("reduced equation does not define a degree-n cover")

    lam_factor = Poly.one(p)
    for g, _ in hrep.supersingular_factors:
        lam_factor = lam_factor * g
    form = NormalForm(b1=b1, b2=b2, c=c_full, lambda_factor=lam_factor,
                      unit=unit, unit_is_square=unit_is_square)

    n_prime = n // 2 if case_label == "b" else n
    tails = compute_tails(ctx, tperm, n, n_prime, form)
    omega_unit, fixed_prime_form = verify_omega_fixed(
        ctx, n_prime, reduced_form(form, n_prime))
    if omega_unit == 1 and fixed_prime_form.unit != reduced_form(form, n_prime).unit:
        # propagate the honest constant twist back into the reported form
        form = NormalForm(b1=form.b1, b2=form.b2, c=form.c,
                          lambda_factor=form.lambda_factor,
                          unit=fixed_prime_form.unit,
                          unit_is_square=form.unit_is_square)
    vanishing_ok = _vanishing_cycle_sum_ok(tails, n_prime)
    if not vanishing_ok:
        raise ConsistencyError("vanishing-cycle consistency failed")

    return DeformationDatum(
        case_label=case_label,
        permutation=perm,
        moved_fourth=(perm[3] != 3),
        type_used=tperm,
        galois=galois,
        d=d,
        j=j,
        n=n,
        n_prime=n_prime,
        exponents=(e1, e2),
        sqrt_taken=sqrt_taken,
        normal_form=form,
        tails=tails,
        omega_unit=omega_unit,
        omega_twist=(omega_unit == 0),
        vanishing_ok=vanishing_ok,
        hasse=hrep,
    )
