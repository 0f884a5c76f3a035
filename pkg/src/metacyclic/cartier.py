"""Cartier operator on the cyclic covers z^m = x^{a1} (x-1)^{a2} (x-lam)^{a4}.

The branch points are fixed at (0, 1, infinity, lam) throughout.  For a
character power j, the relevant eigen-differentials are spanned by

    w_k = z x^k dx / (x (x-1) (x-lam)),   k = 0, 1, ...

on the cover attached to the reduced twisted type.  The Cartier operator
acts 1/p-semilinearly; its matrix is obtained exactly, by expanding a single
explicit polynomial and reading off the coefficients of x^(p s + p - 1).
Entries are reported *before* the inverse-Frobenius twist, i.e. the reported
entry N satisfies  C(w_k) = sum_s N[s][k]^(1/p) w_s.  Over F_p the twist is
the identity, so there the entries are the honest eigencoefficients.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd

from .algebra import ExtField, Poly
from .base import ConsistencyError, PrimeContext, TypeVector


def chi_part_dimension(tv: TypeVector, j: int) -> int:
    """Dimension of the j-th character eigenspace of H^1(O).

    Equals (sum of the representatives of j*a_i mod m in [0, m) minus m)/m;
    for four branch points the value is 0, 1 or 2.
    """
    m = tv.m
    if j % m == 0:
        raise ValueError("character index must be nonzero mod m")
    reps = [(j * ai) % m for ai in tv.a]
    total = sum(reps)
    if total % m != 0:
        raise ConsistencyError("twisted type does not sum to 0 mod m")
    return total // m - 1


def reduced_twist(tv: TypeVector, j: int):
    """The primitive model (m', b) of the j-th power twist of the type.

    The twist replaces a_i by j*a_i mod m; dividing out the common factor
    with m moves the data to the subcover where the twisted eigenfunctions
    actually live.  Entries of b may be zero when the twist drops a branch
    point.
    """
    m = tv.m
    reps = tuple((j * ai) % m for ai in tv.a)
    g = gcd(m, *reps)
    return m // g, tuple(r // g for r in reps)


@dataclass(frozen=True)
class CartierMatrix:
    """Matrix of the Cartier operator on a chosen eigen-differential basis.

    ``entries[s][k]`` is the coefficient of basis element s in the image of
    basis element k, before the inverse-Frobenius twist (see module
    docstring).  Entries are integers (numeric lam in F_p), ExtField element
    tuples, or Poly objects in lam (symbolic).  ``dim == 0`` with
    ``flagged_empty`` marks an eigenspace with no regular differentials to
    carry a matrix.
    """

    dim: int
    entries: tuple
    semilinear: bool = True
    flagged_empty: bool = False
    basis: str = ""


def _lam_poly_pow_linear(p: int, exponent: int):
    """Coefficients of (x - lam)^exponent as lam-polynomials, by repeated
    multiplication (no binomial shortcut; this code doubles as an oracle)."""
    coeffs = [Poly.one(p)]  # coeffs[u] = coefficient of x^u
    minus_lam = Poly(p, (0, -1))
    for _ in range(exponent):
        nxt = [coeffs[0] * minus_lam]
        for u in range(1, len(coeffs)):
            nxt.append(coeffs[u - 1] + coeffs[u] * minus_lam)
        nxt.append(coeffs[-1])
        coeffs = nxt
    return coeffs


def _int_poly_times_linear_power(p: int, base: Poly, shift: int, exponent: int) -> Poly:
    """base(x) * x^shift * (x-1)^exponent, by repeated multiplication."""
    f = base.shift(shift)
    lin = Poly(p, (-1, 1))
    for _ in range(exponent):
        f = f * lin
    return f


@functools.lru_cache(maxsize=None)
def _symbolic_cartier(p: int, mprime: int, b: tuple):
    """Cartier matrix, entries as lam-polynomials, for the primitive type b.

    Returns (dim, entries) where entries[s][k] is a Poly in lam.  The basis
    is w_k = z x^k dx/(x (x-1) (x-lam)) on z^{m'} = x^{b1}(x-1)^{b2}(x-lam)^{b4};
    regularity of each basis element is certified from its divisor before any
    extraction happens, and every coefficient that would land outside the
    span is asserted to vanish.
    """
    if len(b) != 4 or any(bi <= 0 or bi >= mprime for bi in b):
        raise ValueError("twist degenerates the four-point branch locus")
    if (p - 1) % mprime != 0:
        raise ValueError("p must be 1 mod the reduced modulus")
    alpha = (p - 1) // mprime
    dim = (sum(mprime - bi for bi in b) - mprime) // mprime

    # Divisor certificate for w_k.  Finite branch points impose no condition
    # (b_i > 0); at infinity the order is e*(2 - k - deg/m') - 1 with
    # e = m'/gcd(deg, m') and deg = b1 + b2 + b4.
    deg_f = b[0] + b[1] + b[3]
    e_inf = mprime // gcd(deg_f, mprime)

    def regular_at_infinity(k):
        return e_inf * (2 * mprime - k * mprime - deg_f) >= mprime

    for k in range(dim):
        if not regular_at_infinity(k):
            raise ConsistencyError("basis element %d fails regularity" % k)
    if dim < 2 and regular_at_infinity(dim):
        raise ConsistencyError("eigenspace dimension exceeds the predicted value")

    if dim == 0:
        return 0, ()

    # h_k = x^{p-1-alpha*b1+k} (x-1)^{p-1-alpha*b2} (x-lam)^{p-1-alpha*b4};
    # C(w_k) = sum_s h_k[p*s + p - 1]^{1/p} w_s.
    base = _int_poly_times_linear_power(
        p, Poly.one(p), p - 1 - alpha * b[0], p - 1 - alpha * b[1])
    lam_cols = _lam_poly_pow_linear(p, p - 1 - alpha * b[3])

    deg_h = base.degree + dim - 1 + len(lam_cols) - 1
    entries = []
    for s in range(dim):
        row = []
        for k in range(dim):
            target = p * s + p - 1 - k  # coefficient index inside base*lam part
            acc = Poly.zero(p)
            for u, lam_poly in enumerate(lam_cols):
                ci = target - u
                if 0 <= ci <= base.degree and base.coeffs[ci]:
                    acc = acc + lam_poly * base.coeffs[ci]
            row.append(acc)
        entries.append(tuple(row))

    # Anything extracted beyond the basis must vanish identically.
    s = dim
    while p * s + p - 1 <= deg_h:
        for k in range(dim):
            target = p * s + p - 1 - k
            acc = Poly.zero(p)
            for u, lam_poly in enumerate(lam_cols):
                ci = target - u
                if 0 <= ci <= base.degree and base.coeffs[ci]:
                    acc = acc + lam_poly * base.coeffs[ci]
            if not acc.is_zero():
                raise ConsistencyError("Cartier image leaves the eigenspace span")
        s += 1

    return dim, tuple(entries)


def _as_field_element(ctx: PrimeContext, lam):
    """Normalize lam to (field, element); plain ints mean F_p = ExtField(p, 1)."""
    if isinstance(lam, int):
        field = ExtField(ctx.p, 1)
        return field, field.embed(lam)
    field, elt = lam
    return field, elt


def _check_nondegenerate(field, elt):
    if elt == field.zero or elt == field.one:
        raise ValueError("lam must avoid the degenerate values 0 and 1")


def cartier_matrix(ctx: PrimeContext, tv: TypeVector, lam=None, j: int = 1) -> CartierMatrix:
    """Matrix of the Cartier operator for the j-th character power.

    ``lam=None`` keeps the matrix symbolic (entries are Poly objects in lam).
    The matrix is realized on the eigen-differential basis of the reduced
    twist; when the predicted dimension is 2 the differentials regular on the
    twisted cover live on the dual model, and the matrix is realized there
    (ranks are what the dimension-2 part is consumed for).
    """
    dim = chi_part_dimension(tv, j)
    if dim == 0:
        return CartierMatrix(dim=0, entries=(), flagged_empty=True,
                             basis="no regular eigen-differentials")
    mprime, b = reduced_twist(tv, j)
    if any(bi == 0 for bi in b):
        raise ValueError("character power %d drops a branch point" % j)
    basis = "z x^k dx / (x(x-1)(x-lam)) on the reduced twist"
    if dim == 2:
        b = tuple(mprime - bi for bi in b)
        basis = "dual-model realization (rank-faithful)"
    d, entries = _symbolic_cartier(ctx.p, mprime, b)
    if d != dim:
        raise ConsistencyError("eigenspace dimension mismatch")
    if lam is None:
        return CartierMatrix(dim=dim, entries=entries, basis=basis)
    field, elt = _as_field_element(ctx, lam)
    _check_nondegenerate(field, elt)
    spec = tuple(tuple(e.evaluate_in(field, elt) for e in row) for row in entries)
    return CartierMatrix(dim=dim, entries=spec, basis=basis)


def hasse_via_cartier(ctx: PrimeContext, tv: TypeVector) -> Poly:
    """Coefficient-extraction oracle for the Hasse invariant.

    Expands e(x) = x^{1 + alpha*a1*} (x-1)^{alpha*a2*} (x-lam)^{alpha*a4*}
    with a_i* = m - a_i by brute-force polynomial multiplication and returns
    the coefficient of x^p as a polynomial in lam.  Mixed types only.
    """
    if tv.total != 2 * tv.m:
        raise ValueError("Cartier extraction of the Hasse invariant needs a mixed type")
    p, m, alpha = ctx.p, ctx.m, ctx.alpha
    astar = [m - ai for ai in tv.a]
    base = _int_poly_times_linear_power(
        p, Poly.one(p), 1 + alpha * astar[0], alpha * astar[1])
    lam_cols = _lam_poly_pow_linear(p, alpha * astar[3])
    acc = Poly.zero(p)
    for u, lam_poly in enumerate(lam_cols):
        ci = p - u
        if 0 <= ci <= base.degree and base.coeffs[ci]:
            acc = acc + lam_poly * base.coeffs[ci]
    return acc


def _stable_rank(field: ExtField, dim: int, entries) -> int:
    """Stable rank of the semilinear operator with (untwisted) matrix N.

    Iterating the operator dim times kills the nilpotent part; the composite
    has matrix N * invFrob(N) * ... so for dim <= 2 one extra twisted factor
    suffices.
    """
    if dim == 0:
        return 0
    if dim == 1:
        return 0 if field.is_zero(entries[0][0]) else 1
    n = [[entries[0][0], entries[0][1]], [entries[1][0], entries[1][1]]]
    tw = [[field.inv_frobenius(e) for e in row] for row in n]
    prod = [[field.add(field.mul(n[i][0], tw[0][j]), field.mul(n[i][1], tw[1][j]))
             for j in range(2)] for i in range(2)]
    det = field.sub(field.mul(prod[0][0], prod[1][1]),
                    field.mul(prod[0][1], prod[1][0]))
    if not field.is_zero(det):
        return 2
    if any(not field.is_zero(prod[i][j]) for i in range(2) for j in range(2)):
        return 1
    return 0


_RANK_PAIRS = {(2, 0), (0, 2), (1, 1), (0, 0)}


def frobenius_rank_pair(ctx: PrimeContext, tv: TypeVector, lam):
    """Stable Frobenius ranks (a, b) of the two distinguished eigenspaces.

    a is the stable rank on the primary eigenspace, computed on the dual
    cover where its pairing partner is realized by regular differentials;
    b is the stable rank on the inverse eigenspace, computed on the cover
    itself.  The pair always lands in {(2,0), (0,2), (1,1), (0,0)}.
    """
    field, elt = _as_field_element(ctx, lam)
    _check_nondegenerate(field, elt)

    def rank_on(t: TypeVector) -> int:
        d, entries = _symbolic_cartier(ctx.p, t.m, t.a)
        spec = tuple(tuple(e.evaluate_in(field, elt) for e in row) for row in entries)
        return _stable_rank(field, d, spec)

    a = rank_on(tv.dual())
    b = rank_on(tv)
    if (a, b) not in _RANK_PAIRS:
        raise ConsistencyError("rank pair (%d, %d) is impossible" % (a, b))
    return a, b


def is_a_ordinary(ctx: PrimeContext, tv: TypeVector, lam) -> bool:
    """Whether the Cartier operator is bijective on the distinguished
    eigenspace (mixed types; equivalent to the Hasse invariant not vanishing)."""
    if tv.total != 2 * tv.m:
        raise ValueError("ordinariness is defined for mixed types only")
    field, elt = _as_field_element(ctx, lam)
    _check_nondegenerate(field, elt)
    d, entries = _symbolic_cartier(ctx.p, tv.m, tv.a)
    if d != 1:
        raise ConsistencyError("mixed type must have a one-dimensional eigenspace")
    value = entries[0][0].evaluate_in(field, elt)
    return not field.is_zero(value)
