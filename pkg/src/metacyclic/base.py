"""Shared input objects: ramification type vectors and prime contexts."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .algebra import is_prime, primitive_root


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; results cannot be trusted."""


class UnresolvableTypeError(RuntimeError):
    """No branch-index permutation brings the type into computable position."""


@dataclass(frozen=True)
class TypeVector:
    """Ramification type (a_1, a_2, a_3, a_4) for an m-cyclic branch datum.

    Invariants: 0 < a_i < m, sum(a) == 0 mod m, gcd(m, a_1, ..., a_4) == 1.
    """

    m: int
    a: tuple

    def __post_init__(self):
        if self.m <= 1:
            raise ValueError("modulus m must exceed 1")
        a = tuple(self.a)
        object.__setattr__(self, "a", a)
        if len(a) != 4:
            raise ValueError("type vector must have exactly four entries")
        if not all(0 < ai < self.m for ai in a):
            raise ValueError("type entries must satisfy 0 < a_i < m")
        if sum(a) % self.m != 0:
            raise ValueError("type entries must sum to 0 mod m")
        if gcd(self.m, *a) != 1:
            raise ValueError("gcd(m, a_1, ..., a_4) must be 1")

    @property
    def total(self) -> int:
        return sum(self.a)

    def dual(self) -> "TypeVector":
        return TypeVector(self.m, tuple(self.m - ai for ai in self.a))

    def permuted(self, perm) -> "TypeVector":
        """Apply a 0-indexed permutation of the four branch indices."""
        return TypeVector(self.m, tuple(self.a[i] for i in perm))


@dataclass(frozen=True)
class PrimeContext:
    """A prime p == 1 mod m with deterministic root-of-unity choices.

    xi is the smallest primitive root mod p; zeta = xi^alpha has exact
    order m.  Recording both makes every downstream label reproducible.
    """

    p: int
    m: int
    alpha: int
    zeta: int
    xi: int

    @classmethod
    def create(cls, p: int, m: int) -> "PrimeContext":
        if not is_prime(p) or p <= 2:
            raise ValueError("p must be an odd prime")
        if m <= 1:
            raise ValueError("m must exceed 1")
        if (p - 1) % m != 0:
            raise ValueError("p must be congruent to 1 mod m")
        xi = primitive_root(p)
        alpha = (p - 1) // m
        zeta = pow(xi, alpha, p)
        return cls(p=p, m=m, alpha=alpha, zeta=zeta, xi=xi)

    def __post_init__(self):
        # zeta must have exact order m
        if pow(self.zeta, self.m, self.p) != 1:
            raise ValueError("zeta^m != 1")
        for k in range(1, self.m):
            if pow(self.zeta, k, self.p) == 1:
                raise ValueError("zeta has order below m")

    def zeta_power(self, i: int) -> int:
        return pow(self.zeta, i % self.m, self.p)

    def require_large_prime(self):
        """Group-theoretic classification needs p > 5."""
        if self.p <= 5:
            raise ValueError("this operation requires p > 5")
