"""Subgroup lattices of finite cyclic groups.

The subgroup of C_n of order d is named by d itself, so containment is
divisibility and intersection is gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class WeylGroup:
    """W_G(H) = G/H for the subgroup of order ``at_subgroup``."""

    at_subgroup: int
    weyl_order: int


@dataclass(frozen=True)
class SubgroupLattice:
    group_order: int

    def __post_init__(self):
        if not isinstance(self.group_order, int) or self.group_order < 1:
            raise ValueError(f"group order must be a positive integer, got {self.group_order!r}")

    @cached_property
    def subgroups(self) -> tuple[int, ...]:
        return tuple(divisors(self.group_order))

    def check(self, *ds: int) -> None:
        for d in ds:
            if not isinstance(d, int) or d < 1 or self.group_order % d:
                raise ValueError(f"{d!r} is not a subgroup order of C_{self.group_order}")

    def contains(self, K: int, H: int) -> bool:
        """True when K is a subgroup of H."""
        self.check(K, H)
        return H % K == 0

    def intersect(self, K: int, H: int) -> int:
        self.check(K, H)
        return gcd(K, H)

    def join(self, K: int, H: int) -> int:
        self.check(K, H)
        return lcm(K, H)

    def index(self, K: int, H: int) -> int:
        if not self.contains(K, H):
            raise ValueError(f"{K} is not contained in {H}")
        return H // K

    def weyl(self, H: int) -> WeylGroup:
        self.check(H)
        return WeylGroup(H, self.group_order // H)

    def below(self, H: int) -> list[int]:
        return [K for K in self.subgroups if H % K == 0]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (K, H) with K < H maximal."""
        out = []
        for H in self.subgroups:
            for K in self.below(H):
                if K == H:
                    continue
                if not any(L not in (K, H) and L % K == 0 and H % L == 0 for L in self.subgroups):
                    out.append((K, H))
        return out

    @property
    def is_chain(self) -> bool:
        return len(prime_factors(self.group_order)) <= 1

    def name(self, d: int) -> str:
        if d == 1:
            return "e"
        if d == self.group_order:
            return "G"
        return f"C{d}"


def cyclic_lattice(n: int) -> SubgroupLattice:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclic_lattice needs n >= 1, got {n!r}")
    return SubgroupLattice(n)


def intersect(lat: SubgroupLattice, K: int, H: int) -> int:
    return lat.intersect(K, H)
