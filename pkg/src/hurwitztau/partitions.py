"""Integer partitions and the Riemann-Hurwitz bookkeeping built on them."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError


class Partition:
    """A weakly decreasing tuple of positive integers.

    Labels both ramification profiles (conjugacy classes of S_N) and
    irreducible characters / Schur functions.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise DomainError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            parts = tuple(sorted(parts, reverse=True))
        self.parts = parts

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def colength(self) -> int:
        """|lambda| - ell(lambda), the branching defect."""
        return self.weight - self.length

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def aut_order(self) -> int:
        out = 1
        for m in self.multiplicities().values():
            out *= factorial(m)
        return out

    def z_order(self) -> int:
        """z_mu = prod_i i^{m_i} m_i!; |class| = N!/z_mu."""
        out = 1
        for i, m in self.multiplicities().items():
            out *= i**m * factorial(m)
        return out

    def contents(self) -> list[int]:
        """Multiset {j - i : (i, j) a cell}, rows and columns 1-based."""
        return [j - i for i, p in enumerate(self.parts, start=1) for j in range(1, p + 1)]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def frobenius(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Frobenius coordinates (a_1..a_r | b_1..b_r): arm and leg lengths on the diagonal."""
        conj = self.conjugate().parts
        arms, legs = [], []
        for i, p in enumerate(self.parts, start=1):
            if p < i:
                break
            arms.append(p - i)
            legs.append(conj[i - 1] - i)
        return tuple(arms), tuple(legs)

    def remove_first_part(self) -> tuple[int, "Partition"]:
        return self.parts[0], Partition(self.parts[1:])

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return self.parts < other.parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self):
        return f"Partition{self.parts}"


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, reverse lexicographic: (n) first, (1^n) last."""
    if n < 0:
        raise DomainError("cannot partition a negative integer")

    def gen(remaining: int, cap: int, prefix: tuple):
        if remaining == 0:
            yield Partition(prefix)
            return
        for p in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - p, p, prefix + (p,))

    return tuple(gen(n, n, ()))


def partitions_up_to(n: int) -> list[Partition]:
    out: list[Partition] = []
    for m in range(n + 1):
        out.extend(enumerate_partitions(m))
    return out


def colength(lam: Partition) -> int:
    return lam.colength()


def aut_and_z(lam: Partition) -> tuple[int, int]:
    return lam.aut_order(), lam.z_order()


def contents(lam: Partition) -> list[int]:
    return lam.contents()


def genus_of(mu: Partition, nu: Partition, d: int) -> tuple[Fraction, bool]:
    """Genus from 2 - 2g = ell(mu) + ell(nu) - d; admissible iff g is a
    nonnegative integer.  Requires |mu| = |nu|."""
    if mu.weight != nu.weight:
        raise DomainError("genus_of needs partitions of equal weight")
    g = Fraction(2 - mu.length - nu.length + d, 2)
    return g, g.denominator == 1 and g >= 0
