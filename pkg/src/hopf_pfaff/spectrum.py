"""Eigenvalue data of a diagonal contraction and its multiplicative relations.

A spectrum is either *exact* (positive rationals strictly between 0 and 1) or
*symbolic* (class labels; equal labels mean equal eigenvalues and distinct
classes are asserted to satisfy no multiplicative relation).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Optional, Sequence

from sympy import factorint

from . import intlattice
from .errors import DimensionMismatch, InvalidInput, NotMonomialCharacter, SymbolicModeUnsupported

EXACT = "exact"
SYMBOLIC = "symbolic"

CLASSICAL = "Classical"
NO_RESONANCE = "NoResonance"
WEAK_NO_RESONANCE = "WeakNoResonance"
GENERAL_RESONANT = "GeneralResonant"


@dataclass(frozen=True)
class Spectrum:
    n: int
    mode: str
    mu: Optional[tuple[Fraction, ...]] = None
    classes: Optional[tuple[Hashable, ...]] = None

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput(f"n must be at least 2, got {self.n}")
        if self.mode == EXACT:
            if self.mu is None or len(self.mu) != self.n:
                raise InvalidInput("exact spectrum needs exactly n eigenvalues")
            for i, m in enumerate(self.mu):
                if not isinstance(m, Fraction):
                    raise InvalidInput(f"mu[{i + 1}] is not a rational")
                if not 0 < m < 1:
                    raise InvalidInput(f"mu[{i + 1}] = {m} is not in the open interval (0, 1)")
        elif self.mode == SYMBOLIC:
            if self.classes is None or len(self.classes) != self.n:
                raise InvalidInput("symbolic spectrum needs exactly n class labels")
        else:
            raise InvalidInput(f"unknown spectrum mode {self.mode!r}")

    @classmethod
    def exact(cls, values: Sequence) -> Spectrum:
        return cls(len(values), EXACT, mu=tuple(Fraction(v) for v in values))

    @classmethod
    def symbolic(cls, classes: Sequence[Hashable]) -> Spectrum:
        return cls(len(classes), SYMBOLIC, classes=tuple(classes))

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def permuted(self, perm: Sequence[int]) -> Spectrum:
        """Spectrum whose i-th eigenvalue is the ``perm[i]``-th of this one."""
        if self.is_exact:
            return Spectrum.exact([self.mu[p] for p in perm])
        return Spectrum.symbolic([self.classes[p] for p in perm])

    def monomial_value(self, exponents: Sequence[int]) -> Fraction:
        """prod mu_i ** e_i, exact."""
        if not self.is_exact:
            raise SymbolicModeUnsupported("monomial values need an exact spectrum")
        out = Fraction(1)
        for m, e in zip(self.mu, exponents):
            if e:
                out *= m ** e
        return out

    @cached_property
    def _factorization(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        rows: dict[int, list[int]] = {}
        for i, m in enumerate(self.mu):
            for p, e in factorint(m.numerator).items():
                rows.setdefault(p, [0] * self.n)[i] += e
            for p, e in factorint(m.denominator).items():
                rows.setdefault(p, [0] * self.n)[i] -= e
        primes = tuple(sorted(rows))
        return primes, tuple(tuple(rows[p]) for p in primes)

    def prime_exponent_matrix(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """(primes, M) with ``M[j][i]`` the exponent of ``primes[j]`` in mu_i."""
        if not self.is_exact:
            raise SymbolicModeUnsupported("prime exponents need an exact spectrum")
        return self._factorization


@dataclass(frozen=True)
class RelationLattice:
    """Lattice of integer vectors r with prod mu_i ** r_i = 1, in HNF."""

    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def generated_by(cls, n: int, vectors) -> RelationLattice:
        return cls(n, intlattice.hnf(list(vectors), n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return lattice_member(self, v)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return intlattice.reduce_mod(self.basis, v)


@dataclass(frozen=True)
class HopfClass:
    """Resonance class. ``perm`` lists original (0-based) indices in normalized order."""

    tag: str
    r: Optional[int] = None
    perm: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.tag == WEAK_NO_RESONANCE:
            if self.r is None or self.perm is None or not 2 <= self.r <= len(self.perm) - 1:
                raise InvalidInput("weak no-resonance needs a block size 2 <= r <= n-1 and a permutation")

    @property
    def block(self) -> tuple[int, ...]:
        """Original indices of the repeated eigenvalue block (weak case only)."""
        return self.perm[: self.r] if self.tag == WEAK_NO_RESONANCE else ()


@dataclass(frozen=True)
class Character:
    """Line-bundle character b = prod mu_i ** exponents_i."""

    exponents: tuple[int, ...]
    value: Optional[Fraction] = None


def _unit_diff(n: int, i: int, j: int) -> tuple[int, ...]:
    v = [0] * n
    v[i] += 1
    v[j] -= 1
    return tuple(v)


def compute_relation_lattice(s: Spectrum) -> RelationLattice:
    if s.is_exact:
        _, M = s.prime_exponent_matrix()
        return RelationLattice(s.n, intlattice.integer_kernel(M, s.n))
    first: dict[Hashable, int] = {}
    gens = []
    for i, c in enumerate(s.classes):
        if c in first:
            gens.append(_unit_diff(s.n, i, first[c]))
        else:
            first[c] = i
    return RelationLattice.generated_by(s.n, gens)


def lattice_member(L: RelationLattice, v: Sequence[int]) -> bool:
    if len(v) != L.n:
        raise DimensionMismatch(f"vector of length {len(v)} tested against a lattice in Z^{L.n}")
    return intlattice.is_member(L.basis, v)


def equality_classes(L: RelationLattice) -> list[tuple[int, ...]]:
    """Indices grouped by e_i - e_j in L, ordered by first index."""
    groups: list[list[int]] = []
    for i in range(L.n):
        for g in groups:
            if lattice_member(L, _unit_diff(L.n, i, g[0])):
                g.append(i)
                break
        else:
            groups.append([i])
    return [tuple(g) for g in groups]


def _block_lattice(n: int, block: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return intlattice.hnf([_unit_diff(n, i, block[0]) for i in block[1:]], n)


def classify(s: Spectrum, L: Optional[RelationLattice] = None) -> HopfClass:
    if L is None:
        L = compute_relation_lattice(s)
    n = s.n
    if L.rank == 0:
        return HopfClass(NO_RESONANCE)
    if L.basis == _block_lattice(n, range(n)):
        return HopfClass(CLASSICAL)
    for group in equality_classes(L):
        if 2 <= len(group) <= n - 1 and L.basis == _block_lattice(n, group):
            rest = tuple(i for i in range(n) if i not in group)
            return HopfClass(WEAK_NO_RESONANCE, r=len(group), perm=tuple(group) + rest)
    return HopfClass(GENERAL_RESONANT)


def character_from_exponents(s: Spectrum, exponents: Sequence[int]) -> Character:
    if len(exponents) != s.n:
        raise DimensionMismatch(f"character has {len(exponents)} exponents, spectrum has n={s.n}")
    m = tuple(int(e) for e in exponents)
    return Character(m, s.monomial_value(m) if s.is_exact else None)


def character_from_value(s: Spectrum, value, L: Optional[RelationLattice] = None) -> Character:
    """Solve prod mu_i ** m_i = value over the integers.

    The returned exponents are the canonical representative modulo the relation
    lattice. Raises ``NotMonomialCharacter`` if no integer solution exists, in
    which case every section space with this character is zero.
    """
    if not s.is_exact:
        raise SymbolicModeUnsupported("character values can only be resolved for exact spectra")
    value = Fraction(value)
    if value <= 0:
        raise InvalidInput(f"character value must be a positive rational, got {value}")
    primes, M = s.prime_exponent_matrix()
    target: dict[int, int] = {p: 0 for p in primes}
    for p, e in factorint(value.numerator).items():
        target[p] = target.get(p, 0) + e
    for p, e in factorint(value.denominator).items():
        target[p] = target.get(p, 0) - e
    if any(e for p, e in target.items() if p not in primes):
        raise NotMonomialCharacter(f"{value} is not a monomial in the eigenvalues")
    m = intlattice.solve_integer(M, [target[p] for p in primes], s.n)
    if m is None:
        raise NotMonomialCharacter(f"{value} is not a monomial in the eigenvalues")
    if L is None:
        L = compute_relation_lattice(s)
    m = L.reduce(m)
    return Character(m, value)


def characters_equivalent(L: RelationLattice, a: Character, b: Character) -> bool:
    return lattice_member(L, [x - y for x, y in zip(a.exponents, b.exponents)])
