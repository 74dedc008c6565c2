"""Twisted section spaces as the kernel of p0 = b*id - f^*.

For a diagonal contraction every monomial k-form z^alpha dz_I is an
eigenvector of f^* with eigenvalue mu^alpha * mu_I, so the kernel is spanned by
the monomial forms with mu^alpha * mu_I = b, i.e. with alpha + 1_I - m in the
relation lattice. ``solve_sections`` finds those monomials directly (closed
forms per resonance class, bounded weighted enumeration otherwise);
``brute_force_kernel`` is the independent linear-algebra oracle.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from . import _accel
from .errors import GeneralResonantUnsupported, InvalidInput, SymbolicModeUnsupported, SymbolicResonantUnsupported
from .exterior import Gaussian, KForm, Poly, pullback_f
from .spectrum import (
    CLASSICAL,
    GENERAL_RESONANT,
    NO_RESONANCE,
    WEAK_NO_RESONANCE,
    Character,
    HopfClass,
    RelationLattice,
    Spectrum,
    character_from_exponents,
    character_from_value,
    classify,
    compute_relation_lattice,
)

UNBOUNDED_CHARACTER = "UnboundedCharacter"
TOP_DEGREE = "k=n-1"

CASE_LABELS = {
    CLASSICAL: "classical case: coefficients homogeneous of degree m-k",
    NO_RESONANCE: "no-resonance case: monomial coefficients",
    WEAK_NO_RESONANCE: "weak no-resonance case: outer monomial times homogeneous block polynomial",
    GENERAL_RESONANT: "general resonant case: bounded weighted enumeration",
}


def thread_count() -> int:
    raw = os.environ.get("HOPF_PFAFF_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise InvalidInput(f"HOPF_PFAFF_THREADS must be an integer, got {raw!r}")
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class SectionProblem:
    spectrum: Spectrum
    k: int
    character: Character
    lattice: RelationLattice
    hopf_class: HopfClass

    @classmethod
    def create(cls, spectrum: Spectrum, k: int, character: Union[Character, Sequence[int], None] = None,
               *, value=None) -> SectionProblem:
        n = spectrum.n
        if n < 3:
            raise InvalidInput(f"section spaces are only computed for n >= 3 (got n={n})")
        if not 1 <= k <= n - 1:
            raise InvalidInput(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
        lattice = compute_relation_lattice(spectrum)
        if character is None:
            if value is None:
                raise InvalidInput("a character (exponents or value) is required")
            character = character_from_value(spectrum, value, lattice)
        elif not isinstance(character, Character):
            character = character_from_exponents(spectrum, character)
        elif len(character.exponents) != n:
            raise InvalidInput(f"character has {len(character.exponents)} exponents, spectrum has n={n}")
        elif spectrum.is_exact:
            expected = spectrum.monomial_value(character.exponents)
            if character.value is not None and character.value != expected:
                raise InvalidInput(f"character value {character.value} != prod mu^m = {expected}")
            character = Character(character.exponents, expected)
        return cls(spectrum, k, character, lattice, classify(spectrum, lattice))

    @property
    def n(self) -> int:
        return self.spectrum.n

    @property
    def m(self) -> tuple[int, ...]:
        return self.character.exponents


class MonomialSolution(NamedTuple):
    idx: tuple[int, ...]
    alpha: tuple[int, ...]

    def form(self, c=1) -> KForm:
        return KForm.monomial(len(self.alpha), self.idx, self.alpha, c)

    def weight(self) -> tuple[int, ...]:
        """alpha + 1_I."""
        w = list(self.alpha)
        for i in self.idx:
            w[i] += 1
        return tuple(w)


@dataclass(frozen=True)
class SectionBasis:
    problem: SectionProblem
    solutions: tuple[MonomialSolution, ...]
    flags: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.solutions)

    @property
    def case(self) -> str:
        return CASE_LABELS[self.problem.hopf_class.tag]

    def forms(self) -> list[KForm]:
        return [s.form() for s in self.solutions]


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative ints summing to ``total`` (lex descending)."""
    if total < 0:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def p0_apply(s: Spectrum, b: Union[Character, Fraction, int], w: KForm) -> KForm:
    """b * w - f^* w."""
    if not s.is_exact:
        raise SymbolicModeUnsupported("p0 needs an exact spectrum")
    if isinstance(b, Character):
        if b.value is None:
            b = s.monomial_value(b.exponents)
        else:
            b = b.value
    return w * Fraction(b) - pullback_f(s, w)


def _indicator(n: int, idx: Sequence[int]) -> tuple[int, ...]:
    v = [0] * n
    for i in idx:
        v[i] = 1
    return tuple(v)


def _offset(p: SectionProblem, idx) -> tuple[int, ...]:
    """m - 1_I: the target weight for alpha."""
    return tuple(m - e for m, e in zip(p.m, _indicator(p.n, idx)))


def _closed_form(p: SectionProblem, idx: tuple[int, ...]) -> list[tuple[int, ...]]:
    tag = p.hopf_class.tag
    n = p.n
    w = _offset(p, idx)
    if tag == NO_RESONANCE:
        return [w] if min(w) >= 0 else []
    if tag == CLASSICAL:
        return list(compositions(sum(w), n))
    block = p.hopf_class.block
    outer = [i for i in range(n) if i not in block]
    if any(w[j] < 0 for j in outer):
        return []
    out = []
    for comp in compositions(sum(w[i] for i in block), len(block)):
        alpha = list(w)
        for i, a in zip(block, comp):
            alpha[i] = a
        out.append(tuple(alpha))
    return out


def log_weight_bounds(s: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    """Outward-rounded bounds on c_i = log(1/mu_i) > 0."""
    c = np.array([math.log(m.denominator) - math.log(m.numerator) for m in s.mu], dtype=np.float64)
    lo = c * (1 - 1e-9) - 1e-15
    hi = c * (1 + 1e-9) + 1e-15
    if np.any(lo <= 0):
        raise InvalidInput("an eigenvalue is too close to 1 for certified weight bounds")
    return lo, hi


def _budget(w: Sequence[int], lo: np.ndarray, hi: np.ndarray) -> float:
    """Upper bound on sum w_i c_i, which equals sum alpha_i c_i on solutions."""
    wa = np.asarray(w, dtype=np.float64)
    total = float(np.sum(np.where(wa > 0, wa * hi, wa * lo)))
    return total + 1e-9 * (1.0 + float(np.sum(np.abs(wa) * hi)))


def _mu_product(s: Spectrum, idx) -> Fraction:
    out = Fraction(1)
    for i in idx:
        out *= s.mu[i]
    return out


def _enumerate_resonant(p: SectionProblem, tuples: list[tuple[int, ...]]) -> dict:
    s = p.spectrum
    _, M = s.prime_exponent_matrix()
    M = np.array(M, dtype=np.int64).reshape(-1, s.n)
    lo, hi = log_weight_bounds(s)

    def run(idx):
        w = _offset(p, idx)
        budget = _budget(w, lo, hi)
        if budget < 0:
            return idx, []
        caps = np.floor(budget / lo).astype(np.int64)
        target = M @ np.array(w, dtype=np.int64)
        found = _accel.enumerate_weighted(M, target, lo, budget, caps)
        return idx, [tuple(int(x) for x in row) for row in found]

    workers = min(thread_count(), len(tuples)) or 1
    if workers == 1:
        return dict(map(run, tuples))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return dict(pool.map(run, tuples))


def solve_sections(p: SectionProblem) -> SectionBasis:
    """Monomial basis of ker p0 = H^0(X, Omega^k (x) L_b)."""
    s, tag = p.spectrum, p.hopf_class.tag
    if tag == GENERAL_RESONANT and not s.is_exact:
        raise SymbolicResonantUnsupported("resonant symbolic spectra carry no finite relation data to enumerate")
    tuples = list(combinations(range(p.n), p.k))
    flags = []
    if p.k == p.n - 1:
        flags.append(TOP_DEGREE)
    if s.is_exact and all(p.character.value > _mu_product(s, idx) for idx in tuples):
        flags.append(UNBOUNDED_CHARACTER)
    if tag == GENERAL_RESONANT:
        found = _enumerate_resonant(p, tuples)
    else:
        found = {idx: _closed_form(p, idx) for idx in tuples}
    sols = sorted(MonomialSolution(idx, alpha) for idx in tuples for alpha in found[idx])
    return SectionBasis(p, tuple(sols), tuple(flags))


@dataclass(frozen=True)
class CharacterVerdict:
    positive: bool
    reason: str
    dim: Optional[int] = None


def validate_character(p: SectionProblem) -> CharacterVerdict:
    """Decide dim > 0 from the structural conditions on the exponents."""
    tag, m, k, n = p.hopf_class.tag, p.m, p.k, p.n
    if tag == CLASSICAL:
        deg = sum(m)
        if deg >= k:
            return CharacterVerdict(True, f"b = mu^{deg} with {deg} >= k = {k}")
        return CharacterVerdict(False, f"b = mu^{deg} with {deg} < k = {k}")
    if tag == NO_RESONANCE:
        if min(m) < 0:
            return CharacterVerdict(False, "an exponent of b is negative")
        support = sum(1 for x in m if x >= 1)
        if support >= k:
            return CharacterVerdict(True, f"{support} exponents are >= 1 (need k = {k})")
        return CharacterVerdict(False, f"only {support} exponents are >= 1 (need k = {k})")
    if tag == WEAK_NO_RESONANCE:
        block = p.hopf_class.block
        outer = [j for j in range(n) if j not in block]
        t = sum(m[i] for i in block)
        if t < 0 or any(m[j] < 0 for j in outer):
            return CharacterVerdict(False, "b has a negative block degree or outer exponent")
        support = sum(1 for j in outer if m[j] >= 1)
        # s block indices in I need s <= r, s <= t and k - s <= support
        lo, hi = max(0, k - support), min(len(block), t, k)
        if lo <= hi:
            return CharacterVerdict(True, f"block degree t = {t}; {support} outer exponents >= 1; "
                                          f"tuples with {lo}..{hi} block indices qualify")
        return CharacterVerdict(False, f"block degree t = {t} and {support} outer exponents >= 1 "
                                       f"cannot fill a {k}-tuple (block size {len(block)})")
    basis = solve_sections(p)
    return CharacterVerdict(basis.dim > 0, "resonant spectrum: decided by enumeration", basis.dim)


def oracle_degree_bound(p: SectionProblem) -> int:
    """Total degree D such that every kernel monomial has |alpha| <= D."""
    s = p.spectrum
    if not s.is_exact:
        raise SymbolicModeUnsupported("the degree bound needs an exact spectrum")
    lo, hi = log_weight_bounds(s)
    best = 0
    for idx in combinations(range(p.n), p.k):
        budget = _budget(_offset(p, idx), lo, hi)
        if budget >= 0:
            best = max(best, int(math.floor(budget / float(lo.min()))))
    return best


def _nullspace(rows: list[dict], ncols: int) -> list[dict]:
    """Exact nullspace of a sparse matrix over Q(i), one dict per basis vector."""
    pivots: dict[int, dict] = {}
    for row in rows:
        r = dict(row)
        for col in sorted(set(r) & set(pivots)):
            c = r.get(col)
            if c:
                for j, v in pivots[col].items():
                    nv = r.get(j, Gaussian(0)) - c * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        r = {j: v for j, v in r.items() if v}
        if not r:
            continue
        col = min(r)
        inv = Gaussian(1) / r[col]
        r = {j: v * inv for j, v in r.items()}
        for other in pivots.values():
            c = other.get(col)
            if c:
                for j, v in r.items():
                    nv = other.get(j, Gaussian(0)) - c * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        pivots[col] = r
    kernel = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Gaussian(1)}
        for col, r in pivots.items():
            c = r.get(f)
            if c:
                vec[col] = -c
        kernel.append(vec)
    return kernel


def brute_force_kernel(p: SectionProblem, max_degree: Optional[int] = None) -> SectionBasis:
    """Kernel of p0 on all monomial k-forms with |alpha| <= max_degree, by elimination."""
    s = p.spectrum
    if not s.is_exact:
        raise SymbolicModeUnsupported("the oracle needs an exact spectrum")
    if max_degree is None:
        max_degree = oracle_degree_bound(p)
    n = p.n
    columns = []
    for idx in combinations(range(n), p.k):
        for d in range(max_degree + 1):
            for alpha in compositions(d, n):
                columns.append((idx, alpha))
    row_of: dict = {}
    rows: list[dict] = []
    for j, (idx, alpha) in enumerate(columns):
        image = p0_apply(s, p.character, KForm.monomial(n, idx, alpha))
        for I, g in image.terms():
            for beta, c in g.terms():
                key = (I, beta)
                if key not in row_of:
                    row_of[key] = len(rows)
                    rows.append({})
                rows[row_of[key]][j] = c
    sols = []
    for vec in _nullspace(rows, len(columns)):
        if len(vec) != 1:
            raise ArithmeticError("p0 kernel vector is not a single monomial form")
        (j,) = vec
        sols.append(MonomialSolution(*columns[j]))
    return SectionBasis(p, tuple(sorted(sols)))


def _symbol(sol: MonomialSolution) -> str:
    return "c[{}|{}]".format(",".join(str(i + 1) for i in sol.idx), ",".join(map(str, sol.alpha)))


@dataclass(frozen=True)
class GeneralSection:
    """Parametric section: one free coefficient symbol per basis monomial."""

    basis: SectionBasis
    symbols: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(_symbol(sol) for sol in self.basis.solutions))

    @property
    def problem(self) -> SectionProblem:
        return self.basis.problem

    def terms(self) -> dict[tuple[int, ...], list[tuple[tuple[int, ...], str]]]:
        out: dict = {}
        for sol, sym in zip(self.basis.solutions, self.symbols):
            out.setdefault(sol.idx, []).append((sol.alpha, sym))
        return out

    def specialize(self, values: Union[Mapping[str, object], Sequence, None] = None) -> KForm:
        """Substitute field values for the symbols (missing symbols default to 1)."""
        if values is None:
            vals = [1] * len(self.symbols)
        elif isinstance(values, Mapping):
            vals = [values.get(sym, 1) for sym in self.symbols]
        else:
            vals = list(values)
            if len(vals) != len(self.symbols):
                raise InvalidInput(f"expected {len(self.symbols)} values, got {len(vals)}")
        n, k = self.problem.n, self.problem.k
        out = KForm.zero(n, k)
        for sol, c in zip(self.basis.solutions, vals):
            out = out + sol.form(c)
        return out

    def block_structure(self) -> dict[tuple[int, ...], tuple[tuple[int, ...], int, list[tuple[int, ...]]]]:
        """Per index tuple: (outer exponents, block degree, block exponent vectors).

        Only meaningful for the weak no-resonance case; the outer part is the
        common exponent on indices outside the repeated block.
        """
        block = self.problem.hopf_class.block
        outer = [j for j in range(self.problem.n) if j not in block]
        out = {}
        for idx, entries in self.terms().items():
            outers = {tuple(a[j] for j in outer) for a, _ in entries}
            degrees = {sum(a[i] for i in block) for a, _ in entries}
            if len(outers) != 1 or len(degrees) != 1:
                raise ArithmeticError(f"coefficient of dz{idx} does not factor over the block")
            out[idx] = (outers.pop(), degrees.pop(), [tuple(a[i] for i in block) for a, _ in entries])
        return out

    def __str__(self):
        if not self.symbols:
            return "0"
        parts = []
        for idx, entries in self.terms().items():
            poly = " + ".join(f"{sym}*{_mono(a)}" if any(a) else sym for a, sym in entries)
            basis = "^".join(f"dz{i + 1}" for i in idx)
            parts.append(f"({poly}) {basis}" if len(entries) > 1 else f"{poly} {basis}")
        return " + ".join(parts)


def _mono(alpha) -> str:
    return str(Poly.monomial(alpha))


def general_section(p: SectionProblem) -> GeneralSection:
    if p.hopf_class.tag == GENERAL_RESONANT:
        raise GeneralResonantUnsupported("no closed-form general section for resonant spectra; use solve_sections")
    return GeneralSection(solve_sections(p))
