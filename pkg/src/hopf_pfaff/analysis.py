"""Pfaff-system analysis of polynomial k-forms.

Singular loci of monomial-coefficient forms are computed exactly as unions of
coordinate strata. For other coefficients the verdict is probabilistic:
coordinate strata are tested by random sampling and codimension-one
components by restricting to random lines and taking univariate gcds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional, Sequence, Union

from .errors import DegenerateGenerators, DimensionMismatch, InvalidInput, WrongClass, ZeroForm
from .exterior import (
    Gaussian,
    KForm,
    Poly,
    PolyVectorField,
    contract_coordinates,
    ext_d,
    lie_bracket,
    wedge,
)
from .sections import CASE_LABELS, TOP_DEGREE, SectionProblem, general_section, p0_apply
from .spectrum import (
    CLASSICAL,
    NO_RESONANCE,
    WEAK_NO_RESONANCE,
    Character,
    HopfClass,
    RelationLattice,
    Spectrum,
    classify,
    compute_relation_lattice,
    lattice_member,
)

SAMPLES_PER_STRATUM = 64
RANDOM_LINES = 3


@dataclass(frozen=True, order=True)
class CoordinateStratum:
    """{z_i = 0 for i in zero_set} minus the origin (0-based indices)."""

    zero_set: tuple[int, ...]

    def __post_init__(self):
        if not self.zero_set:
            raise InvalidInput("a coordinate stratum needs a nonempty zero set")

    @property
    def codim(self) -> int:
        return len(self.zero_set)

    def __str__(self):
        return "{" + "=".join(f"z{i + 1}" for i in self.zero_set) + "=0}"


@dataclass(frozen=True)
class ProbabilisticVerdict:
    """Singular-set verdict for forms with non-monomial coefficients.

    ``strata`` are the maximal coordinate strata on which every coefficient
    vanished at all sampled points; ``hypersurface`` records a common zero of
    the non-monomial factors found on a random line. Components of codimension
    two or more that are not coordinate strata are not searched for.
    """

    strata: tuple[CoordinateStratum, ...]
    hypersurface: bool
    samples: int
    lines: int

    @property
    def sing_codim(self) -> Optional[int]:
        if self.hypersurface:
            return 1
        return min((s.codim for s in self.strata), default=None)


SingularLocus = Union[tuple[CoordinateStratum, ...], ProbabilisticVerdict]


@dataclass(frozen=True)
class CompactLeaf:
    """The leaf {z_I = 0} minus the origin, modulo the contraction."""

    zero_coords: tuple[int, ...]
    n: int

    @property
    def dim(self) -> int:
        return self.n - len(self.zero_coords)

    def __str__(self):
        eqs = "=".join(f"z{i + 1}" for i in self.zero_coords)
        return f"{{{eqs}=0}}\\{{0}} / <f>  (Hopf manifold of dimension {self.dim})"


@dataclass(frozen=True)
class PfaffReport:
    k: int
    n: int
    character: Optional[Character]
    singular_strata: SingularLocus
    sing_codim: Optional[int]
    is_regular: bool
    is_decomposable: bool
    is_integrable: Optional[bool]
    compact_leaf: Optional[CompactLeaf] = None
    hopf_class: Optional[HopfClass] = None
    equivariant: Optional[bool] = None
    torus_invariant: Optional[bool] = None
    flags: tuple[str, ...] = ()
    form: Optional[KForm] = field(default=None, compare=False)

    def __post_init__(self):
        if self.is_integrable and not self.is_decomposable:
            raise ArithmeticError("integrable form reported as non-decomposable")
        if self.exact_locus and self.is_regular != (self.sing_codim is None):
            raise ArithmeticError("regularity disagrees with the singular strata")

    @property
    def exact_locus(self) -> bool:
        return not isinstance(self.singular_strata, ProbabilisticVerdict)

    @property
    def case(self) -> Optional[str]:
        return CASE_LABELS.get(self.hopf_class.tag) if self.hopf_class else None


def _require_nonzero(w: KForm):
    if not w:
        raise ZeroForm("the zero form has no singular locus")


def _minimal_sets(sets) -> list[frozenset]:
    out: list[frozenset] = []
    for s in sorted(set(sets), key=len):
        if not any(t <= s for t in out):
            out.append(s)
    return out


def monomial_supports(w: KForm) -> Optional[list[frozenset]]:
    """Variable supports of the coefficients, or None if one is not a monomial."""
    supports = []
    for _, g in w.terms():
        if not g.is_monomial():
            return None
        alpha, _ = g.leading()
        supports.append(frozenset(i for i, a in enumerate(alpha) if a))
    return supports


def _strata_from_supports(supports: list[frozenset], n: int) -> tuple[CoordinateStratum, ...]:
    # Each coefficient vanishes on the union of {z_i = 0}, i in its support; the
    # common zero set is the union over choice functions, kept minimal as we go.
    current = [frozenset()]
    for supp in supports:
        if not supp:
            return ()
        current = _minimal_sets(s | {i} for s in current for i in supp)
    return tuple(sorted(CoordinateStratum(tuple(sorted(s))) for s in current if len(s) < n))


def _random_gaussian(rng: random.Random) -> Gaussian:
    return Gaussian(rng.randint(-97, 97), rng.randint(-97, 97))


def _vanishes_on_stratum(polys: Sequence[Poly], zero_set: Sequence[int], n: int, rng: random.Random) -> bool:
    for _ in range(SAMPLES_PER_STRATUM):
        point = [Gaussian(0) if i in zero_set else _random_gaussian(rng) for i in range(n)]
        if any(g.evaluate(point) for g in polys):
            return False
    return True


def _divide_monomial(g: Poly, beta: Sequence[int]) -> Poly:
    return Poly(g.n, {tuple(a - b for a, b in zip(alpha, beta)): c for alpha, c in g.terms()})


# univariate polynomials over Q(i): coefficient lists, lowest degree first

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _umul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [Gaussian(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return _trim(out)


def _umod(p: list, q: list) -> list:
    p = list(p)
    lead = q[-1]
    while len(p) >= len(q):
        c = p[-1] / lead
        shift = len(p) - len(q)
        for i, b in enumerate(q):
            p[shift + i] = p[shift + i] - c * b
        _trim(p)
    return p


def _ugcd(p: list, q: list) -> list:
    while q:
        p, q = q, _umod(p, q)
    return p


def _restrict_to_line(g: Poly, base: Sequence[Gaussian], direction: Sequence[Gaussian]) -> list:
    out: list = []
    for alpha, c in g.terms():
        term = [c]
        for a, b, e in zip(base, direction, alpha):
            for _ in range(e):
                term = _umul(term, [a, b])
        width = max(len(out), len(term))
        out = [(out[i] if i < len(out) else Gaussian(0)) + (term[i] if i < len(term) else Gaussian(0))
               for i in range(width)]
    return _trim(out)


def singular_locus(w: KForm, seed: int = 0) -> SingularLocus:
    """Maximal coordinate strata of Sing(w) on C^n minus the origin."""
    _require_nonzero(w)
    n = w.n
    supports = monomial_supports(w)
    if supports is not None:
        return _strata_from_supports(supports, n)

    rng = random.Random(seed)
    coeffs = [g for _, g in w.terms()]
    contents = [g.monomial_content() for g in coeffs]
    factors = [_divide_monomial(g, beta) for g, beta in zip(coeffs, contents)]
    mono_supp = [frozenset(i for i, a in enumerate(beta) if a) for beta in contents]
    found: list[frozenset] = []
    for size in range(1, n):
        for S in combinations(range(n), size):
            fs = frozenset(S)
            if any(t <= fs for t in found):
                continue
            # coefficients whose monomial factor already vanishes need no samples
            rest = [h for h, supp in zip(factors, mono_supp) if not supp & fs]
            if not rest or _vanishes_on_stratum(rest, S, n, rng):
                found.append(fs)
    hypersurface = False
    for _ in range(RANDOM_LINES):
        base = [_random_gaussian(rng) for _ in range(n)]
        direction = [_random_gaussian(rng) for _ in range(n)]
        g = []
        for h in factors:
            g = _ugcd(g, _restrict_to_line(h, base, direction)) if g else _restrict_to_line(h, base, direction)
        if len(g) > 1:
            hypersurface = True
            break
    strata = tuple(sorted(CoordinateStratum(tuple(sorted(s))) for s in found))
    return ProbabilisticVerdict(strata, hypersurface, SAMPLES_PER_STRATUM, RANDOM_LINES)


def brute_force_strata(w: KForm) -> tuple[CoordinateStratum, ...]:
    """Independent check for monomial forms: scan every coordinate subspace."""
    supports = monomial_supports(w)
    if supports is None:
        raise InvalidInput("brute-force strata need monomial coefficients")
    hits = [frozenset(S) for size in range(1, w.n) for S in combinations(range(w.n), size)
            if all(supp & set(S) for supp in supports)]
    return tuple(sorted(CoordinateStratum(tuple(sorted(s))) for s in _minimal_sets(hits)))


def _codim_of(locus: SingularLocus) -> Optional[int]:
    if isinstance(locus, ProbabilisticVerdict):
        return locus.sing_codim
    return min((s.codim for s in locus), default=None)


def is_regular(w: KForm) -> bool:
    """True iff no coefficient-common zero lies in C^n minus the origin.

    Exact for monomial coefficients; otherwise means "no singular point found".
    """
    _require_nonzero(w)
    return _codim_of(singular_locus(w)) is None


def is_decomposable(w: KForm) -> bool:
    """Plucker test: (i_{d_J} w) ^ w = 0 for all (k-1)-tuples J."""
    k, n = w.k, w.n
    if not 1 <= k <= n:
        raise InvalidInput(f"decomposability needs 1 <= k <= n, got k={k}")
    if k in (1, n - 1, n) or not w:
        return True
    return all(not wedge(contract_coordinates(J, w), w) for J in combinations(range(n), k - 1))


def is_integrable(w: KForm) -> Optional[bool]:
    """Frobenius test (i_{d_J} w) ^ dw = 0; ``None`` when w is not decomposable."""
    if not is_decomposable(w):
        return None
    dw = ext_d(w)
    if not dw:
        return True
    return all(not wedge(contract_coordinates(J, w), dw) for J in combinations(range(w.n), w.k - 1))


def check_equivariance(s: Spectrum, b: Character, w: KForm, L: Optional[RelationLattice] = None) -> bool:
    """f^* w = b w, checked by p0 (exact) or by exponent bookkeeping (symbolic)."""
    if s.n != w.n:
        raise DimensionMismatch(f"spectrum of dimension {s.n} with a form on C^{w.n}")
    if not w:
        return True
    if s.is_exact:
        return not p0_apply(s, b, w)
    if L is None:
        L = compute_relation_lattice(s)
    m = b.exponents
    for idx, g in w.terms():
        for alpha, _ in g.terms():
            weight = list(alpha)
            for i in idx:
                weight[i] += 1
            if not lattice_member(L, [x - y for x, y in zip(weight, m)]):
                return False
    return True


def _weights(w: KForm) -> list[tuple[int, ...]]:
    out = []
    for idx, g in w.terms():
        for alpha, _ in g.terms():
            weight = list(alpha)
            for i in idx:
                weight[i] += 1
            out.append(tuple(weight))
    return out


def torus_invariant(w: KForm) -> bool:
    """Every coefficient a single monomial and alpha + 1_I the same for all terms."""
    _require_nonzero(w)
    if any(not g.is_monomial() for _, g in w.terms()):
        return False
    return len(set(_weights(w))) == 1


def normal_exponents(hc: HopfClass, L: RelationLattice, m: Sequence[int]) -> tuple[int, ...]:
    """Readable representative: the block degree sits on the first block index."""
    n = len(m)
    if hc.tag == CLASSICAL:
        return (sum(m),) + (0,) * (n - 1)
    if hc.tag == WEAK_NO_RESONANCE:
        out = list(m)
        block = sorted(hc.block)
        for i in block:
            out[i] = 0
        out[block[0]] = sum(m[i] for i in block)
        return tuple(out)
    if hc.tag == NO_RESONANCE:
        return tuple(m)
    return L.reduce(m)


def recover_character(s: Spectrum, w: KForm, L: Optional[RelationLattice] = None) -> Optional[Character]:
    """Character b read off the exponent weights alpha + 1_I, if they all agree modulo L."""
    if not w:
        return None
    if L is None:
        L = compute_relation_lattice(s)
    weights = _weights(w)
    first = weights[0]
    for other in weights[1:]:
        if not lattice_member(L, [x - y for x, y in zip(other, first)]):
            return None
    m = normal_exponents(classify(s, L), L, first)
    return Character(m, s.monomial_value(m) if s.is_exact else None)


def _multivector(gens: Sequence[PolyVectorField]) -> KForm:
    out = gens[0].as_multivector()
    for v in gens[1:]:
        out = wedge(out, v.as_multivector())
    return out


def distribution_involutive(gens: Sequence[PolyVectorField]) -> bool:
    """[v_i, v_j] lies in the span of the generators at generic points."""
    if not gens:
        raise InvalidInput("need at least one generator")
    n = gens[0].n
    if any(v.n != n for v in gens):
        raise DimensionMismatch("generators live on different spaces")
    top = _multivector(gens)
    if not top:
        raise DegenerateGenerators("generators are linearly dependent at every point")
    for v, u in combinations(gens, 2):
        if wedge(lie_bracket(v, u).as_multivector(), top):
            return False
    return True


def _leaf_of(w: KForm) -> Optional[CompactLeaf]:
    if len(w) != 1:
        return None
    idx, g = next(w.terms())
    if g.degrees() != {0}:
        return None
    return CompactLeaf(idx, w.n)


def analyze(s: Spectrum, w: KForm, character: Optional[Character] = None, seed: int = 0) -> PfaffReport:
    if s.n != w.n:
        raise DimensionMismatch(f"spectrum of dimension {s.n} with a form on C^{w.n}")
    _require_nonzero(w)
    L = compute_relation_lattice(s)
    hc = classify(s, L)
    if character is None:
        character = recover_character(s, w, L)
    locus = singular_locus(w, seed)
    codim = _codim_of(locus)
    regular = codim is None
    decomposable = is_decomposable(w)
    integrable = is_integrable(w) if decomposable else None
    flags = []
    if w.k == w.n - 1:
        flags.append(TOP_DEGREE)
    if codim == 1:
        flags.append("sing_codim=1")
    if isinstance(locus, ProbabilisticVerdict):
        flags.append("probabilistic")
    return PfaffReport(
        k=w.k,
        n=w.n,
        character=character,
        singular_strata=locus,
        sing_codim=codim,
        is_regular=regular,
        is_decomposable=decomposable,
        is_integrable=integrable,
        compact_leaf=_leaf_of(w) if regular else None,
        hopf_class=hc,
        equivariant=check_equivariance(s, character, w, L) if character is not None else None,
        torus_invariant=torus_invariant(w),
        flags=tuple(flags),
        form=w,
    )


@dataclass(frozen=True)
class CharacterScan:
    exponents: tuple[int, ...]
    dim: int
    report: Optional[PfaffReport]

    @property
    def admissible(self) -> bool:
        """General member has singular set of codimension >= 2 (or none)."""
        return self.report is not None and (self.report.sing_codim is None or self.report.sing_codim >= 2)


def scan_characters(s: Spectrum, k: int) -> list[CharacterScan]:
    """Analyze the general member (all coefficients 1) for every m in {0,1}^n."""
    hc = classify(s)
    if hc.tag != NO_RESONANCE:
        raise WrongClass(f"regular systems are enumerated on no-resonance spectra only (got {hc.tag})")
    if not 1 <= k <= s.n - 2:
        raise WrongClass(f"regular systems are classified for 1 <= k <= n-2 only; k={k} with n={s.n} "
                         f"is excluded because the classification argument needs k+1 <= n-1")
    out = []
    for m in product((0, 1), repeat=s.n):
        p = SectionProblem.create(s, k, list(m))
        gs = general_section(p)
        if not gs.symbols:
            out.append(CharacterScan(m, 0, None))
            continue
        w = gs.specialize()
        out.append(CharacterScan(m, len(gs.symbols), analyze(s, w, p.character)))
    return out


def enumerate_regular_systems(s: Spectrum, k: int) -> list[PfaffReport]:
    """All characters in {0,1}^n whose sections contain a regular member.

    With monomial coefficients the zero set does not depend on the nonzero
    coefficient values, so the member with every coefficient 1 is regular iff
    some member is.
    """
    out = []
    for scan in scan_characters(s, k):
        rep = scan.report
        if rep is None or not rep.is_regular:
            continue
        if rep.compact_leaf is None:
            raise ArithmeticError(f"regular system for m={scan.exponents} is not a constant form: {rep.form}")
        out.append(rep)
    return sorted(out, key=lambda r: r.compact_leaf.zero_coords)
