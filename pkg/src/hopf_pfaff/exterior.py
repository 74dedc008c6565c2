"""Exact sparse polynomials and exterior calculus on C^n.

Coefficients live in Q(i) (``Gaussian``). Polynomials are sparse maps from
exponent tuples to coefficients, kept in descending graded-lex order so equal
objects print and serialize identically. Index tuples of forms are 0-based and
strictly increasing; the text and JSON layers shift to 1-based indices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import DimensionMismatch, InvalidInput, SymbolicModeUnsupported

Alpha = tuple[int, ...]
Idx = tuple[int, ...]


class Gaussian:
    """Gaussian rational a + b*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> Gaussian:
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (complex, float)):
            raise TypeError(f"inexact coefficient {x!r}; use Fraction or Gaussian")
        return cls(x)

    def __add__(self, other):
        if not isinstance(other, Gaussian):
            other = Gaussian.coerce(other)
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Gaussian):
            other = Gaussian.coerce(other)
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Gaussian.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Gaussian):
            if isinstance(other, (int, Fraction)):
                return Gaussian(self.re * other, self.im * other)
            return NotImplemented
        if not self.im and not other.im:
            return Gaussian(self.re * other.re)
        return Gaussian(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Gaussian.coerce(other)
        if not other:
            raise ZeroDivisionError("Gaussian division by zero")
        if not other.im:
            return Gaussian(self.re / other.re, self.im / other.re)
        d = other.re * other.re + other.im * other.im
        return self * Gaussian(other.re / d, -other.im / d)

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) / self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pow__(self, e: int):
        if e < 0:
            return Gaussian(1) / self ** (-e)
        out = Gaussian(1)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self) -> Gaussian:
        return Gaussian(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"


Scalar = Union[int, Fraction, Gaussian]
ONE = Gaussian(1)


def _grlex_desc(items):
    return sorted(items, key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)


def _monomial_str(alpha: Alpha) -> str:
    parts = []
    for i, a in enumerate(alpha):
        if a == 1:
            parts.append(f"z{i + 1}")
        elif a > 1:
            parts.append(f"z{i + 1}^{a}")
    return "*".join(parts)


class Poly:
    """Sparse polynomial in ``n`` variables over Q(i)."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Alpha, Scalar]] = None):
        self.n = n
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise InvalidInput(f"bad exponent vector {alpha} for {n} variables")
            c = Gaussian.coerce(c)
            if c:
                clean[alpha] = clean.get(alpha, Gaussian(0)) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = dict(_grlex_desc(clean.items()))

    @classmethod
    def _raw(cls, n: int, terms: dict) -> Poly:
        # terms must already be free of zero coefficients
        p = object.__new__(cls)
        p.n = n
        p._terms = dict(_grlex_desc(terms.items()))
        return p

    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: Scalar = 1) -> Poly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c: Scalar = 1) -> Poly:
        return cls(len(alpha), {tuple(alpha): c})

    @classmethod
    def var(cls, n: int, i: int) -> Poly:
        alpha = [0] * n
        alpha[i] = 1
        return cls.monomial(alpha)

    def terms(self) -> Iterator[tuple[Alpha, Gaussian]]:
        return iter(self._terms.items())

    def coefficient(self, alpha: Sequence[int]) -> Gaussian:
        return self._terms.get(tuple(alpha), Gaussian(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction, Gaussian)):
            return self == Poly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, tuple(self._terms.items())))

    def _check(self, other: Poly):
        if other.n != self.n:
            raise DimensionMismatch(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            s = out.get(alpha)
            s = c if s is None else s + c
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            out: dict = {}
            for a, c in self._terms.items():
                for b, d in other._terms.items():
                    key = tuple(x + y for x, y in zip(a, b))
                    s = out.get(key)
                    s = c * d if s is None else s + c * d
                    if s:
                        out[key] = s
                    else:
                        del out[key]
            return Poly._raw(self.n, out)
        if isinstance(other, (int, Fraction, Gaussian)):
            other = Gaussian.coerce(other)
            if not other:
                return Poly.zero(self.n)
            return Poly._raw(self.n, {a: c * other for a, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def diff(self, i: int) -> Poly:
        """Partial derivative in z_{i+1}."""
        out = {}
        for a, c in self._terms.items():
            if a[i]:
                b = a[:i] + (a[i] - 1,) + a[i + 1:]
                out[b] = c * a[i]
        return Poly._raw(self.n, out)

    def scale_vars(self, factors: Sequence[Fraction]) -> Poly:
        """Substitute z_i -> factors[i] * z_i."""
        out = {}
        for a, c in self._terms.items():
            w = Fraction(1)
            for f, e in zip(factors, a):
                if e:
                    w *= f ** e
            out[a] = c * w
        return Poly._raw(self.n, out)

    def evaluate(self, point: Sequence[Scalar]) -> Gaussian:
        pt = [Gaussian.coerce(x) for x in point]
        total = Gaussian(0)
        for a, c in self._terms.items():
            t = c
            for x, e in zip(pt, a):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def restrict_zero(self, zero_vars: Iterable[int]) -> Poly:
        """Restriction to the coordinate subspace where the given variables vanish."""
        zs = tuple(zero_vars)
        return Poly._raw(self.n, {a: c for a, c in self._terms.items() if not any(a[i] for i in zs)})

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> tuple[Alpha, Gaussian]:
        return next(iter(self._terms.items()))

    def degrees(self) -> set[int]:
        return {sum(a) for a in self._terms}

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def monomial_content(self) -> Alpha:
        """Exponent vector of the largest monomial dividing every term."""
        if not self._terms:
            return (0,) * self.n
        return tuple(min(col) for col in zip(*self._terms))

    def __repr__(self):
        return f"Poly({self.n}, {dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for a, c in self._terms.items():
            mono = _monomial_str(a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _merge_sign(I: Idx, J: Idx) -> int:
    inversions = sum(1 for a in I for b in J if a > b)
    return -1 if inversions % 2 else 1


class KForm:
    """Polynomial k-form sum_I g_I dz_I on C^n."""

    __slots__ = ("n", "k", "_terms")

    def __init__(self, n: int, k: int, terms: Optional[Mapping[Idx, Poly]] = None):
        if k < 0:
            raise InvalidInput(f"negative form degree {k}")
        self.n, self.k = n, k
        clean: dict = {}
        for idx, g in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != k or any(b <= a for a, b in zip(idx, idx[1:])) or any(not 0 <= i < n for i in idx):
                raise InvalidInput(f"index tuple {idx} is not strictly increasing in range for k={k}, n={n}")
            if not isinstance(g, Poly):
                g = Poly.constant(n, g)
            if g.n != n:
                raise DimensionMismatch(f"coefficient in {g.n} variables for a form on C^{n}")
            if g:
                clean[idx] = clean[idx] + g if idx in clean else g
                if not clean[idx]:
                    del clean[idx]
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, n: int, k: int, terms: dict) -> KForm:
        w = object.__new__(cls)
        w.n, w.k = n, k
        w._terms = dict(sorted((i, g) for i, g in terms.items() if g))
        return w

    @classmethod
    def zero(cls, n: int, k: int) -> KForm:
        return cls._raw(n, k, {})

    @classmethod
    def monomial(cls, n: int, idx: Sequence[int], alpha: Sequence[int], c: Scalar = 1) -> KForm:
        return cls(n, len(idx), {tuple(idx): Poly.monomial(alpha, c)})

    def terms(self) -> Iterator[tuple[Idx, Poly]]:
        return iter(self._terms.items())

    def coefficient(self, idx: Sequence[int]) -> Poly:
        return self._terms.get(tuple(idx), Poly.zero(self.n))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if not self._terms and not other._terms:
            return self.n == other.n
        return self.n == other.n and self.k == other.k and self._terms == other._terms

    def __hash__(self):
        if not self._terms:
            return hash((self.n, "zero form"))
        return hash((self.n, self.k, tuple(self._terms.items())))

    def _check(self, other: KForm):
        if self.n != other.n:
            raise DimensionMismatch(f"forms on C^{self.n} and C^{other.n}")
        if self.k != other.k and self._terms and other._terms:
            raise DimensionMismatch(f"cannot add a {self.k}-form and a {other.k}-form")

    def __add__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        self._check(other)
        k = self.k if self._terms else other.k
        out = dict(self._terms)
        for idx, g in other._terms.items():
            out[idx] = out[idx] + g if idx in out else g
        return KForm._raw(self.n, k, out)

    def __neg__(self):
        return KForm._raw(self.n, self.k, {i: -g for i, g in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Gaussian, Poly)):
            return KForm._raw(self.n, self.k, {i: g * other for i, g in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def map_coefficients(self, fn) -> KForm:
        return KForm._raw(self.n, self.k, {i: fn(i, g) for i, g in self._terms.items()})

    def __repr__(self):
        return f"KForm({self.n}, {self.k}, {dict(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for idx, g in self._terms.items():
            basis = "^".join(f"dz{i + 1}" for i in idx) or "1"
            coeff = str(g)
            if coeff == "1":
                parts.append(basis)
            elif len(g) == 1:
                parts.append(f"{coeff} {basis}")
            else:
                parts.append(f"({coeff}) {basis}")
        return " + ".join(parts)


def dz(n: int, *idx: int) -> KForm:
    """The constant form dz_{i1} ^ ... ^ dz_{ik} (0-based indices, any order)."""
    if len(set(idx)) != len(idx):
        return KForm.zero(n, len(idx))
    order = sorted(range(len(idx)), key=lambda t: idx[t])
    inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return KForm(n, len(idx), {tuple(sorted(idx)): Poly.constant(n, -1 if inversions % 2 else 1)})


def wedge(a: KForm, b: KForm) -> KForm:
    if a.n != b.n:
        raise DimensionMismatch(f"wedge of forms on C^{a.n} and C^{b.n}")
    out: dict = {}
    for I, f in a._terms.items():
        for J, g in b._terms.items():
            if set(I) & set(J):
                continue
            key = tuple(sorted(I + J))
            term = f * g
            if _merge_sign(I, J) < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return KForm._raw(a.n, a.k + b.k, out)


def ext_d(w: KForm) -> KForm:
    out: dict = {}
    for I, g in w._terms.items():
        for j in range(w.n):
            if j in I:
                continue
            dg = g.diff(j)
            if not dg:
                continue
            before = sum(1 for i in I if i < j)
            key = tuple(sorted(I + (j,)))
            term = -dg if before % 2 else dg
            out[key] = out[key] + term if key in out else term
    return KForm._raw(w.n, w.k + 1, out)


class PolyVectorField:
    """Polynomial vector field sum_i v_i d/dz_i."""

    __slots__ = ("n", "components")

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        if not comps:
            raise InvalidInput("vector field needs at least one component")
        n = len(comps)
        for c in comps:
            if c.n != n:
                raise DimensionMismatch(f"component in {c.n} variables for a field on C^{n}")
        self.n = n
        self.components = comps

    @classmethod
    def coordinate(cls, n: int, i: int, coeff: Optional[Poly] = None) -> PolyVectorField:
        comps = [Poly.zero(n)] * n
        comps[i] = coeff if coeff is not None else Poly.constant(n)
        return cls(comps)

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        if self.n != other.n:
            raise DimensionMismatch("vector fields on different spaces")
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return PolyVectorField([-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Gaussian, Poly)):
            return PolyVectorField([a * other for a in self.components])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __bool__(self):
        return any(self.components)

    def derive(self, g: Poly) -> Poly:
        """Directional derivative v(g)."""
        out = Poly.zero(self.n)
        for i, c in enumerate(self.components):
            if c:
                out = out + c * g.diff(i)
        return out

    def as_multivector(self) -> KForm:
        """The field as a degree-1 element of the alternating algebra on C^n."""
        return KForm._raw(self.n, 1, {(i,): c for i, c in enumerate(self.components)})

    def __repr__(self):
        return f"PolyVectorField({list(self.components)!r})"

    def __str__(self):
        parts = [f"({c}) d/dz{i + 1}" for i, c in enumerate(self.components) if c]
        return " + ".join(parts) or "0"


def interior(v: PolyVectorField, w: KForm) -> KForm:
    if v.n != w.n:
        raise DimensionMismatch(f"field on C^{v.n} contracted with a form on C^{w.n}")
    if w.k < 1:
        raise InvalidInput("interior product needs a form of degree >= 1")
    out: dict = {}
    for I, g in w._terms.items():
        for t, i in enumerate(I):
            vi = v.components[i]
            if not vi:
                continue
            key = I[:t] + I[t + 1:]
            term = vi * g
            if t % 2:
                term = -term
            out[key] = out[key] + term if key in out else term
    return KForm._raw(w.n, w.k - 1, out)


def contract_coordinates(J: Sequence[int], w: KForm) -> KForm:
    """Successive contraction of ``w`` with d/dz_j for j in J (in order)."""
    for j in J:
        w = interior(PolyVectorField.coordinate(w.n, j), w)
    return w


def lie_bracket(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    if v.n != w.n:
        raise DimensionMismatch(f"bracket of fields on C^{v.n} and C^{w.n}")
    return PolyVectorField([v.derive(wj) - w.derive(vj) for vj, wj in zip(v.components, w.components)])


def pullback_f(s, w: KForm) -> KForm:
    """Pullback under the contraction z -> (mu_1 z_1, ..., mu_n z_n)."""
    if not s.is_exact:
        raise SymbolicModeUnsupported("pullback needs an exact spectrum; use weight bookkeeping instead")
    if s.n != w.n:
        raise DimensionMismatch(f"spectrum of dimension {s.n} with a form on C^{w.n}")
    mu = s.mu

    def pull(I, g):
        lin = Fraction(1)
        for i in I:
            lin *= mu[i]
        return g.scale_vars(mu) * lin

    return w.map_coefficients(pull)


def index_tuples(n: int, k: int) -> list[Idx]:
    return list(combinations(range(n), k))
