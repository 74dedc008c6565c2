"""JSON wire formats. All indices are 1-based on the wire.

Rationals are ``{"num": .., "den": ..}`` with integer fields, or decimal
strings when a value does not fit in a signed 64-bit integer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .analysis import CompactLeaf, CoordinateStratum, PfaffReport, ProbabilisticVerdict
from .errors import InvalidInput
from .exterior import Gaussian, KForm, Poly
from .sections import GeneralSection, MonomialSolution, SectionBasis, SectionProblem
from .spectrum import Character, HopfClass, RelationLattice, Spectrum, character_from_exponents, character_from_value

NOT_APPLICABLE = "not applicable (non-decomposable)"
EMPTY = "empty"
_INT64 = 2**63


def _int_out(x: int):
    return x if -_INT64 <= x < _INT64 else str(x)


def _int_in(x, where: str) -> int:
    if isinstance(x, bool):
        raise InvalidInput(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise InvalidInput(f"{where}: expected an integer, got {x!r}")


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise InvalidInput(f"{where}: expected a JSON object")
    if key not in obj:
        raise InvalidInput(f"{where}: missing field {key!r}")
    return obj[key]


def rational_to_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": _int_out(q.numerator), "den": _int_out(q.denominator)}


def rational_from_json(obj, where: str = "rational") -> Fraction:
    num = _int_in(_field(obj, "num", where), f"{where}.num")
    den = _int_in(_field(obj, "den", where), f"{where}.den")
    if den == 0:
        raise InvalidInput(f"{where}.den: zero denominator")
    return Fraction(num, den)


def spectrum_to_json(s: Spectrum) -> dict:
    if s.is_exact:
        return {"n": s.n, "mode": "exact", "mu": [rational_to_json(m) for m in s.mu]}
    return {"n": s.n, "mode": "symbolic", "classes": list(s.classes)}


def spectrum_from_json(obj) -> Spectrum:
    n = _int_in(_field(obj, "n", "manifold"), "manifold.n")
    mode = _field(obj, "mode", "manifold")
    if mode == "exact":
        mu = _field(obj, "mu", "manifold")
        if not isinstance(mu, list) or len(mu) != n:
            raise InvalidInput(f"manifold.mu: expected a list of {n} rationals")
        return Spectrum(n, "exact", mu=tuple(rational_from_json(m, f"manifold.mu[{i + 1}]") for i, m in enumerate(mu)))
    if mode == "symbolic":
        classes = _field(obj, "classes", "manifold")
        if not isinstance(classes, list) or len(classes) != n:
            raise InvalidInput(f"manifold.classes: expected a list of {n} labels")
        return Spectrum(n, "symbolic", classes=tuple(classes))
    raise InvalidInput(f"manifold.mode: unknown mode {mode!r}")


def character_to_json(c: Character) -> dict:
    out: dict[str, Any] = {"exponents": list(c.exponents)}
    if c.value is not None:
        out["value"] = rational_to_json(c.value)
    return out


def character_from_json(obj, s: Spectrum) -> Character:
    if not isinstance(obj, dict):
        raise InvalidInput("character: expected a JSON object")
    if "exponents" in obj:
        exps = obj["exponents"]
        if not isinstance(exps, list):
            raise InvalidInput("character.exponents: expected a list")
        return character_from_exponents(s, [_int_in(e, f"character.exponents[{i + 1}]") for i, e in enumerate(exps)])
    if "value" in obj:
        return character_from_value(s, rational_from_json(obj["value"], "character.value"))
    raise InvalidInput("character: needs 'exponents' or 'value'")


def gaussian_to_json(c: Gaussian) -> dict:
    return {"re": rational_to_json(c.re), "im": rational_to_json(c.im)}


def kform_to_json(w: KForm) -> dict:
    terms = []
    for idx, g in w.terms():
        poly = [{"alpha": list(a), **gaussian_to_json(c)} for a, c in g.terms()]
        terms.append({"idx": [i + 1 for i in idx], "poly": poly})
    return {"n": w.n, "k": w.k, "terms": terms}


def kform_from_json(obj) -> KForm:
    n = _int_in(_field(obj, "n", "form"), "form.n")
    k = _int_in(_field(obj, "k", "form"), "form.k")
    terms = _field(obj, "terms", "form")
    if not isinstance(terms, list):
        raise InvalidInput("form.terms: expected a list")
    out = {}
    for t, term in enumerate(terms):
        where = f"form.terms[{t + 1}]"
        idx = tuple(_int_in(i, f"{where}.idx") - 1 for i in _field(term, "idx", where))
        coeffs = {}
        for j, mono in enumerate(_field(term, "poly", where)):
            w2 = f"{where}.poly[{j + 1}]"
            alpha = tuple(_int_in(a, f"{w2}.alpha") for a in _field(mono, "alpha", w2))
            re = rational_from_json(_field(mono, "re", w2), f"{w2}.re")
            im = rational_from_json(mono["im"], f"{w2}.im") if "im" in mono else Fraction(0)
            if alpha in coeffs:
                raise InvalidInput(f"{w2}: repeated exponent vector {list(alpha)}")
            coeffs[alpha] = Gaussian(re, im)
        if idx in out:
            raise InvalidInput(f"{where}: repeated index tuple {[i + 1 for i in idx]}")
        out[idx] = Poly(n, coeffs)
    return KForm(n, k, out)


def hopf_class_to_json(hc: HopfClass) -> dict:
    out: dict[str, Any] = {"class": hc.tag}
    if hc.r is not None:
        out["r"] = hc.r
        out["perm"] = [i + 1 for i in hc.perm]
    return out


def hopf_class_from_json(obj) -> HopfClass:
    tag = _field(obj, "class", "class")
    if "r" in obj:
        return HopfClass(tag, obj["r"], tuple(i - 1 for i in obj["perm"]))
    return HopfClass(tag)


def lattice_to_json(L: RelationLattice) -> dict:
    return {"rank": L.rank, "basis": [list(v) for v in L.basis]}


def lattice_from_json(obj, n: int) -> RelationLattice:
    return RelationLattice(n, tuple(tuple(v) for v in _field(obj, "basis", "lattice")))


def solution_to_json(sol: MonomialSolution) -> dict:
    return {"idx": [i + 1 for i in sol.idx], "alpha": list(sol.alpha)}


def basis_to_json(basis: SectionBasis, with_solutions: bool = True) -> dict:
    p = basis.problem
    out: dict[str, Any] = {
        "dim": basis.dim,
        "k": p.k,
        "manifold": spectrum_to_json(p.spectrum),
        "character": character_to_json(p.character),
        **hopf_class_to_json(p.hopf_class),
        "case": basis.case,
        "flags": list(basis.flags),
    }
    if with_solutions:
        out["solutions"] = [solution_to_json(s) for s in basis.solutions]
    return out


def basis_from_json(obj) -> SectionBasis:
    s = spectrum_from_json(_field(obj, "manifold", "basis"))
    p = SectionProblem.create(s, _int_in(_field(obj, "k", "basis"), "basis.k"),
                              character_from_json(_field(obj, "character", "basis"), s))
    sols = tuple(MonomialSolution(tuple(i - 1 for i in d["idx"]), tuple(d["alpha"]))
                 for d in _field(obj, "solutions", "basis"))
    return SectionBasis(p, sols, tuple(obj.get("flags", ())))


def general_section_to_json(gs: GeneralSection) -> dict:
    return {
        "symbols": list(gs.symbols),
        "terms": [
            {"idx": [i + 1 for i in idx], "monomials": [{"alpha": list(a), "symbol": sym} for a, sym in entries]}
            for idx, entries in gs.terms().items()
        ],
        "text": str(gs),
    }


def _stratum_out(s: CoordinateStratum) -> list[int]:
    return [i + 1 for i in s.zero_set]


def _stratum_in(v) -> CoordinateStratum:
    return CoordinateStratum(tuple(i - 1 for i in v))


def report_to_json(r: PfaffReport) -> dict:
    if isinstance(r.singular_strata, ProbabilisticVerdict):
        v = r.singular_strata
        strata: Any = {"probabilistic": True, "strata": [_stratum_out(s) for s in v.strata],
                       "hypersurface": v.hypersurface, "samples": v.samples, "lines": v.lines}
    else:
        strata = [_stratum_out(s) for s in r.singular_strata]
    leaf = None
    if r.compact_leaf is not None:
        leaf = {"zero_coords": [i + 1 for i in r.compact_leaf.zero_coords], "dim": r.compact_leaf.dim,
                "description": str(r.compact_leaf)}
    return {
        "k": r.k,
        "n": r.n,
        "character": character_to_json(r.character) if r.character is not None else None,
        "hopf_class": hopf_class_to_json(r.hopf_class) if r.hopf_class is not None else None,
        "case": r.case,
        "singular_strata": strata,
        "sing_codim": EMPTY if r.sing_codim is None else r.sing_codim,
        "is_regular": r.is_regular,
        "is_decomposable": r.is_decomposable,
        "is_integrable": NOT_APPLICABLE if r.is_integrable is None else r.is_integrable,
        "compact_leaf": leaf,
        "equivariant": r.equivariant,
        "torus_invariant": r.torus_invariant,
        "flags": list(r.flags),
        "form": kform_to_json(r.form) if r.form is not None else None,
    }


def report_from_json(obj) -> PfaffReport:
    n = _int_in(_field(obj, "n", "report"), "report.n")
    raw = obj["singular_strata"]
    if isinstance(raw, dict):
        strata: Any = ProbabilisticVerdict(tuple(_stratum_in(s) for s in raw["strata"]), raw["hypersurface"],
                                           raw["samples"], raw["lines"])
    else:
        strata = tuple(_stratum_in(s) for s in raw)
    char = None
    if obj.get("character") is not None:
        c = obj["character"]
        char = Character(tuple(c["exponents"]), rational_from_json(c["value"]) if "value" in c else None)
    leaf = obj.get("compact_leaf")
    integrable = obj["is_integrable"]
    return PfaffReport(
        k=obj["k"],
        n=n,
        character=char,
        singular_strata=strata,
        sing_codim=None if obj["sing_codim"] == EMPTY else obj["sing_codim"],
        is_regular=obj["is_regular"],
        is_decomposable=obj["is_decomposable"],
        is_integrable=None if integrable == NOT_APPLICABLE else integrable,
        compact_leaf=CompactLeaf(tuple(i - 1 for i in leaf["zero_coords"]), n) if leaf else None,
        hopf_class=hopf_class_from_json(obj["hopf_class"]) if obj.get("hopf_class") else None,
        equivariant=obj.get("equivariant"),
        torus_invariant=obj.get("torus_invariant"),
        flags=tuple(obj.get("flags", ())),
        form=kform_from_json(obj["form"]) if obj.get("form") else None,
    )
