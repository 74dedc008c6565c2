"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 unsupported class or mode, 1 when
``corpus-verify`` finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import jsonio
from .analysis import analyze, enumerate_regular_systems
from .corpus import corpus_verify, describe_character
from .errors import InvalidInput, NotMonomialCharacter, Unsupported
from .sections import (
    SectionProblem,
    brute_force_kernel,
    general_section,
    oracle_degree_bound,
    solve_sections,
    validate_character,
)
from .spectrum import Spectrum, classify, compute_relation_lattice

COMMANDS = ("classify", "sections", "basis", "general", "analyze", "enumerate-regular", "oracle", "corpus-verify")
NEEDS = {
    "classify": ("manifold",),
    "sections": ("manifold", "k", "character"),
    "basis": ("manifold", "k", "character"),
    "general": ("manifold", "k", "character"),
    "analyze": ("manifold", "form"),
    "enumerate-regular": ("manifold", "k"),
    "oracle": ("manifold", "k", "character"),
    "corpus-verify": (),
}


@dataclass
class JobSpec:
    command: str
    manifold: Optional[dict] = None
    character: Optional[dict] = None
    form: Optional[dict] = None
    k: Optional[int] = None
    max_degree: Optional[int] = None
    output: str = "json"
    basis: bool = False
    general: bool = False
    corpus: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"command: unknown command {self.command!r}")
        if self.output not in ("json", "text"):
            raise InvalidInput(f"output: expected json or text, got {self.output!r}")
        for name in NEEDS[self.command]:
            if getattr(self, name) is None:
                raise InvalidInput(f"{name}: required by {self.command}")


def _load(arg: Optional[str], key: str) -> Optional[dict]:
    """A JSON object from a path or inline text; bundles are unwrapped by ``key``."""
    if arg is None:
        return None
    try:
        text = arg if arg.lstrip().startswith("{") else Path(arg).read_text()
    except OSError as exc:
        raise InvalidInput(f"{key}: cannot read {arg!r}: {exc.strerror}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{key}: malformed JSON ({exc.msg} at line {exc.lineno})")
    if isinstance(obj, dict) and key in obj and isinstance(obj[key], dict):
        return obj[key]
    return obj


def _problem(job: JobSpec) -> SectionProblem:
    s = jsonio.spectrum_from_json(job.manifold)
    return SectionProblem.create(s, job.k, jsonio.character_from_json(job.character, s))


def _classify(job: JobSpec):
    s = jsonio.spectrum_from_json(job.manifold)
    L = compute_relation_lattice(s)
    hc = classify(s, L)
    data = {**jsonio.hopf_class_to_json(hc), "lattice": jsonio.lattice_to_json(L)}
    lines = [f"class: {hc.tag}", f"relation lattice rank {L.rank}: {[list(v) for v in L.basis]}"]
    if hc.r is not None:
        lines.append(f"repeated block of size {hc.r}, order {[i + 1 for i in hc.perm]}")
    return data, lines


def _not_monomial(job: JobSpec, exc: NotMonomialCharacter):
    data = {"dim": 0, "reason": f"character is not a monomial in the eigenvalues: {exc}"}
    return data, [f"dim 0: {data['reason']}"]


def _sections(job: JobSpec):
    try:
        p = _problem(job)
    except NotMonomialCharacter as exc:
        return _not_monomial(job, exc)
    basis = solve_sections(p)
    verdict = validate_character(p)
    data = jsonio.basis_to_json(basis, with_solutions=job.basis)
    data["verdict"] = {"positive": verdict.positive, "reason": verdict.reason}
    lines = [
        f"{basis.case}",
        f"class {p.hopf_class.tag}, k={p.k}, b = {describe_character(p.hopf_class, p.m)}",
        f"character check: {verdict.reason}",
        f"dim = {basis.dim}",
    ]
    lines += [f"flag: {f}" for f in basis.flags]
    if job.basis:
        lines += [f"  {sol.form()}" for sol in basis.solutions]
    if job.general:
        gs = general_section(p)
        data["general"] = jsonio.general_section_to_json(gs)
        lines.append(f"general section: {gs}")
    return data, lines


def _oracle(job: JobSpec):
    try:
        p = _problem(job)
    except NotMonomialCharacter as exc:
        return _not_monomial(job, exc)
    D = job.max_degree if job.max_degree is not None else oracle_degree_bound(p)
    oracle = brute_force_kernel(p, D)
    fast = solve_sections(p)
    data = jsonio.basis_to_json(oracle)
    data["max_degree"] = D
    data["matches_solve_sections"] = oracle.solutions == fast.solutions
    lines = [f"oracle kernel up to degree {D}: dim = {oracle.dim}",
             f"agrees with solve_sections: {data['matches_solve_sections']}"]
    return data, lines


def _report_lines(rep) -> list[str]:
    sing = "empty" if rep.sing_codim is None else rep.sing_codim
    strata = rep.singular_strata
    shown = getattr(strata, "strata", strata)
    lines = [
        f"{rep.case}" if rep.case else "unclassified",
        f"k={rep.k}, n={rep.n}",
        f"b = {describe_character(rep.hopf_class, rep.character.exponents)}" if rep.character else "b: not recovered",
        f"singular strata: {', '.join(map(str, shown)) or 'none'}; sing_codim={sing}",
        f"regular: {rep.is_regular}; decomposable: {rep.is_decomposable}; integrable: "
        f"{jsonio.NOT_APPLICABLE if rep.is_integrable is None else rep.is_integrable}",
        f"equivariant: {rep.equivariant}; torus invariant: {rep.torus_invariant}",
    ]
    if rep.compact_leaf is not None:
        lines.append(f"compact leaf: {rep.compact_leaf}")
    lines += [f"flag: {f}" for f in rep.flags]
    return lines


def _analyze(job: JobSpec):
    s = jsonio.spectrum_from_json(job.manifold)
    w = jsonio.kform_from_json(job.form)
    char = jsonio.character_from_json(job.character, s) if job.character is not None else None
    rep = analyze(s, w, char)
    return jsonio.report_to_json(rep), _report_lines(rep)


def _enumerate(job: JobSpec):
    s = jsonio.spectrum_from_json(job.manifold)
    reports = enumerate_regular_systems(s, job.k)
    data = {"k": job.k, "count": len(reports), "systems": [jsonio.report_to_json(r) for r in reports]}
    lines = [f"{len(reports)} regular families for k={job.k}"]
    for r in reports:
        lines.append(f"  {r.form}  (b = {describe_character(r.hopf_class, r.character.exponents)}); "
                     f"integrable: {r.is_integrable}; compact leaf {r.compact_leaf}")
    return data, lines


def _corpus(job: JobSpec):
    results = corpus_verify(Path(job.corpus) if job.corpus else None)
    data = {"passed": all(r.passed for r in results),
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    return data, lines


HANDLERS = {
    "classify": _classify,
    "sections": _sections,
    "basis": _sections,
    "general": _sections,
    "analyze": _analyze,
    "enumerate-regular": _enumerate,
    "oracle": _oracle,
    "corpus-verify": _corpus,
}


def run(job: JobSpec) -> tuple[str, int]:
    """Execute one job; returns (rendered output, exit code)."""
    try:
        job.validate()
        if job.command == "basis":
            job.basis = True
        if job.command == "general":
            job.general = True
        data, lines = HANDLERS[job.command](job)
    except InvalidInput as exc:
        return _error(job, exc, 2)
    except Unsupported as exc:
        return _error(job, exc, 3)
    code = 1 if job.command == "corpus-verify" and not data["passed"] else 0
    if job.output == "json":
        return json.dumps(data, indent=2, sort_keys=True), code
    return "\n".join(lines), code


def _error(job: JobSpec, exc: Exception, code: int) -> tuple[str, int]:
    kind = type(exc).__name__
    if job.output == "json":
        return json.dumps({"error": kind, "message": str(exc)}, sort_keys=True), code
    return f"error ({kind}): {exc}", code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopf-pfaff", description="Pfaff systems on diagonal Hopf manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, k=False, character=False):
        p.add_argument("--manifold", required=True, help="spectrum JSON file (or inline JSON)")
        if k:
            p.add_argument("-k", type=int, required=True, help="form degree")
        if character:
            p.add_argument("--character", required=True, help="character JSON file (or inline JSON)")
        p.add_argument("--output", choices=("json", "text"), default="json")

    common(sub.add_parser("classify", help="resonance class and relation lattice"))
    for name in ("sections", "basis", "general"):
        p = sub.add_parser(name, help="section space of Omega^k (x) L_b")
        common(p, k=True, character=True)
        p.add_argument("--basis", action="store_true", help="list the monomial basis")
        p.add_argument("--general", action="store_true", help="print the general parametric section")
    p = sub.add_parser("oracle", help="brute-force kernel of p0 up to a degree bound")
    common(p, k=True, character=True)
    p.add_argument("--max-degree", type=int, default=None)
    p = sub.add_parser("analyze", help="Pfaff report for a form")
    p.add_argument("bundle", nargs="?", help="JSON file holding manifold, form and optionally character")
    p.add_argument("--manifold")
    p.add_argument("--form")
    p.add_argument("--character")
    p.add_argument("--output", choices=("json", "text"), default="json")
    p = sub.add_parser("enumerate-regular", help="regular Pfaff systems on a no-resonance manifold")
    common(p, k=True)
    p = sub.add_parser("corpus-verify", help="check the shipped worked examples")
    p.add_argument("--corpus", default=None, help="directory with the example files")
    p.add_argument("--output", choices=("json", "text"), default="text")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    bundle = getattr(args, "bundle", None)
    manifold = getattr(args, "manifold", None) or bundle
    form = getattr(args, "form", None) or bundle
    character = getattr(args, "character", None)
    if character is None and bundle is not None:
        text = _load(bundle, "bundle")
        if isinstance(text, dict) and "character" in text:
            character = bundle
    return JobSpec(
        command=args.command,
        manifold=_load(manifold, "manifold"),
        character=_load(character, "character"),
        form=_load(form, "form"),
        k=getattr(args, "k", None),
        max_degree=getattr(args, "max_degree", None),
        output=args.output,
        basis=getattr(args, "basis", False),
        general=getattr(args, "general", False),
        corpus=getattr(args, "corpus", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except InvalidInput as exc:
        out, code = _error(JobSpec(args.command, output=args.output), exc, 2)
    else:
        out, code = run(job)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
