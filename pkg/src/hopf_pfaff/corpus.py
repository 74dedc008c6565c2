"""Shipped worked examples and their end-to-end verification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .analysis import analyze
from .jsonio import kform_from_json, spectrum_from_json
from .spectrum import CLASSICAL, WEAK_NO_RESONANCE, HopfClass

EXAMPLES = ("paper_example_1", "paper_example_2", "paper_example_3")


def corpus_dir() -> Path:
    return Path(str(resources.files("hopf_pfaff") / "corpus"))


def load_case(name: str, directory: Optional[Path] = None) -> dict:
    path = (directory or corpus_dir()) / f"{name}.json"
    return json.loads(path.read_text())


def describe_character(hc: HopfClass, m) -> str:
    """Human-readable b, e.g. ``mu^3`` or ``mu^1*mu4*mu5*mu6``."""
    if hc.tag == CLASSICAL:
        return f"mu^{sum(m)}"
    factors = []
    skip = set()
    if hc.tag == WEAK_NO_RESONANCE:
        block = hc.block
        factors.append(f"mu^{sum(m[i] for i in block)}")
        skip = set(block)
    for i, e in enumerate(m):
        if i in skip or e == 0:
            continue
        factors.append(f"mu{i + 1}" if e == 1 else f"mu{i + 1}^{e}")
    return "*".join(factors) or "1"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def verify_case(case: dict) -> list[CheckResult]:
    expect = case["expect"]
    w = kform_from_json(case["form"])
    out = []
    for key in ("manifold", "exact_manifold"):
        if key not in case:
            continue
        s = spectrum_from_json(case[key])
        rep = analyze(s, w)
        label = f"{case['name']} [{s.mode}]"
        m = rep.character.exponents if rep.character else None
        b = describe_character(rep.hopf_class, m) if m is not None else "unrecovered"
        sing = "empty" if rep.sing_codim is None else rep.sing_codim
        checks = [
            ("k", rep.k == expect["k"], f"k={rep.k}"),
            ("regular", rep.is_regular == expect["is_regular"],
             "regular" if rep.is_regular else "singular"),
            ("sing_codim", sing == expect["sing_codim"], f"sing_codim={sing}"),
            ("character", m is not None and list(m) == expect["character"], f"b = {b}"),
            ("equivariant", rep.equivariant is True, f"f^*w = b*w: {rep.equivariant}"),
        ]
        if "homogeneous_degree" in expect and m is not None:
            d = expect["homogeneous_degree"]
            homog = all(g.is_homogeneous(d) for _, g in w.terms()) and d == sum(m) - rep.k
            checks.append(("homogeneous", homog, f"coefficients homogeneous of degree m-k={sum(m) - rep.k}"))
        for what, ok, detail in checks:
            out.append(CheckResult(f"{label} {what}", ok, detail))
    return out


def corpus_verify(directory: Optional[Path] = None) -> list[CheckResult]:
    results = []
    for name in EXAMPLES:
        results.extend(verify_case(load_case(name, directory)))
    return results
