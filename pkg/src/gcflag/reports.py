"""JSON and markdown emitters for the CLI commands.

JSON documents carry a "schema" key; markdown mirrors the component lists
and classification tables of the underlying theory.  All output is fully
deterministic: identical inputs produce byte-identical text.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .fibers import TAG_NC, TypePattern, compress_pattern_rows
from .isotropy import FlagSpec, IsotropyDecomposition, Triple
from .roots import Root, RootSystem


def format_root(root: Root) -> str:
    parts = []
    for i, c in enumerate(root, start=1):
        if c == 0:
            continue
        coeff = "" if c == 1 else str(c)
        parts.append(f"{coeff}α{i}")
    return "+".join(parts) if parts else "0"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- roots -----------------------------------------------------------------

def roots_report(rs: RootSystem) -> dict:
    doc = rs.to_json_dict()
    doc["heights"] = [rs.height(i) for i in range(1, rs.rank + 1)]
    doc["positive_root_count"] = len(rs.positive_roots)
    return doc


def roots_markdown(rs: RootSystem) -> str:
    lines = [f"# Root system {rs.lie_type}", ""]
    lines.append(f"{len(rs.positive_roots)} positive roots; "
                 f"highest root {format_root(rs.highest_root)}.")
    lines.append("")
    lines.append("| # | root | height |")
    lines.append("|---|------|--------|")
    for i, r in enumerate(rs.positive_roots):
        lines.append(f"| {i} | {format_root(r)} | {sum(r)} |")
    return "\n".join(lines) + "\n"


# -- decomposition ----------------------------------------------------------

def decomposition_report(fs: FlagSpec, decomp: IsotropyDecomposition,
                         triples: Sequence[Triple]) -> dict:
    return {
        "schema": "gcflag.decompose.v1",
        "type": fs.rs.lie_type.family,
        "rank": fs.rs.rank,
        "theta": list(fs.theta),
        "sigma_minus_theta": list(fs.sigma_minus_theta),
        "point": decomp.is_point,
        "components": [
            {"tuple": list(c.key), "roots": [list(r) for r in c.roots]}
            for c in decomp.components
        ],
        "triples": [
            {
                "alpha": list(t.alpha),
                "beta": list(t.beta),
                "sum": list(t.sum_root),
                "comps": list(t.comps),
            }
            for t in triples
        ],
    }


def decomposition_markdown(fs: FlagSpec, decomp: IsotropyDecomposition,
                           triples: Sequence[Triple]) -> str:
    lines = [f"# Isotropy decomposition: {fs.rs.lie_type}, "
             f"Θ = {{{', '.join(f'α{i}' for i in fs.theta)}}}", ""]
    if decomp.is_point:
        lines.append("Theta = Sigma: the flag is a point, no isotropy summands.")
        return "\n".join(lines) + "\n"
    lines.append(f"Σ\\Θ = {{{', '.join(f'α{i}' for i in fs.sigma_minus_theta)}}}; "
                 f"{len(decomp.components)} irreducible summands.")
    lines.append("")
    for i, c in enumerate(decomp.components, start=1):
        key = ",".join(map(str, c.key))
        roots = ", ".join(format_root(r) for r in c.roots)
        lines.append(f"- m{i} = m({key}) = {{{roots}}}")
    lines.append("")
    lines.append(f"{len(triples)} root triples:")
    lines.append("")
    for t in triples:
        i, j, k = (c + 1 for c in t.comps)
        lines.append(f"- ({format_root(t.alpha)}, {format_root(t.beta)}) "
                     f"→ {format_root(t.sum_root)}  [m{i}, m{j} → m{k}]")
    return "\n".join(lines) + "\n"


# -- classification ----------------------------------------------------------

_TOKEN_TEXT = {
    "C±": "complex (±J0)",
    "C∓": "complex (∓J0)",
    "NC": "noncomplex",
}


def classification_report(fs: FlagSpec, decomp: IsotropyDecomposition,
                          patterns: Sequence[TypePattern]) -> dict:
    rows = compress_pattern_rows(patterns)
    return {
        "schema": "gcflag.classify.v1",
        "type": fs.rs.lie_type.family,
        "rank": fs.rs.rank,
        "theta": list(fs.theta),
        "sigma_minus_theta": list(fs.sigma_minus_theta),
        "components": [
            {"tuple": list(c.key), "roots": [list(r) for r in c.roots]}
            for c in decomp.components
        ],
        "patterns": [
            {
                "tags": list(p.tags),
                "conditional_on_chain": [list(c) for c in p.conditional],
            }
            for p in patterns
        ],
        "rows": [list(row) for row in rows],
    }


def classification_markdown(fs: FlagSpec, decomp: IsotropyDecomposition,
                            patterns: Sequence[TypePattern]) -> str:
    rows = compress_pattern_rows(patterns)
    s = len(decomp.components)
    lines = [f"# Integrable type patterns: {fs.rs.lie_type}, "
             f"Θ = {{{', '.join(f'α{i}' for i in fs.theta)}}}", ""]
    for i, c in enumerate(decomp.components, start=1):
        key = ",".join(map(str, c.key))
        roots = ", ".join(format_root(r) for r in c.roots)
        lines.append(f"- m{i} = m({key}) = {{{roots}}}")
    lines.append("")
    header = " | ".join(f"J on m{i}+m{i}*" for i in range(1, s + 1))
    lines.append(f"| {header} |")
    lines.append("|" + "|".join(["---"] * s) + "|")
    for row in rows:
        lines.append("| " + " | ".join(_TOKEN_TEXT[t] for t in row) + " |")
    lines.append("")
    lines.append(f"{len(rows)} rows ({len(patterns)} concrete patterns after "
                 "sign expansion, counting each noncomplex row once).")
    if any(p.is_conditional for p in patterns):
        lines.append("Rows that are noncomplex on every summand of some triple "
                     "integrate only where the chain equations "
                     "x_a x_b - x_a x_s - x_b x_s = 0 and "
                     "a_s x_a x_b - a_b x_a x_s - a_a x_b x_s = 0 hold.")
    return "\n".join(lines) + "\n"


# -- verification -------------------------------------------------------------

def verification_report(fs: FlagSpec, constancy: dict,
                        oracle: Optional[dict], notes: Sequence[str]) -> dict:
    agree = oracle is None or oracle["mismatches"] == []
    return {
        "schema": "gcflag.verify.v1",
        "type": fs.rs.lie_type.family,
        "rank": fs.rs.rank,
        "theta": list(fs.theta),
        "sigma_minus_theta": list(fs.sigma_minus_theta),
        "constancy": constancy,
        "oracle": oracle,
        "notes": list(notes),
        "passed": bool(constancy["constant"] and agree),
    }


def verification_markdown(doc: dict) -> str:
    lines = [f"# Verification: {doc['type']}{doc['rank']}, "
             f"Θ = {{{', '.join(f'α{i}' for i in doc['theta'])}}}", ""]
    c = doc["constancy"]
    lines.append(f"- constancy of fiber structures per summand: "
                 f"{'PASS' if c['constant'] else 'FAIL'}")
    for comp in c["components"]:
        key = ",".join(map(str, comp["key"]))
        extra = "" if comp["single_step"] else " (needs multi-step chains)"
        lines.append(f"  - m({key}): {comp['size']} roots, {comp['edges']} edges, "
                     f"{'ok' if comp['ok'] else 'FAIL'}{extra}")
    o = doc["oracle"]
    if o is not None:
        status = "PASS" if not o["mismatches"] else "FAIL"
        lines.append(f"- classifier vs Nijenhuis oracle: {status} "
                     f"({o['assignments']} assignments, "
                     f"{o['integrable']} integrable, "
                     f"{len(o['mismatches'])} mismatches)")
    for note in doc["notes"]:
        lines.append(f"- note: {note}")
    lines.append("")
    lines.append("PASSED" if doc["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


E7_COUNT_NOTE = ("E7 positive-root count is 63 = (133 - 7)/2; "
                 "a sometimes-quoted figure of 64 is incorrect.")
