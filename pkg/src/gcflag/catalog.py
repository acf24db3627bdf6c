"""Catalog of flag manifolds with two, three and four isotropy summands.

Each row names a homogeneous space (opaque label), its Lie type, the
painted simple roots Sigma \ Theta, and the expected number of summands.
Parametric families appear twice, at the smallest legal rank and one above.
check_rows recomputes the summand count for every row from root data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence, Tuple, Union

from .isotropy import decompose_isotropy, flag_from_sigma_minus_theta
from .roots import build_root_system

SigmaSpec = Tuple[Union[int, str], ...]


@dataclass(frozen=True)
class CatalogRow:
    label: str
    family: str
    rank: int
    sigma_minus_theta: SigmaSpec
    expected_summands: int
    note: str = ""

    def __post_init__(self):
        if self.expected_summands not in (2, 3, 4):
            raise ValueError("catalog rows cover 2, 3 or 4 summands only")


def resolve_sigma_indices(rs, spec: SigmaSpec) -> Tuple[int, ...]:
    """Map "long"/"short" tokens to simple-root indices by squared length."""
    out = []
    for token in spec:
        if isinstance(token, int):
            out.append(token)
            continue
        norms = rs.simple_norms
        wanted = max(norms) if token == "long" else min(norms) if token == "short" else None
        if wanted is None:
            raise ValueError(f"bad simple-root token {token!r}")
        matches = [i + 1 for i, n in enumerate(norms) if n == wanted]
        if len(matches) != 1:
            raise ValueError(f"token {token!r} is ambiguous for {rs.lie_type}")
        out.append(matches[0])
    return tuple(sorted(out))


def builtin_rows() -> Tuple[CatalogRow, ...]:
    text = resources.files("gcflag.data").joinpath("catalog_rows.json").read_text("utf-8")
    return rows_from_json(json.loads(text))


def rows_from_json(doc: dict) -> Tuple[CatalogRow, ...]:
    rows = []
    for entry in doc["rows"]:
        rows.append(CatalogRow(
            label=entry["label"],
            family=entry["type"],
            rank=int(entry["rank"]),
            sigma_minus_theta=tuple(
                t if isinstance(t, str) else int(t) for t in entry["sigma_minus_theta"]
            ),
            expected_summands=int(entry["s"]),
            note=entry.get("note", ""),
        ))
    return tuple(rows)


def check_row(row: CatalogRow) -> dict:
    rs = build_root_system(row.family, row.rank)
    sigma = resolve_sigma_indices(rs, row.sigma_minus_theta)
    fs = flag_from_sigma_minus_theta(rs, sigma)
    computed = len(decompose_isotropy(fs))
    return {
        "label": row.label,
        "type": row.family,
        "rank": row.rank,
        "sigma_minus_theta": list(sigma),
        "expected": row.expected_summands,
        "computed": computed,
        "passed": computed == row.expected_summands,
        "note": row.note,
    }


def run_catalog(rows: Sequence[CatalogRow]) -> dict:
    results = [check_row(r) for r in rows]
    return {
        "schema": "gcflag.catalog.v1",
        "rows": results,
        "all_passed": all(r["passed"] for r in results),
    }


def catalog_markdown(doc: dict) -> str:
    lines = ["# Summand-count catalog", ""]
    lines.append("| label | type | Σ∖Θ | expected s | computed s | result |")
    lines.append("|---|---|---|---|---|---|")
    for r in doc["rows"]:
        sigma = ",".join(f"α{i}" for i in r["sigma_minus_theta"])
        status = "pass" if r["passed"] else "FAIL"
        lines.append(f"| {r['label']} | {r['type']}{r['rank']} | {{{sigma}}} "
                     f"| {r['expected']} | {r['computed']} | {status} |")
    lines.append("")
    lines.append("all rows passed" if doc["all_passed"] else "SOME ROWS FAILED")
    return "\n".join(lines) + "\n"
