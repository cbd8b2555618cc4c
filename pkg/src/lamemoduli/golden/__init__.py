"""Loading of the golden fixtures shipped with the package.

The fixtures are the single source of truth for tests and `selfcheck`:
the classical polynomial tables (transcribed literally, including two known
misprints kept verbatim and their derived corrections in a separate file)
and the per-component invariant tables for m <= 13.
"""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources

from ..mpoly import MPoly, parse

__all__ = [
    "appendix_table",
    "corrections",
    "component_tables",
    "KNOWN_MISPRINTS",
]

# (table, m) entries whose printed form is misprinted; derived replacements
# live in corrections.txt and the analysis in the repository notes.
KNOWN_MISPRINTS = (("FII", 2), ("H0", 5))


def _read(name: str) -> str:
    return resources.files("lamemoduli.golden").joinpath(name).read_text()


@lru_cache(maxsize=None)
def appendix_table(which: str) -> dict[int, MPoly]:
    """Polynomial table 'FI', 'FII', 'H0' or 'H1' as parsed polynomials."""
    text = _read(f"appendix_{which}.txt")
    out = {}
    for line in text.strip().splitlines():
        m, poly = line.split("\t")
        out[int(m)] = parse(poly)
    return out


@lru_cache(maxsize=None)
def corrections() -> dict[tuple[str, int], MPoly]:
    """Derived replacements for the known misprinted entries."""
    out = {}
    for line in _read("corrections.txt").strip().splitlines():
        which, m, poly = line.split("\t")
        out[(which, int(m))] = parse(poly)
    return out


@lru_cache(maxsize=None)
def component_tables() -> dict[str, list[dict[str, int]]]:
    """Reference invariant tables keyed 'I' / 'II'.

    Component II rows carry d3 = d/3 in the source; the returned rows expose
    plain d alongside the graph tallies.
    """
    out: dict[str, list[dict[str, int]]] = {}
    for comp, fname in (("I", "tables_I.csv"), ("II", "tables_II.csv")):
        rows = []
        reader = csv.DictReader(_read(fname).strip().splitlines())
        for row in reader:
            entry = {k: int(v) for k, v in row.items()}
            if comp == "II":
                entry["d"] = 3 * entry.pop("d3")
            rows.append(entry)
        out[comp] = rows
    return out
