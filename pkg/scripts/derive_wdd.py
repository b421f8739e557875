"""Regenerate ``src/liestrata/data/wdd.yaml`` from the Bala-Carter derivation."""

from __future__ import annotations

import sys
from pathlib import Path

from liestrata.catalog import ORBIT_COUNTS, derive_wdd_table
from liestrata.rootsys import format_tuple

HEADER = """\
# Weighted Dynkin diagrams of the exceptional types, Bourbaki numbering.
# Generated by scripts/derive_wdd.py; do not edit by hand.
# One record per orbit: label, weights on the simple roots, and the
# characteristic-zero centralizer dimension dim g(0) + dim g(1).
format: liestrata-wdd/1
diagrams:
"""


def main(out: str | None = None) -> None:
    lines = [HEADER]
    for t in ("G2", "F4", "E6", "E7", "E8"):
        table = derive_wdd_table(t)
        lines.append(f"  {t}:\n    count: {ORBIT_COUNTS[t]}\n    orbits:\n")
        for d in table:
            lines.append(
                f"      - {{label: \"{d.label}\", weights: \"{format_tuple(d.weights)}\", centralizer: {d.centralizer_dim}}}\n"
            )
    target = Path(out) if out else Path(__file__).resolve().parents[1] / "src/liestrata/data/wdd.yaml"
    target.write_text("".join(lines), encoding="utf-8")


if __name__ == "__main__":
    main(*sys.argv[1:])
