"""Rewrite data/MANIFEST with the sha256 sums of the shipped data files."""

from __future__ import annotations

import hashlib
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "liestrata" / "data"
FILES = ["wdd.yaml", "orbits.yaml", "claims.yaml"]


def main() -> None:
    lines = [f"{hashlib.sha256((DATA / f).read_bytes()).hexdigest()}  {f}" for f in FILES]
    (DATA / "MANIFEST").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))


if __name__ == "__main__":
    main()
