#!/usr/bin/env python3
"""Recompute the bundled golden corpus and freeze the baseline table.

Run after any intentional change to the corpus or the numerics:

    python scripts/make_golden_baselines.py
"""

import pathlib
import sys

from morrey_embed.cli import regenerate_baselines


def main() -> int:
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "morrey_embed" / "data" \
        / "golden_baselines.csv"
    regenerate_baselines(str(out))
    print(f"baselines written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
