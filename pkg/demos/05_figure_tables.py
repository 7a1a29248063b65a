#!/usr/bin/env python3
"""Regenerate every study figure as a data table.

Writes one CSV per figure id into ./figure_tables/ (with a JSON sidecar
recording the fully resolved parameter set) and prints a short digest of
each table.  Plotting is intentionally left to external tools; the CSVs are
long-format (one row per curve point).
"""

import collections
import os

from secnet import cli
from secnet.figures import FIGURE_IDS, figure_table

outdir = "figure_tables"
os.makedirs(outdir, exist_ok=True)

for fig in FIGURE_IDS:
    meta, header, rows = figure_table(fig)
    path = os.path.join(outdir, f"{fig}.csv")
    code = cli.main(["figure", fig, "--out", path])
    assert code == 0
    curves = collections.Counter(row[1] for row in rows)
    print(f"{fig}: {len(rows)} rows, x = {meta['x']}, {len(curves)} curves -> {path}")
    for label in list(curves)[:3]:
        print(f"    curve {label}")
    if len(curves) > 3:
        print(f"    ... and {len(curves) - 3} more")
