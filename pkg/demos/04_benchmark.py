#!/usr/bin/env python3
"""Desk-scale benchmark: plain search against the landmark control loop.

At 8 blocks a breadth-first search still finishes the state space within a
generous cutoff, so the interesting contrast starts at 10 blocks, where the
space has grown three orders of magnitude and plain search drowns while the
decomposed runs stay near-instant.  Writes results.csv and series.csv.

This takes a couple of minutes; most of it is plain bfs hitting its cutoff.
"""

import sys

from lmplan.bench import records_to_csv, run_benchmark, solved_series_csv

quick = "--quick" in sys.argv
sizes = [8] if quick else [8, 10]
cutoff = 15.0 if quick else 30.0

records = run_benchmark(
    "blocksworld-arm", sizes=sizes, per_size=2, seed_base=0,
    configs=["bfs", "bfs+L", "gbfs", "gbfs+L"], time_limit=cutoff,
)

print(f"{'size':>4} {'seed':>4} {'config':>7} {'outcome':>9} {'seconds':>8} {'length':>6}")
for r in records:
    length = "-" if r.plan_length is None else r.plan_length
    print(f"{r.size:>4} {r.seed:>4} {r.config:>7} {r.outcome:>9} {r.seconds:>8.2f} {length:>6}")

with open("results.csv", "w") as fh:
    fh.write(records_to_csv(records))
with open("series.csv", "w") as fh:
    fh.write(solved_series_csv(records))
print("\nwrote results.csv and series.csv")

solved = lambda cfg, size: sum(
    1 for r in records if r.config == cfg and r.size == str(size) and r.outcome == "solved")
if not quick:
    print(f"\nat 10 blocks: plain bfs solved {solved('bfs', 10)}/2 within {cutoff:.0f}s, "
          f"bfs+L solved {solved('bfs+L', 10)}/2")
