"""
Negativity of the witness family on diagonal states
===================================================

For diagonal states with polarisation r the operators A and B of the
witness family satisfy 0 <= A <= B, yet <B^2> - <A^2> is negative.  This
script tabulates that value over r for a = 0.35, b = 0.1 and k = 0, 1, 2,
and writes the full grid as CSV to the working directory.
"""

import csv
from pathlib import Path

import numpy as np

from spintomo import WitnessParams, diagonal_state, witness_expectation, witness_family

a, b = 0.35, 0.1
rs = np.round(np.arange(1, 101) / 100, 2)

rows = []
for k in (0, 1, 2):
    for r in rs:
        value = witness_expectation(diagonal_state(r), witness_family(WitnessParams(r, a, b, k)))
        rows.append((r, k, value))

# Print a coarse view.
print("   r      k=0          k=1          k=2")
table = {(r, k): v for r, k, v in rows}
for r in (0.01, 0.1, 0.25, 0.5, 0.75, 1.0):
    print(f"{r:5.2f}  " + "  ".join(f"{table[(r, k)]: .4e}" for k in (0, 1, 2)))

print("largest value on the grid:", max(v for _, _, v in rows))

# The point r = 1, k = 1 has a closed form.
print("r=1, k=1:", table[(1.0, 1)], "vs", 0.2 * (0.15 - np.sqrt(0.1275)) + 0.02)

out = Path.cwd() / "witness_scan.csv"
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["r", "k", "expectation"])
    writer.writerows((f"{r:.12g}", k, f"{v:.12g}") for r, k, v in rows)
print("wrote", out)
