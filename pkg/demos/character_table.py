"""
The character table of PSL2(q)
===============================

Build the table of PSL2(7), look at a few entries, and check it with the
orthogonality relations.  Every entry is an exact cyclotomic number.
"""

from psl2rc.chartab import build_char_table, entry, omega, validate_table
from psl2rc.cli import render_table

# the group of order 168; q = 7 is 3 mod 4, so the two small characters use w = (1 + sqrt(-7))/2
t = build_char_table(7)
print(render_table(t))

# entries are Cyc values and can be pulled out by label
w = omega(7)
print("psi_-' on N:", entry(t, "psi_-'", "N"), "  which is -w* =", -(1 - w))
print("w satisfies w^2 - w + 2 = 0:", w * w - w + 2 == 0)

# degrees and class sizes
print("degrees:", t.degrees)
print("class sizes:", t.class_sizes, "sum", sum(t.class_sizes))

# the row and column relations, checked exactly
report = validate_table(t)
print("table valid:", report.ok)
