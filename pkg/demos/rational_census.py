"""
Counting rational classes and rational characters
==================================================

For each q we scan the table for all-rational columns (classes) and
all-rational rows (characters).  The two counts always agree.  We also
compare with the congruence-based prediction, which does not always fit.
"""

from psl2rc.rational import predict_rc, rc_census

qs = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]

print(f"{'q':>3} {'classes':>8} {'chars':>6} {'predicted':>10}  case")
for q in qs:
    r = rc_census(q, use_oracle=False)
    p = predict_rc(q)
    flag = "" if p.rc == r.n_rational_classes else "  <- prediction differs"
    print(f"{q:>3} {r.n_rational_classes:>8} {r.n_rational_characters:>6} {p.rc:>10}  {p.case_id}{flag}")

# the full report for one q lists which classes and characters are rational
print()
print(rc_census(13).render())
