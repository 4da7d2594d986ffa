"""Two planes in 4-space meeting at the origin.

The naive count, the length of R/(I + J), is 3.  Serre's alternating sum of
Tor lengths corrects it to 2 through a one-dimensional Tor_1.
"""

from koszulkit import PolyRing, quotient_dim, serre_multiplicity
from koszulkit.multitor import tor_report

R = PolyRing(("x", "y", "z", "w"))
I = [R("x*z"), R("x*w"), R("y*z"), R("y*w")]  # union of the planes x=y=0 and z=w=0
J = [R("x - z"), R("y - w")]  # the diagonal plane

print("dim_k R/(I+J) =", quotient_dim(I + J))

report = tor_report(I, J)
print("provenance:", report.provenance)
for q, deg in sorted(report.degrees.items()):
    print(f"  length Tor_{q} = {deg.length}")
    for line in deg.module.describe():
        print("     ", line)

print("intersection multiplicity:", serre_multiplicity(I, J, report))
print("swapped arguments:        ", serre_multiplicity(J, I))
