"""Koszul homology after scaling every equation by a common factor x.

Multiplying the sequence by x leaves the cycles alone and scales the
boundaries, so H^{-q}(K(x f)) = ker / x·im.  For a non-regular f with x
acting injectively on H^{-q}(K(f)) this module is also a fibre product.
"""

from koszulkit import (
    PolyRing,
    check_cor_regular,
    check_prop_affine,
    check_pullback_square,
    homology,
    koszul_complex,
    module_length,
    scaled_cohomology_model,
)

R = PolyRing(("x", "y", "z", "w"))
x = R("x")

for f in ([R("y"), R("z")], [R("y*z"), R("y*w")]):
    print("f =", ", ".join(map(str, f)))
    Kxf = koszul_complex([x * g for g in f])
    for q in range(len(f) + 1):
        H = homology(Kxf, -q)
        model = scaled_cohomology_model(f, x, q)
        print(f"  q={q}: generic rank {H.generic_rank()}, dim {module_length(H, local=False)}")
        print("   ", " | ".join(model.describe()))
    print(check_prop_affine(f, x, 1).to_text())
    print(check_cor_regular(f, x, 1).to_text())
    print(check_pullback_square(f, x, 1).to_text())
    print()

# a scalar that kills part of H: the square check stops at its precondition
print(check_pullback_square([R("y*z"), R("y*w")], R("y"), 1).to_text())
