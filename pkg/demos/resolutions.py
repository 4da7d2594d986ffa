"""Minimal free resolutions and their Betti numbers."""

from koszulkit import PolyRing, free_resolution
from koszulkit.complexes import betti_numbers

R = PolyRing(("x", "y", "z", "w"))
examples = {
    "two planes": [R("x*z"), R("x*w"), R("y*z"), R("y*w")],
    "twisted cubic": [R("x*z - y^2"), R("x*w - y*z"), R("y*w - z^2")],
    "complete intersection": [R("x^2"), R("y^2"), R("z*w")],
    "redundant generators": [R("x"), R("x*y"), R("y"), R("x + y")],
}
for name, ideal in examples.items():
    F = free_resolution(ideal)
    print(f"{name}: betti {betti_numbers(F)}")

print()
print(free_resolution(examples["twisted cubic"]).to_text())
