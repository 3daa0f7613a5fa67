"""Msets with signed multiplicities: building, combining, comparing."""

from multikit import mset as ms
from multikit.mset import Mset

# counting a word list gives an mset; the compact form keeps only nonzero entries
a = ms.from_elements("a a b b b d".split())
d = Mset({"a": 2, "b": 1, "d": 1})
print("A =", ms.to_json(a))
print("D =", ms.to_json(d))

print("A | D =", ms.to_json(a | d))
print("A & D =", ms.to_json(a & d))
print("A + D =", ms.to_json(a + d))
print("A - D (signed)    =", ms.to_json(a - d))
print("A - D (truncated) =", ms.to_json(ms.combine("diff_truncated", a, d)))
print("D - A (truncated) =", ms.to_json(ms.combine("diff_truncated", d, a)))

# negation flips every multiplicity, so an mset plus its complement is empty
print("A + (-A) =", ms.to_json(a + (-a)))
print("-(A | D) == (-A) & (-D):", -(a | d) == (-a) & (-d))

# negative entries are first class: support keeps the positive ones by default
mixed = Mset({"x": 3, "y": -1.5, "z": 0.25})
print("support:", sorted(ms.support(mixed)), "nonzero:", sorted(ms.support(mixed, "nonzero")))
print("cardinality:", ms.cardinality(mixed), "absolute:", ms.cardinality(mixed, absolute=True))
