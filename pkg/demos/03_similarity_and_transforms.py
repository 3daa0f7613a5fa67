"""Jaccard, the common product, and greedy decomposition on a Walsh basis."""

import math

import numpy as np

from multikit import mfunction as mf
from multikit import similarity, transform
from multikit.mset import Mset

a = Mset({"a": 1, "b": 2, "c": 3})
b = Mset({"a": 1, "b": 1, "c": 2, "d": 1})
rep = similarity.jaccard(a, b)
print(f"jaccard = {rep.numerator:g}/{rep.denominator:g} = {rep.value:.6f}")
for note in rep.notes:
    print("  note:", note)

# sine and cosine over a period: the common product behaves like an inner product
period = mf.Grid1D.span(0, 1, 4096)
s, c = mf.sample_builtin("sin", period), mf.sample_builtin("cos", period)
print(f"<<sin, cos>> = {similarity.common_product(s, c):+.2e}")
print(f"<<sin, sin>> = {similarity.common_product(s, s):.6f} (2/pi = {2 / math.pi:.6f})")

# Walsh functions are orthonormal under the common product
basis = transform.walsh_basis(3)
print("Walsh Gram is identity:", np.allclose(transform.gram_matrix(basis), np.eye(8)))
f = mf.MFunction(basis.grid, [0.1, -0.05, 0.02, 0.08, -0.1, 0.03, 0.0, 0.06])
res = transform.greedy_decompose(f, basis)
print("coefficients:", np.round(res.coefficients, 4))
back = transform.reconstruct(res, basis)
print("max round-trip error:", np.max(np.abs(back.samples - f.samples)))

# inputs above 1 in magnitude are clipped by the signed minimum, so recovery fails
big = mf.MFunction(basis.grid, 3 * f.samples / np.max(np.abs(f.samples)))
err = np.max(np.abs(transform.reconstruct(transform.greedy_decompose(big, basis), basis).samples - big.samples))
print(f"round-trip error at amplitude 3: {err:.3f}")

# two shifted sinusoids are not orthogonal; the order they are used in matters
pair = transform.sinusoid_basis(period, [(1, 0.0), (1, math.pi / 4)])
x = period.x
target = mf.MFunction(period, 0.3 * np.sin(2 * np.pi * x + 0.4))
print("forward :", transform.greedy_decompose(target, pair).coefficients)
print("reversed:", transform.greedy_decompose(target, pair.permuted([1, 0])).coefficients[::-1])
