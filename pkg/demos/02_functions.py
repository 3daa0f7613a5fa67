"""Sampled functions behave like msets indexed by grid position."""

import numpy as np

from multikit import mfunction as mf

grid = mf.DEFAULT_GRID
g = mf.sample_builtin("gauss_g", grid)
h = mf.sample_builtin("laplace_h", grid)

union, inter = g | h, g & h
print(f"integral g = {mf.integral(g):.6f}, h = {mf.integral(h):.6f}")
print(f"integral g|h = {mf.integral(union):.6f}, g&h = {mf.integral(inter):.6f}")
# min + max = sum holds sample by sample, so it holds for the integrals too
print("g|h + g&h == g + h:", np.allclose((union + inter).samples, (g + h).samples))

# a vector is a function on the unit grid starting at 1, and an mset keyed 1..n
v = mf.from_vector([0.5, 0.0, -2.0, 1.0])
print("as mset:", mf.as_mset(v))

# the 2-D index map flattens matrix entries to mset elements
m = mf.IndexMap(2, 3)
print("entry (2, 3) ->", m.flatten(2, 3), "-> back", m.unflatten(m.flatten(2, 3)))

print(mf.write_function_csv(mf.sample_builtin("sin", mf.Grid1D.span(0, 1, 8))), end="")
