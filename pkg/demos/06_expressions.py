"""Set and arithmetic expressions over functions and msets."""

import numpy as np

from multikit import expr
from multikit import mfunction as mf
from multikit.errors import ExprSyntaxError
from multikit.mset import Mset

env = {"g": mf.sample_builtin("gauss_g"), "h": mf.sample_builtin("laplace_h")}

for text in ["(g & h) + g", "g + h | g - h", "(g & h) - (g | h)"]:
    tree = expr.parse(text)
    value = expr.evaluate(tree, env)
    print(f"{text:<20} parses as {expr.to_text(tree):<32} max {value.samples.max():.4f}")

lhs = expr.eval_text("-(g & h)", env)
rhs = expr.eval_text("(-g) | (-h)", env)
print("De Morgan holds sample by sample:", np.array_equal(lhs.samples, rhs.samples))

try:
    expr.parse("g + * h")
except ExprSyntaxError as exc:
    print("syntax error:", exc)

# the same grammar works on msets; numbers act as uniform msets
msets = {"a": Mset({"x": 2, "y": 1}), "b": Mset({"x": 1, "z": 4})}
print("0.5 * (a | b) =", expr.eval_text("0.5 * (a | b)", msets))
