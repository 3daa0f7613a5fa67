import numpy as np
import pytest
from hypothesis import strategies as st

from multikit.mset import Mset

ELEMENTS = ["a", "b", "c", "d", "1", "2"]

# integer-valued floats keep min/max/sum exact so identities can be asserted with ==
small_values = st.integers(min_value=-6, max_value=6).map(float)


def msets(values=small_values, elements=ELEMENTS):
    return st.dictionaries(st.sampled_from(elements), values, max_size=len(elements)).map(Mset)


def nonneg_msets():
    return msets(st.integers(min_value=0, max_value=6).map(float))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_expr(r: np.random.Generator, names=("g", "h", "k"), depth: int = 4) -> str:
    """Random well-formed expression text over ``names`` built from every operator."""
    if depth == 0 or r.random() < 0.25:
        if r.random() < 0.8:
            return str(r.choice(names))
        return repr(float(r.choice([0.5, 1.0, 2.0, 3.0])))
    kind = r.integers(0, 8)
    if kind == 0:
        return f"-({random_expr(r, names, depth - 1)})"
    op = "|&+-*/"[kind % 6]
    return f"({random_expr(r, names, depth - 1)} {op} {random_expr(r, names, depth - 1)})"


def reference_eval(text_ast, env):
    """Evaluate an AST straight from numpy array operations."""
    from multikit.expr import Binary, Ident, Number, Unary

    def go(node):
        if isinstance(node, Ident):
            return env[node.name]
        if isinstance(node, Number):
            return np.full_like(next(iter(env.values())), node.value)
        if isinstance(node, Unary):
            return -go(node.child)
        a, b = go(node.left), go(node.right)
        if node.op == "union":
            return np.maximum(a, b)
        if node.op == "intersection":
            return np.minimum(a, b)
        if node.op == "add":
            return a + b
        if node.op == "subtract":
            return a - b
        if node.op == "multiply":
            return a * b
        out = np.zeros_like(a)
        nz = b != 0
        out[nz] = a[nz] / b[nz]
        return out

    return go(text_ast)


# (number, title, passed, seconds, detail) filled in by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, float, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, seconds, detail in sorted(ACCEPTANCE_RESULTS):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {title} ({seconds:.2f} s)"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
