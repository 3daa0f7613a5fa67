import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_expr, reference_eval
from multikit import expr as ex
from multikit import mfunction as mf
from multikit.errors import AlignmentError, ExprSyntaxError, MultikitError
from multikit.expr import Binary, Ident, Number, Unary
from multikit.mfunction import Grid1D, MFunction
from multikit.mset import Mset

G, H = Ident("g"), Ident("h")


class TestParse:
    def test_r(self):
        assert ex.parse("(g & h) + g") == Binary("add", Binary("intersection", G, H), G)

    def test_s_precedence(self):
        assert ex.parse("g + h | g - h") == Binary("union", Binary("add", G, H), Binary("subtract", G, H))

    def test_precedence_ladder(self):
        assert ex.parse("g | h & g") == Binary("union", G, Binary("intersection", H, G))
        assert ex.parse("g & h + g") == Binary("intersection", G, Binary("add", H, G))
        assert ex.parse("g + h * g") == Binary("add", G, Binary("multiply", H, G))
        assert ex.parse("-g * h") == Binary("multiply", Unary("negate", G), H)
        assert ex.parse("--g") == Unary("negate", Unary("negate", G))

    def test_left_associative(self):
        assert ex.parse("g - h - g") == Binary("subtract", Binary("subtract", G, H), G)
        assert ex.parse("g / h / g") == Binary("divide", Binary("divide", G, H), G)

    def test_numbers_and_whitespace(self):
        assert ex.parse("  0.5*g ") == Binary("multiply", Number(0.5), G)
        assert ex.parse("1e-3") == Number(1e-3)
        assert ex.parse(".5") == Number(0.5)
        assert ex.parse("g_2") == Ident("g_2")

    @pytest.mark.parametrize("text, offset", [
        ("g + * h", 4), ("", 0), ("(g", 2), ("g h", 2), ("g $ h", 2), ("g)", 1), ("é + g", 0), ("g + é", 4),
    ])
    def test_syntax_errors(self, text, offset):
        with pytest.raises(ExprSyntaxError) as info:
            ex.parse(text)
        assert info.value.offset == offset

    def test_expected_set(self):
        with pytest.raises(ExprSyntaxError) as info:
            ex.parse("g + * h")
        assert {"identifier", "number", "("} <= info.value.expected
        assert "offset 4" in str(info.value)

    def test_round_trip_corpus(self):
        r = np.random.default_rng(7)
        for _ in range(100):
            tree = ex.parse(random_expr(r))
            assert ex.parse(ex.to_text(tree)) == tree

    @given(st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, seed):
        tree = ex.parse(random_expr(np.random.default_rng(seed), depth=6))
        assert ex.parse(ex.to_text(tree)) == tree


def eq_gh():
    grid = mf.DEFAULT_GRID
    return {"g": mf.sample_builtin("gauss_g", grid), "h": mf.sample_builtin("laplace_h", grid)}


class TestEvaluate:
    def test_identity(self):
        env = eq_gh()
        assert ex.eval_text("g", env) is env["g"]

    def test_de_morgan(self):
        env = eq_gh()
        np.testing.assert_array_equal(ex.eval_text("-(g & h)", env).samples,
                                      ex.eval_text("(-g) | (-h)", env).samples)

    def test_t_nonpositive(self):
        t = ex.eval_text("(g & h) - (g | h)", eq_gh())
        assert np.all(t.samples <= 0)

    def test_r_and_s(self):
        env = eq_gh()
        g, h = env["g"], env["h"]
        np.testing.assert_array_equal(ex.eval_text("(g & h) + g", env).samples, ((g & h) + g).samples)
        np.testing.assert_array_equal(ex.eval_text("(g + h) | (g - h)", env).samples,
                                      ((g + h) | (g - h)).samples)

    def test_constants(self):
        env = eq_gh()
        np.testing.assert_array_equal(ex.eval_text("0.5 * g", env).samples, 0.5 * env["g"].samples)

    def test_msets(self):
        env = {"a": Mset({"x": 2, "y": 1}), "b": Mset({"x": 1, "z": 4})}
        assert ex.eval_text("a | b", env) == Mset({"x": 2, "y": 1, "z": 4})
        assert ex.eval_text("a - b", env) == Mset({"x": 1, "y": 1, "z": -4})
        assert ex.eval_text("a / b", env) == Mset({"x": 2, "z": 0})
        assert ex.eval_text("2 * a", env) == Mset({"x": 4, "y": 2})
        assert ex.eval_text("-(a & b)", env) == ex.eval_text("-a | -b", env)

    def test_oracle_equivalence(self):
        r = np.random.default_rng(99)
        grid = Grid1D.span(0, 1, 64)
        arrays = {n: r.integers(-3, 4, 64).astype(float) for n in "ghk"}
        env = {n: MFunction(grid, a) for n, a in arrays.items()}
        for _ in range(100):
            tree = ex.parse(random_expr(r))
            np.testing.assert_array_equal(ex.evaluate(tree, env).samples, reference_eval(tree, arrays))

    def test_errors(self):
        env = eq_gh()
        with pytest.raises(MultikitError):
            ex.eval_text("g + q", env)
        with pytest.raises(MultikitError):
            ex.eval_text("1 + 2", {})
        with pytest.raises(AlignmentError):
            ex.eval_text("g + h", {"g": env["g"], "h": MFunction(Grid1D(0, 1, 3), [1, 2, 3])})
        with pytest.raises(AlignmentError):
            ex.eval_text("g + h", {"g": env["g"], "h": Mset({"a": 1})})
