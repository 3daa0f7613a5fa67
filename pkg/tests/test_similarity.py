import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import msets, nonneg_msets
from multikit import mfunction as mf
from multikit import similarity as sim
from multikit.errors import AlignmentError, MultikitError
from multikit.mfunction import Field2D, Grid1D, Grid2D, MFunction
from multikit.mset import Mset

A = Mset({"a": 1, "b": 2, "c": 3})
B = Mset({"a": 1, "b": 1, "c": 2, "d": 1})
PERIOD = Grid1D.span(0.0, 1.0, 4096)


def brute_jaccard(a, b):
    keys = set(a) | set(b)
    return sum(min(a.m(k), b.m(k)) for k in keys), sum(max(a.m(k), b.m(k)) for k in keys)


class TestMproduct:
    @pytest.mark.parametrize("f, g, expected", [
        (1, 1, 1), (1, -1, -1), (0, 5, 0), (3, 2, 2), (-3, -2, 2), (-3, 2, -2), (2, -7, -2),
    ])
    def test_sign_cases(self, f, g, expected):
        assert sim.mproduct(Mset({"x": f}), Mset({"x": g})).m("x") == expected

    def test_self_is_abs(self, rng):
        f = MFunction(PERIOD, rng.normal(size=PERIOD.n))
        np.testing.assert_array_equal(sim.mproduct(f, f).samples, np.abs(f.samples))

    def test_field(self):
        grid = Grid2D(0, 0, 1, 1, 2, 1)
        p = sim.mproduct(Field2D(grid, [[1.0, -2.0]]), Field2D(grid, [[3.0, 1.0]]))
        np.testing.assert_array_equal(p.samples, [[1.0, -1.0]])

    @given(msets(), msets())
    def test_commutes_and_odd(self, a, b):
        assert sim.mproduct(a, b) == sim.mproduct(b, a)
        assert sim.mproduct(a, -b) == -sim.mproduct(a, b)


class TestCommonProduct:
    def test_sine_cosine_orthogonal(self):
        s = mf.sample_builtin("sin", PERIOD)
        c = mf.sample_builtin("cos", PERIOD)
        assert abs(sim.common_product(s, c)) < 1e-3

    def test_self_and_negation(self):
        s = mf.sample_builtin("sin", PERIOD)
        assert sim.common_product(s, s) == pytest.approx(2 / math.pi, abs=1e-4)
        assert sim.common_product(s, -s) == pytest.approx(-2 / math.pi, abs=1e-4)

    def test_mset_sum(self):
        assert sim.common_product(A, B) == 4

    def test_misaligned(self):
        f = mf.from_vector([1.0, 2.0])
        with pytest.raises(AlignmentError):
            sim.common_product(f, mf.from_vector([1.0, 2.0], Grid1D(0, 1, 2)))
        with pytest.raises(AlignmentError):
            sim.common_product(f, A)
        with pytest.raises(MultikitError):
            sim.common_product([1], [2])


class TestSupProduct:
    def test_self(self, rng):
        f = MFunction(PERIOD, rng.normal(size=PERIOD.n))
        assert sim.sup_product(f, f) == pytest.approx(PERIOD.dx * np.abs(f.samples).sum(), rel=1e-14)

    def test_opposite_constants(self):
        grid = Grid1D.span(0, 1, 100)
        one = mf.sample_builtin("const", grid)
        assert sim.sup_product(one, -one) == pytest.approx(1.0, abs=1e-14)

    def test_eq_gh_against_loop(self):
        grid = mf.DEFAULT_GRID
        g, h = mf.sample_builtin("gauss_g", grid), mf.sample_builtin("laplace_h", grid)
        # independent evaluation straight from the analytic formulas
        total = 0.0
        for i in range(grid.n):
            x = grid.x0 + i * grid.dx
            total += max(abs(math.exp(-10 * x * x)), abs(2 * math.exp(-10 * abs(x - 0.1))))
        assert sim.sup_product(g, h) == pytest.approx(total * grid.dx, rel=1e-12)


class TestJaccard:
    def test_worked_pair_uses_max_denominator(self):
        num, den = brute_jaccard(A, B)
        assert (num, den) == (4, 7)
        rep = sim.jaccard(A, B)
        assert rep.value == 4 / 7
        assert (rep.numerator, rep.denominator) == (4, 7)
        assert rep.kind == "jaccard" and rep.flags == ()
        assert any("0.363636363636" in n for n in rep.notes)

    def test_identity_and_disjoint(self):
        assert sim.jaccard(A, A).value == 1
        assert sim.jaccard(Mset({"a": 1}), Mset({"b": 2})).value == 0

    def test_zero_inputs_are_indeterminate(self):
        rep = sim.jaccard(Mset(), Mset())
        assert rep.value == 1 and rep.flags == ("indeterminate",)

    @given(nonneg_msets(), nonneg_msets())
    def test_matches_min_max_oracle(self, a, b):
        num, den = brute_jaccard(a, b)
        rep = sim.jaccard(a, b)
        if den:
            assert rep.value == num / den
            assert 0 <= rep.value <= 1

    @given(msets(), msets())
    def test_signed_bounds_and_symmetry(self, a, b):
        r1, r2 = sim.jaccard(a, b), sim.jaccard(b, a)
        assert r1.value == r2.value
        assert -1 <= r1.value <= 1
        assert abs(sim.common_product(a, b)) <= sim.sup_product(a, b)

    @given(st.sets(st.sampled_from("abcdefgh")), st.sets(st.sampled_from("abcdefgh")))
    def test_binary_msets_reduce_to_crisp(self, s1, s2):
        a, b = Mset({k: 1 for k in s1}), Mset({k: 1 for k in s2})
        if s1 | s2:
            assert sim.jaccard(a, b).value == len(s1 & s2) / len(s1 | s2)

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1))
    def test_functions_match_pointwise_ops(self, seed):
        r = np.random.default_rng(seed)
        f = MFunction(PERIOD, r.uniform(0, 1, PERIOD.n))
        g = MFunction(PERIOD, r.uniform(0, 1, PERIOD.n))
        expected = mf.integral(f & g) / mf.integral(f | g)
        assert sim.jaccard(f, g).value == pytest.approx(expected, abs=1e-12)

    def test_self_is_one(self, rng):
        f = MFunction(PERIOD, rng.normal(size=PERIOD.n))
        assert sim.jaccard(f, f).value == 1.0


class TestJaccardMulti:
    def test_identical(self):
        assert sim.jaccard_multi([A, A, A]).value == 1

    def test_disjoint_member(self):
        assert sim.jaccard_multi([A, B, Mset({"z": 1})]).value == 0

    def test_three_way(self):
        fam = [Mset({"a": 2, "b": 1}), Mset({"a": 1, "b": 1}), Mset({"a": 1, "b": 2})]
        rep = sim.jaccard_multi(fam)
        assert (rep.numerator, rep.denominator, rep.value) == (2, 4, 0.5)

    def test_pair_matches_jaccard(self):
        assert sim.jaccard_multi([A, B]).value == sim.jaccard(A, B).value

    def test_rejects(self):
        with pytest.raises(MultikitError):
            sim.jaccard_multi([A])
        with pytest.raises(MultikitError):
            sim.jaccard_multi([A, Mset({"a": -1})])


class TestCosine:
    def test_l2_self_and_scale(self, rng):
        f = MFunction(PERIOD, rng.normal(size=PERIOD.n))
        g = MFunction(PERIOD, rng.normal(size=PERIOD.n))
        assert sim.cosine(f, f).value == pytest.approx(1.0, abs=1e-14)
        scaled = MFunction(PERIOD, 3.7 * f.samples)
        assert sim.cosine(scaled, g).value == pytest.approx(sim.cosine(f, g).value, abs=1e-12)

    def test_sum_normalized(self):
        rep = sim.cosine(Mset({"a": 2}), Mset({"a": 3}), "sum_normalized")
        assert rep.value == 1 and rep.kind == "cosine_sum"

    def test_intersection_variant(self):
        rep = sim.cosine(Mset({"a": 2, "b": 1}), Mset({"a": 3}), "intersection")
        assert rep.numerator == 2 and rep.denominator == 9

    @given(msets(), msets())
    def test_symmetric(self, a, b):
        for variant in ("l2", "sum_normalized", "intersection"):
            try:
                r1 = sim.cosine(a, b, variant)
            except MultikitError:
                continue
            assert r1.value == pytest.approx(sim.cosine(b, a, variant).value, abs=1e-15)

    def test_errors(self):
        with pytest.raises(MultikitError):
            sim.cosine(A, Mset())
        with pytest.raises(MultikitError):
            sim.cosine(A, B, "angular")


def test_report_dispatch():
    assert sim.report("common_product", A, B).value == 4
    assert sim.report("sup_product", A, B).value == 7
    assert sim.report("cosine_l2", A, A).value == pytest.approx(1)
    assert sim.report("jaccard", A, B).as_dict()["value"] == 4 / 7
    with pytest.raises(MultikitError):
        sim.report("dice", A, B)
