"""Greedy transforms under the common product, and the Walsh basis.

Under the common product only a few function families are orthogonal; the
Walsh functions are one, because ``|w_i| = 1`` makes the mproduct of two
members equal to their ordinary product. For other bases (sinusoids, say) the
greedy coefficients depend on the order in which members are applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._format import dumps
from .errors import AlignmentError, MultikitError
from .mfunction import Grid1D, MFunction, sample_builtin
from .similarity import common_product


@dataclass(frozen=True, eq=False)
class Basis:
    functions: tuple[MFunction, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        funcs = tuple(self.functions)
        labels = tuple(self.labels)
        if not funcs:
            raise MultikitError("basis is empty")
        if len(labels) != len(funcs):
            raise MultikitError("one label per basis function")
        grid = funcs[0].grid
        for f in funcs:
            if f.grid != grid:
                raise AlignmentError("basis functions must share one grid")
            if not np.any(f.samples):
                raise MultikitError("basis contains an all-zero function")
        object.__setattr__(self, "functions", funcs)
        object.__setattr__(self, "labels", labels)

    @property
    def grid(self) -> Grid1D:
        return self.functions[0].grid

    def __len__(self):
        return len(self.functions)

    def permuted(self, order: Sequence[int]) -> "Basis":
        return Basis(tuple(self.functions[i] for i in order), tuple(self.labels[i] for i in order))


@dataclass(frozen=True, eq=False)
class TransformResult:
    labels: tuple[str, ...]
    coefficients: np.ndarray
    residual: MFunction
    residual_norm_history: np.ndarray = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "coefficients": [float(c) for c in self.coefficients],
            "residual_norms": [float(r) for r in self.residual_norm_history],
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())


def sign_changes(values) -> int:
    v = np.sign(np.asarray(values))
    v = v[v != 0]
    return int(np.count_nonzero(v[1:] != v[:-1]))


def walsh_matrix(k: int) -> np.ndarray:
    """``2**k`` Walsh functions as rows of +-1, in sequency order."""
    if k < 0:
        raise MultikitError("k must be nonnegative")
    h = np.ones((1, 1))
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    order = np.argsort([sign_changes(row) for row in h], kind="stable")
    return h[order]


def walsh_basis(k: int, grid: Grid1D | None = None) -> Basis:
    """Sequency-ordered Walsh basis; ``grid.n`` must be ``2**k`` (default grid ``[0, 1)``)."""
    n = 2**k
    if grid is None:
        grid = Grid1D.span(0.0, 1.0, n)
    if grid.n != n:
        raise MultikitError(f"Walsh basis of order k={k} needs {n} samples, grid has {grid.n}")
    rows = walsh_matrix(k)
    return Basis(tuple(MFunction(grid, r) for r in rows), tuple(f"walsh{i}" for i in range(n)))


def sinusoid_basis(grid: Grid1D, specs: Sequence[tuple[float, float]]) -> Basis:
    """Basis of ``sin(2 pi freq x + phase)`` members, one per ``(freq, phase)``."""
    funcs = tuple(sample_builtin("sin", grid, freq=f, phase=p) for f, p in specs)
    labels = tuple(f"sin(f={f:g},phase={p:.6g})" for f, p in specs)
    return Basis(funcs, labels)


def greedy_decompose(f: MFunction, basis: Basis, update: str = "scaled") -> TransformResult:
    """Coefficients of ``f`` on ``basis`` applied in order.

    At step ``i`` the coefficient is ``<<r, g_i>> / <<g_i, g_i>>`` where ``r``
    is the current residual, and the residual becomes ``r - c_i g_i``. With
    ``update="literal"`` the coefficient is the raw ``<<r, g_i>>`` and the
    residual becomes ``r - g_i``.

    Because the mproduct clips at the smaller magnitude, recovery on the
    Walsh basis is exact only while ``|r| <= 1`` at every step; inputs with
    ``max|f| <= 1 / (len(basis) + 1)`` always qualify.
    """
    if update not in ("scaled", "literal"):
        raise MultikitError(f"unknown update rule {update!r}")
    if f.grid != basis.grid:
        raise AlignmentError(f"grid mismatch: {f.grid} vs {basis.grid}")
    residual = f
    coeffs = []
    history = []
    for g in basis.functions:
        c = common_product(residual, g)
        if update == "scaled":
            c /= common_product(g, g)
            residual = residual.with_samples(residual.samples - c * g.samples)
        else:
            residual = residual.with_samples(residual.samples - g.samples)
        coeffs.append(c)
        history.append(float(f.grid.dx * np.sum(np.abs(residual.samples))))
    return TransformResult(basis.labels, np.array(coeffs), residual, np.array(history))


def reconstruct(result: TransformResult, basis: Basis) -> MFunction:
    """Plain weighted sum of the basis members."""
    if len(result.coefficients) != len(basis):
        raise MultikitError("coefficient count does not match basis size")
    out = np.zeros(basis.grid.n)
    for c, g in zip(result.coefficients, basis.functions):
        out = out + c * g.samples
    return MFunction(basis.grid, out)


def gram_matrix(basis: Basis, product: str = "common") -> np.ndarray:
    """Pairwise products of basis members divided by the domain length."""
    if product == "common":
        pair = common_product
    elif product == "classical":
        def pair(a, b):
            return float(a.grid.dx * np.sum(a.samples * b.samples))
    else:
        raise MultikitError(f"unknown product {product!r}")
    n = len(basis)
    g = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            g[i, j] = g[j, i] = pair(basis.functions[i], basis.functions[j])
    return g / basis.grid.length
