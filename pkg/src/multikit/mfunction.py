"""Sampled functions treated as dense msets.

A :class:`MFunction` stores ``n`` samples on a uniform grid ``x0 + i*dx``.
Each sample is the (signed) multiplicity of its grid point, so the mset
operations of :mod:`multikit.mset` apply samplewise. Sample ``i`` stands for
the cell ``[x_i, x_i + dx)`` and integrals use the left-point rectangle rule,
which commutes exactly with pointwise min and max.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from ._format import fmt
from .errors import AlignmentError, MultikitError
from .mset import Mset

POINTWISE_OPS = (
    "union", "intersection", "sum", "diff_signed", "diff_truncated",
    "product", "quotient", "complement", "scale",
)


def _frozen_array(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if shape is not None and arr.shape != shape:
        raise MultikitError(f"expected {shape} samples, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MultikitError("samples must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Grid1D:
    x0: float
    dx: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x0) and math.isfinite(self.dx)) or self.dx <= 0:
            raise MultikitError(f"grid step must be finite and positive, got {self.dx!r}")
        if int(self.n) != self.n or self.n < 1:
            raise MultikitError(f"grid needs at least one sample, got n={self.n!r}")

    @classmethod
    def span(cls, start: float, end: float, n: int) -> "Grid1D":
        """Grid of ``n`` cells covering ``[start, end)``."""
        if n < 1:
            raise MultikitError("grid needs at least one sample")
        return cls(float(start), (end - start) / n, int(n))

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def length(self) -> float:
        return self.n * self.dx


DEFAULT_GRID = Grid1D.span(-1.0, 1.0, 2048)


@dataclass(frozen=True, eq=False)
class MFunction:
    grid: Grid1D
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_array(self.samples, (self.grid.n,)))

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def with_samples(self, samples) -> "MFunction":
        return MFunction(self.grid, samples)

    def __or__(self, other):
        return pointwise("union", self, other)

    def __and__(self, other):
        return pointwise("intersection", self, other)

    def __add__(self, other):
        return pointwise("sum", self, other)

    def __sub__(self, other):
        return pointwise("diff_signed", self, other)

    def __mul__(self, other):
        return pointwise("product", self, other)

    def __truediv__(self, other):
        return pointwise("quotient", self, other)

    def __neg__(self):
        return pointwise("complement", self)


def from_vector(values, grid: Grid1D | None = None) -> MFunction:
    """Wrap a vector as an mfunction; the default grid is ``x0=1, dx=1``."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise MultikitError("from_vector needs a non-empty 1-D sequence")
    if grid is None:
        grid = Grid1D(1.0, 1.0, values.size)
    elif grid.n != values.size:
        raise MultikitError(f"{values.size} values for a grid of {grid.n} samples")
    return MFunction(grid, values)


def as_mset(f: MFunction) -> Mset:
    """Mset view keyed by 1-based sample index. Zero samples drop out."""
    return Mset({i + 1: float(v) for i, v in enumerate(f.samples)})


def from_mset(m: Mset, grid: Grid1D) -> MFunction:
    """Inverse of :func:`as_mset`: missing indices are zero samples."""
    out = np.zeros(grid.n)
    for key, v in m.items():
        try:
            i = int(key)
        except ValueError:
            raise MultikitError(f"element {key!r} is not a sample index") from None
        if not 1 <= i <= grid.n:
            raise MultikitError(f"sample index {i} outside 1..{grid.n}")
        out[i - 1] = v
    return MFunction(grid, out)


@dataclass(frozen=True)
class IndexMap:
    """Column-major flattening of 1-based (i, j) matrix indices to 0-based k."""

    ni: int
    nj: int

    def __post_init__(self):
        if self.ni < 1 or self.nj < 1:
            raise MultikitError("index map dimensions must be positive")

    def flatten(self, i: int, j: int) -> int:
        if not (1 <= i <= self.ni and 1 <= j <= self.nj):
            raise MultikitError(f"index ({i}, {j}) outside {self.ni}x{self.nj}")
        return self.ni * (j - 1) + i - 1

    def unflatten(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.ni * self.nj:
            raise MultikitError(f"flat index {k} outside 0..{self.ni * self.nj - 1}")
        j, i = divmod(k, self.ni)
        return i + 1, j + 1


def matrix_to_mset(matrix) -> Mset:
    """Mset keyed by the flattened index of each matrix entry."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2:
        raise MultikitError("expected a 2-D matrix")
    imap = IndexMap(*a.shape)
    return Mset({imap.flatten(i + 1, j + 1): float(a[i, j])
                 for i in range(a.shape[0]) for j in range(a.shape[1])})


def _gauss_g(x, scale=10.0):
    return np.exp(-scale * x**2)


def _laplace_h(x, amplitude=2.0, scale=10.0, center=0.1):
    return amplitude * np.exp(-scale * np.abs(x - center))


def _sin(x, freq=1.0, phase=0.0, amplitude=1.0):
    return amplitude * np.sin(2 * np.pi * freq * x + phase)


def _cos(x, freq=1.0, phase=0.0, amplitude=1.0):
    return amplitude * np.cos(2 * np.pi * freq * x + phase)


def _const(x, value=1.0):
    return np.full_like(x, value)


BUILTINS = {
    "gauss_g": _gauss_g,
    "laplace_h": _laplace_h,
    "sin": _sin,
    "cos": _cos,
    "const": _const,
}


def sample_builtin(name: str, grid: Grid1D = DEFAULT_GRID, **params) -> MFunction:
    """Sample a named analytic function on ``grid``.

    ``gauss_g`` is ``exp(-10 x^2)`` and ``laplace_h`` is
    ``2 exp(-10 |x - 0.1|)``; ``sin``/``cos`` take ``freq`` (cycles per unit),
    ``phase`` and ``amplitude``; ``const`` takes ``value``.
    """
    try:
        fn = BUILTINS[name]
    except KeyError:
        raise MultikitError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    try:
        return MFunction(grid, fn(grid.x, **params))
    except TypeError as exc:
        raise MultikitError(f"bad parameters for {name}: {exc}") from None


def check_aligned(f: MFunction, g: MFunction) -> None:
    if f.grid != g.grid:
        raise AlignmentError(f"grid mismatch: {f.grid} vs {g.grid}")


def pointwise(op: str, f: MFunction, g: MFunction | None = None, c: float | None = None) -> MFunction:
    """Samplewise mset operation.

    Binary ops need ``g`` on exactly the same grid. ``quotient`` writes 0
    wherever the denominator is 0; ``scale`` multiplies by ``c``.
    """
    a = f.samples
    if op == "complement":
        return f.with_samples(-a)
    if op == "scale":
        if c is None or not math.isfinite(c):
            raise MultikitError("scale needs a finite factor")
        return f.with_samples(c * a)
    if g is None:
        raise MultikitError(f"{op} needs two operands")
    check_aligned(f, g)
    b = g.samples
    if op == "union":
        out = np.maximum(a, b)
    elif op == "intersection":
        out = np.minimum(a, b)
    elif op == "sum":
        out = a + b
    elif op == "diff_signed":
        out = a - b
    elif op == "diff_truncated":
        out = np.maximum(a - b, 0.0)
    elif op == "product":
        out = a * b
    elif op == "quotient":
        nz = b != 0
        out = np.zeros_like(a)
        out[nz] = a[nz] / b[nz]
    else:
        raise MultikitError(f"unknown pointwise operation {op!r}")
    return f.with_samples(out)


def integral(f: MFunction) -> float:
    """Left-point rectangle rule, ``dx * sum(samples)``."""
    return float(f.grid.dx * np.sum(f.samples))


def normalize_area(f: MFunction) -> MFunction:
    """Rescale so that the integral of ``|f|`` is one."""
    area = f.grid.dx * np.sum(np.abs(f.samples))
    if area == 0:
        raise MultikitError("cannot normalize a function with zero area")
    return f.with_samples(f.samples / area)


def resample(f: MFunction, grid: Grid1D) -> MFunction:
    """Linear interpolation onto ``grid``; zero outside the source range."""
    return MFunction(grid, np.interp(grid.x, f.x, f.samples, left=0.0, right=0.0))


@dataclass(frozen=True)
class Grid2D:
    x0: float
    y0: float
    dx: float
    dy: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.dx <= 0 or self.dy <= 0:
            raise MultikitError("grid steps must be positive")
        if self.nx < 1 or self.ny < 1:
            raise MultikitError("grid needs at least one cell per axis")

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.ny)

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy


@dataclass(frozen=True, eq=False)
class Field2D:
    """Scalar field sampled on a :class:`Grid2D`; ``samples[j, i]`` is at ``(x_i, y_j)``."""

    grid: Grid2D
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        shape = (self.grid.ny, self.grid.nx)
        object.__setattr__(self, "samples", _frozen_array(self.samples, shape))

    def integral(self) -> float:
        return float(self.grid.cell_area * np.sum(self.samples))


# -- CSV -------------------------------------------------------------------

def write_function_csv(f: MFunction) -> str:
    lines = ["x,value"]
    lines.extend(f"{fmt(x)},{fmt(v)}" for x, v in zip(f.x, f.samples))
    return "\n".join(lines) + "\n"


def _read_rows(text: str, header: list[str]) -> list[list[float]]:
    reader = csv.reader(io.StringIO(text))
    try:
        got = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MultikitError("empty CSV") from None
    if got != header:
        raise MultikitError(f"expected CSV header {','.join(header)}, got {','.join(got)}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MultikitError(f"line {lineno}: expected {len(header)} fields")
        try:
            rows.append([float(v) for v in row])
        except ValueError:
            raise MultikitError(f"line {lineno}: non-numeric field") from None
    return rows


def _uniform_step(xs: np.ndarray, what: str) -> float:
    if xs.size < 2:
        raise MultikitError(f"need at least two distinct {what} values to infer the step")
    step = (xs[-1] - xs[0]) / (xs.size - 1)
    if step <= 0:
        raise MultikitError(f"{what} must be strictly increasing")
    expected = xs[0] + step * np.arange(xs.size)
    if np.max(np.abs(xs - expected)) > 1e-9 * step:
        raise MultikitError(f"{what} values are not uniformly spaced")
    # files carry 12 significant digits; snapping keeps grids read from
    # different files of the same grid exactly equal
    return float(f"{step:.12g}")


def read_function_csv(text: str) -> MFunction:
    rows = _read_rows(text, ["x", "value"])
    data = np.array(rows, dtype=float).reshape(-1, 2)
    xs = data[:, 0]
    dx = _uniform_step(xs, "x")
    return MFunction(Grid1D(float(xs[0]), dx, xs.size), data[:, 1])


def write_field_csv(field_: Field2D) -> str:
    g = field_.grid
    lines = ["x,y,value"]
    for j, y in enumerate(g.y):
        for i, x in enumerate(g.x):
            lines.append(f"{fmt(x)},{fmt(y)},{fmt(field_.samples[j, i])}")
    return "\n".join(lines) + "\n"


def read_field_csv(text: str) -> Field2D:
    rows = _read_rows(text, ["x", "y", "value"])
    data = np.array(rows, dtype=float).reshape(-1, 3)
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    nx, ny = xs.size, ys.size
    if nx * ny != len(data):
        raise MultikitError("field CSV is not a complete rectangular grid")
    # row-major: y outer, x inner
    if not (np.array_equal(data[:nx, 0], xs) and np.array_equal(data[::nx, 1], ys)):
        raise MultikitError("field CSV rows must be ordered by y, then x")
    grid = Grid2D(float(xs[0]), float(ys[0]), _uniform_step(xs, "x"), _uniform_step(ys, "y"), nx, ny)
    return Field2D(grid, data[:, 2].reshape(ny, nx))
